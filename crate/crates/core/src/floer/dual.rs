use super::basis::BasisElt;
use super::{BarModel, Flavor, FlavorModel};

/// Dual of a hat-flavor model: the to flavor of the orientation reversal.
///
/// Gradings reflect as `g ↦ -1 - g` and every map is transposed, so the Gysin
/// triangle runs the other way round: the new `ι` is the dual of `π` and vice
/// versa, and `p_*` dualizes to `i_*`. The dual of the `Q²` sub-tower of the
/// bar group is the new `Q⁰` sub-tower, so Q-columns are relabelled `c ↦ 2 - c`.
pub(crate) fn dualize(hat: &FlavorModel) -> FlavorModel {
    debug_assert_eq!(hat.flavor, Flavor::Hat);
    let u = hat.u.dual();
    let v = hat.v.dual();
    let q = hat.q.dual();
    let bar_v = hat.bar.v.dual();
    let bar_q = hat.bar.q.dual();
    let column_of = hat
        .column_of
        .iter()
        .map(|(e, c)| (BasisElt { grading: -e.grading - 1, index: e.index }, 2 - *c))
        .collect();
    FlavorModel {
        flavor: Flavor::To,
        hm: u.source().clone(),
        hs: v.source().clone(),
        bar: BarModel {
            space: bar_v.source().clone(),
            v: bar_v,
            q: bar_q,
            shift: -hat.bar.shift + 1,
        },
        u,
        v,
        q,
        iota: hat.pi.dual(),
        pi: hat.iota.dual(),
        pstar: None,
        istar: hat.pstar.as_ref().map(|p| p.dual()),
        column_of,
        reduced_generator: hat.reduced_generator.as_ref().map(|(g, vec)| (-*g - 1, vec.clone())),
    }
}
