//! Maps induced on the bar group by cobordisms between rational homology
//! spheres: the case analysis on `b₂⁺`.
//!
//! For `b₁ = 0` and a self-conjugate spin^c structure, the map on
//! `F[[V,V⁻¹]][Q]/(Q³)` is multiplication by `V^k` (`b₂⁺ = 0`, an
//! isomorphism), `QV^k` (`b₂⁺ = 1`), `Q²V^k` (`b₂⁺ = 2`), and zero for
//! `b₂⁺ ≥ 3`. The degree is `(b₂⁻ - 5b₂⁺)/4`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::floer::{BarModel, FloerModel};
use crate::graded::{F2Matrix, GradedError, GradedMap, Grading};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CobordismError {
    #[error(
        "inconsistent grading data: Q^{qpow} in degree {degree} between bar groups \
         with shifts {src_shift} and {tgt_shift} needs a non-integral power of V"
    )]
    InconsistentGrading { qpow: u8, degree: Grading, src_shift: Grading, tgt_shift: Grading },
    #[error("model {0} carries no bar group")]
    MissingBar(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CobordismData {
    pub b2plus: u32,
    pub b2minus: u32,
}

impl CobordismData {
    pub fn new(b2plus: u32, b2minus: u32) -> Self {
        CobordismData { b2plus, b2minus }
    }

    /// Data of the composite cobordism (Betti numbers add when `b₁ = 0`).
    pub fn glue(self, other: CobordismData) -> CobordismData {
        CobordismData::new(self.b2plus + other.b2plus, self.b2minus + other.b2minus)
    }
}

/// Map on the bar group: zero, or `Q^qpow V^k` of absolute degree `degree`.
///
/// `k` is not stored; it depends on how both ends are identified with the
/// standard module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BarMap {
    Zero,
    Mono { qpow: u8, degree: Grading },
}

impl BarMap {
    pub fn identity() -> Self {
        BarMap::Mono { qpow: 0, degree: Grading::ZERO }
    }

    pub fn qpow(&self) -> Option<u8> {
        match self {
            BarMap::Zero => None,
            BarMap::Mono { qpow, .. } => Some(*qpow),
        }
    }

    pub fn degree(&self) -> Option<Grading> {
        match self {
            BarMap::Zero => None,
            BarMap::Mono { degree, .. } => Some(*degree),
        }
    }
}

/// Degree of the induced map, `(b₂⁻ - 5b₂⁺)/4`.
pub fn grading_shift(c: CobordismData) -> Grading {
    Grading::new(i64::from(c.b2minus) - 5 * i64::from(c.b2plus), 4)
}

pub fn hs_bar_map(c: CobordismData) -> BarMap {
    match c.b2plus {
        q @ 0..=2 => BarMap::Mono { qpow: q as u8, degree: grading_shift(c) },
        _ => BarMap::Zero,
    }
}

/// `f ∘ g`.
pub fn compose_bar(f: BarMap, g: BarMap) -> BarMap {
    match (f, g) {
        (BarMap::Mono { qpow: q1, degree: d1 }, BarMap::Mono { qpow: q2, degree: d2 }) if q1 + q2 <= 2 => {
            BarMap::Mono { qpow: q1 + q2, degree: d1 + d2 }
        }
        _ => BarMap::Zero,
    }
}

/// Realizes `f` as a graded map between the bar groups of two models.
pub fn apply_bar(f: BarMap, src: &FloerModel, tgt: &FloerModel) -> Result<GradedMap, CobordismError> {
    let s = src.hs_bar().ok_or_else(|| CobordismError::MissingBar(src.name.clone()))?;
    let t = tgt.hs_bar().ok_or_else(|| CobordismError::MissingBar(tgt.name.clone()))?;
    apply_bar_on(f, s, t)
}

/// As [`apply_bar`], on bare bar groups. `Zero` is realized in degree 0.
pub fn apply_bar_on(f: BarMap, src: &BarModel, tgt: &BarModel) -> Result<GradedMap, CobordismError> {
    let (qpow, degree) = match f {
        BarMap::Zero => {
            return Ok(GradedMap::zero(src.space.clone(), tgt.space.clone(), Grading::ZERO));
        }
        BarMap::Mono { qpow, degree } => (qpow, degree),
    };
    // k = (shift_tgt - shift_src - degree - qpow) / 4 must be an integer
    let offset = tgt.shift - src.shift - degree - i64::from(qpow);
    if offset.steps_from(Grading::ZERO, 4).is_none() {
        return Err(CobordismError::InconsistentGrading {
            qpow,
            degree,
            src_shift: src.shift,
            tgt_shift: tgt.shift,
        });
    }
    let mut blocks = BTreeMap::new();
    for g in src.space.support() {
        let a = src.qpow_at(g).expect("bar basis lies on the sub-towers");
        let to = g + degree;
        if a + qpow > 2 || tgt.space.dim_at(to) == 0 {
            continue;
        }
        debug_assert_eq!(tgt.qpow_at(to), Some(a + qpow));
        let mut m = F2Matrix::zeros(1, 1);
        m.set(0, 0, true);
        blocks.insert(g, m);
    }
    Ok(GradedMap::new(src.space.clone(), tgt.space.clone(), degree, blocks)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floer::{build_rank_one, build_s3, TypeClass};
    use crate::graded::{compose, Window};
    use proptest::prelude::*;

    fn g(n: i64) -> Grading {
        Grading::int(n)
    }

    fn mono(qpow: u8, degree: i64) -> BarMap {
        BarMap::Mono { qpow, degree: g(degree) }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(grading_shift(CobordismData::new(1, 9)), g(1));
        assert_eq!(grading_shift(CobordismData::new(0, 0)), g(0));
        assert_eq!(grading_shift(CobordismData::new(2, 18)), g(2));
        assert_eq!(grading_shift(CobordismData::new(1, 2)), Grading::new(-3, 4));
    }

    #[test]
    fn map_examples() {
        assert_eq!(hs_bar_map(CobordismData::new(1, 9)), mono(1, 1));
        assert_eq!(hs_bar_map(CobordismData::new(3, 0)), BarMap::Zero);
        assert_eq!(hs_bar_map(CobordismData::new(0, 0)), BarMap::identity());
        assert_eq!(hs_bar_map(CobordismData::new(2, 18)), mono(2, 2));
        for b in 3..12 {
            assert_eq!(hs_bar_map(CobordismData::new(b, 7)), BarMap::Zero);
        }
    }

    #[test]
    fn composition_examples() {
        assert_eq!(compose_bar(mono(1, 1), mono(1, 1)), mono(2, 2));
        assert_eq!(compose_bar(mono(2, 0), mono(1, 0)), BarMap::Zero);
        assert_eq!(compose_bar(BarMap::Zero, mono(0, 5)), BarMap::Zero);
        assert_eq!(compose_bar(mono(0, 5), BarMap::Zero), BarMap::Zero);
    }

    #[test]
    fn functoriality_exhaustive() {
        for p1 in 0..=4 {
            for p2 in 0..=4 {
                for m1 in 0..=20 {
                    for m2 in 0..=20 {
                        let a = CobordismData::new(p1, m1);
                        let b = CobordismData::new(p2, m2);
                        let glued = hs_bar_map(a.glue(b));
                        assert_eq!(glued, compose_bar(hs_bar_map(a), hs_bar_map(b)));
                        assert_eq!(glued == BarMap::Zero, p1 + p2 >= 3);
                        assert_eq!(grading_shift(a.glue(b)), grading_shift(a) + grading_shift(b));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn compose_is_associative(q in prop::array::uniform3(0u8..3), d in prop::array::uniform3(-20i64..20)) {
            let [f, g_, h] = [mono(q[0], d[0]), mono(q[1], d[1]), mono(q[2], d[2])];
            prop_assert_eq!(compose_bar(f, compose_bar(g_, h)), compose_bar(compose_bar(f, g_), h));
        }
    }

    fn s3() -> FloerModel {
        build_s3(Window::with_default_guard(-40, 10).unwrap()).unwrap()
    }

    #[test]
    fn identity_on_s3() {
        let (a, b) = (s3(), s3());
        let m = apply_bar(BarMap::identity(), &a, &b).unwrap();
        assert_eq!(m, GradedMap::identity(a.hs_bar().unwrap().space.clone()));
    }

    #[test]
    fn identity_is_isomorphism_on_rank_one() {
        let w = Window::with_default_guard(-40, 10).unwrap();
        let y = build_rank_one(g(1), TypeClass::II, w).unwrap();
        let m = apply_bar(BarMap::identity(), &y, &y).unwrap();
        let bar = &y.hs_bar().unwrap().space;
        for x in bar.support() {
            assert_eq!(m.block(x).rank(), bar.dim_at(x));
        }
    }

    #[test]
    fn s3_to_rank_one_type_one() {
        let y = build_rank_one(g(0), TypeClass::I, Window::with_default_guard(-40, 10).unwrap()).unwrap();
        let src = s3();
        let m = apply_bar(mono(1, 1), &src, &y).unwrap();
        let tgt = y.hs_bar().unwrap();
        assert_eq!(src.hs_bar().unwrap().qpow_at(g(-1)), Some(0));
        assert_eq!(tgt.qpow_at(g(0)), Some(1));
        assert_eq!(m.apply(g(-1), &[true]), vec![true]);
        // the Q¹ and Q² sub-towers of the source are sent to Q² and 0
        assert_eq!(m.apply(g(-2), &[true]), vec![true]);
        assert_eq!(tgt.qpow_at(g(-1)), Some(2));
        assert!(m.block(g(-3)).is_zero());
    }

    #[test]
    fn q_squared_kills_q_classes() {
        let src = s3();
        let bar = src.hs_bar().unwrap();
        let shifted = crate::floer::build_s3(Window::with_default_guard(-36, 14).unwrap()).unwrap();
        // Q²V^(-1): degree 2 between bar groups with equal shifts
        let m = apply_bar(mono(2, 2), &src, &shifted).unwrap();
        for x in bar.space.support() {
            let expect_nonzero = bar.qpow_at(x) == Some(0);
            assert_eq!(!m.block(x).is_zero(), expect_nonzero && shifted.hs_bar().unwrap().space.dim_at(x + 2) > 0);
        }
    }

    #[test]
    fn non_integral_exponent_is_rejected() {
        let src = s3();
        assert!(matches!(
            apply_bar(mono(1, 0), &src, &src),
            Err(CobordismError::InconsistentGrading { .. })
        ));
        assert!(apply_bar(BarMap::Mono { qpow: 0, degree: Grading::new(1, 2) }, &src, &src).is_err());
    }

    #[test]
    fn zero_applies_to_zero() {
        let src = s3();
        assert!(apply_bar(BarMap::Zero, &src, &src).unwrap().is_zero());
    }

    #[test]
    fn commutes_with_v_and_q() {
        let w = Window::with_default_guard(-60, 20).unwrap();
        let src = build_s3(w).unwrap();
        for (h, t, f) in [
            (g(0), TypeClass::I, mono(1, 1)),
            (g(-1), TypeClass::II, mono(2, 2)),
            (g(1), TypeClass::I, mono(1, -1)),
        ] {
            let y = build_rank_one(h, t, w).unwrap();
            let (s, tb) = (src.hs_bar().unwrap(), y.hs_bar().unwrap());
            let m = apply_bar(f, &src, &y).unwrap();
            let d = f.degree().unwrap();
            for (ops, step) in [((&s.v, &tb.v), 4), ((&s.q, &tb.q), 1)] {
                let upper = compose(ops.1, &m).unwrap();
                let lower = compose(&m, ops.0).unwrap();
                for x in s.space.support() {
                    let inside = |z: Grading| w.is_interior(z) && w.is_interior(z - step);
                    if inside(x) && inside(x + d) {
                        assert_eq!(upper.block(x), lower.block(x), "{f:?} at {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn serde_shape() {
        let j = serde_json::to_value(mono(1, 1)).unwrap();
        assert_eq!(j, serde_json::json!({"kind": "mono", "qpow": 1, "degree": "1"}));
        assert_eq!(serde_json::to_value(BarMap::Zero).unwrap(), serde_json::json!({"kind": "zero"}));
    }
}
