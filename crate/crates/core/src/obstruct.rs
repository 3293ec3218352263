//! Constraints on Stein fillings with indefinite intersection form.
//!
//! * [`theorem_main`]: if `HM(Y, s)` has reduced rank one, an indefinite
//!   filling is spin with `b₂⁺ = 1, b₂⁻ = 9 - 8h` (Type I) or
//!   `b₂⁺ = 2, b₂⁻ = 10 - 8h` (Type II).
//! * [`theorem_contact`]: the same from the tower containing the contact
//!   class; the α-tower forces every filling to be negative definite.
//! * [`euler_bounds`]: finiteness of the Euler characteristics of fillings.
//! * [`replay_main_proof`]: the proof of the first statement run on the
//!   models, deducing the power of `Q` from naturality squares.

use serde::Serialize;

use crate::cobordism::{apply_bar_on, BarMap, CobordismError};
use crate::floer::{build_s3, BasisElt, ContactClass, Flavor, FloerError, FloerModel, TowerName, TypeClass};
use crate::graded::{check_square, F2Matrix, GradedError, GradedMap, Grading};
use crate::lattice::{classify_even_indefinite, LatticeForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ObstructError {
    #[error("inconsistent h for the rank-one hypothesis: b2- = {0} is not an integer")]
    Inconsistent(Grading),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(&'static str),
    #[error("model has no Q-column data or no unique top element")]
    MissingColumnData,
    #[error(transparent)]
    Floer(#[from] FloerError),
    #[error(transparent)]
    Cobordism(#[from] CobordismError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    IndefiniteFilling,
    NegativeDefiniteOnly,
}

/// Why a verdict is [`Scope::NegativeDefiniteOnly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    /// The forced `b₂⁻` is not positive, so no indefinite form fits.
    NoIndefiniteForm,
    /// The contact class lies in the α-tower.
    AlphaTower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillingConstraint {
    pub scope: Scope,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<Reason>,
    /// Parity of any indefinite filling (always even: it is spin).
    pub even: bool,
    pub b2plus: Option<u32>,
    pub b2minus: Option<u32>,
    /// Only when the signature is divisible by 8.
    pub lattice: Option<LatticeForm>,
}

impl FillingConstraint {
    fn negative_definite(reason: Reason) -> Self {
        FillingConstraint {
            scope: Scope::NegativeDefiniteOnly,
            reason: Some(reason),
            even: true,
            b2plus: None,
            b2minus: None,
            lattice: None,
        }
    }

    /// Indefinite verdict, or negative definite when `b₂⁻ < 1`.
    fn indefinite(b2plus: u32, b2minus: Grading) -> Result<Self, ObstructError> {
        let b2minus = b2minus.to_integer().ok_or(ObstructError::Inconsistent(b2minus))?;
        if b2minus < 1 {
            return Ok(Self::negative_definite(Reason::NoIndefiniteForm));
        }
        let b2minus = u32::try_from(b2minus).map_err(|_| ObstructError::Inconsistent(Grading::int(b2minus)))?;
        Ok(FillingConstraint {
            scope: Scope::IndefiniteFilling,
            reason: None,
            even: true,
            b2plus: Some(b2plus),
            b2minus: Some(b2minus),
            lattice: classify_even_indefinite(b2plus, b2minus).ok(),
        })
    }

    pub fn signature(&self) -> Option<i64> {
        Some(i64::from(self.b2plus?) - i64::from(self.b2minus?))
    }
}

/// Constraint on indefinite Stein fillings of a rank-one `(Y, s)` with
/// Frøyshov invariant `h` and Type `t`.
pub fn theorem_main(h: Grading, t: TypeClass) -> Result<FillingConstraint, ObstructError> {
    let eight_h = h.scale(8);
    match t {
        TypeClass::I => FillingConstraint::indefinite(1, -eight_h + 9),
        TypeClass::II => FillingConstraint::indefinite(2, -eight_h + 10),
    }
}

/// Constraint from a `ȷ`-invariant contact class of grading `d` whose image
/// in the to flavor lies in the given tower.
pub fn theorem_contact(c: &ContactClass) -> Result<FillingConstraint, ObstructError> {
    if !c.j_invariant {
        return Err(ObstructError::HypothesisNotMet("the contact class must be fixed by the involution"));
    }
    let four_d = c.d.scale(4);
    match c.tower {
        None => Err(ObstructError::HypothesisNotMet("the contact class must lie in a tower")),
        Some(TowerName::Alpha) => Ok(FillingConstraint::negative_definite(Reason::AlphaTower)),
        Some(TowerName::Beta) => FillingConstraint::indefinite(1, -four_d + 5),
        Some(TowerName::Gamma) => FillingConstraint::indefinite(2, -four_d + 10),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerBound {
    /// `χ = 1 + b₂⁺ + b₂⁻` of every indefinite filling.
    pub chi_indefinite: Option<i64>,
    /// Upper bound on `χ` of negative definite fillings; below 1 means there
    /// are none.
    pub chi_negdef_max: Option<i64>,
    /// Whether the indefinite verdict satisfies `3σ + 2χ ≥ C`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indefinite_meets_c: Option<bool>,
    pub finite: bool,
    #[serde(rename = "C")]
    pub c: Option<Grading>,
}

/// Euler characteristic bounds from `3σ(W) + 2χ(W) ≥ C`, with `b₁(W) = 0`.
///
/// For a negative definite filling this reads `2 - b₂⁻ ≥ C`. Finiteness
/// holds regardless of whether `C` is known: it exists for every contact
/// structure, and the indefinite branch is pinned down exactly.
pub fn euler_bounds(fc: Option<&FillingConstraint>, c: Option<Grading>) -> EulerBound {
    let indefinite = fc
        .filter(|f| f.scope == Scope::IndefiniteFilling)
        .and_then(|f| Some((i64::from(f.b2plus?), i64::from(f.b2minus?))));
    let chi_indefinite = indefinite.map(|(p, m)| 1 + p + m);
    let chi_negdef_max = c.map(|c| 1 + (Grading::int(2) - c).floor());
    let indefinite_meets_c = indefinite.zip(c).map(|((p, m), c)| Grading::int(5 * p - m + 2) >= c);
    EulerBound { chi_indefinite, chi_negdef_max, indefinite_meets_c, finite: true, c }
}

/// Outcome of running the proof on a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofReplay {
    /// Degree of the cobordism map `S³ → Y`, which sends `1` to the top
    /// element of `HS`.
    pub degree: Grading,
    pub top_grading: Grading,
    pub top_column: u8,
    /// `ι_Y ∘ L = M ∘ ι_{S³}`.
    pub iota_square: bool,
    /// Powers `q` for which `Q^q V^k` is consistent with the gradings and
    /// closes the `p_*` square.
    pub candidates: Vec<u8>,
    pub forced: Option<u8>,
}

/// Maps on the hat flavor induced by the filling minus a ball, as forced by
/// R-linearity: `L(1) = x` on `HS`, `M(T) = e` on `HM`.
struct Replay {
    s3: FloerModel,
    l: GradedMap,
    m: GradedMap,
    degree: Grading,
    top: BasisElt,
    top_column: u8,
}

fn setup(target: &FloerModel) -> Result<Replay, ObstructError> {
    let hat = target.flavor(Flavor::Hat)?;
    if hat.column_of.is_empty() {
        return Err(ObstructError::MissingColumnData);
    }
    let top = hat.top_element().ok_or(ObstructError::MissingColumnData)?;
    let top_column = *hat.column_of.get(&top).ok_or(ObstructError::MissingColumnData)?;
    let degree = top.grading + 1;
    let s3 = build_s3(hat.window().shifted(-degree))?;
    let src = s3.hat.as_ref().expect("S³ has a hat flavor");

    // L(Q^c V^a · 1) = Q^c V^a x
    let mut x = vec![false; hat.hs.dim_at(top.grading)];
    x[top.index] = true;
    let mut l_blocks = std::collections::BTreeMap::new();
    for g in src.hs.support() {
        let elt = BasisElt { grading: g, index: 0 };
        let c = src.column_of[&elt];
        let a = (Grading::int(-1 - i64::from(c)) - g).steps_from(Grading::ZERO, 4).expect("S³ column grading");
        let (mut v, mut at) = (x.clone(), top.grading);
        for _ in 0..a {
            v = hat.v.apply(at, &v);
            at = at - 4;
        }
        for _ in 0..c {
            v = hat.q.apply(at, &v);
            at = at - 1;
        }
        l_blocks.insert(g, column_matrix(&v));
    }
    let l = GradedMap::new(src.hs.clone(), hat.hs.clone(), degree, l_blocks)?;

    // M(U^j T) = U^j e, with e the reduced generator, or ι(x) without one
    let (eg, e) = match &hat.reduced_generator {
        Some(r) => r.clone(),
        None => (top.grading, hat.iota.apply(top.grading, &x)),
    };
    debug_assert_eq!(eg, Grading::int(-1) + degree);
    let mut m_blocks = std::collections::BTreeMap::new();
    for g in src.hm.support() {
        let j = (Grading::int(-1) - g).steps_from(Grading::ZERO, 2).expect("S³ tower grading");
        let (mut v, mut at) = (e.clone(), eg);
        for _ in 0..j {
            v = hat.u.apply(at, &v);
            at = at - 2;
        }
        m_blocks.insert(g, column_matrix(&v));
    }
    let m = GradedMap::new(src.hm.clone(), hat.hm.clone(), degree, m_blocks)?;
    Ok(Replay { s3, l, m, degree, top, top_column })
}

fn column_matrix(v: &[bool]) -> F2Matrix {
    let mut m = F2Matrix::zeros(v.len(), 1);
    for (i, &b) in v.iter().enumerate() {
        m.set(i, 0, b);
    }
    m
}

/// Whether `f` on the bar groups closes the `p_*` square under `L`.
/// `Ok(false)` also when `f` is inconsistent with the bar gradings.
pub fn pstar_square_commutes(target: &FloerModel, f: BarMap) -> Result<bool, ObstructError> {
    let r = setup(target)?;
    pstar_square(&r, target, f)
}

fn pstar_square(r: &Replay, target: &FloerModel, f: BarMap) -> Result<bool, ObstructError> {
    let hat = target.flavor(Flavor::Hat)?;
    let src = r.s3.hat.as_ref().expect("S³ has a hat flavor");
    let bar = match apply_bar_on(f, &src.bar, &hat.bar) {
        Ok(b) => b,
        Err(CobordismError::InconsistentGrading { .. }) => return Ok(false),
        Err(e) => return Err(e.into()),
    };
    let (p_src, p_tgt) = match (&src.pstar, &hat.pstar) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(ObstructError::MissingColumnData),
    };
    let bar = if bar.degree() == r.degree { bar } else { return Ok(false) };
    Ok(check_square(&r.l, &bar, p_src, p_tgt)?)
}

pub fn replay_main_proof(target: &FloerModel) -> Result<ProofReplay, ObstructError> {
    let r = setup(target)?;
    let hat = target.flavor(Flavor::Hat)?;
    let src = r.s3.hat.as_ref().expect("S³ has a hat flavor");
    let iota_square = check_square(&r.l, &r.m, &src.iota, &hat.iota)?;
    let mut candidates = Vec::new();
    for q in 0..=2u8 {
        if pstar_square(&r, target, BarMap::Mono { qpow: q, degree: r.degree })? {
            candidates.push(q);
        }
    }
    let forced = match candidates.as_slice() {
        [q] if *q == r.top_column && iota_square => Some(*q),
        _ => None,
    };
    Ok(ProofReplay {
        degree: r.degree,
        top_grading: r.top.grading,
        top_column: r.top_column,
        iota_square,
        candidates,
        forced,
    })
}

/// The power of `Q` the bar map of an indefinite filling must carry, which
/// is `b₂⁺`.
pub fn forced_qpower(target: &FloerModel) -> Result<Option<u8>, ObstructError> {
    Ok(replay_main_proof(target)?.forced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::{grading_shift, hs_bar_map, CobordismData};
    use crate::floer::build_rank_one;
    use crate::graded::Window;

    fn g(n: i64) -> Grading {
        Grading::int(n)
    }

    fn sweep() -> Vec<Grading> {
        let mut hs: Vec<Grading> = (-16..=16).map(|n| Grading::new(n, 8)).collect();
        hs.extend([g(-3), g(3), g(-5)]);
        hs
    }

    fn indefinite(fc: &FillingConstraint, b2plus: u32, b2minus: u32, lattice: Option<&str>) {
        assert_eq!(fc.scope, Scope::IndefiniteFilling);
        assert!(fc.even);
        assert_eq!((fc.b2plus, fc.b2minus), (Some(b2plus), Some(b2minus)));
        assert_eq!(fc.lattice.map(|l| l.to_string()).as_deref(), lattice);
    }

    #[test]
    fn main_examples() {
        indefinite(&theorem_main(g(0), TypeClass::I).unwrap(), 1, 9, Some("H ⊕ E8(-1)"));
        indefinite(&theorem_main(g(-1), TypeClass::II).unwrap(), 2, 18, Some("2H ⊕ 2E8(-1)"));
        indefinite(&theorem_main(g(1), TypeClass::I).unwrap(), 1, 1, Some("H"));
        for n in -9..=-1 {
            let fc = theorem_main(Grading::new(-(n + 1), 8), TypeClass::I).unwrap();
            assert_eq!((fc.b2plus, fc.b2minus), (Some(1), Some((10 + n) as u32)));
            assert_eq!(fc.lattice.is_some(), n == -1 || n == -9);
        }
    }

    #[test]
    fn main_degenerate_inputs() {
        assert_eq!(theorem_main(Grading::new(1, 3), TypeClass::I), Err(ObstructError::Inconsistent(Grading::new(19, 3))));
        assert_eq!(theorem_main(Grading::new(1, 16), TypeClass::II), Err(ObstructError::Inconsistent(Grading::new(19, 2))));
        for (h, t) in [(Grading::new(9, 8), TypeClass::I), (g(2), TypeClass::I), (Grading::new(5, 4), TypeClass::II)] {
            let fc = theorem_main(h, t).unwrap();
            assert_eq!(fc.scope, Scope::NegativeDefiniteOnly);
            assert_eq!(fc.reason, Some(Reason::NoIndefiniteForm));
            assert_eq!(fc.b2minus, None);
        }
    }

    fn contact(d: Grading, tower: Option<TowerName>) -> ContactClass {
        ContactClass { d, tower, j_invariant: true }
    }

    #[test]
    fn contact_examples() {
        indefinite(&theorem_contact(&contact(g(0), Some(TowerName::Gamma))).unwrap(), 2, 10, Some("2H ⊕ E8(-1)"));
        indefinite(&theorem_contact(&contact(g(-1), Some(TowerName::Beta))).unwrap(), 1, 9, Some("H ⊕ E8(-1)"));
        for d in [g(-7), g(0), Grading::new(3, 4)] {
            let fc = theorem_contact(&contact(d, Some(TowerName::Alpha))).unwrap();
            assert_eq!(fc.scope, Scope::NegativeDefiniteOnly);
            assert_eq!(fc.reason, Some(Reason::AlphaTower));
            assert_eq!((fc.b2plus, fc.b2minus, fc.lattice), (None, None, None));
        }
        let not_inv = ContactClass { d: g(0), tower: Some(TowerName::Gamma), j_invariant: false };
        assert!(matches!(theorem_contact(&not_inv), Err(ObstructError::HypothesisNotMet(_))));
        assert!(matches!(theorem_contact(&contact(g(0), None)), Err(ObstructError::HypothesisNotMet(_))));
        assert!(matches!(
            theorem_contact(&contact(Grading::new(1, 8), Some(TowerName::Beta))),
            Err(ObstructError::Inconsistent(_))
        ));
    }

    #[test]
    fn cross_theorem_identity() {
        for h in sweep() {
            let d1 = h.scale(2) - 1;
            let d2 = h.scale(2);
            assert_eq!(theorem_contact(&contact(d1, Some(TowerName::Beta))), theorem_main(h, TypeClass::I), "h = {h}");
            assert_eq!(theorem_contact(&contact(d2, Some(TowerName::Gamma))), theorem_main(h, TypeClass::II), "h = {h}");
        }
    }

    #[test]
    fn signatures_are_multiples_of_eight_for_integral_h() {
        for h in -6..=1 {
            for t in [TypeClass::I, TypeClass::II] {
                let fc = theorem_main(g(h), t).unwrap();
                assert_eq!(fc.signature(), Some(8 * h - 8));
                assert!(fc.lattice.is_some());
            }
        }
    }

    #[test]
    fn euler_examples() {
        let fc = theorem_main(g(0), TypeClass::I).unwrap();
        let b = euler_bounds(Some(&fc), Some(g(-20)));
        assert_eq!((b.chi_indefinite, b.chi_negdef_max, b.finite), (Some(11), Some(23), true));
        assert_eq!(b.indefinite_meets_c, Some(true));
        let b = euler_bounds(None, Some(g(0)));
        assert_eq!((b.chi_indefinite, b.chi_negdef_max, b.finite), (None, Some(3), true));
        let b = euler_bounds(Some(&fc), None);
        assert_eq!((b.chi_indefinite, b.chi_negdef_max, b.finite), (Some(11), None, true));
        // 5·1 - 9 + 2 = -2 < 0
        assert_eq!(euler_bounds(Some(&fc), Some(g(0))).indefinite_meets_c, Some(false));
        assert_eq!(euler_bounds(None, Some(Grading::new(1, 2))).chi_negdef_max, Some(2));
    }

    #[test]
    fn euler_monotone_in_c() {
        let cs: Vec<Grading> = (-40..=40).map(|n| Grading::new(n, 3)).collect();
        for w in cs.windows(2) {
            let a = euler_bounds(None, Some(w[0])).chi_negdef_max.unwrap();
            let b = euler_bounds(None, Some(w[1])).chi_negdef_max.unwrap();
            assert!(b <= a);
        }
    }

    fn rank_one(h: Grading, t: TypeClass) -> FloerModel {
        let c = -h.scale(2);
        build_rank_one(h, t, Window::new(c - 28, c + 8, g(1)).unwrap()).unwrap()
    }

    #[test]
    fn proof_replay_matches_theorem() {
        for h in [g(-2), g(-1), Grading::new(-1, 2), g(0), Grading::new(1, 2), g(1), g(2), Grading::new(3, 8)] {
            for t in [TypeClass::I, TypeClass::II] {
                let y = rank_one(h, t);
                let r = replay_main_proof(&y).unwrap();
                assert!(r.iota_square, "h = {h}, {t}");
                let expected = match t {
                    TypeClass::I => 1,
                    TypeClass::II => 2,
                };
                assert_eq!(r.candidates, vec![expected], "h = {h}, {t}");
                assert_eq!(r.forced, Some(expected));
                assert_eq!(r.degree, match t {
                    TypeClass::I => -h.scale(2) + 1,
                    TypeClass::II => -h.scale(2),
                });
                if let Ok(FillingConstraint { b2plus: Some(p), b2minus: Some(m), .. }) = theorem_main(h, t) {
                    assert_eq!(u32::from(expected), p);
                    let f = hs_bar_map(CobordismData::new(p, m));
                    assert_eq!(f.degree(), Some(r.degree));
                    assert_eq!(grading_shift(CobordismData::new(p, m)), r.degree);
                    assert!(pstar_square_commutes(&y, f).unwrap());
                }
            }
        }
    }

    #[test]
    fn s3_forces_identity() {
        let s3 = build_s3(Window::with_default_guard(-30, 6).unwrap()).unwrap();
        let r = replay_main_proof(&s3).unwrap();
        assert_eq!(r.degree, g(0));
        assert_eq!(r.forced, Some(0));
        assert!(pstar_square_commutes(&s3, BarMap::identity()).unwrap());
    }

    #[test]
    fn wrong_maps_do_not_close_the_square() {
        let y = rank_one(g(0), TypeClass::I);
        for q in [0, 2] {
            assert!(!pstar_square_commutes(&y, BarMap::Mono { qpow: q, degree: g(1) }).unwrap());
        }
        assert!(!pstar_square_commutes(&y, BarMap::Mono { qpow: 1, degree: g(5) }).unwrap());
        // the zero map fails to close the square since p_*(x) ≠ 0
        assert!(!pstar_square_commutes(&y, BarMap::Zero).unwrap());
    }

    #[test]
    fn replay_needs_a_hat_flavor() {
        let y = crate::floer::build_y4k1(1, Window::with_default_guard(-4, 20).unwrap()).unwrap();
        assert!(matches!(forced_qpower(&y), Err(ObstructError::Floer(FloerError::MissingFlavor(Flavor::Hat)))));
    }

    #[test]
    fn json_shape() {
        let fc = theorem_main(g(0), TypeClass::I).unwrap();
        let v = serde_json::to_value(&fc).unwrap();
        assert_eq!(v["scope"], "indefinite-filling");
        assert_eq!(v["b2minus"], 9);
        assert!(v.get("reason").is_none());
        let neg = serde_json::to_value(theorem_contact(&contact(g(0), Some(TowerName::Alpha))).unwrap()).unwrap();
        assert_eq!(neg["scope"], "negative-definite-only");
        assert_eq!(neg["reason"], "alpha-tower");
        assert!(neg["b2plus"].is_null());
    }
}
