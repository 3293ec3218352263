//! Desk-scale models of the monopole and Pin(2)-monopole Floer groups of a
//! rational homology sphere with a self-conjugate spin^c structure.
//!
//! A model stores, for each flavor it knows about, the graded spaces `HM`
//! (an `F[[U]]`-module), `HS` (an `R = F[[V]][Q]/(Q³)`-module) and the bar
//! group `F[[V,V⁻¹]][Q]/(Q³)`, together with the Gysin triangle
//!
//! ```text
//!   HS --Q--> HS --ι--> HM --π--> HS
//! ```
//!
//! and the map relating `HS` to the bar group (`p_*` for the hat flavor,
//! `i_*` for the to flavor). Everything is truncated to a grading window.

mod basis;
mod dual;
mod ladder;
mod verify;
mod y4k1;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graded::{GradedError, GradedMap, GradedSpace, Grading, Window};

pub use basis::BasisElt;
pub use verify::{verify_model, CheckKind, FlavorReport, GradingRow, VerifyReport};
pub use y4k1::CyclicSummand;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FloerError {
    #[error("window {window} is too narrow: it must contain [{need_lo}, {need_hi}]")]
    WindowTooNarrow { window: Window, need_lo: Grading, need_hi: Grading },
    #[error("k must be a positive integer, got {0}")]
    NonPositiveK(i64),
    #[error("model has no {0} flavor")]
    MissingFlavor(Flavor),
    #[error("model has no i_* map from the bar group")]
    MissingIstar,
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// Monomial `Q^qpow V^vpow` in `R`, or in its Laurent extension on the bar flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingMonomial {
    pub qpow: u8,
    pub vpow: i64,
}

impl RingMonomial {
    pub fn new(qpow: u8, vpow: i64) -> Option<Self> {
        (qpow <= 2).then_some(RingMonomial { qpow, vpow })
    }

    /// `V` has degree −4 and `Q` degree −1.
    pub fn degree(&self) -> Grading {
        Grading::int(-i64::from(self.qpow) - 4 * self.vpow)
    }
}

/// Position of the reduced generator when `HM_•(Y, s)` has rank one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeClass {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II")]
    II,
}

/// Type of the same spin^c structure on the orientation reversal.
pub fn dual_type(t: TypeClass) -> TypeClass {
    match t {
        TypeClass::I => TypeClass::II,
        TypeClass::II => TypeClass::I,
    }
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeClass::I => "I",
            TypeClass::II => "II",
        })
    }
}

impl FromStr for TypeClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "I" | "1" => Ok(TypeClass::I),
            "II" | "2" => Ok(TypeClass::II),
            _ => Err(format!("unknown type {s:?}, expected I or II")),
        }
    }
}

/// Images under `i_*` of the `Q²`, `Q` and `1` sub-towers of the bar group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TowerName {
    Alpha,
    Beta,
    Gamma,
}

impl TowerName {
    /// Tower fed by the `Q^qpow` sub-tower.
    pub fn from_qpow(qpow: u8) -> Option<Self> {
        match qpow {
            0 => Some(TowerName::Gamma),
            1 => Some(TowerName::Beta),
            2 => Some(TowerName::Alpha),
            _ => None,
        }
    }

    pub fn qpow(self) -> u8 {
        match self {
            TowerName::Gamma => 0,
            TowerName::Beta => 1,
            TowerName::Alpha => 2,
        }
    }
}

impl fmt::Display for TowerName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TowerName::Alpha => "alpha",
            TowerName::Beta => "beta",
            TowerName::Gamma => "gamma",
        })
    }
}

impl FromStr for TowerName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha" => Ok(TowerName::Alpha),
            "beta" => Ok(TowerName::Beta),
            "gamma" => Ok(TowerName::Gamma),
            _ => Err(format!("unknown tower {s:?}, expected alpha, beta or gamma")),
        }
    }
}

/// Contact invariant data: grading `d(ξ)`, the tower containing `π_* c(ξ)`,
/// and whether `c(ξ)` is fixed by the involution `ȷ_*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContactClass {
    pub d: Grading,
    pub tower: Option<TowerName>,
    pub j_invariant: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// The "from" (hat) flavor.
    Hat,
    /// The "to" flavor.
    To,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Hat => "hat",
            Flavor::To => "to",
        })
    }
}

/// `F[[V,V⁻¹]][Q]/(Q³)` on a window. The `Q⁰` sub-tower lives in gradings
/// `shift - 4a`, the `Q^i` sub-tower in `shift - i - 4a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarModel {
    pub space: Arc<GradedSpace>,
    pub v: GradedMap,
    pub q: GradedMap,
    pub shift: Grading,
}

impl BarModel {
    /// Which `Q^i` sub-tower owns grading `g`, if any.
    pub fn qpow_at(&self, g: Grading) -> Option<u8> {
        match self.shift.residue(g, 4)? {
            r @ 0..=2 => Some(r as u8),
            _ => None,
        }
    }
}

/// One flavor (hat or to) of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlavorModel {
    pub flavor: Flavor,
    pub hm: Arc<GradedSpace>,
    pub hs: Arc<GradedSpace>,
    pub bar: BarModel,
    /// `U` on `HM`, degree −2.
    pub u: GradedMap,
    /// `V` on `HS`, degree −4.
    pub v: GradedMap,
    /// `Q` on `HS`, degree −1; also the connecting map of the Gysin triangle.
    pub q: GradedMap,
    pub iota: GradedMap,
    pub pi: GradedMap,
    /// `p_*: HS → bar` (hat flavor only).
    pub pstar: Option<GradedMap>,
    /// `i_*: bar → HS` (to flavor only).
    pub istar: Option<GradedMap>,
    /// Q-column index of every `HS` basis vector, when the module is a sum of
    /// three V-towers.
    pub column_of: BTreeMap<BasisElt, u8>,
    /// The generator of the reduced group, as a vector in `HM` at its grading.
    pub reduced_generator: Option<(Grading, Vec<bool>)>,
}

impl FlavorModel {
    pub fn window(&self) -> &Window {
        self.hs.window()
    }

    /// Unique basis vector in the top nonzero grading of `HS`, if that grading
    /// is one-dimensional.
    pub fn top_element(&self) -> Option<BasisElt> {
        let g = self.hs.top()?;
        (self.hs.dim_at(g) == 1).then_some(BasisElt { grading: g, index: 0 })
    }
}

/// Model of one oriented manifold with a self-conjugate spin^c structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloerModel {
    pub name: String,
    pub hat: Option<FlavorModel>,
    pub to: Option<FlavorModel>,
}

impl FloerModel {
    pub fn flavor(&self, f: Flavor) -> Result<&FlavorModel, FloerError> {
        match f {
            Flavor::Hat => self.hat.as_ref(),
            Flavor::To => self.to.as_ref(),
        }
        .ok_or(FloerError::MissingFlavor(f))
    }

    pub fn hm_hat(&self) -> Option<&GradedSpace> {
        self.hat.as_ref().map(|m| m.hm.as_ref())
    }

    pub fn hs_hat(&self) -> Option<&GradedSpace> {
        self.hat.as_ref().map(|m| m.hs.as_ref())
    }

    pub fn hm_to(&self) -> Option<&GradedSpace> {
        self.to.as_ref().map(|m| m.hm.as_ref())
    }

    pub fn hs_to(&self) -> Option<&GradedSpace> {
        self.to.as_ref().map(|m| m.hs.as_ref())
    }

    /// Bar group used by cobordism maps: the hat flavor's when present.
    pub fn hs_bar(&self) -> Option<&BarModel> {
        self.hat.as_ref().or(self.to.as_ref()).map(|m| &m.bar)
    }

    /// Identification shift of the bar group (grading of the `Q⁰` generator).
    pub fn hs_bar_shift(&self) -> Option<Grading> {
        self.hs_bar().map(|b| b.shift)
    }

    pub fn istar(&self) -> Option<&GradedMap> {
        self.to.as_ref().and_then(|m| m.istar.as_ref())
    }
}

/// `HS^(S³) = R⟨-1⟩` and `HM^(S³) = F[[U]]⟨-1⟩`, with the to flavor
/// obtained by duality.
pub fn build_s3(window: Window) -> Result<FloerModel, FloerError> {
    // two full period-4 blocks below the top generator
    let (need_lo, need_hi) = (Grading::int(-9), Grading::int(-1));
    if !window.contains_range(need_lo, need_hi) {
        return Err(FloerError::WindowTooNarrow { window, need_lo, need_hi });
    }
    let hat = ladder::hat_ladder(&ladder::Ladder::s3(), window);
    let to = dual::dualize(&ladder::hat_ladder(&ladder::Ladder::s3(), window.reflected()));
    Ok(FloerModel { name: "S^3".into(), hat: Some(hat), to: Some(to) })
}

/// Rank-one model of Type `t` with Frøyshov invariant `h`.
///
/// The hat flavor follows the tower lists directly; the to flavor is the dual
/// of the hat flavor of the orientation reversal (dual Type, invariant `-h`).
pub fn build_rank_one(h: Grading, t: TypeClass, window: Window) -> Result<FloerModel, FloerError> {
    // the top element and a full period below it
    let need_lo = -h.scale(2) - 9;
    let need_hi = -h.scale(2);
    if !window.contains_range(need_lo, need_hi) {
        return Err(FloerError::WindowTooNarrow { window, need_lo, need_hi });
    }
    let hat = ladder::hat_ladder(&ladder::Ladder::rank_one(h, t), window);
    let to = dual::dualize(&ladder::hat_ladder(
        &ladder::Ladder::rank_one(-h, dual_type(t)),
        window.reflected(),
    ));
    Ok(FloerModel { name: format!("rank-one Type {t}, h = {h}"), hat: Some(hat), to: Some(to) })
}

/// To flavor of `-Y_{4k+1}`, `-Σ(2, 8k+3, 16k+7)`, with the auxiliary
/// summand `J` (doubled in `HM`) empty unless given.
pub fn build_y4k1(k: i64, window: Window) -> Result<FloerModel, FloerError> {
    build_y4k1_with_j(k, &[], window)
}

pub fn build_y4k1_with_j(k: i64, j: &[CyclicSummand], window: Window) -> Result<FloerModel, FloerError> {
    if k <= 0 {
        return Err(FloerError::NonPositiveK(k));
    }
    // gradings 0 ..= 4k + 3 checkable: the truncated summand and the start
    // of the α- and β-towers
    let need_lo = Grading::int(-2);
    let need_hi = Grading::int(4 * k + 4);
    if !window.contains_range(need_lo, need_hi) {
        return Err(FloerError::WindowTooNarrow { window, need_lo, need_hi });
    }
    let to = y4k1::y4k1_to(k, j, window);
    Ok(FloerModel { name: format!("-Y_{} (k = {k})", 4 * k + 1), hat: None, to: Some(to) })
}

/// Tower containing the nonzero `i_*`-image class at grading `g`, or `None`
/// when `i_*` vanishes there.
pub fn tower_of(model: &FloerModel, g: Grading) -> Result<Option<TowerName>, FloerError> {
    let to = model.flavor(Flavor::To)?;
    let istar = to.istar.as_ref().ok_or(FloerError::MissingIstar)?;
    if !to.bar.space.window().is_interior(g) {
        return Err(GradedError::UnverifiableAtBoundary(g).into());
    }
    if istar.block(g).is_zero() {
        return Ok(None);
    }
    Ok(to.bar.qpow_at(g).and_then(TowerName::from_qpow))
}
