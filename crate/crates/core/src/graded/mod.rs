//! Graded vector spaces over F₂ on a finite grading window, and the graded
//! linear maps between them.
//!
//! Infinite towers are truncated to a [`Window`]. Exactness and commutativity
//! are only asserted at gradings at least `guard` away from either end of the
//! window, where truncation cannot be seen.

mod f2;
mod grading;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use f2::F2Matrix;
pub use grading::{Grading, ParseGradingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradedError {
    #[error("invalid window [{lo}, {hi}] with guard {guard}")]
    InvalidWindow { lo: Grading, hi: Grading, guard: Grading },
    #[error("grading {0} lies outside the window")]
    OutsideWindow(Grading),
    #[error("block at grading {grading} has shape {found:?}, expected {expected:?}")]
    BlockShape { grading: Grading, expected: (usize, usize), found: (usize, usize) },
    #[error("maps are not composable: target of the inner map differs from the source of the outer map")]
    NotComposable,
    #[error("square does not close up: the two composites have different sources, targets or degrees")]
    SquareShape,
    #[error("grading {0} is inside the guard band; exactness cannot be verified there")]
    UnverifiableAtBoundary(Grading),
}

pub type Result<T, E = GradedError> = std::result::Result<T, E>;

/// A closed grading interval `[lo, hi]` with a guard band at each end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    lo: Grading,
    hi: Grading,
    guard: Grading,
}

impl Window {
    pub fn new(lo: Grading, hi: Grading, guard: Grading) -> Result<Self> {
        if lo >= hi || guard < Grading::ZERO {
            return Err(GradedError::InvalidWindow { lo, hi, guard });
        }
        Ok(Window { lo, hi, guard })
    }

    /// Window with the default guard of 1, the largest absolute degree of a
    /// Gysin map.
    pub fn with_default_guard(lo: impl Into<Grading>, hi: impl Into<Grading>) -> Result<Self> {
        Self::new(lo.into(), hi.into(), Grading::int(1))
    }

    pub fn lo(&self) -> Grading {
        self.lo
    }

    pub fn hi(&self) -> Grading {
        self.hi
    }

    pub fn guard(&self) -> Grading {
        self.guard
    }

    pub fn width(&self) -> Grading {
        self.hi - self.lo
    }

    pub fn contains(&self, g: Grading) -> bool {
        self.lo <= g && g <= self.hi
    }

    pub fn contains_range(&self, lo: Grading, hi: Grading) -> bool {
        self.lo <= lo && hi <= self.hi
    }

    /// True when `g` is at distance at least `guard` from both ends.
    pub fn is_interior(&self, g: Grading) -> bool {
        self.lo + self.guard <= g && g <= self.hi - self.guard
    }

    /// The window `g ↦ -1 - g` reflects this one onto.
    pub fn reflected(&self) -> Window {
        Window { lo: -self.hi - 1, hi: -self.lo - 1, guard: self.guard }
    }

    pub fn shifted(&self, by: Grading) -> Window {
        Window { lo: self.lo + by, hi: self.hi + by, guard: self.guard }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Finite-dimensional graded F₂-vector space supported in a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    window: Window,
    dims: BTreeMap<Grading, usize>,
    extends_below: bool,
    extends_above: bool,
}

impl GradedSpace {
    pub fn new(
        window: Window,
        dims: BTreeMap<Grading, usize>,
        extends_below: bool,
        extends_above: bool,
    ) -> Result<Self> {
        if let Some(g) = dims.keys().find(|g| !window.contains(**g)) {
            return Err(GradedError::OutsideWindow(*g));
        }
        let dims = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        Ok(GradedSpace { window, dims, extends_below, extends_above })
    }

    pub fn zero(window: Window) -> Self {
        GradedSpace { window, dims: BTreeMap::new(), extends_below: false, extends_above: false }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn extends_below(&self) -> bool {
        self.extends_below
    }

    pub fn extends_above(&self) -> bool {
        self.extends_above
    }

    /// Dimension at `g`; zero anywhere without a recorded entry.
    pub fn dim_at(&self, g: Grading) -> usize {
        self.dims.get(&g).copied().unwrap_or(0)
    }

    /// Gradings with nonzero dimension, ascending.
    pub fn support(&self) -> impl Iterator<Item = Grading> + '_ {
        self.dims.keys().copied()
    }

    pub fn dims(&self) -> &BTreeMap<Grading, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// The top nonzero grading, if any.
    pub fn top(&self) -> Option<Grading> {
        self.dims.keys().next_back().copied()
    }

    /// Same dimensions on the window `g ↦ -1 - g`, continuation flags swapped.
    pub fn reflected(&self) -> GradedSpace {
        GradedSpace {
            window: self.window.reflected(),
            dims: self.dims.iter().map(|(g, d)| (-*g - 1, *d)).collect(),
            extends_below: self.extends_above,
            extends_above: self.extends_below,
        }
    }
}

/// Degree-homogeneous F₂-linear map between graded spaces.
///
/// `blocks[g]` is the matrix from the source at `g` to the target at
/// `g + degree`; missing blocks are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: Arc<GradedSpace>,
    target: Arc<GradedSpace>,
    degree: Grading,
    blocks: BTreeMap<Grading, F2Matrix>,
}

impl GradedMap {
    pub fn new(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        degree: Grading,
        blocks: BTreeMap<Grading, F2Matrix>,
    ) -> Result<Self> {
        for (g, m) in &blocks {
            let expected = (target.dim_at(*g + degree), source.dim_at(*g));
            if m.shape() != expected {
                return Err(GradedError::BlockShape { grading: *g, expected, found: m.shape() });
            }
        }
        let blocks = blocks.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(GradedMap { source, target, degree, blocks })
    }

    pub fn zero(source: Arc<GradedSpace>, target: Arc<GradedSpace>, degree: Grading) -> Self {
        GradedMap { source, target, degree, blocks: BTreeMap::new() }
    }

    pub fn identity(space: Arc<GradedSpace>) -> Self {
        let blocks = space.dims.iter().map(|(g, d)| (*g, F2Matrix::identity(*d))).collect();
        GradedMap { source: space.clone(), target: space, degree: Grading::ZERO, blocks }
    }

    pub fn source(&self) -> &Arc<GradedSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        &self.target
    }

    pub fn degree(&self) -> Grading {
        self.degree
    }

    /// The block leaving grading `g`, materialized as a zero matrix if absent.
    pub fn block(&self, g: Grading) -> F2Matrix {
        self.blocks.get(&g).cloned().unwrap_or_else(|| {
            F2Matrix::zeros(self.target.dim_at(g + self.degree), self.source.dim_at(g))
        })
    }

    pub fn nonzero_blocks(&self) -> impl Iterator<Item = (Grading, &F2Matrix)> {
        self.blocks.iter().map(|(g, m)| (*g, m))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Image of the vector `v` living at grading `g`.
    pub fn apply(&self, g: Grading, v: &[bool]) -> Vec<bool> {
        self.block(g).apply(v)
    }

    /// Rank of the block landing in target grading `g`.
    pub fn rank_into(&self, g: Grading) -> usize {
        self.block(g - self.degree).rank()
    }

    /// Copy with the block at `g` replaced.
    pub fn with_block(&self, g: Grading, m: F2Matrix) -> Result<Self> {
        let mut blocks = self.blocks.clone();
        blocks.insert(g, m);
        GradedMap::new(self.source.clone(), self.target.clone(), self.degree, blocks)
    }

    /// Copy with the block at `g` set to zero.
    pub fn with_block_zeroed(&self, g: Grading) -> Self {
        let mut out = self.clone();
        out.blocks.remove(&g);
        out
    }

    /// The dual map between reflected spaces (`g ↦ -1 - g`), given by
    /// transposed blocks. Degree is preserved.
    pub fn dual(&self) -> GradedMap {
        let source = Arc::new(self.target.reflected());
        let target = Arc::new(self.source.reflected());
        let blocks = self
            .blocks
            .iter()
            .map(|(g, m)| (-(*g + self.degree) - 1, m.transpose()))
            .collect();
        GradedMap { source, target, degree: self.degree, blocks }
    }

    /// Sum of two maps with the same source, target and degree.
    pub fn sum(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(GradedError::NotComposable);
        }
        let keys: BTreeSet<Grading> = self.blocks.keys().chain(other.blocks.keys()).copied().collect();
        let blocks = keys.into_iter().map(|g| (g, self.block(g).add(&other.block(g)))).collect();
        GradedMap::new(self.source.clone(), self.target.clone(), self.degree, blocks)
    }
}

fn same_space(a: &Arc<GradedSpace>, b: &Arc<GradedSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `f ∘ g`: apply `g` first. Degrees add, blocks multiply.
pub fn compose(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    if !same_space(g.target(), f.source()) {
        return Err(GradedError::NotComposable);
    }
    let blocks = g
        .blocks
        .iter()
        .map(|(s, gb)| (*s, f.block(*s + g.degree).mul(gb)))
        .collect();
    GradedMap::new(g.source.clone(), f.target.clone(), f.degree + g.degree, blocks)
}

pub fn dim_at(space: &GradedSpace, g: Grading) -> usize {
    space.dim_at(g)
}

/// Exactness of `A --f--> B --g--> C` at grading `g0` of `B`.
///
/// Returns `UnverifiableAtBoundary` rather than `false` when `g0` lies in the
/// guard band of `B`'s window.
pub fn is_exact_at(f: &GradedMap, g: &GradedMap, g0: Grading) -> Result<bool> {
    if !same_space(f.target(), g.source()) {
        return Err(GradedError::NotComposable);
    }
    if !f.target().window().is_interior(g0) {
        return Err(GradedError::UnverifiableAtBoundary(g0));
    }
    let into = f.block(g0 - f.degree());
    let out = g.block(g0);
    let composite_zero = out.mul(&into).is_zero();
    Ok(composite_zero && into.rank() == out.nullity())
}

/// Source gradings where `right ∘ top` and `bottom ∘ left` disagree.
///
/// ```text
///   A --top--> B
///   |          |
/// left       right
///   v          v
///   C -bottom-> D
/// ```
///
/// Only gradings in the interior of `A`'s window whose image grading is in
/// the interior of `D`'s window are compared.
pub fn square_defects(
    top: &GradedMap,
    bottom: &GradedMap,
    left: &GradedMap,
    right: &GradedMap,
) -> Result<Vec<Grading>> {
    let upper = compose(right, top)?;
    let lower = compose(bottom, left)?;
    if !same_space(upper.source(), lower.source())
        || !same_space(upper.target(), lower.target())
        || upper.degree() != lower.degree()
    {
        return Err(GradedError::SquareShape);
    }
    let a = upper.source();
    let d = upper.target();
    let deg = upper.degree();
    Ok(a
        .support()
        .filter(|g| a.window().is_interior(*g) && d.window().is_interior(*g + deg))
        .filter(|g| upper.block(*g) != lower.block(*g))
        .collect())
}

/// True iff `right ∘ top = bottom ∘ left` on the checkable gradings.
pub fn check_square(
    top: &GradedMap,
    bottom: &GradedMap,
    left: &GradedMap,
    right: &GradedMap,
) -> Result<bool> {
    square_defects(top, bottom, left, right).map(|d| d.is_empty())
}
