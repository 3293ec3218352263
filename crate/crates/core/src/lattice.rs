//! Even unimodular lattices: the indefinite classification `pH ⊕ qE8(±1)`,
//! and exact invariants of integral Gram matrices as an independent check.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("classification inapplicable: form with b2+ = {b2plus}, b2- = {b2minus} is definite")]
    Definite { b2plus: u32, b2minus: u32 },
    #[error("no even unimodular lattice exists with signature {0} (not divisible by 8)")]
    Signature(i64),
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NonSymmetric(usize, usize),
    #[error("determinant does not fit in 64 bits")]
    DeterminantOverflow,
}

/// `p` hyperbolic planes plus `q` copies of `E8` scaled by `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeForm {
    pub p: u32,
    pub q: u32,
    pub eps: i8,
}

impl LatticeForm {
    /// Normalizes `eps` to `+1` when there are no `E8` blocks.
    pub fn new(p: u32, q: u32, eps: i8) -> Self {
        assert!(eps == 1 || eps == -1, "eps must be ±1");
        LatticeForm { p, q, eps: if q == 0 { 1 } else { eps } }
    }

    pub fn rank(&self) -> u32 {
        2 * self.p + 8 * self.q
    }

    pub fn signature(&self) -> i64 {
        8 * i64::from(self.eps) * i64::from(self.q)
    }

    pub fn b2plus(&self) -> u32 {
        self.p + if self.eps > 0 { 8 * self.q } else { 0 }
    }

    pub fn b2minus(&self) -> u32 {
        self.p + if self.eps < 0 { 8 * self.q } else { 0 }
    }
}

impl fmt::Display for LatticeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeff = |n: u32| if n == 1 { String::new() } else { n.to_string() };
        let mut parts = Vec::new();
        if self.p > 0 {
            parts.push(format!("{}H", coeff(self.p)));
        }
        if self.q > 0 {
            parts.push(format!("{}E8({})", coeff(self.q), self.eps));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// The unique even unimodular form with the given indefinite Betti numbers.
pub fn classify_even_indefinite(b2plus: u32, b2minus: u32) -> Result<LatticeForm, LatticeError> {
    if b2plus == 0 || b2minus == 0 {
        return Err(LatticeError::Definite { b2plus, b2minus });
    }
    let sigma = i64::from(b2plus) - i64::from(b2minus);
    if sigma % 8 != 0 {
        return Err(LatticeError::Signature(sigma));
    }
    let q = (sigma.abs() / 8) as u32;
    Ok(LatticeForm::new(b2plus.min(b2minus), q, if sigma < 0 { -1 } else { 1 }))
}

/// Square integral matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    entries: Vec<Vec<i64>>,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        Ok(GramMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

// Dynkin diagram: chain 0-1-2-3-4-5-6 with 7 attached to 4.
const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

/// Block-diagonal Gram matrix of `form`.
pub fn gram(form: LatticeForm) -> GramMatrix {
    let n = form.rank() as usize;
    let mut m = vec![vec![0i64; n]; n];
    let mut at = 0;
    for _ in 0..form.p {
        m[at][at + 1] = 1;
        m[at + 1][at] = 1;
        at += 2;
    }
    let e = i64::from(form.eps);
    for _ in 0..form.q {
        for i in 0..8 {
            m[at + i][at + i] = 2 * e;
        }
        for (i, j) in E8_EDGES {
            m[at + i][at + j] = e;
            m[at + j][at + i] = e;
        }
        at += 8;
    }
    GramMatrix { entries: m }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub rank: usize,
    pub signature: i64,
    pub even: bool,
    pub det: i64,
}

/// Rank, signature, parity and determinant by exact congruence
/// diagonalization over `Q`.
pub fn invariants(g: &GramMatrix) -> Result<Invariants, LatticeError> {
    let n = g.size();
    for i in 0..n {
        for j in 0..i {
            if g.get(i, j) != g.get(j, i) {
                return Err(LatticeError::NonSymmetric(i, j));
            }
        }
    }
    let even = (0..n).all(|i| g.get(i, i) % 2 == 0);
    let mut a: Vec<Vec<BigRational>> = g
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();

    // Each step uses only "add a multiple of row/col j to row/col i" and
    // simultaneous swaps, so the determinant is the product of the pivots.
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a[p][p].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(p) = (k + 1..n).find(|&p| !a[k][p].is_zero()) {
                // a[k][k] becomes 2a[k][p] + a[p][p] = 2a[k][p] ≠ 0
                for c in 0..n {
                    let v = a[p][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][p].clone();
                    a[r][k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        if !pivot.is_zero() {
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = &a[r][k] / &pivot;
                for c in k..n {
                    let v = &f * &a[k][c];
                    a[r][c] -= v;
                }
                for rr in k..n {
                    let v = &f * &a[rr][k];
                    a[rr][r] -= v;
                }
            }
        }
        diag.push(pivot);
    }

    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let signature = diag.iter().map(|d| if d.is_positive() { 1 } else if d.is_negative() { -1 } else { 0 }).sum();
    let det: BigRational = diag.iter().fold(BigRational::from_integer(1.into()), |acc, d| acc * d);
    debug_assert!(det.is_integer());
    let det = det.to_integer().to_i64().ok_or(LatticeError::DeterminantOverflow)?;
    Ok(Invariants { rank, signature, even, det })
}
