use std::collections::BTreeSet;

use serde::Serialize;

use super::{Flavor, FlavorModel, FloerModel};
use crate::graded::{compose, is_exact_at, GradedMap, Grading};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `HM --π--> HS --Q--> HS`, exactness at the middle.
    ExactPiQ,
    /// `HS --Q--> HS --ι--> HM`.
    ExactQIota,
    /// `HS --ι--> HM --π--> HS`.
    ExactIotaPi,
    /// R-linearity: `ι V = U² ι`, `π U² = V π`, `QV = VQ`, and the bar map
    /// commuting with `V` and `Q`.
    RAction,
    /// `Q` maps column `i` injectively into column `i + 1`.
    QColumns,
    /// Injectivity of `p_*`.
    BarInjective,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingRow {
    pub grading: Grading,
    pub hs_dim: usize,
    pub hm_dim: usize,
    pub exact_pi_q: bool,
    pub exact_q_iota: bool,
    pub exact_iota_pi: bool,
    pub r_action: bool,
    pub q_columns: Option<bool>,
    pub bar_injective: Option<bool>,
}

impl GradingRow {
    pub fn exact(&self) -> bool {
        self.exact_pi_q && self.exact_q_iota && self.exact_iota_pi
    }

    fn failures(&self) -> impl Iterator<Item = CheckKind> {
        [
            (!self.exact_pi_q).then_some(CheckKind::ExactPiQ),
            (!self.exact_q_iota).then_some(CheckKind::ExactQIota),
            (!self.exact_iota_pi).then_some(CheckKind::ExactIotaPi),
            (!self.r_action).then_some(CheckKind::RAction),
            (self.q_columns == Some(false)).then_some(CheckKind::QColumns),
            (self.bar_injective == Some(false)).then_some(CheckKind::BarInjective),
        ]
        .into_iter()
        .flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlavorReport {
    pub flavor: Flavor,
    pub rows: Vec<GradingRow>,
    /// Whether the reduced generator of `HM` lies in the image of `ι`.
    pub reduced_in_image_of_iota: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub model: String,
    pub flavors: Vec<FlavorReport>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
            && self.flavors.iter().all(|f| f.reduced_in_image_of_iota != Some(false))
    }

    pub fn failures(&self) -> Vec<(Flavor, Grading, CheckKind)> {
        self.flavors
            .iter()
            .flat_map(|f| {
                f.rows.iter().flat_map(move |r| r.failures().map(move |k| (f.flavor, r.grading, k)))
            })
            .collect()
    }

    /// Gradings where some exactness check failed in the given flavor.
    pub fn exactness_failures(&self, flavor: Flavor) -> BTreeSet<Grading> {
        self.flavors
            .iter()
            .filter(|f| f.flavor == flavor)
            .flat_map(|f| f.rows.iter().filter(|r| !r.exact()).map(|r| r.grading))
            .collect()
    }
}

pub fn verify_model(model: &FloerModel) -> VerifyReport {
    let flavors = [&model.hat, &model.to].into_iter().flatten().map(verify_flavor).collect();
    VerifyReport { model: model.name.clone(), flavors }
}

fn agree_at(a: &GradedMap, b: &GradedMap, g: Grading) -> bool {
    a.block(g) == b.block(g)
}

fn verify_flavor(m: &FlavorModel) -> FlavorReport {
    let c = |f: &GradedMap, g: &GradedMap| compose(f, g).expect("model maps compose");
    let u2 = c(&m.u, &m.u);
    let hs_pairs = [
        (c(&m.iota, &m.v), c(&u2, &m.iota)),
        (c(&m.q, &m.v), c(&m.v, &m.q)),
    ];
    let hm_pairs = [(c(&m.pi, &u2), c(&m.v, &m.pi))];
    let mut bar_link_hs = Vec::new();
    let mut bar_link_bar = Vec::new();
    if let Some(p) = &m.pstar {
        bar_link_hs.push((c(p, &m.v), c(&m.bar.v, p)));
        bar_link_hs.push((c(p, &m.q), c(&m.bar.q, p)));
    }
    if let Some(i) = &m.istar {
        bar_link_bar.push((c(i, &m.bar.v), c(&m.v, i)));
        bar_link_bar.push((c(i, &m.bar.q), c(&m.q, i)));
    }

    let window = *m.window();
    let gradings: BTreeSet<Grading> = m
        .hs
        .support()
        .chain(m.hm.support())
        .chain(m.bar.space.support())
        .filter(|g| window.is_interior(*g))
        .collect();

    let rows = gradings
        .into_iter()
        .rev()
        .map(|g| {
            let exact = |f: &GradedMap, h: &GradedMap| is_exact_at(f, h, g).expect("interior grading");
            let r_action = hs_pairs.iter().chain(&hm_pairs).chain(&bar_link_hs).chain(&bar_link_bar)
                .all(|(a, b)| agree_at(a, b, g));
            GradingRow {
                grading: g,
                hs_dim: m.hs.dim_at(g),
                hm_dim: m.hm.dim_at(g),
                exact_pi_q: exact(&m.pi, &m.q),
                exact_q_iota: exact(&m.q, &m.iota),
                exact_iota_pi: exact(&m.iota, &m.pi),
                r_action,
                // the to flavor is a dual: there Q is onto the next column, not into it
                q_columns: (m.flavor == Flavor::Hat && !m.column_of.is_empty()).then(|| q_columns_ok(m, g)),
                bar_injective: m.pstar.as_ref().map(|p| p.block(g).nullity() == 0),
            }
        })
        .collect();

    // in the to flavor the reduced class is dual to it and survives π instead
    let reduced_in_image_of_iota = m
        .reduced_generator
        .as_ref()
        .filter(|_| m.flavor == Flavor::Hat)
        .map(|(g, vec)| m.iota.block(*g).solve(vec).is_some());

    FlavorReport { flavor: m.flavor, rows, reduced_in_image_of_iota }
}

/// `Q` sends the column-`i` basis vectors at `g` injectively into the span of
/// the column-`(i+1)` basis vectors at `g - 1`, for `i = 0, 1`.
fn q_columns_ok(m: &FlavorModel, g: Grading) -> bool {
    let block = m.q.block(g);
    let col_at = |grading: Grading, index: usize| {
        m.column_of.get(&super::BasisElt { grading, index }).copied()
    };
    for from in 0..2u8 {
        let sources: Vec<usize> = (0..m.hs.dim_at(g)).filter(|j| col_at(g, *j) == Some(from)).collect();
        for &j in &sources {
            let lands_in_next = block
                .column(j)
                .iter()
                .enumerate()
                .all(|(i, &x)| !x || col_at(g - 1, i) == Some(from + 1));
            if !lands_in_next {
                return false;
            }
        }
        let mut sub = crate::graded::F2Matrix::zeros(block.rows(), sources.len());
        for (k, &j) in sources.iter().enumerate() {
            for i in 0..block.rows() {
                sub.set(i, k, block.get(i, j));
            }
        }
        if sub.nullity() != 0 {
            return false;
        }
    }
    true
}
