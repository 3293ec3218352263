use std::collections::BTreeMap;
use std::sync::Arc;

use crate::graded::{F2Matrix, GradedMap, GradedSpace, Grading, Window};

/// Position of a basis vector: its grading and index within that grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElt {
    pub grading: Grading,
    pub index: usize,
}

/// Basis of a graded space keyed by a symbolic name, truncated to a window.
pub(crate) struct KeyedBasis<K: Ord + Clone> {
    window: Window,
    elems: BTreeMap<K, BasisElt>,
    dims: BTreeMap<Grading, usize>,
}

impl<K: Ord + Clone> KeyedBasis<K> {
    pub fn new(window: Window) -> Self {
        KeyedBasis { window, elems: BTreeMap::new(), dims: BTreeMap::new() }
    }

    /// Adds `key` at grading `g`; silently dropped outside the window.
    pub fn add(&mut self, key: K, g: Grading) -> bool {
        if !self.window.contains(g) {
            return false;
        }
        let d = self.dims.entry(g).or_insert(0);
        self.elems.insert(key, BasisElt { grading: g, index: *d });
        *d += 1;
        true
    }

    pub fn get(&self, key: &K) -> Option<BasisElt> {
        self.elems.get(key).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BasisElt)> {
        self.elems.iter()
    }

    pub fn space(&self, extends_below: bool, extends_above: bool) -> Arc<GradedSpace> {
        Arc::new(
            GradedSpace::new(self.window, self.dims.clone(), extends_below, extends_above)
                .expect("basis elements lie in the window"),
        )
    }
}

/// Builds the map sending each source key to the sum of the listed target
/// keys. Targets that fell outside the window are dropped.
pub(crate) fn keyed_map<S: Ord + Clone, T: Ord + Clone>(
    src: &KeyedBasis<S>,
    src_space: &Arc<GradedSpace>,
    tgt: &KeyedBasis<T>,
    tgt_space: &Arc<GradedSpace>,
    degree: Grading,
    rule: impl Fn(&S) -> Vec<T>,
) -> GradedMap {
    let mut blocks: BTreeMap<Grading, F2Matrix> = BTreeMap::new();
    for (key, e) in src.iter() {
        for t in rule(key) {
            let Some(te) = tgt.get(&t) else { continue };
            assert_eq!(te.grading, e.grading + degree, "keyed map breaks homogeneity");
            let block = blocks.entry(e.grading).or_insert_with(|| {
                F2Matrix::zeros(tgt_space.dim_at(te.grading), src_space.dim_at(e.grading))
            });
            block.toggle(te.index, e.index);
        }
    }
    GradedMap::new(src_space.clone(), tgt_space.clone(), degree, blocks)
        .expect("keyed map blocks match the bases")
}

/// Standard basis vector of length `dim` with a one at `index`.
pub(crate) fn unit(dim: usize, index: usize) -> Vec<bool> {
    let mut v = vec![false; dim];
    v[index] = true;
    v
}
