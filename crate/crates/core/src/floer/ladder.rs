use std::collections::BTreeMap;

use super::basis::{keyed_map, unit, KeyedBasis};
use super::{BarModel, Flavor, FlavorModel, TypeClass};
use crate::graded::{Grading, Window};

/// Shape of a hat-flavor model built from three `F[[V]]`-towers.
#[derive(Debug, Clone)]
pub(crate) struct Ladder {
    /// Top gradings of the three V-towers of `HS`, in Q-column order.
    pub tops: [Grading; 3],
    /// Top of the `F[[U]]` tower of `HM`.
    pub hm_top: Grading,
    /// Column whose top element `ι` sends to the reduced generator.
    pub extra: Option<u8>,
}

impl Ladder {
    pub fn s3() -> Self {
        Ladder { tops: [-1, -2, -3].map(Grading::int), hm_top: Grading::int(-1), extra: None }
    }

    pub fn rank_one(h: Grading, t: TypeClass) -> Self {
        let m = -h.scale(2);
        match t {
            TypeClass::I => Ladder { tops: [m - 3, m, m - 1], hm_top: m - 1, extra: Some(1) },
            TypeClass::II => Ladder { tops: [m - 3, m - 4, m - 1], hm_top: m - 1, extra: Some(2) },
        }
    }

    /// Depth offset of `Q` from column `c` into column `c + 1`.
    fn q_offset(&self, c: usize) -> i64 {
        let d = (self.tops[c + 1] - self.tops[c] + 1)
            .div_int(4)
            .to_integer()
            .expect("adjacent columns differ by 1 mod 4");
        assert!(d >= 0, "Q must land inside the next column");
        d
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum HmKey {
    Tower(i64),
    Extra,
}

/// Integers `a` with `top - step * a` inside the window.
fn depths(top: Grading, step: i64, w: &Window) -> std::ops::RangeInclusive<i64> {
    let lo = -((w.hi() - top).div_int(step).floor());
    let hi = (top - w.lo()).div_int(step).floor();
    lo..=hi
}

pub(crate) fn hat_ladder(l: &Ladder, window: Window) -> FlavorModel {
    let offsets = [l.q_offset(0), l.q_offset(1)];

    let mut hs = KeyedBasis::<(u8, i64)>::new(window);
    for (c, top) in l.tops.iter().enumerate() {
        for a in depths(*top, 4, &window).filter(|a| *a >= 0) {
            hs.add((c as u8, a), *top - 4 * a);
        }
    }
    let mut hm = KeyedBasis::<HmKey>::new(window);
    for b in depths(l.hm_top, 2, &window).filter(|b| *b >= 0) {
        hm.add(HmKey::Tower(b), l.hm_top - 2 * b);
    }
    if let Some(c) = l.extra {
        hm.add(HmKey::Extra, l.tops[c as usize]);
    }
    let shift = l.tops[0];
    let mut bar = KeyedBasis::<(u8, i64)>::new(window);
    for i in 0..3u8 {
        let top = shift - i64::from(i);
        for a in depths(top, 4, &window) {
            bar.add((i, a), top - 4 * a);
        }
    }

    let hs_space = hs.space(true, false);
    let hm_space = hm.space(true, false);
    let bar_space = bar.space(true, true);
    let deg = Grading::int;

    let v = keyed_map(&hs, &hs_space, &hs, &hs_space, deg(-4), |&(c, a)| vec![(c, a + 1)]);
    let q = keyed_map(&hs, &hs_space, &hs, &hs_space, deg(-1), |&(c, a)| {
        if c < 2 {
            vec![(c + 1, a + offsets[c as usize])]
        } else {
            vec![]
        }
    });
    let u = keyed_map(&hm, &hm_space, &hm, &hm_space, deg(-2), |k| match k {
        HmKey::Tower(b) => vec![HmKey::Tower(b + 1)],
        HmKey::Extra => vec![],
    });
    let iota = keyed_map(&hs, &hs_space, &hm, &hm_space, Grading::ZERO, |&(c, a)| {
        let g = l.tops[c as usize] - 4 * a;
        if c == 0 {
            let b = g.steps_from(l.hm_top, -2).expect("column 0 sits on the U-tower");
            vec![HmKey::Tower(b)]
        } else if a == 0 && l.extra == Some(c) {
            vec![HmKey::Extra]
        } else {
            vec![]
        }
    });
    let pi = keyed_map(&hm, &hm_space, &hs, &hs_space, Grading::ZERO, |k| match k {
        HmKey::Tower(b) => {
            let g = l.hm_top - 2 * b;
            match g.steps_from(l.tops[2], -4) {
                Some(a) if a >= 0 => vec![(2, a)],
                _ => vec![],
            }
        }
        HmKey::Extra => vec![],
    });
    let bar_v = keyed_map(&bar, &bar_space, &bar, &bar_space, deg(-4), |&(i, a)| vec![(i, a + 1)]);
    let bar_q = keyed_map(&bar, &bar_space, &bar, &bar_space, deg(-1), |&(i, a)| {
        if i < 2 {
            vec![(i + 1, a)]
        } else {
            vec![]
        }
    });
    let pstar = keyed_map(&hs, &hs_space, &bar, &bar_space, Grading::ZERO, |&(c, a)| {
        let g = l.tops[c as usize] - 4 * a;
        let depth = g.steps_from(shift - i64::from(c), -4).expect("columns align with bar sub-towers");
        vec![(c, depth)]
    });

    let column_of: BTreeMap<_, _> = hs.iter().map(|((c, _), e)| (*e, *c)).collect();
    let reduced_generator = hm
        .get(&HmKey::Extra)
        .map(|e| (e.grading, unit(hm_space.dim_at(e.grading), e.index)));

    FlavorModel {
        flavor: Flavor::Hat,
        hm: hm_space,
        hs: hs_space,
        bar: BarModel { space: bar_space, v: bar_v, q: bar_q, shift },
        u,
        v,
        q,
        iota,
        pi,
        pstar: Some(pstar),
        istar: None,
        column_of,
        reduced_generator,
    }
}
