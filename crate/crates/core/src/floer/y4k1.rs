use serde::{Deserialize, Serialize};

use super::basis::{keyed_map, KeyedBasis};
use super::{BarModel, Flavor, FlavorModel};
use crate::graded::{Grading, Window};

/// `(F[[U]]/U^length)` with its lowest element in grading `bottom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSummand {
    pub bottom: Grading,
    pub length: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum HmKey {
    /// `T⁺₀`, by grading.
    Tower(i64),
    /// `(F[[U]]/U^{2k+1})₀`, by grading.
    Trunc(i64),
    /// Copy, summand, level of `J ⊕ J`.
    J(u8, usize, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum HsKey {
    Gamma(i64),
    Beta(i64),
    Alpha(i64),
    J(usize, u32),
}

/// To flavor of `-Y_{4k+1}`.
///
/// `HM = T⁺₀ ⊕ (F[[U]]/U^{2k+1})₀ ⊕ J ⊕ J`. On the Pin(2) side the γ-tower
/// starts at 0, the β-tower at `4k+3` and the α-tower at `4k+2`; in addition
/// `HS` carries a finite V-chain in gradings `2, 6, …, 4k-2` outside the image
/// of `i_*`, and one copy of `J` on which `Q = 0` and `V = U²`.
pub(crate) fn y4k1_to(k: i64, j: &[CyclicSummand], window: Window) -> FlavorModel {
    let top = window.hi().floor();
    let beta_start = 4 * k + 3;
    let alpha_start = 4 * k + 2;
    let evens = || (0..=top).filter(|g| g % 2 == 0);

    let mut hm = KeyedBasis::<HmKey>::new(window);
    let mut hs = KeyedBasis::<HsKey>::new(window);
    for g in evens() {
        hm.add(HmKey::Tower(g), g.into());
        if g <= 4 * k {
            hm.add(HmKey::Trunc(g), g.into());
        }
        if g % 4 == 0 {
            hs.add(HsKey::Gamma(g), g.into());
        } else if g >= 2 {
            hs.add(HsKey::Alpha(g), g.into());
        }
    }
    for g in (beta_start..=top).step_by(4) {
        hs.add(HsKey::Beta(g), g.into());
    }
    for (s, summand) in j.iter().enumerate() {
        for level in 0..summand.length {
            let g = summand.bottom + 2 * i64::from(level);
            hs.add(HsKey::J(s, level), g);
            for copy in 0..2 {
                hm.add(HmKey::J(copy, s, level), g);
            }
        }
    }
    let mut bar = KeyedBasis::<(u8, i64)>::new(window);
    for i in 0..3u8 {
        let lo = -((window.hi() + i64::from(i)).div_int(4).floor());
        let hi = (-window.lo() - i64::from(i)).div_int(4).floor();
        for a in lo..=hi {
            bar.add((i, a), Grading::int(-i64::from(i) - 4 * a));
        }
    }

    let hm_space = hm.space(false, true);
    let hs_space = hs.space(false, true);
    let bar_space = bar.space(true, true);
    let deg = Grading::int;

    let u = keyed_map(&hm, &hm_space, &hm, &hm_space, deg(-2), |key| match *key {
        HmKey::Tower(g) => vec![HmKey::Tower(g - 2)],
        HmKey::Trunc(g) => vec![HmKey::Trunc(g - 2)],
        HmKey::J(c, s, l) if l > 0 => vec![HmKey::J(c, s, l - 1)],
        HmKey::J(..) => vec![],
    });
    let v = keyed_map(&hs, &hs_space, &hs, &hs_space, deg(-4), |key| match *key {
        HsKey::Gamma(g) => vec![HsKey::Gamma(g - 4)],
        HsKey::Beta(g) => vec![HsKey::Beta(g - 4)],
        HsKey::Alpha(g) if g == alpha_start => vec![],
        HsKey::Alpha(g) => vec![HsKey::Alpha(g - 4)],
        HsKey::J(s, l) if l >= 2 => vec![HsKey::J(s, l - 2)],
        HsKey::J(..) => vec![],
    });
    let q = keyed_map(&hs, &hs_space, &hs, &hs_space, deg(-1), |key| match *key {
        HsKey::Gamma(g) => vec![HsKey::Beta(g - 1)],
        HsKey::Beta(g) => vec![HsKey::Alpha(g - 1)],
        HsKey::Alpha(_) | HsKey::J(..) => vec![],
    });
    let iota = keyed_map(&hs, &hs_space, &hm, &hm_space, Grading::ZERO, |key| match *key {
        HsKey::Gamma(g) => vec![HmKey::Tower(g)],
        HsKey::Alpha(g) if g < alpha_start => vec![HmKey::Tower(g)],
        HsKey::Alpha(_) | HsKey::Beta(_) => vec![],
        HsKey::J(s, l) => vec![HmKey::J(0, s, l), HmKey::J(1, s, l)],
    });
    let pi = keyed_map(&hm, &hm_space, &hs, &hs_space, Grading::ZERO, |key| match *key {
        HmKey::Trunc(g) if g % 4 == 0 => vec![HsKey::Gamma(g)],
        HmKey::Trunc(g) => vec![HsKey::Alpha(g)],
        HmKey::Tower(g) if g >= alpha_start && g % 4 == 2 => vec![HsKey::Alpha(g)],
        HmKey::Tower(_) => vec![],
        HmKey::J(_, s, l) => vec![HsKey::J(s, l)],
    });
    let bar_v = keyed_map(&bar, &bar_space, &bar, &bar_space, deg(-4), |&(i, a)| vec![(i, a + 1)]);
    let bar_q = keyed_map(&bar, &bar_space, &bar, &bar_space, deg(-1), |&(i, a)| {
        if i < 2 {
            vec![(i + 1, a)]
        } else {
            vec![]
        }
    });
    let istar = keyed_map(&bar, &bar_space, &hs, &hs_space, Grading::ZERO, |&(i, a)| {
        let g = -i64::from(i) - 4 * a;
        match i {
            0 if g >= 0 => vec![HsKey::Gamma(g)],
            1 if g >= beta_start => vec![HsKey::Beta(g)],
            2 if g >= alpha_start => vec![HsKey::Alpha(g)],
            _ => vec![],
        }
    });

    FlavorModel {
        flavor: Flavor::To,
        hm: hm_space,
        hs: hs_space,
        bar: BarModel { space: bar_space, v: bar_v, q: bar_q, shift: Grading::ZERO },
        u,
        v,
        q,
        iota,
        pi,
        pstar: None,
        istar: Some(istar),
        column_of: Default::default(),
        reduced_generator: None,
    }
}
