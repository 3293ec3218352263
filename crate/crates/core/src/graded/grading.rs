use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational degree.
///
/// Serialized as `"p/q"`, or `"n"` when integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Grading(Rational64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}: expected \"n\" or \"p/q\"")]
pub struct ParseGradingError(pub String);

impl Grading {
    pub const ZERO: Grading = Grading(Rational64::new_raw(0, 1));

    pub fn new(numer: i64, denom: i64) -> Self {
        Grading(Rational64::new(numer, denom))
    }

    pub fn int(n: i64) -> Self {
        Grading(Rational64::from_integer(n))
    }

    pub fn ratio(self) -> Rational64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if this grading is integral.
    pub fn to_integer(self) -> Option<i64> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    pub fn abs(self) -> Self {
        Grading(self.0.abs())
    }

    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn scale(self, k: i64) -> Self {
        Grading(self.0 * k)
    }

    pub fn div_int(self, k: i64) -> Self {
        Grading(self.0 / k)
    }

    /// `(self - other) / step` when that is an integer.
    pub fn steps_from(self, other: Grading, step: i64) -> Option<i64> {
        Grading((self.0 - other.0) / step).to_integer()
    }

    /// Residue of an integral difference `self - base` modulo `m`, in `0..m`.
    pub fn residue(self, base: Grading, m: i64) -> Option<i64> {
        self.steps_from(base, 1).map(|d| d.mod_floor(&m))
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Grading {
    fn from(n: i64) -> Self {
        Grading::int(n)
    }
}

impl From<Rational64> for Grading {
    fn from(r: Rational64) -> Self {
        Grading(r)
    }
}

impl Add for Grading {
    type Output = Grading;
    fn add(self, rhs: Grading) -> Grading {
        Grading(self.0 + rhs.0)
    }
}

impl Sub for Grading {
    type Output = Grading;
    fn sub(self, rhs: Grading) -> Grading {
        Grading(self.0 - rhs.0)
    }
}

impl Neg for Grading {
    type Output = Grading;
    fn neg(self) -> Grading {
        Grading(-self.0)
    }
}

impl Add<i64> for Grading {
    type Output = Grading;
    fn add(self, rhs: i64) -> Grading {
        Grading(self.0 + rhs)
    }
}

impl Sub<i64> for Grading {
    type Output = Grading;
    fn sub(self, rhs: i64) -> Grading {
        Grading(self.0 - rhs)
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Grading {
    type Err = ParseGradingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseGradingError(s.to_string());
        let t = s.trim();
        let parse_int = |x: &str| -> Result<i64, ParseGradingError> {
            let x = x.trim();
            if x.is_empty() || x.starts_with('+') {
                return Err(bad());
            }
            x.parse::<i64>().map_err(|_| bad())
        };
        match t.split_once('/') {
            None => Ok(Grading::int(parse_int(t)?)),
            Some((p, q)) => {
                let p = parse_int(p)?;
                let q = parse_int(q)?;
                if q.is_zero() || q < 0 {
                    return Err(bad());
                }
                Ok(Grading::new(p, q))
            }
        }
    }
}

impl Serialize for Grading {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Grading {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
