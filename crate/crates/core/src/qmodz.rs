//! Exact arithmetic in Q/Z.
//!
//! Character values and hyperplane targets live in the circle group Q/Z.
//! A [`QmodZ`] is stored as a reduced fraction with value in `[0, 1)`, so
//! structural equality coincides with equality in Q/Z.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// An element of Q/Z as a reduced fraction `num/den` with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ {
    num: u64,
    den: u64,
}

impl QmodZ {
    pub const ZERO: QmodZ = QmodZ { num: 0, den: 1 };

    /// Builds `num/den` reduced modulo 1. `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> QmodZ {
        assert!(den != 0, "QmodZ denominator must be nonzero");
        let den = den.unsigned_abs();
        let num = (num.rem_euclid(den as i64)) as u64;
        let g = gcd(num, den);
        QmodZ {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    /// Denominator of the reduced form; this is the order of the value in Q/Z.
    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, other: &QmodZ) -> QmodZ {
        let den = self.den / gcd(self.den, other.den) * other.den;
        let num = (self.num * (den / self.den) + other.num * (den / other.den)) % den;
        let g = gcd(num, den);
        QmodZ {
            num: num / g,
            den: den / g,
        }
    }

    pub fn neg(&self) -> QmodZ {
        if self.num == 0 {
            *self
        } else {
            QmodZ {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    pub fn sub(&self, other: &QmodZ) -> QmodZ {
        self.add(&other.neg())
    }

    /// Integer scaling `t * self` in Q/Z.
    pub fn scale(&self, t: i64) -> QmodZ {
        let t = t.rem_euclid(self.den as i64) as u64;
        let num = (self.num * t) % self.den;
        let g = gcd(num, self.den);
        QmodZ {
            num: num / g,
            den: self.den / g,
        }
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for QmodZ {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let num: i64 = n.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let den: i64 = d
                .trim()
                .parse()
                .map_err(|e| format!("bad denominator: {e}"))?;
            if den == 0 {
                return Err("zero denominator".into());
            }
            Ok(QmodZ::new(num, den))
        } else {
            let num: i64 = s.parse().map_err(|e| format!("bad fraction: {e}"))?;
            Ok(QmodZ::new(num, 1))
        }
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_into_unit_interval() {
        assert_eq!(QmodZ::new(3, 2), QmodZ::new(1, 2));
        assert_eq!(QmodZ::new(-1, 3), QmodZ::new(2, 3));
        assert_eq!(QmodZ::new(4, 2), QmodZ::ZERO);
        assert_eq!(QmodZ::new(6, 4), QmodZ::new(1, 2));
    }

    #[test]
    fn addition_wraps() {
        let half = QmodZ::new(1, 2);
        assert_eq!(half.add(&half), QmodZ::ZERO);
        assert_eq!(QmodZ::new(1, 2).add(&QmodZ::new(2, 3)), QmodZ::new(1, 6));
    }

    #[test]
    fn negation_and_scaling() {
        assert_eq!(QmodZ::new(1, 3).neg(), QmodZ::new(2, 3));
        assert_eq!(QmodZ::ZERO.neg(), QmodZ::ZERO);
        assert_eq!(QmodZ::new(1, 6).scale(3), QmodZ::new(1, 2));
        assert_eq!(QmodZ::new(1, 6).scale(-1), QmodZ::new(5, 6));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for q in [QmodZ::ZERO, QmodZ::new(1, 2), QmodZ::new(5, 6)] {
            let s = q.to_string();
            assert_eq!(s.parse::<QmodZ>().unwrap(), q);
        }
        assert_eq!("3/2".parse::<QmodZ>().unwrap(), QmodZ::new(1, 2));
    }
}
