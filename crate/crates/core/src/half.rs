//! Exact arithmetic on half-integers.
//!
//! Every exponent, segment endpoint and reducibility point in the calculus
//! lives in ½ℤ. Storing the doubled value keeps all arithmetic in `i64` and
//! makes equality exact, which the rewrite machinery depends on.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of ½ℤ, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };
    pub const ONE: HalfInt = HalfInt { doubled: 2 };

    pub fn new(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    /// The value n/2.
    pub fn half_of(n: i64) -> Self {
        HalfInt { doubled: n }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// Value as an integer; panics when not integral.
    pub fn as_int(self) -> i64 {
        assert!(self.is_integer(), "{self} is not an integer");
        self.doubled / 2
    }

    pub fn floor(self) -> i64 {
        self.doubled.div_euclid(2)
    }

    pub fn ceil(self) -> i64 {
        (self.doubled + 1).div_euclid(2)
    }

    pub fn abs(self) -> Self {
        HalfInt { doubled: self.doubled.abs() }
    }

    pub fn is_neg(self) -> bool {
        self.doubled < 0
    }

    /// (-1)^x for integral x; panics otherwise.
    pub fn neg_one_pow(self) -> i64 {
        if self.as_int() % 2 == 0 { 1 } else { -1 }
    }

    /// True when `self - other` is an integer, i.e. both lie on the same ℤ-coset.
    pub fn same_class(self, other: HalfInt) -> bool {
        (self.doubled - other.doubled) % 2 == 0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled + rhs.doubled }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled - rhs.doubled }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { doubled: -self.doubled }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.doubled += rhs.doubled;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.doubled -= rhs.doubled;
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt { doubled: self.doubled * rhs }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt { doubled: self.doubled + 2 * rhs }
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt { doubled: self.doubled - 2 * rhs }
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for HalfInt {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| format!("bad half-integer `{s}`"))?;
            let den: i64 = den.trim().parse().map_err(|_| format!("bad half-integer `{s}`"))?;
            match den {
                1 => Ok(HalfInt::from_int(num)),
                2 => Ok(HalfInt::new(num)),
                _ => Err(format!("`{s}` is not a half-integer")),
            }
        } else {
            let n: i64 = s.parse().map_err(|_| format!("bad half-integer `{s}`"))?;
            Ok(HalfInt::from_int(n))
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        if self.is_integer() {
            ser.serialize_i64(self.doubled / 2)
        } else {
            ser.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(de)? {
            Repr::Int(n) => Ok(HalfInt::from_int(n)),
            Repr::Str(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

/// Exact rational scalar used for Arthur-SL2 twists and the hyperplane layer.
pub type Rat = num_rational::Rational64;

/// Serde for `Rat` fields: written as an integer or a "n/d" string.
pub mod rat_serde {
    use super::Rat;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        if x.is_integer() {
            ser.serialize_i64(*x.numer())
        } else {
            ser.serialize_str(&format!("{}/{}", x.numer(), x.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(de)? {
            Repr::Int(n) => Ok(Rat::from_integer(n)),
            Repr::Str(s) => parse_rat(&s).map_err(D::Error::custom),
        }
    }

    pub fn parse_rat(s: &str) -> Result<Rat, String> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
            let d: i64 = d.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
            if d == 0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(n, d))
        } else {
            let n: i64 = s.parse().map_err(|_| format!("bad rational `{s}`"))?;
            Ok(Rat::from_integer(n))
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn rat_of(h: HalfInt) -> Rat {
    Rat::new(h.doubled(), 2)
}

/// A rational is a half-integer when its denominator divides 2.
pub fn rat_to_half(r: Rat) -> Option<HalfInt> {
    let two = Rat::from_integer(2);
    let d = r * two;
    if d.is_integer() {
        Some(HalfInt::new(*d.numer()))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = HalfInt::half_of(3); // 3/2
        let b = HalfInt::from_int(-2);
        assert_eq!((a + b).to_string(), "-1/2");
        assert_eq!((a - b).to_string(), "7/2");
        assert_eq!((-a).doubled(), -3);
        assert!(a > b);
        assert!(!a.is_integer());
        assert_eq!(a.floor(), 1);
        assert_eq!(a.ceil(), 2);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-3", "5/2", "-1/2"] {
            let h: HalfInt = s.parse().unwrap();
            assert_eq!(h.to_string(), s);
        }
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn serde_accepts_both_forms() {
        let h: HalfInt = serde_json::from_str("\"-3/2\"").unwrap();
        assert_eq!(h, HalfInt::half_of(-3));
        let h: HalfInt = serde_json::from_str("4").unwrap();
        assert_eq!(h, HalfInt::from_int(4));
        assert_eq!(serde_json::to_string(&HalfInt::half_of(5)).unwrap(), "\"5/2\"");
        assert_eq!(serde_json::to_string(&HalfInt::from_int(2)).unwrap(), "2");
    }
}
