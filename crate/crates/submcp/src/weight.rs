//! Exact rational weights.
//!
//! All objectives and approximation-ratio checks are computed with exact
//! rational arithmetic so that the proven bounds can be verified without
//! rounding slack. In JSON, a weight serializes as a plain integer when its
//! denominator is one, and as a `[numerator, denominator]` pair otherwise.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Weight(Rational64);

impl Weight {
    pub const ZERO: Weight = Weight(Rational64::new_raw(0, 1));

    pub fn int(v: i64) -> Self {
        Weight(Rational64::from_integer(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Weight(Rational64::new(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Weight {
            type Output = Weight;
            fn $method(self, rhs: Weight) -> Weight {
                Weight(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(-self.0)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Weight {
    fn sub_assign(&mut self, rhs: Weight) {
        self.0 -= rhs.0;
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |a, b| a + b)
    }
}

impl Mul<i64> for Weight {
    type Output = Weight;
    fn mul(self, rhs: i64) -> Weight {
        self * Weight::int(rhs)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if *self.0.denom() == 1 {
            serializer.serialize_i64(*self.0.numer())
        } else {
            (*self.0.numer(), *self.0.denom()).serialize(serializer)
        }
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Pair(i64, i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(v) => Ok(Weight::int(v)),
            Repr::Pair(_, 0) => Err(D::Error::custom("weight denominator must be nonzero")),
            Repr::Pair(n, d) => Ok(Weight::ratio(n, d)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_and_ordering() {
        let a = Weight::ratio(1, 3);
        let b = Weight::ratio(2, 3);
        assert_eq!(a + b, Weight::int(1));
        assert_eq!(Weight::int(2) * Weight::ratio(1, 2), Weight::int(1));
        assert!(a < b);
        assert!((a - b).is_negative());
    }

    #[test]
    fn json_round_trip() {
        let w = Weight::int(7);
        assert_eq!(serde_json::to_string(&w).unwrap(), "7");
        let r = Weight::ratio(3, 4);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Weight>(&s).unwrap(), r);
        assert_eq!(serde_json::from_str::<Weight>("5").unwrap(), Weight::int(5));
    }
}
