//! Exact rational numbers.
//!
//! `Rat` keeps a reduced `i64/i64` representation while values fit and
//! transparently promotes to `BigRational` when they do not. Every value has
//! exactly one representation (big form is never used for a value that fits
//! the small form), so derived equality and hashing are sound.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

/// An exact rational number, always reduced, denominator always positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub const ZERO: Rat = Rat(Repr::Small(0, 1));
    pub const ONE: Rat = Rat(Repr::Small(1, 1));

    /// Build from a numerator/denominator pair of machine integers.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::from_i128_pair(num as i128, den as i128)
    }

    pub fn int(n: i64) -> Rat {
        Rat(Repr::Small(n, 1))
    }

    fn from_i128_pair(mut n: i128, mut d: i128) -> Rat {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Rat::ZERO;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        n /= g;
        d /= g;
        if n >= i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rat(Repr::Small(n as i64, d as i64))
        } else {
            Rat(Repr::Big(Box::new(BigRational::new(
                BigInt::from(n),
                BigInt::from(d),
            ))))
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        // BigRational::new already reduces and fixes the sign of the denominator.
        let (n, d) = (r.numer(), r.denom());
        if let (Some(ni), Some(di)) = (n.to_i64(), d.to_i64()) {
            Rat(Repr::Small(ni, di))
        } else {
            Rat(Repr::Big(Box::new(r)))
        }
    }

    pub fn from_bigint(n: BigInt) -> Rat {
        Rat::from_big(BigRational::from_integer(n))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Exact integer value, if the number is an integer fitting `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    /// Numerator/denominator as machine integers when the small form is live.
    pub fn small(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(n, d) => Some((*n, *d)),
            Repr::Big(_) => None,
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Small(n, d) => Rat::from_i128_pair(*d as i128, *n as i128),
            Repr::Big(b) => Rat::from_big(b.recip()),
        })
    }

    fn add_impl(&self, other: &Rat, sub: bool) -> Rat {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let c = if sub { -c } else { c };
                Rat::from_i128_pair(a * d + c * b, b * d)
            }
            _ => {
                let r = if sub {
                    self.to_big() - other.to_big()
                } else {
                    self.to_big() + other.to_big()
                };
                Rat::from_big(r)
            }
        }
    }

    fn mul_impl(&self, other: &Rat) -> Rat {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rat::ZERO;
                }
                Rat::from_i128_pair(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * other.to_big()),
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $meth:ident, $impl_expr:expr) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $meth(self, rhs: &Rat) -> Rat {
                let f: fn(&Rat, &Rat) -> Rat = $impl_expr;
                f(self, rhs)
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $meth(self, rhs: Rat) -> Rat {
                $trait::$meth(&self, &rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $meth(self, rhs: &Rat) -> Rat {
                $trait::$meth(&self, rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, false));
binop!(Sub, sub, |a, b| a.add_impl(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        self.mul_impl(&rhs.recip().expect("division by zero"))
    }
}
impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        &self / &rhs
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => {
                if *n == i64::MIN {
                    Rat::from_i128_pair(-(*n as i128), *d as i128)
                } else {
                    Rat(Repr::Small(-n, *d))
                }
            }
            Repr::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }
}
impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}
impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}
impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = &*self * rhs;
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Parses `a` or `a/b` with decimal integers of any size.
    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse {
            msg: format!("{msg}: {s:?}"),
            pos: None,
        };
        let (ns, ds) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(ns).map_err(|_| bad("invalid numerator"))?;
        let d = BigInt::from_str(ds).map_err(|_| bad("invalid denominator"))?;
        if d.sign() == Sign::NoSign {
            return Err(bad("zero denominator"));
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_arithmetic() {
        let half = Rat::new(1, 2);
        let third = Rat::new(1, 3);
        assert_eq!(&half + &third, Rat::new(5, 6));
        assert_eq!(&half - &third, Rat::new(1, 6));
        assert_eq!(&half * &third, Rat::new(1, 6));
        assert_eq!(&half / &third, Rat::new(3, 2));
        assert_eq!(Rat::new(-4, -8), half);
        assert_eq!(Rat::new(4, -8), -&half);
    }

    #[test]
    fn promotion_and_demotion() {
        // (2^62)/1 * 4 overflows i64 and must land in big form...
        let big = Rat::int(1 << 62) * Rat::int(4);
        assert!(big.small().is_none());
        // ...and dividing back down must return to the small form.
        let back = &big / &Rat::int(4);
        assert_eq!(back.small(), Some((1 << 62, 1)));
        assert_eq!(back, Rat::int(1 << 62));
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in [
            "0",
            "7",
            "-7",
            "7/3",
            "-7/3",
            "123456789123456789123456789/2",
        ] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/-8".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rat::new(n, d))
    }

    proptest! {
        // Oracle: num::BigRational arithmetic.
        #[test]
        fn matches_bigrational_oracle(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!((&a + &b).to_big(), a.to_big() + b.to_big());
            prop_assert_eq!((&a - &b).to_big(), a.to_big() - b.to_big());
            prop_assert_eq!((&a * &b).to_big(), a.to_big() * b.to_big());
            prop_assert_eq!((&a).cmp(&b), a.to_big().cmp(&b.to_big()));
        }

        #[test]
        fn field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), Rat::ONE);
            }
        }

        #[test]
        fn canonical_form_unique(a in arb_rat(), b in arb_rat()) {
            // Equal values must have identical representations.
            if a == b {
                prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
            }
        }
    }
}
