//! Closed intervals with rational endpoints and outward rounding.
//!
//! Endpoints are exact rationals; after every operation they are rounded
//! outward to dyadic rationals of [`PRECISION_BITS`] significant bits so
//! that sizes stay bounded. Results are therefore platform independent.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{round_dyadic, to_decimal, to_f64, Rational, Round};
use crate::error::{Error, Result};

pub const PRECISION_BITS: u64 = 192;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        Interval { lo, hi }
    }

    pub fn try_new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::Domain(format!("empty interval [{lo}, {hi}]")))
        }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::point(Rational::from_integer(n.into()))
    }

    fn rounded(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo: round_dyadic(&lo, PRECISION_BITS, Round::Down),
            hi: round_dyadic(&hi, PRECISION_BITS, Round::Up),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.lo.is_negative()
    }

    pub fn is_nonpositive(&self) -> bool {
        !self.hi.is_positive()
    }

    /// `Some(ordering)` when every point of the interval compares the same
    /// way against zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certainly less than `x` at every point.
    pub fn lt(&self, x: &Rational) -> bool {
        &self.hi < x
    }

    pub fn gt(&self, x: &Rational) -> bool {
        &self.lo > x
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval { lo: self.lo.clone(), hi: m.clone() },
            Interval { lo: m, hi: self.hi.clone() },
        )
    }

    /// Widens by `eps` on both sides.
    pub fn inflate(&self, eps: &Rational) -> Interval {
        Interval { lo: &self.lo - eps, hi: &self.hi + eps }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval { lo: Rational::zero(), hi: self.hi.clone().max(-self.lo.clone()) }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Interval::rounded(self.hi.recip(), self.lo.recip()))
    }

    pub fn checked_div(&self, rhs: &Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        if rhs.is_point() {
            let d = &rhs.lo;
            let (a, b) = (&self.lo / d, &self.hi / d);
            return Ok(if d.is_positive() { Interval::rounded(a, b) } else { Interval::rounded(b, a) });
        }
        Ok(self * &rhs.recip()?)
    }

    /// Integer power. Negative exponents require `0 ∉ self`.
    pub fn powi(&self, n: i32) -> Result<Interval> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        if n == 0 {
            return Ok(Interval::from_i64(1));
        }
        let (a, b) = (self.lo.pow(n), self.hi.pow(n));
        Ok(if n % 2 == 1 {
            Interval::rounded(a, b)
        } else if self.lo.is_negative() && self.hi.is_positive() {
            Interval::rounded(Rational::zero(), a.max(b))
        } else if self.hi.is_positive() || self.hi.is_zero() && !self.lo.is_negative() {
            Interval::rounded(a, b)
        } else {
            Interval::rounded(b, a)
        })
    }

    pub fn square(&self) -> Interval {
        self.powi(2).expect("non-negative exponent")
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        self * &Interval::point(k.clone())
    }

    /// Midpoint as the nearest float, for diagnostics only.
    pub fn mid_f64(&self) -> f64 {
        to_f64(&self.mid())
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    /// Directed decimal rendering `[lo, hi]` with `sig` significant digits.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        format!("[{}, {}]", to_decimal(&self.lo, sig, Round::Down), to_decimal(&self.hi, sig, Round::Up))
    }
}

impl From<Rational> for Interval {
    fn from(x: Rational) -> Self {
        Interval::point(x)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(17))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(12))
    }
}

impl Add<&Interval> for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::rounded(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub<&Interval> for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::rounded(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Mul<&Interval> for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        if self.is_point() && rhs.is_point() {
            let p = &self.lo * &rhs.lo;
            return Interval::rounded(p.clone(), p);
        }
        let products = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = products.iter().min().cloned().expect("nonempty");
        let hi = products.iter().max().cloned().expect("nonempty");
        Interval::rounded(lo, hi)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval {
                (&self).$m(rhs)
            }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Binary operation selector for [`interval_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Integer power of the left operand; the right operand is ignored.
    Pow(i32),
}

/// Uniform entry point over the interval operations.
pub fn interval_arith(a: &Interval, b: &Interval, op: ArithOp) -> Result<Interval> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
        ArithOp::Pow(n) => a.powi(n),
    }
}

impl Interval {
    pub fn unit() -> Interval {
        Interval::point(Rational::one())
    }
}

/// Serialized as 12-digit outward-rounded decimals plus the exact endpoints.
impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Interval", 4)?;
        st.serialize_field("lo", &to_decimal(&self.lo, 12, Round::Down))?;
        st.serialize_field("hi", &to_decimal(&self.hi, 12, Round::Up))?;
        st.serialize_field("lo_exact", &self.lo.to_string())?;
        st.serialize_field("hi_exact", &self.hi.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certnum::rational::{dec, int, ratio};
    use proptest::prelude::*;

    fn iv(a: &str, b: &str) -> Interval {
        Interval::new(dec(a), dec(b))
    }

    #[test]
    fn exact_endpoint_arithmetic() {
        assert_eq!(interval_arith(&iv("1", "2"), &iv("3", "4"), ArithOp::Add).unwrap(), iv("4", "6"));
        assert_eq!(iv("1", "2") - iv("3", "4"), iv("-3", "-1"));
        assert_eq!(iv("-1", "2") * iv("3", "4"), iv("-4", "8"));
        let p = Interval::from_i64(2).powi(-6).unwrap();
        assert_eq!(p, Interval::point(ratio(1, 64)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(iv("1", "2").checked_div(&iv("-1", "1")), Err(Error::DivisionByZero)));
        assert!(iv("-1", "1").powi(-2).is_err());
        assert_eq!(iv("1", "2").checked_div(&iv("2", "4")).unwrap(), iv("0.25", "1"));
    }

    #[test]
    fn even_powers_of_straddling_intervals() {
        assert_eq!(iv("-2", "1").powi(2).unwrap(), iv("0", "4"));
        assert_eq!(iv("-2", "-1").powi(2).unwrap(), iv("1", "4"));
        assert_eq!(iv("-2", "1").powi(3).unwrap(), iv("-8", "1"));
    }

    #[test]
    fn rounding_keeps_enclosure() {
        let third = Interval::from_i64(1).checked_div(&Interval::from_i64(3)).unwrap();
        assert!(third.contains(&ratio(1, 3)));
        // 3^-300 is too long to keep exactly
        let tiny = Interval::point(ratio(1, 3)).powi(300).unwrap();
        let exact = ratio(1, 3).pow(300);
        assert!(tiny.contains(&exact));
        assert!(!tiny.is_point());
        assert!(tiny.width() < exact * crate::certnum::rational::pow2(-180));
        assert_eq!(int(3) * ratio(1, 3), int(1));
    }

    fn arb_interval() -> impl Strategy<Value = (i64, i64)> {
        (-1000i64..1000, 0i64..500).prop_map(|(a, w)| (a, a + w))
    }

    proptest! {
        #[test]
        fn containment_under_sampling(
            (a0, a1) in arb_interval(), (b0, b1) in arb_interval(),
            ta in 0.0f64..=1.0, tb in 0.0f64..=1.0, n in -4i32..6,
        ) {
            let a = Interval::new(ratio(a0, 7), ratio(a1, 7));
            let b = Interval::new(ratio(b0, 13), ratio(b1, 13));
            let x = ratio(a0, 7) + (ratio(a1, 7) - ratio(a0, 7)) * from_f64_exact(ta);
            let y = ratio(b0, 13) + (ratio(b1, 13) - ratio(b0, 13)) * from_f64_exact(tb);
            prop_assert!((&a + &b).contains(&(&x + &y)));
            prop_assert!((&a - &b).contains(&(&x - &y)));
            prop_assert!((&a * &b).contains(&(&x * &y)));
            if let Ok(q) = a.checked_div(&b) {
                prop_assert!(q.contains(&(&x / &y)));
            }
            if let Ok(p) = a.powi(n) {
                prop_assert!(p.contains(&x.pow(n)));
            }
        }

        #[test]
        fn halving_never_widens(a0 in 1i64..100, w in 1i64..100, n in -3i32..4) {
            let a = Interval::new(ratio(a0, 10), ratio(a0 + w, 10));
            let (left, right) = a.bisect();
            let full = (&a * &a).powi(n).unwrap();
            for half in [left, right] {
                let part = (&half * &half).powi(n).unwrap();
                prop_assert!(full.inflate(&crate::certnum::rational::pow2(-150)).contains_interval(&part));
            }
        }
    }

    fn from_f64_exact(x: f64) -> Rational {
        crate::certnum::rational::from_f64(x).unwrap()
    }
}
