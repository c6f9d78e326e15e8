//! Refinable enclosures of the irrational constants: s = (11/5)^(1/6),
//! A = (360/121)·s, and π.

use std::sync::OnceLock;

use num_traits::Zero;

use super::interval::Interval;
use super::numfield::NumberFieldElem;
use super::rational::{int, pow2, ratio, Rational};

/// Enclosure of s by bisection on x⁶ = 11/5, of width at most `width`.
pub fn s_enclosure(width: &Rational) -> Interval {
    let target = ratio(11, 5);
    let mut lo = int(1);
    let mut hi = int(2);
    let two = int(2);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        if mid.pow(6) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval::new(lo, hi)
}

/// Partial sums of arctan(1/x); consecutive partial sums bracket the value.
fn arctan_inv(x: i64, width: &Rational) -> Interval {
    let x = int(x);
    let x2 = &x * &x;
    let mut power = x.recip();
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    loop {
        let term = &power / int(2 * k + 1);
        let next = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < *width && k > 0 {
            return if k % 2 == 0 { Interval::new(sum, next) } else { Interval::new(next, sum) };
        }
        sum = next;
        power /= &x2;
        k += 1;
    }
}

/// Machin's formula π = 16·atan(1/5) − 4·atan(1/239).
pub fn pi_enclosure(width: &Rational) -> Interval {
    let w = width / int(64);
    let a = arctan_inv(5, &w).scale(&int(16));
    let b = arctan_inv(239, &w).scale(&int(4));
    &a - &b
}

/// The slope constant A = (360/121)·s as an exact element of ℚ(s).
pub fn tangent_slope() -> NumberFieldElem {
    NumberFieldElem::monomial(ratio(360, 121), 1)
}

/// The set of constant enclosures that one certified computation uses.
#[derive(Debug, Clone)]
pub struct Enclosures {
    pub width: Rational,
    pub s: Interval,
    pub a: Interval,
    pub pi: Interval,
}

impl Enclosures {
    pub fn with_width(width: &Rational) -> Self {
        let s = s_enclosure(width);
        let a = s.scale(&ratio(360, 121));
        Enclosures { width: width.clone(), s, a, pi: pi_enclosure(width) }
    }

    /// Shared default, width 2⁻¹⁶⁰.
    pub fn standard() -> &'static Enclosures {
        static STANDARD: OnceLock<Enclosures> = OnceLock::new();
        STANDARD.get_or_init(|| Enclosures::with_width(&default_width()))
    }

    pub fn enclose(&self, x: &NumberFieldElem) -> Interval {
        x.enclose(&self.s)
    }
}

pub fn default_width() -> Rational {
    pow2(-160)
}

impl Default for Enclosures {
    fn default() -> Self {
        Enclosures::standard().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certnum::rational::dec;

    #[test]
    fn s_to_the_sixth_encloses_eleven_fifths() {
        let s = s_enclosure(&dec("1e-14"));
        let p = s.powi(6).unwrap();
        assert!(p.contains(&ratio(11, 5)));
        assert!(p.width() <= dec("1e-12"));
    }

    #[test]
    fn pi_digits() {
        let pi = pi_enclosure(&dec("1e-30"));
        assert!(pi.contains(&dec("3.14159265358979323846264338327950288")));
        assert!(pi.width() < dec("1e-30"));
    }

    #[test]
    fn slope_constant_value() {
        let enc = Enclosures::standard();
        assert!(enc.a.gt(&dec("3.3930")) && enc.a.lt(&dec("3.3931")));
        assert!(enc.enclose(&tangent_slope()).overlaps(&enc.a));
    }
}
