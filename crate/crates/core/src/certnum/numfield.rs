//! Exact arithmetic in ℚ(s), s = (11/5)^(1/6).
//!
//! Elements are stored as c₀ + c₁s + … + c₅s⁵ and kept reduced modulo
//! s⁶ = 11/5, so equality and zero tests are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::consts::s_enclosure;
use super::interval::Interval;
use super::rational::{pow2, ratio, Rational};

/// The rational value of s⁶.
pub fn s_pow6() -> Rational {
    ratio(11, 5)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberFieldElem {
    coeffs: [Rational; 6],
}

impl NumberFieldElem {
    pub fn zero() -> Self {
        NumberFieldElem { coeffs: std::array::from_fn(|_| Rational::zero()) }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> Self {
        let mut e = Self::zero();
        e.coeffs[0] = q;
        e
    }

    /// The generator s itself.
    pub fn s() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `c · s^k` for any `k ≥ 0`, reduced.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut e = Self::zero();
        let factor = s_pow6().pow((k / 6) as i32);
        e.coeffs[k % 6] = c * factor;
        e
    }

    pub fn from_coeffs(coeffs: [Rational; 6]) -> Self {
        NumberFieldElem { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational; 6] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(q)` if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then_some(&self.coeffs[0])
    }

    pub fn scale(&self, k: &Rational) -> Self {
        NumberFieldElem { coeffs: std::array::from_fn(|i| &self.coeffs[i] * k) }
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Solves the 6×6 linear system of multiplication by `self` exactly.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::rational(q.recip()));
        }
        // column j of the matrix is self * s^j
        let columns: Vec<NumberFieldElem> = (0..6).map(|j| self * &Self::monomial(Rational::one(), j)).collect();
        let mut m: Vec<Vec<Rational>> = (0..6)
            .map(|i| {
                let mut row: Vec<Rational> = (0..6).map(|j| columns[j].coeffs[i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..6 {
            let pivot = (col..6).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..6 {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot = m[col].clone();
                    for (c, p) in pivot.iter().enumerate() {
                        m[r][c] -= &f * p;
                    }
                }
            }
        }
        Some(NumberFieldElem { coeffs: std::array::from_fn(|i| m[i][6].clone()) })
    }

    pub fn pow(&self, n: i32) -> Option<Self> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Some(result)
    }

    /// Interval image using the supplied enclosure of s (Horner scheme).
    pub fn enclose(&self, s: &Interval) -> Interval {
        let mut acc = Interval::point(self.coeffs[5].clone());
        for c in self.coeffs[..5].iter().rev() {
            acc = &(&acc * s) + &Interval::point(c.clone());
        }
        acc
    }

    /// Exact sign, refining the enclosure of s until it is decided.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 64;
        loop {
            if let Some(ord) = self.enclose(&s_enclosure(&pow2(-bits))).sign() {
                return ord;
            }
            // A nonzero element of ℚ(s) has a nonzero real value, so this ends.
            bits *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }
}

impl fmt::Debug for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·s")?,
                _ => write!(f, "({c})·s^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&NumberFieldElem> for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn add(self, rhs: &NumberFieldElem) -> NumberFieldElem {
        NumberFieldElem { coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]) }
    }
}

impl Sub<&NumberFieldElem> for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn sub(self, rhs: &NumberFieldElem) -> NumberFieldElem {
        NumberFieldElem { coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]) }
    }
}

impl Mul<&NumberFieldElem> for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn mul(self, rhs: &NumberFieldElem) -> NumberFieldElem {
        let mut wide: Vec<Rational> = vec![Rational::zero(); 11];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let s6 = s_pow6();
        for k in (6..11).rev() {
            let c = std::mem::replace(&mut wide[k], Rational::zero());
            wide[k - 6] += c * &s6;
        }
        NumberFieldElem { coeffs: std::array::from_fn(|i| wide[i].clone()) }
    }
}

impl Neg for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn neg(self) -> NumberFieldElem {
        NumberFieldElem { coeffs: std::array::from_fn(|i| -self.coeffs[i].clone()) }
    }
}

impl Neg for NumberFieldElem {
    type Output = NumberFieldElem;
    fn neg(self) -> NumberFieldElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<NumberFieldElem> for NumberFieldElem {
            type Output = NumberFieldElem;
            fn $m(self, rhs: NumberFieldElem) -> NumberFieldElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&NumberFieldElem> for NumberFieldElem {
            type Output = NumberFieldElem;
            fn $m(self, rhs: &NumberFieldElem) -> NumberFieldElem {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Rational> for NumberFieldElem {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

/// Serialized as the list of exact coefficients of 1, s, …, s⁵.
impl serde::Serialize for NumberFieldElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}
