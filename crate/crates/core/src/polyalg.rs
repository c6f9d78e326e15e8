//! Univariate polynomials with exact rational coefficients: Descartes'
//! rule of signs, Sturm chains, and real-root isolation. Also a small
//! polynomial type over ℚ(s) for the tangency computations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::certnum::{Interval, NumberFieldElem, Rational};
use crate::error::{Error, Result};

/// Dense polynomial, coefficients in ascending degree. The zero polynomial
/// has no coefficients; otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Builds from `(coefficient, degree)` terms; repeated degrees add up.
    pub fn from_terms(terms: &[(Rational, usize)]) -> Self {
        let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (c, k) in terms {
            coeffs[*k] += c;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by x^k.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        self.coeffs
            .iter()
            .rev()
            .fold(Interval::point(Rational::zero()), |acc, c| &(&acc * x) + &Interval::point(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + crate::certnum::rational::to_f64(c))
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Same polynomial scaled to leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Sign of the value at +∞.
    fn sign_at_pos_inf(&self) -> Ordering {
        self.leading().map(crate::certnum::rational::sign).unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}·x")?,
                _ if a.is_one() => write!(f, "x^{k}")?,
                _ => write!(f, "{a}·x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// Number of sign changes in the nonzero coefficient sequence: an upper
/// bound on the positive roots counted with multiplicity.
pub fn descartes_bound(p: &Polynomial) -> usize {
    sign_changes(p.coeffs.iter().map(crate::certnum::rational::sign))
}

/// Sign changes of a sequence, zeros skipped.
pub fn sign_changes(signs: impl IntoIterator<Item = Ordering>) -> usize {
    let nonzero: Vec<Ordering> = signs.into_iter().filter(|s| *s != Ordering::Equal).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Sturm chain p, p', −rem(p, p'), … Each member is rescaled by a positive
/// constant to keep coefficients small; that does not change any sign.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let normalize = |q: Polynomial| -> Polynomial {
            match q.leading() {
                Some(l) => q.scale(&l.abs().recip()),
                None => q,
            }
        };
        let mut chain = vec![normalize(p.clone())];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(normalize(d));
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero divisor");
                if r.is_zero() {
                    break;
                }
                chain.push(normalize(-&r));
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        sign_changes(self.chain.iter().map(|p| crate::certnum::rational::sign(&p.eval(x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        sign_changes(self.chain.iter().map(Polynomial::sign_at_pos_inf))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        sign_changes(self.chain.iter().map(|p| {
            let s = p.sign_at_pos_inf();
            if p.degree().unwrap_or(0) % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in (a, b].
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Exact number of distinct real roots of `p` in (a, b].
pub fn sturm_count(p: &Polynomial, a: &Rational, b: &Rational) -> Result<usize> {
    if a >= b {
        return Err(Error::Domain(format!("sturm_count needs a < b, got ({a}, {b}]")));
    }
    Ok(SturmChain::new(p)?.count(a, b))
}

/// Distinct real roots in (a, ∞).
pub fn sturm_count_above(p: &Polynomial, a: &Rational) -> Result<usize> {
    let chain = SturmChain::new(p)?;
    Ok(chain.variations_at(a).saturating_sub(chain.variations_at_pos_inf()))
}

/// Isolating interval of one real root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootEnclosure {
    pub enclosure: Interval,
    pub multiplicity: u32,
}

impl RootEnclosure {
    /// Bisects further until the width is at most `width`, keeping exactly
    /// one root inside.
    pub fn refine(&self, p: &Polynomial, width: &Rational) -> RootEnclosure {
        let (lo, hi) = bisect_root(p, self.enclosure.lo().clone(), self.enclosure.hi().clone(), width);
        RootEnclosure { enclosure: Interval::new(lo, hi), multiplicity: self.multiplicity }
    }
}

/// Narrows [lo, hi] around the single simple root it contains.
fn bisect_root(p: &Polynomial, mut lo: Rational, mut hi: Rational, width: &Rational) -> (Rational, Rational) {
    let two = Rational::from_integer(2.into());
    if p.eval(&lo).is_zero() {
        return (lo.clone(), lo);
    }
    if p.eval(&hi).is_zero() {
        return (hi.clone(), hi);
    }
    let sign_lo = crate::certnum::rational::sign(&p.eval(&lo));
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return (mid.clone(), mid);
        }
        if crate::certnum::rational::sign(&v) == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// All real roots of a squarefree `p` in the closed interval `domain`, each
/// isolated in an interval of width at most `width`, in increasing order.
pub fn isolate_roots(p: &Polynomial, domain: &Interval, width: &Rational) -> Result<Vec<RootEnclosure>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return Err(Error::NotSquarefree { factor: g });
    }
    let chain = SturmChain::new(p)?;
    let two = Rational::from_integer(2.into());
    let mut roots = Vec::new();
    let (lo, hi) = (domain.lo().clone(), domain.hi().clone());
    if p.eval(&lo).is_zero() {
        roots.push(RootEnclosure { enclosure: Interval::point(lo.clone()), multiplicity: 1 });
    }
    if lo == hi {
        return Ok(roots);
    }
    // half-open pieces (a, b] with their root counts
    let mut stack = vec![(lo.clone(), hi.clone(), chain.count(&lo, &hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => {
                let (l, h) = if p.eval(&b).is_zero() {
                    (b.clone(), b)
                } else {
                    bisect_root(p, a, b, width)
                };
                roots.push(RootEnclosure { enclosure: Interval::new(l, h), multiplicity: 1 });
            }
            _ => {
                let m = (&a + &b) / &two;
                let left = chain.count(&a, &m);
                stack.push((m.clone(), b, n - left));
                stack.push((a, m, left));
            }
        }
    }
    roots.sort_by(|x, y| x.enclosure.lo().cmp(y.enclosure.lo()));
    Ok(roots)
}

/// Polynomial with coefficients in ℚ(s).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NfPolynomial {
    coeffs: Vec<NumberFieldElem>,
}

impl NfPolynomial {
    pub fn new(mut coeffs: Vec<NumberFieldElem>) -> Self {
        while coeffs.last().is_some_and(NumberFieldElem::is_zero) {
            coeffs.pop();
        }
        NfPolynomial { coeffs }
    }

    pub fn from_terms(terms: &[(NumberFieldElem, usize)]) -> Self {
        let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut coeffs = vec![NumberFieldElem::zero(); deg + 1];
        for (c, k) in terms {
            coeffs[*k] = &coeffs[*k] + c;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[NumberFieldElem] {
        &self.coeffs
    }

    pub fn derivative(&self) -> NfPolynomial {
        NfPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    pub fn eval(&self, x: &NumberFieldElem) -> NumberFieldElem {
        self.coeffs.iter().rev().fold(NumberFieldElem::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_at_s(&self) -> NumberFieldElem {
        self.eval(&NumberFieldElem::s())
    }

    pub fn eval_interval(&self, x: &Interval, s: &Interval) -> Interval {
        self.coeffs
            .iter()
            .rev()
            .fold(Interval::point(Rational::zero()), |acc, c| &(&acc * x) + &c.enclose(s))
    }

    /// Exact sign of every coefficient.
    pub fn coefficient_signs(&self) -> Vec<Ordering> {
        self.coeffs.iter().map(NumberFieldElem::sign).collect()
    }

    /// Multiplicity of s as a root: the number of leading derivatives that
    /// vanish exactly at s, capped at the degree.
    pub fn root_multiplicity_at_s(&self) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        while !p.coeffs.is_empty() && p.eval_at_s().is_zero() {
            m += 1;
            p = p.derivative();
        }
        m
    }
}

/// Exact value p(s) in ℚ(s).
pub fn nf_eval(p: &Polynomial) -> NumberFieldElem {
    let s = NumberFieldElem::s();
    p.coeffs().iter().rev().fold(NumberFieldElem::zero(), |acc, c| &(&acc * &s) + &NumberFieldElem::rational(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certnum::{dec, int, ratio};
    use proptest::prelude::*;

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn descartes_examples() {
        assert_eq!(descartes_bound(&poly(&[1, 0, 1])), 0);
        assert_eq!(descartes_bound(&poly(&[-1, 1])), 1);
    }

    #[test]
    fn sturm_examples() {
        let p = poly(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &int(0), &int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &int(2), &int(3)).unwrap(), 0);
        assert_eq!(sturm_count(&p, &int(-2), &int(2)).unwrap(), 2);
        assert!(matches!(sturm_count(&Polynomial::zero(), &int(0), &int(1)), Err(Error::ZeroPolynomial)));
        assert!(sturm_count(&p, &int(1), &int(1)).is_err());
    }

    #[test]
    fn half_open_convention_at_endpoints() {
        // x (x - 1): roots 0 and 1
        let p = poly(&[0, -1, 1]);
        assert_eq!(sturm_count(&p, &int(0), &int(1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &int(-1), &int(0)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &ratio(1, 2), &int(1)).unwrap(), 1);
    }

    #[test]
    fn isolates_sqrt_two() {
        let p = poly(&[-2, 0, 1]);
        let roots = isolate_roots(&p, &Interval::new(int(0), int(2)), &dec("1e-6")).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].enclosure.contains(&dec("1.4142135")));
        assert!(roots[0].enclosure.width() <= dec("1e-6"));
    }

    #[test]
    fn rejects_non_squarefree() {
        let p = &poly(&[-1, 1]) * &poly(&[-1, 1]);
        match isolate_roots(&p, &Interval::new(int(0), int(2)), &dec("0.1")) {
            Err(Error::NotSquarefree { factor }) => assert_eq!(factor, poly(&[-1, 1])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn division_identity() {
        let a = poly(&[3, -1, 4, 1, -5, 9]);
        let b = poly(&[2, 6, -5]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn nf_eval_examples() {
        let p = Polynomial::from_terms(&[(int(1), 6), (ratio(-11, 5), 0)]);
        assert!(nf_eval(&p).is_zero());
        assert_eq!(nf_eval(&Polynomial::x()), NumberFieldElem::s());
    }

    fn arb_roots() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-6i64..7, 1..6)
    }

    proptest! {
        #[test]
        fn sturm_additivity(roots in arb_roots(), a in -80i64..-30, m in -8i64..8, b in 30i64..80) {
            let p = roots.iter().fold(Polynomial::constant(int(1)), |acc, &r| &acc * &poly(&[-r, 2]));
            let (a, m, b) = (ratio(a, 10), ratio(m, 3), ratio(b, 10));
            let whole = sturm_count(&p, &a, &b).unwrap();
            let split = sturm_count(&p, &a, &m).unwrap() + sturm_count(&p, &m, &b).unwrap();
            prop_assert_eq!(whole, split);
            // brute force: distinct roots r/2 in (a, b]
            let mut distinct: Vec<Rational> = roots.iter().map(|&r| ratio(r, 2)).collect();
            distinct.sort();
            distinct.dedup();
            let expected = distinct.iter().filter(|r| **r > a && **r <= b).count();
            prop_assert_eq!(whole, expected);
        }

        #[test]
        fn descartes_dominates_positive_roots(roots in arb_roots(), extra in 0i64..3) {
            let mut p = roots.iter().fold(Polynomial::constant(int(1)), |acc, &r| &acc * &poly(&[-r, 1]));
            if extra > 0 {
                p = &p * &poly(&[extra, 0, 1]);
            }
            let positive = sturm_count_above(&p, &int(0)).unwrap();
            prop_assert!(descartes_bound(&p) >= positive);
        }

        #[test]
        fn nf_eval_zero_iff_remainder_zero(cs in prop::collection::vec(-5i64..6, 0..14), mult in any::<bool>()) {
            let base = poly(&cs);
            let modulus = Polynomial::from_terms(&[(int(1), 6), (ratio(-11, 5), 0)]);
            let p = if mult { &base * &modulus } else { base };
            let (_, r) = p.div_rem(&modulus).unwrap();
            prop_assert_eq!(nf_eval(&p).is_zero(), r.is_zero());
        }

        #[test]
        fn refined_enclosures_keep_one_sign_change(roots in prop::collection::btree_set(-6i64..7, 1..5)) {
            let p = roots.iter().fold(Polynomial::constant(int(1)), |acc, &r| &acc * &poly(&[-r, 3]));
            let encl = isolate_roots(&p, &Interval::new(int(-3), int(3)), &dec("0.01")).unwrap();
            prop_assert_eq!(encl.len(), roots.len());
            for e in encl {
                let fine = e.refine(&p, &dec("1e-12"));
                prop_assert!(fine.enclosure.width() <= dec("1e-12"));
                let (lo, hi) = (fine.enclosure.lo(), fine.enclosure.hi());
                if lo == hi {
                    prop_assert!(p.eval(lo).is_zero());
                } else {
                    prop_assert!(&p.eval(lo) * &p.eval(hi) < Rational::zero() || p.eval(hi).is_zero());
                    prop_assert_eq!(sturm_count(&p, lo, hi).unwrap(), 1);
                }
            }
        }
    }
}
