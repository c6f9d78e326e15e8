//! Closed-form integrals of the majorant θ.
//!
//! The radial moment ∫ θ(w) w² dw is an exact element of ℚ(s) for rational
//! limits. The shell integrals use the area of a sphere of radius w inside a
//! ball of radius c whose center has norm r, which is (πw/r)(c² − (w − r)²)
//! for |r − c| ≤ w ≤ r + c.

use num_traits::{Signed, Zero};

use crate::certnum::{int, ratio, tangent_slope, Enclosures, Interval, NumberFieldElem, Rational};
use crate::error::{Error, Result};
use crate::potential::RadialProfile;

/// ∫_lower^∞ θ(w) w² dw, exactly and as an enclosure.
#[derive(Debug, Clone)]
pub struct MomentIntegral {
    pub lower: Rational,
    pub exact: NumberFieldElem,
    pub value: Interval,
}

/// Antiderivative A·w²/2 − (25/33)·w³ of t(w)·w².
fn tangent_moment_primitive(w: &NumberFieldElem) -> NumberFieldElem {
    let w2 = w * w;
    let w3 = &w2 * w;
    &(&tangent_slope() * &w2.scale(&ratio(1, 2))) - &w3.scale(&ratio(25, 33))
}

/// Antiderivative w⁻⁹/9 − (2/3)·w⁻³ of h(w)·w²; it vanishes at infinity.
fn lj_moment_primitive(w: &NumberFieldElem) -> Option<NumberFieldElem> {
    Some(&w.pow(-9)?.scale(&ratio(1, 9)) - &w.pow(-3)?.scale(&ratio(2, 3)))
}

/// Exact value of ∫_lower^∞ θ(w) w² dw in ℚ(s).
pub fn theta_moment_exact(lower: &Rational) -> Result<NumberFieldElem> {
    if lower.is_negative() {
        return Err(Error::Domain(format!("moment lower limit must be nonnegative, got {lower}")));
    }
    let s = NumberFieldElem::s();
    let tail = |w: &NumberFieldElem| lj_moment_primitive(w).ok_or(Error::DivisionByZero);
    if lower.pow(6) <= ratio(11, 5) {
        let low = NumberFieldElem::rational(lower.clone());
        let t_part = &tangent_moment_primitive(&s) - &tangent_moment_primitive(&low);
        Ok(&t_part - &tail(&s)?)
    } else {
        Ok(-tail(&NumberFieldElem::rational(lower.clone()))?)
    }
}

pub fn theta_moment_with(lower: &Rational, enc: &Enclosures) -> Result<MomentIntegral> {
    let exact = theta_moment_exact(lower)?;
    let value = enc.enclose(&exact);
    Ok(MomentIntegral { lower: lower.clone(), exact, value })
}

/// Certified enclosure of ∫_lower^∞ θ(w) w² dw.
pub fn theta_moment(lower: &Rational) -> Result<Interval> {
    Ok(theta_moment_with(lower, Enclosures::standard())?.value)
}

/// α(w) = −w³/3 + r w² + (c² − r²) w
pub fn alpha(w: &Interval, r: &Interval, c: &Rational) -> Interval {
    let c2 = Interval::point(c * c);
    let w2 = w.square();
    let cubic = (&w2 * w).scale(&ratio(-1, 3));
    &(&cubic + &(r * &w2)) + &(&(&c2 - &r.square()) * w)
}

/// β(w) = −w⁴/4 + (2/3) r w³ + (1/2)(c² − r²) w²
pub fn beta(w: &Interval, r: &Interval, c: &Rational) -> Interval {
    let c2 = Interval::point(c * c);
    let w2 = w.square();
    let quartic = w2.square().scale(&ratio(-1, 4));
    let cubic = (r * &(&w2 * w)).scale(&ratio(2, 3));
    &(&quartic + &cubic) + &(&(&c2 - &r.square()) * &w2).scale(&ratio(1, 2))
}

/// A(α(w2) − α(w1)) − (25/11)(β(w2) − β(w1)) written as
/// kc·c² + k2·r² + k1·r + k0 with exact coefficients.
#[derive(Debug, Clone)]
pub struct ShellQuadratic {
    pub w1: Rational,
    pub w2: Rational,
    pub kc: NumberFieldElem,
    pub k2: NumberFieldElem,
    pub k1: NumberFieldElem,
    pub k0: NumberFieldElem,
}

/// A quadratic lower bound a_c·c² + a_2·r² + a_1·r + a_0 with rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellBound {
    pub ac: Rational,
    pub a2: Rational,
    pub a1: Rational,
    pub a0: Rational,
}

impl ShellBound {
    pub fn new(ac: Rational, a2: Rational, a1: Rational, a0: Rational) -> Self {
        Self { ac, a2, a1, a0 }
    }

    pub fn eval(&self, r: &Interval, c: &Rational) -> Interval {
        let quad = &(&r.square().scale(&self.a2) + &r.scale(&self.a1)) + &Interval::point(self.a0.clone());
        &quad + &Interval::point(&self.ac * c * c)
    }
}

impl ShellQuadratic {
    pub fn new(w1: &Rational, w2: &Rational) -> Result<Self> {
        if !w1.is_positive() || w1 >= w2 {
            return Err(Error::Domain(format!("shell limits need 0 < w1 < w2, got {w1}, {w2}")));
        }
        let delta = |k: i32| NumberFieldElem::rational(w2.pow(k) - w1.pow(k));
        let a = tangent_slope();
        let kc = &(&a * &delta(1)) - &delta(2).scale(&ratio(25, 22));
        let k1 = &(&a * &delta(2)) - &delta(3).scale(&ratio(50, 33));
        let k0 = &(&a * &delta(3)).scale(&ratio(-1, 3)) + &delta(4).scale(&ratio(25, 44));
        Ok(Self { w1: w1.clone(), w2: w2.clone(), k2: -kc.clone(), kc, k1, k0 })
    }

    pub fn coefficients(&self, enc: &Enclosures) -> [Interval; 4] {
        [enc.enclose(&self.kc), enc.enclose(&self.k2), enc.enclose(&self.k1), enc.enclose(&self.k0)]
    }

    pub fn eval(&self, r: &Interval, c: &Rational, enc: &Enclosures) -> Interval {
        let [kc, k2, k1, k0] = self.coefficients(enc);
        let c2 = Interval::point(c * c);
        &(&(&kc * &c2) + &(&k2 * &r.square())) + &(&(&k1 * r) + &k0)
    }

    /// Coefficients of (this integral) − bound, enclosed. Evaluating the
    /// difference directly keeps the overestimate proportional to the small
    /// coefficient gaps.
    pub fn excess(&self, bound: &ShellBound, enc: &Enclosures) -> [Interval; 4] {
        let [kc, k2, k1, k0] = self.coefficients(enc);
        let sub = |k: Interval, a: &Rational| &k - &Interval::point(a.clone());
        [sub(kc, &bound.ac), sub(k2, &bound.a2), sub(k1, &bound.a1), sub(k0, &bound.a0)]
    }
}

/// Evaluates q_c·c² + q_2·r² + q_1·r + q_0 for enclosed coefficients.
pub fn eval_quadratic(coeffs: &[Interval; 4], r: &Interval, c: &Interval) -> Interval {
    let [qc, q2, q1, q0] = coeffs;
    &(&(qc * &c.square()) + &(q2 * &r.square())) + &(&(q1 * r) + q0)
}

/// Enclosure of ∫_{w1}^{w2} (A/w − 25/11)·w·(−w² + 2rw + c² − r²) dw.
pub fn shell_weighted_integral(r: &Interval, c: &Rational, w1: &Rational, w2: &Rational) -> Result<Interval> {
    let q = ShellQuadratic::new(w1, w2)?;
    Ok(q.eval(r, c, Enclosures::standard()))
}

/// Antiderivative in w of a·w^k · w · (c² − r² + 2rw − w²).
fn shell_term_primitive(k: i32, a: &Interval, w: &Interval, r: &Interval, c2r2: &Interval) -> Result<Interval> {
    let term = |e: i32| -> Result<Interval> {
        if e == 0 {
            return Err(Error::Domain("logarithmic shell term".into()));
        }
        Ok(w.powi(e)?.scale(&ratio(1, e as i64)))
    };
    let sum = &(&(c2r2 * &term(k + 2)?) + &(r * &term(k + 3)?).scale(&int(2))) - &term(k + 4)?;
    Ok(a * &sum)
}

/// Average of θ^trunc over the ball of radius `ball_radius` centred at a
/// point of norm `x_norm`, computed in closed form shell by shell. The
/// enclosure's lower end is a certified lower bound.
pub fn ball_average_lower_bound(x_norm: &Interval, ball_radius: &Rational, trunc: &Rational) -> Result<Interval> {
    ball_average_with(x_norm, ball_radius, trunc, Enclosures::standard())
}

pub fn ball_average_with(x_norm: &Interval, ball_radius: &Rational, trunc: &Rational, enc: &Enclosures) -> Result<Interval> {
    let c = ball_radius;
    if !c.is_positive() || trunc.is_negative() {
        return Err(Error::Domain(format!("need radius > 0 and truncation ≥ 0, got {c}, {trunc}")));
    }
    if !x_norm.is_positive() {
        return Err(Error::Domain(format!("ball center must avoid the origin, got norm {x_norm}")));
    }
    // Spheres of radius w < c − r lie wholly inside the ball, where the cap
    // formula does not apply; θ^trunc must vanish there.
    if x_norm.lo() < c && trunc < &(c - x_norm.lo()) {
        return Err(Error::Domain(format!(
            "ball of radius {c} around norm {x_norm} reaches inside the truncation radius {trunc}"
        )));
    }
    let r = x_norm;
    let cc = Interval::point(c.clone());
    let c2r2 = &Interval::point(c * c) - &r.square();
    let near = r - &cc;
    let far = r + &cc;

    let pieces = RadialProfile::ThetaTrunc(trunc.clone()).pieces();
    let mut total = Interval::point(Rational::zero());
    for (i, (bp, piece)) in pieces.iter().enumerate() {
        let terms: Vec<(i32, Interval)> = piece
            .laurent()
            .into_iter()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| (k, enc.enclose(&a)))
            .collect();
        if terms.is_empty() {
            continue;
        }
        let lower = match bp {
            Some(b) => b.enclosure(enc).max(&near),
            None => near.clone(),
        };
        let upper = match pieces.get(i + 1).and_then(|p| p.0.as_ref()) {
            Some(b) => b.enclosure(enc).min(&far),
            None => far.clone(),
        };
        if upper.hi() <= lower.lo() {
            continue;
        }
        let upper = upper.max(&lower);
        if !lower.is_positive() {
            return Err(Error::Domain("shell radius reaches the origin".into()));
        }
        for (k, a) in &terms {
            let g = &shell_term_primitive(*k, a, &upper, r, &c2r2)? - &shell_term_primitive(*k, a, &lower, r, &c2r2)?;
            total = &total + &g;
        }
    }
    let prefactor = Interval::point(ratio(3, 4) / c.pow(3)).checked_div(r)?;
    Ok(&prefactor * &total)
}
