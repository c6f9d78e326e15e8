//! The Lennard-Jones minus-energy profile h(r) = −r⁻¹² + 2r⁻⁶ and the
//! companions built from it: h̃ (capped at 1 inside r = 1), the tangent
//! t(r) = A/r − 25/11, the majorant θ (t inside s, h outside) and its
//! truncations θᶜ (zero on (0, c]).
//!
//! Every profile has an interval path for certified work and a plain `f64`
//! path for the cluster code.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::certnum::{int, ratio, tangent_slope, Enclosures, Interval, NumberFieldElem, Rational};
use crate::error::{Error, Result};

/// s = (11/5)^(1/6) as a float.
pub fn s_f64() -> f64 {
    (11.0f64 / 5.0).powf(1.0 / 6.0)
}

/// A = (360/121)·s as a float.
pub fn a_f64() -> f64 {
    360.0 / 121.0 * s_f64()
}

/// A breakpoint radius: either rational or s itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Breakpoint {
    Rational(Rational),
    S,
}

impl Breakpoint {
    pub fn enclosure(&self, enc: &Enclosures) -> Interval {
        match self {
            Breakpoint::Rational(q) => Interval::point(q.clone()),
            Breakpoint::S => enc.s.clone(),
        }
    }

    pub fn exact(&self) -> NumberFieldElem {
        match self {
            Breakpoint::Rational(q) => NumberFieldElem::rational(q.clone()),
            Breakpoint::S => NumberFieldElem::s(),
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            Breakpoint::Rational(q) => crate::certnum::rational::to_f64(q),
            Breakpoint::S => s_f64(),
        }
    }
}

impl fmt::Display for Breakpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Breakpoint::Rational(q) => write!(f, "{q}"),
            Breakpoint::S => write!(f, "s"),
        }
    }
}

/// One smooth piece of a radial profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Piece {
    /// h(r) = −r⁻¹² + 2r⁻⁶
    Lj,
    /// t(r) = A·r⁻¹ − 25/11
    Tangent,
    Const(Rational),
}

impl Piece {
    /// Terms (exponent, coefficient) of the piece as a Laurent polynomial.
    pub fn laurent(&self) -> Vec<(i32, NumberFieldElem)> {
        match self {
            Piece::Lj => vec![(-12, NumberFieldElem::rational(int(-1))), (-6, NumberFieldElem::rational(int(2)))],
            Piece::Tangent => vec![(-1, tangent_slope()), (0, NumberFieldElem::rational(ratio(-25, 11)))],
            Piece::Const(c) => vec![(0, NumberFieldElem::rational(c.clone()))],
        }
    }

    /// Exact value of the `order`-th derivative at a point of ℚ(s).
    pub fn eval_exact(&self, x: &NumberFieldElem, order: u32) -> Option<NumberFieldElem> {
        laurent_derivative(&self.laurent(), order)
            .iter()
            .try_fold(NumberFieldElem::zero(), |acc, (k, c)| Some(&acc + &(c * &x.pow(*k)?)))
    }

    pub fn eval(&self, r: &Interval, enc: &Enclosures) -> Result<Interval> {
        match self {
            Piece::Lj => lj_minus_energy(r),
            Piece::Tangent => Ok(&(&enc.a * &r.recip()?) - &Interval::point(ratio(25, 11))),
            Piece::Const(c) => Ok(Interval::point(c.clone())),
        }
    }

    pub fn derivative(&self, r: &Interval, order: u32, enc: &Enclosures) -> Result<Interval> {
        match (self, order) {
            (_, 0) => self.eval(r, enc),
            (Piece::Const(_), _) => Ok(Interval::point(Rational::zero())),
            (Piece::Lj, 1) => {
                // 12 r⁻⁷ (r⁻⁶ − 1)
                let u = r.powi(-6)?;
                Ok(&r.powi(-7)?.scale(&int(12)) * &(&u - &Interval::unit()))
            }
            (Piece::Lj, 2) => {
                // 12 r⁻⁸ (7 − 13 r⁻⁶)
                let u = r.powi(-6)?;
                Ok(&r.powi(-8)?.scale(&int(12)) * &(&Interval::from_i64(7) - &u.scale(&int(13))))
            }
            (Piece::Tangent, 1) => Ok(-(&enc.a * &r.powi(-2)?)),
            (Piece::Tangent, 2) => Ok((&enc.a * &r.powi(-3)?).scale(&int(2))),
            _ => Err(Error::Domain(format!("derivative order {order} not supported"))),
        }
    }

    pub fn eval_f64(&self, r: f64) -> f64 {
        match self {
            Piece::Lj => h(r),
            Piece::Tangent => a_f64() / r - 25.0 / 11.0,
            Piece::Const(c) => crate::certnum::rational::to_f64(c),
        }
    }
}

/// d^order/dr^order of a Laurent polynomial.
pub fn laurent_derivative(terms: &[(i32, NumberFieldElem)], order: u32) -> Vec<(i32, NumberFieldElem)> {
    let mut out = terms.to_vec();
    for _ in 0..order {
        out = out
            .into_iter()
            .filter(|(k, _)| *k != 0)
            .map(|(k, c)| (k - 1, c.scale(&int(k as i64))))
            .collect();
    }
    out
}

/// Exact radial Laplacian f'' + (2/r) f' of a Laurent polynomial:
/// c·r^k ↦ c·k(k+1)·r^(k−2). Zero terms are dropped.
pub fn laurent_radial_laplacian(terms: &[(i32, NumberFieldElem)]) -> Vec<(i32, NumberFieldElem)> {
    terms
        .iter()
        .map(|(k, c)| (k - 2, c.scale(&int((*k as i64) * (*k as i64 + 1)))))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Tight enclosure of h over `r` through u = r⁻⁶, h = 2u − u².
pub fn lj_minus_energy(r: &Interval) -> Result<Interval> {
    if !r.is_positive() {
        return Err(Error::Domain(format!("h needs r > 0, got {r}")));
    }
    let u = r.powi(-6)?;
    let g = |v: &Interval| -> Interval { &v.scale(&int(2)) - &v.square() };
    let at_lo = g(&Interval::point(u.lo().clone()));
    let at_hi = g(&Interval::point(u.hi().clone()));
    let one = Rational::one();
    let (lo, hi) = if u.hi() <= &one {
        (at_lo.lo().clone(), at_hi.hi().clone())
    } else if u.lo() >= &one {
        (at_hi.lo().clone(), at_lo.hi().clone())
    } else {
        (at_lo.lo().clone().min(at_hi.lo().clone()), one)
    };
    Ok(Interval::new(lo, hi))
}

/// Enclosure of 12(−11r⁻¹⁴ + 5r⁻⁸), the Laplacian of x ↦ h(‖x‖).
pub fn radial_laplacian_h(r: &Interval) -> Result<Interval> {
    if !r.is_positive() {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let u = r.powi(-6)?;
    Ok(&r.powi(-8)?.scale(&int(12)) * &(&Interval::from_i64(5) - &u.scale(&int(11))))
}

/// Which one-sided derivative to take at a breakpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadialProfile {
    H,
    HTilde,
    T,
    Theta,
    /// θ^c: zero on (0, c], θ beyond.
    ThetaTrunc(Rational),
}

impl RadialProfile {
    /// Pieces with the breakpoint that opens each one; piece i lives on
    /// (breakpoint_i, breakpoint_{i+1}].
    pub fn pieces(&self) -> Vec<(Option<Breakpoint>, Piece)> {
        match self {
            RadialProfile::H => vec![(None, Piece::Lj)],
            RadialProfile::T => vec![(None, Piece::Tangent)],
            RadialProfile::HTilde => {
                vec![(None, Piece::Const(Rational::one())), (Some(Breakpoint::Rational(Rational::one())), Piece::Lj)]
            }
            RadialProfile::Theta => vec![(None, Piece::Tangent), (Some(Breakpoint::S), Piece::Lj)],
            RadialProfile::ThetaTrunc(c) => {
                let zero = (None, Piece::Const(Rational::zero()));
                if c.is_zero() {
                    RadialProfile::Theta.pieces()
                } else if c.pow(6) < ratio(11, 5) {
                    vec![zero, (Some(Breakpoint::Rational(c.clone())), Piece::Tangent), (Some(Breakpoint::S), Piece::Lj)]
                } else {
                    vec![zero, (Some(Breakpoint::Rational(c.clone())), Piece::Lj)]
                }
            }
        }
    }

    pub fn breakpoints(&self) -> Vec<Breakpoint> {
        self.pieces().into_iter().filter_map(|(b, _)| b).collect()
    }

    /// Indices of pieces whose closure may meet `r`.
    fn touched(&self, r: &Interval, enc: &Enclosures) -> Vec<(usize, Interval)> {
        let pieces = self.pieces();
        let mut out = Vec::new();
        for i in 0..pieces.len() {
            let left = pieces[i].0.as_ref().map(|b| b.enclosure(enc));
            let right = pieces.get(i + 1).and_then(|p| p.0.as_ref()).map(|b| b.enclosure(enc));
            let lo = left.map(|l| l.lo().clone().max(r.lo().clone())).unwrap_or_else(|| r.lo().clone());
            let hi = right.map(|h| h.hi().clone().min(r.hi().clone())).unwrap_or_else(|| r.hi().clone());
            if lo <= hi {
                out.push((i, Interval::new(lo, hi)));
            }
        }
        out
    }

    /// Enclosure of the profile's image over `r`; pieces met by `r` are
    /// evaluated separately and hulled.
    pub fn eval(&self, r: &Interval, enc: &Enclosures) -> Result<Interval> {
        if !r.is_positive() {
            return Err(Error::Domain(format!("profile needs r > 0, got {r}")));
        }
        let pieces = self.pieces();
        let mut acc: Option<Interval> = None;
        for (i, part) in self.touched(r, enc) {
            let v = pieces[i].1.eval(&part, enc)?;
            acc = Some(match acc {
                Some(a) => a.hull(&v),
                None => v,
            });
        }
        acc.ok_or_else(|| Error::Domain("no piece covers the argument".into()))
    }

    /// Derivative of the active piece. An argument that meets more than one
    /// piece needs `side`, which picks the piece left or right of the single
    /// breakpoint it meets.
    pub fn derivative(&self, r: &Interval, order: u32, side: Option<Side>, enc: &Enclosures) -> Result<Interval> {
        if !r.is_positive() {
            return Err(Error::Domain(format!("profile needs r > 0, got {r}")));
        }
        let pieces = self.pieces();
        let touched = self.touched(r, enc);
        let index = match (touched.as_slice(), side) {
            ([(i, _)], _) => *i,
            ([(i, _), (j, _)], Some(side)) => match side {
                Side::Left => *i,
                Side::Right => *j,
            },
            _ => {
                let bp = touched.get(1).and_then(|(j, _)| pieces[*j].0.clone());
                return Err(Error::StraddlesBreakpoint(bp.map(|b| b.to_string()).unwrap_or_default()));
            }
        };
        pieces[index].1.derivative(r, order, enc)
    }

    pub fn eval_f64(&self, r: f64) -> f64 {
        let pieces = self.pieces();
        let mut active = &pieces[0].1;
        for (bp, piece) in &pieces[1..] {
            if let Some(b) = bp {
                if r > b.to_f64() {
                    active = piece;
                }
            }
        }
        active.eval_f64(r)
    }
}

/// Enclosure of `profile` over `r` with the standard constant enclosures.
pub fn eval_profile(profile: &RadialProfile, r: &Interval) -> Result<Interval> {
    profile.eval(r, Enclosures::standard())
}

pub fn profile_derivatives(profile: &RadialProfile, r: &Interval, order: u32, side: Option<Side>) -> Result<Interval> {
    profile.derivative(r, order, side, Enclosures::standard())
}

pub fn h(r: f64) -> f64 {
    let u = r.powi(-6);
    2.0 * u - u * u
}

/// dh/dr
pub fn h_prime(r: f64) -> f64 {
    let u = r.powi(-6);
    12.0 * (u - 1.0) * u / r
}

pub fn h_tilde(r: f64) -> f64 {
    if r <= 1.0 {
        1.0
    } else {
        h(r)
    }
}

pub fn theta(r: f64) -> f64 {
    if r <= s_f64() {
        a_f64() / r - 25.0 / 11.0
    } else {
        h(r)
    }
}

pub fn theta_trunc(c: f64, r: f64) -> f64 {
    if r <= c {
        0.0
    } else {
        theta(r)
    }
}

/// Φ(x) = ‖x‖⁻¹² − 2‖x‖⁻⁶.
pub fn lj_phi(x: [f64; 3]) -> Result<f64> {
    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if r2 == 0.0 {
        return Err(Error::Domain("Φ is undefined at the origin".into()));
    }
    let u = 1.0 / (r2 * r2 * r2);
    Ok(u * u - 2.0 * u)
}

/// Compares the exact value of two profiles' pieces at a point of ℚ(s).
pub fn compare_exact(a: &Piece, b: &Piece, x: &NumberFieldElem, order: u32) -> Option<Ordering> {
    let d = &a.eval_exact(x, order)? - &b.eval_exact(x, order)?;
    Some(d.sign())
}
