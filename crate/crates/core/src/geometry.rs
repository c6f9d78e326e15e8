//! Intersections of two balls in ℝ³: lens volume, the area of one sphere
//! inside the other ball, and the height of that cap.
//!
//! All three functions are total in `d`: separated balls give zero and
//! nested balls give the containment value.

use std::f64::consts::PI;

use num_traits::{Signed, Zero};

use crate::certnum::{int, ratio, Enclosures, Interval, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallPair {
    pub r1: Rational,
    pub r2: Rational,
    pub d: Rational,
}

/// Relative position of the two balls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Position {
    Disjoint,
    /// Ball 1 inside ball 2.
    FirstInside,
    SecondInside,
    Lens,
}

impl BallPair {
    pub fn new(r1: Rational, r2: Rational, d: Rational) -> Result<Self> {
        if !r1.is_positive() || !r2.is_positive() {
            return Err(Error::Domain(format!("radii must be positive, got {r1} and {r2}")));
        }
        if d.is_negative() {
            return Err(Error::Domain(format!("center distance must be nonnegative, got {d}")));
        }
        Ok(Self { r1, r2, d })
    }

    /// Two balls of the same radius.
    pub fn equal(r: Rational, d: Rational) -> Result<Self> {
        Self::new(r.clone(), r, d)
    }

    pub fn intersects(&self) -> bool {
        self.d <= &self.r1 + &self.r2
    }

    fn position(&self) -> Position {
        if self.d >= &self.r1 + &self.r2 {
            Position::Disjoint
        } else if self.d <= (&self.r1 - &self.r2).abs() {
            if self.r1 <= self.r2 {
                Position::FirstInside
            } else {
                Position::SecondInside
            }
        } else {
            Position::Lens
        }
    }
}

fn ball_volume(r: &Rational, enc: &Enclosures) -> Interval {
    enc.pi.scale(&(ratio(4, 3) * r.pow(3)))
}

pub fn lens_volume(p: &BallPair) -> Interval {
    lens_volume_with(p, Enclosures::standard())
}

/// (π/12d)(r1+r2−d)²(d² + 2d(r1+r2) − 3(r1−r2)²)
pub fn lens_volume_with(p: &BallPair, enc: &Enclosures) -> Interval {
    match p.position() {
        Position::Disjoint => Interval::point(Rational::zero()),
        Position::FirstInside => ball_volume(&p.r1, enc),
        Position::SecondInside => ball_volume(&p.r2, enc),
        Position::Lens => {
            let (r1, r2, d) = (&p.r1, &p.r2, &p.d);
            let sum = r1 + r2;
            let diff = r1 - r2;
            let gap = &sum - d;
            let q = &gap * &gap * (d * d + int(2) * d * &sum - int(3) * &diff * &diff) / (int(12) * d);
            enc.pi.scale(&q)
        }
    }
}

pub fn cap_area(p: &BallPair) -> Interval {
    cap_area_with(p, Enclosures::standard())
}

/// π(r1/d)(r1+r2−d)(r2−r1+d), the area of the part of sphere 1 inside ball 2.
pub fn cap_area_with(p: &BallPair, enc: &Enclosures) -> Interval {
    enc.pi.scale(&(int(2) * &p.r1 * cap_height_exact(p)))
}

/// (1/2d)(r1+r2−d)(r2−r1+d)
pub fn cap_height(p: &BallPair) -> Result<Interval> {
    if p.d.is_zero() {
        return Err(Error::Domain("cap height needs d > 0".into()));
    }
    Ok(Interval::point(cap_height_exact(p)))
}

fn cap_height_exact(p: &BallPair) -> Rational {
    match p.position() {
        Position::Disjoint | Position::SecondInside => Rational::zero(),
        Position::FirstInside => int(2) * &p.r1,
        Position::Lens => {
            let (r1, r2, d) = (&p.r1, &p.r2, &p.d);
            (r1 + r2 - d) * (r2 - r1 + d) / (int(2) * d)
        }
    }
}

/// |B1 ∩ B2| / |B1| for two balls of radius c at distance d ≤ 2c, which
/// simplifies to (2c − d)²(d + 4c) / (2(2c)³).
pub fn lens_ratio(c: &Rational, d: &Rational) -> Rational {
    let two_c = int(2) * c;
    if d >= &two_c {
        return Rational::zero();
    }
    let gap = &two_c - d;
    &gap * &gap * (d + int(4) * c) / (int(2) * two_c.pow(3))
}

pub fn lens_volume_f64(r1: f64, r2: f64, d: f64) -> f64 {
    if d >= r1 + r2 {
        0.0
    } else if d <= (r1 - r2).abs() {
        4.0 / 3.0 * PI * r1.min(r2).powi(3)
    } else {
        let gap = r1 + r2 - d;
        PI / (12.0 * d) * gap * gap * (d * d + 2.0 * d * (r1 + r2) - 3.0 * (r1 - r2).powi(2))
    }
}

pub fn cap_area_f64(r1: f64, r2: f64, d: f64) -> f64 {
    if d >= r1 + r2 {
        0.0
    } else if d <= (r1 - r2).abs() {
        if r1 <= r2 {
            4.0 * PI * r1 * r1
        } else {
            0.0
        }
    } else {
        PI * r1 / d * (r1 + r2 - d) * (r2 - r1 + d)
    }
}
