//! Adaptive-bisection sign certification.
//!
//! A check passes only when the domain is covered by finitely many boxes on
//! each of which the interval image of `f` has the target sign. A box whose
//! image certainly has the wrong sign is a counterexample (FAIL); running
//! out of depth without either outcome is INCONCLUSIVE.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::interval::Interval;
use crate::error::Result;

pub const DEFAULT_MAX_DEPTH: u32 = 40;

/// Boxes examined before a search gives up as inconclusive. A region that no
/// depth can decide would otherwise cost 2^depth evaluations.
pub const MAX_BOXES: usize = 1 << 17;

/// Once one box is undecided PASS is out of reach; the search only goes on
/// this many boxes longer looking for a counterexample.
const GRACE_BOXES: usize = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    /// Combination rule for a conjunction of checks.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }

    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().fold(Verdict::Pass, Verdict::and)
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Positive,
    Negative,
}

impl Target {
    fn holds(self, image: &Interval) -> bool {
        match self {
            Target::Positive => image.is_positive(),
            Target::Negative => image.is_negative(),
        }
    }

    fn violated(self, image: &Interval) -> bool {
        match self {
            Target::Positive => image.is_nonpositive(),
            Target::Negative => image.is_nonnegative(),
        }
    }
}

/// Outcome of a sign certification.
#[derive(Debug, Clone)]
pub struct SignCertificate {
    pub verdict: Verdict,
    /// Number of boxes in the final cover (PASS) or visited so far.
    pub boxes: usize,
    /// Deepest bisection level used.
    pub depth: u32,
    /// Sub-box where the sign is wrong (FAIL) or undecided (INCONCLUSIVE).
    pub witness: Option<Vec<Interval>>,
    /// Hull of the image over the cover; its lower end is a certified
    /// margin for positive targets.
    pub image: Option<Interval>,
}

impl SignCertificate {
    pub fn witness_string(&self) -> Option<String> {
        self.witness.as_ref().map(|w| {
            w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" × ")
        })
    }
}

/// Certifies `f > 0` (or `< 0`) on `domain`.
pub fn certify_sign<F>(f: F, domain: &Interval, target: Target, max_depth: u32) -> SignCertificate
where
    F: Fn(&Interval) -> Result<Interval>,
{
    certify_sign_box(|b: &[Interval]| f(&b[0]), std::slice::from_ref(domain), target, max_depth)
}

/// Two-variable version over the box `x × y`.
pub fn certify_sign_2d<F>(f: F, x: &Interval, y: &Interval, target: Target, max_depth: u32) -> SignCertificate
where
    F: Fn(&Interval, &Interval) -> Result<Interval>,
{
    certify_sign_box(|b: &[Interval]| f(&b[0], &b[1]), &[x.clone(), y.clone()], target, max_depth)
}

/// Box version; the widest coordinate is halved at each level. The search
/// is a depth-first walk in a fixed order, so the result is reproducible.
pub fn certify_sign_box<F>(f: F, domain: &[Interval], target: Target, max_depth: u32) -> SignCertificate
where
    F: Fn(&[Interval]) -> Result<Interval>,
{
    let mut stack: Vec<(Vec<Interval>, u32)> = vec![(domain.to_vec(), 0)];
    let mut boxes = 0usize;
    let mut deepest = 0u32;
    let mut image: Option<Interval> = None;
    let mut undecided: Option<Vec<Interval>> = None;
    let mut budget = MAX_BOXES;

    while let Some((b, depth)) = stack.pop() {
        if boxes >= budget {
            undecided.get_or_insert(b);
            break;
        }
        boxes += 1;
        deepest = deepest.max(depth);
        if let Ok(value) = f(&b) {
            if target.holds(&value) {
                image = Some(match image {
                    Some(acc) => acc.hull(&value),
                    None => value,
                });
                continue;
            }
            if target.violated(&value) {
                return SignCertificate { verdict: Verdict::Fail, boxes, depth: deepest, witness: Some(b), image: Some(value) };
            }
        }
        if depth >= max_depth {
            // A wrong sign at the centre is still a genuine counterexample.
            let centre: Vec<Interval> = b.iter().map(|i| Interval::point(i.mid())).collect();
            if let Ok(v) = f(&centre) {
                if target.violated(&v) {
                    return SignCertificate { verdict: Verdict::Fail, boxes, depth: deepest, witness: Some(centre), image: Some(v) };
                }
            }
            if undecided.is_none() {
                undecided = Some(b);
                budget = budget.min(boxes + GRACE_BOXES);
            }
            continue;
        }
        let axis = widest_axis(&b);
        let (left, right) = b[axis].bisect();
        let mut lb = b.clone();
        lb[axis] = left;
        let mut rb = b;
        rb[axis] = right;
        stack.push((rb, depth + 1));
        stack.push((lb, depth + 1));
    }

    match undecided {
        Some(w) => SignCertificate { verdict: Verdict::Inconclusive, boxes, depth: deepest, witness: Some(w), image },
        None => SignCertificate { verdict: Verdict::Pass, boxes, depth: deepest, witness: None, image },
    }
}

fn widest_axis(b: &[Interval]) -> usize {
    let mut best = 0;
    for i in 1..b.len() {
        if b[i].width().cmp(&b[best].width()) == Ordering::Greater {
            best = i;
        }
    }
    best
}
