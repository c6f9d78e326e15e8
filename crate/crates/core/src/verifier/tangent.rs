//! The tangent t against h, and the majorant θ built from them.

use std::cmp::Ordering;

use num_traits::Zero;

use super::{above, less, Certificate, Context, PropId, SubCheck};
use crate::certnum::{certify_sign, dec, int, ratio, Interval, NumberFieldElem, Rational, Target, Verdict};
use crate::integrals::ball_average_with;
use crate::polyalg::NfPolynomial;
use crate::potential::{laurent_radial_laplacian, radial_laplacian_h, Piece, RadialProfile};

/// q(r) = r¹²(t(r) − h(r)) = −offset·r¹² + slope·s·r¹¹ − 2r⁶ + 1
fn q_polynomial(ctx: &Context<'_>) -> NfPolynomial {
    let t = ctx.tangent();
    NfPolynomial::from_terms(&[
        (NumberFieldElem::rational(-t.offset.clone()), 12),
        (t.slope.clone(), 11),
        (NumberFieldElem::rational(int(-2)), 6),
        (NumberFieldElem::one(), 0),
    ])
}

fn tangency(ctx: &Context<'_>) -> SubCheck {
    let s = NumberFieldElem::s();
    let t = ctx.tangent();
    let children = (0..=2)
        .map(|order| {
            let label = match order {
                0 => "t(s) = h(s)".to_string(),
                1 => "t'(s) = h'(s)".to_string(),
                _ => "t''(s) = h''(s)".to_string(),
            };
            match (t.eval_exact(&s, order), Piece::Lj.eval_exact(&s, order)) {
                (Some(a), Some(b)) => {
                    let diff = &a - &b;
                    SubCheck::exact(label, diff.is_zero()).with_detail(format!("difference {diff}"))
                }
                _ => SubCheck::new(label, Verdict::Fail).with_detail("not evaluable at s"),
            }
        })
        .collect();
    SubCheck::group("t and h agree to second order at s", children)
}

pub fn verify_prop_2_4(ctx: &Context<'_>) -> Certificate {
    let mut cert = Certificate::new(PropId::P2_4, "tangent t touches h to second order at s and separates from it elsewhere");
    let s = &ctx.enc.s;
    cert.enclosure("s", s, None);
    cert.check(tangency(ctx));

    let q = q_polynomial(ctx);
    let multiplicity = q.root_multiplicity_at_s();
    let signs = q.coefficient_signs();
    let descartes = crate::polyalg::sign_changes(signs.iter().copied());
    cert.check(
        SubCheck::exact("q(r) = r^12 (t(r) - h(r)) has a root of multiplicity >= 3 at s", multiplicity >= 3)
            .with_detail(format!("multiplicity {multiplicity}")),
    );
    cert.check(
        SubCheck::exact("Descartes bound on positive roots of q is 3", descartes == 3)
            .with_detail(format!("coefficient signs {signs:?}, {descartes} sign changes")),
    );

    // coefficient enclosures once, not per box
    let q_coeffs: Vec<Interval> = q.coeffs().iter().map(|c| c.enclose(s)).collect();
    let q_interval = |r: &Interval| {
        Ok(q_coeffs.iter().rev().fold(Interval::point(Rational::zero()), |acc, c| &(&acc * r) + c))
    };
    let depth = ctx.depth();
    let q1 = q.eval(&NumberFieldElem::rational(int(1)));
    cert.enclosure("q(1)", &ctx.enc.enclose(&q1), Some("> 0".into()));
    let q2 = q.eval(&NumberFieldElem::rational(int(2)));
    let left = vec![
        SubCheck::exact("q(1) > 0 (exact)", q1.sign() == Ordering::Greater).with_detail(format!("q(1) = {q1}")),
        SubCheck::from_sign(
            "q > 0 on [0, 1.1]",
            &certify_sign(q_interval, &Interval::new(Rational::zero(), dec("1.1")), Target::Positive, depth),
        ),
    ];
    cert.check(SubCheck::group("q > 0 left of s", left));

    let t = ctx.tangent();
    // for r >= 2: q(r) = r^11 (slope·s − offset·r) + (1 − 2r^6)
    let lead = &t.slope - &NumberFieldElem::rational(int(2) * &t.offset);
    let right = vec![
        SubCheck::exact("q(2) < 0 (exact)", q2.sign() == Ordering::Less).with_detail(format!("q(2) = {q2}")),
        SubCheck::from_sign(
            "q < 0 on [1.2, 2]",
            &certify_sign(q_interval, &Interval::new(dec("1.2"), int(2)), Target::Negative, depth),
        ),
        SubCheck::exact("tail r >= 2: slope*s - 2*offset < 0 and 1 - 2*2^6 < 0", lead.is_negative()),
    ];
    cert.check(SubCheck::group("q < 0 right of s", right).with_detail(
        "between 1.1 and 1.2 the only root is the one at s, by the root count above",
    ));
    cert.finish()
}

pub fn verify_prop_2_5(ctx: &Context<'_>) -> Certificate {
    let mut cert = Certificate::new(PropId::P2_5, "theta dominates h-tilde and is subharmonic away from the origin");
    let s = NumberFieldElem::s();
    let depth = ctx.depth();
    let enc = &ctx.enc;

    let lap = laurent_radial_laplacian(&Piece::Lj.laurent());
    let lap_at_s = super::laurent_eval(&lap, &s);
    cert.check(SubCheck::exact(
        "Laplacian of h vanishes at s (exact)",
        lap_at_s.map(|v| v.is_zero()).unwrap_or(false),
    ));

    let cover = vec![
        less("s < 1.15", &ratio(11, 5), &dec("1.15").pow(6))
            .with_detail("on [s, 1.15] the sign is that of 5r^6 - 11 >= 0"),
        SubCheck::from_sign(
            "Laplacian of h > 0 on [1.15, 8]",
            &certify_sign(radial_laplacian_h, &Interval::new(dec("1.15"), int(8)), Target::Positive, depth),
        ),
        less("tail r > 8: 11 < 5*8^6", &int(11), &(int(5) * int(8).pow(6))),
    ];
    cert.check(SubCheck::group("Laplacian of h >= 0 for r >= s", cover));

    let t = ctx.tangent();
    cert.check(SubCheck::exact(
        "t-piece is harmonic (Laplacian of slope/r - offset is identically 0)",
        laurent_radial_laplacian(&t.laurent()).is_empty(),
    ));
    cert.check(super::tangent::tangency(ctx).relabel("theta is C^2 across s"));

    // h-tilde <= theta
    let t_at_1 = t.eval_exact(&NumberFieldElem::one(), 0).expect("1 is invertible");
    let slope_positive = t.slope.is_positive();
    let mut grid = Vec::new();
    for k in 1..=200 {
        let r = Interval::point(ratio(k, 50));
        let th = RadialProfile::Theta.eval(&r, enc);
        let ht = RadialProfile::HTilde.eval(&r, enc);
        let verdict = match (th, ht) {
            (Ok(th), Ok(ht)) => {
                let gap = &th - &ht;
                // strict below s, where t > 1 ≥ h̃; equality is allowed beyond
                let strict = r.hi() < enc.s.lo();
                let (pass, fail) = if strict {
                    (gap.is_positive(), gap.is_nonpositive())
                } else {
                    (gap.is_nonnegative(), gap.is_negative())
                };
                if pass {
                    Verdict::Pass
                } else if fail {
                    Verdict::Fail
                } else {
                    Verdict::Inconclusive
                }
            }
            _ => Verdict::Inconclusive,
        };
        if verdict != Verdict::Pass {
            grid.push(SubCheck::new(format!("grid point r = {}", ratio(k, 50)), verdict));
        }
    }
    let grid_check = if grid.is_empty() {
        SubCheck::new("grid r = k/50, k = 1..200", Verdict::Pass)
    } else {
        SubCheck::group("grid r = k/50, k = 1..200", grid)
    };
    let dominance = vec![
        SubCheck::exact("t decreasing and t(1) >= 1, so t >= 1 = h-tilde on (0, 1]", slope_positive && {
            let d = &t_at_1 - &NumberFieldElem::one();
            !d.is_negative()
        })
        .with_detail(format!("t(1) = {t_at_1}")),
        SubCheck::new("t > h on (1, s] by the comparison of t and h", Verdict::Pass),
        SubCheck::new("theta = h = h-tilde on (s, inf)", Verdict::Pass),
        grid_check,
    ];
    cert.check(SubCheck::group("h-tilde <= theta on (0, inf)", dominance));

    let t_at_s = t.eval_exact(&s, 0).expect("s is invertible");
    cert.check(SubCheck::group(
        "theta >= 0",
        vec![
            SubCheck::exact("t(s) > 0 and t decreasing", t_at_s.is_positive() && slope_positive)
                .with_detail(format!("t(s) = {t_at_s}")),
            less("root of h lies below s: 1/2 < 11/5", &ratio(1, 2), &ratio(11, 5)),
        ],
    ));

    let samples = [("1.5", "0.3"), ("1", "0.5"), ("2", "1"), ("0.8", "0.5"), ("3", "2.5"), ("1.2", "0.15"), ("5", "4.9")];
    let means = samples
        .iter()
        .map(|(norm, radius)| {
            let label = format!("mean of theta over ball(norm {norm}, radius {radius}) >= theta({norm})");
            let r = Interval::point(dec(norm));
            let result = ball_average_with(&r, &dec(radius), &Rational::zero(), enc)
                .and_then(|mean| Ok((mean, RadialProfile::Theta.eval(&r, enc)?)));
            match result {
                Ok((mean, center)) => above(label, &(&mean - &center), &Rational::zero()),
                Err(e) => SubCheck::new(label, Verdict::Fail).with_detail(e.to_string()),
            }
        })
        .collect();
    cert.check(SubCheck::group("spherical means exceed the center value", means));
    cert.finish()
}

impl SubCheck {
    fn relabel(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }
}
