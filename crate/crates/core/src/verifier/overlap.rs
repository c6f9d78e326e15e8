//! The pairwise cancellation inequality for overlapping balls and the
//! final upper bound on B.

use super::{above, below, equal, fmt_q, less, less_eq, Certificate, Context, PropId, SubCheck};
use crate::certnum::{certify_sign, int, ratio, Interval, Rational, Target, Verdict};
use crate::geometry::{lens_ratio, lens_volume_with, BallPair};
use crate::integrals::theta_moment_with;
use crate::polyalg::{isolate_roots, sturm_count, Polynomial};

/// The polynomials behind the overlap inequality, for density constant `k`
/// and balls of radius `c` (so pairs overlap for d < D = 2c).
#[derive(Debug, Clone)]
pub struct AppendixPolynomials {
    pub diameter: Rational,
    /// d¹² times (k/(2D³))(D − d)²(d + 2D) + 2(h(d) − 1)
    pub p: Polynomial,
    /// P' = d⁵·R
    pub r: Polynomial,
    /// R' = d⁵·cubic
    pub cubic: Polynomial,
    pub c1: Rational,
    pub c2: Rational,
    pub d12: Rational,
}

pub fn appendix_polynomials(k: &Rational, c: &Rational) -> AppendixPolynomials {
    let dd = int(2) * c;
    let lens = {
        // (D − d)²(d + 2D)
        let gap = Polynomial::new(vec![dd.clone(), int(-1)]);
        &(&gap * &gap) * &Polynomial::new(vec![int(2) * &dd, int(1)])
    };
    let prefactor = k / (int(2) * dd.pow(3));
    let p = &(&lens.scale(&prefactor) * &Polynomial::monomial(int(1), 12))
        + &Polynomial::from_terms(&[(int(-2), 12), (int(4), 6), (int(-2), 0)]);
    let (r, _) = p.derivative().div_rem(&Polynomial::monomial(int(1), 5)).expect("nonzero divisor");
    let (cubic, _) = r.derivative().div_rem(&Polynomial::monomial(int(1), 5)).expect("nonzero divisor");
    AppendixPolynomials { c1: p.coeff(15), c2: p.coeff(13), d12: p.coeff(12), diameter: dd, p, r, cubic }
}

pub fn verify_appendix(ctx: &Context<'_>) -> Certificate {
    let k = ctx.k;
    let depth = ctx.depth();
    let polys = appendix_polynomials(&k.overlap_constant, &k.ball_radius);
    let dd = &polys.diameter;
    let mut cert = Certificate::new(
        PropId::Appendix,
        format!(
            "({}/2)(1/D^3)(D - d)^2 (d + 2D) + 2(h(d) - 1) < 0 for 0 < d <= D = {}",
            fmt_q(&k.overlap_constant),
            fmt_q(dd)
        ),
    );

    let claimed = Polynomial::from_terms(&[
        (polys.c1.clone(), 15),
        (k.appendix_c2.clone(), 13),
        (k.appendix_d12.clone(), 12),
        (int(4), 6),
        (int(-2), 0),
    ]);
    cert.check(SubCheck::group(
        "P = c1 d^15 + c2 d^13 + d12 d^12 + 4d^6 - 2",
        vec![
            equal("c2", &polys.c2, &k.appendix_c2),
            equal("coefficient of d^12", &polys.d12, &k.appendix_d12),
            SubCheck::exact("expansion matches term by term", claimed == polys.p).with_detail(format!("P = {}", polys.p)),
        ],
    ));
    let (quotient, rest) = polys.p.derivative().div_rem(&Polynomial::monomial(int(1), 5)).expect("nonzero divisor");
    cert.check(
        SubCheck::exact("P' = d^5 R", rest.is_zero() && quotient == polys.r).with_detail(format!("R = {}", polys.r)),
    );

    let half = dd / int(2);
    let r_half = polys.r.eval(&half);
    let sturm = match sturm_count(&polys.r, &int(0), dd) {
        Ok(n) => SubCheck::exact("Sturm: R has no roots in (0, D]", n == 0).with_detail(format!("{n} roots")),
        Err(e) => SubCheck::new("Sturm: R has no roots in (0, D]", Verdict::Fail).with_detail(e.to_string()),
    };
    cert.check(SubCheck::group(
        "R > 0 on [0, D] (Sturm)",
        vec![sturm, less("R(D/2) > 0", &int(0), &r_half)],
    ));

    // the critical-point route through R' = d^5 · cubic
    let mut route = Vec::new();
    let (cq, crest) = polys.r.derivative().div_rem(&Polynomial::monomial(int(1), 5)).expect("nonzero divisor");
    route.push(SubCheck::exact("R' = d^5 times a cubic", crest.is_zero() && cq == polys.cubic).with_detail(format!("cubic = {}", polys.cubic)));
    match isolate_roots(&polys.cubic, &Interval::new(int(-2), int(2)), &ratio(1, 100_000_000)) {
        Ok(roots) => {
            route.push(SubCheck::exact("cubic has three real roots in [-2, 2]", roots.len() == 3).with_detail(format!("{} roots", roots.len())));
            for (i, (root, claim)) in roots.iter().zip(&k.root_claims).enumerate() {
                let name = format!("rho_{}", i + 1);
                cert.enclosure(name.clone(), &root.enclosure, Some(format!("~ {}", fmt_q(claim))));
                let window = Interval::new(claim - &k.root_tolerance, claim + &k.root_tolerance);
                route.push(
                    SubCheck::exact(format!("{name} within {} of {}", fmt_q(&k.root_tolerance), fmt_q(claim)), window.contains_interval(&root.enclosure))
                        .with_detail(root.enclosure.to_decimal_string(12)),
                );
                if root.enclosure.lo() > &int(0) && root.enclosure.hi() < dd {
                    let value = polys.r.eval_interval(&root.enclosure);
                    cert.enclosure(format!("R({name})"), &value, Some("> 0".into()));
                    route.push(above(format!("R({name}) > 0"), &value, &int(0)));
                }
            }
        }
        Err(e) => route.push(SubCheck::new("roots of the cubic", Verdict::Fail).with_detail(e.to_string())),
    }
    route.push(less("R(0) > 0", &int(0), &polys.r.eval(&int(0))));
    route.push(less("R(D) > 0", &int(0), &polys.r.eval(dd)));
    cert.check(SubCheck::group("R > 0 on [0, D] (critical points)", route));

    let p_end = polys.p.eval(dd);
    cert.enclosure("P(D)", &Interval::point(p_end.clone()), Some("< 0".into()));
    cert.check(less("P(D) < 0, and P increasing on [0, D]", &p_end, &int(0)));
    cert.check(SubCheck::from_sign(
        "P < 0 on [0.01, D] (direct)",
        &certify_sign(|d: &Interval| Ok(polys.p.eval_interval(d)), &Interval::new(ratio(1, 100), dd.clone()), Target::Negative, depth),
    ));
    cert.finish()
}

/// B ≤ (1/(2|B_c|))∫Θ^trunc = 12·I(trunc)/(2c)³.
pub fn stability_bound(moment: &Interval, ball_radius: &Rational) -> Interval {
    moment.scale(&(int(12) / (int(2) * ball_radius).pow(3)))
}

pub fn verify_theorem_5_1(ctx: &Context<'_>) -> Certificate {
    let k = ctx.k;
    let c = &k.ball_radius;
    let mut cert = Certificate::new(
        PropId::T5_1,
        format!("every finite configuration has energy per particle > -{}, so B <= {}", fmt_q(&k.b_claim), fmt_q(&k.b_claim)),
    );

    match theta_moment_with(&int(0), &ctx.enc) {
        Ok(m) => {
            let v = m.value.scale(&int(24));
            cert.enclosure("24*I(0)", &v, Some(format!("< {}", fmt_q(&k.density_bound))));
            let bound = &k.density_bound / k.min_distance.pow(3);
            cert.check(SubCheck::group(
                "density of majorants: 24 I(0)/a^3 < 36/a^3 < overlap constant",
                vec![
                    below("24 I(0) < density bound", &v, &k.density_bound),
                    less("density bound / min distance^3 < overlap constant", &bound, &k.overlap_constant),
                ],
            ));
        }
        Err(e) => cert.check(SubCheck::new("24 I(0)", Verdict::Fail).with_detail(e.to_string())),
    }

    // |N_yz|/|B| as used in the overlap inequality
    let dd = int(2) * c;
    let lens = [ratio(1, 100), ratio(1, 4), k.min_distance.clone(), dd.clone() * ratio(9, 10)]
        .iter()
        .map(|d| match BallPair::equal(c.clone(), d.clone()) {
            Ok(pair) => {
                let ball = ctx.enc.pi.scale(&(ratio(4, 3) * c.pow(3)));
                let claimed = lens_ratio(c, d);
                let closed = (&dd - d).pow(2) * (d + int(2) * &dd) / (int(2) * dd.pow(3));
                let label = format!("|N|/|B| at d = {}", fmt_q(d));
                match lens_volume_with(&pair, &ctx.enc).checked_div(&ball) {
                    Ok(q) => SubCheck::exact(label, q.contains(&claimed) && claimed == closed)
                        .with_detail(q.to_decimal_string(12)),
                    Err(e) => SubCheck::new(label, Verdict::Fail).with_detail(e.to_string()),
                }
            }
            Err(e) => SubCheck::new("lens", Verdict::Fail).with_detail(e.to_string()),
        })
        .collect();
    cert.check(SubCheck::group("lens volume prefactor (D - d)^2 (d + 2D)/(2 D^3)", lens));

    let multiplicity = (0..=10i64).all(|n| 1 + n * (n - 1) / 2 >= n);
    cert.check(SubCheck::exact("1 + k(k-1)/2 >= k for k = 0..10", multiplicity));
    cert.check(less_eq("pairs are far enough apart for the ball averages: r_lo <= min distance", &k.regions[0], &k.min_distance));
    cert.check(less("overlapping pairs lie at distance < 1: D < 1", &dd, &int(1)));

    match theta_moment_with(&k.trunc_41, &ctx.enc) {
        Ok(m) => {
            let b = stability_bound(&m.value, c);
            cert.enclosure("B upper bound", &b, Some(format!("< {}", fmt_q(&k.b_claim))));
            cert.check(below(format!("12 I({})/D^3 < {}", fmt_q(&k.trunc_41), fmt_q(&k.b_claim)), &b, &k.b_claim));
            let floor = &k.b_claim - ratio(1, 100);
            cert.check(above(format!("bound is tight: > {}", fmt_q(&floor)), &b, &floor));
        }
        Err(e) => cert.check(SubCheck::new("B upper bound", Verdict::Fail).with_detail(e.to_string())),
    }
    cert.finish()
}
