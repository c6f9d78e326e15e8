//! Single-particle bounds μ(a) ≤ 24·I(lower)/a³ and the minimum distance
//! they imply.

use num_traits::{One, Zero};

use super::{above, below, equal, fmt_q, fmt_terms, less, less_eq, quad_eval, Certificate, Context, PropId, SubCheck, Variant};
use crate::certnum::{certify_sign, certify_sign_2d, int, ratio, Interval, NumberFieldElem, Rational, Target, Verdict};
use crate::integrals::{eval_quadratic, theta_moment_with, ShellQuadratic};
use crate::polyalg::{isolate_roots, Polynomial};

fn moment_checks(ctx: &Context<'_>, cert: &mut Certificate, lower: &Rational, bound: &Rational) {
    let name = format!("24*I({})", fmt_q(lower));
    match theta_moment_with(lower, &ctx.enc) {
        Ok(m) => {
            let scaled = m.value.scale(&int(24));
            cert.enclosure(format!("I({})", fmt_q(lower)), &m.value, None);
            cert.enclosure(name.clone(), &scaled, Some(format!("< {}", fmt_q(bound))));
            cert.check(below(format!("{name} < {}", fmt_q(bound)), &scaled, bound));
            let floor = bound - ratio(1, 20);
            cert.check(above(format!("bound is tight: {name} > {}", fmt_q(&floor)), &scaled, &floor));
        }
        Err(e) => cert.check(SubCheck::new(name, Verdict::Fail).with_detail(e.to_string())),
    }
}

pub fn verify_prop_3_1(ctx: &Context<'_>, variant: Variant) -> Certificate {
    let k = ctx.k;
    match variant {
        Variant::I => {
            let mut cert = Certificate::new(
                PropId::P3_1I,
                format!("mu(a) <= 24 I({})/a^3 < {}/a^3 for 0 <= a <= {}", fmt_q(&k.trunc_i), fmt_q(&k.mu_bound_i), fmt_q(&k.a_max)),
            );
            cert.check(equal(
                "truncation radius = inner norm - a_max/2",
                &k.trunc_i,
                &(&k.inner_norm - &k.a_max / int(2)),
            ));
            cert.check(inner_norm_check(ctx));
            moment_checks(ctx, &mut cert, &k.trunc_i, &k.mu_bound_i);
            cert.finish()
        }
        Variant::II => verify_3_1_ii(ctx),
    }
}

/// Points with norm below the inner radius contribute negatively: h < 0
/// there because inner^6 < 1/2.
fn inner_norm_check(ctx: &Context<'_>) -> SubCheck {
    less("h < 0 below the inner norm: inner^6 < 1/2", &ctx.k.inner_norm.pow(6), &ratio(1, 2))
}

fn verify_3_1_ii(ctx: &Context<'_>) -> Certificate {
    let k = ctx.k;
    let depth = ctx.depth();
    let mut cert = Certificate::new(
        PropId::P3_1II,
        format!(
            "mu(a) <= 24 I({})/a^3 < {}/a^3 for {} <= a <= {}",
            fmt_q(&k.trunc_ii),
            fmt_q(&k.mu_bound_ii),
            fmt_q(&k.a_min_ii),
            fmt_q(&k.a_max)
        ),
    );
    let c_lo = &k.a_min_ii / int(2);
    let c_hi = &k.a_max / int(2);
    let c_range = Interval::new(c_lo.clone(), c_hi.clone());
    // r runs over [inner, trunc + c]; u in [0, 1] parametrises it
    let r_of = |c: &Interval, u: &Interval| -> Interval {
        let span = &(c + &Interval::point(&k.trunc_ii - &k.inner_norm));
        &Interval::point(k.inner_norm.clone()) + &(u * span)
    };
    let unit = Interval::new(Rational::zero(), Rational::one());

    cert.check(inner_norm_check(ctx));
    let t = ctx.tangent();
    let t_end = t.eval_exact(&NumberFieldElem::rational(k.tangent_positive_until.clone()), 0);
    cert.check(SubCheck::group(
        "shell geometry",
        vec![
            equal("upper shell limit = inner norm + a_min/2", &k.shell_upper_ii, &(&k.inner_norm + &c_lo)),
            less("inner norm < trunc + a_min/2 (region nonempty)", &k.inner_norm, &(&k.trunc_ii + &c_lo)),
            SubCheck::exact(
                "t > 0 up to the positivity radius",
                t_end.map(|v| v.is_positive()).unwrap_or(false) && t.slope.is_positive(),
            ),
            less_eq(
                "discarded shells end before the positivity radius: trunc + 2 c_max <= 1.49",
                &(&k.trunc_ii + int(2) * &c_hi),
                &k.tangent_positive_until,
            ),
        ],
    ));

    match ShellQuadratic::new(&k.trunc_ii, &k.shell_upper_ii) {
        Ok(shell) => {
            let [kc, k2, k1, k0] = shell.coefficients(&ctx.enc);
            cert.enclosure("shell coefficient of c^2", &kc, Some(format!(">= {}", fmt_q(&k.quad_ii.ac))));
            cert.enclosure("shell coefficient of r^2", &k2, Some(format!(">= {}", fmt_q(&k.quad_ii.a2))));
            cert.enclosure("shell coefficient of r", &k1, Some(format!(">= {}", fmt_q(&k.quad_ii.a1))));
            cert.enclosure("shell constant", &k0, Some(format!(">= {}", fmt_q(&k.quad_ii.a0))));
            let excess = shell.excess(&k.quad_ii, &ctx.enc);
            let f = |c: &Interval, u: &Interval| Ok(eval_quadratic(&excess, &r_of(c, u), c));
            cert.check(SubCheck::from_sign(
                "shell integral >= truncated quadratic on the (c, r) region",
                &certify_sign_2d(f, &c_range, &unit, Target::Positive, depth),
            ));
        }
        Err(e) => cert.check(SubCheck::new("shell integral", Verdict::Fail).with_detail(e.to_string())),
    }

    cert.check(decreasing_in_c(ctx, &c_range, &unit, &r_of));
    cert.check(club_check(ctx, &c_hi));
    moment_checks(ctx, &mut cert, &k.trunc_ii, &k.mu_bound_ii);
    cert.finish()
}

/// The left side (3/(4c³r))(ac·c² + Q(r)) decreases in c: its c-derivative
/// has the sign of −ac·c² − 3Q(r).
fn decreasing_in_c(
    ctx: &Context<'_>,
    c_range: &Interval,
    unit: &Interval,
    r_of: &dyn Fn(&Interval, &Interval) -> Interval,
) -> SubCheck {
    let k = ctx.k;
    let q = &k.quad_ii;
    let depth = ctx.depth();
    let mut children = Vec::new();

    // vertex of 3Q lies left of the inner norm
    if q.a2 < Rational::zero() {
        let vertex = &q.a1 / (int(-2) * &q.a2);
        children.push(less("vertex of the r-quadratic < inner norm", &vertex, &k.inner_norm));
        let claim_hi = &k.vertex_claim + ratio(1, 10000);
        children.push(
            SubCheck::exact("vertex matches the stated 0.8712...", vertex >= k.vertex_claim && vertex < claim_hi)
                .with_detail(fmt_q(&vertex)),
        );
    } else {
        children.push(SubCheck::new("r-quadratic is concave", Verdict::Fail));
    }

    // 3Q(trunc + c) + ac·c² as a polynomial in c, compared with the claim
    let shift = Polynomial::new(vec![k.trunc_ii.clone(), int(1)]);
    let three_q = Polynomial::new(vec![int(3) * &q.a0, int(3) * &q.a1, int(3) * &q.a2]);
    let composed = {
        let mut acc = Polynomial::zero();
        for coeff in three_q.coeffs().iter().rev() {
            acc = &(&acc * &shift) + &Polynomial::constant(coeff.clone());
        }
        &acc + &Polynomial::monomial(q.ac.clone(), 2)
    };
    let claim = Polynomial::new(vec![k.decreasing_quad[2].clone(), k.decreasing_quad[1].clone(), k.decreasing_quad[0].clone()]);
    let gap = &composed - &claim;
    let reduction = if gap.is_zero() {
        SubCheck::new("3Q(trunc + c) + ac c^2 equals the stated quadratic in c", Verdict::Pass).with_detail(format!("{composed}"))
    } else {
        let cert = certify_sign(|c: &Interval| Ok(gap.eval_interval(c)), c_range, Target::Positive, depth);
        SubCheck::from_sign("3Q(trunc + c) + ac c^2 >= stated quadratic in c", &cert)
    };
    children.push(reduction);
    let claim_coeffs = [k.decreasing_quad[2].clone(), k.decreasing_quad[1].clone(), k.decreasing_quad[0].clone()];
    children.push(SubCheck::from_sign(
        format!(
            "{} > 0 on the c-range",
            fmt_terms(&[(&k.decreasing_quad[0], "c^2"), (&k.decreasing_quad[1], "c"), (&k.decreasing_quad[2], "")])
        ),
        &certify_sign(|c: &Interval| Ok(quad_eval(&claim_coeffs, c)), c_range, Target::Positive, depth),
    ));

    // direct check of the derivative sign over the region
    let r_coeffs = [q.a0.clone(), q.a1.clone(), q.a2.clone()];
    let f = |c: &Interval, u: &Interval| {
        let r = r_of(c, u);
        Ok(&(-c.square().scale(&q.ac)) - &quad_eval(&r_coeffs, &r).scale(&int(3)))
    };
    children.push(SubCheck::from_sign(
        "-ac c^2 - 3Q(r) < 0 on the (c, r) region",
        &certify_sign_2d(f, c_range, unit, Target::Negative, depth),
    ));
    SubCheck::group("left side is decreasing in c", children)
}

/// The inequality at the largest c: the left side dominates the stated
/// k0 + k1 r + k2/r, which exceeds 1 ≥ h on the r-range.
fn club_check(ctx: &Context<'_>, c: &Rational) -> SubCheck {
    let k = ctx.k;
    let q = &k.quad_ii;
    let depth = ctx.depth();
    let r_range = Interval::new(k.inner_norm.clone(), &k.trunc_ii + c);
    let prefactor = ratio(3, 4) / c.pow(3);
    let r_coeffs = [&q.a0 + &q.ac * c * c, q.a1.clone(), q.a2.clone()];
    let [k0, k1, k2] = &k.club;
    let club = |r: &Interval| -> crate::error::Result<Interval> {
        Ok(&(&Interval::point(k0.clone()) + &r.scale(k1)) + &r.recip()?.scale(k2))
    };
    let lhs = |r: &Interval| -> crate::error::Result<Interval> {
        Ok(quad_eval(&r_coeffs, r).checked_div(r)?.scale(&prefactor))
    };
    let at_one = k0 + k1 + k2;
    let children = vec![
        SubCheck::from_sign(
            "left side >= k0 + k1 r + k2/r",
            &certify_sign(|r: &Interval| Ok(&lhs(r)? - &club(r)?), &r_range, Target::Positive, depth),
        ),
        SubCheck::from_sign(
            "k0 + k1 r + k2/r is decreasing on the r-range",
            &certify_sign(|r: &Interval| Ok(&Interval::point(k1.clone()) - &r.recip()?.square().scale(k2)), &r_range, Target::Negative, depth),
        )
        .with_detail("derivative k1 - k2/r^2"),
        less("value at r = 1 exceeds 1", &int(1), &at_one),
        SubCheck::from_sign(
            "k0 + k1 r + k2/r > 1 >= h(r) on the r-range",
            &certify_sign(|r: &Interval| Ok(&club(r)? - &Interval::unit()), &r_range, Target::Positive, depth),
        ),
        less("r-range ends below 1", r_range.hi(), &int(1)),
    ];
    SubCheck::group(format!("inequality at c = {}", fmt_q(c)), children)
}

pub fn verify_cor_3_3(ctx: &Context<'_>) -> Certificate {
    let k = ctx.k;
    let depth = ctx.depth();
    let mut cert = Certificate::new(
        PropId::C3_3,
        format!("optimal configurations have all distances > {}", fmt_q(&k.min_distance)),
    );
    // g(a) = bound·a^9 + 2a^6, increasing for a > 0
    let g = |bound: &Rational| Polynomial::from_terms(&[(bound.clone(), 9), (int(2), 6)]);
    let g_ii = g(&k.mu_bound_ii);
    let g_i = g(&k.mu_bound_i);
    let at_min = g_ii.eval(&k.min_distance);
    let at_aux = g_i.eval(&k.aux_distance);
    cert.enclosure(format!("g({})", fmt_q(&k.min_distance)), &Interval::point(at_min.clone()), Some("< 1".into()));
    cert.enclosure(format!("aux({})", fmt_q(&k.aux_distance)), &Interval::point(at_aux.clone()), Some("< 1".into()));

    cert.check(SubCheck::group(
        "2a^6 + mu_I a^9 < 1 for a <= aux distance",
        vec![less("value at the aux distance", &at_aux, &int(1)), SubCheck::new("increasing in a > 0", Verdict::Pass)],
    ));
    let one_minus = |a: &Interval| Ok(&Interval::unit() - &g_ii.eval_interval(a));
    cert.check(SubCheck::group(
        "mu_II a^9 + 2a^6 < 1 on [aux, min distance]",
        vec![
            less("value at the min distance (exact)", &at_min, &int(1)),
            SubCheck::from_sign(
                "1 - g > 0 on [aux, min distance]",
                &certify_sign(one_minus, &Interval::new(k.aux_distance.clone(), k.min_distance.clone()), Target::Positive, depth),
            ),
        ],
    ));

    let crossing = &g_ii - &Polynomial::constant(int(1));
    let roots = isolate_roots(&crossing, &Interval::new(Rational::zero(), int(1)), &ratio(1, 1_000_000_000));
    match roots {
        Ok(roots) if roots.len() == 1 => {
            let root = roots[0].enclosure.clone();
            cert.enclosure(format!("crossing of {}a^9 + 2a^6 = 1", fmt_q(&k.mu_bound_ii)), &root, Some(format!("> {}", fmt_q(&k.min_distance))));
            cert.check(above("crossing lies above the min distance", &root, &k.min_distance));
            let next = &k.min_distance + ratio(1, 1000);
            cert.check(below("bound is sharp to three decimals", &root, &next));
        }
        Ok(roots) => cert.check(
            SubCheck::new("crossing of g = 1 in (0, 1]", Verdict::Fail).with_detail(format!("{} roots", roots.len())),
        ),
        Err(e) => cert.check(SubCheck::new("crossing of g = 1", Verdict::Fail).with_detail(e.to_string())),
    }
    cert.check(less_eq("aux distance <= min distance", &k.aux_distance, &k.min_distance));
    cert.check(less_eq("min distance within the range of the sharper bound", &k.a_min_ii, &k.aux_distance));
    cert.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certnum::dec;
    use crate::verifier::{ProofConstants, VerifyConfig};

    fn run(variant: Option<Variant>, constants: ProofConstants) -> Certificate {
        let cfg = VerifyConfig { constants, ..VerifyConfig::default() };
        let ctx = Context::new(&cfg);
        match variant {
            Some(v) => verify_prop_3_1(&ctx, v),
            None => verify_cor_3_3(&ctx),
        }
    }

    #[test]
    fn all_pass_with_published_constants() {
        for v in [Some(Variant::I), Some(Variant::II), None] {
            let cert = run(v, ProofConstants::default());
            assert_eq!(cert.verdict, Verdict::Pass, "{v:?}: {:?}", cert.failing_checks());
        }
    }

    #[test]
    fn enclosures_have_expected_values() {
        let one = run(Some(Variant::I), ProofConstants::default());
        let v = one.find_enclosure("24*I(0.54)").unwrap();
        assert!(v.gt(&dec("26.94")) && v.lt(&dec("26.95")));
        let two = run(Some(Variant::II), ProofConstants::default());
        let v = two.find_enclosure("24*I(0.64)").unwrap();
        assert!(v.gt(&dec("24.04")) && v.lt(&dec("24.05")));
    }

    #[test]
    fn club_value_at_one() {
        let k = ProofConstants::default();
        let v = &k.club[0] + &k.club[1] + &k.club[2];
        assert_eq!(v, dec("1.039"));
    }

    #[test]
    fn adverse_mutations_fail() {
        let base = ProofConstants::default;
        let cases: Vec<(Option<Variant>, ProofConstants)> = vec![
            (Some(Variant::I), ProofConstants { mu_bound_i: dec("26.68"), ..base() }),
            (Some(Variant::II), ProofConstants { mu_bound_ii: dec("23.81"), ..base() }),
            (Some(Variant::II), ProofConstants { club: [dec("22.24"), dec("-12.639"), dec("-8.343")], ..base() }),
            (None, ProofConstants { min_distance: dec("0.6909"), ..base() }),
        ];
        for (v, k) in cases {
            assert_eq!(run(v, k.clone()).verdict, Verdict::Fail, "{v:?} {k:?}");
        }
    }
}
