//! Averages of the truncated majorant over balls of radius close to 1/2.

use super::{above, fmt_q, fmt_terms, less, less_eq, Certificate, Context, PropId, SubCheck};
use crate::certnum::{certify_sign, int, ratio, Interval, Rational, Target, Verdict};
use crate::integrals::{eval_quadratic, ShellBound, ShellQuadratic};
use crate::certnum::numfield::s_pow6;
use crate::polyalg::Polynomial;

struct Region<'a> {
    name: &'static str,
    lo: &'a Rational,
    hi: &'a Rational,
    shell_upper: &'a Rational,
    quad: &'a ShellBound,
}

pub fn verify_prop_4_1(ctx: &Context<'_>) -> Certificate {
    let k = ctx.k;
    let c = &k.ball_radius;
    let trunc = &k.trunc_41;
    let [r_lo, r_mid, r_hi] = &k.regions;
    let mut cert = Certificate::new(
        PropId::P4_1,
        format!(
            "h-tilde(|x|) <= mean of theta^{} over the ball of radius {} at x, for |x| >= {}",
            fmt_q(trunc),
            fmt_q(c),
            fmt_q(r_lo)
        ),
    );

    cert.check(
        SubCheck::group(
            format!("region 1: r >= {}", fmt_q(r_hi)),
            vec![
                less_eq("ball misses the truncation radius: trunc <= r - c", trunc, &(r_hi - c)),
                less("ball misses the origin: c < r", c, r_hi),
            ],
        )
        .with_detail("theta^trunc = theta on the ball, which is subharmonic there and dominates h-tilde"),
    );
    cert.check(SubCheck::group(
        "regions are ordered and cover the needed norms",
        vec![
            less("r_lo < r_mid", r_lo, r_mid),
            less("r_mid < r_hi", r_mid, r_hi),
            less_eq("r_lo <= min distance", r_lo, &k.min_distance),
        ],
    ));

    let regions = [
        Region { name: "region 2", lo: r_lo, hi: r_mid, shell_upper: &k.region2_upper, quad: &k.quad_region2 },
        Region { name: "region 3", lo: r_mid, hi: r_hi, shell_upper: &k.region3_upper, quad: &k.quad_region3 },
    ];
    for region in &regions {
        let check = check_region(ctx, &mut cert.enclosures, region);
        cert.check(check);
    }
    cert.finish()
}

fn check_region(ctx: &Context<'_>, enclosures: &mut Vec<super::NamedEnclosure>, region: &Region<'_>) -> SubCheck {
    let k = ctx.k;
    let c = &k.ball_radius;
    let trunc = &k.trunc_41;
    let depth = ctx.depth();
    let range = Interval::new(region.lo.clone(), region.hi.clone());
    let w2 = region.shell_upper;
    let label = format!("{}: {} <= r <= {}", region.name, fmt_q(region.lo), fmt_q(region.hi));

    // every shell between trunc and w2 meets the ball in a spherical cap
    let mut limits = vec![
        less_eq("ball reaches the outer shell: r_lo + c >= w2", w2, &(region.lo + c)),
        less_eq("ball reaches inside the truncation: r_hi - c <= trunc", &(region.hi - c), trunc),
        less_eq("c - r_lo <= trunc", &(c - region.lo), trunc),
        less("shell is nonempty: trunc < w2", trunc, w2),
    ];
    if w2.pow(6) >= s_pow6() {
        limits.push(less_eq("beyond s the shell uses t <= h: w2 <= 1.49", w2, &k.tangent_positive_until));
    }
    let mut children = vec![SubCheck::group("shell limits", limits)];

    let c_point = Interval::point(c.clone());
    match ShellQuadratic::new(trunc, w2) {
        Ok(shell) => {
            let excess = shell.excess(region.quad, &ctx.enc);
            let f = |r: &Interval| Ok(eval_quadratic(&excess, r, &c_point));
            children.push(SubCheck::from_sign(
                format!(
                    "shell integral over [{}, {}] >= {}",
                    fmt_q(trunc),
                    fmt_q(w2),
                    fmt_terms(&[(&region.quad.a2, "r^2"), (&region.quad.a1, "r"), (&region.quad.a0, "")])
                ),
                &certify_sign(f, &range, Target::Positive, depth),
            ));
        }
        Err(e) => children.push(SubCheck::new("shell integral", Verdict::Fail).with_detail(e.to_string())),
    }

    // (3/(4c³r))·quad(r) > 1  ⇔  quad(r) − (4c³/3)·r > 0 for r > 0
    let volume_factor = ratio(4, 3) * c.pow(3);
    let q = region.quad;
    let poly = Polynomial::new(vec![&q.a0 + &q.ac * c * c, &q.a1 - &volume_factor, q.a2.clone()]);
    children.push(less("region lies in r > 0", &int(0), region.lo));
    children.push(SubCheck::from_sign(
        format!("quad(r) - (4c^3/3) r > 0, i.e. the ball mean exceeds 1 >= h-tilde; poly {poly}"),
        &certify_sign(|r: &Interval| Ok(poly.eval_interval(r)), &range, Target::Positive, depth),
    ));

    let mid = range.mid();
    let at_mid = Interval::point(&poly.eval(&mid) / (&volume_factor * &mid) + int(1));
    enclosures.push(super::NamedEnclosure {
        name: format!("{} mean bound at r = {}", region.name, fmt_q(&mid)),
        value: at_mid.clone(),
        claim: Some("> 1".into()),
    });
    children.push(above(format!("mean bound at r = {} exceeds 1", fmt_q(&mid)), &at_mid, &int(1)));
    SubCheck::group(label, children)
}
