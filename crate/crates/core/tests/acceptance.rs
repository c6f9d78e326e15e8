//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines appear in order; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ljstab_core::certnum::{dec, int, ratio, Interval, Rational, Verdict};
use ljstab_core::cluster::{
    fcc_optimize_scale, gradient, icosahedron, local_minimize, min_distance, total_energy, Configuration, MinimizeParams,
    DEFAULT_FCC_CUTOFF,
};
use ljstab_core::geometry::{cap_area, lens_volume, BallPair};
use ljstab_core::integrals::{ball_average_lower_bound, theta_moment};
use ljstab_core::polyalg::{sturm_count, Polynomial};
use ljstab_core::potential::{theta, RadialProfile};
use ljstab_core::verifier::{appendix_polynomials, run, verify, Context, PropId, ProofConstants, SubCheck, VerifyConfig};
use ljstab_core::Enclosures;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn f(q: &Rational) -> f64 {
    ljstab_core::certnum::rational::to_f64(q)
}

/// ∫_x^∞ θ(w) w² dw by composite Simpson on [x, 40] plus the closed-form tail.
fn moment_quadrature(x: f64) -> f64 {
    let s = ljstab_core::potential::s_f64();
    let simpson = |a: f64, b: f64, n: usize| {
        let h = (b - a) / n as f64;
        let g = |w: f64| theta(w) * w * w;
        let mut sum = g(a) + g(b);
        for i in 1..n {
            sum += g(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        sum * h / 3.0
    };
    // split at the kink of θ
    let head = if x < s { simpson(x, s, 20_000) } else { 0.0 };
    let start = x.max(s);
    let upper: f64 = 40.0;
    let tail = upper.powi(-9) / 9.0 - 2.0 / 3.0 * upper.powi(-3);
    head + simpson(start, upper, 400_000) - tail
}

fn ac1() -> Outcome {
    let (report, elapsed) = timed(|| run(&[PropId::T5_1], &VerifyConfig::default()));
    ensure(report.verdict == Verdict::Pass, format!("overall verdict {}", report.verdict))?;
    let cert = report.certificate(PropId::T5_1).ok_or("no 5.1 certificate")?;
    let b = cert.find_enclosure("B upper bound").ok_or("no B enclosure")?;
    ensure(b.lo() > &dec("14.31") && b.hi() < &dec("14.316"), format!("B enclosure {b}"))?;
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("B in {} in {elapsed:.2?}", b.to_decimal_string(8)))
}

fn ac2() -> Outcome {
    let i54 = theta_moment(&dec("0.54")).map_err(|e| e.to_string())?.scale(&int(24));
    let i64_ = theta_moment(&dec("0.64")).map_err(|e| e.to_string())?.scale(&int(24));
    ensure(i54.lo() >= &dec("26.90") && i54.hi() < &dec("26.95"), format!("24*I(0.54) = {i54}"))?;
    ensure(i64_.lo() >= &dec("24.00") && i64_.hi() < &dec("24.05"), format!("24*I(0.64) = {i64_}"))?;
    for (x, enc) in [(0.54, &i54), (0.64, &i64_)] {
        let q = 24.0 * moment_quadrature(x);
        ensure((q - enc.mid_f64()).abs() < 1e-6, format!("quadrature {q} disagrees with {enc} at {x}"))?;
    }
    Ok(format!("24*I(0.54) = {}, 24*I(0.64) = {}", i54.to_decimal_string(8), i64_.to_decimal_string(8)))
}

fn ac3() -> Outcome {
    let i0 = theta_moment(&int(0)).map_err(|e| e.to_string())?.scale(&int(24));
    ensure(i0.hi() < &int(36), format!("24*I(0) = {i0}"))?;
    let density = int(36) / dec("0.684").pow(3);
    ensure(density < int(113), format!("36/0.684^3 = {density}"))?;
    let q = 24.0 * moment_quadrature(1e-12);
    ensure((q - i0.mid_f64()).abs() < 1e-6, format!("quadrature {q} vs {i0}"))?;
    Ok(format!("24*I(0) = {} < 36, 36/0.684^3 = {:.4} < 113", i0.to_decimal_string(8), f(&density)))
}

fn ac4() -> Outcome {
    let (out, elapsed) = timed(|| {
        let cfg = VerifyConfig::default();
        let ctx = Context::new(&cfg);
        verify(PropId::Appendix, &ctx)
    });
    ensure(out.verdict == Verdict::Pass, format!("appendix certificate {}: {:?}", out.verdict, out.failing_checks()))?;
    ensure(elapsed < Duration::from_secs(2), format!("took {elapsed:?}"))?;

    // Rebuild P from its definition, independently of the library's expansion.
    let dd = dec("0.98");
    let d = |c: Rational, k: usize| Polynomial::monomial(c, k);
    let lens = &(&(&d(dd.clone(), 0) + &d(int(-1), 1)) * &(&d(dd.clone(), 0) + &d(int(-1), 1)))
        * &(&d(int(2) * &dd, 0) + &d(int(1), 1));
    let p = &(&lens.scale(&(int(113) / (int(2) * dd.pow(3)))) * &d(int(1), 12))
        + &Polynomial::from_terms(&[(int(-2), 12), (int(4), 6), (int(-2), 0)]);
    let polys = appendix_polynomials(&int(113), &dec("0.49"));
    ensure(p == polys.p, "expansion differs from the definition")?;
    ensure(p.coeff(12) == int(111), format!("d^12 coefficient {}", p.coeff(12)))?;
    ensure(p.coeff(13) == ratio(-8475, 49), format!("d^13 coefficient {}", p.coeff(13)))?;
    let (r, rest) = p.derivative().div_rem(&d(int(1), 5)).ok_or("division failed")?;
    ensure(rest.is_zero(), "P' not divisible by d^5")?;
    let n = sturm_count(&r, &int(0), &dd).map_err(|e| e.to_string())?;
    ensure(n == 0, format!("{n} roots of R in (0, D]"))?;
    ensure(r.eval(&dec("0.49")) > int(0), "R(0.49) <= 0")?;

    // Newton in f64 on the cubic, from each claimed root.
    let (cubic, _) = r.derivative().div_rem(&d(int(1), 5)).ok_or("division failed")?;
    let dc = cubic.derivative();
    for claim in ["-1.59958", "0.647647", "0.951934"] {
        let mut x: f64 = claim.parse().unwrap();
        for _ in 0..50 {
            x -= cubic.eval_f64(x) / dc.eval_f64(x);
        }
        ensure((x - claim.parse::<f64>().unwrap()).abs() < 1e-5, format!("root {x} vs {claim}"))?;
    }
    Ok(format!("Sturm count 0, R(0.49) > 0, d^12 coefficient 111, roots within 1e-5, {elapsed:.2?}"))
}

fn ac5() -> Outcome {
    let report = run(&[PropId::C3_3], &VerifyConfig::default());
    ensure(report.verdict == Verdict::Pass, format!("3.3 closure {}", report.verdict))?;
    // f64 bisection on 2a^6 + 24.05a^9 = 1
    let g = |a: f64| 2.0 * a.powi(6) + 24.05 * a.powi(9) - 1.0;
    let (mut lo, mut hi) = (0.5, 0.8);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ensure(lo > 0.684 && lo < 0.685, format!("crossing at {lo}"))?;
    let cert = report.certificate(PropId::C3_3).ok_or("no 3.3 certificate")?;
    let root = cert
        .enclosures
        .iter()
        .find(|e| e.name.starts_with("crossing"))
        .map(|e| e.value.clone())
        .ok_or("no crossing enclosure")?;
    ensure(root.lo() > &dec("0.684") && root.hi() < &dec("0.685"), format!("certified crossing {root}"))?;
    ensure(root.contains(&ljstab_core::certnum::rational::from_f64(lo).unwrap()) || (root.mid_f64() - lo).abs() < 1e-8, format!("oracle {lo} vs {root}"))?;
    Ok(format!("crossing {} (oracle {lo:.9})", root.to_decimal_string(9)))
}

fn ac6() -> Outcome {
    let (r, elapsed) = timed(|| fcc_optimize_scale(0.9, 1.1, DEFAULT_FCC_CUTOFF));
    let r = r.map_err(|e| e.to_string())?;
    ensure((-8.62..=-8.60).contains(&r.per_particle_energy), format!("energy {}", r.per_particle_energy))?;
    ensure(r.tail_bound < 5e-4, format!("tail bound {}", r.tail_bound))?;
    ensure(r.b_lower_bound() >= 8.61, format!("B lower bound {}", r.b_lower_bound()))?;
    ensure(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!(
        "energy {:.6} at scale {:.6}, tail {:.1e}, B >= {:.4}, {elapsed:.2?}",
        r.per_particle_energy,
        r.scale,
        r.tail_bound,
        r.b_lower_bound()
    ))
}

fn uniform_in_ball(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let p = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if p.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
            return p;
        }
    }
}

fn uniform_on_sphere(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let p = uniform_in_ball(rng);
    let n = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n < 1e-9 {
        return [1.0, 0.0, 0.0];
    }
    p.map(|v| v / n)
}

fn ac7() -> Outcome {
    const SAMPLES: usize = 1_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        // grid-valued so the radii and distance are exact rationals
        let r1 = (rng.gen_range(0.2..1.5f64) * 1000.0).round() / 1000.0;
        let r2 = (rng.gen_range(0.2..1.5f64) * 1000.0).round() / 1000.0;
        let d = (r1 - r2).abs() + rng.gen_range(0.05..0.95) * (r1 + r2 - (r1 - r2).abs());
        let d = (d * 1000.0).round() / 1000.0;
        let q = |x: f64| ljstab_core::certnum::rational::from_f64(x).unwrap();
        let pair = BallPair::new(q(r1), q(r2), q(d)).map_err(|e| e.to_string())?;
        let vol = lens_volume(&pair);
        let area = cap_area(&pair);

        let inside2 = |p: [f64; 3]| (p[0] - d).powi(2) + p[1] * p[1] + p[2] * p[2] <= r2 * r2;
        let ball1 = 4.0 / 3.0 * std::f64::consts::PI * r1.powi(3);
        let sphere1 = 4.0 * std::f64::consts::PI * r1 * r1;
        let mut hits_v = 0usize;
        let mut hits_a = 0usize;
        for _ in 0..SAMPLES {
            if inside2(uniform_in_ball(&mut rng).map(|v| v * r1)) {
                hits_v += 1;
            }
            if inside2(uniform_on_sphere(&mut rng).map(|v| v * r1)) {
                hits_a += 1;
            }
        }
        for (hits, total, exact, what) in [(hits_v, ball1, &vol, "volume"), (hits_a, sphere1, &area, "area")] {
            let p = hits as f64 / SAMPLES as f64;
            let sigma = total * (p * (1.0 - p) / SAMPLES as f64).sqrt().max(1.0 / SAMPLES as f64);
            let dev = (p * total - exact.mid_f64()).abs() / sigma;
            worst = worst.max(dev);
            ensure(dev <= 3.0, format!("{what} for ({r1}, {r2}, {d}): {dev:.2} sigma"))?;
        }

        // ∂V/∂r1 equals the area of sphere 1 inside ball 2
        let h = ratio(1, 100_000);
        let plus = lens_volume(&BallPair::new(q(r1) + &h, q(r2), q(d)).unwrap());
        let minus = lens_volume(&BallPair::new(q(r1) - &h, q(r2), q(d)).unwrap());
        let fd = (plus.mid_f64() - minus.mid_f64()) / (2.0 * f(&h));
        let rel = (fd - area.mid_f64()).abs() / area.mid_f64();
        ensure(rel < 1e-4, format!("dV/dr1 for ({r1}, {r2}, {d}): relative error {rel:.2e}"))?;
    }
    Ok(format!("20 pairs, worst deviation {worst:.2} sigma"))
}

fn ac8() -> Outcome {
    let enc = Enclosures::standard();
    let (c, trunc) = (dec("0.49"), dec("0.54"));
    let mut worst = f64::INFINITY;
    for i in 51..=300 {
        let r = Interval::point(ratio(i, 100));
        let avg = ball_average_lower_bound(&r, &c, &trunc).map_err(|e| e.to_string())?;
        let ht = RadialProfile::HTilde.eval(&r, enc).map_err(|e| e.to_string())?;
        ensure(avg.lo() >= ht.hi(), format!("r = {}: mean {} below h~ {}", f(r.lo()), avg, ht))?;
        worst = worst.min(avg.lo_f64() - ht.hi_f64());
    }
    Ok(format!("250 grid points, smallest margin {worst:.3e}"))
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut points = icosahedron(1.1);
    points.push([0.0; 3]);
    for p in &mut points {
        for v in p.iter_mut() {
            *v += rng.gen_range(-0.05..0.05);
        }
    }
    let seed = Configuration::new(points);
    let result = local_minimize(&seed, 7, &MinimizeParams::default()).map_err(|e| e.to_string())?;
    let dmin = min_distance(&result.config).map_err(|e| e.to_string())?;
    ensure(result.energy <= -44.32, format!("LJ13 energy {}", result.energy))?;
    ensure(dmin > 0.684, format!("min distance {dmin}"))?;

    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(2..9);
        let q = Configuration::new(
            (0..n).map(|_| [rng.gen_range(0.0..2.5), rng.gen_range(0.0..2.5), rng.gen_range(0.0..2.5)]).collect(),
        );
        if min_distance(&q).map_err(|e| e.to_string())? < 0.5 {
            continue;
        }
        let g = gradient(&q).map_err(|e| e.to_string())?;
        let h = 1e-6;
        for i in 0..n {
            for k in 0..3 {
                let mut plus = q.clone();
                let mut minus = q.clone();
                plus.points[i][k] += h;
                minus.points[i][k] -= h;
                let fd = (total_energy(&plus).unwrap() - total_energy(&minus).unwrap()) / (2.0 * h);
                let err = (fd - g[i][k]).abs() / g[i][k].abs().max(1.0);
                worst = worst.max(err);
            }
        }
    }
    ensure(worst < 1e-6, format!("gradient finite-difference error {worst:.2e}"))?;
    Ok(format!("LJ13 energy {:.6}, min distance {dmin:.4}, gradient FD error {worst:.1e}", result.energy))
}

fn any_fail(checks: &[SubCheck]) -> bool {
    checks.iter().any(|c| c.verdict == Verdict::Fail || any_fail(&c.children))
}

/// Nudges one constant by 1% in the direction that weakens the claim it backs.
struct Mutation {
    name: &'static str,
    target: PropId,
    apply: fn(&mut ProofConstants),
}

fn pct(q: &mut Rational, up: bool) {
    let k = if up { ratio(101, 100) } else { ratio(99, 100) };
    *q = &*q * &k;
}

fn mutations() -> Vec<Mutation> {
    use PropId::*;
    macro_rules! m {
        ($name:expr, $target:expr, |$k:ident| $body:expr) => {
            Mutation { name: $name, target: $target, apply: |$k: &mut ProofConstants| $body }
        };
    }
    vec![
        m!("tangent slope", P2_4, |k| pct(&mut k.tangent_slope, false)),
        m!("tangent offset", P2_4, |k| pct(&mut k.tangent_offset, true)),
        m!("t > 0 range", P3_1II, |k| pct(&mut k.tangent_positive_until, true)),
        m!("mu bound (I)", P3_1I, |k| pct(&mut k.mu_bound_i, false)),
        m!("truncation (I)", P3_1I, |k| pct(&mut k.trunc_i, true)),
        m!("a max", P3_1I, |k| pct(&mut k.a_max, true)),
        m!("inner norm", P3_1I, |k| pct(&mut k.inner_norm, true)),
        m!("mu bound (II)", P3_1II, |k| pct(&mut k.mu_bound_ii, false)),
        m!("a min (II)", P3_1II, |k| pct(&mut k.a_min_ii, false)),
        m!("shell upper (II)", P3_1II, |k| pct(&mut k.shell_upper_ii, true)),
        m!("truncation (II)", P3_1II, |k| pct(&mut k.trunc_ii, true)),
        m!("quadratic (II) c^2", P3_1II, |k| pct(&mut k.quad_ii.ac, true)),
        m!("quadratic (II) r^2", P3_1II, |k| pct(&mut k.quad_ii.a2, false)),
        m!("quadratic (II) r", P3_1II, |k| pct(&mut k.quad_ii.a1, true)),
        m!("quadratic (II) constant", P3_1II, |k| pct(&mut k.quad_ii.a0, false)),
        m!("vertex", P3_1II, |k| pct(&mut k.vertex_claim, true)),
        m!("decreasing quadratic c^2", P3_1II, |k| pct(&mut k.decreasing_quad[2], false)),
        m!("decreasing quadratic c", P3_1II, |k| pct(&mut k.decreasing_quad[1], true)),
        m!("decreasing quadratic constant", P3_1II, |k| pct(&mut k.decreasing_quad[0], false)),
        m!("club constant", P3_1II, |k| pct(&mut k.club[0], true)),
        m!("club r", P3_1II, |k| pct(&mut k.club[1], false)),
        m!("club 1/r", P3_1II, |k| pct(&mut k.club[2], false)),
        m!("minimum distance", C3_3, |k| pct(&mut k.min_distance, true)),
        m!("ball radius", P4_1, |k| pct(&mut k.ball_radius, true)),
        m!("truncation (4.1)", P4_1, |k| pct(&mut k.trunc_41, false)),
        m!("region start", P4_1, |k| pct(&mut k.regions[0], false)),
        m!("region split", P4_1, |k| pct(&mut k.regions[1], false)),
        m!("region end", P4_1, |k| pct(&mut k.regions[2], true)),
        m!("region 2 shell", P4_1, |k| pct(&mut k.region2_upper, true)),
        m!("region 3 shell", P4_1, |k| pct(&mut k.region3_upper, true)),
        m!("region 2 quadratic r^2", P4_1, |k| pct(&mut k.quad_region2.a2, false)),
        m!("region 2 quadratic r", P4_1, |k| pct(&mut k.quad_region2.a1, true)),
        m!("region 2 quadratic constant", P4_1, |k| pct(&mut k.quad_region2.a0, false)),
        m!("region 3 quadratic r^2", P4_1, |k| pct(&mut k.quad_region3.a2, false)),
        m!("region 3 quadratic r", P4_1, |k| pct(&mut k.quad_region3.a1, true)),
        m!("region 3 quadratic constant", P4_1, |k| pct(&mut k.quad_region3.a0, false)),
        m!("appendix d^13", Appendix, |k| pct(&mut k.appendix_c2, true)),
        m!("appendix d^12", Appendix, |k| pct(&mut k.appendix_d12, true)),
        m!("overlap constant (appendix)", Appendix, |k| pct(&mut k.overlap_constant, true)),
        m!("cubic root 1", Appendix, |k| pct(&mut k.root_claims[0], true)),
        m!("cubic root 2", Appendix, |k| pct(&mut k.root_claims[1], true)),
        m!("cubic root 3", Appendix, |k| pct(&mut k.root_claims[2], true)),
        m!("density bound", T5_1, |k| pct(&mut k.density_bound, false)),
        m!("overlap constant", T5_1, |k| pct(&mut k.overlap_constant, false)),
        m!("B claim", T5_1, |k| pct(&mut k.b_claim, false)),
    ]
}

fn ac10() -> Outcome {
    let base = VerifyConfig::default();
    let (one, two) = (run(&PropId::ALL, &base), run(&PropId::ALL, &base));
    let four = run(&PropId::ALL, &VerifyConfig { jobs: 4, ..VerifyConfig::default() });
    ensure(one.to_json() == two.to_json() && one.to_text() == two.to_text(), "repeated runs differ")?;
    ensure(one.to_json() == four.to_json(), "parallel run differs")?;
    ensure(one.verdict == Verdict::Pass, format!("baseline {}", one.verdict))?;

    for depth in [0, 1, 3] {
        let r = run(&PropId::ALL, &VerifyConfig { max_depth: depth, ..VerifyConfig::default() });
        ensure(r.verdict != Verdict::Fail, format!("depth {depth} gave FAIL"))?;
        ensure(r.certificates.iter().all(|c| !any_fail(&c.checks)), format!("depth {depth} has a failing sub-check"))?;
    }
    for width in [ratio(1, 1000), ratio(1, 1_000_000)] {
        let r = run(&PropId::ALL, &VerifyConfig { enclosure_width: width.clone(), ..VerifyConfig::default() });
        ensure(r.certificates.iter().all(|c| !any_fail(&c.checks)), format!("width {width} has a failing sub-check"))?;
    }

    let list = mutations();
    for m in &list {
        let mut cfg = VerifyConfig::default();
        (m.apply)(&mut cfg.constants);
        let cert = verify(m.target, &Context::new(&cfg));
        ensure(cert.verdict == Verdict::Fail, format!("1% change to {} left {} at {}", m.name, m.target, cert.verdict))?;
    }
    Ok(format!("deterministic, shallow runs never FAIL, {} adverse mutations all FAIL", list.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "B < 14.316 certified within 5 s", ac1),
        ("AC2", "moment enclosures", ac2),
        ("AC3", "density chain", ac3),
        ("AC4", "overlap polynomial", ac4),
        ("AC5", "minimum distance crossing", ac5),
        ("AC6", "FCC lattice sum", ac6),
        ("AC7", "lens volume and cap area", ac7),
        ("AC8", "ball averages dominate h~", ac8),
        ("AC9", "LJ13 and gradient", ac9),
        ("AC10", "determinism and soundness", ac10),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("{id} PASS  {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL  {title}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
