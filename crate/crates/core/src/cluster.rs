//! Floating-point energetics of finite Lennard-Jones configurations: pair
//! energies, the FCC lattice sum, local minimization and the compactifying
//! transformations that bound optimal configurations.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

/// Particles closer than this have negative minus-energy at the closest one.
pub const SEPARATION: f64 = 0.65;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Configuration {
    pub points: Vec<Vec3>,
}

impl Configuration {
    pub fn new(points: Vec<Vec3>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One particle per line, three whitespace separated numbers; `#`
    /// starts a comment line and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: idx + 1, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err(format!("expected 3 fields, found {}", fields.len())));
            }
            let mut p = [0.0; 3];
            for (slot, field) in p.iter_mut().zip(&fields) {
                let v: f64 = field.parse().map_err(|_| err(format!("invalid number {field:?}")))?;
                if !v.is_finite() {
                    return Err(err(format!("non-finite coordinate {field:?}")));
                }
                *slot = v;
            }
            points.push(p);
        }
        Ok(Self { points })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| Error::Io(format!("{}, {e}", path.display())))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let _ = writeln!(out, "{:.17e} {:.17e} {:.17e}", p[0], p[1], p[2]);
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }

    fn check_pairs(&self) -> Result<()> {
        if self.len() < 2 {
            return Err(Error::Domain(format!("need at least 2 particles, got {}", self.len())));
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.points[i] == self.points[j] {
                    return Err(Error::CoincidentPoints(i, j));
                }
            }
        }
        Ok(())
    }

    fn translate(&mut self, by: Vec3) {
        for p in &mut self.points {
            for k in 0..3 {
                p[k] += by[k];
            }
        }
    }
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn distance(a: &Vec3, b: &Vec3) -> f64 {
    let d = sub(a, b);
    dot(&d, &d).sqrt()
}

/// Φ(r) = r⁻¹² − 2r⁻⁶
pub fn phi(r: f64) -> f64 {
    let u = (r * r).powi(-3);
    u * u - 2.0 * u
}

/// Φ'(r) = 12(r⁻⁷ − r⁻¹³)
pub fn phi_prime(r: f64) -> f64 {
    let u = (r * r).powi(-3);
    12.0 * (u - u * u) / r
}

/// Sum of Φ over unordered pairs.
pub fn total_energy(q: &Configuration) -> Result<f64> {
    q.check_pairs()?;
    Ok(raw_energy(&q.points))
}

fn raw_energy(points: &[Vec3]) -> f64 {
    let mut e = 0.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            e += phi(distance(&points[i], &points[j]));
        }
    }
    e
}

/// Σ_{j≠i} h(‖x_i − x_j‖) for every i.
pub fn per_particle_minus_energies(q: &Configuration) -> Result<Vec<f64>> {
    q.check_pairs()?;
    let n = q.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        for j in i + 1..n {
            let h = -phi(distance(&q.points[i], &q.points[j]));
            out[i] += h;
            out[j] += h;
        }
    }
    Ok(out)
}

pub fn single_particle_minus_energy(q: &Configuration, i: usize) -> Result<f64> {
    if i >= q.len() {
        return Err(Error::Domain(format!("index {i} out of range for {} particles", q.len())));
    }
    q.check_pairs()?;
    let x = &q.points[i];
    Ok(q.points.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, y)| -phi(distance(x, y))).sum())
}

pub fn min_distance(q: &Configuration) -> Result<f64> {
    closest_pair(q).map(|(_, _, d)| d)
}

fn closest_pair(q: &Configuration) -> Result<(usize, usize, f64)> {
    if q.len() < 2 {
        return Err(Error::Domain(format!("need at least 2 particles, got {}", q.len())));
    }
    let mut best = (0, 1, f64::INFINITY);
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            let d = distance(&q.points[i], &q.points[j]);
            if d < best.2 {
                best = (i, j, d);
            }
        }
    }
    Ok(best)
}

fn farthest_pair(points: &[Vec3]) -> (usize, usize, f64) {
    let mut best = (0, 0, 0.0);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = distance(&points[i], &points[j]);
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    best
}

pub fn gradient(q: &Configuration) -> Result<Vec<Vec3>> {
    q.check_pairs()?;
    let mut g = vec![0.0; 3 * q.len()];
    raw_energy_gradient(&q.points, &mut g);
    Ok(g.chunks(3).map(|c| [c[0], c[1], c[2]]).collect())
}

fn raw_energy_gradient(points: &[Vec3], grad: &mut [f64]) -> f64 {
    grad.iter_mut().for_each(|g| *g = 0.0);
    let mut e = 0.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = sub(&points[i], &points[j]);
            let r = dot(&d, &d).sqrt();
            e += phi(r);
            let f = phi_prime(r) / r;
            for k in 0..3 {
                grad[3 * i + k] += f * d[k];
                grad[3 * j + k] -= f * d[k];
            }
        }
    }
    e
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSumResult {
    /// Nearest-neighbour distance.
    pub scale: f64,
    pub per_particle_energy: f64,
    pub cutoff: f64,
    /// Bound on |true energy − per_particle_energy| from the attractive
    /// part beyond the cutoff.
    pub tail_bound: f64,
}

pub const DEFAULT_FCC_CUTOFF: f64 = 50.0;

/// Shells of the FCC lattice {v ∈ ℤ³ : v₁ + v₂ + v₃ even}, keyed by ‖v‖².
struct FccShells {
    shells: BTreeMap<u64, u64>,
}

impl FccShells {
    fn up_to(max_norm2: u64) -> Self {
        let n = (max_norm2 as f64).sqrt().ceil() as i64;
        let mut shells = BTreeMap::new();
        for i in -n..=n {
            for j in -n..=n {
                for k in -n..=n {
                    if (i + j + k).rem_euclid(2) != 0 || (i, j, k) == (0, 0, 0) {
                        continue;
                    }
                    let m = (i * i + j * j + k * k) as u64;
                    if m <= max_norm2 {
                        *shells.entry(m).or_insert(0) += 1;
                    }
                }
            }
        }
        Self { shells }
    }

    /// Lattice vectors have length √(m/2) before scaling, so (1,1,0) sits at
    /// distance `scale`.
    fn energy(&self, scale: f64, cutoff: f64) -> f64 {
        let limit = 2.0 * (cutoff / scale).powi(2);
        let mut e = 0.0;
        for (&m, &count) in &self.shells {
            if m as f64 > limit {
                break;
            }
            e += count as f64 * phi(scale * (m as f64 / 2.0).sqrt());
        }
        0.5 * e
    }
}

/// Bound on Σ_{‖p‖>R} ½·c·‖p‖^(−k) over lattice points, for the FCC
/// lattice at the given scale. Each point owns a Voronoi cell of volume 1/ρ
/// and circumradius δ = scale/√2, and ‖p‖ ≥ ‖y‖ − δ on its cell, so the sum
/// is at most ½·c·ρ·4π∫_{R−δ}^∞ r²(r − δ)^(−k) dr.
fn fcc_tail(scale: f64, cutoff: f64, coeff: f64, k: i32) -> f64 {
    let density = std::f64::consts::SQRT_2 / scale.powi(3);
    let delta = scale / std::f64::consts::SQRT_2;
    // with u = r − δ: ∫_L^∞ (u + δ)² u^(−k) du, L = R − 2δ
    let l = cutoff - 2.0 * delta;
    let term = |p: i32| l.powi(-(p - 1)) / (p - 1) as f64;
    let integral = term(k - 2) + 2.0 * delta * term(k - 1) + delta * delta * term(k);
    0.5 * coeff * density * 4.0 * std::f64::consts::PI * integral
}

fn fcc_tail_bound(scale: f64, cutoff: f64) -> f64 {
    fcc_tail(scale, cutoff, 2.0, 6)
}

impl LatticeSumResult {
    /// −(true energy per particle) is at least the truncated value minus the
    /// neglected repulsive part.
    pub fn b_lower_bound(&self) -> f64 {
        -self.per_particle_energy - fcc_tail(self.scale, self.cutoff, 1.0, 12)
    }
}

fn check_fcc(scale: f64, cutoff: f64) -> Result<()> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Domain(format!("scale must be positive, got {scale}")));
    }
    if !(cutoff >= 3.0 * scale && cutoff.is_finite()) {
        return Err(Error::Domain(format!("cutoff {cutoff} must be at least 3 * scale = {}", 3.0 * scale)));
    }
    Ok(())
}

pub fn fcc_energy_per_particle(scale: f64, cutoff: f64) -> Result<LatticeSumResult> {
    check_fcc(scale, cutoff)?;
    let shells = FccShells::up_to((2.0 * (cutoff / scale).powi(2)).floor() as u64);
    Ok(LatticeSumResult {
        scale,
        per_particle_energy: shells.energy(scale, cutoff),
        cutoff,
        tail_bound: fcc_tail_bound(scale, cutoff),
    })
}

/// Golden-section search for the energy-minimizing scale in [lo, hi].
pub fn fcc_optimize_scale(lo: f64, hi: f64, cutoff: f64) -> Result<LatticeSumResult> {
    if !(lo > 0.0 && lo < hi) {
        return Err(Error::Domain(format!("bad scale bracket [{lo}, {hi}]")));
    }
    check_fcc(hi, cutoff)?;
    check_fcc(lo, cutoff)?;
    let shells = FccShells::up_to((2.0 * (cutoff / lo).powi(2)).floor() as u64);
    let f = |s: f64| shells.energy(s, cutoff);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-10 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        }
    }
    let scale = 0.5 * (a + b);
    Ok(LatticeSumResult { scale, per_particle_energy: f(scale), cutoff, tail_bound: fcc_tail_bound(scale, cutoff) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeParams {
    /// Stop once the gradient max-norm is at most this.
    pub tol: f64,
    pub max_iter: usize,
    /// Number of correction pairs kept by L-BFGS.
    pub memory: usize,
    /// Amplitude of the seeded random displacement applied before descent.
    pub jitter: f64,
}

impl Default for MinimizeParams {
    fn default() -> Self {
        Self { tol: 1e-8, max_iter: 20_000, memory: 8, jitter: 0.0 }
    }
}

#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub config: Configuration,
    pub initial_energy: f64,
    pub energy: f64,
    pub gradient_max_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn to_points(x: &[f64]) -> Vec<Vec3> {
    x.chunks(3).map(|c| [c[0], c[1], c[2]]).collect()
}

/// L-BFGS descent with a backtracking line search. Steps that produce a
/// non-finite energy are shrunk, never taken.
pub fn local_minimize(q: &Configuration, seed: u64, params: &MinimizeParams) -> Result<MinimizeResult> {
    q.check_pairs()?;
    let initial_energy = raw_energy(&q.points);
    let mut start: Vec<f64> = q.points.iter().flatten().copied().collect();
    if params.jitter > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for x in &mut start {
            *x += params.jitter * rng.gen_range(-1.0..1.0);
        }
    }
    let mut result = descend(start, params);
    if params.jitter > 0.0 && (result.energy.is_nan() || result.energy > initial_energy) {
        result = descend(q.points.iter().flatten().copied().collect(), params);
    }
    if result.energy.is_nan() || result.energy > initial_energy {
        // only possible when the input already sat at a minimum up to roundoff
        let mut g = vec![0.0; 3 * q.len()];
        raw_energy_gradient(&q.points, &mut g);
        result = Descent { x: q.points.iter().flatten().copied().collect(), energy: initial_energy, grad_norm: max_norm(&g), iterations: result.iterations };
    }
    Ok(MinimizeResult {
        config: Configuration::new(to_points(&result.x)),
        initial_energy,
        energy: result.energy,
        gradient_max_norm: result.grad_norm,
        iterations: result.iterations,
        converged: result.grad_norm <= params.tol,
    })
}

struct Descent {
    x: Vec<f64>,
    energy: f64,
    grad_norm: f64,
    iterations: usize,
}

fn descend(mut x: Vec<f64>, params: &MinimizeParams) -> Descent {
    let dim = x.len();
    let eval = |x: &[f64], g: &mut [f64]| raw_energy_gradient(&to_points(x), g);
    let mut g = vec![0.0; dim];
    let mut f = eval(&x, &mut g);
    let mut history: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::new();
    let mut x_new = vec![0.0; dim];
    let mut g_new = vec![0.0; dim];
    let mut iterations = 0;

    while iterations < params.max_iter && max_norm(&g) > params.tol {
        iterations += 1;
        let mut d = lbfgs_direction(&g, &history);
        let mut slope: f64 = d.iter().zip(&g).map(|(a, b)| a * b).sum();
        if slope.is_nan() || slope >= 0.0 {
            history.clear();
            d = g.iter().map(|v| -v).collect();
            slope = -g.iter().map(|v| v * v).sum::<f64>();
        }
        // never move a particle by more than 0.3 in one step
        let mut step = (0.3 / max_norm(&d)).min(1.0);
        let mut accepted = false;
        for _ in 0..60 {
            for i in 0..dim {
                x_new[i] = x[i] + step * d[i];
            }
            let f_new = eval(&x_new, &mut g_new);
            let armijo = f_new <= f + 1e-4 * step * slope;
            // near convergence energy differences drown in roundoff; accept a
            // step that leaves the energy flat and shrinks the gradient
            let flat = f_new <= f + 4.0 * f64::EPSILON * f.abs() && max_norm(&g_new) < max_norm(&g);
            if f_new.is_finite() && (armijo || flat) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            if history.is_empty() {
                break;
            }
            history.clear();
            continue;
        }
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        if sy > 1e-300 {
            if history.len() == params.memory.max(1) {
                history.remove(0);
            }
            history.push((s, y, 1.0 / sy));
        }
        std::mem::swap(&mut x, &mut x_new);
        std::mem::swap(&mut g, &mut g_new);
        f = eval(&x, &mut g);
    }
    Descent { energy: f, grad_norm: max_norm(&g), x, iterations }
}

fn lbfgs_direction(g: &[f64], history: &[(Vec<f64>, Vec<f64>, f64)]) -> Vec<f64> {
    let mut q: Vec<f64> = g.to_vec();
    let mut alphas = Vec::with_capacity(history.len());
    for (s, y, rho) in history.iter().rev() {
        let a = rho * s.iter().zip(&q).map(|(a, b)| a * b).sum::<f64>();
        q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
        alphas.push(a);
    }
    if let Some((s, y, _)) = history.last() {
        let yy: f64 = y.iter().map(|v| v * v).sum();
        let sy: f64 = s.iter().zip(y).map(|(a, b)| a * b).sum();
        let gamma = sy / yy;
        q.iter_mut().for_each(|v| *v *= gamma);
    }
    for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
        let b = rho * y.iter().zip(&q).map(|(a, b)| a * b).sum::<f64>();
        q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
    }
    q.iter().map(|v| -v).collect()
}

#[derive(Debug, Clone)]
pub struct CompactifyResult {
    pub config: Configuration,
    /// Particles moved far away because they had negative minus-energy.
    pub relocations: usize,
    /// Empty slabs contracted by 1.
    pub contractions: usize,
}

/// Moves a configuration into {0.65 ≤ d(x, y) ≤ 2(n − 1), x₁ = 0} without
/// lowering its total minus-energy.
pub fn compactify(q: &Configuration) -> Result<CompactifyResult> {
    q.check_pairs()?;
    let n = q.len();
    let mut cfg = q.clone();
    let box_size = 2.0 * (n as f64 - 1.0);

    let mut relocations = 0;
    loop {
        let (i, j, d) = closest_pair(&cfg)?;
        if d >= SEPARATION {
            break;
        }
        let energies = per_particle_minus_energies(&cfg)?;
        let mover = if energies[i] < 0.0 {
            i
        } else if energies[j] < 0.0 {
            j
        } else {
            return Err(Error::Domain(format!(
                "particles {i} and {j} at distance {d} both have nonnegative minus-energy"
            )));
        };
        let far = cfg
            .points
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != mover)
            .map(|(_, p)| p[0])
            .fold(f64::NEG_INFINITY, f64::max);
        cfg.points[mover][0] = far + box_size + 1.0;
        relocations += 1;
    }

    let mut contractions = 0;
    loop {
        let (a, b, diameter) = farthest_pair(&cfg.points);
        if diameter <= box_size {
            break;
        }
        let origin = cfg.points[a];
        let axis = sub(&cfg.points[b], &origin).map(|v| v / diameter);
        let proj: Vec<f64> = cfg.points.iter().map(|p| dot(&sub(p, &origin), &axis)).collect();
        // n planes through equispaced points of the segment; n − 2 other
        // particles cannot fill all n − 1 open slabs between them
        let gap = diameter / (n as f64 - 1.0);
        // points within roundoff of a plane count as lying on it
        let tol = 1e-9 * diameter;
        let empty = (0..n - 1).find(|&k| {
            let (lo, hi) = (k as f64 * gap, (k + 1) as f64 * gap);
            proj.iter().all(|&t| t <= lo + tol || t >= hi - tol)
        });
        let Some(k) = empty else {
            return Err(Error::Domain("no empty slab between the planes".into()));
        };
        let cut = (k + 1) as f64 * gap;
        for (p, t) in cfg.points.iter_mut().zip(&proj) {
            if *t >= cut - tol {
                for c in 0..3 {
                    p[c] -= axis[c];
                }
            }
        }
        contractions += 1;
    }

    let first = cfg.points[0];
    cfg.translate(first.map(|v| -v));
    Ok(CompactifyResult { config: cfg, relocations, contractions })
}

/// Twelve icosahedron vertices at distance `radius` from the origin.
pub fn icosahedron(radius: f64) -> Vec<Vec3> {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let norm = (1.0 + t * t).sqrt();
    let mut out = Vec::with_capacity(12);
    for &(a, b) in &[(1.0, t), (1.0, -t), (-1.0, t), (-1.0, -t)] {
        out.push([0.0, a, b]);
        out.push([a, b, 0.0]);
        out.push([b, 0.0, a]);
    }
    out.iter().map(|p| p.map(|v| v * radius / norm)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(points: &[Vec3]) -> Configuration {
        Configuration::new(points.to_vec())
    }

    #[test]
    fn energy_examples() {
        assert_eq!(total_energy(&cfg(&[[0.0; 3], [1.0, 0.0, 0.0]])).unwrap(), -1.0);
        let root = 2f64.powf(-1.0 / 6.0);
        assert!(total_energy(&cfg(&[[0.0; 3], [root, 0.0, 0.0]])).unwrap().abs() < 1e-12);
        let tri = cfg(&[[0.0; 3], [1.0, 0.0, 0.0], [0.5, 3f64.sqrt() / 2.0, 0.0]]);
        assert!((total_energy(&tri).unwrap() + 3.0).abs() < 1e-12);
        let minus: f64 = per_particle_minus_energies(&tri).unwrap().iter().sum();
        assert!((total_energy(&tri).unwrap() + 0.5 * minus).abs() < 1e-12);
    }

    #[test]
    fn rejects_coincident_and_tiny() {
        assert!(matches!(total_energy(&cfg(&[[1.0; 3], [1.0; 3]])), Err(Error::CoincidentPoints(0, 1))));
        assert!(total_energy(&cfg(&[[0.0; 3]])).is_err());
    }

    #[test]
    fn min_distance_examples() {
        let square = cfg(&[[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]]);
        assert_eq!(min_distance(&square).unwrap(), 1.0);
        assert_eq!(min_distance(&cfg(&[[0.0; 3], [0.5, 0.0, 0.0], [3.0, 0.0, 0.0]])).unwrap(), 0.5);
    }

    #[test]
    fn icosahedral_center_minus_energy() {
        let mut pts = vec![[0.0; 3]];
        pts.extend(icosahedron(1.0));
        let e = single_particle_minus_energy(&cfg(&pts), 0).unwrap();
        assert!((e - 12.0).abs() < 1e-12);
    }

    #[test]
    fn parse_and_roundtrip() {
        let q = Configuration::parse("# pair\n0 0 0\n\n1.0 0 0\n").unwrap();
        assert_eq!(q.points, vec![[0.0; 3], [1.0, 0.0, 0.0]]);
        assert_eq!(Configuration::parse(&q.to_text()).unwrap(), q);
        match Configuration::parse("0 0 0\n1 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Configuration::parse("0 0 x"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn fcc_nearest_shell() {
        let shells = FccShells::up_to(2);
        assert_eq!(shells.shells.get(&2), Some(&12));
        // cutoff just past the first shell
        let r = fcc_energy_per_particle(1.0, 3.0).unwrap();
        let first_only = shells.energy(1.0, 1.1);
        assert_eq!(first_only, -6.0);
        assert!(r.per_particle_energy < -6.0);
        assert!(fcc_energy_per_particle(1.0, 2.0).is_err());
    }

    #[test]
    fn fcc_far_scale_vanishes() {
        let r = fcc_energy_per_particle(50.0, 150.0).unwrap();
        assert!(r.per_particle_energy < 0.0 && r.per_particle_energy > -1e-9);
    }

    #[test]
    fn pair_relaxes_to_unit_distance() {
        let q = cfg(&[[0.0; 3], [1.3, 0.0, 0.0]]);
        let r = local_minimize(&q, 1, &MinimizeParams::default()).unwrap();
        assert!(r.converged);
        assert!((min_distance(&r.config).unwrap() - 1.0).abs() < 1e-8);
        assert!((r.energy + 1.0).abs() < 1e-12);
    }

    #[test]
    fn compactify_examples() {
        let close = cfg(&[[0.0; 3], [0.5, 0.0, 0.0]]);
        let before: f64 = per_particle_minus_energies(&close).unwrap().iter().sum();
        let out = compactify(&close).unwrap();
        let d = min_distance(&out.config).unwrap();
        assert!((SEPARATION..=2.0).contains(&d), "{d}");
        let after: f64 = per_particle_minus_energies(&out.config).unwrap().iter().sum();
        assert!(after >= before);
        assert_eq!(out.config.points[0], [0.0; 3]);

        let far = compactify(&cfg(&[[0.0; 3], [10.0, 0.0, 0.0]])).unwrap();
        assert_eq!(far.contractions, 8);
        assert!((min_distance(&far.config).unwrap() - 2.0).abs() < 1e-12);

        let fine = cfg(&[[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.2, 0.0]]);
        let same = compactify(&fine).unwrap();
        assert_eq!(same.config, fine);
        assert_eq!(same.relocations + same.contractions, 0);
    }

    fn arb_config(n: usize) -> impl Strategy<Value = Configuration> {
        prop::collection::vec(prop::array::uniform3(-2.0f64..2.0), n).prop_map(Configuration::new)
    }

    proptest! {
        #[test]
        fn gradient_matches_finite_differences(q in arb_config(5)) {
            prop_assume!(min_distance(&q).unwrap() > 0.7);
            let g = gradient(&q).unwrap();
            let h = 1e-5;
            for i in 0..q.len() {
                for k in 0..3 {
                    let mut plus = q.clone();
                    plus.points[i][k] += h;
                    let mut minus = q.clone();
                    minus.points[i][k] -= h;
                    let fd = (total_energy(&plus).unwrap() - total_energy(&minus).unwrap()) / (2.0 * h);
                    let scale = g[i][k].abs().max(1e-3);
                    prop_assert!((fd - g[i][k]).abs() <= 1e-6 * scale.max(1.0), "fd {fd} g {}", g[i][k]);
                }
            }
        }

        #[test]
        fn energy_is_rigid_motion_invariant(q in arb_config(6), shift in prop::array::uniform3(-5.0f64..5.0), angle in 0.0f64..6.3) {
            prop_assume!(min_distance(&q).unwrap() > 0.5);
            let e = total_energy(&q).unwrap();
            let (s, c) = angle.sin_cos();
            let moved = Configuration::new(q.points.iter().map(|p| [c * p[0] - s * p[1] + shift[0], s * p[0] + c * p[1] + shift[1], p[2] + shift[2]]).collect());
            prop_assert!((total_energy(&moved).unwrap() - e).abs() <= 1e-12 * e.abs().max(1.0) * 10.0);
        }

        #[test]
        fn minus_energy_below_moment_bound(q in arb_config(8)) {
            let a = min_distance(&q).unwrap();
            prop_assume!(a >= SEPARATION);
            for e in per_particle_minus_energies(&q).unwrap() {
                prop_assert!(e <= 26.95 / a.powi(3));
            }
        }

        #[test]
        fn compactify_postcondition(q in arb_config(4), spread in 1.0f64..6.0) {
            let q = Configuration::new(q.points.iter().map(|p| p.map(|v| v * spread)).collect());
            prop_assume!(min_distance(&q).unwrap() > 1e-3);
            let before: f64 = per_particle_minus_energies(&q).unwrap().iter().sum();
            let out = compactify(&q).unwrap().config;
            let n = q.len() as f64;
            let min = min_distance(&out).unwrap();
            let max = farthest_pair(&out.points).2;
            prop_assert!(min >= SEPARATION && max <= 2.0 * (n - 1.0) + 1e-9, "{min} {max}");
            let after: f64 = per_particle_minus_energies(&out).unwrap().iter().sum();
            prop_assert!(after >= before - 1e-9 * before.abs().max(1.0));
        }
    }
}
