//! Certificates for each step of the stability bound, and the orchestrator
//! that runs them in dependency order.
//!
//! Every verifier reads its numeric inputs from [`ProofConstants`], so a
//! test can perturb any constant and watch which sub-check flips.

mod balls;
mod moments;
mod overlap;
mod tangent;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::certnum::rational::{to_decimal, Round};
use crate::certnum::{
    dec, int, ratio, Enclosures, Interval, NumberFieldElem, Rational, SignCertificate, Verdict, DEFAULT_MAX_DEPTH,
};
use crate::error::{Error, Result};
use crate::integrals::ShellBound;

pub use balls::verify_prop_4_1;
pub use moments::{verify_cor_3_3, verify_prop_3_1};
pub use overlap::{appendix_polynomials, stability_bound, verify_appendix, verify_theorem_5_1, AppendixPolynomials};
pub use tangent::{verify_prop_2_4, verify_prop_2_5};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PropId {
    #[serde(rename = "2.4")]
    P2_4,
    #[serde(rename = "2.5")]
    P2_5,
    #[serde(rename = "3.1-I")]
    P3_1I,
    #[serde(rename = "3.1-II")]
    P3_1II,
    #[serde(rename = "3.3")]
    C3_3,
    #[serde(rename = "4.1")]
    P4_1,
    #[serde(rename = "appendix")]
    Appendix,
    #[serde(rename = "5.1")]
    T5_1,
}

impl PropId {
    pub const ALL: [PropId; 8] = [
        PropId::P2_4,
        PropId::P2_5,
        PropId::P3_1I,
        PropId::P3_1II,
        PropId::C3_3,
        PropId::P4_1,
        PropId::Appendix,
        PropId::T5_1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropId::P2_4 => "2.4",
            PropId::P2_5 => "2.5",
            PropId::P3_1I => "3.1-I",
            PropId::P3_1II => "3.1-II",
            PropId::C3_3 => "3.3",
            PropId::P4_1 => "4.1",
            PropId::Appendix => "appendix",
            PropId::T5_1 => "5.1",
        }
    }

    /// Certificates whose conclusions this one uses.
    pub fn dependencies(self) -> &'static [PropId] {
        use PropId::*;
        match self {
            P2_4 | Appendix => &[],
            P2_5 => &[P2_4],
            P3_1I => &[P2_5],
            P3_1II => &[P2_4, P2_5],
            C3_3 => &[P3_1I, P3_1II],
            P4_1 => &[P2_4, P2_5],
            T5_1 => &[P2_4, P2_5, P3_1I, P3_1II, C3_3, P4_1, Appendix],
        }
    }

    /// `self` and everything it depends on, in canonical order.
    pub fn closure(ids: &[PropId]) -> Vec<PropId> {
        let mut wanted = Vec::new();
        let mut stack = ids.to_vec();
        while let Some(id) = stack.pop() {
            if !wanted.contains(&id) {
                wanted.push(id);
                stack.extend_from_slice(id.dependencies());
            }
        }
        PropId::ALL.iter().copied().filter(|id| wanted.contains(id)).collect()
    }
}

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let id = match s.to_ascii_lowercase().as_str() {
            "2.4" => PropId::P2_4,
            "2.5" => PropId::P2_5,
            "3.1i" | "3.1-i" => PropId::P3_1I,
            "3.1ii" | "3.1-ii" => PropId::P3_1II,
            "3.3" => PropId::C3_3,
            "4.1" => PropId::P4_1,
            "appendix" => PropId::Appendix,
            "5.1" => PropId::T5_1,
            _ => return Err(Error::Domain(format!("unknown proposition id {s:?}"))),
        };
        Ok(id)
    }
}

/// A named enclosure together with the bound it is meant to certify.
#[derive(Debug, Clone, Serialize)]
pub struct NamedEnclosure {
    pub name: String,
    pub value: Interval,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubCheck {
    pub label: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<SubCheck>,
}

impl SubCheck {
    pub fn new(label: impl Into<String>, verdict: Verdict) -> Self {
        Self { label: label.into(), verdict, detail: None, witness: None, children: Vec::new() }
    }

    pub fn exact(label: impl Into<String>, holds: bool) -> Self {
        Self::new(label, Verdict::from_bool(holds))
    }

    pub fn group(label: impl Into<String>, children: Vec<SubCheck>) -> Self {
        let verdict = Verdict::all(children.iter().map(|c| c.verdict));
        Self { children, ..Self::new(label, verdict) }
    }

    /// A check whose computation raised an error counts as failed.
    pub fn from_result(label: impl Into<String>, result: Result<SubCheck>) -> Self {
        match result {
            Ok(check) => check,
            Err(e) => Self::new(label, Verdict::Fail).with_detail(format!("error: {e}")),
        }
    }

    pub fn from_sign(label: impl Into<String>, cert: &SignCertificate) -> Self {
        let mut check = Self::new(label, cert.verdict)
            .with_detail(format!("{} boxes, depth {}", cert.boxes, cert.depth));
        if let (Verdict::Pass, Some(image)) = (cert.verdict, &cert.image) {
            check.detail = Some(format!("{} boxes, depth {}, image within {}", cert.boxes, cert.depth, image));
        }
        check.witness = cert.witness_string();
        check
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// All labels of checks (depth first) with the given verdict.
    pub fn labels_with(&self, verdict: Verdict) -> Vec<String> {
        let mut out = Vec::new();
        if self.verdict == verdict {
            out.push(self.label.clone());
        }
        for child in &self.children {
            out.extend(child.labels_with(verdict));
        }
        out
    }
}

/// PASS if the enclosure lies below `bound`, FAIL if it lies at or above it.
pub fn below(label: impl Into<String>, value: &Interval, bound: &Rational) -> SubCheck {
    let verdict = if value.hi() < bound {
        Verdict::Pass
    } else if value.lo() >= bound {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    SubCheck::new(label, verdict).with_detail(format!("{} < {}", value.to_decimal_string(12), fmt_q(bound)))
}

pub fn above(label: impl Into<String>, value: &Interval, bound: &Rational) -> SubCheck {
    let verdict = if value.lo() > bound {
        Verdict::Pass
    } else if value.hi() <= bound {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    SubCheck::new(label, verdict).with_detail(format!("{} > {}", value.to_decimal_string(12), fmt_q(bound)))
}

/// Exact decimal when the denominator allows it, a fraction otherwise.
pub fn fmt_q(q: &Rational) -> String {
    let mut d = q.denom().clone();
    for p in [2u32, 5] {
        let p = num_bigint::BigInt::from(p);
        while (&d % &p).is_zero() {
            d /= &p;
        }
    }
    if d.is_one() {
        to_decimal(q, 40, Round::Down)
    } else {
        q.to_string()
    }
}

/// Renders a sum like `-0.7558r^2 + 1.127r - 0.2516`.
pub fn fmt_terms(terms: &[(&Rational, &str)]) -> String {
    let mut out = String::new();
    for (coeff, var) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let text = fmt_q(&coeff.abs());
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if coeff.is_negative() { " - " } else { " + " });
        }
        let _ = write!(out, "{text}{var}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub id: PropId,
    pub title: String,
    pub verdict: Verdict,
    pub enclosures: Vec<NamedEnclosure>,
    pub checks: Vec<SubCheck>,
}

impl Certificate {
    pub fn new(id: PropId, title: impl Into<String>) -> Self {
        Self { id, title: title.into(), verdict: Verdict::Pass, enclosures: Vec::new(), checks: Vec::new() }
    }

    pub fn enclosure(&mut self, name: impl Into<String>, value: &Interval, claim: Option<String>) {
        self.enclosures.push(NamedEnclosure { name: name.into(), value: value.clone(), claim });
    }

    pub fn check(&mut self, check: SubCheck) {
        self.checks.push(check);
    }

    pub fn finish(mut self) -> Self {
        self.verdict = Verdict::all(self.checks.iter().map(|c| c.verdict));
        self
    }

    pub fn find_enclosure(&self, name: &str) -> Option<&Interval> {
        self.enclosures.iter().find(|e| e.name == name).map(|e| &e.value)
    }

    pub fn failing_checks(&self) -> Vec<String> {
        self.checks.iter().flat_map(|c| c.labels_with(Verdict::Fail)).collect()
    }

    pub fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "== {} [{}] {}", self.id, self.verdict, self.title);
        if !self.enclosures.is_empty() {
            let _ = writeln!(out, "  enclosures:");
            for e in &self.enclosures {
                let claim = e.claim.as_ref().map(|c| format!("  (claim: {c})")).unwrap_or_default();
                let _ = writeln!(out, "    {} = {}{}", e.name, e.value.to_decimal_string(12), claim);
                let _ = writeln!(out, "      exact: [{}, {}]", e.value.lo(), e.value.hi());
            }
        }
        let _ = writeln!(out, "  checks:");
        for c in &self.checks {
            render_check(c, 2, out);
        }
    }
}

fn render_check(c: &SubCheck, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let _ = write!(out, "{pad}[{}] {}", c.verdict, c.label);
    if let Some(d) = &c.detail {
        let _ = write!(out, ": {d}");
    }
    out.push('\n');
    if let Some(w) = &c.witness {
        let _ = writeln!(out, "{pad}  witness: {w}");
    }
    for child in &c.children {
        render_check(child, indent + 1, out);
    }
}

/// Numeric inputs of the proof chain. The defaults are the published
/// constants; decimals are read as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofConstants {
    /// t(r) = tangent_slope·s/r − tangent_offset
    pub tangent_slope: Rational,
    pub tangent_offset: Rational,
    /// t stays positive below this radius.
    pub tangent_positive_until: Rational,

    pub a_max: Rational,
    pub a_min_ii: Rational,
    /// Particles closer to the origin than this have negative minus-energy.
    pub inner_norm: Rational,
    pub trunc_i: Rational,
    pub mu_bound_i: Rational,
    pub trunc_ii: Rational,
    pub shell_upper_ii: Rational,
    pub mu_bound_ii: Rational,
    pub quad_ii: ShellBound,
    pub vertex_claim: Rational,
    /// [q2, q1, q0] with q2·c² + q1·c + q0 > 0 on the c-range
    pub decreasing_quad: [Rational; 3],
    /// k0 + k1·r + k2/r, the lower bound used at c = a_max/2
    pub club: [Rational; 3],

    pub aux_distance: Rational,
    pub min_distance: Rational,

    pub ball_radius: Rational,
    pub trunc_41: Rational,
    /// Region boundaries r_lo < r_mid < r_hi.
    pub regions: [Rational; 3],
    pub region2_upper: Rational,
    pub region3_upper: Rational,
    pub quad_region2: ShellBound,
    pub quad_region3: ShellBound,

    pub density_bound: Rational,
    pub overlap_constant: Rational,
    pub b_claim: Rational,

    pub appendix_c2: Rational,
    pub appendix_d12: Rational,
    pub root_claims: [Rational; 3],
    pub root_tolerance: Rational,
}

impl Default for ProofConstants {
    fn default() -> Self {
        let q = |ac: &str, a2: &str, a1: &str, a0: &str| ShellBound::new(dec(ac), dec(a2), dec(a1), dec(a0));
        Self {
            tangent_slope: ratio(360, 121),
            tangent_offset: ratio(25, 11),
            tangent_positive_until: dec("1.49"),
            a_max: dec("0.7"),
            a_min_ii: dec("0.6"),
            inner_norm: dec("0.89"),
            trunc_i: dec("0.54"),
            mu_bound_i: dec("26.95"),
            trunc_ii: dec("0.64"),
            shell_upper_ii: dec("1.19"),
            mu_bound_ii: dec("24.05"),
            quad_ii: q("0.7224", "-0.7225", "1.2589", "-0.5654"),
            vertex_claim: dec("0.8712"),
            decreasing_quad: [dec("-1.4451"), dec("1.0023"), dec("-0.16692")],
            club: [dec("22.021"), dec("-12.639"), dec("-8.343")],
            aux_distance: dec("0.65"),
            min_distance: dec("0.684"),
            ball_radius: dec("0.49"),
            trunc_41: dec("0.54"),
            regions: [dec("0.51"), dec("0.9"), dec("1.03")],
            region2_upper: dec("1"),
            region3_upper: dec("1.39"),
            quad_region2: q("0", "-0.7558", "1.127", "-0.2516"),
            quad_region3: q("0", "-1.0199", "1.7357", "-0.5418"),
            density_bound: int(36),
            overlap_constant: int(113),
            b_claim: dec("14.316"),
            appendix_c2: ratio(-8475, 49),
            appendix_d12: int(111),
            root_claims: [dec("-1.59958"), dec("0.647647"), dec("0.951934")],
            root_tolerance: dec("1e-5"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Bisection levels allowed in each sign certification.
    pub max_depth: u32,
    /// Width of the enclosures of s, A and π.
    pub enclosure_width: Rational,
    /// Worker threads; 0 or 1 runs sequentially.
    pub jobs: usize,
    pub constants: ProofConstants,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_depth: DEFAULT_MAX_DEPTH,
            enclosure_width: crate::certnum::consts::default_width(),
            jobs: 1,
            constants: ProofConstants::default(),
        }
    }
}

/// What every verifier sees.
pub struct Context<'a> {
    pub cfg: &'a VerifyConfig,
    pub k: &'a ProofConstants,
    pub enc: Enclosures,
}

impl<'a> Context<'a> {
    pub fn new(cfg: &'a VerifyConfig) -> Self {
        let enc = if cfg.enclosure_width == crate::certnum::consts::default_width() {
            Enclosures::standard().clone()
        } else {
            Enclosures::with_width(&cfg.enclosure_width)
        };
        Self { cfg, k: &cfg.constants, enc }
    }

    pub fn depth(&self) -> u32 {
        self.cfg.max_depth
    }

    pub fn tangent(&self) -> Tangent {
        Tangent::new(&self.k.tangent_slope, &self.k.tangent_offset)
    }
}

/// t(r) = slope·s/r − offset with exact coefficients.
#[derive(Debug, Clone)]
pub struct Tangent {
    pub slope: NumberFieldElem,
    pub offset: Rational,
}

impl Tangent {
    pub fn new(slope_factor: &Rational, offset: &Rational) -> Self {
        Self { slope: NumberFieldElem::monomial(slope_factor.clone(), 1), offset: offset.clone() }
    }

    pub fn laurent(&self) -> Vec<(i32, NumberFieldElem)> {
        vec![(-1, self.slope.clone()), (0, NumberFieldElem::rational(-self.offset.clone()))]
    }

    pub fn eval_exact(&self, x: &NumberFieldElem, order: u32) -> Option<NumberFieldElem> {
        laurent_eval(&crate::potential::laurent_derivative(&self.laurent(), order), x)
    }

    pub fn eval(&self, r: &Interval, enc: &Enclosures) -> Result<Interval> {
        Ok(&(&enc.enclose(&self.slope) * &r.recip()?) - &Interval::point(self.offset.clone()))
    }
}

pub fn laurent_eval(terms: &[(i32, NumberFieldElem)], x: &NumberFieldElem) -> Option<NumberFieldElem> {
    terms.iter().try_fold(NumberFieldElem::zero(), |acc, (k, c)| Some(&acc + &(c * &x.pow(*k)?)))
}

/// Interval for q0 + q1·x + q2·x² given coefficients in ascending order.
pub(crate) fn quad_eval(coeffs: &[Rational; 3], x: &Interval) -> Interval {
    &(&x.square().scale(&coeffs[2]) + &x.scale(&coeffs[1])) + &Interval::point(coeffs[0].clone())
}

pub fn verify(id: PropId, ctx: &Context<'_>) -> Certificate {
    match id {
        PropId::P2_4 => verify_prop_2_4(ctx),
        PropId::P2_5 => verify_prop_2_5(ctx),
        PropId::P3_1I => verify_prop_3_1(ctx, Variant::I),
        PropId::P3_1II => verify_prop_3_1(ctx, Variant::II),
        PropId::C3_3 => verify_cor_3_3(ctx),
        PropId::P4_1 => verify_prop_4_1(ctx),
        PropId::Appendix => verify_appendix(ctx),
        PropId::T5_1 => verify_theorem_5_1(ctx),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    I,
    II,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub quantity: String,
    pub value: String,
    pub claim: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    pub summary: Vec<SummaryRow>,
}

impl Report {
    pub fn certificate(&self, id: PropId) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for cert in &self.certificates {
            cert.render_text(&mut out);
            out.push('\n');
        }
        let _ = writeln!(out, "summary:");
        for row in &self.summary {
            let _ = writeln!(out, "  [{}] {} = {} (claim: {})", row.verdict, row.quantity, row.value, row.claim);
        }
        let _ = writeln!(out, "overall: {}", self.verdict);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Appends a row for the FCC lattice lower bound on B.
    pub fn add_lower_bound(&mut self, fcc: &crate::cluster::LatticeSumResult) {
        let bound = fcc.b_lower_bound();
        self.summary.push(SummaryRow {
            quantity: "B lower bound (FCC lattice)".into(),
            value: format!("{bound:.6} (scale {:.6}, cutoff {}, tail {:.2e})", fcc.scale, fcc.cutoff, fcc.tail_bound),
            claim: ">= 8.61".into(),
            verdict: Verdict::from_bool(bound >= 8.61),
        });
    }
}

/// Runs the requested certificates together with their dependencies.
pub fn run(ids: &[PropId], cfg: &VerifyConfig) -> Report {
    let order = PropId::closure(ids);
    let ctx = Context::new(cfg);
    let compute = |id: &PropId| verify(*id, &ctx);
    let raw: Vec<Certificate> = if cfg.jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build() {
            Ok(pool) => pool.install(|| order.par_iter().map(compute).collect()),
            Err(_) => order.iter().map(compute).collect(),
        }
    } else {
        order.iter().map(compute).collect()
    };

    let mut done: Vec<Certificate> = Vec::with_capacity(raw.len());
    for mut cert in raw {
        for dep in cert.id.dependencies() {
            let verdict = done.iter().find(|c| c.id == *dep).map(|c| c.verdict).unwrap_or(Verdict::Inconclusive);
            cert.checks.push(SubCheck::new(format!("dependency {dep}"), verdict));
        }
        done.push(cert.finish());
    }
    let summary = summarize(&done, &cfg.constants);
    let verdict = Verdict::all(done.iter().map(|c| c.verdict));
    Report { verdict, certificates: done, summary }
}

pub fn run_all(cfg: &VerifyConfig) -> Report {
    run(&PropId::ALL, cfg)
}

fn summarize(certs: &[Certificate], k: &ProofConstants) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    let find = |id: PropId| certs.iter().find(|c| c.id == id);
    if let Some(c) = find(PropId::T5_1) {
        let value = c.find_enclosure("B upper bound").map(|v| v.to_decimal_string(12)).unwrap_or_default();
        rows.push(SummaryRow {
            quantity: "B upper bound".into(),
            value,
            claim: format!("< {}", fmt_q(&k.b_claim)),
            verdict: c.verdict,
        });
    }
    if let Some(c) = find(PropId::C3_3) {
        let value = c.find_enclosure("crossing of 24.05a^9 + 2a^6 = 1").map(|v| v.to_decimal_string(12)).unwrap_or_default();
        rows.push(SummaryRow {
            quantity: "minimum interparticle distance".into(),
            value: format!("> {} (method limit {value})", fmt_q(&k.min_distance)),
            claim: format!("> {}", fmt_q(&k.min_distance)),
            verdict: c.verdict,
        });
    }
    for (id, name, bound) in [
        (PropId::P3_1I, "24*I(0.54)", &k.mu_bound_i),
        (PropId::P3_1II, "24*I(0.64)", &k.mu_bound_ii),
    ] {
        if let Some(c) = find(id) {
            let value = c.find_enclosure(name).map(|v| v.to_decimal_string(12)).unwrap_or_default();
            rows.push(SummaryRow {
                quantity: format!("mu(a)*a^3 bound ({id})"),
                value,
                claim: format!("< {}", fmt_q(bound)),
                verdict: c.verdict,
            });
        }
    }
    rows
}

/// Parses a comma separated list of proposition ids, or `all`.
pub fn parse_prop_list(text: &str) -> Result<Vec<PropId>> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(PropId::ALL.to_vec());
    }
    text.split(',').map(|s| s.trim().parse()).collect()
}

/// Equality of two rationals as a sub-check.
pub(crate) fn equal(label: impl Into<String>, lhs: &Rational, rhs: &Rational) -> SubCheck {
    SubCheck::exact(label, lhs == rhs).with_detail(format!("{} vs {}", fmt_q(lhs), fmt_q(rhs)))
}

pub(crate) fn less(label: impl Into<String>, lhs: &Rational, rhs: &Rational) -> SubCheck {
    SubCheck::exact(label, lhs < rhs).with_detail(format!("{} < {}", fmt_q(lhs), fmt_q(rhs)))
}

pub(crate) fn less_eq(label: impl Into<String>, lhs: &Rational, rhs: &Rational) -> SubCheck {
    SubCheck::exact(label, lhs <= rhs).with_detail(format!("{} <= {}", fmt_q(lhs), fmt_q(rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_is_ordered_and_complete() {
        assert_eq!(PropId::closure(&[PropId::C3_3]), vec![PropId::P2_4, PropId::P2_5, PropId::P3_1I, PropId::P3_1II, PropId::C3_3]);
        assert_eq!(PropId::closure(&[PropId::Appendix]), vec![PropId::Appendix]);
        assert_eq!(PropId::closure(&[PropId::T5_1]), PropId::ALL.to_vec());
    }

    #[test]
    fn ids_parse() {
        assert_eq!("3.1ii".parse::<PropId>().unwrap(), PropId::P3_1II);
        assert_eq!("appendix".parse::<PropId>().unwrap(), PropId::Appendix);
        assert!("9.9".parse::<PropId>().is_err());
        assert_eq!(parse_prop_list("all").unwrap().len(), 8);
        assert_eq!(parse_prop_list("2.4,5.1").unwrap(), vec![PropId::P2_4, PropId::T5_1]);
    }

    #[test]
    fn fmt_q_prefers_decimals() {
        assert_eq!(fmt_q(&dec("0.7224")), "0.7224");
        assert_eq!(fmt_q(&ratio(25, 11)), "25/11");
        assert_eq!(fmt_q(&dec("-14.316")), "-14.316");
        let (a, b, c) = (dec("-0.7558"), dec("1.127"), dec("-0.2516"));
        assert_eq!(fmt_terms(&[(&a, "r^2"), (&b, "r"), (&c, "")]), "-0.7558r^2 + 1.127r - 0.2516");
    }

    #[test]
    fn interval_comparisons() {
        let v = Interval::new(dec("1"), dec("2"));
        assert_eq!(below("x", &v, &dec("3")).verdict, Verdict::Pass);
        assert_eq!(below("x", &v, &dec("1")).verdict, Verdict::Fail);
        assert_eq!(below("x", &v, &dec("1.5")).verdict, Verdict::Inconclusive);
        assert_eq!(above("x", &v, &dec("0.5")).verdict, Verdict::Pass);
    }
}
