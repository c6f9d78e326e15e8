use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ljstab_core::certnum::{int, parse_rational, Verdict};
use ljstab_core::cluster::{
    compactify, fcc_energy_per_particle, fcc_optimize_scale, local_minimize, min_distance, per_particle_minus_energies,
    total_energy, Configuration, LatticeSumResult, MinimizeParams, DEFAULT_FCC_CUTOFF,
};
use ljstab_core::integrals::theta_moment;
use ljstab_core::verifier::{parse_prop_list, run, VerifyConfig};
use ljstab_core::Error;

// Output is collected and written once, so a closed pipe is not a panic.
macro_rules! outln {
    ($out:expr) => {{
        let _ = writeln!($out);
    }};
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

macro_rules! outp {
    ($out:expr, $($arg:tt)*) => {{
        let _ = write!($out, $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "ljstab", version, about = "Certified bounds for the Lennard-Jones stability constant")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run certificates (with their dependencies) and report verdicts.
    Verify {
        /// Comma separated ids: 2.4, 2.5, 3.1i, 3.1ii, 3.3, 4.1, 5.1, appendix, or all.
        #[arg(long, default_value = "all")]
        prop: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Bisection levels allowed per sign certification.
        #[arg(long)]
        max_depth: Option<u32>,
        /// Width of the enclosures of s and π, as a decimal or fraction.
        #[arg(long)]
        enclosure_width: Option<String>,
        /// Also compute the FCC lower bound on B and add it to the summary.
        #[arg(long)]
        lower_bound: bool,
    },
    /// Enclose the moment integral of theta from LOWER to infinity.
    Integral {
        #[arg(long)]
        lower: String,
    },
    /// Energies of a configuration file.
    Energy { file: PathBuf },
    /// FCC lattice energy per particle.
    Fcc {
        /// Nearest-neighbour distance.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, default_value_t = DEFAULT_FCC_CUTOFF)]
        cutoff: f64,
        /// Search for the energy-minimizing scale instead of using --scale.
        #[arg(long)]
        optimize_scale: bool,
    },
    /// Locally minimize the energy; prints the relaxed configuration.
    Optimize {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Random displacement applied before descent.
        #[arg(long, default_value_t = 0.0)]
        jitter: f64,
    },
    /// Move a configuration into the box 0.65 <= d <= 2(n-1) without lowering its minus-energy.
    Compactify { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = String::new();
    let result = dispatch(cli.command, &mut out);
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command, out: &mut String) -> Result<ExitCode, Error> {
    match command {
        Command::Verify { prop, format, jobs, max_depth, enclosure_width, lower_bound } => {
            let ids = parse_prop_list(&prop)?;
            let mut cfg = VerifyConfig { jobs, ..VerifyConfig::default() };
            if let Some(depth) = max_depth {
                cfg.max_depth = depth;
            }
            if let Some(width) = enclosure_width {
                let w = parse_rational(&width)?;
                if w <= int(0) {
                    return Err(Error::Domain(format!("enclosure width must be positive, got {width}")));
                }
                cfg.enclosure_width = w;
            }
            let mut report = run(&ids, &cfg);
            if lower_bound {
                let fcc = fcc_optimize_scale(0.9, 1.1, DEFAULT_FCC_CUTOFF)?;
                report.add_lower_bound(&fcc);
            }
            match format {
                Format::Text => outp!(out, "{}", report.to_text()),
                Format::Json => outln!(out, "{}", report.to_json()),
            }
            Ok(exit_for(report.verdict))
        }
        Command::Integral { lower } => {
            let x = parse_rational(&lower)?;
            let value = theta_moment(&x)?;
            outln!(out, "I({lower}) = {}", value.to_decimal_string(12));
            outln!(out, "  exact: [{}, {}]", value.lo(), value.hi());
            outln!(out, "24*I({lower}) = {}", value.scale(&int(24)).to_decimal_string(12));
            Ok(ExitCode::SUCCESS)
        }
        Command::Energy { file } => {
            let q = Configuration::read(&file)?;
            let total = total_energy(&q)?;
            let minus = per_particle_minus_energies(&q)?;
            let max_minus = minus.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            outln!(out, "particles: {}", q.len());
            outln!(out, "total energy: {total:.12}");
            outln!(out, "energy per particle: {:.12}", total / q.len() as f64);
            outln!(out, "min distance: {:.12}", min_distance(&q)?);
            outln!(out, "max single-particle minus-energy: {max_minus:.12}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Fcc { scale, cutoff, optimize_scale } => {
            let r = if optimize_scale {
                fcc_optimize_scale(0.9, 1.1, cutoff)?
            } else {
                fcc_energy_per_particle(scale, cutoff)?
            };
            print_fcc(out, &r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Optimize { file, seed, tol, jitter } => {
            let q = Configuration::read(&file)?;
            let params = MinimizeParams { tol, jitter, ..MinimizeParams::default() };
            let r = local_minimize(&q, seed, &params)?;
            outln!(out, "# initial energy: {:.12}", r.initial_energy);
            outln!(out, "# energy: {:.12}", r.energy);
            outln!(out, "# gradient max-norm: {:.3e}", r.gradient_max_norm);
            outln!(out, "# iterations: {}", r.iterations);
            outln!(out, "# converged: {}", r.converged);
            outln!(out, "# min distance: {:.12}", min_distance(&r.config)?);
            outp!(out, "{}", r.config.to_text());
            Ok(ExitCode::SUCCESS)
        }
        Command::Compactify { file } => {
            let q = Configuration::read(&file)?;
            let before: f64 = per_particle_minus_energies(&q)?.iter().sum();
            let r = compactify(&q)?;
            let after: f64 = per_particle_minus_energies(&r.config)?.iter().sum();
            outln!(out, "# relocations: {}", r.relocations);
            outln!(out, "# slab contractions: {}", r.contractions);
            outln!(out, "# total minus-energy: {before:.12} -> {after:.12}");
            outp!(out, "{}", r.config.to_text());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_fcc(out: &mut String, r: &LatticeSumResult) {
    outln!(out, "scale: {:.10}", r.scale);
    outln!(out, "cutoff: {}", r.cutoff);
    outln!(out, "energy per particle: {:.10}", r.per_particle_energy);
    outln!(out, "tail bound: {:.3e}", r.tail_bound);
    // any configuration's energy per particle is at least −B
    let bound = (r.b_lower_bound() * 100.0).floor() / 100.0;
    outln!(out, "B >= {bound:.2}");
}

fn exit_for(verdict: Verdict) -> ExitCode {
    if verdict == Verdict::Pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
