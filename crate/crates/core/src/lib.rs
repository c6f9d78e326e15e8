//! Certified numerics for the stability constant of the Lennard-Jones
//! potential Φ(r) = r⁻¹² − 2r⁻⁶.
//!
//! The [`verifier`] module checks each step of an upper bound B < 14.316
//! with exact rationals, outward-rounded intervals and Sturm sequences.
//! [`cluster`] holds the floating-point side: configuration energies, the
//! FCC lattice sum behind B ≥ 8.61, and a local optimizer.

pub mod certnum;
pub mod cluster;
pub mod error;
pub mod geometry;
pub mod integrals;
pub mod polyalg;
pub mod potential;
pub mod verifier;

pub use certnum::{
    certify_sign, certify_sign_2d, Enclosures, Interval, NumberFieldElem, Rational, SignCertificate, Target, Verdict,
};
pub use cluster::{Configuration, LatticeSumResult, MinimizeParams};
pub use error::{Error, Result};
pub use geometry::BallPair;
pub use integrals::theta_moment;
pub use polyalg::Polynomial;
pub use verifier::{run, run_all, Certificate, PropId, ProofConstants, Report, VerifyConfig};
