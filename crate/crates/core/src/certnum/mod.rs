//! Certified numerics: exact rationals, outward-rounded intervals, the
//! number field ℚ(s), and the sign-certification engine.

pub mod certify;
pub mod consts;
pub mod interval;
pub mod numfield;
pub mod rational;

pub use certify::{certify_sign, certify_sign_2d, certify_sign_box, SignCertificate, Target, Verdict, DEFAULT_MAX_DEPTH};
pub use consts::{pi_enclosure, s_enclosure, tangent_slope, Enclosures};
pub use interval::{interval_arith, ArithOp, Interval};
pub use numfield::NumberFieldElem;
pub use rational::{dec, int, parse_rational, ratio, Rational};
