//! Exact rationals and the helpers the rest of the crate uses to build,
//! round, and render them.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses a decimal literal such as `"0.7224"`, `"-8.343"`, `"1e-5"` or a
/// fraction `"25/11"` into the exact rational it denotes.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidLiteral(text.to_string());
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{whole}{frac}");
    let numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
    let scale = exponent - frac.len() as i32;
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(BigInt::from(10).pow(scale as u32));
    } else {
        value /= Rational::from_integer(BigInt::from(10).pow((-scale) as u32));
    }
    Ok(if negative { -value } else { value })
}

/// Shorthand for literals that are known to be valid at compile time.
pub fn dec(text: &str) -> Rational {
    parse_rational(text).expect("valid decimal literal")
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // to_f64 gives up on huge numerators/denominators; shift first.
        let shift = q.numer().bits().max(q.denom().bits()) as i64 - 60;
        let n = q.numer() >> shift.max(0);
        let d = q.denom() >> shift.max(0);
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

pub fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(BigInt::one() << k as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// Rounds `q` to a dyadic rational with roughly `bits` significant bits,
/// in the requested direction. Values that already fit are returned as is.
pub fn round_dyadic(q: &Rational, bits: u64, dir: Round) -> Rational {
    if q.is_zero() {
        return q.clone();
    }
    let nb = q.numer().bits();
    let db = q.denom().bits();
    if nb + db <= 2 * bits {
        return q.clone();
    }
    // q * 2^k has about `bits` bits in its integer part.
    let k = bits as i64 - (nb as i64 - db as i64);
    let (num, den) = if k >= 0 {
        (q.numer() << k as usize, q.denom().clone())
    } else {
        (q.numer().clone(), q.denom() << (-k) as usize)
    };
    let m = match dir {
        Round::Down => num.div_floor(&den),
        Round::Up => {
            let (d, r) = num.div_mod_floor(&den);
            if r.is_zero() {
                d
            } else {
                d + 1
            }
        }
    };
    Rational::from_integer(m) * pow2(-k)
}

/// Decimal rendering with `sig` significant digits, rounded in the given
/// direction so that lower bounds stay lower and upper bounds stay upper.
pub fn to_decimal(q: &Rational, sig: usize, dir: Round) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let abs = q.abs();
    // Rounding direction flips for the magnitude of a negative number.
    let mag_dir = match (negative, dir) {
        (false, d) => d,
        (true, Round::Down) => Round::Up,
        (true, Round::Up) => Round::Down,
    };
    // exponent e with 10^e <= |q| < 10^(e+1)
    let mut e = (abs.numer().to_string().len() as i64) - (abs.denom().to_string().len() as i64);
    let ten = Rational::from_integer(BigInt::from(10));
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            ten.pow(k as i32)
        } else {
            Rational::one() / ten.pow((-k) as i32)
        }
    };
    while abs < pow10(e) {
        e -= 1;
    }
    while abs >= pow10(e + 1) {
        e += 1;
    }
    let scaled = &abs * pow10(sig as i64 - 1 - e);
    let mut m = match mag_dir {
        Round::Down => scaled.floor().to_integer(),
        Round::Up => scaled.ceil().to_integer(),
    };
    if m.to_string().len() > sig {
        m /= 10;
        e += 1;
    }
    let digits = m.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-5..=11).contains(&e) {
        if e >= 0 {
            let point = (e + 1) as usize;
            let (int_part, frac_part) = if point >= digits.len() {
                (format!("{}{}", digits, "0".repeat(point - digits.len())), String::new())
            } else {
                (digits[..point].to_string(), digits[point..].to_string())
            };
            out.push_str(&int_part);
            let frac = frac_part.trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat((-e - 1) as usize));
            out.push_str(digits.trim_end_matches('0'));
        }
    } else {
        out.push_str(&digits[..1]);
        let rest = digits[1..].trim_end_matches('0');
        if !rest.is_empty() {
            out.push('.');
            out.push_str(rest);
        }
        out.push_str(&format!("e{e}"));
    }
    out
}

pub fn sign(q: &Rational) -> Ordering {
    match q.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}
