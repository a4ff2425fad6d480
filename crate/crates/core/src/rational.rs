//! Exact rational helpers shared across the crate.
//!
//! Every certificate value is a [`Rational`]; on the wire rationals are
//! `"p/q"` strings (integers print without a denominator) and big integers
//! are decimal strings.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal '{0}'")]
    Invalid(String),
    #[error("zero denominator in '{0}'")]
    ZeroDenominator(String),
}

/// Parses `"p/q"`, `"p"`, a finite decimal such as `"1.5"` or `"-0.25"`, or
/// a decimal with an exponent such as `"1e-9"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(text.to_string());
    if let Some((mantissa, exp)) = s.split_once(['e', 'E']) {
        let m = parse_rational(mantissa).map_err(|_| invalid())?;
        let e: i32 = exp.parse().map_err(|_| invalid())?;
        let scale = Rational::from_integer(num_traits::pow(
            BigInt::from(10u32),
            e.unsigned_abs() as usize,
        ));
        return Ok(if e >= 0 { m * scale } else { m / scale });
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| invalid())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| invalid())?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let int_val = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_digits).map_err(|_| invalid())?
        };
        let frac_val = BigInt::from_str(frac_part).map_err(|_| invalid())?;
        let scale = num_traits::pow(BigInt::from(10u32), frac_part.len());
        let magnitude = Rational::from_integer(int_val) + Rational::new(frac_val, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| invalid())
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// `count / total` as an exact rational; `0/0` is reported as 0.
pub fn ratio(count: &BigUint, total: &BigUint) -> Rational {
    if total.is_zero() {
        return Rational::zero();
    }
    Rational::new(BigInt::from(count.clone()), BigInt::from(total.clone()))
}

pub fn pow2(k: u64) -> BigUint {
    BigUint::one() << k
}

/// `2^{-k}` as a rational.
pub fn inv_pow2(k: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(pow2(k)))
}

/// Approximate value for human-readable annotations only.
pub fn approx(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Ratios of huge integers: scale both down before converting.
        let n_bits = q.numer().bits() as i64;
        let d_bits = q.denom().bits() as i64;
        let shift = (n_bits.max(d_bits) - 900).max(0) as usize;
        let n = (q.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::MAX);
        let v = if d == 0.0 { f64::INFINITY } else { n / d };
        if q.is_negative() {
            -v
        } else {
            v
        }
    })
}

/// Rational approximation of a float with a power-of-ten denominator.
pub fn from_f64_decimal(x: f64, digits: u32) -> Rational {
    let scale = 10i64.pow(digits);
    let n = (x * scale as f64).round() as i64;
    rat(n, scale)
}

pub fn min_rational<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    values.into_iter().min().cloned()
}

/// Serde adapter: rational as a `"p/q"` string.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

pub mod serde_rational_vec {
    use super::{parse_rational, Rational};
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&q.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(D::Error::custom))
            .collect()
    }
}

pub mod serde_rational_opt {
    use super::{parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&q.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(D::Error::custom))
            .transpose()
    }
}

pub mod serde_rational_matrix {
    use super::Rational;
    use serde::{ser::SerializeSeq, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let text: Vec<String> = row.iter().map(|q| q.to_string()).collect();
            seq.serialize_element(&text)?;
        }
        seq.end()
    }
}

/// Serde adapter: big unsigned integer as a decimal string.
pub mod serde_biguint {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::from_str(text.trim()).map_err(D::Error::custom)
    }
}

pub mod serde_biguint_vec {
    use num_bigint::BigUint;
    use serde::{ser::SerializeSeq, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for n in v {
            seq.serialize_element(&n.to_str_radix(10))?;
        }
        seq.end()
    }
}
