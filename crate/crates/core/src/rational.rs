use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational scalar used for coordinates and function values.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole_val: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(whole_val * &scale + frac_val, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let r: Rational = t.parse().map_err(|_| bad())?;
    Ok(r)
}

/// Lossy conversion for display and reporting.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn sign(dim: usize) -> i64 {
    if dim % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn signed(dim: usize, q: &Rational) -> Rational {
    if dim % 2 == 0 {
        q.clone()
    } else {
        -q.clone()
    }
}

pub(crate) fn min_of(values: &[Rational]) -> &Rational {
    values.iter().min().expect("non-empty affine data")
}

pub(crate) fn max_of(values: &[Rational]) -> &Rational {
    values.iter().max().expect("non-empty affine data")
}

pub(crate) fn sum<I: IntoIterator<Item = Rational>>(it: I) -> Rational {
    it.into_iter().fold(Rational::zero(), |acc, x| acc + x)
}
