//! Numeric scalar abstraction for density-dependent thresholds.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// A field-like scalar used by threshold arithmetic.
///
/// Exact rationals give exact ceilings; floats are provided for fast sweeps.
pub trait Scalar: Num + Signed + Copy + PartialOrd + Debug + Display {
    fn from_ratio(r: Ratio<i64>) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_ratio(Ratio::from_integer(n as i64))
    }

    /// Smallest integer not below `self`.
    fn ceil_i64(self) -> i64;

    fn to_f64(self) -> f64;

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn from_ratio(r: Ratio<i64>) -> Self {
        *r.numer() as f64 / *r.denom() as f64
    }

    fn ceil_i64(self) -> i64 {
        self.ceil() as i64
    }

    fn to_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    fn from_ratio(r: Ratio<i64>) -> Self {
        (*r.numer() as f64 / *r.denom() as f64) as f32
    }

    fn ceil_i64(self) -> i64 {
        self.ceil() as i64
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(r: Ratio<i64>) -> Self {
        r
    }

    fn ceil_i64(self) -> i64 {
        let (q, r) = self.numer().div_mod_floor(self.denom());
        if r == 0 {
            q
        } else {
            q + 1
        }
    }

    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

/// Parse a rational literal such as `3/5`, `0.6`, `1/16` or `2`.
pub fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Ratio::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().ok()? };
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let f: i64 = frac.parse().ok()?;
        let mag = int_part.abs().checked_mul(den)?.checked_add(f)?;
        return Some(Ratio::new(if neg { -mag } else { mag }, den));
    }
    s.parse::<i64>().ok().map(Ratio::from_integer)
}

/// Render a rational in the `p/q` form accepted by [`parse_ratio`].
pub fn format_ratio(r: &Ratio<i64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction() {
        assert_eq!(parse_ratio("0.6"), Some(Ratio::new(3, 5)));
        assert_eq!(parse_ratio("1/16"), Some(Ratio::new(1, 16)));
        assert_eq!(parse_ratio("-0.25"), Some(Ratio::new(-1, 4)));
        assert_eq!(parse_ratio("3"), Some(Ratio::from_integer(3)));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(parse_ratio("x"), None);
    }

    #[test]
    fn exact_ceiling() {
        assert_eq!(Ratio::new(7i64, 2).ceil_i64(), 4);
        assert_eq!(Ratio::new(-7i64, 2).ceil_i64(), -3);
        assert_eq!(Ratio::new(6i64, 2).ceil_i64(), 3);
        assert_eq!(2.5f64.ceil_i64(), 3);
    }

    #[test]
    fn round_trip_format() {
        for s in ["3/5", "1/16", "7"] {
            let r = parse_ratio(s).unwrap();
            assert_eq!(format_ratio(&r), s);
        }
    }
}
