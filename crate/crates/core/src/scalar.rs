//! Scalar abstraction shared by the linear program, the dense quantum
//! simulation and the empirical models.
//!
//! Two families implement [`Scalar`]: exact arbitrary-precision rationals,
//! for which every comparison is exact, and IEEE floats, which compare
//! against a small absolute tolerance.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// True when arithmetic is exact and no tolerance applies.
    const EXACT: bool;

    /// Absolute tolerance below which a value counts as zero.
    fn tolerance() -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact value if representable; floats convert through their binary
    /// expansion.
    fn to_rational(&self) -> Option<Rational>;

    /// `(cos, sin)` of `2πk/d` when representable in this scalar type.
    fn unit_root(k: u64, d: u64) -> Option<(Self, Self)>;

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    fn is_strictly_positive(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_strictly_negative(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        Rational::zero()
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn unit_root(k: u64, d: u64) -> Option<(Self, Self)> {
        // Only the fourth roots of unity have rational coordinates.
        let k = k % d;
        if (4 * k) % d != 0 {
            return None;
        }
        let (c, s) = match (4 * k) / d {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        Some((Rational::from_integer(c.into()), Rational::from_integer(s.into())))
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn tolerance() -> Self {
                $tol
            }

            fn from_rational(r: &Rational) -> Self {
                ToPrimitive::to_f64(r).unwrap_or(f64::NAN) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn to_rational(&self) -> Option<Rational> {
                Rational::from_float(*self)
            }

            fn unit_root(k: u64, d: u64) -> Option<(Self, Self)> {
                let k = k % d;
                // Exact quadrant values avoid sin(pi) = 1.2e-16 dust.
                if (4 * k) % d == 0 {
                    return Some(match (4 * k) / d {
                        0 => (1.0, 0.0),
                        1 => (0.0, 1.0),
                        2 => (-1.0, 0.0),
                        _ => (0.0, -1.0),
                    });
                }
                let angle = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64);
                Some((angle.cos() as $t, angle.sin() as $t))
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-5);

/// Parse `"3/8"`, `"-2"`, or a decimal such as `"0.125"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().ok()?;
        let magnitude = Rational::new(int_part.abs() * &scale + frac_part, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    text.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Format a rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_from_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from_usize(n).expect("usize fits BigInt"))
}

/// Smallest integer not below `r`.
pub fn ceil_to_u64(r: &Rational) -> u64 {
    r.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// Largest integer not above `r`.
pub fn floor_to_u64(r: &Rational) -> u64 {
    r.floor().to_integer().to_u64().unwrap_or(0)
}

/// Best rational approximation with denominator at most `max_den`, by
/// continued fractions.
pub fn rationalize(x: f64, max_den: u64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let negative = x < 0.0;
    let mut value = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let a = value.floor();
        if a > 1e18 {
            break;
        }
        let a_int = a as u128;
        let p2 = a_int * p1 + p0;
        let q2 = a_int * q1 + q0;
        if q2 > max_den as u128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = value - a;
        if frac < 1e-15 {
            break;
        }
        value = 1.0 / frac;
    }
    if q1 == 0 {
        return Rational::zero();
    }
    let r = Rational::new(BigInt::from(p1), BigInt::from(q1));
    if negative {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("3/8"), Some(rational(3, 8)));
        assert_eq!(parse_rational("-2"), Some(rational(-2, 1)));
        assert_eq!(parse_rational("0.125"), Some(rational(1, 8)));
        assert_eq!(parse_rational("-0.5"), Some(rational(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn formats_rationals() {
        assert_eq!(format_rational(&rational(6, 8)), "3/4");
        assert_eq!(format_rational(&rational(4, 2)), "2");
    }

    #[test]
    fn exact_unit_roots_only_for_quarter_turns() {
        assert_eq!(
            <Rational as Scalar>::unit_root(1, 2),
            Some((rational(-1, 1), rational(0, 1)))
        );
        assert_eq!(
            <Rational as Scalar>::unit_root(1, 4),
            Some((rational(0, 1), rational(1, 1)))
        );
        assert!(<Rational as Scalar>::unit_root(1, 3).is_none());
        let (c, s) = <f64 as Scalar>::unit_root(1, 3).unwrap();
        assert!((c + 0.5).abs() < 1e-15 && (s - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(0.375, 1 << 20), rational(3, 8));
        assert_eq!(rationalize(1.0 / 3.0, 1 << 20), rational(1, 3));
        assert_eq!(rationalize(-0.25, 16), rational(-1, 4));
    }
}
