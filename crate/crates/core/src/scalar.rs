//! Gaussian rationals: the exact scalar field for all symbolic coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact complex number `re + im*i` with rational real and imaginary parts.
///
/// Rationals are kept in lowest terms with positive denominator (inherited
/// from [`BigRational`]), so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational { re: BigRational::from_integer(n.into()), im: BigRational::zero() }
    }

    /// Exact `num/den`. Panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(num.into(), den.into()),
            im: BigRational::zero(),
        }
    }

    /// Exact `a/b + (c/d)i`. Panics on zero denominators.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational {
            re: BigRational::new(a.into(), b.into()),
            im: BigRational::new(c.into(), d.into()),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(GaussianRational { re: &self.re / &norm, im: -&self.im / &norm })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero GaussianRational");
        self * &inv
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

/// Structural order (real part first, then imaginary part).
///
/// This is not an order compatible with the field operations; it exists to
/// give canonical forms a deterministic term ordering.
impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Prints `a`, or `a+bi` / `a-bi` when the imaginary part is nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a signed big integer out of a decimal string.
pub(crate) fn bigint_from_str(s: &str) -> Option<BigInt> {
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_are_exact() {
        let a = GaussianRational::from_parts(1, 2, 1, 3); // 1/2 + 1/3 i
        let b = GaussianRational::from_parts(-2, 3, 1, 1); // -2/3 + i
        let prod = &a * &b;
        // (1/2 + 1/3 i)(-2/3 + i) = -1/3 - 1/3 + (1/2 - 2/9) i
        assert_eq!(prod, GaussianRational::from_parts(-2, 3, 5, 18));
        let back = &prod / &b;
        assert_eq!(back, a);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(GaussianRational::zero().inv(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::from_parts(1, 2, 1, 3).to_string(), "1/2+1/3i");
        assert_eq!(GaussianRational::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(GaussianRational::from_parts(0, 1, -1, 1).to_string(), "0-1i");
        assert_eq!(GaussianRational::from_int(7).to_string(), "7");
    }

    #[test]
    fn structural_order_is_re_then_im() {
        let a = GaussianRational::from_parts(0, 1, 5, 1);
        let b = GaussianRational::from_int(1);
        assert!(a < b);
    }
}
