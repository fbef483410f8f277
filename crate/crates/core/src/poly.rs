//! Dense univariate polynomials over the Gaussian rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// A univariate polynomial with exact [`GaussianRational`] coefficients.
///
/// Coefficients are stored densely, index = power of the variable; the
/// leading coefficient is nonzero unless the polynomial is zero (empty
/// coefficient vector).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(GaussianRational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::monomial(GaussianRational::one(), 1)
    }

    pub fn constant(c: GaussianRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(GaussianRational::from_int(n))
    }

    /// `c * x^power`.
    pub fn monomial(c: GaussianRational, power: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); power + 1];
        coeffs[power] = c;
        Poly { coeffs }
    }

    /// Builds a polynomial from raw coefficients (index = power), trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience for integer coefficient lists, index = power.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for degree <= 0.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(0)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| &GaussianRational::from_int(k as i64) * c)
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Numeric evaluation by Horner's scheme.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc
    }

    /// Exact evaluation at a Gaussian rational point.
    pub fn eval_exact(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Long division: `self = q*d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() * &lead_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&factor * dc);
            }
            quot[k] = factor;
            while rem.last().is_some_and(GaussianRational::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact quotient, or `None` if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(d)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Normalizes the leading coefficient to one.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    ///
    /// `gcd(p, 0)` is the monic normalization of `p`; `gcd(0, 0)` is zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Renders with a caller-chosen variable letter.
    pub fn to_string_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let chunk = monomial_chunk(c, k, var);
            if out.is_empty() {
                out.push_str(&chunk);
            } else if chunk.starts_with('-') && c.im().is_zero() {
                // pure real negative coefficient: the leading '-' doubles as
                // the separator
                out.push_str(&chunk);
            } else {
                out.push('+');
                out.push_str(&chunk);
            }
        }
        out
    }
}

/// One printed monomial, e.g. `-3/2*x^2`, `x`, `0+1i*x`.
fn monomial_chunk(c: &GaussianRational, power: usize, var: char) -> String {
    let var_part = match power {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{power}"),
    };
    if power == 0 {
        return c.to_string();
    }
    if c.is_one() {
        return var_part;
    }
    if (-c).is_one() {
        return format!("-{var_part}");
    }
    format!("{c}*{var_part}")
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Canonical structural order: by degree, then coefficients from the constant
/// term upward (each compared real part first). Used for deterministic term
/// ordering in canonical forms.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var('x'))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
