//! Exp-polynomials: finite sums `Σ pᵢ(x)·e^{qᵢ(x)}` with polynomial
//! coefficients and exponents, the exact function class closed under the
//! overshear group law.
//!
//! Every exponent polynomial satisfies `q(0) = 0`. Functions `e^{q}` for
//! distinct such `q` are linearly independent over the polynomial ring, so
//! the canonical form (sorted, merged, zero coefficients dropped) decides
//! functional equality structurally.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::GaussianRational;

/// Canonical exp-polynomial: a map from exponent polynomial to nonzero
/// coefficient polynomial, ordered by the structural order on [`Poly`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    terms: BTreeMap<Poly, Poly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn one() -> Self {
        ExpPoly::from_poly(Poly::one())
    }

    /// Embeds a plain polynomial as the `e^0` term.
    pub fn from_poly(p: Poly) -> Self {
        let mut e = ExpPoly::zero();
        e.add_term(Poly::zero(), p);
        e
    }

    pub fn from_int(n: i64) -> Self {
        ExpPoly::from_poly(Poly::from_int(n))
    }

    /// The monomial `x` as an exp-polynomial.
    pub fn x() -> Self {
        ExpPoly::from_poly(Poly::x())
    }

    /// The single-term exp-polynomial `1·e^{q}`.
    ///
    /// Errors unless `q(0) = 0`, the invariant of the canonical class.
    pub fn exp_of(q: Poly) -> Result<Self> {
        if !q.constant_term().is_zero() {
            return Err(Error::ConstantTermInExponent);
        }
        let mut e = ExpPoly::zero();
        e.add_term(q, Poly::one());
        Ok(e)
    }

    /// Terms in canonical order, as (exponent, coefficient) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Poly, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Poly::zero()).is_some_and(Poly::is_one)
    }

    /// `Some(p)` when the value is the plain polynomial `p` (no genuine
    /// exponential term); zero yields `Some(0)`.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero()),
            1 => {
                let (q, p) = self.terms.iter().next().unwrap();
                q.is_zero().then(|| p.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, q: Poly, p: Poly) {
        if p.is_zero() {
            return;
        }
        debug_assert!(q.constant_term().is_zero(), "exponent must vanish at 0");
        match self.terms.entry(q) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = &*e.get() + &p;
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self.terms.iter().map(|(q, p)| (q.clone(), p.scale(c))).collect(),
        }
    }

    /// Multiplies by a plain polynomial.
    pub fn mul_poly(&self, m: &Poly) -> ExpPoly {
        if m.is_zero() {
            return ExpPoly::zero();
        }
        let mut out = ExpPoly::zero();
        for (q, p) in &self.terms {
            out.add_term(q.clone(), p * m);
        }
        out
    }

    /// Term rule `(p·e^{q})' = (p' + p·q')·e^{q}`.
    pub fn derivative(&self) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (q, p) in &self.terms {
            out.add_term(q.clone(), &p.derivative() + &(p * &q.derivative()));
        }
        out
    }

    /// Numeric value `Σ pᵢ(x)·e^{qᵢ(x)}`. Overflow yields an infinite value.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (q, p) in &self.terms {
            acc += p.eval(x) * q.eval(x).exp();
        }
        acc
    }

    /// Exact value at `x = 0`, where every `e^{qᵢ}` is one.
    pub fn eval_at_zero(&self) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for p in self.terms.values() {
            acc = &acc + &p.constant_term();
        }
        acc
    }

    /// Coefficient-wise exact division by a polynomial.
    ///
    /// Succeeds iff every coefficient polynomial is divisible by `d`;
    /// otherwise reports which term blocks the division.
    pub fn div_by_poly(&self, d: &Poly) -> Result<ExpPoly> {
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let mut out = ExpPoly::zero();
        for (q, p) in &self.terms {
            match p.div_exact(d)? {
                Some(quot) => out.add_term(q.clone(), quot),
                None => {
                    return Err(Error::NotDivisible(format!(
                        "coefficient {} of exp({}) is not divisible by {}",
                        p, q, d
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Checks the canonical-form invariants; used by validator walks in tests.
    pub fn validate(&self) -> Result<()> {
        for (q, p) in &self.terms {
            if !q.constant_term().is_zero() {
                return Err(Error::ConstantTermInExponent);
            }
            if p.is_zero() {
                return Err(Error::Precondition(
                    "zero coefficient polynomial stored in canonical form".into(),
                ));
            }
        }
        Ok(())
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (q, p) in &rhs.terms {
            out.add_term(q.clone(), p.clone());
        }
        out
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (q, p) in &rhs.terms {
            out.add_term(q.clone(), -p);
        }
        out
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (qa, pa) in &self.terms {
            for (qb, pb) in &rhs.terms {
                // exponents add termwise; q(0) = 0 is preserved under addition
                out.add_term(qa + qb, pa * pb);
            }
        }
        out
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(q, p)| (q.clone(), -p)).collect() }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExpPoly {
            type Output = ExpPoly;
            fn $method(self, rhs: ExpPoly) -> ExpPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $method(self, rhs: &ExpPoly) -> ExpPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
}

impl fmt::Display for ExpPoly {
    /// Deterministic rendering in the expression grammar: the polynomial part
    /// first, then `(p)*exp(q)` terms in canonical exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (q, p) in &self.terms {
            if q.is_zero() {
                out.push_str(&p.to_string_var('x'));
                continue;
            }
            let chunk = if p.is_one() {
                format!("exp({})", q.to_string_var('x'))
            } else {
                format!("({})*exp({})", p.to_string_var('x'), q.to_string_var('x'))
            };
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&chunk);
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
