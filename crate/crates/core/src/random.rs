//! Seedable random generators for symbolic values, words, matrices, and
//! surface points, shared by the test suites and the CLI's `--seed` modes.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use crate::amalgam::{FactorTag, Letter, Word};
use crate::exppoly::ExpPoly;
use crate::nilpotent::{NilMatrix, Rational, UnipotentMatrix};
use crate::osgroup::{O1Element, OsWord};
use crate::poly::Poly;
use crate::scalar::GaussianRational;
use crate::surface::{Surface, SurfacePoint};

/// Size knobs for random symbolic values.
#[derive(Clone, Copy, Debug)]
pub struct SymbolicSize {
    /// Maximum number of exp terms (at least 1 attempted).
    pub max_terms: usize,
    /// Maximum degree of coefficient polynomials.
    pub coeff_degree: usize,
    /// Maximum degree of exponent polynomials.
    pub exp_degree: usize,
    /// Numerators drawn from `-bound..=bound`, denominators from `1..=bound`.
    pub bound: i64,
}

impl Default for SymbolicSize {
    fn default() -> Self {
        SymbolicSize { max_terms: 2, coeff_degree: 2, exp_degree: 2, bound: 2 }
    }
}

pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    BigRational::new(
        rng.random_range(-bound..=bound).into(),
        rng.random_range(1..=bound.max(1)).into(),
    )
}

pub fn gaussian_rational<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    // half the draws stay real to keep values printable-small
    let im = if rng.random_bool(0.5) {
        BigRational::from_integer(0.into())
    } else {
        rational(rng, bound)
    };
    GaussianRational::new(rational(rng, bound), im)
}

/// Random polynomial of degree <= `degree` (possibly zero).
pub fn poly<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> Poly {
    let coeffs = (0..=degree).map(|_| gaussian_rational(rng, bound)).collect();
    Poly::from_coeffs(coeffs)
}

pub fn nonzero_poly<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> Poly {
    loop {
        let p = poly(rng, degree, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random exponent polynomial with zero constant term.
pub fn exponent_poly<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> Poly {
    let mut coeffs = vec![GaussianRational::zero()];
    coeffs.extend((1..=degree.max(1)).map(|_| gaussian_rational(rng, bound)));
    Poly::from_coeffs(coeffs)
}

/// Random canonical exp-polynomial within the given size bounds.
pub fn exppoly<R: Rng>(rng: &mut R, size: SymbolicSize) -> ExpPoly {
    let mut acc = ExpPoly::zero();
    let terms = rng.random_range(1..=size.max_terms.max(1));
    for _ in 0..terms {
        let coeff = poly(rng, size.coeff_degree, size.bound);
        let q = if rng.random_bool(0.5) {
            Poly::zero()
        } else {
            exponent_poly(rng, size.exp_degree, size.bound)
        };
        acc = &acc + &ExpPoly::exp_of(q).expect("exponent vanishes at 0").mul_poly(&coeff);
    }
    acc
}

pub fn nonzero_exppoly<R: Rng>(rng: &mut R, size: SymbolicSize) -> ExpPoly {
    loop {
        let e = exppoly(rng, size);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random non-identity overshear element with small data.
pub fn o1_element<R: Rng>(rng: &mut R, size: SymbolicSize) -> O1Element {
    loop {
        let f = poly(rng, 1, 1);
        let g = exppoly(rng, SymbolicSize { max_terms: 1, ..size });
        let el = O1Element::new(f, g);
        if !crate::amalgam::FactorElement::is_identity(&el) {
            return el;
        }
    }
}

/// Random word of exactly `len` letters alternating between the factors,
/// hence reduced; for even `len` it is also cyclically reduced.
pub fn alternating_word<R: Rng>(rng: &mut R, len: usize, size: SymbolicSize) -> OsWord {
    let mut tag = if rng.random_bool(0.5) { FactorTag::First } else { FactorTag::Second };
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        letters.push(Letter::new(tag, o1_element(rng, size)));
        tag = tag.other();
    }
    Word::from_letters(letters)
}

/// Random word of `len` letters with independently chosen tags (may reduce).
pub fn raw_word<R: Rng>(rng: &mut R, len: usize, size: SymbolicSize) -> OsWord {
    let letters = (0..len)
        .map(|_| {
            let tag =
                if rng.random_bool(0.5) { FactorTag::First } else { FactorTag::Second };
            Letter::new(tag, o1_element(rng, size))
        })
        .collect();
    Word::from_letters(letters)
}

pub fn complex_in_box<R: Rng>(rng: &mut R, re: f64, im: f64) -> Complex64 {
    Complex64::new(rng.random_range(-re..=re), rng.random_range(-im..=im))
}

/// Random on-surface point with `|x|` bounded away from zero.
pub fn surface_point<R: Rng>(rng: &mut R, s: &Surface) -> SurfacePoint {
    let mut x = complex_in_box(rng, 1.0, 1.0);
    while x.norm() < 0.3 {
        x = complex_in_box(rng, 1.0, 1.0);
    }
    let z = complex_in_box(rng, 1.0, 1.0);
    s.point_from_xz(x, z)
}

/// Random strictly upper-triangular matrix with denominator-bounded entries.
pub fn nil_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> NilMatrix {
    let mut m = NilMatrix::zero(n).expect("dimension in range");
    for i in 0..n {
        for j in i + 1..n {
            let e = NilMatrix::elementary(n, i, j, rational_nil(rng, bound)).unwrap();
            m = m.add(&e);
        }
    }
    m
}

fn rational_nil<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(
        rng.random_range(-bound..=bound).into(),
        rng.random_range(1..=bound.max(1)).into(),
    )
}

/// Random unipotent matrix with denominator-bounded entries.
pub fn unipotent_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> UnipotentMatrix {
    let mut a = vec![vec![Rational::from_integer(0.into()); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Rational::from_integer(1.into());
        for j in i + 1..n {
            row[j] = rational_nil(rng, bound);
        }
    }
    UnipotentMatrix::new(a).expect("constructed shape is unipotent")
}
