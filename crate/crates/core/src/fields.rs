//! Symbolic overshear and shear vector fields, exact Lie brackets, and
//! their flows in closed form, exact form, and by numeric integration.
//!
//! An overshear field with data `(f, g)` has the coordinate form
//!
//! ```text
//! A(x,z)·∂y + B(x,z)·∂z,   A = p'(z)·(z·f(x) + g(x)),   B = x·(z·f(x) + g(x))
//! ```
//!
//! and a shear field is the `f = 0` case. The class of fields with no ∂x
//! component and no y-dependence is closed under the Lie bracket, which this
//! module computes exactly in the ring of z-polynomials with exp-polynomial
//! coefficients.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::linalg;
use crate::osgroup::{O1Element, X_LIMIT_THRESHOLD};
use crate::poly::Poly;
use crate::scalar::GaussianRational;
use crate::surface::{Surface, SurfacePoint};

/// Symbolic field data `(f, g)`; the field is a shear when `f = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OvershearField {
    f: ExpPoly,
    g: ExpPoly,
}

impl OvershearField {
    pub fn overshear(f: ExpPoly, g: ExpPoly) -> Self {
        OvershearField { f, g }
    }

    pub fn shear(g: ExpPoly) -> Self {
        OvershearField { f: ExpPoly::zero(), g }
    }

    pub fn zero() -> Self {
        OvershearField { f: ExpPoly::zero(), g: ExpPoly::zero() }
    }

    pub fn f(&self) -> &ExpPoly {
        &self.f
    }

    pub fn g(&self) -> &ExpPoly {
        &self.g
    }

    pub fn is_shear(&self) -> bool {
        self.f.is_zero()
    }
}

/// Polynomial in `z` whose coefficients are exp-polynomials in `x`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    coeffs: Vec<ExpPoly>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<ExpPoly>) -> Self {
        while coeffs.last().is_some_and(ExpPoly::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    /// Lifts a polynomial in `z` with scalar coefficients.
    pub fn from_scalar_poly(p: &Poly) -> Self {
        ZPoly::from_coeffs(
            p.coeffs()
                .iter()
                .map(|c| ExpPoly::from_poly(Poly::constant(c.clone())))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[ExpPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn coeff(&self, k: usize) -> ExpPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(ExpPoly::zero)
    }

    pub fn add(&self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![ExpPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        ZPoly::from_coeffs(coeffs)
    }

    /// Derivative with respect to `z`.
    pub fn dz(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&GaussianRational::from_int(k as i64)))
                .collect(),
        )
    }

    /// Multiplies every coefficient by the monomial `x`.
    pub fn mul_x(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| c.mul_poly(&Poly::x())).collect() }
    }

    pub fn eval(&self, x: Complex64, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.eval(x);
        }
        acc
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A field `A·∂y + B·∂z` with `A`, `B` free of `y` and of `∂x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordField {
    /// Coefficient of `∂y`.
    pub a: ZPoly,
    /// Coefficient of `∂z`.
    pub b: ZPoly,
}

impl CoordField {
    pub fn zero() -> Self {
        CoordField { a: ZPoly::zero(), b: ZPoly::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Multiplies both components by the function `x`.
    pub fn mul_x(&self) -> CoordField {
        CoordField { a: self.a.mul_x(), b: self.b.mul_x() }
    }

    pub fn add(&self, rhs: &CoordField) -> CoordField {
        CoordField { a: self.a.add(&rhs.a), b: self.b.add(&rhs.b) }
    }

    pub fn neg(&self) -> CoordField {
        CoordField { a: self.a.neg(), b: self.b.neg() }
    }

    /// Numeric value `(0, A(x,z), B(x,z))` at a point.
    pub fn eval(&self, x: Complex64, z: Complex64) -> (Complex64, Complex64) {
        (self.a.eval(x, z), self.b.eval(x, z))
    }
}

impl fmt::Display for CoordField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] dy + [{}] dz", self.a, self.b)
    }
}

/// Coordinate form of a symbolic field on the given surface.
pub fn to_coord(s: &Surface, v: &OvershearField) -> CoordField {
    // z·f(x) + g(x) as a z-polynomial
    let u = ZPoly::from_coeffs(vec![v.g.clone(), v.f.clone()]);
    let p_prime = ZPoly::from_scalar_poly(s.p_prime());
    CoordField { a: p_prime.mul(&u), b: u.mul_x() }
}

/// Lie bracket `[V, W] = V∘W - W∘V` of two coordinate fields. Since neither
/// component depends on `y`, only the `∂z` parts differentiate:
///
/// ```text
/// [V,W] = (B_V·∂_z A_W - B_W·∂_z A_V)·∂y + (B_V·∂_z B_W - B_W·∂_z B_V)·∂z
/// ```
pub fn bracket(v: &CoordField, w: &CoordField) -> CoordField {
    CoordField {
        a: v.b.mul(&w.a.dz()).sub(&w.b.mul(&v.a.dz())),
        b: v.b.mul(&w.b.dz()).sub(&w.b.mul(&v.b.dz())),
    }
}

/// Checks exactly that `[OF_{f,g}, OF_{h,k}] = x·SF_{gh-kf}` in coordinates.
pub fn verify_of_bracket_identity(
    s: &Surface,
    f: &ExpPoly,
    g: &ExpPoly,
    h: &ExpPoly,
    k: &ExpPoly,
) -> bool {
    let lhs = bracket(
        &to_coord(s, &OvershearField::overshear(f.clone(), g.clone())),
        &to_coord(s, &OvershearField::overshear(h.clone(), k.clone())),
    );
    let w = &(g * h) - &(k * f);
    let rhs = to_coord(s, &OvershearField::shear(w)).mul_x();
    lhs == rhs
}

/// Outcome of comparing a computed bracket against a closed-form side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignVerdict {
    Match,
    SignFlipped,
    Mismatch,
}

impl fmt::Display for SignVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignVerdict::Match => "match",
            SignVerdict::SignFlipped => "sign-flipped",
            SignVerdict::Mismatch => "mismatch",
        };
        write!(f, "{s}")
    }
}

/// Compares `[SF_h, OF_{f,g}]` against `x·SF_{f·h}`, reporting whether they
/// agree, agree up to a global sign, or differ. The sign is re-derived from
/// the bracket itself rather than assumed.
pub fn verify_sf_of_identity(
    s: &Surface,
    h: &ExpPoly,
    f: &ExpPoly,
    g: &ExpPoly,
) -> SignVerdict {
    let lhs = bracket(
        &to_coord(s, &OvershearField::shear(h.clone())),
        &to_coord(s, &OvershearField::overshear(f.clone(), g.clone())),
    );
    let rhs = to_coord(s, &OvershearField::shear(f * h)).mul_x();
    if lhs == rhs {
        SignVerdict::Match
    } else if lhs == rhs.neg() {
        SignVerdict::SignFlipped
    } else {
        SignVerdict::Mismatch
    }
}

/// `φ₁(u) = (e^u - 1)/u`, by an 8-term series below `|u| = 1e-4` to avoid
/// the cancellation at the removable singularity.
fn phi1(u: Complex64) -> Complex64 {
    if u.norm() < 1e-4 {
        // 1 + u/2 + u²/6 + ... + u⁷/8!
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 1..8u32 {
            term = term * u / ((k + 1) as f64);
            acc += term;
        }
        acc
    } else {
        (u.exp() - 1.0) / u
    }
}

/// Time-`t` flow of the field in closed form:
/// `z' = e^{u}·z + x·g(x)·t·φ₁(u)` with `u = x·f(x)·t`, and the y-update of
/// the defining formula with the same small-`x` limit handling as the group
/// action.
pub fn flow_closed_form(
    s: &Surface,
    v: &OvershearField,
    t: f64,
    q: &SurfacePoint,
) -> SurfacePoint {
    let x = q.x;
    let cf = v.f.eval(x);
    let cg = v.g.eval(x);
    let u = x * cf * t;
    let z2 = u.exp() * q.z + x * cg * t * phi1(u);
    let y2 = if x.norm() >= X_LIMIT_THRESHOLD {
        q.y + (s.p().eval(z2) - s.p().eval(q.z)) / x
    } else {
        let f0 = v.f.eval(Complex64::new(0.0, 0.0));
        let g0 = v.g.eval(Complex64::new(0.0, 0.0));
        q.y + s.p_prime().eval(q.z) * (q.z * f0 + g0) * t
    };
    SurfacePoint { x, y: y2, z: z2 }
}

/// Exact group element of the time-`t` flow, for rational `t`.
///
/// Exists when `f = 0` (the shear flow `(0, t·g)`) or when `g` is
/// coefficient-wise divisible by `f`: with `h = g/f` the z-offset is
/// `h·(e^{x·f·t} - 1)`, an exp-polynomial. Otherwise the flow leaves the
/// symbolic class and [`Error::NotDivisible`] signals the numeric fallback.
pub fn flow_symbolic(f: &Poly, g: &ExpPoly, t: &GaussianRational) -> Result<O1Element> {
    if f.is_zero() {
        return Ok(O1Element::shear(g.scale(t)));
    }
    let h = g.div_by_poly(f)?;
    let ft = f.scale(t);
    let exp_xft = ExpPoly::exp_of(ft.shift_up(1)).expect("x·f·t vanishes at 0");
    let zoff = &h * &(&exp_xft - &ExpPoly::one());
    O1Element::from_z_offset(ft, zoff)
}

/// Classical fourth-order Runge-Kutta integration of the flow ODE on the
/// `(y, z)` components; `x` is constant along the field.
pub fn flow_numeric(
    s: &Surface,
    v: &OvershearField,
    q: &SurfacePoint,
    t: f64,
    steps: usize,
) -> SurfacePoint {
    assert!(steps >= 1, "steps must be >= 1");
    let x = q.x;
    let cf = v.f.eval(x);
    let cg = v.g.eval(x);
    let deriv = |z: Complex64| -> (Complex64, Complex64) {
        let w = z * cf + cg;
        (s.p_prime().eval(z) * w, x * w)
    };
    let h = t / steps as f64;
    let mut y = q.y;
    let mut z = q.z;
    for _ in 0..steps {
        let (ky1, kz1) = deriv(z);
        let (ky2, kz2) = deriv(z + kz1 * (h / 2.0));
        let (ky3, kz3) = deriv(z + kz2 * (h / 2.0));
        let (ky4, kz4) = deriv(z + kz3 * h);
        y += (ky1 + ky2 * 2.0 + ky3 * 2.0 + ky4) * (h / 6.0);
        z += (kz1 + kz2 * 2.0 + kz3 * 2.0 + kz4) * (h / 6.0);
    }
    SurfacePoint { x, y, z }
}

/// Finite-difference check that the flow's derivative at time zero is the
/// field: returns `‖(φ_h(q) - q)/h - V(q)‖` for `h = 1e-6`, expected `O(h)`.
pub fn generator_check(s: &Surface, v: &OvershearField, q: &SurfacePoint) -> f64 {
    let h = 1e-6;
    let moved = flow_closed_form(s, v, h, q);
    let (va, vb) = to_coord(s, v).eval(q.x, q.z);
    let dy = (moved.y - q.y) / h - va;
    let dz = (moved.z - q.z) / h - vb;
    let dx = moved.x - q.x;
    (dx.norm_sqr() + dy.norm_sqr() + dz.norm_sqr()).sqrt()
}

/// Dimension over the scalars of `span{OF_{f,g}, S_0, ..., S_N}` where
/// `S_0 = SF_h` and `S_{n+1} = [S_n, OF_{f,g}]`, computed by exact rank of
/// the vectorized canonical coefficients. For nonzero `f`, `h` the expected
/// value is `N + 2`.
pub fn iterated_bracket_rank(
    s: &Surface,
    f: &ExpPoly,
    g: &ExpPoly,
    h: &ExpPoly,
    n_max: usize,
) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroInput("f"));
    }
    if h.is_zero() {
        return Err(Error::ZeroInput("h"));
    }
    let of = to_coord(s, &OvershearField::overshear(f.clone(), g.clone()));
    let mut fields = vec![of.clone()];
    let mut s_n = to_coord(s, &OvershearField::shear(h.clone()));
    fields.push(s_n.clone());
    for _ in 0..n_max {
        s_n = bracket(&s_n, &of);
        fields.push(s_n.clone());
    }
    Ok(span_rank(&fields))
}

/// Exact rank of a set of coordinate fields over the Gaussian rationals,
/// vectorized over the shared basis of (component, z-power, exponent,
/// x-power) coordinates.
pub fn span_rank(fields: &[CoordField]) -> usize {
    use std::collections::BTreeMap;
    type Key = (u8, usize, Poly, usize);
    let mut index: BTreeMap<Key, usize> = BTreeMap::new();
    let mut sparse_rows: Vec<Vec<(usize, GaussianRational)>> = Vec::new();
    for field in fields {
        let mut row = Vec::new();
        for (slot, zp) in [(0u8, &field.a), (1u8, &field.b)] {
            for (zpow, ep) in zp.coeffs().iter().enumerate() {
                for (q, p) in ep.terms() {
                    for (xpow, c) in p.coeffs().iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let key = (slot, zpow, q.clone(), xpow);
                        let next = index.len();
                        let col = *index.entry(key).or_insert(next);
                        row.push((col, c.clone()));
                    }
                }
            }
        }
        sparse_rows.push(row);
    }
    let cols = index.len();
    let dense: Vec<Vec<GaussianRational>> = sparse_rows
        .into_iter()
        .map(|row| {
            let mut d = vec![GaussianRational::zero(); cols];
            for (col, val) in row {
                d[col] = val;
            }
            d
        })
        .collect();
    linalg::rank(dense)
}

/// True iff all pairwise `fᵢ·gⱼ - fⱼ·gᵢ` vanish exactly; by the bracket
/// identity this is equivalent to the fields commuting pairwise.
pub fn are_commuting_family(family: &[(ExpPoly, ExpPoly)]) -> bool {
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let (fi, gi) = &family[i];
            let (fj, gj) = &family[j];
            if !(&(fi * gj) - &(fj * gi)).is_zero() {
                return false;
            }
        }
    }
    true
}
