//! Exact desk-scale nilpotent Lie theory: strictly upper-triangular rational
//! matrices, their finite exponential and logarithm, the BCH correction term
//! `K(x,y)` with `exp(x+y) = exp(x)·exp(y)·exp(K(x,y))`, and the
//! factorization of a unipotent matrix into one-parameter subgroup values
//! along a Malcev basis.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

fn check_dim(n: usize) -> Result<()> {
    if (3..=6).contains(&n) {
        Ok(())
    } else {
        Err(Error::BadDimension(n))
    }
}

fn zeros(n: usize) -> Vec<Vec<Rational>> {
    vec![vec![Rational::zero(); n]; n]
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn mat_add_scaled(acc: &mut [Vec<Rational>], m: &[Vec<Rational>], s: &Rational) {
    for (ar, mr) in acc.iter_mut().zip(m) {
        for (a, v) in ar.iter_mut().zip(mr) {
            *a += v * s;
        }
    }
}

fn identity_mat(n: usize) -> Vec<Vec<Rational>> {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

/// A strictly upper-triangular matrix with exact rational entries, an
/// element of the nilpotent Lie algebra; `N^n = 0`, so `exp` is a finite sum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilMatrix {
    n: usize,
    a: Vec<Vec<Rational>>,
}

impl NilMatrix {
    /// Validates shape: square, 3 <= n <= 6, zero on and below the diagonal.
    pub fn new(a: Vec<Vec<Rational>>) -> Result<Self> {
        let n = a.len();
        check_dim(n)?;
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadMatrixShape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if j <= i && !v.is_zero() {
                    return Err(Error::BadMatrixShape(format!(
                        "entry ({i},{j}) must be zero below or on the diagonal"
                    )));
                }
            }
        }
        Ok(NilMatrix { n, a })
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(NilMatrix { n, a: zeros(n) })
    }

    /// The elementary matrix `E_{i,j}` scaled by `t` (`i < j`, 0-based).
    pub fn elementary(n: usize, i: usize, j: usize, t: Rational) -> Result<Self> {
        check_dim(n)?;
        if i >= j || j >= n {
            return Err(Error::BadMatrixShape(format!(
                "elementary position ({i},{j}) is not strictly upper"
            )));
        }
        let mut a = zeros(n);
        a[i][j] = t;
        Ok(NilMatrix { n, a })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &Vec<Vec<Rational>> {
        &self.a
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.a[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|r| r.iter().all(Rational::is_zero))
    }

    pub fn add(&self, rhs: &NilMatrix) -> NilMatrix {
        let mut a = self.a.clone();
        mat_add_scaled(&mut a, &rhs.a, &Rational::one());
        NilMatrix { n: self.n, a }
    }

    pub fn neg(&self) -> NilMatrix {
        NilMatrix {
            n: self.n,
            a: self.a.iter().map(|r| r.iter().map(|v| -v.clone()).collect()).collect(),
        }
    }

    /// Lie bracket `[x, y] = xy - yx`; strictly upper again, one level deeper.
    pub fn commutator(&self, rhs: &NilMatrix) -> NilMatrix {
        let xy = mat_mul(&self.a, &rhs.a);
        let yx = mat_mul(&rhs.a, &self.a);
        let a = xy
            .into_iter()
            .zip(yx)
            .map(|(r1, r2)| r1.into_iter().zip(r2).map(|(u, v)| u - v).collect())
            .collect();
        NilMatrix { n: self.n, a }
    }

    /// True when every entry on the first superdiagonal vanishes, the
    /// witness of membership in the derived subalgebra.
    pub fn first_superdiagonal_is_zero(&self) -> bool {
        (0..self.n - 1).all(|i| self.a[i][i + 1].is_zero())
    }
}

/// An upper-triangular matrix with unit diagonal, `(U - I)^n = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnipotentMatrix {
    n: usize,
    a: Vec<Vec<Rational>>,
}

impl UnipotentMatrix {
    pub fn new(a: Vec<Vec<Rational>>) -> Result<Self> {
        let n = a.len();
        check_dim(n)?;
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadMatrixShape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if j < i && !v.is_zero() {
                    return Err(Error::BadMatrixShape(format!(
                        "entry ({i},{j}) must be zero below the diagonal"
                    )));
                }
                if j == i && !v.is_one() {
                    return Err(Error::BadMatrixShape(format!(
                        "diagonal entry ({i},{i}) must be one"
                    )));
                }
            }
        }
        Ok(UnipotentMatrix { n, a })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(UnipotentMatrix { n, a: identity_mat(n) })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &Vec<Vec<Rational>> {
        &self.a
    }

    pub fn is_identity(&self) -> bool {
        self.a == identity_mat(self.n)
    }

    pub fn mul(&self, rhs: &UnipotentMatrix) -> UnipotentMatrix {
        UnipotentMatrix { n: self.n, a: mat_mul(&self.a, &rhs.a) }
    }
}

/// Finite exact exponential `Σ_{k<n} N^k / k!`.
pub fn mexp(n: &NilMatrix) -> UnipotentMatrix {
    let dim = n.n;
    let mut acc = identity_mat(dim);
    let mut power = identity_mat(dim);
    let mut factorial = Rational::one();
    for k in 1..dim {
        power = mat_mul(&power, &n.a);
        factorial *= Rational::from_integer(k.into());
        mat_add_scaled(&mut acc, &power, &factorial.recip());
    }
    UnipotentMatrix { n: dim, a: acc }
}

/// Finite exact logarithm `Σ_{1<=k<n} (-1)^{k+1} (U - I)^k / k`.
pub fn mlog(u: &UnipotentMatrix) -> NilMatrix {
    let dim = u.n;
    let mut m = u.a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= Rational::one();
    }
    let mut acc = zeros(dim);
    let mut power = identity_mat(dim);
    for k in 1..dim {
        power = mat_mul(&power, &m);
        let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
        let coeff = sign / Rational::from_integer(k.into());
        mat_add_scaled(&mut acc, &power, &coeff);
    }
    NilMatrix { n: dim, a: acc }
}

/// The BCH combination `Z(x,y)` with `exp(x)·exp(y) = exp(Z(x,y))`,
/// computed exactly as `log(exp(x)·exp(y))` rather than by the Dynkin
/// series, which it equals on the nilpotent class.
pub fn bch_z(x: &NilMatrix, y: &NilMatrix) -> Result<NilMatrix> {
    if x.n != y.n {
        return Err(Error::BadMatrixShape(format!(
            "dimension mismatch: {} vs {}",
            x.n, y.n
        )));
    }
    Ok(mlog(&mexp(x).mul(&mexp(y))))
}

/// The correction term `K(x,y) = Z(-Z(x,y), x+y)`, satisfying
/// `exp(x+y) = exp(x)·exp(y)·exp(K(x,y))` exactly and lying in the derived
/// subalgebra (zero first superdiagonal).
pub fn bch_k(x: &NilMatrix, y: &NilMatrix) -> Result<NilMatrix> {
    let z = bch_z(x, y)?;
    bch_z(&z.neg(), &x.add(y))
}

/// The Malcev basis: elementary positions `(i, i+d)` ordered by
/// superdiagonal depth `d` ascending, then by row `i`.
pub fn malcev_basis(n: usize) -> Vec<(usize, usize)> {
    let mut basis = Vec::new();
    for d in 1..n {
        for i in 0..n - d {
            basis.push((i, i + d));
        }
    }
    basis
}

/// One factor `exp(t · E_b)` of a decomposition, identified by the index of
/// `E_b` in [`malcev_basis`].
pub type DecompositionStep = (usize, Rational);

/// Factors a unipotent matrix into an ordered product of one-parameter
/// subgroup values `exp(t·E_b)` along the Malcev basis.
///
/// Coordinates are peeled off `log(g)` one basis element at a time; each
/// peel leaves a BCH correction `exp(K)` whose argument lies strictly deeper
/// in the lower central series, so the recursion terminates. The emitted
/// product reconstructs the input exactly.
pub fn decompose_product(g: &UnipotentMatrix) -> Vec<DecompositionStep> {
    let mut out = Vec::new();
    decompose_into(g, &mut out);
    out
}

fn decompose_into(g: &UnipotentMatrix, out: &mut Vec<DecompositionStep>) {
    if g.is_identity() {
        return;
    }
    let basis = malcev_basis(g.n);
    let mut rest = mlog(g);
    let mut corrections: Vec<NilMatrix> = Vec::new();
    for (idx, &(i, j)) in basis.iter().enumerate() {
        let t = rest.a[i][j].clone();
        if t.is_zero() {
            continue;
        }
        let x = NilMatrix::elementary(g.n, i, j, t.clone()).expect("basis position");
        let y = {
            let mut a = rest.a.clone();
            a[i][j] = Rational::zero();
            NilMatrix { n: g.n, a }
        };
        // exp(rest) = exp(x)·exp(y)·exp(K(x,y))
        let k = bch_k(&x, &y).expect("same dimension");
        out.push((idx, t));
        if !k.is_zero() {
            corrections.push(k);
        }
        rest = y;
    }
    debug_assert!(rest.is_zero());
    // trailing corrections apply in reverse peel order
    for k in corrections.into_iter().rev() {
        decompose_into(&mexp(&k), out);
    }
}

/// Rebuilds the ordered product `Π exp(t·E_b)` of a decomposition.
pub fn reconstruct(n: usize, steps: &[DecompositionStep]) -> Result<UnipotentMatrix> {
    let basis = malcev_basis(n);
    let mut acc = UnipotentMatrix::identity(n)?;
    for (idx, t) in steps {
        let &(i, j) = basis
            .get(*idx)
            .ok_or_else(|| Error::BadMatrixShape(format!("basis index {idx} out of range")))?;
        acc = acc.mul(&mexp(&NilMatrix::elementary(n, i, j, t.clone())?));
    }
    Ok(acc)
}

/// Parses a rational from `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::parse(1, 1, format!("bad rational `{text}`"));
    let t = text.trim();
    match t.split_once('/') {
        Some((num, den)) => {
            let n: num_bigint::BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: num_bigint::BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Formats a rational as `"p/q"` or `"p"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for NilMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.a {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for UnipotentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.a {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
