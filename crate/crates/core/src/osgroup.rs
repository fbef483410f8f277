//! Overshear automorphisms of the surface `xy = p(z)`: the subgroup fixing
//! `x`, its mirror fixing `y`, and words over the two as an amalgamated
//! free product.
//!
//! An element fixing `x` acts by
//!
//! ```text
//! (x, y, z) -> (x, y + (p(z') - p(z))/x, z')   with  z' = z·e^{x·f(x)} + x·g(x)
//! ```
//!
//! Internally the z-offset `X(x) = x·g(x)` is stored instead of `g` itself:
//! the offset stays inside the exp-polynomial class under every operation
//! (including the closed-form flows, whose `g` is entire but not an
//! exp-polynomial), and the group law is identical in either coordinate.
//! The invariant is `X(0) = 0`, exactly checkable as the sum of the
//! coefficient constant terms.

use std::fmt;

use crate::amalgam::{FactorElement, FactorTag, Letter, Word};
use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::parse::parse_exppoly;
use crate::poly::Poly;
use crate::surface::{Surface, SurfacePoint};

/// Below this `|x|` the y-update switches to its first-order limit form.
pub const X_LIMIT_THRESHOLD: f64 = 1e-8;

/// An automorphism fixing `x`, determined by `f` (polynomial) and the
/// z-offset `x·g(x)` (exp-polynomial vanishing at 0).
///
/// `f` must stay polynomial because the group law places it in an exponent;
/// the offset only undergoes ring operations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct O1Element {
    f: Poly,
    zoff: ExpPoly,
}

impl O1Element {
    /// Builds the element from the `(f, g)` pair of the defining formula.
    pub fn new(f: Poly, g: ExpPoly) -> Self {
        O1Element { f, zoff: g.mul_poly(&Poly::x()) }
    }

    /// Builds from `f` and the z-offset `X = x·g` directly. Errors unless
    /// `X(0) = 0`, which makes `g = X/x` entire.
    pub fn from_z_offset(f: Poly, zoff: ExpPoly) -> Result<Self> {
        if !zoff.eval_at_zero().is_zero() {
            return Err(Error::Precondition(
                "z-offset must vanish at x = 0".into(),
            ));
        }
        Ok(O1Element { f, zoff })
    }

    /// The shear with `f = 0`.
    pub fn shear(g: ExpPoly) -> Self {
        O1Element::new(Poly::zero(), g)
    }

    pub fn identity() -> Self {
        O1Element { f: Poly::zero(), zoff: ExpPoly::zero() }
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn z_offset(&self) -> &ExpPoly {
        &self.zoff
    }

    /// Recovers `g` when the offset is coefficient-wise divisible by `x`
    /// (always the case for elements built through [`O1Element::new`]).
    pub fn g(&self) -> Option<ExpPoly> {
        self.zoff.div_by_poly(&Poly::x()).ok()
    }

    pub fn is_shear(&self) -> bool {
        self.f.is_zero()
    }

    /// `e^{x·f(x)}` as an exp-polynomial.
    fn exp_xf(f: &Poly) -> ExpPoly {
        ExpPoly::exp_of(f.shift_up(1)).expect("x·f(x) vanishes at 0")
    }

    /// Applies to a point of the surface; `x` is fixed.
    ///
    /// For `|x|` below [`X_LIMIT_THRESHOLD`] the quotient in the y-update is
    /// replaced by its limit `y + p'(z)·(z·f(0) + g(0))`, which is exact at
    /// `x = 0` and avoids the `1/x` cancellation.
    pub fn apply(&self, s: &Surface, q: &SurfacePoint) -> SurfacePoint {
        let x = q.x;
        let scale = (x * self.f.eval(x)).exp();
        let z2 = q.z * scale + self.zoff.eval(x);
        let y2 = if x.norm() >= X_LIMIT_THRESHOLD {
            q.y + (s.p().eval(z2) - s.p().eval(q.z)) / x
        } else {
            let f0 = self.f.constant_term().to_complex();
            // g(0) = X'(0) since X(0) = 0
            let g0 = self.zoff.derivative().eval_at_zero().to_complex();
            q.y + s.p_prime().eval(q.z) * (q.z * f0 + g0)
        };
        SurfacePoint { x, y: y2, z: z2 }
    }
}

impl FactorElement for O1Element {
    /// `a.compose(b)` applies `b` first: `(f_a + f_b, X_b·e^{x·f_a} + X_a)`.
    fn compose(&self, rhs: &Self) -> Self {
        let f = &self.f + &rhs.f;
        let zoff = &(&rhs.zoff * &Self::exp_xf(&self.f)) + &self.zoff;
        O1Element { f, zoff }
    }

    /// `(-f, -X·e^{-x·f})`; composing either way gives the identity exactly.
    fn invert(&self) -> Self {
        let f = -&self.f;
        let zoff = (-&self.zoff) * Self::exp_xf(&f);
        O1Element { f, zoff }
    }

    fn is_identity(&self) -> bool {
        self.f.is_zero() && self.zoff.is_zero()
    }

    /// The factor intersection is trivial here: an element fixing both `x`
    /// and `y` must satisfy `p(z·e^{xf} + xg) = p(z)` identically; comparing
    /// leading z-coefficients forces `e^{deg(p)·x·f} = 1`, hence `f = 0`,
    /// and then `p(z + xg) = p(z)` forces `g = 0`.
    fn is_in_amalgam(&self) -> bool {
        self.is_identity()
    }
}

impl fmt::Display for O1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.g() {
            Some(g) => write!(f, "f={}; g={}", self.f, g),
            None => write!(f, "f={}; x*g={}", self.f, self.zoff),
        }
    }
}

/// A letter of the overshear group: `First` acts fixing `x`; `Second` is the
/// involution conjugate, fixing `y`.
pub type OsLetter = Letter<O1Element>;

/// A word in the overshear group.
pub type OsWord = Word<O1Element>;

/// Applies one letter to a point: a `Second` letter acts as the involution
/// conjugate of its stored element.
pub fn letter_apply(s: &Surface, letter: &OsLetter, q: &SurfacePoint) -> SurfacePoint {
    match letter.tag {
        FactorTag::First => letter.elem.apply(s, q),
        FactorTag::Second => letter.elem.apply(s, &q.involution()).involution(),
    }
}

/// Applies a word to a point, rightmost letter first.
pub fn word_apply(s: &Surface, w: &OsWord, q: &SurfacePoint) -> SurfacePoint {
    let mut cur = *q;
    for letter in w.letters().iter().rev() {
        cur = letter_apply(s, letter, &cur);
    }
    cur
}

/// Parses a word file: one letter per line, `O1{f=<expr>; g=<expr>}` or
/// `O2{f=<expr>; g=<expr>}`; blank lines and `#` comments are ignored.
pub fn parse_word_file(text: &str) -> Result<OsWord> {
    let mut letters = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        letters.push(parse_letter_line(raw, line_no)?);
    }
    Ok(Word::from_letters(letters))
}

fn parse_letter_line(raw: &str, line_no: usize) -> Result<OsLetter> {
    let err = |col: usize, msg: &str| Error::parse(line_no, col, msg);
    let trimmed_start = raw.len() - raw.trim_start().len();
    let line = raw.trim();
    let tag = if let Some(rest) = line.strip_prefix("O1") {
        let _ = rest;
        FactorTag::First
    } else if line.starts_with("O2") {
        FactorTag::Second
    } else {
        return Err(err(trimmed_start + 1, "expected O1{...} or O2{...}"));
    };
    let body = line[2..].trim();
    if !body.starts_with('{') || !body.ends_with('}') {
        return Err(err(trimmed_start + 3, "expected {f=<expr>; g=<expr>}"));
    }
    let inner = &body[1..body.len() - 1];
    let mut f_expr = None;
    let mut g_expr = None;
    for part in inner.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some(e) = part.strip_prefix("f=") {
            f_expr = Some(e.trim());
        } else if let Some(e) = part.strip_prefix("g=") {
            g_expr = Some(e.trim());
        } else {
            return Err(err(trimmed_start + 1, "expected fields f=<expr> and g=<expr>"));
        }
    }
    let (Some(f_text), Some(g_text)) = (f_expr, g_expr) else {
        return Err(err(trimmed_start + 1, "letter needs both f=<expr> and g=<expr>"));
    };
    let reposition = |e: Error, expr: &str| match e {
        Error::Parse { col, msg, .. } => {
            let base = raw.find(expr).map(|i| i).unwrap_or(0);
            Error::parse(line_no, base + col, msg)
        }
        other => other,
    };
    let f_ep = parse_exppoly(f_text).map_err(|e| reposition(e, f_text))?;
    let f = f_ep.as_poly().ok_or_else(|| {
        err(raw.find(f_text).unwrap_or(0) + 1, "f must be a plain polynomial")
    })?;
    let g = parse_exppoly(g_text).map_err(|e| reposition(e, g_text))?;
    Ok(Letter::new(tag, O1Element::new(f, g)))
}

/// Renders a letter in the word-file format. Elements whose offset is not
/// divisible by `x` (possible only for flow-produced elements) fall back to
/// an output-only `x*g=` field.
pub fn letter_to_line(letter: &OsLetter) -> String {
    let tag = match letter.tag {
        FactorTag::First => "O1",
        FactorTag::Second => "O2",
    };
    format!("{tag}{{{}}}", letter.elem)
}

/// Renders a whole word in the word-file format, one letter per line.
pub fn word_to_file(w: &OsWord) -> String {
    w.letters().iter().map(letter_to_line).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn surface() -> Surface {
        Surface::new(Poly::from_ints(&[-1, 0, 0, 0, 1])).unwrap()
    }

    fn o1(f: i64, g: i64) -> O1Element {
        O1Element::new(Poly::from_int(f), ExpPoly::from_int(g))
    }

    #[test]
    fn shears_compose_additively() {
        let g1 = ExpPoly::exp_of(Poly::x()).unwrap();
        let g2 = ExpPoly::from_poly(Poly::from_ints(&[1, 2]));
        let a = O1Element::shear(g1.clone());
        let b = O1Element::shear(g2.clone());
        assert_eq!(a.compose(&b), O1Element::shear(&g1 + &g2));
        assert_eq!(a.compose(&b), b.compose(&a));
    }

    #[test]
    fn identity_is_neutral() {
        let a = o1(1, 1);
        assert_eq!(a.compose(&O1Element::identity()), a);
        assert_eq!(O1Element::identity().compose(&a), a);
    }

    #[test]
    fn composition_law_example() {
        // (1,0)∘(0,1) = (1, e^x)
        let a = o1(1, 0);
        let b = o1(0, 1);
        let expect = O1Element::new(Poly::one(), ExpPoly::exp_of(Poly::x()).unwrap());
        assert_eq!(a.compose(&b), expect);
    }

    #[test]
    fn inverse_round_trip() {
        assert_eq!(
            O1Element::shear(ExpPoly::x()).invert(),
            O1Element::shear(-ExpPoly::x())
        );
        assert!(O1Element::identity().invert().is_identity());
        let a = o1(1, 1);
        // (1,1)⁻¹ = (-1, -e^{-x})
        let minus_exp = -ExpPoly::exp_of(Poly::from_ints(&[0, -1])).unwrap();
        assert_eq!(a.invert(), O1Element::new(Poly::from_int(-1), minus_exp));
        assert!(a.compose(&a.invert()).is_identity());
        assert!(a.invert().compose(&a).is_identity());
    }

    #[test]
    fn associativity_spot_check() {
        let a = o1(1, 2);
        let b = O1Element::new(Poly::x(), ExpPoly::x());
        let c = o1(-1, 1);
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn apply_shear_example() {
        // p = z^4 - 1, shear g = 1 on (1,0,1): z' = 2, y' = p(2) - p(1) = 15
        let s = surface();
        let shear = o1(0, 1);
        let img = shear.apply(&s, &SurfacePoint::from_f64(1.0, 0.0, 1.0));
        assert!((img.x - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((img.y - Complex64::new(15.0, 0.0)).norm() < 1e-9);
        assert!((img.z - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn apply_identity_fixes_points() {
        let s = surface();
        let q = s.point_from_xz(Complex64::new(0.7, 0.2), Complex64::new(-0.3, 1.1));
        let img = O1Element::identity().apply(&s, &q);
        assert!(img.distance(&q) < 1e-14);
    }

    #[test]
    fn apply_limit_branch_at_x_zero() {
        // f = 1, g = 0 at (0,5,1): y' = 5 + p'(1)·(1·1 + 0) = 9
        let s = surface();
        let a = o1(1, 0);
        let img = a.apply(&s, &SurfacePoint::from_f64(0.0, 5.0, 1.0));
        assert!((img.y - Complex64::new(9.0, 0.0)).norm() < 1e-12);
        assert!((img.z - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(s.residual(&img), 0.0);
    }

    #[test]
    fn amalgam_is_trivial() {
        assert!(O1Element::identity().is_in_amalgam());
        assert!(!o1(0, 1).is_in_amalgam());
        assert!(!o1(1, 0).is_in_amalgam());
    }

    #[test]
    fn word_apply_matches_letters() {
        let s = surface();
        let q = s.point_from_xz(Complex64::new(0.9, -0.1), Complex64::new(0.4, 0.3));
        assert_eq!(word_apply(&s, &Word::identity(), &q), q);
        let letter = Letter::first(o1(0, 1));
        let w = Word::single(letter.clone());
        assert_eq!(word_apply(&s, &w, &q), letter.elem.apply(&s, &q));
        // involution conjugation for a Second letter
        let l2 = Letter::second(o1(0, 1));
        let w2 = Word::single(l2.clone());
        let expect = l2.elem.apply(&s, &q.involution()).involution();
        assert_eq!(word_apply(&s, &w2, &q), expect);
    }

    #[test]
    fn word_file_round_trip() {
        let text = "# a comment\nO1{f=1; g=exp(x)}\n\nO2{f=0; g=x^2}\nO1{f=-x; g=1/2}\n";
        let w = parse_word_file(text).unwrap();
        assert_eq!(w.letters().len(), 3);
        let printed = word_to_file(&w);
        let again = parse_word_file(&printed).unwrap();
        assert_eq!(again, w);
    }

    #[test]
    fn word_file_errors_carry_position() {
        let err = parse_word_file("O1{f=1; g=exp(}\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_word_file("O1{f=exp(x); g=0}").unwrap_err();
        match err {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 1);
                assert!(msg.contains("polynomial"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_word_file("O3{f=1; g=0}").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn torsion_free_small_powers() {
        let a = O1Element::new(Poly::x(), ExpPoly::from_int(1));
        let mut acc = O1Element::identity();
        for _ in 0..5 {
            acc = acc.compose(&a);
            assert!(!acc.is_identity());
        }
    }
}
