//! The surface datum `xy = p(z)` and numeric points on it.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Default relative tolerance for deciding that a point sits on the surface.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A validated surface polynomial `p` of degree >= 4 with simple zeros,
/// defining the affine surface `{xy - p(z) = 0}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Surface {
    p: Poly,
    p_prime: Poly,
    degree: usize,
}

impl Surface {
    /// Validates and wraps a surface polynomial.
    pub fn new(p: Poly) -> Result<Self> {
        let degree = p.degree().unwrap_or(0);
        if p.is_zero() || degree < 4 {
            return Err(Error::DegreeTooLow(if p.is_zero() { 0 } else { degree }));
        }
        let p_prime = p.derivative();
        let g = Poly::gcd(&p, &p_prime);
        if !g.is_constant() {
            return Err(Error::NonSimpleRoots(g.to_string_var('z')));
        }
        Ok(Surface { p, p_prime, degree })
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn p_prime(&self) -> &Poly {
        &self.p_prime
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The on-surface defect `|x·y - p(z)|`.
    pub fn residual(&self, q: &SurfacePoint) -> f64 {
        (q.x * q.y - self.p.eval(q.z)).norm()
    }

    /// Residual scaled by `1 + |xy| + |p(z)|`, robust for large points.
    pub fn relative_residual(&self, q: &SurfacePoint) -> f64 {
        let xy = q.x * q.y;
        let pz = self.p.eval(q.z);
        (xy - pz).norm() / (1.0 + xy.norm() + pz.norm())
    }

    pub fn is_on_surface(&self, q: &SurfacePoint, tol: f64) -> bool {
        self.relative_residual(q) <= tol
    }

    /// The point above `(x, z)` with `x != 0`, taking `y = p(z)/x`.
    pub fn point_from_xz(&self, x: Complex64, z: Complex64) -> SurfacePoint {
        SurfacePoint { x, y: self.p.eval(z) / x, z }
    }

    /// The time-`t` map of the hyperbolic field with factor `f(z)`:
    /// `(x, y, z) -> (x·e^{f(z)t}, y·e^{-f(z)t}, z)`. The product `xy` and
    /// hence the residual are unchanged up to rounding.
    pub fn apply_hyperbolic(&self, fz: &Poly, t: f64, q: &SurfacePoint) -> SurfacePoint {
        let w = fz.eval(q.z) * t;
        SurfacePoint { x: q.x * w.exp(), y: q.y * (-w).exp(), z: q.z }
    }
}

/// A numeric point of `C^3`, usually tracked against a [`Surface`].
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SurfacePoint {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl SurfacePoint {
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        SurfacePoint { x, y, z }
    }

    pub fn from_f64(x: f64, y: f64, z: f64) -> Self {
        SurfacePoint {
            x: Complex64::new(x, 0.0),
            y: Complex64::new(y, 0.0),
            z: Complex64::new(z, 0.0),
        }
    }

    /// Swaps the first two coordinates. `xy` is symmetric, so the residual
    /// is preserved exactly.
    pub fn involution(&self) -> SurfacePoint {
        SurfacePoint { x: self.y, y: self.x, z: self.z }
    }

    /// Euclidean distance in `C^3`.
    pub fn distance(&self, other: &SurfacePoint) -> f64 {
        ((self.x - other.x).norm_sqr()
            + (self.y - other.y).norm_sqr()
            + (self.z - other.z).norm_sqr())
        .sqrt()
    }

    /// Parses `"a+bi,c+di,e+fi"` with decimal doubles.
    pub fn parse(text: &str) -> Result<SurfacePoint> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::parse(1, 1, "expected three comma-separated complex numbers"));
        }
        let mut vals = [Complex64::new(0.0, 0.0); 3];
        let mut offset = 0;
        for (i, part) in parts.iter().enumerate() {
            vals[i] = parse_complex(part, offset)?;
            offset += part.len() + 1;
        }
        Ok(SurfacePoint { x: vals[0], y: vals[1], z: vals[2] })
    }
}

/// Parses one `a+bi` literal; `base` is the column offset for error reports.
fn parse_complex(text: &str, base: usize) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::parse(1, base + 1, "empty complex literal"));
    }
    // split at the last '+'/'-' that is not a leading sign and not part of an
    // exponent like `1e-9`
    let bytes = t.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let parse_f64 = |s: &str| -> Result<f64> {
        s.parse().map_err(|_| Error::parse(1, base + 1, format!("bad number `{s}`")))
    };
    if t.ends_with('i') {
        let body = &t[..t.len() - 1];
        match split {
            Some(i) if i < body.len() => {
                let re = parse_f64(&t[..i])?;
                let sign = if bytes[i] == b'-' { -1.0 } else { 1.0 };
                let im_str = &body[i + 1..];
                let im = if im_str.is_empty() { 1.0 } else { parse_f64(im_str)? };
                Ok(Complex64::new(re, sign * im))
            }
            _ => {
                let im = if body.is_empty() || body == "-" || body == "+" {
                    if body == "-" {
                        -1.0
                    } else {
                        1.0
                    }
                } else {
                    parse_f64(body)?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        Ok(Complex64::new(parse_f64(&t)?, 0.0))
    }
}

fn fmt_f64(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v}")
    }
}

impl fmt::Display for SurfacePoint {
    /// Prints `a+bi,c+di,e+fi` with both parts always present.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in [self.x, self.y, self.z].iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let sign = if c.im.is_sign_negative() { "-" } else { "+" };
            write!(f, "{}{}{}i", fmt_f64(c.re), sign, fmt_f64(c.im.abs()))?;
        }
        Ok(())
    }
}
