//! Recursive-descent parser for the ASCII expression grammar.
//!
//! ```text
//! expr       := term (("+"|"-") term)*
//! term       := polyfactor | polyfactor "*" "exp" "(" poly ")" | "exp" "(" poly ")"
//! polyfactor := "(" poly ")" | monomial
//! poly       := signed monomial sequence
//! monomial   := coeff ["*" var ["^" uint]] | var ["^" uint]
//! coeff      := rational [("+"|"-") rational "i"]
//! rational   := int ["/" uint]
//! ```
//!
//! Whitespace is insignificant. The printers on [`Poly`] and [`ExpPoly`]
//! emit this grammar deterministically, and parsing a printed value yields
//! the identical canonical form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::poly::Poly;
use crate::scalar::GaussianRational;

/// Parses an exp-polynomial expression such as `(1/2+1/3i)*exp(x^2)+x`.
pub fn parse_exppoly(text: &str) -> Result<ExpPoly> {
    let mut p = Parser::new(text, &['x']);
    let e = p.parse_expr()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses a plain polynomial; accepts `x` or `z` as the variable letter.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser::new(text, &['x', 'z']);
    let poly = p.parse_poly()?;
    p.expect_eof()?;
    Ok(poly)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [char],
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a [char]) -> Self {
        Parser { s: text.as_bytes(), pos: 0, vars }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    /// Next non-whitespace byte after the current position.
    fn peek_after(&self, skip: usize) -> Option<u8> {
        let mut i = self.pos + skip;
        while self.s.get(i).is_some_and(|c| c.is_ascii_whitespace()) {
            i += 1;
        }
        self.s.get(i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn expect_eof(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.s.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn is_var(&self, c: u8) -> bool {
        self.vars.contains(&(c as char))
    }

    /// Matches the keyword `exp` followed by `(` without consuming on failure.
    fn at_exp_keyword(&self) -> bool {
        self.s[self.pos..].starts_with(b"exp") && {
            let mut i = self.pos + 3;
            while self.s.get(i).is_some_and(|c| c.is_ascii_whitespace()) {
                i += 1;
            }
            self.s.get(i) == Some(&b'(')
        }
    }

    fn parse_digits(&mut self) -> Result<&'a [u8]> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        Ok(&self.s[start..self.pos])
    }

    fn parse_uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.parse_digits()?;
        std::str::from_utf8(digits)
            .ok()
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| self.err("integer exponent out of range"))
    }

    /// `int := ["+"|"-"] digits`
    fn parse_int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            if self.peek() == Some(b'+') {
                self.pos += 1;
            }
            false
        };
        self.skip_ws();
        let digits = self.parse_digits()?;
        let mut n: BigInt = std::str::from_utf8(digits)
            .ok()
            .and_then(crate::scalar::bigint_from_str)
            .ok_or_else(|| self.err("bad integer"))?;
        if negative {
            n = -n;
        }
        Ok(n)
    }

    /// `rational := int ["/" uint]`
    fn parse_rational(&mut self) -> Result<BigRational> {
        let numer = self.parse_int()?;
        if self.eat(b'/') {
            self.skip_ws();
            let digits = self.parse_digits()?;
            let denom: BigInt = std::str::from_utf8(digits)
                .ok()
                .and_then(crate::scalar::bigint_from_str)
                .ok_or_else(|| self.err("bad denominator"))?;
            if denom.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    /// `coeff := rational [("+"|"-") rational "i"]`, backtracking when the
    /// optional imaginary part does not materialize.
    fn parse_coeff(&mut self) -> Result<GaussianRational> {
        let re = self.parse_rational()?;
        let save = self.pos;
        self.skip_ws();
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            let negative = self.peek() == Some(b'-');
            self.pos += 1;
            if let Ok(im) = self.parse_rational() {
                if self.eat(b'i') {
                    let im = if negative { -im } else { im };
                    return Ok(GaussianRational::new(re, im));
                }
            }
            self.pos = save;
        }
        Ok(GaussianRational::new(re, BigRational::zero()))
    }

    /// One monomial, with an explicit negation sign consumed only when the
    /// following token is the bare variable (a numeric coefficient absorbs
    /// its own sign).
    fn parse_monomial(&mut self) -> Result<Poly> {
        self.skip_ws();
        let mut negate = false;
        if matches!(self.peek(), Some(b'+') | Some(b'-'))
            && self.peek_after(1).is_some_and(|c| self.is_var(c))
        {
            negate = self.peek() == Some(b'-');
            self.pos += 1;
            self.skip_ws();
        }
        let m = if self.peek().is_some_and(|c| self.is_var(c)) {
            self.pos += 1;
            let power = if self.eat(b'^') { self.parse_uint()? } else { 1 };
            Poly::monomial(GaussianRational::one(), power)
        } else {
            let c = self.parse_coeff()?;
            let save = self.pos;
            let mut power = 0usize;
            let mut has_var = false;
            self.skip_ws();
            if self.peek() == Some(b'*') && self.peek_after(1).is_some_and(|c| self.is_var(c)) {
                self.pos += 1;
                self.skip_ws();
                self.pos += 1; // the variable letter
                power = if self.eat(b'^') { self.parse_uint()? } else { 1 };
                has_var = true;
            }
            if !has_var {
                self.pos = save;
            }
            Poly::monomial(c, power)
        };
        Ok(if negate { -m } else { m })
    }

    /// `poly := signed monomial sequence`
    fn parse_poly(&mut self) -> Result<Poly> {
        let mut acc = self.parse_monomial()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.parse_monomial()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.parse_monomial()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_exp_factor(&mut self) -> Result<ExpPoly> {
        // caller verified the `exp(` keyword is present
        self.pos += 3;
        self.expect(b'(')?;
        let at = self.pos;
        let q = self.parse_poly()?;
        self.expect(b')')?;
        ExpPoly::exp_of(q).map_err(|_| {
            Error::parse(1, at + 1, "exponent polynomial has nonzero constant term")
        })
    }

    fn parse_term(&mut self) -> Result<ExpPoly> {
        self.skip_ws();
        if self.at_exp_keyword() {
            return self.parse_exp_factor();
        }
        let base = if self.peek() == Some(b'(') {
            self.pos += 1;
            let p = self.parse_poly()?;
            self.expect(b')')?;
            p
        } else {
            self.parse_monomial()?
        };
        self.skip_ws();
        if self.peek() == Some(b'*') {
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            if self.at_exp_keyword() {
                let e = self.parse_exp_factor()?;
                return Ok(e.mul_poly(&base));
            }
            self.pos = save;
            return Err(self.err("expected 'exp(' after '*'"));
        }
        Ok(ExpPoly::from_poly(base))
    }

    fn parse_expr(&mut self) -> Result<ExpPoly> {
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.parse_term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.parse_term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) -> ExpPoly {
        let e = parse_exppoly(text).unwrap();
        let printed = e.to_string();
        let again = parse_exppoly(&printed)
            .unwrap_or_else(|err| panic!("reparse of `{printed}` failed: {err}"));
        assert_eq!(again, e, "round trip of `{text}` via `{printed}`");
        e
    }

    #[test]
    fn parses_monomials() {
        assert_eq!(roundtrip("x^2"), ExpPoly::from_poly(Poly::from_ints(&[0, 0, 1])));
        assert_eq!(roundtrip("-x"), ExpPoly::from_poly(Poly::from_ints(&[0, -1])));
        assert_eq!(roundtrip("3/2"), ExpPoly::from_poly(Poly::from_coeffs(vec![
            GaussianRational::from_ratio(3, 2),
        ])));
    }

    #[test]
    fn parses_complex_coefficients() {
        let e = roundtrip("(1/2+1/3i)*exp(x^2)");
        let q = Poly::from_ints(&[0, 0, 1]);
        let c = Poly::constant(GaussianRational::from_parts(1, 2, 1, 3));
        assert_eq!(e, ExpPoly::exp_of(q).unwrap().mul_poly(&c));
    }

    #[test]
    fn parses_sums_and_signs() {
        let e = roundtrip("1+2*x-x^2");
        assert_eq!(e, ExpPoly::from_poly(Poly::from_ints(&[1, 2, -1])));
        let f = roundtrip("exp(x)-1");
        assert_eq!(f, &ExpPoly::exp_of(Poly::x()).unwrap() - &ExpPoly::one());
    }

    #[test]
    fn parses_poly_times_exp() {
        let e = roundtrip("x*exp(x)");
        assert_eq!(e, ExpPoly::exp_of(Poly::x()).unwrap().mul_poly(&Poly::x()));
        let f = roundtrip("(1+x)*exp(2*x)");
        assert_eq!(
            f,
            ExpPoly::exp_of(Poly::from_ints(&[0, 2])).unwrap().mul_poly(&Poly::from_ints(&[1, 1]))
        );
        let g = roundtrip("2*exp(x)");
        assert_eq!(g, ExpPoly::exp_of(Poly::x()).unwrap().mul_poly(&Poly::from_int(2)));
    }

    #[test]
    fn whitespace_insignificant() {
        assert_eq!(
            parse_exppoly(" ( 1 + x ) * exp ( x ^ 2 ) ").unwrap(),
            parse_exppoly("(1+x)*exp(x^2)").unwrap()
        );
    }

    #[test]
    fn rejects_constant_term_in_exponent() {
        let err = parse_exppoly("exp(1+x)").unwrap_err();
        match err {
            Error::Parse { msg, .. } => assert!(msg.contains("constant term")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn reports_syntax_error_position() {
        let err = parse_exppoly("x +* 2").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col >= 4);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn surface_poly_accepts_z() {
        let p = parse_poly("z^4-1").unwrap();
        assert_eq!(p, Poly::from_ints(&[-1, 0, 0, 0, 1]));
        assert_eq!(parse_poly("x^4-1").unwrap(), p);
    }

    #[test]
    fn negative_complex_re_round_trips() {
        // coefficient -1/2+i on x, both as a leading and a trailing monomial
        let c = GaussianRational::from_parts(-1, 2, 1, 1);
        let p = Poly::from_coeffs(vec![
            GaussianRational::from_int(1),
            c.clone(),
            GaussianRational::from_int(0).clone(),
            c,
        ]);
        let e = ExpPoly::from_poly(p);
        let printed = e.to_string();
        assert_eq!(parse_exppoly(&printed).unwrap(), e, "via `{printed}`");
    }
}
