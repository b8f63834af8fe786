//! Expression grammar for instance documents:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' nat)?
//! atom     := rational | 't' | var | '(' expr ')'
//! var      := name '@' nat
//! rational := int ('/' nat)?
//! ```
//!
//! `name@k` denotes the k-th shift of a declared generator; `t` is the
//! ground variable of a rational-function coefficient field. The printer
//! emits canonical forms that re-parse to the same polynomial.

use sigma_kernel_core::diffring::DiffPolyRing;
use sigma_kernel_core::multipoly::MPoly;
use sigma_kernel_core::scalar::{FieldKind, Scalar};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based column of the offending character
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn col(&mut self) -> usize {
        self.skip_ws();
        self.pos + 1
    }

    fn err<T>(&mut self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.col(), msg: msg.into() })
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        let start = self.col();
        let mut digits = String::new();
        while let Some(c) = self.src.get(self.pos).copied() {
            if c.is_ascii_digit() {
                digits.push(c as char);
                self.pos += 1;
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(ParseError { pos: start, msg: "expected a number".into() });
        }
        digits
            .parse()
            .map_err(|_| ParseError { pos: start, msg: "number out of range".into() })
    }

    fn name(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.src.get(self.pos).copied() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                s.push(c as char);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }
}

pub struct Parser<'a> {
    lex: Lexer<'a>,
    ring: &'a DiffPolyRing,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str, ring: &'a DiffPolyRing) -> Parser<'a> {
        Parser { lex: Lexer::new(src), ring }
    }

    fn kind(&self) -> &FieldKind {
        &self.ring.ground.kind
    }

    pub fn parse(mut self) -> Result<MPoly, ParseError> {
        let e = self.expr()?;
        if let Some(c) = self.lex.peek() {
            return self.lex.err(format!("unexpected '{}'", c as char));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.lex.peek() {
                Some(b'+') => {
                    self.lex.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.lex.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.lex.peek() == Some(b'*') {
            self.lex.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.lex.peek() == Some(b'^') {
            self.lex.bump();
            let col = self.lex.col();
            let e = self.lex.nat()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| ParseError { pos: col, msg: "exponent out of range".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        match self.lex.peek() {
            Some(b'(') => {
                self.lex.bump();
                let e = self.expr()?;
                if self.lex.peek() != Some(b')') {
                    return self.lex.err("expected ')'");
                }
                self.lex.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => self.rational(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.variable(),
            Some(c) => self.lex.err(format!("unexpected '{}'", c as char)),
            None => self.lex.err("unexpected end of input"),
        }
    }

    fn rational(&mut self) -> Result<MPoly, ParseError> {
        let col = self.lex.col();
        let neg = self.lex.peek() == Some(b'-');
        if neg {
            self.lex.bump();
            self.lex.skip_ws();
        }
        let num = self.lex.nat()?;
        let num: i64 = num
            .try_into()
            .map_err(|_| ParseError { pos: col, msg: "integer out of range".into() })?;
        let num = if neg { -num } else { num };
        let mut s = Scalar::from_i64(self.kind(), num);
        if self.lex.peek() == Some(b'/') {
            self.lex.bump();
            let dcol = self.lex.col();
            let den = self.lex.nat()?;
            if den == 0 {
                return Err(ParseError { pos: dcol, msg: "zero denominator".into() });
            }
            s = Scalar::from_rational(self.kind(), num, den);
        }
        Ok(MPoly::constant(s))
    }

    fn variable(&mut self) -> Result<MPoly, ParseError> {
        let col = self.lex.col();
        let name = self.lex.name();
        if name == "t" && self.lex.peek() != Some(b'@') {
            if !matches!(self.kind(), FieldKind::RatFun(_)) {
                return Err(ParseError {
                    pos: col,
                    msg: "t is only available over a rational-function ground field".into(),
                });
            }
            return Ok(MPoly::constant(Scalar::t_var(self.kind())));
        }
        let Some(gen) = self.ring.gen_names.iter().position(|g| *g == name) else {
            return Err(ParseError { pos: col, msg: format!("undeclared name '{}'", name) });
        };
        if self.lex.peek() != Some(b'@') {
            return self.lex.err("expected '@' after generator name");
        }
        self.lex.bump();
        let scol = self.lex.col();
        let shift = self.lex.nat()?;
        let shift: u32 = shift
            .try_into()
            .map_err(|_| ParseError { pos: scol, msg: "shift out of range".into() })?;
        Ok(self.ring.var_poly(gen, shift))
    }
}

pub fn parse_expression(src: &str, ring: &DiffPolyRing) -> Result<MPoly, ParseError> {
    Parser::new(src, ring).parse()
}

/// A rational as `a` or `a/b`.
fn rat_str(s: &Scalar) -> String {
    match s {
        Scalar::Rat(r) => format!("{}", r),
        Scalar::Fp { val, .. } => format!("{}", val),
        Scalar::RatFun(_) => unreachable!("handled by coeff_str"),
    }
}

/// A ground coefficient as a grammar-conformant expression, with the flag
/// telling the caller whether it needs parentheses inside a product.
fn coeff_str(s: &Scalar) -> (String, bool) {
    match s {
        Scalar::RatFun(r) => {
            assert!(
                r.den.coeffs.len() == 1,
                "cannot print a coefficient with a non-constant denominator"
            );
            let d = &r.den.coeffs[0];
            let monos: Vec<String> = r
                .num
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let c = c.mul(&d.inv());
                    let (cs, _) = coeff_str(&c);
                    match i {
                        0 => cs,
                        1 if c.is_one() => "t".to_string(),
                        1 => format!("{}*t", cs),
                        _ if c.is_one() => format!("t^{}", i),
                        _ => format!("{}*t^{}", cs, i),
                    }
                })
                .collect();
            match monos.len() {
                0 => ("0".to_string(), false),
                1 => (monos[0].clone(), false),
                _ => (format!("({})", monos.join(" + ")), false),
            }
        }
        _ => {
            let s = rat_str(s);
            (s, false)
        }
    }
}

/// Canonical printed form: monomials sorted by descending total degree then
/// by variable names, coefficients leading each product.
pub fn print_expression(p: &MPoly) -> String {
    // (sorted [(name, shift, exp)], coeff)
    let mut monos: Vec<(Vec<(String, u32, u32)>, Scalar)> = Vec::new();
    for (e, c) in &p.terms {
        let mut vars: Vec<(String, u32, u32)> = e
            .iter()
            .enumerate()
            .filter(|(_, exp)| **exp > 0)
            .map(|(i, exp)| {
                let v = &p.vars[i];
                let name = v.name.split('@').next().unwrap_or(&v.name).to_string();
                (name, v.key.1, *exp)
            })
            .collect();
        vars.sort();
        monos.push((vars, c.clone()));
    }
    if monos.is_empty() {
        return "0".to_string();
    }
    monos.sort_by(|a, b| {
        let da: u64 = a.0.iter().map(|(_, _, e)| *e as u64).sum();
        let db: u64 = b.0.iter().map(|(_, _, e)| *e as u64).sum();
        db.cmp(&da).then_with(|| a.0.cmp(&b.0))
    });
    let mut out = String::new();
    for (i, (vars, c)) in monos.iter().enumerate() {
        let (cs, _) = coeff_str(c);
        let mut factors: Vec<String> = Vec::new();
        if vars.is_empty() || !(c.is_one() && cs == "1") {
            factors.push(cs.clone());
        }
        for (name, shift, exp) in vars {
            let v = format!("{}@{}", name, shift);
            if *exp == 1 {
                factors.push(v);
            } else {
                factors.push(format!("{}^{}", v, exp));
            }
        }
        // fold a leading "1 * x" down to "x"
        if factors.len() > 1 && factors[0] == "1" {
            factors.remove(0);
        }
        let piece = factors.join("*");
        if i == 0 {
            out.push_str(&piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            // move the sign onto the separator so the output stays canonical
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sigma_kernel_core::ground::DiffGroundField;

    fn ring_q() -> DiffPolyRing {
        DiffPolyRing::new(DiffGroundField::rational_identity(), &["x", "y"])
    }

    fn ring_t() -> DiffPolyRing {
        DiffPolyRing::new(DiffGroundField::rational_functions_shift(1), &["y", "x"])
    }

    #[test]
    fn parses_relation() {
        let r = ring_q();
        let p = parse_expression("x@1 - x@0^2", &r).unwrap();
        let q = r.var_poly(0, 1).sub(&r.var_poly(0, 0).pow(2));
        assert!(p.sub(&q).is_zero());
    }

    #[test]
    fn expands_product() {
        let r = ring_q();
        let p = parse_expression("(x@0+1)*(x@0-1)", &r).unwrap();
        let q = parse_expression("x@0^2 - 1", &r).unwrap();
        assert!(p.sub(&q).is_zero());
    }

    #[test]
    fn error_position() {
        let r = ring_q();
        let e = parse_expression("x@0^", &r).unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_expression("z@0", &r).unwrap_err();
        assert_eq!(e.pos, 1);
        assert!(e.msg.contains("undeclared"));
    }

    #[test]
    fn round_trip() {
        let r = ring_t();
        for src in [
            "x@0^2 - y@0*t",
            "y@1 - y@0",
            "2/3*x@0*y@1^3 + t^2 - 5",
            "(1 + 2*t)*x@0 - 7/2",
            "x@0 - t",
            "0",
            "-3*x@0 + 1/2",
        ] {
            let p = parse_expression(src, &r).unwrap();
            let printed = print_expression(&p);
            let again = parse_expression(&printed, &r)
                .unwrap_or_else(|e| panic!("{} -> {}: {}", src, printed, e));
            assert!(again.sub(&p).is_zero(), "{} -> {}", src, printed);
            assert_eq!(printed, print_expression(&again));
        }
    }
}
