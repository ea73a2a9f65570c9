//! Text and JSON polynomial input.
//!
//! Grammar (whitespace ignored, `x`/`X` is the variable, `i` the imaginary unit):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*     juxtaposition multiplies
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' integer)?
//! primary := number | 'x' | 'i' | '(' expr ')'
//! ```
//!
//! Integer literals keep the polynomial exact; any decimal literal switches
//! the result to numeric mode.

use rug::{Integer, Rational};
use serde_json::Value;

use super::{ExactPoly, GaussRat, NumericPoly, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num { value: Rational, decimal: bool },
    X,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' | '.' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let int_part = &text[i..j];
                let mut frac_part = "";
                let mut decimal = false;
                if j < bytes.len() && bytes[j] == b'.' {
                    decimal = true;
                    let k = j + 1;
                    let mut e = k;
                    while e < bytes.len() && bytes[e].is_ascii_digit() {
                        e += 1;
                    }
                    frac_part = &text[k..e];
                    j = e;
                }
                if int_part.is_empty() && frac_part.is_empty() {
                    return Err(err(start, "malformed number"));
                }
                let mut exp10: i64 = 0;
                if j < bytes.len() && (bytes[j] == b'e' || bytes[j] == b'E') {
                    let mut k = j + 1;
                    let neg = k < bytes.len() && bytes[k] == b'-';
                    if k < bytes.len() && (bytes[k] == b'-' || bytes[k] == b'+') {
                        k += 1;
                    }
                    let ds = k;
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    if ds == k {
                        return Err(err(j, "malformed exponent"));
                    }
                    let e: i64 = text[ds..k].parse().map_err(|_| err(ds, "exponent too large"))?;
                    exp10 = if neg { -e } else { e };
                    decimal = true;
                    j = k;
                }
                let digits = format!("{int_part}{frac_part}");
                let mantissa = Integer::from_str_radix(&digits, 10).map_err(|_| err(start, "malformed number"))?;
                let scale = exp10 - frac_part.len() as i64;
                let value = if scale >= 0 {
                    Rational::from(mantissa * Integer::from(Integer::u_pow_u(10, scale as u32)))
                } else {
                    Rational::from((mantissa, Integer::from(Integer::u_pow_u(10, (-scale) as u32))))
                };
                out.push((start, Tok::Num { value, decimal }));
                i = j;
                continue;
            }
            'x' | 'X' => out.push((start, Tok::X)),
            'i' => out.push((start, Tok::I)),
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            other => return Err(err(start, format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    decimal: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<ExactPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.here();
                    let d = self.unary()?;
                    if d.degree() != Some(0) {
                        return Err(err(at, "divisor must be a nonzero constant"));
                    }
                    acc = acc.scale(&d.coeffs()[0].recip());
                }
                Some(Tok::Num { .. } | Tok::X | Tok::I | Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ExactPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExactPoly> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Num { value, decimal: false }) if *value.denom() == 1 => {
                    let e = value
                        .numer()
                        .to_u32()
                        .filter(|&e| e <= 4096)
                        .ok_or_else(|| err(at, "exponent out of range"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(err(at, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ExactPoly> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Num { value, decimal }) => {
                self.decimal |= decimal;
                Ok(ExactPoly::constant(GaussRat::real(value)))
            }
            Some(Tok::X) => Ok(ExactPoly::x()),
            Some(Tok::I) => Ok(ExactPoly::constant(GaussRat::i())),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(err(close, "expected ')'")),
                }
            }
            Some(t) => Err(err(at, format!("unexpected token {t:?}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

/// Parses expanded or factored text into an exact polynomial, also
/// reporting whether any decimal literal occurred.
pub fn parse_text(text: &str) -> Result<(ExactPoly, bool)> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err(0, "empty input"));
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), decimal: false };
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    Ok((poly, p.decimal))
}

fn json_int(v: &Value, what: &str) -> Result<Integer> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Integer::from)
            .ok_or_else(|| err(0, format!("{what}: expected an integer"))),
        Value::String(s) => Integer::from_str_radix(s.trim(), 10)
            .map_err(|_| err(0, format!("{what}: expected an integer string"))),
        _ => Err(err(0, format!("{what}: expected an integer"))),
    }
}

fn json_frac(num: &Value, den: &Value, what: &str) -> Result<Rational> {
    let n = json_int(num, what)?;
    let d = json_int(den, what)?;
    if d == 0 {
        return Err(err(0, format!("{what}: zero denominator")));
    }
    Ok(Rational::from((n, d)))
}

/// Parses `{"coeffs": [[re_num, re_den, im_num, im_den], ...]}`, lowest degree first.
pub fn parse_json(text: &str) -> Result<ExactPoly> {
    let v: Value = serde_json::from_str(text).map_err(|e| err(e.column().saturating_sub(1), e.to_string()))?;
    let arr = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| err(0, "missing \"coeffs\" array"))?;
    let coeffs = arr
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let what = format!("coeffs[{k}]");
            match c.as_array().map(Vec::as_slice) {
                Some([a, b, c, d]) => Ok(GaussRat::new(json_frac(a, b, &what)?, json_frac(c, d, &what)?)),
                _ => Err(err(0, format!("{what}: expected [re_num, re_den, im_num, im_den]"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactPoly::new(coeffs))
}

/// Renders the JSON coefficient form.
pub fn to_json(p: &ExactPoly) -> Value {
    let c: Vec<Value> = p
        .coeffs()
        .iter()
        .map(|c| {
            serde_json::json!([
                c.re.numer().to_string(),
                c.re.denom().to_string(),
                c.im.numer().to_string(),
                c.im.denom().to_string()
            ])
        })
        .collect();
    serde_json::json!({ "coeffs": c })
}

/// Accepts expanded text, factored text, or the JSON coefficient form.
/// Decimal literals produce a [`NumericPoly`] at `prec` bits.
pub fn parse_polynomial(text: &str, prec: u32) -> Result<Polynomial> {
    let trimmed = text.trim_start();
    let (poly, decimal) = if trimmed.starts_with('{') {
        (parse_json(trimmed)?, false)
    } else {
        parse_text(text)?
    };
    if poly.is_zero() {
        return Err(err(0, "zero polynomial"));
    }
    if decimal {
        let coeffs = poly.coeffs().iter().map(|c| c.to_complex_float(prec)).collect();
        Ok(Polynomial::Numeric(NumericPoly::new(coeffs, prec)?))
    } else {
        Ok(Polynomial::Exact(poly))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(s: &str) -> ExactPoly {
        match parse_polynomial(s, 128).unwrap() {
            Polynomial::Exact(p) => p,
            Polynomial::Numeric(_) => panic!("expected exact"),
        }
    }

    #[test]
    fn expanded_and_factored() {
        assert_eq!(exact("x^2 - 1"), ExactPoly::from_i64s(&[-1, 0, 1]));
        assert_eq!(exact("(x-1)^2*x"), ExactPoly::from_i64s(&[0, 1, -2, 1]));
        assert_eq!(exact("x^3 - 2*x + 1"), ExactPoly::from_i64s(&[1, -2, 0, 1]));
        assert_eq!(exact("2x(x+1)"), ExactPoly::from_i64s(&[0, 2, 2]));
        assert_eq!(exact("-x^2"), ExactPoly::from_i64s(&[0, 0, -1]));
        assert_eq!(
            exact("x - 1/2"),
            ExactPoly::new(vec![GaussRat::from_fracs((-1, 2), (0, 1)), GaussRat::one()])
        );
        assert_eq!(exact("x^2 + 1"), exact("(x - i)*(x + i)"));
    }

    #[test]
    fn decimal_forces_numeric() {
        match parse_polynomial("x^2 - 0.5", 128).unwrap() {
            Polynomial::Numeric(p) => {
                assert_eq!(p.degree(), 2);
                assert_eq!(p.coeffs()[0].re.to_f64(), -0.5);
            }
            Polynomial::Exact(_) => panic!("expected numeric"),
        }
        assert!(matches!(parse_polynomial("x - 1e-3", 64).unwrap(), Polynomial::Numeric(_)));
    }

    #[test]
    fn json_form() {
        let p = exact(r#"{"coeffs": [[-1,1,0,1],[0,1,0,1],[1,1,0,1]]}"#);
        assert_eq!(p, ExactPoly::from_i64s(&[-1, 0, 1]));
        let q = exact(r#"{"coeffs": [["1","2","-3","4"],[1,1,0,1]]}"#);
        assert_eq!(q.coeffs()[0], GaussRat::from_fracs((1, 2), (-3, 4)));
        assert_eq!(parse_json(&to_json(&q).to_string()).unwrap(), q);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial("x^2 + $", 128) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("(x-1", 128) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("x/x", 128), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_polynomial("x^1.5", 128), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_polynomial("x - x", 128).is_err());
    }

    #[test]
    fn render_roundtrip() {
        let p = ExactPoly::new(vec![
            GaussRat::from_fracs((1, 2), (-1, 3)),
            GaussRat::i(),
            GaussRat::from_i64(-7),
            GaussRat::from_fracs((0, 1), (-5, 2)),
        ]);
        assert_eq!(exact(&p.to_string()), p);
    }
}
