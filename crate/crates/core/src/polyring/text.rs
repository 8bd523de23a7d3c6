//! Canonical text form and parser for polynomials.
//!
//! Grammar (whitespace-insensitive):
//!   poly   := [sign] term (sign term)*
//!   term   := factor ('*' factor)*
//!   factor := int ['/' int] | ident ['^' int]
//! The printer emits terms in the active order, coefficient first, `^` only
//! for exponents > 1, and ` + ` / ` - ` separators; parsing the result gives
//! back the identical polynomial.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Polynomial, Rational, VarRegistry};
use crate::error::{Error, Result};

pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let reg = p.registry();
    let mut out = String::new();
    for (i, (c, m)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(abs.to_string());
        }
        for (var, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(reg.name(var).to_string()),
                _ => factors.push(format!("{}^{}", reg.name(var), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Ident(String),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n = digits
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad integer {digits:?}: {e}")))?;
                toks.push(Tok::Int(n));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(name));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    registry: &'a Arc<VarRegistry>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_int(&mut self, what: &str) -> Result<BigInt> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n),
            other => Err(Error::Parse(format!("expected {what}, found {other:?}"))),
        }
    }

    fn factor(&mut self, coeff: &mut Rational, exps: &mut [u32]) -> Result<()> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let d = self.expect_int("denominator")?;
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    *coeff *= Rational::new(n, d);
                } else {
                    *coeff *= Rational::from_integer(n);
                }
            }
            Some(Tok::Ident(name)) => {
                let var = self.registry.index_of(&name).ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown variable {name:?} (registry: [{}])",
                        self.registry.names().join(",")
                    ))
                })?;
                let e: u32 = if self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    let e = self.expect_int("exponent")?;
                    u32::try_from(&e)
                        .map_err(|_| Error::Parse(format!("exponent {e} out of range")))?
                } else {
                    1
                };
                exps[var] = exps[var]
                    .checked_add(e)
                    .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
            }
            other => {
                return Err(Error::Parse(format!(
                    "expected a number or variable, found {other:?}"
                )))
            }
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(Rational, Monomial)> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.registry.len()];
        loop {
            self.factor(&mut coeff, &mut exps)?;
            if self.peek() == Some(&Tok::Star) {
                self.bump();
            } else {
                break;
            }
        }
        Ok((coeff, Monomial::from_exps(exps)))
    }
}

/// Parse text into a polynomial over `registry`, sorted under `order`.
pub fn parse_polynomial(
    registry: &Arc<VarRegistry>,
    order: MonomialOrder,
    s: &str,
) -> Result<Polynomial> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial text".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        registry,
    };
    let mut terms = Vec::new();
    let mut sign = match p.peek() {
        Some(Tok::Plus) => {
            p.bump();
            1
        }
        Some(Tok::Minus) => {
            p.bump();
            -1
        }
        _ => 1,
    };
    loop {
        let (c, m) = p.term()?;
        terms.push((if sign < 0 { -c } else { c }, m));
        match p.bump() {
            None => break,
            Some(Tok::Plus) => sign = 1,
            Some(Tok::Minus) => sign = -1,
            other => return Err(Error::Parse(format!("expected + or -, found {other:?}"))),
        }
    }
    Polynomial::from_terms(Arc::clone(registry), order, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reg3() -> Arc<VarRegistry> {
        VarRegistry::new(["x", "y", "z"]).unwrap()
    }

    fn parse(s: &str) -> Polynomial {
        parse_polynomial(&reg3(), MonomialOrder::Lex, s).unwrap()
    }

    #[test]
    fn printer_canonical_forms() {
        assert_eq!(parse("0").to_string(), "0");
        assert_eq!(parse("y + x").to_string(), "x + y");
        assert_eq!(parse("-x - 1").to_string(), "-x - 1");
        assert_eq!(parse("5").to_string(), "5");
        assert_eq!(parse("x^2*y - 3/4*z + 1").to_string(), "x^2*y - 3/4*z + 1");
        assert_eq!(parse("2*x*2*y").to_string(), "4*x*y");
        assert_eq!(parse("x*x*x").to_string(), "x^3");
        assert_eq!(parse("x - x").to_string(), "0");
        assert_eq!(parse("1/2 + 1/3").to_string(), "5/6");
    }

    #[test]
    fn parser_rejects_malformed_text() {
        for bad in ["", "x +", "w", "x^", "1/0", "x & y", "x ^ -2", "3 4", "* x", "x y"] {
            assert!(
                parse_polynomial(&reg3(), MonomialOrder::Lex, bad).is_err(),
                "accepted {bad:?}"
            );
        }
    }

    #[test]
    fn parse_respects_requested_order() {
        let grev = parse_polynomial(&reg3(), MonomialOrder::GrevLex, "x + y^2").unwrap();
        assert_eq!(grev.to_string(), "y^2 + x");
        let lex = parse_polynomial(&reg3(), MonomialOrder::Lex, "x + y^2").unwrap();
        assert_eq!(lex.to_string(), "x + y^2");
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-30i64..=30, 1i64..=3).prop_map(|(n, d)| {
            Rational::new(BigInt::from(n), BigInt::from(d))
        })
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let term = (arb_rational(), proptest::collection::vec(0u32..4, 3));
        proptest::collection::vec(term, 0..6).prop_map(|terms| {
            let terms = terms
                .into_iter()
                .map(|(c, e)| (c, Monomial::from_exps(e)))
                .collect();
            Polynomial::from_terms(reg3(), MonomialOrder::Lex, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let text = p.to_string();
            let back = parse_polynomial(&reg3(), MonomialOrder::Lex, &text).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
