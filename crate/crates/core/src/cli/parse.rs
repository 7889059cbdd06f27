//! Reading and writing polynomials over F_p.
//!
//! Expressions are signed sums of terms such as `3`, `2*x^3`, `x^2*y`,
//! `4xy^2`; `*` and `^1` may be left out and whitespace is ignored. The
//! alternative format has one term `i j c` (meaning c x^i y^j) per line.

use std::collections::BTreeMap;

use crate::algebra::{BiPoly, Exponent, PrimeField, Ring};
use crate::error::{Error, Result};

/// A parsed polynomial and the terms that vanished modulo p.
#[derive(Clone, Debug)]
pub struct ParsedPoly {
    pub poly: BiPoly<PrimeField>,
    pub dropped: Vec<Exponent>,
}

impl ParsedPoly {
    pub fn warnings(&self) -> Vec<String> {
        self.dropped
            .iter()
            .map(|&(i, j)| format!("term {} vanishes modulo p and was dropped", monomial(i, j)))
            .collect()
    }
}

fn monomial(i: u32, j: u32) -> String {
    let var = |v: char, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    match (i, j) {
        (0, 0) => "1".into(),
        (_, 0) => var('x', i),
        (0, _) => var('y', j),
        _ => format!("{}*{}", var('x', i), var('y', j)),
    }
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset,
            message: message.into(),
        })
    }

    /// A run of digits, reduced modulo p as it is read.
    fn number_mod(&mut self, p: u64) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&c) = self.text.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            v = (v * 10 + (c - b'0') as u64) % p;
            self.pos += 1;
        }
        if self.pos == start {
            return self.error(start, "expected an integer");
        }
        Ok(v)
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u32 = 0;
        while let Some(&c) = self.text.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u32))
                .ok_or(Error::Syntax {
                    offset: start,
                    message: "exponent too large".into(),
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return self.error(start, "expected an exponent");
        }
        Ok(v)
    }
}

/// Parses an expression over F_p; coefficients are reduced into [0, p).
pub fn parse_poly(text: &str, field: PrimeField) -> Result<ParsedPoly> {
    let p = field.p();
    let mut lx = Lexer {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut terms: BTreeMap<Exponent, u64> = BTreeMap::new();
    let mut first = true;
    loop {
        let negative = match lx.peek() {
            None if first => return lx.error(lx.pos, "empty polynomial"),
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                false
            }
            Some(b'-') => {
                lx.pos += 1;
                true
            }
            Some(_) if first => false,
            Some(_) => return lx.error(lx.pos, "expected '+' or '-'"),
        };
        first = false;
        let (exp, c) = term(&mut lx, p)?;
        let c = if negative { field.neg(&c) } else { c };
        let slot = terms.entry(exp).or_insert(0);
        *slot = field.add(slot, &c);
    }
    Ok(collect(field, terms))
}

/// One term: an optional coefficient followed by variables with optional
/// exponents, separated by optional `*`.
fn term(lx: &mut Lexer, p: u64) -> Result<(Exponent, u64)> {
    let mut coeff = 1u64;
    let (mut i, mut j) = (0u32, 0u32);
    let mut factors = 0;
    loop {
        let at = {
            lx.skip_ws();
            lx.pos
        };
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = coeff * lx.number_mod(p)? % p;
            }
            Some(c @ (b'x' | b'y' | b'X' | b'Y')) => {
                lx.pos += 1;
                let e = if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    lx.exponent()?
                } else {
                    1
                };
                let slot = if c.eq_ignore_ascii_case(&b'x') { &mut i } else { &mut j };
                *slot = slot.checked_add(e).ok_or(Error::Syntax {
                    offset: at,
                    message: "exponent too large".into(),
                })?;
            }
            Some(b'(') => return lx.error(at, "parentheses are not supported"),
            Some(_) | None if factors == 0 => return lx.error(at, "expected a coefficient or a variable"),
            _ => return lx.error(at, "expected a factor after '*'"),
        }
        factors += 1;
        match lx.peek() {
            Some(b'*') => lx.pos += 1,
            Some(c) if c.is_ascii_digit() || matches!(c, b'x' | b'y' | b'X' | b'Y') => {}
            _ => break,
        }
    }
    Ok(((i, j), coeff))
}

fn collect(field: PrimeField, terms: BTreeMap<Exponent, u64>) -> ParsedPoly {
    let dropped = terms.iter().filter(|(_, &c)| c == 0).map(|(&e, _)| e).collect();
    ParsedPoly {
        poly: BiPoly::from_terms(field, terms.into_iter().filter(|&(_, c)| c != 0)),
        dropped,
    }
}

/// Parses lines `i j c` (blank lines and `#` comments allowed).
pub fn parse_triples(text: &str, field: PrimeField) -> Result<ParsedPoly> {
    let mut terms: BTreeMap<Exponent, u64> = BTreeMap::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap().trim();
        if !body.is_empty() {
            let parts: Vec<&str> = body.split_whitespace().collect();
            let bad = || Error::Syntax {
                offset,
                message: format!("expected 'i j c', found {body:?}"),
            };
            if parts.len() != 3 {
                return Err(bad());
            }
            let i: u32 = parts[0].parse().map_err(|_| bad())?;
            let j: u32 = parts[1].parse().map_err(|_| bad())?;
            let c: i128 = parts[2].parse().map_err(|_| bad())?;
            let c = c.rem_euclid(field.p() as i128) as u64;
            let slot = terms.entry((i, j)).or_insert(0);
            *slot = field.add(slot, &c);
        }
        offset += line.len();
    }
    if terms.is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "no terms".into(),
        });
    }
    Ok(collect(field, terms))
}

fn looks_like_triples(text: &str) -> bool {
    let mut any = false;
    for line in text.lines() {
        let body = line.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let parts: Vec<&str> = body.split_whitespace().collect();
        if parts.len() != 3 || parts.iter().any(|s| s.trim_start_matches('-').parse::<u128>().is_err()) {
            return false;
        }
        any = true;
    }
    any
}

/// Parses either format, deciding by content.
pub fn parse_input(text: &str, field: PrimeField) -> Result<ParsedPoly> {
    if looks_like_triples(text) {
        parse_triples(text, field)
    } else {
        parse_poly(text, field)
    }
}

/// Reads `@path` from disk, otherwise takes the argument as the polynomial.
pub fn load_poly(arg: &str, field: PrimeField) -> Result<ParsedPoly> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            parse_input(&text, field)
        }
        None => parse_input(arg, field),
    }
}

/// Text form accepted by [`parse_poly`], highest total degree first.
pub fn render(f: &BiPoly<PrimeField>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&Exponent, &u64)> = f.terms().collect();
    terms.sort_by_key(|&(&(i, j), _)| std::cmp::Reverse((i + j, i)));
    terms
        .iter()
        .map(|&(&(i, j), &c)| match (c, i + j) {
            (_, 0) => c.to_string(),
            (1, _) => monomial(i, j),
            _ => format!("{c}*{}", monomial(i, j)),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn reduces_coefficients() {
        let parsed = parse_poly("y^2 - x^3 - x - 1", f(5)).unwrap();
        let expect = BiPoly::from_int_terms(f(5), &[(0, 2, 1), (3, 0, 4), (1, 0, 4), (0, 0, 4)]);
        assert_eq!(parsed.poly, expect);
        assert!(parsed.dropped.is_empty());
    }

    #[test]
    fn vanishing_terms_are_reported() {
        let parsed = parse_poly("x*y + 3", f(3)).unwrap();
        assert_eq!(parsed.poly, BiPoly::from_int_terms(f(3), &[(1, 1, 1)]));
        assert_eq!(parsed.dropped, vec![(0, 0)]);
        assert_eq!(parsed.warnings().len(), 1);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(
            parse_poly("y^^2", f(5)).unwrap_err(),
            Error::Syntax {
                offset: 2,
                message: "expected an exponent".into()
            }
        );
        assert!(matches!(parse_poly("", f(5)), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_poly("x + + y", f(5)), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(parse_poly("x z", f(5)), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("x*", f(5)), Err(Error::Syntax { offset: 2, .. })));
    }

    #[test]
    fn implicit_products_and_repeats() {
        let a = parse_poly("4xy^2 + 2 * x * x - -1", f(7));
        // "- -1" is a doubled sign, which the grammar rejects
        assert!(a.is_err());
        let a = parse_poly("4xy^2 + 2 * x * x + 1", f(7)).unwrap();
        let b = BiPoly::from_int_terms(f(7), &[(1, 2, 4), (2, 0, 2), (0, 0, 1)]);
        assert_eq!(a.poly, b);
        assert_eq!(parse_poly("-x^1y^0 + x", f(7)).unwrap().dropped, vec![(1, 0)]);
    }

    #[test]
    fn triple_format() {
        let text = "# elliptic curve\n0 2 1\n3 0 -1\n1 0 -1\n0 0 -1\n";
        let parsed = parse_input(text, f(5)).unwrap();
        assert_eq!(parsed.poly, parse_poly("y^2 - x^3 - x - 1", f(5)).unwrap().poly);
        assert!(matches!(parse_triples("0 2\n", f(5)), Err(Error::Syntax { .. })));
    }

    proptest! {
        #[test]
        fn render_round_trips(
            p in prop::sample::select(vec![2u64, 3, 5, 7, 13, 101]),
            terms in prop::collection::vec((0u32..7, 0u32..7, -50i64..50), 0..10),
        ) {
            let poly = BiPoly::from_int_terms(f(p), &terms);
            prop_assume!(!poly.is_zero());
            let back = parse_poly(&render(&poly), f(p)).unwrap();
            prop_assert_eq!(back.poly, poly);
            prop_assert!(back.dropped.is_empty());
        }
    }
}
