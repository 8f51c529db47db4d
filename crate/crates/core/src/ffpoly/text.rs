//! Text form of polynomials.
//!
//! Emitted form: terms `c*T^k` in descending `k`, joined by `+`. The
//! coefficient is a decimal residue for prime fields and a bracketed
//! coordinate list `[c0,c1,..]` for extensions; a unit coefficient is
//! dropped in front of `T`, `T^1` is written `T` and `T^0` loses its
//! monomial. The zero polynomial is `0`.
//!
//! The parser also accepts `coeffs:` followed by a comma-separated,
//! degree-ascending coefficient list, e.g. `coeffs:2,2,1`.

use std::fmt;

use super::field::{Fq, FqElem};
use super::poly::Poly;
use crate::error::{Error, Result};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let field = self.field();
        let mut first = true;
        for (k, &c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let coeff = field.fmt_elem(c);
            match k {
                0 => f.write_str(&coeff)?,
                _ => {
                    if c != FqElem::ONE {
                        write!(f, "{coeff}*")?;
                    }
                    if k == 1 {
                        f.write_str("T")?;
                    } else {
                        write!(f, "T^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn at(&self) -> usize {
        self.offset + self.pos
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(parse_err(self.at(), format!("expected '{}'", b as char)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_err(self.at(), "expected a decimal integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| parse_err(self.offset + start, "integer out of range"))
    }

    fn done(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a coefficient: a decimal residue in `0..p`, or `[c0,c1,..]`.
fn parse_coeff(field: &Fq, cur: &mut Cursor<'_>) -> Result<FqElem> {
    let p = field.p();
    if cur.eat(b'[') {
        let mut digits = Vec::new();
        loop {
            let at = cur.at();
            let d = cur.number()?;
            if d >= p {
                return Err(parse_err(at, format!("coordinate {d} not in 0..{p}")));
            }
            digits.push(d);
            if !cur.eat(b',') {
                break;
            }
        }
        let at = cur.at();
        cur.expect(b']')?;
        field.from_digits(&digits).map_err(|_| {
            parse_err(at, format!("more than {} coordinates", field.e()))
        })
    } else {
        let at = cur.at();
        let d = cur.number()?;
        if d >= p {
            return Err(parse_err(at, format!("coefficient {d} not in 0..{p}")));
        }
        Ok(FqElem(d as u32))
    }
}

/// Parses a single field element, e.g. `2` or `[0,1]`.
pub fn parse_elem(field: &Fq, text: &str) -> Result<FqElem> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0, offset: 0 };
    let c = parse_coeff(field, &mut cur)?;
    if !cur.done() {
        return Err(parse_err(cur.at(), "trailing characters"));
    }
    Ok(c)
}

pub fn parse_poly(field: &Fq, text: &str) -> Result<Poly> {
    parse_at(field, text, 0)
}

fn parse_at(field: &Fq, text: &str, offset: usize) -> Result<Poly> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    if let Some(rest) = trimmed.strip_prefix("coeffs:") {
        let mut cur = Cursor { src: rest.as_bytes(), pos: 0, offset: offset + lead + 7 };
        let mut coeffs = vec![parse_coeff(field, &mut cur)?];
        while cur.eat(b',') {
            coeffs.push(parse_coeff(field, &mut cur)?);
        }
        if !cur.done() {
            return Err(parse_err(cur.at(), "expected ',' or end of input"));
        }
        return Ok(Poly::new(field, coeffs));
    }

    let mut cur = Cursor { src: text.as_bytes(), pos: 0, offset };
    if cur.done() {
        return Err(parse_err(offset, "empty polynomial"));
    }
    let mut acc = Poly::zero(field);
    loop {
        let (coeff, has_coeff) = match cur.peek() {
            Some(b'T') => (FqElem::ONE, false),
            Some(b'[') | Some(b'0'..=b'9') => (parse_coeff(field, &mut cur)?, true),
            _ => return Err(parse_err(cur.at(), "expected a term")),
        };
        let mut k = 0usize;
        let has_mono = if has_coeff { cur.eat(b'*') } else { true };
        if has_mono {
            cur.expect(b'T')?;
            k = 1;
            if cur.eat(b'^') {
                let at = cur.at();
                k = usize::try_from(cur.number()?)
                    .ok()
                    .filter(|&k| k <= 4096)
                    .ok_or_else(|| parse_err(at, "exponent too large"))?;
            }
        }
        acc = &acc + &Poly::monomial(field, coeff, k);
        if cur.done() {
            break;
        }
        cur.expect(b'+')?;
    }
    Ok(acc)
}

/// Parses a list of polynomials separated by `,` or `;`.
///
/// A `coeffs:` entry swallows the bare coefficients that follow it, so
/// `coeffs:1,0,1,T+2` is two polynomials.
pub fn parse_poly_list(field: &Fq, text: &str) -> Result<Vec<Poly>> {
    // (offset, text, closed by ';')
    let mut groups: Vec<(usize, String, bool)> = Vec::new();
    let mut pos = 0usize;
    for chunk in split_top_level(text) {
        let closes = chunk.ends_with(';');
        let piece = chunk.trim_end_matches(';');
        let body = piece.trim();
        let continues = groups
            .last()
            .is_some_and(|(_, g, closed)| !closed && g.trim_start().starts_with("coeffs:"))
            && !body.is_empty()
            && (body.starts_with('[') || body.bytes().all(|b| b.is_ascii_digit()));
        match groups.last_mut() {
            Some(last) if continues => {
                last.1.push(',');
                last.1.push_str(piece);
                last.2 = closes;
            }
            _ => groups.push((pos, piece.to_string(), closes)),
        }
        pos += chunk.len() + usize::from(!closes);
    }
    groups
        .into_iter()
        .map(|(at, g, _)| parse_at(field, &g, at))
        .collect()
}

/// Splits on `,`/`;` outside brackets. A `;` stays attached to its chunk
/// so that it can terminate a `coeffs:` run.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            ';' if depth == 0 => {
                out.push(&text[start..=i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}
