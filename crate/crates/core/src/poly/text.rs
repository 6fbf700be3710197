//! Text forms for polynomials: dense `[c0, c1, ...]` and sparse `{deg: coeff, ...}`.
//! A coefficient is an integer (reduced mod p) or a tuple `(c0, c1, ...)` of prime-field
//! residues, constant first.

use thiserror::Error;

use super::UPoly;
use crate::gf::{Elem, FiniteField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {col}: {msg}")]
pub struct TextError {
    /// 1-based character column within the parsed string.
    pub col: usize,
    pub msg: String,
}

/// Human-readable form, highest degree first.
pub fn format_poly(p: &UPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let f = p.field();
    let mut parts = Vec::new();
    for (d, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let cs = f.fmt_elem(c);
        let mono = match d {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{d}"),
        };
        parts.push(match (d, c == f.one()) {
            (0, _) => cs,
            (_, true) => mono,
            _ => format!("{cs}*{mono}"),
        });
    }
    parts.join(" + ")
}

/// Sparse text form accepted by [`parse_poly`].
pub fn to_sparse(p: &UPoly) -> String {
    let f = p.field();
    let body: Vec<String> = p.terms().map(|(d, c)| format!("{d}:{}", f.fmt_elem(c))).collect();
    format!("{{{}}}", body.join(","))
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a FiniteField,
}

impl Cursor<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, TextError> {
        Err(TextError { col: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), TextError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected '{c}', found '{x}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn int(&mut self) -> Result<i64, TextError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn elem(&mut self) -> Result<Elem, TextError> {
        let p = self.field.characteristic() as i64;
        if self.peek() == Some('(') {
            let start = self.pos;
            self.pos += 1;
            let mut digits = Vec::new();
            loop {
                digits.push(self.int()?.rem_euclid(p) as u64);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err("expected ',' or ')' in coefficient tuple"),
                }
            }
            return self.field.from_coeffs(&digits).or_else(|e| {
                self.pos = start;
                self.err(e.to_string())
            });
        }
        Ok(self.field.from_int(self.int()?))
    }
}

/// Parses either text form into a polynomial over `field`.
pub fn parse_poly(field: &FiniteField, s: &str) -> Result<UPoly, TextError> {
    let mut cur = Cursor { chars: s.chars().collect(), pos: 0, field };
    let poly = match cur.peek() {
        Some('[') => {
            cur.pos += 1;
            let mut coeffs = Vec::new();
            if cur.peek() == Some(']') {
                cur.pos += 1;
            } else {
                loop {
                    coeffs.push(cur.elem()?);
                    match cur.peek() {
                        Some(',') => cur.pos += 1,
                        Some(']') => {
                            cur.pos += 1;
                            break;
                        }
                        _ => return cur.err("expected ',' or ']'"),
                    }
                }
            }
            UPoly::new(field, coeffs)
        }
        Some('{') => {
            cur.pos += 1;
            let mut terms = Vec::new();
            if cur.peek() == Some('}') {
                cur.pos += 1;
            } else {
                loop {
                    let d = cur.int()?;
                    if d < 0 {
                        return cur.err("negative degree");
                    }
                    cur.expect(':')?;
                    terms.push((d as usize, cur.elem()?));
                    match cur.peek() {
                        Some(',') => cur.pos += 1,
                        Some('}') => {
                            cur.pos += 1;
                            break;
                        }
                        _ => return cur.err("expected ',' or '}'"),
                    }
                }
            }
            if terms.is_empty() {
                UPoly::zero(field)
            } else {
                UPoly::from_terms(field, &terms)
            }
        }
        _ => return cur.err("expected '[' or '{'"),
    };
    if cur.peek().is_some() {
        return cur.err("trailing characters");
    }
    Ok(poly)
}

/// Parses a single field element: an integer or a residue tuple.
pub fn parse_elem(field: &FiniteField, s: &str) -> Result<Elem, TextError> {
    let mut cur = Cursor { chars: s.chars().collect(), pos: 0, field };
    let e = cur.elem()?;
    if cur.peek().is_some() {
        return cur.err("trailing characters");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_and_sparse_agree() {
        let f = FiniteField::of(3, 3);
        let a = parse_poly(&f, "[1, -1, 0, (0,1,0)]").unwrap();
        let b = parse_poly(&f, "{3:(0,1), 0:1, 1:2}").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly(&f, &to_sparse(&a)).unwrap(), a);
    }

    #[test]
    fn reports_columns() {
        let f = FiniteField::of(2, 1);
        assert_eq!(parse_poly(&f, "[1, x]").unwrap_err().col, 5);
        assert_eq!(parse_poly(&f, "{1 2}").unwrap_err().col, 4);
        assert!(parse_poly(&f, "(1)").is_err());
        assert_eq!(parse_poly(&f, "{}").unwrap(), UPoly::zero(&f));
    }
}
