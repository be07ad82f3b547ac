//! Text grammar for polynomials.
//!
//! Terms joined by `+`/`-`; each term is a `*`-separated product of an
//! optional rational coefficient (`p/q` or integer) and variable powers
//! `x0, x1..xn, y, z` (case-insensitive) with optional `^e`. Printing is
//! canonical (descending graded-lex term order), so parse -> print ->
//! parse is the identity.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Mono, Poly};
use crate::error::Error;
use crate::scalar::Rat;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Rat(Rat),
    Var(usize), // slot index relative to [x0.., y, z] layout
    Plus,
    Minus,
    Star,
    Caret,
    Eof,
}

struct Spanned {
    tok: Tok,
    pos: usize,
}

fn err_at(src: &str, pos: usize, msg: impl Into<String>) -> Error {
    let mut line = 1usize;
    let mut col = 1usize;
    for (i, ch) in src.char_indices() {
        if i >= pos {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn read_uint(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<BigInt>()
            .unwrap()
    }

    fn next(&mut self, full: &str, nvars: usize) -> Result<Spanned, Error> {
        self.skip_ws();
        let pos = self.pos;
        if self.pos >= self.src.len() {
            return Ok(Spanned { tok: Tok::Eof, pos });
        }
        let b = self.src[self.pos];
        let tok = match b {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'0'..=b'9' => {
                let numer = self.read_uint();
                let save = self.pos;
                self.skip_ws();
                if self.pos < self.src.len() && self.src[self.pos] == b'/' {
                    self.pos += 1;
                    self.skip_ws();
                    if self.pos >= self.src.len() || !self.src[self.pos].is_ascii_digit() {
                        return Err(err_at(full, self.pos, "expected denominator after '/'"));
                    }
                    let denom = self.read_uint();
                    if denom.is_zero() {
                        return Err(err_at(full, pos, "zero denominator"));
                    }
                    Tok::Rat(Rat::new(numer, denom))
                } else {
                    self.pos = save;
                    Tok::Rat(Rat::from_integer(numer))
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .to_ascii_lowercase();
                let slot = if name == "y" {
                    nvars + 1
                } else if name == "z" {
                    nvars + 2
                } else if let Some(idx) = name.strip_prefix('x') {
                    match idx.parse::<usize>() {
                        Ok(i) if i <= nvars => i,
                        Ok(i) => {
                            return Err(err_at(
                                full,
                                pos,
                                format!("variable x{i} out of range (n = {nvars})"),
                            ))
                        }
                        Err(_) => {
                            return Err(err_at(full, pos, format!("unknown variable '{name}'")))
                        }
                    }
                } else {
                    return Err(err_at(full, pos, format!("unknown variable '{name}'")));
                };
                Tok::Var(slot)
            }
            other => {
                return Err(err_at(
                    full,
                    pos,
                    format!("unexpected character '{}'", other as char),
                ))
            }
        };
        Ok(Spanned { tok, pos })
    }
}

/// Parses the text grammar into a polynomial with `n` x-variables.
pub fn parse_poly(src: &str, n: usize) -> Result<Poly, Error> {
    let mut lex = Lexer::new(src);
    let mut out = Poly::zero(n);
    let mut cur = lex.next(src, n)?;
    if cur.tok == Tok::Eof {
        return Err(err_at(src, 0, "empty polynomial"));
    }
    loop {
        // term sign
        let mut negative = false;
        loop {
            match cur.tok {
                Tok::Plus => {
                    cur = lex.next(src, n)?;
                }
                Tok::Minus => {
                    negative = !negative;
                    cur = lex.next(src, n)?;
                }
                _ => break,
            }
        }
        // term body: factor (* factor)*
        let mut coeff = Rat::one();
        let mut exps = vec![0u32; n + 3];
        let mut saw_factor = false;
        loop {
            match cur.tok.clone() {
                Tok::Rat(r) => {
                    coeff *= r;
                    saw_factor = true;
                    cur = lex.next(src, n)?;
                }
                Tok::Var(slot) => {
                    saw_factor = true;
                    cur = lex.next(src, n)?;
                    let mut e: u32 = 1;
                    if cur.tok == Tok::Caret {
                        cur = lex.next(src, n)?;
                        match cur.tok.clone() {
                            Tok::Rat(r) if r.is_integer() && !r.is_negative() => {
                                e = num_traits::ToPrimitive::to_u32(&r.to_integer()).ok_or_else(
                                    || err_at(src, cur.pos, "exponent too large"),
                                )?;
                                cur = lex.next(src, n)?;
                            }
                            _ => {
                                return Err(err_at(
                                    src,
                                    cur.pos,
                                    "expected a non-negative integer exponent after '^'",
                                ))
                            }
                        }
                    }
                    exps[slot] += e;
                }
                Tok::Eof | Tok::Plus | Tok::Minus => break,
                Tok::Star | Tok::Caret => {
                    return Err(err_at(src, cur.pos, "expected a coefficient or variable"))
                }
            }
            // factor separator
            match cur.tok {
                Tok::Star => {
                    cur = lex.next(src, n)?;
                }
                Tok::Eof | Tok::Plus | Tok::Minus => break,
                _ => {
                    return Err(err_at(
                        src,
                        cur.pos,
                        "expected '*', '+', '-' or end of input",
                    ))
                }
            }
        }
        if !saw_factor {
            return Err(err_at(src, cur.pos, "empty term"));
        }
        if negative {
            coeff = -coeff;
        }
        out.add_term(Mono::from_exps(exps), coeff);
        if cur.tok == Tok::Eof {
            break;
        }
    }
    Ok(out)
}

fn var_name(slot: usize, nvars: usize) -> String {
    if slot <= nvars {
        format!("x{slot}")
    } else if slot == nvars + 1 {
        "y".into()
    } else {
        "z".into()
    }
}

/// Canonical printer: descending graded-lex, explicit `*` between factors.
pub fn format_poly(p: &Poly, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let n = p.nvars();
    let mut first = true;
    for (mono, coeff) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let neg = coeff.is_negative();
        let mag = coeff.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || mono.total_degree() == 0 {
            factors.push(crate::scalar::fmt_rat(&mag));
        }
        for (slot, &e) in mono.exps().iter().enumerate() {
            if e == 1 {
                factors.push(var_name(slot, n));
            } else if e > 1 {
                factors.push(format!("{}^{}", var_name(slot, n), e));
            }
        }
        write!(f, "{}", factors.join(" * "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn parse_basics() {
        let p = parse_poly("x1 * y^2 + 1", 1).unwrap();
        assert_eq!(p.deg_y(), 2);
        assert_eq!(p.constant_term(), int(1));
        let q = parse_poly("-3/4*X1 + Y - y", 1).unwrap();
        assert_eq!(q, parse_poly("-3/4 * x1", 1).unwrap());
        // repeated variable factors multiply
        assert_eq!(
            parse_poly("x1 * x1 * x1", 1).unwrap(),
            parse_poly("x1^3", 1).unwrap()
        );
        assert_eq!(
            parse_poly("2 * 3 * x1", 1).unwrap(),
            parse_poly("6 * x1", 1).unwrap()
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_poly("x1 + $", 1) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 6);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_poly("x2", 1).is_err());
        assert!(parse_poly("1/0", 1).is_err());
        assert!(parse_poly("", 1).is_err());
        assert!(parse_poly("x1 ^ -2", 1).is_err());
        assert!(parse_poly("w", 2).is_err());
    }

    #[test]
    fn print_then_parse_round_trip() {
        let samples = [
            "x1 * y^2 + 1",
            "-x1^2 + x1 - 3/16",
            "0",
            "z^2 - y^2",
            "4/3 - x1^2",
            "x0^2 - x0 * x1 + x1^2",
        ];
        for s in samples {
            let p = parse_poly(s, 1).unwrap();
            let printed = p.to_string();
            let q = parse_poly(&printed, 1).unwrap();
            assert_eq!(p, q, "round trip failed for {s} -> {printed}");
            assert_eq!(printed, q.to_string());
        }
    }

    #[test]
    fn zero_cancellation_prints_zero() {
        let p = parse_poly("x1 - x1", 1).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
        assert!(parse_poly("0", 1).unwrap().is_zero());
    }

    #[test]
    fn coefficient_of_one_is_omitted() {
        assert_eq!(parse_poly("1 * x1", 1).unwrap().to_string(), "x1");
        assert_eq!(parse_poly("-1 * x1", 1).unwrap().to_string(), "-x1");
        assert_eq!(parse_poly("5/5", 1).unwrap().to_string(), "1");
        assert_eq!(frac(5, 5), int(1));
    }
}
