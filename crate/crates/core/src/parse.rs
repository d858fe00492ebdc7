//! Text syntax for parameter vectors: `(r,s)(r,s)...`, or `-` for the empty
//! vector. Whitespace is allowed between tokens.

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::qvaluation::{HypergeomSpec, PochParams};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => self.err(format!("expected '{c}', found '{x}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let sign = usize::from(rest.starts_with(['-', '+']));
        let digits = rest[sign..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if digits == 0 {
            return self.err("expected an integer");
        }
        let end = start + sign + digits;
        match self.text[start..end].parse() {
            Ok(v) => {
                self.pos = end;
                Ok(v)
            }
            Err(_) => self.err("integer out of range"),
        }
    }
}

/// Parses one parameter vector.
pub fn parse_pairs(text: &str) -> Result<Vec<PochParams>> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.peek() == Some('-') {
        cur.pos += 1;
        if !cur.at_end() {
            return cur.err("unexpected input after '-'");
        }
        return Ok(Vec::new());
    }
    if cur.at_end() {
        return cur.err("empty vector must be written '-'");
    }
    let mut out = Vec::new();
    while !cur.at_end() {
        cur.expect('(')?;
        let r = cur.integer()?;
        cur.expect(',')?;
        let s = cur.integer()?;
        cur.expect(')')?;
        out.push(PochParams::new(r, s)?);
    }
    Ok(out)
}

pub fn parse_spec(num_text: &str, den_text: &str) -> Result<HypergeomSpec> {
    Ok(HypergeomSpec::new(
        parse_pairs(num_text)?,
        parse_pairs(den_text)?,
    ))
}

/// Parses a single `(r,s)`.
pub fn parse_pair(text: &str) -> Result<PochParams> {
    let v = parse_pairs(text)?;
    match v.as_slice() {
        [p] => Ok(*p),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("expected exactly one pair, found {}", v.len()),
        }),
    }
}

/// Comma-separated positive integers, or `-` for none.
pub fn parse_int_list(text: &str) -> Result<Vec<u64>> {
    let t = text.trim();
    if t == "-" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pos = text.len() - text.trim_start().len();
    for part in t.split(',') {
        let v = part.trim().parse::<u64>().map_err(|_| Error::Parse {
            pos,
            msg: format!("expected a positive integer, found {:?}", part.trim()),
        })?;
        if v == 0 {
            return Err(Error::Parse {
                pos,
                msg: "multipliers must be positive".into(),
            });
        }
        out.push(v);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// `p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    text.trim().parse().map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("{e}"),
    })
}

/// Comma-separated rationals, or `-` for none.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    let t = text.trim();
    if t == "-" {
        return Ok(Vec::new());
    }
    t.split(',').map(parse_rational).collect()
}
