use std::fmt;

use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, Term};

/// A parsed problem file.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: PolyRing,
    pub vars: Vec<String>,
    pub polys: Vec<Polynomial>,
    /// 1-based source line of each polynomial.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: modulus {p} is not an odd prime below 2^31")]
    NonPrimeModulus { line: usize, p: u64 },
    #[error("line {line}: polynomial {index} is not homogeneous")]
    NonHomogeneousInput { line: usize, index: usize },
    #[error("no polynomials given")]
    NoPolynomials,
}

fn syntax(line: usize, column: usize, message: impl fmt::Display) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

struct Cursor {
    chars: Vec<char>,
    at: usize,
    line: usize,
    /// Column offset of `chars[0]` in the source line (0-based).
    offset: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, offset: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            at: 0,
            line,
            offset,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.at).is_some_and(|c| c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).copied()
    }

    fn column(&self) -> usize {
        self.offset + self.at + 1
    }

    fn err(&self, msg: impl fmt::Display) -> ParseError {
        syntax(self.line, self.column(), msg)
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.at;
        while self.chars.get(self.at).is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.at].iter().collect();
        s.parse()
            .map_err(|_| syntax(self.line, self.offset + start + 1, "number too large"))
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.at;
        if !self
            .chars
            .get(self.at)
            .is_some_and(|c| c.is_ascii_alphabetic() || *c == '_')
        {
            return None;
        }
        while self
            .chars
            .get(self.at)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.at += 1;
        }
        Some(self.chars[start..self.at].iter().collect())
    }
}

/// Strips a `#` comment.
fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn header<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    let t = text.trim_start();
    let rest = t.strip_prefix(key)?;
    let rest = rest.trim_start();
    rest.strip_prefix(':').or_else(|| rest.strip_prefix('='))
}

/// Parses one polynomial expression over `vars`.
pub fn parse_polynomial(
    src: &str,
    ring: &PolyRing,
    vars: &[String],
    line: usize,
    offset: usize,
) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor::new(src, line, offset);
    let mut terms = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        match cur.peek() {
            Some('+') => cur.at += 1,
            Some('-') => {
                negative = true;
                cur.at += 1;
            }
            _ if !first => return Err(cur.err("expected '+' or '-'")),
            _ => {}
        }
        first = false;
        let mut coeff: i64 = 1;
        let mut exps = vec![0u16; vars.len()];
        let mut factors = 0;
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = cur.number()?;
                    coeff = coeff
                        .checked_mul(ring.field.from_u64(n).value() as i64)
                        .map(|v| v.rem_euclid(ring.field.modulus() as i64))
                        .ok_or_else(|| cur.err("coefficient overflow"))?;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let col = cur.column();
                    let name = cur.ident().unwrap();
                    let k = vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| syntax(line, col, format!("unknown variable '{name}'")))?;
                    let mut e = 1u64;
                    if cur.peek() == Some('^') {
                        cur.at += 1;
                        e = cur.number()?;
                    }
                    let total = exps[k] as u64 + e;
                    exps[k] = u16::try_from(total).map_err(|_| cur.err("exponent too large"))?;
                }
                _ => return Err(cur.err("expected a coefficient or variable")),
            }
            factors += 1;
            if cur.peek() == Some('*') {
                cur.at += 1;
            } else {
                break;
            }
        }
        debug_assert!(factors > 0);
        if negative {
            coeff = -coeff;
        }
        terms.push(Term::new(ring.field.from_i64(coeff), Monomial::new(exps)));
    }
    if first {
        return Err(cur.err("empty polynomial"));
    }
    Ok(ring.from_terms(terms))
}

/// Parses a problem file. `order` overrides the file's `order:` line; non-homogeneous
/// polynomials are rejected unless `allow_affine`.
pub fn parse_problem(
    text: &str,
    order: Option<MonomialOrder>,
    allow_affine: bool,
) -> Result<ProblemFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, content(l)))
        .filter(|(_, l)| !l.trim().is_empty());
    let (pl, ptext) = lines
        .next()
        .ok_or_else(|| syntax(1, 1, "expected 'p = <prime>'"))?;
    let pval = header(ptext, "p").ok_or_else(|| syntax(pl, 1, "expected 'p = <prime>'"))?;
    let offset = ptext.len() - pval.len();
    let p = Cursor::new(pval, pl, offset).number()?;
    if !pval.trim().chars().all(|c| c.is_ascii_digit()) {
        return Err(syntax(pl, offset + 1, "expected a single integer"));
    }
    let field = PrimeField::new(p).map_err(|_| ParseError::NonPrimeModulus { line: pl, p })?;

    let (vl, vtext) = lines
        .next()
        .ok_or_else(|| syntax(pl + 1, 1, "expected 'vars: ...'"))?;
    let vlist = header(vtext, "vars").ok_or_else(|| syntax(vl, 1, "expected 'vars: ...'"))?;
    let mut vars = Vec::new();
    let mut col = vtext.len() - vlist.len();
    for piece in vlist.split(',') {
        let name = piece.trim();
        let lead = piece.len() - piece.trim_start().len();
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(syntax(
                vl,
                col + lead + 1,
                format!("bad variable name '{name}'"),
            ));
        }
        if vars.iter().any(|v| v == name) {
            return Err(syntax(
                vl,
                col + lead + 1,
                format!("duplicate variable '{name}'"),
            ));
        }
        vars.push(name.to_string());
        col += piece.len() + 1;
    }

    let mut file_order = None;
    let mut polys = Vec::new();
    let mut src_lines = Vec::new();
    for (ln, l) in lines {
        if polys.is_empty() && file_order.is_none() {
            if let Some(name) = header(l, "order") {
                let name = name.trim();
                file_order = Some(MonomialOrder::parse(name).ok_or_else(|| {
                    syntax(
                        ln,
                        l.len() - l.trim_start().len() + 1,
                        format!("unknown order '{name}'"),
                    )
                })?);
                continue;
            }
        }
        src_lines.push((ln, l));
    }
    let ring = PolyRing::new(field, order.or(file_order).unwrap_or_default(), vars.len());
    let mut lines = Vec::new();
    for (ln, l) in src_lines {
        let p = parse_polynomial(l, &ring, &vars, ln, 0)?;
        if !allow_affine && !p.is_homogeneous() {
            return Err(ParseError::NonHomogeneousInput {
                line: ln,
                index: polys.len() + 1,
            });
        }
        polys.push(p);
        lines.push(ln);
    }
    if polys.is_empty() {
        return Err(ParseError::NoPolynomials);
    }
    Ok(ProblemFile {
        ring,
        vars,
        polys,
        lines,
    })
}
