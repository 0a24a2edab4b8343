//! The `.alg` file format.
//!
//! ```text
//! # comment
//! algebra h9
//! dim 6
//! bracket e1 e2 = e3
//! bracket e1 e3 = e6
//! structure J
//! J e1 = e2
//! J e3 = -1/2*e4 + e5
//! ```
//!
//! Coefficients are integers or `p/q`; whitespace inside a line is ignored
//! after the keyword and its name argument.

use std::fmt::Write as _;
use std::path::Path;

use nilcx::cxs::AlmostComplexStructure;
use nilcx::exalg::{fmt_rational, parse_rational};
use nilcx::lie::{Bracket, LieAlgebra};
use nilcx::Rational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: LieAlgebra,
    pub structures: Vec<(String, AlmostComplexStructure)>,
}

impl AlgebraFile {
    pub fn structure(&self, name: Option<&str>) -> Option<&(String, AlmostComplexStructure)> {
        match name {
            Some(n) => self.structures.iter().find(|(s, _)| s == n),
            None => self.structures.first(),
        }
    }
}

/// A character of a line with its 1-based column.
type Located = (char, usize);

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    /// Whitespace-separated words with their columns.
    fn words(&self) -> Vec<(&str, usize)> {
        let mut out = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        for (col, (idx, ch)) in self.text.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((idx, col + 1)),
                (true, Some((s, c))) => {
                    out.push((&self.text[s..idx], c));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((s, c)) = start {
            out.push((&self.text[s..], c));
        }
        out
    }

    /// Characters from byte offset `from` on, without whitespace.
    fn compact(&self, from: usize) -> Vec<Located> {
        let skipped = self.text[..from].chars().count();
        self.text[from..]
            .chars()
            .enumerate()
            .filter(|(_, ch)| !ch.is_whitespace())
            .map(|(k, ch)| (ch, skipped + k + 1))
            .collect()
    }

    fn end_column(&self) -> usize {
        self.text.chars().count() + 1
    }
}

struct Cursor<'a> {
    chars: &'a [Located],
    pos: usize,
    end: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.0)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |c| c.1)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(ch) = self.peek().filter(|&c| f(c)) {
            s.push(ch);
            self.pos += 1;
        }
        s
    }
}

fn basis_index(line: &Line, cur: &mut Cursor, dim: usize) -> Result<usize, ParseError> {
    let column = cur.column();
    if cur.peek() != Some('e') {
        return Err(line.error(column, "expected a basis vector `e<k>`"));
    }
    cur.pos += 1;
    let digits = cur.take_while(|c| c.is_ascii_digit());
    let k: usize = digits
        .parse()
        .map_err(|_| line.error(column, "expected a basis vector `e<k>`"))?;
    if k == 0 || k > dim {
        return Err(line.error(column, format!("e{k} is outside e1..e{dim}")));
    }
    Ok(k - 1)
}

/// `c1*ek + c2*el - …`, or `0`.
fn linear_combination(
    line: &Line,
    chars: &[Located],
    dim: usize,
) -> Result<Vec<Rational>, ParseError> {
    let mut out = vec![Rational::zero(); dim];
    let mut cur = Cursor {
        chars,
        pos: 0,
        end: line.end_column(),
    };
    if chars.iter().map(|c| c.0).eq("0".chars()) {
        return Ok(out);
    }
    if chars.is_empty() {
        return Err(line.error(cur.column(), "expected a linear combination"));
    }
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        let mut signed = false;
        while let Some(ch @ ('+' | '-')) = cur.peek() {
            negative ^= ch == '-';
            signed = true;
            cur.pos += 1;
        }
        if !first && !signed {
            return Err(line.error(cur.column(), "expected `+` or `-` between terms"));
        }
        first = false;
        let coeff_column = cur.column();
        let coeff = if cur.peek() == Some('e') {
            Rational::one()
        } else {
            let text = cur.take_while(|c| c.is_ascii_digit() || c == '/');
            let q = parse_rational(&text)
                .ok_or_else(|| line.error(coeff_column, format!("invalid coefficient `{text}`")))?;
            if cur.peek() != Some('*') {
                return Err(line.error(cur.column(), "expected `*` after the coefficient"));
            }
            cur.pos += 1;
            q
        };
        let k = basis_index(line, &mut cur, dim)?;
        out[k] += if negative { -coeff } else { coeff };
    }
    Ok(out)
}

/// `ei ej = …` (bracket) or `ei = …` (J line), starting at byte `from`.
fn lhs_and_rhs(
    line: &Line,
    from: usize,
    count: usize,
    dim: usize,
) -> Result<(Vec<usize>, Vec<Rational>), ParseError> {
    let chars = line.compact(from);
    let eq = chars
        .iter()
        .position(|c| c.0 == '=')
        .ok_or_else(|| line.error(line.end_column(), "expected `=`"))?;
    let mut cur = Cursor {
        chars: &chars[..eq],
        pos: 0,
        end: chars[eq].1,
    };
    let mut lhs = Vec::new();
    for _ in 0..count {
        lhs.push(basis_index(line, &mut cur, dim)?);
    }
    if cur.pos != eq {
        return Err(line.error(cur.column(), "unexpected text before `=`"));
    }
    Ok((lhs, linear_combination(line, &chars[eq + 1..], dim)?))
}

struct StructureBlock {
    name: String,
    line: usize,
    images: Vec<(usize, Vec<Rational>)>,
}

pub fn parse_str(source: &str) -> Result<AlgebraFile, ParseError> {
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut brackets: Vec<Bracket> = Vec::new();
    let mut blocks: Vec<StructureBlock> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in source.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let line = Line {
            number: idx + 1,
            text,
        };
        last_line = idx + 1;
        let words = line.words();
        let Some(&(keyword, kcol)) = words.first() else {
            continue;
        };
        let need_dim = || dim.ok_or_else(|| line.error(kcol, "`dim` must come first"));
        let after_keyword = text.find(keyword).unwrap_or(0) + keyword.len();
        match keyword {
            "algebra" => {
                if name.is_some() {
                    return Err(line.error(kcol, "`algebra` given twice"));
                }
                match words.as_slice() {
                    [_, (n, _)] => name = Some(n.to_string()),
                    [_] => return Err(line.error(line.end_column(), "expected an algebra name")),
                    [_, _, (_, c), ..] => {
                        return Err(line.error(*c, "unexpected text after the algebra name"))
                    }
                    [] => unreachable!(),
                }
            }
            "dim" => {
                if dim.is_some() {
                    return Err(line.error(kcol, "`dim` given twice"));
                }
                match words.as_slice() {
                    [_, (m, c)] => {
                        let m: usize = m
                            .parse()
                            .map_err(|_| line.error(*c, format!("invalid dimension `{m}`")))?;
                        if m == 0 {
                            return Err(line.error(*c, "dimension must be positive"));
                        }
                        dim = Some(m);
                    }
                    [_] => return Err(line.error(line.end_column(), "expected a dimension")),
                    [_, _, (_, c), ..] => {
                        return Err(line.error(*c, "unexpected text after the dimension"))
                    }
                    [] => unreachable!(),
                }
            }
            "bracket" => {
                let m = need_dim()?;
                if !blocks.is_empty() {
                    return Err(
                        line.error(kcol, "brackets must come before the first structure block")
                    );
                }
                let (lhs, rhs) = lhs_and_rhs(&line, after_keyword, 2, m)?;
                let (i, j) = (lhs[0], lhs[1]);
                if i >= j {
                    let col = words.get(1).map_or(kcol, |w| w.1);
                    return Err(
                        line.error(col, format!("bracket [e{}, e{}] needs i < j", i + 1, j + 1))
                    );
                }
                if brackets.iter().any(|b| (b.i, b.j) == (i, j)) {
                    return Err(line.error(
                        kcol,
                        format!("bracket [e{}, e{}] given twice", i + 1, j + 1),
                    ));
                }
                let terms = rhs
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                brackets.push(Bracket { i, j, terms });
            }
            "structure" => {
                need_dim()?;
                let n = match words.as_slice() {
                    [_, (n, _)] => n.to_string(),
                    [_] => return Err(line.error(line.end_column(), "expected a structure name")),
                    [_, _, (_, c), ..] => {
                        return Err(line.error(*c, "unexpected text after the structure name"))
                    }
                    [] => unreachable!(),
                };
                if blocks.iter().any(|b| b.name == n) {
                    return Err(line.error(words[1].1, format!("structure `{n}` given twice")));
                }
                blocks.push(StructureBlock {
                    name: n,
                    line: line.number,
                    images: Vec::new(),
                });
            }
            "J" => {
                let m = need_dim()?;
                let block = blocks
                    .last_mut()
                    .ok_or_else(|| line.error(kcol, "`J` line outside a structure block"))?;
                let (lhs, rhs) = lhs_and_rhs(&line, after_keyword, 1, m)?;
                if block.images.iter().any(|(i, _)| *i == lhs[0]) {
                    return Err(line.error(kcol, format!("J e{} given twice", lhs[0] + 1)));
                }
                block.images.push((lhs[0], rhs));
            }
            other => return Err(line.error(kcol, format!("unknown keyword `{other}`"))),
        }
    }

    let at_end = |message: &str| ParseError {
        line: last_line.max(1),
        column: 1,
        message: message.to_string(),
    };
    let name = name.ok_or_else(|| at_end("missing `algebra` line"))?;
    let dim = dim.ok_or_else(|| at_end("missing `dim` line"))?;
    let algebra = LieAlgebra::new(name, dim, &brackets).map_err(|e| at_end(&e.to_string()))?;
    let structures = blocks
        .into_iter()
        .map(|b| {
            AlmostComplexStructure::from_images(dim, &b.images)
                .map(|j| (b.name.clone(), j))
                .map_err(|e| ParseError {
                    line: b.line,
                    column: 1,
                    message: format!("inconsistent J specification: {e}"),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlgebraFile {
        algebra,
        structures,
    })
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

pub fn parse_file(path: &Path) -> Result<AlgebraFile, LoadError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_str(&text).map_err(|source| LoadError::Parse {
        path: shown,
        source,
    })
}

fn combination(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let magnitude = c.abs();
        let body = if magnitude.is_one() {
            format!("e{}", k + 1)
        } else {
            format!("{}*e{}", fmt_rational(&magnitude), k + 1)
        };
        match (out.is_empty(), c.is_negative()) {
            (true, false) => out.push_str(&body),
            (true, true) => write!(out, "-{body}").unwrap(),
            (false, false) => write!(out, " + {body}").unwrap(),
            (false, true) => write!(out, " - {body}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Writes an algebra and its structures in `.alg` form.
pub fn emit(algebra: &LieAlgebra, structures: &[(String, AlmostComplexStructure)]) -> String {
    let mut out = String::new();
    writeln!(out, "algebra {}", algebra.name()).unwrap();
    writeln!(out, "dim {}", algebra.dim()).unwrap();
    for b in algebra.brackets() {
        let mut coeffs = vec![Rational::zero(); algebra.dim()];
        for (k, c) in &b.terms {
            coeffs[*k] += c;
        }
        writeln!(
            out,
            "bracket e{} e{} = {}",
            b.i + 1,
            b.j + 1,
            combination(&coeffs)
        )
        .unwrap();
    }
    for (name, j) in structures {
        writeln!(out, "structure {name}").unwrap();
        for i in 0..j.dim() {
            writeln!(out, "J e{} = {}", i + 1, combination(&j.image(i))).unwrap();
        }
    }
    out
}
