//! The algebra description language.
//!
//! ```text
//! document := line*
//! line     := "algebra" IDENT | "gen" IDENT ":" INT | "d" IDENT "=" expr
//! expr     := ["+" | "-"] term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := atom ["^" INT]
//! atom     := INT ["/" INT] | IDENT | "(" expr ")"
//! ```
//!
//! `#` starts a comment running to the end of the line. Whitespace inside a line
//! is insignificant. `algebra` must come first; a generator must be declared by
//! `gen` before any `d` line mentions it; generators without a `d` line are closed.

use std::fmt;

use cdga_core::cdga::{check_d_squared, DSquaredReport};
use cdga_core::{Cdga, Element, Error, FreeAlgebra, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    Undeclared,
    Duplicate,
    DegreeMismatch,
    DSquared,
}

/// A located message; lines and columns count from 1, columns in characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Colon,
    Equals,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::End => f.write_str("end of line"),
        }
    }
}

fn syntax(pos: Pos, message: String) -> Diagnostic {
    Diagnostic {
        kind: DiagnosticKind::Syntax,
        line: pos.line,
        column: pos.column,
        message,
    }
}

fn lex(line: usize, text: &str) -> Result<Vec<(Tok, Pos)>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos {
            line,
            column: i + 1,
        };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ':' => Some(Tok::Colon),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            return Err(syntax(pos, format!("unexpected character `{c}`")));
        }
    }
    out.push((
        Tok::End,
        Pos {
            line,
            column: chars.len() + 1,
        },
    ));
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Number(Rational),
    Gen(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32, Pos),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        syntax(
            self.pos(),
            format!("expected {wanted}, found {}", self.peek()),
        )
    }

    fn expect(&mut self, t: Tok) -> Result<Pos, Diagnostic> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&t.to_string()))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), Diagnostic> {
        if let Tok::Ident(s) = self.peek().clone() {
            let p = self.bump().1;
            Ok((s, p))
        } else {
            Err(self.unexpected("an identifier"))
        }
    }

    fn int(&mut self) -> Result<(String, Pos), Diagnostic> {
        if let Tok::Int(s) = self.peek().clone() {
            let p = self.bump().1;
            Ok((s, p))
        } else {
            Err(self.unexpected("an integer"))
        }
    }

    fn end(&mut self) -> Result<(), Diagnostic> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, Diagnostic> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump().1;
        let (digits, p) = self.int()?;
        match digits.parse::<u32>() {
            Ok(k) if k > 0 => Ok(Expr::Pow(Box::new(base), k, caret)),
            _ => Err(syntax(
                p,
                format!("exponent `{digits}` must be a positive integer"),
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let numer: Rational = n.parse().expect("digits parse as an integer");
                if *self.peek() != Tok::Slash {
                    return Ok(Expr::Number(numer));
                }
                self.bump();
                let (d, p) = self.int()?;
                let denom: Rational = d.parse().expect("digits parse as an integer");
                if denom == Rational::from_integer(0.into()) {
                    return Err(syntax(p, "division by zero".into()));
                }
                Ok(Expr::Number(numer / denom))
            }
            Tok::Ident(name) => {
                let p = self.bump().1;
                Ok(Expr::Gen(name, p))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.unexpected("a number, a generator or `(`")),
        }
    }
}

fn undeclared(name: &str, pos: Pos) -> Diagnostic {
    Diagnostic {
        kind: DiagnosticKind::Undeclared,
        line: pos.line,
        column: pos.column,
        message: format!("generator `{name}` is not declared"),
    }
}

fn check_declared(e: &Expr, declared: &[String]) -> Result<(), Diagnostic> {
    match e {
        Expr::Number(_) => Ok(()),
        Expr::Gen(name, pos) => {
            if declared.iter().any(|d| d == name) {
                Ok(())
            } else {
                Err(undeclared(name, *pos))
            }
        }
        Expr::Neg(a) | Expr::Pow(a, _, _) => check_declared(a, declared),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            check_declared(a, declared)?;
            check_declared(b, declared)
        }
    }
}

fn evaluate(
    e: &Expr,
    algebra: &FreeAlgebra,
    warnings: &mut Vec<Diagnostic>,
) -> Result<Element, Diagnostic> {
    Ok(match e {
        Expr::Number(c) => Element::constant(c.clone()),
        Expr::Gen(name, pos) => algebra.gen(name).map_err(|_| undeclared(name, *pos))?,
        Expr::Neg(a) => -evaluate(a, algebra, warnings)?,
        Expr::Add(a, b) => evaluate(a, algebra, warnings)? + evaluate(b, algebra, warnings)?,
        Expr::Sub(a, b) => evaluate(a, algebra, warnings)? - evaluate(b, algebra, warnings)?,
        Expr::Mul(a, b) => {
            let x = evaluate(a, algebra, warnings)?;
            let y = evaluate(b, algebra, warnings)?;
            algebra
                .multiply(&x, &y)
                .expect("operands belong to the algebra")
        }
        Expr::Pow(a, k, pos) => {
            let x = evaluate(a, algebra, warnings)?;
            if *k > 1 && !x.is_zero() && algebra.degree(&x).is_some_and(|d| d % 2 == 1) {
                warnings.push(Diagnostic {
                    kind: DiagnosticKind::Syntax,
                    line: pos.line,
                    column: pos.column,
                    message: format!("odd element raised to the power {k} is zero"),
                });
            }
            algebra.pow(&x, *k)
        }
    })
}

/// A parsed document before `d² = 0` has been checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unchecked {
    pub name: String,
    pub algebra: FreeAlgebra,
    pub differential: Vec<Element>,
    pub warnings: Vec<Diagnostic>,
    /// Line of the `d` statement of each generator, if any.
    d_lines: Vec<Option<(usize, usize)>>,
}

impl Unchecked {
    /// Runs the `d² = 0` check and produces the CDGA.
    pub fn into_cdga(self) -> Result<Parsed, Diagnostic> {
        let top = self
            .algebra
            .generators()
            .iter()
            .map(|g| g.degree + 2)
            .max()
            .unwrap_or(0);
        let report = check_d_squared(&self.algebra, &self.differential, top)
            .expect("degrees were checked while parsing");
        if let DSquaredReport::Fail { generator, witness } = report {
            let g = self.algebra.index_of(&generator).expect("generator exists");
            let (line, column) = self.d_lines[g].unwrap_or((1, 1));
            return Err(Diagnostic {
                kind: DiagnosticKind::DSquared,
                line,
                column,
                message: format!(
                    "d^2 is not zero: d(d {generator}) = {}",
                    self.algebra.render(&witness)
                ),
            });
        }
        let cdga = Cdga::new(self.algebra, self.differential).map_err(|e| Diagnostic {
            kind: DiagnosticKind::DSquared,
            line: 1,
            column: 1,
            message: e.to_string(),
        })?;
        Ok(Parsed {
            name: self.name,
            cdga,
            warnings: self.warnings,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub name: String,
    pub cdga: Cdga,
    pub warnings: Vec<Diagnostic>,
}

enum Statement {
    Header(String),
    Gen(String, u32),
    D(String, Pos, Expr, Pos),
}

/// Parses a document without checking `d² = 0`.
pub fn parse_unchecked(text: &str) -> Result<Unchecked, Diagnostic> {
    let mut name: Option<String> = None;
    let mut gens: Vec<(String, u32)> = Vec::new();
    let mut ds: Vec<(usize, Expr, Pos, Pos)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let toks = lex(line, raw)?;
        if toks[0].0 == Tok::End {
            continue;
        }
        let mut p = Parser { toks, at: 0 };
        let (keyword, kpos) = match p.bump() {
            (Tok::Ident(s), pos) => (s, pos),
            (t, pos) => {
                return Err(syntax(
                    pos,
                    format!("expected `algebra`, `gen` or `d`, found {t}"),
                ))
            }
        };
        let statement = match keyword.as_str() {
            "algebra" => {
                let (n, _) = p.ident()?;
                p.end()?;
                Statement::Header(n)
            }
            "gen" => {
                let (g, _) = p.ident()?;
                p.expect(Tok::Colon)?;
                let (digits, dpos) = p.int()?;
                p.end()?;
                let degree = match digits.parse::<u32>() {
                    Ok(d) if d > 0 => d,
                    _ => {
                        return Err(syntax(
                            dpos,
                            format!("degree `{digits}` must be a positive integer"),
                        ))
                    }
                };
                Statement::Gen(g, degree)
            }
            "d" => {
                let (g, gpos) = p.ident()?;
                p.expect(Tok::Equals)?;
                let epos = p.pos();
                let e = p.expr()?;
                p.end()?;
                Statement::D(g, gpos, e, epos)
            }
            other => {
                return Err(syntax(
                    kpos,
                    format!("expected `algebra`, `gen` or `d`, found `{other}`"),
                ))
            }
        };
        match statement {
            Statement::Header(n) => {
                if name.is_some() {
                    return Err(Diagnostic {
                        kind: DiagnosticKind::Duplicate,
                        line,
                        column: kpos.column,
                        message: "second `algebra` header".into(),
                    });
                }
                name = Some(n);
            }
            _ if name.is_none() => {
                return Err(syntax(
                    kpos,
                    "document must start with `algebra <name>`".into(),
                ))
            }
            Statement::Gen(g, degree) => {
                if gens.iter().any(|(h, _)| *h == g) {
                    return Err(Diagnostic {
                        kind: DiagnosticKind::Duplicate,
                        line,
                        column: kpos.column,
                        message: format!("generator `{g}` is declared twice"),
                    });
                }
                gens.push((g, degree));
            }
            Statement::D(g, gpos, e, epos) => {
                let declared: Vec<String> = gens.iter().map(|(h, _)| h.clone()).collect();
                let Some(index) = declared.iter().position(|h| *h == g) else {
                    return Err(undeclared(&g, gpos));
                };
                if ds.iter().any(|(i, ..)| *i == index) {
                    return Err(Diagnostic {
                        kind: DiagnosticKind::Duplicate,
                        line,
                        column: kpos.column,
                        message: format!("second `d` line for `{g}`"),
                    });
                }
                check_declared(&e, &declared)?;
                ds.push((index, e, kpos, epos));
            }
        }
    }
    let name = name.ok_or_else(|| {
        syntax(
            Pos { line: 1, column: 1 },
            "missing `algebra <name>` header".into(),
        )
    })?;
    let algebra = FreeAlgebra::new(gens.iter().map(|(g, d)| (g.clone(), *d)))
        .map_err(|e| syntax(Pos { line: 1, column: 1 }, e.to_string()))?;
    let mut differential = vec![Element::zero(); algebra.len()];
    let mut d_lines = vec![None; algebra.len()];
    let mut warnings = Vec::new();
    for (index, e, kpos, epos) in &ds {
        let value = evaluate(e, &algebra, &mut warnings)?;
        let expected = algebra.degree_of_generator(*index) + 1;
        if let Err(err) = algebra.check_degree(&value, expected) {
            let found = match err {
                Error::DegreeMismatch { found, .. } => format!("degree {found}"),
                _ => "a non-homogeneous element".into(),
            };
            return Err(Diagnostic {
                kind: DiagnosticKind::DegreeMismatch,
                line: epos.line,
                column: epos.column,
                message: format!(
                    "degree mismatch in d {}: need degree {expected}, found {found}",
                    algebra.name(*index)
                ),
            });
        }
        differential[*index] = value;
        d_lines[*index] = Some((kpos.line, kpos.column));
    }
    Ok(Unchecked {
        name,
        algebra,
        differential,
        warnings,
        d_lines,
    })
}

/// Parses a document into a CDGA, checking degrees and `d² = 0`.
pub fn parse(text: &str) -> Result<Parsed, Diagnostic> {
    parse_unchecked(text)?.into_cdga()
}

/// Parses a single expression over the generators of `algebra`.
pub fn parse_element(
    algebra: &FreeAlgebra,
    text: &str,
) -> Result<(Element, Vec<Diagnostic>), Diagnostic> {
    let mut p = Parser {
        toks: lex(1, text)?,
        at: 0,
    };
    let e = p.expr()?;
    p.end()?;
    let declared: Vec<String> = algebra
        .generators()
        .iter()
        .map(|g| g.name.clone())
        .collect();
    check_declared(&e, &declared)?;
    let mut warnings = Vec::new();
    let value = evaluate(&e, algebra, &mut warnings)?;
    Ok((value, warnings))
}

/// Turns an arbitrary string into a valid document name.
pub fn sanitize_name(name: &str) -> String {
    let mut s: String = name
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit()) {
        s.insert(0, '_');
    }
    s
}

/// Canonical text of a CDGA: header, one `gen` line per generator in order,
/// then one `d` line per generator.
pub fn render(cdga: &Cdga, name: &str) -> String {
    let algebra = cdga.algebra();
    let mut out = format!("algebra {name}\n");
    for g in algebra.generators() {
        out.push_str(&format!("gen {} : {}\n", g.name, g.degree));
    }
    for (g, dg) in algebra.generators().iter().zip(cdga.differential()) {
        out.push_str(&format!("d {} = {}\n", g.name, algebra.render(dg)));
    }
    out
}
