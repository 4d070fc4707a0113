//! Parser for the diagram description language.
//!
//! ```text
//! object A [frobenius] [selfdual];
//! gen f : A -> B x C*;
//! diag d = f >> dg(f);        // `diag` is optional
//! ```
//!
//! `a >> b` is diagrammatic composition (`b ∘ a`) and `x` is the tensor,
//! binding tighter than `>>`. Atoms first mentioned in a `gen` declaration are
//! declared implicitly as plain objects. Identifiers in expressions resolve to
//! generators first and then to previously defined diagrams.

use super::signature::{Factor, ObjectWord, Signature};
use super::term::{self, DiagramTerm};
use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Semi,
    Colon,
    Arrow,
    Then,
    LParen,
    RParen,
    Comma,
    Star,
    Eq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Then => "`>>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> std::result::Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: tl,
                column: tc,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '=' => push(Tok::Eq, 1, &mut i, &mut col),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '>' if chars.get(i + 1) == Some(&'>') => push(Tok::Then, 2, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text.parse().map_err(|_| ParseError {
                    line: tl,
                    column: tc,
                    message: format!("number `{text}` out of range"),
                })?;
                col += i - start;
                out.push(Spanned {
                    tok: Tok::Num(n),
                    line: tl,
                    column: tc,
                });
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                col += i - start;
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: tl,
                    column: tc,
                });
            }
            other => {
                return Err(ParseError {
                    line: tl,
                    column: tc,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// A named diagram together with the position of its definition.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedDiagram {
    pub name: String,
    pub term: DiagramTerm,
    pub line: usize,
    pub column: usize,
}

/// The result of parsing a source file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Program {
    pub signature: Signature,
    pub diagrams: Vec<NamedDiagram>,
}

impl Program {
    pub fn diagram(&self, name: &str) -> Result<&DiagramTerm> {
        self.diagrams
            .iter()
            .find(|d| d.name == name)
            .map(|d| &d.term)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
    }

    /// Typechecks every diagram; errors carry the definition's position.
    pub fn typecheck_all(&self) -> Result<Vec<(String, ObjectWord, ObjectWord)>> {
        self.diagrams
            .iter()
            .map(|d| {
                let (dom, cod) = d.term.typecheck(&self.signature).map_err(|e| {
                    let detail = match e {
                        Error::Type(m) => m,
                        other => other.to_string(),
                    };
                    Error::Type(format!("{}:{}: diagram `{}`: {detail}", d.line, d.column, d.name))
                })?;
                Ok((d.name.clone(), dom, cod))
            })
            .collect()
    }
}

pub fn parse(src: &str) -> Result<Program> {
    let tokens = lex(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        program: Program::default(),
    };
    p.program()?;
    Ok(p.program)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    program: Program,
}

const KEYWORDS: &[&str] = &[
    "id", "swap", "cup", "cap", "dg", "name", "coname", "transpose", "spider",
];

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Parse(ParseError {
            line: t.line,
            column: t.column,
            message: format!("unexpected {}, expected {expected}", t.tok.describe()),
        })
    }

    fn error_at(&self, at: &Spanned, message: String) -> Error {
        Error::Parse(ParseError {
            line: at.line,
            column: at.column,
            message,
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Spanned> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error_here(&tok.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Spanned)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump()))
            }
            _ => Err(self.error_here(what)),
        }
    }

    fn number(&mut self) -> Result<usize> {
        match self.peek().tok {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error_here("a number")),
        }
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == s)
    }

    fn program(&mut self) -> Result<()> {
        while self.peek().tok != Tok::Eof {
            self.statement()?;
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<()> {
        if self.is_ident("object") && matches!(self.peek_at(1), Tok::Ident(_)) {
            self.bump();
            let (name, at) = self.ident("an object name")?;
            let (mut frobenius, mut self_dual) = (false, false);
            loop {
                if self.is_ident("frobenius") {
                    self.bump();
                    frobenius = true;
                } else if self.is_ident("selfdual") {
                    self.bump();
                    self_dual = true;
                } else {
                    break;
                }
            }
            self.expect(Tok::Semi)?;
            self.program
                .signature
                .add_atom(&name, frobenius, self_dual)
                .map_err(|e| self.error_at(&at, e.to_string()))
        } else if self.is_ident("gen") && matches!(self.peek_at(1), Tok::Ident(_)) {
            self.bump();
            let (name, at) = self.ident("a generator name")?;
            self.expect(Tok::Colon)?;
            let dom = self.word(true)?;
            self.expect(Tok::Arrow)?;
            let cod = self.word(true)?;
            self.expect(Tok::Semi)?;
            self.program
                .signature
                .add_generator(&name, dom, cod)
                .map_err(|e| self.error_at(&at, e.to_string()))
        } else {
            if self.is_ident("diag") && matches!(self.peek_at(1), Tok::Ident(_)) {
                self.bump();
            }
            let (name, at) = self.ident("a declaration")?;
            self.expect(Tok::Eq)?;
            let term = self.expr()?;
            self.expect(Tok::Semi)?;
            if self.program.diagrams.iter().any(|d| d.name == name) {
                return Err(self.error_at(&at, format!("diagram `{name}` defined twice")));
            }
            self.program.diagrams.push(NamedDiagram {
                name,
                term,
                line: at.line,
                column: at.column,
            });
            Ok(())
        }
    }

    /// `I` or `A[*] x B[*] ...`. With `declare`, unknown atoms are added to the signature.
    fn word(&mut self, declare: bool) -> Result<ObjectWord> {
        if self.is_ident("I") {
            self.bump();
            return Ok(ObjectWord::unit());
        }
        let mut factors = vec![self.factor(declare)?];
        while self.is_ident("x") {
            self.bump();
            factors.push(self.factor(declare)?);
        }
        Ok(ObjectWord(factors))
    }

    fn factor(&mut self, declare: bool) -> Result<Factor> {
        let (atom, at) = self.ident("an object")?;
        if atom == "x" {
            return Err(self.error_at(&at, "`x` is the tensor symbol, not an object".into()));
        }
        let dual = if self.peek().tok == Tok::Star {
            self.bump();
            true
        } else {
            false
        };
        if !self.program.signature.has_atom(&atom) {
            if declare {
                self.program
                    .signature
                    .add_atom(&atom, false, false)
                    .map_err(|e| self.error_at(&at, e.to_string()))?;
            } else {
                return Err(self.error_at(&at, format!("unknown identifier `{atom}`")));
            }
        }
        Ok(Factor { atom, dual })
    }

    fn expr(&mut self) -> Result<DiagramTerm> {
        let mut acc = self.tensor()?;
        while self.peek().tok == Tok::Then {
            self.bump();
            let next = self.tensor()?;
            acc = acc.then(next);
        }
        Ok(acc)
    }

    fn tensor(&mut self) -> Result<DiagramTerm> {
        let mut acc = self.primary()?;
        while self.is_ident("x") {
            self.bump();
            let next = self.primary()?;
            acc = DiagramTerm::par(acc, next);
        }
        Ok(acc)
    }

    fn derived(
        &mut self,
        at: &Spanned,
        build: fn(&DiagramTerm, &Signature) -> Result<DiagramTerm>,
    ) -> Result<DiagramTerm> {
        self.expect(Tok::LParen)?;
        let inner = self.expr()?;
        self.expect(Tok::RParen)?;
        build(&inner, &self.program.signature).map_err(|e| self.error_at(at, e.to_string()))
    }

    fn primary(&mut self) -> Result<DiagramTerm> {
        if self.peek().tok == Tok::LParen {
            self.bump();
            let e = self.expr()?;
            self.expect(Tok::RParen)?;
            return Ok(e);
        }
        let (word, at) = self.ident("an expression")?;
        if KEYWORDS.contains(&word.as_str()) && self.peek().tok == Tok::LParen {
            return match word.as_str() {
                "id" => {
                    self.bump();
                    let w = self.word(false)?;
                    self.expect(Tok::RParen)?;
                    Ok(DiagramTerm::Id(w))
                }
                "swap" => {
                    self.bump();
                    let a = self.word(false)?;
                    self.expect(Tok::Comma)?;
                    let b = self.word(false)?;
                    self.expect(Tok::RParen)?;
                    Ok(DiagramTerm::Swap(a, b))
                }
                "cup" | "cap" => {
                    self.bump();
                    let f = self.factor(false)?;
                    self.expect(Tok::RParen)?;
                    Ok(if word == "cup" {
                        DiagramTerm::Cup(f)
                    } else {
                        DiagramTerm::Cap(f)
                    })
                }
                "dg" => {
                    self.bump();
                    let e = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(DiagramTerm::dagger(e))
                }
                "name" => self.derived(&at, term::name),
                "coname" => self.derived(&at, term::coname),
                "transpose" => self.derived(&at, term::transpose),
                "spider" => {
                    self.bump();
                    let (atom, atom_at) = self.ident("an object")?;
                    match self.program.signature.atom(&atom) {
                        Ok(decl) if decl.frobenius => {}
                        Ok(_) => {
                            return Err(self.error_at(
                                &atom_at,
                                format!("spider on `{atom}`, which is not a frobenius object"),
                            ))
                        }
                        Err(_) => {
                            return Err(
                                self.error_at(&atom_at, format!("unknown identifier `{atom}`"))
                            )
                        }
                    }
                    self.expect(Tok::Comma)?;
                    let inputs = self.number()?;
                    self.expect(Tok::Comma)?;
                    let outputs = self.number()?;
                    self.expect(Tok::RParen)?;
                    Ok(DiagramTerm::spider(&atom, inputs, outputs))
                }
                _ => unreachable!(),
            };
        }
        if self.program.signature.has_generator(&word) {
            return Ok(DiagramTerm::Gen(word));
        }
        if let Some(d) = self.program.diagrams.iter().find(|d| d.name == word) {
            return Ok(d.term.clone());
        }
        Err(self.error_at(&at, format!("unknown identifier `{word}`")))
    }
}
