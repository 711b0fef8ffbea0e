//! Concrete syntax for formulas and knowledge-base files.
//!
//! ```text
//! formula := imp
//! imp     := or ( "->" imp )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | atom | "#" | "(" formula ")"
//! atom    := ident ( "(" term ( "," term )* ")" )?
//! term    := ident | Variable
//! ```
//!
//! A knowledge base starts with `dict <name>` and then has one axiom per
//! line, `label : formula [sign]`. `%` comments run to the end of the line.

use std::collections::BTreeSet;

use crate::dictionary::{DictionaryKind, Sign};
use crate::error::{Error, Result};
use crate::kernel::database::{AxiomEntry, Database};
use crate::kernel::formula::{Atom, Formula, Term};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    LParen,
    RParen,
    Comma,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Hash,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Hash => "`#`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column_base: usize,
}

impl Lexer {
    fn tokenize(src: &str, line: usize, column_base: usize) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line,
            column_base,
        };
        let mut out = Vec::new();
        loop {
            while lx.pos < lx.chars.len() && lx.chars[lx.pos].is_whitespace() {
                lx.pos += 1;
            }
            let col = lx.column_base + lx.pos;
            let Some(&c) = lx.chars.get(lx.pos) else {
                out.push((Tok::End, col));
                return Ok(out);
            };
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '#' => Tok::Hash,
                '-' => {
                    if lx.chars.get(lx.pos + 1) == Some(&'>') {
                        lx.pos += 1;
                        Tok::Arrow
                    } else {
                        return Err(lx.error(col, "expected `->`"));
                    }
                }
                c if c.is_alphanumeric() || c == '_' => {
                    let start = lx.pos;
                    while lx.pos < lx.chars.len()
                        && (lx.chars[lx.pos].is_alphanumeric() || lx.chars[lx.pos] == '_')
                    {
                        lx.pos += 1;
                    }
                    let word: String = lx.chars[start..lx.pos].iter().collect();
                    lx.pos -= 1;
                    if c.is_uppercase() {
                        Tok::Var(word)
                    } else {
                        Tok::Ident(word)
                    }
                }
                other => return Err(lx.error(col, &format!("unexpected character `{other}`"))),
            };
            lx.pos += 1;
            out.push((tok, col));
        }
    }

    fn error(&self, column: usize, message: &str) -> Error {
        Error::Syntax {
            line: self.line,
            column,
            message: message.to_string(),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column(),
            message,
        }
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn error_at(&self, column: usize, message: String) -> Error {
        Error::Syntax {
            line: self.line,
            column,
            message,
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        let col = self.column();
        match self.bump() {
            Tok::Tilde => Ok(Formula::not(self.unary()?)),
            Tok::Hash => Ok(Formula::Falsum),
            Tok::LParen => {
                let inner = self.implication()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(predicate) => {
                let mut args = Vec::new();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    loop {
                        let term_col = self.column();
                        match self.bump() {
                            Tok::Ident(c) => args.push(Term::Const(c)),
                            Tok::Var(v) => args.push(Term::Var(v)),
                            other => {
                                return Err(self.error_at(
                                    term_col,
                                    format!("expected a term, found {}", other.describe()),
                                ));
                            }
                        }
                        match self.peek() {
                            Tok::Comma => {
                                self.bump();
                            }
                            Tok::RParen => {
                                self.bump();
                                break;
                            }
                            other => {
                                return Err(self.error(format!(
                                    "expected `,` or `)`, found {}",
                                    other.describe()
                                )))
                            }
                        }
                    }
                }
                Ok(Formula::Atom(Atom { predicate, args }))
            }
            Tok::Var(v) => {
                Err(self.error_at(col, format!("variable `{v}` cannot stand as a formula")))
            }
            other => Err(self.error_at(
                col,
                format!("expected a formula, found {}", other.describe()),
            )),
        }
    }
}

fn parse_formula_at(text: &str, line: usize, column_base: usize) -> Result<Formula> {
    let toks = Lexer::tokenize(text, line, column_base)?;
    let mut p = Parser { toks, pos: 0, line };
    let f = p.implication()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(f)
}

/// Parses a single formula. Error positions are 1-based columns.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_formula_at(text, 1, 1)
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses a knowledge-base file.
pub fn parse_database(text: &str) -> Result<Database> {
    let mut dictionary = None;
    let mut entries: Vec<AxiomEntry> = Vec::new();
    let mut seen = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('%') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column_of = |sub: &str| sub.as_ptr() as usize - line.as_ptr() as usize + 1;

        let Some(kind) = dictionary else {
            let mut words = trimmed.split_whitespace();
            if words.next() != Some("dict") {
                return Err(Error::Syntax {
                    line: line_no,
                    column: column_of(trimmed),
                    message: "expected `dict <name>` declaration".into(),
                });
            }
            let name = words.next().unwrap_or("");
            let kind: DictionaryKind = name.parse().map_err(|message| Error::Syntax {
                line: line_no,
                column: column_of(trimmed),
                message,
            })?;
            if let Some(extra) = words.next() {
                return Err(Error::Syntax {
                    line: line_no,
                    column: column_of(extra),
                    message: format!("unexpected `{extra}` after dictionary name"),
                });
            }
            dictionary = Some(kind);
            continue;
        };

        let Some(colon) = line.find(':') else {
            return Err(Error::Syntax {
                line: line_no,
                column: column_of(trimmed),
                message: "expected `label : formula [sign]`".into(),
            });
        };
        let label = line[..colon].trim();
        if !is_label(label) {
            return Err(Error::Syntax {
                line: line_no,
                column: column_of(trimmed),
                message: format!("invalid axiom label `{label}`"),
            });
        }
        let rest = &line[colon + 1..];
        let rest_trim = rest.trim_end();
        let (Some(open), true) = (rest_trim.rfind('['), rest_trim.ends_with(']')) else {
            return Err(Error::Syntax {
                line: line_no,
                column: colon + 2 + rest_trim.len(),
                message: "expected a sign in brackets at the end of the axiom".into(),
            });
        };
        let sign_text = rest_trim[open + 1..rest_trim.len() - 1].trim();
        let formula_text = &rest[..open];
        let formula = parse_formula_at(formula_text, line_no, colon + 2)?;
        let sign: Sign = sign_text.parse().map_err(|message| Error::Syntax {
            line: line_no,
            column: colon + 2 + open + 1,
            message,
        })?;
        if !kind.contains(sign) {
            return Err(Error::SignNotInDictionary {
                line: line_no,
                sign: sign_text.to_string(),
                dictionary: kind,
            });
        }
        if !seen.insert(label.to_string()) {
            return Err(Error::DuplicateLabel {
                line: line_no,
                label: label.to_string(),
            });
        }
        entries.push(AxiomEntry {
            label: label.to_string(),
            formula,
            sign,
        });
    }

    let dictionary = dictionary.ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: "missing `dict <name>` declaration".into(),
    })?;
    Database::new(dictionary, entries)
}
