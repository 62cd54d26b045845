use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::{Formula, Sequent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A token that no grammar rule accepts here.
    Unexpected {
        found: String,
        expected: BTreeSet<&'static str>,
    },
    /// Characters that do not form any token.
    InvalidToken(String),
    /// `|- A, B`.
    MultipleSuccedents,
}

/// Syntax error with a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn expected(&self) -> Vec<&'static str> {
        match &self.kind {
            ParseErrorKind::Unexpected { expected, .. } => expected.iter().copied().collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "unexpected {found}, expected one of ")?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(e)?;
                }
                Ok(())
            }
            ParseErrorKind::InvalidToken(t) => write!(f, "invalid token {t:?}"),
            ParseErrorKind::MultipleSuccedents => f.write_str("more than one succedent formula"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Hash,
    Bang,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Turnstile,
    LParen,
    RParen,
    Comma,
    Top,
    Bot,
    Ident(Arc<str>),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => alloc::format!("identifier `{name}`"),
            Tok::End => "end of input".to_string(),
            other => alloc::format!("`{}`", other.name()),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Tok::Hash => "#",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::DArrow => "=>",
            Tok::Turnstile => "|-",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Top => "T",
            Tok::Bot => "F",
            Tok::Ident(_) => "identifier",
            Tok::End => "end of input",
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        let mut width = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                column += 1;
                i += 1;
                continue;
            }
            '#' => Tok::Hash,
            '!' => Tok::Bang,
            '&' => Tok::Amp,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '|' if chars.get(i + 1) == Some(&'-') => {
                width = 2;
                Tok::Turnstile
            }
            '|' => Tok::Bar,
            '-' if chars.get(i + 1) == Some(&'>') => {
                width = 2;
                Tok::Arrow
            }
            '=' if chars.get(i + 1) == Some(&'>') => {
                width = 2;
                Tok::DArrow
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                width = j - i;
                match word.as_str() {
                    "T" => Tok::Top,
                    "F" => Tok::Bot,
                    w if super::formula::is_atom_name(w) => Tok::Ident(Arc::from(w)),
                    _ => {
                        return Err(ParseError {
                            line: tl,
                            column: tc,
                            kind: ParseErrorKind::InvalidToken(word),
                        })
                    }
                }
            }
            other => {
                return Err(ParseError {
                    line: tl,
                    column: tc,
                    kind: ParseErrorKind::InvalidToken(other.to_string()),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: tl,
            column: tc,
        });
        i += width;
        column += width;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    expected: BTreeSet<&'static str>,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            expected: BTreeSet::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        self.expected.clear();
        t
    }

    /// Consumes `tok` if it is next, recording it as expected otherwise.
    fn eat(&mut self, tok: Tok) -> bool {
        if *self.peek() == tok {
            self.advance();
            true
        } else {
            self.expected.insert(tok.name());
            false
        }
    }

    fn error(&self) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            kind: ParseErrorKind::Unexpected {
                found: here.tok.describe(),
                expected: self.expected.clone(),
            },
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if self.eat(Tok::Arrow) {
            Ok(Formula::dyn_imp(left, self.formula()?))
        } else if self.eat(Tok::DArrow) {
            Ok(Formula::heyt_imp(left, self.formula()?))
        } else {
            Ok(left)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.eat(Tok::Bar) {
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(Tok::Amp) {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Hash => {
                self.advance();
                Ok(Formula::nabla(self.unary()?))
            }
            Tok::Bang => {
                self.advance();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Top => {
                self.advance();
                Ok(Formula::Top)
            }
            Tok::Bot => {
                self.advance();
                Ok(Formula::Bot)
            }
            Tok::Ident(name) => {
                self.advance();
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                self.advance();
                let f = self.formula()?;
                if !self.eat(Tok::RParen) {
                    return Err(self.error());
                }
                Ok(f)
            }
            _ => {
                self.expected.extend(["#", "!", "T", "F", "identifier", "("]);
                Err(self.error())
            }
        }
    }

    fn starts_formula(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Hash | Tok::Bang | Tok::Top | Tok::Bot | Tok::Ident(_) | Tok::LParen
        )
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if self.eat(Tok::End) {
            Ok(())
        } else {
            Err(self.error())
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.end()?;
    Ok(f)
}

/// Parses a sequent, keeping the antecedent in written order.
pub fn parse_sequent_ordered(text: &str) -> Result<(Vec<Formula>, Option<Formula>), ParseError> {
    let mut p = Parser::new(text)?;
    let mut ant = Vec::new();
    if !p.eat(Tok::Turnstile) {
        if !p.starts_formula() {
            p.expected.extend(["#", "!", "T", "F", "identifier", "("]);
            return Err(p.error());
        }
        loop {
            ant.push(p.formula()?);
            if p.eat(Tok::Comma) {
                continue;
            }
            if p.eat(Tok::Turnstile) {
                break;
            }
            return Err(p.error());
        }
    }
    let succ = if p.starts_formula() {
        let g = p.formula()?;
        if *p.peek() == Tok::Comma {
            let here = &p.toks[p.pos];
            return Err(ParseError {
                line: here.line,
                column: here.column,
                kind: ParseErrorKind::MultipleSuccedents,
            });
        }
        Some(g)
    } else {
        p.expected.extend(["#", "!", "T", "F", "identifier", "("]);
        None
    };
    p.end()?;
    Ok((ant, succ))
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let (ant, succ) = parse_sequent_ordered(text)?;
    Ok(Sequent::new(ant, succ))
}

impl core::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl core::str::FromStr for Sequent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}
