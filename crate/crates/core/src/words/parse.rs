//! Recursive-descent parser for presentation text.
//!
//! ```text
//! presentation := '<' [ident {',' ident}] '|' [expr {',' expr}] '>'
//! expr         := term {'*' term}
//! term         := atom ['^' ['-'] digits]
//! atom         := ident | '1' | '(' expr ')' | '[' expr ',' expr {',' expr} ']'
//! ```
//!
//! `[x, y]` expands to `x⁻¹y⁻¹xy`; longer brackets are left-normed.
//! `#` starts a comment running to the end of the line.

use super::presentation::{is_identifier, Presentation};
use super::word::{Letter, Word};
use super::PresentationError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, PresentationError> {
    let mut tokens = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (line_no + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                tokens.push(Token {
                    tok: Tok::Ident(ident),
                    line,
                    column,
                });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits.parse::<i64>().map_err(|_| PresentationError::Syntax {
                    line,
                    column,
                    message: format!("integer `{digits}` out of range"),
                })?;
                tokens.push(Token {
                    tok: Tok::Int(value),
                    line,
                    column,
                });
                continue;
            }
            if "<>|,*^()[]-".contains(c) {
                tokens.push(Token {
                    tok: Tok::Sym(c),
                    line,
                    column,
                });
                i += 1;
                continue;
            }
            return Err(PresentationError::Syntax {
                line,
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    names: Vec<String>,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str) -> Result<Self, PresentationError> {
        let tokens = tokenize(text)?;
        let lines: Vec<&str> = text.lines().collect();
        let end = (
            lines.len().max(1),
            lines.last().map_or(1, |l| l.chars().count() + 1),
        );
        Ok(Parser {
            tokens,
            pos: 0,
            names: Vec::new(),
            end,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> PresentationError {
        let (line, column) = self.here();
        PresentationError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn describe_next(&self) -> String {
        match self.peek().map(|t| &t.tok) {
            None => "end of input".to_string(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Int(i)) => format!("`{i}`"),
            Some(Tok::Sym(c)) => format!("`{c}`"),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.describe_next())))
        }
    }

    fn presentation(&mut self) -> Result<Presentation, PresentationError> {
        self.expect('<')?;
        if !self.eat('|') {
            loop {
                match self.peek().cloned() {
                    Some(Token {
                        tok: Tok::Ident(name),
                        ..
                    }) => {
                        if self.names.contains(&name) {
                            return Err(PresentationError::DuplicateGenerator(name));
                        }
                        debug_assert!(is_identifier(&name));
                        self.names.push(name);
                        self.pos += 1;
                    }
                    _ => {
                        return Err(self.error(format!(
                            "expected generator name, found {}",
                            self.describe_next()
                        )))
                    }
                }
                if self.eat('|') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let mut relators = Vec::new();
        if !self.eat('>') {
            loop {
                relators.push(self.expr()?);
                if self.eat('>') {
                    break;
                }
                self.expect(',')?;
            }
        }
        if self.peek().is_some() {
            return Err(self.error(format!(
                "unexpected {} after `>`",
                self.describe_next()
            )));
        }
        Presentation::new(self.names.clone(), relators)
    }

    fn expr(&mut self) -> Result<Word, PresentationError> {
        let mut w = self.term()?;
        while self.eat('*') {
            let t = self.term()?;
            w = &w * &t;
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, PresentationError> {
        let atom = self.atom()?;
        if self.eat('^') {
            let negative = self.eat('-');
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    Ok(atom.pow(if negative { -e } else { e }))
                }
                _ => Err(self.error(format!(
                    "expected integer exponent, found {}",
                    self.describe_next()
                ))),
            }
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word, PresentationError> {
        let Some(token) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match token.tok {
            Tok::Ident(name) => {
                self.pos += 1;
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Word::new([Letter::pos(i)])),
                    None => Err(PresentationError::UndeclaredGenerator {
                        name,
                        line: token.line,
                        column: token.column,
                    }),
                }
            }
            Tok::Int(1) => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(')')?;
                Ok(w)
            }
            Tok::Sym('[') => {
                self.pos += 1;
                let mut w = self.expr()?;
                self.expect(',')?;
                loop {
                    let next = self.expr()?;
                    w = w.commutator(&next);
                    if self.eat(']') {
                        break;
                    }
                    self.expect(',')?;
                }
                Ok(w)
            }
            _ => Err(self.error(format!(
                "expected generator, `1`, `(` or `[`, found {}",
                self.describe_next()
            ))),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    Parser::new(text)?.presentation()
}

/// Parse a single word expression against an existing presentation.
pub fn parse_word(text: &str, presentation: &Presentation) -> Result<Word, PresentationError> {
    let mut parser = Parser::new(text)?;
    parser.names = presentation.names().iter().map(|s| s.to_string()).collect();
    let w = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.error(format!("unexpected {}", parser.describe_next())));
    }
    Ok(w)
}

/// Parse a comma-separated list of words; an empty string gives no words.
pub fn parse_word_list(
    text: &str,
    presentation: &Presentation,
) -> Result<Vec<Word>, PresentationError> {
    let mut parser = Parser::new(text)?;
    parser.names = presentation.names().iter().map(|s| s.to_string()).collect();
    let mut words = Vec::new();
    if parser.peek().is_none() {
        return Ok(words);
    }
    loop {
        words.push(parser.expr()?);
        if parser.peek().is_none() {
            break;
        }
        parser.expect(',')?;
    }
    Ok(words)
}
