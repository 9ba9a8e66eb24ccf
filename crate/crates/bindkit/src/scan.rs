//! A small token scanner shared by the text formats, tracking line and
//! column for error reporting.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    /// `@name` or `@123`
    AtomRef(String),
    /// `#k`
    Index(usize),
    /// `^m`
    BinderMark(usize),
    /// `:=`
    Assign,
    Semi,
    Colon,
    Comma,
    Dot,
    Backslash,
    Bang,
    Bar,
    Arrow,
    /// bare identifier or number
    Word(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::LBracket => write!(f, "["),
            Tok::RBracket => write!(f, "]"),
            Tok::AtomRef(s) => write!(f, "@{s}"),
            Tok::Index(k) => write!(f, "#{k}"),
            Tok::BinderMark(m) => write!(f, "^{m}"),
            Tok::Assign => write!(f, ":="),
            Tok::Semi => write!(f, ";"),
            Tok::Colon => write!(f, ":"),
            Tok::Comma => write!(f, ","),
            Tok::Dot => write!(f, "."),
            Tok::Backslash => write!(f, "\\"),
            Tok::Bang => write!(f, "!"),
            Tok::Bar => write!(f, "|"),
            Tok::Arrow => write!(f, "->"),
            Tok::Word(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Tokenize a source string. All formats share one token alphabet; each
/// parser rejects the tokens it has no use for.
pub fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = src.chars().peekable();

    macro_rules! push {
        ($tok:expr, $len:expr) => {{
            out.push(Spanned { tok: $tok, line, column });
            column += $len;
        }};
    }

    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            _ if c.is_whitespace() => {
                chars.next();
                column += 1;
            }
            '(' => {
                chars.next();
                push!(Tok::LParen, 1);
            }
            ')' => {
                chars.next();
                push!(Tok::RParen, 1);
            }
            '[' => {
                chars.next();
                push!(Tok::LBracket, 1);
            }
            ']' => {
                chars.next();
                push!(Tok::RBracket, 1);
            }
            ';' => {
                chars.next();
                push!(Tok::Semi, 1);
            }
            ',' => {
                chars.next();
                push!(Tok::Comma, 1);
            }
            '.' => {
                chars.next();
                push!(Tok::Dot, 1);
            }
            '\\' => {
                chars.next();
                push!(Tok::Backslash, 1);
            }
            '!' => {
                chars.next();
                push!(Tok::Bang, 1);
            }
            '|' => {
                chars.next();
                push!(Tok::Bar, 1);
            }
            ':' => {
                chars.next();
                if chars.peek() == Some(&'=') {
                    chars.next();
                    push!(Tok::Assign, 2);
                } else {
                    push!(Tok::Colon, 1);
                }
            }
            '-' => {
                chars.next();
                if chars.peek() == Some(&'>') {
                    chars.next();
                    push!(Tok::Arrow, 2);
                } else {
                    return Err(ParseError::new(line, column, "expected `->` after `-`"));
                }
            }
            '@' => {
                chars.next();
                let mut name = String::new();
                while let Some(&w) = chars.peek() {
                    if is_word_char(w) {
                        name.push(w);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(ParseError::new(line, column, "expected a name after `@`"));
                }
                let len = name.len() + 1;
                push!(Tok::AtomRef(name), len);
            }
            '#' | '^' => {
                let marker = c;
                chars.next();
                let mut digits = String::new();
                while let Some(&w) = chars.peek() {
                    if w.is_ascii_digit() {
                        digits.push(w);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return Err(ParseError::new(
                        line,
                        column,
                        format!("expected a number after `{marker}`"),
                    ));
                }
                let value: usize = digits.parse().map_err(|_| {
                    ParseError::new(line, column, format!("number after `{marker}` is too large"))
                })?;
                let len = digits.len() + 1;
                if marker == '#' {
                    push!(Tok::Index(value), len);
                } else {
                    push!(Tok::BinderMark(value), len);
                }
            }
            _ if is_word_char(c) => {
                let mut word = String::new();
                while let Some(&w) = chars.peek() {
                    if is_word_char(w) {
                        word.push(w);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let len = word.len();
                push!(Tok::Word(word), len);
            }
            other => {
                return Err(ParseError::new(line, column, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

/// Cursor over a token stream with one-token lookahead.
pub struct Tokens {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
    end_column: usize,
}

impl Tokens {
    pub fn new(src: &str) -> Result<Tokens, ParseError> {
        let toks = tokenize(src)?;
        let (end_line, end_column) = match toks.last() {
            Some(t) => (t.line, t.column + 1),
            None => (1, 1),
        };
        Ok(Tokens { toks, pos: 0, end_line, end_column })
    }

    pub fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(t) => (t.line, t.column),
            None => (self.end_line, self.end_column),
        }
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError::new(line, column, message)
    }

    pub fn expect(&mut self, want: &Tok) -> Result<Spanned, ParseError> {
        match self.next() {
            Some(t) if &t.tok == want => Ok(t),
            Some(t) => Err(ParseError::new(
                t.line,
                t.column,
                format!("expected `{want}`, found `{}`", t.tok),
            )),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(
                t.line,
                t.column,
                format!("unexpected `{}` after the term", t.tok),
            )),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.peek().is_none()
    }
}
