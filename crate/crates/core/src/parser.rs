//! Reader and writer for the `.olp` text format.
//!
//! ```text
//! % two rules blocking each other
//! r1: a :- not b.
//! r2: b :- not a.
//! r2 < r1.
//! ```
//!
//! Unnamed rules are called `r<k>` after their 1-based position among the
//! rules. Preference statements may refer to rules defined later.

use std::fmt;

use crate::error::ProgramError;
use crate::syntax::{Atom, Literal, OrderedProgram, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    DuplicateName,
    CyclicOrder,
    UnknownRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}",
            self.span.line, self.span.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Minus,
    Colon,
    ColonDash,
    Dot,
    Comma,
    Less,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Minus => f.write_str("`-`"),
            Token::Colon => f.write_str("`:`"),
            Token::ColonDash => f.write_str("`:-`"),
            Token::Dot => f.write_str("`.`"),
            Token::Comma => f.write_str("`,`"),
            Token::Less => f.write_str("`<`"),
            Token::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, SourceSpan)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let start = SourceSpan {
            line,
            column,
            length: 1,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '%' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        if c.is_ascii_lowercase() {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            column += ident.len();
            let span = SourceSpan {
                length: ident.len(),
                ..start
            };
            tokens.push((Token::Ident(ident), span));
            continue;
        }
        chars.next();
        column += 1;
        let token = match c {
            '-' => Token::Minus,
            ',' => Token::Comma,
            '.' => Token::Dot,
            '<' => Token::Less,
            ':' if chars.peek() == Some(&'-') => {
                chars.next();
                column += 1;
                tokens.push((Token::ColonDash, SourceSpan { length: 2, ..start }));
                continue;
            }
            ':' => Token::Colon,
            other => {
                return Err(ParseError {
                    span: start,
                    kind: ParseErrorKind::Lexical,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        tokens.push((token, start));
    }
    tokens.push((
        Token::Eof,
        SourceSpan {
            line,
            column,
            length: 0,
        },
    ));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, SourceSpan)>,
    pos: usize,
}

struct RuleDecl {
    name: Option<(String, SourceSpan)>,
    start: SourceSpan,
    head: Literal,
    pbody: Vec<Literal>,
    nbody: Vec<Literal>,
}

struct PrefDecl {
    lower: (String, SourceSpan),
    higher: (String, SourceSpan),
    span: SourceSpan,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn peek_at(&self, offset: usize) -> &Token {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].0
    }

    fn span(&self) -> SourceSpan {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, SourceSpan) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError {
            span: self.span(),
            kind: ParseErrorKind::Syntax,
            message: format!("expected {expected}, found {}", self.peek()),
        }
    }

    fn expect(&mut self, token: Token) -> Result<SourceSpan, ParseError> {
        if *self.peek() == token {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&token.to_string()))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, SourceSpan), ParseError> {
        match self.peek().clone() {
            Token::Ident(s) => {
                let span = self.bump().1;
                Ok((s, span))
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let negated = if *self.peek() == Token::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (name, span) = self.ident("a literal")?;
        if name == "not" {
            return Err(ParseError {
                span,
                kind: ParseErrorKind::Syntax,
                message: "`not` is reserved and cannot be used as an atom".into(),
            });
        }
        let atom = Atom::new(&name).expect("lexer only yields identifiers");
        Ok(Literal::new(atom, negated))
    }

    fn rule_rest(
        &mut self,
        name: Option<(String, SourceSpan)>,
        start: SourceSpan,
    ) -> Result<RuleDecl, ParseError> {
        let head = self.literal()?;
        let (mut pbody, mut nbody) = (Vec::new(), Vec::new());
        if *self.peek() == Token::ColonDash {
            self.bump();
            loop {
                let is_naf = matches!(self.peek(), Token::Ident(s) if s == "not")
                    && matches!(self.peek_at(1), Token::Ident(_) | Token::Minus);
                if is_naf {
                    self.bump();
                    nbody.push(self.literal()?);
                } else {
                    pbody.push(self.literal()?);
                }
                if *self.peek() == Token::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Token::Dot)?;
        Ok(RuleDecl {
            name,
            start,
            head,
            pbody,
            nbody,
        })
    }

    fn statements(&mut self) -> Result<(Vec<RuleDecl>, Vec<PrefDecl>), ParseError> {
        let (mut rules, mut prefs) = (Vec::new(), Vec::new());
        loop {
            let start = self.span();
            match (self.peek().clone(), self.peek_at(1).clone()) {
                (Token::Eof, _) => break,
                (Token::Ident(_), Token::Colon) => {
                    let name = self.ident("a rule name")?;
                    self.bump();
                    rules.push(self.rule_rest(Some(name), start)?);
                }
                (Token::Ident(_), Token::Less) => {
                    let lower = self.ident("a rule name")?;
                    self.bump();
                    let higher = self.ident("a rule name")?;
                    self.expect(Token::Dot)?;
                    prefs.push(PrefDecl {
                        lower,
                        higher,
                        span: start,
                    });
                }
                (Token::Ident(_) | Token::Minus, _) => rules.push(self.rule_rest(None, start)?),
                _ => return Err(self.unexpected("a rule or a preference")),
            }
        }
        Ok((rules, prefs))
    }
}

/// Parses and validates an ordered program. Stops at the first error.
pub fn parse_program(text: &str) -> Result<OrderedProgram, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let (decls, prefs) = parser.statements()?;

    let mut rules = Vec::with_capacity(decls.len());
    let mut names = std::collections::HashSet::new();
    for (k, d) in decls.into_iter().enumerate() {
        let (name, span) = d.name.unwrap_or_else(|| (format!("r{}", k + 1), d.start));
        if !names.insert(name.clone()) {
            return Err(ParseError {
                span,
                kind: ParseErrorKind::DuplicateName,
                message: format!("duplicate rule name `{name}`"),
            });
        }
        rules.push(Rule::new(name, d.head, d.pbody, d.nbody).expect("names are identifiers"));
    }

    let pairs: Vec<(String, String)> = prefs
        .iter()
        .map(|p| (p.lower.0.clone(), p.higher.0.clone()))
        .collect();
    OrderedProgram::new(rules.clone(), pairs.clone()).map_err(|e| match e {
        ProgramError::UnknownRule { name } => {
            let span = prefs
                .iter()
                .flat_map(|p| [&p.lower, &p.higher])
                .find(|(n, _)| *n == name)
                .map(|(_, s)| *s)
                .expect("unknown name comes from a preference");
            ParseError {
                span,
                kind: ParseErrorKind::UnknownRule,
                message: format!("preference mentions unknown rule `{name}`"),
            }
        }
        ProgramError::CyclicOrder { rule } => {
            // Report the first statement that closes a cycle.
            let culprit = (1..=pairs.len())
                .find(|&n| {
                    crate::syntax::validate_order(pairs[..n].iter().cloned(), &rules).is_err()
                })
                .expect("the full pair list is cyclic");
            let p = &prefs[culprit - 1];
            ParseError {
                span: SourceSpan {
                    length: p.higher.1.column + p.higher.1.length - p.span.column,
                    ..p.span
                },
                kind: ParseErrorKind::CyclicOrder,
                message: format!("cyclic preference through rule `{rule}`"),
            }
        }
        other => unreachable!("parser already rejected {other}"),
    })
}

/// Canonical text: rules in source order, then the declared preference
/// pairs sorted lexicographically.
pub fn render_program(p: &OrderedProgram) -> String {
    let mut out = String::new();
    for r in p.rules() {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    for (lower, higher) in p.order().generating_pairs() {
        out.push_str(&format!("{lower} < {higher}.\n"));
    }
    out
}
