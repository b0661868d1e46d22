//! Recursive-descent reader for the ASCII formula syntax.
//!
//! Precedence, tightest first: postfix `^`, prefix `!` `?`, `*`, `&`, `+`,
//! `@`, `-o`. Binary operators associate to the left.

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Zero,
    One,
    Top,
    Bot,
    Ident(String),
    Star,
    At,
    Plus,
    Amp,
    Bang,
    Quest,
    Caret,
    Lolli,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '0' => Token::Zero,
            '1' => Token::One,
            '*' => Token::Star,
            '@' => Token::At,
            '+' => Token::Plus,
            '&' => Token::Amp,
            '!' => Token::Bang,
            '?' => Token::Quest,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '-' => {
                if bytes.get(i + 1) == Some(&b'o') {
                    i += 1;
                    Token::Lolli
                } else {
                    return Err(ParseError {
                        offset: i,
                        message: "expected `-o`".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b'\'')
                {
                    j += 1;
                }
                let word = &text[i..j];
                i = j - 1;
                match word {
                    "T" => Token::Top,
                    "B" => Token::Bot,
                    w => Token::Ident(w.to_string()),
                }
            }
            other => {
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn binary(
        &mut self,
        op: Token,
        next: fn(&mut Self) -> Result<Formula, ParseError>,
        combine: fn(Formula, Formula) -> Formula,
    ) -> Result<Formula, ParseError> {
        let mut acc = next(self)?;
        while self.eat(&op) {
            let rhs = next(self)?;
            acc = combine(acc, rhs);
        }
        Ok(acc)
    }

    fn lolli(&mut self) -> Result<Formula, ParseError> {
        self.binary(Token::Lolli, Self::par, Formula::lolli)
    }

    fn par(&mut self) -> Result<Formula, ParseError> {
        self.binary(Token::At, Self::plus, Formula::par)
    }

    fn plus(&mut self) -> Result<Formula, ParseError> {
        self.binary(Token::Plus, Self::with, Formula::plus)
    }

    fn with(&mut self) -> Result<Formula, ParseError> {
        self.binary(Token::Amp, Self::tensor, Formula::with)
    }

    fn tensor(&mut self) -> Result<Formula, ParseError> {
        self.binary(Token::Star, Self::prefix, Formula::tensor)
    }

    fn prefix(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Token::Bang) {
            return Ok(Formula::of_course(self.prefix()?));
        }
        if self.eat(&Token::Quest) {
            return Ok(Formula::why_not(self.prefix()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.atom()?;
        while self.eat(&Token::Caret) {
            acc = acc.dual();
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let tok = self.peek().cloned().ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Token::Zero => Ok(Formula::Zero),
            Token::One => Ok(Formula::One),
            Token::Top => Ok(Formula::Top),
            Token::Bot => Ok(Formula::Bot),
            Token::Ident(name) => Ok(Formula::atom(&name)),
            Token::LParen => {
                let inner = self.lolli()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("unexpected token {other:?}")))
            }
        }
    }
}

/// Parses one formula; the whole input must be consumed.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let f = parser.lolli()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lollipop_binds_loosest() {
        // !1 -o B*C means (!1) -o (B*C), and -o unfolds to a par.
        let f = parse("!1 -o B*B").unwrap();
        assert_eq!(f, Formula::par(Formula::why_not(Formula::Bot), Formula::tensor(Formula::Bot, Formula::Bot)));
    }

    #[test]
    fn constants_and_round_trip() {
        assert_eq!(parse("0").unwrap(), Formula::Zero);
        assert_eq!(parse("(1+1)&T").unwrap().to_string(), "(1 + 1) & T");
    }

    #[test]
    fn postfix_dual_binds_tightest() {
        assert_eq!(parse("!X^").unwrap(), Formula::of_course(Formula::atom("X").dual()));
        assert_eq!(parse("(1 * B)^").unwrap(), parse("B @ 1").unwrap());
    }

    #[test]
    fn left_associativity() {
        assert_eq!(parse("1 * 1 * B").unwrap(), parse("(1 * 1) * B").unwrap());
        assert_ne!(parse("1 * 1 * B").unwrap(), parse("1 * (1 * B)").unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse("1 * (B").unwrap_err();
        assert_eq!(err.offset, 6);
        assert_eq!(parse("1 % 1").unwrap_err().offset, 2);
        assert!(parse("1 1").is_err());
        assert!(parse("").is_err());
    }
}
