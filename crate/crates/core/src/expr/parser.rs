//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' factor)? | '-' factor
//! atom   := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! Identifiers are the declared variable, the functions `exp sin cos sqrt
//! log`, and the constants `pi` and `e`.

use std::fmt;

use super::{Expr, Func};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                let end = scan_number(bytes, i);
                if end == i {
                    return Err(ParseError::Syntax {
                        offset: i,
                        expected: vec!["number"],
                        found: "`.`".into(),
                    });
                }
                let v: f64 = text[i..end].parse().map_err(|_| ParseError::Syntax {
                    offset: i,
                    expected: vec!["number"],
                    found: format!("`{}`", &text[i..end]),
                })?;
                i = end;
                out.push((Tok::Num(v), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = i;
                while end < bytes.len()
                    && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
                {
                    end += 1;
                }
                i = end;
                out.push((Tok::Ident(text[start..end].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: i,
                    expected: vec!["number", "identifier", "operator", "parenthesis"],
                    found: format!("`{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Returns the end of a decimal literal starting at `i`, or `i` if there is
/// none. Accepts `12`, `1.5`, `.5`, `3.`, and an optional `e[+-]digits`.
fn scan_number(b: &[u8], mut i: usize) -> usize {
    let start = i;
    let digits = |b: &[u8], mut j: usize| {
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    i = digits(b, i);
    let int_len = i - start;
    let mut frac_len = 0;
    if i < b.len() && b[i] == b'.' {
        let j = digits(b, i + 1);
        frac_len = j - i - 1;
        i = j;
    }
    if int_len == 0 && frac_len == 0 {
        return start;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        let k = digits(b, j);
        if k > j {
            i = k;
        }
    }
    i
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected,
            found: self.peek().to_string(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
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

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exponent = self.factor()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Const(v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(func) = Func::from_name(&name) {
                    if *self.peek() != Tok::LParen {
                        return Err(self.unexpected(vec!["`(`"]));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                if name == self.var {
                    Ok(Expr::Var)
                } else if name == "pi" {
                    Ok(Expr::Const(std::f64::consts::PI))
                } else if name == "e" {
                    Ok(Expr::Const(std::f64::consts::E))
                } else {
                    Err(ParseError::UnknownIdentifier { name, offset })
                }
            }
            _ => Err(self.unexpected(vec!["number", "identifier", "`(`", "`-`"])),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(vec!["`)`", "operator"]))
        }
    }
}

/// Parse `text` as a function of the variable named `var`.
pub fn parse(text: &str, var: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, var };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(vec!["operator", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(text: &str, var: &str, x: f64) -> f64 {
        parse(text, var).unwrap().eval(x).unwrap()
    }

    #[test]
    fn boundary_data_of_the_example() {
        assert_eq!(at("1 - y", "y", 0.25), 0.75);
        assert_eq!(at("exp(x/3)", "x", 0.0), 1.0);
        assert_eq!(at("4*x", "x", 1.0), 4.0);
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(at("2^3^2", "x", 0.0), 512.0);
        assert_eq!(at("-x^2", "x", 3.0), -9.0);
        assert_eq!(at("2^-1", "x", 0.0), 0.5);
        assert_eq!(at("1 - 2 - 3", "x", 0.0), -4.0);
        assert_eq!(at("8 / 4 / 2", "x", 0.0), 1.0);
        assert_eq!(at("1 + 2 * 3", "x", 0.0), 7.0);
        assert_eq!(at("-2 * 3", "x", 0.0), -6.0);
    }

    #[test]
    fn number_forms() {
        assert_eq!(at("1.5e2", "x", 0.0), 150.0);
        assert_eq!(at(".5", "x", 0.0), 0.5);
        assert_eq!(at("3.", "x", 0.0), 3.0);
        assert_eq!(at("2E-1", "x", 0.0), 0.2);
        assert_eq!(at("pi", "x", 0.0), std::f64::consts::PI);
        assert_eq!(at("e", "x", 0.0), std::f64::consts::E);
    }

    #[test]
    fn syntax_errors_carry_offset_and_expectations() {
        match parse("1 + * 2", "x").unwrap_err() {
            ParseError::Syntax {
                offset, expected, ..
            } => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"number"));
            }
            e => panic!("{e:?}"),
        }
        assert_eq!(parse("(x + 1", "x").unwrap_err().offset(), 6);
        assert_eq!(parse("x x", "x").unwrap_err().offset(), 2);
        assert!(parse("sin x", "x").is_err());
        assert!(parse("", "x").is_err());
        assert!(parse("+x", "x").is_err());
        assert!(parse("x # 1", "x").is_err());
    }

    #[test]
    fn unknown_identifiers_are_rejected() {
        assert_eq!(
            parse("x + y", "x").unwrap_err(),
            ParseError::UnknownIdentifier {
                name: "y".into(),
                offset: 4
            }
        );
        assert!(parse("tan(x)", "x").is_err());
    }
}
