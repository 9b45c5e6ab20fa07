//! Expression language over wave numbers.
//!
//! ```text
//! sum   ::= prod (('+' | '-') prod)*
//! prod  ::= unary (('*' | '/' | 'circ') unary)*
//! unary ::= func '(' args ')' | atom
//! atom  ::= 'w(' rational ',' rational ')' | number | '(' sum ')'
//! ```
//!
//! A number is a rational (`3`, `-1/2`, with the slash written without
//! spaces), a decimal (`2.5`, `1e-3`), or either followed by `i`; a bare `i`
//! is the imaginary unit. `a / b` with spaces is division.

use std::fmt;

use thiserror::Error;
use wavenum::{MultWave, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rational(Rational),
    Decimal(f64),
    /// Imaginary literal `x·i`.
    Imag(f64),
    Wave(MultWave),
    Call(Func, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Conj,
    OrthConj,
    Inv,
    Root(u32),
    Integral,
    Norm,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Conj => "conj",
            Func::OrthConj => "orthconj",
            Func::Inv => "inv",
            Func::Root(_) => "root",
            Func::Integral => "integral",
            Func::Norm => "norm",
        }
    }

    const NAMES: [&'static str; 6] = ["conj", "orthconj", "inv", "root", "integral", "norm"];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Circ,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Circ => "circ",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div | BinOp::Circ => 2,
        }
    }
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, _, _) => op.precedence(),
            _ => 3,
        }
    }

    pub fn binary(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Binary(op, Box::new(a), Box::new(b))
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        Expr::Call(f, Box::new(a))
    }
}

/// Prints with the fewest parentheses that re-parse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(r) => write!(f, "{r}"),
            Expr::Decimal(x) => write!(f, "{x:?}"),
            Expr::Imag(x) => write!(f, "{x:?}i"),
            Expr::Wave(w) => write!(f, "{w}"),
            Expr::Call(Func::Root(n), a) => write!(f, "root({a}, {n})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Binary(op, a, b) => {
                let p = op.precedence();
                if a.precedence() < p {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " {} ", op.symbol())?;
                if b.precedence() <= p {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct SyntaxError {
    /// 0-based byte offset into the input.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl SyntaxError {
    /// 1-based column of the offending byte.
    pub fn column(&self) -> usize {
        self.offset + 1
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

impl Token {
    fn describe(&self) -> String {
        match &self.tok {
            Tok::Num(s) | Tok::Ident(s) => format!("'{s}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<Token>, SyntaxError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            out.push(Token { tok, start, end: i });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push(Token { tok: Tok::Num(input[start..i].to_string()), start, end: i });
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(input[start..i].to_string()), start, end: i });
            continue;
        }
        let ch = input[start..].chars().next().expect("in bounds");
        return Err(SyntaxError { offset: start, expected: vec!["a token".into()], found: format!("'{ch}'") });
    }
    out.push(Token { tok: Tok::End, start: input.len(), end: input.len() });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

pub fn parse(input: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: lex(input)?, pos: 0 };
    let e = p.sum()?;
    p.expect(Tok::End, "end of input")?;
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        let t = self.peek();
        SyntaxError { offset: t.start, expected: expected.iter().map(|s| s.to_string()).collect(), found: t.describe() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, SyntaxError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn sum(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.prod()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::binary(op, lhs, self.prod()?);
        }
    }

    fn prod(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match &self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                Tok::Ident(s) if s == "circ" => BinOp::Circ,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::binary(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        let name = match &self.peek().tok {
            Tok::Ident(s) if Func::NAMES.contains(&s.as_str()) => s.clone(),
            _ => return self.atom(),
        };
        self.bump();
        self.expect(Tok::LParen, "'('")?;
        let arg = self.sum()?;
        let func = match name.as_str() {
            "conj" => Func::Conj,
            "orthconj" => Func::OrthConj,
            "inv" => Func::Inv,
            "integral" => Func::Integral,
            "norm" => Func::Norm,
            _ => {
                self.expect(Tok::Comma, "','")?;
                Func::Root(self.root_index()?)
            }
        };
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr::call(func, arg))
    }

    fn root_index(&mut self) -> Result<u32, SyntaxError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(s) => match s.parse::<u32>() {
                Ok(n) if n >= 1 => {
                    self.bump();
                    Ok(n)
                }
                _ => Err(SyntaxError { offset: t.start, expected: vec!["positive integer".into()], found: t.describe() }),
            },
            _ => Err(self.error(&["positive integer"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().tok.clone() {
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(s) if s == "w" && self.peek_at(1).tok == Tok::LParen => {
                self.bump();
                self.bump();
                let f = self.rational_arg()?;
                self.expect(Tok::Comma, "','")?;
                let g = self.rational_arg()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Wave(MultWave::new(f, g)))
            }
            Tok::Ident(s) if s == "i" => {
                self.bump();
                Ok(Expr::Imag(1.0))
            }
            Tok::Minus => {
                self.bump();
                match &self.peek().tok {
                    Tok::Num(_) => Ok(negate(self.number()?)),
                    Tok::Ident(s) if s == "i" => {
                        self.bump();
                        Ok(Expr::Imag(-1.0))
                    }
                    _ => Err(self.error(&["number"])),
                }
            }
            Tok::Num(_) => self.number(),
            _ => Err(self.error(&["'w('", "number", "'('", "function"])),
        }
    }

    /// `INT`, `INT/INT` (adjacent), decimal, each optionally followed by `i`.
    fn number(&mut self) -> Result<Expr, SyntaxError> {
        let t = self.bump();
        let Tok::Num(text) = &t.tok else { unreachable!("caller checked") };
        let mut end = t.end;
        let decimal = text.contains(['.', 'e', 'E']);
        let lit = if decimal {
            Expr::Decimal(text.parse().map_err(|_| SyntaxError {
                offset: t.start,
                expected: vec!["number".into()],
                found: t.describe(),
            })?)
        } else if self.peek().tok == Tok::Slash
            && self.peek().start == end
            && matches!(&self.peek_at(1).tok, Tok::Num(d) if !d.contains(['.', 'e', 'E']))
            && self.peek_at(1).start == end + 1
        {
            self.bump();
            let d = self.bump();
            end = d.end;
            let Tok::Num(dt) = &d.tok else { unreachable!() };
            let r = format!("{text}/{dt}").parse::<Rational>().map_err(|_| SyntaxError {
                offset: d.start,
                expected: vec!["nonzero denominator".into()],
                found: d.describe(),
            })?;
            Expr::Rational(r)
        } else {
            Expr::Rational(text.parse::<Rational>().map_err(|_| SyntaxError {
                offset: t.start,
                expected: vec!["integer".into()],
                found: t.describe(),
            })?)
        };
        if matches!(&self.peek().tok, Tok::Ident(s) if s == "i") && self.peek().start == end {
            self.bump();
            let x = match lit {
                Expr::Decimal(x) => x,
                Expr::Rational(r) => r.to_f64(),
                _ => unreachable!(),
            };
            return Ok(Expr::Imag(x));
        }
        Ok(lit)
    }

    fn rational_arg(&mut self) -> Result<Rational, SyntaxError> {
        let start = self.peek().start;
        let negative = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let num = match &self.peek().tok {
            Tok::Num(s) if !s.contains(['.', 'e', 'E']) => s.clone(),
            _ => return Err(self.error(&["rational"])),
        };
        self.bump();
        let mut text = if negative { format!("-{num}") } else { num };
        if self.peek().tok == Tok::Slash {
            self.bump();
            match &self.peek().tok {
                Tok::Num(s) if !s.contains(['.', 'e', 'E']) => text = format!("{text}/{s}"),
                _ => return Err(self.error(&["integer"])),
            }
            self.bump();
        }
        text.parse::<Rational>().map_err(|_| SyntaxError {
            offset: start,
            expected: vec!["rational with nonzero denominator".into()],
            found: format!("'{text}'"),
        })
    }
}

fn negate(e: Expr) -> Expr {
    match e {
        Expr::Rational(r) => Expr::Rational(-r),
        Expr::Decimal(x) => Expr::Decimal(-x),
        Expr::Imag(x) => Expr::Imag(-x),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Expr {
        Expr::Wave(s.parse().unwrap())
    }

    #[test]
    fn product_node() {
        assert_eq!(parse("w(1/4,0) * w(1/4,0)").unwrap(), Expr::binary(BinOp::Mul, w("w(1/4,0)"), w("w(1/4,0)")));
    }

    #[test]
    fn nested_call() {
        let e = parse("norm(w(1/2,0) + w(1/3,0))").unwrap();
        assert_eq!(e, Expr::call(Func::Norm, Expr::binary(BinOp::Add, w("w(1/2,0)"), w("w(1/3,0)"))));
    }

    #[test]
    fn malformed_wave() {
        let err = parse("w(1/2,)").unwrap_err();
        assert_eq!(err.offset, 6);
        assert_eq!(err.column(), 7);
        assert_eq!(err.expected, vec!["rational".to_string()]);
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("1 - 2 - 3 * 4 circ 5").unwrap();
        assert_eq!(e.to_string(), "1 - 2 - 3 * 4 circ 5");
        let e = parse("1 - (2 - 3)").unwrap();
        assert_eq!(e.to_string(), "1 - (2 - 3)");
        let e = parse("(1 + 2) * 3 / (4 / 5)").unwrap();
        assert_eq!(e.to_string(), "(1 + 2) * 3 / (4 / 5)");
    }

    #[test]
    fn literal_forms() {
        assert_eq!(parse("-1/2").unwrap(), Expr::Rational("-1/2".parse().unwrap()));
        assert_eq!(parse("1 / 2").unwrap(), Expr::binary(BinOp::Div, Expr::Rational(1.into()), Expr::Rational(2.into())));
        assert_eq!(parse("2.5i").unwrap(), Expr::Imag(2.5));
        assert_eq!(parse("i").unwrap(), Expr::Imag(1.0));
        assert_eq!(parse("-3i").unwrap(), Expr::Imag(-3.0));
        assert_eq!(parse("1e-3").unwrap(), Expr::Decimal(1e-3));
        assert_eq!(parse("w(-1/4, 3/2)").unwrap(), w("w(-1/4,1/2)"));
        assert_eq!(parse("root(w(1/3,0), 2)").unwrap(), Expr::call(Func::Root(2), w("w(1/3,0)")));
    }

    #[test]
    fn printing_round_trips() {
        for s in ["w(1/4,0) * -2.0", "conj(1/2 / 3) + 1.0i", "root(integral(w(1/5,1/3)), 3) circ w(1/2,0)", "1 - -2"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn errors_carry_expected_set() {
        let err = parse("w(1/2,0) +").unwrap_err();
        assert_eq!(err.offset, 10);
        assert!(err.expected.contains(&"number".to_string()));
        assert_eq!(parse("root(w(1/2,0), 0)").unwrap_err().offset, 15);
        assert_eq!(parse("2 $ 3").unwrap_err().offset, 2);
        assert_eq!(parse("1/0").unwrap_err().offset, 2);
        assert!(parse("(1 + 2").is_err());
        assert!(parse("foo(1)").is_err());
    }
}
