//! Integrand expressions in one variable `t`.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' integer)?
//! base   := number | 't' | '(' expr ')' | func '(' expr ')' | '-' base
//! func   := sin | cos | exp | log
//! ```
//!
//! Unary minus binds tighter than `^`, so `-t^2` is `(-t)^2`.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function {name:?} at offset {offset}")]
    UnknownFunction { offset: usize, name: String },
    #[error("exponent at offset {offset} must be an integer constant")]
    NonIntegerExponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownFunction { offset, .. }
            | ParseError::NonIntegerExponent { offset } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
#[error("cannot evaluate {node} at t = {t}: {reason}")]
pub struct EvalError {
    /// The offending subexpression, rendered.
    pub node: String,
    pub t: f64,
    pub reason: &'static str,
}

pub fn parse_expression(source: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: source.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
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
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let negative = self.src.get(self.pos) == Some(&b'-');
        if negative {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.syntax("expected an integer exponent"));
        }
        if matches!(self.src.get(self.pos), Some(b'.' | b'e' | b'E')) {
            return Err(ParseError::NonIntegerExponent { offset: start });
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let n: i32 = text.parse().map_err(|_| ParseError::Syntax {
            offset: start,
            message: "exponent out of range".into(),
        })?;
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "t" {
                    return Ok(Expr::Var);
                }
                let func = Func::from_name(name).ok_or_else(|| ParseError::UnknownFunction {
                    offset: start,
                    name: name.to_string(),
                })?;
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Some(_) => Err(self.syntax("expected a number, 't', '(', a function or '-'")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.src.get(p.pos).is_some_and(u8::is_ascii_digit) {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut count = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            count += digits(self);
        }
        if count == 0 {
            self.pos = start;
            return Err(self.syntax("malformed number"));
        }
        // exponent only when followed by digits, so "2exp" is not swallowed
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<f64>()
            .map(Expr::Const)
            .map_err(|_| ParseError::Syntax {
                offset: start,
                message: format!("malformed number {text:?}"),
            })
    }
}

impl Expr {
    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        let fail = |reason| EvalError {
            node: self.to_string(),
            t,
            reason,
        };
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Add(x, y) => x.eval(t)? + y.eval(t)?,
            Expr::Sub(x, y) => x.eval(t)? - y.eval(t)?,
            Expr::Mul(x, y) => x.eval(t)? * y.eval(t)?,
            Expr::Div(x, y) => {
                let num = x.eval(t)?;
                let den = y.eval(t)?;
                if den == 0.0 {
                    return Err(fail("division by zero"));
                }
                num / den
            }
            Expr::Pow(x, n) => {
                let base = x.eval(t)?;
                if base == 0.0 && *n < 0 {
                    return Err(fail("division by zero"));
                }
                base.powi(*n)
            }
            Expr::Neg(x) => -x.eval(t)?,
            Expr::Call(f, x) => {
                let arg = x.eval(t)?;
                match f {
                    Func::Sin => arg.sin(),
                    Func::Cos => arg.cos(),
                    Func::Exp => arg.exp(),
                    Func::Log => {
                        if arg <= 0.0 {
                            return Err(fail("log of a non-positive number"));
                        }
                        arg.ln()
                    }
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fail("result is not finite"))
        }
    }

    /// True when the expression does not mention `t`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var => false,
            Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) | Expr::Div(x, y) => {
                x.is_constant() && y.is_constant()
            }
            Expr::Pow(x, _) | Expr::Neg(x) | Expr::Call(_, x) => x.is_constant(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Pow(..) => 2,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "t"),
            Expr::Add(x, y) => {
                x.write_at(f, 0)?;
                write!(f, " + ")?;
                y.write_at(f, 1)
            }
            Expr::Sub(x, y) => {
                x.write_at(f, 0)?;
                write!(f, " - ")?;
                y.write_at(f, 1)
            }
            Expr::Mul(x, y) => {
                x.write_at(f, 1)?;
                write!(f, "*")?;
                y.write_at(f, 2)
            }
            Expr::Div(x, y) => {
                x.write_at(f, 1)?;
                write!(f, "/")?;
                y.write_at(f, 2)
            }
            Expr::Pow(x, n) => {
                x.write_at(f, 3)?;
                write!(f, "^{n}")
            }
            Expr::Neg(x) => {
                write!(f, "-")?;
                x.write_at(f, 3)
            }
            Expr::Call(func, x) => {
                write!(f, "{}(", func.name())?;
                x.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    /// Canonical text that parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Box<Expr> {
        Box::new(Expr::Var)
    }

    #[test]
    fn simple_power() {
        assert_eq!(parse_expression("t^4").unwrap(), Expr::Pow(t(), 4));
        assert_eq!(parse_expression(" t ^ -2 ").unwrap(), Expr::Pow(t(), -2));
    }

    #[test]
    fn mixed_expression() {
        let e = parse_expression("7*t^2 - 3*(t+1)").unwrap();
        assert_eq!(e.eval(2.0).unwrap(), 19.0);
    }

    #[test]
    fn unary_minus_binds_tightest() {
        assert_eq!(
            parse_expression("-t^2").unwrap(),
            Expr::Pow(Box::new(Expr::Neg(t())), 2)
        );
        assert_eq!(parse_expression("-t^2").unwrap().eval(3.0).unwrap(), 9.0);
        assert_eq!(parse_expression("0 - t^2").unwrap().eval(3.0).unwrap(), -9.0);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(parse_expression("t^^2").unwrap_err().offset(), 2);
        assert!(matches!(
            parse_expression("t^^2"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_expression("(t+1"),
            Err(ParseError::Syntax { offset: 4, .. })
        ));
        assert!(matches!(
            parse_expression("t t"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_expression(""),
            Err(ParseError::Syntax { offset: 0, .. })
        ));
        assert!(matches!(
            parse_expression("2*tan(t)"),
            Err(ParseError::UnknownFunction { offset: 2, .. })
        ));
        assert!(matches!(
            parse_expression("t^2.5"),
            Err(ParseError::NonIntegerExponent { offset: 2 })
        ));
        assert!(matches!(
            parse_expression("t^t"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_expression("1.5e-3").unwrap(), Expr::Const(1.5e-3));
        assert_eq!(parse_expression(".5").unwrap(), Expr::Const(0.5));
        assert_eq!(parse_expression("2.").unwrap(), Expr::Const(2.0));
        assert!(parse_expression("2exp(t)").is_err());
        assert!(parse_expression(".").is_err());
    }

    #[test]
    fn domain_errors() {
        let e = parse_expression("1 + log(t)").unwrap();
        let err = e.eval(0.0).unwrap_err();
        assert_eq!(err.node, "log(t)");
        assert_eq!(err.t, 0.0);
        let err = parse_expression("1/(t-1)").unwrap().eval(1.0).unwrap_err();
        assert_eq!(err.node, "1/(t - 1)");
        assert_eq!(err.reason, "division by zero");
        assert!(parse_expression("exp(t)").unwrap().eval(1000.0).is_err());
        assert!(parse_expression("t^-1").unwrap().eval(0.0).is_err());
    }

    #[test]
    fn render_is_canonical() {
        let cases = [
            ("t - (t - 1)", "t - (t - 1)"),
            ("(t - t) - 1", "t - t - 1"),
            ("t/(t*2)", "t/(t*2)"),
            ("(t^2)^3", "(t^2)^3"),
            ("-(t^2)", "-(t^2)"),
            ("--t", "--t"),
            ("-(t+1)*2", "-(t + 1)*2"),
            ("sin( t )", "sin(t)"),
        ];
        for (src, want) in cases {
            let e = parse_expression(src).unwrap();
            assert_eq!(e.to_string(), want, "{src}");
            assert_eq!(parse_expression(want).unwrap(), e);
        }
    }

    #[test]
    fn constant_detection() {
        assert!(parse_expression("exp(1) - 1").unwrap().is_constant());
        assert!(!parse_expression("exp(t)").unwrap().is_constant());
    }
}
