//! Form expressions: lexer, parser and evaluator.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('^' | '*' | <juxtaposition>) unary)*
//! unary := '-' unary | power
//! power := atom ('**' INT)?
//! atom  := INT ('/' INT)? | NAME | NAME '(' expr ((',' | ';') expr)* ')' | '(' expr ')'
//! ```
//!
//! `^`, `*` and juxtaposition all denote the wedge product, which is plain
//! multiplication on coefficients. Names are `theta`, `dx1`, `dy1`, `dz`,
//! `x1`, `y1`, `z` (an underscore before the index is accepted). Calls are
//! `d`, `gamma`, `pi`, `L(e, k)`, `m1`, `m2`, `m3`, `f1`, `f2`.

use std::fmt;

use rumin_core::rumin::{self, RuminElement};
use rumin_core::{int, ContactModel, Form, Monomial, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ExprError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ExprError {
    fn at(pos: Pos, message: impl Into<String>) -> Self {
        ExprError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    StarStar,
    Caret,
    Slash,
    LParen,
    RParen,
    Sep,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) | Tok::Name(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::StarStar => f.write_str("'**'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Sep => f.write_str("separator"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(chars[start..i].iter().collect())
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Name(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' if chars.get(i) == Some(&'*') => {
                    i += 1;
                    Tok::StarStar
                }
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' | ';' => Tok::Sep,
                other => return Err(ExprError::at(pos, format!("unexpected character '{other}'"))),
            }
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column: col }));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Literal(Rational),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

const MAX_EXPONENT: u32 = 256;

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ExprError> {
        let (tok, pos) = self.bump();
        if tok == want {
            Ok(())
        } else {
            Err(ExprError::at(pos, format!("expected {want}, found {tok}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let build: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek() {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr {
                kind: build(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Caret | Tok::Star => {
                    self.bump();
                }
                Tok::Int(_) | Tok::Name(_) | Tok::LParen => {}
                _ => return Ok(lhs),
            }
            let rhs = self.unary()?;
            lhs = Expr {
                kind: ExprKind::Wedge(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Tok::Minus {
            let (_, pos) = self.bump();
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                pos,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::StarStar {
            return Ok(base);
        }
        let (_, pos) = self.bump();
        let (tok, epos) = self.bump();
        let Tok::Int(digits) = tok else {
            return Err(ExprError::at(epos, format!("expected an integer exponent, found {tok}")));
        };
        let e: u32 = digits
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ExprError::at(epos, format!("exponent must be at most {MAX_EXPONENT}")))?;
        Ok(Expr {
            kind: ExprKind::Power(Box::new(base), e),
            pos,
        })
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let (tok, pos) = self.bump();
        let kind = match tok {
            Tok::Int(num) => {
                let mut text = num;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den, dpos) = self.bump();
                    match den {
                        Tok::Int(d) if d.trim_start_matches('0').is_empty() => {
                            return Err(ExprError::at(dpos, "zero denominator"));
                        }
                        Tok::Int(d) => text = format!("{text}/{d}"),
                        other => {
                            return Err(ExprError::at(dpos, format!("expected a denominator, found {other}")));
                        }
                    }
                }
                ExprKind::Literal(text.parse().expect("digits form a rational"))
            }
            Tok::Name(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let mut args = vec![self.expr()?];
                    while *self.peek() == Tok::Sep {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen)?;
                    ExprKind::Call(name, args)
                } else {
                    ExprKind::Name(name)
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(inner);
            }
            other => return Err(ExprError::at(pos, format!("unexpected {other}"))),
        };
        Ok(Expr { kind, pos })
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    match p.bump() {
        (Tok::End, _) => Ok(e),
        (tok, pos) => Err(ExprError::at(pos, format!("unexpected {tok}"))),
    }
}

/// Parses and evaluates `text` on `model`.
pub fn eval_str(text: &str, model: &ContactModel) -> Result<Form, ExprError> {
    eval(&parse(text)?, model)
}

fn index_of(rest: &str) -> Option<usize> {
    let digits = rest.strip_prefix('_').unwrap_or(rest);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

fn name_value(name: &str, model: &ContactModel, pos: Pos) -> Result<Form, ExprError> {
    let n = model.n();
    let dim = model.dim();
    let scalar = |var: usize| Form::scalar(model, Poly::var(dim, var).expect("coordinate in range"));
    let in_range = |i: Option<usize>| {
        i.filter(|&i| (1..=n).contains(&i))
            .ok_or_else(|| ExprError::at(pos, format!("unknown name '{name}' for n = {n}")))
    };
    let generator = |idx: usize| Form::generator(model, idx).expect("coframe index in range");
    match name {
        "theta" => Ok(model.theta()),
        "z" => Ok(scalar(model.z())),
        "dz" => {
            // theta = dz - sum y_i dx_i
            let mut out = model.theta();
            for i in 1..=n {
                out = &out + &scalar(model.y(i)).wedge(&generator(i));
            }
            Ok(out)
        }
        _ => {
            if let Some(rest) = name.strip_prefix("dx") {
                Ok(generator(in_range(index_of(rest))?))
            } else if let Some(rest) = name.strip_prefix("dy") {
                Ok(generator(n + in_range(index_of(rest))?))
            } else if let Some(rest) = name.strip_prefix('x') {
                Ok(scalar(model.x(in_range(index_of(rest))?)))
            } else if let Some(rest) = name.strip_prefix('y') {
                Ok(scalar(model.y(in_range(index_of(rest))?)))
            } else {
                Err(ExprError::at(pos, format!("unknown name '{name}' for n = {n}")))
            }
        }
    }
}

fn certified(name: &str, args: Vec<Form>, pos: Pos) -> Result<Vec<RuminElement>, ExprError> {
    args.into_iter()
        .enumerate()
        .map(|(i, f)| {
            RuminElement::certify(f).map_err(|_| {
                ExprError::at(pos, format!("{name}: argument {} is not in the Rumin complex", i + 1))
            })
        })
        .collect()
}

fn call(name: &str, args: Vec<Form>, pos: Pos) -> Result<Form, ExprError> {
    let arity = match name {
        "d" | "gamma" | "pi" | "m1" | "f1" => 1,
        "L" | "m2" | "f2" => 2,
        "m3" => 3,
        _ => return Err(ExprError::at(pos, format!("unknown operator '{name}'"))),
    };
    if args.len() != arity {
        return Err(ExprError::at(
            pos,
            format!("{name} takes {arity} argument(s), got {}", args.len()),
        ));
    }
    let domain = |e: rumin_core::Error| ExprError::at(pos, format!("{name}: {e}"));
    match name {
        "d" => Ok(args[0].exterior_d()),
        "gamma" => Ok(rumin::gamma(&args[0])),
        "pi" => Ok(rumin::pi_form(&args[0])),
        "L" => {
            let power = args[1]
                .coefficient(Monomial::ONE)
                .constant_value()
                .filter(|c| args[1].degree() == 0 && c.is_integer() && *c >= int(0))
                .and_then(|c| c.to_integer().to_string().parse::<usize>().ok())
                .ok_or_else(|| ExprError::at(pos, "L: the power must be a nonnegative integer"))?;
            args[0].lefschetz(power).map_err(domain)
        }
        _ => {
            let xs = certified(name, args, pos)?;
            match name {
                "m1" => rumin::m1(&xs[0]).map(RuminElement::into_form),
                "m2" => rumin::m2(&xs[0], &xs[1]).map(RuminElement::into_form),
                "m3" => rumin::m3(&xs[0], &xs[1], &xs[2]).map(RuminElement::into_form),
                "f1" => rumin::f1(&xs[0]),
                _ => rumin::f2(&xs[0], &xs[1]),
            }
            .map_err(domain)
        }
    }
}

/// Evaluates an expression tree on `model`.
pub fn eval(e: &Expr, model: &ContactModel) -> Result<Form, ExprError> {
    match &e.kind {
        ExprKind::Literal(c) => Ok(Form::constant(model, c.clone())),
        ExprKind::Name(name) => name_value(name, model, e.pos),
        ExprKind::Neg(a) => Ok(-&eval(a, model)?),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let (x, mut y) = (eval(a, model)?, eval(b, model)?);
            if matches!(e.kind, ExprKind::Sub(..)) {
                y = -&y;
            }
            x.checked_add(&y).map_err(|_| {
                ExprError::at(
                    e.pos,
                    format!("cannot add forms of degree {} and {}", x.degree(), y.degree()),
                )
            })
        }
        ExprKind::Wedge(a, b) => {
            let (x, y) = (eval(a, model)?, eval(b, model)?);
            x.try_wedge(&y)
                .map_err(|err| ExprError::at(e.pos, format!("wedge: {err}")))
        }
        ExprKind::Power(a, k) => {
            let x = eval(a, model)?;
            if x.degree() != 0 {
                return Err(ExprError::at(
                    e.pos,
                    format!("'**' applies to functions, not to a {}-form", x.degree()),
                ));
            }
            let p = x.coefficient(Monomial::ONE);
            Ok(Form::scalar(model, p.pow(*k)))
        }
        ExprKind::Call(name, args) => {
            let values = args
                .iter()
                .map(|a| eval(a, model))
                .collect::<Result<Vec<_>, _>>()?;
            call(name, values, e.pos)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rumin_core::rat;

    fn h(n: usize) -> ContactModel {
        ContactModel::new(n).unwrap()
    }

    fn ev(text: &str, n: usize) -> String {
        eval_str(text, &h(n)).unwrap().to_string()
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(ev("theta^dx1", 1), "theta^dx1");
        assert_eq!(ev("theta dx1", 1), "theta^dx1");
        assert_eq!(ev("(3/2*x1**2) dx1^dy1 + theta^dx1", 1), "theta^dx1 + (3/2*x1**2) dx1^dy1");
        assert_eq!(ev("dz", 1), "theta + (y1) dx1");
        assert_eq!(ev("dx_2 ^ dy_2", 2), "dx2^dy2");
        assert_eq!(ev("-2 theta", 1), "-2 theta");
        assert_eq!(ev("x1 - x1", 1), "0");
    }

    #[test]
    fn operator_examples() {
        assert_eq!(ev("pi(dx1^dy1)", 1), "0");
        assert_eq!(ev("gamma(dx1^dy1)", 1), "theta");
        assert_eq!(ev("m3(dx1; dy1; dx1)", 1), "2 theta^dx1");
        assert_eq!(ev("m3(dx1, dy1, dx1)", 1), "2 theta^dx1");
        assert_eq!(ev("d(z)", 1), "theta + (y1) dx1");
        assert_eq!(ev("L(theta, 1)", 1), "theta^dx1^dy1");
        assert_eq!(ev("f2(dx1; dy1)", 1), "-theta");
        assert_eq!(ev("m2(dx1; dy1)", 1), "0");
    }

    #[test]
    fn errors_carry_positions() {
        let m = h(1);
        let e = eval_str("theta +\n  dx3", &m).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown name 'dx3'"));
        let e = eval_str("theta + dx1^dy1", &m).unwrap_err();
        assert!(e.message.contains("degree 1 and 2"), "{e}");
        assert_eq!(e.column, 7);
        let e = parse("(theta").unwrap_err();
        assert!(e.message.contains("expected ')'"));
        assert!(parse("1/0").is_err());
        assert!(parse("theta $").is_err());
        let e = eval_str("m2(dx1; theta)", &m).unwrap_err();
        assert!(e.message.contains("argument 2 is not in the Rumin complex"), "{e}");
        assert!(eval_str("L(dx1, 1)", &m).is_err());
        assert!(eval_str("theta**2", &m).is_err());
        assert!(eval_str("foo(theta)", &m).is_err());
        assert!(eval_str("d(theta, theta)", &m).is_err());
    }

    #[test]
    fn literals() {
        let m = h(1);
        assert_eq!(eval_str("6/4", &m).unwrap(), Form::constant(&m, rat(3, 2)));
        assert_eq!(eval_str("2**10", &m).unwrap(), Form::constant(&m, rat(1024, 1)));
    }
}
