//! Problem description files and polynomial rendering.
//!
//! ```text
//! LDUMK := ( x * dif(y, 2) + (-1) * dif(y, 1) + (4 * x^3) * y = 0 );
//! T := x^2;
//! interval := (-1, 1);
//! n := 4;
//! ```
//!
//! Statements end with `;`, `/* ... */` comments are skipped, and the
//! statements may optionally be wrapped in `process[<k>] := ( ... );`.
//! `reference_taylor_degree := N;` is accepted as an optional extra statement.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::ode::{DiffOperator, IvpProblem, OdeError};
use crate::polynomial::{Poly, Rational};

/// Highest power of `x` or derivative order accepted in an input file.
const MAX_DEGREE: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSource {
    pub text: String,
    pub origin: String,
}

impl ProblemSource {
    pub fn inline(text: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            origin: "<inline>".into(),
        }
    }

    pub fn from_path(path: &std::path::Path) -> std::io::Result<Self> {
        Ok(Self {
            text: std::fs::read_to_string(path)?,
            origin: path.display().to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseDiagnostic {}

/// A parsed file: the problem plus optional analysis settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub problem: IvpProblem,
    pub reference_taylor_degree: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    /// `x^2 - 2/7*x^4`
    Human,
    /// `x ^ 2 + x ^ 4 $ rat(-2,7)`
    Aplan,
}

pub fn parse_problem(src: &ProblemSource) -> Result<IvpProblem, ParseDiagnostic> {
    parse_problem_file(src).map(|file| file.problem)
}

pub fn parse_problem_file(src: &ProblemSource) -> Result<ProblemFile, ParseDiagnostic> {
    let tokens = lex(&src.text)?;
    Parser::new(tokens).problem()
}

/// Parses a bare polynomial expression in `x`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseDiagnostic> {
    let tokens = lex(text)?;
    let mut parser = Parser::new(tokens);
    let start = parser.peek().pos;
    let expr = parser.expr()?;
    parser.expect(&Tok::Eof, "end of input")?;
    expr.into_poly(start)
}

pub fn render_poly(p: &Poly, style: RenderStyle) -> String {
    if p.is_zero() {
        return "0".into();
    }
    match style {
        RenderStyle::Human => render_human(p),
        RenderStyle::Aplan => render_aplan(p),
    }
}

fn render_human(p: &Poly) -> String {
    let mut out = String::new();
    for (j, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let atom = match j {
            0 => None,
            1 => Some("x".to_string()),
            _ => Some(format!("x^{j}")),
        };
        match atom {
            None => out.push_str(&magnitude.to_string()),
            Some(atom) if magnitude.is_one() => out.push_str(&atom),
            Some(atom) => out.push_str(&format!("{magnitude}*{atom}")),
        }
    }
    out
}

fn aplan_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("rat({},{})", c.numer(), c.denom())
    }
}

fn render_aplan(p: &Poly) -> String {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            let atom = match j {
                0 => return aplan_rational(c),
                1 => "x".to_string(),
                _ => format!("x ^ {j}"),
            };
            if c.is_one() {
                atom
            } else {
                format!("{atom} $ {}", aplan_rational(c))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Assign,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Dollar,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Assign => write!(f, "`:=`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Dollar => write!(f, "`$`"),
            Tok::Equals => write!(f, "`=`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn diag(pos: Pos, message: impl Into<String>, expected: impl Into<String>) -> ParseDiagnostic {
    ParseDiagnostic {
        line: pos.line,
        column: pos.column,
        message: message.into(),
        expected: expected.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut pos = Pos { line: 1, column: 1 };

    let advance = |i: &mut usize, pos: &mut Pos| {
        if chars[*i] == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
        *i += 1;
    };

    while i < chars.len() {
        let c = chars[i];
        let start = pos;
        if c.is_whitespace() {
            advance(&mut i, &mut pos);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            advance(&mut i, &mut pos);
            advance(&mut i, &mut pos);
            loop {
                if i >= chars.len() {
                    return Err(diag(start, "unterminated comment", "`*/`"));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    advance(&mut i, &mut pos);
                    advance(&mut i, &mut pos);
                    break;
                }
                advance(&mut i, &mut pos);
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                digits.push(chars[i]);
                advance(&mut i, &mut pos);
            }
            tokens.push(Token {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                pos: start,
            });
            continue;
        } else if c.is_alphabetic() || c == '_' {
            let mut ident = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                ident.push(chars[i]);
                advance(&mut i, &mut pos);
            }
            tokens.push(Token {
                tok: Tok::Ident(ident),
                pos: start,
            });
            continue;
        } else if c == ':' && chars.get(i + 1) == Some(&'=') {
            advance(&mut i, &mut pos);
            Tok::Assign
        } else {
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '$' => Tok::Dollar,
                '=' => Tok::Equals,
                other => return Err(diag(start, format!("unknown character `{other}`"), "")),
            }
        };
        advance(&mut i, &mut pos);
        tokens.push(Token { tok, pos: start });
    }
    tokens.push(Token { tok: Tok::Eof, pos });
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Expressions linear in y

/// Which part of the operator a polynomial multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Free,
    Derivative(usize),
}

/// `sum_slot poly_slot * slot`, with `Free` meaning the inhomogeneous term.
#[derive(Debug, Clone, Default)]
struct LinExpr {
    slots: BTreeMap<Slot, Poly>,
}

impl LinExpr {
    fn poly(p: Poly) -> Self {
        let mut slots = BTreeMap::new();
        if !p.is_zero() {
            slots.insert(Slot::Free, p);
        }
        Self { slots }
    }

    fn derivative(order: usize) -> Self {
        Self {
            slots: [(Slot::Derivative(order), Poly::from_ints(&[1]))].into(),
        }
    }

    fn involves_y(&self) -> bool {
        self.slots.keys().any(|s| matches!(s, Slot::Derivative(_)))
    }

    fn degree(&self) -> usize {
        self.slots.values().filter_map(Poly::degree).max().unwrap_or(0)
    }

    fn add(mut self, rhs: LinExpr, negate: bool) -> Self {
        for (slot, p) in rhs.slots {
            let entry = self.slots.entry(slot).or_default();
            *entry = if negate { &*entry - &p } else { &*entry + &p };
            if entry.is_zero() {
                self.slots.remove(&slot);
            }
        }
        self
    }

    fn neg(self) -> Self {
        Self {
            slots: self.slots.into_iter().map(|(s, p)| (s, -p)).collect(),
        }
    }

    /// Product; `None` when both factors involve `y`.
    fn mul(self, rhs: LinExpr) -> Option<Self> {
        let (scalar, other) = match (self.involves_y(), rhs.involves_y()) {
            (true, true) => return None,
            (false, _) => (self, rhs),
            (true, false) => (rhs, self),
        };
        let factor = scalar.slots.get(&Slot::Free).cloned().unwrap_or_default();
        let mut slots = BTreeMap::new();
        for (slot, p) in other.slots {
            let prod = p.mul_poly(&factor);
            if !prod.is_zero() {
                slots.insert(slot, prod);
            }
        }
        Some(Self { slots })
    }

    fn into_poly(self, pos: Pos) -> Result<Poly, ParseDiagnostic> {
        if self.involves_y() {
            return Err(diag(pos, "expression must not involve y", "a polynomial in x"));
        }
        Ok(self.slots.get(&Slot::Free).cloned().unwrap_or_default())
    }
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

#[derive(Default)]
struct Fields {
    operator: Option<(LinExpr, Pos)>,
    initial: Option<Poly>,
    interval: Option<((Rational, Rational), Pos)>,
    degree: Option<usize>,
    reference: Option<usize>,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        Self { tokens, at: 0 }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn next(&mut self) -> Token {
        let token = self.tokens[self.at].clone();
        if token.tok != Tok::Eof {
            self.at += 1;
        }
        token
    }

    fn expect(&mut self, tok: &Tok, expected: &str) -> Result<Token, ParseDiagnostic> {
        let token = self.next();
        if &token.tok == tok {
            Ok(token)
        } else {
            Err(diag(token.pos, format!("unexpected {}", token.tok), expected))
        }
    }

    fn problem(&mut self) -> Result<ProblemFile, ParseDiagnostic> {
        let mut fields = Fields::default();
        if matches!(&self.peek().tok, Tok::Ident(name) if name == "process") {
            self.next();
            self.expect(&Tok::LBracket, "`[`")?;
            self.unsigned("process number")?;
            self.expect(&Tok::RBracket, "`]`")?;
            self.expect(&Tok::Assign, "`:=`")?;
            self.expect(&Tok::LParen, "`(`")?;
            while self.peek().tok != Tok::RParen {
                self.statement(&mut fields)?;
            }
            self.next();
            self.expect(&Tok::Semi, "`;`")?;
        } else {
            while self.peek().tok != Tok::Eof {
                self.statement(&mut fields)?;
            }
        }
        let end = self.peek().pos;
        if self.peek().tok != Tok::Eof {
            return Err(diag(end, format!("unexpected {}", self.peek().tok), "end of input"));
        }
        self.finish(fields, end)
    }

    fn statement(&mut self, fields: &mut Fields) -> Result<(), ParseDiagnostic> {
        let head = self.next();
        let Tok::Ident(name) = &head.tok else {
            return Err(diag(
                head.pos,
                format!("unexpected {}", head.tok),
                "a statement (`LDUMK`, `T`, `interval`, `n`)",
            ));
        };
        let duplicate = || diag(head.pos, format!("duplicate `{name}` statement"), "");
        match name.as_str() {
            "LDUMK" => {
                if fields.operator.is_some() {
                    return Err(duplicate());
                }
                self.expect(&Tok::Assign, "`:=`")?;
                self.expect(&Tok::LParen, "`(`")?;
                let expr = self.expr()?;
                self.expect(&Tok::Equals, "`=`")?;
                let rhs = self.next();
                if !matches!(&rhs.tok, Tok::Int(v) if v.is_zero()) {
                    return Err(diag(rhs.pos, "right-hand side of the equation must be 0", "`0`"));
                }
                self.expect(&Tok::RParen, "`)`")?;
                fields.operator = Some((expr, head.pos));
            }
            "T" => {
                if fields.initial.is_some() {
                    return Err(duplicate());
                }
                self.expect(&Tok::Assign, "`:=`")?;
                let start = self.peek().pos;
                let expr = self.expr()?;
                fields.initial = Some(expr.into_poly(start)?);
            }
            "interval" => {
                if fields.interval.is_some() {
                    return Err(duplicate());
                }
                self.expect(&Tok::Assign, "`:=`")?;
                self.expect(&Tok::LParen, "`(`")?;
                let a = self.signed_number()?;
                self.expect(&Tok::Comma, "`,`")?;
                let b = self.signed_number()?;
                self.expect(&Tok::RParen, "`)`")?;
                fields.interval = Some(((a, b), head.pos));
            }
            "n" => {
                if fields.degree.is_some() {
                    return Err(duplicate());
                }
                self.expect(&Tok::Assign, "`:=`")?;
                fields.degree = Some(self.unsigned("a non-negative integer degree")?);
            }
            "reference_taylor_degree" => {
                if fields.reference.is_some() {
                    return Err(duplicate());
                }
                self.expect(&Tok::Assign, "`:=`")?;
                fields.reference = Some(self.unsigned("a non-negative integer degree")?);
            }
            _ => {
                return Err(diag(
                    head.pos,
                    format!("unknown statement `{name}`"),
                    "`LDUMK`, `T`, `interval`, `n` or `reference_taylor_degree`",
                ))
            }
        }
        self.expect(&Tok::Semi, "`;`")?;
        Ok(())
    }

    fn finish(&self, fields: Fields, end: Pos) -> Result<ProblemFile, ParseDiagnostic> {
        let missing = |what: &str| diag(end, format!("missing `{what}` statement"), what.to_string());
        let (expr, op_pos) = fields.operator.ok_or_else(|| missing("LDUMK := ( ... = 0 );"))?;
        let initial = fields.initial.ok_or_else(|| missing("T := ...;"))?;
        let ((a, b), interval_pos) = fields.interval.ok_or_else(|| missing("interval := (a, b);"))?;
        let degree = fields.degree.ok_or_else(|| missing("n := ...;"))?;

        let mut slots = expr.slots;
        let inhomogeneous = slots.remove(&Slot::Free).unwrap_or_default();
        let order = slots
            .keys()
            .filter_map(|s| match s {
                Slot::Derivative(i) => Some(*i),
                Slot::Free => None,
            })
            .max()
            .ok_or_else(|| diag(op_pos, "equation does not involve y", "a term in y or dif(y, i)"))?;
        let mut coeffs = vec![Poly::zero(); order + 1];
        for (slot, p) in slots {
            if let Slot::Derivative(i) = slot {
                coeffs[i] = p;
            }
        }
        let operator = DiffOperator::new(coeffs, inhomogeneous)
            .map_err(|e| diag(op_pos, e.to_string(), "a term in y or dif(y, i)"))?;
        let problem = IvpProblem::new(operator, initial, (a, b), degree).map_err(|e| match e {
            OdeError::InvalidInterval { .. } => diag(interval_pos, e.to_string(), "a < b with a <= 0 <= b"),
            other => diag(op_pos, other.to_string(), ""),
        })?;
        Ok(ProblemFile {
            problem,
            reference_taylor_degree: fields.reference,
        })
    }

    fn unsigned(&mut self, expected: &str) -> Result<usize, ParseDiagnostic> {
        let token = self.next();
        match &token.tok {
            Tok::Int(v) => usize::try_from(v)
                .map_err(|_| diag(token.pos, format!("integer `{v}` is too large"), expected)),
            other => Err(diag(token.pos, format!("unexpected {other}"), expected)),
        }
    }

    fn bounded(&mut self, expected: &str) -> Result<usize, ParseDiagnostic> {
        let pos = self.peek().pos;
        let value = self.unsigned(expected)?;
        if value > MAX_DEGREE {
            return Err(diag(pos, format!("{value} exceeds the limit of {MAX_DEGREE}"), expected));
        }
        Ok(value)
    }

    fn integer(&mut self) -> Result<BigInt, ParseDiagnostic> {
        let negative = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let token = self.next();
        match token.tok {
            Tok::Int(v) => Ok(if negative { -v } else { v }),
            other => Err(diag(token.pos, format!("unexpected {other}"), "an integer")),
        }
    }

    /// `integer` or `integer / positive-integer`, without sign.
    fn number(&mut self) -> Result<Rational, ParseDiagnostic> {
        let token = self.next();
        let Tok::Int(numer) = token.tok else {
            return Err(diag(token.pos, format!("unexpected {}", token.tok), "a number"));
        };
        if self.peek().tok != Tok::Slash {
            return Ok(Rational::from_integer(numer));
        }
        self.next();
        let denom_token = self.next();
        match denom_token.tok {
            Tok::Int(d) if !d.is_zero() => Ok(Rational::new(numer, d)),
            Tok::Int(_) => Err(diag(denom_token.pos, "malformed rational: zero denominator", "a positive integer")),
            other => Err(diag(
                denom_token.pos,
                format!("malformed rational: unexpected {other}"),
                "a positive integer",
            )),
        }
    }

    fn signed_number(&mut self) -> Result<Rational, ParseDiagnostic> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(-self.number()?);
        }
        self.number()
    }

    fn expr(&mut self) -> Result<LinExpr, ParseDiagnostic> {
        let mut acc = self.term()?;
        loop {
            let negate = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.next();
            let rhs = self.term()?;
            acc = acc.add(rhs, negate);
        }
    }

    fn term(&mut self) -> Result<LinExpr, ParseDiagnostic> {
        let mut acc = self.factor()?;
        while matches!(self.peek().tok, Tok::Star | Tok::Dollar) {
            let op = self.next();
            let rhs = self.factor()?;
            if acc.degree() + rhs.degree() > MAX_DEGREE {
                return Err(diag(op.pos, format!("product degree exceeds the limit of {MAX_DEGREE}"), ""));
            }
            acc = acc.mul(rhs).ok_or_else(|| {
                diag(
                    op.pos,
                    "nonlinear term: product of two factors involving y",
                    "at most one factor in y or dif(y, i) per product",
                )
            })?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LinExpr, ParseDiagnostic> {
        let token = self.peek().clone();
        match &token.tok {
            Tok::Int(_) => Ok(LinExpr::poly(Poly::constant(self.number()?))),
            Tok::Minus => {
                self.next();
                Ok(self.factor()?.neg())
            }
            Tok::LParen => {
                self.next();
                let inner = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.next();
                match name.as_str() {
                    "x" => {
                        let power = if self.peek().tok == Tok::Caret {
                            self.next();
                            self.bounded("a non-negative integer exponent")?
                        } else {
                            1
                        };
                        Ok(LinExpr::poly(Poly::monomial(Rational::one(), power)))
                    }
                    "y" => Ok(LinExpr::derivative(0)),
                    "dif" => {
                        self.expect(&Tok::LParen, "`(`")?;
                        let target = self.next();
                        if !matches!(&target.tok, Tok::Ident(t) if t == "y") {
                            return Err(diag(
                                target.pos,
                                format!("derivative of {} is not supported", target.tok),
                                "`y`",
                            ));
                        }
                        self.expect(&Tok::Comma, "`,`")?;
                        let order = self.bounded("a derivative order")?;
                        self.expect(&Tok::RParen, "`)`")?;
                        Ok(LinExpr::derivative(order))
                    }
                    "rat" => {
                        self.expect(&Tok::LParen, "`(`")?;
                        let numer = self.integer()?;
                        self.expect(&Tok::Comma, "`,`")?;
                        let denom_pos = self.peek().pos;
                        let denom = self.integer()?;
                        self.expect(&Tok::RParen, "`)`")?;
                        if denom.is_zero() {
                            return Err(diag(denom_pos, "malformed rational: zero denominator", "a nonzero integer"));
                        }
                        Ok(LinExpr::poly(Poly::constant(Rational::new(numer, denom))))
                    }
                    other => Err(diag(
                        token.pos,
                        format!("unknown token `{other}`"),
                        "`x`, `y`, `dif`, `rat`, a number or `(`",
                    )),
                }
            }
            other => Err(diag(
                token.pos,
                format!("unexpected {other}"),
                "`x`, `y`, `dif`, `rat`, a number or `(`",
            )),
        }
    }
}
