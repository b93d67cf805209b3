//! Surface syntax for set and size expressions.
//!
//! ```text
//! set   := inter ('|' inter)*
//! inter := prod (('&' | '\') prod)*
//! prod  := atom ('x' atom)*
//! atom  := N | N0 | Z | Q | Q+ | I | E | O | P | S | M(k) | finite{lit,...}
//!        | image(fexpr) | interval(lo,hi] | '(' set ')'
//! size  := term (('+' | '-') term)*
//! term  := factor ('*' factor)*
//! factor:= k | alpha | phi | sigma(set) | chi(set) | meet(size,size)
//!        | join(size,size) | '(' size ')'
//! ```

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

pub type Rat = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    N,
    N0,
    Z,
    Q,
    QPlus,
    I,
    E,
    O,
    P,
    S,
}

impl Named {
    const ALL: [Named; 10] =
        [Named::N, Named::N0, Named::Z, Named::Q, Named::QPlus, Named::I, Named::E, Named::O, Named::P, Named::S];

    pub fn as_str(self) -> &'static str {
        match self {
            Named::N => "N",
            Named::N0 => "N0",
            Named::Z => "Z",
            Named::Q => "Q",
            Named::QPlus => "Q+",
            Named::I => "I",
            Named::E => "E",
            Named::O => "O",
            Named::P => "P",
            Named::S => "S",
        }
    }
}

/// Element literal inside `finite{...}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lit {
    Num(Rat),
    Pair(Box<Lit>, Box<Lit>),
}

/// Strictly increasing map used by `image(...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FExpr {
    /// coefficients of `m^0, m^1, ...`, no trailing zeros
    Poly(Vec<u64>),
    /// `b^m`
    Exp(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Named(Named),
    Multiples(u64),
    Finite(Vec<Lit>),
    Image(FExpr),
    Interval(Rat, Rat),
    Union(Box<SetExpr>, Box<SetExpr>),
    Inter(Box<SetExpr>, Box<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
    Product(Box<SetExpr>, Box<SetExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeExpr {
    Int(u64),
    Alpha,
    Phi,
    Sigma(SetExpr),
    Chi(SetExpr),
    Meet(Box<SizeExpr>, Box<SizeExpr>),
    Join(Box<SizeExpr>, Box<SizeExpr>),
    Add(Box<SizeExpr>, Box<SizeExpr>),
    Sub(Box<SizeExpr>, Box<SizeExpr>),
    Mul(Box<SizeExpr>, Box<SizeExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Set(SetExpr),
    Size(SizeExpr),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {}", self.describe())]
pub struct SyntaxError {
    /// byte offset into the input
    pub offset: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
    /// set for errors that are not about the next token
    pub message: Option<String>,
}

impl SyntaxError {
    fn describe(&self) -> String {
        if let Some(m) = &self.message {
            return m.clone();
        }
        let items: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        let list = match items.as_slice() {
            [] => "nothing".to_string(),
            [one] => one.to_string(),
            [init @ .., last] => format!("{} or {last}", init.join(", ")),
        };
        format!("expected {list}, found {}", self.found)
    }

    /// Keeps whichever error got further; ties merge their expectations.
    fn merge(self, other: SyntaxError) -> SyntaxError {
        use std::cmp::Ordering::*;
        match self.offset.cmp(&other.offset) {
            Greater => self,
            Less => other,
            Equal if self.message.is_some() => self,
            Equal if other.message.is_some() => other,
            Equal => {
                let mut e = self;
                e.expected.extend(other.expected);
                e
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let mut out = Vec::new();
    let mut it = input.char_indices().peekable();
    while let Some(&(at, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(c);
                it.next();
            }
            if s == "Q" && it.peek().is_some_and(|&(_, c)| c == '+') {
                it.next();
                s.push('+');
            }
            out.push((Tok::Ident(s), at));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_ascii_digit()) {
                s.push(c);
                it.next();
            }
            let n = s.parse().map_err(|_| SyntaxError {
                offset: at,
                expected: BTreeSet::new(),
                found: s.clone(),
                message: Some(format!("number {s} is too large")),
            })?;
            out.push((Tok::Num(n), at));
        } else if "(){}[],|&\\+-*/^".contains(c) {
            out.push((Tok::Sym(c), at));
            it.next();
        } else {
            return Err(SyntaxError {
                offset: at,
                expected: BTreeSet::new(),
                found: format!("`{c}`"),
                message: Some(format!("unexpected character `{c}`")),
            });
        }
    }
    out.push((Tok::End, input.len()));
    Ok(out)
}

const SET_START: &str = "a set";
const SIZE_START: &str = "a size";

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
            message: None,
        }
    }

    fn fail_at(&self, offset: usize, message: String) -> SyntaxError {
        SyntaxError { offset, expected: BTreeSet::new(), found: String::new(), message: Some(message) }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn eat_ident(&mut self, name: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == name) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn num(&mut self) -> PResult<u64> {
        match self.peek() {
            Tok::Num(n) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error(&["a number"])),
        }
    }

    fn end(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.error(&["end of input"])),
        }
    }

    // ---- sets

    fn set(&mut self) -> PResult<SetExpr> {
        let mut lhs = self.set_inter()?;
        while self.eat_sym('|') {
            lhs = SetExpr::Union(Box::new(lhs), Box::new(self.set_inter()?));
        }
        Ok(lhs)
    }

    fn set_inter(&mut self) -> PResult<SetExpr> {
        let mut lhs = self.set_prod()?;
        loop {
            if self.eat_sym('&') {
                lhs = SetExpr::Inter(Box::new(lhs), Box::new(self.set_prod()?));
            } else if self.eat_sym('\\') {
                lhs = SetExpr::Diff(Box::new(lhs), Box::new(self.set_prod()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn set_prod(&mut self) -> PResult<SetExpr> {
        let mut lhs = self.set_atom()?;
        while self.eat_ident("x") {
            lhs = SetExpr::Product(Box::new(lhs), Box::new(self.set_atom()?));
        }
        Ok(lhs)
    }

    fn set_atom(&mut self) -> PResult<SetExpr> {
        let start = self.offset();
        if self.eat_sym('(') {
            let e = self.set()?;
            self.expect_sym(')')?;
            return Ok(e);
        }
        let Tok::Ident(name) = self.peek().clone() else {
            return Err(self.error(&[SET_START]));
        };
        if let Some(n) = Named::ALL.iter().find(|n| n.as_str() == name) {
            self.pos += 1;
            return Ok(SetExpr::Named(*n));
        }
        match name.as_str() {
            "M" => {
                self.pos += 1;
                self.expect_sym('(')?;
                let at = self.offset();
                let k = self.num()?;
                if k == 0 {
                    return Err(self.fail_at(at, "M(k) needs k >= 1".into()));
                }
                self.expect_sym(')')?;
                Ok(SetExpr::Multiples(k))
            }
            "finite" => {
                self.pos += 1;
                self.expect_sym('{')?;
                let mut items = Vec::new();
                if !self.eat_sym('}') {
                    loop {
                        items.push(self.lit()?);
                        if self.eat_sym('}') {
                            break;
                        }
                        if !self.eat_sym(',') {
                            return Err(self.error(&["`,`", "`}`"]));
                        }
                    }
                }
                Ok(SetExpr::Finite(items))
            }
            "image" => {
                self.pos += 1;
                self.expect_sym('(')?;
                let f = self.fexpr()?;
                self.expect_sym(')')?;
                Ok(SetExpr::Image(f))
            }
            "interval" => {
                self.pos += 1;
                self.expect_sym('(')?;
                let lo = self.rat()?;
                self.expect_sym(',')?;
                let hi = self.rat()?;
                self.expect_sym(']')?;
                if lo >= hi {
                    return Err(self.fail_at(start, format!("interval ({lo},{hi}] is empty")));
                }
                Ok(SetExpr::Interval(lo, hi))
            }
            _ => Err(self.error(&[SET_START])),
        }
    }

    fn rat(&mut self) -> PResult<Rat> {
        let at = self.offset();
        let neg = self.eat_sym('-');
        let n = self.num()?;
        let d = if self.eat_sym('/') {
            let d_at = self.offset();
            let d = self.num()?;
            if d == 0 {
                return Err(self.fail_at(d_at, "zero denominator".into()));
            }
            d
        } else {
            1
        };
        let (Ok(n), Ok(d)) = (i64::try_from(n), i64::try_from(d)) else {
            return Err(self.fail_at(at, "number is too large".into()));
        };
        Ok(Rat::new(if neg { -n } else { n }, d))
    }

    fn lit(&mut self) -> PResult<Lit> {
        if self.eat_sym('(') {
            let a = self.lit()?;
            self.expect_sym(',')?;
            let b = self.lit()?;
            self.expect_sym(')')?;
            return Ok(Lit::Pair(Box::new(a), Box::new(b)));
        }
        match self.peek() {
            Tok::Num(_) | Tok::Sym('-') => Ok(Lit::Num(self.rat()?)),
            _ => Err(self.error(&["a number", "`(`"])),
        }
    }

    fn fexpr(&mut self) -> PResult<FExpr> {
        let start = self.offset();
        let mut coefs: Vec<u64> = Vec::new();
        let mut exp = None;
        let mut terms = 0;
        loop {
            terms += 1;
            let at = self.offset();
            let (c, deg) = match self.peek().clone() {
                Tok::Num(c) => {
                    self.pos += 1;
                    if self.eat_sym('^') {
                        if !self.eat_ident("m") {
                            return Err(self.error(&["`m`"]));
                        }
                        if c < 2 {
                            return Err(self.fail_at(at, "exponential base must be at least 2".into()));
                        }
                        exp = Some(c);
                        (0, None)
                    } else {
                        let star = self.eat_sym('*');
                        if self.eat_ident("m") {
                            (c, Some(self.power()?))
                        } else if star {
                            return Err(self.error(&["`m`"]));
                        } else {
                            (c, Some(0))
                        }
                    }
                }
                Tok::Ident(s) if s == "m" => {
                    self.pos += 1;
                    (1, Some(self.power()?))
                }
                _ => return Err(self.error(&["a number", "`m`"])),
            };
            if let Some(d) = deg {
                if coefs.len() <= d {
                    coefs.resize(d + 1, 0);
                }
                coefs[d] =
                    coefs[d].checked_add(c).ok_or_else(|| self.fail_at(at, "coefficient is too large".into()))?;
            }
            if !self.eat_sym('+') {
                break;
            }
        }
        if let Some(b) = exp {
            if terms > 1 {
                return Err(self.fail_at(start, "an exponential image takes no other terms".into()));
            }
            return Ok(FExpr::Exp(b));
        }
        while coefs.last() == Some(&0) {
            coefs.pop();
        }
        if coefs.len() < 2 {
            return Err(self.fail_at(start, "image needs a strictly increasing function of m".into()));
        }
        Ok(FExpr::Poly(coefs))
    }

    fn power(&mut self) -> PResult<usize> {
        if !self.eat_sym('^') {
            return Ok(1);
        }
        let at = self.offset();
        let k = self.num()?;
        if !(1..=64).contains(&k) {
            return Err(self.fail_at(at, "exponent must lie in 1..=64".into()));
        }
        Ok(k as usize)
    }

    // ---- sizes

    fn size(&mut self) -> PResult<SizeExpr> {
        let mut lhs = self.size_term()?;
        loop {
            if self.eat_sym('+') {
                lhs = SizeExpr::Add(Box::new(lhs), Box::new(self.size_term()?));
            } else if self.eat_sym('-') {
                lhs = SizeExpr::Sub(Box::new(lhs), Box::new(self.size_term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn size_term(&mut self) -> PResult<SizeExpr> {
        let mut lhs = self.size_factor()?;
        while self.eat_sym('*') {
            lhs = SizeExpr::Mul(Box::new(lhs), Box::new(self.size_factor()?));
        }
        Ok(lhs)
    }

    fn size_factor(&mut self) -> PResult<SizeExpr> {
        if self.eat_sym('(') {
            let e = self.size()?;
            self.expect_sym(')')?;
            return Ok(e);
        }
        match self.peek().clone() {
            Tok::Num(k) => {
                self.pos += 1;
                Ok(SizeExpr::Int(k))
            }
            Tok::Ident(s) => {
                let e = match s.as_str() {
                    "alpha" => SizeExpr::Alpha,
                    "phi" => SizeExpr::Phi,
                    "sigma" | "chi" => {
                        self.pos += 1;
                        self.expect_sym('(')?;
                        let a = self.set()?;
                        self.expect_sym(')')?;
                        return Ok(if s == "sigma" { SizeExpr::Sigma(a) } else { SizeExpr::Chi(a) });
                    }
                    "meet" | "join" => {
                        self.pos += 1;
                        self.expect_sym('(')?;
                        let a = self.size()?;
                        self.expect_sym(',')?;
                        let b = self.size()?;
                        self.expect_sym(')')?;
                        let (a, b) = (Box::new(a), Box::new(b));
                        return Ok(if s == "meet" { SizeExpr::Meet(a, b) } else { SizeExpr::Join(a, b) });
                    }
                    _ => return Err(self.error(&[SIZE_START])),
                };
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error(&[SIZE_START])),
        }
    }
}

fn run<T>(input: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser { toks: lex(input)?, pos: 0 };
    let v = f(&mut p)?;
    p.end()?;
    Ok(v)
}

pub fn parse_set(input: &str) -> Result<SetExpr, SyntaxError> {
    run(input, Parser::set)
}

pub fn parse_size(input: &str) -> Result<SizeExpr, SyntaxError> {
    run(input, Parser::size)
}

/// Either kind of expression; on failure reports the attempt that got further.
pub fn parse(input: &str) -> Result<Expr, SyntaxError> {
    let size = match parse_size(input) {
        Ok(e) => return Ok(Expr::Size(e)),
        Err(e) => e,
    };
    match parse_set(input) {
        Ok(e) => Ok(Expr::Set(e)),
        Err(e) => Err(e.merge(size)),
    }
}

// ---- rendering

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lit::Num(r) => write!(f, "{r}"),
            Lit::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

impl fmt::Display for FExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FExpr::Exp(b) => write!(f, "{b}^m"),
            FExpr::Poly(c) => {
                let mut first = true;
                for (d, &k) in c.iter().enumerate().rev().filter(|(_, &k)| k != 0) {
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    match (k, d) {
                        (k, 0) => write!(f, "{k}")?,
                        (1, 1) => f.write_str("m")?,
                        (1, d) => write!(f, "m^{d}")?,
                        (k, 1) => write!(f, "{k}*m")?,
                        (k, d) => write!(f, "{k}*m^{d}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl SetExpr {
    fn prec(&self) -> u8 {
        match self {
            SetExpr::Union(..) => 1,
            SetExpr::Inter(..) | SetExpr::Diff(..) => 2,
            SetExpr::Product(..) => 3,
            _ => 4,
        }
    }
}

/// Writes a left-associative binary node with the fewest parentheses.
fn binary<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    prec: u8,
    (l, lp): (&T, u8),
    op: &str,
    (r, rp): (&T, u8),
) -> fmt::Result {
    if lp < prec {
        write!(f, "({l})")?;
    } else {
        write!(f, "{l}")?;
    }
    f.write_str(op)?;
    if rp <= prec {
        write!(f, "({r})")
    } else {
        write!(f, "{r}")
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prec();
        match self {
            SetExpr::Named(n) => f.write_str(n.as_str()),
            SetExpr::Multiples(k) => write!(f, "M({k})"),
            SetExpr::Finite(items) => {
                let s: Vec<String> = items.iter().map(Lit::to_string).collect();
                write!(f, "finite{{{}}}", s.join(","))
            }
            SetExpr::Image(g) => write!(f, "image({g})"),
            SetExpr::Interval(lo, hi) => write!(f, "interval({lo},{hi}]"),
            SetExpr::Union(a, b) => binary(f, p, (&**a, a.prec()), " | ", (&**b, b.prec())),
            SetExpr::Inter(a, b) => binary(f, p, (&**a, a.prec()), " & ", (&**b, b.prec())),
            SetExpr::Diff(a, b) => binary(f, p, (&**a, a.prec()), " \\ ", (&**b, b.prec())),
            SetExpr::Product(a, b) => binary(f, p, (&**a, a.prec()), " x ", (&**b, b.prec())),
        }
    }
}

impl SizeExpr {
    fn prec(&self) -> u8 {
        match self {
            SizeExpr::Add(..) | SizeExpr::Sub(..) => 1,
            SizeExpr::Mul(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for SizeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prec();
        match self {
            SizeExpr::Int(k) => write!(f, "{k}"),
            SizeExpr::Alpha => f.write_str("alpha"),
            SizeExpr::Phi => f.write_str("phi"),
            SizeExpr::Sigma(a) => write!(f, "sigma({a})"),
            SizeExpr::Chi(a) => write!(f, "chi({a})"),
            SizeExpr::Meet(a, b) => write!(f, "meet({a}, {b})"),
            SizeExpr::Join(a, b) => write!(f, "join({a}, {b})"),
            SizeExpr::Add(a, b) => binary(f, p, (&**a, a.prec()), " + ", (&**b, b.prec())),
            SizeExpr::Sub(a, b) => binary(f, p, (&**a, a.prec()), " - ", (&**b, b.prec())),
            SizeExpr::Mul(a, b) => binary(f, p, (&**a, a.prec()), " * ", (&**b, b.prec())),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Set(e) => write!(f, "{e}"),
            Expr::Size(e) => write!(f, "{e}"),
        }
    }
}
