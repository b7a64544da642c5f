//! Text forms for fields and elements.
//!
//! Field descriptions: `Q`, `GF(p)`, `GF(p^k)` (canonical modulus), `GF(n)`
//! for a prime power n, `GF(p)[X]/(m)` with an explicit modulus, and any
//! finite form followed by `(t)` for the rational function field over it.
//!
//! Elements: integers everywhere; `a/b` over Q; coordinate lists `[c0,c1,..]`
//! and `g`-expressions over extensions; polynomial expressions in `t` (with
//! `/` for fractions) over function fields. Whitespace is ignored.
//!
//! The same little expression language is reused by the polynomial parser, so
//! the AST and evaluator live here rather than in the CLI.

use super::{ratfunc, zp, Field, FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

// ---- tokens ----

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Sym(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(what: &str, s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push(Tok::Sym(chars[start..i].iter().collect()));
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '[' => {
                out.push(Tok::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Tok::RBracket);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            other => {
                return Err(Error::parse(what, format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

// ---- expression AST ----

#[derive(Clone, Debug)]
pub(crate) enum Expr {
    Num(String),
    Sym(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    List(Vec<Expr>),
}

struct Parser<'a> {
    what: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(Error::parse(
                self.what,
                format!("expected {t:?}, found {got:?}"),
            )),
        }
    }

    fn err<T>(&self, detail: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.what, detail))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                // adjacency is multiplication: 2X, [1,1]t, 3(x+1)
                Some(Tok::Num(_) | Tok::Sym(_) | Tok::LParen | Tok::LBracket) => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                true
            } else {
                false
            };
            let digits = match self.bump() {
                Some(Tok::Num(d)) => d,
                got => return self.err(format!("expected an exponent, found {got:?}")),
            };
            let e: i64 = digits
                .parse()
                .map_err(|_| Error::parse(self.what, format!("exponent {digits} out of range")))?;
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(Tok::Num(d)) => Ok(Expr::Num(d)),
            Some(Tok::Sym(s)) => Ok(Expr::Sym(s)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::LBracket) => {
                let mut items = Vec::new();
                if matches!(self.peek(), Some(Tok::RBracket)) {
                    self.bump();
                    return Ok(Expr::List(items));
                }
                loop {
                    items.push(self.expr()?);
                    match self.bump() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RBracket) => break,
                        got => return self.err(format!("expected ',' or ']', found {got:?}")),
                    }
                }
                Ok(Expr::List(items))
            }
            got => self.err(format!("expected a value, found {got:?}")),
        }
    }
}

pub(crate) fn parse_expr(what: &str, text: &str) -> Result<Expr> {
    let toks = tokenize(what, text)?;
    if toks.is_empty() {
        return Err(Error::parse(what, "empty input"));
    }
    let mut p = Parser {
        what,
        toks,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err(format!("trailing input at token {:?}", p.toks[p.pos]));
    }
    Ok(e)
}

// ---- evaluating an expression to a field element ----

fn fold_digits_mod(p: u64, digits: &str) -> u64 {
    let mut r: u64 = 0;
    for d in digits.bytes() {
        r = zp::add(p, zp::mul(p, r, 10 % p), ((d - b'0') as u64) % p);
    }
    r
}

fn num_in_field(field: &Field, digits: &str) -> Result<FieldElement> {
    match field.descriptor() {
        FieldDescriptor::Rationals => {
            // arbitrary-size integers are legitimate here
            let mut acc = field.zero();
            let ten = field.int(10);
            for d in digits.bytes() {
                acc = &(&acc * &ten) + &field.int((d - b'0') as i64);
            }
            Ok(acc)
        }
        _ => {
            let p = field.characteristic();
            Ok(field.int(fold_digits_mod(p, digits) as i64))
        }
    }
}

fn symbol_in_field(field: &Field, name: &str) -> Result<FieldElement> {
    match (name, field.descriptor()) {
        ("g" | "a", FieldDescriptor::Extension { .. }) => field.generator(),
        ("t", FieldDescriptor::RationalFunctions { .. }) => field.t(),
        ("g" | "a", FieldDescriptor::RationalFunctions { base })
            if matches!(**base, FieldDescriptor::Extension { .. }) =>
        {
            Ok(ratfunc::lift_base_generator(field))
        }
        _ => Err(Error::parse(
            "element",
            format!("unknown symbol '{name}' over {field}"),
        )),
    }
}

/// Interpret a bracket list over the field: coordinates over the prime field
/// for extensions (entries times powers of g), and base-field coordinates for
/// function fields over an extension.
fn list_in_field(field: &Field, items: &[Expr]) -> Result<FieldElement> {
    let gen = match field.descriptor() {
        FieldDescriptor::Extension { .. } => Some(field.generator()?),
        FieldDescriptor::RationalFunctions { base }
            if matches!(**base, FieldDescriptor::Extension { .. }) =>
        {
            Some(ratfunc::lift_base_generator(field))
        }
        _ => None,
    };
    match gen {
        Some(g) => {
            let mut acc = field.zero();
            let mut pw = field.one();
            for item in items {
                let v = eval_in_field(field, item)?;
                acc = &acc + &(&v * &pw);
                pw = &pw * &g;
            }
            Ok(acc)
        }
        None => match items {
            [] => Ok(field.zero()),
            [one] => eval_in_field(field, one),
            _ => Err(Error::parse(
                "element",
                format!("coordinate lists make no sense over {field}"),
            )),
        },
    }
}

pub(crate) fn eval_in_field(field: &Field, e: &Expr) -> Result<FieldElement> {
    match e {
        Expr::Num(d) => num_in_field(field, d),
        Expr::Sym(s) => symbol_in_field(field, s),
        Expr::Add(a, b) => Ok(&eval_in_field(field, a)? + &eval_in_field(field, b)?),
        Expr::Sub(a, b) => Ok(&eval_in_field(field, a)? - &eval_in_field(field, b)?),
        Expr::Neg(a) => Ok(-&eval_in_field(field, a)?),
        Expr::Mul(a, b) => Ok(&eval_in_field(field, a)? * &eval_in_field(field, b)?),
        Expr::Div(a, b) => eval_in_field(field, a)?.div(&eval_in_field(field, b)?),
        Expr::Pow(a, e) => {
            let base = eval_in_field(field, a)?;
            if *e < 0 {
                Ok(base.inv()?.pow(e.unsigned_abs()))
            } else {
                Ok(base.pow(*e as u64))
            }
        }
        Expr::List(items) => list_in_field(field, items),
    }
}

pub(crate) fn parse_element(field: &Field, text: &str) -> Result<FieldElement> {
    let e = parse_expr("element", text)?;
    eval_in_field(field, &e)
}

// ---- Z/p polynomials in one named variable (for moduli) ----

/// Evaluate an expression to a dense Z/p polynomial in `var`. Division and
/// lists are rejected; this is only for modulus texts like X^3+X+1.
fn eval_zp_poly(p: u64, var: &str, e: &Expr) -> Result<Vec<u64>> {
    let what = "modulus";
    Ok(match e {
        Expr::Num(d) => zp::ptrim(vec![fold_digits_mod(p, d)]),
        Expr::Sym(s) if s == var => vec![0, 1],
        Expr::Sym(s) => return Err(Error::parse(what, format!("unknown symbol '{s}'"))),
        Expr::Add(a, b) => zp::padd(p, &eval_zp_poly(p, var, a)?, &eval_zp_poly(p, var, b)?),
        Expr::Sub(a, b) => zp::psub(p, &eval_zp_poly(p, var, a)?, &eval_zp_poly(p, var, b)?),
        Expr::Neg(a) => zp::pneg(p, &eval_zp_poly(p, var, a)?),
        Expr::Mul(a, b) => zp::pmul(p, &eval_zp_poly(p, var, a)?, &eval_zp_poly(p, var, b)?),
        Expr::Pow(a, e) => {
            if *e < 0 {
                return Err(Error::parse(what, "negative powers in a modulus"));
            }
            let base = eval_zp_poly(p, var, a)?;
            let mut acc = vec![1 % p];
            for _ in 0..*e {
                acc = zp::pmul(p, &acc, &base);
            }
            acc
        }
        Expr::Div(..) => return Err(Error::parse(what, "division in a modulus")),
        Expr::List(..) => return Err(Error::parse(what, "lists in a modulus")),
    })
}

// ---- field descriptions ----

/// Split "head(...)rest" at the parenthesized group starting at `open`.
fn paren_group(s: &str, open: usize) -> Result<(&str, &str)> {
    let bytes = s.as_bytes();
    debug_assert_eq!(bytes[open], b'(');
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok((&s[open + 1..i], &s[i + 1..]));
                }
            }
            _ => {}
        }
    }
    Err(Error::parse("field", "unbalanced parentheses"))
}

pub(crate) fn parse_field(text: &str) -> Result<Field> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "Q" || s == "QQ" {
        return Ok(Field::rationals());
    }
    if let Some(rest) = s.strip_prefix("GF") {
        if !rest.starts_with('(') {
            return Err(Error::parse("field", "expected '(' after GF"));
        }
        let (inside, mut rest) = paren_group(rest, 0)?;
        let finite = parse_gf_body(inside)?;
        let finite = if let Some(after) = rest.strip_prefix("[X]/") {
            if !after.starts_with('(') {
                return Err(Error::parse("field", "expected '(' after [X]/"));
            }
            let (modtext, after2) = paren_group(after, 0)?;
            rest = after2;
            let p = match finite.descriptor() {
                FieldDescriptor::Prime { p } => *p,
                _ => {
                    return Err(Error::parse(
                        "field",
                        "explicit moduli are only supported over prime fields",
                    ))
                }
            };
            let e = parse_expr("modulus", modtext)?;
            let m = eval_zp_poly(p, "X", &e)?;
            Field::extension(p, &m)?
        } else {
            finite
        };
        if rest.is_empty() {
            return Ok(finite);
        }
        if rest == "(t)" {
            return Field::rational_functions(&finite);
        }
        return Err(Error::parse("field", format!("trailing input '{rest}'")));
    }
    Err(Error::parse(
        "field",
        format!("cannot make sense of '{text}'"),
    ))
}

fn parse_gf_body(inside: &str) -> Result<Field> {
    let parse_num = |s: &str| -> Result<u64> {
        s.parse::<u64>()
            .map_err(|_| Error::parse("field", format!("bad number '{s}'")))
    };
    if let Some((base, exp)) = inside.split_once('^') {
        let p = parse_num(base)?;
        let k = parse_num(exp)?;
        return Field::finite(p, k);
    }
    let n = parse_num(inside)?;
    match zp::prime_power(n) {
        Some((p, 1)) => Field::prime(p),
        Some((p, k)) => Field::finite(p, k as u64),
        None => Err(Error::InvalidField(format!(
            "{n} is not a prime power"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_round_trip() {
        for text in [
            "Q",
            "GF(2)",
            "GF(5)",
            "GF(4)",
            "GF(2^3)",
            "GF(9)",
            "GF(2)[X]/(X^3+X+1)",
            "GF(3)(t)",
            "GF(4)(t)",
            "GF(2)[X]/(X^2+X+1)(t)",
        ] {
            let f = Field::parse(text).unwrap();
            let again = Field::parse(&f.to_string()).unwrap();
            assert_eq!(f, again, "{text}");
        }
        assert_eq!(
            Field::parse("GF(8)").unwrap(),
            Field::parse("GF(2^3)").unwrap()
        );
        assert_eq!(Field::parse("QQ").unwrap(), Field::rationals());
    }

    #[test]
    fn bad_fields_are_rejected() {
        for text in ["GF(6)", "GF(1)", "GF(2)[X]/(X^2+1)", "Q(t)", "GF(0)", "R"] {
            assert!(Field::parse(text).is_err(), "{text} should not parse");
        }
    }

    #[test]
    fn elements_round_trip() {
        let cases = [
            ("GF(7)", vec!["0", "3", "-1", "6*6"]),
            ("GF(4)", vec!["[1,1]", "g^2", "g+1", "[0,1]"]),
            ("Q", vec!["22/7", "-5", "1/2+1/3"]),
            ("GF(2)(t)", vec!["t^2+t", "1/t", "(t+1)/(t^2+t+1)"]),
            ("GF(4)(t)", vec!["[1,1]*t^2+[0,1]", "g*t", "t/(t+g)"]),
        ];
        for (ftext, elts) in cases {
            let f = Field::parse(ftext).unwrap();
            for text in elts {
                let e = f.parse_element(text).unwrap();
                let back = f.parse_element(&e.to_string()).unwrap();
                assert_eq!(e, back, "{ftext}: {text} -> {e}");
            }
        }
    }

    #[test]
    fn g_expressions_match_coordinates() {
        let f4 = Field::parse("GF(4)").unwrap();
        assert_eq!(
            f4.parse_element("g^2").unwrap(),
            f4.parse_element("[1,1]").unwrap()
        );
        assert_eq!(
            f4.parse_element("g*g").unwrap(),
            f4.parse_element("g+1").unwrap()
        );
        // a is accepted as an alias for the generator
        assert_eq!(
            f4.parse_element("a^-1").unwrap(),
            f4.parse_element("g^2").unwrap()
        );
    }

    #[test]
    fn division_by_zero_is_loud() {
        let q = Field::rationals();
        assert!(q.parse_element("1/0").is_err());
        let f2t = Field::parse("GF(2)(t)").unwrap();
        assert!(f2t.parse_element("1/(t+t)").is_err());
    }

    #[test]
    fn implicit_multiplication() {
        let f5 = Field::parse("GF(5)").unwrap();
        assert_eq!(f5.parse_element("2(1+1)").unwrap(), f5.int(4));
        let f4t = Field::parse("GF(4)(t)").unwrap();
        assert_eq!(
            f4t.parse_element("[1,1]t").unwrap(),
            f4t.parse_element("[1,1]*t").unwrap()
        );
    }
}
