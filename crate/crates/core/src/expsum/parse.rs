//! Text syntax for exponential sums, e.g. `exp((2*pi*i)*z1) - 1` or
//! `(1/2 - i)*exp((1+i)*z1 - 3*z2) + 2`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{CRat, ExpScale};
use crate::error::{Error, Result};
use crate::exactnum::rat::{parse_rat, Rat};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let r = parse_rat(&text).map_err(|_| Error::Parse {
                pos: start,
                msg: format!("bad number {text:?}"),
            })?;
            out.push((start, Tok::Num(r)));
        } else if c.is_alphabetic() || c == 'π' {
            let start = i;
            if c == 'π' {
                i += 1;
                out.push((start, Tok::Ident("pi".into())));
                continue;
            }
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

/// Linear form in `z` with coefficients in ℚ(i)[π]: key `(π power, variable)`,
/// variable 0 being the constant term.
#[derive(Clone, Debug, Default, PartialEq)]
struct Form(BTreeMap<(u32, usize), CRat>);

impl Form {
    fn constant(c: CRat) -> Form {
        let mut m = BTreeMap::new();
        m.insert((0, 0), c);
        Form(m).pruned()
    }

    fn pruned(mut self) -> Form {
        self.0.retain(|_, v| !v.is_zero());
        self
    }

    fn add(mut self, other: Form, sign: i64) -> Form {
        for (k, v) in other.0 {
            let e = self.0.entry(k).or_insert_with(CRat::zero);
            *e += v * CRat::from(Rat::from_integer(sign.into()));
        }
        self.pruned()
    }

    fn has_z(&self) -> bool {
        self.0.keys().any(|(_, v)| *v != 0)
    }

    fn mul(&self, other: &Form, pos: usize) -> Result<Form> {
        if self.has_z() && other.has_z() {
            return Err(Error::Parse {
                pos,
                msg: "exponents must be linear in z".into(),
            });
        }
        let mut out: BTreeMap<(u32, usize), CRat> = BTreeMap::new();
        for ((pa, va), a) in &self.0 {
            for ((pb, vb), b) in &other.0 {
                *out.entry((pa + pb, va + vb)).or_insert_with(CRat::zero) += a * b;
            }
        }
        Ok(Form(out).pruned())
    }

    fn as_plain_constant(&self) -> Option<CRat> {
        match self.0.len() {
            0 => Some(CRat::zero()),
            1 => self.0.get(&(0, 0)).cloned(),
            _ => None,
        }
    }
}

/// One parsed summand: coefficient and exponent form (without constant).
struct RawTerm {
    coeff: CRat,
    exponent: Form,
    pos: usize,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    /// Top level: Σ ± coeff·exp(form).
    fn sum(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut sign = 1;
        if self.eat('-') {
            sign = -1;
        } else {
            self.eat('+');
        }
        loop {
            let mut t = self.product()?;
            if sign < 0 {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(terms)
    }

    fn product(&mut self) -> Result<RawTerm> {
        let pos = self.pos();
        let mut coeff = CRat::one();
        let mut exponent = Form::default();
        let mut first = true;
        loop {
            let divide = if first {
                false
            } else if self.eat('*') {
                false
            } else if self.eat('/') {
                true
            } else if self.starts_factor() {
                false
            } else {
                break;
            };
            first = false;
            if let Some(Tok::Ident(name)) = self.peek() {
                if name == "exp" {
                    if divide {
                        return self.err("cannot divide by an exponential");
                    }
                    self.at += 1;
                    if !self.eat('(') {
                        return self.err("expected '(' after exp");
                    }
                    let f = self.form()?;
                    if !self.eat(')') {
                        return self.err("expected ')'");
                    }
                    exponent = exponent.add(f, 1);
                    continue;
                }
            }
            let fpos = self.pos();
            let f = self.form_factor()?;
            let Some(c) = f.as_plain_constant() else {
                return Err(Error::Parse {
                    pos: fpos,
                    msg: "coefficients must be complex rationals".into(),
                });
            };
            if divide {
                if c.is_zero() {
                    return Err(Error::Parse {
                        pos: fpos,
                        msg: "division by zero".into(),
                    });
                }
                coeff = coeff / c;
            } else {
                coeff = coeff * c;
            }
        }
        if let Some(c) = exponent.0.get(&(0, 0)) {
            if !c.is_zero() {
                return Err(Error::Parse {
                    pos,
                    msg: "exponents must not have a constant term".into(),
                });
            }
        }
        Ok(RawTerm { coeff, exponent, pos })
    }

    /// Linear forms inside `exp(...)` and parenthesized constants.
    fn form(&mut self) -> Result<Form> {
        let mut acc = Form::default();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.form_term()?;
            acc = acc.add(t, sign);
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn form_term(&mut self) -> Result<Form> {
        let mut acc = self.form_factor()?;
        loop {
            let pos = self.pos();
            if self.eat('*') {
                let f = self.form_factor()?;
                acc = acc.mul(&f, pos)?;
            } else if self.eat('/') {
                let f = self.form_factor()?;
                match f.as_plain_constant() {
                    Some(c) if !c.is_zero() => acc = acc.mul(&Form::constant(CRat::one() / c), pos)?,
                    _ => {
                        return Err(Error::Parse {
                            pos,
                            msg: "can only divide by a nonzero complex rational".into(),
                        })
                    }
                }
            } else if self.starts_factor() && !matches!(self.peek(), Some(Tok::Ident(n)) if n == "exp") {
                let f = self.form_factor()?;
                acc = acc.mul(&f, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn form_factor(&mut self) -> Result<Form> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Num(r) => Ok(Form::constant(CRat::from(r))),
            Tok::Sym('(') => {
                let f = self.form()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(f)
            }
            Tok::Sym('-') => {
                let f = self.form_factor()?;
                Ok(Form::default().add(f, -1))
            }
            Tok::Ident(name) => {
                let mut m = BTreeMap::new();
                match name.as_str() {
                    "i" | "I" => {
                        m.insert((0, 0), CRat::new(Rat::zero(), Rat::one()));
                    }
                    "pi" => {
                        m.insert((1, 0), CRat::one());
                    }
                    "z" => {
                        m.insert((0, 1), CRat::one());
                    }
                    v if v.starts_with('z') && v[1..].chars().all(|c| c.is_ascii_digit()) => {
                        let k: usize = v[1..].parse().map_err(|_| Error::Parse {
                            pos,
                            msg: format!("bad variable {v:?}"),
                        })?;
                        if k == 0 {
                            return Err(Error::Parse {
                                pos,
                                msg: "variables are numbered from z1".into(),
                            });
                        }
                        m.insert((0, k), CRat::one());
                    }
                    other => {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("unknown identifier {other:?}"),
                        })
                    }
                }
                Ok(Form(m))
            }
            Tok::Sym(c) => Err(Error::Parse {
                pos,
                msg: format!("unexpected {c:?}"),
            }),
        }
    }
}

/// Parsed summands as `(coefficient, exponent coordinates per variable, scale)`.
pub(crate) struct ParsedSum {
    pub n: usize,
    pub scale: ExpScale,
    pub terms: Vec<(CRat, Vec<CRat>, usize)>,
}

pub(crate) fn parse_text(text: &str, n: Option<usize>) -> Result<ParsedSum> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        len: text.chars().count(),
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let raw = p.sum()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    let max_var = raw
        .iter()
        .flat_map(|t| t.exponent.0.keys().map(|(_, v)| *v))
        .max()
        .unwrap_or(0);
    let n = n.unwrap_or(max_var.max(1));
    if max_var > n {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("variable z{max_var} exceeds dimension {n}"),
        });
    }
    let mut scale: Option<ExpScale> = None;
    let mut terms = Vec::with_capacity(raw.len());
    let two = Rat::from_integer(2.into());
    for t in raw {
        let pis: Vec<u32> = t.exponent.0.keys().map(|(p, _)| *p).collect();
        let this = match pis.first() {
            None => None,
            Some(&p0) => {
                if pis.iter().any(|&p| p != p0) || p0 > 1 {
                    return Err(Error::MixedScale);
                }
                Some(if p0 == 1 { ExpScale::TwoPi } else { ExpScale::One })
            }
        };
        if let Some(s) = this {
            match scale {
                None => scale = Some(s),
                Some(prev) if prev != s => return Err(Error::MixedScale),
                _ => {}
            }
        }
        let mut coords = vec![CRat::zero(); n];
        for ((p, v), c) in &t.exponent.0 {
            // π·c = 2π·(c/2)
            coords[v - 1] = if *p == 1 { c / CRat::from(two.clone()) } else { c.clone() };
        }
        terms.push((t.coeff, coords, t.pos));
    }
    Ok(ParsedSum {
        n,
        scale: scale.unwrap_or(ExpScale::One),
        terms,
    })
}
