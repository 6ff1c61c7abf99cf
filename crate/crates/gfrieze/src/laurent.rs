//! Exact multivariate Laurent polynomial arithmetic over the integers.
//!
//! A [`LaurentPoly`] is an element of `Z[x_1^{±1}, ..., x_k^{±1}]` for a fixed
//! [`VarTable`]. Coefficients are arbitrary-precision integers, so frieze
//! entries never overflow silently. Values are kept in canonical form: no zero
//! coefficients are stored and monomials are ordered by total degree, then by
//! descending exponent vector. Two values are equal iff their term maps are.
//!
//! The canonical text grammar is
//!
//! ```text
//! poly := term (('+'|'-') term)*
//! term := int? mono?
//! mono := var('^'int)? ('*' var('^'int)?)*
//! ```
//!
//! plus the single-fraction form `(poly)/mono` used whenever some exponent is
//! negative. Both forms parse; `Display` always emits the canonical one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Errors raised by Laurent polynomial construction, arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LaurentError {
    /// The two operands live over different variable tables.
    VarTableMismatch,
    /// A variable table was built with an empty name.
    EmptyName,
    /// A variable table was built with a repeated name.
    DuplicateName(String),
    /// A parsed or evaluated expression mentions a variable not in the table.
    UnknownVariable(String),
    /// Evaluation assigned zero to a variable (undefined for negative exponents).
    ZeroAssignment(String),
    /// Evaluation is missing an assignment for a variable that occurs.
    MissingAssignment(String),
    /// Syntax error while parsing, with a byte offset into the input.
    Parse { pos: usize, msg: String },
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::VarTableMismatch => write!(f, "variable-table mismatch"),
            LaurentError::EmptyName => write!(f, "variable names must be non-empty"),
            LaurentError::DuplicateName(n) => write!(f, "duplicate variable name `{n}`"),
            LaurentError::UnknownVariable(n) => write!(f, "unknown variable `{n}`"),
            LaurentError::ZeroAssignment(n) => {
                write!(f, "variable `{n}` assigned zero (negative exponents divide by it)")
            }
            LaurentError::MissingAssignment(n) => write!(f, "no value assigned to variable `{n}`"),
            LaurentError::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
        }
    }
}

impl std::error::Error for LaurentError {}

/// An ordered set of distinct variable names, fixed for the lifetime of a context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Arc<VarTable>, LaurentError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (k, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(LaurentError::EmptyName);
            }
            if names[..k].contains(n) {
                return Err(LaurentError::DuplicateName(n.clone()));
            }
        }
        Ok(Arc::new(VarTable { names }))
    }

    /// The table with no variables; its ring is just the integers.
    pub fn empty() -> Arc<VarTable> {
        Arc::new(VarTable { names: Vec::new() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An exponent vector indexed by a `VarTable`; negative entries are allowed.
///
/// The ordering is graded: first by total degree, then by descending
/// lexicographic comparison of the exponent vectors. `Display` of a
/// polynomial iterates terms in this order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<i64>,
}

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Monomial {
        Monomial { exps }
    }

    pub fn unit(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A unit of the Laurent ring: `±` a single monomial.
///
/// Exponential maps land in units, so these are the values an `ε`-assignment
/// may take and the form in which `β` of a simple class is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMonomial {
    pub negative: bool,
    pub exps: Vec<i64>,
}

impl SignedMonomial {
    pub fn one(nvars: usize) -> SignedMonomial {
        SignedMonomial { negative: false, exps: vec![0; nvars] }
    }

    pub fn variable(nvars: usize, idx: usize) -> SignedMonomial {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        SignedMonomial { negative: false, exps }
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &SignedMonomial) -> SignedMonomial {
        SignedMonomial {
            negative: self.negative != other.negative,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self` raised to an integer power; negative powers invert the monomial.
    pub fn pow(&self, k: i64) -> SignedMonomial {
        SignedMonomial {
            negative: self.negative && k % 2 != 0,
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    pub fn to_poly(&self, vars: &Arc<VarTable>) -> LaurentPoly {
        debug_assert_eq!(self.exps.len(), vars.len());
        let coeff = if self.negative { -BigInt::one() } else { BigInt::one() };
        LaurentPoly::from_term(vars.clone(), Monomial::new(self.exps.clone()), coeff)
    }
}

/// An element of the Laurent polynomial ring over a fixed variable table.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(vars: Arc<VarTable>) -> LaurentPoly {
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Arc<VarTable>) -> LaurentPoly {
        LaurentPoly::constant(vars, BigInt::one())
    }

    pub fn constant(vars: Arc<VarTable>, c: BigInt) -> LaurentPoly {
        let nvars = vars.len();
        LaurentPoly::from_term(vars, Monomial::unit(nvars), c)
    }

    pub fn variable(vars: Arc<VarTable>, idx: usize) -> LaurentPoly {
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        LaurentPoly::from_term(vars, Monomial::new(exps), BigInt::one())
    }

    pub fn from_term(vars: Arc<VarTable>, mono: Monomial, coeff: BigInt) -> LaurentPoly {
        debug_assert_eq!(mono.exps.len(), vars.len());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        LaurentPoly { vars, terms }
    }

    pub fn var_table(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value if this polynomial has no variable part.
    pub fn as_constant(&self) -> Option<&BigInt> {
        match self.terms.len() {
            0 => None,
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_unit() {
                    Some(c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Interpret the polynomial as a ring unit, if it is one.
    pub fn as_signed_monomial(&self) -> Option<SignedMonomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if c.magnitude().is_one() {
            Some(SignedMonomial { negative: c.is_negative(), exps: m.exps.clone() })
        } else {
            None
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if !same_table(&self.vars, &other.vars) {
            return Err(LaurentError::VarTableMismatch);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Ok(LaurentPoly { vars: self.vars.clone(), terms })
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if !same_table(&self.vars, &other.vars) {
            return Err(LaurentError::VarTableMismatch);
        }
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let entry = terms.entry(m).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { vars: self.vars.clone(), terms })
    }

    /// Exact evaluation at an integer point with all coordinates nonzero.
    pub fn eval(&self, assignment: &BTreeMap<String, BigInt>) -> Result<BigRational, LaurentError> {
        let mut values: Vec<Option<&BigInt>> = vec![None; self.vars.len()];
        for (name, v) in assignment {
            match self.vars.index_of(name) {
                Some(idx) => {
                    if v.is_zero() {
                        return Err(LaurentError::ZeroAssignment(name.clone()));
                    }
                    values[idx] = Some(v);
                }
                None => return Err(LaurentError::UnknownVariable(name.clone())),
            }
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (idx, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values[idx]
                    .ok_or_else(|| LaurentError::MissingAssignment(self.vars.name(idx).into()))?;
                let p = num_traits::pow::pow(
                    BigRational::from_integer(v.clone()),
                    e.unsigned_abs() as usize,
                );
                if e > 0 {
                    term *= p;
                } else {
                    term /= p;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluate with every variable set to one; the sum of the coefficients.
    pub fn eval_all_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        !self.terms.is_empty() && self.terms.values().all(|c| c.is_positive())
    }

    /// The componentwise-minimal exponent over all terms, clamped to at most 0.
    fn denominator_exps(&self) -> Vec<i64> {
        let mut mins = vec![0i64; self.vars.len()];
        for m in self.terms.keys() {
            for (acc, &e) in mins.iter_mut().zip(&m.exps) {
                *acc = (*acc).min(e);
            }
        }
        mins.iter().map(|&e| -e).collect()
    }

    fn fmt_sum(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let abs = c.abs();
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                write_mono(f, &self.vars, &m.exps)?;
            }
        }
        Ok(())
    }

    /// Render in LaTeX math mode, as `\frac{..}{..}` when a denominator is needed.
    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let dens = self.denominator_exps();
        if dens.iter().all(|&e| e == 0) {
            return latex_sum(&self.vars, &self.terms);
        }
        let num = self
            .mul(&LaurentPoly::from_term(
                self.vars.clone(),
                Monomial::new(dens.clone()),
                BigInt::one(),
            ))
            .expect("same table");
        format!(
            "\\frac{{{}}}{{{}}}",
            latex_sum(&self.vars, &num.terms),
            latex_mono(&self.vars, &dens)
        )
    }
}

fn write_mono(f: &mut fmt::Formatter<'_>, vars: &VarTable, exps: &[i64]) -> fmt::Result {
    let mut first = true;
    for (idx, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", vars.name(idx))?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

fn latex_mono(vars: &VarTable, exps: &[i64]) -> String {
    let mut out = String::new();
    for (idx, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        out.push_str(vars.name(idx));
        if e != 1 {
            out.push_str(&format!("^{{{e}}}"));
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

fn latex_sum(vars: &VarTable, terms: &BTreeMap<Monomial, BigInt>) -> String {
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let abs = c.abs();
        if m.is_unit() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&latex_mono(vars, &m.exps));
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let dens = self.denominator_exps();
        if dens.iter().all(|&e| e == 0) {
            return self.fmt_sum(f);
        }
        let num = self
            .mul(&LaurentPoly::from_term(
                self.vars.clone(),
                Monomial::new(dens.clone()),
                BigInt::one(),
            ))
            .expect("same table");
        write!(f, "(")?;
        num.fmt_sum(f)?;
        write!(f, ")/")?;
        write_mono(f, &self.vars, &dens)
    }
}

// ---- Parsing ----

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Slash,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, LaurentError> {
    let mut toks = Vec::new();
    let bytes = input.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => k += 1,
            '+' => {
                toks.push((k, Tok::Plus));
                k += 1;
            }
            '-' => {
                toks.push((k, Tok::Minus));
                k += 1;
            }
            '*' => {
                toks.push((k, Tok::Star));
                k += 1;
            }
            '^' => {
                toks.push((k, Tok::Caret));
                k += 1;
            }
            '(' => {
                toks.push((k, Tok::LParen));
                k += 1;
            }
            ')' => {
                toks.push((k, Tok::RParen));
                k += 1;
            }
            '/' => {
                toks.push((k, Tok::Slash));
                k += 1;
            }
            '0'..='9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let n: BigInt = input[start..k].parse().expect("digits");
                toks.push((start, Tok::Int(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = k;
                while k < bytes.len()
                    && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_')
                {
                    k += 1;
                }
                toks.push((start, Tok::Ident(input[start..k].to_string())));
            }
            _ => {
                return Err(LaurentError::Parse { pos: k, msg: format!("unexpected character `{c}`") })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    vars: Arc<VarTable>,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(_, t)| t)
    }

    fn bite(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), LaurentError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    /// varpow := ident ('^' '-'? int)?
    fn varpow(&mut self) -> Result<(usize, i64), LaurentError> {
        let name = match self.bite() {
            Some(Tok::Ident(n)) => n,
            _ => return self.err("expected variable name"),
        };
        let idx = self
            .vars
            .index_of(&name)
            .ok_or(LaurentError::UnknownVariable(name))?;
        let mut exp = 1i64;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.bite() {
                Some(Tok::Int(n)) => {
                    let mag: i64 = n.try_into().map_err(|_| LaurentError::Parse {
                        pos: self.here(),
                        msg: "exponent too large".into(),
                    })?;
                    exp = if neg { -mag } else { mag };
                }
                _ => return self.err("expected integer exponent after `^`"),
            }
        }
        Ok((idx, exp))
    }

    /// mono := varpow ('*' varpow)*
    fn mono(&mut self) -> Result<Monomial, LaurentError> {
        let mut exps = vec![0i64; self.vars.len()];
        let (idx, e) = self.varpow()?;
        exps[idx] += e;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let (idx, e) = self.varpow()?;
            exps[idx] += e;
        }
        Ok(Monomial::new(exps))
    }

    /// term := int ('*'? mono)? | mono
    fn term(&mut self) -> Result<(Monomial, BigInt), LaurentError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let coeff = match self.bite() {
                    Some(Tok::Int(n)) => n,
                    _ => unreachable!(),
                };
                // lenient: allow an optional '*' between coefficient and monomial
                if self.peek() == Some(&Tok::Star) && matches!(self.peek2(), Some(Tok::Ident(_))) {
                    self.pos += 1;
                }
                if matches!(self.peek(), Some(Tok::Ident(_))) {
                    let m = self.mono()?;
                    Ok((m, coeff))
                } else {
                    Ok((Monomial::unit(self.vars.len()), coeff))
                }
            }
            Some(Tok::Ident(_)) => {
                let m = self.mono()?;
                Ok((m, BigInt::one()))
            }
            _ => self.err("expected term"),
        }
    }

    /// poly := '-'? term (('+'|'-') term)*
    fn poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = LaurentPoly::zero(self.vars.clone());
        let mut sign = BigInt::one();
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            sign = -sign;
        }
        loop {
            let (m, c) = self.term()?;
            acc = acc.add(&LaurentPoly::from_term(self.vars.clone(), m, c * &sign))?;
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = BigInt::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -BigInt::one();
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn whole(&mut self) -> Result<LaurentPoly, LaurentError> {
        let value = if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let num = self.poly()?;
            self.expect(Tok::RParen, "`)`")?;
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let parens = self.peek() == Some(&Tok::LParen);
                if parens {
                    self.pos += 1;
                }
                let denom = self.mono()?;
                if parens {
                    self.expect(Tok::RParen, "`)`")?;
                }
                let inv = Monomial::new(denom.exps.iter().map(|e| -e).collect());
                num.mul(&LaurentPoly::from_term(self.vars.clone(), inv, BigInt::one()))?
            } else {
                num
            }
        } else {
            self.poly()?
        };
        if self.pos != self.toks.len() {
            return self.err("trailing input");
        }
        Ok(value)
    }
}

impl LaurentPoly {
    /// Parse the canonical grammar (sum or `(poly)/mono` fraction) against a table.
    pub fn parse(vars: &Arc<VarTable>, input: &str) -> Result<LaurentPoly, LaurentError> {
        let toks = lex(input)?;
        if toks.is_empty() {
            return Err(LaurentError::Parse { pos: 0, msg: "empty input".into() });
        }
        let mut p = Parser { toks: &toks, pos: 0, vars: vars.clone(), end: input.len() };
        p.whole()
    }
}
