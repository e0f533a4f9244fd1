//! Exact multivariate polynomials over the rationals in `t_1, ..., t_n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{GkmError, Result};
use crate::weyl::WeylElement;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || GkmError::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An integer linear form `Σ c_i t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: SmallVec<[i64; 8]>,
}

impl LinearForm {
    pub fn new<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        LinearForm { coeffs: coeffs.into_iter().collect() }
    }

    pub fn zero(num_vars: usize) -> Self {
        LinearForm { coeffs: SmallVec::from_elem(0, num_vars) }
    }

    /// `t_{i+1} - t_{j+1}` for 0-based `i`, `j`.
    pub fn difference(num_vars: usize, i: usize, j: usize) -> Self {
        let mut f = LinearForm::zero(num_vars);
        f.coeffs[i] += 1;
        f.coeffs[j] -= 1;
        f
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// 0-based index of the first nonzero coefficient.
    pub fn leading_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Whether the first nonzero coefficient is negative.
    pub fn is_negative(&self) -> bool {
        self.leading_index().is_some_and(|k| self.coeffs[k] < 0)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.num_vars();
        let mut p = Polynomial::zero(n);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                p.terms.insert(Monomial::var(n, i), rat(c));
            }
        }
        p
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, x)| rat(c) * x)
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, num_vars))
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut m = Monomial::one(num_vars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(exps.iter().copied().collect())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// All monomials of total degree `d` in `n` variables, ascending.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d as u16);
                out.push(Monomial::from_exponents(prefix));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e as u16);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(n, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// A polynomial with exact rational coefficients; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(num_vars), c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Polynomial::constant(num_vars, Rational::one())
    }

    /// The variable `t_{i+1}` (0-based index).
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut p = Polynomial::zero(num_vars);
        p.terms.insert(Monomial::var(num_vars, i), Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(num_vars: usize, terms: I) -> Self {
        let mut p = Polynomial::zero(num_vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), num_vars);
            p.add_term(m, c);
        }
        p
    }

    /// Product of linear forms; the empty product is 1.
    pub fn product_of_forms<'a, I: IntoIterator<Item = &'a LinearForm>>(num_vars: usize, forms: I) -> Self {
        forms.into_iter().fold(Polynomial::one(num_vars), |acc, f| &acc * &f.to_polynomial())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.num_vars)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `t_{i+1}` in a homogeneous linear polynomial.
    pub fn to_linear_form(&self) -> Option<LinearForm> {
        if !self.is_homogeneous_of_degree(1) {
            return None;
        }
        let mut out = vec![0i64; self.num_vars];
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            let i = m.0.iter().position(|&e| e == 1)?;
            out[i] = i64::try_from(c.to_integer()).ok()?;
        }
        Some(LinearForm::new(out))
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(GkmError::TypeMismatch(format!(
                "polynomials in {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }

    /// Ring arithmetic with variable-count checking.
    pub fn arith(&self, kind: ArithKind, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        Ok(match kind {
            ArithKind::Add => self.add_unchecked(other, false),
            ArithKind::Sub => self.add_unchecked(other, true),
            ArithKind::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial { num_vars: self.num_vars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Splits `self = q·f + r` where `r` does not involve the variable of the
    /// leading nonzero coefficient of `f`. The remainder is the restriction of
    /// `self` to the hyperplane `f = 0`.
    pub fn div_rem_linear(&self, f: &LinearForm) -> Result<(Polynomial, Polynomial)> {
        let k = f.leading_index().ok_or_else(|| GkmError::Argument("division by the zero linear form".into()))?;
        if f.num_vars() != self.num_vars {
            return Err(GkmError::TypeMismatch(format!(
                "linear form in {} variables, polynomial in {}",
                f.num_vars(),
                self.num_vars
            )));
        }
        let lead = rat(f.coeffs[k]);
        let others: Vec<(usize, Rational)> =
            f.coeffs.iter().enumerate().filter(|&(j, &c)| j != k && c != 0).map(|(j, &c)| (j, rat(c))).collect();
        // bucket terms by the power of the eliminated variable
        let top = self.terms.keys().map(|m| m.0[k]).max().unwrap_or(0) as usize;
        let mut levels: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); top + 1];
        for (m, c) in &self.terms {
            levels[m.0[k] as usize].insert(m.clone(), c.clone());
        }
        let mut quotient = Polynomial::zero(self.num_vars);
        for e in (1..=top).rev() {
            let level = std::mem::take(&mut levels[e]);
            for (m, c) in level {
                if c.is_zero() {
                    continue;
                }
                let coeff = &c / &lead;
                let mut reduced = m.clone();
                reduced.0[k] -= 1;
                for (j, fj) in &others {
                    let mut shifted = reduced.clone();
                    shifted.0[*j] += 1;
                    let slot = levels[e - 1].entry(shifted).or_insert_with(Rational::zero);
                    *slot -= &coeff * fj;
                }
                quotient.add_term(reduced, coeff);
            }
        }
        let remainder = Polynomial::from_terms(
            self.num_vars,
            std::mem::take(&mut levels[0]).into_iter().filter(|(_, c)| !c.is_zero()),
        );
        Ok((quotient, remainder))
    }

    /// Exact quotient by a nonzero linear form.
    pub fn divide_exact(&self, f: &LinearForm) -> Result<Polynomial> {
        let (q, r) = self.div_rem_linear(f)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(GkmError::NotDivisible(f.to_string()))
        }
    }

    pub fn is_divisible_by(&self, f: &LinearForm) -> Result<bool> {
        Ok(self.div_rem_linear(f)?.1.is_zero())
    }

    /// Exact quotient by an arbitrary nonzero polynomial (graded-lex division).
    pub fn divide_exact_poly(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_vars(g)?;
        let (lm, lc) =
            g.terms.iter().next_back().ok_or_else(|| GkmError::Argument("division by the zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut q = Polynomial::zero(self.num_vars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if !lm.divides(m) {
                return Err(GkmError::NotDivisible(g.to_string()));
            }
            let term_m = m.div(lm);
            let term_c = c / lc;
            for (gm, gc) in &g.terms {
                rem.add_term(gm.mul(&term_m), -(&term_c * gc));
            }
            q.add_term(term_m, term_c);
        }
        Ok(q)
    }

    /// `w f = f(±t_{|w(1)|}, ..., ±t_{|w(n)|})`.
    pub fn apply_weyl(&self, w: &WeylElement) -> Polynomial {
        let images = w.raw_images();
        assert_eq!(images.len(), self.num_vars, "element and polynomial disagree on variables");
        let mut out = Polynomial::zero(self.num_vars);
        for (m, c) in &self.terms {
            let mut exps: SmallVec<[u16; 8]> = SmallVec::from_elem(0, self.num_vars);
            let mut odd_negations = false;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = images[i];
                exps[x.unsigned_abs() as usize - 1] = e;
                if x < 0 && e % 2 == 1 {
                    odd_negations = !odd_negations;
                }
            }
            out.terms.insert(Monomial(exps), if odd_negations { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.num_vars {
            return Err(GkmError::Argument(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.num_vars
            )));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    term *= x;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// JSON form: terms in descending graded-lexicographic order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms.iter().rev().map(|(m, c)| json!({ "coeff": c.to_string(), "exps": m.0.to_vec() })).collect(),
        )
    }

    pub fn from_json(num_vars: usize, v: &Value) -> Result<Polynomial> {
        let bad = |what: &str| GkmError::Parse(format!("bad polynomial JSON: {what}"));
        let arr = v.as_array().ok_or_else(|| bad("expected a list"))?;
        let mut p = Polynomial::zero(num_vars);
        for t in arr {
            let coeff = parse_rational(t["coeff"].as_str().ok_or_else(|| bad("coeff"))?)?;
            let exps = t["exps"]
                .as_array()
                .ok_or_else(|| bad("exps"))?
                .iter()
                .map(|e| e.as_u64().map(|x| x as u16))
                .collect::<Option<Vec<u16>>>()
                .ok_or_else(|| bad("exps"))?;
            if exps.len() != num_vars {
                return Err(bad("exponent length"));
            }
            p.add_term(Monomial::from_exponents(&exps), coeff);
        }
        Ok(p)
    }

    /// Parses expressions like `(t1 - t2)*(t1 - t3)`, `t1^2*t2 - 1/2*t3`.
    /// `x_i` is accepted as an alias for `t_i`.
    pub fn parse(num_vars: usize, s: &str) -> Result<Polynomial> {
        let mut parser = Parser { src: s.as_bytes(), pos: 0, num_vars };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(GkmError::Parse(format!("trailing input in '{s}'")));
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("t{}", i + 1)),
                    _ => factors.push(format!("t{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $kind:expr) => {
        impl<'a> $trait<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.arith($kind, rhs).expect("polynomial variable counts differ")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.arith($kind, &rhs).expect("polynomial variable counts differ")
            }
        }
    };
}

forward_binop!(Add, add, ArithKind::Add);
forward_binop!(Sub, sub, ArithKind::Sub);
forward_binop!(Mul, mul, ArithKind::Mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        (&self).neg()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> GkmError {
        GkmError::Parse(format!("{msg} at offset {} in '{}'", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.degree() != Some(0) {
                        return Err(self.err("division by a non-constant"));
                    }
                    acc = acc.scale(&(Rational::one() / d.constant_term()));
                }
                Some(b'(') | Some(b't') | Some(b'x') => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?;
            let mut out = Polynomial::one(self.num_vars);
            for _ in 0..e {
                out = out * base.clone();
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| self.err("expected a number"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') | Some(b'x') => {
                self.pos += 1;
                if self.peek() == Some(b'_') {
                    self.pos += 1;
                }
                let i = self.number()? as usize;
                if i == 0 || i > self.num_vars {
                    return Err(self.err("variable index out of range"));
                }
                Ok(Polynomial::var(self.num_vars, i - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(Polynomial::constant(self.num_vars, Rational::from_integer(BigInt::from(n))))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}
