//! Exact multivariate polynomials with rational coefficients.
//!
//! A [`Poly`] is a finite map from exponent multi-indices to nonzero
//! rational coefficients. Terms are kept in graded-lexicographic order, so
//! two polynomials are equal exactly when their term maps are equal.

mod parse;
pub mod rational;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
pub use rational::{format_rational, frac, int, parse_rational, Rational};

/// Exponent multi-index `(a_1, ..., a_n)` of the monomial `x1^a_1 ... xn^a_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All exponent vectors in `nvars` variables of total degree at most
    /// `max_degree`, in ascending graded-lex order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; nvars];
        fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos == current.len() {
                out.push(Monomial(current.clone()));
                return;
            }
            for e in 0..=left {
                current[pos] = e;
                rec(pos + 1, left - e, current, out);
            }
            current[pos] = 0;
        }
        rec(0, max_degree, &mut current, &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents compared
    /// left to right.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `x1..xn` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, int(c))
    }

    /// The coordinate function `x_{index+1}` (zero-based `index`).
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::IndexOutOfRange { index, dim: nvars });
        }
        let mut e = vec![0; nvars];
        e[index] = 1;
        Ok(Self::monomial(nvars, Monomial(e), Rational::one()))
    }

    pub fn monomial(nvars: usize, mono: Monomial, c: Rational) -> Self {
        assert_eq!(mono.nvars(), nvars, "monomial arity must match nvars");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { nvars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            Error::check_dim(nvars, e.len())?;
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// `Some(c)` iff the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        Error::check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        Error::check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        Error::check_dim(self.nvars, other.nvars)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to `x_{index+1}`.
    pub fn partial_derivative(&self, index: usize) -> Result<Poly> {
        if index >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] = e - 1;
            out.add_term(Monomial(exps), c * int(e as i64));
        }
        Ok(out)
    }

    /// Shorthand for [`Poly::partial_derivative`] on a known-valid index.
    pub(crate) fn d(&self, index: usize) -> Poly {
        self.partial_derivative(index)
            .expect("coordinate index within range")
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        Error::check_dim(self.nvars, point.len())?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Parses the textual grammar, e.g. `"3/2*x1^2*x2 - x3"`.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        parse::parse_poly(s, nvars)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (pos, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

// Operator sugar. These panic on mismatched arity; the `checked_*` methods
// are the fallible API.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
