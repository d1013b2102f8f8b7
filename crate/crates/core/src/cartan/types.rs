use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};

fn check_nvars(n: usize, p: &Poly) -> Result<()> {
    Error::check_dim(n, p.nvars())
}

fn parse_all(n: usize, strs: &[&str]) -> Result<Vec<Poly>> {
    strs.iter().map(|s| Poly::parse(s, n)).collect()
}

/// `X = Σ Xⁱ ∂ᵢ` on `Rⁿ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        for c in &components {
            check_nvars(n, c)?;
        }
        Ok(PolyVectorField { components })
    }

    /// Components in the polynomial string grammar.
    pub fn parse(components: &[&str]) -> Result<Self> {
        Self::new(parse_all(components.len(), components)?)
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField {
            components: vec![Poly::zero(n); n],
        }
    }

    /// The coordinate field `∂ᵢ` (zero-based `i`).
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut x = Self::zero(n);
        x.components[i] = Poly::one(n);
        x
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|c| c.scale(k))
    }

    /// `fX`.
    pub fn mul_fn(&self, f: &Poly) -> Self {
        self.map(|c| f * c)
    }

    /// The derivative `X(f) = Σ Xⁱ ∂ᵢf`.
    pub fn apply(&self, f: &Poly) -> Poly {
        self.components
            .iter()
            .enumerate()
            .fold(Poly::zero(self.n()), |acc, (i, c)| acc + c * &f.d(i))
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        PolyVectorField {
            components: self.components.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        assert_eq!(self.n(), other.n(), "vector fields on different spaces");
        PolyVectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})∂{}", i + 1))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Sorts `idx` in place and returns the sign of the sorting permutation,
/// or `None` if an index repeats.
pub(crate) fn canonicalize(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    idx.windows(2).all(|w| w[0] < w[1]).then_some(sign)
}

/// A `k`-form `Σ ω_I dx^{i₁}∧…∧dx^{i_k}` over strictly increasing
/// (zero-based) multi-indices `I`. Zero components are not stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyForm {
    n: usize,
    degree: usize,
    components: BTreeMap<Vec<usize>, Poly>,
}

impl PolyForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        PolyForm {
            n,
            degree,
            components: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: Poly) -> Self {
        let mut w = Self::zero(f.nvars(), 0);
        w.accumulate(vec![], f);
        w
    }

    /// `dxⁱ` (zero-based `i`).
    pub fn dx(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n, 1);
        w.accumulate(vec![i], Poly::one(n));
        w
    }

    /// A 1-form `Σ ξᵢ dxⁱ` from its components.
    pub fn one_form(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        let mut w = Self::zero(n, 1);
        for (i, c) in components.into_iter().enumerate() {
            check_nvars(n, &c)?;
            w.accumulate(vec![i], c);
        }
        Ok(w)
    }

    pub fn parse_one_form(components: &[&str]) -> Result<Self> {
        Self::one_form(parse_all(components.len(), components)?)
    }

    /// Builds a form from `(indices, coefficient)` pairs. Indices must be
    /// strictly increasing and below `n`; repeated keys are summed.
    pub fn from_components<I>(n: usize, degree: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        let mut w = Self::zero(n, degree);
        for (idx, c) in components {
            check_nvars(n, &c)?;
            Error::check_dim(degree, idx.len())?;
            if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad, dim: n });
            }
            if !idx.windows(2).all(|p| p[0] < p[1]) {
                return Err(Error::Precondition(format!(
                    "form indices {idx:?} are not strictly increasing"
                )));
            }
            w.accumulate(idx, c);
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, Poly> {
        &self.components
    }

    pub fn component(&self, idx: &[usize]) -> Poly {
        self.components
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.n))
    }

    /// The component `ω(∂ᵢ, ∂ⱼ)` of a 2-form, for any `i, j`.
    pub fn entry2(&self, i: usize, j: usize) -> Poly {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.component(&[i, j]),
            std::cmp::Ordering::Greater => -self.component(&[j, i]),
            std::cmp::Ordering::Equal => Poly::zero(self.n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Adds `c` to the component at `idx` after sorting `idx` (with sign).
    pub(crate) fn accumulate(&mut self, mut idx: Vec<usize>, c: Poly) {
        if c.is_zero() {
            return;
        }
        let Some(sign) = canonicalize(&mut idx) else {
            return;
        };
        let c = if sign < 0 { -c } else { c };
        let entry = self.components.entry(idx);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.degree), (other.n, other.degree), "forms of different type");
        let mut out = self.clone();
        for (idx, c) in &other.components {
            out.accumulate(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-crate::poly::rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.mul_fn(&Poly::constant(self.n, k.clone()))
    }

    /// `fω`.
    pub fn mul_fn(&self, f: &Poly) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (idx, c) in &self.components {
            out.accumulate(idx.clone(), f * c);
        }
        out
    }

    /// The function of a 0-form.
    pub fn as_function(&self) -> Option<Poly> {
        (self.degree == 0).then(|| self.component(&[]))
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .components
            .iter()
            .map(|(idx, c)| {
                if idx.is_empty() {
                    format!("{c}")
                } else {
                    let dx: Vec<String> = idx.iter().map(|i| format!("dx{}", i + 1)).collect();
                    format!("({c}){}", dx.join("∧"))
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `Λ = Σ_{i<j} Λ^{ij} ∂ᵢ∧∂ⱼ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyBivector {
    n: usize,
    components: BTreeMap<(usize, usize), Poly>,
}

impl PolyBivector {
    pub fn zero(n: usize) -> Self {
        PolyBivector {
            n,
            components: BTreeMap::new(),
        }
    }

    /// Builds from `((i, j), Λ^{ij})` with `i < j`; repeated keys are summed.
    pub fn from_components<I>(n: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Poly)>,
    {
        let mut b = Self::zero(n);
        for ((i, j), c) in components {
            check_nvars(n, &c)?;
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j.max(i), dim: n });
            }
            if i >= j {
                return Err(Error::Precondition(format!(
                    "bivector indices ({i}, {j}) are not strictly increasing"
                )));
            }
            let sum = b.entry(i, j) + c;
            if sum.is_zero() {
                b.components.remove(&(i, j));
            } else {
                b.components.insert((i, j), sum);
            }
        }
        Ok(b)
    }

    /// `∂ᵢ∧∂ⱼ` times `f`, for `i < j`.
    pub fn elementary(n: usize, i: usize, j: usize, f: Poly) -> Result<Self> {
        Self::from_components(n, [((i, j), f)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), Poly> {
        &self.components
    }

    /// `Λ^{ij}` for any `i, j`.
    pub fn entry(&self, i: usize, j: usize) -> Poly {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.components.get(&(i, j)).cloned().unwrap_or_else(|| Poly::zero(self.n)),
            std::cmp::Ordering::Greater => -self.entry(j, i),
            std::cmp::Ordering::Equal => Poly::zero(self.n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// `Λξ := i_ξΛ`, i.e. `(Λξ)ʲ = Σᵢ Λ^{ij} ξᵢ`.
    pub fn sharp(&self, xi: &PolyForm) -> Result<PolyVectorField> {
        Error::check_dim(self.n, xi.n())?;
        Error::check_dim(1, xi.degree())?;
        let n = self.n;
        PolyVectorField::new(
            (0..n)
                .map(|j| {
                    (0..n).fold(Poly::zero(n), |acc, i| acc + self.entry(i, j) * xi.component(&[i]))
                })
                .collect(),
        )
    }

    /// `Λ(ξ, η) = Σ Λ^{ij} ξᵢ ηⱼ`.
    pub fn eval(&self, xi: &PolyForm, eta: &PolyForm) -> Result<Poly> {
        let v = self.sharp(xi)?;
        super::pairing(&v, eta)
    }
}

impl fmt::Display for PolyBivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .components
            .iter()
            .map(|((i, j), c)| format!("({c})∂{}∧∂{}", i + 1, j + 1))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A (1,1)-tensor field: `N(∂ⱼ) = Σᵢ m[i][j] ∂ᵢ`, so `(NX)ⁱ = Σⱼ m[i][j] Xʲ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyOneOne {
    m: Vec<Vec<Poly>>,
}

impl PolyOneOne {
    pub fn new(m: Vec<Vec<Poly>>) -> Result<Self> {
        let n = m.len();
        for row in &m {
            Error::check_dim(n, row.len())?;
            for c in row {
                check_nvars(n, c)?;
            }
        }
        Ok(PolyOneOne { m })
    }

    /// Rows of entries in the polynomial string grammar.
    pub fn parse(rows: &[&[&str]]) -> Result<Self> {
        let n = rows.len();
        Self::new(
            rows.iter()
                .map(|r| parse_all(n, r))
                .collect::<Result<_>>()?,
        )
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Poly::from_int(n, v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Poly) -> Self {
        PolyOneOne {
            m: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| Poly::zero(n))
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, crate::poly::rational::one())
    }

    pub fn scalar(n: usize, lambda: Rational) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Poly::constant(n, lambda.clone())
            } else {
                Poly::zero(n)
            }
        })
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.m
    }

    pub fn apply(&self, x: &PolyVectorField) -> Result<PolyVectorField> {
        Error::check_dim(self.n(), x.n())?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &PolyVectorField) -> PolyVectorField {
        let n = self.n();
        PolyVectorField {
            components: (0..n)
                .map(|i| (0..n).fold(Poly::zero(n), |acc, j| acc + &self.m[i][j] * x.component(j)))
                .collect(),
        }
    }

    /// `ᵗNξ` on a 1-form: `(ᵗNξ)ⱼ = Σᵢ ξᵢ m[i][j]`, so `⟨X, ᵗNξ⟩ = ⟨NX, ξ⟩`.
    pub fn transpose_apply(&self, xi: &PolyForm) -> Result<PolyForm> {
        Error::check_dim(self.n(), xi.n())?;
        Error::check_dim(1, xi.degree())?;
        let n = self.n();
        PolyForm::one_form(
            (0..n)
                .map(|j| (0..n).fold(Poly::zero(n), |acc, i| acc + xi.component(&[i]) * self.m[i][j].clone()))
                .collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        Self::from_fn(n, |i, j| self.m[j][i].clone())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let n = self.n();
        Error::check_dim(n, other.n())?;
        Ok(Self::from_fn(n, |i, j| {
            (0..n).fold(Poly::zero(n), |acc, k| acc + &self.m[i][k] * &other.m[k][j])
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.n(), other.n())?;
        Ok(Self::from_fn(self.n(), |i, j| &self.m[i][j] + &other.m[i][j]))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.n(), other.n())?;
        Ok(Self::from_fn(self.n(), |i, j| &self.m[i][j] - &other.m[i][j]))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_fn(self.n(), |i, j| self.m[i][j].scale(k))
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(Poly::is_zero)
    }

    /// `Some(λ)` if this is `λI` with constant `λ`.
    pub fn as_scalar(&self) -> Option<Rational> {
        let n = self.n();
        let lambda = if n == 0 { Default::default() } else { self.m[0][0].as_constant()? };
        (*self == Self::scalar(n, lambda.clone())).then_some(lambda)
    }
}

impl fmt::Display for PolyOneOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
