//! Dense exact linear algebra over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_rational, int, Rational};

/// Coordinate vector in a finite-dimensional carrier.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Vector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    /// The basis vector `e_{index+1}`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[index] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        Error::check_dim(dim, self.dim())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A (1,1)-tensor on a finite-dimensional carrier: `N(e_j) = sum_i m[i][j] e_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneOneTensor {
    dim: usize,
    m: Vec<Vec<Rational>>,
}

impl OneOneTensor {
    pub fn new(m: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = m.len();
        for row in &m {
            Error::check_dim(dim, row.len())?;
        }
        Ok(OneOneTensor { dim, m })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| int(c)).collect())
                .collect(),
        )
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        OneOneTensor {
            dim,
            m: (0..dim).map(|i| (0..dim).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Rational::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Rational::one())
    }

    pub fn scalar(dim: usize, lambda: Rational) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                lambda.clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        Self::from_fn(entries.len(), |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.m
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &Vector) -> Vector {
        Vector::new(
            self.m
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(x.coords())
                        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        )
    }

    /// Matrix product `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &OneOneTensor) -> Result<OneOneTensor> {
        Error::check_dim(self.dim, other.dim)?;
        Ok(Self::from_fn(self.dim, |i, j| {
            (0..self.dim).map(|k| &self.m[i][k] * &other.m[k][j]).sum()
        }))
    }

    pub fn transpose(&self) -> OneOneTensor {
        Self::from_fn(self.dim, |i, j| self.m[j][i].clone())
    }

    pub fn add(&self, other: &OneOneTensor) -> Result<OneOneTensor> {
        Error::check_dim(self.dim, other.dim)?;
        Ok(Self::from_fn(self.dim, |i, j| &self.m[i][j] + &other.m[i][j]))
    }

    pub fn sub(&self, other: &OneOneTensor) -> Result<OneOneTensor> {
        Error::check_dim(self.dim, other.dim)?;
        Ok(Self::from_fn(self.dim, |i, j| &self.m[i][j] - &other.m[i][j]))
    }

    pub fn scale(&self, k: &Rational) -> OneOneTensor {
        Self::from_fn(self.dim, |i, j| &self.m[i][j] * k)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.m[i][j] == self.m[j][i]))
    }

    pub fn is_skew(&self) -> bool {
        (0..self.dim).all(|i| (0..=i).all(|j| self.m[i][j] == -self.m[j][i].clone()))
    }

    /// `Some(λ)` iff the matrix is exactly `λ I`. A 0×0 matrix yields `Some(0)`.
    pub fn as_scalar(&self) -> Option<Rational> {
        let lambda = if self.dim == 0 {
            Rational::zero()
        } else {
            self.m[0][0].clone()
        };
        (*self == Self::scalar(self.dim, lambda.clone())).then_some(lambda)
    }

    pub fn determinant(&self) -> Rational {
        let mut a = self.m.clone();
        let n = self.dim;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<OneOneTensor> {
        let n = self.dim;
        let mut a = self.m.clone();
        let mut inv = Self::identity(n).m;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col].clone();
            for c in 0..n {
                a[col][c] /= &p;
                inv[col][c] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let da = &factor * &a[col][c];
                    a[r][c] -= da;
                    let di = &factor * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
        Some(OneOneTensor { dim: n, m: inv })
    }
}

impl fmt::Display for OneOneTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| {
                let e: Vec<String> = r.iter().map(format_rational).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Rank of a family of vectors (Gaussian elimination).
pub fn rank(vectors: &[Vector]) -> usize {
    echelon(vectors).len()
}

/// Reduced row-echelon basis of the span, with pivot columns.
fn echelon(vectors: &[Vector]) -> Vec<(usize, Vector)> {
    let mut rows: Vec<(usize, Vector)> = Vec::new();
    for v in vectors {
        if let Some(r) = reduce(&rows, v) {
            let pivot = r.coords().iter().position(|c| !c.is_zero()).unwrap();
            let r = r.scale(&(Rational::one() / &r.coords()[pivot]));
            for (_, row) in rows.iter_mut() {
                let f = row.coords()[pivot].clone();
                if !f.is_zero() {
                    *row = row.sub(&r.scale(&f));
                }
            }
            rows.push((pivot, r));
        }
    }
    rows
}

fn reduce(rows: &[(usize, Vector)], v: &Vector) -> Option<Vector> {
    let mut r = v.clone();
    for (pivot, row) in rows {
        let f = r.coords()[*pivot].clone();
        if !f.is_zero() {
            r = r.sub(&row.scale(&f));
        }
    }
    (!r.is_zero()).then_some(r)
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vector], v: &Vector) -> bool {
    reduce(&echelon(vectors), v).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::frac;

    #[test]
    fn inverse_and_determinant() {
        let a = OneOneTensor::from_ints(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(a.determinant(), int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.compose(&inv).unwrap(), OneOneTensor::identity(2));
        let singular = OneOneTensor::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(singular.determinant(), int(0));
        assert!(singular.inverse().is_none());
        let p = OneOneTensor::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]).unwrap();
        assert_eq!(p.determinant(), int(-3));
    }

    #[test]
    fn rank_and_span() {
        let v = [
            Vector::from_ints(&[1, 0, 1]),
            Vector::from_ints(&[0, 1, 1]),
            Vector::from_ints(&[1, 1, 2]),
        ];
        assert_eq!(rank(&v), 2);
        assert!(in_span(&v, &Vector::from_ints(&[2, -1, 1])));
        assert!(!in_span(&v, &Vector::from_ints(&[0, 0, 1])));
        assert!(in_span(&[], &Vector::zero(3)));
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(
            OneOneTensor::scalar(3, frac(1, 2)).as_scalar(),
            Some(frac(1, 2))
        );
        assert_eq!(OneOneTensor::from_ints(&[&[1, 0], &[0, 2]]).unwrap().as_scalar(), None);
        assert_eq!(OneOneTensor::zero(0).as_scalar(), Some(int(0)));
    }

    #[test]
    fn ragged_matrix_rejected() {
        assert!(OneOneTensor::new(vec![vec![int(1)], vec![int(1), int(2)]]).is_err());
    }
}
