//! Products given by structure constants and the contraction engine on them.

use std::fmt;

use num_traits::Zero;

use super::linalg::{OneOneTensor, Vector};
use super::product::{self, Contracted, Element, Endomorphism, Product};
use crate::error::{Error, Result};
use crate::poly::{int, Rational};
use crate::report::{first_witness, CheckReport, Witness};

/// Bilinear product on a `dim`-dimensional space:
/// `e_i ∘ e_j = Σ_k c[i][j][k] e_k`. No symmetry is assumed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BilinearOp {
    dim: usize,
    c: Vec<Rational>,
}

impl BilinearOp {
    pub fn new(c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let dim = c.len();
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for plane in c {
            Error::check_dim(dim, plane.len())?;
            for row in plane {
                Error::check_dim(dim, row.len())?;
                flat.extend(row);
            }
        }
        Ok(BilinearOp { dim, c: flat })
    }

    pub fn zero(dim: usize) -> Self {
        BilinearOp {
            dim,
            c: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize) -> Rational) -> Self {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c.push(f(i, j, k));
                }
            }
        }
        BilinearOp { dim, c }
    }

    /// Builds from sparse one-based entries `(i, j, k, c)` meaning
    /// `e_i ∘ e_j` has `c` on `e_k`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let mut op = Self::zero(dim);
        for &(i, j, k, v) in entries {
            for idx in [i, j, k] {
                if idx == 0 || idx > dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            op.set(i - 1, j - 1, k - 1, int(v));
        }
        Ok(op)
    }

    /// Builds the table whose `(i, j)` entry is the vector `f(i, j)`.
    pub fn from_table(dim: usize, f: impl Fn(usize, usize) -> Vector) -> Self {
        let mut op = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                for (k, x) in v.coords().iter().enumerate() {
                    op.set(i, j, k, x.clone());
                }
            }
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let at = self.idx(i, j, k);
        self.c[at] = v;
    }

    /// Nested `c[i][j][k]` view.
    pub fn constants(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| (0..self.dim).map(|k| self.constant(i, j, k).clone()).collect())
                    .collect()
            })
            .collect()
    }

    /// `e_i ∘ e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let at = self.idx(i, j, 0);
        Vector::new(self.c[at..at + self.dim].to_vec())
    }

    pub fn apply(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        Ok(self.apply_unchecked(x, y))
    }

    fn apply_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                let at = self.idx(i, j, 0);
                for (k, c) in self.c[at..at + self.dim].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &w * c;
                    }
                }
            }
        }
        Vector::new(out)
    }

    pub fn add(&self, other: &BilinearOp) -> Result<BilinearOp> {
        Error::check_dim(self.dim, other.dim)?;
        Ok(BilinearOp {
            dim: self.dim,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, k: &Rational) -> BilinearOp {
        BilinearOp {
            dim: self.dim,
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..=i).all(|j| self.basis_product(i, j).add(&self.basis_product(j, i)).is_zero())
        })
    }

    /// The isomorphic product `x ∘' y = P⁻¹(Px ∘ Py)` for invertible `P`.
    pub fn transport(&self, p: &OneOneTensor) -> Result<BilinearOp> {
        Error::check_dim(self.dim, p.dim())?;
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Invariant("change of basis is singular".into()))?;
        let images: Vec<Vector> = (0..self.dim)
            .map(|i| p.apply_unchecked(&Vector::basis(self.dim, i)))
            .collect();
        Ok(Self::from_table(self.dim, |i, j| {
            inv.apply_unchecked(&self.apply_unchecked(&images[i], &images[j]))
        }))
    }

    /// Product on the direct sum: the two factors multiply to zero.
    pub fn direct_sum(&self, other: &BilinearOp) -> BilinearOp {
        let (a, b) = (self.dim, other.dim);
        let mut op = Self::zero(a + b);
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    op.set(i, j, k, self.constant(i, j, k).clone());
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    op.set(a + i, a + j, a + k, other.constant(i, j, k).clone());
                }
            }
        }
        op
    }
}

impl fmt::Display for BilinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.basis_product(i, j);
                if !v.is_zero() {
                    parts.push(format!("e{}∘e{} = {}", i + 1, j + 1, v));
                }
            }
        }
        if parts.is_empty() {
            write!(f, "zero product on dim {}", self.dim)
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

impl Element for Vector {
    fn add(&self, other: &Self) -> Self {
        Vector::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Vector::sub(self, other)
    }
    fn is_zero(&self) -> bool {
        Vector::is_zero(self)
    }
}

impl Product for BilinearOp {
    type Elem = Vector;
    fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.apply_unchecked(x, y)
    }
}

impl Endomorphism<Vector> for OneOneTensor {
    fn apply(&self, x: &Vector) -> Vector {
        self.apply_unchecked(x)
    }
}

/// A trilinear vector-valued map stored by its values on basis triples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TrilinearMap {
    dim: usize,
    values: Vec<Vector>,
}

impl TrilinearMap {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize) -> Vector) -> Self {
        let mut values = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    values.push(f(i, j, k));
                }
            }
        }
        TrilinearMap { dim, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> &Vector {
        &self.values[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Vector::is_zero)
    }
}

pub(crate) fn basis_label(i: usize) -> String {
    format!("e{}", i + 1)
}

fn split3(t: usize, d: usize) -> (usize, usize, usize) {
    (t / (d * d), (t / d) % d, t % d)
}

fn check_tensor(op: &BilinearOp, n: &OneOneTensor) -> Result<()> {
    Error::check_dim(op.dim(), n.dim())
}

pub fn apply(op: &BilinearOp, x: &Vector, y: &Vector) -> Result<Vector> {
    op.apply(x, y)
}

/// `(X∘Y)∘Z − X∘(Y∘Z) + Y∘(X∘Z)`.
pub fn jacobi_defect(op: &BilinearOp, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
    for v in [x, y, z] {
        v.check_dim(op.dim())?;
    }
    Ok(product::jacobi_defect(op, x, y, z))
}

/// Values of the Jacobi defect on all basis triples.
pub fn jacobi_table(op: &BilinearOp) -> TrilinearMap {
    let d = op.dim();
    TrilinearMap::from_fn(d, |i, j, k| {
        product::jacobi_defect(op, &Vector::basis(d, i), &Vector::basis(d, j), &Vector::basis(d, k))
    })
}

/// Exhaustive Leibniz check over all `dim³` basis triples. Trilinearity
/// makes the basis check a complete proof.
pub fn is_leibniz(op: &BilinearOp) -> CheckReport {
    leibniz_report("leibniz", op)
}

pub(crate) fn leibniz_report(check: &str, op: &BilinearOp) -> CheckReport {
    let d = op.dim();
    let witness = first_witness(d * d * d, |t| {
        let (i, j, k) = split3(t, d);
        let (x, y, z) = (Vector::basis(d, i), Vector::basis(d, j), Vector::basis(d, k));
        let lhs = op.mul(&op.mul(&x, &y), &z);
        let rhs = op.mul(&x, &op.mul(&y, &z)).sub(&op.mul(&y, &op.mul(&x, &z)));
        (lhs != rhs).then(|| {
            Witness::new(
                "(X∘Y)∘Z = X∘(Y∘Z) − Y∘(X∘Z)",
                vec![i, j, k],
                vec![basis_label(i), basis_label(j), basis_label(k)],
                lhs,
                rhs,
            )
        })
    });
    CheckReport::from_witness(
        check,
        witness,
        format!("Leibniz identity on all {} basis triples", d * d * d),
    )
}

/// Structure constants of `X ∘_N Y = N(X)∘Y + X∘N(Y) − N(X∘Y)`.
pub fn contract(op: &BilinearOp, n: &OneOneTensor) -> Result<BilinearOp> {
    check_tensor(op, n)?;
    let d = op.dim();
    let c = Contracted::new(op, n);
    Ok(BilinearOp::from_table(d, |i, j| {
        c.mul(&Vector::basis(d, i), &Vector::basis(d, j))
    }))
}

/// The torsion `T_N(e_i, e_j) = N(e_i)∘N(e_j) − N(e_i ∘_N e_j)` as a table
/// of structure constants (it is itself a bilinear map).
pub fn nijenhuis_torsion(op: &BilinearOp, n: &OneOneTensor) -> Result<BilinearOp> {
    check_tensor(op, n)?;
    let d = op.dim();
    Ok(BilinearOp::from_table(d, |i, j| {
        product::torsion(op, n, &Vector::basis(d, i), &Vector::basis(d, j))
    }))
}

pub fn compatibility_defect(
    op: &BilinearOp,
    n: &OneOneTensor,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Result<Vector> {
    check_tensor(op, n)?;
    for v in [x, y, z] {
        v.check_dim(op.dim())?;
    }
    Ok(product::compatibility_defect(op, n, x, y, z))
}

/// `(δT_N)(X, Y, Z)` for the torsion of `N`.
pub fn leibniz_coboundary_on_torsion(
    op: &BilinearOp,
    n: &OneOneTensor,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Result<Vector> {
    check_tensor(op, n)?;
    for v in [x, y, z] {
        v.check_dim(op.dim())?;
    }
    Ok(product::torsion_coboundary(op, n, x, y, z))
}

/// `δT_N` on all basis triples. Computed from the torsion table, so it
/// agrees with [`leibniz_coboundary_on_torsion`] by linearity.
pub fn coboundary_table(op: &BilinearOp, n: &OneOneTensor) -> Result<TrilinearMap> {
    let t = nijenhuis_torsion(op, n)?;
    let d = op.dim();
    Ok(TrilinearMap::from_fn(d, |i, j, k| {
        let (x, y, z) = (Vector::basis(d, i), Vector::basis(d, j), Vector::basis(d, k));
        t.mul(&x, &op.mul(&y, &z))
            .sub(&t.mul(&op.mul(&x, &y), &z))
            .sub(&t.mul(&y, &op.mul(&x, &z)))
            .sub(&op.mul(&t.mul(&x, &y), &z))
            .add(&op.mul(&x, &t.mul(&y, &z)))
            .sub(&op.mul(&y, &t.mul(&x, &z)))
    }))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TensorClass {
    Nijenhuis,
    WeakNijenhuis,
    Neither,
}

impl fmt::Display for TensorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TensorClass::Nijenhuis => "nijenhuis",
            TensorClass::WeakNijenhuis => "weak_nijenhuis",
            TensorClass::Neither => "neither",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub class: TensorClass,
    /// Passes iff the contracted product is Leibniz. For a weak tensor the
    /// witness is a basis pair with nonzero torsion; for `Neither` it is a
    /// basis triple where `δT_N ≠ 0`.
    pub report: CheckReport,
}

/// Strict Nijenhuis is tested before weak: zero torsion is always reported
/// as `Nijenhuis`.
pub fn classify_tensor(op: &BilinearOp, n: &OneOneTensor) -> Result<Classification> {
    check_tensor(op, n)?;
    let leibniz = is_leibniz(op);
    if !leibniz.passed() {
        return Err(Error::Precondition(format!(
            "product is not Leibniz: {}",
            leibniz.witness.map(|w| w.inputs.join(",")).unwrap_or_default()
        )));
    }
    let d = op.dim();
    let t = nijenhuis_torsion(op, n)?;
    let torsion_witness = first_witness(d * d, |p| {
        let (i, j) = (p / d, p % d);
        let v = t.basis_product(i, j);
        (!v.is_zero()).then(|| {
            Witness::new(
                "T_N(X,Y) = 0",
                vec![i, j],
                vec![basis_label(i), basis_label(j)],
                v,
                Vector::zero(d),
            )
        })
    });
    let Some(torsion_witness) = torsion_witness else {
        return Ok(Classification {
            class: TensorClass::Nijenhuis,
            report: CheckReport::pass(
                "classify-tensor",
                format!("nijenhuis: torsion vanishes on all {} basis pairs", d * d),
            ),
        });
    };
    let delta = coboundary_table(op, n)?;
    let cocycle_witness = first_witness(d * d * d, |t| {
        let (i, j, k) = split3(t, d);
        let v = delta.value(i, j, k);
        (!v.is_zero()).then(|| {
            Witness::new(
                "(δT_N)(X,Y,Z) = 0",
                vec![i, j, k],
                vec![basis_label(i), basis_label(j), basis_label(k)],
                v,
                Vector::zero(d),
            )
        })
    });
    Ok(match cocycle_witness {
        None => Classification {
            class: TensorClass::WeakNijenhuis,
            report: CheckReport::pass(
                "classify-tensor",
                format!(
                    "weak_nijenhuis: torsion nonzero, δT_N vanishes on all {} basis triples",
                    d * d * d
                ),
            )
            .with_witness_info(torsion_witness),
        },
        Some(w) => Classification {
            class: TensorClass::Neither,
            report: CheckReport::fail(
                "classify-tensor",
                w,
                "neither: δT_N is not a cocycle, the contracted product is not Leibniz",
            ),
        },
    })
}

/// `X ∘_N Y + λ X∘Y`.
pub fn pencil(op: &BilinearOp, n: &OneOneTensor, lambda: &Rational) -> Result<BilinearOp> {
    contract(op, n)?.add(&op.scale(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalogue;
    use crate::poly::frac;

    fn e(d: usize, i: usize) -> Vector {
        Vector::basis(d, i)
    }

    #[test]
    fn apply_structure_constants() {
        let op = catalogue::affine_line();
        assert_eq!(op.apply(&e(2, 0), &e(2, 1)).unwrap(), e(2, 1));
        assert_eq!(op.apply(&e(2, 1), &e(2, 0)).unwrap(), e(2, 1).scale(&int(-1)));
        assert!(op.apply(&Vector::zero(2), &e(2, 1)).unwrap().is_zero());
        assert!(op.apply(&e(2, 0), &e(2, 0)).unwrap().is_zero());
        assert!(matches!(
            op.apply(&e(3, 0), &e(2, 0)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn jacobi_defect_cases() {
        let lie = catalogue::heisenberg();
        for (i, j, k) in [(0, 1, 2), (1, 0, 1), (2, 2, 0)] {
            assert!(jacobi_defect(&lie, &e(3, i), &e(3, j), &e(3, k)).unwrap().is_zero());
        }
        let sq = BilinearOp::from_entries(2, &[(1, 1, 2, 1)]).unwrap();
        assert!(jacobi_defect(&sq, &e(2, 0), &e(2, 0), &e(2, 0)).unwrap().is_zero());
        let ab = BilinearOp::zero(3);
        assert!(jacobi_defect(&ab, &e(3, 0), &e(3, 1), &e(3, 2)).unwrap().is_zero());
        assert!(jacobi_defect(&ab, &e(2, 0), &e(3, 1), &e(3, 2)).is_err());
    }

    #[test]
    fn non_leibniz_reports_reproducible_witness() {
        // e1∘e1 = e1, e1∘e2 = e2, e2∘e1 = e1: found by the brute-force
        // search in the integration tests.
        let op = BilinearOp::from_entries(2, &[(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 1, 1)]).unwrap();
        let report = is_leibniz(&op);
        assert!(!report.passed());
        let w = report.witness.unwrap();
        let (i, j, k) = (w.indices[0], w.indices[1], w.indices[2]);
        let defect = jacobi_defect(&op, &e(2, i), &e(2, j), &e(2, k)).unwrap();
        assert!(!defect.is_zero());
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn contract_edge_tensors() {
        let op = catalogue::affine_line();
        assert_eq!(contract(&op, &OneOneTensor::identity(2)).unwrap(), op);
        assert!(contract(&op, &OneOneTensor::zero(2)).unwrap().is_zero());
        // N = diag(a, b): e1 ∘_N e2 = a e2.
        let (a, b) = (frac(3, 2), int(-5));
        let n = OneOneTensor::diagonal(&[a.clone(), b]);
        let c = contract(&op, &n).unwrap();
        assert_eq!(c.basis_product(0, 1), e(2, 1).scale(&a));
        assert!(contract(&op, &OneOneTensor::identity(3)).is_err());
    }

    #[test]
    fn torsion_edge_tensors() {
        let op = catalogue::heisenberg();
        assert!(nijenhuis_torsion(&op, &OneOneTensor::identity(3)).unwrap().is_zero());
        assert!(nijenhuis_torsion(&op, &OneOneTensor::scalar(3, frac(-7, 3)))
            .unwrap()
            .is_zero());
        let n = OneOneTensor::diagonal(&[int(2), int(-3)]);
        assert!(nijenhuis_torsion(&catalogue::affine_line(), &n).unwrap().is_zero());
    }

    #[test]
    fn abelian_products_have_no_defects() {
        let op = BilinearOp::zero(3);
        let n = OneOneTensor::from_ints(&[&[1, 2, 0], &[0, 1, 5], &[3, 0, 0]]).unwrap();
        for t in 0..27 {
            let (i, j, k) = split3(t, 3);
            assert!(compatibility_defect(&op, &n, &e(3, i), &e(3, j), &e(3, k)).unwrap().is_zero());
            assert!(leibniz_coboundary_on_torsion(&op, &n, &e(3, i), &e(3, j), &e(3, k))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn classify_identity_and_precondition() {
        let op = catalogue::heisenberg();
        let c = classify_tensor(&op, &OneOneTensor::identity(3)).unwrap();
        assert_eq!(c.class, TensorClass::Nijenhuis);
        assert!(c.report.passed());
        let bad = BilinearOp::from_entries(2, &[(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 1, 1)]).unwrap();
        assert!(matches!(
            classify_tensor(&bad, &OneOneTensor::identity(2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn degenerate_dimensions_pass_vacuously() {
        for d in [0, 1] {
            let op = BilinearOp::zero(d);
            assert!(is_leibniz(&op).passed());
            let c = classify_tensor(&op, &OneOneTensor::identity(d)).unwrap();
            assert_eq!(c.class, TensorClass::Nijenhuis);
        }
    }

    #[test]
    fn transport_preserves_leibniz() {
        let op = catalogue::heisenberg();
        let p = OneOneTensor::from_ints(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap();
        let moved = op.transport(&p).unwrap();
        assert!(is_leibniz(&moved).passed());
        assert_ne!(moved, op);
    }
}
