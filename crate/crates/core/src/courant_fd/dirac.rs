//! Dirac subspaces of a finite-dimensional Courant structure.

use super::CourantStructure;
use crate::algebra::product::{torsion, Product};
use crate::algebra::{contract, in_span, rank, OneOneTensor, Vector};
use crate::error::{Error, Result};
use crate::report::{first_witness, CheckReport, StagedCheck, Witness};

/// A subspace given by linearly independent spanning vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<Vector>) -> Result<Self> {
        for v in &basis {
            Error::check_dim(ambient_dim, v.dim())?;
        }
        if rank(&basis) != basis.len() {
            return Err(Error::Precondition(
                "subspace basis vectors are linearly dependent".into(),
            ));
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// `E` inside `E ⊕ E*` with `dim E = n`.
    pub fn e(n: usize) -> Self {
        Subspace {
            ambient_dim: 2 * n,
            basis: (0..n).map(|i| Vector::basis(2 * n, i)).collect(),
        }
    }

    /// `E*` inside `E ⊕ E*`.
    pub fn estar(n: usize) -> Self {
        Subspace {
            ambient_dim: 2 * n,
            basis: (n..2 * n).map(|i| Vector::basis(2 * n, i)).collect(),
        }
    }

    /// `{X + AX}` for `A : E → E*` (or, with `from_estar`, `{ξ + Aξ}` for
    /// `A : E* → E`).
    pub fn graph(a: &OneOneTensor, from_estar: bool) -> Self {
        let n = a.dim();
        let basis = (0..n)
            .map(|i| {
                let image = a.apply_unchecked(&Vector::basis(n, i));
                let mut c = vec![Default::default(); 2 * n];
                let (src, dst) = if from_estar { (n, 0) } else { (0, n) };
                c[src + i] = crate::poly::rational::one();
                for (k, v) in image.coords().iter().enumerate() {
                    c[dst + k] = v.clone();
                }
                Vector::new(c)
            })
            .collect();
        Subspace {
            ambient_dim: 2 * n,
            basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &Vector) -> bool {
        in_span(&self.basis, v)
    }
}

fn label(i: usize) -> String {
    format!("u{}", i + 1)
}

/// Applies `f` to every ordered pair of basis vectors of `l`.
fn on_pairs<F>(l: &Subspace, check: &str, identity: &str, f: F) -> CheckReport
where
    F: Fn(&Vector, &Vector) -> Option<(String, String)> + Sync + Send,
{
    let k = l.dim();
    let w = first_witness(k * k, |t| {
        let (i, j) = (t / k, t % k);
        f(&l.basis[i], &l.basis[j]).map(|(lhs, rhs)| {
            Witness::new(identity, vec![i, j], vec![label(i), label(j)], lhs, rhs)
        })
    });
    CheckReport::from_witness(check, w, format!("{check} on {} basis pairs", k * k))
}

/// Isotropic, of half the ambient dimension, and closed under the product.
pub fn is_dirac(cs: &CourantStructure, l: &Subspace) -> Result<CheckReport> {
    Error::check_dim(cs.dim(), l.ambient_dim())?;
    let mut staged = StagedCheck::new("dirac");
    let isotropic = on_pairs(l, "isotropic", "⟨u,v⟩ = 0", |u, v| {
        let p = cs.pairing.eval(u, v);
        (p != Default::default()).then(|| (p.to_string(), "0".into()))
    });
    if let Some(fail) = staged.stage(&isotropic) {
        return Ok(fail);
    }
    let maximal = if 2 * l.dim() == cs.dim() {
        CheckReport::pass("maximal", format!("dim L = {} = dim A / 2", l.dim()))
    } else {
        CheckReport::fail(
            "maximal",
            Witness::new("2 dim L = dim A", vec![], vec![], 2 * l.dim(), cs.dim()),
            format!("dim L = {} but dim A = {}", l.dim(), cs.dim()),
        )
    };
    if let Some(fail) = staged.stage(&maximal) {
        return Ok(fail);
    }
    let closed = on_pairs(l, "closed", "u∘v ∈ L", |u, v| {
        let p = cs.op.mul(u, v);
        (!l.contains(&p)).then(|| (p.to_string(), "∈ L".into()))
    });
    Ok(staged.stage(&closed).unwrap_or_else(|| staged.finish()))
}

/// `∘_N` closed and skew on `L`, and `T_N` vanishing on `L`. A passing
/// verdict also confirms that `N` carries `∘_N` on `L` to `∘`.
pub fn is_dirac_nijenhuis(cs: &CourantStructure, l: &Subspace, n: &OneOneTensor) -> Result<CheckReport> {
    Error::check_dim(cs.dim(), n.dim())?;
    let dirac = is_dirac(cs, l)?;
    if !dirac.passed() {
        return Err(Error::Precondition(format!(
            "L is not a Dirac subspace: {}",
            dirac.certificate
        )));
    }
    let contracted = contract(&cs.op, n)?;
    let mut staged = StagedCheck::new("dirac-nijenhuis");
    let stages = [
        on_pairs(l, "∘_N closed on L", "u∘_N v ∈ L", |u, v| {
            let p = contracted.mul(u, v);
            (!l.contains(&p)).then(|| (p.to_string(), "∈ L".into()))
        }),
        on_pairs(l, "∘_N skew on L", "u∘_N v = −(v∘_N u)", |u, v| {
            let a = contracted.mul(u, v);
            let b = contracted.mul(v, u);
            (!a.add(&b).is_zero()).then(|| (a.to_string(), format!("−{b}")))
        }),
        on_pairs(l, "T_N = 0 on L", "T_N(u,v) = 0", |u, v| {
            let t = torsion(&cs.op, n, u, v);
            (!t.is_zero()).then(|| (t.to_string(), Vector::zero(t.dim()).to_string()))
        }),
        on_pairs(l, "N morphism on L", "N(u∘_N v) = Nu∘Nv", |u, v| {
            let lhs = n.apply_unchecked(&contracted.mul(u, v));
            let rhs = cs.op.mul(&n.apply_unchecked(u), &n.apply_unchecked(v));
            (lhs != rhs).then(|| (lhs.to_string(), rhs.to_string()))
        }),
    ];
    Ok(stages
        .iter()
        .find_map(|s| staged.stage(s))
        .unwrap_or_else(|| staged.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalogue;
    use crate::courant_fd::{drinfeld_double, LieBialgebra};

    fn affine_double() -> CourantStructure {
        drinfeld_double(&LieBialgebra::trivial(catalogue::affine_line()).unwrap())
    }

    #[test]
    fn e_and_estar_are_dirac() {
        let cs = affine_double();
        assert!(is_dirac(&cs, &Subspace::e(2)).unwrap().passed());
        assert!(is_dirac(&cs, &Subspace::estar(2)).unwrap().passed());
    }

    #[test]
    fn non_isotropic_line_fails() {
        let cs = affine_double();
        let l = Subspace::new(4, vec![Vector::from_ints(&[1, 0, 1, 0])]).unwrap();
        let r = is_dirac(&cs, &l).unwrap();
        assert!(!r.passed());
        let w = r.witness.unwrap();
        assert_eq!(w.identity, "⟨u,v⟩ = 0");
        assert_eq!(w.lhs, "2");
    }

    #[test]
    fn isotropic_but_small_is_not_maximal() {
        let cs = affine_double();
        let l = Subspace::new(4, vec![Vector::from_ints(&[1, 0, 0, 0])]).unwrap();
        let r = is_dirac(&cs, &l).unwrap();
        assert_eq!(r.witness.unwrap().identity, "2 dim L = dim A");
    }

    #[test]
    fn dependent_basis_rejected() {
        let v = Vector::from_ints(&[1, 0, 0, 0]);
        assert!(Subspace::new(4, vec![v.clone(), v]).is_err());
    }

    #[test]
    fn identity_is_dirac_nijenhuis() {
        let cs = affine_double();
        for l in [Subspace::e(2), Subspace::estar(2)] {
            let r = is_dirac_nijenhuis(&cs, &l, &OneOneTensor::identity(4)).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn non_dirac_is_a_precondition_error() {
        let cs = affine_double();
        let l = Subspace::new(4, vec![Vector::from_ints(&[1, 0, 0, 0])]).unwrap();
        assert!(matches!(
            is_dirac_nijenhuis(&cs, &l, &OneOneTensor::identity(4)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn graph_of_zero_is_e() {
        let g = Subspace::graph(&OneOneTensor::zero(2), false);
        assert_eq!(g, Subspace::e(2));
        let g = Subspace::graph(&OneOneTensor::zero(2), true);
        assert_eq!(g, Subspace::estar(2));
    }
}
