//! Courant structures on finite-dimensional carriers (over a point).
//!
//! The anchor of every structure here is zero, so all `ρ(X)(f)` terms drop
//! out and the Courant axioms become purely algebraic conditions on the
//! structure constants and the pairing.

mod bialgebra;
mod dirac;

pub use bialgebra::{
    bialgebroid_nijenhuis_conditions, contracted_bialgebra, definition_bialgebroid_nijenhuis,
    drinfeld_double, BlockTensor, LieBialgebra,
};
pub use dirac::{is_dirac, is_dirac_nijenhuis, Subspace};

use crate::algebra::bilinear::{basis_label, leibniz_report};
use crate::algebra::product::{torsion, Product};
use crate::algebra::{contract, BilinearOp, OneOneTensor, Vector};
use crate::error::{Error, Result};
use crate::poly::{int, Rational};
use crate::report::{cross_checked, first_witness, CheckReport, StagedCheck, Witness};

/// Nondegenerate symmetric bilinear form `⟨x, y⟩ = xᵀ g y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pairing {
    g: OneOneTensor,
}

impl Pairing {
    pub fn new(g: OneOneTensor) -> Result<Self> {
        if !g.is_symmetric() {
            return Err(Error::Invariant("pairing matrix is not symmetric".into()));
        }
        if g.determinant() == int(0) {
            return Err(Error::Invariant("pairing is degenerate".into()));
        }
        Ok(Pairing { g })
    }

    /// `⟨X+ξ, Y+η⟩ = ⟨ξ,Y⟩ + ⟨η,X⟩` on `E ⊕ E*` with `dim E = n`.
    pub fn hyperbolic(n: usize) -> Self {
        let g = OneOneTensor::from_fn(2 * n, |i, j| {
            if i + n == j || j + n == i {
                int(1)
            } else {
                int(0)
            }
        });
        Pairing { g }
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn matrix(&self) -> &OneOneTensor {
        &self.g
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Rational {
        x.dot(&self.g.apply_unchecked(y))
    }
}

/// A finite-dimensional Courant structure: Leibniz product, zero anchor,
/// pairing. Validity is established by [`check_courant_axioms`], not at
/// construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CourantStructure {
    pub op: BilinearOp,
    pub pairing: Pairing,
}

impl CourantStructure {
    pub fn new(op: BilinearOp, pairing: Pairing) -> Result<Self> {
        Error::check_dim(op.dim(), pairing.dim())?;
        Ok(CourantStructure { op, pairing })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

/// The adjoint `N* = g⁻¹ Nᵀ g`, the unique map with `⟨NX, Y⟩ = ⟨X, N*Y⟩`.
pub fn adjoint(n: &OneOneTensor, pairing: &Pairing) -> Result<OneOneTensor> {
    Error::check_dim(pairing.dim(), n.dim())?;
    let inv = pairing
        .g
        .inverse()
        .ok_or_else(|| Error::Invariant("pairing is degenerate".into()))?;
    inv.compose(&n.transpose())?.compose(&pairing.g)
}

/// `Some(λ)` when `N + N* = λ I`.
pub fn is_paired(n: &OneOneTensor, pairing: &Pairing) -> Result<Option<Rational>> {
    let delta = n.add(&adjoint(n, pairing)?)?;
    Ok(delta.as_scalar())
}

/// Vectors `e_i` and `e_i + e_j` (i < j): a quadratic form vanishes on all
/// vectors iff it vanishes on these.
pub(crate) fn quadratic_probes(d: usize) -> Vec<(Vec<usize>, Vector)> {
    let mut out: Vec<(Vec<usize>, Vector)> =
        (0..d).map(|i| (vec![i], Vector::basis(d, i))).collect();
    for i in 0..d {
        for j in i + 1..d {
            out.push((vec![i, j], Vector::basis(d, i).add(&Vector::basis(d, j))));
        }
    }
    out
}

fn probe_label(idx: &[usize]) -> String {
    idx.iter().map(|&i| basis_label(i)).collect::<Vec<_>>().join("+")
}

fn split3(t: usize, d: usize) -> (usize, usize, usize) {
    (t / (d * d), (t / d) % d, t % d)
}

/// `⟨X, Y∘Z + Z∘Y⟩ = 0` on basis triples (polarized axiom with zero anchor).
fn axiom_4a(op: &BilinearOp, g: &Pairing) -> CheckReport {
    let d = op.dim();
    let w = first_witness(d * d * d, |t| {
        let (i, j, k) = split3(t, d);
        let (x, y, z) = (Vector::basis(d, i), Vector::basis(d, j), Vector::basis(d, k));
        let v = g.eval(&x, &op.mul(&y, &z).add(&op.mul(&z, &y)));
        (v != int(0)).then(|| {
            Witness::new(
                "ρ(X)⟨Y,Z⟩ = ⟨X, Y∘Z + Z∘Y⟩",
                vec![i, j, k],
                vec![basis_label(i), basis_label(j), basis_label(k)],
                0,
                v,
            )
        })
    });
    CheckReport::from_witness("axiom-4a", w, format!("polarized axiom on {} basis triples", d * d * d))
}

/// `2⟨X, Y∘Y⟩ = ρ(X)⟨Y,Y⟩ = 0`.
fn axiom_4(op: &BilinearOp, g: &Pairing) -> CheckReport {
    let d = op.dim();
    let probes = quadratic_probes(d);
    let w = first_witness(d * probes.len(), |t| {
        let (i, (idx, y)) = (t / probes.len(), &probes[t % probes.len()]);
        let x = Vector::basis(d, i);
        let v = g.eval(&x, &op.mul(y, y));
        (v != int(0)).then(|| {
            let mut indices = vec![i];
            indices.extend(idx);
            Witness::new(
                "ρ(X)⟨Y,Y⟩ = 2⟨X, Y∘Y⟩",
                indices,
                vec![basis_label(i), probe_label(idx)],
                0,
                int(2) * v,
            )
        })
    });
    CheckReport::from_witness(
        "axiom-4",
        w,
        format!("⟨X, Y∘Y⟩ on {} basis X × {} polarization probes Y", d, probes.len()),
    )
}

/// `2⟨X∘Y, Y⟩ = ρ(X)⟨Y,Y⟩ = 0`.
fn axiom_5(op: &BilinearOp, g: &Pairing) -> CheckReport {
    let d = op.dim();
    let probes = quadratic_probes(d);
    let w = first_witness(d * probes.len(), |t| {
        let (i, (idx, y)) = (t / probes.len(), &probes[t % probes.len()]);
        let x = Vector::basis(d, i);
        let v = g.eval(&op.mul(&x, y), y);
        (v != int(0)).then(|| {
            let mut indices = vec![i];
            indices.extend(idx);
            Witness::new(
                "ρ(X)⟨Y,Y⟩ = 2⟨X∘Y, Y⟩",
                indices,
                vec![basis_label(i), probe_label(idx)],
                0,
                int(2) * v,
            )
        })
    });
    CheckReport::from_witness(
        "axiom-5",
        w,
        format!("⟨X∘Y, Y⟩ on {} basis X × {} polarization probes Y", d, probes.len()),
    )
}

/// Invariance `⟨X∘Y, Z⟩ + ⟨Y, X∘Z⟩ = ρ(X)⟨Y,Z⟩ = 0`.
fn invariance_6(op: &BilinearOp, g: &Pairing) -> CheckReport {
    let d = op.dim();
    let w = first_witness(d * d * d, |t| {
        let (i, j, k) = split3(t, d);
        let (x, y, z) = (Vector::basis(d, i), Vector::basis(d, j), Vector::basis(d, k));
        let v = g.eval(&op.mul(&x, &y), &z) + g.eval(&y, &op.mul(&x, &z));
        (v != int(0)).then(|| {
            Witness::new(
                "ρ(X)⟨Y,Z⟩ = ⟨X∘Y,Z⟩ + ⟨Y,X∘Z⟩",
                vec![i, j, k],
                vec![basis_label(i), basis_label(j), basis_label(k)],
                0,
                v,
            )
        })
    });
    CheckReport::from_witness("invariance-6", w, format!("invariance on {} basis triples", d * d * d))
}

/// Pairing axioms (4) and (5) only, for an arbitrary product.
pub fn pairing_axioms(op: &BilinearOp, pairing: &Pairing) -> CheckReport {
    let mut staged = StagedCheck::new("pairing-axioms");
    for stage in [axiom_4(op, pairing), axiom_5(op, pairing)] {
        if let Some(fail) = staged.stage(&stage) {
            return fail;
        }
    }
    staged.finish()
}

/// Polarized form (4a) alone; exposed for the polarization property tests.
pub fn polarized_axiom(op: &BilinearOp, pairing: &Pairing) -> CheckReport {
    axiom_4a(op, pairing)
}

/// Full Courant-axiom check: Leibniz identity, (4a), (4), (5) and the
/// invariance (6), all exhaustively on basis tuples.
pub fn check_courant_axioms(cs: &CourantStructure) -> CheckReport {
    let (op, g) = (&cs.op, &cs.pairing);
    let mut staged = StagedCheck::new("courant-axioms");
    let stages = [
        leibniz_report("leibniz", op),
        axiom_4a(op, g),
        axiom_4(op, g),
        axiom_5(op, g),
        invariance_6(op, g),
    ];
    for stage in &stages {
        if let Some(fail) = staged.stage(stage) {
            return fail;
        }
    }
    staged.finish()
}

/// `X∘ΔZ = Δ(X∘Z)` and `Δ(Y∘Y) = ΔY∘Y` for `Δ = N + N*`, cross-checked
/// against a direct verification of (4) and (5) for the contracted product.
pub fn check_delta_conditions(cs: &CourantStructure, n: &OneOneTensor) -> Result<CheckReport> {
    Error::check_dim(cs.dim(), n.dim())?;
    let d = cs.dim();
    let op = &cs.op;
    let delta = n.add(&adjoint(n, &cs.pairing)?)?;
    let cond9 = first_witness(d * d, |t| {
        let (i, k) = (t / d, t % d);
        let (x, z) = (Vector::basis(d, i), Vector::basis(d, k));
        let lhs = op.mul(&x, &delta.apply_unchecked(&z));
        let rhs = delta.apply_unchecked(&op.mul(&x, &z));
        (lhs != rhs).then(|| {
            Witness::new(
                "X∘ΔZ = Δ(X∘Z)",
                vec![i, k],
                vec![basis_label(i), basis_label(k)],
                lhs,
                rhs,
            )
        })
    });
    let probes = quadratic_probes(d);
    let cond10 = first_witness(probes.len(), |t| {
        let (idx, y) = &probes[t];
        let lhs = delta.apply_unchecked(&op.mul(y, y));
        let rhs = op.mul(&delta.apply_unchecked(y), y);
        (lhs != rhs).then(|| Witness::new("Δ(Y∘Y) = ΔY∘Y", idx.clone(), vec![probe_label(idx)], lhs, rhs))
    });
    let mut staged = StagedCheck::new("delta-conditions");
    let primary = [
        CheckReport::from_witness("delta-9", cond9, format!("X∘ΔZ = Δ(X∘Z) on {} basis pairs", d * d)),
        CheckReport::from_witness(
            "delta-10",
            cond10,
            format!("Δ(Y∘Y) = ΔY∘Y on {} polarization probes", probes.len()),
        ),
    ]
    .iter()
    .find_map(|s| staged.stage(s))
    .unwrap_or_else(|| staged.finish());
    let direct = pairing_axioms(&contract(op, n)?, &cs.pairing);
    Ok(cross_checked(primary, &direct))
}

/// For skew-adjoint `N` with vanishing torsion, `N²` commutes with left
/// multiplication and `N²(Y∘Y) = (N²Y)∘Y`.
pub fn check_n_squared(cs: &CourantStructure, n: &OneOneTensor) -> Result<CheckReport> {
    Error::check_dim(cs.dim(), n.dim())?;
    let d = cs.dim();
    let op = &cs.op;
    let adj = adjoint(n, &cs.pairing)?;
    if adj != n.scale(&int(-1)) {
        return Err(Error::Precondition("N* = −N does not hold".into()));
    }
    let torsion_free = (0..d).all(|i| {
        (0..d).all(|j| torsion(op, n, &Vector::basis(d, i), &Vector::basis(d, j)).is_zero())
    });
    if !torsion_free {
        return Err(Error::Precondition("N has nonzero Nijenhuis torsion".into()));
    }
    let n2 = n.compose(n)?;
    let commute = first_witness(d * d, |t| {
        let (i, j) = (t / d, t % d);
        let (x, y) = (Vector::basis(d, i), Vector::basis(d, j));
        let lhs = op.mul(&x, &n2.apply_unchecked(&y));
        let rhs = n2.apply_unchecked(&op.mul(&x, &y));
        (lhs != rhs).then(|| {
            Witness::new("X∘N²Y = N²(X∘Y)", vec![i, j], vec![basis_label(i), basis_label(j)], lhs, rhs)
        })
    });
    let probes = quadratic_probes(d);
    let square = first_witness(probes.len(), |t| {
        let (idx, y) = &probes[t];
        let lhs = n2.apply_unchecked(&op.mul(y, y));
        let rhs = op.mul(&n2.apply_unchecked(y), y);
        (lhs != rhs).then(|| Witness::new("N²(Y∘Y) = (N²Y)∘Y", idx.clone(), vec![probe_label(idx)], lhs, rhs))
    });
    let paired_note = match is_paired(&n2, &cs.pairing)? {
        Some(l) => format!("N² is paired with λ = {l}"),
        None => "N² is not paired".to_string(),
    };
    let mut staged = StagedCheck::new("n-squared");
    for stage in [
        CheckReport::from_witness("n2-commutes", commute, format!("X∘N²Y = N²(X∘Y) on {} basis pairs", d * d)),
        CheckReport::from_witness(
            "n2-square",
            square,
            format!("N²(Y∘Y) = (N²Y)∘Y on {} probes; {paired_note}", probes.len()),
        ),
    ] {
        if let Some(fail) = staged.stage(&stage) {
            return Ok(fail);
        }
    }
    Ok(staged.finish())
}
