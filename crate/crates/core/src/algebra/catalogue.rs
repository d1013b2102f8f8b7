//! Small verified Leibniz algebras used as fixtures and generators.

use super::bilinear::BilinearOp;

fn build(dim: usize, skew: bool, entries: &[(usize, usize, usize, i64)]) -> BilinearOp {
    let mut all = entries.to_vec();
    if skew {
        all.extend(entries.iter().map(|&(i, j, k, v)| (j, i, k, -v)));
    }
    BilinearOp::from_entries(dim, &all).expect("catalogue entries are in range")
}

pub fn abelian(dim: usize) -> BilinearOp {
    BilinearOp::zero(dim)
}

/// The 2-dimensional non-abelian Lie algebra ("ax+b"): `[e1, e2] = e2`.
pub fn affine_line() -> BilinearOp {
    build(2, true, &[(1, 2, 2, 1)])
}

/// Heisenberg algebra: `[e1, e2] = e3`.
pub fn heisenberg() -> BilinearOp {
    build(3, true, &[(1, 2, 3, 1)])
}

/// `sl(2)` in the basis `(h, e, f)`.
pub fn sl2() -> BilinearOp {
    build(3, true, &[(1, 2, 2, 2), (1, 3, 3, -2), (2, 3, 1, 1)])
}

/// Nilpotent non-Lie Leibniz algebra: `e1∘e1 = e2`.
pub fn leibniz_nilpotent() -> BilinearOp {
    build(2, false, &[(1, 1, 2, 1)])
}

/// Non-nilpotent non-Lie Leibniz algebra: `e1∘e1 = e2`, `e1∘e2 = e2`.
pub fn leibniz_solvable() -> BilinearOp {
    build(2, false, &[(1, 1, 2, 1), (1, 2, 2, 1)])
}

/// Every catalogue entry with a name, dims 2 to 4.
pub fn all() -> Vec<(&'static str, BilinearOp)> {
    vec![
        ("abelian-2", abelian(2)),
        ("abelian-3", abelian(3)),
        ("abelian-4", abelian(4)),
        ("affine-line", affine_line()),
        ("heisenberg", heisenberg()),
        ("sl2", sl2()),
        ("leibniz-nilpotent", leibniz_nilpotent()),
        ("leibniz-solvable", leibniz_solvable()),
        ("affine-line+affine-line", affine_line().direct_sum(&affine_line())),
        ("affine-line+leibniz-solvable", affine_line().direct_sum(&leibniz_solvable())),
        ("leibniz-solvable+abelian-1", leibniz_solvable().direct_sum(&abelian(1))),
        ("heisenberg+abelian-1", heisenberg().direct_sum(&abelian(1))),
    ]
}
