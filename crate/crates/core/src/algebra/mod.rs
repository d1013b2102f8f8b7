//! Finite-dimensional Leibniz algebras, (1,1)-tensors and their contractions.

pub mod bilinear;
pub mod catalogue;
pub mod linalg;
pub mod product;

pub use bilinear::{
    apply, classify_tensor, coboundary_table, compatibility_defect, contract, is_leibniz,
    jacobi_defect, jacobi_table, leibniz_coboundary_on_torsion, nijenhuis_torsion, pencil,
    BilinearOp, Classification, TensorClass, TrilinearMap,
};
pub use linalg::{in_span, rank, OneOneTensor, Vector};
