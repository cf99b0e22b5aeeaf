//! Polynomial and rational matrices, unimodular equivalence and the
//! finite and infinite Smith–McMillan structure.

pub mod constant;
mod elim;
mod mat;
mod pencil;
mod smith;

pub use elim::{inverse, poly_det, poly_rank, rank, rat_det, solve, solve_left, unimodular_inverse};
pub use mat::{kron, unit_vector, ConstMatrix, Mat, PolyMatrix, RatMatrix};
pub use pencil::Pencil;
pub use smith::{
    infinity_structure, invariant_factors, is_biproper, is_unimodular, least_order, mcmillan_degree, smith_form,
    smith_mcmillan_chains, smith_mcmillan_finite, InfinityStructure, SmithForm, SmithMcMillanForm,
};
