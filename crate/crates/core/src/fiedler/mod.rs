//! Fiedler-like pencils (FPs, proper GFPs, FPRs and GFPRs) of square
//! rational matrices.
//!
//! Elementary matrices, with blocks numbered 1..q:
//! M₀(X) = diag(I, X), M_q(X) = M_{−q}(X) = diag(X, I), and for
//! 1 ≤ i ≤ q−1 the identity with [[X, I], [I, 0]] (M_i) or
//! [[0, I], [I, X]] (M_{−i}) in block rows and columns q−i, q−i+1.
//! M_i^D = M_i(−D_i) for i ≥ 0 and M_{−i}^D = M_{−i}(D_i).
//!
//! Consecutive consecutions at 0 count the indices 1, 2, … met in this
//! order to the right of the 0 of t; consecutive inversions count them to
//! the left. Both are checked against the position of D₀ in the symbolic
//! product.

mod build;
mod permute;
mod symbolic;
mod tuples;

pub use build::{
    build_fiedler_rational, elementary_matrix, elementary_tags, intrinsic_d0_position, trivial_assignments, FiedlerPencil,
};
pub use permute::{
    fiedler_recover_basis, permute_to_extended_kronecker, BlockPermutation, ExtendedKronecker, FiedlerLinearization,
};
pub use symbolic::{Slot, Tag, TagGrid, TagPencil, Term};
pub use tuples::{
    all_fiedler_tuples, all_proper_gfp_tuples, consecutions_inversions_at_zero, Assignments, FiedlerFamily, FiedlerSpec,
    IndexTuple, TupleSet,
};
