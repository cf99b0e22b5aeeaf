//! Strong linearizations of rational matrices built from dual minimal
//! basis pairs (block minimal bases, block Kronecker, M1, extended M1 and
//! M2 pencils) and the maps carrying minimal bases and eigenvectors
//! between a rational matrix and its linearizations.

mod body;
mod eigen;
mod m12;
mod pairs;
mod sbmb;

pub use body::{antidiagonal_sums, default_body, satisfies_as_condition};
pub use eigen::{recover_eigenvectors, EigenvectorRecovery};
pub use m12::{
    block_transpose, complete_to_basis, extended_m1_build, m1_build, m1_recover, m2_build, m2_recover, Family,
    OrthogonalRecurrence, TransformedSbmb,
};
pub use pairs::{block_kronecker_pair, l_pencil, lambda_row, DualMinimalBasisPair};
pub use sbmb::{build_sbmb, lift_basis_to_sbmb, recover_basis_from_sbmb, transfer_of_sbmb, SbmbLinearization};

use crate::error::{certification, precondition, Error, Result};
use crate::minbases::{certify, MinimalBasis, Side};
use crate::polymat::{ConstMatrix, Pencil, PolyMatrix, RatMatrix};
use crate::sysmat::{minimal_realization, StateSpaceRealization};

/// G = D + C(λE − A)⁻¹B with the realization of the strictly proper part
/// minimal.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizedMatrix {
    pub g: RatMatrix,
    pub poly_part: PolyMatrix,
    pub realization: StateSpaceRealization,
}

impl RealizedMatrix {
    pub fn new(g: &RatMatrix) -> Result<Self> {
        let (poly_part, sp) = g.split_polynomial_part();
        let realization = minimal_realization(&sp)?;
        Ok(RealizedMatrix { g: g.clone(), poly_part, realization })
    }

    /// Uses a caller-supplied realization after checking that it is
    /// minimal and reproduces the strictly proper part.
    pub fn with_realization(g: &RatMatrix, realization: StateSpaceRealization) -> Result<Self> {
        let (poly_part, sp) = g.split_polynomial_part();
        if realization.c.rows() != g.rows() || realization.b.cols() != g.cols() {
            return Err(Error::Dimension("realization does not match the size of G".into()));
        }
        if realization.transfer() != sp {
            return precondition("realization does not reproduce the strictly proper part");
        }
        let n = realization.n();
        if realization.controllability_rank() != n || realization.observability_rank() != n {
            return precondition("realization is not minimal");
        }
        Ok(RealizedMatrix { g: g.clone(), poly_part, realization })
    }

    /// Gᵀ realized by (Aᵀ, Cᵀ, Bᵀ, Eᵀ).
    pub fn transpose(&self) -> Self {
        let r = &self.realization;
        RealizedMatrix {
            g: self.g.transpose(),
            poly_part: self.poly_part.transpose(),
            realization: StateSpaceRealization {
                a: r.a.transpose(),
                b: r.c.transpose(),
                c: r.b.transpose(),
                e: r.e.transpose(),
            },
        }
    }

    pub fn n(&self) -> usize {
        self.realization.n()
    }
}

/// A strong linearization whose minimal bases and eigenvectors map to
/// those of G by a constant matrix.
pub trait Linearization {
    fn pencil(&self) -> &Pencil;

    /// The rational matrix being linearized.
    fn target(&self) -> &RatMatrix;

    /// Constant R such that R·H is a minimal basis of G on `side` whenever
    /// H is one of the pencil.
    fn recovery_map(&self, side: Side) -> ConstMatrix;

    /// Amount added to each minimal index of G on `side`.
    fn index_shift(&self, side: Side) -> usize;

    /// Minimal basis of the pencil built from one of G.
    fn lift_basis(&self, basis_of_g: &MinimalBasis) -> Result<MinimalBasis>;
}

/// Recovers a minimal basis of G from one of the pencil and checks the
/// index shift.
pub fn recover_basis<L: Linearization + ?Sized>(lin: &L, basis_of_l: &MinimalBasis) -> Result<MinimalBasis> {
    let side = basis_of_l.side;
    certify(basis_of_l.basis.clone(), &lin.pencil().to_rat(), side)?;
    let map = PolyMatrix::from_const(&lin.recovery_map(side));
    let out = certify(map.mul(&basis_of_l.basis), lin.target(), side)?;
    check_shift(&out, basis_of_l, lin.index_shift(side))?;
    Ok(out)
}

/// Certifies a lifted basis for the pencil and checks the index shift.
pub(crate) fn certify_lift<L: Linearization + ?Sized>(
    lin: &L,
    basis_of_g: &MinimalBasis,
    lifted: PolyMatrix,
) -> Result<MinimalBasis> {
    let out = certify(lifted, &lin.pencil().to_rat(), basis_of_g.side)?;
    check_shift(basis_of_g, &out, lin.index_shift(basis_of_g.side))?;
    Ok(out)
}

fn check_shift(of_g: &MinimalBasis, of_l: &MinimalBasis, shift: usize) -> Result<()> {
    let mut expect: Vec<usize> = of_g.indices.iter().map(|e| e + shift).collect();
    let mut found = of_l.indices.clone();
    expect.sort_unstable();
    found.sort_unstable();
    if expect != found {
        return certification(format!(
            "indices {found:?} of the pencil are not those of G {:?} shifted by {shift}",
            of_g.indices
        ));
    }
    Ok(())
}
