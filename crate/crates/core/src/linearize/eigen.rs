//! Eigenvectors of a regular rational matrix recovered from the null
//! spaces of a linearization evaluated at the eigenvalue.

use super::Linearization;
use crate::error::{certification, precondition, Error, Result};
use crate::exactalg::{fmt_rat, Rat};
use crate::minbases::Side;
use crate::polymat::{constant, rat_det, ConstMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct EigenvectorRecovery {
    /// Columns form a basis of the right (or left) null space of G(λ₀).
    pub vectors: ConstMatrix,
    /// False when G(λ₀) is nonsingular and `vectors` is empty.
    pub is_eigenvalue: bool,
}

/// Applies the recovery map of `lin` to a basis of the null space of the
/// pencil at λ₀ and checks that the result spans that of G(λ₀).
pub fn recover_eigenvectors<L: Linearization + ?Sized>(lin: &L, lambda0: &Rat, side: Side) -> Result<EigenvectorRecovery> {
    let g = lin.target();
    if !g.is_square() || rat_det(g)?.is_zero() {
        return precondition("G is not regular");
    }
    let g0 = g.eval(lambda0).map_err(|_| Error::Precondition(format!("{} is a pole of G", fmt_rat(lambda0))))?;
    let l0 = lin.pencil().eval(lambda0);
    let (g0, l0) = match side {
        Side::Right => (g0, l0),
        Side::Left => (g0.transpose(), l0.transpose()),
    };
    let vectors = lin.recovery_map(side).mul(&constant::nullspace(&l0));
    let dim = g0.cols() - constant::rank(&g0);
    if vectors.cols() != dim || constant::rank(&vectors) != dim || !g0.mul(&vectors).is_zero() {
        return certification(format!(
            "recovered {} vectors of rank {} but the null space of G(λ₀) has dimension {dim}",
            vectors.cols(),
            constant::rank(&vectors)
        ));
    }
    Ok(EigenvectorRecovery { vectors, is_eigenvalue: dim > 0 })
}
