//! Dual minimal basis pairs K·Nᵀ = 0 and their unimodular completions.

use crate::error::{precondition, Error, Result};
use crate::exactalg::{int, Degree, Poly};
use crate::minbases::{is_minimal_basis, Side};
use crate::polymat::{constant, unimodular_inverse, ConstMatrix, PolyMatrix};

/// K (r×w, row degrees 1) and N ((w−r)×w) with K·Nᵀ = 0, both minimal
/// bases, completed by a constant K̂ and a polynomial N̂ so that
/// [K; K̂]⁻¹ = [N̂ᵀ Nᵀ].
#[derive(Clone, Debug, PartialEq)]
pub struct DualMinimalBasisPair {
    pub k: PolyMatrix,
    pub n_dual: PolyMatrix,
    pub k_hat: ConstMatrix,
    pub n_hat: PolyMatrix,
}

impl DualMinimalBasisPair {
    /// Completes the pair with the constant K̂ solving K̂·Nᵀ = I
    /// coefficient by coefficient; [K; K̂] is then automatically unimodular.
    pub fn complete(k: PolyMatrix, n_dual: PolyMatrix) -> Result<Self> {
        check_shapes(&k, &n_dual)?;
        let nt = n_dual.transpose();
        let d = nt.degree().finite().unwrap_or(0);
        let coeffs: Vec<ConstMatrix> = (0..=d).map(|i| nt.coeff_matrix(i)).collect();
        let refs: Vec<&ConstMatrix> = coeffs.iter().collect();
        let lhs = ConstMatrix::hstack(&refs)?;
        let s = n_dual.rows();
        let mut rhs = ConstMatrix::zeros(s, lhs.cols());
        rhs.set_block(0, 0, &ConstMatrix::identity(s));
        let k_hat = constant::solve_left(&lhs, &rhs)
            .ok_or_else(|| Error::Precondition("no constant K̂ satisfies K̂·Nᵀ = I".into()))?;
        Self::with_k_hat(k, n_dual, k_hat)
    }

    /// Uses the given K̂ and reads N̂ off the inverse of [K; K̂].
    pub fn with_k_hat(k: PolyMatrix, n_dual: PolyMatrix, k_hat: ConstMatrix) -> Result<Self> {
        check_shapes(&k, &n_dual)?;
        let (r, w) = k.shape();
        if k_hat.shape() != (w - r, w) {
            return Err(Error::Dimension(format!("K̂ must be {}x{w}", w - r)));
        }
        let stacked = PolyMatrix::vstack(&[&k, &PolyMatrix::from_const(&k_hat)])?;
        let inv = unimodular_inverse(&stacked).map_err(|_| Error::Precondition("[K; K̂] is not unimodular".into()))?;
        let n_hat = inv.submatrix(0, w, 0, r).transpose();
        let pair = DualMinimalBasisPair { k, n_dual, k_hat, n_hat };
        pair.certify()?;
        Ok(pair)
    }

    /// Pair with K empty and N = I_w.
    pub fn trivial(w: usize) -> Self {
        DualMinimalBasisPair {
            k: PolyMatrix::zeros(0, w),
            n_dual: PolyMatrix::identity(w),
            k_hat: ConstMatrix::identity(w),
            n_hat: PolyMatrix::zeros(0, w),
        }
    }

    /// Number of columns of K and N.
    pub fn width(&self) -> usize {
        self.k.cols()
    }

    /// Rows of K.
    pub fn k_rows(&self) -> usize {
        self.k.rows()
    }

    /// Rows of N: the size of the block the pair parametrizes.
    pub fn dual_rows(&self) -> usize {
        self.n_dual.rows()
    }

    /// deg N, which is every row degree of N.
    pub fn degree(&self) -> usize {
        self.n_dual.degree().finite().unwrap_or(0)
    }

    /// Every matrix Kronecker-multiplied by I_w.
    pub fn expand(&self, w: usize) -> Self {
        DualMinimalBasisPair {
            k: self.k.kron_identity(w),
            n_dual: self.n_dual.kron_identity(w),
            k_hat: self.k_hat.kron_identity(w),
            n_hat: self.n_hat.kron_identity(w),
        }
    }

    /// [K; K̂]
    pub fn completed(&self) -> PolyMatrix {
        PolyMatrix::vstack(&[&self.k, &PolyMatrix::from_const(&self.k_hat)]).expect("same width")
    }

    /// [N̂ᵀ Nᵀ]
    pub fn completed_inverse(&self) -> PolyMatrix {
        PolyMatrix::hstack(&[&self.n_hat.transpose(), &self.n_dual.transpose()]).expect("same width")
    }

    /// Checks every defining property; the error names the first failure.
    pub fn certify(&self) -> Result<()> {
        check_shapes(&self.k, &self.n_dual)?;
        let (r, w) = self.k.shape();
        if self.k_hat.shape() != (w - r, w) || self.n_hat.shape() != (r, w) {
            return Err(Error::Dimension("completion blocks have the wrong shape".into()));
        }
        if !self.k.mul(&self.n_dual.transpose()).is_zero() {
            return precondition("K·Nᵀ ≠ 0");
        }
        if self.k.row_degrees().iter().any(|&d| d != Degree::Finite(1)) {
            return precondition("K has a row of degree other than 1");
        }
        let nd = self.n_dual.row_degrees();
        if nd.iter().any(|&d| d != nd[0]) {
            return precondition("rows of N have different degrees");
        }
        if !is_minimal_basis(&self.n_dual.transpose(), &self.k.to_rat(), Side::Right)?.passed() {
            return precondition("Nᵀ is not a minimal basis of the null space of K");
        }
        if !is_minimal_basis(&self.k.transpose(), &self.n_dual.to_rat(), Side::Right)?.passed() {
            return precondition("Kᵀ is not a minimal basis of the null space of N");
        }
        if self.completed().mul(&self.completed_inverse()) != PolyMatrix::identity(w) {
            return precondition("[N̂ᵀ Nᵀ] is not the inverse of [K; K̂]");
        }
        Ok(())
    }
}

fn check_shapes(k: &PolyMatrix, n_dual: &PolyMatrix) -> Result<()> {
    let (r, w) = k.shape();
    if n_dual.cols() != w || n_dual.rows() + r != w {
        return Err(Error::Dimension(format!(
            "K is {r}x{w} so N must be {}x{w}, got {}x{}",
            w.saturating_sub(r),
            n_dual.rows(),
            n_dual.cols()
        )));
    }
    Ok(())
}

/// k×(k+1) pencil with rows [… −1 λ …].
pub fn l_pencil(k: usize) -> PolyMatrix {
    let mut l = PolyMatrix::zeros(k, k + 1);
    for i in 0..k {
        l[(i, i)] = Poly::from_ints(&[-1]);
        l[(i, i + 1)] = Poly::x();
    }
    l
}

/// [λ^k ⋯ λ 1]
pub fn lambda_row(k: usize) -> PolyMatrix {
    PolyMatrix::from_fn(1, k + 1, |_, j| Poly::monomial(int(1), k - j))
}

/// (L_k ⊗ I_w, Λ_k ⊗ I_w) completed with K̂ = e_{k+1}ᵀ ⊗ I_w.
pub fn block_kronecker_pair(k_deg: usize, width: usize) -> DualMinimalBasisPair {
    let mut k_hat = ConstMatrix::zeros(1, k_deg + 1);
    k_hat[(0, k_deg)] = int(1);
    // column j of N̂ᵀ is −(λ^j, …, λ, 1, 0, …, 0)
    let n_hat = PolyMatrix::from_fn(k_deg, k_deg + 1, |j, i| {
        if i <= j {
            Poly::monomial(int(-1), j - i)
        } else {
            Poly::zero()
        }
    });
    DualMinimalBasisPair { k: l_pencil(k_deg), n_dual: lambda_row(k_deg), k_hat, n_hat }.expand(width)
}
