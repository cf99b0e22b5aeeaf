//! M1, extended M1 and M2 strong linearizations: block minimal bases
//! linearizations in a polynomial basis given by a three-term recurrence,
//! multiplied by a nonsingular constant matrix on one side.

use super::pairs::DualMinimalBasisPair;
use super::sbmb::{build_sbmb, SbmbLinearization};
use super::{certify_lift, recover_basis, Linearization, RealizedMatrix};
use crate::error::{precondition, Error, Result};
use crate::exactalg::{int, rat, Poly, Rat, Ring};
use crate::minbases::{minimal_basis, MinimalBasis, Side};
use crate::polymat::{constant, unit_vector, ConstMatrix, Mat, Pencil, PolyMatrix, RatMatrix};
use serde::{Deserialize, Serialize};

/// α_j φ_{j+1} = (λ − β_j) φ_j − γ_j φ_{j−1}, φ₋₁ = 0, φ₀ = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalRecurrence {
    pub alpha: Vec<Rat>,
    pub beta: Vec<Rat>,
    pub gamma: Vec<Rat>,
}

impl OrthogonalRecurrence {
    pub fn new(alpha: Vec<Rat>, beta: Vec<Rat>, gamma: Vec<Rat>) -> Result<Self> {
        if alpha.len() != beta.len() || alpha.len() != gamma.len() {
            return Err(Error::Dimension("α, β and γ must have the same length".into()));
        }
        if alpha.iter().any(|a| a.is_zero()) {
            return precondition("some α_j is zero");
        }
        Ok(OrthogonalRecurrence { alpha, beta, gamma })
    }

    /// φ_j = λ^j
    pub fn monomial(len: usize) -> Self {
        OrthogonalRecurrence { alpha: vec![int(1); len], beta: vec![int(0); len], gamma: vec![int(0); len] }
    }

    /// Chebyshev polynomials of the first kind: T₁ = λ, T_{j+1} = 2λT_j − T_{j−1}.
    pub fn chebyshev(len: usize) -> Self {
        let alpha = (0..len).map(|j| if j == 0 { int(1) } else { rat(1, 2) }).collect();
        let gamma = (0..len).map(|j| if j == 0 { int(0) } else { rat(1, 2) }).collect();
        OrthogonalRecurrence { alpha, beta: vec![int(0); len], gamma }
    }

    /// Largest k for which φ_k is defined.
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    fn check_order(&self, k: usize) -> Result<()> {
        if k > self.len() {
            return precondition(format!("recurrence defines φ_j only up to j = {}, need {k}", self.len()));
        }
        Ok(())
    }

    /// φ₀, …, φ_k
    pub fn basis(&self, k: usize) -> Result<Vec<Poly>> {
        self.check_order(k)?;
        let mut phi = vec![Poly::one()];
        for j in 0..k {
            let prev = if j == 0 { Poly::zero() } else { phi[j - 1].clone() };
            let next = &(&Poly::linear_root(self.beta[j].clone()) * &phi[j]) - &prev.scale(&self.gamma[j]);
            phi.push(next.scale(&(int(1) / &self.alpha[j])));
        }
        Ok(phi)
    }

    /// Φ_k = [φ_{k−1} ⋯ φ₁ φ₀]ᵀ
    pub fn phi_vector(&self, k: usize) -> Result<PolyMatrix> {
        let phi = self.basis(k.saturating_sub(1))?;
        Ok(Mat::from_fn(k, 1, |i, _| phi[k - 1 - i].clone()))
    }

    /// D_0, …, D_k with D = Σ D_j φ_j, k = deg D.
    pub fn coefficients(&self, d: &PolyMatrix) -> Result<Vec<ConstMatrix>> {
        let k = d.degree().finite().ok_or_else(|| Error::Precondition("D is zero".into()))?;
        let phi = self.basis(k)?;
        let mut rest = d.clone();
        let mut out = vec![ConstMatrix::zeros(d.rows(), d.cols()); k + 1];
        for j in (0..=k).rev() {
            let lead = phi[j].coeff(j);
            let cj = rest.coeff_matrix(j).scale(&(int(1) / &lead));
            rest = rest.sub(&PolyMatrix::from_const(&cj).map(|c| &phi[j] * c));
            out[j] = cj;
        }
        debug_assert!(rest.is_zero());
        Ok(out)
    }

    /// Σ D_j φ_j
    pub fn expand(&self, coeffs: &[ConstMatrix]) -> Result<PolyMatrix> {
        let phi = self.basis(coeffs.len().saturating_sub(1))?;
        let (r, c) = coeffs.first().map(|m| m.shape()).unwrap_or((0, 0));
        Ok(coeffs.iter().zip(&phi).fold(PolyMatrix::zeros(r, c), |acc, (cj, p)| {
            acc.add(&PolyMatrix::from_const(cj).map(|x| p * x))
        }))
    }

    /// (k−1)×k pencil M_Φ with M_Φ·Φ_k = 0.
    pub fn m_phi(&self, k: usize) -> Result<PolyMatrix> {
        self.check_order(k.saturating_sub(1))?;
        let mut out = PolyMatrix::zeros(k.saturating_sub(1), k);
        for i in 0..k.saturating_sub(1) {
            let j = k - 2 - i;
            out[(i, i)] = Poly::constant(-self.alpha[j].clone());
            out[(i, i + 1)] = Poly::linear_root(self.beta[j].clone());
            if i + 2 < k {
                out[(i, i + 2)] = Poly::constant(-self.gamma[j].clone());
            }
        }
        Ok(out)
    }

    /// m_Φ^D = [((λ−β_{k−1})/α_{k−1})D_k + D_{k−1}, D_{k−2} − (γ_{k−1}/α_{k−1})D_k, D_{k−3}, …, D_0]
    pub fn m_phi_d(&self, d: &PolyMatrix) -> Result<PolyMatrix> {
        let dk = self.coefficients(d)?;
        let k = dk.len() - 1;
        if k < 2 {
            return precondition("degree of D must be at least 2");
        }
        let (p, m) = d.shape();
        let (a, b, g) = (&self.alpha[k - 1], &self.beta[k - 1], &self.gamma[k - 1]);
        let lead = dk[k].scale(&(int(1) / a));
        let mut out = PolyMatrix::zeros(p, k * m);
        let first = PolyMatrix::from_coeff_matrices(&[dk[k - 1].sub(&lead.scale(b)), lead.clone()]);
        out.set_block(0, 0, &first);
        out.set_block(0, m, &PolyMatrix::from_const(&dk[k - 2].sub(&lead.scale(g))));
        for i in 2..k {
            out.set_block(0, i * m, &PolyMatrix::from_const(&dk[k - 1 - i]));
        }
        Ok(out)
    }

    /// F_Φ^D = [m_Φ^D; M_Φ ⊗ I_m]
    pub fn f_phi_d(&self, d: &PolyMatrix) -> Result<PolyMatrix> {
        let k = d.degree().finite().unwrap_or(0);
        PolyMatrix::vstack(&[&self.m_phi_d(d)?, &self.m_phi(k)?.kron_identity(d.cols())])
    }

    /// (M_Φ, Φ_kᵀ) completed with K̂ = e_kᵀ.
    pub fn dual_pair(&self, k: usize) -> Result<DualMinimalBasisPair> {
        DualMinimalBasisPair::with_k_hat(self.m_phi(k)?, self.phi_vector(k)?.transpose(), unit_vector(k, k - 1).transpose())
    }
}

/// Swaps the block grid of a matrix made of rb×cb blocks, keeping each
/// block as is.
pub fn block_transpose<T: Ring>(q: &Mat<T>, rb: usize, cb: usize) -> Mat<T> {
    let (gr, gc) = (q.rows() / rb, q.cols() / cb);
    let mut out = Mat::zeros(gc * rb, gr * cb);
    for i in 0..gr {
        for j in 0..gc {
            out.set_block(j * rb, i * cb, &q.submatrix(i * rb, (i + 1) * rb, j * cb, (j + 1) * cb));
        }
    }
    out
}

/// Unit vectors completing the column v to a basis, as a k×(k−1) matrix.
pub fn complete_to_basis(v: &[Rat]) -> Result<ConstMatrix> {
    let k = v.len();
    let mut basis = Mat::from_vec(k, 1, v.to_vec());
    if constant::rank(&basis) == 0 {
        return precondition("v is zero");
    }
    for i in 0..k {
        let cand = ConstMatrix::hstack(&[&basis, &unit_vector(k, i)])?;
        if constant::rank(&cand) == cand.cols() {
            basis = cand;
        }
    }
    Ok(basis.submatrix(0, k, 1, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    M1,
    ExtendedM1,
    M2,
}

/// X·L·Y for a block minimal bases linearization L and nonsingular
/// constant X, Y (one of them is the identity for the M families).
#[derive(Clone, Debug, PartialEq)]
pub struct TransformedSbmb {
    pub family: Family,
    pub base: SbmbLinearization,
    pub left: ConstMatrix,
    pub right: ConstMatrix,
    pub pencil: Pencil,
    /// Degree of the polynomial part.
    pub k: usize,
}

impl Linearization for TransformedSbmb {
    fn pencil(&self) -> &Pencil {
        &self.pencil
    }

    fn target(&self) -> &RatMatrix {
        &self.base.source.g
    }

    fn recovery_map(&self, side: Side) -> ConstMatrix {
        match side {
            Side::Right => self.base.recovery_map(side).mul(&self.right),
            Side::Left => self.base.recovery_map(side).mul(&self.left.transpose()),
        }
    }

    fn index_shift(&self, side: Side) -> usize {
        self.base.index_shift(side)
    }

    fn lift_basis(&self, basis_of_g: &MinimalBasis) -> Result<MinimalBasis> {
        let lifted = self.base.lift_basis(basis_of_g)?.basis;
        let undo = match basis_of_g.side {
            Side::Right => constant::inverse(&self.right)?,
            Side::Left => constant::inverse(&self.left)?.transpose(),
        };
        certify_lift(self, basis_of_g, PolyMatrix::from_const(&undo).mul(&lifted))
    }
}

fn degree_of(source: &RealizedMatrix) -> Result<usize> {
    let g = &source.g;
    if !g.is_square() {
        return Err(Error::NotSquare { rows: g.rows(), cols: g.cols() });
    }
    match source.poly_part.degree().finite() {
        Some(k) if k >= 2 => Ok(k),
        _ => precondition("polynomial part must have degree at least 2"),
    }
}

fn column(v: &[Rat]) -> ConstMatrix {
    Mat::from_vec(v.len(), 1, v.to_vec())
}

#[allow(clippy::too_many_arguments)]
fn premultiplied(
    family: Family,
    source: &RealizedMatrix,
    pair: DualMinimalBasisPair,
    body: &PolyMatrix,
    v: &[Rat],
    j_mat: &ConstMatrix,
    t_mat: &ConstMatrix,
    s_mat: &ConstMatrix,
) -> Result<TransformedSbmb> {
    let k = degree_of(source)?;
    let m = source.g.cols();
    if v.len() != k || j_mat.shape() != (k * m, (k - 1) * m) {
        return Err(Error::Dimension(format!("v must have length {k} and J be {}x{}", k * m, (k - 1) * m)));
    }
    let low = ConstMatrix::hstack(&[&column(v).kron_identity(m), j_mat])?;
    if !constant::is_nonsingular(&low) {
        return precondition("[v⊗I, J] is singular");
    }
    let base = build_sbmb(source, pair, DualMinimalBasisPair::trivial(m), body, t_mat, s_mat)?;
    let n = source.n();
    let left = ConstMatrix::block_diag(&[&ConstMatrix::identity(n), &low]);
    let pencil = base.pencil.left_mul(&left);
    let right = ConstMatrix::identity(pencil.cols());
    Ok(TransformedSbmb { family, base, left, right, pencil, k })
}

/// M1-strong linearization diag(I, [v⊗I, J])·L with
/// L = [[T(λE−A)S, [0 ⋯ TB]], [[−CS; 0], F_Φ^D]].
pub fn m1_build(
    source: &RealizedMatrix,
    rec: &OrthogonalRecurrence,
    v: &[Rat],
    j_mat: &ConstMatrix,
    t_mat: &ConstMatrix,
    s_mat: &ConstMatrix,
) -> Result<TransformedSbmb> {
    let k = degree_of(source)?;
    let m = source.g.cols();
    let pair = rec.dual_pair(k)?.expand(m);
    let body = rec.m_phi_d(&source.poly_part)?;
    premultiplied(Family::M1, source, pair, &body, v, j_mat, t_mat, s_mat)
}

/// Extended M1 linearization for a degree-graded basis Ψ described by a
/// dual pencil M_Ψ and a body with m_Ψ^D·(Ψ_k ⊗ I) = D.
#[allow(clippy::too_many_arguments)]
pub fn extended_m1_build(
    source: &RealizedMatrix,
    m_psi: &PolyMatrix,
    m_psi_body: &PolyMatrix,
    w: &[Rat],
    v: &[Rat],
    j_mat: &ConstMatrix,
    t_mat: &ConstMatrix,
    s_mat: &ConstMatrix,
) -> Result<TransformedSbmb> {
    let k = degree_of(source)?;
    let m = source.g.cols();
    if m_psi.shape() != (k - 1, k) || w.len() != k {
        return Err(Error::Dimension(format!("M_Ψ must be {}x{k} and w of length {k}", k - 1)));
    }
    let kernel = minimal_basis(&m_psi.to_rat(), Side::Right);
    if kernel.len() != 1 {
        return precondition("M_Ψ does not have full row rank");
    }
    let psi = kernel.basis;
    let wpsi = (0..k).fold(Poly::zero(), |acc, i| &acc + &psi[(i, 0)].scale(&w[i]));
    if !wpsi.is_constant() || wpsi.is_zero() {
        return precondition("[M_Ψ; wᵀ] is not unimodular");
    }
    let psi = psi.scale_rat(&(int(1) / wpsi.coeff(0)));
    if (0..k).any(|i| psi[(i, 0)].deg() != Some(k - 1 - i)) {
        return precondition("the basis dual to M_Ψ is not degree graded");
    }
    let pair = DualMinimalBasisPair::with_k_hat(m_psi.clone(), psi.transpose(), column(w).transpose())?.expand(m);
    premultiplied(Family::ExtendedM1, source, pair, m_psi_body, v, j_mat, t_mat, s_mat)
}

/// M2-strong linearization 𝕃·diag(I, [wᵀ⊗I; J^𝓑]) with
/// 𝕃 = [[T(λE−A)S, [TB 0]], [[0; −CS], F_Φ^{D,𝓑}]]. `j_block` is J^𝓑.
pub fn m2_build(
    source: &RealizedMatrix,
    rec: &OrthogonalRecurrence,
    w: &[Rat],
    j_block: &ConstMatrix,
    t_mat: &ConstMatrix,
    s_mat: &ConstMatrix,
) -> Result<TransformedSbmb> {
    let k = degree_of(source)?;
    let m = source.g.cols();
    if w.len() != k || j_block.shape() != ((k - 1) * m, k * m) {
        return Err(Error::Dimension(format!("w must have length {k} and J^B be {}x{}", (k - 1) * m, k * m)));
    }
    let low = ConstMatrix::vstack(&[&column(w).transpose().kron_identity(m), j_block])?;
    if !constant::is_nonsingular(&low) {
        return precondition("[wᵀ⊗I; J^B] is singular");
    }
    let pair = rec.dual_pair(k)?.expand(m);
    let body = block_transpose(&rec.m_phi_d(&source.poly_part)?, m, m);
    let base = build_sbmb(source, DualMinimalBasisPair::trivial(m), pair, &body, t_mat, s_mat)?;
    let n = source.n();
    let right = ConstMatrix::block_diag(&[&ConstMatrix::identity(n), &low]);
    let pencil = base.pencil.right_mul(&right);
    let left = ConstMatrix::identity(pencil.rows());
    Ok(TransformedSbmb { family: Family::M2, base, left, right, pencil, k })
}

fn check_family(lin: &TransformedSbmb, allowed: &[Family]) -> Result<()> {
    if !allowed.contains(&lin.family) {
        return precondition(format!("expected one of {allowed:?}, got {:?}", lin.family));
    }
    Ok(())
}

/// Right: the last m rows. Left: (vᵀ⊗I) applied to the rows below the state.
pub fn m1_recover(lin: &TransformedSbmb, basis_of_l: &MinimalBasis) -> Result<MinimalBasis> {
    check_family(lin, &[Family::M1, Family::ExtendedM1])?;
    recover_basis(lin, basis_of_l)
}

/// Right: (wᵀ⊗I) applied to the rows below the state. Left: the last m rows.
pub fn m2_recover(lin: &TransformedSbmb, basis_of_l: &MinimalBasis) -> Result<MinimalBasis> {
    check_family(lin, &[Family::M2])?;
    recover_basis(lin, basis_of_l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RatFn;
    use crate::fixtures::{random_square, rng};
    use crate::linearize::SbmbLinearization;
    use proptest::prelude::*;

    fn ident(n: usize) -> ConstMatrix {
        ConstMatrix::identity(n)
    }

    fn e(k: usize, i: usize) -> Vec<Rat> {
        (0..k).map(|j| if j == i { int(1) } else { int(0) }).collect()
    }

    fn scalar(g: &[&[i64]]) -> RealizedMatrix {
        let rows: Vec<&[&[i64]]> = g.iter().map(std::slice::from_ref).collect();
        RealizedMatrix::new(&PolyMatrix::from_ints(&rows).to_rat()).unwrap()
    }

    #[test]
    fn monomial_quadratic_formulas() {
        let rec = OrthogonalRecurrence::monomial(4);
        let d = PolyMatrix::from_ints(&[&[&[1, 2, 3]]]);
        assert_eq!(rec.m_phi_d(&d).unwrap(), PolyMatrix::from_ints(&[&[&[2, 3], &[1]]]));
        assert_eq!(rec.m_phi(2).unwrap(), PolyMatrix::from_ints(&[&[&[-1], &[0, 1]]]));
    }

    #[test]
    fn chebyshev_change_of_basis() {
        let rec = OrthogonalRecurrence::chebyshev(5);
        let phi = rec.basis(3).unwrap();
        assert_eq!(phi[2], Poly::from_ints(&[-1, 0, 2]));
        assert_eq!(phi[3], Poly::from_ints(&[0, -3, 0, 4]));
        let d = PolyMatrix::from_ints(&[&[&[0, 0, 1]]]);
        let c = rec.coefficients(&d).unwrap();
        assert_eq!(c[2], ConstMatrix::from_ints(&[&[1]]).scale(&rat(1, 2)));
        assert_eq!(c[0], ConstMatrix::from_ints(&[&[1]]).scale(&rat(1, 2)));
        assert_eq!(rec.expand(&c).unwrap(), d);
    }

    #[test]
    fn phi_pencil_is_dual() {
        let rec = OrthogonalRecurrence::new(vec![int(2), int(3), rat(1, 2)], vec![int(1), int(-1), int(0)], vec![
            int(5),
            int(1),
            int(2),
        ])
        .unwrap();
        let pair = rec.dual_pair(3).unwrap();
        assert!(pair.k.mul(&pair.n_dual.transpose()).is_zero());
        let d = PolyMatrix::from_ints(&[&[&[1, 0, 0, 1], &[0, 1]], &[&[2], &[1, 1, 1, 1]]]);
        let f = rec.m_phi_d(&d).unwrap();
        assert_eq!(f.mul(&rec.phi_vector(3).unwrap().kron_identity(2)), d);
    }

    #[test]
    fn monomial_m1_is_block_kronecker() {
        let src = scalar(&[&[1, 2, 3, 4]]);
        let rec = OrthogonalRecurrence::monomial(3);
        let j = complete_to_basis(&e(3, 0)).unwrap();
        let lin = m1_build(&src, &rec, &e(3, 0), &j, &ident(0), &ident(0)).unwrap();
        let kron = SbmbLinearization::block_kronecker(&src, 2, 0).unwrap();
        assert_eq!(lin.pencil, kron.pencil);
    }

    #[test]
    fn right_blocks_are_phi_multiples() {
        // G = [[λ², λ³], [λ², λ³]] has right index 1 and left index 0
        let g = PolyMatrix::from_ints(&[&[&[0, 0, 1], &[0, 0, 0, 1]], &[&[0, 0, 1], &[0, 0, 0, 1]]]).to_rat();
        let src = RealizedMatrix::new(&g).unwrap();
        let rec = OrthogonalRecurrence::chebyshev(3);
        let v = vec![int(1), int(1), int(2)];
        let j = complete_to_basis(&v).unwrap().kron_identity(2);
        let lin = m1_build(&src, &rec, &v, &j, &ident(0), &ident(0)).unwrap();
        let bl = minimal_basis(&lin.pencil.to_rat(), Side::Right);
        assert_eq!(bl.indices, vec![1 + 2]);
        let h = m1_recover(&lin, &bl).unwrap();
        let phi = rec.basis(2).unwrap();
        for i in 0..3 {
            let block = bl.basis.submatrix(2 * i, 2 * i + 2, 0, 1);
            assert_eq!(block, h.basis.map(|x| x * &phi[2 - i]));
        }
        let left = m1_recover(&lin, &minimal_basis(&lin.pencil.to_rat(), Side::Left)).unwrap();
        assert_eq!(left.indices, vec![0]);
    }

    #[test]
    fn left_recovery_with_first_unit_vector() {
        let g = PolyMatrix::from_ints(&[&[&[0, 0, 1], &[0, 0, 1]], &[&[0, 0, 0, 1], &[0, 0, 0, 1]]]).to_rat();
        let src = RealizedMatrix::new(&g).unwrap();
        let rec = OrthogonalRecurrence::monomial(3);
        let j = complete_to_basis(&e(3, 0)).unwrap().kron_identity(2);
        let lin = m1_build(&src, &rec, &e(3, 0), &j, &ident(0), &ident(0)).unwrap();
        let map = lin.recovery_map(Side::Left);
        assert_eq!(map, ConstMatrix::hstack(&[&ident(2), &ConstMatrix::zeros(2, 4)]).unwrap());
    }

    #[test]
    fn m1_agrees_with_premultiplied_sbmb() {
        let f = RatFn::new(Poly::from_ints(&[1, 0, 0, 1]), Poly::from_ints(&[-1, 1])).unwrap();
        let g = Mat::from_vec(2, 2, vec![f.clone(), f.clone(), RatFn::from_poly(Poly::x()), RatFn::from_poly(Poly::x())]);
        let src = RealizedMatrix::new(&g).unwrap();
        let rec = OrthogonalRecurrence::monomial(3);
        let v = vec![int(2), int(-1)];
        let j = complete_to_basis(&v).unwrap().kron_identity(2);
        let n = src.n();
        let lin = m1_build(&src, &rec, &v, &j, &ident(n), &ident(n)).unwrap();
        let kron = SbmbLinearization::block_kronecker(&src, 1, 0).unwrap();
        assert_eq!(lin.base.pencil, kron.pencil);
        for side in [Side::Right, Side::Left] {
            let bl = minimal_basis(&lin.pencil.to_rat(), side);
            let direct = m1_recover(&lin, &bl).unwrap();
            let through = match side {
                Side::Right => bl.basis.clone(),
                Side::Left => PolyMatrix::from_const(&lin.left.transpose()).mul(&bl.basis),
            };
            let via = recover_basis(&kron, &MinimalBasis::from_columns(side, through)).unwrap();
            assert_eq!(direct.basis, via.basis);
        }
    }

    #[test]
    fn extended_with_last_unit_vector_matches_m1() {
        let src = scalar(&[&[0, 1, 1, 2]]);
        let rec = OrthogonalRecurrence::chebyshev(3);
        let v = vec![int(1), int(0), int(1)];
        let j = complete_to_basis(&v).unwrap();
        let m1 = m1_build(&src, &rec, &v, &j, &ident(0), &ident(0)).unwrap();
        let body = rec.m_phi_d(&src.poly_part).unwrap();
        let ext =
            extended_m1_build(&src, &rec.m_phi(3).unwrap(), &body, &e(3, 2), &v, &j, &ident(0), &ident(0)).unwrap();
        assert_eq!(ext.pencil, m1.pencil);
    }

    #[test]
    fn extended_with_monomial_dual_pencil() {
        let src = scalar(&[&[1, 1, 1]]);
        let rec = OrthogonalRecurrence::monomial(2);
        let j = complete_to_basis(&e(2, 0)).unwrap();
        let m1 = m1_build(&src, &rec, &e(2, 0), &j, &ident(0), &ident(0)).unwrap();
        let body = PolyMatrix::from_ints(&[&[&[1, 1], &[1]]]);
        let ext = extended_m1_build(&src, &crate::linearize::l_pencil(1), &body, &e(2, 1), &e(2, 0), &j, &ident(0), &ident(0))
            .unwrap();
        assert_eq!(ext.pencil, m1.pencil);
    }

    #[test]
    fn extended_refuses_non_dual_pencil() {
        let src = scalar(&[&[1, 1, 1]]);
        let j = complete_to_basis(&e(2, 0)).unwrap();
        let body = PolyMatrix::from_ints(&[&[&[1, 1], &[1]]]);
        let bad = PolyMatrix::from_ints(&[&[&[-1], &[0, 0, 1]]]);
        assert!(extended_m1_build(&src, &bad, &body, &e(2, 1), &e(2, 0), &j, &ident(0), &ident(0)).is_err());
        // wᵀΨ is not constant
        let l1 = crate::linearize::l_pencil(1);
        assert!(extended_m1_build(&src, &l1, &body, &e(2, 0), &e(2, 0), &j, &ident(0), &ident(0)).is_err());
    }

    #[test]
    fn block_transpose_is_involution() {
        let f = OrthogonalRecurrence::monomial(3)
            .f_phi_d(&PolyMatrix::from_ints(&[&[&[1, 0, 0, 1], &[2]], &[&[0, 1], &[1, 1]]]))
            .unwrap();
        let b = block_transpose(&f, 2, 2);
        assert_eq!(b.shape(), (f.cols(), f.rows()));
        assert_eq!(block_transpose(&b, 2, 2), f);
    }

    #[test]
    fn singular_premultiplier_refused() {
        let src = scalar(&[&[1, 2, 3]]);
        let rec = OrthogonalRecurrence::monomial(2);
        let j = ConstMatrix::from_ints(&[&[1], &[0]]);
        assert!(m1_build(&src, &rec, &e(2, 0), &j, &ident(0), &ident(0)).is_err());
        let low = scalar(&[&[1, 2]]);
        assert!(m1_build(&low, &rec, &e(1, 0), &ConstMatrix::zeros(1, 0), &ident(0), &ident(0)).is_err());
    }

    #[test]
    fn m2_right_indices_unchanged() {
        let g = PolyMatrix::from_ints(&[&[&[0, 0, 1], &[0, 0, 0, 1]], &[&[0, 0, 1], &[0, 0, 0, 1]]]).to_rat();
        let src = RealizedMatrix::new(&g).unwrap();
        let rec = OrthogonalRecurrence::monomial(3);
        let w = vec![int(0), int(1), int(1)];
        let jb = complete_to_basis(&w).unwrap().transpose().kron_identity(2);
        let lin = m2_build(&src, &rec, &w, &jb, &ident(0), &ident(0)).unwrap();
        let right = minimal_basis(&lin.pencil.to_rat(), Side::Right);
        assert_eq!(right.indices, vec![1]);
        assert_eq!(m2_recover(&lin, &right).unwrap().indices, vec![1]);
        let left = minimal_basis(&lin.pencil.to_rat(), Side::Left);
        assert_eq!(left.indices, vec![2]);
        assert!(m1_recover(&lin, &left).is_err());
    }

    #[test]
    fn m2_of_transpose_is_transposed_m1() {
        let f = RatFn::new(Poly::from_ints(&[2, 1]), Poly::from_ints(&[1, 0, 1])).unwrap();
        let g = Mat::from_vec(2, 2, vec![
            &f + &RatFn::from_poly(Poly::from_ints(&[0, 0, 1])),
            RatFn::from_poly(Poly::x()),
            RatFn::zero(),
            f.clone(),
        ]);
        let src = RealizedMatrix::new(&g).unwrap();
        let n = src.n();
        let rec = OrthogonalRecurrence::chebyshev(3);
        let v = vec![int(1), int(3)];
        let j = complete_to_basis(&v).unwrap().kron_identity(2);
        let t = ConstMatrix::from_fn(n, n, |i, k| if i == k { int(2) } else if k == i + 1 { int(1) } else { int(0) });
        let s = ident(n);
        let m1 = m1_build(&src, &rec, &v, &j, &t, &s).unwrap();
        let m2 = m2_build(&src.transpose(), &rec, &v, &j.transpose(), &s.transpose().neg(), &t.transpose().neg())
            .unwrap();
        assert_eq!(m2.pencil, m1.pencil.transpose());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn round_trips(seed in 0u64..10_000, cheb in any::<bool>()) {
            let g = random_square(&mut rng(seed), 2, 2);
            let src = RealizedMatrix::new(&g).unwrap();
            let k = src.poly_part.degree().finite().unwrap();
            let rec = if cheb { OrthogonalRecurrence::chebyshev(k) } else { OrthogonalRecurrence::monomial(k) };
            let v: Vec<Rat> = (0..k).map(|i| int(i as i64 + 1)).collect();
            let jm = complete_to_basis(&v).unwrap().kron_identity(2);
            let n = src.n();
            let m1 = m1_build(&src, &rec, &v, &jm, &ident(n), &ident(n)).unwrap();
            let m2 = m2_build(&src, &rec, &v, &jm.transpose(), &ident(n), &ident(n)).unwrap();
            for side in [Side::Right, Side::Left] {
                let bg = minimal_basis(&g, side);
                for lin in [&m1, &m2] {
                    let bl = lin.lift_basis(&bg).unwrap();
                    let back = recover_basis(lin, &bl).unwrap();
                    prop_assert_eq!(&back.basis, &bg.basis);
                }
            }
        }
    }
}
