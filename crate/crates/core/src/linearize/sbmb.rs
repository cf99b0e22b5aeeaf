//! Strong block minimal bases linearizations
//! L = [[T(λE−A)S, TBK̂₁, 0], [−K̂₂ᵀCS, M, K₂ᵀ], [0, K₁, 0]].

use super::body::default_body;
use super::pairs::{block_kronecker_pair, DualMinimalBasisPair};
use super::{certify_lift, recover_basis, Linearization, RealizedMatrix};
use crate::error::{precondition, Error, Result};
use crate::exactalg::Degree;
use crate::minbases::{certify, MinimalBasis, Side};
use crate::polymat::{constant, solve, ConstMatrix, Pencil, PolyMatrix, RatMatrix};
use crate::sysmat::{transfer_function, PolySystemMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct SbmbLinearization {
    pub source: RealizedMatrix,
    pub pencil: Pencil,
    /// M(λ)
    pub m_body: Pencil,
    /// (K₁, N₁) on the column side of M.
    pub pair1: DualMinimalBasisPair,
    /// (K₂, N₂) on the row side of M.
    pub pair2: DualMinimalBasisPair,
    pub t_mat: ConstMatrix,
    pub s_mat: ConstMatrix,
    /// deg N₁
    pub eps_deg: usize,
    /// deg N₂
    pub eta_deg: usize,
}

fn constant_pencil(c: ConstMatrix) -> Pencil {
    Pencil { l1: ConstMatrix::zeros(c.rows(), c.cols()), l0: c }
}

/// Assembles and certifies a strong block minimal bases linearization.
pub fn build_sbmb(
    source: &RealizedMatrix,
    pair1: DualMinimalBasisPair,
    pair2: DualMinimalBasisPair,
    m_body: &PolyMatrix,
    t_mat: &ConstMatrix,
    s_mat: &ConstMatrix,
) -> Result<SbmbLinearization> {
    let d = &source.poly_part;
    let (p, m) = d.shape();
    if d.degree() <= Degree::Finite(1) {
        return precondition("polynomial part has degree at most one; the system matrix is already a linearization");
    }
    pair1.certify()?;
    pair2.certify()?;
    if pair1.dual_rows() != m || pair2.dual_rows() != p {
        return Err(Error::Dimension(format!("N₁ must have {m} rows and N₂ {p} rows")));
    }
    if m_body.shape() != (pair2.width(), pair1.width()) {
        return Err(Error::Dimension(format!("M must be {}x{}", pair2.width(), pair1.width())));
    }
    let body = Pencil::from_poly(m_body)?;
    if pair2.n_dual.mul(m_body).mul(&pair1.n_dual.transpose()) != *d {
        return precondition("N₂·M·N₁ᵀ differs from the polynomial part of G");
    }
    let (eps_deg, eta_deg) = (pair1.degree(), pair2.degree());
    if d.degree() != Degree::Finite(eps_deg + eta_deg + 1) {
        return precondition("degree of the polynomial part is not deg N₁ + deg N₂ + 1");
    }
    let r = &source.realization;
    let n = r.n();
    if t_mat.shape() != (n, n) || s_mat.shape() != (n, n) {
        return Err(Error::Dimension(format!("T and S must be {n}x{n}")));
    }
    if n > 0 && !(constant::is_nonsingular(t_mat) && constant::is_nonsingular(s_mat)) {
        return precondition("T or S is singular");
    }
    let (r1, r2) = (pair1.k_rows(), pair2.k_rows());
    let (w1, w2) = (pair1.width(), pair2.width());
    let state = Pencil { l1: t_mat.mul(&r.e).mul(s_mat), l0: t_mat.mul(&r.a).mul(s_mat).neg() };
    let top = constant_pencil(t_mat.mul(&r.b).mul(&pair1.k_hat));
    let left = constant_pencil(pair2.k_hat.transpose().mul(&r.c).mul(s_mat).neg());
    let k2t = Pencil::from_poly(&pair2.k.transpose())?;
    let k1 = Pencil::from_poly(&pair1.k)?;
    let pencil = Pencil::from_blocks(&[
        vec![&state, &top, &Pencil::zeros(n, r2)],
        vec![&left, &body, &k2t],
        vec![&Pencil::zeros(r1, n), &k1, &Pencil::zeros(r1, r2)],
    ])?;
    debug_assert_eq!(pencil.shape(), (n + w2 + r1, n + w1 + r2));
    Ok(SbmbLinearization {
        source: source.clone(),
        pencil,
        m_body: body,
        pair1,
        pair2,
        t_mat: t_mat.clone(),
        s_mat: s_mat.clone(),
        eps_deg,
        eta_deg,
    })
}

impl SbmbLinearization {
    /// Block Kronecker linearization with Kronecker pairs of degrees ε and
    /// η, the default M(λ) and T = S = I.
    pub fn block_kronecker(source: &RealizedMatrix, eps: usize, eta: usize) -> Result<Self> {
        let d = &source.poly_part;
        let (p, m) = d.shape();
        let body = default_body(d, eps, eta)?;
        let id = ConstMatrix::identity(source.n());
        build_sbmb(source, block_kronecker_pair(eps, m), block_kronecker_pair(eta, p), &body, &id, &id)
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    /// The pencil split as a polynomial system matrix after n rows/columns.
    pub fn system_matrix(&self) -> PolySystemMatrix {
        PolySystemMatrix::from_assembled(&self.pencil.to_poly(), self.n()).expect("state block is regular")
    }

    /// Ĝ = [[M + K̂₂ᵀC(λE−A)⁻¹BK̂₁, K₂ᵀ], [K₁, 0]]
    pub fn transfer(&self) -> RatMatrix {
        transfer_function(&self.system_matrix())
    }

    /// Unimodular U, V with U·Ĝ·V = diag(G, I).
    pub fn uv_certificate(&self) -> (PolyMatrix, PolyMatrix) {
        let m = self.m_body.to_poly();
        let (n1t, nh1t) = (self.pair1.n_dual.transpose(), self.pair1.n_hat.transpose());
        let (n2, nh2) = (&self.pair2.n_dual, &self.pair2.n_hat);
        let (r1, r2) = (self.pair1.k_rows(), self.pair2.k_rows());
        let (w1, w2) = (self.pair1.width(), self.pair2.width());
        let x = nh2.mul(&m).mul(&n1t);
        let y = n2.mul(&m).mul(&nh1t);
        let z = nh2.mul(&m).mul(&nh1t);
        let v = PolyMatrix::from_blocks(&[
            vec![&n1t, &nh1t, &PolyMatrix::zeros(w1, r2)],
            vec![&x.neg(), &PolyMatrix::zeros(r2, r1), &PolyMatrix::identity(r2)],
        ])
        .expect("conforming blocks");
        let u = PolyMatrix::from_blocks(&[
            vec![n2, &y.neg()],
            vec![&PolyMatrix::zeros(r1, w2), &PolyMatrix::identity(r1)],
            vec![nh2, &z.neg()],
        ])
        .expect("conforming blocks");
        (u, v)
    }

    /// Checks U·Ĝ·V = diag(G, I) exactly.
    pub fn check_uv(&self) -> bool {
        let (u, v) = self.uv_certificate();
        let lhs = u.to_rat().mul(&self.transfer()).mul(&v.to_rat());
        let extra = self.pair1.k_rows() + self.pair2.k_rows();
        lhs == RatMatrix::block_diag(&[&self.source.g, &RatMatrix::identity(extra)])
    }

    fn state_part(&self, h: &PolyMatrix, side: Side) -> Result<PolyMatrix> {
        let n = self.n();
        if n == 0 {
            return Ok(PolyMatrix::zeros(0, h.cols()));
        }
        let r = &self.source.realization;
        let state = PolyMatrix::from_coeff_matrices(&[r.a.neg(), r.e.clone()]);
        let x = match side {
            // −S⁻¹(λE−A)⁻¹BH
            Side::Right => {
                let si = constant::inverse(&self.s_mat)?;
                let sol = solve(&state, &PolyMatrix::from_const(&r.b).mul(h))?;
                RatMatrix::from_const(&si.neg()).mul(&sol)
            }
            // (C(λE−A)⁻¹T⁻¹)ᵀH
            Side::Left => {
                let ti = constant::inverse(&self.t_mat)?;
                let sol = solve(&state.transpose(), &PolyMatrix::from_const(&r.c.transpose()).mul(h))?;
                RatMatrix::from_const(&ti.transpose()).mul(&sol)
            }
        };
        x.to_poly().ok_or_else(|| Error::Certification("state block of the lifted basis is not polynomial".into()))
    }
}

impl Linearization for SbmbLinearization {
    fn pencil(&self) -> &Pencil {
        &self.pencil
    }

    fn target(&self) -> &RatMatrix {
        &self.source.g
    }

    fn recovery_map(&self, side: Side) -> ConstMatrix {
        let n = self.n();
        let (rows, cols) = self.pencil.shape();
        let (k_hat, len) = match side {
            Side::Right => (&self.pair1.k_hat, cols),
            Side::Left => (&self.pair2.k_hat, rows),
        };
        let mut map = ConstMatrix::zeros(k_hat.rows(), len);
        map.set_block(0, n, k_hat);
        map
    }

    fn index_shift(&self, side: Side) -> usize {
        match side {
            Side::Right => self.eps_deg,
            Side::Left => self.eta_deg,
        }
    }

    /// Right: [−S⁻¹(λE−A)⁻¹BH; N₁ᵀH; −N̂₂MN₁ᵀH]. Left: [(C(λE−A)⁻¹T⁻¹)ᵀH;
    /// N₂ᵀH; −N̂₁MᵀN₂ᵀH].
    fn lift_basis(&self, basis_of_g: &MinimalBasis) -> Result<MinimalBasis> {
        let side = basis_of_g.side;
        certify(basis_of_g.basis.clone(), &self.source.g, side)?;
        let h = &basis_of_g.basis;
        let m = self.m_body.to_poly();
        let (near, far, body) = match side {
            Side::Right => (&self.pair1, &self.pair2, m),
            Side::Left => (&self.pair2, &self.pair1, m.transpose()),
        };
        let h2 = near.n_dual.transpose().mul(h);
        let h3 = far.n_hat.mul(&body).mul(&h2).neg();
        let h1 = self.state_part(h, side)?;
        certify_lift(self, basis_of_g, PolyMatrix::vstack(&[&h1, &h2, &h3])?)
    }
}

/// Ĝ of the linearization.
pub fn transfer_of_sbmb(lin: &SbmbLinearization) -> RatMatrix {
    lin.transfer()
}

pub fn recover_basis_from_sbmb(lin: &SbmbLinearization, basis_of_l: &MinimalBasis) -> Result<MinimalBasis> {
    recover_basis(lin, basis_of_l)
}

pub fn lift_basis_to_sbmb(lin: &SbmbLinearization, basis_of_g: &MinimalBasis) -> Result<MinimalBasis> {
    lin.lift_basis(basis_of_g)
}
