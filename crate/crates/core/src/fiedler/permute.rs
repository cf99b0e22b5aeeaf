//! Block permutations taking a Fiedler-like pencil to an extended block
//! Kronecker linearization satisfying the antidiagonal sum condition, and
//! the recovery of minimal bases that follows from it.

use super::build::{intrinsic_d0_position, FiedlerPencil};
use super::symbolic::{TagPencil, Term};
use crate::error::{certification, Error, Result};
use crate::linearize::{
    build_sbmb, certify_lift, lambda_row, l_pencil, recover_basis, recover_basis_from_sbmb, satisfies_as_condition,
    DualMinimalBasisPair, Linearization, SbmbLinearization,
};
use crate::minbases::{certify, MinimalBasis, Side};
use crate::polymat::{constant, ConstMatrix, Pencil, PolyMatrix, RatMatrix};

/// Π = Σ ⊗ I_p where row i of Σ is e_{σ(i)}ᵀ, so that block row i of Π·L
/// is block row σ(i) of L. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPermutation {
    pub sigma: Vec<usize>,
    pub block_size: usize,
}

impl BlockPermutation {
    pub fn identity(q: usize, p: usize) -> Self {
        BlockPermutation { sigma: (1..=q).collect(), block_size: p }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.sigma.len()];
        for (i, &s) in self.sigma.iter().enumerate() {
            inv[s - 1] = i + 1;
        }
        BlockPermutation { sigma: inv, block_size: self.block_size }
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| s == i + 1)
    }

    pub fn matrix(&self) -> ConstMatrix {
        let q = self.sigma.len();
        let mut s = ConstMatrix::zeros(q, q);
        for (i, &j) in self.sigma.iter().enumerate() {
            s[(i, j - 1)] = crate::exactalg::int(1);
        }
        s.kron_identity(self.block_size)
    }

    /// diag(I_n, Π)
    pub fn bordered(&self, n: usize) -> ConstMatrix {
        ConstMatrix::block_diag(&[&ConstMatrix::identity(n), &self.matrix()])
    }
}

/// diag(I_n, Π₁)·L_G·diag(I_n, Π₂) written as an extended
/// (ε, p, η, p)-block Kronecker linearization
/// [[A − λE, e_{ε+1}ᵀ ⊗ B, 0], [e_{η+1} ⊗ C, M, (Z(L_η ⊗ I))ᵀ], [0, Y(L_ε ⊗ I), 0]].
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedKronecker {
    pub pi1: BlockPermutation,
    pub pi2: BlockPermutation,
    pub eps: usize,
    pub eta: usize,
    pub y: ConstMatrix,
    pub z: ConstMatrix,
    /// M(λ), which satisfies the antidiagonal sum condition for D with
    /// D₀ in its bottom-right block.
    pub body: PolyMatrix,
    /// The same pencil as a strong block minimal bases linearization
    /// (T = I, S = −I).
    pub sbmb: SbmbLinearization,
}

/// Orders `candidates` into a chain c₁, …, c_k such that, across the
/// blocks `others`, the λ-tags of c₁ vanish and those of c_{j+1} are the
/// negated constant tags of c_j. `block(c, o)` reads the (c, o) block pair.
fn chain(
    tags: &TagPencil,
    candidates: &[usize],
    others: &[usize],
    block: impl Fn(usize, usize) -> (usize, usize),
) -> Result<Vec<usize>> {
    let lam = |c: usize, o: usize| {
        let (i, j) = block(c, o);
        tags.lambda.get(i, j)
    };
    let con = |c: usize, o: usize| {
        let (i, j) = block(c, o);
        tags.constant.get(i, j).map(Term::negated)
    };
    let unique = |found: Vec<usize>, what: &str| match found[..] {
        [c] => Ok(c),
        _ => Err(Error::Certification(format!("{} blocks qualify as {what}", found.len()))),
    };
    let mut rest: Vec<usize> = candidates.to_vec();
    let first: Vec<usize> = rest.iter().copied().filter(|&c| others.iter().all(|&o| lam(c, o).is_none())).collect();
    let mut order = vec![unique(first, "the start of the Kronecker chain")?];
    rest.retain(|&c| c != order[0]);
    while !rest.is_empty() {
        let prev = *order.last().expect("nonempty");
        let next: Vec<usize> =
            rest.iter().copied().filter(|&c| others.iter().all(|&o| lam(c, o) == con(prev, o))).collect();
        let c = unique(next, "the next link of the Kronecker chain")?;
        order.push(c);
        rest.retain(|&x| x != c);
    }
    Ok(order)
}

/// Y with K = Y(L_k ⊗ I_p), read from the constant coefficient and checked.
fn kronecker_factor(k: &Pencil, deg: usize, p: usize) -> Result<ConstMatrix> {
    let y = k.l0.submatrix(0, deg * p, 0, deg * p).neg();
    let expect = PolyMatrix::from_const(&y).mul(&l_pencil(deg).kron_identity(p));
    if expect != k.to_poly() {
        return certification("Kronecker rows are not of the form Y(L ⊗ I)");
    }
    if !constant::is_nonsingular(&y) {
        return certification("factor of the Kronecker rows is singular");
    }
    Ok(y)
}

fn kronecker_pair(k: &Pencil, deg: usize, p: usize) -> Result<DualMinimalBasisPair> {
    if deg == 0 {
        return Ok(DualMinimalBasisPair::trivial(p));
    }
    let mut k_hat = ConstMatrix::zeros(p, (deg + 1) * p);
    k_hat.set_block(0, deg * p, &ConstMatrix::identity(p));
    DualMinimalBasisPair::with_k_hat(k.to_poly(), lambda_row(deg).kron_identity(p), k_hat)
}

/// Finds Π₁, Π₂ by matching block tags: block rows and columns carrying
/// coefficients of D form M, the others the Kronecker parts, whose order is
/// fixed by the chains λ·(next) = −(previous). Every claimed property is
/// then checked numerically.
pub fn permute_to_extended_kronecker(fp: &FiedlerPencil) -> Result<ExtendedKronecker> {
    let (q, p, n) = (fp.spec.q, fp.p(), fp.n());
    let tags = &fp.tags;
    let all: Vec<usize> = (0..q).collect();
    let m_rows: Vec<usize> = all.iter().copied().filter(|&i| (0..q).any(|j| tags.has_coeff(i, j))).collect();
    let m_cols: Vec<usize> = all.iter().copied().filter(|&j| (0..q).any(|i| tags.has_coeff(i, j))).collect();
    let k_rows: Vec<usize> = all.iter().copied().filter(|i| !m_rows.contains(i)).collect();
    let k_cols: Vec<usize> = all.iter().copied().filter(|j| !m_cols.contains(j)).collect();
    let (eta, eps) = (m_rows.len() - 1, m_cols.len() - 1);
    if k_rows.len() != eps || k_cols.len() != eta {
        return certification(format!(
            "{} coefficient rows and {} coefficient columns do not split {q} blocks as ε + η + 1",
            m_rows.len(),
            m_cols.len()
        ));
    }
    if k_rows.iter().any(|&i| k_cols.iter().any(|&j| !tags.is_zero_block(i, j))) {
        return certification("block between the two Kronecker parts is not zero");
    }
    let col_chain = chain(tags, &m_cols, &k_rows, |c, r| (r, c))?;
    let row_chain = chain(tags, &m_rows, &k_cols, |r, c| (r, c))?;
    let (d0_row, d0_col) = intrinsic_d0_position(&fp.spec);
    if row_chain[eta] + 1 != d0_row || col_chain[eps] + 1 != d0_col {
        return certification("D₀ does not land in the corner of M");
    }
    let row_order: Vec<usize> = row_chain.iter().chain(&k_rows).map(|i| i + 1).collect();
    let col_order: Vec<usize> = col_chain.iter().chain(&k_cols).map(|j| j + 1).collect();
    let pi1 = BlockPermutation { sigma: row_order, block_size: p };
    let pi2 = BlockPermutation { sigma: col_order, block_size: p }.inverse();

    let permuted = fp.poly_pencil.left_mul(&pi1.matrix()).right_mul(&pi2.matrix());
    let (mr, mc) = ((eta + 1) * p, (eps + 1) * p);
    let body = permuted.submatrix(0, mr, 0, mc).to_poly();
    let k1 = permuted.submatrix(mr, q * p, 0, mc);
    let k2 = permuted.submatrix(0, mr, mc, q * p).transpose();
    let y = kronecker_factor(&k1, eps, p)?;
    let z = kronecker_factor(&k2, eta, p)?;
    let d = &fp.source.poly_part;
    if !satisfies_as_condition(&body, d) {
        return certification("M does not satisfy the antidiagonal sum condition");
    }
    if body.coeff_matrix(0).submatrix(eta * p, mr, eps * p, mc) != d.coeff_matrix(0) {
        return certification("bottom-right block of M₀ is not D₀");
    }
    let pair1 = kronecker_pair(&k1, eps, p)?;
    let pair2 = kronecker_pair(&k2, eta, p)?;
    let id = ConstMatrix::identity(n);
    let sbmb = build_sbmb(&fp.source, pair1, pair2, &body, &id, &id.neg())?;
    let whole = fp.pencil.left_mul(&pi1.bordered(n)).right_mul(&pi2.bordered(n));
    if whole != sbmb.pencil {
        return certification("permuted pencil differs from the extended block Kronecker linearization");
    }
    Ok(ExtendedKronecker { pi1, pi2, eps, eta, y, z, body, sbmb })
}

/// A Fiedler-like pencil together with its extended block Kronecker form.
#[derive(Clone, Debug, PartialEq)]
pub struct FiedlerLinearization {
    pub fiedler: FiedlerPencil,
    pub kronecker: ExtendedKronecker,
}

impl FiedlerLinearization {
    pub fn new(fiedler: FiedlerPencil) -> Result<Self> {
        let kronecker = permute_to_extended_kronecker(&fiedler)?;
        Ok(FiedlerLinearization { fiedler, kronecker })
    }

    /// Same recovery done by undoing the permutation and applying the
    /// block minimal bases rule.
    pub fn recover_via_kronecker(&self, basis_of_l: &MinimalBasis) -> Result<MinimalBasis> {
        let n = self.fiedler.n();
        let undo = match basis_of_l.side {
            Side::Right => self.kronecker.pi2.bordered(n).transpose(),
            Side::Left => self.kronecker.pi1.bordered(n),
        };
        let moved = PolyMatrix::from_const(&undo).mul(&basis_of_l.basis);
        let moved = certify(moved, &self.kronecker.sbmb.pencil.to_rat(), basis_of_l.side)?;
        recover_basis_from_sbmb(&self.kronecker.sbmb, &moved)
    }
}

impl Linearization for FiedlerLinearization {
    fn pencil(&self) -> &Pencil {
        &self.fiedler.pencil
    }

    fn target(&self) -> &RatMatrix {
        &self.fiedler.source.g
    }

    /// [0_{p×n}  e_{q−c₀}ᵀ ⊗ I_p] on the right, e_{q−i₀} on the left.
    fn recovery_map(&self, side: Side) -> ConstMatrix {
        let (n, p, q) = (self.fiedler.n(), self.fiedler.p(), self.fiedler.spec.q);
        let (row, col) = intrinsic_d0_position(&self.fiedler.spec);
        let block = match side {
            Side::Right => col,
            Side::Left => row,
        };
        let mut map = ConstMatrix::zeros(p, n + q * p);
        map.set_block(0, n + (block - 1) * p, &ConstMatrix::identity(p));
        map
    }

    fn index_shift(&self, side: Side) -> usize {
        match side {
            Side::Right => self.kronecker.eps,
            Side::Left => self.kronecker.eta,
        }
    }

    /// Lifts through the block minimal bases form and permutes back.
    fn lift_basis(&self, basis_of_g: &MinimalBasis) -> Result<MinimalBasis> {
        let n = self.fiedler.n();
        let lifted = self.kronecker.sbmb.lift_basis(basis_of_g)?;
        let back = match basis_of_g.side {
            Side::Right => self.kronecker.pi2.bordered(n),
            Side::Left => self.kronecker.pi1.bordered(n).transpose(),
        };
        certify_lift(self, basis_of_g, PolyMatrix::from_const(&back).mul(&lifted.basis))
    }
}

/// Rows of a minimal basis of L_G at block q − c₀ (right) or q − i₀ (left),
/// certified for G with the index shift ε or η checked.
pub fn fiedler_recover_basis(lin: &FiedlerLinearization, basis_of_l: &MinimalBasis) -> Result<MinimalBasis> {
    recover_basis(lin, basis_of_l)
}
