//! Polynomial system matrices P = [[A, B], [−C, D]], their transfer
//! functions, the coprimeness/properness/irreducibility predicates,
//! minimal basis transfer between P and G, and minimal state-space
//! realizations.

use crate::error::{precondition, Error, Result};
use crate::exactalg::{int, Poly};
use crate::minbases::{certify, MinimalBasis, Side};
use crate::polymat::{
    constant, infinity_structure, invariant_factors, least_order, poly_det, poly_rank, solve, solve_left,
    ConstMatrix, InfinityStructure, PolyMatrix, RatMatrix,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq)]
pub struct PolySystemMatrix {
    pub a: PolyMatrix,
    pub b: PolyMatrix,
    pub c: PolyMatrix,
    pub d: PolyMatrix,
}

impl PolySystemMatrix {
    /// Checks block sizes and regularity of A.
    pub fn new(a: PolyMatrix, b: PolyMatrix, c: PolyMatrix, d: PolyMatrix) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        let (p, m) = d.shape();
        if b.shape() != (n, m) || c.shape() != (p, n) {
            return Err(Error::Dimension(format!(
                "A {n}x{n}, D {p}x{m} need B {n}x{m} and C {p}x{n}, got B {}x{} and C {}x{}",
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols()
            )));
        }
        if n > 0 && poly_det(&a)?.is_zero() {
            return precondition("A is singular");
        }
        Ok(PolySystemMatrix { a, b, c, d })
    }

    /// n = 0 system whose transfer function is `d`.
    pub fn from_polynomial(d: PolyMatrix) -> Self {
        let (p, m) = d.shape();
        PolySystemMatrix { a: PolyMatrix::zeros(0, 0), b: PolyMatrix::zeros(0, m), c: PolyMatrix::zeros(p, 0), d }
    }

    /// Splits an assembled matrix after its first `n` rows and columns.
    pub fn from_assembled(p: &PolyMatrix, n: usize) -> Result<Self> {
        if n > p.rows() || n > p.cols() {
            return Err(Error::Dimension(format!("state size {n} exceeds {}x{}", p.rows(), p.cols())));
        }
        let (r, c) = p.shape();
        Self::new(p.submatrix(0, n, 0, n), p.submatrix(0, n, n, c), p.submatrix(n, r, 0, n).neg(), p.submatrix(n, r, n, c))
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// (outputs p, inputs m)
    pub fn io_dims(&self) -> (usize, usize) {
        self.d.shape()
    }

    pub fn assembled(&self) -> PolyMatrix {
        let mc = self.c.neg();
        PolyMatrix::from_blocks(&[vec![&self.a, &self.b], vec![&mc, &self.d]]).expect("block sizes checked in new")
    }

    /// deg det A
    pub fn order(&self) -> usize {
        if self.n() == 0 {
            return 0;
        }
        poly_det(&self.a).ok().and_then(|d| d.deg()).unwrap_or(0)
    }

    /// A⁻¹B, exactly.
    pub fn a_inv_b(&self) -> RatMatrix {
        solve(&self.a, &self.b).expect("A regular")
    }

    /// CA⁻¹, exactly.
    pub fn c_a_inv(&self) -> RatMatrix {
        solve_left(&self.a, &self.c).expect("A regular")
    }
}

/// G = D + CA⁻¹B.
pub fn transfer_function(p: &PolySystemMatrix) -> RatMatrix {
    if p.n() == 0 {
        return p.d.to_rat();
    }
    p.d.to_rat().add(&p.c.to_rat().mul(&p.a_inv_b()))
}

/// Right: [X; Y] has unit invariant factors and full column rank.
/// Left: [X Y] has unit invariant factors and full row rank.
pub fn coprime_check(x: &PolyMatrix, y: &PolyMatrix, side: Side) -> Result<bool> {
    let stacked = match side {
        Side::Right => PolyMatrix::vstack(&[x, y])?,
        Side::Left => PolyMatrix::hstack(&[x, y])?.transpose(),
    };
    if stacked.cols() == 0 {
        return Ok(true);
    }
    let f = invariant_factors(&stacked);
    Ok(f.len() == stacked.cols() && f.iter().all(Poly::is_one))
}

/// (A, B) left coprime and (A, C) right coprime.
pub fn is_minimal(p: &PolySystemMatrix) -> bool {
    if p.n() == 0 {
        return true;
    }
    coprime_check(&p.a, &p.b, Side::Left).expect("sizes checked in new")
        && coprime_check(&p.a, &p.c, Side::Right).expect("sizes checked in new")
}

/// (A⁻¹B proper, CA⁻¹ proper)
pub fn properness_conditions(p: &PolySystemMatrix) -> (bool, bool) {
    if p.n() == 0 {
        return (true, true);
    }
    (p.a_inv_b().is_proper(), p.c_a_inv().is_proper())
}

/// Minimality plus the structure at infinity of [A B 0; −C D −I] and
/// [A B; −C D; 0 I].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    pub minimal: bool,
    pub row_bordered: InfinityStructure,
    pub col_bordered: InfinityStructure,
}

impl IrreducibilityReport {
    pub fn holds(&self) -> bool {
        self.minimal && self.row_bordered.infinite_zeros().is_empty() && self.col_bordered.infinite_zeros().is_empty()
    }
}

pub fn irreducibility_report(p: &PolySystemMatrix) -> IrreducibilityReport {
    let n = p.n();
    let (out, inp) = p.io_dims();
    let mc = p.c.neg();
    let row = PolyMatrix::from_blocks(&[
        vec![&p.a, &p.b, &PolyMatrix::zeros(n, out)],
        vec![&mc, &p.d, &PolyMatrix::identity(out).neg()],
    ])
    .expect("block sizes checked in new");
    let col = PolyMatrix::from_blocks(&[
        vec![&p.a, &p.b],
        vec![&mc, &p.d],
        vec![&PolyMatrix::zeros(inp, n), &PolyMatrix::identity(inp)],
    ])
    .expect("block sizes checked in new");
    IrreducibilityReport {
        minimal: is_minimal(p),
        row_bordered: infinity_structure(&row.to_rat()),
        col_bordered: infinity_structure(&col.to_rat()),
    }
}

pub fn strong_irreducibility(p: &PolySystemMatrix) -> bool {
    irreducibility_report(p).holds()
}

/// Checks the one-sided hypotheses under which minimal bases pass
/// between P and G.
fn transfer_hypotheses(p: &PolySystemMatrix, side: Side) -> Result<()> {
    if p.n() == 0 {
        return Ok(());
    }
    match side {
        Side::Right => {
            if !coprime_check(&p.a, &p.c, Side::Right)? {
                return precondition("A and C are not right coprime");
            }
            if !p.a_inv_b().is_proper() {
                return precondition("A⁻¹B is not proper");
            }
        }
        Side::Left => {
            if !coprime_check(&p.a, &p.b, Side::Left)? {
                return precondition("A and B are not left coprime");
            }
            if !p.c_a_inv().is_proper() {
                return precondition("CA⁻¹ is not proper");
            }
        }
    }
    Ok(())
}

/// Top block H₁ determined by the bottom block H₂ of a null vector of P.
fn top_block(p: &PolySystemMatrix, h2: &PolyMatrix, side: Side) -> RatMatrix {
    if p.n() == 0 {
        return RatMatrix::zeros(0, h2.cols());
    }
    match side {
        Side::Right => p.a_inv_b().neg().mul_poly(h2),
        Side::Left => p.c_a_inv().transpose().mul_poly(h2),
    }
}

/// Strips the top n rows of a minimal basis of P, giving one of G.
pub fn transfer_minimal_basis(p: &PolySystemMatrix, basis_of_p: &MinimalBasis) -> Result<MinimalBasis> {
    let side = basis_of_p.side;
    transfer_hypotheses(p, side)?;
    certify(basis_of_p.basis.clone(), &p.assembled().to_rat(), side)?;
    let h = &basis_of_p.basis;
    let n = p.n();
    let h1 = h.submatrix(0, n, 0, h.cols());
    let h2 = h.submatrix(n, h.rows(), 0, h.cols());
    if top_block(p, &h2, side) != h1.to_rat() {
        return Err(Error::Certification("top block does not match the expected lift of the bottom block".into()));
    }
    let out = certify(h2, &transfer_function(p), side)?;
    if out.indices != basis_of_p.indices {
        return Err(Error::Certification("minimal indices changed under transfer".into()));
    }
    Ok(out)
}

/// Prepends H₁ to a minimal basis H₂ of G, giving one of P.
pub fn lift_minimal_basis(p: &PolySystemMatrix, basis_of_g: &MinimalBasis) -> Result<MinimalBasis> {
    let side = basis_of_g.side;
    transfer_hypotheses(p, side)?;
    certify(basis_of_g.basis.clone(), &transfer_function(p), side)?;
    let h2 = &basis_of_g.basis;
    let h1 = top_block(p, h2, side)
        .to_poly()
        .ok_or_else(|| Error::Certification("lifted top block is not polynomial".into()))?;
    let stacked = PolyMatrix::vstack(&[&h1, h2])?;
    let out = certify(stacked, &p.assembled().to_rat(), side)?;
    if out.indices != basis_of_g.indices {
        return Err(Error::Certification("minimal indices changed under lift".into()));
    }
    Ok(out)
}

/// C(λE − A)⁻¹B with constant matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSpaceRealization {
    pub a: ConstMatrix,
    pub b: ConstMatrix,
    pub c: ConstMatrix,
    pub e: ConstMatrix,
}

impl StateSpaceRealization {
    pub fn new(a: ConstMatrix, b: ConstMatrix, c: ConstMatrix) -> Result<Self> {
        let e = ConstMatrix::identity(a.rows());
        Self::with_e(a, b, c, e)
    }

    pub fn with_e(a: ConstMatrix, b: ConstMatrix, c: ConstMatrix, e: ConstMatrix) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() || e.shape() != (n, n) || b.rows() != n || c.cols() != n {
            return Err(Error::Dimension("state-space blocks do not conform".into()));
        }
        if !constant::is_nonsingular(&e) {
            return precondition("E is singular");
        }
        Ok(StateSpaceRealization { a, b, c, e })
    }

    /// Empty realization of the zero strictly proper part.
    pub fn empty(outputs: usize, inputs: usize) -> Self {
        StateSpaceRealization {
            a: ConstMatrix::zeros(0, 0),
            b: ConstMatrix::zeros(0, inputs),
            c: ConstMatrix::zeros(outputs, 0),
            e: ConstMatrix::zeros(0, 0),
        }
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// λE − A
    pub fn state_pencil(&self) -> PolyMatrix {
        PolyMatrix::from_coeff_matrices(&[self.a.neg(), self.e.clone()])
    }

    /// [λE − A, B; −C, D] for a polynomial D.
    pub fn system_matrix(&self, d: PolyMatrix) -> Result<PolySystemMatrix> {
        PolySystemMatrix::new(self.state_pencil(), PolyMatrix::from_const(&self.b), PolyMatrix::from_const(&self.c), d)
    }

    pub fn transfer(&self) -> RatMatrix {
        let d = PolyMatrix::zeros(self.c.rows(), self.b.cols());
        transfer_function(&self.system_matrix(d).expect("E nonsingular"))
    }

    /// Rank of [B, AB, …, A^{n−1}B] with A replaced by E⁻¹A, B by E⁻¹B.
    pub fn controllability_rank(&self) -> usize {
        let ei = constant::inverse(&self.e).expect("E nonsingular");
        constant::rank(&krylov(&ei.mul(&self.a), &ei.mul(&self.b)))
    }

    pub fn observability_rank(&self) -> usize {
        let ei = constant::inverse(&self.e).expect("E nonsingular");
        let a = ei.mul(&self.a);
        constant::rank(&krylov(&a.transpose(), &self.c.transpose()))
    }
}

fn krylov(a: &ConstMatrix, b: &ConstMatrix) -> ConstMatrix {
    let n = a.rows();
    let mut blocks = vec![b.clone()];
    for _ in 1..n.max(1) {
        let next = a.mul(blocks.last().expect("nonempty"));
        blocks.push(next);
    }
    let refs: Vec<&ConstMatrix> = blocks.iter().collect();
    ConstMatrix::hstack(&refs).expect("equal row counts")
}

/// Basis of the column space chosen greedily among the columns of `m`,
/// completed to a nonsingular matrix by unit vectors. Returns (T, r).
fn staircase_basis(m: &ConstMatrix) -> (ConstMatrix, usize) {
    let n = m.rows();
    let (_, pivots) = constant::rref(m);
    let mut t = m.select_cols(&pivots);
    let r = t.cols();
    for k in 0..n {
        if t.cols() == n {
            break;
        }
        let cand = ConstMatrix::hstack(&[&t, &crate::polymat::unit_vector(n, k)]).expect("same rows");
        if constant::rank(&cand) > t.cols() {
            t = cand;
        }
    }
    (t, r)
}

/// Restriction of (A, B, C) to the controllable subspace.
fn controllable_part(a: &ConstMatrix, b: &ConstMatrix, c: &ConstMatrix) -> (ConstMatrix, ConstMatrix, ConstMatrix) {
    let n = a.rows();
    if n == 0 {
        return (a.clone(), b.clone(), c.clone());
    }
    let (t, r) = staircase_basis(&krylov(a, b));
    if r == n {
        return (a.clone(), b.clone(), c.clone());
    }
    let ti = constant::inverse(&t).expect("staircase basis nonsingular");
    let at = ti.mul(a).mul(&t);
    let bt = ti.mul(b);
    let ct = c.mul(&t);
    (at.submatrix(0, r, 0, r), bt.submatrix(0, r, 0, bt.cols()), ct.submatrix(0, ct.rows(), 0, r))
}

/// Minimal realization of a strictly proper matrix: controller form of
/// N(λ)(δ(λ)I)⁻¹, then controllability and observability reductions.
pub fn minimal_realization(g_sp: &RatMatrix) -> Result<StateSpaceRealization> {
    if !g_sp.is_strictly_proper() {
        return precondition("matrix is not strictly proper");
    }
    let (p, m) = g_sp.shape();
    let (num, delta) = g_sp.clear_denominators();
    let k = delta.deg().expect("lcm nonzero");
    let n = k * m;
    let mut a = ConstMatrix::zeros(n, n);
    let mut b = ConstMatrix::zeros(n, m);
    let mut c = ConstMatrix::zeros(p, n);
    let one = int(1);
    for blk in 0..k {
        for i in 0..m {
            if blk + 1 < k {
                a[(blk * m + i, (blk + 1) * m + i)] = one.clone();
            }
            a[((k - 1) * m + i, blk * m + i)] = -delta.coeff(blk);
        }
        c.set_block(0, blk * m, &num.coeff_matrix(blk));
    }
    for i in 0..m {
        if k > 0 {
            b[((k - 1) * m + i, i)] = one.clone();
        }
    }
    let (a, b, c) = controllable_part(&a, &b, &c);
    let (at, ct, bt) = controllable_part(&a.transpose(), &c.transpose(), &b.transpose());
    let real = StateSpaceRealization::new(at.transpose(), bt.transpose(), ct.transpose())?;
    if real.n() != least_order(g_sp) {
        return Err(Error::Certification(format!(
            "realization has order {} but the least order is {}",
            real.n(),
            least_order(g_sp)
        )));
    }
    if real.transfer() != *g_sp {
        return Err(Error::Certification("realization does not reproduce the input".into()));
    }
    Ok(real)
}

/// rank P − n, which equals rank G for regular A.
pub fn transfer_rank_from_system(p: &PolySystemMatrix) -> usize {
    poly_rank(&p.assembled()) - p.n()
}
