//! Checkers for strong linearizations: the spectral characterization, the
//! invariant orders at infinity of a linearization, the index sum and the
//! μ relations, and polynomial bases carried through unimodular
//! equivalences.

use crate::error::{precondition, Error, Result};
use crate::exactalg::{Poly, RatFn};
use crate::minbases::{minimal_basis, nullity, Side};
use crate::polymat::{
    constant, infinity_structure, invariant_factors, least_order, poly_rank, rank, smith_mcmillan_chains, solve,
    solve_left, unimodular_inverse, ConstMatrix, InfinityStructure, Pencil, PolyMatrix, RatMatrix,
};
use crate::sysmat::{is_minimal, transfer_function, PolySystemMatrix};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A pencil presented as a polynomial system matrix [[A, B], [−C, D]]
/// with an n×n state block.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearPsm {
    pub pencil: Pencil,
    pub n: usize,
}

/// Which of the three cases of the orders-at-infinity prediction applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// D₁ + C₁A₁⁻¹B₁ ≠ 0.
    LeadingNonzero,
    /// D₁ + C₁A₁⁻¹B₁ = 0 with n > 0.
    LeadingZero,
    /// n = 0 and D₁ = 0, so L = D₀.
    Constant,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::LeadingNonzero => "leading-nonzero",
            Branch::LeadingZero => "leading-zero",
            Branch::Constant => "constant",
        })
    }
}

impl LinearPsm {
    pub fn new(pencil: Pencil, n: usize) -> Result<Self> {
        if n > pencil.rows() || n > pencil.cols() {
            return Err(Error::Dimension(format!("state size {n} exceeds {}x{}", pencil.rows(), pencil.cols())));
        }
        Ok(LinearPsm { pencil, n })
    }

    pub fn from_system(p: &PolySystemMatrix) -> Result<Self> {
        Self::new(Pencil::from_poly(&p.assembled())?, p.n())
    }

    pub fn system_matrix(&self) -> Result<PolySystemMatrix> {
        PolySystemMatrix::from_assembled(&self.pencil.to_poly(), self.n)
    }

    /// A₁λ + A₀
    pub fn state_pencil(&self) -> Pencil {
        self.pencil.submatrix(0, self.n, 0, self.n)
    }

    pub fn transfer(&self) -> Result<RatMatrix> {
        Ok(transfer_function(&self.system_matrix()?))
    }

    /// D₁ + C₁A₁⁻¹B₁, with C₁ read off as minus the lower-left block.
    pub fn leading_sum(&self) -> Result<ConstMatrix> {
        let (r, c, n) = (self.pencil.rows(), self.pencil.cols(), self.n);
        let l1 = &self.pencil.l1;
        let d1 = l1.submatrix(n, r, n, c);
        if n == 0 {
            return Ok(d1);
        }
        let a1 = l1.submatrix(0, n, 0, n);
        if !constant::is_nonsingular(&a1) {
            return precondition("A₁ is singular");
        }
        let a1_inv_b1 = constant::inverse(&a1)?.mul(&l1.submatrix(0, n, n, c));
        Ok(d1.sub(&l1.submatrix(n, r, 0, n).mul(&a1_inv_b1)))
    }

    pub fn branch(&self) -> Result<Branch> {
        Ok(match (self.leading_sum()?.is_zero(), self.n) {
            (false, _) => Branch::LeadingNonzero,
            (true, 0) => Branch::Constant,
            (true, _) => Branch::LeadingZero,
        })
    }

    /// s such that the transfer function is (p+s)×(m+s) for G p×m.
    pub fn extra_size(&self, g: &RatMatrix) -> Result<usize> {
        let (r, c) = self.pencil.shape();
        let (p, m) = g.shape();
        match (r.checked_sub(self.n + p), c.checked_sub(self.n + m)) {
            (Some(a), Some(b)) if a == b => Ok(a),
            _ => Err(Error::Dimension(format!(
                "a {r}x{c} pencil with state size {} cannot linearize a {p}x{m} matrix",
                self.n
            ))),
        }
    }
}

/// Finite and infinite structure and minimal indices of a rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuralReport {
    pub rank: usize,
    /// Nontrivial zero polynomials ε_i of the Smith–McMillan form.
    pub eps: Vec<Poly>,
    /// Nontrivial pole polynomials ψ_i.
    pub psi: Vec<Poly>,
    pub infinity: InfinityStructure,
    pub right_indices: Vec<usize>,
    pub left_indices: Vec<usize>,
    pub nu: usize,
    pub mu: usize,
    pub d: i64,
}

impl StructuralReport {
    pub fn of(g: &RatMatrix) -> Self {
        let (eps, psi) = smith_mcmillan_chains(g);
        let rank = eps.len();
        let infinity = infinity_structure(g);
        let right_indices = minimal_basis(g, Side::Right).indices;
        let left_indices = minimal_basis(g, Side::Left).indices;
        let nu = psi.iter().map(|p| p.deg().unwrap_or(0)).sum();
        let mu = right_indices.iter().sum::<usize>() + left_indices.iter().sum::<usize>();
        let d = infinity.d();
        StructuralReport {
            rank,
            eps: nontrivial(&eps),
            psi: nontrivial(&psi),
            infinity,
            right_indices,
            left_indices,
            nu,
            mu,
            d,
        }
    }

    /// Σ deg ψ − Σ deg ε − Σ q_i
    pub fn index_sum(&self) -> i64 {
        let deg = |v: &[Poly]| v.iter().map(|p| p.deg().unwrap_or(0) as i64).sum::<i64>();
        deg(&self.psi) - deg(&self.eps) - self.infinity.q.iter().sum::<i64>()
    }
}

/// Non-constant members of a divisibility chain, by increasing degree.
fn nontrivial(chain: &[Poly]) -> Vec<Poly> {
    let mut out: Vec<Poly> = chain.iter().filter(|p| !p.is_constant()).map(Poly::monic).collect();
    out.sort_by_key(|p| p.deg());
    out
}

/// Total number of poles minus total number of zeros, finite and at
/// infinity; equals the sum of all minimal indices.
pub fn index_sum(g: &RatMatrix) -> i64 {
    let (eps, psi) = smith_mcmillan_chains(g);
    let deg = |v: &[Poly]| v.iter().map(|p| p.deg().unwrap_or(0) as i64).sum::<i64>();
    deg(&psi) - deg(&eps) - infinity_structure(g).q.iter().sum::<i64>()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongLinearizationCertificate {
    pub branch: Branch,
    pub n: usize,
    pub s: usize,
    pub items: Vec<CertificateItem>,
}

impl StrongLinearizationCertificate {
    pub fn holds(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect()
    }
}

fn item(name: &str, passed: bool, detail: String) -> CertificateItem {
    CertificateItem { name: name.to_string(), passed, detail }
}

fn render(chain: &[Poly]) -> String {
    let parts: Vec<String> = chain.iter().map(|p| p.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn lambda_power(k: i64) -> RatFn {
    RatFn::x().pow(k)
}

/// Whether `l` is a strong linearization of `g`: equal right nullity,
/// finite poles of G equal to the finite zeros of the state pencil, equal
/// finite zeros, and matching infinite zeros of λ⁻¹L and λ^{−d}G (or
/// Diag(λ⁻¹I_s, λ^{−d−1}G) when D₁ + C₁A₁⁻¹B₁ = 0).
pub fn check_strong_linearization(l: &LinearPsm, g: &RatMatrix) -> Result<StrongLinearizationCertificate> {
    let nu = least_order(g);
    if l.n != nu {
        return precondition(format!("state size {} differs from the finite pole degree {nu} of G", l.n));
    }
    let s = l.extra_size(g)?;
    let branch = l.branch()?;
    let system = l.system_matrix()?;
    let mut items = vec![item("minimal", is_minimal(&system), "the pencil is a minimal system matrix".into())];

    let lr = l.pencil.to_rat();
    let (nl, ng) = (nullity(&lr, Side::Right), nullity(g, Side::Right));
    items.push(item("nullity", nl == ng, format!("right nullity {nl} of L, {ng} of G")));

    let (eps, psi) = smith_mcmillan_chains(g);
    let (eps, psi) = (nontrivial(&eps), nontrivial(&psi));
    let state = nontrivial(&invariant_factors(&l.state_pencil().to_poly()));
    items.push(item(
        "finite-poles",
        state == psi,
        format!("poles of G {}, zeros of the state pencil {}", render(&psi), render(&state)),
    ));
    let zeros = nontrivial(&invariant_factors(&l.pencil.to_poly()));
    items.push(item(
        "finite-zeros",
        zeros == eps,
        format!("zeros of G {}, zeros of L {}", render(&eps), render(&zeros)),
    ));

    let d = infinity_structure(g).d();
    let scaled_l = lr.scale(&lambda_power(-1));
    let reference = match branch {
        Branch::LeadingNonzero => g.scale(&lambda_power(-d)),
        Branch::LeadingZero | Branch::Constant => {
            let pad = RatMatrix::identity(s).scale(&lambda_power(-1));
            RatMatrix::block_diag(&[&pad, &g.scale(&lambda_power(-d - 1))])
        }
    };
    let (zl, zr) = (infinity_structure(&scaled_l).infinite_zeros(), infinity_structure(&reference).infinite_zeros());
    items.push(item("infinite-zeros", zl == zr, format!("infinite zeros {zl:?} of λ⁻¹L, {zr:?} expected ({branch})")));

    Ok(StrongLinearizationCertificate { branch, n: l.n, s, items })
}

/// Predicted invariant orders at infinity of a strong linearization with
/// state size n and s extra rows and columns, sorted.
pub fn invariant_orders_of_linearization(g: &InfinityStructure, n: usize, s: usize, branch: Branch) -> Vec<i64> {
    let d = g.d();
    let mut out: Vec<i64> = match branch {
        Branch::LeadingNonzero => {
            std::iter::repeat_n(-1, n + s).chain(g.q.iter().map(|q| q + d - 1)).collect()
        }
        Branch::LeadingZero => std::iter::repeat_n(-1, n)
            .chain(std::iter::repeat_n(0, s))
            .chain(g.q.iter().map(|q| q + d))
            .collect(),
        Branch::Constant => vec![0; n + s + g.q.len()],
    };
    out.sort_unstable();
    out
}

/// μ(G) against μ(L) + dr − (r + s), μ(L) + dr or dr, by branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuRelation {
    pub branch: Branch,
    pub mu_g: i64,
    pub mu_l: i64,
    pub d: i64,
    pub r: i64,
    pub s: i64,
    pub predicted: i64,
}

impl MuRelation {
    pub fn holds(&self) -> bool {
        self.mu_g == self.predicted
    }
}

fn index_total(g: &RatMatrix) -> i64 {
    [Side::Right, Side::Left].iter().map(|&side| minimal_basis(g, side).index_sum() as i64).sum()
}

/// Evaluates the μ relation with both sides computed from minimal bases.
/// Fails unless `l` is certified as a strong linearization of `g`.
pub fn mu_relation(g: &RatMatrix, l: &LinearPsm) -> Result<MuRelation> {
    let cert = check_strong_linearization(l, g)?;
    if !cert.holds() {
        return precondition(format!("not a strong linearization: {}", cert.failed().join(", ")));
    }
    let mu_g = index_total(g);
    let mu_l = index_total(&l.pencil.to_rat());
    let d = infinity_structure(g).d();
    let r = rank(g) as i64;
    let s = cert.s as i64;
    let predicted = match cert.branch {
        Branch::LeadingNonzero => mu_l + d * r - (r + s),
        Branch::LeadingZero => mu_l + d * r,
        Branch::Constant => d * r,
    };
    Ok(MuRelation { branch: cert.branch, mu_g, mu_l, d, r, s, predicted })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// From a basis H of G to one of Ĝ.
    Forward,
    /// From a basis Ĥ of Ĝ back to one of G.
    Converse,
}

fn is_polynomial_basis(h: &PolyMatrix, g: &RatMatrix, side: Side) -> bool {
    let hr = h.to_rat();
    let product = match side {
        Side::Right => g.mul(&hr),
        Side::Left => g.transpose().mul(&hr),
    };
    product.is_zero() && poly_rank(h) == h.cols() && h.cols() == nullity(g, side)
}

/// Carries a polynomial basis through U·Ĝ·V = diag(G, I_s): V[H; 0] on
/// the right and Uᵀ[H; 0] on the left, or back by V⁻¹ and U⁻ᵀ. The results
/// are polynomial bases, not minimal ones in general.
pub fn polynomial_basis_map(
    u: &PolyMatrix,
    v: &PolyMatrix,
    g: &RatMatrix,
    g_hat: &RatMatrix,
    h: &PolyMatrix,
    side: Side,
    direction: Direction,
) -> Result<PolyMatrix> {
    let (p, m) = g.shape();
    let s = g_hat
        .rows()
        .checked_sub(p)
        .filter(|&s| g_hat.shape() == (p + s, m + s))
        .ok_or_else(|| Error::Dimension("Ĝ must be (p+s)×(m+s)".into()))?;
    let target = RatMatrix::block_diag(&[g, &RatMatrix::identity(s)]);
    if u.to_rat().mul(g_hat).mul(&v.to_rat()) != target {
        return precondition("U·Ĝ·V differs from diag(G, I)");
    }
    let t = match side {
        Side::Right => v.clone(),
        Side::Left => u.transpose(),
    };
    let (small, big) = match side {
        Side::Right => (m, m + s),
        Side::Left => (p, p + s),
    };
    let out = match direction {
        Direction::Forward => {
            if h.rows() != small {
                return Err(Error::Dimension(format!("basis of G must have {small} rows")));
            }
            if !is_polynomial_basis(h, g, side) {
                return precondition("input is not a polynomial basis of G");
            }
            t.mul(&PolyMatrix::vstack(&[h, &PolyMatrix::zeros(s, h.cols())])?)
        }
        Direction::Converse => {
            if h.rows() != big {
                return Err(Error::Dimension(format!("basis of Ĝ must have {big} rows")));
            }
            if !is_polynomial_basis(h, g_hat, side) {
                return precondition("input is not a polynomial basis of Ĝ");
            }
            let full = unimodular_inverse(&t)?.mul(h);
            if !full.submatrix(small, big, 0, h.cols()).is_zero() {
                return Err(Error::Certification("identity block of the mapped basis is nonzero".into()));
            }
            full.submatrix(0, small, 0, h.cols())
        }
    };
    let check = match direction {
        Direction::Forward => g_hat,
        Direction::Converse => g,
    };
    if !is_polynomial_basis(&out, check, side) {
        return Err(Error::Certification("mapped columns are not a polynomial basis".into()));
    }
    Ok(out)
}

/// State rows of a basis of L from a basis H₂ of its transfer function:
/// −(A₁λ + A₀)⁻¹(B₁λ + B₀)H₂ on the right, ((C₁λ + C₀)(A₁λ + A₀)⁻¹)ᵀH₂
/// on the left.
pub fn state_part(l: &LinearPsm, h2: &PolyMatrix, side: Side) -> Result<PolyMatrix> {
    let p = l.system_matrix()?;
    if p.n() == 0 {
        return Ok(PolyMatrix::zeros(0, h2.cols()));
    }
    let x = match side {
        Side::Right => solve(&p.a, &p.b.mul(h2))?.neg(),
        Side::Left => solve_left(&p.a, &p.c)?.transpose().mul_poly(h2),
    };
    x.to_poly().ok_or_else(|| Error::Certification("state rows are not polynomial".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiedler::{all_fiedler_tuples, build_fiedler_rational, Assignments, FiedlerSpec};
    use crate::fixtures;
    use crate::linearize::{m1_build, m2_build, OrthogonalRecurrence, RealizedMatrix, SbmbLinearization};
    use crate::polymat::Mat;

    fn l_eps_eta(eps: usize, eta: usize) -> LinearPsm {
        LinearPsm::from_system(&fixtures::l_eps_eta(eps, eta)).unwrap()
    }

    fn check_orders(l: &LinearPsm, g: &RatMatrix) {
        let cert = check_strong_linearization(l, g).unwrap();
        assert!(cert.holds(), "{:?}", cert.items);
        let predicted = invariant_orders_of_linearization(&infinity_structure(g), l.n, cert.s, cert.branch);
        assert_eq!(predicted, infinity_structure(&l.pencil.to_rat()).q);
    }

    #[test]
    fn l_eps_eta_family() {
        let g = fixtures::g_example5();
        let rg = StructuralReport::of(&g);
        assert_eq!((rg.nu, rg.mu, rg.d, rg.rank), (1, 0, 1, 1));
        assert_eq!(rg.index_sum(), 0);
        for eps in 1..=3 {
            for eta in 1..=3 {
                let l = l_eps_eta(eps, eta);
                let cert = check_strong_linearization(&l, &g).unwrap();
                assert!(cert.holds(), "{:?}", cert.items);
                assert_eq!((cert.branch, cert.s), (Branch::LeadingNonzero, eps + eta));
                let rl = StructuralReport::of(&l.pencil.to_rat());
                assert_eq!((rl.right_indices.clone(), rl.left_indices.clone()), (vec![eps], vec![eta]));
                assert_eq!((rg.right_indices.clone(), rg.left_indices.clone()), (vec![0], vec![0]));
                let mu = mu_relation(&g, &l).unwrap();
                assert_eq!((mu.mu_g, mu.mu_l, mu.d, mu.r), (0, (eps + eta) as i64, 1, 1));
                assert!(mu.holds());
                check_orders(&l, &g);
            }
        }
    }

    #[test]
    fn orders_of_smallest_example() {
        let l = l_eps_eta(1, 1);
        let q = infinity_structure(&l.pencil.to_rat()).q;
        assert_eq!(q, vec![-1, -1, -1, -1]);
        assert_eq!(invariant_orders_of_linearization(&infinity_structure(&fixtures::g_example5()), 1, 2, Branch::LeadingNonzero), q);
    }

    #[test]
    fn flipped_sign_breaks_finite_structure() {
        let mut l = l_eps_eta(1, 1);
        l.pencil.l1[(1, 1)] = -l.pencil.l1[(1, 1)].clone();
        let cert = check_strong_linearization(&l, &fixtures::g_example5()).unwrap();
        assert!(!cert.holds());
        assert!(cert.failed().contains(&"finite-zeros"));
    }

    #[test]
    fn wrong_state_size_is_rejected() {
        let l = l_eps_eta(1, 1);
        let wrong = LinearPsm::new(l.pencil, 0).unwrap();
        assert!(matches!(check_strong_linearization(&wrong, &fixtures::g_example5()), Err(Error::Precondition(_))));
    }

    fn constant_fixture(row: &[&[i64]]) -> (RatMatrix, LinearPsm) {
        let g = PolyMatrix::from_ints(&[row]).to_rat();
        let mut d0 = ConstMatrix::zeros(1, row.len());
        d0[(0, 0)] = crate::exactalg::int(1);
        (g, LinearPsm::new(Pencil::new(ConstMatrix::zeros(1, row.len()), d0).unwrap(), 0).unwrap())
    }

    #[test]
    fn constant_branch() {
        for (row, d, mu) in [(&[&[1][..], &[0, 1]][..], 1, 1), (&[&[1][..], &[0, 1], &[0, 0, 1]][..], 2, 2)] {
            let (g, l) = constant_fixture(row);
            let cert = check_strong_linearization(&l, &g).unwrap();
            assert!(cert.holds(), "{:?}", cert.items);
            assert_eq!(cert.branch, Branch::Constant);
            let inf = infinity_structure(&g);
            assert_eq!(inf.q, vec![-d]);
            check_orders(&l, &g);
            let rel = mu_relation(&g, &l).unwrap();
            assert_eq!((rel.mu_g, rel.predicted), (mu, d));
        }
    }

    #[test]
    fn leading_zero_branch() {
        let mut rng = fixtures::rng(21);
        let mut seen = 0;
        while seen < 5 {
            let (_, g) = fixtures::random_rational(&mut rng, 2, 2, 2).split_polynomial_part();
            if g.is_zero() {
                continue;
            }
            seen += 1;
            let l = LinearPsm::from_system(&fixtures::realize(&g).unwrap()).unwrap();
            assert_eq!(l.branch().unwrap(), Branch::LeadingZero);
            check_orders(&l, &g);
            assert!(mu_relation(&g, &l).unwrap().holds());
        }
    }

    #[test]
    fn sbmb_outputs_pass() {
        let mut rng = fixtures::rng(11);
        for _ in 0..6 {
            let g = fixtures::random_singular(&mut rng, 2, 3, 2, 2);
            let src = RealizedMatrix::new(&g).unwrap();
            let k = src.poly_part.degree().finite().unwrap();
            for eps in 0..k {
                let lin = SbmbLinearization::block_kronecker(&src, eps, k - 1 - eps).unwrap();
                let l = LinearPsm::new(lin.pencil.clone(), lin.n()).unwrap();
                check_orders(&l, &g);
                assert!(mu_relation(&g, &l).unwrap().holds());
            }
        }
    }

    #[test]
    fn m1_m2_and_fiedler_outputs_pass() {
        let mut rng = fixtures::rng(5);
        let g = fixtures::random_square(&mut rng, 2, 3);
        let src = RealizedMatrix::new(&g).unwrap();
        let k = src.poly_part.degree().finite().unwrap();
        let rec = OrthogonalRecurrence::monomial(k);
        let v: Vec<_> = (0..k).map(|i| crate::exactalg::int(i as i64 + 1)).collect();
        let j = crate::linearize::complete_to_basis(&v).unwrap().kron_identity(2);
        let id = ConstMatrix::identity(src.n());
        for lin in [m1_build(&src, &rec, &v, &j, &id, &id).unwrap(), m2_build(&src, &rec, &v, &j.transpose(), &id, &id).unwrap()] {
            let l = LinearPsm::new(lin.pencil.clone(), lin.base.n()).unwrap();
            check_orders(&l, &g);
        }
        for t in all_fiedler_tuples(k) {
            let spec = FiedlerSpec::infer(&t, Assignments::default()).unwrap();
            let f = build_fiedler_rational(&src, &spec).unwrap();
            let l = LinearPsm::new(f.pencil.clone(), f.n()).unwrap();
            check_orders(&l, &g);
        }
    }

    #[test]
    fn basis_map_through_l_eps_eta_transfer() {
        let l = l_eps_eta(1, 1);
        let g = fixtures::g_example5();
        let g_hat = l.transfer().unwrap();
        let lam = Poly::x();
        let mut vb = PolyMatrix::identity(4);
        vb[(1, 2)] = -lam.clone();
        let mut ub = PolyMatrix::identity(4);
        ub[(3, 2)] = -lam;
        let perm = |order: &[usize]| Mat::from_fn(4, 4, |i, j| if order[j] == i { Poly::one() } else { Poly::zero() });
        let v = vb.mul(&perm(&[0, 2, 1, 3]));
        let u = perm(&[0, 3, 1, 2]).transpose().mul(&ub);
        let h = PolyMatrix::from_ints(&[&[&[0]], &[&[1]]]);
        let mapped = polynomial_basis_map(&u, &v, &g, &g_hat, &h, Side::Right, Direction::Forward).unwrap();
        assert_eq!(mapped, PolyMatrix::from_ints(&[&[&[0]], &[&[0, -1]], &[&[1]], &[&[0]]]));
        let back = polynomial_basis_map(&u, &v, &g, &g_hat, &mapped, Side::Right, Direction::Converse).unwrap();
        assert_eq!(back, h);
        let left = polynomial_basis_map(&u, &v, &g, &g_hat, &h, Side::Left, Direction::Forward).unwrap();
        assert_eq!(polynomial_basis_map(&u, &v, &g, &g_hat, &left, Side::Left, Direction::Converse).unwrap(), h);

        let h1 = state_part(&l, &mapped, Side::Right).unwrap();
        let full = PolyMatrix::vstack(&[&h1, &mapped]).unwrap();
        assert!(l.pencil.to_poly().mul(&full).is_zero());
    }

    #[test]
    fn trivial_basis_map() {
        let g = PolyMatrix::from_ints(&[&[&[1], &[0, 1]]]).to_rat();
        let h = PolyMatrix::from_ints(&[&[&[0, -1]], &[&[1]]]);
        let id = PolyMatrix::identity(1);
        let v = PolyMatrix::identity(2);
        assert_eq!(polynomial_basis_map(&id, &v, &g, &g, &h, Side::Right, Direction::Forward).unwrap(), h);
        assert!(polynomial_basis_map(&id, &v, &g, &g, &h.scale(&Poly::zero()), Side::Right, Direction::Forward).is_err());
    }

    #[test]
    fn sbmb_certificate_maps_bases() {
        let mut rng = fixtures::rng(3);
        let g = fixtures::random_singular(&mut rng, 2, 3, 2, 2);
        let lin = SbmbLinearization::block_kronecker(&RealizedMatrix::new(&g).unwrap(), 1, 0).unwrap();
        let (u, v) = lin.uv_certificate();
        let g_hat = lin.transfer();
        for side in [Side::Right, Side::Left] {
            let h = minimal_basis(&g, side).basis;
            let fwd = polynomial_basis_map(&u, &v, &g, &g_hat, &h, side, Direction::Forward).unwrap();
            assert_eq!(polynomial_basis_map(&u, &v, &g, &g_hat, &fwd, side, Direction::Converse).unwrap(), h);
        }
    }

    #[test]
    fn identity_index_sum() {
        assert_eq!(index_sum(&RatMatrix::identity(3)), 0);
        assert_eq!(index_sum(&fixtures::g_example5()), 0);
        assert_eq!(index_sum(&l_eps_eta(1, 1).pencil.to_rat()), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn index_sum_equals_minimal_indices(seed in any::<u64>(), rows in 1usize..=3, cols in 1usize..=3) {
                let g = fixtures::random_bounded(&mut fixtures::rng(seed), rows, cols, 3, 6);
                prop_assert_eq!(index_sum(&g), index_total(&g));
                prop_assert_eq!(StructuralReport::of(&g).index_sum(), StructuralReport::of(&g).mu as i64);
            }
        }
    }
}
