//! Minimal polynomial bases of rational null spaces, their certification,
//! and an independent brute-force oracle for minimal indices.

use crate::error::{Error, Result};
use crate::exactalg::{int, Degree, Poly, Ring};
use crate::polymat::{constant, invariant_factors, poly_rank, ConstMatrix, PolyMatrix, RatMatrix};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("unknown side {s:?}"))),
        }
    }
}

/// Columns of `basis` form a minimal basis of the right (or left) rational
/// null space; `indices` are the sorted column degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalBasis {
    pub side: Side,
    pub basis: PolyMatrix,
    pub indices: Vec<usize>,
}

impl MinimalBasis {
    /// Wraps a basis, reading the indices off its column degrees.
    pub fn from_columns(side: Side, basis: PolyMatrix) -> Self {
        let indices = basis.col_degrees().iter().map(|d| d.finite().unwrap_or(0)).collect();
        MinimalBasis { side, basis, indices }
    }

    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.cols() == 0
    }

    pub fn index_sum(&self) -> usize {
        self.indices.iter().sum()
    }
}

/// Matrix whose right null space is the requested one.
fn oriented(g: &RatMatrix, side: Side) -> RatMatrix {
    match side {
        Side::Right => g.clone(),
        Side::Left => g.transpose(),
    }
}

/// Module basis of the polynomial right kernel of a polynomial matrix via
/// column-only elimination; the trailing columns of the accumulated
/// unimodular transformer span the kernel.
fn right_kernel_module(p: &PolyMatrix) -> PolyMatrix {
    let (rows, cols) = p.shape();
    let mut a = p.clone();
    let mut v = PolyMatrix::identity(cols);
    let mut k = 0;
    for i in 0..rows {
        if k == cols {
            break;
        }
        loop {
            let best = (k..cols).filter(|&j| !a[(i, j)].is_zero()).min_by_key(|&j| (a[(i, j)].degree(), j));
            let Some(b) = best else { break };
            a.swap_cols(k, b);
            v.swap_cols(k, b);
            let piv = a[(i, k)].clone();
            let mut clean = true;
            for j in k + 1..cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, j)].divrem(&piv).expect("pivot nonzero");
                let mq = -q;
                a.add_col_multiple(j, k, &mq);
                v.add_col_multiple(j, k, &mq);
                clean &= r.is_zero();
            }
            if clean {
                k += 1;
                break;
            }
        }
    }
    v.submatrix(0, cols, k, cols)
}

/// 𝔽[λ]-module basis of the polynomial kernel of G on the given side.
pub fn kernel_module_basis(g: &RatMatrix, side: Side) -> PolyMatrix {
    let (p, _) = oriented(g, side).clear_denominators();
    right_kernel_module(&p)
}

/// Column reduction by repeated elimination in the highest-column-degree
/// coefficient matrix. Returns `(reduced, u)` with `p·u = reduced`.
pub fn column_reduce(p: &PolyMatrix) -> Result<(PolyMatrix, PolyMatrix)> {
    if poly_rank(p) < p.cols() {
        return Err(Error::Precondition("column_reduce needs full column rank".into()));
    }
    let mut a = p.clone();
    let mut u = PolyMatrix::identity(p.cols());
    loop {
        let degs: Vec<usize> = a.col_degrees().iter().map(|d| d.finite().expect("nonzero column")).collect();
        let ns = constant::nullspace(&a.highest_col_coeff());
        if ns.cols() == 0 {
            break;
        }
        let c = ns.col(0);
        // highest degree among the involved columns, ties by leftmost
        let k = (0..c.len())
            .filter(|&j| !Ring::is_zero(&c[j]))
            .fold(None::<usize>, |acc, j| match acc {
                Some(b) if degs[b] >= degs[j] => Some(b),
                _ => Some(j),
            })
            .expect("null vector nonzero");
        let ck = c[k].clone();
        for j in 0..c.len() {
            if j == k || Ring::is_zero(&c[j]) {
                continue;
            }
            let m = Poly::monomial(&c[j] / &ck, degs[k] - degs[j]);
            a.add_col_multiple(k, j, &m);
            u.add_col_multiple(k, j, &m);
        }
    }
    let order = degree_order(&a);
    Ok((a.select_cols(&order), u.select_cols(&order)))
}

fn degree_order(a: &PolyMatrix) -> Vec<usize> {
    let degs = a.col_degrees();
    let mut order: Vec<usize> = (0..a.cols()).collect();
    order.sort_by_key(|&j| degs[j]);
    order
}

/// Sorts columns by degree and flips signs so that the first entry of
/// each column attaining the column degree has a positive leading coefficient.
pub fn normalize_columns(basis: &PolyMatrix) -> PolyMatrix {
    let mut b = basis.select_cols(&degree_order(basis));
    let degs = b.col_degrees();
    for (j, d) in degs.iter().enumerate() {
        let Degree::Finite(d) = *d else { continue };
        let i = (0..b.rows()).find(|&i| b[(i, j)].degree() == Degree::Finite(d)).expect("column attains degree");
        if b[(i, j)].coeff(d).is_negative() {
            b.scale_col(j, &Poly::constant(int(-1)));
        }
    }
    b
}

/// Minimal basis: module basis of the kernel, then column reduction.
pub fn minimal_basis(g: &RatMatrix, side: Side) -> MinimalBasis {
    let module = kernel_module_basis(g, side);
    let (reduced, _) = column_reduce(&module).expect("kernel module basis has full column rank");
    MinimalBasis::from_columns(side, normalize_columns(&reduced))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalityDefect {
    NotInNullSpace,
    WrongCount { expected: usize, found: usize },
    RankDropsSomewhere,
    NotColumnReduced,
}

impl fmt::Display for MinimalityDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalityDefect::NotInNullSpace => write!(f, "columns are not in the null space"),
            MinimalityDefect::WrongCount { expected, found } => {
                write!(f, "null space has dimension {expected} but {found} columns were given")
            }
            MinimalityDefect::RankDropsSomewhere => write!(f, "basis loses rank at some point (nonunit invariant factor)"),
            MinimalityDefect::NotColumnReduced => write!(f, "basis is not column reduced"),
        }
    }
}

/// Outcome of [`is_minimal_basis`]; `failed` names the first failing condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityCertificate {
    pub failed: Option<MinimalityDefect>,
}

impl MinimalityCertificate {
    pub fn passed(&self) -> bool {
        self.failed.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.failed {
            None => Ok(()),
            Some(d) => Err(Error::Certification(d.to_string())),
        }
    }
}

pub fn is_minimal_basis(candidate: &PolyMatrix, g: &RatMatrix, side: Side) -> Result<MinimalityCertificate> {
    let h = oriented(g, side);
    if candidate.rows() != h.cols() {
        return Err(Error::Dimension(format!(
            "basis has {} rows but the {side} null space lives in dimension {}",
            candidate.rows(),
            h.cols()
        )));
    }
    let fail = |d| Ok(MinimalityCertificate { failed: Some(d) });
    let (p, _) = h.clear_denominators();
    if !p.mul(candidate).is_zero() {
        return fail(MinimalityDefect::NotInNullSpace);
    }
    let nullity = h.cols() - poly_rank(&p);
    if candidate.cols() != nullity {
        return fail(MinimalityDefect::WrongCount { expected: nullity, found: candidate.cols() });
    }
    if candidate.cols() > 0 {
        let f = invariant_factors(candidate);
        if f.len() < candidate.cols() || f.iter().any(|x| !x.is_one()) {
            return fail(MinimalityDefect::RankDropsSomewhere);
        }
        if constant::rank(&candidate.highest_col_coeff()) < candidate.cols() {
            return fail(MinimalityDefect::NotColumnReduced);
        }
    }
    Ok(MinimalityCertificate { failed: None })
}

/// Certifies and wraps a basis; errors name the failing condition.
pub fn certify(candidate: PolyMatrix, g: &RatMatrix, side: Side) -> Result<MinimalBasis> {
    is_minimal_basis(&candidate, g, side)?.into_result()?;
    Ok(MinimalBasis::from_columns(side, candidate))
}

/// Normal rank by evaluation at enough integer points that some nonzero
/// maximal minor cannot vanish at all of them.
fn rank_by_evaluation(p: &PolyMatrix) -> usize {
    let rmax = p.rows().min(p.cols());
    let Some(dp) = p.degree().finite() else { return 0 };
    let mut best = 0;
    for t in 0..=(rmax * dp) as i64 {
        best = best.max(constant::rank(&p.eval(&int(t))));
        if best == rmax {
            break;
        }
    }
    best
}

/// Dimension of {x polynomial, deg x ≤ δ, P·x = 0} over ℚ.
fn bounded_kernel_dim(coeffs: &[ConstMatrix], rows: usize, cols: usize, delta: usize) -> usize {
    let unknowns = cols * (delta + 1);
    if coeffs.is_empty() {
        return unknowns;
    }
    let eqs = rows * (coeffs.len() + delta);
    let mut sys = ConstMatrix::zeros(eqs, unknowns);
    for (k, pk) in coeffs.iter().enumerate() {
        for t in 0..=delta {
            // coefficient of λ^{k+t} receives P_k x_t
            sys.set_block(rows * (k + t), cols * t, pk);
        }
    }
    unknowns - constant::rank(&sys)
}

/// Forney-style brute force: the number of minimal indices ≤ δ equals the
/// growth of the degree-≤δ kernel dimension from δ−1 to δ.
pub fn oracle_minimal_indices(g: &RatMatrix, side: Side, degree_cap: usize) -> Result<Vec<usize>> {
    let (p, _) = oriented(g, side).clear_denominators();
    let (rows, cols) = p.shape();
    let nullity = cols - rank_by_evaluation(&p);
    let coeffs: Vec<ConstMatrix> = match p.degree().finite() {
        None => Vec::new(),
        Some(d) => (0..=d).map(|k| p.coeff_matrix(k)).collect(),
    };
    let mut indices = Vec::new();
    let mut prev_dim = 0;
    let mut prev_at_most = 0;
    for delta in 0..=degree_cap {
        if indices.len() == nullity {
            break;
        }
        let dim = bounded_kernel_dim(&coeffs, rows, cols, delta);
        let at_most = dim - prev_dim;
        for _ in prev_at_most..at_most {
            indices.push(delta);
        }
        prev_dim = dim;
        prev_at_most = at_most;
    }
    if indices.len() < nullity {
        return Err(Error::DegreeCap { cap: degree_cap, found: indices.len(), nullity });
    }
    Ok(indices)
}

/// Nullity on the requested side, from the normal rank.
pub fn nullity(g: &RatMatrix, side: Side) -> usize {
    let h = oriented(g, side);
    h.cols() - crate::polymat::rank(&h)
}
