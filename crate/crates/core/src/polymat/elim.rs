//! Fraction-free (Bareiss) elimination over Q[λ].

use super::{PolyMatrix, RatMatrix};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, RatFn};

struct Echelon {
    m: PolyMatrix,
    pivots: Vec<(usize, usize)>,
    swaps: usize,
}

/// Bareiss elimination restricted to the first `ncols` columns; the
/// remaining columns are carried along (augmented right-hand sides).
fn bareiss(src: &PolyMatrix, ncols: usize) -> Echelon {
    let mut m = src.clone();
    let rows = m.rows();
    let total = m.cols();
    let mut prev = Poly::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let p = (r..rows)
            .filter(|&i| !m[(i, c)].is_zero())
            .min_by_key(|&i| (m[(i, c)].degree(), i));
        let Some(p) = p else { continue };
        if p != r {
            m.swap_rows(p, r);
            swaps += 1;
        }
        let piv = m[(r, c)].clone();
        for i in r + 1..rows {
            let f = m[(i, c)].clone();
            for j in c + 1..total {
                let v = &(&piv * &m[(i, j)]) - &(&f * &m[(r, j)]);
                m[(i, j)] = if prev.is_one() { v } else { v.div_exact(&prev).expect("Bareiss division is exact") };
            }
            m[(i, c)] = Poly::zero();
        }
        prev = piv;
        pivots.push((r, c));
        r += 1;
    }
    Echelon { m, pivots, swaps }
}

/// Rank over Q(λ) of a polynomial matrix.
pub fn poly_rank(p: &PolyMatrix) -> usize {
    bareiss(p, p.cols()).pivots.len()
}

/// Rank together with a nonzero minor of that size (the last Bareiss
/// pivot); the minor is 1 for the zero matrix.
pub(crate) fn rank_and_minor(p: &PolyMatrix) -> (usize, Poly) {
    let e = bareiss(p, p.cols());
    match e.pivots.last() {
        None => (0, Poly::one()),
        Some(&(r, c)) => (e.pivots.len(), e.m[(r, c)].clone()),
    }
}

/// Determinant of a square polynomial matrix.
pub fn poly_det(p: &PolyMatrix) -> Result<Poly> {
    if !p.is_square() {
        return Err(Error::NotSquare { rows: p.rows(), cols: p.cols() });
    }
    let n = p.rows();
    if n == 0 {
        return Ok(Poly::one());
    }
    let e = bareiss(p, n);
    if e.pivots.len() < n {
        return Ok(Poly::zero());
    }
    let d = e.m[(n - 1, n - 1)].clone();
    Ok(if e.swaps % 2 == 1 { -d } else { d })
}

/// Normal rank of a rational matrix.
pub fn rank(g: &RatMatrix) -> usize {
    poly_rank(&g.clear_denominators().0)
}

pub fn rat_det(g: &RatMatrix) -> Result<RatFn> {
    if !g.is_square() {
        return Err(Error::NotSquare { rows: g.rows(), cols: g.cols() });
    }
    let (p, d) = g.clear_denominators();
    let num = poly_det(&p)?;
    RatFn::new(num, d.pow(g.rows() as u32))
}

/// Exact solution X of A·X = B for square nonsingular polynomial A.
pub fn solve(a: &PolyMatrix, b: &PolyMatrix) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!("solve with {}x{} and {}x{}", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    let n = a.rows();
    let aug = PolyMatrix::hstack(&[a, b])?;
    let e = bareiss(&aug, n);
    if e.pivots.len() < n {
        return Err(Error::Precondition("singular polynomial matrix in solve".into()));
    }
    let u = e.m;
    let k = b.cols();
    let mut x = RatMatrix::zeros(n, k);
    for col in 0..k {
        for i in (0..n).rev() {
            let mut acc = RatFn::from_poly(u[(i, n + col)].clone());
            for j in i + 1..n {
                if !u[(i, j)].is_zero() {
                    acc = &acc - &(&RatFn::from_poly(u[(i, j)].clone()) * &x[(j, col)]);
                }
            }
            x[(i, col)] = &acc / &RatFn::from_poly(u[(i, i)].clone());
        }
    }
    Ok(x)
}

/// Exact solution X of X·A = B for square nonsingular polynomial A.
pub fn solve_left(a: &PolyMatrix, b: &PolyMatrix) -> Result<RatMatrix> {
    Ok(solve(&a.transpose(), &b.transpose())?.transpose())
}

/// Inverse of a square nonsingular polynomial matrix over Q(λ).
pub fn inverse(a: &PolyMatrix) -> Result<RatMatrix> {
    solve(a, &PolyMatrix::identity(a.rows()))
}

/// Polynomial inverse of a unimodular matrix; errors if not unimodular.
pub fn unimodular_inverse(a: &PolyMatrix) -> Result<PolyMatrix> {
    inverse(a)?.to_poly().ok_or_else(|| Error::Precondition("matrix is not unimodular".into()))
}
