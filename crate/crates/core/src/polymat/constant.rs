//! Exact linear algebra over the rationals.

use super::ConstMatrix;
use crate::error::{Error, Result};
use crate::exactalg::Rat;
use num_traits::{One, Zero};

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &ConstMatrix) -> (ConstMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        a.scale_row(r, &inv);
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = -a[(i, c)].clone();
                a.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &ConstMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of the right null space as columns, one per free variable.
pub fn nullspace(m: &ConstMatrix) -> ConstMatrix {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = ConstMatrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            out[(p, k)] = -r[(i, f)].clone();
        }
    }
    out
}

pub fn det(m: &ConstMatrix) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let mut a = m.clone();
    let n = a.rows();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Ok(Rat::zero());
        };
        if p != c {
            a.swap_rows(p, c);
            d = -d;
        }
        let piv = a[(c, c)].clone();
        d *= &piv;
        for i in c + 1..n {
            if !a[(i, c)].is_zero() {
                let f = -(&a[(i, c)] / &piv);
                a.add_row_multiple(i, c, &f);
            }
        }
    }
    Ok(d)
}

pub fn inverse(m: &ConstMatrix) -> Result<ConstMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let aug = ConstMatrix::hstack(&[m, &ConstMatrix::identity(n)])?;
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Precondition("singular constant matrix".into()));
    }
    Ok(r.submatrix(0, n, n, 2 * n))
}

pub fn is_nonsingular(m: &ConstMatrix) -> bool {
    m.is_square() && rank(m) == m.rows()
}

/// One solution X of X·A = B (rows of B in the row space of A), if any.
pub fn solve_left(a: &ConstMatrix, b: &ConstMatrix) -> Option<ConstMatrix> {
    // Aᵀ Xᵀ = Bᵀ
    solve_right(&a.transpose(), &b.transpose()).map(|x| x.transpose())
}

/// One solution X of A·X = B, if any; free variables set to zero.
pub fn solve_right(a: &ConstMatrix, b: &ConstMatrix) -> Option<ConstMatrix> {
    let n = a.cols();
    let aug = ConstMatrix::hstack(&[a, b]).ok()?;
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = ConstMatrix::zeros(n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(p, j)] = r[(i, n + j)].clone();
        }
    }
    Some(x)
}

/// Rows of `m` forming a basis of its row space (echelon rows).
pub fn row_space_basis(m: &ConstMatrix) -> ConstMatrix {
    let (r, pivots) = rref(m);
    r.submatrix(0, pivots.len(), 0, m.cols())
}
