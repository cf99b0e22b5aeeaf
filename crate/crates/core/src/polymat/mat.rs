use crate::error::{Error, Result};
use crate::exactalg::{Degree, Poly, Rat, RatFn, Ring};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense row-major matrix over a commutative ring. Zero-sized dimensions
/// are allowed (they stand for empty state blocks and empty bases).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Mat<Poly>;
pub type RatMatrix = Mat<RatFn>;
pub type ConstMatrix = Mat<Rat>;

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Ring> Mat<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match {rows}x{cols}");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Rectangular diagonal matrix with the given leading diagonal entries.
    pub fn diag(rows: usize, cols: usize, entries: &[T]) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for (k, e) in entries.iter().enumerate() {
            m[(k, k)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self[(i, j)]
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Self = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on a shape mismatch (an internal invariant violation).
    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix product shape")
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.add_ref(b)).expect("matrix sum shape")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.sub_ref(b)).expect("matrix difference shape")
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg_ref())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Mat::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Mat::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Mat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn hstack(parts: &[&Self]) -> Result<Self> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::Dimension("hstack with different row counts".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Self]) -> Result<Self> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if parts.iter().any(|p| p.cols != cols) {
            return Err(Error::Dimension("vstack with different column counts".into()));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            out.set_block(r0, 0, p);
            r0 += p.rows;
        }
        Ok(out)
    }

    /// Assembles a block matrix from a grid; every block row must share
    /// row counts and every block column must share column counts.
    pub fn from_blocks(grid: &[Vec<&Self>]) -> Result<Self> {
        let rows: Vec<Self> = grid.iter().map(|r| Mat::hstack(r)).collect::<Result<_>>()?;
        let refs: Vec<&Self> = rows.iter().collect();
        Mat::vstack(&refs)
    }

    pub fn block_diag(parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// self ⊗ I_w
    pub fn kron_identity(&self, w: usize) -> Self {
        let mut out = Mat::zeros(self.rows * w, self.cols * w);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for t in 0..w {
                    out[(i * w + t, j * w + t)] = a.clone();
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c · row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = s.mul_ref(c);
            let d = &mut self.data[dst * self.cols + j];
            *d = d.add_ref(&v);
        }
    }

    /// col[dst] += c · col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let v = s.mul_ref(c);
            let d = &mut self.data[i * self.cols + dst];
            *d = d.add_ref(&v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let d = &mut self.data[i * self.cols + j];
            *d = d.mul_ref(c);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &T) {
        for i in 0..self.rows {
            let d = &mut self.data[i * self.cols + j];
            *d = d.mul_ref(c);
        }
    }
}

pub fn kron<T: Ring>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    Mat::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        a[(i / b.rows, j / b.cols)].mul_ref(&b[(i % b.rows, j % b.cols)])
    })
}

impl PolyMatrix {
    pub fn from_ints(rows: &[&[&[i64]]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|c| Poly::from_ints(c)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn from_const(c: &ConstMatrix) -> Self {
        c.map(|a| Poly::constant(a.clone()))
    }

    /// Σ_k coeffs[k] λ^k
    pub fn from_coeff_matrices(coeffs: &[ConstMatrix]) -> Self {
        let (r, c) = coeffs[0].shape();
        Mat::from_fn(r, c, |i, j| Poly::new(coeffs.iter().map(|m| m[(i, j)].clone()).collect()))
    }

    pub fn degree(&self) -> Degree {
        self.data.iter().map(|p| p.degree()).max().unwrap_or(Degree::NegInf)
    }

    pub fn coeff_matrix(&self, k: usize) -> ConstMatrix {
        self.map(|p| p.coeff(k))
    }

    pub fn eval(&self, x: &Rat) -> ConstMatrix {
        self.map(|p| p.eval(x))
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|p| RatFn::from_poly(p.clone()))
    }

    pub fn col_degrees(&self) -> Vec<Degree> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].degree()).max().unwrap_or(Degree::NegInf))
            .collect()
    }

    pub fn row_degrees(&self) -> Vec<Degree> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].degree()).max().unwrap_or(Degree::NegInf))
            .collect()
    }

    /// Highest-column-degree coefficient matrix; zero columns stay zero.
    pub fn highest_col_coeff(&self) -> ConstMatrix {
        let degs = self.col_degrees();
        Mat::from_fn(self.rows, self.cols, |i, j| match degs[j] {
            Degree::NegInf => <Rat as Ring>::zero(),
            Degree::Finite(d) => self[(i, j)].coeff(d),
        })
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        self.map(|p| p.scale(c))
    }
}

impl RatMatrix {
    pub fn from_poly(p: &PolyMatrix) -> Self {
        p.to_rat()
    }

    pub fn from_const(c: &ConstMatrix) -> Self {
        c.map(|a| RatFn::constant(a.clone()))
    }

    /// Monic lcm of all denominators.
    pub fn lcm_denominator(&self) -> Poly {
        self.data.iter().fold(Poly::one(), |acc, f| if f.den().is_one() { acc } else { acc.lcm(f.den()) })
    }

    /// Returns (δ·G, δ) with δ the monic lcm of the denominators.
    pub fn clear_denominators(&self) -> (PolyMatrix, Poly) {
        let d = self.lcm_denominator();
        let p = self.map(|f| {
            if f.den().is_one() {
                f.num() * &d
            } else {
                f.num() * &d.div_exact(f.den()).expect("lcm divisible")
            }
        });
        (p, d)
    }

    pub fn to_poly(&self) -> Option<PolyMatrix> {
        if self.data.iter().all(|f| f.is_polynomial()) {
            Some(self.map(|f| f.num().clone()))
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.data.iter().all(|f| f.is_polynomial())
    }

    /// G = D + G_sp with D polynomial and G_sp strictly proper.
    pub fn split_polynomial_part(&self) -> (PolyMatrix, RatMatrix) {
        let parts: Vec<(Poly, RatFn)> = self.data.iter().map(|f| f.split_polynomial_part()).collect();
        let d = Mat::from_vec(self.rows, self.cols, parts.iter().map(|x| x.0.clone()).collect());
        let sp = Mat::from_vec(self.rows, self.cols, parts.into_iter().map(|x| x.1).collect());
        (d, sp)
    }

    pub fn is_proper(&self) -> bool {
        self.data.iter().all(|f| f.is_proper())
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.data.iter().all(|f| f.is_strictly_proper())
    }

    pub fn eval(&self, x: &Rat) -> Result<ConstMatrix> {
        let data = self.data.iter().map(|f| f.eval(x)).collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_vec(self.rows, self.cols, data))
    }

    /// G(1/μ)
    pub fn substitute_reciprocal(&self) -> Self {
        self.map(|f| f.substitute_reciprocal())
    }

    pub fn mul_poly(&self, rhs: &PolyMatrix) -> Self {
        self.mul(&rhs.to_rat())
    }
}

impl ConstMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&c| crate::exactalg::int(c)).collect()).collect())
            .expect("rectangular literal")
    }
}

/// Unit column vector e_k of length n (0-based k).
pub fn unit_vector(n: usize, k: usize) -> ConstMatrix {
    let mut v = ConstMatrix::zeros(n, 1);
    v[(k, 0)] = <Rat as Ring>::one();
    v
}
