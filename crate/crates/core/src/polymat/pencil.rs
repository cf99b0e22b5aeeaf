use super::{ConstMatrix, PolyMatrix, RatMatrix};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, Rat};

/// Linear matrix polynomial λ·l1 + l0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub l1: ConstMatrix,
    pub l0: ConstMatrix,
}

impl Pencil {
    pub fn new(l1: ConstMatrix, l0: ConstMatrix) -> Result<Self> {
        if l1.shape() != l0.shape() {
            return Err(Error::Dimension("pencil coefficients differ in shape".into()));
        }
        Ok(Pencil { l1, l0 })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Pencil { l1: ConstMatrix::zeros(rows, cols), l0: ConstMatrix::zeros(rows, cols) }
    }

    /// Splits a polynomial matrix of degree at most one.
    pub fn from_poly(p: &PolyMatrix) -> Result<Self> {
        if p.degree() > crate::exactalg::Degree::Finite(1) {
            return Err(Error::Precondition("matrix has degree above one".into()));
        }
        Ok(Pencil { l1: p.coeff_matrix(1), l0: p.coeff_matrix(0) })
    }

    pub fn rows(&self) -> usize {
        self.l1.rows()
    }

    pub fn cols(&self) -> usize {
        self.l1.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.l1.shape()
    }

    pub fn to_poly(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows(), self.cols(), |i, j| {
            Poly::new(vec![self.l0[(i, j)].clone(), self.l1[(i, j)].clone()])
        })
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.to_poly().to_rat()
    }

    pub fn eval(&self, x: &Rat) -> ConstMatrix {
        self.l1.scale(x).add(&self.l0)
    }

    pub fn transpose(&self) -> Pencil {
        Pencil { l1: self.l1.transpose(), l0: self.l0.transpose() }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Pencil {
        Pencil { l1: self.l1.submatrix(r0, r1, c0, c1), l0: self.l0.submatrix(r0, r1, c0, c1) }
    }

    pub fn left_mul(&self, x: &ConstMatrix) -> Pencil {
        Pencil { l1: x.mul(&self.l1), l0: x.mul(&self.l0) }
    }

    pub fn right_mul(&self, y: &ConstMatrix) -> Pencil {
        Pencil { l1: self.l1.mul(y), l0: self.l0.mul(y) }
    }

    pub fn from_blocks(grid: &[Vec<&Pencil>]) -> Result<Pencil> {
        let l1: Vec<Vec<&ConstMatrix>> = grid.iter().map(|r| r.iter().map(|p| &p.l1).collect()).collect();
        let l0: Vec<Vec<&ConstMatrix>> = grid.iter().map(|r| r.iter().map(|p| &p.l0).collect()).collect();
        Ok(Pencil { l1: ConstMatrix::from_blocks(&l1)?, l0: ConstMatrix::from_blocks(&l0)? })
    }
}
