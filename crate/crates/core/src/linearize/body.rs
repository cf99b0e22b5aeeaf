//! Default M(λ) blocks for block Kronecker linearizations and the
//! antidiagonal sum check.

use crate::error::{precondition, Error, Result};
use crate::exactalg::Degree;
use crate::polymat::{ConstMatrix, PolyMatrix};

/// M(λ) of size (η+1)p × (ε+1)m with λD_q + D_{q−1} in the top-left block,
/// D_{q−2}, …, D_η along the rest of the first block row and D_{η−1}, …, D_0
/// down the last block column, so that the bottom-right block is D_0.
pub fn default_body(d: &PolyMatrix, eps: usize, eta: usize) -> Result<PolyMatrix> {
    let q = eps + eta + 1;
    if d.degree() != Degree::Finite(q) {
        return precondition(format!("degree of D must be ε + η + 1 = {q}"));
    }
    let (p, m) = d.shape();
    let c = |i: usize| PolyMatrix::from_const(&d.coeff_matrix(i));
    let mut body = PolyMatrix::zeros((eta + 1) * p, (eps + 1) * m);
    body.set_block(0, 0, &PolyMatrix::from_coeff_matrices(&[d.coeff_matrix(q - 1), d.coeff_matrix(q)]));
    for j in 1..=eps {
        body.set_block(0, j * m, &c(q - 1 - j));
    }
    for i in 1..=eta {
        body.set_block(i * p, eps * m, &c(eta - i));
    }
    Ok(body)
}

/// Block antidiagonal sums of M = λM₁ + M₀: entry k is the sum of the
/// (i, j) blocks of M₁ with i + j = q − k plus those of M₀ with
/// i + j = q − 1 − k (0-based blocks), for k = 0, …, q.
pub fn antidiagonal_sums(body: &PolyMatrix, p: usize, m: usize) -> Result<Vec<ConstMatrix>> {
    let (rows, cols) = body.shape();
    if p == 0 || m == 0 || rows % p != 0 || cols % m != 0 {
        return Err(Error::Dimension(format!("{rows}x{cols} is not a grid of {p}x{m} blocks")));
    }
    if body.degree() > Degree::Finite(1) {
        return precondition("M has degree above one");
    }
    let (eta, eps) = (rows / p - 1, cols / m - 1);
    let q = eps + eta + 1;
    let (m1, m0) = (body.coeff_matrix(1), body.coeff_matrix(0));
    let mut sums = vec![ConstMatrix::zeros(p, m); q + 1];
    for i in 0..=eta {
        for j in 0..=eps {
            let hi = &mut sums[q - i - j];
            *hi = hi.add(&m1.submatrix(i * p, (i + 1) * p, j * m, (j + 1) * m));
            let lo = &mut sums[q - 1 - i - j];
            *lo = lo.add(&m0.submatrix(i * p, (i + 1) * p, j * m, (j + 1) * m));
        }
    }
    Ok(sums)
}

/// Whether M satisfies the antidiagonal sum condition for D.
pub fn satisfies_as_condition(body: &PolyMatrix, d: &PolyMatrix) -> bool {
    let (p, m) = d.shape();
    match antidiagonal_sums(body, p, m) {
        Ok(sums) => sums.iter().enumerate().all(|(k, s)| *s == d.coeff_matrix(k)),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Poly};
    use crate::fixtures::{random_polynomial, rng};
    use crate::linearize::pairs::lambda_row;
    use proptest::prelude::*;

    #[test]
    fn quadratic_one_row() {
        // D = D₂λ² + D₁λ + D₀ with 1×1 coefficients 3, 2, 1
        let d = PolyMatrix::from_ints(&[&[&[1, 2, 3]]]);
        let body = default_body(&d, 1, 0).unwrap();
        assert_eq!(body, PolyMatrix::from_ints(&[&[&[2, 3], &[1]]]));
        assert!(satisfies_as_condition(&body, &d));
    }

    #[test]
    fn linear_single_block() {
        let d = PolyMatrix::from_ints(&[&[&[5, 7]]]);
        assert_eq!(default_body(&d, 0, 0).unwrap(), d);
    }

    #[test]
    fn cubic_two_by_two() {
        let d = PolyMatrix::from_ints(&[&[&[0, 0, 0, 1]]]);
        let body = default_body(&d, 1, 1).unwrap();
        assert_eq!(body, PolyMatrix::from_ints(&[&[&[0, 1], &[0]], &[&[0], &[0]]]));
        let sums: Vec<ConstMatrix> = antidiagonal_sums(&body, 1, 1).unwrap();
        let expect: Vec<ConstMatrix> = [0, 0, 0, 1].iter().map(|&c| ConstMatrix::from_ints(&[&[c]])).collect();
        assert_eq!(sums, expect);
    }

    #[test]
    fn degree_mismatch() {
        let d = PolyMatrix::from_ints(&[&[&[1, 2, 3]]]);
        assert!(default_body(&d, 1, 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn body_reproduces_d(seed in 0u64..1000, eps in 0usize..3, eta in 0usize..3, p in 1usize..3, m in 1usize..3) {
            let q = eps + eta + 1;
            let mut r = rng(seed);
            let mut d = random_polynomial(&mut r, p, m, q);
            d[(0, 0)] = &d[(0, 0)] + &Poly::monomial(int(1), q);
            prop_assume!(d.degree() == Degree::Finite(q));
            let body = default_body(&d, eps, eta).unwrap();
            prop_assert!(satisfies_as_condition(&body, &d));
            let n2 = lambda_row(eta).kron_identity(p);
            let n1 = lambda_row(eps).kron_identity(m);
            prop_assert_eq!(n2.mul(&body).mul(&n1.transpose()), d);
        }
    }
}
