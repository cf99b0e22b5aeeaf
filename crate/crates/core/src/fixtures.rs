//! Worked examples and seeded random generators shared by the tests, the
//! acceptance suite and the command-line tool.

use crate::error::Result;
use crate::exactalg::{int, Poly, RatFn};
use crate::polymat::{rank, Mat, PolyMatrix, RatMatrix};
use crate::sysmat::{minimal_realization, PolySystemMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type FixtureRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FixtureRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn lam() -> Poly {
    Poly::x()
}

/// A = [[λ+1, λ²], [1, λ]], B = (1, 0)ᵀ, C = (0, 1), D = 0; G = −1/λ.
/// Proper but not strongly irreducible.
pub fn first_example() -> PolySystemMatrix {
    PolySystemMatrix::new(
        PolyMatrix::from_ints(&[&[&[1, 1], &[0, 0, 1]], &[&[1], &[0, 1]]]),
        PolyMatrix::from_ints(&[&[&[1]], &[&[0]]]),
        PolyMatrix::from_ints(&[&[&[0], &[1]]]),
        PolyMatrix::zeros(1, 1),
    )
    .expect("valid system")
}

/// A = [[λ,0,0],[0,1,0],[0,1,1]], B = (1, λ, 1)ᵀ, C = (1, 0, λ), D = 0;
/// G = 1/λ − λ² + λ. Strongly irreducible but not proper.
pub fn second_example() -> PolySystemMatrix {
    PolySystemMatrix::new(
        PolyMatrix::from_ints(&[&[&[0, 1], &[0], &[0]], &[&[0], &[1], &[0]], &[&[0], &[1], &[1]]]),
        PolyMatrix::from_ints(&[&[&[1]], &[&[0, 1]], &[&[1]]]),
        PolyMatrix::from_ints(&[&[&[1], &[0], &[0, 1]]]),
        PolyMatrix::zeros(1, 1),
    )
    .expect("valid system")
}

/// u×(u+1) bidiagonal pencil with 1 on the diagonal and λ above it.
pub fn k_block(u: usize) -> PolyMatrix {
    let mut k = PolyMatrix::zeros(u, u + 1);
    for i in 0..u {
        k[(i, i)] = Poly::one();
        k[(i, i + 1)] = lam();
    }
    k
}

/// diag(λ + 1/λ, 0)
pub fn g_example5() -> RatMatrix {
    let f = RatFn::new(Poly::from_ints(&[1, 0, 1]), lam()).expect("nonzero denominator");
    Mat::from_vec(2, 2, vec![f, RatFn::zero(), RatFn::zero(), RatFn::zero()])
}

/// The pencil [λ | 1; −1 | diag(λ, K_ε, K_ηᵀ)] as a system matrix with n = 1.
pub fn l_eps_eta(eps: usize, eta: usize) -> PolySystemMatrix {
    let d = PolyMatrix::block_diag(&[&PolyMatrix::from_ints(&[&[&[0, 1]]]), &k_block(eps), &k_block(eta).transpose()]);
    let (p, m) = d.shape();
    let mut b = PolyMatrix::zeros(1, m);
    b[(0, 0)] = Poly::one();
    let mut c = PolyMatrix::zeros(p, 1);
    c[(0, 0)] = Poly::one();
    PolySystemMatrix::new(PolyMatrix::from_ints(&[&[&[0, 1]]]), b, c, d).expect("valid system")
}

/// Minimal system matrix [λI − A, B; −C, D] realizing G.
pub fn realize(g: &RatMatrix) -> Result<PolySystemMatrix> {
    let (d, sp) = g.split_polynomial_part();
    minimal_realization(&sp)?.system_matrix(d)
}

fn small_coeff(rng: &mut FixtureRng) -> i64 {
    rng.gen_range(-2..=2)
}

/// Polynomial of degree at most `max_deg` with coefficients in [−2, 2].
pub fn random_poly(rng: &mut FixtureRng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let mut cs: Vec<i64> = (0..=deg).map(|_| small_coeff(rng)).collect();
    if cs[deg] == 0 {
        cs[deg] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    Poly::from_ints(&cs)
}

/// Monic polynomial of degree 1..=max_deg with integer roots in [−1, 1].
pub fn random_monic(rng: &mut FixtureRng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(1..=max_deg.max(1));
    (0..deg).fold(Poly::one(), |acc, _| &acc * &Poly::linear_root(int(rng.gen_range(-1..=1))))
}

/// Entries zero with probability 1/4, otherwise random of degree ≤ max_deg.
pub fn random_polynomial(rng: &mut FixtureRng, rows: usize, cols: usize, max_deg: usize) -> PolyMatrix {
    Mat::from_fn(rows, cols, |_, _| if rng.gen_bool(0.25) { Poly::zero() } else { random_poly(rng, max_deg) })
}

/// Rational entry with numerator and denominator degrees ≤ max_deg; poles
/// are drawn from {−1, 0, 1} so that entries share them.
pub fn random_entry(rng: &mut FixtureRng, max_deg: usize) -> RatFn {
    if rng.gen_bool(0.25) {
        return RatFn::zero();
    }
    let num = random_poly(rng, max_deg);
    if max_deg == 0 || rng.gen_bool(0.6) {
        return RatFn::from_poly(num);
    }
    RatFn::new(num, random_monic(rng, max_deg)).expect("monic denominator")
}

pub fn random_rational(rng: &mut FixtureRng, rows: usize, cols: usize, max_deg: usize) -> RatMatrix {
    Mat::from_fn(rows, cols, |_, _| random_entry(rng, max_deg))
}

/// Random rational matrix with total pole degree at most `budget`, so that
/// no minimal index can exceed it. Column j shares a denominator of degree
/// ≤ c_j with numerators of degree ≤ c_j, where c_j ≤ max_deg and
/// Σ c_j ≤ budget; a column costs at most c_j and the cost is subadditive.
pub fn random_bounded(rng: &mut FixtureRng, rows: usize, cols: usize, max_deg: usize, budget: usize) -> RatMatrix {
    let mut costs: Vec<usize> = (0..cols).map(|_| rng.gen_range(0..=max_deg)).collect();
    while costs.iter().sum::<usize>() > budget {
        let j = rng.gen_range(0..cols);
        costs[j] = costs[j].saturating_sub(1);
    }
    let mut g = RatMatrix::zeros(rows, cols);
    for (j, &c) in costs.iter().enumerate() {
        let den = if c > 0 && rng.gen_bool(0.5) { random_monic(rng, c) } else { Poly::one() };
        for i in 0..rows {
            if rng.gen_bool(0.25) {
                continue;
            }
            g[(i, j)] = RatFn::new(random_poly(rng, c), den.clone()).expect("monic denominator");
        }
    }
    g
}

/// Rank-deficient rational matrix built as a sum of `rank` outer products
/// u·vᵀ (u polynomial of degree ≤ 1, v rational), kept only when every
/// entry has numerator and denominator degree ≤ max_deg and the polynomial
/// part has degree ≥ min_poly_deg.
pub fn random_singular(
    rng: &mut FixtureRng,
    rows: usize,
    cols: usize,
    max_deg: usize,
    min_poly_deg: usize,
) -> RatMatrix {
    loop {
        let r = rng.gen_range(1..rows.min(cols).max(2));
        let mut g = RatMatrix::zeros(rows, cols);
        for _ in 0..r {
            let u = random_polynomial(rng, rows, 1, 1).to_rat();
            let v = random_rational(rng, 1, cols, max_deg.saturating_sub(1));
            g = g.add(&u.mul(&v));
        }
        let fits = g.data().iter().all(|f| f.num().deg().unwrap_or(0) <= max_deg && f.den().deg().unwrap_or(0) <= max_deg);
        let poly_deg = g.split_polynomial_part().0.degree().finite();
        let singular = rank(&g) < rows.max(cols);
        if fits && singular && poly_deg.is_some_and(|d| d >= min_poly_deg) && !g.is_zero() {
            return g;
        }
    }
}

/// Square rational matrix with polynomial part of degree ≥ 2 and entry
/// degrees ≤ max_deg (used for the M1/M2 fixtures).
pub fn random_square(rng: &mut FixtureRng, size: usize, max_deg: usize) -> RatMatrix {
    loop {
        let g = random_rational(rng, size, size, max_deg);
        if g.split_polynomial_part().0.degree().finite().is_some_and(|d| d >= 2) {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysmat::transfer_function;

    #[test]
    fn l_family_shapes() {
        let l = l_eps_eta(2, 3);
        assert_eq!(l.assembled().shape(), (1 + 2 + 2 + 3, 1 + 2 + 2 + 3));
        let g = transfer_function(&l);
        assert_eq!(g[(0, 0)], g_example5()[(0, 0)]);
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_singular(&mut rng(7), 3, 4, 3, 2);
        let b = random_singular(&mut rng(7), 3, 4, 3, 2);
        assert_eq!(a, b);
        assert!(rank(&a) < 4);
        let p = realize(&a).unwrap();
        assert_eq!(transfer_function(&p), a);
    }

    #[test]
    fn bounded_generator_respects_budget() {
        let mut r = rng(3);
        for _ in 0..20 {
            let g = random_bounded(&mut r, 4, 4, 3, 8);
            assert!(crate::polymat::mcmillan_degree(&g) <= 8);
        }
    }
}
