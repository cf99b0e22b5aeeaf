//! Smith form over Q[λ], the finite Smith–McMillan form and the
//! structure at infinity.

use super::elim::{poly_det, rank_and_minor, rat_det};
use super::{PolyMatrix, RatMatrix};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, Rat, RatFn, Valuation};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm {
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    pub inv_factors: Vec<Poly>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmithMcMillanForm {
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    pub eps: Vec<Poly>,
    pub psi: Vec<Poly>,
    pub rank: usize,
}

/// Invariant orders at infinity, non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityStructure {
    pub q: Vec<i64>,
}

impl InfinityStructure {
    /// d = −min(0, q₁); zero for the zero matrix.
    pub fn d(&self) -> i64 {
        -self.q.first().copied().unwrap_or(0).min(0)
    }

    pub fn infinite_zeros(&self) -> Vec<i64> {
        self.q.iter().copied().filter(|&x| x > 0).collect()
    }

    pub fn infinite_poles(&self) -> Vec<i64> {
        self.q.iter().copied().filter(|&x| x < 0).collect()
    }
}

struct Work<'a> {
    a: PolyMatrix,
    u: Option<&'a mut PolyMatrix>,
    v: Option<&'a mut PolyMatrix>,
}

impl Work<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = self.u.as_deref_mut() {
            u.swap_rows(i, j);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = self.v.as_deref_mut() {
            v.swap_cols(i, j);
        }
    }
    fn add_row(&mut self, dst: usize, src: usize, c: &Poly) {
        self.a.add_row_multiple(dst, src, c);
        if let Some(u) = self.u.as_deref_mut() {
            u.add_row_multiple(dst, src, c);
        }
    }
    fn add_col(&mut self, dst: usize, src: usize, c: &Poly) {
        self.a.add_col_multiple(dst, src, c);
        if let Some(v) = self.v.as_deref_mut() {
            v.add_col_multiple(dst, src, c);
        }
    }
    fn scale_row(&mut self, i: usize, c: &Poly) {
        self.a.scale_row(i, c);
        if let Some(u) = self.u.as_deref_mut() {
            u.scale_row(i, c);
        }
    }
}

/// Core reduction; returns the diagonal invariant factors.
fn reduce(w: &mut Work<'_>) -> Vec<Poly> {
    let (rows, cols) = w.a.shape();
    let mut out = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            // minimal-degree pivot, ties by lowest (row, col)
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let e = &w.a[(i, j)];
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.degree() < w.a[(bi, bj)].degree()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return out;
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            let piv = w.a[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..rows {
                if w.a[(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = w.a[(i, k)].divrem(&piv).expect("pivot nonzero");
                w.add_row(i, k, &-q);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if w.a[(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = w.a[(k, j)].divrem(&piv).expect("pivot nonzero");
                w.add_col(j, k, &-q);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !piv.divides(&w.a[(i, j)])));
            if let Some(i) = bad {
                w.add_row(k, i, &Poly::one());
                continue;
            }
            break;
        }
        let lead = w.a[(k, k)].lead().expect("pivot nonzero").recip();
        if !num_traits::One::is_one(&lead) {
            w.scale_row(k, &Poly::constant(lead));
        }
        out.push(w.a[(k, k)].clone());
    }
    out
}

/// Smith form with recorded unimodular transformers, `u·p·v = diag(inv_factors, 0)`.
pub fn smith_form(p: &PolyMatrix) -> SmithForm {
    let mut u = PolyMatrix::identity(p.rows());
    let mut v = PolyMatrix::identity(p.cols());
    let inv_factors = {
        let mut w = Work { a: p.clone(), u: Some(&mut u), v: Some(&mut v) };
        reduce(&mut w)
    };
    SmithForm { u, v, rank: inv_factors.len(), inv_factors }
}

/// Invariant factors only. With r the rank and d a nonzero r×r minor, the
/// column module of [P, d·I] has the same first r invariant factors as P
/// (each divides d), so entries are kept reduced modulo d throughout.
pub fn invariant_factors(p: &PolyMatrix) -> Vec<Poly> {
    let (r, d) = rank_and_minor(p);
    if r == 0 {
        return Vec::new();
    }
    if d.deg() == Some(0) {
        return vec![Poly::one(); r];
    }
    let d = d.monic();
    let modd = |x: &Poly| x.divrem(&d).expect("d nonzero").1;
    let mut a = p.map(modd);
    let (rows, cols) = a.shape();
    let mut diag = Vec::new();
    'outer: for k in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let e = &a[(i, j)];
                    if !e.is_zero() && best.is_none_or(|(bi, bj)| e.degree() < a[(bi, bj)].degree()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            let piv = a[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let (q, rem) = a[(i, k)].divrem(&piv).expect("pivot nonzero");
                clean &= rem.is_zero();
                for j in k..cols {
                    let v = &a[(i, j)] - &(&q * &a[(k, j)]);
                    a[(i, j)] = modd(&v);
                }
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let (q, rem) = a[(k, j)].divrem(&piv).expect("pivot nonzero");
                clean &= rem.is_zero();
                for i in k..rows {
                    let v = &a[(i, j)] - &(&q * &a[(i, k)]);
                    a[(i, j)] = modd(&v);
                }
            }
            if clean {
                diag.push(piv);
                break;
            }
        }
    }
    // the module is now ⊕ (t_i, d)·e_i plus d·e_j on the remaining rows
    let mut f: Vec<Poly> = diag.iter().map(|t| t.gcd(&d)).collect();
    f.resize(rows, d.clone());
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            let g = f[i].gcd(&f[j]);
            let l = f[i].lcm(&f[j]);
            f[i] = g;
            f[j] = l;
        }
    }
    f.truncate(r);
    f
}

/// Truncated power series in μ with precision `k`.
fn series(p: &Poly, k: usize) -> Vec<Rat> {
    (0..k).map(|i| p.coeff(i)).collect()
}

fn valuation(s: &[Rat]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

/// Inverse of a unit power series modulo μ^k.
fn series_inverse(u: &[Rat], k: usize) -> Vec<Rat> {
    let inv0 = u[0].recip();
    let mut out = vec![Rat::zero(); k];
    if k > 0 {
        out[0] = inv0.clone();
    }
    for n in 1..k {
        let mut acc = Rat::zero();
        for i in 1..=n.min(u.len() - 1) {
            acc += &u[i] * &out[n - i];
        }
        out[n] = -(&acc * &inv0);
    }
    out
}

fn series_mul(a: &[Rat], b: &[Rat], k: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); k];
    for (i, ai) in a.iter().enumerate().take(k) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(k - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Orders at μ = 0 of the first `rank` invariant factors, by a local Smith
/// reduction over power series truncated at μ^k with k = ord₀ of a nonzero
/// maximal minor.
fn local_orders_at_zero(p: &PolyMatrix) -> Vec<usize> {
    let (r, d) = rank_and_minor(p);
    let k = d.ord_at_zero().unwrap_or(0);
    let (rows, cols) = p.shape();
    let mut a: Vec<Vec<Vec<Rat>>> = (0..rows).map(|i| (0..cols).map(|j| series(&p[(i, j)], k)).collect()).collect();
    let mut orders = Vec::with_capacity(r);
    for s in 0..r {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(s) {
            for (j, e) in row.iter().enumerate().skip(s) {
                if let Some(v) = valuation(e) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(s, pi);
        for row in a.iter_mut() {
            row.swap(s, pj);
        }
        let unit_inv = series_inverse(&a[s][s][v..], k - v);
        for i in s + 1..rows {
            let Some(vi) = valuation(&a[i][s]) else { continue };
            // factor = (a_is / μ^v) · unit⁻¹, valuation vi − v ≥ 0
            let shifted: Vec<Rat> = a[i][s][v..].to_vec();
            let f = series_mul(&shifted, &unit_inv, k - v);
            debug_assert!(vi >= v);
            let (top, rest) = a.split_at_mut(i);
            for (target, pivot) in rest[0][s..cols].iter_mut().zip(&top[s][s..cols]) {
                let prod = series_mul(&f, pivot, k);
                for (x, y) in target.iter_mut().zip(prod) {
                    *x -= y;
                }
            }
        }
        orders.push(v);
    }
    orders.resize(r, k);
    orders
}

fn split_chain(factors: &[Poly], delta: &Poly) -> (Vec<Poly>, Vec<Poly>) {
    factors
        .iter()
        .map(|e| {
            let f = RatFn::new(e.clone(), delta.clone()).expect("delta nonzero");
            (f.num().monic(), f.den().clone())
        })
        .unzip()
}

/// Finite Smith–McMillan form `u·G·v = diag(ε_i/ψ_i, 0)`.
pub fn smith_mcmillan_finite(g: &RatMatrix) -> SmithMcMillanForm {
    let (p, delta) = g.clear_denominators();
    let s = smith_form(&p);
    let (eps, psi) = split_chain(&s.inv_factors, &delta);
    SmithMcMillanForm { u: s.u, v: s.v, eps, psi, rank: s.rank }
}

/// The (ε, ψ) chains without transformers.
pub fn smith_mcmillan_chains(g: &RatMatrix) -> (Vec<Poly>, Vec<Poly>) {
    let (p, delta) = g.clear_denominators();
    split_chain(&invariant_factors(&p), &delta)
}

/// Invariant orders at infinity via λ = 1/μ and μ-adic valuations at 0
/// of the finite Smith–McMillan entries of G(1/μ).
pub fn infinity_structure(g: &RatMatrix) -> InfinityStructure {
    let (p, delta) = g.substitute_reciprocal().clear_denominators();
    let d0 = delta.ord_at_zero().expect("delta nonzero") as i64;
    let q = local_orders_at_zero(&p).into_iter().map(|o| o as i64 - d0).collect();
    InfinityStructure { q }
}

/// ν(G) = Σ deg ψ_i.
pub fn least_order(g: &RatMatrix) -> usize {
    smith_mcmillan_chains(g).1.iter().map(|p| p.deg().unwrap_or(0)).sum()
}

/// Total pole degree: ν(G) plus the orders of the poles at infinity.
/// Bounds the sum of all minimal indices.
pub fn mcmillan_degree(g: &RatMatrix) -> usize {
    let inf: i64 = infinity_structure(g).infinite_poles().iter().map(|q| -q).sum();
    least_order(g) + inf as usize
}

pub fn is_unimodular(p: &PolyMatrix) -> Result<bool> {
    let d = poly_det(p)?;
    Ok(d.deg() == Some(0))
}

pub fn is_biproper(g: &RatMatrix) -> Result<bool> {
    if !g.is_square() {
        return Err(Error::NotSquare { rows: g.rows(), cols: g.cols() });
    }
    if !g.is_proper() {
        return Ok(false);
    }
    Ok(rat_det(g)?.valuation_at_infinity() == Valuation::Finite(0))
}
