//! The worked examples as a pass/fail table.

use crate::Outcome;
use ratlin::exactalg::{Poly, RatFn};
use ratlin::fiedler::{all_fiedler_tuples, build_fiedler_rational, Assignments, FiedlerLinearization, FiedlerSpec};
use ratlin::fixtures;
use ratlin::linearize::{Linearization, RealizedMatrix, SbmbLinearization};
use ratlin::minbases::{minimal_basis, Side};
use ratlin::polymat::{infinity_structure, invariant_factors, ConstMatrix, Mat, Pencil, PolyMatrix};
use ratlin::sysmat::{irreducibility_report, is_minimal, properness_conditions, transfer_function};
use ratlin::verify::{check_strong_linearization, mu_relation, LinearPsm, StructuralReport};
use serde_json::{json, Value};

type Check = ratlin::Result<(bool, String)>;

fn first_example() -> Check {
    let p = fixtures::first_example();
    let g = transfer_function(&p);
    let expect = RatFn::new(Poly::from_ints(&[-1]), Poly::x())?;
    let r = irreducibility_report(&p);
    let ok = g == Mat::from_vec(1, 1, vec![expect])
        && is_minimal(&p)
        && properness_conditions(&p) == (true, true)
        && !r.holds()
        && r.row_bordered.q == [-2, 0, 1];
    Ok((ok, format!("G = {}, orders {:?}", g[(0, 0)], r.row_bordered.q)))
}

fn second_example() -> Check {
    let p = fixtures::second_example();
    let r = irreducibility_report(&p);
    let ok = properness_conditions(&p) == (false, false) && r.holds() && r.row_bordered.q == [-1, -1, -1, 0];
    Ok((ok, format!("properness {:?}, orders {:?}", properness_conditions(&p), r.row_bordered.q)))
}

fn g_structure() -> Check {
    let r = StructuralReport::of(&fixtures::g_example5());
    let ok = r.psi == [Poly::x()]
        && r.eps == [Poly::from_ints(&[1, 0, 1])]
        && r.infinity.q == [-1]
        && r.right_indices == [0]
        && r.left_indices == [0]
        && (r.nu, r.mu, r.d, r.index_sum()) == (1, 0, 1, 0);
    Ok((ok, format!("nu {}, mu {}, d {}", r.nu, r.mu, r.d)))
}

fn l_eps_eta() -> Check {
    let g = fixtures::g_example5();
    for eps in 1..=3 {
        for eta in 1..=3 {
            let l = LinearPsm::from_system(&fixtures::l_eps_eta(eps, eta))?;
            let cert = check_strong_linearization(&l, &g)?;
            let lr = l.pencil.to_rat();
            let indices = (minimal_basis(&lr, Side::Right).indices, minimal_basis(&lr, Side::Left).indices);
            let mu = mu_relation(&g, &l)?;
            if !cert.holds() || indices != (vec![eps], vec![eta]) || !mu.holds() || mu.mu_g != 0 {
                return Ok((false, format!("fails at eps = {eps}, eta = {eta}")));
            }
        }
    }
    Ok((true, "eps, eta in 1..3".into()))
}

fn k_blocks() -> Check {
    for u in 1..=5 {
        let k = fixtures::k_block(u);
        let units = invariant_factors(&k).iter().filter(|f| f.is_one()).count() == u;
        let scaled = k.to_rat().scale(&RatFn::x().pow(-1));
        if !units || infinity_structure(&scaled).q != vec![0; u] {
            return Ok((false, format!("fails at u = {u}")));
        }
    }
    Ok((true, "u in 1..5".into()))
}

fn constant_branch() -> Check {
    let g = PolyMatrix::from_ints(&[&[&[1], &[0, 1]]]).to_rat();
    let d0 = ConstMatrix::from_ints(&[&[1, 0]]);
    let l = LinearPsm::new(Pencil::new(ConstMatrix::zeros(1, 2), d0)?, 0)?;
    let rel = mu_relation(&g, &l)?;
    Ok((rel.holds() && rel.mu_g == rel.d * rel.r, format!("mu(G) = {} = dr = {}", rel.mu_g, rel.d * rel.r)))
}

fn degree_shift(seed: u64) -> Check {
    let mut rng = fixtures::rng(seed);
    for _ in 0..3 {
        let g = fixtures::random_singular(&mut rng, 2, 3, 3, 2);
        let src = RealizedMatrix::new(&g)?;
        let k = src.poly_part.degree().finite().unwrap_or(0);
        for eps in 0..k {
            let lin = SbmbLinearization::block_kronecker(&src, eps, k - 1 - eps)?;
            for (side, shift) in [(Side::Right, eps), (Side::Left, k - 1 - eps)] {
                let of_g = minimal_basis(&g, side).indices;
                let of_l = minimal_basis(&lin.pencil.to_rat(), side).indices;
                let mut shifted: Vec<usize> = of_g.iter().map(|i| i + shift).collect();
                shifted.sort_unstable();
                if shifted != of_l {
                    return Ok((false, format!("{side} indices {of_l:?} vs {of_g:?} + {shift}")));
                }
            }
        }
    }
    Ok((true, "three fixtures, all splits".into()))
}

fn fiedler_pencils(seed: u64) -> Check {
    let mut count = 0;
    for q in 2..=3 {
        let g = (0..)
            .map(|s| fixtures::random_square(&mut fixtures::rng(seed.wrapping_add(s)), 2, q))
            .find(|g| g.split_polynomial_part().0.degree().finite() == Some(q))
            .expect("some seed gives degree q");
        let src = RealizedMatrix::new(&g)?;
        let k = src.poly_part.degree().finite().unwrap_or(0);
        for t in all_fiedler_tuples(k) {
            let fp = build_fiedler_rational(&src, &FiedlerSpec::infer(&t, Assignments::default())?)?;
            let lin = FiedlerLinearization::new(fp)?;
            let l = LinearPsm::new(lin.pencil().clone(), lin.fiedler.n())?;
            if !check_strong_linearization(&l, &g)?.holds() {
                return Ok((false, format!("tuple {:?}", t.t)));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} Fiedler pencils")))
}

pub fn run(seed: u64) -> Outcome {
    let checks: Vec<(&str, Check)> = vec![
        ("first system matrix example", first_example()),
        ("second system matrix example", second_example()),
        ("structure of diag(λ + 1/λ, 0)", g_structure()),
        ("L_{ε,η} strong linearizations", l_eps_eta()),
        ("K_u equivalences", k_blocks()),
        ("constant branch μ(G) = dr", constant_branch()),
        ("block Kronecker degree shift", degree_shift(seed)),
        ("Fiedler pencils", fiedler_pencils(seed)),
    ];
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    let mut table = String::new();
    for (name, result) in checks {
        let (passed, detail) = result.unwrap_or_else(|e| (false, e.to_string()));
        if !passed {
            failed.push(name);
        }
        table.push_str(&format!("{}  {name:<32} {detail}\n", if passed { "PASS" } else { "FAIL" }));
        rows.push(json!({ "name": name, "passed": passed, "detail": detail }));
    }
    let report: Value = json!({ "seed": seed, "rows": rows, "failed": failed.len() });
    let failure = (!failed.is_empty()).then(|| failed.join(", "));
    table.push_str(&format!("{} of {} passed (seed {seed})\n", rows.len() - failed.len(), rows.len()));
    Outcome { report, failure, table: Some(table) }
}
