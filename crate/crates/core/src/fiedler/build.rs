//! Elementary matrices, the products defining Fiedler-like pencils of the
//! polynomial part, and their embedding with a state-space realization.

use super::symbolic::{Slot, TagGrid, TagPencil, Term};
use super::tuples::{Assignments, FiedlerFamily, FiedlerSpec, IndexTuple};
use crate::error::{certification, precondition, Error, Result};
use crate::exactalg::Degree;
use crate::linearize::RealizedMatrix;
use crate::polymat::{ConstMatrix, Pencil};

/// Block rows/columns (0-based) touched by M_i.
fn support(i: i64, q: usize) -> Result<(usize, usize)> {
    let a = i.unsigned_abs() as usize;
    if a > q {
        return Err(Error::Precondition(format!("index {i} is outside {{-{q}, …, {q}}}")));
    }
    Ok(match a {
        0 => (q - 1, q - 1),
        _ if a == q => (0, 0),
        _ => (q - a - 1, q - a),
    })
}

/// Places the 2×2 (or 1×1) block of M_i into an identity of q blocks,
/// given constructors for the zero, identity and X blocks.
fn place<B: Clone>(i: i64, q: usize, zero: B, ident: B, x: B) -> Result<Vec<Vec<B>>> {
    let (a, b) = support(i, q)?;
    let mut g: Vec<Vec<B>> = (0..q).map(|r| (0..q).map(|c| if r == c { ident.clone() } else { zero.clone() }).collect()).collect();
    if a == b {
        g[a][a] = x;
    } else if i > 0 {
        g[a][a] = x;
        g[a][b] = ident.clone();
        g[b][a] = ident;
        g[b][b] = zero;
    } else {
        g[a][a] = zero;
        g[a][b] = ident.clone();
        g[b][a] = ident;
        g[b][b] = x;
    }
    Ok(g)
}

/// M_i(X) of size pq: M₀(X) = diag(I, X), M_{±q}(X) = diag(X, I) and, for
/// 1 ≤ i ≤ q−1, [[X, I], [I, 0]] (M_i) or [[0, I], [I, X]] (M_{−i}) in
/// block rows and columns q−i, q−i+1.
pub fn elementary_matrix(i: i64, x: &ConstMatrix, q: usize, p: usize) -> Result<ConstMatrix> {
    if x.shape() != (p, p) {
        return Err(Error::Dimension(format!("X must be {p}x{p}")));
    }
    let g = place(i, q, ConstMatrix::zeros(p, p), ConstMatrix::identity(p), x.clone())?;
    let rows: Vec<Vec<&ConstMatrix>> = g.iter().map(|r| r.iter().collect()).collect();
    ConstMatrix::from_blocks(&rows)
}

/// Tag grid of M_i(X) with X named by `x`.
pub fn elementary_tags(i: i64, x: Term, q: usize) -> Result<TagGrid> {
    let g = place(i, q, None, Some(Term::ident()), Some(x))?;
    Ok(TagGrid { size: q, blocks: g.into_iter().flatten().collect() })
}

/// One factor of a product: index, numeric value and tag of X.
#[derive(Clone, Debug)]
struct Factor {
    index: i64,
    value: ConstMatrix,
    term: Term,
}

fn coefficient_factor(i: i64, d: &[ConstMatrix]) -> Factor {
    // M_i^D = M_i(−D_i) for i ≥ 0 and M_{−i}^D = M_{−i}(D_i)
    let k = i.unsigned_abs() as usize;
    let negative = i >= 0;
    let value = if negative { d[k].neg() } else { d[k].clone() };
    Factor { index: i, value, term: Term::slot(Slot::Coeff(k), negative) }
}

fn assigned_factors(tuple: &IndexTuple, mats: &[ConstMatrix], name: fn(usize) -> Slot) -> Vec<Factor> {
    tuple
        .entries
        .iter()
        .zip(mats)
        .enumerate()
        .map(|(k, (&i, m))| Factor { index: i, value: m.clone(), term: Term::slot(name(k), false) })
        .collect()
}

fn product(factors: &[Factor], q: usize, p: usize) -> Result<(ConstMatrix, TagGrid)> {
    let mut num = ConstMatrix::identity(q * p);
    let mut tags = TagGrid::identity(q);
    for f in factors {
        num = num.mul(&elementary_matrix(f.index, &f.value, q, p)?);
        tags = tags.mul(&elementary_tags(f.index, f.term, q)?)?;
    }
    Ok((num, tags))
}

/// Numeric value of a tag grid.
fn evaluate(tags: &TagGrid, slots: &dyn Fn(Slot) -> ConstMatrix, p: usize) -> ConstMatrix {
    let q = tags.size;
    let mut out = ConstMatrix::zeros(q * p, q * p);
    for i in 0..q {
        for j in 0..q {
            if let Some(t) = tags.get(i, j) {
                let v = match t.tag {
                    super::symbolic::Tag::Ident => ConstMatrix::identity(p),
                    super::symbolic::Tag::Slot(s) => slots(s),
                };
                out.set_block(i * p, j * p, &if t.negative { v.neg() } else { v });
            }
        }
    }
    out
}

/// Matrix assignments of an FPR: the coefficients that M^D would use.
pub fn trivial_assignments(spec: &FiedlerSpec, d: &[ConstMatrix]) -> Assignments {
    let coeffs = |t: &IndexTuple| t.entries.iter().map(|&i| coefficient_factor(i, d).value).collect();
    Assignments { x: coeffs(&spec.lt), z: coeffs(&spec.lz), w: coeffs(&spec.rz), y: coeffs(&spec.rt) }
}

/// (q − i₀(ℓ_t, t), q − c₀(t, r_t)), 1-based.
pub fn intrinsic_d0_position(spec: &FiedlerSpec) -> (usize, usize) {
    (spec.q - spec.i0, spec.q - spec.c0)
}

/// L_G = [[A − λE, e_{q−c₀}ᵀ ⊗ B], [e_{q−i₀} ⊗ C, L_D]] together with the
/// pieces it was assembled from.
#[derive(Clone, Debug, PartialEq)]
pub struct FiedlerPencil {
    pub spec: FiedlerSpec,
    pub source: RealizedMatrix,
    /// Assignments actually used (the trivial ones for an FPR).
    pub assignments: Assignments,
    /// L_D(λ)
    pub poly_pencil: Pencil,
    pub tags: TagPencil,
    pub pencil: Pencil,
}

impl FiedlerPencil {
    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn p(&self) -> usize {
        self.source.g.rows()
    }

    /// 1-based block position of the unique D₀ tag in the constant part of
    /// L_D.
    pub fn symbolic_d0_position(&self) -> Result<(usize, usize)> {
        match self.tags.constant.positions(Slot::Coeff(0))[..] {
            [(i, j, false)] => Ok((i + 1, j + 1)),
            [(_, _, true)] => certification("D₀ occurs with a minus sign in L_D"),
            ref found => certification(format!("D₀ occurs {} times in L_D", found.len())),
        }
    }
}

/// Builds L_D by exact products of elementary matrices (numerically and on
/// tags, which must agree) and borders it with the realization of the
/// strictly proper part.
pub fn build_fiedler_rational(source: &RealizedMatrix, spec: &FiedlerSpec) -> Result<FiedlerPencil> {
    let g = &source.g;
    if !g.is_square() {
        return Err(Error::NotSquare { rows: g.rows(), cols: g.cols() });
    }
    let (q, p) = (spec.q, g.rows());
    let dpoly = &source.poly_part;
    if dpoly.degree() != Degree::Finite(q) {
        return precondition(format!("polynomial part must have degree q = {q}"));
    }
    let d: Vec<ConstMatrix> = (0..=q).map(|i| dpoly.coeff_matrix(i)).collect();
    let assignments = match spec.family {
        FiedlerFamily::Fpr => trivial_assignments(spec, &d),
        _ => spec.assignments.clone(),
    };
    let all = assignments.x.iter().chain(&assignments.z).chain(&assignments.w).chain(&assignments.y);
    if all.into_iter().any(|m| m.shape() != (p, p)) {
        return Err(Error::Dimension(format!("assigned matrices must be {p}x{p}")));
    }
    spec.check_nonsingular(&assignments)?;

    let coeffs = |t: &IndexTuple| t.entries.iter().map(|&i| coefficient_factor(i, &d)).collect::<Vec<_>>();
    let left: Vec<Factor> = [assigned_factors(&spec.lt, &assignments.x, Slot::X), assigned_factors(&spec.lz, &assignments.z, Slot::Z)].concat();
    let right: Vec<Factor> = [assigned_factors(&spec.rz, &assignments.w, Slot::W), assigned_factors(&spec.rt, &assignments.y, Slot::Y)].concat();
    let lambda_factors = [left.clone(), coeffs(&spec.z), right.clone()].concat();
    let const_factors = [left, coeffs(&spec.t), right].concat();
    let (l1, lambda_tags) = product(&lambda_factors, q, p)?;
    let (m0, const_tags) = product(&const_factors, q, p)?;
    let (l0, constant_tags) = (m0.neg(), const_tags.neg());

    let slot_value = |s: Slot| match s {
        Slot::Coeff(i) => d[i].clone(),
        Slot::X(k) => assignments.x[k].clone(),
        Slot::Z(k) => assignments.z[k].clone(),
        Slot::W(k) => assignments.w[k].clone(),
        Slot::Y(k) => assignments.y[k].clone(),
    };
    if evaluate(&lambda_tags, &slot_value, p) != l1 || evaluate(&constant_tags, &slot_value, p) != l0 {
        return certification("symbolic and numeric products of elementary matrices disagree");
    }
    let poly_pencil = Pencil::new(l1, l0)?;
    let tags = TagPencil { lambda: lambda_tags, constant: constant_tags };

    let (row, col) = intrinsic_d0_position(spec);
    let r = &source.realization;
    let n = r.n();
    let mut top = ConstMatrix::zeros(n, q * p);
    top.set_block(0, (col - 1) * p, &r.b);
    let mut left_col = ConstMatrix::zeros(q * p, n);
    left_col.set_block((row - 1) * p, 0, &r.c);
    let state = Pencil::new(r.e.neg(), r.a.clone())?;
    let top = Pencil { l1: ConstMatrix::zeros(n, q * p), l0: top };
    let left_col = Pencil { l1: ConstMatrix::zeros(q * p, n), l0: left_col };
    let pencil = Pencil::from_blocks(&[vec![&state, &top], vec![&left_col, &poly_pencil]])?;

    let built = FiedlerPencil { spec: spec.clone(), source: source.clone(), assignments, poly_pencil, tags, pencil };
    let found = built.symbolic_d0_position()?;
    if found != (row, col) {
        return certification(format!(
            "D₀ sits at block {found:?} of the symbolic product but the consecution/inversion counts give {:?}",
            (row, col)
        ));
    }
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiedler::tuples::{all_fiedler_tuples, all_proper_gfp_tuples, TupleSet};
    use crate::polymat::PolyMatrix;

    /// D(λ) = Σ D_i λ^i with 1×1 coefficients i + 2 (distinct, nonzero).
    fn scalar_poly(q: usize) -> RealizedMatrix {
        let coeffs: Vec<i64> = (0..=q as i64).map(|i| i + 2).collect();
        RealizedMatrix::new(&PolyMatrix::from_ints(&[&[&coeffs]]).to_rat()).unwrap()
    }

    /// p = 2, q given, coefficients with distinct entries so that block
    /// comparisons cannot match by accident.
    fn generic_poly(q: usize) -> RealizedMatrix {
        let entry = |a: i64| (0..=q as i64).map(|i| 3 * i + a).collect::<Vec<_>>();
        let (e0, e1, e2, e3) = (entry(1), entry(2), entry(5), entry(7));
        RealizedMatrix::new(&PolyMatrix::from_ints(&[&[&e0, &e1], &[&e2, &e3]]).to_rat()).unwrap()
    }

    fn spec(family: FiedlerFamily, ts: &TupleSet) -> FiedlerSpec {
        FiedlerSpec::new(family, ts, Assignments::default()).unwrap()
    }

    #[test]
    fn elementary_definitions() {
        let x = ConstMatrix::from_ints(&[&[7]]);
        assert_eq!(elementary_matrix(0, &x.neg(), 2, 1).unwrap(), ConstMatrix::from_ints(&[&[1, 0], &[0, -7]]));
        assert_eq!(elementary_matrix(1, &x, 2, 1).unwrap(), ConstMatrix::from_ints(&[&[7, 1], &[1, 0]]));
        assert_eq!(elementary_matrix(-1, &x, 2, 1).unwrap(), ConstMatrix::from_ints(&[&[0, 1], &[1, 7]]));
        assert_eq!(elementary_matrix(2, &x, 2, 1).unwrap(), ConstMatrix::from_ints(&[&[7, 0], &[0, 1]]));
        assert_eq!(elementary_matrix(-2, &x, 2, 1).unwrap(), ConstMatrix::from_ints(&[&[7, 0], &[0, 1]]));
        assert_eq!(
            elementary_matrix(1, &x, 3, 1).unwrap(),
            ConstMatrix::from_ints(&[&[1, 0, 0], &[0, 7, 1], &[0, 1, 0]])
        );
        assert!(elementary_matrix(3, &x, 2, 1).is_err());
        // M_i(X)·M_{−i}(−X) = I
        let m = elementary_matrix(1, &x, 3, 1).unwrap().mul(&elementary_matrix(-1, &x.neg(), 3, 1).unwrap());
        assert_eq!(m, ConstMatrix::identity(3));
    }

    #[test]
    fn distant_elementary_matrices_commute() {
        let x = ConstMatrix::from_ints(&[&[2, 1], &[0, 3]]);
        let y = ConstMatrix::from_ints(&[&[1, -1], &[4, 5]]);
        let q = 5;
        for i in -(q as i64)..=q as i64 {
            for j in -(q as i64)..=q as i64 {
                let a = elementary_matrix(i, &x, q, 2).unwrap();
                let b = elementary_matrix(j, &y, q, 2).unwrap();
                let far = (i.abs() - j.abs()).abs() >= 2;
                if far {
                    assert_eq!(a.mul(&b), b.mul(&a), "M_{i} and M_{j}");
                }
            }
        }
    }

    #[test]
    fn fp_q2_hand_checks() {
        let src = scalar_poly(2); // D₂ = 4, D₁ = 3, D₀ = 2
        let fp = build_fiedler_rational(&src, &spec(FiedlerFamily::Fp, &TupleSet::fiedler(2, &[1, 0]))).unwrap();
        // [[λD₂ + D₁, D₀], [−I, λI]]
        assert_eq!(fp.pencil.to_poly(), PolyMatrix::from_ints(&[&[&[3, 4], &[2]], &[&[-1], &[0, 1]]]));
        assert_eq!(intrinsic_d0_position(&fp.spec), (1, 2));
        assert_eq!(fp.tags.render(), vec![vec!["λD2 + D1".to_string(), "D0".into()], vec!["-I".into(), "λI".into()]]);
        let fp = build_fiedler_rational(&src, &spec(FiedlerFamily::Fp, &TupleSet::fiedler(2, &[0, 1]))).unwrap();
        // [[λD₂ + D₁, −I], [D₀, λI]]
        assert_eq!(fp.pencil.to_poly(), PolyMatrix::from_ints(&[&[&[3, 4], &[-1]], &[&[2], &[0, 1]]]));
        assert_eq!(fp.symbolic_d0_position().unwrap(), (2, 1));
    }

    #[test]
    fn gfp_hand_checks() {
        let src = scalar_poly(3); // D₃ = 5, D₂ = 4, D₁ = 3, D₀ = 2
        let ts = TupleSet { q: 3, t: vec![1, 0], z: vec![-3, -2], ..Default::default() };
        let l = build_fiedler_rational(&src, &spec(FiedlerFamily::ProperGfp, &ts)).unwrap();
        // [[−I, λD₃, 0], [λI, λD₂ + D₁, D₀], [0, −I, λI]]
        assert_eq!(
            l.pencil.to_poly(),
            PolyMatrix::from_ints(&[&[&[-1], &[0, 5], &[0]], &[&[0, 1], &[3, 4], &[2]], &[&[0], &[-1], &[0, 1]]])
        );
        assert_eq!(intrinsic_d0_position(&l.spec), (2, 3));
        let src = scalar_poly(2);
        let ts = TupleSet { q: 2, t: vec![0], z: vec![-1, -2], ..Default::default() };
        let l = build_fiedler_rational(&src, &spec(FiedlerFamily::ProperGfp, &ts)).unwrap();
        // [[−I, λI], [λD₂, λD₁ + D₀]]
        assert_eq!(l.pencil.to_poly(), PolyMatrix::from_ints(&[&[&[-1], &[0, 1]], &[&[0, 4], &[2, 3]]]));
        assert_eq!(intrinsic_d0_position(&l.spec), (2, 2));
    }

    #[test]
    fn d0_formula_matches_symbolic_product_for_all_fps_and_gfps() {
        for q in 2..=5 {
            let src = generic_poly(q);
            for ts in all_fiedler_tuples(q) {
                let l = build_fiedler_rational(&src, &spec(FiedlerFamily::Fp, &ts)).unwrap();
                assert_eq!(l.symbolic_d0_position().unwrap(), intrinsic_d0_position(&l.spec));
            }
            if q <= 4 {
                for ts in all_proper_gfp_tuples(q) {
                    let l = build_fiedler_rational(&src, &spec(FiedlerFamily::ProperGfp, &ts)).unwrap();
                    assert_eq!(l.symbolic_d0_position().unwrap(), intrinsic_d0_position(&l.spec));
                }
            }
        }
    }

    #[test]
    fn products_are_operation_free() {
        // every block of the λ and constant parts is 0, ±I or ± one slot
        let src = generic_poly(4);
        for ts in all_fiedler_tuples(4) {
            let l = build_fiedler_rational(&src, &spec(FiedlerFamily::Fp, &ts)).unwrap();
            let count = |g: &TagGrid, s| g.positions(s).len();
            for i in 1..=3 {
                assert_eq!(count(&l.tags.constant, Slot::Coeff(i)) + count(&l.tags.lambda, Slot::Coeff(i)), 1);
            }
        }
    }

    #[test]
    fn polynomial_input_has_no_state_block() {
        let l = build_fiedler_rational(&scalar_poly(3), &spec(FiedlerFamily::Fp, &TupleSet::fiedler(3, &[2, 1, 0]))).unwrap();
        assert_eq!(l.pencil, l.poly_pencil);
    }

    #[test]
    fn degree_mismatch_is_refused() {
        let err = build_fiedler_rational(&scalar_poly(3), &spec(FiedlerFamily::Fp, &TupleSet::fiedler(2, &[1, 0])));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn singular_fpr_assignment_is_refused() {
        // D₀ = 0 makes M₀(−D₀) in ℓ_t singular
        let src = RealizedMatrix::new(&PolyMatrix::from_ints(&[&[&[0, 1, 0, 1]]]).to_rat()).unwrap();
        let ts = TupleSet { q: 3, t: vec![1, 0], z: vec![-3, -2], ..Default::default() }.with_sides(&[0], &[], &[], &[]);
        let err = build_fiedler_rational(&src, &spec(FiedlerFamily::Fpr, &ts));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
