//! One function per verb; each returns a JSON report.

use crate::schema::{
    coeffs_of, json_rat_matrix, poly_matrix, rat_matrix, rats_of, AssignmentsFile, BasisFile, Coeff, JsonMatrix, Meta,
    PencilFile, PsmFile, RecurrenceFile, Shift,
};
use crate::{load, write, Cli, CliError, Command, FamilyArg, KindArg, Outcome, RecurrenceArg, SideArg};
use ratlin::exactalg::{int, Poly, Rat};
use ratlin::fiedler::{build_fiedler_rational, FiedlerFamily, FiedlerLinearization, FiedlerSpec, TupleSet};
use ratlin::linearize::{
    complete_to_basis, extended_m1_build, m1_build, m2_build, recover_basis, Linearization, OrthogonalRecurrence,
    RealizedMatrix, SbmbLinearization, TransformedSbmb,
};
use ratlin::minbases::{minimal_basis, oracle_minimal_indices, Side};
use ratlin::polymat::{infinity_structure, ConstMatrix, InfinityStructure, RatMatrix};
use ratlin::sysmat::{
    coprime_check, irreducibility_report, is_minimal, properness_conditions, transfer_function, PolySystemMatrix,
};
use ratlin::verify::{
    check_strong_linearization, invariant_orders_of_linearization, mu_relation, LinearPsm, StructuralReport,
};
use serde_json::{json, Value};
use std::path::Path;

type Result<T> = std::result::Result<T, CliError>;

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze { matrix, psm } => {
            let g = match (matrix, psm) {
                (Some(m), _) => load_matrix(m)?,
                (None, Some(p)) => transfer_function(&load_psm(p)?),
                (None, None) => return Err(CliError::Parse("give --matrix or --psm".into())),
            };
            Ok(Outcome::ok(structural_json(&StructuralReport::of(&g))))
        }
        Command::Minbases { matrix, side } => minbases(&load_matrix(matrix)?, *side),
        Command::Transfer { psm } => Ok(Outcome::ok(json!({
            "matrix": json_rat_matrix(&transfer_function(&load_psm(psm)?)),
        }))),
        Command::CheckMinimal { psm } => {
            let p = load_psm(psm)?;
            Ok(Outcome::ok(json!({
                "minimal": is_minimal(&p),
                "a_b_left_coprime": coprime_check(&p.a, &p.b, Side::Left)?,
                "a_c_right_coprime": coprime_check(&p.a, &p.c, Side::Right)?,
            })))
        }
        Command::CheckProperness { psm } => {
            let (right, left) = properness_conditions(&load_psm(psm)?);
            Ok(Outcome::ok(json!({ "a_inv_b_proper": right, "c_a_inv_proper": left })))
        }
        Command::CheckStrongIrreducibility { psm } => {
            let r = irreducibility_report(&load_psm(psm)?);
            Ok(Outcome::ok(json!({
                "strongly_irreducible": r.holds(),
                "minimal": r.minimal,
                "row_bordered_orders": r.row_bordered.q,
                "col_bordered_orders": r.col_bordered.q,
            })))
        }
        Command::Linearize { matrix, kind, eps, eta, recurrence, basis_file } => {
            let rec = basis_file.as_deref().map(load::<RecurrenceFile>).transpose()?;
            linearize(&load_matrix(matrix)?, *kind, *eps, *eta, *recurrence, rec)
        }
        Command::Recover { linearization, basis, side } => recover(linearization, basis.as_deref(), *side),
        Command::Fiedler { tuples, assignments, matrix, family, permute } => {
            let tuples: TupleSet = load(tuples)?;
            let assignments = assignments.as_deref().map(load::<AssignmentsFile>).transpose()?;
            fiedler(&load_matrix(matrix)?, tuples, assignments, *family, *permute)
        }
        Command::Verify { linearization, matrix, report } => {
            let out = verify(&load(linearization)?, &load_matrix(matrix)?)?;
            if let Some(path) = report {
                write(path, &crate::render(&out.report, crate::Format::Json))?;
            }
            Ok(out)
        }
        Command::Oracle { matrix, max_degree, side } => {
            let g = load_matrix(matrix)?;
            let mut report = serde_json::Map::new();
            for s in side.sides() {
                report.insert(s.to_string(), json!(oracle_minimal_indices(&g, s, *max_degree)?));
            }
            Ok(Outcome::ok(Value::Object(report)))
        }
        Command::ReproducePaper => Ok(crate::reproduce::run(cli.seed)),
    }
}

fn load_matrix(path: &Path) -> Result<RatMatrix> {
    rat_matrix(&load::<JsonMatrix>(path)?)
}

fn load_psm(path: &Path) -> Result<PolySystemMatrix> {
    load::<PsmFile>(path)?.system()
}

fn polys(v: &[Poly]) -> Vec<Vec<Coeff>> {
    v.iter().map(coeffs_of).collect()
}

pub fn structural_json(r: &StructuralReport) -> Value {
    json!({
        "rank": r.rank,
        "eps": polys(&r.eps),
        "psi": polys(&r.psi),
        "infinity": r.infinity.q,
        "right_indices": r.right_indices,
        "left_indices": r.left_indices,
        "nu": r.nu,
        "mu": r.mu,
        "d": r.d,
        "index_sum": r.index_sum(),
    })
}

fn minbases(g: &RatMatrix, side: SideArg) -> Result<Outcome> {
    let mut report = serde_json::Map::new();
    for s in side.sides() {
        report.insert(s.to_string(), serde_json::to_value(BasisFile::of(&minimal_basis(g, s))).expect("serializable"));
    }
    Ok(Outcome::ok(Value::Object(report)))
}

/// A rebuilt linearization of any supported kind.
pub enum Built {
    Sbmb(SbmbLinearization),
    Transformed(TransformedSbmb),
    Fiedler(Box<FiedlerLinearization>),
}

impl Built {
    pub fn lin(&self) -> &dyn Linearization {
        match self {
            Built::Sbmb(l) => l,
            Built::Transformed(l) => l,
            Built::Fiedler(l) => l.as_ref(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Built::Sbmb(l) => l.n(),
            Built::Transformed(l) => l.base.n(),
            Built::Fiedler(l) => l.fiedler.n(),
        }
    }
}

fn unit(k: usize, i: usize) -> Vec<Coeff> {
    (0..k).map(|j| Coeff::of(&int((i == j) as i64))).collect()
}

fn recurrence_of(rec: &RecurrenceFile) -> Result<OrthogonalRecurrence> {
    let get = |v: &Option<Vec<Coeff>>| rats_of(v.as_deref().unwrap_or(&[]));
    Ok(OrthogonalRecurrence::new(get(&rec.alpha)?, get(&rec.beta)?, get(&rec.gamma)?)?)
}

/// Fills in the recurrence and the vectors v, w, M_Ψ and its body that
/// were not given, so that the record fully determines the pencil.
fn complete_recurrence(
    g: &RatMatrix,
    kind: KindArg,
    choice: RecurrenceArg,
    given: Option<RecurrenceFile>,
) -> Result<RecurrenceFile> {
    let src = RealizedMatrix::new(g)?;
    let k = src.poly_part.degree().finite().unwrap_or(0);
    let mut rec = given.unwrap_or_default();
    if rec.alpha.is_none() {
        let base = match choice {
            RecurrenceArg::Monomial => OrthogonalRecurrence::monomial(k),
            RecurrenceArg::Chebyshev => OrthogonalRecurrence::chebyshev(k),
        };
        let conv = |v: &[Rat]| v.iter().map(Coeff::of).collect::<Vec<_>>();
        rec.alpha = Some(conv(&base.alpha));
        rec.beta = Some(conv(&base.beta));
        rec.gamma = Some(conv(&base.gamma));
    }
    match kind {
        KindArg::M1 => {
            rec.v.get_or_insert_with(|| unit(k, 0));
        }
        KindArg::M2 => {
            rec.w.get_or_insert_with(|| unit(k, 0));
        }
        KindArg::ExtendedM1 => {
            rec.v.get_or_insert_with(|| unit(k, 0));
            rec.w.get_or_insert_with(|| unit(k, k.saturating_sub(1)));
            let r = recurrence_of(&rec)?;
            if rec.m_psi.is_none() {
                rec.m_psi = Some(crate::schema::json_poly_matrix(&r.m_phi(k)?));
            }
            if rec.body.is_none() {
                rec.body = Some(crate::schema::json_poly_matrix(&r.m_phi_d(&src.poly_part)?));
            }
        }
        KindArg::BlockKronecker | KindArg::Sbmb => {}
    }
    Ok(rec)
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::BlockKronecker => "block-kronecker",
        KindArg::Sbmb => "sbmb",
        KindArg::M1 => "m1",
        KindArg::ExtendedM1 => "extended-m1",
        KindArg::M2 => "m2",
    }
}

fn family_of(f: FamilyArg) -> FiedlerFamily {
    match f {
        FamilyArg::Fp => FiedlerFamily::Fp,
        FamilyArg::ProperGfp => FiedlerFamily::ProperGfp,
        FamilyArg::Fpr => FiedlerFamily::Fpr,
        FamilyArg::Gfpr => FiedlerFamily::Gfpr,
    }
}

fn fiedler_spec(meta: &Meta) -> Result<FiedlerSpec> {
    let tuples = meta.tuples.as_ref().ok_or_else(|| CliError::Parse("fiedler metadata lacks tuples".into()))?;
    let assignments = meta.assignments.clone().unwrap_or_default().value()?;
    Ok(match meta.family {
        Some(f) => FiedlerSpec::new(f, tuples, assignments)?,
        None => FiedlerSpec::infer(tuples, assignments)?,
    })
}

/// Rebuilds the linearization a metadata record describes.
pub fn rebuild(meta: &Meta) -> Result<Built> {
    let g = rat_matrix(meta.matrix.as_ref().ok_or_else(|| CliError::Parse("metadata lacks the matrix".into()))?)?;
    let src = RealizedMatrix::new(&g)?;
    let missing = |what: &str| CliError::Parse(format!("metadata lacks {what}"));
    let rec = || meta.recurrence.clone().ok_or_else(|| missing("the recurrence"));
    let vec_of = |v: &Option<Vec<Coeff>>, what: &str| rats_of(v.as_deref().ok_or_else(|| missing(what))?);
    let m = g.cols();
    let id = ConstMatrix::identity(src.n());
    Ok(match meta.kind.as_str() {
        "block-kronecker" | "sbmb" => {
            let (eps, eta) = (meta.eps.ok_or_else(|| missing("eps"))?, meta.eta.ok_or_else(|| missing("eta"))?);
            Built::Sbmb(SbmbLinearization::block_kronecker(&src, eps, eta)?)
        }
        "m1" => {
            let r = rec()?;
            let v = vec_of(&r.v, "v")?;
            let j = complete_to_basis(&v)?.kron_identity(m);
            Built::Transformed(m1_build(&src, &recurrence_of(&r)?, &v, &j, &id, &id)?)
        }
        "m2" => {
            let r = rec()?;
            let w = vec_of(&r.w, "w")?;
            let j = complete_to_basis(&w)?.transpose().kron_identity(m);
            Built::Transformed(m2_build(&src, &recurrence_of(&r)?, &w, &j, &id, &id)?)
        }
        "extended-m1" => {
            let r = rec()?;
            let (v, w) = (vec_of(&r.v, "v")?, vec_of(&r.w, "w")?);
            let j = complete_to_basis(&v)?.kron_identity(m);
            let m_psi = poly_matrix(r.m_psi.as_ref().ok_or_else(|| missing("m_psi"))?)?;
            let body = poly_matrix(r.body.as_ref().ok_or_else(|| missing("body"))?)?;
            Built::Transformed(extended_m1_build(&src, &m_psi, &body, &w, &v, &j, &id, &id)?)
        }
        "fiedler" => {
            let fp = build_fiedler_rational(&src, &fiedler_spec(meta)?)?;
            Built::Fiedler(Box::new(FiedlerLinearization::new(fp)?))
        }
        other => return Err(CliError::Parse(format!("unknown linearization kind {other:?}"))),
    })
}

fn certificate(pencil: &ratlin::polymat::Pencil, n: usize, g: &RatMatrix) -> Result<Value> {
    let cert = check_strong_linearization(&LinearPsm::new(pencil.clone(), n)?, g)?;
    Ok(serde_json::to_value(cert).expect("serializable"))
}

fn linearize(
    g: &RatMatrix,
    kind: KindArg,
    eps: Option<usize>,
    eta: Option<usize>,
    choice: RecurrenceArg,
    given: Option<RecurrenceFile>,
) -> Result<Outcome> {
    let mut meta = Meta {
        kind: kind_name(kind).to_string(),
        n: 0,
        matrix: Some(json_rat_matrix(g)),
        eps: None,
        eta: None,
        recurrence: None,
        family: None,
        tuples: None,
        assignments: None,
        index_shift: None,
        certificate: None,
        details: None,
    };
    match kind {
        KindArg::BlockKronecker | KindArg::Sbmb => {
            let k = g.split_polynomial_part().0.degree().finite().unwrap_or(0);
            let span = k.saturating_sub(1);
            let eps = eps.unwrap_or_else(|| span.saturating_sub(eta.unwrap_or(0)));
            meta.eps = Some(eps);
            meta.eta = Some(eta.unwrap_or(span.saturating_sub(eps)));
        }
        _ => meta.recurrence = Some(complete_recurrence(g, kind, choice, given)?),
    }
    finish(meta, g)
}

fn finish(mut meta: Meta, g: &RatMatrix) -> Result<Outcome> {
    let built = rebuild(&meta)?;
    let lin = built.lin();
    meta.n = built.n();
    meta.index_shift = Some(Shift { right: lin.index_shift(Side::Right), left: lin.index_shift(Side::Left) });
    meta.certificate = Some(certificate(lin.pencil(), meta.n, g)?);
    let file = PencilFile::of(lin.pencil(), Some(meta));
    Ok(Outcome::ok(serde_json::to_value(file).expect("serializable")))
}

fn fiedler(
    g: &RatMatrix,
    tuples: TupleSet,
    assignments: Option<AssignmentsFile>,
    family: Option<FamilyArg>,
    permute: bool,
) -> Result<Outcome> {
    let mut meta = Meta {
        kind: "fiedler".into(),
        n: 0,
        matrix: Some(json_rat_matrix(g)),
        eps: None,
        eta: None,
        recurrence: None,
        family: family.map(family_of),
        tuples: Some(tuples),
        assignments,
        index_shift: None,
        certificate: None,
        details: None,
    };
    let spec = fiedler_spec(&meta)?;
    meta.family = Some(spec.family);
    let fp = build_fiedler_rational(&RealizedMatrix::new(g)?, &spec)?;
    let (row, col) = fp.symbolic_d0_position()?;
    let mut details = json!({
        "c0": spec.c0,
        "i0": spec.i0,
        "d0_position": [row, col],
        "tags_lambda": fp.tags.lambda.render(),
        "tags_constant": fp.tags.constant.render(),
    });
    meta.n = fp.n();
    if permute {
        let lin = FiedlerLinearization::new(fp.clone())?;
        let k = &lin.kronecker;
        details["permutation"] = json!({
            "pi1": k.pi1.sigma,
            "pi2": k.pi2.sigma,
            "eps": k.eps,
            "eta": k.eta,
            "as_condition": true,
            "corner_law": true,
        });
        meta.index_shift = Some(Shift { right: k.eps, left: k.eta });
    }
    meta.details = Some(details);
    meta.certificate = Some(certificate(&fp.pencil, fp.n(), g)?);
    let file = PencilFile::of(&fp.pencil, Some(meta));
    Ok(Outcome::ok(serde_json::to_value(file).expect("serializable")))
}

fn recover(path: &Path, basis: Option<&Path>, side: Option<SideArg>) -> Result<Outcome> {
    let file: PencilFile = load(path)?;
    let meta = file.meta.as_ref().ok_or_else(|| CliError::Parse("the linearization has no metadata".into()))?;
    let built = rebuild(meta)?;
    if built.lin().pencil() != &file.pencil()? {
        return Err(ratlin::Error::Certification("the pencil differs from the one its metadata describes".into()).into());
    }
    let given = basis.map(load::<BasisFile>).transpose()?.map(|b| b.value()).transpose()?;
    let sides = match (&given, side) {
        (Some(b), _) => vec![b.side],
        (None, Some(s)) => s.sides(),
        (None, None) => SideArg::Both.sides(),
    };
    let mut report = serde_json::Map::new();
    for s in sides {
        let of_l = match &given {
            Some(b) => b.clone(),
            None => minimal_basis(&built.lin().pencil().to_rat(), s),
        };
        let of_g = recover_basis(built.lin(), &of_l)?;
        report.insert(
            s.to_string(),
            json!({
                "pencil_indices": of_l.indices,
                "shift": built.lin().index_shift(s),
                "basis": BasisFile::of(&of_g),
            }),
        );
    }
    Ok(Outcome::ok(Value::Object(report)))
}

fn orders(inf: &InfinityStructure) -> Value {
    json!(inf.q)
}

pub fn verify(file: &PencilFile, g: &RatMatrix) -> Result<Outcome> {
    let meta = file.meta.as_ref().ok_or_else(|| {
        CliError::Library(ratlin::Error::Precondition("the pencil declares no state size (meta.n)".into()))
    })?;
    let l = LinearPsm::new(file.pencil()?, meta.n)?;
    let cert = check_strong_linearization(&l, g)?;
    let lr = l.pencil.to_rat();
    let predicted = invariant_orders_of_linearization(&infinity_structure(g), l.n, cert.s, cert.branch);
    let computed = infinity_structure(&lr);
    let holds = cert.holds();
    let mut report = json!({
        "holds": holds,
        "certificate": cert,
        "g": structural_json(&StructuralReport::of(g)),
        "l": structural_json(&StructuralReport::of(&lr)),
        "orders": { "predicted": predicted, "computed": orders(&computed), "match": predicted == computed.q },
    });
    let mut failure = None;
    if holds {
        let rel = mu_relation(g, &l)?;
        if !rel.holds() {
            failure = Some("mu relation".to_string());
        }
        report["mu_relation"] = serde_json::to_value(rel).expect("serializable");
    } else {
        failure = Some(format!("strong linearization: {}", cert.failed().join(", ")));
    }
    if failure.is_none() && predicted != computed.q {
        failure = Some("invariant orders".into());
    }
    Ok(Outcome { report, failure, table: None })
}
