//! JSON interchange: matrices, system matrices, pencils with metadata,
//! bases, recurrences and Fiedler assignments. Every number is written as
//! an exact rational string; integers are accepted on input.

use crate::CliError;
use ratlin::exactalg::{fmt_rat, parse_rat, Poly, Rat, RatFn};
use ratlin::fiedler::{Assignments, FiedlerFamily, TupleSet};
use ratlin::minbases::{MinimalBasis, Side};
use ratlin::polymat::{ConstMatrix, Mat, Pencil, PolyMatrix, RatMatrix};
use ratlin::sysmat::PolySystemMatrix;
use serde::{Deserialize, Serialize};

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Text(String),
    Int(i64),
}

impl Coeff {
    pub fn of(r: &Rat) -> Self {
        Coeff::Text(fmt_rat(r))
    }

    pub fn value(&self) -> Result<Rat> {
        match self {
            Coeff::Text(s) => Ok(parse_rat(s)?),
            Coeff::Int(i) => Ok(ratlin::exactalg::int(*i)),
        }
    }
}

pub fn coeffs_of(p: &Poly) -> Vec<Coeff> {
    p.coeffs().iter().map(Coeff::of).collect()
}

pub fn poly_of(cs: &[Coeff]) -> Result<Poly> {
    Ok(Poly::new(cs.iter().map(Coeff::value).collect::<Result<_>>()?))
}

pub fn rats_of(cs: &[Coeff]) -> Result<Vec<Rat>> {
    cs.iter().map(Coeff::value).collect()
}

/// A polynomial entry is a coefficient list, low to high; a rational one
/// is `{"num": [...], "den": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Poly(Vec<Coeff>),
    Frac { num: Vec<Coeff>, den: Vec<Coeff> },
}

impl Entry {
    fn of(f: &RatFn) -> Self {
        match f.to_poly() {
            Some(p) => Entry::Poly(coeffs_of(&p)),
            None => Entry::Frac { num: coeffs_of(f.num()), den: coeffs_of(f.den()) },
        }
    }

    fn value(&self) -> Result<RatFn> {
        match self {
            Entry::Poly(cs) => Ok(RatFn::from_poly(poly_of(cs)?)),
            Entry::Frac { num, den } => {
                RatFn::new(poly_of(num)?, poly_of(den)?).map_err(|e| CliError::Parse(e.to_string()))
            }
        }
    }
}

/// `{"rows": r, "cols": c, "entries": [[...], ...]}`; a bare array of rows
/// is accepted when it is nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid<T> {
    Sized { rows: usize, cols: usize, entries: Vec<Vec<T>> },
    Rows(Vec<Vec<T>>),
}

impl<T: Clone> Grid<T> {
    fn of(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        Grid::Sized { rows, cols, entries: (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect() }
    }

    fn cells(&self) -> Result<(usize, usize, Vec<T>)> {
        let (rows, cols, entries) = match self {
            Grid::Sized { rows, cols, entries } => (*rows, *cols, entries),
            Grid::Rows(entries) => {
                let cols = entries.first().map_or(0, Vec::len);
                if entries.is_empty() {
                    return Err(CliError::Parse("an empty matrix needs explicit rows and cols".into()));
                }
                (entries.len(), cols, entries)
            }
        };
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(CliError::Parse(format!("entries do not form a {rows}x{cols} matrix")));
        }
        Ok((rows, cols, entries.iter().flatten().cloned().collect()))
    }
}

pub type JsonMatrix = Grid<Entry>;
pub type JsonConst = Grid<Coeff>;

pub fn json_rat_matrix(g: &RatMatrix) -> JsonMatrix {
    Grid::of(g.rows(), g.cols(), |i, j| Entry::of(&g[(i, j)]))
}

pub fn json_poly_matrix(p: &PolyMatrix) -> JsonMatrix {
    Grid::of(p.rows(), p.cols(), |i, j| Entry::Poly(coeffs_of(&p[(i, j)])))
}

pub fn json_const(c: &ConstMatrix) -> JsonConst {
    Grid::of(c.rows(), c.cols(), |i, j| Coeff::of(&c[(i, j)]))
}

pub fn rat_matrix(m: &JsonMatrix) -> Result<RatMatrix> {
    let (r, c, cells) = m.cells()?;
    Ok(Mat::from_vec(r, c, cells.iter().map(Entry::value).collect::<Result<_>>()?))
}

pub fn poly_matrix(m: &JsonMatrix) -> Result<PolyMatrix> {
    rat_matrix(m)?.to_poly().ok_or_else(|| CliError::Parse("expected a polynomial matrix".into()))
}

pub fn const_matrix(m: &JsonConst) -> Result<ConstMatrix> {
    let (r, c, cells) = m.cells()?;
    Ok(Mat::from_vec(r, c, cells.iter().map(Coeff::value).collect::<Result<_>>()?))
}

/// `{"n": n, "A": ..., "B": ..., "C": ..., "D": ...}` for [[A, B], [−C, D]].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsmFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "A")]
    pub a: JsonMatrix,
    #[serde(rename = "B")]
    pub b: JsonMatrix,
    #[serde(rename = "C")]
    pub c: JsonMatrix,
    #[serde(rename = "D")]
    pub d: JsonMatrix,
}

impl PsmFile {
    pub fn of(p: &PolySystemMatrix) -> Self {
        PsmFile {
            n: Some(p.n()),
            a: json_poly_matrix(&p.a),
            b: json_poly_matrix(&p.b),
            c: json_poly_matrix(&p.c),
            d: json_poly_matrix(&p.d),
        }
    }

    pub fn system(&self) -> Result<PolySystemMatrix> {
        let p = PolySystemMatrix::new(
            poly_matrix(&self.a)?,
            poly_matrix(&self.b)?,
            poly_matrix(&self.c)?,
            poly_matrix(&self.d)?,
        )?;
        if self.n.is_some_and(|n| n != p.n()) {
            return Err(CliError::Parse(format!("declared n does not match A ({}x{})", p.n(), p.n())));
        }
        Ok(p)
    }
}

/// Parameters of M1, extended M1 and M2 pencils.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_psi: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<JsonMatrix>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentsFile {
    #[serde(default)]
    pub x: Vec<JsonConst>,
    #[serde(default)]
    pub z: Vec<JsonConst>,
    #[serde(default)]
    pub w: Vec<JsonConst>,
    #[serde(default)]
    pub y: Vec<JsonConst>,
}

impl AssignmentsFile {
    pub fn of(a: &Assignments) -> Self {
        let conv = |v: &[ConstMatrix]| v.iter().map(json_const).collect();
        AssignmentsFile { x: conv(&a.x), z: conv(&a.z), w: conv(&a.w), y: conv(&a.y) }
    }

    pub fn value(&self) -> Result<Assignments> {
        let conv = |v: &[JsonConst]| v.iter().map(const_matrix).collect::<Result<Vec<_>>>();
        Ok(Assignments { x: conv(&self.x)?, z: conv(&self.z)?, w: conv(&self.w)?, y: conv(&self.y)? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shift {
    pub right: usize,
    pub left: usize,
}

/// How a pencil was built, enough to rebuild it exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<RecurrenceFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FiedlerFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuples: Option<TupleSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignments: Option<AssignmentsFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_shift: Option<Shift>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

/// `{"l1": ..., "l0": ..., "meta": {...}}` for λ·l1 + l0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilFile {
    pub l1: JsonConst,
    pub l0: JsonConst,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl PencilFile {
    pub fn of(p: &Pencil, meta: Option<Meta>) -> Self {
        PencilFile { l1: json_const(&p.l1), l0: json_const(&p.l0), meta }
    }

    pub fn pencil(&self) -> Result<Pencil> {
        Ok(Pencil::new(const_matrix(&self.l1)?, const_matrix(&self.l0)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFile {
    pub side: Side,
    pub basis: JsonMatrix,
    pub indices: Vec<usize>,
}

impl BasisFile {
    pub fn of(b: &MinimalBasis) -> Self {
        BasisFile { side: b.side, basis: json_poly_matrix(&b.basis), indices: b.indices.clone() }
    }

    /// Indices are recomputed from the column degrees.
    pub fn value(&self) -> Result<MinimalBasis> {
        let b = MinimalBasis::from_columns(self.side, poly_matrix(&self.basis)?);
        if b.indices != self.indices {
            return Err(CliError::Parse(format!("indices {:?} differ from the column degrees {:?}", self.indices, b.indices)));
        }
        Ok(b)
    }
}
