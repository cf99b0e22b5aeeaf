//! Index tuples, the successor infix property, consecutions and inversions
//! at 0, and the validated description of a Fiedler-like pencil.

use crate::error::{precondition, Error, Result};
use crate::polymat::{constant, ConstMatrix};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Finite sequence of indices from {−q, …, q}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexTuple {
    pub entries: Vec<i64>,
    pub q: usize,
}

impl IndexTuple {
    pub fn new(entries: Vec<i64>, q: usize) -> Result<Self> {
        if let Some(&e) = entries.iter().find(|e| e.unsigned_abs() as usize > q) {
            return Err(Error::Precondition(format!("index {e} is outside {{-{q}, …, {q}}}")));
        }
        Ok(IndexTuple { entries, q })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Concatenation of tuples with the same q.
    pub fn concat(parts: &[&IndexTuple]) -> IndexTuple {
        let q = parts.first().map_or(0, |t| t.q);
        IndexTuple { entries: parts.iter().flat_map(|t| t.entries.iter().copied()).collect(), q }
    }

    /// Successor infix property: between any two occurrences of an index i
    /// there is an occurrence of i + 1.
    pub fn satisfies_sip(&self) -> bool {
        let e = &self.entries;
        for (a, &x) in e.iter().enumerate() {
            if let Some(b) = e[a + 1..].iter().position(|&y| y == x) {
                if !e[a + 1..a + 1 + b].contains(&(x + 1)) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the entries are a permutation of `set`.
    pub fn is_permutation_of(&self, set: &BTreeSet<i64>) -> bool {
        let seen: BTreeSet<i64> = self.entries.iter().copied().collect();
        seen.len() == self.entries.len() && seen == *set
    }
}

/// Number of consecutive consecutions at the 0 in position `pos`: the
/// largest c such that 1, 2, …, c occur after it in this order.
pub(crate) fn consecutions_from(entries: &[i64], pos: usize) -> usize {
    let mut c = 0;
    for &e in &entries[pos + 1..] {
        if e == c as i64 + 1 {
            c += 1;
        }
    }
    c
}

/// Number of consecutive inversions at the 0 in position `pos`: the
/// largest i such that i, …, 2, 1 occur before it in this order.
pub(crate) fn inversions_from(entries: &[i64], pos: usize) -> usize {
    let mut i = 0;
    for &e in entries[..pos].iter().rev() {
        if e == i as i64 + 1 {
            i += 1;
        }
    }
    i
}

/// (consecutions, inversions) at the unique 0 of the tuple.
pub fn consecutions_inversions_at_zero(tuple: &IndexTuple) -> Result<(usize, usize)> {
    let zeros: Vec<usize> = tuple.entries.iter().enumerate().filter(|(_, &e)| e == 0).map(|(k, _)| k).collect();
    match zeros[..] {
        [] => precondition("index 0 does not occur in the tuple"),
        [pos] => Ok((consecutions_from(&tuple.entries, pos), inversions_from(&tuple.entries, pos))),
        _ => precondition("index 0 occurs more than once"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiedlerFamily {
    Fp,
    ProperGfp,
    Fpr,
    Gfpr,
}

/// The six index tuples in their JSON form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleSet {
    pub q: usize,
    pub t: Vec<i64>,
    pub z: Vec<i64>,
    #[serde(default)]
    pub lt: Vec<i64>,
    #[serde(default)]
    pub lz: Vec<i64>,
    #[serde(default)]
    pub rt: Vec<i64>,
    #[serde(default)]
    pub rz: Vec<i64>,
}

impl TupleSet {
    /// Fiedler pencil: z = (−q), t a permutation of {0, …, q−1}.
    pub fn fiedler(q: usize, t: &[i64]) -> Self {
        TupleSet { q, t: t.to_vec(), z: vec![-(q as i64)], ..Default::default() }
    }

    pub fn with_sides(mut self, lt: &[i64], lz: &[i64], rz: &[i64], rt: &[i64]) -> Self {
        self.lt = lt.to_vec();
        self.lz = lz.to_vec();
        self.rz = rz.to_vec();
        self.rt = rt.to_vec();
        self
    }

    fn sides_empty(&self) -> bool {
        self.lt.is_empty() && self.lz.is_empty() && self.rt.is_empty() && self.rz.is_empty()
    }
}

/// Matrices attached to the side tuples: X for ℓ_t, Z for ℓ_z, W for r_z
/// and Y for r_t, in tuple order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assignments {
    pub x: Vec<ConstMatrix>,
    pub z: Vec<ConstMatrix>,
    pub w: Vec<ConstMatrix>,
    pub y: Vec<ConstMatrix>,
}

impl Assignments {
    pub fn is_empty(&self) -> bool {
        self.x.is_empty() && self.z.is_empty() && self.w.is_empty() && self.y.is_empty()
    }
}

/// Validated tuples of λM_z − M_t bordered by M_{ℓ_t}M_{ℓ_z} on the left
/// and M_{r_z}M_{r_t} on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct FiedlerSpec {
    pub family: FiedlerFamily,
    pub q: usize,
    pub t: IndexTuple,
    pub z: IndexTuple,
    pub lt: IndexTuple,
    pub lz: IndexTuple,
    pub rt: IndexTuple,
    pub rz: IndexTuple,
    /// Explicit assignments (GFPR); empty for the other families, FPRs
    /// using the coefficients of D.
    pub assignments: Assignments,
    /// Consecutive inversions at 0 of (ℓ_t, t).
    pub i0: usize,
    /// Consecutive consecutions at 0 of (t, r_t).
    pub c0: usize,
}

fn range(lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi).collect()
}

impl FiedlerSpec {
    pub fn new(family: FiedlerFamily, tuples: &TupleSet, assignments: Assignments) -> Result<Self> {
        let q = tuples.q;
        if q < 2 {
            return precondition("Fiedler-like pencils need q ≥ 2");
        }
        let qi = q as i64;
        let mk = |v: &Vec<i64>| IndexTuple::new(v.clone(), q);
        let (t, z) = (mk(&tuples.t)?, mk(&tuples.z)?);
        let (lt, lz, rt, rz) = (mk(&tuples.lt)?, mk(&tuples.lz)?, mk(&tuples.rt)?, mk(&tuples.rz)?);
        match family {
            FiedlerFamily::Fp => {
                if !tuples.sides_empty() || tuples.z != [-qi] || !t.is_permutation_of(&range(0, qi - 1)) {
                    return precondition("an FP needs z = (−q), t a permutation of {0, …, q−1} and no side tuples");
                }
            }
            FiedlerFamily::ProperGfp => {
                if !tuples.sides_empty() {
                    return precondition("a proper GFP has no side tuples");
                }
                let c0: BTreeSet<i64> = t.entries.iter().copied().collect();
                let c1: BTreeSet<i64> = z.entries.iter().map(|e| -e).collect();
                let all = range(0, qi);
                let partition = c0.len() == t.len()
                    && c1.len() == z.len()
                    && c0.is_disjoint(&c1)
                    && c0.union(&c1).copied().collect::<BTreeSet<_>>() == all;
                if !partition || !c0.contains(&0) || !c1.contains(&qi) || z.entries.contains(&0) {
                    return precondition("a proper GFP needs t, −z permuting a partition C₀, C₁ of {0, …, q} with 0 ∈ C₀, q ∈ C₁");
                }
            }
            FiedlerFamily::Fpr | FiedlerFamily::Gfpr => {
                let h = t.len() as i64 - 1;
                if h < 0 || h >= qi || !t.is_permutation_of(&range(0, h)) || !z.is_permutation_of(&range(-qi, -h - 1)) {
                    return precondition("t and z must permute {0, …, h} and {−q, …, −h−1} for some h < q");
                }
                let inside = |v: &IndexTuple, lo: i64, hi: i64| v.entries.iter().all(|e| (lo..=hi).contains(e));
                if !inside(&lt, 0, h - 1) || !inside(&rt, 0, h - 1) {
                    return precondition("ℓ_t and r_t must take indices from {0, …, h−1}");
                }
                if !inside(&lz, -qi, -h - 2) || !inside(&rz, -qi, -h - 2) {
                    return precondition("ℓ_z and r_z must take indices from {−q, …, −h−2}");
                }
                if !IndexTuple::concat(&[&lt, &t, &rt]).satisfies_sip() {
                    return precondition("(ℓ_t, t, r_t) does not satisfy the SIP");
                }
                if !IndexTuple::concat(&[&lz, &z, &rz]).satisfies_sip() {
                    return precondition("(ℓ_z, z, r_z) does not satisfy the SIP");
                }
            }
        }
        match family {
            FiedlerFamily::Gfpr => {
                let counts = [(lt.len(), assignments.x.len()), (lz.len(), assignments.z.len())];
                let counts = counts.into_iter().chain([(rz.len(), assignments.w.len()), (rt.len(), assignments.y.len())]);
                if counts.into_iter().any(|(a, b)| a != b) {
                    return precondition("each side tuple needs one assigned matrix per index");
                }
                let all = assignments.x.iter().chain(&assignments.z).chain(&assignments.w).chain(&assignments.y);
                if let Some(m) = all.clone().find(|m| !m.is_square()) {
                    return Err(Error::Dimension(format!("assigned matrix is {}x{}", m.rows(), m.cols())));
                }
            }
            _ if !assignments.is_empty() => return precondition("only GFPRs take explicit assignments"),
            _ => {}
        }
        let zero = t.entries.iter().position(|&e| e == 0).expect("t contains 0");
        let left = IndexTuple::concat(&[&lt, &t]);
        let right = IndexTuple::concat(&[&t, &rt]);
        let i0 = inversions_from(&left.entries, lt.len() + zero);
        let c0 = consecutions_from(&right.entries, zero);
        Ok(FiedlerSpec { family, q, t, z, lt, lz, rt, rz, assignments, i0, c0 })
    }

    /// Most specific family the tuples belong to: FP, then proper GFP,
    /// then GFPR when assignments are given and FPR otherwise.
    pub fn infer(tuples: &TupleSet, assignments: Assignments) -> Result<Self> {
        if assignments.is_empty() {
            for family in [FiedlerFamily::Fp, FiedlerFamily::ProperGfp] {
                if let Ok(spec) = Self::new(family, tuples, Assignments::default()) {
                    return Ok(spec);
                }
            }
            return Self::new(FiedlerFamily::Fpr, tuples, assignments);
        }
        Self::new(FiedlerFamily::Gfpr, tuples, assignments)
    }

    pub fn tuple_set(&self) -> TupleSet {
        TupleSet {
            q: self.q,
            t: self.t.entries.clone(),
            z: self.z.entries.clone(),
            lt: self.lt.entries.clone(),
            lz: self.lz.entries.clone(),
            rt: self.rt.entries.clone(),
            rz: self.rz.entries.clone(),
        }
    }

    /// Checks that the assignments attached to indices 0 and ±q are
    /// nonsingular, which is when M_{ℓ_t,ℓ_z} and M_{r_z,r_t} are.
    pub(crate) fn check_nonsingular(&self, assigned: &Assignments) -> Result<()> {
        let q = self.q as i64;
        let pairs = [(&self.lt, &assigned.x), (&self.lz, &assigned.z), (&self.rz, &assigned.w), (&self.rt, &assigned.y)];
        for (tuple, mats) in pairs {
            for (&i, m) in tuple.entries.iter().zip(mats.iter()) {
                if (i == 0 || i.abs() == q) && !constant::is_nonsingular(m) {
                    return precondition(format!("matrix assigned to index {i} is singular"));
                }
            }
        }
        Ok(())
    }
}

/// Every FP for degree q (one per permutation of {0, …, q−1}).
pub fn all_fiedler_tuples(q: usize) -> Vec<TupleSet> {
    permutations(&(0..q as i64).collect::<Vec<_>>()).into_iter().map(|t| TupleSet::fiedler(q, &t)).collect()
}

/// Every proper GFP for degree q: all partitions C₀ ∋ 0, C₁ ∋ q and all
/// orderings of both parts.
pub fn all_proper_gfp_tuples(q: usize) -> Vec<TupleSet> {
    let middle: Vec<i64> = (1..q as i64).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << middle.len()) {
        let mut c0 = vec![0];
        let mut c1 = vec![q as i64];
        for (k, &i) in middle.iter().enumerate() {
            if mask & (1 << k) != 0 {
                c0.push(i);
            } else {
                c1.push(i);
            }
        }
        let neg: Vec<i64> = c1.iter().map(|i| -i).collect();
        for t in permutations(&c0) {
            for z in permutations(&neg) {
                out.push(TupleSet { q, t: t.clone(), z, ..Default::default() });
            }
        }
    }
    out
}

pub(crate) fn permutations(items: &[i64]) -> Vec<Vec<i64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(v: &[i64]) -> IndexTuple {
        IndexTuple::new(v.to_vec(), 4).unwrap()
    }

    #[test]
    fn sip_examples() {
        assert!(tuple(&[0, 1, 0]).satisfies_sip());
        assert!(!tuple(&[0, 0]).satisfies_sip());
        assert!(!tuple(&[1, 0, 1]).satisfies_sip());
        assert!(tuple(&[1, 2, 0, 1]).satisfies_sip());
        assert!(tuple(&[-3, -2, -3]).satisfies_sip());
        assert!(!tuple(&[-2, -3, -2]).satisfies_sip());
        assert!(IndexTuple::new(vec![5], 4).is_err());
    }

    #[test]
    fn consecutions_and_inversions() {
        assert_eq!(consecutions_inversions_at_zero(&tuple(&[0, 1])).unwrap(), (1, 0));
        assert_eq!(consecutions_inversions_at_zero(&tuple(&[1, 0])).unwrap(), (0, 1));
        assert_eq!(consecutions_inversions_at_zero(&tuple(&[0])).unwrap(), (0, 0));
        assert_eq!(consecutions_inversions_at_zero(&tuple(&[2, 1, 0, 3])).unwrap(), (0, 2));
        assert_eq!(consecutions_inversions_at_zero(&tuple(&[1, 0, 2, 3])).unwrap(), (0, 1));
        assert_eq!(consecutions_inversions_at_zero(&tuple(&[0, 2, 1, 3])).unwrap(), (1, 0));
        assert!(consecutions_inversions_at_zero(&tuple(&[1, 2])).is_err());
        assert!(consecutions_inversions_at_zero(&tuple(&[0, 1, 0])).is_err());
    }

    #[test]
    fn fp_has_exactly_one_nonzero_count() {
        for q in 2..=5 {
            for ts in all_fiedler_tuples(q) {
                let spec = FiedlerSpec::new(FiedlerFamily::Fp, &ts, Assignments::default()).unwrap();
                assert!((spec.i0 == 0) != (spec.c0 == 0), "{:?}", ts.t);
            }
        }
    }

    #[test]
    fn proper_gfp_has_at_most_one_nonzero_count() {
        let mut both_zero = 0;
        for q in 2..=4 {
            for ts in all_proper_gfp_tuples(q) {
                let spec = FiedlerSpec::new(FiedlerFamily::ProperGfp, &ts, Assignments::default()).unwrap();
                assert!(spec.i0 == 0 || spec.c0 == 0);
                both_zero += usize::from(spec.i0 == 0 && spec.c0 == 0);
            }
        }
        assert!(both_zero > 0);
    }

    #[test]
    fn family_constraints() {
        let fp = TupleSet::fiedler(3, &[2, 0, 1]);
        assert!(FiedlerSpec::new(FiedlerFamily::Fp, &fp, Assignments::default()).is_ok());
        let bad = TupleSet::fiedler(3, &[2, 0, 0]);
        assert!(FiedlerSpec::new(FiedlerFamily::Fp, &bad, Assignments::default()).is_err());
        let gfp = TupleSet { q: 3, t: vec![1, 0], z: vec![-3, -2], ..Default::default() };
        assert!(FiedlerSpec::new(FiedlerFamily::ProperGfp, &gfp, Assignments::default()).is_ok());
        let no_q = TupleSet { q: 3, t: vec![1, 0, 3], z: vec![-2], ..Default::default() };
        assert!(FiedlerSpec::new(FiedlerFamily::ProperGfp, &no_q, Assignments::default()).is_err());
        // h = 1: ℓ_t, r_t ⊆ {0}, ℓ_z, r_z ⊆ {−3}
        let fpr = TupleSet { q: 3, t: vec![1, 0], z: vec![-3, -2], ..Default::default() }.with_sides(&[0], &[], &[-3], &[]);
        let spec = FiedlerSpec::new(FiedlerFamily::Fpr, &fpr, Assignments::default()).unwrap();
        assert_eq!((spec.i0, spec.c0), (1, 0));
        let no_sip = TupleSet { q: 3, t: vec![0, 1], z: vec![-3, -2], ..Default::default() }.with_sides(&[0], &[], &[], &[]);
        assert!(FiedlerSpec::new(FiedlerFamily::Fpr, &no_sip, Assignments::default()).is_err());
        assert_eq!(FiedlerSpec::infer(&fp, Assignments::default()).unwrap().family, FiedlerFamily::Fp);
        assert_eq!(FiedlerSpec::infer(&gfp, Assignments::default()).unwrap().family, FiedlerFamily::ProperGfp);
        assert_eq!(FiedlerSpec::infer(&fpr, Assignments::default()).unwrap().family, FiedlerFamily::Fpr);
    }

    #[test]
    fn enumerations_have_expected_sizes() {
        assert_eq!(all_fiedler_tuples(3).len(), 6);
        // q = 3: C₀ ∈ {{0}, {0,1}, {0,2}, {0,1,2}} with complements
        assert_eq!(all_proper_gfp_tuples(3).len(), 6 + 4 + 4 + 6);
    }
}
