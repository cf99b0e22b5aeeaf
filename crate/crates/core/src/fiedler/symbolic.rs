//! Block tag algebra: q×q grids whose blocks are 0, ±I or ±(one named
//! matrix), multiplied without ever forming a sum or product of two named
//! matrices.

use crate::error::{certification, Result};
use std::fmt;

/// Named p×p matrix appearing in a Fiedler-like product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    /// Coefficient D_i of the polynomial part.
    Coeff(usize),
    /// k-th matrix assigned to ℓ_t.
    X(usize),
    /// k-th matrix assigned to ℓ_z.
    Z(usize),
    /// k-th matrix assigned to r_z.
    W(usize),
    /// k-th matrix assigned to r_t.
    Y(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Ident,
    Slot(Slot),
}

/// Nonzero block: sign times a tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub negative: bool,
    pub tag: Tag,
}

impl Term {
    pub fn ident() -> Self {
        Term { negative: false, tag: Tag::Ident }
    }

    pub fn slot(s: Slot, negative: bool) -> Self {
        Term { negative, tag: Tag::Slot(s) }
    }

    pub fn negated(self) -> Self {
        Term { negative: !self.negative, ..self }
    }

    fn mul(self, rhs: Term) -> Option<Term> {
        let tag = match (self.tag, rhs.tag) {
            (Tag::Ident, t) | (t, Tag::Ident) => t,
            _ => return None,
        };
        Some(Term { negative: self.negative != rhs.negative, tag })
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Coeff(i) => write!(f, "D{i}"),
            Slot::X(k) => write!(f, "X{}", k + 1),
            Slot::Z(k) => write!(f, "Z{}", k + 1),
            Slot::W(k) => write!(f, "W{}", k + 1),
            Slot::Y(k) => write!(f, "Y{}", k + 1),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match self.tag {
            Tag::Ident => write!(f, "{sign}I"),
            Tag::Slot(s) => write!(f, "{sign}{s}"),
        }
    }
}

/// Square grid of optional terms (None is the zero block).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagGrid {
    pub size: usize,
    pub blocks: Vec<Option<Term>>,
}

impl TagGrid {
    pub fn identity(size: usize) -> Self {
        let mut g = TagGrid { size, blocks: vec![None; size * size] };
        for i in 0..size {
            g.set(i, i, Some(Term::ident()));
        }
        g
    }

    /// 0-based block access.
    pub fn get(&self, i: usize, j: usize) -> Option<Term> {
        self.blocks[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, t: Option<Term>) {
        self.blocks[i * self.size + j] = t;
    }

    pub fn neg(&self) -> Self {
        TagGrid { size: self.size, blocks: self.blocks.iter().map(|b| b.map(Term::negated)).collect() }
    }

    /// Product that fails when some block would need a sum of two nonzero
    /// terms or a product of two named matrices.
    pub fn mul(&self, rhs: &TagGrid) -> Result<TagGrid> {
        let n = self.size;
        let mut out = TagGrid { size: n, blocks: vec![None; n * n] };
        for i in 0..n {
            for j in 0..n {
                let mut acc: Option<Term> = None;
                for k in 0..n {
                    let (Some(a), Some(b)) = (self.get(i, k), rhs.get(k, j)) else { continue };
                    let Some(ab) = a.mul(b) else {
                        return certification(format!("block ({}, {}) multiplies {a} by {b}", i + 1, j + 1));
                    };
                    if let Some(prev) = acc {
                        return certification(format!("block ({}, {}) adds {prev} and {ab}", i + 1, j + 1));
                    }
                    acc = Some(ab);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// 0-based positions holding `slot` (with either sign).
    pub fn positions(&self, slot: Slot) -> Vec<(usize, usize, bool)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if let Some(t) = self.get(i, j) {
                    if t.tag == Tag::Slot(slot) {
                        out.push((i, j, t.negative));
                    }
                }
            }
        }
        out
    }

    /// Rows of text, one string per block.
    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).map_or_else(|| "0".to_string(), |t| t.to_string())).collect())
            .collect()
    }
}

/// Tags of λ·L₁ + L₀ side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagPencil {
    pub lambda: TagGrid,
    pub constant: TagGrid,
}

impl TagPencil {
    /// Whether block (i, j) holds a coefficient of D in either part.
    pub fn has_coeff(&self, i: usize, j: usize) -> bool {
        [self.lambda.get(i, j), self.constant.get(i, j)]
            .iter()
            .any(|t| matches!(t, Some(Term { tag: Tag::Slot(Slot::Coeff(_)), .. })))
    }

    pub fn is_zero_block(&self, i: usize, j: usize) -> bool {
        self.lambda.get(i, j).is_none() && self.constant.get(i, j).is_none()
    }

    /// "λ·a + b" rendering of each block.
    pub fn render(&self) -> Vec<Vec<String>> {
        let n = self.lambda.size;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (self.lambda.get(i, j), self.constant.get(i, j)) {
                        (None, None) => "0".to_string(),
                        (Some(a), None) => format!("λ{a}"),
                        (None, Some(b)) => b.to_string(),
                        (Some(a), Some(b)) => {
                            let b = b.to_string();
                            match b.strip_prefix('-') {
                                Some(rest) => format!("λ{a} - {rest}"),
                                None => format!("λ{a} + {b}"),
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    }
}
