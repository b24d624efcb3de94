//! Translation association schemes on `(F_q, +)` whose classes are unions of
//! `N`-th cyclotomic classes.
//!
//! Relation `R_0` is the diagonal and `R_k` (`k ≥ 1`) is `{(x, y) : x - y ∈ D_{k-1}}`.
//! Every predicate here comes with a second, independent route: the
//! Bannai–Muzychuk row-sum test on the eigenmatrix versus direct counting of
//! intersection numbers, and Σ p_ii^j versus the 2-design pair count.

mod bm;
mod design;
mod io;
mod srg;
mod tensor;

use std::sync::Arc;

use thiserror::Error;

use crate::charsum::{self, CharSumError, CycMatrix, CyclotomicClasses, SubsetCharTable};
use crate::cycint::CycInt;
use crate::ffield::{FieldError, FieldTable};
use crate::numth::{self, NumthError};

pub use bm::{bm_check, BmOutcome, BmRefutation, FusedEigenmatrix};
pub use design::{two_design_check, DesignVerdict, DESIGN_MAX_ORDER};
pub use io::{SchemeFile, SCHEME_FORMAT_HEADER};
pub use srg::{srg_check, Degeneracy, SrgOutcome, SrgParams};
pub use tensor::{
    intersection_numbers, is_association_scheme, is_pseudocyclic, pseudocyclic_by_counting,
    IntersectionTensor, PseudocyclicVerdict, SchemeVerdict, TensorWitness, TENSOR_MAX_ORDER,
    TENSOR_MAX_RELATIONS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("part D_{part} is not closed under negation")]
    NotSymmetric { part: usize },
    #[error("{d} relations exceed the intersection tensor limit {limit}")]
    TooManyRelations { d: usize, limit: usize },
    #[error("field of order {q} is beyond the enumeration limit {limit}")]
    FieldTooLarge { q: u64, limit: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    CharSum(#[from] CharSumError),
    #[error(transparent)]
    Numth(#[from] NumthError),
    #[error("scheme file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("eigenmatrix row {row} has no integral multiplicity: {detail}")]
    Multiplicity { row: usize, detail: String },
}

/// A partition of relation indices `0..=d`; block 0 must be `{0}`.
pub type RelationPartition = Vec<Vec<usize>>;

#[derive(Debug, Clone)]
pub struct TranslationScheme {
    field: Arc<FieldTable>,
    classes: CyclotomicClasses,
    parts: Vec<Vec<u32>>,
    part_of_class: Vec<u32>,
}

impl PartialEq for TranslationScheme {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec()
            && self.classes == other.classes
            && self.parts == other.parts
    }
}

impl TranslationScheme {
    /// `parts[k]` lists the base classes whose union is `D_k`.
    pub fn new(
        field: Arc<FieldTable>,
        base_n: u32,
        parts: Vec<Vec<u32>>,
    ) -> Result<Self, SchemeError> {
        let classes = charsum::cyclotomic_classes(&field, base_n)?;
        let mut part_of_class = vec![u32::MAX; base_n as usize];
        let mut parts = parts;
        for (k, part) in parts.iter_mut().enumerate() {
            if part.is_empty() {
                return Err(SchemeError::BadPartition(format!("part {k} is empty")));
            }
            part.sort_unstable();
            for &c in part.iter() {
                let slot = part_of_class.get_mut(c as usize).ok_or_else(|| {
                    SchemeError::BadPartition(format!("class {c} is not below N = {base_n}"))
                })?;
                if *slot != u32::MAX {
                    return Err(SchemeError::BadPartition(format!(
                        "class {c} appears in more than one part"
                    )));
                }
                *slot = k as u32;
            }
        }
        if let Some(c) = part_of_class.iter().position(|&k| k == u32::MAX) {
            return Err(SchemeError::BadPartition(format!(
                "class {c} is not covered"
            )));
        }
        let shift = classes.negation_shift(&field);
        for (k, part) in parts.iter().enumerate() {
            if part
                .iter()
                .any(|&c| part_of_class[((c + shift) % base_n) as usize] != k as u32)
            {
                return Err(SchemeError::NotSymmetric { part: k });
            }
        }
        Ok(TranslationScheme {
            field,
            classes,
            parts,
            part_of_class,
        })
    }

    /// The class-`N` cyclotomic scheme, `D_k = C_k`.
    pub fn cyclotomic(field: Arc<FieldTable>, n: u32) -> Result<Self, SchemeError> {
        let parts = (0..n).map(|i| vec![i]).collect();
        Self::new(field, n, parts)
    }

    /// Merges relations along `lambda`, a partition of `0..=d` with block
    /// `{0}` first. No judgment is made on whether the result is a scheme.
    pub fn fuse(&self, lambda: &[Vec<usize>]) -> Result<Self, SchemeError> {
        check_relation_partition(lambda, self.d() + 1)?;
        let parts = lambda[1..]
            .iter()
            .map(|block| {
                block
                    .iter()
                    .flat_map(|&r| self.parts[r - 1].iter().copied())
                    .collect()
            })
            .collect();
        Self::new(self.field.clone(), self.classes.n, parts)
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn base_n(&self) -> u32 {
        self.classes.n
    }

    pub fn classes(&self) -> &CyclotomicClasses {
        &self.classes
    }

    /// Number of nontrivial relations.
    pub fn d(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    pub fn part_of_class(&self) -> &[u32] {
        &self.part_of_class
    }

    /// Relation index of the nonzero element `γ^n`.
    #[inline]
    pub fn relation_of(&self, n: u32) -> usize {
        1 + self.part_of_class[(n % self.classes.n) as usize] as usize
    }

    /// Valencies `k_0 = 1, k_r = |D_{r-1}|`.
    pub fn valencies(&self) -> Vec<u64> {
        std::iter::once(1)
            .chain(
                self.parts
                    .iter()
                    .map(|p| p.len() as u64 * self.classes.class_size as u64),
            )
            .collect()
    }

    /// Discrete logs of the elements of `D_k`.
    pub fn part_elements(&self, k: usize) -> Vec<u32> {
        self.parts[k]
            .iter()
            .flat_map(|&c| self.classes.members(c))
            .collect()
    }

    /// `ψ_{γ^a}(D_k)` for all `a` in `0..N`.
    pub fn char_table(&self) -> Result<SubsetCharTable, SchemeError> {
        Ok(SubsetCharTable::from_periods(
            &self.field,
            self.classes.n,
            &self.parts,
        )?)
    }

    /// First eigenmatrix of the base cyclotomic scheme.
    pub fn base_eigenmatrix(&self) -> Result<CycMatrix, SchemeError> {
        Ok(charsum::eigenmatrix_cyclotomic(
            &self.field,
            self.classes.n,
        )?)
    }

    /// Eigenmatrix of this scheme read off the character table, assuming it is
    /// a scheme: rows are grouped by identical character values and listed in
    /// order of the first exponent `a` that produces them.
    pub fn grouped_eigenmatrix(&self) -> Result<(CycMatrix, Vec<Vec<u32>>), SchemeError> {
        let table = self.char_table()?;
        let p = self.field.p();
        let mut rows: Vec<Vec<CycInt>> = Vec::new();
        let mut groups: Vec<Vec<u32>> = Vec::new();
        for (a, sums) in table.sums.iter().enumerate() {
            match rows.iter().position(|r| r[1..] == sums[..]) {
                Some(g) => groups[g].push(a as u32),
                None => {
                    let mut row = vec![CycInt::from_int(p, 1)];
                    row.extend(sums.iter().cloned());
                    rows.push(row);
                    groups.push(vec![a as u32]);
                }
            }
        }
        let mut top = vec![CycInt::from_int(p, 1)];
        top.extend(table.sizes.iter().map(|&s| CycInt::from_int(p, s as i128)));
        rows.insert(0, top);
        Ok((CycMatrix { rows }, groups))
    }
}

pub(crate) fn check_relation_partition(
    lambda: &[Vec<usize>],
    size: usize,
) -> Result<(), SchemeError> {
    if lambda.first().map(|b| b.as_slice()) != Some(&[0][..]) {
        return Err(SchemeError::BadPartition(
            "the first block must be {0}".into(),
        ));
    }
    let mut seen = vec![false; size];
    for (b, block) in lambda.iter().enumerate() {
        if block.is_empty() {
            return Err(SchemeError::BadPartition(format!("block {b} is empty")));
        }
        for &r in block {
            if r >= size || std::mem::replace(&mut seen[r], true) {
                return Err(SchemeError::BadPartition(format!(
                    "index {r} is out of range or repeated"
                )));
            }
        }
    }
    if let Some(r) = seen.iter().position(|s| !s) {
        return Err(SchemeError::BadPartition(format!(
            "index {r} is not covered"
        )));
    }
    Ok(())
}

/// Baumert–Mills–Ward: the class-`N` cyclotomic scheme over GF(p^f) is
/// amorphic iff `-1` is a power of `p` mod `N`.
pub fn amorphy_check(p: u64, n: u64) -> Result<bool, SchemeError> {
    Ok(numth::is_semiprimitive(p, n)?)
}

/// Multiplicities from row orthogonality, `m_i = q / Σ_j |P_ij|^2 / k_j`.
pub fn multiplicities(matrix: &CycMatrix) -> Result<Vec<u64>, SchemeError> {
    let dim = matrix.dim();
    let valencies: Vec<i128> = (0..dim)
        .map(|j| {
            matrix
                .get(0, j)
                .to_integer()
                .filter(|&k| k > 0)
                .ok_or_else(|| SchemeError::Multiplicity {
                    row: 0,
                    detail: format!("valency {} is not a positive integer", matrix.get(0, j)),
                })
        })
        .collect::<Result<_, _>>()?;
    let q: i128 = valencies.iter().sum();
    (0..dim)
        .map(|i| {
            let norm: CycInt = (0..dim)
                .map(|j| matrix.get(i, j).norm_sq().div_int(valencies[j]))
                .sum();
            let r = norm
                .to_rational()
                .ok_or_else(|| SchemeError::Multiplicity {
                    row: i,
                    detail: format!("row norm {norm} is irrational"),
                })?;
            let m = num_rational::Ratio::from_integer(q) / r;
            if !m.is_integer() || *m.numer() <= 0 {
                return Err(SchemeError::Multiplicity {
                    row: i,
                    detail: format!("q / norm = {m}"),
                });
            }
            Ok(*m.numer() as u64)
        })
        .collect()
}

/// `Σ_j P_ij conj(P_i'j) / k_j = 0` for every pair of distinct rows.
pub fn rows_orthogonal(matrix: &CycMatrix) -> bool {
    let dim = matrix.dim();
    let Some(valencies) = (0..dim)
        .map(|j| matrix.get(0, j).to_integer().filter(|&k| k > 0))
        .collect::<Option<Vec<i128>>>()
    else {
        return false;
    };
    let conj: Vec<Vec<CycInt>> = matrix
        .rows
        .iter()
        .map(|r| r.iter().map(|x| x.conj()).collect())
        .collect();
    for i in 0..dim {
        for i2 in (i + 1)..dim {
            let s: CycInt = (0..dim)
                .map(|j| (matrix.get(i, j) * &conj[i2][j]).div_int(valencies[j]))
                .sum();
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}
