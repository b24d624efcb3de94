//! Bannai–Muzychuk criterion: a column partition Λ of the first eigenmatrix
//! gives a fusion scheme iff the rows split into exactly |Λ| classes with
//! constant block row sums.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{check_relation_partition, SchemeError};
use crate::charsum::CycMatrix;
use crate::cycint::CycInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusedEigenmatrix {
    pub matrix: CycMatrix,
    /// Δ: row blocks of the original matrix, `rows[0] = [0]`.
    pub rows: Vec<Vec<usize>>,
    /// Λ: column blocks.
    pub columns: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmRefutation {
    pub distinct_signatures: usize,
    pub blocks: usize,
    /// Two rows with different block row-sum signatures, chosen to agree on
    /// as many blocks as possible.
    pub witness_rows: (usize, usize),
    /// A block on which the witness rows differ.
    pub differing_block: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BmOutcome {
    Fusion(FusedEigenmatrix),
    Refuted(BmRefutation),
}

impl BmOutcome {
    pub fn is_fusion(&self) -> bool {
        matches!(self, BmOutcome::Fusion(_))
    }

    pub fn fused(&self) -> Option<&FusedEigenmatrix> {
        match self {
            BmOutcome::Fusion(f) => Some(f),
            BmOutcome::Refuted(_) => None,
        }
    }
}

pub fn bm_check(matrix: &CycMatrix, lambda: &[Vec<usize>]) -> Result<BmOutcome, SchemeError> {
    let dim = matrix.dim();
    if matrix.rows.iter().any(|r| r.len() != dim) {
        return Err(SchemeError::BadPartition(
            "eigenmatrix is not square".into(),
        ));
    }
    check_relation_partition(lambda, dim)?;
    let p = matrix.get(0, 0).p();

    let signatures: Vec<Vec<CycInt>> = matrix
        .rows
        .iter()
        .map(|row| {
            lambda
                .iter()
                .map(|block| block.iter().fold(CycInt::zero(p), |acc, &j| &acc + &row[j]))
                .collect()
        })
        .collect();

    let mut group_of: HashMap<&[CycInt], usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, sig) in signatures.iter().enumerate() {
        let g = *group_of.entry(sig.as_slice()).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }

    if groups.len() == lambda.len() && groups[0] == [0] {
        let rows = groups.iter().map(|g| signatures[g[0]].clone()).collect();
        return Ok(BmOutcome::Fusion(FusedEigenmatrix {
            matrix: CycMatrix { rows },
            rows: groups,
            columns: lambda.to_vec(),
        }));
    }

    let reps: Vec<usize> = groups.iter().map(|g| g[0]).collect();
    let mut best = (0usize, reps[0], *reps.get(1).unwrap_or(&reps[0]));
    for (x, &a) in reps.iter().enumerate() {
        for &b in &reps[x + 1..] {
            let agree = signatures[a]
                .iter()
                .zip(&signatures[b])
                .filter(|(u, v)| u == v)
                .count();
            if agree > best.0 || (best.1 == best.2) {
                best = (agree, a, b);
            }
        }
    }
    let (_, a, b) = best;
    let differing_block = signatures[a]
        .iter()
        .zip(&signatures[b])
        .position(|(u, v)| u != v)
        .unwrap_or(0);
    Ok(BmOutcome::Refuted(BmRefutation {
        distinct_signatures: groups.len(),
        blocks: lambda.len(),
        witness_rows: (a, b),
        differing_block,
    }))
}
