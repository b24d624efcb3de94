//! Intersection numbers by direct counting.
//!
//! `p[i][j][k] = #{x : x ∈ S_i, z - x ∈ S_j}` for `z ∈ S_k`, where `S_0 = {0}`
//! and `S_r = D_{r-1}`. Multiplication by `γ^N` fixes every part, so the
//! count only depends on the base class of `z`; one representative per base
//! class therefore certifies that each count is well defined.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SchemeError, TranslationScheme};

/// Largest field on which intersection numbers are counted.
pub const TENSOR_MAX_ORDER: u64 = 1 << 24;

/// Largest number of nontrivial relations for a full tensor.
pub const TENSOR_MAX_RELATIONS: usize = 256;

// base classes counted per parallel batch; bounds memory at CHUNK·(d+1)^2
const CHUNK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorWitness {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    /// Two representatives of relation `k` (as discrete logs) ...
    pub reps: (u32, u32),
    /// ... and their differing counts.
    pub counts: (u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTensor {
    pub d: usize,
    pub valencies: Vec<u64>,
    data: Vec<u64>,
    /// Base-class representatives whose counts were compared.
    pub representatives_checked: usize,
    /// First disagreement between two representatives of the same relation.
    pub witness: Option<TensorWitness>,
}

impl IntersectionTensor {
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        let n = self.d + 1;
        self.data[(i * n + j) * n + k]
    }

    pub fn well_defined(&self) -> bool {
        self.witness.is_none()
    }
}

/// Counts `(i, j)` pairs for one point `z`: entry `i*(d+1)+j` is
/// `#{x : x ∈ S_i, z - x ∈ S_j}`. `z = None` stands for `0`.
fn counts_for(scheme: &TranslationScheme, z: Option<u32>) -> Vec<u64> {
    let field = scheme.field();
    let n = scheme.d() + 1;
    let m = field.group_order();
    let mut out = vec![0u64; n * n];
    let kz = z.map_or(0, |z| scheme.relation_of(z));
    // x = 0
    out[kz] += 1;
    for x in 0..m {
        let i = scheme.relation_of(x);
        let j = match z {
            None => scheme.relation_of(field.mul_index(x, field.minus_one())),
            Some(z) => field
                .sub_unchecked(z, x)
                .map_or(0, |y| scheme.relation_of(y)),
        };
        out[i * n + j] += 1;
    }
    out
}

pub fn intersection_numbers(scheme: &TranslationScheme) -> Result<IntersectionTensor, SchemeError> {
    let q = scheme.field().q() as u64;
    if q > TENSOR_MAX_ORDER {
        return Err(SchemeError::FieldTooLarge {
            q,
            limit: TENSOR_MAX_ORDER,
        });
    }
    let d = scheme.d();
    if d > TENSOR_MAX_RELATIONS {
        return Err(SchemeError::TooManyRelations {
            d,
            limit: TENSOR_MAX_RELATIONS,
        });
    }
    let n = d + 1;
    let base_n = scheme.base_n();

    let mut data = vec![0u64; n * n * n];
    let zero = counts_for(scheme, None);
    for ij in 0..n * n {
        data[ij * n] = zero[ij];
    }
    let mut first_rep: Vec<Option<u32>> = vec![None; n];
    let mut witness = None;
    let classes: Vec<u32> = (0..base_n).collect();
    for batch in classes.chunks(CHUNK) {
        let per_class: Vec<Vec<u64>> = batch
            .par_iter()
            .map(|&c| counts_for(scheme, Some(c)))
            .collect();
        for (&c, counts) in batch.iter().zip(&per_class) {
            let k = scheme.relation_of(c);
            match first_rep[k] {
                None => {
                    first_rep[k] = Some(c);
                    for ij in 0..n * n {
                        data[ij * n + k] = counts[ij];
                    }
                }
                Some(r) => {
                    if witness.is_none() {
                        if let Some(ij) = (0..n * n).find(|&ij| data[ij * n + k] != counts[ij]) {
                            witness = Some(TensorWitness {
                                k,
                                i: ij / n,
                                j: ij % n,
                                reps: (r, c),
                                counts: (data[ij * n + k], counts[ij]),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(IntersectionTensor {
        d,
        valencies: scheme.valencies(),
        data,
        representatives_checked: base_n as usize,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeVerdict {
    pub holds: bool,
    pub reason: Option<String>,
}

/// Counts are constant on every relation, `p_ij^k = p_ji^k`, and
/// `p_ij^0 = k_i δ_ij`.
pub fn is_association_scheme(t: &IntersectionTensor) -> SchemeVerdict {
    let fail = |reason: String| SchemeVerdict {
        holds: false,
        reason: Some(reason),
    };
    if let Some(w) = &t.witness {
        return fail(format!(
            "p[{}][{}][{}] is {} at γ^{} but {} at γ^{}",
            w.i, w.j, w.k, w.counts.0, w.reps.0, w.counts.1, w.reps.1
        ));
    }
    let n = t.d + 1;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if t.get(i, j, k) != t.get(j, i, k) {
                    return fail(format!("p[{i}][{j}][{k}] != p[{j}][{i}][{k}]"));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { t.valencies[i] } else { 0 };
            if t.get(i, j, 0) != expect {
                return fail(format!("p[{i}][{j}][0] = {} != {expect}", t.get(i, j, 0)));
            }
        }
    }
    SchemeVerdict {
        holds: true,
        reason: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudocyclicVerdict {
    pub holds: bool,
    /// Common valency, when all nontrivial valencies agree.
    pub k: Option<u64>,
    /// `Σ_{i≥1} p[i][i][j]` for `j = 1..=d`.
    pub diagonal_sums: Vec<u64>,
}

/// Equal valencies `k` and `Σ_{i≥1} p_ii^j = k - 1` for every `j ≥ 1`.
pub fn is_pseudocyclic(t: &IntersectionTensor) -> PseudocyclicVerdict {
    let n = t.d + 1;
    let diagonal_sums: Vec<u64> = (1..n)
        .map(|j| (1..n).map(|i| t.get(i, i, j)).sum())
        .collect();
    let k = t.valencies[1..]
        .iter()
        .all(|&v| v == t.valencies[1])
        .then(|| t.valencies[1]);
    let holds = match k {
        Some(k) => diagonal_sums.iter().all(|&s| s + 1 == k),
        None => false,
    };
    PseudocyclicVerdict {
        holds,
        k,
        diagonal_sums,
    }
}

/// Condition (2) of pseudocyclicity without the full tensor:
/// `Σ_{i≥1} p_ii^j = #{x ≠ 0, z : x and z - x in a common part}` for `z` in
/// `D_{j-1}`, counted at every base-class representative. Runs in `O(N q)`
/// time and `O(N)` memory, so it also covers schemes with many relations.
/// Representatives of one relation that disagree make the verdict false.
pub fn pseudocyclic_by_counting(
    scheme: &TranslationScheme,
) -> Result<PseudocyclicVerdict, SchemeError> {
    let field = scheme.field();
    let q = field.q() as u64;
    if q > TENSOR_MAX_ORDER {
        return Err(SchemeError::FieldTooLarge {
            q,
            limit: TENSOR_MAX_ORDER,
        });
    }
    let m = field.group_order();
    let per_class: Vec<u64> = (0..scheme.base_n())
        .into_par_iter()
        .map(|z| {
            (0..m)
                .filter(|&x| {
                    field
                        .sub_unchecked(z, x)
                        .is_some_and(|y| scheme.relation_of(x) == scheme.relation_of(y))
                })
                .count() as u64
        })
        .collect();
    let d = scheme.d();
    let mut sums: Vec<Option<u64>> = vec![None; d];
    let mut consistent = true;
    for (c, &s) in per_class.iter().enumerate() {
        let j = scheme.relation_of(c as u32) - 1;
        match sums[j] {
            None => sums[j] = Some(s),
            Some(prev) => consistent &= prev == s,
        }
    }
    let diagonal_sums: Vec<u64> = sums.into_iter().map(|s| s.unwrap_or(0)).collect();
    let valencies = scheme.valencies();
    let k = valencies[1..]
        .iter()
        .all(|&v| v == valencies[1])
        .then(|| valencies[1]);
    let holds = consistent && k.is_some_and(|k| diagonal_sums.iter().all(|&s| s + 1 == k));
    Ok(PseudocyclicVerdict {
        holds,
        k,
        diagonal_sums,
    })
}
