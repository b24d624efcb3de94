//! Strong regularity of Cayley graphs `Cay(F_q, D)` through restricted
//! eigenvalues `ψ(D)`, ψ ranging over nontrivial additive characters.

use serde::{Deserialize, Serialize};

use super::SchemeError;
use crate::charsum::{self, SubsetCharTable};
use crate::ffield::FieldTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    /// `k(k - λ - 1) = (v - k - 1) μ`
    pub fn feasible(&self) -> bool {
        self.k as i128 * (self.k as i128 - self.lambda as i128 - 1)
            == (self.v as i128 - self.k as i128 - 1) * self.mu as i128
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degeneracy {
    Complete,
    Empty,
    /// `μ = 0`
    DisjointCliques,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgOutcome {
    pub strongly_regular: bool,
    pub params: Option<SrgParams>,
    /// Integral restricted eigenvalues `r > s` when strongly regular.
    pub eigenvalues: Option<(i64, i64)>,
    /// Distinct restricted eigenvalues, rendered exactly.
    pub distinct_values: Vec<String>,
    pub degeneracy: Option<Degeneracy>,
}

/// Decides whether `Cay(F_q, D)` is strongly regular, `D` being the union of
/// the listed base-`N` classes.
pub fn srg_check(
    field: &FieldTable,
    base_n: u32,
    classes: &[u32],
) -> Result<SrgOutcome, SchemeError> {
    let cls = charsum::cyclotomic_classes(field, base_n)?;
    let shift = cls.negation_shift(field);
    let mut member = vec![false; base_n as usize];
    for &c in classes {
        if c >= base_n {
            return Err(SchemeError::BadPartition(format!(
                "class {c} is not below N = {base_n}"
            )));
        }
        member[c as usize] = true;
    }
    if classes
        .iter()
        .any(|&c| !member[((c + shift) % base_n) as usize])
    {
        return Err(SchemeError::NotSymmetric { part: 0 });
    }
    let mut set: Vec<u32> = classes.to_vec();
    set.sort_unstable();
    set.dedup();
    let table = SubsetCharTable::from_periods(field, base_n, &[set])?;
    let mut distinct = Vec::new();
    for row in &table.sums {
        if !distinct.contains(&row[0]) {
            distinct.push(row[0].clone());
        }
    }
    let v = field.q() as u64;
    let k = table.sizes[0];
    let rendered = distinct.iter().map(|x| x.to_string()).collect();
    let refuted = |values| SrgOutcome {
        strongly_regular: false,
        params: None,
        eigenvalues: None,
        distinct_values: values,
        degeneracy: None,
    };
    let ints: Option<Vec<i64>> = distinct
        .iter()
        .map(|x| x.to_integer().map(|n| n as i64))
        .collect();
    let Some(mut ints) = ints else {
        return Ok(refuted(rendered));
    };
    ints.sort_unstable_by(|a, b| b.cmp(a));

    let degenerate = |deg, params| SrgOutcome {
        strongly_regular: true,
        params,
        eigenvalues: None,
        distinct_values: ints.iter().map(|x| x.to_string()).collect(),
        degeneracy: Some(deg),
    };
    if k == 0 {
        return Ok(degenerate(Degeneracy::Empty, None));
    }
    if k == v - 1 {
        return Ok(degenerate(
            Degeneracy::Complete,
            Some(SrgParams {
                v,
                k,
                lambda: k - 1,
                mu: 0,
            }),
        ));
    }
    match ints.as_slice() {
        &[r, s] => {
            let (k_i, rs) = (k as i64, r * s);
            let lambda = k_i + r + s + rs;
            let mu = k_i + rs;
            if lambda < 0 || mu < 0 {
                return Ok(refuted(rendered));
            }
            let params = SrgParams {
                v,
                k,
                lambda: lambda as u64,
                mu: mu as u64,
            };
            Ok(SrgOutcome {
                strongly_regular: true,
                params: Some(params),
                eigenvalues: Some((r, s)),
                distinct_values: vec![r.to_string(), s.to_string()],
                degeneracy: (mu == 0).then_some(Degeneracy::DisjointCliques),
            })
        }
        _ => Ok(refuted(rendered)),
    }
}
