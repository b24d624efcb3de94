//! End-to-end verification of one family member on its field.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tformula::TFormulaCheck;
use super::{FamilyCase, FamilyError, FamilySpec};
use crate::charsum::eigenmatrix_row_exponent;
use crate::ffield::FieldTable;
use crate::numth::GaussCoeffs;
use crate::scheme::{
    bm_check, intersection_numbers, is_association_scheme, is_pseudocyclic, BmOutcome,
    BmRefutation, PseudocyclicVerdict, SchemeVerdict, TranslationScheme, TENSOR_MAX_ORDER,
};

/// Strong regularity of `Cay(F_q, D_0)` in terms of the Gauss coefficients.
///
/// Case A: `|b| = |c| = 1`, `h` even, `p1 = 2p^{h/2} + ε b` and
/// `p2 = 2p^{h/2} - ε b` with `ε = (-1)^{(p1-1)/2}`. Case B: `|b| = |c| = 1`.
pub fn srg_condition(fam: &FamilySpec, coeffs: &GaussCoeffs) -> bool {
    if coeffs.b.unsigned_abs() != 1 || coeffs.c_abs != 1 {
        return false;
    }
    match (fam.case, fam.p2) {
        (FamilyCase::B, _) => true,
        (FamilyCase::A, Some(p2)) => {
            if !coeffs.h.is_multiple_of(2) {
                return false;
            }
            let Some(twice) = u32::try_from(coeffs.h / 2)
                .ok()
                .and_then(|e| (fam.p as i128).checked_pow(e))
                .map(|x| 2 * x)
            else {
                return false;
            };
            let eps_b = if fam.p1 % 4 == 1 { coeffs.b } else { -coeffs.b } as i128;
            fam.p1 as i128 == twice + eps_b && p2 as i128 == twice - eps_b
        }
        (FamilyCase::A, None) => false,
    }
}

/// `Σ_k D_k^2 = n·0 + λ(F_q - 0)` in the group ring, when it has that shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRingOutcome {
    /// Coefficient of `0`.
    pub n: u64,
    /// Common coefficient of the nonzero elements.
    pub lambda: Option<u64>,
    /// Smallest and largest coefficient over the nonzero elements.
    pub range: (u64, u64),
}

impl GroupRingOutcome {
    pub fn holds(&self) -> bool {
        self.lambda.is_some()
    }
}

/// Counts ordered pairs `(x, y)` from a common part with `x + y = w`. The
/// parts are unions of base classes, so one `w` per base class suffices.
pub fn group_ring_identity(scheme: &TranslationScheme) -> Result<GroupRingOutcome, FamilyError> {
    let field = scheme.field();
    let q = field.q() as u64;
    if q > TENSOR_MAX_ORDER {
        return Err(crate::scheme::SchemeError::FieldTooLarge {
            q,
            limit: TENSOR_MAX_ORDER,
        }
        .into());
    }
    let m = field.group_order();
    let minus_one = field.minus_one();
    // x + y = 0 forces y = -x, which lies in the part of x
    let n = (0..m)
        .filter(|&x| scheme.relation_of(x) == scheme.relation_of(field.mul_index(x, minus_one)))
        .count() as u64;
    let coeffs: Vec<u64> = (0..scheme.base_n())
        .into_par_iter()
        .map(|w| {
            (0..m)
                .filter(|&x| {
                    field
                        .sub_unchecked(w, x)
                        .is_some_and(|y| scheme.relation_of(x) == scheme.relation_of(y))
                })
                .count() as u64
        })
        .collect();
    let lo = coeffs.iter().copied().min().unwrap_or(0);
    let hi = coeffs.iter().copied().max().unwrap_or(0);
    Ok(GroupRingOutcome {
        n,
        lambda: (lo == hi).then_some(lo),
        range: (lo, hi),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmSummary {
    pub fusion: bool,
    pub refutation: Option<BmRefutation>,
    /// Row blocks found, as sorted exponent sets, equal the predicted `Δ`.
    pub delta_matches: bool,
    /// Fused eigenmatrix equals the directly computed character table.
    pub fused_matches_char_table: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionReport {
    pub family: FamilySpec,
    pub q: u64,
    pub n: u64,
    pub d: u64,
    pub valencies: Vec<u64>,
    pub coeffs: GaussCoeffs,
    pub bm: BmSummary,
    pub association_scheme: SchemeVerdict,
    pub pseudocyclic: PseudocyclicVerdict,
    pub t_formula: TFormulaCheck,
    pub group_ring: GroupRingOutcome,
}

impl FusionReport {
    /// `(q - 1)/d - 1`
    pub fn expected_lambda(&self) -> u64 {
        (self.q - 1) / self.d - 1
    }

    pub fn holds(&self) -> bool {
        self.bm.fusion
            && self.bm.delta_matches
            && self.bm.fused_matches_char_table
            && self.association_scheme.holds
            && self.pseudocyclic.holds
            && self.t_formula.holds()
            && self.group_ring.n == self.q - 1
            && self.group_ring.lambda == Some(self.expected_lambda())
    }
}

fn sorted_blocks(mut blocks: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// Builds the fused scheme and runs every check: Bannai–Muzychuk with the
/// predicted `Λ` and `Δ`, intersection numbers, pseudocyclicity, the closed
/// form of the character table (both conjugates) and the group-ring identity.
pub fn verify_fusion_theorem(
    fam: &FamilySpec,
    field: Arc<FieldTable>,
) -> Result<FusionReport, FamilyError> {
    let scheme = fam.build_partition(field)?;
    let n = scheme.base_n();
    let coeffs = fam.gauss_coeffs()?;

    let base = scheme.base_eigenmatrix()?;
    let table = scheme.char_table()?;
    let outcome = bm_check(&base, &fam.lambda()?)?;
    let bm = match &outcome {
        BmOutcome::Fusion(fused) => {
            let found: Vec<Vec<u32>> = fused.rows[1..]
                .iter()
                .map(|g| g.iter().map(|&r| eigenmatrix_row_exponent(n, r)).collect())
                .collect();
            let delta_matches = sorted_blocks(found) == sorted_blocks(fam.delta()?);
            let fused_matches_char_table =
                fused
                    .rows
                    .iter()
                    .zip(&fused.matrix.rows)
                    .skip(1)
                    .all(|(group, row)| {
                        group.iter().all(|&r| {
                            let a = eigenmatrix_row_exponent(n, r) as usize;
                            row[1..] == table.sums[a][..]
                        })
                    });
            BmSummary {
                fusion: true,
                refutation: None,
                delta_matches,
                fused_matches_char_table,
            }
        }
        BmOutcome::Refuted(r) => BmSummary {
            fusion: false,
            refutation: Some(r.clone()),
            delta_matches: false,
            fused_matches_char_table: false,
        },
    };

    let tensor = intersection_numbers(&scheme)?;
    let association_scheme = is_association_scheme(&tensor);
    let pseudocyclic = is_pseudocyclic(&tensor);

    let exact: Vec<Vec<_>> = table
        .sums
        .iter()
        .map(|row| row.iter().map(|x| x.to_rational()).collect())
        .collect();
    let t_formula = TFormulaCheck::run(fam, &coeffs, &exact)?;
    let group_ring = group_ring_identity(&scheme)?;

    Ok(FusionReport {
        family: fam.clone(),
        q: scheme.field().q() as u64,
        n: n as u64,
        d: fam.d(),
        valencies: scheme.valencies(),
        coeffs,
        bm,
        association_scheme,
        pseudocyclic,
        t_formula,
        group_ring,
    })
}
