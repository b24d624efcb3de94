//! The block design `{R_i(x) : x ∈ F_q, i ≥ 1}` of a translation scheme.

use serde::{Deserialize, Serialize};

use super::{SchemeError, TranslationScheme};

/// Largest field for which the design is enumerated.
pub const DESIGN_MAX_ORDER: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignVerdict {
    /// `(X, B)` is a 2-`(q, k, k-1)` design.
    pub holds: bool,
    pub block_size: Option<u64>,
    /// Smallest and largest number of blocks through a pair of points.
    pub pair_counts: (u64, u64),
}

/// Counts, for every `w ≠ 0`, the blocks `x + D_i` through `{0, w}`; the block
/// family is closed under translation, so this covers every pair `{u, u + w}`.
pub fn two_design_check(scheme: &TranslationScheme) -> Result<DesignVerdict, SchemeError> {
    let field = scheme.field();
    let q = field.q() as u64;
    if q > DESIGN_MAX_ORDER {
        return Err(SchemeError::FieldTooLarge {
            q,
            limit: DESIGN_MAX_ORDER,
        });
    }
    let valencies = scheme.valencies();
    let block_size = valencies[1..]
        .iter()
        .all(|&v| v == valencies[1])
        .then(|| valencies[1]);

    let m = field.group_order();
    let mut through = vec![0u64; m as usize];
    for k in 0..scheme.d() {
        let part = scheme.part_elements(k);
        // blocks x + D_k containing 0 are those with -x ∈ D_k
        for &neg_x in &part {
            let x = field.mul_index(neg_x, field.minus_one());
            for &y in &part {
                if let Some(w) = field.add_unchecked(x, y) {
                    through[w as usize] += 1;
                }
            }
        }
    }
    let lo = through.iter().copied().min().unwrap_or(0);
    let hi = through.iter().copied().max().unwrap_or(0);
    let holds = match block_size {
        Some(k) => lo == hi && lo + 1 == k,
        None => false,
    };
    Ok(DesignVerdict {
        holds,
        block_size,
        pair_counts: (lo, hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldTable;
    use std::sync::Arc;

    #[test]
    fn gf16_base5_is_a_2_16_3_2_design() {
        let field = Arc::new(FieldTable::build(2, 4).unwrap());
        let s = TranslationScheme::cyclotomic(field, 5).unwrap();
        let v = two_design_check(&s).unwrap();
        assert!(v.holds);
        assert_eq!(v.block_size, Some(3));
        assert_eq!(v.pair_counts, (2, 2));
    }

    #[test]
    fn gf11_base5_is_all_pairs() {
        let field = Arc::new(FieldTable::build(11, 1).unwrap());
        let s = TranslationScheme::cyclotomic(field, 5).unwrap();
        let v = two_design_check(&s).unwrap();
        assert!(v.holds);
        assert_eq!(v.pair_counts, (1, 1));
    }

    #[test]
    fn too_large() {
        let field = Arc::new(FieldTable::build(2, 13).unwrap());
        let s = TranslationScheme::new(field, 8191, vec![(0..8191).collect()]).unwrap();
        assert!(matches!(
            two_design_check(&s),
            Err(SchemeError::FieldTooLarge { .. })
        ));
    }
}
