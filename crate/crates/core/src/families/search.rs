//! Number-theoretic search for parameters meeting the SRG conditions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::registry::{family_registry, FamilyRecord};
use super::{srg_condition, FamilyCase, FamilySpec};
use crate::numth::{self, GaussCoeffs};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    /// Tagged with the registry tag when the hit is a known family, `new`
    /// otherwise.
    pub record: FamilyRecord,
    pub coeffs: GaussCoeffs,
}

/// `h` with `p^h = x`, if any.
fn log_exact(mut x: u64, p: u64) -> Option<u64> {
    let mut h = 0;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        h += 1;
    }
    (x == 1).then_some(h)
}

/// The member is valid at `m = 1` and `m = 2`; validity at `m = 2` carries
/// over to every larger `m`.
fn valid_tower(spec: &FamilySpec) -> Option<FamilySpec> {
    spec.validate().ok()?;
    spec.with_m(2).ok()?;
    Some(spec.clone())
}

/// Only `|b| = |c| = 1` can pass, which forces `4 p^h = D + 1`; the class
/// number is computed only for radicands of that shape.
fn check(spec: &FamilySpec) -> Option<GaussCoeffs> {
    let d = spec.d();
    if !(d + 1).is_multiple_of(4) {
        return None;
    }
    let h = log_exact((d + 1) / 4, spec.p)?;
    if numth::class_number(d).ok()? != h {
        return None;
    }
    let coeffs = spec.gauss_coeffs().ok()?;
    srg_condition(spec, &coeffs).then_some(coeffs)
}

/// All case-A triples `(p, p1, p2)` and case-B pairs `(p, p1)` within the
/// bounds whose `Cay(F_q, D_0)` is strongly regular.
pub fn search(p_max: u64, p1_max: u64, p2_max: u64) -> Vec<SearchHit> {
    let known = family_registry().unwrap_or_default();
    let ps = numth::primes_up_to(p_max);
    let p1s = numth::primes_up_to(p1_max);
    let p2s = numth::primes_up_to(p2_max);

    let mut candidates = Vec::new();
    for &p in &ps {
        for &p1 in p1s.iter().filter(|&&r| r != 2 && r != p) {
            candidates.push(FamilySpec {
                case: FamilyCase::B,
                p,
                p1,
                p2: None,
                m: 1,
            });
            for &p2 in p2s.iter().filter(|&&r| r != 2 && r != p && r != p1) {
                candidates.push(FamilySpec {
                    case: FamilyCase::A,
                    p,
                    p1,
                    p2: Some(p2),
                    m: 1,
                });
            }
        }
    }

    let mut hits: Vec<SearchHit> = candidates
        .par_iter()
        .filter_map(valid_tower)
        .filter_map(|spec| {
            let coeffs = check(&spec)?;
            let mut record = FamilyRecord {
                case: spec.case,
                p: spec.p,
                p1: spec.p1,
                p2: spec.p2,
                tag: "new".into(),
                stated_f: None,
            };
            if let Some(entry) = known.iter().find(|e| e.record.same_family(&record)) {
                record.tag = entry.record.tag.clone();
            }
            Some(SearchHit { record, coeffs })
        })
        .collect();
    hits.sort_by_key(|h| (h.record.case, h.record.p, h.record.p1, h.record.p2));
    hits
}
