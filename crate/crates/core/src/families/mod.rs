//! The two index-2 fusion constructions, their closed-form character values,
//! the SRG conditions, the registry of twelve families and parameter search.
//!
//! Case A: `N = p1^m p2`, `d = p1 p2`, `D_k = ∪_i C_{i p2 + k p1^{m-1}}`.
//! Case B: `N = p1^m`, `d = p1`, `D_k = ∪_i C_{i + k p1^{m-1}}`.
//! In both, `i` runs over `0..p1^{m-1}` and `D_k = γ^{k p1^{m-1}} D_0`.

mod registry;
mod search;
mod tformula;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{FieldError, FieldTable};
use crate::numth::{self, GaussCoeffs, Index2Classification, Index2Kind, NumthError};
use crate::scheme::{RelationPartition, SchemeError, TranslationScheme};

pub use registry::{family_registry, FamilyRecord, RegistryEntry, REGISTRY_DATA};
pub use search::{search, SearchHit};
pub use tformula::{predicted_t, predicted_t_raw, TFormulaCheck};
pub use verify::{
    group_ring_identity, srg_condition, verify_fusion_theorem, FusionReport, GroupRingOutcome,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid family {spec}: {reason}")]
    Invalid { spec: String, reason: String },
    #[error("family needs GF({p}^{f}) but the field is GF({field_p}^{field_f})")]
    FieldMismatch {
        p: u64,
        f: u64,
        field_p: u32,
        field_f: u32,
    },
    #[error("{0} overflows 64-bit arithmetic")]
    Overflow(String),
    #[error("cannot parse family id {0:?}; expected A:p,p1,p2 or B:p,p1")]
    BadId(String),
    #[error("registry line {line}: {msg}")]
    Registry { line: usize, msg: String },
    #[error(transparent)]
    Numth(#[from] NumthError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyCase {
    A,
    B,
}

/// One member `(p, p1, p2, m)` of a family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub case: FamilyCase,
    pub p: u64,
    pub p1: u64,
    /// Present exactly in case A.
    pub p2: Option<u64>,
    pub m: u32,
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p2 {
            Some(p2) => write!(f, "A:{},{},{} (m = {})", self.p, self.p1, p2, self.m),
            None => write!(f, "B:{},{} (m = {})", self.p, self.p1, self.m),
        }
    }
}

fn checked_pow(base: u64, e: u32, what: &str) -> Result<u64, FamilyError> {
    base.checked_pow(e)
        .ok_or_else(|| FamilyError::Overflow(format!("{what} = {base}^{e}")))
}

impl FamilySpec {
    pub fn case_a(p: u64, p1: u64, p2: u64, m: u32) -> Result<Self, FamilyError> {
        let spec = FamilySpec {
            case: FamilyCase::A,
            p,
            p1,
            p2: Some(p2),
            m,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn case_b(p: u64, p1: u64, m: u32) -> Result<Self, FamilyError> {
        let spec = FamilySpec {
            case: FamilyCase::B,
            p,
            p1,
            p2: None,
            m,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Parses `A:p,p1,p2` or `B:p,p1`.
    pub fn parse_id(id: &str, m: u32) -> Result<Self, FamilyError> {
        let bad = || FamilyError::BadId(id.to_string());
        let (case, rest) = id.split_once(':').ok_or_else(bad)?;
        let nums: Vec<u64> = rest
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (case.trim(), nums.as_slice()) {
            ("A" | "a", &[p, p1, p2]) => Self::case_a(p, p1, p2, m),
            ("B" | "b", &[p, p1]) => Self::case_b(p, p1, m),
            _ => Err(bad()),
        }
    }

    pub fn id(&self) -> String {
        match self.p2 {
            Some(p2) => format!("A:{},{},{}", self.p, self.p1, p2),
            None => format!("B:{},{}", self.p, self.p1),
        }
    }

    pub fn with_m(&self, m: u32) -> Result<Self, FamilyError> {
        let spec = FamilySpec { m, ..self.clone() };
        spec.validate()?;
        Ok(spec)
    }

    fn invalid(&self, reason: impl Into<String>) -> FamilyError {
        FamilyError::Invalid {
            spec: self.to_string(),
            reason: reason.into(),
        }
    }

    /// `p1^{m-1}`
    pub fn step(&self) -> Result<u64, FamilyError> {
        checked_pow(self.p1, self.m - 1, "p1^(m-1)")
    }

    /// `p1^m`
    pub fn p1_power(&self) -> Result<u64, FamilyError> {
        checked_pow(self.p1, self.m, "p1^m")
    }

    pub fn n(&self) -> Result<u64, FamilyError> {
        let pm = self.p1_power()?;
        match self.p2 {
            Some(p2) => pm
                .checked_mul(p2)
                .ok_or_else(|| FamilyError::Overflow("N".into())),
            None => Ok(pm),
        }
    }

    /// Number of fused classes.
    pub fn d(&self) -> u64 {
        self.p1 * self.p2.unwrap_or(1)
    }

    /// `f = φ(N)/2`
    pub fn f(&self) -> Result<u64, FamilyError> {
        Ok(numth::euler_phi(self.n()?) / 2)
    }

    /// `q = p^f`, when it fits in 64 bits.
    pub fn q(&self) -> Option<u64> {
        let f = u32::try_from(self.f().ok()?).ok()?;
        self.p.checked_pow(f)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        if self.m == 0 {
            return Err(self.invalid("m must be at least 1"));
        }
        let primes = [Some(self.p), Some(self.p1), self.p2];
        if primes.iter().flatten().any(|&r| !numth::is_prime(r)) {
            return Err(self.invalid("p, p1, p2 must be prime"));
        }
        let n = self.n()?;
        if n % self.p == 0 {
            return Err(self.invalid("p divides N"));
        }
        let pm = self.p1_power()?;
        match (self.case, self.p2) {
            (FamilyCase::A, Some(p2)) => {
                let residues = [self.p1 % 4, p2 % 4];
                if residues != [1, 3] && residues != [3, 1] {
                    return Err(self.invalid("{p1, p2} mod 4 must be {1, 3}"));
                }
                if numth::mult_order(self.p, pm)? != numth::euler_phi(pm) {
                    return Err(self.invalid("p is not a primitive root mod p1^m"));
                }
                if numth::mult_order(self.p, p2)? != p2 - 1 {
                    return Err(self.invalid("p is not a primitive root mod p2"));
                }
            }
            (FamilyCase::B, None) => {
                if self.p1 % 4 != 3 || self.p1 <= 3 {
                    return Err(self.invalid("p1 must be ≡ 3 (mod 4) and greater than 3"));
                }
            }
            _ => return Err(self.invalid("p2 is required in case A and absent in case B")),
        }
        if 2 * numth::mult_order(self.p, n)? != numth::euler_phi(n) {
            return Err(self.invalid("ord_N(p) is not φ(N)/2"));
        }
        Ok(())
    }

    pub fn classification(&self) -> Result<Index2Classification, FamilyError> {
        let kind = match self.case {
            FamilyCase::A => Index2Kind::Index2Case2,
            FamilyCase::B => Index2Kind::Index2Case1,
        };
        Ok(Index2Classification {
            kind,
            p: self.p,
            modulus: self.n()?,
            p1: Some(self.p1),
            m: self.m,
            p2: self.p2,
            n: self.p2.map_or(0, |_| 1),
            f: self.f()?,
        })
    }

    /// Coefficients of `g(χ̄)` (case B) or `g(χ̄1 χ̄2)` (case A).
    pub fn gauss_coeffs(&self) -> Result<GaussCoeffs, FamilyError> {
        Ok(numth::solve_gauss_coeffs(self.p, &self.classification()?)?)
    }

    /// Base classes of every part `D_k`, `k = 0..d`.
    pub fn partition(&self) -> Result<Vec<Vec<u32>>, FamilyError> {
        let n = self.n()?;
        let step = self.step()?;
        let stride = self.p2.unwrap_or(1);
        Ok((0..self.d())
            .map(|k| {
                (0..step)
                    .map(|i| ((i * stride + k * step) % n) as u32)
                    .collect()
            })
            .collect())
    }

    /// `Λ_0 = {0}`, `Λ_{j+1}` = the base relations making up `D_j`.
    pub fn lambda(&self) -> Result<RelationPartition, FamilyError> {
        let mut out = vec![vec![0]];
        out.extend(
            self.partition()?
                .into_iter()
                .map(|part| part.into_iter().map(|c| c as usize + 1).collect()),
        );
        Ok(out)
    }

    /// Dual partition: `Δ_{j+1} = {ψ_{γ^a}}` with `a ≡ -s i + p1^{m-1} j`, listed
    /// by exponent `a`, where `s = p2` (case A) or `1` (case B).
    pub fn delta(&self) -> Result<Vec<Vec<u32>>, FamilyError> {
        let n = self.n()?;
        let step = self.step()?;
        let stride = self.p2.unwrap_or(1);
        Ok((0..self.d())
            .map(|j| {
                (0..step)
                    .map(|i| ((j * step + n * stride - (i * stride) % n) % n) as u32)
                    .collect()
            })
            .collect())
    }

    pub fn check_field(&self, field: &FieldTable) -> Result<(), FamilyError> {
        let f = self.f()?;
        if field.p() as u64 != self.p || field.f() as u64 != f {
            return Err(FamilyError::FieldMismatch {
                p: self.p,
                f,
                field_p: field.p(),
                field_f: field.f(),
            });
        }
        Ok(())
    }

    /// Materializes the field of the family member.
    pub fn field(&self, cache_dir: Option<&std::path::Path>) -> Result<FieldTable, FamilyError> {
        Ok(FieldTable::build_cached(self.p, self.f()?, cache_dir)?)
    }

    pub fn build_partition(
        &self,
        field: Arc<FieldTable>,
    ) -> Result<TranslationScheme, FamilyError> {
        self.check_field(&field)?;
        let n = u32::try_from(self.n()?).map_err(|_| FamilyError::Overflow("N".into()))?;
        Ok(TranslationScheme::new(field, n, self.partition()?)?)
    }
}

impl FromStr for FamilyCase {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(FamilyCase::A),
            "B" => Ok(FamilyCase::B),
            other => Err(FamilyError::BadId(other.to_string())),
        }
    }
}

/// `a ↦ (i_a, j_a)` with `a ≡ -s i_a + p1^{m-1} j_a (mod N)`, `s = p2` in
/// case A and `1` in case B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueDecomposition {
    pub n: u64,
    pub step: u64,
    pub d: u64,
    pub pairs: Vec<(u64, u64)>,
}

impl ResidueDecomposition {
    pub fn new(fam: &FamilySpec) -> Result<Self, FamilyError> {
        let n = fam.n()?;
        let step = fam.step()?;
        let stride = fam.p2.unwrap_or(1);
        let pairs = (0..n)
            .map(|a| {
                let i = (0..step)
                    .find(|&i| (a + stride * i).is_multiple_of(step))
                    .expect("gcd(s, p1) = 1 makes i_a exist");
                (i, ((a + stride * i) / step) % fam.d())
            })
            .collect();
        Ok(ResidueDecomposition {
            n,
            step,
            d: fam.d(),
            pairs,
        })
    }

    pub fn of(&self, a: u64) -> (u64, u64) {
        self.pairs[(a % self.n) as usize]
    }

    /// Every `(i, j)` in `0..p1^{m-1} × 0..d` is hit exactly once.
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; (self.step * self.d) as usize];
        self.pairs.len() as u64 == self.step * self.d
            && self.pairs.iter().all(|&(i, j)| {
                i < self.step
                    && j < self.d
                    && !std::mem::replace(&mut seen[(i * self.d + j) as usize], true)
            })
    }
}
