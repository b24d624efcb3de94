//! The twelve base families, read from a whitespace-separated data file.

use serde::{Deserialize, Serialize};

use super::{FamilyCase, FamilyError, FamilySpec};

pub const REGISTRY_DATA: &str = include_str!("../../data/families.txt");

/// One line of the registry format: `case p p1 p2|- tag base|- ratio|-`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub case: FamilyCase,
    pub p: u64,
    pub p1: u64,
    pub p2: Option<u64>,
    pub tag: String,
    /// Listed exponent of `q` as `base · ratio^{m-1}`.
    pub stated_f: Option<(u64, u64)>,
}

impl FamilyRecord {
    pub fn parse_line(line: &str, lineno: usize) -> Result<Self, FamilyError> {
        let err = |msg: String| FamilyError::Registry { line: lineno, msg };
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() != 7 {
            return Err(err(format!("expected 7 fields, found {}", words.len())));
        }
        let num = |w: &str| -> Result<u64, FamilyError> {
            w.parse().map_err(|_| err(format!("bad number {w:?}")))
        };
        let opt = |w: &str| -> Result<Option<u64>, FamilyError> {
            if w == "-" {
                Ok(None)
            } else {
                num(w).map(Some)
            }
        };
        let case = words[0]
            .parse()
            .map_err(|_| err(format!("bad case {:?}", words[0])))?;
        let stated_f = match (opt(words[5])?, opt(words[6])?) {
            (Some(base), Some(ratio)) => Some((base, ratio)),
            (None, None) => None,
            _ => return Err(err("stated exponent needs both base and ratio".into())),
        };
        Ok(FamilyRecord {
            case,
            p: num(words[1])?,
            p1: num(words[2])?,
            p2: opt(words[3])?,
            tag: words[4].to_string(),
            stated_f,
        })
    }

    pub fn to_line(&self) -> String {
        let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
        format!(
            "{} {} {} {} {} {} {}",
            match self.case {
                FamilyCase::A => "A",
                FamilyCase::B => "B",
            },
            self.p,
            self.p1,
            opt(self.p2),
            self.tag,
            opt(self.stated_f.map(|s| s.0)),
            opt(self.stated_f.map(|s| s.1)),
        )
    }

    pub fn spec(&self, m: u32) -> Result<FamilySpec, FamilyError> {
        match (self.case, self.p2) {
            (FamilyCase::A, Some(p2)) => FamilySpec::case_a(self.p, self.p1, p2, m),
            (FamilyCase::B, None) => FamilySpec::case_b(self.p, self.p1, m),
            _ => Err(FamilyError::BadId(self.to_line())),
        }
    }

    pub fn same_family(&self, other: &FamilyRecord) -> bool {
        (self.case, self.p, self.p1, self.p2) == (other.case, other.p, other.p1, other.p2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub record: FamilyRecord,
    /// Members at `m = 1` and `m = 2`.
    pub base: FamilySpec,
    /// `f = φ(N)/2` as `base · ratio^{m-1}`.
    pub derived_f: (u64, u64),
    /// The listed exponent disagrees with `φ(N)/2`.
    pub stated_f_mismatch: bool,
}

impl RegistryEntry {
    pub fn f_at(&self, m: u32) -> Option<u64> {
        self.derived_f
            .1
            .checked_pow(m - 1)
            .and_then(|r| r.checked_mul(self.derived_f.0))
    }
}

fn parse_registry(text: &str) -> Result<Vec<FamilyRecord>, FamilyError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| FamilyRecord::parse_line(l, i))
        .collect()
}

/// The twelve templates, each validated at `m = 1, 2` and with its listed
/// `q`-exponent compared to `φ(N)/2`.
pub fn family_registry() -> Result<Vec<RegistryEntry>, FamilyError> {
    parse_registry(REGISTRY_DATA)?
        .into_iter()
        .map(|record| {
            let base = record.spec(1)?;
            let second = record.spec(2)?;
            let f1 = base.f()?;
            let f2 = second.f()?;
            debug_assert_eq!(f2 % f1, 0);
            let derived_f = (f1, f2 / f1);
            debug_assert_eq!(derived_f.1, record.p1);
            let stated_f_mismatch = record.stated_f.is_some_and(|s| s != derived_f);
            Ok(RegistryEntry {
                record,
                base,
                derived_f,
                stated_f_mismatch,
            })
        })
        .collect()
}
