//! Character sums over unions of cyclotomic classes.
//!
//! With `ψ_{γ^a}(x) = ζ_p^{Tr(γ^a x)}`, the value on a class satisfies
//! `ψ_{γ^a}(C_i) = η_{i+a}`, so a single pass over the field yields the
//! Gauss periods and every subset sum after that is a sum of periods.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::cycint::CycInt;
use crate::ffield::FieldTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharSumError {
    #[error("{n} is not a divisor of q - 1 = {group_order} greater than 1")]
    BadDivisor { n: u32, group_order: u32 },
    #[error("-1 is not in C_0 for N = {0}; the classes are not symmetric")]
    MinusOneNotInC0(u32),
    #[error("subset element {0} is not a discrete-log index")]
    BadElement(u32),
}

/// The `N`-th cyclotomic classes of a field: the class of `γ^n` is `n mod N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclotomicClasses {
    pub n: u32,
    pub class_size: u32,
    pub minus_one_in_c0: bool,
}

impl CyclotomicClasses {
    #[inline]
    pub fn class_of(&self, dlog: u32) -> u32 {
        dlog % self.n
    }

    /// Discrete logs of the members of `C_i`.
    pub fn members(&self, i: u32) -> impl Iterator<Item = u32> + '_ {
        (0..self.class_size).map(move |k| i + k * self.n)
    }

    /// `C_i = -C_{i + shift}`; zero when every class is symmetric.
    pub fn negation_shift(&self, field: &FieldTable) -> u32 {
        field.minus_one() % self.n
    }
}

pub fn cyclotomic_classes(field: &FieldTable, n: u32) -> Result<CyclotomicClasses, CharSumError> {
    let m = field.group_order();
    if n < 2 || !m.is_multiple_of(n) {
        return Err(CharSumError::BadDivisor { n, group_order: m });
    }
    let class_size = m / n;
    Ok(CyclotomicClasses {
        n,
        class_size,
        minus_one_in_c0: field.p() == 2 || class_size.is_multiple_of(2),
    })
}

/// `Σ_{x ∈ subset} ζ_p^{Tr(γ^a x)}`, streaming over the subset.
pub fn subset_char_sum(field: &FieldTable, subset: &[u32], a: u32) -> Result<CycInt, CharSumError> {
    let p = field.p();
    let m = field.group_order();
    let trace = field.trace_table();
    let mut counts = vec![0i128; p as usize];
    for &x in subset {
        if x >= m {
            return Err(CharSumError::BadElement(x));
        }
        let e = ((x as u64 + a as u64) % m as u64) as usize;
        counts[trace[e] as usize] += 1;
    }
    Ok(CycInt::from_counts(p, &counts))
}

/// Trace-value histograms per class: `hist[i][t] = #{x ∈ C_i : Tr(x) = t}`.
fn class_histograms(field: &FieldTable, classes: &CyclotomicClasses) -> Vec<Vec<i128>> {
    let p = field.p() as usize;
    let n = classes.n as usize;
    let trace = field.trace_table();
    let chunk = (n * 4096).max(1 << 16) / n * n;
    trace
        .par_chunks(chunk)
        .map(|block| {
            let mut hist = vec![0i128; n * p];
            for (off, &t) in block.iter().enumerate() {
                hist[(off % n) * p + t as usize] += 1;
            }
            hist
        })
        .reduce(
            || vec![0i128; n * p],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
        .chunks(p)
        .map(|c| c.to_vec())
        .collect()
}

/// All Gauss periods `η_0, ..., η_{N-1}` in one pass over the field.
pub fn gauss_periods(field: &FieldTable, n: u32) -> Result<Vec<CycInt>, CharSumError> {
    let classes = cyclotomic_classes(field, n)?;
    Ok(class_histograms(field, &classes)
        .iter()
        .map(|h| CycInt::from_counts(field.p(), h))
        .collect())
}

/// `η_i = Σ_{x ∈ C_i} ψ(x)`.
pub fn gauss_period(field: &FieldTable, n: u32, i: u32) -> Result<CycInt, CharSumError> {
    let classes = cyclotomic_classes(field, n)?;
    let members: Vec<u32> = classes.members(i % n).collect();
    subset_char_sum(field, &members, 0)
}

/// `ψ_{γ^a}(D_k)` for every `a ∈ 0..N` and every part `D_k` of a partition of
/// the `N` classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCharTable {
    pub n: u32,
    pub sizes: Vec<u64>,
    /// `sums[a][k]`
    pub sums: Vec<Vec<CycInt>>,
}

impl SubsetCharTable {
    /// Built from the Gauss periods: `ψ_{γ^a}(D_k) = Σ_{i ∈ D_k} η_{i+a}`.
    pub fn from_periods(
        field: &FieldTable,
        n: u32,
        parts: &[Vec<u32>],
    ) -> Result<Self, CharSumError> {
        let periods = gauss_periods(field, n)?;
        Ok(Self::with_periods(
            &periods,
            field.p(),
            field.group_order() / n,
            parts,
        ))
    }

    pub(crate) fn with_periods(
        periods: &[CycInt],
        p: u32,
        class_size: u32,
        parts: &[Vec<u32>],
    ) -> Self {
        let n = periods.len() as u32;
        let sums = (0..n)
            .map(|a| {
                parts
                    .iter()
                    .map(|part| {
                        part.iter().fold(CycInt::zero(p), |acc, &i| {
                            &acc + &periods[((i + a) % n) as usize]
                        })
                    })
                    .collect()
            })
            .collect();
        SubsetCharTable {
            n,
            sizes: parts
                .iter()
                .map(|part| part.len() as u64 * class_size as u64)
                .collect(),
            sums,
        }
    }

    /// Same table by summing the character over every element of every part.
    pub fn by_enumeration(
        field: &FieldTable,
        n: u32,
        parts: &[Vec<u32>],
    ) -> Result<Self, CharSumError> {
        let classes = cyclotomic_classes(field, n)?;
        let members: Vec<Vec<u32>> = parts
            .iter()
            .map(|part| part.iter().flat_map(|&i| classes.members(i)).collect())
            .collect();
        let sums = (0..n)
            .into_par_iter()
            .map(|a| {
                members
                    .iter()
                    .map(|set| subset_char_sum(field, set, a))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SubsetCharTable {
            n,
            sizes: members.iter().map(|m| m.len() as u64).collect(),
            sums,
        })
    }
}

/// Floating-point Gauss sum with an a-posteriori error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericGauss {
    pub value: Complex64,
    pub error_bound: f64,
}

/// `g(χ^k) = Σ_n e^{2πikn/N} ζ_p^{Tr(γ^n)}` for the order-`N` character with
/// `χ(γ) = e^{2πi/N}`.
pub fn gauss_sum_numeric(field: &FieldTable, n: u32, k: u32) -> Result<NumericGauss, CharSumError> {
    let classes = cyclotomic_classes(field, n)?;
    if k.is_multiple_of(n) {
        return Ok(NumericGauss {
            value: Complex64::new(-1.0, 0.0),
            error_bound: 0.0,
        });
    }
    let p = field.p() as usize;
    let hist = class_histograms(field, &classes);
    let tau = 2.0 * std::f64::consts::PI;
    let add_roots: Vec<Complex64> = (0..p)
        .map(|t| Complex64::from_polar(1.0, tau * t as f64 / p as f64))
        .collect();
    let mut value = Complex64::new(0.0, 0.0);
    for (j, h) in hist.iter().enumerate() {
        let inner: Complex64 = h.iter().zip(&add_roots).map(|(&c, &r)| r * c as f64).sum();
        let e = (k as u64 * j as u64 % n as u64) as f64;
        value += Complex64::from_polar(1.0, tau * e / n as f64) * inner;
    }
    // each root carries O(eps) error; at most q terms of modulus 1 are summed
    let q = field.q() as f64;
    let terms = (n as usize * p) as f64;
    let error_bound = 8.0 * f64::EPSILON * (q + terms) * (1.0 + terms.log2());
    Ok(NumericGauss { value, error_bound })
}

/// A square matrix of cyclotomic integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycMatrix {
    pub rows: Vec<Vec<CycInt>>,
}

impl CycMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &CycInt {
        &self.rows[i][j]
    }

    pub fn is_rational(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_rational())
    }

    pub fn to_csv(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Exponent `a` of the character `ψ_{γ^a}` sitting in row `r ≥ 1` of the
/// cyclotomic eigenmatrix layout below.
pub fn eigenmatrix_row_exponent(n: u32, row: usize) -> u32 {
    debug_assert!(row >= 1 && row <= n as usize);
    (n - row as u32) % n
}

/// First eigenmatrix of the class-`N` cyclotomic scheme.
///
/// Row 0 is `(1, (q-1)/N, ..., (q-1)/N)`, column 0 is all ones, and entry
/// `(r, j)` for `r, j ≥ 1` is `η_{(j-1-r) mod N}`; row `r` is the character
/// `ψ_{γ^{-r}}` evaluated on the relation `R_j`, i.e. on `C_{j-1}`.
pub fn eigenmatrix_cyclotomic(field: &FieldTable, n: u32) -> Result<CycMatrix, CharSumError> {
    let classes = cyclotomic_classes(field, n)?;
    if !classes.minus_one_in_c0 {
        return Err(CharSumError::MinusOneNotInC0(n));
    }
    let periods = gauss_periods(field, n)?;
    Ok(eigenmatrix_from_periods(
        &periods,
        field.p(),
        classes.class_size,
    ))
}

pub(crate) fn eigenmatrix_from_periods(periods: &[CycInt], p: u32, class_size: u32) -> CycMatrix {
    let n = periods.len();
    let mut rows = Vec::with_capacity(n + 1);
    let mut top = vec![CycInt::from_int(p, 1)];
    top.extend((0..n).map(|_| CycInt::from_int(p, class_size as i128)));
    rows.push(top);
    for r in 1..=n {
        let mut row = vec![CycInt::from_int(p, 1)];
        row.extend((1..=n).map(|j| periods[(j + 2 * n - 1 - r) % n].clone()));
        rows.push(row);
    }
    CycMatrix { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_structure() {
        let gf16 = FieldTable::build(2, 4).unwrap();
        let c = cyclotomic_classes(&gf16, 5).unwrap();
        assert_eq!((c.class_size, c.minus_one_in_c0), (3, true));
        assert_eq!(cyclotomic_classes(&gf16, 15).unwrap().class_size, 1);
        assert!(cyclotomic_classes(&gf16, 4).is_err());
        assert!(cyclotomic_classes(&gf16, 1).is_err());

        let gf9 = FieldTable::build(3, 2).unwrap();
        assert!(cyclotomic_classes(&gf9, 2).unwrap().minus_one_in_c0);
        assert!(!cyclotomic_classes(&gf9, 8).unwrap().minus_one_in_c0);
        assert_eq!(
            eigenmatrix_cyclotomic(&gf9, 8).unwrap_err(),
            CharSumError::MinusOneNotInC0(8)
        );
    }

    #[test]
    fn full_and_empty_subsets() {
        let gf27 = FieldTable::build(3, 3).unwrap();
        let all: Vec<u32> = (0..26).collect();
        for a in [0, 5, 25] {
            assert_eq!(
                subset_char_sum(&gf27, &all, a).unwrap().to_integer(),
                Some(-1)
            );
        }
        assert!(subset_char_sum(&gf27, &[], 3).unwrap().is_zero());
        assert!(subset_char_sum(&gf27, &[26], 0).is_err());
    }

    #[test]
    fn periods_sum_to_minus_one() {
        for (p, f, n) in [(2, 4, 3), (2, 4, 5), (3, 4, 5), (5, 2, 3), (7, 2, 4)] {
            let field = FieldTable::build(p, f).unwrap();
            let periods = gauss_periods(&field, n).unwrap();
            let total: CycInt = periods.iter().cloned().sum();
            assert_eq!(total.to_integer(), Some(-1), "GF({p}^{f}), N = {n}");
            for (i, eta) in periods.iter().enumerate() {
                assert_eq!(eta, &gauss_period(&field, n, i as u32).unwrap());
            }
        }
    }

    #[test]
    fn trivial_character_gauss_sum() {
        let field = FieldTable::build(2, 4).unwrap();
        let g = gauss_sum_numeric(&field, 5, 0).unwrap();
        assert_eq!(g.value, Complex64::new(-1.0, 0.0));
        for k in 1..5 {
            let g = gauss_sum_numeric(&field, 5, k).unwrap();
            assert!((g.value.norm_sqr() - 16.0).abs() < 1e-6 * 16.0);
        }
    }

    #[test]
    fn eigenmatrix_layout() {
        let field = FieldTable::build(2, 4).unwrap();
        let p = eigenmatrix_cyclotomic(&field, 5).unwrap();
        let eta = gauss_periods(&field, 5).unwrap();
        assert_eq!(p.dim(), 6);
        assert_eq!(p.get(1, 1), &eta[4]);
        assert_eq!(p.get(1, 2), &eta[0]);
        assert_eq!(p.get(2, 1), &eta[3]);
        assert_eq!(p.get(5, 1), &eta[0]);
        assert_eq!(p.get(5, 5), &eta[4]);
        for j in 1..6 {
            assert_eq!(p.get(0, j).to_integer(), Some(3));
        }
    }
}
