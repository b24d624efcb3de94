//! Index-2 Gauss sums `g(χ) = (b ± c·sqrt(-D))/2 · p^{h0}` and their numeric
//! cross-validation. Both conjugates are always carried; nothing here picks
//! a sign of `c` on its own.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charsum::{self, CharSumError};
use crate::ffield::FieldTable;
use crate::numth::{self, GaussCoeffs, Index2Kind, NumthError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaussError {
    #[error("no symbolic evaluation for {0:?}")]
    UnsupportedCase(Index2Kind),
    #[error(transparent)]
    Numth(#[from] NumthError),
    #[error(transparent)]
    CharSum(#[from] CharSumError),
    #[error("the character must be nontrivial, got N = {0}")]
    TrivialCharacter(u32),
    #[error("field GF({field_p}^{field_f}) does not match p = {p}")]
    FieldMismatch { p: u64, field_p: u32, field_f: u32 },
    #[error("numeric Gauss sum {numeric} matches neither conjugate (deviations {dev_plus:e}, {dev_minus:e})")]
    NoConjugateMatches {
        numeric: Complex64,
        dev_plus: f64,
        dev_minus: f64,
    },
    #[error("numeric Gauss sum matches both conjugates")]
    BothMatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicGauss {
    pub p: u64,
    pub b: i64,
    pub c_abs: u64,
    pub d: u64,
    pub h: u64,
    pub h0: u64,
    /// `q = p^f`
    pub f: u64,
}

impl From<&GaussCoeffs> for SymbolicGauss {
    fn from(c: &GaussCoeffs) -> Self {
        SymbolicGauss {
            p: c.p,
            b: c.b,
            c_abs: c.c_abs,
            d: c.d,
            h: c.h,
            h0: c.h0,
            f: c.f,
        }
    }
}

impl SymbolicGauss {
    /// `|g|^2 = (b^2 + D c^2)/4 · p^{2 h0} = p^{h + 2 h0} = p^f`, checked in
    /// integers as `b^2 + D c^2 = 4 p^h` together with `h + 2 h0 = f`.
    pub fn norm_identity_holds(&self) -> bool {
        let Some(four_ph) = (self.p as u128)
            .checked_pow(self.h as u32)
            .and_then(|v| v.checked_mul(4))
        else {
            return false;
        };
        let b = self.b.unsigned_abs() as u128;
        let c = self.c_abs as u128;
        b * b + self.d as u128 * c * c == four_ph && self.h + 2 * self.h0 == self.f
    }

    /// The conjugate with `c = sign · |c|`.
    pub fn conjugate(&self, sign: i8) -> Complex64 {
        let scale = (self.p as f64).powi(self.h0 as i32) / 2.0;
        Complex64::new(
            self.b as f64 * scale,
            sign as f64 * self.c_abs as f64 * (self.d as f64).sqrt() * scale,
        )
    }

    pub fn conjugates(&self) -> [(i8, Complex64); 2] {
        [(1, self.conjugate(1)), (-1, self.conjugate(-1))]
    }
}

/// Symbolic `g(χ)` for a character of order `N` over `GF(p^f)`, `f = ord_N(p)`.
pub fn eval_index2(p: u64, modulus: u64) -> Result<SymbolicGauss, GaussError> {
    let cls = numth::classify_index2(p, modulus)?;
    match cls.kind {
        Index2Kind::Index2Case1 | Index2Kind::Index2Case2 => {}
        other => return Err(GaussError::UnsupportedCase(other)),
    }
    let coeffs = numth::solve_gauss_coeffs(p, &cls)?;
    Ok(SymbolicGauss::from(&coeffs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub numeric_re: f64,
    pub numeric_im: f64,
    /// Sign of `c` in the matching conjugate.
    pub matched_sign: i8,
    pub deviation: f64,
    pub tolerance: f64,
}

/// Compares `sg` with the numeric Gauss sum of `χ(γ) = e^{2πi/N}` over `field`.
pub fn cross_check(
    sg: &SymbolicGauss,
    field: &FieldTable,
    n: u32,
) -> Result<CrossCheck, GaussError> {
    if n < 2 {
        return Err(GaussError::TrivialCharacter(n));
    }
    if field.p() as u64 != sg.p {
        return Err(GaussError::FieldMismatch {
            p: sg.p,
            field_p: field.p(),
            field_f: field.f(),
        });
    }
    let numeric = charsum::gauss_sum_numeric(field, n, 1)?.value;
    let tolerance = 1e-6 * (field.q() as f64).sqrt();
    let dev_plus = (numeric - sg.conjugate(1)).norm();
    let dev_minus = (numeric - sg.conjugate(-1)).norm();
    let (matched_sign, deviation) = match (dev_plus <= tolerance, dev_minus <= tolerance) {
        (true, false) => (1, dev_plus),
        (false, true) => (-1, dev_minus),
        (true, true) => return Err(GaussError::BothMatch),
        (false, false) => {
            return Err(GaussError::NoConjugateMatches {
                numeric,
                dev_plus,
                dev_minus,
            })
        }
    };
    Ok(CrossCheck {
        numeric_re: numeric.re,
        numeric_im: numeric.im,
        matched_sign,
        deviation,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_evaluations() {
        let g = eval_index2(2, 7).unwrap();
        assert_eq!((g.b, g.c_abs, g.d, g.h0), (-1, 1, 7, 1));
        assert!(g.norm_identity_holds());

        let g = eval_index2(2, 45).unwrap();
        assert_eq!((g.b, g.c_abs, g.d, g.h, g.h0, g.f), (1, 1, 15, 2, 5, 12));
        assert!(g.norm_identity_holds());
        assert!((g.conjugate(1).norm_sqr() - 4096.0).abs() < 1e-6);

        let g = eval_index2(5, 19).unwrap();
        assert_eq!((g.b, g.c_abs, g.h0), (1, 1, 4));
    }

    #[test]
    fn rejects_unsupported() {
        assert_eq!(
            eval_index2(2, 5).unwrap_err(),
            GaussError::UnsupportedCase(Index2Kind::SemiPrimitive)
        );
        assert_eq!(
            eval_index2(2, 31).unwrap_err(),
            GaussError::UnsupportedCase(Index2Kind::Other)
        );
    }

    #[test]
    fn cross_check_gf8_and_gf16() {
        let gf8 = FieldTable::build(2, 3).unwrap();
        let r = cross_check(&eval_index2(2, 7).unwrap(), &gf8, 7).unwrap();
        assert!(r.deviation <= r.tolerance);

        let gf16 = FieldTable::build(2, 4).unwrap();
        let r = cross_check(&eval_index2(2, 15).unwrap(), &gf16, 15).unwrap();
        assert!(r.deviation <= r.tolerance);

        assert_eq!(
            cross_check(&eval_index2(2, 7).unwrap(), &gf8, 1).unwrap_err(),
            GaussError::TrivialCharacter(1)
        );
    }

    #[test]
    fn tampered_value_is_rejected() {
        let gf8 = FieldTable::build(2, 3).unwrap();
        let mut g = eval_index2(2, 7).unwrap();
        g.b = 1;
        assert!(matches!(
            cross_check(&g, &gf8, 7),
            Err(GaussError::NoConjugateMatches { .. })
        ));
    }
}
