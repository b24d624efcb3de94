//! Finite fields GF(p^f) materialized as discrete-log tables.
//!
//! Every nonzero element is addressed by its discrete logarithm `n` with
//! respect to a fixed primitive element γ, so multiplication is index
//! addition mod `q - 1`. Addition goes through the Zech table
//! `1 + γ^n = γ^{Z(n)}`. The absolute trace of every nonzero element is
//! stored alongside, since it is all the additive character needs.

mod cache;
mod poly;

use thiserror::Error;

use crate::numth;

pub use cache::{load_cache, save_cache, CACHE_VERSION};

/// Largest field order that can be materialized.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

/// Zech table entry for the one `n` with `1 + γ^n = 0`.
pub const ZECH_ZERO: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{f} exceeds the limit of {limit} elements")]
    FieldTooLarge { p: u64, f: u64, limit: u64 },
    #[error("discrete-log index {index} out of range for a field of order {q}")]
    IndexOutOfRange { index: u32, q: u32 },
    #[error("modulus {0:?} is not a monic primitive polynomial of the stated degree")]
    NotPrimitive(Vec<u32>),
    #[error("field cache: {0}")]
    Cache(String),
}

/// Characteristic, degree and the monic primitive modulus (constant term first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// Selects the canonical modulus for `(p, f)`.
    ///
    /// For `f = 1` this is `x - g` with `g` the least primitive root mod `p`.
    /// Otherwise it is the primitive polynomial whose coefficient vector, read
    /// as the base-`p` integer `Σ c_i p^i`, is smallest.
    pub fn canonical(p: u64, f: u64) -> Result<Self, FieldError> {
        check_size(p, f)?;
        let p32 = p as u32;
        let q = p.pow(f as u32);
        if f == 1 {
            let g = numth::primitive_root(p).expect("prime modulus has a primitive root");
            return Ok(FieldSpec {
                p: p32,
                f: 1,
                modulus: vec![((p - g) % p) as u32, 1],
            });
        }
        let order = q - 1;
        let cofactors: Vec<u64> = numth::prime_factors(order)
            .into_iter()
            .map(|(r, _)| order / r)
            .collect();
        let lower = p.pow(f as u32);
        let f = f as usize;
        for code in 1..lower {
            if code % p == 0 {
                continue;
            }
            let mut modulus = digits(code, p32, f);
            modulus.push(1);
            if !poly::is_one(&poly::pow_x(order, &modulus, p32)) {
                continue;
            }
            if cofactors
                .iter()
                .all(|&e| !poly::is_one(&poly::pow_x(e, &modulus, p32)))
            {
                return Ok(FieldSpec {
                    p: p32,
                    f: f as u32,
                    modulus,
                });
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    /// Accepts any monic primitive modulus of degree `f` over GF(p).
    pub fn from_modulus(p: u64, f: u64, modulus: Vec<u32>) -> Result<Self, FieldError> {
        check_size(p, f)?;
        let p32 = p as u32;
        let bad = || FieldError::NotPrimitive(modulus.clone());
        if modulus.len() != f as usize + 1
            || modulus[f as usize] != 1
            || modulus.iter().any(|&c| c >= p32)
            || modulus[0] == 0
        {
            return Err(bad());
        }
        let order = p.pow(f as u32) - 1;
        let primitive = if f == 1 {
            let g = (p - modulus[0] as u64) % p;
            numth::mult_order(g, p)
                .map(|o| o == order)
                .unwrap_or(p == 2 && g == 1)
        } else {
            poly::is_one(&poly::pow_x(order, &modulus, p32))
                && numth::prime_factors(order)
                    .iter()
                    .all(|&(r, _)| !poly::is_one(&poly::pow_x(order / r, &modulus, p32)))
        };
        if !primitive {
            return Err(bad());
        }
        Ok(FieldSpec {
            p: p32,
            f: f as u32,
            modulus,
        })
    }

    pub fn order(&self) -> u32 {
        (self.p as u64).pow(self.f) as u32
    }
}

fn check_size(p: u64, f: u64) -> Result<(), FieldError> {
    if f == 0 {
        return Err(FieldError::ZeroDegree);
    }
    if !numth::is_prime(p) {
        return Err(FieldError::CompositeCharacteristic(p));
    }
    let too_large = FieldError::FieldTooLarge {
        p,
        f,
        limit: MAX_FIELD_ORDER,
    };
    let f32 = u32::try_from(f).map_err(|_| too_large.clone())?;
    match p.checked_pow(f32) {
        Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
        _ => Err(too_large),
    }
}

/// `len` base-`p` digits of `code`, least significant first.
fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

/// A fully materialized GF(p^f). Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    spec: FieldSpec,
    q: u32,
    zech: Vec<u32>,
    trace: Vec<u32>,
}

impl FieldTable {
    pub fn build(p: u64, f: u64) -> Result<Self, FieldError> {
        let spec = FieldSpec::canonical(p, f)?;
        Ok(Self::from_spec(spec))
    }

    pub fn from_spec(spec: FieldSpec) -> Self {
        let q = spec.order();
        let p = spec.p;
        let powers = power_codes(&spec);
        let mut log = vec![ZECH_ZERO; q as usize];
        for (n, &c) in powers.iter().enumerate() {
            log[c as usize] = n as u32;
        }
        let zech = powers
            .iter()
            .map(|&c| {
                let plus_one = if c % p == p - 1 { c + 1 - p } else { c + 1 };
                log[plus_one as usize]
            })
            .collect();

        // Tr is GF(p)-linear, so it is determined by its values on the
        // polynomial basis 1, x, ..., x^{f-1}, i.e. on γ^0, ..., γ^{f-1}.
        let basis: Vec<u32> = (0..spec.f as usize)
            .map(|i| trace_by_conjugates(&powers, i as u32, p, spec.f))
            .collect();
        let trace = powers
            .iter()
            .map(|&c| {
                let mut c = c;
                let mut t = 0u64;
                for &b in &basis {
                    t += (c % p) as u64 * b as u64;
                    c /= p;
                }
                (t % p as u64) as u32
            })
            .collect();
        FieldTable {
            spec,
            q,
            zech,
            trace,
        }
    }

    pub(crate) fn from_parts(spec: FieldSpec, zech: Vec<u32>, trace: Vec<u32>) -> Self {
        let q = spec.order();
        FieldTable {
            spec,
            q,
            zech,
            trace,
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn f(&self) -> u32 {
        self.spec.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn group_order(&self) -> u32 {
        self.q - 1
    }

    /// Discrete log of `-1`: `(q-1)/2` for odd `q`, `0` in characteristic 2.
    pub fn minus_one(&self) -> u32 {
        if self.spec.p == 2 {
            0
        } else {
            (self.q - 1) / 2
        }
    }

    pub fn zech_table(&self) -> &[u32] {
        &self.zech
    }

    pub fn trace_table(&self) -> &[u32] {
        &self.trace
    }

    /// `Tr(γ^n)` as a residue in `0..p`.
    pub fn trace(&self, n: u32) -> Result<u32, FieldError> {
        self.check(n)?;
        Ok(self.trace[n as usize])
    }

    /// Discrete log of `γ^n1 + γ^n2`, or `None` when the sum is zero.
    pub fn zech_add(&self, n1: u32, n2: u32) -> Result<Option<u32>, FieldError> {
        self.check(n1)?;
        self.check(n2)?;
        Ok(self.add_unchecked(n1, n2))
    }

    #[inline]
    pub(crate) fn add_unchecked(&self, n1: u32, n2: u32) -> Option<u32> {
        let m = self.q - 1;
        let diff = if n2 >= n1 { n2 - n1 } else { n2 + m - n1 };
        let z = self.zech[diff as usize];
        if z == ZECH_ZERO {
            None
        } else {
            let s = n1 as u64 + z as u64;
            Some((s % m as u64) as u32)
        }
    }

    /// Discrete log of `γ^n1 - γ^n2`, or `None` when they are equal.
    #[inline]
    pub(crate) fn sub_unchecked(&self, n1: u32, n2: u32) -> Option<u32> {
        let neg = self.mul_index(n2, self.minus_one());
        self.add_unchecked(n1, neg)
    }

    #[inline]
    pub fn mul_index(&self, n1: u32, n2: u32) -> u32 {
        ((n1 as u64 + n2 as u64) % (self.q - 1) as u64) as u32
    }

    /// Base-`p` coefficient codes of `γ^0, γ^1, ..., γ^{q-2}`, regenerated
    /// from the modulus by polynomial arithmetic.
    pub fn power_codes(&self) -> Vec<u32> {
        power_codes(&self.spec)
    }

    /// `Tr(γ^n)` summed over the Frobenius conjugates `γ^{n p^i}` using
    /// coefficient-wise addition, independent of the stored trace table.
    pub fn trace_via_frobenius(&self, n: u32) -> Result<u32, FieldError> {
        self.check(n)?;
        let powers = self.power_codes();
        Ok(trace_by_conjugates(&powers, n, self.spec.p, self.spec.f))
    }

    fn check(&self, n: u32) -> Result<(), FieldError> {
        if n >= self.q - 1 {
            Err(FieldError::IndexOutOfRange {
                index: n,
                q: self.q,
            })
        } else {
            Ok(())
        }
    }
}

fn power_codes(spec: &FieldSpec) -> Vec<u32> {
    let p = spec.p;
    let f = spec.f as usize;
    let m = spec.order() - 1;
    let mut out = Vec::with_capacity(m as usize);
    if f == 1 {
        let g = (p - spec.modulus[0] % p) % p;
        let mut cur = 1u64;
        for _ in 0..m {
            out.push(cur as u32);
            cur = cur * g as u64 % p as u64;
        }
        return out;
    }
    let mut place = vec![1u32; f];
    for i in 1..f {
        place[i] = place[i - 1] * p;
    }
    let mut cur = vec![0u32; f];
    cur[0] = 1;
    let mut code = 1u32;
    for _ in 0..m {
        out.push(code);
        // multiply by x and reduce: x^f = -(m_0 + ... + m_{f-1} x^{f-1})
        let top = cur[f - 1];
        for i in (1..f).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (c, &mk) in cur.iter_mut().zip(&spec.modulus[..f]) {
                *c = ((*c as u64 + (p - top) as u64 * mk as u64) % p as u64) as u32;
            }
        }
        code = cur.iter().zip(&place).map(|(&c, &w)| c * w).sum();
    }
    out
}

fn trace_by_conjugates(powers: &[u32], n: u32, p: u32, f: u32) -> u32 {
    let m = powers.len() as u64;
    let mut acc = vec![0u32; f as usize];
    let mut e = n as u64;
    for _ in 0..f {
        let mut c = powers[e as usize];
        for slot in acc.iter_mut() {
            *slot = (*slot + c % p) % p;
            c /= p;
        }
        e = e * p as u64 % m;
    }
    debug_assert!(acc[1..].iter().all(|&d| d == 0), "trace must lie in GF(p)");
    acc[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf16_modulus_and_trace_kernel() {
        let t = FieldTable::build(2, 4).unwrap();
        assert_eq!(t.q(), 16);
        assert_eq!(t.spec().modulus, vec![1, 1, 0, 0, 1]);
        // kernel of Tr: zero plus 7 nonzero elements
        let zeros = t.trace_table().iter().filter(|&&v| v == 0).count();
        assert_eq!(zeros + 1, 8);
    }

    #[test]
    fn prime_field_uses_least_primitive_root() {
        let t = FieldTable::build(3, 1).unwrap();
        assert_eq!(t.spec().modulus, vec![1, 1]); // x - 2 = x + 1
        assert_eq!(t.power_codes(), vec![1, 2]);
        let t7 = FieldTable::build(7, 1).unwrap();
        assert_eq!(t7.power_codes()[1], 3);
    }

    #[test]
    fn small_traces() {
        let gf4 = FieldTable::build(2, 2).unwrap();
        assert_eq!(gf4.trace(1).unwrap(), 1);
        let gf2 = FieldTable::build(2, 1).unwrap();
        assert_eq!(gf2.trace(0).unwrap(), 1);
    }

    #[test]
    fn gf8_zech() {
        let t = FieldTable::build(2, 3).unwrap();
        assert_eq!(t.spec().modulus, vec![1, 1, 0, 1]);
        assert_eq!(t.zech_add(0, 1).unwrap(), Some(3));
        for n in 0..7 {
            assert_eq!(t.zech_add(n, n).unwrap(), None);
        }
    }

    #[test]
    fn gf9_negation() {
        let t = FieldTable::build(3, 2).unwrap();
        for n in 0..8 {
            assert_eq!(t.zech_add(n, (n + 4) % 8).unwrap(), None);
        }
        assert_eq!(t.zech_table()[4], ZECH_ZERO);
    }

    #[test]
    fn errors() {
        assert_eq!(
            FieldTable::build(4, 2).unwrap_err(),
            FieldError::CompositeCharacteristic(4)
        );
        assert!(matches!(
            FieldTable::build(2, 25).unwrap_err(),
            FieldError::FieldTooLarge { .. }
        ));
        assert!(matches!(
            FieldTable::build(3, 1 << 40).unwrap_err(),
            FieldError::FieldTooLarge { .. }
        ));
        assert_eq!(FieldTable::build(2, 0).unwrap_err(), FieldError::ZeroDegree);
        let t = FieldTable::build(2, 2).unwrap();
        assert!(matches!(
            t.trace(3),
            Err(FieldError::IndexOutOfRange { index: 3, q: 4 })
        ));
        assert!(t.zech_add(0, 3).is_err());
    }
}
