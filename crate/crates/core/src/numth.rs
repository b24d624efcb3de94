//! Elementary number theory: multiplicative orders, Legendre symbols,
//! class numbers of imaginary quadratic fields, the index-2 classification
//! and the Diophantine systems that pin down index-2 Gauss sums.

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumthError {
    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: u64, n: u64 },
    #[error("modulus {0} is even")]
    EvenN(u64),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("no Gauss sum coefficients found: {0}")]
    NoSolution(String),
    #[error("more than one coefficient pair survives the congruence: {0:?}")]
    AmbiguousSolution(Vec<(i64, u64)>),
    #[error("index-2 evaluation is not available for {0:?}")]
    UnsupportedCase(Index2Kind),
    #[error("coefficient search space 4*{p}^{h} is too large")]
    SearchTooLarge { p: u64, h: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
        .collect()
}

/// Prime factorization by trial division, ascending primes.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, (r, _)| acc / r * (r - 1))
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn check_coprime(a: u64, n: u64) -> Result<(), NumthError> {
    if n < 2 {
        return Err(NumthError::ModulusTooSmall(n));
    }
    if a.gcd(&n) != 1 {
        return Err(NumthError::NotCoprime { a, n });
    }
    Ok(())
}

/// Multiplicative order of `a` modulo `n`.
pub fn mult_order(a: u64, n: u64) -> Result<u64, NumthError> {
    check_coprime(a, n)?;
    let mut order = euler_phi(n);
    for (r, _) in prime_factors(order) {
        while order.is_multiple_of(r) && pow_mod(a, order / r, n) == 1 {
            order /= r;
        }
    }
    Ok(order)
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> Option<u64> {
    if !is_prime(p) {
        return None;
    }
    if p == 2 {
        return Some(1);
    }
    let cofactors: Vec<u64> = prime_factors(p - 1)
        .into_iter()
        .map(|(r, _)| (p - 1) / r)
        .collect();
    (2..p).find(|&g| cofactors.iter().all(|&e| pow_mod(g, e, p) != 1))
}

/// Whether `-1` lies in the subgroup generated by `p` modulo `n`.
pub fn is_semiprimitive(p: u64, n: u64) -> Result<bool, NumthError> {
    let ord = mult_order(p, n)?;
    if n == 2 {
        return Ok(true);
    }
    // -1 is the unique element of order 2 in a cyclic group, so it lies in
    // <p> iff the order is even and p^{ord/2} = -1.
    Ok(ord % 2 == 0 && pow_mod(p, ord / 2, n) == n - 1)
}

/// Legendre symbol `(a / l)` for an odd prime `l`, by Euler's criterion.
pub fn legendre(a: i64, l: u64) -> i8 {
    let r = a.rem_euclid(l as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (l - 1) / 2, l) == 1 {
        1
    } else {
        -1
    }
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && prime_factors(n).iter().all(|&(_, e)| e == 1)
}

/// Fundamental discriminant of `Q(sqrt(-d))` for squarefree `d > 0`.
pub fn field_discriminant(d: u64) -> i64 {
    if d % 4 == 3 {
        -(d as i64)
    } else {
        -4 * d as i64
    }
}

/// Class number of `Q(sqrt(-d))`: reduced primitive forms `(a, b, c)` of the
/// field discriminant with `|b| <= a <= c` and `b >= 0` whenever `|b| = a`
/// or `a = c`, enumerated by `a` and then `b`.
pub fn class_number(d: u64) -> Result<u64, NumthError> {
    if !is_squarefree(d) {
        return Err(NumthError::NotSquarefree(d));
    }
    Ok(count_reduced_forms(field_discriminant(d)))
}

pub(crate) fn count_reduced_forms(disc: i64) -> u64 {
    let abs = -disc;
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= abs {
        for b in -a..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// Class number by the alternate enumeration: iterate over `b >= 0`, factor
/// `(b^2 - disc)/4 = a*c` with `b <= a <= c`, and count the form and its
/// opposite `(a, -b, c)` unless they coincide.
pub fn class_number_by_divisors(d: u64) -> Result<u64, NumthError> {
    if !is_squarefree(d) {
        return Err(NumthError::NotSquarefree(d));
    }
    let disc = field_discriminant(d);
    let abs = -disc;
    let mut h = 0;
    let mut b = abs & 1;
    while 3 * b * b <= abs {
        let n = (b * b + abs) / 4;
        let mut a = b.max(1);
        while a * a <= n {
            if n % a == 0 {
                let c = n / a;
                if a.gcd(&b).gcd(&c) == 1 {
                    h += if b == 0 || a == b || a == c { 1 } else { 2 };
                }
            }
            a += 1;
        }
        b += 2;
    }
    Ok(h as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Index2Kind {
    SemiPrimitive,
    Index2Case1,
    Index2Case2,
    Index2Case3,
    Other,
}

/// Where `(p, N)` falls among the semi-primitive and index-2 cases.
///
/// `p1^m` and `p2^n` carry the factorization for the index-2 kinds. In the
/// two-prime cases `p1` is the prime on which `p` has full order; in case 2
/// (both full) the smaller prime is listed first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Index2Classification {
    pub kind: Index2Kind,
    pub p: u64,
    pub modulus: u64,
    pub p1: Option<u64>,
    pub m: u32,
    pub p2: Option<u64>,
    pub n: u32,
    /// `ord_N(p)`
    pub f: u64,
}

pub fn classify_index2(p: u64, modulus: u64) -> Result<Index2Classification, NumthError> {
    if modulus.is_multiple_of(2) {
        return Err(NumthError::EvenN(modulus));
    }
    let f = mult_order(p, modulus)?;
    let mut out = Index2Classification {
        kind: Index2Kind::Other,
        p,
        modulus,
        p1: None,
        m: 0,
        p2: None,
        n: 0,
        f,
    };
    if is_semiprimitive(p, modulus)? {
        out.kind = Index2Kind::SemiPrimitive;
        return Ok(out);
    }
    if euler_phi(modulus) != 2 * f {
        return Ok(out);
    }
    let factors = prime_factors(modulus);
    match *factors.as_slice() {
        [(p1, m)] => {
            if p1 % 4 == 3 {
                out.kind = Index2Kind::Index2Case1;
                out.p1 = Some(p1);
                out.m = m;
            }
        }
        [(r1, e1), (r2, e2)] => {
            let pp1 = r1.pow(e1);
            let pp2 = r2.pow(e2);
            let full1 = mult_order(p, pp1)? == euler_phi(pp1);
            let full2 = mult_order(p, pp2)? == euler_phi(pp2);
            let half1 = !full1 && 2 * mult_order(p, pp1)? == euler_phi(pp1);
            let half2 = !full2 && 2 * mult_order(p, pp2)? == euler_phi(pp2);
            let mixed = (r1 % 4 == 1 && r2 % 4 == 3) || (r1 % 4 == 3 && r2 % 4 == 1);
            if mixed && full1 && full2 {
                out.kind = Index2Kind::Index2Case2;
                out.p1 = Some(r1);
                out.m = e1;
                out.p2 = Some(r2);
                out.n = e2;
            } else if full1 && half2 && r2 % 4 == 3 {
                out.kind = Index2Kind::Index2Case3;
                out.p1 = Some(r1);
                out.m = e1;
                out.p2 = Some(r2);
                out.n = e2;
            } else if full2 && half1 && r1 % 4 == 3 {
                out.kind = Index2Kind::Index2Case3;
                out.p1 = Some(r2);
                out.m = e2;
                out.p2 = Some(r1);
                out.n = e1;
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Coefficients of an index-2 Gauss sum `(b ± c·sqrt(-D))/2 · p^{h0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussCoeffs {
    pub p: u64,
    pub b: i64,
    /// `|c|`; the sign is the complex-conjugation ambiguity.
    pub c_abs: u64,
    pub h: u64,
    pub h0: u64,
    /// Radicand `p1` or `p1·p2`.
    pub d: u64,
    /// `ord_N(p)`
    pub f: u64,
}

impl GaussCoeffs {
    /// `b^2 + D c^2 = 4 p^h`, `p ∤ b`, `p ∤ c`, `h ≡ f (mod 2)`, `h0 = (f-h)/2`.
    pub fn satisfies_norm_equation(&self) -> bool {
        let Some(rhs) = (self.p as u128)
            .checked_pow(self.h as u32)
            .and_then(|v| v.checked_mul(4))
        else {
            return false;
        };
        let b = self.b.unsigned_abs() as u128;
        let lhs = b * b + self.d as u128 * (self.c_abs as u128).pow(2);
        lhs == rhs
            && self.b.rem_euclid(self.p as i64) != 0
            && !self.c_abs.is_multiple_of(self.p)
            && self.h <= self.f
            && (self.f - self.h).is_multiple_of(2)
            && self.h0 == (self.f - self.h) / 2
    }
}

// Upper bound on |c| candidates scanned while solving the norm equation.
const MAX_C_SCAN: u128 = 100_000_000;

/// Solves the index-2 Gauss-sum system for case 1 (`N = p1^m`, radicand `p1`)
/// or case 2 (`N = p1^m p2^n`, radicand `p1·p2`).
pub fn solve_gauss_coeffs(p: u64, cls: &Index2Classification) -> Result<GaussCoeffs, NumthError> {
    let (d, kind) = match cls.kind {
        Index2Kind::Index2Case1 => {
            let p1 = cls.p1.expect("case 1 carries p1");
            if p1 <= 3 {
                return Err(NumthError::UnsupportedCase(cls.kind));
            }
            (p1, cls.kind)
        }
        Index2Kind::Index2Case2 => (
            cls.p1.expect("case 2 carries p1") * cls.p2.expect("case 2 carries p2"),
            cls.kind,
        ),
        other => return Err(NumthError::UnsupportedCase(other)),
    };
    let f = cls.f;
    let h = class_number(d)?;
    if h > f || !(f - h).is_multiple_of(2) {
        return Err(NumthError::NoSolution(format!(
            "class number {h} and degree {f} have different parity"
        )));
    }
    let h0 = (f - h) / 2;
    if kind == Index2Kind::Index2Case2 && h % 2 == 1 {
        return Err(NumthError::NoSolution(format!(
            "b ≡ 2p^(h/2) needs an even class number, got h = {h} for D = {d}"
        )));
    }
    let target = (p as u128)
        .checked_pow(h as u32)
        .and_then(|v| v.checked_mul(4))
        .filter(|&t| t / (d as u128) <= MAX_C_SCAN * MAX_C_SCAN)
        .ok_or(NumthError::SearchTooLarge { p, h })?;

    let ell = match kind {
        Index2Kind::Index2Case1 => d,
        _ => {
            let (p1, p2) = (cls.p1.unwrap(), cls.p2.unwrap());
            if p1 % 4 == 3 {
                p1
            } else {
                p2
            }
        }
    };
    // residue the congruence forces on b
    let wanted = match kind {
        Index2Kind::Index2Case1 => {
            // b p^{h0} ≡ -2 (mod p1)
            let inv = pow_mod(pow_mod(p, h0, ell), ell - 2, ell);
            (ell - 2) as u128 * inv as u128 % ell as u128
        }
        _ => 2 * pow_mod(p, h / 2, ell) as u128 % ell as u128,
    } as i128;

    let mut survivors = Vec::new();
    let mut c: u128 = 1;
    while (d as u128) * c * c <= target {
        let rest = target - d as u128 * c * c;
        let b_abs = rest.sqrt();
        if b_abs * b_abs == rest && !b_abs.is_multiple_of(p as u128) && !c.is_multiple_of(p as u128)
        {
            for b in [b_abs as i128, -(b_abs as i128)] {
                if b.rem_euclid(ell as i128) == wanted {
                    survivors.push((b as i64, c as u64));
                }
            }
        }
        c += 1;
    }
    match survivors.as_slice() {
        [] => Err(NumthError::NoSolution(format!(
            "b^2 + {d} c^2 = 4*{p}^{h} has no solution meeting the congruence"
        ))),
        &[(b, c_abs)] => {
            let coeffs = GaussCoeffs {
                p,
                b,
                c_abs,
                h,
                h0,
                d,
                f,
            };
            debug_assert!(coeffs.satisfies_norm_equation());
            Ok(coeffs)
        }
        _ => Err(NumthError::AmbiguousSolution(survivors)),
    }
}
