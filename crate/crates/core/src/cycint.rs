//! Exact elements of `Q(ζ_p)` with integral numerator over the power basis
//! `1, ζ, ..., ζ^{p-2}` and a positive common denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i128>,
    denom: i128,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt {
            p,
            coeffs: vec![0; basis_len(p)],
            denom: 1,
        }
    }

    pub fn from_int(p: u32, n: i128) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = n;
        out
    }

    pub fn from_ratio(p: u32, r: Ratio<i128>) -> Self {
        let mut out = Self::from_int(p, *r.numer());
        out.denom = *r.denom();
        out.normalize();
        out
    }

    /// `ζ_p^k`
    pub fn zeta_pow(p: u32, k: u64) -> Self {
        let mut full = vec![0i128; p as usize];
        full[(k % p as u64) as usize] = 1;
        Self::from_full(p, full, 1)
    }

    /// `Σ_t counts[t] ζ_p^t` for `t` in `0..p`.
    pub fn from_counts(p: u32, counts: &[i128]) -> Self {
        assert_eq!(counts.len(), p as usize);
        Self::from_full(p, counts.to_vec(), 1)
    }

    /// Reduces a length-`p` coefficient vector using `1 + ζ + ... + ζ^{p-1} = 0`.
    fn from_full(p: u32, mut full: Vec<i128>, denom: i128) -> Self {
        let top = full[p as usize - 1];
        full.truncate(basis_len(p));
        if p == 2 {
            // ζ_2 = -1
            full[0] -= top;
        } else {
            for c in &mut full {
                *c -= top;
            }
        }
        let mut out = CycInt {
            p,
            coeffs: full,
            denom,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        assert!(self.denom != 0, "zero denominator");
        if self.denom < 0 {
            self.denom = -self.denom;
            for c in &mut self.coeffs {
                *c = -*c;
            }
        }
        let g = self.coeffs.iter().fold(self.denom, |g, &c| g.gcd(&c));
        if g > 1 {
            self.denom /= g;
            for c in &mut self.coeffs {
                *c /= g;
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn denom(&self) -> i128 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn to_rational(&self) -> Option<Ratio<i128>> {
        self.is_rational()
            .then(|| Ratio::new(self.coeffs[0], self.denom))
    }

    pub fn to_integer(&self) -> Option<i128> {
        (self.is_rational() && self.denom == 1).then_some(self.coeffs[0])
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^t`.
    pub fn galois(&self, t: u64) -> Self {
        let p = self.p as u64;
        assert!(!t.is_multiple_of(p), "ζ ↦ ζ^t needs t prime to p");
        let mut full = vec![0i128; p as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            full[(i as u64 * t % p) as usize] += c;
        }
        Self::from_full(self.p, full, self.denom)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        if self.p == 2 {
            return self.clone();
        }
        self.galois(self.p as u64 - 1)
    }

    /// `|x|^2 = x · conj(x)`, a real element.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn div_int(&self, n: i128) -> Self {
        let mut out = self.clone();
        out.denom *= n;
        out.normalize();
        out
    }

    pub fn scale(&self, n: i128) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= n;
        }
        out.normalize();
        out
    }

    pub fn to_complex(&self) -> Complex64 {
        let p = self.p as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / p;
                acc += Complex64::from_polar(c as f64, angle);
            }
        }
        acc / self.denom as f64
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "operands live in different cyclotomic fields"
        );
    }
}

fn basis_len(p: u32) -> usize {
    assert!(p >= 2, "characteristic must be at least 2");
    (p as usize - 1).max(1)
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.check_same_ring(rhs);
        let l = self.denom.lcm(&rhs.denom);
        let (ls, lr) = (l / self.denom, l / rhs.denom);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| a * ls + b * lr)
            .collect();
        let mut out = CycInt {
            p: self.p,
            coeffs,
            denom: l,
        };
        out.normalize();
        out
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self + &(-rhs)
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
            denom: self.denom,
        }
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.check_same_ring(rhs);
        let p = self.p as usize;
        let mut full = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        CycInt::from_full(self.p, full, self.denom * rhs.denom)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl std::iter::Sum for CycInt {
    fn sum<I: Iterator<Item = CycInt>>(mut iter: I) -> CycInt {
        let first = iter.next().expect("sum of an empty CycInt iterator");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

impl fmt::Display for CycInt {
    /// Rationals print as `a` or `a/b`; other values as `(c0 + c1*z + ...)/d`
    /// with `z = ζ_p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return if *r.denom() == 1 {
                write!(f, "{}", r.numer())
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())
            };
        }
        let mut terms = String::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (mag, k) {
                (1, 0) => "1".to_string(),
                (1, _) => mono,
                (_, 0) => mag.to_string(),
                _ => format!("{mag}*{mono}"),
            };
            if terms.is_empty() {
                if c < 0 {
                    terms.push('-');
                }
                terms.push_str(&body);
            } else {
                terms.push_str(&format!(" {sign} {body}"));
            }
        }
        if self.denom == 1 {
            write!(f, "{terms}")
        } else {
            write!(f, "({terms})/{}", self.denom)
        }
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[p={}]({self})", self.p)
    }
}
