//! Independent oracles: field arithmetic on coefficient vectors, brute-force
//! character sums and analytic class numbers. Nothing here calls back into
//! the tables under test.

#![allow(dead_code)]

use cycfusion::cycint::CycInt;

/// `GF(p^f)` as coefficient vectors modulo a monic polynomial, with powers of
/// `x` listed by repeated multiplication.
pub struct PolyField {
    pub p: u32,
    pub f: usize,
    pub q: u32,
    /// `modulus[i]` is the coefficient of `x^i`; `modulus[f] = 1`.
    pub modulus: Vec<u32>,
    /// `powers[n]` is `x^n` as a coefficient vector of length `f`.
    pub powers: Vec<Vec<u32>>,
    /// Discrete log by base-`p` code, `u32::MAX` for zero.
    pub log: Vec<u32>,
}

pub fn code(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub fn decode(mut c: u32, p: u32, f: usize) -> Vec<u32> {
    (0..f)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn times_x(v: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let f = v.len();
    let top = v[f - 1];
    let mut out = vec![0; f];
    for i in (1..f).rev() {
        out[i] = v[i - 1];
    }
    for (i, o) in out.iter_mut().enumerate() {
        *o = (*o + (p - top) * modulus[i] % p) % p;
    }
    out
}

/// Multiplicative order of `x` modulo `modulus`, or `None` if `x` does not
/// return to 1 within `p^f - 1` steps.
pub fn order_of_x(modulus: &[u32], p: u32) -> Option<u32> {
    let f = modulus.len() - 1;
    let q = p.pow(f as u32);
    let one: Vec<u32> = (0..f).map(|i| (i == 0) as u32).collect();
    let mut v = one.clone();
    for n in 1..q {
        v = times_x(&v, modulus, p);
        if v == one {
            return Some(n);
        }
        if v.iter().all(|&c| c == 0) {
            return None;
        }
    }
    None
}

/// First monic polynomial of degree `f`, in increasing base-`p` code, whose
/// root `x` generates the multiplicative group.
pub fn smallest_primitive(p: u32, f: usize) -> Vec<u32> {
    let q = p.pow(f as u32);
    for c in 0..q {
        let mut m = decode(c, p, f);
        if m[0] == 0 {
            continue;
        }
        m.push(1);
        if order_of_x(&m, p) == Some(q - 1) {
            return m;
        }
    }
    panic!("no primitive polynomial of degree {f} over GF({p})");
}

impl PolyField {
    pub fn new(p: u32, modulus: Vec<u32>) -> Self {
        let f = modulus.len() - 1;
        let q = p.pow(f as u32);
        let mut powers = Vec::with_capacity(q as usize - 1);
        let mut v: Vec<u32> = (0..f).map(|i| (i == 0) as u32).collect();
        for _ in 0..q - 1 {
            powers.push(v.clone());
            v = times_x(&v, &modulus, p);
        }
        let mut log = vec![u32::MAX; q as usize];
        for (n, v) in powers.iter().enumerate() {
            let c = code(v, p) as usize;
            assert_eq!(log[c], u32::MAX, "x is not primitive");
            log[c] = n as u32;
        }
        PolyField {
            p,
            f,
            q,
            modulus,
            powers,
            log,
        }
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn scale(&self, a: &[u32], s: u32) -> Vec<u32> {
        a.iter().map(|x| x * s % self.p).collect()
    }

    /// Schoolbook product reduced by the modulus.
    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let (p, f) = (self.p as u64, self.f);
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (f..prod.len()).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..f {
                prod[k - f + i] = (prod[k - f + i] + (p - t) * self.modulus[i] as u64) % p;
            }
        }
        prod[..f].iter().map(|&c| c as u32).collect()
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc: Vec<u32> = (0..self.f).map(|i| (i == 0) as u32).collect();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `Σ a^{p^i}` by repeated `p`-th powers; lands in the prime field.
    pub fn trace(&self, a: &[u32]) -> u32 {
        let mut t = vec![0; self.f];
        let mut c = a.to_vec();
        for _ in 0..self.f {
            t = self.add(&t, &c);
            c = self.pow(&c, self.p as u64);
        }
        assert!(t[1..].iter().all(|&x| x == 0), "trace left the prime field");
        t[0]
    }

    pub fn dlog(&self, a: &[u32]) -> Option<u32> {
        let l = self.log[code(a, self.p) as usize];
        (l != u32::MAX).then_some(l)
    }

    /// Trace of every power `x^n`, each one through `trace`.
    pub fn trace_table(&self) -> Vec<u32> {
        self.powers.iter().map(|v| self.trace(v)).collect()
    }
}

/// `Σ_{x ∈ S} ζ_p^{Tr(γ^a x)}` for a set of discrete logs, from a trace list.
pub fn char_sum(traces: &[u32], p: u32, set: &[u32], a: u32) -> CycInt {
    let m = traces.len() as u64;
    let mut counts = vec![0i128; p as usize];
    for &x in set {
        counts[traces[((x as u64 + a as u64) % m) as usize] as usize] += 1;
    }
    CycInt::from_counts(p, &counts)
}

/// Kronecker symbol `(D/n)` for a fundamental discriminant `D < 0`.
pub fn kronecker(disc: i64, n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    while n.is_multiple_of(2) {
        n /= 2;
        result *= match disc.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    result * jacobi(disc.rem_euclid(n.max(1) as i64) as u64, n)
}

fn jacobi(mut a: u64, mut n: u64) -> i64 {
    if n == 1 {
        return 1;
    }
    let mut t = 1;
    a %= n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Dirichlet's class number formula `h = -(w / 2|D|) Σ_{n<|D|} (D/n) n`.
pub fn class_number_analytic(d: u64) -> u64 {
    let disc: i64 = if d % 4 == 3 {
        -(d as i64)
    } else {
        -4 * d as i64
    };
    let abs = -disc;
    let w = match abs {
        3 => 6,
        4 => 4,
        _ => 2,
    };
    let s: i64 = (1..abs).map(|n| kronecker(disc, n as u64) * n).sum();
    let h = -w * s;
    assert_eq!(h % (2 * abs), 0);
    (h / (2 * abs)) as u64
}
