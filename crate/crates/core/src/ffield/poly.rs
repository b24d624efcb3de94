//! Dense polynomials over GF(p), used only while selecting a modulus and
//! generating the power table. Coefficients are stored constant term first.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

/// `a * b mod modulus`, where `modulus` is monic of degree `f` and both
/// operands have degree `< f`.
pub(crate) fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let f = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p64;
        }
    }
    for top in (f..prod.len()).rev() {
        let t = prod[top];
        if t == 0 {
            continue;
        }
        prod[top] = 0;
        for (k, &mk) in modulus[..f].iter().enumerate() {
            let idx = top - f + k;
            prod[idx] = (prod[idx] + (p64 - t) * mk as u64) % p64;
        }
    }
    prod.truncate(f.max(1));
    let mut out: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// `x^e mod modulus`.
pub(crate) fn pow_x(e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let f = modulus.len() - 1;
    let mut result = vec![1u32];
    let mut base = if f == 1 {
        // x reduces to -m0 in a prime field
        vec![(p - modulus[0] % p) % p]
    } else {
        vec![0, 1]
    };
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &base, modulus, p);
        }
        base = mul_mod(&base, &base, modulus, p);
        e >>= 1;
    }
    result
}

pub(crate) fn is_one(a: &[u32]) -> bool {
    a.len() == 1 && a[0] == 1
}
