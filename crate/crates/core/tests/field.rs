mod common;

use common::{code, smallest_primitive, PolyField};
use cycfusion::ffield::{FieldError, FieldSpec, FieldTable};
use cycfusion::numth;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SMALL: &[(u32, u32)] = &[
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (2, 8),
    (2, 10),
    (3, 1),
    (3, 2),
    (3, 4),
    (3, 5),
    (5, 2),
    (5, 3),
    (7, 2),
    (7, 3),
    (11, 2),
    (13, 1),
    (31, 2),
    (101, 1),
];

fn oracle(t: &FieldTable) -> PolyField {
    PolyField::new(t.p(), t.spec().modulus.clone())
}

#[test]
fn canonical_modulus_is_smallest_primitive() {
    for &(p, f) in SMALL.iter().filter(|&&(p, f)| (p as u64).pow(f) <= 1 << 10) {
        let spec = FieldSpec::canonical(p as u64, f as u64).unwrap();
        if f == 1 {
            let g = numth::primitive_root(p as u64).unwrap() as u32;
            assert_eq!(spec.modulus, vec![(p - g) % p, 1], "GF({p})");
            assert!((1..g).all(|h| numth::mult_order(h as u64, p as u64).unwrap() < p as u64 - 1));
        } else {
            assert_eq!(
                spec.modulus,
                smallest_primitive(p, f as usize),
                "GF({p}^{f})"
            );
        }
    }
}

#[test]
fn power_codes_match_polynomial_powers() {
    for &(p, f) in SMALL {
        let t = FieldTable::build(p as u64, f as u64).unwrap();
        let o = oracle(&t);
        let codes: Vec<u32> = o.powers.iter().map(|v| code(v, p)).collect();
        assert_eq!(t.power_codes(), codes, "GF({p}^{f})");
    }
}

#[test]
fn zech_addition_exhaustive_on_small_fields() {
    for &(p, f) in SMALL.iter().filter(|&&(p, f)| (p as u64).pow(f) <= 1 << 8) {
        let t = FieldTable::build(p as u64, f as u64).unwrap();
        let o = oracle(&t);
        let m = t.group_order();
        for a in 0..m {
            for b in 0..m {
                let sum = o.add(&o.powers[a as usize], &o.powers[b as usize]);
                assert_eq!(
                    t.zech_add(a, b).unwrap(),
                    o.dlog(&sum),
                    "GF({p}^{f}) {a}+{b}"
                );
            }
        }
    }
}

#[test]
fn zech_addition_exhaustive_gf4096() {
    let t = FieldTable::build(2, 12).unwrap();
    let o = oracle(&t);
    let m = t.group_order();
    for a in 0..m {
        for b in 0..m {
            let sum = o.add(&o.powers[a as usize], &o.powers[b as usize]);
            assert_eq!(t.zech_add(a, b).unwrap(), o.dlog(&sum));
        }
    }
}

#[test]
fn zech_addition_sampled_on_larger_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, f) in [(2u32, 16u32), (3, 9), (5, 6), (2, 21)] {
        let t = FieldTable::build(p as u64, f as u64).unwrap();
        let o = oracle(&t);
        let m = t.group_order();
        for _ in 0..20_000 {
            let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
            let sum = o.add(&o.powers[a as usize], &o.powers[b as usize]);
            assert_eq!(t.zech_add(a, b).unwrap(), o.dlog(&sum));
        }
    }
}

#[test]
fn trace_matches_frobenius_sum() {
    for &(p, f) in SMALL.iter().filter(|&&(p, f)| (p as u64).pow(f) <= 1 << 10) {
        let t = FieldTable::build(p as u64, f as u64).unwrap();
        let o = oracle(&t);
        let traces = o.trace_table();
        for n in 0..t.group_order() {
            assert_eq!(t.trace(n).unwrap(), traces[n as usize], "GF({p}^{f}) n={n}");
            assert_eq!(t.trace_via_frobenius(n).unwrap(), traces[n as usize]);
        }
    }
}

#[test]
fn trace_is_linear() {
    for &(p, f) in SMALL.iter().filter(|&&(p, f)| (p as u64).pow(f) <= 1 << 10) {
        let t = FieldTable::build(p as u64, f as u64).unwrap();
        let o = oracle(&t);
        let tr = |v: &[u32]| o.dlog(v).map_or(0, |n| t.trace(n).unwrap());
        let m = t.group_order() as usize;
        let step = (m / 40).max(1);
        for a in (0..m).step_by(step) {
            for b in (0..m).step_by(step) {
                for s in 0..p.min(4) {
                    let (x, y) = (&o.powers[a], &o.powers[b]);
                    let lhs = tr(&o.add(&o.scale(x, s), y));
                    assert_eq!(lhs, (s * tr(x) + tr(y)) % p);
                }
            }
        }
        // Tr(x^p) = Tr(x)
        for n in 0..m as u32 {
            let np = ((n as u64 * p as u64) % m as u64) as u32;
            assert_eq!(t.trace(np).unwrap(), t.trace(n).unwrap());
        }
    }
}

#[test]
fn trace_is_balanced() {
    for &(p, f) in SMALL {
        let t = FieldTable::build(p as u64, f as u64).unwrap();
        let mut counts = vec![0u32; p as usize];
        for n in 0..t.group_order() {
            counts[t.trace(n).unwrap() as usize] += 1;
        }
        let per = t.q() / p;
        assert_eq!(counts[0], per - 1);
        assert!(counts[1..].iter().all(|&c| c == per));
    }
}

#[test]
fn minus_one_and_multiplication() {
    for &(p, f) in SMALL {
        let t = FieldTable::build(p as u64, f as u64).unwrap();
        let o = oracle(&t);
        let neg = o.scale(&o.powers[0], p - 1);
        assert_eq!(o.dlog(&neg), Some(t.minus_one()));
        assert_eq!(t.zech_add(0, t.minus_one()).unwrap(), None);
        let m = t.group_order() as usize;
        let (a, b) = (m / 3, m / 2 + 1);
        let prod = o.mul(&o.powers[a % m], &o.powers[b % m]);
        assert_eq!(
            o.dlog(&prod),
            Some(t.mul_index((a % m) as u32, (b % m) as u32))
        );
    }
}

#[test]
fn explicit_modulus_is_validated() {
    let spec = FieldSpec::from_modulus(2, 4, vec![1, 0, 0, 1, 1]).unwrap();
    let t = FieldTable::from_spec(spec);
    let o = PolyField::new(2, vec![1, 0, 0, 1, 1]);
    assert_eq!(
        t.power_codes(),
        o.powers.iter().map(|v| code(v, 2)).collect::<Vec<_>>()
    );

    // x^4 + x^3 + x^2 + x + 1 has order 5
    assert!(matches!(
        FieldSpec::from_modulus(2, 4, vec![1, 1, 1, 1, 1]),
        Err(FieldError::NotPrimitive(_))
    ));
    assert!(FieldSpec::from_modulus(2, 4, vec![1, 1, 0, 0]).is_err());
    assert!(FieldSpec::from_modulus(3, 1, vec![2, 1]).is_err());
    assert!(FieldSpec::from_modulus(3, 1, vec![1, 1]).is_ok());
}

#[test]
fn rejects_bad_parameters() {
    assert_eq!(
        FieldTable::build(4, 2).unwrap_err(),
        FieldError::CompositeCharacteristic(4)
    );
    assert_eq!(FieldTable::build(2, 0).unwrap_err(), FieldError::ZeroDegree);
    assert!(matches!(
        FieldTable::build(2, 40),
        Err(FieldError::FieldTooLarge { .. })
    ));
    let t = FieldTable::build(2, 3).unwrap();
    assert!(matches!(
        t.trace(7),
        Err(FieldError::IndexOutOfRange { .. })
    ));
    assert!(t.zech_add(0, 9).is_err());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = FieldTable::build_cached(3, 5, Some(dir.path())).unwrap();
    let b = FieldTable::build_cached(3, 5, Some(dir.path())).unwrap();
    assert_eq!(a.zech_table(), b.zech_table());
    assert_eq!(a.trace_table(), b.trace_table());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
