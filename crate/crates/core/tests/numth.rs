mod common;

use common::class_number_analytic;
use cycfusion::numth::{self, Index2Kind, NumthError};

#[test]
fn class_numbers_match_analytic_formula() {
    for d in 1..=1000u64 {
        if !numth::is_squarefree(d) {
            assert_eq!(numth::class_number(d), Err(NumthError::NotSquarefree(d)));
            continue;
        }
        let h = class_number_analytic(d);
        assert_eq!(numth::class_number(d).unwrap(), h, "d = {d}");
        assert_eq!(numth::class_number_by_divisors(d).unwrap(), h, "d = {d}");
    }
}

#[test]
fn class_number_one_fields() {
    let ones: Vec<u64> = (1..=200)
        .filter(|&d| numth::is_squarefree(d) && numth::class_number(d).unwrap() == 1)
        .collect();
    assert_eq!(ones, vec![1, 2, 3, 7, 11, 19, 43, 67, 163]);
}

#[test]
fn mult_order_by_brute_force() {
    for n in 2..300u64 {
        for a in 1..n {
            let brute = (1..=n).try_fold(a % n, |x, k| if x == 1 { Err(k) } else { Ok(x * a % n) });
            match numth::mult_order(a, n) {
                Ok(o) => assert_eq!(Err(o), brute, "ord_{n}({a})"),
                Err(e) => {
                    assert!(brute.is_ok());
                    assert_eq!(e, NumthError::NotCoprime { a, n });
                }
            }
        }
    }
}

#[test]
fn phi_and_factors() {
    for n in 1..2000u64 {
        let brute = (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64;
        assert_eq!(numth::euler_phi(n), brute);
        let prod: u64 = numth::prime_factors(n)
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product();
        assert_eq!(prod, n);
    }
    let primes = numth::primes_up_to(1000);
    assert_eq!(primes.len(), 168);
    assert!(primes.iter().all(|&p| numth::is_prime(p)));
}

#[test]
fn legendre_by_squares() {
    for l in numth::primes_up_to(60).into_iter().filter(|&l| l > 2) {
        let squares: Vec<u64> = (1..l).map(|x| x * x % l).collect();
        for a in 0..l as i64 {
            let expect = if a == 0 {
                0
            } else if squares.contains(&(a as u64)) {
                1
            } else {
                -1
            };
            assert_eq!(numth::legendre(a, l), expect);
            assert_eq!(numth::legendre(a - l as i64, l), expect);
        }
    }
}

#[test]
fn semiprimitive_by_search() {
    for n in (3..200u64).step_by(2) {
        for p in [2u64, 3, 5, 7] {
            if n % p == 0 {
                continue;
            }
            let brute = (1..=n).any(|j| numth::pow_mod(p, j, n) == n - 1);
            assert_eq!(numth::is_semiprimitive(p, n).unwrap(), brute);
        }
    }
}

#[test]
fn classification_kinds() {
    let kind = |p, n| numth::classify_index2(p, n).unwrap().kind;
    assert_eq!(kind(2, 5), Index2Kind::SemiPrimitive);
    assert_eq!(kind(2, 7), Index2Kind::Index2Case1);
    assert_eq!(kind(2, 15), Index2Kind::Index2Case2);
    assert_eq!(kind(2, 45), Index2Kind::Index2Case2);
    assert_eq!(kind(2, 31), Index2Kind::Other);
    assert_eq!(numth::classify_index2(2, 10), Err(NumthError::EvenN(10)));
}

#[test]
fn gauss_coeffs_satisfy_their_system() {
    for n in (5..400u64).step_by(2) {
        for p in [2u64, 3, 5, 7, 11] {
            if n % p == 0 {
                continue;
            }
            let cls = numth::classify_index2(p, n).unwrap();
            if !matches!(cls.kind, Index2Kind::Index2Case1 | Index2Kind::Index2Case2) {
                continue;
            }
            match numth::solve_gauss_coeffs(p, &cls) {
                Ok(c) => {
                    assert!(c.satisfies_norm_equation(), "p={p} N={n}: {c:?}");
                    assert_eq!(c.f, cls.f);
                }
                Err(NumthError::UnsupportedCase(_)) | Err(NumthError::NoSolution(_)) => {}
                Err(NumthError::SearchTooLarge { .. }) => {}
                Err(e) => panic!("p={p} N={n}: {e}"),
            }
        }
    }
}
