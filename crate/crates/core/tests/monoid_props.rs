//! Structural invariants of congruence monoids checked over whole ranges.

use acm_core::{Acm, AtomSieve, ElementStatus, SieveLimits};
use proptest::prelude::*;

fn singular_up_to(max_b: u64) -> impl Iterator<Item = Acm> {
    Acm::all_up_to(max_b).filter(|m| !m.is_regular())
}

#[test]
fn q_and_b_prime_are_coprime() {
    for acm in Acm::all_up_to(200) {
        assert_eq!(acm.q() * acm.a_prime(), acm.a());
        assert_eq!(acm.q() * acm.b_prime(), acm.b());
        assert_eq!(acm_core::arith::gcd(acm.q(), acm.b_prime()), 1, "{acm}");
    }
}

#[test]
fn kind_is_regular_iff_a_is_one() {
    for acm in Acm::all_up_to(60) {
        assert_eq!(acm.is_regular(), acm.a() == 1);
        assert_eq!(acm.is_regular(), acm.q() == 1, "{acm}");
    }
}

#[test]
fn closure_under_products() {
    for acm in Acm::all_up_to(30) {
        let limit = 20_000u64;
        let members: Vec<u64> = (1..=limit).filter(|&n| acm.contains(n)).take(200).collect();
        for &x in &members {
            for &y in &members {
                if x * y <= limit {
                    assert!(acm.contains(x * y), "{acm}: {x} * {y}");
                }
            }
        }
    }
}

#[test]
fn reducibles_are_divisible_by_q_squared_and_r_is_atomic() {
    for acm in singular_up_to(30) {
        let q2 = acm.q() * acm.q();
        let sieve = AtomSieve::new(acm, 100_000).unwrap();
        for n in sieve.reducibles() {
            assert_eq!(n % q2, 0, "{acm}: reducible {n}");
        }
        for n in (2..=100_000).filter(|&n| acm.contains(n) && n % q2 != 0) {
            assert_eq!(sieve.status(n), ElementStatus::Atom, "{acm}: {n}");
        }
    }
}

#[test]
fn sieve_matches_divisor_scan() {
    for (a, b) in [(1, 4), (4, 6), (1, 5), (6, 6), (9, 12), (1, 1), (3, 6), (5, 10), (16, 24)] {
        let acm = Acm::new(a, b).unwrap();
        let limits = SieveLimits {
            segment_size: 97,
            ..SieveLimits::default()
        };
        let sieve = AtomSieve::with_limits(acm, 10_000, &limits).unwrap();
        for n in 1..=10_000 {
            assert_eq!(sieve.status(n), acm.status(n), "{acm}: {n}");
        }
    }
}

#[test]
fn full_multiples_monoid_atoms() {
    for b in 2..=12u64 {
        let acm = Acm::new(b, b).unwrap();
        let sieve = AtomSieve::new(acm, 50_000).unwrap();
        let expected: Vec<u64> = (1..=50_000).filter(|n| n % b == 0 && n % (b * b) != 0).collect();
        assert_eq!(sieve.atoms().collect::<Vec<_>>(), expected, "b = {b}");
    }
}

#[test]
fn meyerson_power_family_is_atomic() {
    let acm = Acm::new(4, 6).unwrap();
    for k in 1..=10u32 {
        assert!(acm.is_atom(4 * 7u64.pow(k)), "k = {k}");
    }
}

proptest! {
    #[test]
    fn witnesses_are_valid(idx in 0usize..200, k in 0u64..200_000) {
        let acms: Vec<Acm> = Acm::all_up_to(40).collect();
        let acm = acms[idx % acms.len()];
        let n = acm.a() + k * acm.b();
        match acm.reducibility_witness(n).unwrap() {
            Some(w) => {
                prop_assert!(w.certifies(&acm, n));
                prop_assert_eq!(acm.status(n), ElementStatus::Reducible);
                // no smaller member divisor pairs up
                let mut d = acm.first_non_unit();
                while d < w.d() {
                    prop_assert!(!(n.is_multiple_of(d) && acm.contains(n / d) && n / d != 1));
                    d += acm.b();
                }
            }
            None => prop_assert!(n == 1 || acm.status(n) == ElementStatus::Atom),
        }
    }

    #[test]
    fn products_of_two_non_units_are_reducible(idx in 0usize..200, i in 0u64..3000, j in 0u64..3000) {
        let acms: Vec<Acm> = Acm::all_up_to(40).collect();
        let acm = acms[idx % acms.len()];
        let x = acm.first_non_unit() + i * acm.b();
        let y = acm.first_non_unit() + j * acm.b();
        prop_assert_eq!(acm.status(x * y), ElementStatus::Reducible);
    }
}
