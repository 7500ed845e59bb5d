use acm_core::arith::{euler_phi, gcd, is_prime};
use acm_core::{factorize, omega_in_class, primes_in_class, sieve_primes, Counting, ResidueClass, SpfTable};
use proptest::prelude::*;
use std::sync::OnceLock;

fn shared_table() -> &'static SpfTable {
    static TABLE: OnceLock<SpfTable> = OnceLock::new();
    TABLE.get_or_init(|| SpfTable::new(2_000_000).unwrap())
}

#[test]
fn factorizations_multiply_back_below_ten_thousand() {
    for n in 1..=10_000u64 {
        let f = factorize(n).unwrap();
        assert_eq!(f.value(), Some(n));
        assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        assert!(f.factors().iter().all(|&(p, e)| e >= 1 && is_prime(p)));
    }
}

#[test]
fn class_primes_partition_all_primes() {
    let limit = 20_000;
    let total = sieve_primes(limit).unwrap().len();
    for b in 1..=30u64 {
        let mut sum = 0;
        for r in 0..b {
            let cls = ResidueClass::new(r, b).unwrap();
            // coprime classes plus the classes of primes dividing b
            let holds_prime_divisor = (2..=b).any(|p| is_prime(p) && b % p == 0 && p % b == r);
            if gcd(r, b) == 1 || holds_prime_divisor {
                sum += primes_in_class(cls, limit).unwrap().len();
            } else {
                assert!(primes_in_class(cls, limit).unwrap().is_empty(), "[{r}]_{b}");
            }
        }
        assert_eq!(sum, total, "b = {b}");
    }
}

#[test]
fn omega_in_class_is_additive() {
    let table = SpfTable::new(1_000_000).unwrap();
    let classes = [
        ResidueClass::new(5, 6).unwrap(),
        ResidueClass::new(1, 4).unwrap(),
        ResidueClass::new(2, 3).unwrap(),
    ];
    let mut omega = vec![[0u32; 3]; 1001];
    for n in 1..=1000u64 {
        for (j, cls) in classes.iter().enumerate() {
            omega[n as usize][j] = omega_in_class(n, *cls, Counting::WithMultiplicity).unwrap();
        }
    }
    for n in 1..=1000u64 {
        for m in 1..=1000u64 {
            let f = table.factorize(n * m).unwrap();
            for (j, cls) in classes.iter().enumerate() {
                let direct: u32 = f
                    .factors()
                    .iter()
                    .filter(|&&(p, _)| cls.contains(p))
                    .map(|&(_, e)| e)
                    .sum();
                assert_eq!(direct, omega[n as usize][j] + omega[m as usize][j]);
            }
        }
    }
}

#[test]
fn totient_matches_unit_count() {
    for n in 1..=500u64 {
        let units = (1..=n).filter(|&r| gcd(r, n) == 1).count() as u64;
        assert_eq!(euler_phi(n), units, "n = {n}");
    }
}

proptest! {
    #[test]
    fn factorize_round_trips_any_u64(n in 1u64..) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.value(), Some(n));
        prop_assert!(f.factors().iter().all(|&(p, _)| is_prime(p)));
    }

    #[test]
    fn spf_and_trial_routes_agree(n in 1u64..2_000_000) {
        prop_assert_eq!(shared_table().factorize(n).unwrap(), factorize(n).unwrap());
    }

    #[test]
    fn distinct_count_never_exceeds_multiplicity(n in 1u64..1_000_000_000, r in 0u64..12, b in 1u64..12) {
        let cls = ResidueClass::new(r, b).unwrap();
        let d = omega_in_class(n, cls, Counting::Distinct).unwrap();
        let m = omega_in_class(n, cls, Counting::WithMultiplicity).unwrap();
        prop_assert!(d <= m);
    }
}
