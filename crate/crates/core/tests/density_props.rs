//! Density bookkeeping: partitions, closed forms and bounded prime counts.

use acm_core::arith::count_class_primes;
use acm_core::{
    bounded_class_series, closed_form_atoms, density_report, qr_partition, Acm, AtomSieve, Checkpoints, Counting,
    ResidueClass, SieveLimits,
};

#[test]
fn r_part_is_atoms_plus_unit() {
    for acm in Acm::all_up_to(40).filter(|m| !m.is_regular()) {
        let sieve = AtomSieve::new(acm, 200_000).unwrap();
        for n in [1, 10, 999, 10_000, 200_000] {
            let p = qr_partition(&sieve, n).unwrap();
            let c = sieve.counts(n);
            assert_eq!(p.total_members(), c.members, "{acm} N = {n}");
            assert_eq!(p.q_atoms + p.r_atoms, c.atoms);
            assert_eq!(p.r_atoms + 1, p.r_members, "{acm} N = {n}");
            assert!(p.r_is_all_atoms());
        }
    }
}

#[test]
fn partition_below_first_member_is_empty() {
    for acm in Acm::all_up_to(40).filter(|m| !m.is_regular() && m.a() > 2) {
        let sieve = AtomSieve::new(acm, 100).unwrap();
        let p = qr_partition(&sieve, acm.a() - 1).unwrap();
        assert_eq!((p.q_members, p.q_atoms, p.r_atoms), (0, 0, 0));
        // only the unit
        assert_eq!(p.r_members, 1);
    }
}

#[test]
fn full_multiples_counts_match_closed_form() {
    let cps = Checkpoints::doubling(500_000).unwrap();
    for b in 2..=15u64 {
        let r = density_report(Acm::new(b, b).unwrap(), &cps, &SieveLimits::default()).unwrap();
        for (i, &n) in r.checkpoints.iter().enumerate() {
            assert_eq!(r.atom_counts[i], closed_form_atoms(b, n), "b = {b} N = {n}");
        }
    }
}

#[test]
fn report_reads_the_same_sieve_counts() {
    let acm = Acm::new(9, 12).unwrap();
    let cps = Checkpoints::decades(100_000).unwrap();
    let sieve = AtomSieve::new(acm, 100_000).unwrap();
    let r = acm_core::DensityReport::from_sieve(&sieve, &cps).unwrap();
    for (i, &n) in cps.as_slice().iter().enumerate() {
        let brute_atoms = sieve.atoms().take_while(|&x| x <= n).count() as u64;
        assert_eq!(r.atom_counts[i], brute_atoms);
        assert_eq!(r.member_counts[i], (1..=n).filter(|&x| acm.contains(x)).count() as u64);
    }
}

#[test]
fn powers_of_two_series_is_exact() {
    let cls = ResidueClass::new(1, 2).unwrap();
    let cps = Checkpoints::new(vec![1, 2, 3, 100, 1000, 1024, 10_000, 65_536, 100_000]).unwrap();
    let s = bounded_class_series(cls, 0, &cps, Counting::WithMultiplicity).unwrap();
    for (i, &n) in cps.as_slice().iter().enumerate() {
        assert_eq!(s.counts[i], u64::from(n.ilog2()) + 1, "n = {n}");
    }
}

#[test]
fn meyerson_q_atoms_have_at_most_one_prime_in_five_mod_six() {
    let acm = Acm::new(4, 6).unwrap();
    let cls = ResidueClass::new(5, 6).unwrap();
    // q = 2 has no prime factor in [2]_3, so the allowance is exactly one
    let sieve = AtomSieve::new(acm, 1_000_000).unwrap();
    let table = acm_core::SpfTable::new(1_000_000).unwrap();
    let mut q_atoms = 0;
    for n in sieve.atoms().filter(|n| n % 4 == 0) {
        let f = table.factorize(n).unwrap();
        assert!(count_class_primes(&f, cls, Counting::WithMultiplicity) <= 1, "{n}");
        q_atoms += 1;
    }
    assert!(q_atoms > 0);
}
