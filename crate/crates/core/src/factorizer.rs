//! Factorizations of a member into atoms, with length sets and elasticity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::acm::Acm;
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Enumeration caps. Exceeding any of them is an error; partial sets are
/// never returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorizerLimits {
    pub max_value: u64,
    pub max_factors: usize,
    pub max_factorizations: usize,
}

impl Default for FactorizerLimits {
    fn default() -> Self {
        FactorizerLimits {
            max_value: 1_000_000_000,
            max_factors: 64,
            max_factorizations: 1 << 20,
        }
    }
}

/// A multiset of atoms, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factorization {
    atoms: Vec<u64>,
}

impl Factorization {
    pub fn atoms(&self) -> &[u64] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn product(&self) -> Option<u64> {
        self.atoms.iter().try_fold(1u64, |acc, &x| acc.checked_mul(x))
    }
}

/// All factorizations of one element, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    pub element: u64,
    pub factorizations: Vec<Factorization>,
}

impl FactorizationSet {
    pub fn length_set(&self) -> BTreeSet<usize> {
        self.factorizations.iter().map(Factorization::len).collect()
    }

    /// `max length / min length`; `None` for the unit, whose only
    /// factorization is empty.
    pub fn elasticity(&self) -> Option<Ratio> {
        let lengths = self.length_set();
        let min = *lengths.first()?;
        let max = *lengths.last()?;
        (min > 0).then(|| Ratio::new(max as u128, min as u128))
    }
}

struct Enumerator<'a> {
    atoms: Vec<u64>,
    limits: &'a FactorizerLimits,
    memo: BTreeMap<(u64, usize), Vec<Vec<u64>>>,
}

impl Enumerator<'_> {
    // Factorizations of `m` using only atoms[start..], each listed ascending.
    fn run(&mut self, m: u64, start: usize) -> Result<Vec<Vec<u64>>> {
        if m == 1 {
            return Ok(vec![Vec::new()]);
        }
        if let Some(hit) = self.memo.get(&(m, start)) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        for i in start..self.atoms.len() {
            let d = self.atoms[i];
            if d > m {
                break;
            }
            if !m.is_multiple_of(d) {
                continue;
            }
            let rest = m / d;
            if rest != 1 && rest < d {
                continue;
            }
            for tail in self.run(rest, i)? {
                if tail.len() + 1 > self.limits.max_factors {
                    return Err(Error::resource(format!(
                        "a factorization of {m} has more than {} atoms",
                        self.limits.max_factors
                    )));
                }
                let mut f = Vec::with_capacity(tail.len() + 1);
                f.push(d);
                f.extend(tail);
                out.push(f);
                if out.len() > self.limits.max_factorizations {
                    return Err(Error::resource(format!(
                        "more than {} factorizations",
                        self.limits.max_factorizations
                    )));
                }
            }
        }
        self.memo.insert((m, start), out.clone());
        Ok(out)
    }
}

/// Every factorization of the member `n` into atoms of `acm`. The unit has
/// exactly one, the empty factorization.
pub fn factorizations(acm: &Acm, n: u64, limits: &FactorizerLimits) -> Result<FactorizationSet> {
    if !acm.contains(n) {
        return Err(Error::domain(format!("{n} is not a member of {acm}")));
    }
    if n > limits.max_value {
        return Err(Error::resource(format!(
            "{n} exceeds the factorization cap {}",
            limits.max_value
        )));
    }
    let atoms: Vec<u64> = factorize(n)?
        .divisors()
        .into_iter()
        .filter(|&d| d > 1 && acm.is_atom(d))
        .collect();
    let mut e = Enumerator {
        atoms,
        limits,
        memo: BTreeMap::new(),
    };
    let mut factorizations: Vec<Factorization> = e
        .run(n, 0)?
        .into_iter()
        .map(|atoms| Factorization { atoms })
        .collect();
    factorizations.sort();
    Ok(FactorizationSet {
        element: n,
        factorizations,
    })
}

/// Lengths of every factorization of `n`.
pub fn length_set(acm: &Acm, n: u64, limits: &FactorizerLimits) -> Result<BTreeSet<usize>> {
    Ok(factorizations(acm, n, limits)?.length_set())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lists(set: &FactorizationSet) -> Vec<Vec<u64>> {
        set.factorizations.iter().map(|f| f.atoms().to_vec()).collect()
    }

    // Ordered search over every atom divisor, deduplicated afterwards.
    fn flat_oracle(acm: &Acm, n: u64) -> BTreeSet<Vec<u64>> {
        fn go(acm: &Acm, m: u64, prefix: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
            if m == 1 {
                let mut f = prefix.clone();
                f.sort_unstable();
                out.insert(f);
                return;
            }
            for d in 2..=m {
                if m.is_multiple_of(d) && acm.is_atom(d) {
                    prefix.push(d);
                    go(acm, m / d, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(acm, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn hilbert_441() {
        let acm = Acm::new(1, 4).unwrap();
        let set = factorizations(&acm, 441, &FactorizerLimits::default()).unwrap();
        assert_eq!(lists(&set), vec![vec![9, 49], vec![21, 21]]);
        assert_eq!(set.length_set().into_iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(set.elasticity(), Some(Ratio::ONE));
    }

    #[test]
    fn atoms_factor_as_themselves() {
        let acm = Acm::new(4, 6).unwrap();
        for n in [4, 10, 22, 28] {
            let set = factorizations(&acm, n, &FactorizerLimits::default()).unwrap();
            assert_eq!(lists(&set), vec![vec![n]]);
        }
    }

    #[test]
    fn unit_has_empty_factorization() {
        let acm = Acm::new(4, 6).unwrap();
        let set = factorizations(&acm, 1, &FactorizerLimits::default()).unwrap();
        assert_eq!(lists(&set), vec![Vec::<u64>::new()]);
        assert_eq!(set.elasticity(), None);
    }

    #[test]
    fn full_multiples_examples() {
        let acm = Acm::new(6, 6).unwrap();
        let limits = FactorizerLimits::default();
        // 12 and 18 are atoms too (36 divides neither), so 216 = 12 * 18 as well
        let f216 = lists(&factorizations(&acm, 216, &limits).unwrap());
        assert_eq!(f216, vec![vec![6, 6, 6], vec![12, 18]]);
        assert_eq!(f216.into_iter().collect::<BTreeSet<_>>(), flat_oracle(&acm, 216));
        let oracle: Vec<Vec<u64>> = flat_oracle(&acm, 1296).into_iter().collect();
        let set = factorizations(&acm, 1296, &limits).unwrap();
        let mut got = lists(&set);
        got.sort();
        assert_eq!(got, oracle);
        // 24*54, 6*12*18, 6*6*6*6
        assert_eq!(length_set(&acm, 1296, &limits).unwrap().into_iter().collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(set.elasticity(), Some(Ratio::new(2, 1)));
    }

    #[test]
    fn errors() {
        let acm = Acm::new(1, 4).unwrap();
        let limits = FactorizerLimits::default();
        assert!(matches!(factorizations(&acm, 3, &limits), Err(Error::Domain(_))));
        let tight = FactorizerLimits {
            max_value: 100,
            ..limits
        };
        assert!(matches!(factorizations(&acm, 441, &tight), Err(Error::Resource(_))));
        let few = FactorizerLimits {
            max_factorizations: 1,
            ..limits
        };
        assert!(matches!(factorizations(&acm, 441, &few), Err(Error::Resource(_))));
        let short = FactorizerLimits {
            max_factors: 3,
            ..limits
        };
        let m11 = Acm::new(1, 1).unwrap();
        assert!(matches!(factorizations(&m11, 16, &short), Err(Error::Resource(_))));
    }

    #[test]
    fn matches_flat_search_for_small_members() {
        let limits = FactorizerLimits::default();
        for (a, b) in [(1, 4), (4, 6), (9, 12), (1, 3)] {
            let acm = Acm::new(a, b).unwrap();
            for n in (1..=3000).filter(|&n| acm.contains(n)) {
                let set = factorizations(&acm, n, &limits).unwrap();
                let got: BTreeSet<Vec<u64>> = lists(&set).into_iter().collect();
                assert_eq!(got, flat_oracle(&acm, n), "{acm}, n = {n}");
            }
        }
    }
}
