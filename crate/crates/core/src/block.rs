//! The block monoid over the unit group `(Z/bZ)^*`.
//!
//! A block is a multiset of units whose product is 1 mod `b`. Blocks that do
//! not split into two non-empty blocks are atoms; the longest atom length is
//! the Davenport constant. Replacing each prime of a member of `M(1, b)` by its
//! residue mod `b` sends the member to a block, and atoms to atoms.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::acm::Acm;
use crate::arith::{factorize, gcd};
use crate::error::{Error, Result};

/// `(Z/bZ)^*` as the ascending residues in `[1, b]` coprime to `b`. For
/// `b = 1` this is the trivial group written `{1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    modulus: u64,
    elements: Vec<u64>,
}

impl UnitGroup {
    /// Enumerates the group; intended for moduli small enough to list.
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::validation("modulus must be at least 1"));
        }
        let elements = if modulus == 1 {
            vec![1]
        } else {
            (1..modulus).filter(|&r| gcd(r, modulus) == 1).collect()
        };
        Ok(UnitGroup { modulus, elements })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        mul_residue(x, y, self.modulus)
    }

    fn index_of(&self, r: u64) -> usize {
        self.elements.binary_search(&r).expect("residue is a unit")
    }
}

/// Canonical residue of `x` mod `b`, with the trivial group's element written 1.
#[inline]
fn reduce(x: u64, b: u64) -> u64 {
    if b == 1 {
        1
    } else {
        x % b
    }
}

#[inline]
fn mul_residue(x: u64, y: u64, b: u64) -> u64 {
    if b == 1 {
        return 1;
    }
    ((u128::from(x) * u128::from(y)) % u128::from(b)) as u64
}

#[inline]
fn is_identity(r: u64, b: u64) -> bool {
    r == reduce(1, b)
}

/// A product-one multiset of units mod `b`, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    modulus: u64,
    letters: Vec<u64>,
}

impl Block {
    /// Reduces each letter mod `modulus` and checks that every letter is a
    /// unit and the product is 1. Anything else is a domain error.
    pub fn new(modulus: u64, letters: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::validation("modulus must be at least 1"));
        }
        let mut reduced = Vec::new();
        let mut product = reduce(1, modulus);
        for x in letters {
            let r = reduce(x, modulus);
            if modulus > 1 && gcd(r, modulus) != 1 {
                return Err(Error::domain(format!("{x} is not a unit mod {modulus}")));
            }
            product = mul_residue(product, r, modulus);
            reduced.push(r);
        }
        if !is_identity(product, modulus) {
            return Err(Error::domain(format!(
                "letters multiply to {product} mod {modulus}, not 1"
            )));
        }
        reduced.sort_unstable();
        Ok(Block {
            modulus,
            letters: reduced,
        })
    }

    /// The empty block, identity of the block monoid.
    pub fn empty(modulus: u64) -> Self {
        Block {
            modulus,
            letters: Vec::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn letters(&self) -> &[u64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Multiset union. Panics if the moduli differ.
    pub fn concat(&self, other: &Block) -> Block {
        assert_eq!(self.modulus, other.modulus, "blocks over different moduli");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        letters.sort_unstable();
        Block {
            modulus: self.modulus,
            letters,
        }
    }

    /// True when the block is non-empty and has no proper non-empty
    /// product-one sub-multiset.
    ///
    /// If the block splits, one of the two parts avoids the first letter, so it
    /// suffices to look for a non-empty product-one sub-multiset among the
    /// remaining letters.
    pub fn is_atom(&self) -> bool {
        let Some((_, rest)) = self.letters.split_first() else {
            return false;
        };
        let b = self.modulus;
        let mut reach: BTreeSet<u64> = BTreeSet::new();
        for &x in rest {
            if is_identity(x, b) {
                return false;
            }
            let mut next: Vec<u64> = reach.iter().map(|&r| mul_residue(r, x, b)).collect();
            next.push(x);
            for r in next {
                if is_identity(r, b) {
                    return false;
                }
                reach.insert(r);
            }
        }
        true
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}} mod {}", self.modulus)
    }
}

/// Limits for exhaustive atom enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSearch {
    /// Largest accepted `phi(b)`. Hard ceiling of 64.
    pub max_group_order: usize,
}

impl Default for BlockSearch {
    fn default() -> Self {
        BlockSearch { max_group_order: 24 }
    }
}

impl BlockSearch {
    /// Every atom of the block monoid over `(Z/bZ)^*`, in lexicographic order
    /// of their sorted letters.
    ///
    /// Depth-first search over non-decreasing letter sequences. Every proper
    /// prefix of a sorted atom is free of product-one sub-multisets, so the
    /// search only extends such sequences; it records a sequence as soon as
    /// its product reaches 1 and abandons it once any sub-multiset does.
    /// Sequences are never longer than `|G|` letters.
    pub fn block_atoms(&self, b: u64) -> Result<Vec<Block>> {
        let group = UnitGroup::new(b)?;
        let order = group.order();
        if order > self.max_group_order.min(64) {
            return Err(Error::resource(format!(
                "phi({b}) = {order} exceeds the enumeration cap {}",
                self.max_group_order.min(64)
            )));
        }
        let identity = group.index_of(reduce(1, b));
        let table: Vec<Vec<usize>> = group
            .elements()
            .iter()
            .map(|&x| {
                group
                    .elements()
                    .iter()
                    .map(|&y| group.index_of(group.mul(x, y)))
                    .collect()
            })
            .collect();
        let mut search = Search {
            table: &table,
            identity,
            horizon: order,
            seq: Vec::with_capacity(order),
            found: Vec::new(),
        };
        search.extend(0, 0, identity);
        let mut atoms: Vec<Block> = search
            .found
            .into_iter()
            .map(|idx| Block {
                modulus: b,
                letters: idx.into_iter().map(|i| group.elements()[i]).collect(),
            })
            .collect();
        atoms.sort();
        Ok(atoms)
    }
}

struct Search<'a> {
    table: &'a [Vec<usize>],
    identity: usize,
    horizon: usize,
    seq: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    // `reach` holds the products of the non-empty sub-multisets of `seq`
    // (as a bitmask over group indices); it never contains the identity here.
    fn extend(&mut self, start: usize, reach: u64, product: usize) {
        if self.seq.len() == self.horizon {
            return;
        }
        for g in start..self.table.len() {
            let next_product = self.table[product][g];
            let mut next_reach = reach | 1 << g;
            let mut bits = reach;
            while bits != 0 {
                let r = bits.trailing_zeros() as usize;
                next_reach |= 1 << self.table[r][g];
                bits &= bits - 1;
            }
            self.seq.push(g);
            if next_product == self.identity {
                self.found.push(self.seq.clone());
            } else if next_reach & (1 << self.identity) == 0 {
                self.extend(g, next_reach, next_product);
            }
            self.seq.pop();
        }
    }
}

/// [`BlockSearch::block_atoms`] with default limits.
pub fn block_atoms(b: u64) -> Result<Vec<Block>> {
    BlockSearch::default().block_atoms(b)
}

/// Length of the longest block atom over `(Z/bZ)^*`.
pub fn davenport_constant(b: u64) -> Result<usize> {
    Ok(block_atoms(b)?.iter().map(Block::len).max().unwrap_or(0))
}

/// Replaces every prime of `n` (with multiplicity) by its residue mod `b`.
/// Defined only for regular monoids and members.
pub fn transfer(acm: &Acm, n: u64) -> Result<Block> {
    if !acm.is_regular() {
        return Err(Error::domain(format!("transfer is defined only for regular monoids, not {acm}")));
    }
    if !acm.contains(n) {
        return Err(Error::domain(format!("{n} is not a member of {acm}")));
    }
    let f = factorize(n)?;
    Block::new(acm.b(), f.primes_with_multiplicity())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(blocks: &[Block]) -> Vec<Vec<u64>> {
        blocks.iter().map(|b| b.letters().to_vec()).collect()
    }

    #[test]
    fn unit_groups() {
        assert_eq!(UnitGroup::new(5).unwrap().elements(), &[1, 2, 3, 4]);
        assert_eq!(UnitGroup::new(4).unwrap().elements(), &[1, 3]);
        assert_eq!(UnitGroup::new(1).unwrap().elements(), &[1]);
        assert_eq!(UnitGroup::new(2).unwrap().elements(), &[1]);
        assert!(UnitGroup::new(0).is_err());
    }

    #[test]
    fn atom_examples_mod_five() {
        assert!(Block::new(5, [2, 2, 2, 2]).unwrap().is_atom());
        assert!(Block::new(5, [2, 3]).unwrap().is_atom());
        assert!(!Block::new(5, [2, 2, 2, 2, 3, 3, 3, 3]).unwrap().is_atom());
        assert!(Block::new(5, [1]).unwrap().is_atom());
        assert!(!Block::empty(5).is_atom());
        assert!(!Block::new(5, [1, 1]).unwrap().is_atom());
    }

    #[test]
    fn invalid_blocks_are_domain_errors() {
        assert!(matches!(Block::new(5, [2, 2]), Err(Error::Domain(_))));
        assert!(matches!(Block::new(6, [2, 5]), Err(Error::Domain(_))));
    }

    #[test]
    fn block_atoms_small_moduli() {
        let five = block_atoms(5).unwrap();
        assert_eq!(
            letters(&five),
            vec![
                vec![1],
                vec![2, 2, 2, 2],
                vec![2, 2, 4],
                vec![2, 3],
                vec![3, 3, 3, 3],
                vec![3, 3, 4],
                vec![4, 4],
            ]
        );
        assert_eq!(letters(&block_atoms(4).unwrap()), vec![vec![1], vec![3, 3]]);
        assert_eq!(letters(&block_atoms(2).unwrap()), vec![vec![1]]);
        assert_eq!(letters(&block_atoms(1).unwrap()), vec![vec![1]]);
    }

    #[test]
    fn davenport_constants() {
        assert_eq!(davenport_constant(5).unwrap(), 4);
        assert_eq!(davenport_constant(4).unwrap(), 2);
        assert_eq!(davenport_constant(2).unwrap(), 1);
        // (Z/8Z)^* is (Z/2Z)^2, whose Davenport constant is 3
        assert_eq!(davenport_constant(8).unwrap(), 3);
    }

    #[test]
    fn enumeration_cap() {
        let tight = BlockSearch { max_group_order: 4 };
        assert!(tight.block_atoms(5).is_ok());
        assert!(matches!(tight.block_atoms(7), Err(Error::Resource(_))));
    }

    #[test]
    fn transfer_examples() {
        let hilbert = Acm::new(1, 4).unwrap();
        assert_eq!(transfer(&hilbert, 441).unwrap().letters(), &[3, 3, 3, 3]);
        let m15 = Acm::new(1, 5).unwrap();
        assert_eq!(transfer(&m15, 341).unwrap().letters(), &[1, 1]);
        assert!(transfer(&m15, 1).unwrap().is_empty());
        assert!(matches!(transfer(&m15, 7), Err(Error::Domain(_))));
        let meyerson = Acm::new(4, 6).unwrap();
        assert!(matches!(transfer(&meyerson, 4), Err(Error::Domain(_))));
    }
}
