//! Dense sets of group elements.
//!
//! Elements of a finite product group are indexed by their lexicographic
//! rank, so a subset is a bitset over `0..order`. The enumeration sweeps
//! lean on cheap subset/intersection tests, which is why this is a packed
//! representation rather than a tree set.

/// A subset of a group of known order, stored as a bitset over element ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    universe: u64,
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: u64) -> ElementSet {
        let words = (universe as usize + 63) / 64;
        ElementSet {
            universe,
            bits: vec![0; words],
        }
    }

    pub fn full(universe: u64) -> ElementSet {
        let mut s = ElementSet::empty(universe);
        for r in 0..universe {
            s.insert(r);
        }
        s
    }

    pub fn from_ranks<I: IntoIterator<Item = u64>>(universe: u64, ranks: I) -> ElementSet {
        let mut s = ElementSet::empty(universe);
        for r in ranks {
            s.insert(r);
        }
        s
    }

    /// Order of the ambient group.
    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn insert(&mut self, rank: u64) {
        debug_assert!(rank < self.universe);
        self.bits[(rank / 64) as usize] |= 1u64 << (rank % 64);
    }

    pub fn remove(&mut self, rank: u64) {
        debug_assert!(rank < self.universe);
        self.bits[(rank / 64) as usize] &= !(1u64 << (rank % 64));
    }

    pub fn contains(&self, rank: u64) -> bool {
        rank < self.universe && self.bits[(rank / 64) as usize] & (1u64 << (rank % 64)) != 0
    }

    pub fn len(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    /// Ranks of the members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let universe = self.universe;
        self.bits
            .iter()
            .enumerate()
            .flat_map(move |(w, &word)| {
                let mut word = word;
                let mut out = Vec::with_capacity(word.count_ones() as usize);
                while word != 0 {
                    let b = word.trailing_zeros() as u64;
                    out.push(w as u64 * 64 + b);
                    word &= word - 1;
                }
                out
            })
            .filter(move |&r| r < universe)
    }
}
