use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Set of item ids stored as a fixed-width bit vector over a universe of
/// `width` items.
///
/// Ordering is canonical: itemsets compare lexicographically by their
/// ascending id sequences, so `{0} < {0,1} < {0,2} < {1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Itemset {
    width: usize,
    words: Vec<u64>,
}

impl Itemset {
    pub fn empty(width: usize) -> Self {
        Itemset {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Itemset::empty(width);
        for id in 0..width {
            s.set(id);
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(width: usize, ids: I) -> Result<Self> {
        let mut s = Itemset::empty(width);
        for id in ids {
            s.insert(id)?;
        }
        Ok(s)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, id: usize) -> Result<bool> {
        if id >= self.width {
            return Err(Error::ItemOutOfRange {
                id,
                width: self.width,
            });
        }
        let fresh = !self.contains(id);
        self.set(id);
        Ok(fresh)
    }

    pub fn remove(&mut self, id: usize) -> bool {
        if !self.contains(id) {
            return false;
        }
        self.words[id / WORD] &= !(1u64 << (id % WORD));
        true
    }

    fn set(&mut self, id: usize) {
        self.words[id / WORD] |= 1u64 << (id % WORD);
    }

    /// Copy of `self` with `id` added. `id` must be below the width.
    pub fn with(&self, id: usize) -> Self {
        debug_assert!(id < self.width);
        let mut s = self.clone();
        s.set(id);
        s
    }

    pub fn contains(&self, id: usize) -> bool {
        id < self.width && self.words[id / WORD] >> (id % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Itemset) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Itemset) -> bool {
        other.is_subset(self)
    }

    pub fn is_disjoint(&self, other: &Itemset) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Itemset) -> Itemset {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Itemset) -> Itemset {
        self.zip_with(other, |a, b| a & !b)
    }

    /// Items of the universe not in `self`.
    pub fn complement(&self) -> Itemset {
        let mut out = Itemset::empty(self.width);
        for id in (0..self.width).filter(|&id| !self.contains(id)) {
            out.set(id);
        }
        out
    }

    fn zip_with(&self, other: &Itemset, f: impl Fn(u64, u64) -> u64) -> Itemset {
        debug_assert_eq!(self.width, other.width);
        Itemset {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Member ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    pub fn ids(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max_id(&self) -> Option<usize> {
        self.iter().last()
    }
}

impl Ord for Itemset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then(self.width.cmp(&other.width))
    }
}

impl PartialOrd for Itemset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// What a depth-first visitor wants to happen after seeing an itemset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Visit {
    /// Keep extending this itemset.
    Descend,
    /// Skip every extension of this itemset.
    Prune,
    /// Abort the whole walk.
    Stop,
}

/// Walks every non-empty itemset built from `candidates` (ascending ids) in
/// canonical order, as a pre-order traversal of the set-enumeration tree.
/// Returns `false` if the visitor stopped the walk.
pub(crate) fn walk_canonical<F>(width: usize, candidates: &[usize], visit: &mut F) -> bool
where
    F: FnMut(&Itemset) -> Visit,
{
    fn go<F: FnMut(&Itemset) -> Visit>(prefix: &Itemset, rest: &[usize], visit: &mut F) -> bool {
        for (k, &id) in rest.iter().enumerate() {
            let next = prefix.with(id);
            match visit(&next) {
                Visit::Stop => return false,
                Visit::Prune => {}
                Visit::Descend => {
                    if !go(&next, &rest[k + 1..], visit) {
                        return false;
                    }
                }
            }
        }
        true
    }
    debug_assert!(candidates.windows(2).all(|w| w[0] < w[1]));
    go(&Itemset::empty(width), candidates, visit)
}
