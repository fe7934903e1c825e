//! Fixed-capacity bitsets over element indices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Element;

/// A subset of `0..capacity`, ordered and hashed by its words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet {
    capacity: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new(capacity: usize) -> Self {
        Self {
            capacity,
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for x in 0..capacity {
            s.insert(x);
        }
        s
    }

    pub fn from_elements(capacity: usize, xs: impl IntoIterator<Item = Element>) -> Self {
        let mut s = Self::new(capacity);
        for x in xs {
            s.insert(x);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, x: Element) {
        assert!(x < self.capacity, "element {x} out of range");
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn remove(&mut self, x: Element) {
        if x < self.capacity {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    pub fn contains(&self, x: Element) -> bool {
        x < self.capacity && self.words[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<Element> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.capacity, other.capacity);
        Self {
            capacity: self.capacity,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_operations() {
        let a = ElementSet::from_elements(130, [0, 5, 64, 129]);
        let b = ElementSet::from_elements(130, [5, 129, 7]);
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 129]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 64]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.first(), Some(0));
        assert!(ElementSet::new(3).is_empty());
        assert_eq!(ElementSet::full(70).len(), 70);
    }
}
