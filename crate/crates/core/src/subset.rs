use std::fmt;

/// Largest ground set a [`Subset`] can index.
pub const MAX_GROUND: usize = 64;

/// A subset of a ground set `{0, .., n-1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_GROUND, "ground set of size {n} exceeds {MAX_GROUND}");
        if n == MAX_GROUND {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        let mut s = Subset::EMPTY;
        for i in elems {
            s.insert(i);
        }
        s
    }

    pub fn from_mask(mask: &[bool]) -> Subset {
        Subset::from_elems(mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_GROUND);
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < MAX_GROUND {
            self.0 &= !(1u64 << i);
        }
    }

    pub fn with(self, i: usize) -> Subset {
        let mut s = self;
        s.insert(i);
        s
    }

    pub fn without(self, i: usize) -> Subset {
        let mut s = self;
        s.remove(i);
        s
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Sum of `x` over the elements of the set.
    pub fn sum(self, x: &[i64]) -> i64 {
        self.iter().map(|i| x[i]).sum()
    }

    /// All subsets of `{0, .., n-1}` in increasing mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < MAX_GROUND);
        (0..1u64 << n).map(Subset)
    }

    /// All subsets of `self`, starting with `self` and ending with the empty set.
    pub fn subsets(self) -> Submasks {
        Submasks {
            full: self.0,
            next: Some(self.0),
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl serde::Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

pub struct Elems(u64);

impl Iterator for Elems {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

pub struct Submasks {
    full: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.full)
        };
        Some(Subset(cur))
    }
}

/// Maps between a subset of a parent ground set and a compact local ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// `elems[i]` is the parent element behind local element `i`.
    pub elems: Vec<usize>,
}

impl Embedding {
    pub fn new(elems: Vec<usize>) -> Self {
        Embedding { elems }
    }

    pub fn of(set: Subset) -> Self {
        Embedding { elems: set.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn image(&self) -> Subset {
        Subset::from_elems(self.elems.iter().copied())
    }

    pub fn lift(&self, local: Subset) -> Subset {
        Subset::from_elems(local.iter().map(|i| self.elems[i]))
    }

    /// Local image of `parent ∩ image()`.
    pub fn restrict(&self, parent: Subset) -> Subset {
        Subset::from_elems(
            self.elems
                .iter()
                .enumerate()
                .filter(|(_, &e)| parent.contains(e))
                .map(|(i, _)| i),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_cover_all_subsets_once() {
        let s = Subset::from_elems([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset_of(s)));
        let mut sorted = subs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
    }

    #[test]
    fn embedding_round_trip() {
        let e = Embedding::new(vec![2, 5, 7]);
        let local = Subset::from_elems([0, 2]);
        assert_eq!(e.lift(local), Subset::from_elems([2, 7]));
        assert_eq!(e.restrict(Subset::from_elems([2, 3, 7])), local);
    }

    #[test]
    fn full_set_sizes() {
        assert_eq!(Subset::full(0), Subset::EMPTY);
        assert_eq!(Subset::full(3).len(), 3);
        assert_eq!(Subset::full(64).len(), 64);
    }
}
