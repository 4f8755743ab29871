use std::fmt;

/// Largest graph the bitset representation supports.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices stored as a 64-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, .., p-1}`.
    pub fn full(p: usize) -> Self {
        debug_assert!(p <= MAX_VERTICES);
        if p == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << p) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self` with exactly `k` members, in lexicographic
    /// order of their sorted member lists.
    pub fn subsets_of_size(self, k: usize) -> Subsets {
        Subsets::new(self.to_vec(), k)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Lexicographic k-combinations of a sorted member list.
pub struct Subsets {
    items: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(items: Vec<usize>, k: usize) -> Self {
        let done = k > items.len();
        Subsets {
            items,
            idx: (0..k).collect(),
            done,
        }
    }
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out: VertexSet = self.idx.iter().map(|&i| self.items[i]).collect();
        let n = self.items.len();
        let k = self.idx.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic() {
        let s: VertexSet = [1, 3, 4, 7].into_iter().collect();
        let got: Vec<Vec<usize>> = s.subsets_of_size(2).map(|x| x.to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![1, 3],
                vec![1, 4],
                vec![1, 7],
                vec![3, 4],
                vec![3, 7],
                vec![4, 7]
            ]
        );
        assert_eq!(s.subsets_of_size(0).count(), 1);
        assert_eq!(s.subsets_of_size(5).count(), 0);
        assert_eq!(VertexSet::EMPTY.subsets_of_size(0).count(), 1);
    }

    #[test]
    fn set_algebra() {
        let a: VertexSet = [0, 2, 5].into_iter().collect();
        let b: VertexSet = [2, 3].into_iter().collect();
        assert_eq!(a.union(b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(b).to_vec(), vec![2]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 5]);
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(a.first(), Some(0));
    }
}
