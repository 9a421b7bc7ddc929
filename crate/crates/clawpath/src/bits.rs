//! Dense bitset over vertex slots. One `u64` block covers desk-scale graphs;
//! larger graphs spill into more blocks transparently.

/// Fixed-capacity set of small unsigned integers backed by `u64` blocks.
#[derive(Clone, Default)]
pub struct BitSet {
    blocks: Vec<u64>,
}

/// Equality and hashing ignore trailing zero blocks: two sets with the same
/// members are equal regardless of the capacity they were built with.
impl PartialEq for BitSet {
    fn eq(&self, other: &Self) -> bool {
        self.zip_blocks(other).all(|(a, b)| a == b)
    }
}

impl Eq for BitSet {}

impl std::hash::Hash for BitSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let last = self
            .blocks
            .iter()
            .rposition(|&b| b != 0)
            .map_or(0, |i| i + 1);
        self.blocks[..last].hash(state);
    }
}

impl BitSet {
    pub fn with_capacity(slots: usize) -> Self {
        BitSet {
            blocks: vec![0; slots.div_ceil(64)],
        }
    }

    fn grow_for(&mut self, index: usize) {
        let need = index / 64 + 1;
        if self.blocks.len() < need {
            self.blocks.resize(need, 0);
        }
    }

    pub fn insert(&mut self, index: usize) {
        self.grow_for(index);
        self.blocks[index / 64] |= 1 << (index % 64);
    }

    pub fn remove(&mut self, index: usize) {
        if index / 64 < self.blocks.len() {
            self.blocks[index / 64] &= !(1 << (index % 64));
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.blocks
            .get(index / 64)
            .is_some_and(|b| b & (1 << (index % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn clear(&mut self) {
        self.blocks.iter_mut().for_each(|b| *b = 0);
    }

    /// Iterate set members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            std::iter::successors(
                if block == 0 { None } else { Some(block) },
                |&b| {
                    let b = b & (b - 1);
                    if b == 0 {
                        None
                    } else {
                        Some(b)
                    }
                },
            )
            .map(move |b| i * 64 + b.trailing_zeros() as usize)
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn zip_blocks<'a>(&'a self, other: &'a BitSet) -> impl Iterator<Item = (u64, u64)> + 'a {
        let n = self.blocks.len().max(other.blocks.len());
        (0..n).map(move |i| {
            (
                self.blocks.get(i).copied().unwrap_or(0),
                other.blocks.get(i).copied().unwrap_or(0),
            )
        })
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.zip_blocks(other).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.zip_blocks(other).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &BitSet) -> usize {
        self.zip_blocks(other)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        if self.blocks.len() < other.blocks.len() {
            self.blocks.resize(other.blocks.len(), 0);
        }
        for (a, &b) in self.blocks.iter_mut().zip(other.blocks.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (i, a) in self.blocks.iter_mut().enumerate() {
            *a &= other.blocks.get(i).copied().unwrap_or(0);
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (i, a) in self.blocks.iter_mut().enumerate() {
            *a &= !other.blocks.get(i).copied().unwrap_or(0);
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = BitSet::default();
        for x in iter {
            set.insert(x);
        }
        set
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_roundtrip() {
        let mut s = BitSet::with_capacity(10);
        for x in [3usize, 64, 65, 129, 0] {
            s.insert(x);
        }
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 64, 65, 129]);
        assert_eq!(s.len(), 5);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn set_algebra() {
        let a: BitSet = [1usize, 2, 3].into_iter().collect();
        let b: BitSet = [3usize, 4].into_iter().collect();
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![3]);
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![1, 2]);
        assert!(!a.is_disjoint(&b));
        assert!(a.difference(&b).is_disjoint(&b));
        assert!([1usize, 2].into_iter().collect::<BitSet>().is_subset(&a));
    }
}
