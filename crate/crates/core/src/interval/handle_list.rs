use std::cmp::Reverse;
use std::collections::BTreeMap;

/// One copy of an interval in a [`HandleList`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Handle {
    pub id: usize,
    pub death: usize,
}

/// Sorted multiset of interval handles, latest-ending on top.
///
/// Ordered top-down by `(death desc, id asc)`; the "lowest" elements are
/// the ones ending first. Each interval occurs at most twice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HandleList {
    // key order ascending == bottom-up
    copies: BTreeMap<(usize, Reverse<usize>), u8>,
    len: usize,
}

impl HandleList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn occurrences(&self, h: Handle) -> usize {
        self.copies.get(&(h.death, Reverse(h.id))).map_or(0, |&c| c as usize)
    }

    pub fn contains(&self, h: Handle) -> bool {
        self.occurrences(h) > 0
    }

    /// Inserts one copy. Panics on a third copy.
    pub fn insert(&mut self, h: Handle) {
        let c = self.copies.entry((h.death, Reverse(h.id))).or_insert(0);
        assert!(*c < 2, "interval {} inserted a third time", h.id);
        *c += 1;
        self.len += 1;
    }

    /// Deletes one copy of `h` if present.
    pub fn remove_one(&mut self, h: Handle) -> bool {
        let key = (h.death, Reverse(h.id));
        match self.copies.get_mut(&key) {
            Some(c) => {
                *c -= 1;
                if *c == 0 {
                    self.copies.remove(&key);
                }
                self.len -= 1;
                true
            }
            None => false,
        }
    }

    /// The `k` lowest copies, lowest first (fewer if the list is shorter).
    pub fn lowest(&self, k: usize) -> Vec<Handle> {
        self.bottom_up().take(k).collect()
    }

    /// Removes the lowest copy.
    pub fn pop_lowest(&mut self) -> Option<Handle> {
        let h = self.bottom_up().next()?;
        self.remove_one(h);
        Some(h)
    }

    pub fn bottom_up(&self) -> impl Iterator<Item = Handle> + '_ {
        self.copies
            .iter()
            .flat_map(|(&(death, Reverse(id)), &c)| std::iter::repeat_n(Handle { id, death }, c as usize))
    }

    /// Elements in list order `q_1, q_2, ...` (latest-ending first).
    pub fn top_down(&self) -> Vec<Handle> {
        let mut v: Vec<_> = self.bottom_up().collect();
        v.reverse();
        v
    }

    /// `self ≼ other`: no longer than `other` and, aligned from the top,
    /// every element ends no later than its counterpart.
    pub fn lessgood(&self, other: &HandleList) -> bool {
        self.len <= other.len
            && self
                .top_down()
                .iter()
                .zip(other.top_down().iter())
                .all(|(a, b)| a.death <= b.death)
    }
}
