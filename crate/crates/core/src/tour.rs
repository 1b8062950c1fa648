//! Tours and the circular doubly-linked list used by IGX.

use crate::error::{contract, Result};
use crate::instance::Instance;

/// A Hamiltonian cycle as a permutation of `0..n`, with its length cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour {
    order: Vec<usize>,
    length: i64,
}

impl Tour {
    /// Validates `order` and computes its length.
    pub fn new(order: Vec<usize>, inst: &Instance) -> Result<Self> {
        let length = tour_length(&order, inst)?;
        Ok(Self { order, length })
    }

    /// Skips validation. Callers must pass a permutation of `0..inst.len()`.
    pub(crate) fn new_unchecked(order: Vec<usize>, inst: &Instance) -> Self {
        debug_assert!(is_permutation(&order, inst.len()));
        let length = cycle_length(&order, inst);
        Self { order, length }
    }

    /// Caller vouches that `length` is the length of `order`.
    pub(crate) fn from_parts(order: Vec<usize>, length: i64) -> Self {
        Self { order, length }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn length(&self) -> i64 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    /// Rotation- and direction-independent form: starts at node 0 and walks
    /// toward whichever neighbor of 0 has the smaller index.
    pub fn canonical(&self) -> Vec<usize> {
        canonical_order(&self.order)
    }
}

pub fn canonical_order(order: &[usize]) -> Vec<usize> {
    let n = order.len();
    if n == 0 {
        return Vec::new();
    }
    let p = order.iter().position(|&v| v == 0).unwrap_or(0);
    let fwd = order[(p + 1) % n];
    let bwd = order[(p + n - 1) % n];
    if fwd <= bwd {
        (0..n).map(|k| order[(p + k) % n]).collect()
    } else {
        (0..n).map(|k| order[(p + n - k) % n]).collect()
    }
}

pub fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    true
}

/// Cyclic length of `order`, closing edge included.
pub fn tour_length(order: &[usize], inst: &Instance) -> Result<i64> {
    if !is_permutation(order, inst.len()) {
        return Err(contract(format!(
            "tour of {} entries is not a permutation of 0..{}",
            order.len(),
            inst.len()
        )));
    }
    Ok(cycle_length(order, inst))
}

pub(crate) fn cycle_length(order: &[usize], inst: &Instance) -> i64 {
    let Some(&last) = order.last() else { return 0 };
    let mut prev = last;
    let mut total = 0;
    for &v in order {
        total += inst.distance(prev, v);
        prev = v;
    }
    total
}

/// Parses a comma- or whitespace-separated list of 1-based node labels into
/// a 0-based permutation of `0..n`.
pub fn parse_label_list(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut order = Vec::new();
    for tok in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let label: usize = tok
            .parse()
            .map_err(|_| contract(format!("invalid node label `{tok}`")))?;
        if label == 0 || label > n {
            return Err(contract(format!("node label {label} outside 1..={n}")));
        }
        order.push(label - 1);
        if order.len() > n {
            break;
        }
    }
    if !is_permutation(&order, n) {
        return Err(contract(format!("`{text}` is not a permutation of the labels 1..={n}")));
    }
    Ok(order)
}

/// Circular doubly-linked list over node indices. Node identity is the index,
/// so `next`/`prev` are flat arrays and unlinking is O(1).
#[derive(Debug, Clone)]
pub struct LinkedTourList {
    next: Vec<usize>,
    prev: Vec<usize>,
    present: Vec<bool>,
    size: usize,
}

impl LinkedTourList {
    pub fn from_tour(tour: &Tour) -> Self {
        Self::from_order(tour.order())
    }

    /// `order` must be a permutation of `0..order.len()`.
    pub fn from_order(order: &[usize]) -> Self {
        let n = order.len();
        let mut next = vec![0; n];
        let mut prev = vec![0; n];
        for k in 0..n {
            let v = order[k];
            next[v] = order[(k + 1) % n];
            prev[v] = order[(k + n - 1) % n];
        }
        Self {
            next,
            prev,
            present: vec![true; n],
            size: n,
        }
    }

    /// Removes `v`, splicing its neighbors together, and returns the former
    /// `(prev, next)`. Returns `None` when `v` was the last node; with one
    /// other node left both sides are that node.
    #[inline]
    pub fn unlink(&mut self, v: usize) -> Result<Option<(usize, usize)>> {
        if !self.present.get(v).copied().unwrap_or(false) {
            return Err(contract(format!("node {v} is not in the list")));
        }
        self.present[v] = false;
        self.size -= 1;
        if self.size == 0 {
            return Ok(None);
        }
        let (p, n) = (self.prev[v], self.next[v]);
        self.next[p] = n;
        self.prev[n] = p;
        Ok(Some((p, n)))
    }

    pub fn next(&self, v: usize) -> usize {
        self.next[v]
    }

    pub fn prev(&self, v: usize) -> usize {
        self.prev[v]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Present nodes in `next` order starting at `start` (which must be present).
    pub fn walk_from(&self, start: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size);
        if !self.contains(start) {
            return out;
        }
        let mut v = start;
        for _ in 0..self.size {
            out.push(v);
            v = self.next[v];
        }
        out
    }

    /// Checks the structural invariants by full traversal.
    pub fn is_consistent(&self) -> bool {
        let count = self.present.iter().filter(|&&p| p).count();
        if count != self.size {
            return false;
        }
        let Some(start) = self.present.iter().position(|&p| p) else {
            return true;
        };
        let mut seen = vec![false; self.present.len()];
        let mut v = start;
        for _ in 0..self.size {
            if !self.present[v] || seen[v] {
                return false;
            }
            seen[v] = true;
            if self.prev[self.next[v]] != v || self.next[self.prev[v]] != v {
                return false;
            }
            v = self.next[v];
        }
        v == start
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fig1_fixture;

    fn labels(ls: &[usize]) -> Vec<usize> {
        ls.iter().map(|l| l - 1).collect()
    }

    #[test]
    fn fig1_parent_lengths() {
        let inst = fig1_fixture();
        // 20+40+35+15+12+17+18+38
        assert_eq!(tour_length(&labels(&[4, 5, 7, 3, 2, 1, 6, 8]), &inst).unwrap(), 195);
        // 22+23+35+36+28+37+38+33
        assert_eq!(tour_length(&labels(&[5, 1, 7, 3, 6, 2, 4, 8]), &inst).unwrap(), 251);
    }

    #[test]
    fn rejects_non_permutations() {
        let inst = fig1_fixture();
        assert!(tour_length(&[0, 1, 2], &inst).is_err());
        assert!(tour_length(&[0, 1, 2, 3, 4, 5, 6, 6], &inst).is_err());
        assert!(tour_length(&[0, 1, 2, 3, 4, 5, 6, 8], &inst).is_err());
        assert!(Tour::new(vec![1, 1, 2, 3, 4, 5, 6, 7], &inst).is_err());
    }

    #[test]
    fn three_node_tours_all_equal() {
        let inst = crate::Instance::from_matrix("t", &[vec![0, 2, 3], vec![2, 0, 4], vec![3, 4, 0]]).unwrap();
        assert_eq!(tour_length(&[0, 1, 2], &inst).unwrap(), 9);
        assert_eq!(tour_length(&[0, 2, 1], &inst).unwrap(), 9);
    }

    #[test]
    fn linked_from_father() {
        let inst = fig1_fixture();
        let father = Tour::new(labels(&[4, 5, 7, 3, 2, 1, 6, 8]), &inst).unwrap();
        let list = LinkedTourList::from_tour(&father);
        assert_eq!(list.next(3), 4);
        assert_eq!(list.prev(3), 7);
        assert_eq!(list.walk_from(3), father.order());
        assert_eq!(list.len(), 8);
        assert!(list.is_consistent());
    }

    #[test]
    fn small_list_arrays() {
        let list = LinkedTourList::from_order(&[0, 1, 2]);
        assert_eq!(list.next, vec![1, 2, 0]);
        assert_eq!(list.prev, vec![2, 0, 1]);
    }

    #[test]
    fn unlink_captures_neighbors() {
        let mut list = LinkedTourList::from_order(&labels(&[4, 5, 7, 3, 2, 1, 6, 8]));
        assert_eq!(list.unlink(0).unwrap(), Some((1, 5)));
        assert_eq!(list.walk_from(3), labels(&[4, 5, 7, 3, 2, 6, 8]));
        assert!(list.is_consistent());
        assert!(list.unlink(0).is_err());
    }

    #[test]
    fn unlink_degenerate_sizes() {
        let mut list = LinkedTourList::from_order(&[0, 1]);
        assert_eq!(list.unlink(0).unwrap(), Some((1, 1)));
        assert_eq!(list.unlink(1).unwrap(), None);
        assert_eq!(list.len(), 0);
        assert!(list.is_consistent());
        assert!(list.walk_from(1).is_empty());
    }

    #[test]
    fn label_lists() {
        assert_eq!(
            parse_label_list("4,5,7,3,2,1,6,8", 8).unwrap(),
            labels(&[4, 5, 7, 3, 2, 1, 6, 8])
        );
        assert_eq!(parse_label_list(" 2 1, 3 ", 3).unwrap(), vec![1, 0, 2]);
        assert!(parse_label_list("1,2", 3).is_err());
        assert!(parse_label_list("1,2,2", 3).is_err());
        assert!(parse_label_list("0,1,2", 3).is_err());
        assert!(parse_label_list("1,2,x", 3).is_err());
        assert!(parse_label_list("1,2,3,1", 3).is_err());
    }

    #[test]
    fn canonical_ignores_rotation_and_direction() {
        let a = canonical_order(&[3, 1, 0, 2]);
        assert_eq!(a, vec![0, 1, 3, 2]);
        assert_eq!(canonical_order(&[2, 0, 1, 3]), a);
        assert_eq!(canonical_order(&[1, 3, 2, 0]), a);
    }
}
