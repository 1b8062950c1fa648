//! Exhaustive enumeration of small tours, used as an optimality oracle.

use crate::error::{contract, Result};
use crate::instance::Instance;
use crate::tour::{cycle_length, Tour};

/// Calls `f` once per distinct undirected cycle on `0..n`: node 0 first and
/// `order[1] < order[n-1]`, giving (n-1)!/2 cycles for n ≥ 3.
pub fn for_each_tour(n: usize, mut f: impl FnMut(&[usize])) {
    if n < 3 {
        return;
    }
    let mut order: Vec<usize> = (0..n).collect();
    permute(&mut order, 1, &mut f);
}

fn permute(order: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    let n = order.len();
    if k == n {
        if order[1] < order[n - 1] {
            f(order);
        }
        return;
    }
    for i in k..n {
        order.swap(k, i);
        permute(order, k + 1, f);
        order.swap(k, i);
    }
}

/// A shortest tour by full enumeration. Refuses instances above 11 nodes.
pub fn optimal_tour(inst: &Instance) -> Result<Tour> {
    let n = inst.len();
    if n > 11 {
        return Err(contract(format!("brute force limited to 11 nodes, got {n}")));
    }
    let mut best: Option<(i64, Vec<usize>)> = None;
    for_each_tour(n, |o| {
        let len = cycle_length(o, inst);
        if best.as_ref().is_none_or(|(b, _)| len < *b) {
            best = Some((len, o.to_vec()));
        }
    });
    let (_, order) = best.expect("n >= 3");
    Tour::new(order, inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (n, expected) in [(3, 1), (4, 3), (5, 12), (8, 2520)] {
            let mut c = 0;
            for_each_tour(n, |_| c += 1);
            assert_eq!(c, expected, "n = {n}");
        }
    }

    #[test]
    fn distinct_canonical_forms() {
        let mut seen = std::collections::HashSet::new();
        for_each_tour(6, |o| {
            assert!(seen.insert(crate::tour::canonical_order(o)));
        });
        assert_eq!(seen.len(), 60);
    }
}
