//! Quadratic reference construction of the IGX child.
//!
//! Keeps an explicit visited set and, for each parent, scans outward from the
//! current node's original position to the first unvisited node on either
//! side. Shares no code with the linked-list path, so the two can check each
//! other.

use crate::error::{contract, Result};
use crate::instance::Instance;
use crate::tour::Tour;

use super::check_parents;

pub fn reference_igx_oracle(father: &Tour, mother: &Tour, inst: &Instance, start: usize) -> Result<Tour> {
    let n = check_parents(father, mother, inst)?;
    if start >= n {
        return Err(contract(format!("start node {start} out of range for n = {n}")));
    }
    let parents = [father.order(), mother.order()];
    let positions: Vec<Vec<usize>> = parents
        .iter()
        .map(|p| {
            let mut pos = vec![0; n];
            for (k, &v) in p.iter().enumerate() {
                pos[v] = k;
            }
            pos
        })
        .collect();

    let mut visited = vec![false; n];
    let mut child = vec![start];
    visited[start] = true;
    let mut current = start;
    while child.len() < n {
        // (node, distance) in probe order: father-prev, father-next, mother-prev, mother-next
        let mut probes: Vec<(usize, i64)> = Vec::with_capacity(4);
        for (p, pos) in parents.iter().zip(&positions) {
            let at = pos[current];
            let back = (1..n).map(|s| p[(at + n - s) % n]).find(|&v| !visited[v]);
            let fwd = (1..n).map(|s| p[(at + s) % n]).find(|&v| !visited[v]);
            for v in [back, fwd].into_iter().flatten() {
                if !probes.iter().any(|&(u, _)| u == v) {
                    probes.push((v, inst.distance(current, v)));
                }
            }
        }
        let mut best = probes[0];
        for &c in &probes[1..] {
            if c.1 < best.1 {
                best = c;
            }
        }
        current = best.0;
        visited[current] = true;
        child.push(current);
    }
    Tour::new(child, inst)
}
