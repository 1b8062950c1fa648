//! 2-opt and 3-opt improvement on the array form of a tour.
//!
//! Both searches scan every move in a fixed order and apply an improving move
//! as soon as it is found, then keep scanning. A pass is one full scan; the
//! search stops after a pass without improvement or after `max_passes`.
//! Moves are evaluated by integer deltas, so "improving" is exact.

use crate::instance::Instance;
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalSearchConfig {
    pub two_opt: bool,
    pub three_opt: bool,
    /// Pass limit for each search; `None` runs to a local minimum.
    pub max_passes: Option<usize>,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        Self {
            two_opt: true,
            three_opt: true,
            max_passes: None,
        }
    }
}

impl LocalSearchConfig {
    pub fn disabled() -> Self {
        Self {
            two_opt: false,
            three_opt: false,
            max_passes: None,
        }
    }

    fn pass_allowed(&self, done: usize) -> bool {
        self.max_passes.is_none_or(|m| done < m)
    }
}

/// Runs the enabled searches: 2-opt first, then 3-opt.
pub fn improve(t: Tour, inst: &Instance, cfg: &LocalSearchConfig) -> Tour {
    let t = if cfg.two_opt { two_opt(&t, inst, cfg) } else { t };
    if cfg.three_opt {
        three_opt(&t, inst, cfg)
    } else {
        t
    }
}

/// Change in length from reversing `order[i+1..=j]`.
#[inline]
fn two_opt_delta(order: &[usize], inst: &Instance, i: usize, j: usize) -> i64 {
    let n = order.len();
    let (a, b) = (order[i], order[i + 1]);
    let (c, d) = (order[j], order[(j + 1) % n]);
    inst.distance(a, c) + inst.distance(b, d) - inst.distance(a, b) - inst.distance(c, d)
}

pub fn two_opt(t: &Tour, inst: &Instance, cfg: &LocalSearchConfig) -> Tour {
    let n = t.len();
    if n < 4 {
        return t.clone();
    }
    let mut order = t.order().to_vec();
    let mut length = t.length();
    let mut passes = 0;
    while cfg.pass_allowed(passes) {
        passes += 1;
        let mut improved = false;
        for i in 0..n - 2 {
            // i = 0 with j = n-1 would pick two edges sharing order[0]
            let last = if i == 0 { n - 1 } else { n };
            for j in (i + 2)..last {
                let delta = two_opt_delta(&order, inst, i, j);
                if delta < 0 {
                    order[i + 1..=j].reverse();
                    length += delta;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Tour::from_parts(order, length)
}

/// Best improving 2-exchange of `order`, if any, as `(i, j, delta)`.
pub fn find_improving_two_opt(order: &[usize], inst: &Instance) -> Option<(usize, usize, i64)> {
    let n = order.len();
    if n < 4 {
        return None;
    }
    let mut best: Option<(usize, usize, i64)> = None;
    for i in 0..n - 2 {
        let last = if i == 0 { n - 1 } else { n };
        for j in (i + 2)..last {
            let delta = two_opt_delta(order, inst, i, j);
            if delta < 0 && best.is_none_or(|b| delta < b.2) {
                best = Some((i, j, delta));
            }
        }
    }
    best
}

/// The seven non-identity ways to reconnect `a | S1 | S2 | f` after cutting
/// three edges, as (second segment first, reverse S1, reverse S2).
const RECONNECTIONS: [(bool, bool, bool); 7] = [
    (false, true, false),
    (false, false, true),
    (false, true, true),
    (true, false, false),
    (true, false, true),
    (true, true, false),
    (true, true, true),
];

#[cfg(test)]
#[allow(clippy::too_many_arguments)]
/// Cost of the three new edges for reconnection `r`, with S1 = b..c and
/// S2 = d..e between a and f.
#[inline]
fn reconnection_cost(r: usize, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize, inst: &Instance) -> i64 {
    let dist = |x, y| inst.distance(x, y);
    match r {
        0 => dist(a, c) + dist(b, d) + dist(e, f),
        1 => dist(a, b) + dist(c, e) + dist(d, f),
        2 => dist(a, c) + dist(b, e) + dist(d, f),
        3 => dist(a, d) + dist(e, b) + dist(c, f),
        4 => dist(a, e) + dist(d, b) + dist(c, f),
        5 => dist(a, d) + dist(e, c) + dist(b, f),
        _ => dist(a, e) + dist(d, c) + dist(b, f),
    }
}

/// Cut state for fixed `i < j`: the endpoints `a b` and `c d` of the first two
/// removed edges plus the five distances among them that do not depend on `k`.
struct Cut {
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    ab: i64,
    cd: i64,
    ac: i64,
    bd: i64,
    ad: i64,
}

impl Cut {
    #[inline]
    fn at<D: Fn(usize, usize) -> i64>(order: &[usize], i: usize, j: usize, dist: &D) -> Self {
        let (a, b, c, d) = (order[i], order[i + 1], order[j], order[j + 1]);
        Self {
            a,
            b,
            c,
            d,
            ab: dist(a, b),
            cd: dist(c, d),
            ac: dist(a, c),
            bd: dist(b, d),
            ad: dist(a, d),
        }
    }

    /// Best improving reconnection with third edge `e f`, as `(variant, delta)`.
    /// Costs follow [`reconnection_cost`]; ties keep the lowest variant.
    #[inline]
    fn best<D: Fn(usize, usize) -> i64>(&self, e: usize, f: usize, dist: &D) -> Option<(usize, i64)> {
        let (ef, ce, df) = (dist(e, f), dist(self.c, e), dist(self.d, f));
        let (be, cf, ae, bf) = (dist(self.b, e), dist(self.c, f), dist(self.a, e), dist(self.b, f));
        let removed = self.ab + self.cd + ef;
        let costs = [
            self.ac + self.bd + ef,
            self.ab + ce + df,
            self.ac + be + df,
            self.ad + be + cf,
            ae + self.bd + cf,
            self.ad + ce + bf,
            ae + self.cd + bf,
        ];
        let mut best: Option<(usize, i64)> = None;
        for (r, cost) in costs.into_iter().enumerate() {
            let delta = cost - removed;
            if delta < 0 && best.is_none_or(|(_, bd)| delta < bd) {
                best = Some((r, delta));
            }
        }
        best
    }
}

/// Best reconnection of the cut after positions `i < j < k`, if it improves:
/// `(variant, delta)`.
fn best_reconnection(order: &[usize], inst: &Instance, i: usize, j: usize, k: usize) -> Option<(usize, i64)> {
    let n = order.len();
    let dist = |x, y| inst.distance(x, y);
    Cut::at(order, i, j, &dist).best(order[k], order[(k + 1) % n], &dist)
}

fn apply_reconnection(order: &mut [usize], i: usize, j: usize, k: usize, r: usize) {
    let (swap, rev1, rev2) = RECONNECTIONS[r];
    let mut s1 = order[i + 1..=j].to_vec();
    let mut s2 = order[j + 1..=k].to_vec();
    if rev1 {
        s1.reverse();
    }
    if rev2 {
        s2.reverse();
    }
    let (x, y) = if swap { (s2, s1) } else { (s1, s2) };
    for (slot, v) in order[i + 1..=k].iter_mut().zip(x.into_iter().chain(y)) {
        *slot = v;
    }
}

pub fn three_opt(t: &Tour, inst: &Instance, cfg: &LocalSearchConfig) -> Tour {
    if t.len() < 4 {
        return t.clone();
    }
    match inst.matrix_rows() {
        Some((m, n)) => three_opt_with(t, cfg, |x, y| m[x * n + y] as i64),
        None => three_opt_with(t, cfg, |x, y| inst.distance(x, y)),
    }
}

fn three_opt_with<D: Fn(usize, usize) -> i64>(t: &Tour, cfg: &LocalSearchConfig, dist: D) -> Tour {
    let n = t.len();
    let mut order = t.order().to_vec();
    let mut length = t.length();
    let mut passes = 0;
    while cfg.pass_allowed(passes) {
        passes += 1;
        let mut improved = false;
        for i in 0..n - 2 {
            for j in (i + 1)..n - 1 {
                let mut cut = Cut::at(&order, i, j, &dist);
                for k in (j + 1)..n {
                    if let Some((r, delta)) = cut.best(order[k], order[(k + 1) % n], &dist) {
                        apply_reconnection(&mut order, i, j, k, r);
                        length += delta;
                        improved = true;
                        cut = Cut::at(&order, i, j, &dist);
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    Tour::from_parts(order, length)
}

/// Any improving 3-exchange of `order` as `(i, j, k, variant, delta)`.
pub fn find_improving_three_opt(order: &[usize], inst: &Instance) -> Option<(usize, usize, usize, usize, i64)> {
    let n = order.len();
    if n < 4 {
        return None;
    }
    for i in 0..n - 2 {
        for j in (i + 1)..n - 1 {
            for k in (j + 1)..n {
                if let Some((r, delta)) = best_reconnection(order, inst, i, j, k) {
                    return Some((i, j, k, r, delta));
                }
            }
        }
    }
    None
}
