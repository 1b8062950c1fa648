//! Greedy crossover operators.
//!
//! Every operator grows the child one node at a time from the current node
//! towards the nearest of its (up to four) neighbors in the two parents. They
//! differ in where the neighbors come from and in what happens when every
//! neighbor is already in the child:
//!
//! | operator         | neighbors from         | all visited            |
//! |------------------|------------------------|------------------------|
//! | `igx`            | live linked lists      | cannot happen          |
//! | `vgx`            | static parent tours    | nearest of all unvisited |
//! | `gx_random`      | static, nearest only   | uniform random         |
//! | `gx_four_random` | static                 | uniform random         |
//! | `gx_four_best20` | static                 | nearest of ≤20 sampled |
//!
//! IGX removes each chosen node from a doubly-linked copy of both parents, so
//! the neighbors it reads are always unvisited and the child is built in O(n).
//!
//! Equidistant candidates are resolved by probe order: father-prev,
//! father-next, mother-prev, mother-next. Global and sampled scans prefer the
//! lowest node index.

pub mod oracle;

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{contract, Error, Result};
use crate::instance::Instance;
use crate::tour::{LinkedTourList, Tour};

/// The generator threaded through a whole GA run.
pub type SolverRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest sample drawn by the `gx_four_best20` fallback.
pub const BEST_OF_SAMPLE: usize = 20;

/// Produces one child from two parents. Implement this to plug further
/// operators into the GA and the benchmark harness.
pub trait CrossoverOperator: Send + Sync {
    fn name(&self) -> &str;

    /// `start` fixes the first node of the child; `None` draws it uniformly.
    fn crossover(
        &self,
        father: &Tour,
        mother: &Tour,
        inst: &Instance,
        start: Option<usize>,
        rng: &mut SolverRng,
    ) -> Result<Tour>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Igx,
    Vgx,
    GxRandom,
    GxFourRandom,
    GxFourBest20,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 5] = [
        OperatorKind::Igx,
        OperatorKind::Vgx,
        OperatorKind::GxRandom,
        OperatorKind::GxFourRandom,
        OperatorKind::GxFourBest20,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Igx => "igx",
            OperatorKind::Vgx => "vgx",
            OperatorKind::GxRandom => "gx_random",
            OperatorKind::GxFourRandom => "gx_four_random",
            OperatorKind::GxFourBest20 => "gx_four_best20",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.map(Self::name).join(", ")
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|k| k.name() == wanted)
            .ok_or_else(|| Error::UnknownOperator {
                name: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

impl CrossoverOperator for OperatorKind {
    fn name(&self) -> &str {
        OperatorKind::name(*self)
    }

    fn crossover(
        &self,
        father: &Tour,
        mother: &Tour,
        inst: &Instance,
        start: Option<usize>,
        rng: &mut SolverRng,
    ) -> Result<Tour> {
        crossover_traced(*self, father, mother, inst, start, rng, |_| {})
    }
}

/// Where a candidate was read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    FatherPrev,
    FatherNext,
    MotherPrev,
    MotherNext,
}

impl Source {
    pub fn label(self) -> &'static str {
        match self {
            Source::FatherPrev => "father-prev",
            Source::FatherNext => "father-next",
            Source::MotherPrev => "mother-prev",
            Source::MotherNext => "mother-next",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub node: usize,
    pub source: Source,
    pub distance: i64,
    pub visited: bool,
}

/// Up to four neighbor candidates in probe order, without duplicate nodes.
#[derive(Debug, Clone, Copy)]
pub struct CandidateSet {
    items: [Candidate; 4],
    len: usize,
}

impl Default for CandidateSet {
    fn default() -> Self {
        Self {
            items: [Candidate {
                node: 0,
                source: Source::FatherPrev,
                distance: 0,
                visited: false,
            }; 4],
            len: 0,
        }
    }
}

impl CandidateSet {
    pub fn clear(&mut self) {
        self.len = 0;
    }

    /// Adds `node` unless it is already in the set.
    #[inline]
    pub fn push(&mut self, node: usize, source: Source, distance: i64, visited: bool) {
        if self.as_slice().iter().any(|c| c.node == node) {
            return;
        }
        self.items[self.len] = Candidate {
            node,
            source,
            distance,
            visited,
        };
        self.len += 1;
    }

    pub fn as_slice(&self) -> &[Candidate] {
        &self.items[..self.len]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// First candidate of minimal distance among those accepted by `keep`.
    #[inline]
    fn nearest_by(&self, keep: impl Fn(&Candidate) -> bool) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        for c in self.as_slice().iter().filter(|c| keep(c)) {
            if best.is_none_or(|b| c.distance < b.distance) {
                best = Some(*c);
            }
        }
        best
    }

    pub fn nearest(&self) -> Option<Candidate> {
        self.nearest_by(|_| true)
    }

    pub fn nearest_unvisited(&self) -> Option<Candidate> {
        self.nearest_by(|c| !c.visited)
    }
}

/// How the next node was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    Start,
    Nearest,
    RandomFallback,
    SampleFallback { sampled: usize },
    GlobalFallback,
}

/// One step of child construction, reported to a trace observer.
#[derive(Debug, Clone, Copy)]
pub struct Step<'a> {
    pub current: Option<usize>,
    pub candidates: &'a [Candidate],
    pub chosen: usize,
    pub selection: Selection,
}

/// Runs `kind` and reports each step to `observe`.
pub fn crossover_traced(
    kind: OperatorKind,
    father: &Tour,
    mother: &Tour,
    inst: &Instance,
    start: Option<usize>,
    rng: &mut SolverRng,
    observe: impl FnMut(&Step<'_>),
) -> Result<Tour> {
    let n = check_parents(father, mother, inst)?;
    let start = match start {
        Some(s) if s >= n => return Err(contract(format!("start node {s} out of range for n = {n}"))),
        Some(s) => s,
        None => rng.random_range(0..n),
    };
    let order = match kind {
        OperatorKind::Igx => igx_build(father, mother, inst, start, observe),
        _ => static_build(kind, father, mother, inst, start, rng, observe),
    };
    Ok(Tour::new_unchecked(order, inst))
}

pub fn igx(father: &Tour, mother: &Tour, inst: &Instance, rng: &mut SolverRng) -> Result<Tour> {
    OperatorKind::Igx.crossover(father, mother, inst, None, rng)
}

/// IGX from a fixed start node. Draws no randomness.
pub fn igx_from(father: &Tour, mother: &Tour, inst: &Instance, start: usize) -> Result<Tour> {
    let mut rng = seeded_rng(0);
    OperatorKind::Igx.crossover(father, mother, inst, Some(start), &mut rng)
}

pub fn vgx(father: &Tour, mother: &Tour, inst: &Instance, rng: &mut SolverRng) -> Result<Tour> {
    OperatorKind::Vgx.crossover(father, mother, inst, None, rng)
}

pub fn gx_random(father: &Tour, mother: &Tour, inst: &Instance, rng: &mut SolverRng) -> Result<Tour> {
    OperatorKind::GxRandom.crossover(father, mother, inst, None, rng)
}

pub fn gx_four_random(father: &Tour, mother: &Tour, inst: &Instance, rng: &mut SolverRng) -> Result<Tour> {
    OperatorKind::GxFourRandom.crossover(father, mother, inst, None, rng)
}

pub fn gx_four_best20(father: &Tour, mother: &Tour, inst: &Instance, rng: &mut SolverRng) -> Result<Tour> {
    OperatorKind::GxFourBest20.crossover(father, mother, inst, None, rng)
}

pub(crate) fn check_parents(father: &Tour, mother: &Tour, inst: &Instance) -> Result<usize> {
    let n = inst.len();
    if father.len() != n || mother.len() != n {
        return Err(contract(format!(
            "parent sizes {} and {} do not match instance size {n}",
            father.len(),
            mother.len()
        )));
    }
    Ok(n)
}

fn igx_build(
    father: &Tour,
    mother: &Tour,
    inst: &Instance,
    start: usize,
    mut observe: impl FnMut(&Step<'_>),
) -> Vec<usize> {
    let n = inst.len();
    let mut fl = LinkedTourList::from_tour(father);
    let mut ml = LinkedTourList::from_tour(mother);
    let mut child = Vec::with_capacity(n);
    let mut set = CandidateSet::default();

    let mut current = start;
    child.push(current);
    observe(&Step {
        current: None,
        candidates: &[],
        chosen: current,
        selection: Selection::Start,
    });
    while child.len() < n {
        // Both lists hold exactly the unvisited nodes plus `current`.
        let f = fl.unlink(current).expect("current node is present");
        let m = ml.unlink(current).expect("current node is present");
        set.clear();
        for (side, prev_src, next_src) in [
            (f, Source::FatherPrev, Source::FatherNext),
            (m, Source::MotherPrev, Source::MotherNext),
        ] {
            if let Some((p, nx)) = side {
                set.push(p, prev_src, inst.distance(current, p), false);
                set.push(nx, next_src, inst.distance(current, nx), false);
            }
        }
        let best = set.nearest().expect("unvisited nodes remain");
        observe(&Step {
            current: Some(current),
            candidates: set.as_slice(),
            chosen: best.node,
            selection: Selection::Nearest,
        });
        current = best.node;
        child.push(current);
    }
    child
}

/// Unvisited nodes with O(1) removal and uniform sampling.
struct Unvisited {
    items: Vec<usize>,
    slot: Vec<usize>,
}

impl Unvisited {
    const GONE: usize = usize::MAX;

    fn new(n: usize) -> Self {
        Self {
            items: (0..n).collect(),
            slot: (0..n).collect(),
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.slot[v] != Self::GONE
    }

    fn remove(&mut self, v: usize) {
        let s = self.slot[v];
        let last = *self.items.last().expect("non-empty");
        self.items.swap_remove(s);
        if last != v {
            self.slot[last] = s;
        }
        self.slot[v] = Self::GONE;
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}

fn nearest_of(inst: &Instance, from: usize, nodes: impl Iterator<Item = usize>) -> Option<usize> {
    nodes.min_by_key(|&v| (inst.distance(from, v), v))
}

fn static_build(
    kind: OperatorKind,
    father: &Tour,
    mother: &Tour,
    inst: &Instance,
    start: usize,
    rng: &mut SolverRng,
    mut observe: impl FnMut(&Step<'_>),
) -> Vec<usize> {
    let n = inst.len();
    let (f, m) = (father.order(), mother.order());
    let mut fpos = vec![0; n];
    let mut mpos = vec![0; n];
    for k in 0..n {
        fpos[f[k]] = k;
        mpos[m[k]] = k;
    }
    let mut unvisited = Unvisited::new(n);
    let mut child = Vec::with_capacity(n);
    let mut set = CandidateSet::default();

    let mut current = start;
    unvisited.remove(current);
    child.push(current);
    observe(&Step {
        current: None,
        candidates: &[],
        chosen: current,
        selection: Selection::Start,
    });
    while child.len() < n {
        set.clear();
        let (fp, mp) = (fpos[current], mpos[current]);
        for (node, src) in [
            (f[(fp + n - 1) % n], Source::FatherPrev),
            (f[(fp + 1) % n], Source::FatherNext),
            (m[(mp + n - 1) % n], Source::MotherPrev),
            (m[(mp + 1) % n], Source::MotherNext),
        ] {
            set.push(node, src, inst.distance(current, node), !unvisited.contains(node));
        }

        let greedy = match kind {
            OperatorKind::GxRandom => set.nearest().filter(|c| !c.visited),
            _ => set.nearest_unvisited(),
        };
        let (chosen, selection) = match greedy {
            Some(c) => (c.node, Selection::Nearest),
            None => match kind {
                OperatorKind::Vgx => (
                    nearest_of(inst, current, unvisited.items.iter().copied()).expect("non-empty"),
                    Selection::GlobalFallback,
                ),
                OperatorKind::GxFourBest20 => {
                    let k = unvisited.len().min(BEST_OF_SAMPLE);
                    let picks = index::sample(rng, unvisited.len(), k);
                    let node =
                        nearest_of(inst, current, picks.iter().map(|i| unvisited.items[i])).expect("non-empty sample");
                    (node, Selection::SampleFallback { sampled: k })
                }
                _ => (
                    unvisited.items[rng.random_range(0..unvisited.len())],
                    Selection::RandomFallback,
                ),
            },
        };
        observe(&Step {
            current: Some(current),
            candidates: set.as_slice(),
            chosen,
            selection,
        });
        unvisited.remove(chosen);
        current = chosen;
        child.push(current);
    }
    child
}
