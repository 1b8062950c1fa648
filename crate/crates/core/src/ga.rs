//! The memetic GA: random initial population, batches of crossover children
//! improved by local search, truncation to the best `population_size`, and
//! repetition while a batch still gets a child into the population.

use std::collections::HashSet;
use std::time::Instant;

use rand::seq::{index, SliceRandom};

use crate::crossover::{seeded_rng, CrossoverOperator, OperatorKind, SolverRng};
use crate::error::{contract, Result};
use crate::instance::Instance;
use crate::local_search::{improve, LocalSearchConfig};
use crate::tour::Tour;

pub const DEFAULT_MAX_OUTER_LOOPS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    /// Children produced per outer-loop iteration.
    pub generation_size: usize,
    pub operator: OperatorKind,
    pub ls: LocalSearchConfig,
    pub seed: u64,
    /// Abnormal-stop guard; `None` disables it.
    pub max_outer_loops: Option<usize>,
    /// Drop children whose cycle already exists in the population or batch.
    pub reject_duplicates: bool,
    /// Start every crossover from this node instead of a random one.
    pub fixed_start: Option<usize>,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 50,
            generation_size: 500,
            operator: OperatorKind::Igx,
            ls: LocalSearchConfig::default(),
            seed: 0,
            max_outer_loops: Some(DEFAULT_MAX_OUTER_LOOPS),
            reject_duplicates: false,
            fixed_start: None,
        }
    }
}

impl GaConfig {
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        if self.population_size < 2 {
            return Err(contract(format!(
                "population_size must be at least 2, got {}",
                self.population_size
            )));
        }
        if self.generation_size < 1 {
            return Err(contract("generation_size must be at least 1"));
        }
        if self.max_outer_loops == Some(0) {
            return Err(contract("max_outer_loops must be at least 1"));
        }
        if self.ls.max_passes == Some(0) {
            return Err(contract("ls max_passes must be at least 1"));
        }
        if let Some(s) = self.fixed_start {
            if s >= inst.len() {
                return Err(contract(format!(
                    "fixed start node {s} out of range for n = {}",
                    inst.len()
                )));
            }
        }
        Ok(())
    }
}

/// Tours kept in ascending length order; among equal lengths, earlier
/// arrivals come first.
#[derive(Debug, Clone)]
pub struct Population {
    individuals: Vec<Tour>,
}

impl Population {
    pub fn from_tours(mut tours: Vec<Tour>) -> Self {
        tours.sort_by_key(Tour::length);
        Self { individuals: tours }
    }

    pub fn individuals(&self) -> &[Tour] {
        &self.individuals
    }

    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    pub fn best(&self) -> Option<&Tour> {
        self.individuals.first()
    }

    pub fn worst(&self) -> Option<&Tour> {
        self.individuals.last()
    }
}

pub fn init_population(inst: &Instance, cfg: &GaConfig, rng: &mut SolverRng) -> Population {
    let n = inst.len();
    let tours = (0..cfg.population_size)
        .map(|_| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            Tour::new_unchecked(order, inst)
        })
        .collect();
    Population::from_tours(tours)
}

/// Two distinct members, uniformly without replacement.
pub fn select_parents<'p>(pop: &'p Population, rng: &mut SolverRng) -> Result<(&'p Tour, &'p Tour)> {
    if pop.len() < 2 {
        return Err(contract(format!(
            "need at least 2 individuals to select parents, have {}",
            pop.len()
        )));
    }
    let picks = index::sample(rng, pop.len(), 2);
    Ok((&pop.individuals[picks.index(0)], &pop.individuals[picks.index(1)]))
}

/// Merges `children` behind the incumbents and keeps the `population_size`
/// shortest, stably. Returns how many children survived.
pub fn reduce_population(pop: &mut Population, children: Vec<Tour>, population_size: usize) -> usize {
    let incumbents = pop.individuals.len();
    let mut pool: Vec<(bool, Tour)> = pop
        .individuals
        .drain(..)
        .map(|t| (false, t))
        .chain(children.into_iter().map(|t| (true, t)))
        .collect();
    debug_assert!(pool.len() >= population_size.min(incumbents));
    pool.sort_by_key(|(_, t)| t.length());
    pool.truncate(population_size);
    let survivors = pool.iter().filter(|(child, _)| *child).count();
    pop.individuals = pool.into_iter().map(|(_, t)| t).collect();
    survivors
}

#[derive(Debug, Clone)]
pub struct GaResult {
    pub best_tour: Tour,
    pub best_length: i64,
    /// Iterations of the outer "while the population changed" loop.
    pub outer_loops: usize,
    pub wall_time: f64,
    pub children_produced: usize,
    /// Best length after initialization, then after each outer loop.
    pub best_history: Vec<i64>,
    /// Set when `max_outer_loops` stopped the run.
    pub hit_loop_cap: bool,
}

pub fn run_ga(inst: &Instance, cfg: &GaConfig) -> Result<GaResult> {
    run_ga_with(inst, cfg, &cfg.operator)
}

/// Runs the GA with any crossover operator; `cfg.operator` is ignored.
pub fn run_ga_with(inst: &Instance, cfg: &GaConfig, op: &dyn CrossoverOperator) -> Result<GaResult> {
    cfg.validate(inst)?;
    let clock = Instant::now();
    let mut rng = seeded_rng(cfg.seed);
    let pop = init_population(inst, cfg, &mut rng);
    evolve(inst, cfg, op, pop, rng, clock)
}

/// Runs the outer loop from a caller-supplied population.
pub fn run_ga_from(inst: &Instance, cfg: &GaConfig, population: Population) -> Result<GaResult> {
    cfg.validate(inst)?;
    if population.individuals.iter().any(|t| t.len() != inst.len()) {
        return Err(contract("population tours do not match the instance size"));
    }
    if population.len() < 2 {
        return Err(contract("population must hold at least 2 tours"));
    }
    let clock = Instant::now();
    evolve(inst, cfg, &cfg.operator, population, seeded_rng(cfg.seed), clock)
}

fn evolve(
    inst: &Instance,
    cfg: &GaConfig,
    op: &dyn CrossoverOperator,
    mut pop: Population,
    mut rng: SolverRng,
    clock: Instant,
) -> Result<GaResult> {
    let mut history = vec![pop.best().expect("non-empty").length()];
    let mut outer_loops = 0;
    let mut children_produced = 0;
    let mut hit_loop_cap = false;

    loop {
        outer_loops += 1;
        let mut seen: HashSet<Vec<usize>> = if cfg.reject_duplicates {
            pop.individuals.iter().map(Tour::canonical).collect()
        } else {
            HashSet::new()
        };
        let mut children = Vec::with_capacity(cfg.generation_size);
        for _ in 0..cfg.generation_size {
            let (father, mother) = select_parents(&pop, &mut rng)?;
            let child = op.crossover(father, mother, inst, cfg.fixed_start, &mut rng)?;
            let child = improve(child, inst, &cfg.ls);
            children_produced += 1;
            if cfg.reject_duplicates && !seen.insert(child.canonical()) {
                continue;
            }
            children.push(child);
        }
        let survivors = reduce_population(&mut pop, children, cfg.population_size);
        history.push(pop.best().expect("non-empty").length());
        if survivors == 0 {
            break;
        }
        if cfg.max_outer_loops.is_some_and(|cap| outer_loops >= cap) {
            hit_loop_cap = true;
            break;
        }
    }

    let best_tour = pop.best().expect("non-empty").clone();
    Ok(GaResult {
        best_length: best_tour.length(),
        best_tour,
        outer_loops,
        wall_time: clock.elapsed().as_secs_f64(),
        children_produced,
        best_history: history,
        hit_loop_cap,
    })
}
