#![allow(dead_code)]

use std::path::{Path, PathBuf};

use igx_core::crossover::SolverRng;
use igx_core::{Instance, Point, Tour};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random coordinate instance. A small `grid` produces many equal distances,
/// which exercises tie-breaking.
pub fn random_instance(rng: &mut SolverRng, n: usize, grid: u32) -> Instance {
    let coords = (0..n)
        .map(|_| Point::new(rng.random_range(0..grid) as f64, rng.random_range(0..grid) as f64))
        .collect();
    Instance::from_coords(format!("rand{n}"), coords).unwrap()
}

pub fn random_tour(rng: &mut SolverRng, inst: &Instance) -> Tour {
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.shuffle(rng);
    Tour::new(order, inst).unwrap()
}

/// Parents of the worked 8-node example, 0-based.
pub fn fig1_parents(inst: &Instance) -> (Tour, Tour) {
    let f = [4, 5, 7, 3, 2, 1, 6, 8].map(|l| l - 1).to_vec();
    let m = [5, 1, 7, 3, 6, 2, 4, 8].map(|l| l - 1).to_vec();
    (Tour::new(f, inst).unwrap(), Tour::new(m, inst).unwrap())
}

/// Directories searched for TSPLIB files: `$IGX_TSPLIB_DIR`, then
/// `data/tsplib` at the workspace root.
pub fn tsplib_dirs() -> Vec<PathBuf> {
    let mut dirs = Vec::new();
    if let Some(d) = std::env::var_os("IGX_TSPLIB_DIR") {
        dirs.push(PathBuf::from(d));
    }
    let root = Path::new(env!("CARGO_MANIFEST_DIR"))
        .ancestors()
        .nth(2)
        .expect("workspace root");
    dirs.push(root.join("data").join("tsplib"));
    dirs
}

pub fn find_tsplib(name: &str) -> Result<PathBuf, String> {
    let dirs = tsplib_dirs();
    dirs.iter()
        .map(|d| d.join(format!("{name}.tsp")))
        .find(|p| p.is_file())
        .ok_or_else(|| {
            let looked: Vec<String> = dirs.iter().map(|d| d.display().to_string()).collect();
            format!("{name}.tsp not found (looked in {})", looked.join(", "))
        })
}
