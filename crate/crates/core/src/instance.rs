//! Problem instances: TSPLIB `EUC_2D` loading and symmetric integer distances.
//!
//! Node indices are 0-based everywhere inside the crate. TSPLIB files label
//! nodes from 1; the parser converts at the boundary and [`Instance::to_tsplib`]
//! converts back.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{contract, Error, ParseError, Result};

/// Instances up to this many nodes get a precomputed distance matrix.
pub const DEFAULT_MATRIX_THRESHOLD: usize = 1000;

/// Largest accepted coordinate magnitude. Keeps every rounded distance, and
/// every tour length over it, comfortably inside integer range.
pub const MAX_COORD: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// False for NaN as well as for magnitudes above [`MAX_COORD`].
fn in_range(v: f64) -> bool {
    v.abs() <= MAX_COORD
}

/// TSPLIB `nint` rounding of the Euclidean distance: halves round up.
#[inline]
pub fn euc_2d(a: Point, b: Point) -> u32 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    ((dx * dx + dy * dy).sqrt() + 0.5).floor() as u32
}

/// One symmetric TSP instance. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Instance {
    name: String,
    n: usize,
    coords: Option<Vec<Point>>,
    /// Row-major n×n. The distance source for matrix instances, a cache for
    /// coordinate instances below the threshold.
    matrix: Option<Vec<u32>>,
    known_optimum: Option<i64>,
}

impl Instance {
    pub fn from_coords(name: impl Into<String>, coords: Vec<Point>) -> Result<Self> {
        Self::from_coords_with_threshold(name, coords, DEFAULT_MATRIX_THRESHOLD)
    }

    /// Like [`Instance::from_coords`], precomputing the full matrix only when
    /// `n <= matrix_threshold`.
    pub fn from_coords_with_threshold(
        name: impl Into<String>,
        coords: Vec<Point>,
        matrix_threshold: usize,
    ) -> Result<Self> {
        let n = coords.len();
        if n < 3 {
            return Err(contract(format!("an instance needs at least 3 nodes, got {n}")));
        }
        if let Some(p) = coords.iter().find(|p| !(in_range(p.x) && in_range(p.y))) {
            return Err(contract(format!("coordinate ({}, {}) out of range", p.x, p.y)));
        }
        let matrix = (n <= matrix_threshold).then(|| {
            let mut m = vec![0u32; n * n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = euc_2d(coords[i], coords[j]);
                    m[i * n + j] = d;
                    m[j * n + i] = d;
                }
            }
            m
        });
        Ok(Self {
            name: name.into(),
            n,
            coords: Some(coords),
            matrix,
            known_optimum: None,
        })
    }

    /// Builds an explicit-matrix instance. The matrix must be square,
    /// symmetric, with a zero diagonal and at least 3 rows.
    pub fn from_matrix(name: impl Into<String>, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n < 3 {
            return Err(contract(format!("an instance needs at least 3 nodes, got {n}")));
        }
        let mut m = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(contract(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            m.extend_from_slice(row);
        }
        for i in 0..n {
            if m[i * n + i] != 0 {
                return Err(contract(format!("diagonal entry ({i},{i}) is not zero")));
            }
            for j in (i + 1)..n {
                if m[i * n + j] != m[j * n + i] {
                    return Err(contract(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            n,
            coords: None,
            matrix: Some(m),
            known_optimum: None,
        })
    }

    pub fn with_known_optimum(mut self, optimum: Option<i64>) -> Self {
        self.known_optimum = optimum;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn coords(&self) -> Option<&[Point]> {
        self.coords.as_deref()
    }

    pub fn known_optimum(&self) -> Option<i64> {
        self.known_optimum
    }

    pub fn has_matrix(&self) -> bool {
        self.matrix.is_some()
    }

    /// The row-major matrix and its side length, when one is stored.
    pub(crate) fn matrix_rows(&self) -> Option<(&[u32], usize)> {
        self.matrix.as_deref().map(|m| (m, self.n))
    }

    /// Distance between nodes `i` and `j`. Panics if either index is out of
    /// range; see [`Instance::try_distance`] for the checked form.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> i64 {
        match &self.matrix {
            Some(m) => {
                assert!(i < self.n && j < self.n, "node index out of range");
                m[i * self.n + j] as i64
            }
            None => match &self.coords {
                Some(c) => euc_2d(c[i], c[j]) as i64,
                None => unreachable!("instance without a distance source"),
            },
        }
    }

    pub fn try_distance(&self, i: usize, j: usize) -> Result<i64> {
        if i >= self.n || j >= self.n {
            return Err(contract(format!(
                "node index ({i}, {j}) out of range for n = {}",
                self.n
            )));
        }
        Ok(self.distance(i, j))
    }

    /// Reads and parses a TSPLIB file from disk.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
        Ok(parse_tsplib(&text)?)
    }

    /// Serializes a coordinate instance back to TSPLIB text (1-based labels).
    /// Returns `None` for matrix instances.
    pub fn to_tsplib(&self) -> Option<String> {
        let coords = self.coords.as_ref()?;
        let mut out = String::new();
        let _ = writeln!(out, "NAME : {}", self.name);
        let _ = writeln!(out, "TYPE : TSP");
        let _ = writeln!(out, "DIMENSION : {}", self.n);
        let _ = writeln!(out, "EDGE_WEIGHT_TYPE : EUC_2D");
        let _ = writeln!(out, "NODE_COORD_SECTION");
        for (i, p) in coords.iter().enumerate() {
            let _ = writeln!(out, "{} {} {}", i + 1, p.x, p.y);
        }
        out.push_str("EOF\n");
        Some(out)
    }
}

/// The 8-node distance matrix used as the worked example for greedy
/// crossover. Its labels 1..8 are indices 0..7 here.
pub fn fig1_fixture() -> Instance {
    const FIG1: [[u32; 8]; 8] = [
        [0, 12, 19, 31, 22, 17, 23, 12],
        [12, 0, 15, 37, 21, 28, 35, 22],
        [19, 15, 0, 50, 36, 35, 35, 21],
        [31, 37, 50, 0, 20, 21, 37, 38],
        [22, 21, 36, 20, 0, 25, 40, 33],
        [17, 28, 35, 21, 25, 0, 16, 18],
        [23, 35, 35, 37, 40, 16, 0, 14],
        [12, 22, 21, 38, 33, 18, 14, 0],
    ];
    let rows: Vec<Vec<u32>> = FIG1.iter().map(|r| r.to_vec()).collect();
    Instance::from_matrix("fig1", &rows).expect("fixture matrix is valid")
}

#[derive(PartialEq)]
enum Mode {
    Header,
    Coords,
}

/// Parses TSPLIB95 text with `EDGE_WEIGHT_TYPE: EUC_2D`.
///
/// Keywords are case-insensitive and the `:` separator may carry any amount
/// of surrounding whitespace. Unrecognized specification keywords are
/// skipped; data sections other than `NODE_COORD_SECTION` are rejected.
pub fn parse_tsplib(text: &str) -> Result<Instance, ParseError> {
    let mut name: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut edge_type_seen = false;
    let mut entries: Vec<(usize, usize, Point)> = Vec::new();
    let mut mode = Mode::Header;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }

        if mode == Mode::Coords {
            let mut toks = line.split_whitespace();
            let first = toks.next().unwrap_or_default();
            if let Ok(label) = first.parse::<usize>() {
                let (x, y) = match (toks.next(), toks.next(), toks.next()) {
                    (Some(x), Some(y), None) => (parse_coord(x, lineno)?, parse_coord(y, lineno)?),
                    _ => {
                        return Err(ParseError::new(
                            lineno,
                            format!("expected `<label> <x> <y>`, found `{line}`"),
                        ))
                    }
                };
                entries.push((lineno, label, Point::new(x, y)));
                continue;
            }
            mode = Mode::Header;
        }

        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => {
                let mut it = line.splitn(2, char::is_whitespace);
                let k = it.next().unwrap_or_default();
                (k, it.next().map(str::trim).filter(|v| !v.is_empty()))
            }
        };
        let key = key.to_ascii_uppercase();
        let require = |v| require_value(v, &key, lineno);
        match key.as_str() {
            "NAME" => name = Some(require(value)?.to_string()),
            "TYPE" => {
                let v = require(value)?;
                if !v.eq_ignore_ascii_case("TSP") {
                    return Err(ParseError::new(lineno, format!("unsupported TYPE `{v}`")));
                }
            }
            "DIMENSION" => {
                let v = require(value)?;
                let n = v
                    .parse::<usize>()
                    .map_err(|_| ParseError::new(lineno, format!("invalid DIMENSION `{v}`")))?;
                if n < 3 {
                    return Err(ParseError::new(lineno, format!("DIMENSION {n} is below 3")));
                }
                dimension = Some(n);
            }
            "EDGE_WEIGHT_TYPE" => {
                let v = require(value)?;
                if !v.eq_ignore_ascii_case("EUC_2D") {
                    return Err(ParseError::new(
                        lineno,
                        format!("unsupported EDGE_WEIGHT_TYPE `{v}` (only EUC_2D)"),
                    ));
                }
                edge_type_seen = true;
            }
            "NODE_COORD_SECTION" => {
                if dimension.is_none() {
                    return Err(ParseError::new(lineno, "NODE_COORD_SECTION before DIMENSION"));
                }
                mode = Mode::Coords;
            }
            "EOF" => break,
            k if k.ends_with("_SECTION") => {
                return Err(ParseError::new(lineno, format!("unsupported section {k}")));
            }
            _ => {}
        }
    }

    let name = name.ok_or_else(|| ParseError::new(0, "missing NAME"))?;
    let n = dimension.ok_or_else(|| ParseError::new(0, "missing DIMENSION"))?;
    if !edge_type_seen {
        return Err(ParseError::new(0, "missing EDGE_WEIGHT_TYPE"));
    }
    if entries.len() > n {
        let (lineno, label, _) = entries[n];
        return Err(ParseError::new(lineno, format!("node {label} exceeds DIMENSION {n}")));
    }

    // Sized by the entries actually read, never by DIMENSION alone.
    let mut seen = HashSet::with_capacity(entries.len());
    for &(lineno, label, _) in &entries {
        if label == 0 || label > n {
            return Err(ParseError::new(lineno, format!("node label {label} outside 1..={n}")));
        }
        if !seen.insert(label) {
            return Err(ParseError::new(lineno, format!("duplicate node label {label}")));
        }
    }
    if entries.len() < n {
        let missing = (1..=n)
            .find(|l| !seen.contains(l))
            .expect("fewer labels than DIMENSION");
        return Err(ParseError::new(
            last_line,
            format!(
                "missing coordinates: DIMENSION is {n} but {} given (first missing label {missing})",
                entries.len()
            ),
        ));
    }
    let mut coords = vec![Point::new(0.0, 0.0); n];
    for &(_, label, p) in &entries {
        coords[label - 1] = p;
    }
    Instance::from_coords(name, coords).map_err(|e| ParseError::new(0, e.to_string()))
}

fn require_value<'a>(v: Option<&'a str>, key: &str, lineno: usize) -> Result<&'a str, ParseError> {
    v.filter(|v| !v.is_empty())
        .ok_or_else(|| ParseError::new(lineno, format!("keyword {key} has no value")))
}

fn parse_coord(tok: &str, lineno: usize) -> Result<f64, ParseError> {
    let v = tok
        .parse::<f64>()
        .map_err(|_| ParseError::new(lineno, format!("invalid coordinate `{tok}`")))?;
    if !in_range(v) {
        return Err(ParseError::new(lineno, format!("coordinate `{tok}` out of range")));
    }
    Ok(v)
}
