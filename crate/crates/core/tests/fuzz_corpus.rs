//! Replays the checked-in fuzz seeds through the same assertions the fuzz
//! targets make, and pins the expected verdict for each seed.

use std::path::{Path, PathBuf};

use igx_core::tour::{is_permutation, parse_label_list};
use igx_core::{parse_tsplib, Instance};

fn corpus(target: &str) -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "empty corpus {}", dir.display());
    files
}

fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

fn check_distances(inst: &Instance) {
    let n = inst.len();
    for i in 0..n {
        assert_eq!(inst.distance(i, i), 0);
        for j in 0..n {
            assert_eq!(inst.distance(i, j), inst.distance(j, i));
        }
    }
}

#[test]
fn parse_tsplib_seeds() {
    let accepted = ["half_rounding", "square_lowercase", "triangle"];
    for path in corpus("parse_tsplib") {
        let text = std::fs::read_to_string(&path).unwrap();
        let name = stem(&path);
        match parse_tsplib(&text) {
            Ok(inst) => {
                assert!(accepted.contains(&name.as_str()), "{name} should be rejected");
                check_distances(&inst);
            }
            Err(e) => {
                assert!(!accepted.contains(&name.as_str()), "{name} rejected: {e}");
                assert!(!e.message.is_empty());
            }
        }
    }
}

#[test]
fn tsplib_roundtrip_seeds() {
    for path in corpus("tsplib_roundtrip") {
        let text = std::fs::read_to_string(&path).unwrap();
        let inst = parse_tsplib(&text).unwrap();
        let again = parse_tsplib(&inst.to_tsplib().unwrap()).unwrap();
        assert_eq!(again.len(), inst.len());
        assert_eq!(again.coords(), inst.coords(), "{}", path.display());
    }
}

#[test]
fn parse_label_list_seeds() {
    let accepted = ["fig1_father", "fig1_mother_spaces", "three"];
    for path in corpus("parse_label_list") {
        let data = std::fs::read(&path).unwrap();
        let n = 3 + (data[0] as usize % 64);
        let text = std::str::from_utf8(&data[1..]).unwrap();
        let name = stem(&path);
        match parse_label_list(text, n) {
            Ok(order) => {
                assert!(accepted.contains(&name.as_str()), "{name} should be rejected");
                assert!(is_permutation(&order, n));
            }
            Err(e) => assert!(!accepted.contains(&name.as_str()), "{name} rejected: {e}"),
        }
    }
}

#[test]
fn real_tsplib_file() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/berlin52.tsp");
    let inst = Instance::load(&path).unwrap();
    assert_eq!(inst.name(), "berlin52");
    assert_eq!(inst.len(), 52);
    // (565, 575) to (25, 185): sqrt(443700) = 666.1
    assert_eq!(inst.distance(0, 1), 666);
    check_distances(&inst);
}
