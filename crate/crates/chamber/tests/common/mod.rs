//! Shared fixtures and independent oracles for the integration suites.

#![allow(dead_code)]

use chamber::complex::{builtin, join, Builtin, Face, ThinChamberComplex};
use chamber::coxeter::{coxeter_complex, CoxeterComplexData, CoxeterMatrix, DEFAULT_ELEMENT_CAP};
use chamber::geodesic::shadow_contains_path;
use chamber::zigzag::{Flag, Zigzag};

pub fn simplex(n: usize) -> ThinChamberComplex {
    builtin(Builtin::Simplex(n)).unwrap()
}

pub fn cross(n: usize) -> ThinChamberComplex {
    builtin(Builtin::CrossPolytope(n)).unwrap()
}

pub fn bipyramid(m: usize) -> ThinChamberComplex {
    builtin(Builtin::Bipyramid(m)).unwrap()
}

pub fn sigma_complex(name: &str) -> CoxeterComplexData {
    let m = CoxeterMatrix::builtin(name).unwrap();
    coxeter_complex(&m, DEFAULT_ELEMENT_CAP).unwrap()
}

/// The standard non-deep fixture corpus for cross-cutting invariants.
pub fn corpus() -> Vec<(String, ThinChamberComplex)> {
    let mut out: Vec<(String, ThinChamberComplex)> = Vec::new();
    for n in 2..=5 {
        out.push((format!("alpha_{n}"), simplex(n)));
    }
    for n in 2..=4 {
        out.push((format!("beta_{n}"), cross(n)));
    }
    for m in 3..=7 {
        out.push((format!("bipyramid_{m}"), bipyramid(m)));
    }
    out.push(("join_a1_a1".into(), join(&simplex(1), &simplex(1)).unwrap()));
    out.push(("join_a1_a2".into(), join(&simplex(1), &simplex(2)).unwrap()));
    out.push(("join_a2_a3".into(), join(&simplex(2), &simplex(3)).unwrap()));
    for name in ["A2", "A3", "B3", "I2(5)", "H3"] {
        out.push((format!("sigma_{name}"), sigma_complex(name).complex.clone()));
    }
    out
}

/// Every flag of the complex: all vertex orders of every facet.
pub fn all_flags(delta: &ThinChamberComplex) -> Vec<Flag> {
    use itertools::Itertools;
    let n = delta.rank();
    let mut out = Vec::new();
    for facet in delta.facets() {
        for perm in facet.vertices().iter().copied().permutations(n) {
            out.push(Flag::new(delta, perm).unwrap());
        }
    }
    out
}

/// Independent oracle for geodesic extension: scan the full inventory for
/// zigzags whose facet shadows contain the path. Never calls the
/// constructive extension.
pub fn zigzags_containing_path(inventory: &[Zigzag], path: &[Face]) -> Vec<Zigzag> {
    inventory
        .iter()
        .filter(|z| shadow_contains_path(z, path))
        .cloned()
        .collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
