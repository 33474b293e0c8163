//! Distance normal pairs and geodesics in the facet graph, the extension of
//! geodesics to zigzag shadows, z-connectedness and weak adjacency.
//!
//! Facets X, Y with `d(X,Y) ≤ n` form a distance normal pair when
//! `d(X,Y) = n - |X∩Y|`; for `d(X,Y) > n` the pair is distance normal when
//! some geodesic between them has every window of length at most `n`
//! satisfying that equality. Distance normal geodesics are exactly the
//! geodesics contained in zigzag facet shadows (in z-simple complexes), and
//! every one extends to at most `(n-m)!` zigzags, uniquely once `m > n`.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use crate::complex::{
    is_k_neighborly, is_simplex, AdjacencyGraph, ComplexError, Face, ThinChamberComplex,
};
use crate::zigzag::{zigzag_from_flag, Flag, Zigzag, ZigzagInventory};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GeodesicError {
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("the path is not a distance normal geodesic")]
    NotDistanceNormal,
    #[error("face {{{0}}} is not in the complex")]
    FaceNotInComplex(String),
    #[error("faces have ranks {0} and {1}, expected equal")]
    RankMismatch(usize, usize),
    #[error("rank {rank} out of range {min}..={max}")]
    RankOutOfRange { rank: usize, min: usize, max: usize },
    #[error("{0}")]
    AssertionFailed(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A walk in the facet graph: consecutive facets meet in a ridge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FacetPath {
    pub facets: Vec<Face>,
}

impl FacetPath {
    pub fn new(facets: Vec<Face>) -> FacetPath {
        FacetPath { facets }
    }

    pub fn len(&self) -> usize {
        self.facets.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }
}

/// Verdict for one facet pair.
#[derive(Clone, Debug)]
pub struct NormalityVerdict {
    pub pair_normal: bool,
    pub distance: usize,
    pub intersection: usize,
    pub witness_geodesic: Option<FacetPath>,
    pub reason: String,
}

fn facet_graph(delta: &ThinChamberComplex) -> AdjacencyGraph {
    delta
        .adjacency_graph(delta.rank() - 1)
        .expect("facet level always exists")
}

fn check_facet(delta: &ThinChamberComplex, x: &Face) -> Result<(), GeodesicError> {
    if delta.facet_index_of(x).is_none() {
        return Err(GeodesicError::FaceNotInComplex(
            delta.complex().face_labels(x),
        ));
    }
    Ok(())
}

/// All windows of length at most `n` satisfy the distance formula. On a
/// geodesic the path offset of two entries is their graph distance.
fn windowed_normal(n: usize, facets: &[Face]) -> bool {
    for i in 0..facets.len() {
        for j in i + 1..facets.len().min(i + n + 1) {
            if facets[i].intersection(&facets[j]).len() != n - (j - i) {
                return false;
            }
        }
    }
    true
}

/// Decides whether two facets form a distance normal pair, producing a
/// witness geodesic when they do.
pub fn is_distance_normal_pair(
    delta: &ThinChamberComplex,
    x: &Face,
    y: &Face,
) -> Result<NormalityVerdict, GeodesicError> {
    check_facet(delta, x)?;
    check_facet(delta, y)?;
    let n = delta.rank();
    let graph = facet_graph(delta);
    let xi = graph.node_index(x)?;
    let yi = graph.node_index(y)?;
    let dist_from_y = graph.distances_from(yi);
    let d = dist_from_y[xi as usize] as usize;
    let inter = x.intersection(y).len();
    if d <= n {
        let normal = d == n - inter;
        let witness = normal.then(|| {
            // Any geodesic works: a normal endpoint pair forces every window.
            let mut path = vec![xi];
            let mut cur = xi;
            while cur != yi {
                let next = *graph
                    .neighbors(cur)
                    .iter()
                    .find(|&&v| dist_from_y[v as usize] + 1 == dist_from_y[cur as usize])
                    .unwrap();
                path.push(next);
                cur = next;
            }
            let facets: Vec<Face> = path
                .iter()
                .map(|&i| graph.nodes()[i as usize].clone())
                .collect();
            debug_assert!(windowed_normal(n, &facets));
            FacetPath::new(facets)
        });
        return Ok(NormalityVerdict {
            pair_normal: normal,
            distance: d,
            intersection: inter,
            witness_geodesic: witness,
            reason: if normal {
                format!("d = {d} = n - |X∩Y|")
            } else {
                format!("d = {d} exceeds n - |X∩Y| = {}", n - inter)
            },
        });
    }
    // Far pair: search the geodesic DAG for a windowed-normal geodesic.
    let witness = find_normal_geodesic(delta, &graph, xi, yi, &dist_from_y);
    Ok(match witness {
        Some(path) => NormalityVerdict {
            pair_normal: true,
            distance: d,
            intersection: inter,
            witness_geodesic: Some(path),
            reason: format!("d = {d} > n; a distance normal geodesic exists"),
        },
        None => NormalityVerdict {
            pair_normal: false,
            distance: d,
            intersection: inter,
            witness_geodesic: None,
            reason: format!("d = {d} > n; no geodesic is distance normal"),
        },
    })
}

/// DFS over the BFS-layer DAG towards `y`, keeping the trailing window of at
/// most `n` facets and memoizing windows that cannot be completed.
fn find_normal_geodesic(
    delta: &ThinChamberComplex,
    graph: &AdjacencyGraph,
    x: u32,
    y: u32,
    dist_from_y: &[u32],
) -> Option<FacetPath> {
    let n = delta.rank();
    let mut dead: HashSet<Vec<u32>> = HashSet::new();

    fn dfs(
        graph: &AdjacencyGraph,
        n: usize,
        y: u32,
        dist_from_y: &[u32],
        path: &mut Vec<u32>,
        dead: &mut HashSet<Vec<u32>>,
    ) -> bool {
        let cur = *path.last().unwrap();
        if cur == y {
            return true;
        }
        let window_start = path.len().saturating_sub(n);
        let key = path[window_start..].to_vec();
        if dead.contains(&key) {
            return false;
        }
        for &v in graph.neighbors(cur) {
            if dist_from_y[v as usize] + 1 != dist_from_y[cur as usize] {
                continue;
            }
            let vface = &graph.nodes()[v as usize];
            let ok = path[window_start..].iter().enumerate().all(|(off, &u)| {
                let gap = path.len() - window_start - off;
                gap > n || graph.nodes()[u as usize].intersection(vface).len() == n - gap
            });
            if !ok {
                continue;
            }
            path.push(v);
            if dfs(graph, n, y, dist_from_y, path, dead) {
                return true;
            }
            path.pop();
        }
        dead.insert(key);
        false
    }

    let mut path = vec![x];
    if dfs(graph, n, y, dist_from_y, &mut path, &mut dead) {
        Some(FacetPath::new(
            path.iter()
                .map(|&i| graph.nodes()[i as usize].clone())
                .collect(),
        ))
    } else {
        None
    }
}

/// True iff the path is a geodesic whose windows of length at most `n` all
/// satisfy the distance formula.
pub fn is_distance_normal_geodesic(
    delta: &ThinChamberComplex,
    p: &FacetPath,
) -> Result<bool, GeodesicError> {
    validate_path(delta, p)?;
    let n = delta.rank();
    let graph = facet_graph(delta);
    let a = graph.node_index(&p.facets[0])?;
    let dist = graph.distances_from(a);
    let b = graph.node_index(p.facets.last().unwrap())?;
    if dist[b as usize] as usize != p.len() {
        return Ok(false);
    }
    Ok(windowed_normal(n, &p.facets))
}

fn validate_path(delta: &ThinChamberComplex, p: &FacetPath) -> Result<(), GeodesicError> {
    if p.facets.is_empty() {
        return Err(GeodesicError::NotAPath("empty path".into()));
    }
    for f in &p.facets {
        check_facet(delta, f).map_err(|_| {
            GeodesicError::NotAPath(format!(
                "{{{}}} is not a facet",
                delta.complex().face_labels(f)
            ))
        })?;
    }
    let n = delta.rank();
    for w in p.facets.windows(2) {
        if w[0].intersection(&w[1]).len() != n - 1 {
            return Err(GeodesicError::NotAPath(format!(
                "{{{}}} and {{{}}} are not adjacent",
                delta.complex().face_labels(&w[0]),
                delta.complex().face_labels(&w[1])
            )));
        }
    }
    Ok(())
}

/// Whether the facet shadow contains the path contiguously, in either cyclic
/// direction.
pub fn shadow_contains_path(z: &Zigzag, p: &[Face]) -> bool {
    let n = z.flags()[0].rank();
    let shadow: Vec<Face> = z.flags().iter().map(|f| f.face_at(n - 1)).collect();
    let l = shadow.len();
    let reversed: Vec<Face> = shadow.iter().rev().cloned().collect();
    for seq in [&shadow, &reversed] {
        for start in 0..l {
            if p.iter()
                .enumerate()
                .all(|(i, f)| seq[(start + i) % l] == *f)
            {
                return true;
            }
        }
    }
    false
}

/// The zigzags whose facet shadows contain the geodesic, built from the
/// geodesic itself: the dropped vertex of each step is forced, and only the
/// tail of the first facet may be permuted.
pub fn zigzags_through_geodesic(
    delta: &ThinChamberComplex,
    p: &FacetPath,
) -> Result<Vec<Zigzag>, GeodesicError> {
    if !is_distance_normal_geodesic(delta, p)? {
        return Err(GeodesicError::NotDistanceNormal);
    }
    let n = delta.rank();
    let m = p.len();
    let window = &p.facets[..p.facets.len().min(n + 1)];
    let mw = window.len() - 1; // min(m, n)

    let mut seeds: Vec<Vec<crate::complex::VertexId>> = Vec::new();
    if mw == 0 {
        for perm in window[0].vertices().iter().copied().permutations(n) {
            seeds.push(perm);
        }
    } else {
        let mut prefix = Vec::with_capacity(mw);
        for i in 0..mw - 1 {
            let dropped: Vec<_> = window[i]
                .vertices()
                .iter()
                .copied()
                .filter(|v| !window[i + 1].contains(*v))
                .collect();
            debug_assert_eq!(dropped.len(), 1);
            prefix.push(dropped[0]);
        }
        let pivot: Vec<_> = window[mw - 1]
            .vertices()
            .iter()
            .copied()
            .filter(|v| !window[mw].contains(*v))
            .collect();
        debug_assert_eq!(pivot.len(), 1);
        let core: Vec<_> = window[0]
            .vertices()
            .iter()
            .copied()
            .filter(|v| window[mw].contains(*v))
            .collect();
        debug_assert_eq!(core.len(), n - mw);
        if core.is_empty() {
            let mut seq = prefix.clone();
            seq.push(pivot[0]);
            seeds.push(seq);
        } else {
            for tail in core.iter().copied().permutations(core.len()) {
                let mut seq = prefix.clone();
                seq.push(pivot[0]);
                seq.extend(tail);
                seeds.push(seq);
            }
        }
    }

    let mut found: BTreeSet<Zigzag> = BTreeSet::new();
    for seq in seeds {
        let flag = Flag::new(delta, seq)
            .map_err(|e| GeodesicError::AssertionFailed(format!("seed is not a flag: {e}")))?;
        let z = zigzag_from_flag(delta, &flag);
        assert!(
            shadow_contains_path(&z, &p.facets),
            "constructed zigzag misses the geodesic"
        );
        found.insert(z);
    }
    assert!(!found.is_empty());
    if m > n {
        assert_eq!(found.len(), 1, "far geodesics extend uniquely");
    } else {
        let bound: usize = (1..=n - m).product();
        assert!(found.len() <= bound.max(1));
    }
    Ok(found.into_iter().collect())
}

/// Every geodesic between two facets, as paths in the facet graph.
pub fn all_geodesics(
    delta: &ThinChamberComplex,
    x: &Face,
    y: &Face,
) -> Result<Vec<FacetPath>, GeodesicError> {
    check_facet(delta, x)?;
    check_facet(delta, y)?;
    let graph = facet_graph(delta);
    let xi = graph.node_index(x)?;
    let yi = graph.node_index(y)?;
    let dist_from_y = graph.distances_from(yi);
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![vec![xi]];
    while let Some(path) = stack.pop() {
        let cur = *path.last().unwrap();
        if cur == yi {
            out.push(FacetPath::new(
                path.iter()
                    .map(|&i| graph.nodes()[i as usize].clone())
                    .collect(),
            ));
            continue;
        }
        for &v in graph.neighbors(cur) {
            if dist_from_y[v as usize] + 1 == dist_from_y[cur as usize] {
                let mut next = path.clone();
                next.push(v);
                stack.push(next);
            }
        }
    }
    Ok(out)
}

/// True iff some zigzag has flags containing both faces.
pub fn are_z_connected(
    delta: &ThinChamberComplex,
    x: &Face,
    y: &Face,
) -> Result<bool, GeodesicError> {
    for f in [x, y] {
        if !delta.complex().is_face(f) {
            return Err(GeodesicError::FaceNotInComplex(
                delta.complex().face_labels(f),
            ));
        }
    }
    Ok(ZigzagInventory::build(delta).connects(x, y))
}

/// Weak adjacency of same-rank faces: the intersection drops exactly one
/// rank and no face contains both.
pub fn weakly_adjacent(
    delta: &ThinChamberComplex,
    x: &Face,
    y: &Face,
) -> Result<bool, GeodesicError> {
    let n = delta.rank();
    for f in [x, y] {
        if !delta.complex().is_face(f) {
            return Err(GeodesicError::FaceNotInComplex(
                delta.complex().face_labels(f),
            ));
        }
    }
    if x.len() != y.len() {
        return Err(GeodesicError::RankMismatch(x.len() - 1, y.len() - 1));
    }
    let k = x.len() - 1;
    if k < 1 || k > n.saturating_sub(2) {
        return Err(GeodesicError::RankOutOfRange {
            rank: k,
            min: 1,
            max: n.saturating_sub(2),
        });
    }
    Ok(x.intersection(y).len() == k && !delta.complex().is_face(&x.union(y)))
}

#[derive(Clone, Debug)]
pub struct NeighborlyCheck {
    pub k: usize,
    /// z-simple and all same-rank pairs z-connected for every rank `j ≤ k`.
    pub hypothesis: bool,
    /// `(k+2)`-neighborly.
    pub conclusion: bool,
}

/// Exhaustive consequences of z-connectedness for non-maximal faces.
#[derive(Clone, Debug)]
pub struct ZConnectednessReport {
    pub rank: usize,
    pub z_simple: bool,
    /// Pairs of weakly adjacent k-faces found, per rank `1..=n-2`.
    pub weak_pairs: Vec<(usize, usize)>,
    pub neighborly: Vec<NeighborlyCheck>,
    /// Set when some hypothesis rank exceeds `⌊n/2⌋ - 2`: the complex must
    /// then be the simplex.
    pub simplex_conclusion: Option<bool>,
}

/// Checks that no weakly adjacent pair is connected by a simple zigzag, that
/// z-connectedness up to rank k forces (k+2)-neighborliness, and the simplex
/// conclusion for large k. Violations are hard errors with a counterexample.
pub fn z_connectedness_report(
    delta: &ThinChamberComplex,
) -> Result<ZConnectednessReport, GeodesicError> {
    let n = delta.rank();
    let inventory = ZigzagInventory::build(delta);
    let z_simple = inventory.zigzags().iter().all(|z| z.is_simple());

    let mut weak_pairs = Vec::new();
    for k in 1..=n.saturating_sub(2) {
        let faces = delta.complex().faces_at_level(k)?;
        let mut count = 0usize;
        for i in 0..faces.len() {
            for j in i + 1..faces.len() {
                let (x, y) = (&faces[i], &faces[j]);
                if x.intersection(y).len() == k && !delta.complex().is_face(&x.union(y)) {
                    count += 1;
                    if inventory.connects_simply(x, y) {
                        return Err(GeodesicError::AssertionFailed(format!(
                            "weakly adjacent {{{}}} and {{{}}} lie on a simple zigzag",
                            delta.complex().face_labels(x),
                            delta.complex().face_labels(y)
                        )));
                    }
                }
            }
        }
        weak_pairs.push((k, count));
    }

    let mut all_connected_upto = true;
    let mut neighborly = Vec::new();
    let mut best_hypothesis_rank: Option<usize> = None;
    for k in 1..n.saturating_sub(1) {
        if all_connected_upto {
            let faces = delta.complex().faces_at_level(k)?;
            'outer: for i in 0..faces.len() {
                for j in i + 1..faces.len() {
                    if !inventory.connects(&faces[i], &faces[j]) {
                        all_connected_upto = false;
                        break 'outer;
                    }
                }
            }
        }
        let hypothesis = z_simple && all_connected_upto;
        let conclusion = is_k_neighborly(delta, k + 2);
        if hypothesis && !conclusion {
            return Err(GeodesicError::AssertionFailed(format!(
                "faces of rank up to {k} are z-connected but the complex is not {}-neighborly",
                k + 2
            )));
        }
        if hypothesis {
            best_hypothesis_rank = Some(k);
        }
        neighborly.push(NeighborlyCheck {
            k,
            hypothesis,
            conclusion,
        });
    }

    let simplex_conclusion = match best_hypothesis_rank {
        Some(k) if k as isize > n as isize / 2 - 2 => {
            let is_sx = is_simplex(delta);
            if !is_sx {
                return Err(GeodesicError::AssertionFailed(format!(
                    "z-connected through rank {k} > n/2 - 2 but the complex is not the simplex"
                )));
            }
            Some(true)
        }
        _ => None,
    };

    Ok(ZConnectednessReport {
        rank: n,
        z_simple,
        weak_pairs,
        neighborly,
        simplex_conclusion,
    })
}

/// BFS distances between every facet pair; keyed by canonical node order.
pub fn facet_distance_matrix(delta: &ThinChamberComplex) -> (AdjacencyGraph, Vec<Vec<u32>>) {
    let graph = facet_graph(delta);
    let rows = (0..graph.num_nodes() as u32)
        .map(|i| graph.distances_from(i))
        .collect();
    (graph, rows)
}

/// Convenience: distance in the facet graph.
pub fn facet_distance(
    delta: &ThinChamberComplex,
    x: &Face,
    y: &Face,
) -> Result<usize, GeodesicError> {
    check_facet(delta, x)?;
    check_facet(delta, y)?;
    let graph = facet_graph(delta);
    Ok(crate::complex::path_distance(&graph, x, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{builtin, Builtin};
    use crate::coxeter::{coxeter_complex, CoxeterMatrix, GroupTable};
    use crate::zigzag::enumerate_zigzags;

    fn face(delta: &ThinChamberComplex, labels: &[&str]) -> Face {
        delta.complex().face_by_labels(labels).unwrap()
    }

    #[test]
    fn adjacent_and_distance_two_pairs_are_normal() {
        let bp = builtin(Builtin::Bipyramid(6)).unwrap();
        let x = face(&bp, &["a", "1", "2"]);
        let adj = face(&bp, &["a", "2", "3"]);
        let v = is_distance_normal_pair(&bp, &x, &adj).unwrap();
        assert!(v.pair_normal);
        assert_eq!(v.distance, 1);
        let two = face(&bp, &["a", "3", "4"]);
        let v = is_distance_normal_pair(&bp, &x, &two).unwrap();
        assert!(v.pair_normal);
        assert_eq!(v.distance, 2);
    }

    #[test]
    fn bipyramid_has_non_normal_pairs() {
        let bp = builtin(Builtin::Bipyramid(6)).unwrap();
        let x = face(&bp, &["a", "1", "2"]);
        let y = face(&bp, &["a", "4", "5"]);
        let v = is_distance_normal_pair(&bp, &x, &y).unwrap();
        assert!(!v.pair_normal);
        assert_eq!(v.distance, 3);
        assert_eq!(v.intersection, 1);
    }

    #[test]
    fn non_commuting_triple_is_not_normal_in_rank_3() {
        let m = CoxeterMatrix::builtin("A3").unwrap();
        let data = coxeter_complex(&m, 1000).unwrap();
        let e = data.facet_of_element(GroupTable::IDENTITY).clone();
        let w = data.table.apply_word(0, &[0, 1, 0]);
        let v = is_distance_normal_pair(&data.complex, &e, data.facet_of_element(w)).unwrap();
        assert!(!v.pair_normal);
        assert_eq!(v.distance, 3);
        assert_eq!(v.intersection, 1); // n-2 common vertices
                                       // With distinct letters instead, the pair is normal.
        let u = data.table.apply_word(0, &[0, 1, 2]);
        let v = is_distance_normal_pair(&data.complex, &e, data.facet_of_element(u)).unwrap();
        assert!(v.pair_normal);
    }

    #[test]
    fn hexagon_far_pair_is_normal_by_witness() {
        // In Σ(A2) the longest element sits at distance 3 > n = 2, so the
        // far-pair rule applies and a windowed-normal geodesic exists.
        let m = CoxeterMatrix::builtin("A2").unwrap();
        let data = coxeter_complex(&m, 1000).unwrap();
        let e = data.facet_of_element(GroupTable::IDENTITY).clone();
        let w0 = data.table.apply_word(0, &[0, 1, 0]);
        let v = is_distance_normal_pair(&data.complex, &e, data.facet_of_element(w0)).unwrap();
        assert_eq!(v.distance, 3);
        assert!(v.pair_normal);
        let witness = v.witness_geodesic.unwrap();
        assert!(is_distance_normal_geodesic(&data.complex, &witness).unwrap());
    }

    #[test]
    fn geodesic_normality_checks() {
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        let single = FacetPath::new(vec![
            face(&b3, &["1", "2", "3"]),
            face(&b3, &["1", "2", "-3"]),
        ]);
        assert!(is_distance_normal_geodesic(&b3, &single).unwrap());
        let antipodal = FacetPath::new(vec![
            face(&b3, &["1", "2", "3"]),
            face(&b3, &["1", "2", "-3"]),
            face(&b3, &["1", "-2", "-3"]),
            face(&b3, &["-1", "-2", "-3"]),
        ]);
        assert!(is_distance_normal_geodesic(&b3, &antipodal).unwrap());

        let m = CoxeterMatrix::builtin("A3").unwrap();
        let data = coxeter_complex(&m, 1000).unwrap();
        let path = FacetPath::new(
            [vec![], vec![0], vec![0, 1], vec![0, 1, 0]]
                .iter()
                .map(|w| data.facet_of_element(data.table.apply_word(0, w)).clone())
                .collect(),
        );
        assert!(!is_distance_normal_geodesic(&data.complex, &path).unwrap());

        let not_a_path = FacetPath::new(vec![
            face(&b3, &["1", "2", "3"]),
            face(&b3, &["-1", "-2", "-3"]),
        ]);
        assert!(matches!(
            is_distance_normal_geodesic(&b3, &not_a_path),
            Err(GeodesicError::NotAPath(_))
        ));
    }

    #[test]
    fn adjacent_pair_extends_to_few_zigzags() {
        let a3 = builtin(Builtin::Simplex(3)).unwrap();
        let p = FacetPath::new(vec![
            face(&a3, &["1", "2", "3"]),
            face(&a3, &["1", "2", "4"]),
        ]);
        let zs = zigzags_through_geodesic(&a3, &p).unwrap();
        assert!(zs.len() <= 2);
        for z in &zs {
            assert!(shadow_contains_path(z, &p.facets));
        }
        // Independent scan over the full zigzag inventory agrees.
        let brute: Vec<Zigzag> = enumerate_zigzags(&a3)
            .into_iter()
            .filter(|z| shadow_contains_path(z, &p.facets))
            .collect();
        assert_eq!(zs, brute);
    }

    #[test]
    fn far_geodesic_extends_uniquely() {
        // A facet-shadow prefix of Σ(A3): e, s1, s1s2, s1s2s3, s1s2s3s1 is a
        // geodesic of length 4 > n = 3.
        let m = CoxeterMatrix::builtin("A3").unwrap();
        let data = coxeter_complex(&m, 1000).unwrap();
        let words: [&[usize]; 5] = [&[], &[0], &[0, 1], &[0, 1, 2], &[0, 1, 2, 0]];
        let p = FacetPath::new(
            words
                .iter()
                .map(|w| data.facet_of_element(data.table.apply_word(0, w)).clone())
                .collect(),
        );
        assert!(is_distance_normal_geodesic(&data.complex, &p).unwrap());
        let zs = zigzags_through_geodesic(&data.complex, &p).unwrap();
        assert_eq!(zs.len(), 1);
        let brute: Vec<Zigzag> = enumerate_zigzags(&data.complex)
            .into_iter()
            .filter(|z| shadow_contains_path(z, &p.facets))
            .collect();
        assert_eq!(zs, brute);
    }

    #[test]
    fn non_normal_geodesic_is_rejected() {
        let bp = builtin(Builtin::Bipyramid(6)).unwrap();
        let p = FacetPath::new(vec![
            face(&bp, &["a", "1", "2"]),
            face(&bp, &["a", "2", "3"]),
            face(&bp, &["a", "3", "4"]),
            face(&bp, &["a", "4", "5"]),
        ]);
        assert_eq!(
            zigzags_through_geodesic(&bp, &p),
            Err(GeodesicError::NotDistanceNormal)
        );
    }

    #[test]
    fn simplex_faces_are_all_z_connected() {
        let a4 = builtin(Builtin::Simplex(4)).unwrap();
        for k in 0..4 {
            let faces = a4.complex().faces_at_level(k).unwrap();
            for x in &faces {
                for y in &faces {
                    assert!(are_z_connected(&a4, x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn cross_polytope_split_edges_are_not_z_connected() {
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        let x = face(&b3, &["1", "2"]);
        let y = face(&b3, &["1", "-2"]);
        assert!(!are_z_connected(&b3, &x, &y).unwrap());
        let b4 = builtin(Builtin::CrossPolytope(4)).unwrap();
        let x = face(&b4, &["1", "2", "3"]);
        let y = face(&b4, &["1", "2", "-3"]);
        assert!(!are_z_connected(&b4, &x, &y).unwrap());
        assert!(matches!(
            are_z_connected(
                &b4,
                &face(&b4, &["1", "2"]),
                &Face::new(vec![
                    b4.complex().vertex_by_label("1").unwrap(),
                    b4.complex().vertex_by_label("-1").unwrap(),
                ])
            ),
            Err(GeodesicError::FaceNotInComplex(_))
        ));
    }

    #[test]
    fn weak_adjacency_cases() {
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        assert!(weakly_adjacent(&b3, &face(&b3, &["1", "2"]), &face(&b3, &["1", "-2"])).unwrap());
        let a3 = builtin(Builtin::Simplex(3)).unwrap();
        assert!(!weakly_adjacent(&a3, &face(&a3, &["1", "2"]), &face(&a3, &["2", "3"])).unwrap());
        let b4 = builtin(Builtin::CrossPolytope(4)).unwrap();
        assert!(!weakly_adjacent(&b4, &face(&b4, &["1", "2"]), &face(&b4, &["3", "4"])).unwrap());
        assert!(matches!(
            weakly_adjacent(&b4, &face(&b4, &["1", "2"]), &face(&b4, &["1", "2", "3"])),
            Err(GeodesicError::RankMismatch(1, 2))
        ));
        assert!(matches!(
            weakly_adjacent(&b3, &face(&b3, &["1"]), &face(&b3, &["2"])),
            Err(GeodesicError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn z_connectedness_reports() {
        // β4: weakly adjacent pairs exist and never share a simple zigzag.
        let b4 = builtin(Builtin::CrossPolytope(4)).unwrap();
        let report = z_connectedness_report(&b4).unwrap();
        assert!(report.z_simple);
        assert!(report.weak_pairs.iter().any(|&(_, c)| c > 0));
        assert!(report.neighborly.iter().all(|c| !c.hypothesis));

        // The simplex satisfies every hypothesis and is its own conclusion.
        let a4 = builtin(Builtin::Simplex(4)).unwrap();
        let report = z_connectedness_report(&a4).unwrap();
        assert!(report.z_simple);
        assert!(report
            .neighborly
            .iter()
            .all(|c| c.hypothesis && c.conclusion));
        assert_eq!(report.simplex_conclusion, Some(true));

        let bp = builtin(Builtin::Bipyramid(6)).unwrap();
        let report = z_connectedness_report(&bp).unwrap();
        assert!(report.weak_pairs.iter().any(|&(_, c)| c > 0));
    }

    #[test]
    fn all_geodesics_in_the_cube_graph() {
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        let x = face(&b3, &["1", "2", "3"]);
        let y = face(&b3, &["-1", "-2", "-3"]);
        let geos = all_geodesics(&b3, &x, &y).unwrap();
        assert_eq!(geos.len(), 6); // 3! monotone lattice paths
        for g in &geos {
            assert!(is_distance_normal_geodesic(&b3, g).unwrap());
        }
    }
}
