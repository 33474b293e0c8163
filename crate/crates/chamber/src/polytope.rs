//! Abstract polytopes, their flag complexes and generalized zigzags.
//!
//! An abstract polytope of rank `n` is a ranked poset with formal least and
//! greatest faces in which every maximal chain has `n` proper faces, every
//! rank-2 interval is a diamond, and every section is flag-connected. Its
//! flags carry operators σ_i exchanging one face at a time; for a permutation
//! δ the operator `T_δ = σ_{δ(n-1)} ⋯ σ_{δ(0)}` generates the generalized
//! zigzags, which correspond one-to-one with the zigzags of the flag complex.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use itertools::Itertools;

use crate::complex::{
    build_complex, validate_thin_chamber, ComplexError, Face, ThinChamberComplex,
};
use crate::coxeter::{
    coset_label, enumerate_group, parabolic_cosets, CoxeterError, CoxeterMatrix,
    DEFAULT_ELEMENT_CAP,
};
use crate::zigzag::{enumerate_zigzags, ZigzagError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("not an abstract polytope: {0}")]
    InvalidPolytope(String),
    #[error("rank {i} out of range for rank-{rank} polytope")]
    RankOutOfRange { i: usize, rank: usize },
    #[error("the Coxeter matrix is not a string diagram")]
    NotStringDiagram,
    #[error("group exceeds the element budget {cap}")]
    GroupTooLarge { cap: usize },
    #[error("flag-complex correspondence failed: {0}")]
    CorrespondenceFailure(String),
    #[error("unknown polytope name `{0}`")]
    UnknownName(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Zigzag(#[from] ZigzagError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A ranked incidence poset between consecutive ranks, validated as an
/// abstract polytope. The formal least and greatest faces stay implicit.
#[derive(Clone, Debug)]
pub struct AbstractPolytope {
    rank: usize,
    labels: Vec<Vec<String>>,
    /// `up[k][f]`: the (k+1)-faces incident to the k-face `f`, sorted.
    up: Vec<Vec<Vec<u32>>>,
    /// `down[k][f]`: the (k-1)-faces incident to the k-face `f`, sorted.
    down: Vec<Vec<Vec<u32>>>,
}

/// A face bounding a section; `None` is the formal least or greatest face.
type SectionBound = Option<(usize, u32)>;

/// A maximal chain: one face per rank `0..n-1`, consecutive faces incident.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PolytopeFlag {
    chain: Vec<u32>,
}

impl PolytopeFlag {
    pub fn chain(&self) -> &[u32] {
        &self.chain
    }

    pub fn face_at(&self, k: usize) -> u32 {
        self.chain[k]
    }
}

impl AbstractPolytope {
    /// Builds and validates a polytope from per-rank face labels and the
    /// incidence pairs `(k, low, high)` between ranks `k` and `k+1`.
    pub fn new(
        labels: Vec<Vec<String>>,
        incidence: &[(usize, u32, u32)],
    ) -> Result<AbstractPolytope, PolytopeError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(PolytopeError::InvalidPolytope(
                "rank must be positive".into(),
            ));
        }
        for (k, ls) in labels.iter().enumerate() {
            if ls.is_empty() {
                return Err(PolytopeError::InvalidPolytope(format!(
                    "no faces of rank {k}"
                )));
            }
            let mut dedup: HashSet<&String> = HashSet::new();
            for l in ls {
                if !dedup.insert(l) {
                    return Err(PolytopeError::InvalidPolytope(format!(
                        "label `{l}` repeats at rank {k}"
                    )));
                }
            }
        }
        let counts: Vec<usize> = labels.iter().map(|l| l.len()).collect();
        let mut up: Vec<Vec<Vec<u32>>> = counts.iter().map(|&c| vec![Vec::new(); c]).collect();
        let mut down: Vec<Vec<Vec<u32>>> = counts.iter().map(|&c| vec![Vec::new(); c]).collect();
        for &(k, low, high) in incidence {
            if k + 1 >= rank {
                return Err(PolytopeError::InvalidPolytope(format!(
                    "incidence rank {k} out of range"
                )));
            }
            if low as usize >= counts[k] || high as usize >= counts[k + 1] {
                return Err(PolytopeError::InvalidPolytope(format!(
                    "incidence ({k},{low},{high}) indexes a missing face"
                )));
            }
            up[k][low as usize].push(high);
            down[k + 1][high as usize].push(low);
        }
        for lists in up.iter_mut().chain(down.iter_mut()) {
            for l in lists {
                l.sort_unstable();
                l.dedup();
            }
        }
        let polytope = AbstractPolytope {
            rank,
            labels,
            up,
            down,
        };
        polytope.check_diamond()?;
        polytope.check_strong_connectivity()?;
        Ok(polytope)
    }

    fn check_diamond(&self) -> Result<(), PolytopeError> {
        let n = self.rank;
        // Chains may not dead-end: every face continues both ways.
        for k in 0..n {
            for f in 0..self.num_faces(k) {
                if k > 0 && self.down[k][f].is_empty() {
                    return Err(PolytopeError::InvalidPolytope(format!(
                        "face {f} of rank {k} has nothing below it"
                    )));
                }
                if k + 1 < n && self.up[k][f].is_empty() {
                    return Err(PolytopeError::InvalidPolytope(format!(
                        "face {f} of rank {k} has nothing above it"
                    )));
                }
            }
        }
        if n == 1 {
            if self.num_faces(0) != 2 {
                return Err(PolytopeError::InvalidPolytope(format!(
                    "a rank-1 polytope has exactly 2 vertices, found {}",
                    self.num_faces(0)
                )));
            }
            return Ok(());
        }
        for z in 0..self.num_faces(1) {
            if self.down[1][z].len() != 2 {
                return Err(PolytopeError::InvalidPolytope(format!(
                    "face {z} of rank 1 has {} vertices, the diamond rule wants 2",
                    self.down[1][z].len()
                )));
            }
        }
        for y in 0..self.num_faces(n - 2) {
            if self.up[n - 2][y].len() != 2 {
                return Err(PolytopeError::InvalidPolytope(format!(
                    "face {y} of rank {} lies in {} facets, the diamond rule wants 2",
                    n - 2,
                    self.up[n - 2][y].len()
                )));
            }
        }
        for k in 1..n.saturating_sub(1) {
            for z in 0..self.num_faces(k + 1) {
                let mut counts: HashMap<u32, usize> = HashMap::new();
                for &x in &self.down[k + 1][z] {
                    for &y in &self.down[k][x as usize] {
                        *counts.entry(y).or_default() += 1;
                    }
                }
                if let Some((&y, &c)) = counts.iter().find(|(_, &c)| c != 2) {
                    return Err(PolytopeError::InvalidPolytope(format!(
                        "interval from rank-{} face {y} to rank-{} face {z} holds {c} faces, \
                         the diamond rule wants 2",
                        k - 1,
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Strong connectivity: the flags of every section spanning at least two
    /// intermediate ranks form a connected exchange graph.
    fn check_strong_connectivity(&self) -> Result<(), PolytopeError> {
        let n = self.rank as isize;
        let mut sections: Vec<(SectionBound, SectionBound)> = Vec::new();
        // Formal bottom to formal top: the whole polytope.
        if n >= 2 {
            sections.push((None, None));
        }
        for b in 0..self.rank {
            // Formal bottom to a proper face.
            if b as isize - (-1) >= 3 {
                for z in 0..self.num_faces(b) as u32 {
                    sections.push((None, Some((b, z))));
                }
            }
            // A proper face to the formal top.
            if n - b as isize >= 3 {
                for y in 0..self.num_faces(b) as u32 {
                    sections.push((Some((b, y)), None));
                }
            }
        }
        for a in 0..self.rank {
            for b in a + 3..self.rank {
                for y in 0..self.num_faces(a) as u32 {
                    for z in self.faces_above(a, y, b) {
                        sections.push((Some((a, y)), Some((b, z))));
                    }
                }
            }
        }
        for (lo, hi) in sections {
            let (count, connected) = self.section_flag_connectivity(lo, hi);
            if count == 0 {
                return Err(PolytopeError::InvalidPolytope(format!(
                    "section {lo:?}..{hi:?} has no flags"
                )));
            }
            if !connected {
                return Err(PolytopeError::InvalidPolytope(format!(
                    "section {lo:?}..{hi:?} is not flag-connected"
                )));
            }
        }
        Ok(())
    }

    /// Faces of rank `b` above the rank-`a` face `y`, via cover chains.
    fn faces_above(&self, a: usize, y: u32, b: usize) -> Vec<u32> {
        let mut frontier = vec![y];
        for r in a..b {
            let mut next: Vec<u32> = frontier
                .iter()
                .flat_map(|&f| self.up[r][f as usize].iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        frontier
    }

    fn faces_below(&self, b: usize, z: u32, a: usize) -> Vec<u32> {
        let mut frontier = vec![z];
        for r in (a + 1..=b).rev() {
            let mut next: Vec<u32> = frontier
                .iter()
                .flat_map(|&f| self.down[r][f as usize].iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        frontier
    }

    /// Enumerates the flags of a section and BFSes its exchange graph.
    /// Returns (number of flags, connected).
    fn section_flag_connectivity(
        &self,
        lo: Option<(usize, u32)>,
        hi: Option<(usize, u32)>,
    ) -> (usize, bool) {
        let lo_rank = lo.map(|(r, _)| r as isize).unwrap_or(-1);
        let hi_rank = hi.map(|(r, _)| r as isize).unwrap_or(self.rank as isize);
        let first = (lo_rank + 1) as usize;
        let last = (hi_rank - 1) as usize;
        let width = last + 1 - first;
        debug_assert!(width >= 2 || (lo.is_none() && hi.is_none() && self.rank == 1));

        // Membership of the boundary constraints is only needed at the ends;
        // interior faces inherit it from their neighbors in the chain.
        let start_faces: Vec<u32> = match (lo, hi) {
            (Some((r, y)), _) => {
                let above: Vec<u32> = self.up[r][y as usize].clone();
                match hi {
                    Some((rh, z)) => {
                        let below: HashSet<u32> =
                            self.faces_below(rh, z, first).into_iter().collect();
                        above.into_iter().filter(|f| below.contains(f)).collect()
                    }
                    None => above,
                }
            }
            (None, Some((rh, z))) => self.faces_below(rh, z, first),
            (None, None) => (0..self.num_faces(first) as u32).collect(),
        };

        let mut flags: Vec<Vec<u32>> = Vec::new();
        let mut stack: Vec<Vec<u32>> = start_faces.iter().map(|&f| vec![f]).collect();
        while let Some(chain) = stack.pop() {
            if chain.len() == width {
                flags.push(chain);
                continue;
            }
            let r = first + chain.len() - 1;
            let current = *chain.last().unwrap();
            // Stay below `hi`: the constraint binds once the next rank
            // touches it (last + 1 is always hi's rank).
            for &g in &self.up[r][current as usize] {
                let admissible = match hi {
                    Some((rh, z)) if r + 2 == rh => {
                        self.down[rh][z as usize].binary_search(&g).is_ok()
                    }
                    _ => true,
                };
                if admissible {
                    let mut next = chain.clone();
                    next.push(g);
                    stack.push(next);
                }
            }
        }
        if flags.is_empty() {
            return (0, false);
        }
        let index: HashMap<Vec<u32>, usize> = flags
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let mut seen = vec![false; flags.len()];
        seen[0] = true;
        let mut reached = 1usize;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let chain = &flags[i];
            for p in 0..width {
                let alt = self.section_alternative(chain, p, first, lo, hi);
                let mut other = chain.clone();
                other[p] = alt;
                if let Some(&j) = index.get(&other) {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        (flags.len(), reached == flags.len())
    }

    /// The unique other face completing the chain at position `p` inside a
    /// section; the section diamond property guarantees it exists.
    fn section_alternative(
        &self,
        chain: &[u32],
        p: usize,
        first: usize,
        lo: Option<(usize, u32)>,
        hi: Option<(usize, u32)>,
    ) -> u32 {
        let r = first + p;
        let width = chain.len();
        let candidates: Vec<u32> = if p == 0 {
            match lo {
                Some((rl, y)) => self.up[rl][y as usize]
                    .iter()
                    .copied()
                    .filter(|&g| self.up[r][g as usize].binary_search(&chain[1]).is_ok())
                    .collect(),
                None => self.down[r + 1][chain[1] as usize].clone(),
            }
        } else if p == width - 1 {
            match hi {
                Some((rh, z)) => {
                    debug_assert_eq!(rh, r + 1);
                    self.up[r - 1][chain[p - 1] as usize]
                        .iter()
                        .copied()
                        .filter(|&g| self.up[r][g as usize].binary_search(&z).is_ok())
                        .collect()
                }
                None => self.up[r - 1][chain[p - 1] as usize].clone(),
            }
        } else {
            self.up[r - 1][chain[p - 1] as usize]
                .iter()
                .copied()
                .filter(|&g| self.up[r][g as usize].binary_search(&chain[p + 1]).is_ok())
                .collect()
        };
        debug_assert_eq!(candidates.len(), 2, "diamond failure inside a section");
        if candidates[0] == chain[p] {
            candidates[1]
        } else {
            candidates[0]
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_faces(&self, k: usize) -> usize {
        self.labels[k].len()
    }

    pub fn face_vector(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.len()).collect()
    }

    pub fn label(&self, k: usize, f: u32) -> &str {
        &self.labels[k][f as usize]
    }

    pub fn upward(&self, k: usize, f: u32) -> &[u32] {
        &self.up[k][f as usize]
    }

    pub fn downward(&self, k: usize, f: u32) -> &[u32] {
        &self.down[k][f as usize]
    }

    /// The incidence triples `(k, low, high)` between consecutive ranks.
    pub fn incidence_triples(&self) -> Vec<(usize, u32, u32)> {
        let mut out = Vec::new();
        for k in 0..self.rank.saturating_sub(1) {
            for f in 0..self.num_faces(k) as u32 {
                for &g in &self.up[k][f as usize] {
                    out.push((k, f, g));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    /// Every flag, in lexicographic chain order.
    pub fn flags(&self) -> Vec<PolytopeFlag> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<u32>> = (0..self.num_faces(0) as u32)
            .rev()
            .map(|f| vec![f])
            .collect();
        while let Some(chain) = stack.pop() {
            if chain.len() == self.rank {
                out.push(PolytopeFlag { chain });
                continue;
            }
            let r = chain.len() - 1;
            let current = *chain.last().unwrap();
            for &g in self.up[r][current as usize].iter().rev() {
                let mut next = chain.clone();
                next.push(g);
                stack.push(next);
            }
        }
        out
    }

    pub fn num_flags(&self) -> usize {
        self.flags().len()
    }

    /// σ_i: exchanges the rank-i face for its unique alternative between the
    /// neighboring chain entries.
    pub fn sigma(&self, flag: &PolytopeFlag, i: usize) -> Result<PolytopeFlag, PolytopeError> {
        let n = self.rank;
        if i >= n {
            return Err(PolytopeError::RankOutOfRange { i, rank: n });
        }
        let chain = &flag.chain;
        let candidates: Vec<u32> = if n == 1 {
            (0..self.num_faces(0) as u32).collect()
        } else if i == 0 {
            self.down[1][chain[1] as usize].clone()
        } else if i == n - 1 {
            self.up[n - 2][chain[n - 2] as usize].clone()
        } else {
            self.up[i - 1][chain[i - 1] as usize]
                .iter()
                .copied()
                .filter(|&g| self.up[i][g as usize].binary_search(&chain[i + 1]).is_ok())
                .collect()
        };
        debug_assert_eq!(candidates.len(), 2);
        let other = if candidates[0] == chain[i] {
            candidates[1]
        } else {
            candidates[0]
        };
        let mut next = flag.clone();
        next.chain[i] = other;
        Ok(next)
    }

    /// `T_δ = σ_{δ(n-1)} ⋯ σ_{δ(0)}`.
    pub fn t_delta(
        &self,
        flag: &PolytopeFlag,
        delta: &[usize],
    ) -> Result<PolytopeFlag, PolytopeError> {
        let mut cur = flag.clone();
        for &i in delta {
            cur = self.sigma(&cur, i)?;
        }
        Ok(cur)
    }

    /// The inverse operator: σ applied in reversed δ order.
    pub fn t_delta_inverse(
        &self,
        flag: &PolytopeFlag,
        delta: &[usize],
    ) -> Result<PolytopeFlag, PolytopeError> {
        let mut cur = flag.clone();
        for &i in delta.iter().rev() {
            cur = self.sigma(&cur, i)?;
        }
        Ok(cur)
    }
}

/// Least rotation of the cycle or its reversal; the canonical form all cyclic
/// comparisons go through. Only rotations starting at a minimal element can
/// win, so those are the only ones compared.
pub fn canonical_cycle<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    if seq.is_empty() {
        return Vec::new();
    }
    let l = seq.len();
    let best_start = |s: &[T]| -> usize {
        let min = s.iter().min().unwrap();
        let mut best = usize::MAX;
        for i in 0..l {
            if s[i] != *min {
                continue;
            }
            if best == usize::MAX
                || (0..l)
                    .map(|k| s[(i + k) % l].cmp(&s[(best + k) % l]))
                    .find(|o| o.is_ne())
                    == Some(std::cmp::Ordering::Less)
            {
                best = i;
            }
        }
        best
    };
    let reversed: Vec<T> = seq.iter().rev().cloned().collect();
    let fs = best_start(seq);
    let rs = best_start(&reversed);
    let fwd: Vec<T> = (0..l).map(|k| seq[(fs + k) % l].clone()).collect();
    let bwd: Vec<T> = (0..l).map(|k| reversed[(rs + k) % l].clone()).collect();
    if bwd < fwd {
        bwd
    } else {
        fwd
    }
}

/// A `T_δ`-orbit of polytope flags in canonical form.
///
/// The trace interleaves the δ-ordered faces of each flag along the orbit; it
/// is the 0-shadow of the matching flag-complex zigzag and is the equality
/// key, so an orbit and its reversal compare equal.
#[derive(Clone, Debug)]
pub struct GeneralizedZigzag {
    delta: Vec<usize>,
    flags: Vec<PolytopeFlag>,
    trace: Vec<(usize, u32)>,
}

impl PartialEq for GeneralizedZigzag {
    fn eq(&self, other: &Self) -> bool {
        self.trace == other.trace
    }
}
impl Eq for GeneralizedZigzag {}
impl PartialOrd for GeneralizedZigzag {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GeneralizedZigzag {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.trace.cmp(&other.trace)
    }
}

impl GeneralizedZigzag {
    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    pub fn length(&self) -> usize {
        self.flags.len()
    }

    pub fn flags(&self) -> &[PolytopeFlag] {
        &self.flags
    }

    /// Canonical interleaved (rank, face) sequence, of length `n·l`.
    pub fn trace(&self) -> &[(usize, u32)] {
        &self.trace
    }

    pub fn is_simple(&self) -> bool {
        let mut seen: HashSet<&(usize, u32)> = HashSet::new();
        self.trace.iter().all(|e| seen.insert(e))
    }
}

/// The δ-zigzag through a flag: iterate `T_δ` until first return.
pub fn generalized_zigzag(
    p: &AbstractPolytope,
    delta: &[usize],
    flag: &PolytopeFlag,
) -> Result<GeneralizedZigzag, PolytopeError> {
    if delta.len() != p.rank() || {
        let mut d = delta.to_vec();
        d.sort_unstable();
        d != (0..p.rank()).collect::<Vec<_>>()
    } {
        return Err(PolytopeError::InvalidPolytope(format!(
            "{delta:?} is not a permutation of 0..{}",
            p.rank()
        )));
    }
    let mut orbit = vec![flag.clone()];
    let mut cur = p.t_delta(flag, delta)?;
    while cur != *flag {
        orbit.push(cur.clone());
        cur = p.t_delta(&cur, delta)?;
    }
    let raw_trace: Vec<(usize, u32)> = orbit
        .iter()
        .flat_map(|f| delta.iter().map(|&i| (i, f.face_at(i))))
        .collect();
    let flags = canonical_cycle(&orbit);
    Ok(GeneralizedZigzag {
        delta: delta.to_vec(),
        flags,
        trace: canonical_cycle(&raw_trace),
    })
}

/// Views a thin chamber complex as an abstract polytope: rank-k faces are the
/// k-faces, incidence is inclusion.
pub fn polytope_from_complex(
    delta: &ThinChamberComplex,
) -> Result<AbstractPolytope, PolytopeError> {
    let n = delta.rank();
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(n);
    let mut index: Vec<HashMap<Face, u32>> = Vec::with_capacity(n);
    let mut per_rank: Vec<Vec<Face>> = Vec::with_capacity(n);
    for k in 0..n {
        let faces = delta.complex().faces_at_level(k)?;
        labels.push(
            faces
                .iter()
                .map(|f| format!("{{{}}}", delta.complex().face_labels(f)))
                .collect(),
        );
        index.push(
            faces
                .iter()
                .enumerate()
                .map(|(i, f)| (f.clone(), i as u32))
                .collect(),
        );
        per_rank.push(faces);
    }
    let mut incidence = Vec::new();
    for k in 0..n - 1 {
        for (hi, z) in per_rank[k + 1].iter().enumerate() {
            for v in z.vertices() {
                let lo = index[k][&z.without(*v)];
                incidence.push((k, lo, hi as u32));
            }
        }
    }
    AbstractPolytope::new(labels, &incidence)
}

/// The flag complex: one vertex per proper face (keeping the polytope's face
/// labels), one facet per flag.
pub fn flag_complex(p: &AbstractPolytope) -> Result<ThinChamberComplex, PolytopeError> {
    let facet_list: Vec<Vec<String>> = p
        .flags()
        .iter()
        .map(|f| {
            f.chain()
                .iter()
                .enumerate()
                .map(|(k, &face)| p.label(k, face).to_string())
                .collect()
        })
        .collect();
    Ok(validate_thin_chamber(build_complex(&facet_list)?)?)
}

/// Builds the regular polytope of a string diagram: rank-k faces are the
/// cosets of the parabolic omitting generator k+1, incidence is nonempty
/// coset intersection. Flags then correspond to group elements.
pub fn regular_polytope_from_string(
    matrix: &CoxeterMatrix,
    cap: usize,
) -> Result<AbstractPolytope, PolytopeError> {
    if !matrix.is_string_diagram() {
        return Err(PolytopeError::NotStringDiagram);
    }
    let table = match enumerate_group(matrix, cap) {
        Ok(t) => t,
        Err(CoxeterError::BudgetExceeded { cap }) => {
            return Err(PolytopeError::GroupTooLarge { cap })
        }
        Err(e) => return Err(e.into()),
    };
    let n = matrix.rank();
    let cosets: Vec<_> = (0..n).map(|i| parabolic_cosets(&table, &[i])).collect();
    let labels: Vec<Vec<String>> = (0..n)
        .map(|k| {
            (0..cosets[k].num_cosets() as u32)
                .map(|c| coset_label(k, c))
                .collect()
        })
        .collect();
    let mut incidence: Vec<(usize, u32, u32)> = Vec::new();
    let mut seen: HashSet<(usize, u32, u32)> = HashSet::new();
    for w in 0..table.size() as u32 {
        for k in 0..n.saturating_sub(1) {
            let triple = (k, cosets[k].coset_of(w), cosets[k + 1].coset_of(w));
            if seen.insert(triple) {
                incidence.push(triple);
            }
        }
    }
    AbstractPolytope::new(labels, &incidence)
}

/// Named polytopes accepted on the command line and in tests.
pub fn builtin_polytope(name: &str) -> Result<AbstractPolytope, PolytopeError> {
    let orders: Vec<u32> = match name {
        "icosahedron" => vec![3, 5],
        "24-cell" => vec![3, 4, 3],
        "600-cell" => vec![3, 3, 5],
        _ => {
            let (kind, num) = name
                .split_once(':')
                .ok_or_else(|| PolytopeError::UnknownName(name.to_string()))?;
            let n: usize = num
                .parse()
                .map_err(|_| PolytopeError::UnknownName(name.to_string()))?;
            if n < 1 {
                return Err(PolytopeError::UnknownName(name.to_string()));
            }
            match kind {
                "simplex" => vec![3; n - 1],
                "cube" => {
                    let mut o = vec![3; n - 1];
                    if n >= 2 {
                        o[0] = 4;
                    }
                    o
                }
                "cross" => {
                    let mut o = vec![3; n - 1];
                    if n >= 2 {
                        o[n - 2] = 4;
                    }
                    o
                }
                _ => return Err(PolytopeError::UnknownName(name.to_string())),
            }
        }
    };
    let matrix = CoxeterMatrix::from_string_orders(&orders)?;
    regular_polytope_from_string(&matrix, DEFAULT_ELEMENT_CAP)
}

/// All generalized zigzags: `T_δ`-orbits over every permutation δ and every
/// flag, deduplicated by canonical trace.
pub fn enumerate_generalized_zigzags(
    p: &AbstractPolytope,
) -> Result<Vec<GeneralizedZigzag>, PolytopeError> {
    let n = p.rank();
    let flags = p.flags();
    let flag_idx: HashMap<&PolytopeFlag, usize> =
        flags.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut found: BTreeMap<Vec<(usize, u32)>, GeneralizedZigzag> = BTreeMap::new();
    for delta in (0..n).permutations(n) {
        let mut visited = vec![false; flags.len()];
        for (i, flag) in flags.iter().enumerate() {
            if visited[i] {
                continue;
            }
            let z = generalized_zigzag(p, &delta, flag)?;
            // Mark the whole orbit under this delta.
            let mut cur = flag.clone();
            loop {
                visited[flag_idx[&cur]] = true;
                cur = p.t_delta(&cur, &delta)?;
                if cur == *flag {
                    break;
                }
            }
            found.entry(z.trace.clone()).or_insert(z);
        }
    }
    Ok(found.into_values().collect())
}

/// Outcome of the flag-complex correspondence check.
#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub rank: usize,
    pub num_flags: usize,
    pub generalized_count: usize,
    pub flag_complex_zigzag_count: usize,
    /// Distinct generalized-zigzag lengths, sorted.
    pub lengths: Vec<usize>,
    pub uniform_length: Option<usize>,
    /// When uniform: does the count equal `(n-1)!·N/2l`?
    pub count_formula_ok: Option<bool>,
}

/// Verifies the bijection between generalized zigzags and flag-complex
/// zigzags: equal canonical vertex cycles, lengths scaling by the rank,
/// simplicity preserved, and the uniform-count identity.
pub fn check_flag_complex_correspondence(
    p: &AbstractPolytope,
) -> Result<CorrespondenceReport, PolytopeError> {
    let n = p.rank();
    let generalized = enumerate_generalized_zigzags(p)?;
    let fc = flag_complex(p)?;
    let fc_zigzags = enumerate_zigzags(&fc);

    // Map complex vertices back to polytope faces through the shared labels.
    let mut face_of_vertex: Vec<(usize, u32)> = vec![(0, 0); fc.num_vertices()];
    for k in 0..n {
        for f in 0..p.num_faces(k) as u32 {
            let v = fc
                .complex()
                .vertex_by_label(p.label(k, f))
                .expect("flag complex keeps face labels");
            face_of_vertex[v.index()] = (k, f);
        }
    }

    let mut by_trace: HashMap<&[(usize, u32)], &GeneralizedZigzag> =
        generalized.iter().map(|z| (z.trace(), z)).collect();
    for z in &fc_zigzags {
        let cycle: Vec<(usize, u32)> = z
            .flags()
            .iter()
            .map(|f| face_of_vertex[f.sequence()[0].index()])
            .collect();
        let key = canonical_cycle(&cycle);
        let gen = by_trace.remove(key.as_slice()).ok_or_else(|| {
            PolytopeError::CorrespondenceFailure(format!(
                "flag-complex zigzag of length {} matches no generalized zigzag",
                z.length()
            ))
        })?;
        if z.length() != n * gen.length() {
            return Err(PolytopeError::CorrespondenceFailure(format!(
                "flag-complex length {} is not rank × {}",
                z.length(),
                gen.length()
            )));
        }
        if z.is_simple() != gen.is_simple() {
            return Err(PolytopeError::CorrespondenceFailure(
                "simplicity is not preserved across the correspondence".into(),
            ));
        }
    }
    if !by_trace.is_empty() {
        return Err(PolytopeError::CorrespondenceFailure(format!(
            "{} generalized zigzags match no flag-complex zigzag",
            by_trace.len()
        )));
    }

    let mut lengths: Vec<usize> = generalized.iter().map(|z| z.length()).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let uniform_length = (lengths.len() == 1).then(|| lengths[0]);
    let num_flags = p.num_flags();
    let count_formula_ok = uniform_length.map(|l| {
        generalized.len() as u128 * 2 * l as u128
            == (1..n as u128).product::<u128>() * num_flags as u128
    });
    Ok(CorrespondenceReport {
        rank: n,
        num_flags,
        generalized_count: generalized.len(),
        flag_complex_zigzag_count: fc_zigzags.len(),
        lengths,
        uniform_length,
        count_formula_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{builtin, Builtin};

    fn simplex_polytope(n: usize) -> AbstractPolytope {
        polytope_from_complex(&builtin(Builtin::Simplex(n)).unwrap()).unwrap()
    }

    #[test]
    fn triangle_polytope_counts() {
        let p = simplex_polytope(2);
        assert_eq!(p.face_vector(), vec![3, 3]);
        assert_eq!(p.num_flags(), 6);
    }

    #[test]
    fn octahedron_counts() {
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        let p = polytope_from_complex(&b3).unwrap();
        assert_eq!(p.face_vector(), vec![6, 12, 8]);
    }

    #[test]
    fn every_builtin_complex_is_a_polytope() {
        for tcc in [
            builtin(Builtin::Simplex(4)).unwrap(),
            builtin(Builtin::CrossPolytope(3)).unwrap(),
            builtin(Builtin::Bipyramid(6)).unwrap(),
        ] {
            polytope_from_complex(&tcc).unwrap();
        }
    }

    #[test]
    fn flag_complex_of_triangle_is_hexagon() {
        let p = simplex_polytope(2);
        let fc = flag_complex(&p).unwrap();
        assert_eq!(fc.rank(), 2);
        assert_eq!(fc.num_facets(), 6);
        assert_eq!(fc.num_vertices(), 6);
    }

    #[test]
    fn flag_complex_of_icosahedron() {
        let p = builtin_polytope("icosahedron").unwrap();
        assert_eq!(p.face_vector(), vec![12, 30, 20]);
        let fc = flag_complex(&p).unwrap();
        assert_eq!(fc.rank(), 3);
        assert_eq!(fc.num_facets(), 120);
    }

    #[test]
    fn sigma_on_square() {
        let p = builtin_polytope("cube:2").unwrap();
        assert_eq!(p.face_vector(), vec![4, 4]);
        let flags = p.flags();
        for f in &flags {
            for i in 0..2 {
                let once = p.sigma(f, i).unwrap();
                assert_ne!(once, *f);
                assert_eq!(p.sigma(&once, i).unwrap(), *f);
                if i == 0 {
                    assert_eq!(once.face_at(1), f.face_at(1)); // edge kept
                } else {
                    assert_eq!(once.face_at(0), f.face_at(0)); // vertex kept
                }
            }
        }
        assert!(matches!(
            p.sigma(&flags[0], 2),
            Err(PolytopeError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn sigma_on_cube_replaces_square_keeping_vertex_and_edge() {
        let p = builtin_polytope("cube:3").unwrap();
        assert_eq!(p.face_vector(), vec![8, 12, 6]);
        for f in p.flags() {
            let moved = p.sigma(&f, 2).unwrap();
            assert_eq!(moved.face_at(0), f.face_at(0));
            assert_eq!(moved.face_at(1), f.face_at(1));
            assert_ne!(moved.face_at(2), f.face_at(2));
        }
    }

    #[test]
    fn cross_polytope_delta_zigzags_have_length_2n() {
        for n in [2usize, 3, 4] {
            let identity: Vec<usize> = (0..n).collect();
            // Both routes to the cross-polytope: cosets and the complex.
            let from_string = builtin_polytope(&format!("cross:{n}")).unwrap();
            let from_complex =
                polytope_from_complex(&builtin(Builtin::CrossPolytope(n)).unwrap()).unwrap();
            for p in [from_string, from_complex] {
                let flag = &p.flags()[0];
                let z = generalized_zigzag(&p, &identity, flag).unwrap();
                assert_eq!(z.length(), 2 * n);
            }
        }
    }

    #[test]
    fn icosahedron_length_is_10_for_every_delta() {
        let p = builtin_polytope("icosahedron").unwrap();
        let flags = p.flags();
        for delta in (0..3).permutations(3) {
            for f in &flags {
                assert_eq!(generalized_zigzag(&p, &delta, f).unwrap().length(), 10);
            }
        }
    }

    #[test]
    fn reversed_operator_walks_the_orbit_backwards() {
        let p = builtin_polytope("icosahedron").unwrap();
        let delta = [1usize, 0, 2];
        let f = p.flags()[7].clone();
        let mut forward = vec![f.clone()];
        let mut cur = p.t_delta(&f, &delta).unwrap();
        while cur != f {
            forward.push(cur.clone());
            cur = p.t_delta(&cur, &delta).unwrap();
        }
        let mut backward = vec![f.clone()];
        let mut cur = p.t_delta_inverse(&f, &delta).unwrap();
        while cur != f {
            backward.push(cur.clone());
            cur = p.t_delta_inverse(&cur, &delta).unwrap();
        }
        let l = forward.len();
        assert_eq!(backward.len(), l);
        for i in 1..l {
            assert_eq!(backward[i], forward[l - i]);
        }
    }

    #[test]
    fn string_constructions_have_known_shapes() {
        let oct = builtin_polytope("cross:3").unwrap();
        assert_eq!(oct.face_vector(), vec![6, 12, 8]);
        let cell24 = builtin_polytope("24-cell").unwrap();
        assert_eq!(cell24.face_vector(), vec![24, 96, 96, 24]);
        assert_eq!(cell24.num_flags(), 1152);
        let d4 = CoxeterMatrix::builtin("D4").unwrap();
        assert!(matches!(
            regular_polytope_from_string(&d4, 1000),
            Err(PolytopeError::NotStringDiagram)
        ));
        let h4 = CoxeterMatrix::builtin("H4").unwrap();
        assert!(matches!(
            regular_polytope_from_string(&h4, 100),
            Err(PolytopeError::GroupTooLarge { cap: 100 })
        ));
    }

    #[test]
    fn octahedron_from_string_matches_cross_polytope_complex() {
        let p = builtin_polytope("cross:3").unwrap();
        let fc = flag_complex(&p).unwrap();
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        let fcb = flag_complex(&polytope_from_complex(&b3).unwrap()).unwrap();
        assert!(crate::complex::are_isomorphic(&fc, &fcb));
    }

    #[test]
    fn correspondence_on_simplex() {
        let p = simplex_polytope(3);
        let report = check_flag_complex_correspondence(&p).unwrap();
        assert_eq!(report.uniform_length, Some(4));
        assert_eq!(report.generalized_count, report.flag_complex_zigzag_count);
        assert_eq!(report.count_formula_ok, Some(true));
        // (n-1)!·N/2l = 2·24/8 = 6
        assert_eq!(report.generalized_count, 6);
    }

    #[test]
    fn correspondence_on_icosahedron() {
        let p = builtin_polytope("icosahedron").unwrap();
        let report = check_flag_complex_correspondence(&p).unwrap();
        assert_eq!(report.uniform_length, Some(10));
        assert_eq!(report.count_formula_ok, Some(true));
        // 2·120/20 = 12 generalized zigzags; flag-complex length 30.
        assert_eq!(report.generalized_count, 12);
    }

    #[test]
    fn diamond_violations_are_rejected() {
        // A path of two edges: the middle vertex has degree 2 but the outer
        // ones have degree 1, so rank-0/rank-1 diamonds fail.
        let labels = vec![
            vec!["v0".into(), "v1".into(), "v2".into()],
            vec!["e0".into(), "e1".into()],
        ];
        let incidence = [(0usize, 0u32, 0u32), (0, 1, 0), (0, 1, 1), (0, 2, 1)];
        assert!(matches!(
            AbstractPolytope::new(labels, &incidence),
            Err(PolytopeError::InvalidPolytope(_))
        ));
    }

    #[test]
    fn interchange_round_trip() {
        let p = builtin_polytope("cross:3").unwrap();
        let labels = p.labels().to_vec();
        let triples = p.incidence_triples();
        let q = AbstractPolytope::new(labels, &triples).unwrap();
        assert_eq!(q.face_vector(), p.face_vector());
        assert_eq!(q.incidence_triples(), triples);
    }
}
