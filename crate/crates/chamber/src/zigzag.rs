//! Flag operators σ_i, T, R and the zigzag orbits they generate.
//!
//! A flag is an ordered vertex sequence `x_0, …, x_{n-1}` whose set is a
//! facet; position `i` determines the i-face `{x_0, …, x_i}`. The shift
//! operator `T` moves a flag to `x_1, …, x_n` where `x_n` is the unique
//! vertex other than `x_0` completing `x_1, …, x_{n-1}` to a facet. Zigzags
//! are the T-orbits, identified with their reverses.

use std::collections::HashMap;

use crate::complex::{Face, ThinChamberComplex, VertexId};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ZigzagError {
    #[error("level {level} out of range for rank {rank}")]
    LevelOutOfRange { level: usize, rank: usize },
    #[error("not a flag: {0}")]
    NotAFlag(String),
    #[error("not a shadow: {0}")]
    NotAShadow(String),
    #[error("window starting at position {index} does not form a facet")]
    Z1Violation { index: usize },
    #[error("vertex at position {index} recurs one window later")]
    Z2Violation { index: usize },
}

/// An ordered vertex sequence whose set is a facet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Flag {
    seq: Vec<VertexId>,
}

impl Flag {
    /// Validates that the sequence has the rank of the complex, repeats no
    /// vertex, and spans a facet.
    pub fn new(delta: &ThinChamberComplex, seq: Vec<VertexId>) -> Result<Flag, ZigzagError> {
        if seq.len() != delta.rank() {
            return Err(ZigzagError::NotAFlag(format!(
                "sequence has {} vertices, rank is {}",
                seq.len(),
                delta.rank()
            )));
        }
        let facet = Face::new_checked(seq.clone())
            .ok_or_else(|| ZigzagError::NotAFlag("sequence repeats a vertex".into()))?;
        if delta.facet_index_of(&facet).is_none() {
            return Err(ZigzagError::NotAFlag(format!(
                "{{{}}} is not a facet",
                delta.complex().face_labels(&facet)
            )));
        }
        Ok(Flag { seq })
    }

    pub(crate) fn from_sequence_unchecked(seq: Vec<VertexId>) -> Flag {
        Flag { seq }
    }

    pub fn sequence(&self) -> &[VertexId] {
        &self.seq
    }

    pub fn rank(&self) -> usize {
        self.seq.len()
    }

    /// The i-face `{x_0, …, x_i}` of the flag.
    pub fn face_at(&self, i: usize) -> Face {
        Face::new(self.seq[..=i].to_vec())
    }

    pub fn facet(&self) -> Face {
        Face::new(self.seq.clone())
    }
}

/// σ_i replaces the i-face of the flag by its unique alternative. For
/// `i < n-1` this transposes positions `i` and `i+1`; for `i = n-1` the last
/// vertex is swapped for the other vertex completing the ridge to a facet.
pub fn sigma(delta: &ThinChamberComplex, flag: &Flag, i: usize) -> Result<Flag, ZigzagError> {
    let n = delta.rank();
    if i >= n {
        return Err(ZigzagError::LevelOutOfRange { level: i, rank: n });
    }
    let mut seq = flag.seq.clone();
    if i + 1 < n {
        seq.swap(i, i + 1);
    } else {
        let fi = delta
            .facet_index_of(&flag.facet())
            .expect("flag facet not in complex");
        let (_, entering) = delta.opposite(fi, seq[n - 1]);
        seq[n - 1] = entering;
    }
    Ok(Flag { seq })
}

/// The shift operator `T = σ_{n-1} ∘ … ∘ σ_0`, computed directly: drop the
/// head vertex, append the unique vertex completing the tail to a facet.
pub fn t_step(delta: &ThinChamberComplex, flag: &Flag) -> Flag {
    let fi = delta
        .facet_index_of(&flag.facet())
        .expect("flag facet not in complex");
    let (_, entering) = delta.opposite(fi, flag.seq[0]);
    let mut seq = Vec::with_capacity(flag.seq.len());
    seq.extend_from_slice(&flag.seq[1..]);
    seq.push(entering);
    Flag { seq }
}

/// The reversal operator `R`: the same facet read backwards.
pub fn reverse_flag(flag: &Flag) -> Flag {
    Flag {
        seq: flag.seq.iter().rev().copied().collect(),
    }
}

/// The raw T-orbit of a flag, starting at the flag itself.
pub fn t_orbit(delta: &ThinChamberComplex, flag: &Flag) -> Vec<Flag> {
    let mut orbit = vec![flag.clone()];
    let mut current = t_step(delta, flag);
    while current != *flag {
        orbit.push(current.clone());
        current = t_step(delta, &current);
    }
    orbit
}

/// A zigzag: a cyclic T-orbit of flags in canonical form. The canonical form
/// is the lexicographically least rotation over the orbit and its reverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Zigzag {
    flags: Vec<Flag>,
}

fn rotate_to_min(mut flags: Vec<Flag>) -> Vec<Flag> {
    let best = flags
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    flags.rotate_left(best);
    flags
}

/// The reverse orbit: each flag reversed, in reverse order. This is again a
/// T-orbit.
fn reverse_orbit(orbit: &[Flag]) -> Vec<Flag> {
    orbit.iter().rev().map(reverse_flag).collect()
}

impl Zigzag {
    fn from_orbit(orbit: Vec<Flag>) -> Zigzag {
        let rev = rotate_to_min(reverse_orbit(&orbit));
        let fwd = rotate_to_min(orbit);
        Zigzag {
            flags: if rev < fwd { rev } else { fwd },
        }
    }

    pub fn length(&self) -> usize {
        self.flags.len()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    /// The k-shadow starting from the canonical flag.
    pub fn shadow(&self, k: usize) -> Result<Shadow, ZigzagError> {
        let n = self.flags[0].rank();
        if k >= n {
            return Err(ZigzagError::LevelOutOfRange { level: k, rank: n });
        }
        Ok(Shadow {
            level: k,
            faces: self.flags.iter().map(|f| f.face_at(k)).collect(),
        })
    }

    /// Simple means the 0-shadow repeats no vertex.
    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<VertexId> = self.flags.iter().map(|f| f.seq[0]).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// True iff the reverse orbit is a rotation of the orbit itself. Possible
    /// only in rank 1.
    pub fn is_self_reverse(&self) -> bool {
        rotate_to_min(reverse_orbit(&self.flags)) == self.flags
    }
}

/// The cyclic sequence of k-faces of a zigzag's flags.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Shadow {
    level: usize,
    faces: Vec<Face>,
}

impl Shadow {
    pub fn new(level: usize, faces: Vec<Face>) -> Shadow {
        Shadow { level, faces }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Equality as cyclic sequences, up to rotation and reversal.
    pub fn cyclically_equal(&self, other: &Shadow) -> bool {
        if self.level != other.level || self.faces.len() != other.faces.len() {
            return false;
        }
        let l = self.faces.len();
        let reversed: Vec<Face> = other.faces.iter().rev().cloned().collect();
        for cand in [&other.faces, &reversed] {
            for shift in 0..l {
                if (0..l).all(|i| self.faces[i] == cand[(i + shift) % l]) {
                    return true;
                }
            }
        }
        false
    }
}

/// The zigzag through a flag: iterate `T` until first return, then
/// canonicalize modulo rotation and reversal.
pub fn zigzag_from_flag(delta: &ThinChamberComplex, flag: &Flag) -> Zigzag {
    let orbit = t_orbit(delta, flag);
    debug_assert!(delta.rank() < 2 || orbit.len() > delta.rank());
    Zigzag::from_orbit(orbit)
}

/// The k-shadow of a zigzag (free-function form).
pub fn shadow(z: &Zigzag, k: usize) -> Result<Shadow, ZigzagError> {
    z.shadow(k)
}

/// Rebuilds the unique zigzag with the given k-shadow.
///
/// Ascends with the union rule `X_i ∪ X_{i+1}` up to the facet level, then
/// descends with the intersection rule `X_{i-1} ∩ X_i` to recover every flag,
/// and finally verifies that consecutive flags are T-images.
pub fn reconstruct_from_shadow(
    delta: &ThinChamberComplex,
    k: usize,
    faces: &[Face],
) -> Result<Zigzag, ZigzagError> {
    let n = delta.rank();
    if k >= n {
        return Err(ZigzagError::LevelOutOfRange { level: k, rank: n });
    }
    let l = faces.len();
    if l < 2 {
        return Err(ZigzagError::NotAShadow("shadow too short".into()));
    }
    for (i, f) in faces.iter().enumerate() {
        if f.len() != k + 1 {
            return Err(ZigzagError::NotAShadow(format!(
                "entry {i} has {} vertices, expected {}",
                f.len(),
                k + 1
            )));
        }
        if !delta.complex().is_face(f) {
            return Err(ZigzagError::NotAShadow(format!("entry {i} is not a face")));
        }
    }
    // Ascend to the facet level.
    let mut level = k;
    let mut current: Vec<Face> = faces.to_vec();
    while level + 1 < n {
        let mut next = Vec::with_capacity(l);
        for i in 0..l {
            let u = current[i].union(&current[(i + 1) % l]);
            if u.len() != level + 2 {
                return Err(ZigzagError::NotAShadow(format!(
                    "union of entries {i} and {} has {} vertices, expected {}",
                    (i + 1) % l,
                    u.len(),
                    level + 2
                )));
            }
            if !delta.complex().is_face(&u) {
                return Err(ZigzagError::NotAShadow(format!(
                    "union of entries {i} and {} is not a face",
                    (i + 1) % l
                )));
            }
            next.push(u);
        }
        current = next;
        level += 1;
    }
    // Descend through all levels, keeping entries aligned by index.
    let mut chains: Vec<Vec<Face>> = vec![current.clone()];
    while level > 0 {
        let upper = chains.last().unwrap();
        let mut lower = Vec::with_capacity(l);
        for i in 0..l {
            let inter = upper[(i + l - 1) % l].intersection(&upper[i]);
            if inter.len() != level {
                return Err(ZigzagError::NotAShadow(format!(
                    "intersection at entry {i} has {} vertices, expected {level}",
                    inter.len()
                )));
            }
            lower.push(inter);
        }
        chains.push(lower);
        level -= 1;
    }
    chains.reverse(); // chains[j][i] is the j-face of the i-th flag
    let mut flags = Vec::with_capacity(l);
    for i in 0..l {
        let mut seq = vec![chains[0][i].vertices()[0]];
        for j in 1..n {
            let added: Vec<VertexId> = chains[j][i]
                .vertices()
                .iter()
                .copied()
                .filter(|v| !chains[j - 1][i].contains(*v))
                .collect();
            if added.len() != 1 {
                return Err(ZigzagError::NotAShadow(format!(
                    "chain at entry {i} does not grow one vertex at level {j}"
                )));
            }
            seq.push(added[0]);
        }
        flags.push(Flag { seq });
    }
    for i in 0..l {
        if delta.facet_index_of(&flags[i].facet()).is_none() {
            return Err(ZigzagError::NotAShadow(format!(
                "entry {i} does not lie in a facet chain"
            )));
        }
        if t_step(delta, &flags[i]) != flags[(i + 1) % l] {
            return Err(ZigzagError::NotAShadow(format!(
                "entries {i} and {} are not consecutive under the shift operator",
                (i + 1) % l
            )));
        }
    }
    let mut sorted = flags.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ZigzagError::NotAShadow(
            "sequence repeats a flag, so it is longer than one orbit".into(),
        ));
    }
    Ok(Zigzag::from_orbit(flags))
}

/// The zigzag whose 0-shadow is the given cyclic vertex sequence.
///
/// Every window of `n` consecutive vertices must form a facet and no vertex
/// may recur one window later.
pub fn zigzag_from_vertex_sequence(
    delta: &ThinChamberComplex,
    seq: &[VertexId],
) -> Result<Zigzag, ZigzagError> {
    let n = delta.rank();
    let l = seq.len();
    if l == 0 {
        return Err(ZigzagError::Z1Violation { index: 0 });
    }
    let mut windows = Vec::with_capacity(l);
    for i in 0..l {
        let window: Vec<VertexId> = (0..n).map(|j| seq[(i + j) % l]).collect();
        let facet = match Face::new_checked(window.clone()) {
            Some(f) => f,
            None => return Err(ZigzagError::Z1Violation { index: i }),
        };
        if delta.facet_index_of(&facet).is_none() {
            return Err(ZigzagError::Z1Violation { index: i });
        }
        windows.push(Flag { seq: window });
    }
    for i in 0..l {
        if seq[i] == seq[(i + n) % l] {
            return Err(ZigzagError::Z2Violation { index: i });
        }
    }
    Ok(Zigzag::from_orbit(t_orbit(delta, &windows[0])))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lehmer rank of a permutation of `0..n`.
fn perm_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller_later = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank += smaller_later * factorial(n - 1 - i);
    }
    rank
}

fn perm_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut perm = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let idx = rank / f;
        rank %= f;
        perm.push(pool.remove(idx));
    }
    perm
}

/// Enumerates every zigzag of the complex: partitions all `n!·N` flags into
/// T-orbits, merges each orbit with its reverse, and returns the canonical
/// zigzags in sorted order.
pub fn enumerate_zigzags(delta: &ThinChamberComplex) -> Vec<Zigzag> {
    let n = delta.rank();
    let nfact = factorial(n);
    let num_facets = delta.num_facets();
    let mut visited = vec![false; nfact * num_facets];
    let mut zigzags = Vec::new();

    let positions_of = |facet_idx: u32, seq: &[VertexId]| -> Vec<usize> {
        let sorted = delta.facets()[facet_idx as usize].vertices();
        seq.iter()
            .map(|v| sorted.binary_search(v).unwrap())
            .collect()
    };
    let slot = |facet_idx: u32, seq: &[VertexId]| -> usize {
        facet_idx as usize * nfact + perm_rank(&positions_of(facet_idx, seq))
    };

    for fi in 0..num_facets as u32 {
        let sorted = delta.facets()[fi as usize].vertices().to_vec();
        for code in 0..nfact {
            if visited[fi as usize * nfact + code] {
                continue;
            }
            let start = Flag {
                seq: perm_unrank(n, code)
                    .into_iter()
                    .map(|p| sorted[p])
                    .collect(),
            };
            // Walk the orbit on (facet, vertex sequence) pairs.
            let mut orbit = Vec::new();
            let mut cur_facet = fi;
            let mut cur = start.clone();
            loop {
                visited[slot(cur_facet, &cur.seq)] = true;
                orbit.push(cur.clone());
                let (next_facet, entering) = delta.opposite(cur_facet, cur.seq[0]);
                let mut seq = Vec::with_capacity(n);
                seq.extend_from_slice(&cur.seq[1..]);
                seq.push(entering);
                cur = Flag { seq };
                cur_facet = next_facet;
                if cur == start {
                    break;
                }
            }
            // The reverse orbit is a distinct T-orbit (except in rank 1);
            // mark it visited so the pair is counted once.
            for f in &orbit {
                let r = reverse_flag(f);
                let rf = delta.facet_index_of(&r.facet()).unwrap();
                visited[slot(rf, &r.seq)] = true;
            }
            zigzags.push(Zigzag::from_orbit(orbit));
        }
    }
    zigzags.sort_unstable();
    zigzags
}

/// Aggregate zigzag facts for one complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagSummary {
    pub count: usize,
    pub z_simple: bool,
    pub z_uniform: bool,
    /// Set when all zigzags share one length.
    pub common_length: Option<usize>,
    /// When z-uniform: does `count` equal `n!·N / 2l`?
    pub count_formula_ok: Option<bool>,
    pub lengths: Vec<usize>,
}

pub fn zigzag_predicates(delta: &ThinChamberComplex) -> ZigzagSummary {
    summarize_zigzags(delta, &enumerate_zigzags(delta))
}

pub fn summarize_zigzags(delta: &ThinChamberComplex, zigzags: &[Zigzag]) -> ZigzagSummary {
    let mut lengths: Vec<usize> = zigzags.iter().map(|z| z.length()).collect();
    lengths.sort_unstable();
    let z_uniform = lengths.windows(2).all(|w| w[0] == w[1]) && !lengths.is_empty();
    let common_length = if z_uniform { Some(lengths[0]) } else { None };
    let count_formula_ok = common_length.map(|l| {
        let flags = factorial(delta.rank()) as u128 * delta.num_facets() as u128;
        zigzags.len() as u128 * 2 * l as u128 == flags
    });
    ZigzagSummary {
        count: zigzags.len(),
        z_simple: zigzags.iter().all(|z| z.is_simple()),
        z_uniform,
        common_length,
        count_formula_ok,
        lengths,
    }
}

/// A vertex permutation that maps facets to facets.
#[derive(Clone, Debug)]
pub struct ComplexAutomorphism {
    vertex_map: Vec<VertexId>,
}

impl ComplexAutomorphism {
    /// Checks that the permutation preserves the facet set.
    pub fn new(
        delta: &ThinChamberComplex,
        vertex_map: Vec<VertexId>,
    ) -> Result<ComplexAutomorphism, ZigzagError> {
        if vertex_map.len() != delta.num_vertices() {
            return Err(ZigzagError::NotAFlag(
                "vertex map has the wrong length".into(),
            ));
        }
        let auto = ComplexAutomorphism { vertex_map };
        for facet in delta.facets() {
            if delta.facet_index_of(&auto.apply_face(facet)).is_none() {
                return Err(ZigzagError::NotAFlag(
                    "vertex map does not preserve facets".into(),
                ));
            }
        }
        Ok(auto)
    }

    pub(crate) fn from_map_unchecked(vertex_map: Vec<VertexId>) -> ComplexAutomorphism {
        ComplexAutomorphism { vertex_map }
    }

    pub fn apply_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.index()]
    }

    pub fn apply_face(&self, face: &Face) -> Face {
        Face::new(
            face.vertices()
                .iter()
                .map(|v| self.apply_vertex(*v))
                .collect(),
        )
    }

    pub fn apply_flag(&self, flag: &Flag) -> Flag {
        Flag {
            seq: flag.seq.iter().map(|v| self.apply_vertex(*v)).collect(),
        }
    }
}

/// Tracks which zigzags pass through which faces; backs the z-connectedness
/// queries.
pub struct ZigzagInventory {
    zigzags: Vec<Zigzag>,
    /// Per zigzag index: faces of each flag, all ranks, as a hash set.
    members: Vec<HashMap<Face, ()>>,
}

impl ZigzagInventory {
    pub fn build(delta: &ThinChamberComplex) -> ZigzagInventory {
        let zigzags = enumerate_zigzags(delta);
        let n = delta.rank();
        let members = zigzags
            .iter()
            .map(|z| {
                let mut set = HashMap::new();
                for f in z.flags() {
                    for k in 0..n {
                        set.insert(f.face_at(k), ());
                    }
                }
                set
            })
            .collect();
        ZigzagInventory { zigzags, members }
    }

    pub fn zigzags(&self) -> &[Zigzag] {
        &self.zigzags
    }

    /// Zigzag indices with some flag containing the face.
    pub fn through(&self, face: &Face) -> Vec<usize> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.contains_key(face))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn connects(&self, x: &Face, y: &Face) -> bool {
        self.members
            .iter()
            .any(|m| m.contains_key(x) && m.contains_key(y))
    }

    /// Restricts to simple zigzags.
    pub fn connects_simply(&self, x: &Face, y: &Face) -> bool {
        self.members
            .iter()
            .zip(&self.zigzags)
            .any(|(m, z)| z.is_simple() && m.contains_key(x) && m.contains_key(y))
    }
}
