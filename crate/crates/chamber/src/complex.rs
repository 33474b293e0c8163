//! Pure thin chamber simplicial complexes, their level graphs and path distances.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use itertools::Itertools;

/// Dense vertex index assigned at intern time. The original token is kept in
/// the owning [`Complex`] and used for all printing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A face: a strictly sorted set of vertices. A face with `k+1` vertices has
/// rank `k`; the empty face is the unique rank `-1` face.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Face {
    vertices: Vec<VertexId>,
}

impl Face {
    /// Builds a face from arbitrary order, sorting the vertices. Panics on a
    /// repeated vertex; faces are sets.
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Face::new_checked(vertices).expect("face has a repeated vertex")
    }

    /// As [`Face::new`] but reports a repeated vertex as `None`.
    pub fn new_checked(mut vertices: Vec<VertexId>) -> Option<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Face { vertices })
    }

    pub fn empty() -> Self {
        Face::default()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Rank is cardinality minus one; the empty face has rank -1.
    pub fn rank(&self) -> isize {
        self.vertices.len() as isize - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        self.vertices.iter().all(|v| other.contains(*v))
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face {
            vertices: self
                .vertices
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        }
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut vertices: Vec<VertexId> = self
            .vertices
            .iter()
            .chain(other.vertices.iter())
            .copied()
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        Face { vertices }
    }

    /// The face with one vertex removed.
    pub fn without(&self, v: VertexId) -> Face {
        Face {
            vertices: self.vertices.iter().copied().filter(|w| *w != v).collect(),
        }
    }
}

impl From<Vec<VertexId>> for Face {
    fn from(v: Vec<VertexId>) -> Self {
        Face::new(v)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet list is empty")]
    EmptyComplex,
    #[error("facet {index} is empty")]
    EmptyFacet { index: usize },
    #[error("facet {index} has {size} vertices, expected {expected}: complex is not pure")]
    NotPure {
        index: usize,
        size: usize,
        expected: usize,
    },
    #[error("facet {index} repeats vertex `{label}`")]
    DuplicateVertexInFacet { index: usize, label: String },
    #[error("facet {index} duplicates facet {first}")]
    DuplicateFacet { index: usize, first: usize },
    #[error("ridge {{{ridge}}} lies in {count} facets, thinness requires exactly 2")]
    NotThin { ridge: String, count: usize },
    #[error("facet graph is disconnected, component sizes {components:?}")]
    NotChamber { components: Vec<usize> },
    #[error("level {level} out of range for rank {rank}")]
    LevelOutOfRange { level: usize, rank: usize },
    #[error("face {{{face}}} is not a node of the level-{level} graph")]
    FaceNotInGraph { face: String, level: usize },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown vertex token `{0}`")]
    UnknownVertex(String),
}

/// A pure simplicial complex of rank `n`, given by its facets. Vertices are
/// interned in first-appearance order and printed with their original labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    labels: Vec<String>,
    label_index: HashMap<String, VertexId>,
    facets: Vec<Face>,
    rank: usize,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Complex(rank {}, {} vertices, {} facets)",
            self.rank,
            self.labels.len(),
            self.facets.len()
        )
    }
}

/// Builds a complex from facets given as vertex token lists.
///
/// Tokens are interned in first-appearance order. Facets of differing sizes,
/// repeated vertices inside a facet and repeated facets are rejected.
pub fn build_complex<S: AsRef<str>>(facet_list: &[Vec<S>]) -> Result<Complex, ComplexError> {
    if facet_list.is_empty() {
        return Err(ComplexError::EmptyComplex);
    }
    let mut labels: Vec<String> = Vec::new();
    let mut label_index: HashMap<String, VertexId> = HashMap::new();
    let mut facets: Vec<Face> = Vec::new();
    let mut seen: HashMap<Face, usize> = HashMap::new();
    let rank = facet_list[0].len();
    for (index, tokens) in facet_list.iter().enumerate() {
        if tokens.is_empty() {
            return Err(ComplexError::EmptyFacet { index });
        }
        if tokens.len() != rank {
            return Err(ComplexError::NotPure {
                index,
                size: tokens.len(),
                expected: rank,
            });
        }
        let mut verts: Vec<VertexId> = Vec::with_capacity(tokens.len());
        for t in tokens {
            let t = t.as_ref();
            let id = *label_index.entry(t.to_string()).or_insert_with(|| {
                labels.push(t.to_string());
                VertexId(labels.len() as u32 - 1)
            });
            if verts.contains(&id) {
                return Err(ComplexError::DuplicateVertexInFacet {
                    index,
                    label: t.to_string(),
                });
            }
            verts.push(id);
        }
        let face = Face::new(verts);
        if let Some(&first) = seen.get(&face) {
            return Err(ComplexError::DuplicateFacet { index, first });
        }
        seen.insert(face.clone(), index);
        facets.push(face);
    }
    Ok(Complex {
        labels,
        label_index,
        facets,
        rank,
    })
}

impl Complex {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.label_index.get(label).copied()
    }

    /// Resolves a whitespace-free token list to a face.
    pub fn face_by_labels<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Face, ComplexError> {
        let mut verts = Vec::with_capacity(tokens.len());
        for t in tokens {
            let t = t.as_ref();
            let v = self
                .vertex_by_label(t)
                .ok_or_else(|| ComplexError::UnknownVertex(t.to_string()))?;
            verts.push(v);
        }
        Ok(Face::new(verts))
    }

    pub fn face_labels(&self, face: &Face) -> String {
        let mut labels: Vec<&str> = face.vertices().iter().map(|v| self.label(*v)).collect();
        labels.sort_unstable();
        labels.join(",")
    }

    /// True iff the vertex set is a face, i.e. a subset of some facet.
    pub fn is_face(&self, face: &Face) -> bool {
        if face.is_empty() {
            return true;
        }
        self.facets.iter().any(|f| face.is_subset_of(f))
    }

    /// All faces of rank `k`, in sorted order.
    pub fn faces_at_level(&self, k: usize) -> Result<Vec<Face>, ComplexError> {
        if k >= self.rank {
            return Err(ComplexError::LevelOutOfRange {
                level: k,
                rank: self.rank,
            });
        }
        let mut set: BTreeSet<Face> = BTreeSet::new();
        for f in &self.facets {
            for comb in f.vertices().iter().copied().combinations(k + 1) {
                set.insert(Face { vertices: comb });
            }
        }
        Ok(set.into_iter().collect())
    }

    /// Serializes in the `.cplx` text format: one facet per line, vertices
    /// sorted within a facet, facets sorted. Sorting compares label strings,
    /// which keeps the bytes stable when the output is parsed and written
    /// again under a fresh interning.
    pub fn to_cplx(&self) -> String {
        let mut rows: Vec<Vec<&str>> = self
            .facets
            .iter()
            .map(|f| {
                let mut row: Vec<&str> = f.vertices().iter().map(|v| self.label(*v)).collect();
                row.sort_unstable();
                row
            })
            .collect();
        rows.sort_unstable();
        let mut out = String::new();
        for row in rows {
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses the `.cplx` text format: `#` starts a comment, each non-blank line
/// is one facet as whitespace-separated vertex tokens.
pub fn parse_cplx(text: &str) -> Result<Complex, ComplexError> {
    let mut facet_list: Vec<Vec<String>> = Vec::new();
    let mut facet_lines: Vec<usize> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<String> = line.split_whitespace().map(|s| s.to_string()).collect();
        if tokens.is_empty() {
            continue;
        }
        facet_list.push(tokens);
        facet_lines.push(lineno + 1);
    }
    build_complex(&facet_list).map_err(|e| match e {
        ComplexError::NotPure {
            index,
            size,
            expected,
        } => ComplexError::Parse {
            line: facet_lines[index],
            msg: format!("facet has {size} vertices, expected {expected}: complex is not pure"),
        },
        ComplexError::DuplicateVertexInFacet { index, label } => ComplexError::Parse {
            line: facet_lines[index],
            msg: format!("facet repeats vertex `{label}`"),
        },
        ComplexError::DuplicateFacet { index, first } => ComplexError::Parse {
            line: facet_lines[index],
            msg: format!("duplicate of the facet on line {}", facet_lines[first]),
        },
        other => other,
    })
}

/// A validated thin chamber complex: every ridge lies in exactly two facets
/// and the facet graph is connected.
#[derive(Clone)]
pub struct ThinChamberComplex {
    complex: Complex,
    facet_index: HashMap<Face, u32>,
    /// `ridge_neighbor[f][j]` is the other facet over the ridge obtained by
    /// deleting the j-th sorted vertex of facet `f`, together with the vertex
    /// that enters in its place.
    ridge_neighbor: Vec<Vec<(u32, VertexId)>>,
}

impl fmt::Debug for ThinChamberComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Thin{:?}", self.complex)
    }
}

/// Checks thinness and chamber connectivity, producing the validated wrapper.
pub fn validate_thin_chamber(complex: Complex) -> Result<ThinChamberComplex, ComplexError> {
    let n = complex.rank;
    // Every ridge must lie in exactly two facets.
    let mut ridge_facets: HashMap<Face, Vec<(u32, VertexId)>> = HashMap::new();
    for (fi, facet) in complex.facets.iter().enumerate() {
        for &v in facet.vertices() {
            ridge_facets
                .entry(facet.without(v))
                .or_default()
                .push((fi as u32, v));
        }
    }
    if let Some((ridge, members)) = ridge_facets
        .iter()
        .filter(|(_, m)| m.len() != 2)
        .sorted_by_key(|(r, _)| (*r).clone())
        .next()
    {
        return Err(ComplexError::NotThin {
            ridge: complex.face_labels(ridge),
            count: members.len(),
        });
    }
    let mut ridge_neighbor: Vec<Vec<(u32, VertexId)>> =
        vec![vec![(u32::MAX, VertexId(0)); n]; complex.facets.len()];
    for members in ridge_facets.values() {
        let (f1, v1) = members[0];
        let (f2, v2) = members[1];
        let j1 = complex.facets[f1 as usize]
            .vertices()
            .binary_search(&v1)
            .unwrap();
        let j2 = complex.facets[f2 as usize]
            .vertices()
            .binary_search(&v2)
            .unwrap();
        ridge_neighbor[f1 as usize][j1] = (f2, v2);
        ridge_neighbor[f2 as usize][j2] = (f1, v1);
    }
    // Chamber condition: the facet graph is connected.
    let mut seen = vec![false; complex.facets.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1usize;
    while let Some(f) = queue.pop_front() {
        for &(g, _) in &ridge_neighbor[f] {
            if !seen[g as usize] {
                seen[g as usize] = true;
                reached += 1;
                queue.push_back(g as usize);
            }
        }
    }
    if reached != complex.facets.len() {
        let mut components = vec![reached];
        // Size up the remaining components for the diagnostic.
        while let Some(start) = seen.iter().position(|s| !s) {
            let mut size = 1usize;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                for &(g, _) in &ridge_neighbor[f] {
                    if !seen[g as usize] {
                        seen[g as usize] = true;
                        size += 1;
                        queue.push_back(g as usize);
                    }
                }
            }
            components.push(size);
        }
        components.sort_unstable_by(|a, b| b.cmp(a));
        return Err(ComplexError::NotChamber { components });
    }
    let facet_index = complex
        .facets
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i as u32))
        .collect();
    Ok(ThinChamberComplex {
        complex,
        facet_index,
        ridge_neighbor,
    })
}

impl ThinChamberComplex {
    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn rank(&self) -> usize {
        self.complex.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.complex.num_vertices()
    }

    pub fn facets(&self) -> &[Face] {
        &self.complex.facets
    }

    pub fn num_facets(&self) -> usize {
        self.complex.facets.len()
    }

    pub fn label(&self, v: VertexId) -> &str {
        self.complex.label(v)
    }

    pub fn facet_index_of(&self, facet: &Face) -> Option<u32> {
        self.facet_index.get(facet).copied()
    }

    /// The other facet over the ridge `facet ∖ {dropped}`, with the vertex
    /// that replaces `dropped`. Thinness makes this total and unique.
    pub fn opposite(&self, facet_idx: u32, dropped: VertexId) -> (u32, VertexId) {
        let j = self.complex.facets[facet_idx as usize]
            .vertices()
            .binary_search(&dropped)
            .expect("dropped vertex not in facet");
        self.ridge_neighbor[facet_idx as usize][j]
    }

    /// The adjacency graph on faces of rank `k`.
    ///
    /// For `k = n-1` two facets are adjacent when they meet in a ridge. For
    /// `k < n-1` two k-faces are adjacent when they sit between a common
    /// (k-1)-face and a common (k+1)-face, which happens exactly when both
    /// are subsets of one (k+1)-face.
    pub fn adjacency_graph(&self, k: usize) -> Result<AdjacencyGraph, ComplexError> {
        let n = self.rank();
        if k >= n {
            return Err(ComplexError::LevelOutOfRange { level: k, rank: n });
        }
        let nodes = self.complex.faces_at_level(k)?;
        let index: HashMap<Face, u32> = nodes
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i as u32))
            .collect();
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nodes.len()];
        if k == n - 1 {
            for (fi, facet) in self.facets().iter().enumerate() {
                let a = index[facet];
                for &v in facet.vertices() {
                    let (g, _) = self.opposite(fi as u32, v);
                    let b = index[&self.complex.facets[g as usize]];
                    adj[a as usize].push(b);
                }
            }
        } else {
            for upper in self.complex.faces_at_level(k + 1)? {
                for pair in upper.vertices().iter().copied().combinations(2) {
                    let a = index[&upper.without(pair[0])];
                    let b = index[&upper.without(pair[1])];
                    adj[a as usize].push(b);
                    adj[b as usize].push(a);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(AdjacencyGraph {
            level: k,
            nodes,
            index,
            adj,
        })
    }
}

/// The graph Γ_k: nodes are the k-faces, edges the adjacent pairs.
#[derive(Clone, Debug)]
pub struct AdjacencyGraph {
    level: usize,
    nodes: Vec<Face>,
    index: HashMap<Face, u32>,
    adj: Vec<Vec<u32>>,
}

impl AdjacencyGraph {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn nodes(&self) -> &[Face] {
        &self.nodes
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn node_index(&self, face: &Face) -> Result<u32, ComplexError> {
        self.index
            .get(face)
            .copied()
            .ok_or_else(|| ComplexError::FaceNotInGraph {
                face: format!("{face:?}"),
                level: self.level,
            })
    }

    pub fn neighbors(&self, node: u32) -> &[u32] {
        &self.adj[node as usize]
    }

    pub fn degree(&self, node: u32) -> usize {
        self.adj[node as usize].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        self.distances_from(0).iter().all(|d| *d != u32::MAX)
    }

    /// BFS distances from one node; `u32::MAX` marks unreachable nodes.
    pub fn distances_from(&self, start: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.nodes.len()];
        dist[start as usize] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Shortest-path distance between two faces in an adjacency graph.
pub fn path_distance(g: &AdjacencyGraph, x: &Face, y: &Face) -> Result<usize, ComplexError> {
    let a = g.node_index(x)?;
    let b = g.node_index(y)?;
    let dist = g.distances_from(a);
    debug_assert_ne!(dist[b as usize], u32::MAX, "graph is disconnected");
    Ok(dist[b as usize] as usize)
}

/// The join: facets are unions of one facet from each factor over disjointed
/// vertex sets. The result has rank `n1 + n2` and is thin chamber again.
pub fn join(
    a: &ThinChamberComplex,
    b: &ThinChamberComplex,
) -> Result<ThinChamberComplex, ComplexError> {
    let mut facet_list: Vec<Vec<String>> = Vec::new();
    for fa in a.facets() {
        for fb in b.facets() {
            let mut tokens: Vec<String> = fa
                .vertices()
                .iter()
                .map(|v| format!("1:{}", a.label(*v)))
                .collect();
            tokens.extend(fb.vertices().iter().map(|v| format!("2:{}", b.label(*v))));
            facet_list.push(tokens);
        }
    }
    validate_thin_chamber(build_complex(&facet_list)?)
}

/// Built-in complexes.
pub enum Builtin {
    /// The simplex of rank `n`: all n-subsets of an (n+1)-element set.
    Simplex(usize),
    /// The cross-polytope of rank `n`: all sign-choice n-sets of `{±1..±n}`.
    CrossPolytope(usize),
    /// The m-gonal bipyramid: apexes `a`, `b` over a ring `1..m`.
    Bipyramid(usize),
}

pub fn builtin(which: Builtin) -> Result<ThinChamberComplex, ComplexError> {
    let facet_list: Vec<Vec<String>> = match which {
        Builtin::Simplex(n) => {
            if n < 1 {
                return Err(ComplexError::ParameterOutOfRange(
                    "simplex rank must be at least 1".into(),
                ));
            }
            (1..=n + 1)
                .combinations(n)
                .map(|c| c.into_iter().map(|i| i.to_string()).collect())
                .collect()
        }
        Builtin::CrossPolytope(n) => {
            if n < 1 {
                return Err(ComplexError::ParameterOutOfRange(
                    "cross-polytope rank must be at least 1".into(),
                ));
            }
            (0..1u32 << n)
                .map(|signs| {
                    (1..=n)
                        .map(|i| {
                            if signs >> (i - 1) & 1 == 0 {
                                format!("{i}")
                            } else {
                                format!("-{i}")
                            }
                        })
                        .collect()
                })
                .collect()
        }
        Builtin::Bipyramid(m) => {
            if m < 3 {
                return Err(ComplexError::ParameterOutOfRange(
                    "bipyramid needs a ring of at least 3".into(),
                ));
            }
            let mut list = Vec::with_capacity(2 * m);
            for apex in ["a", "b"] {
                for i in 1..=m {
                    let next = i % m + 1;
                    list.push(vec![apex.to_string(), i.to_string(), next.to_string()]);
                }
            }
            list
        }
    };
    validate_thin_chamber(build_complex(&facet_list)?)
}

/// True iff every `k`-element vertex subset is a face.
pub fn is_k_neighborly(delta: &ThinChamberComplex, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if k > delta.rank() {
        return false;
    }
    (0..delta.num_vertices() as u32)
        .map(VertexId)
        .combinations(k)
        .all(|c| delta.complex().is_face(&Face::new(c)))
}

/// True iff the complex is the rank-n simplex: n+1 vertices carrying all
/// possible facets.
pub fn is_simplex(delta: &ThinChamberComplex) -> bool {
    delta.num_vertices() == delta.rank() + 1 && delta.num_facets() == delta.rank() + 1
}

/// Label-blind isomorphism of validated complexes.
///
/// Seeds a vertex bijection on one facet and propagates it across the facet
/// graph; over a connected chamber complex the seed determines everything,
/// so trying all images of one facet is exhaustive.
pub fn are_isomorphic(a: &ThinChamberComplex, b: &ThinChamberComplex) -> bool {
    if a.rank() != b.rank()
        || a.num_vertices() != b.num_vertices()
        || a.num_facets() != b.num_facets()
    {
        return false;
    }
    let n = a.rank();
    let base = &a.facets()[0];
    for g in 0..b.num_facets() as u32 {
        let target = &b.facets()[g as usize];
        for image in target.vertices().iter().copied().permutations(n) {
            if propagate_map(a, b, base, &image, g) {
                return true;
            }
        }
    }
    false
}

fn propagate_map(
    a: &ThinChamberComplex,
    b: &ThinChamberComplex,
    base: &Face,
    image: &[VertexId],
    g0: u32,
) -> bool {
    let mut vmap: Vec<Option<VertexId>> = vec![None; a.num_vertices()];
    for (v, w) in base.vertices().iter().zip(image) {
        vmap[v.index()] = Some(*w);
    }
    let mut fmap: Vec<Option<u32>> = vec![None; a.num_facets()];
    fmap[0] = Some(g0);
    let mut queue = VecDeque::from([0u32]);
    while let Some(f) = queue.pop_front() {
        let g = fmap[f as usize].unwrap();
        for &v in a.facets()[f as usize].vertices() {
            let (f2, v_in) = a.opposite(f, v);
            let (g2, w_in) = b.opposite(g, vmap[v.index()].unwrap());
            match vmap[v_in.index()] {
                Some(w) if w != w_in => return false,
                Some(_) => {}
                None => vmap[v_in.index()] = Some(w_in),
            }
            match fmap[f2 as usize] {
                Some(gg) if gg != g2 => return false,
                Some(_) => {}
                None => {
                    fmap[f2 as usize] = Some(g2);
                    queue.push_back(f2);
                }
            }
        }
    }
    // Connectivity reaches every facet; the vertex map must be a bijection.
    let mut used = vec![false; b.num_vertices()];
    for w in vmap.iter().flatten() {
        if used[w.index()] {
            return false;
        }
        used[w.index()] = true;
    }
    vmap.iter().all(|w| w.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(list: &[&[&str]]) -> Vec<Vec<String>> {
        list.iter()
            .map(|f| f.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn triangle_builds() {
        let c = build_complex(&tokens(&[&["1", "2"], &["2", "3"], &["3", "1"]])).unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.num_facets(), 3);
        assert_eq!(c.num_vertices(), 3);
    }

    #[test]
    fn mixed_sizes_not_pure() {
        let err = build_complex(&tokens(&[&["1", "2", "3"], &["1", "2"]])).unwrap_err();
        assert!(matches!(err, ComplexError::NotPure { index: 1, .. }));
    }

    #[test]
    fn duplicate_facet_rejected() {
        let err = build_complex(&tokens(&[&["1", "2"], &["2", "1"]])).unwrap_err();
        assert!(matches!(
            err,
            ComplexError::DuplicateFacet { index: 1, first: 0 }
        ));
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let err = build_complex(&tokens(&[&["1", "1", "2"]])).unwrap_err();
        assert!(matches!(err, ComplexError::DuplicateVertexInFacet { .. }));
    }

    #[test]
    fn empty_inputs_rejected() {
        let none: Vec<Vec<String>> = Vec::new();
        assert_eq!(
            build_complex(&none).unwrap_err(),
            ComplexError::EmptyComplex
        );
        let hollow: Vec<Vec<String>> = vec![Vec::new()];
        assert_eq!(
            build_complex(&hollow).unwrap_err(),
            ComplexError::EmptyFacet { index: 0 }
        );
    }

    #[test]
    fn cross_polytope_beta3() {
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        assert_eq!(b3.rank(), 3);
        assert_eq!(b3.num_facets(), 8);
        assert_eq!(b3.num_vertices(), 6);
    }

    #[test]
    fn simplex_is_valid() {
        let a3 = builtin(Builtin::Simplex(3)).unwrap();
        assert_eq!(a3.rank(), 3);
        assert_eq!(a3.num_facets(), 4);
    }

    #[test]
    fn disjoint_triangles_not_chamber() {
        let err = validate_thin_chamber(
            build_complex(&tokens(&[
                &["1", "2"],
                &["2", "3"],
                &["3", "1"],
                &["4", "5"],
                &["5", "6"],
                &["6", "4"],
            ]))
            .unwrap(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            ComplexError::NotChamber {
                components: vec![3, 3]
            }
        );
    }

    #[test]
    fn fat_ridge_not_thin() {
        let err = validate_thin_chamber(
            build_complex(&tokens(&[
                &["1", "2", "3"],
                &["1", "2", "4"],
                &["1", "2", "5"],
            ]))
            .unwrap(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            ComplexError::NotThin {
                ridge: "1,2".into(),
                count: 3
            }
        );
    }

    #[test]
    fn johnson_graph_of_simplex() {
        let a3 = builtin(Builtin::Simplex(3)).unwrap();
        let g = a3.adjacency_graph(1).unwrap();
        assert_eq!(g.num_nodes(), 6);
        assert!((0..6).all(|i| g.degree(i) == 4));
    }

    #[test]
    fn cube_graph_of_beta3() {
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        let g = b3.adjacency_graph(2).unwrap();
        assert_eq!(g.num_nodes(), 8);
        assert_eq!(g.num_edges(), 12);
        assert!((0..8).all(|i| g.degree(i) == 3));
    }

    #[test]
    fn vertex_graph_of_beta2_is_4_cycle() {
        let b2 = builtin(Builtin::CrossPolytope(2)).unwrap();
        let g = b2.adjacency_graph(0).unwrap();
        assert_eq!(g.num_nodes(), 4);
        assert_eq!(g.num_edges(), 4);
        assert!((0..4).all(|i| g.degree(i) == 2));
        // 1 and -1 are opposite, never adjacent.
        let one = b2.complex().face_by_labels(&["1"]).unwrap();
        let neg = b2.complex().face_by_labels(&["-1"]).unwrap();
        let i = g.node_index(&one).unwrap();
        let j = g.node_index(&neg).unwrap();
        assert!(!g.neighbors(i).contains(&j));
    }

    #[test]
    fn antipodal_distance_in_beta3() {
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        let g = b3.adjacency_graph(2).unwrap();
        let x = b3.complex().face_by_labels(&["1", "2", "3"]).unwrap();
        let y = b3.complex().face_by_labels(&["-1", "-2", "-3"]).unwrap();
        assert_eq!(path_distance(&g, &x, &y).unwrap(), 3);
        assert_eq!(path_distance(&g, &x, &x).unwrap(), 0);
    }

    #[test]
    fn bipyramid_distance_beats_intersection_bound() {
        let bp = builtin(Builtin::Bipyramid(6)).unwrap();
        assert_eq!(bp.num_facets(), 12);
        assert_eq!(bp.rank(), 3);
        let g = bp.adjacency_graph(2).unwrap();
        let x = bp.complex().face_by_labels(&["a", "1", "2"]).unwrap();
        let y = bp.complex().face_by_labels(&["a", "4", "5"]).unwrap();
        let d = path_distance(&g, &x, &y).unwrap();
        assert_eq!(d, 3);
        assert!(d > 3 - x.intersection(&y).len());
    }

    #[test]
    fn face_not_in_graph_reported() {
        let b2 = builtin(Builtin::CrossPolytope(2)).unwrap();
        let g = b2.adjacency_graph(1).unwrap();
        let bogus = Face::new(vec![VertexId(0), VertexId(2)]); // {1,-1} is no face
        assert!(matches!(
            path_distance(&g, &bogus, &bogus),
            Err(ComplexError::FaceNotInGraph { .. })
        ));
    }

    #[test]
    fn join_of_edges_is_square() {
        let a1 = builtin(Builtin::Simplex(1)).unwrap();
        let j = join(&a1, &a1).unwrap();
        assert_eq!(j.rank(), 2);
        assert_eq!(j.num_facets(), 4);
        let b2 = builtin(Builtin::CrossPolytope(2)).unwrap();
        assert!(are_isomorphic(&j, &b2));
    }

    #[test]
    fn join_rank_is_additive() {
        let a1 = builtin(Builtin::Simplex(1)).unwrap();
        let a2 = builtin(Builtin::Simplex(2)).unwrap();
        let j = join(&a1, &a2).unwrap();
        assert_eq!(j.rank(), 3);
        assert_eq!(j.num_facets(), a1.num_facets() * a2.num_facets());
        assert_eq!(j.num_facets(), 6);
        let bp = builtin(Builtin::Bipyramid(4)).unwrap();
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        assert_eq!(join(&bp, &b3).unwrap().rank(), 6);
    }

    #[test]
    fn builtin_counts() {
        assert_eq!(builtin(Builtin::Simplex(3)).unwrap().num_facets(), 4);
        assert_eq!(builtin(Builtin::CrossPolytope(4)).unwrap().num_facets(), 16);
        assert_eq!(builtin(Builtin::Bipyramid(6)).unwrap().num_facets(), 12);
        assert!(builtin(Builtin::Bipyramid(2)).is_err());
        assert!(builtin(Builtin::Simplex(0)).is_err());
    }

    #[test]
    fn neighborliness() {
        let a4 = builtin(Builtin::Simplex(4)).unwrap();
        assert!(is_k_neighborly(&a4, 4));
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        assert!(!is_k_neighborly(&b3, 2));
        let j = join(
            &builtin(Builtin::Simplex(2)).unwrap(),
            &builtin(Builtin::Simplex(3)).unwrap(),
        )
        .unwrap();
        assert!(is_k_neighborly(&j, 2));
        assert!(!is_k_neighborly(&j, 3));
    }

    #[test]
    fn connectivity_cascades_to_every_level() {
        for tcc in [
            builtin(Builtin::Simplex(4)).unwrap(),
            builtin(Builtin::CrossPolytope(3)).unwrap(),
            builtin(Builtin::Bipyramid(5)).unwrap(),
        ] {
            for k in 0..tcc.rank() {
                assert!(tcc.adjacency_graph(k).unwrap().is_connected());
            }
        }
    }

    #[test]
    fn distance_never_beats_intersection_bound() {
        for tcc in [
            builtin(Builtin::CrossPolytope(3)).unwrap(),
            builtin(Builtin::Bipyramid(6)).unwrap(),
        ] {
            let n = tcc.rank();
            let g = tcc.adjacency_graph(n - 1).unwrap();
            for x in tcc.facets() {
                for y in tcc.facets() {
                    let d = path_distance(&g, x, y).unwrap();
                    assert!(d >= n - x.intersection(y).len());
                }
            }
        }
    }

    #[test]
    fn level_out_of_range() {
        let a2 = builtin(Builtin::Simplex(2)).unwrap();
        assert!(matches!(
            a2.adjacency_graph(2),
            Err(ComplexError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn octahedron_in_three_disguises() {
        // The 4-gonal bipyramid and the join of an edge with a square are
        // both the octahedron.
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        let bp4 = builtin(Builtin::Bipyramid(4)).unwrap();
        assert!(are_isomorphic(&b3, &bp4));
        let suspension = join(
            &builtin(Builtin::Simplex(1)).unwrap(),
            &builtin(Builtin::CrossPolytope(2)).unwrap(),
        )
        .unwrap();
        assert!(are_isomorphic(&b3, &suspension));
        // Counts alone rule out the others.
        assert!(!are_isomorphic(
            &b3,
            &builtin(Builtin::Bipyramid(5)).unwrap()
        ));
        assert!(!are_isomorphic(&b3, &builtin(Builtin::Simplex(3)).unwrap()));
    }

    #[test]
    fn cplx_round_trip_is_bit_exact() {
        let b3 = builtin(Builtin::CrossPolytope(3)).unwrap();
        let text = b3.complex().to_cplx();
        let reparsed = parse_cplx(&text).unwrap();
        assert_eq!(reparsed.to_cplx(), text);
        // Comments and blank lines are tolerated on input.
        let commented = format!("# cross-polytope\n\n{text}# trailing\n");
        assert_eq!(parse_cplx(&commented).unwrap().to_cplx(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_cplx("1 2 3\n1 2\n").unwrap_err();
        assert!(matches!(err, ComplexError::Parse { line: 2, .. }));
        assert!(matches!(
            parse_cplx("# nothing\n"),
            Err(ComplexError::EmptyComplex)
        ));
    }
}
