//! Finite Coxeter groups from Coxeter matrices, their Cayley graphs,
//! parabolic cosets and Coxeter complexes.
//!
//! Groups are realized exactly as permutation tables over their own elements
//! (the regular representation), built by coset enumeration over the trivial
//! subgroup. This covers every finite type uniformly, including H₃ and H₄
//! which have no rational matrix representation.

use std::collections::{HashMap, VecDeque};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{
    build_complex, validate_thin_chamber, ComplexError, Face, ThinChamberComplex, VertexId,
};
use crate::zigzag::{enumerate_zigzags, t_orbit, ComplexAutomorphism, Flag};

/// Element budget used when none is given; covers E₆ (51,840) but not E₇.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("element budget {cap} exceeded; the group may be infinite")]
    BudgetExceeded { cap: usize },
    #[error("unknown Coxeter system name `{0}`")]
    UnknownName(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("element has length {length} > rank {rank}")]
    LengthTooLarge { length: usize, rank: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("coset enumeration derived contradictory products")]
    Coincidence,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A symmetric matrix of generator orders: `m_ii = 1`, `m_ij = m_ji ≥ 2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterMatrix {
    n: usize,
    m: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(m: Vec<Vec<u32>>) -> Result<CoxeterMatrix, CoxeterError> {
        let n = m.len();
        if n == 0 {
            return Err(CoxeterError::InvalidMatrix("no generators".into()));
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::InvalidMatrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != 1 {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "diagonal entry ({},{}) must be 1",
                        i + 1,
                        j + 1
                    )));
                }
                if i != j && v < 2 {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "off-diagonal entry ({},{}) must be at least 2",
                        i + 1,
                        j + 1
                    )));
                }
                if v != m[j][i] {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "entry ({},{}) is not symmetric",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { n, m })
    }

    /// Builds a matrix from the orders on consecutive generators; everything
    /// else commutes. This is the "string diagram" shape.
    pub fn from_string_orders(orders: &[u32]) -> Result<CoxeterMatrix, CoxeterError> {
        let n = orders.len() + 1;
        let mut m = vec![vec![2u32; n]; n];
        for i in 0..n {
            m[i][i] = 1;
        }
        for (i, &o) in orders.iter().enumerate() {
            m[i][i + 1] = o;
            m[i + 1][i] = o;
        }
        CoxeterMatrix::new(m)
    }

    /// Resolves a standard name: `An`, `Bn`, `Dn`, `E6`/`E7`/`E8`, `F4`,
    /// `G2`, `H3`, `H4`, `I2(m)`.
    pub fn builtin(name: &str) -> Result<CoxeterMatrix, CoxeterError> {
        let bad = || CoxeterError::UnknownName(name.to_string());
        if let Some(rest) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = rest.parse().map_err(|_| bad())?;
            if m < 3 {
                return Err(bad());
            }
            return CoxeterMatrix::from_string_orders(&[m]);
        }
        let (letter, num) = name.split_at(1);
        let n: usize = num.parse().map_err(|_| bad())?;
        match (letter, n) {
            ("A", n) if n >= 1 => CoxeterMatrix::from_string_orders(&vec![3; n - 1]),
            ("B", n) | ("C", n) if n >= 2 => {
                let mut orders = vec![3; n - 1];
                orders[n - 2] = 4;
                CoxeterMatrix::from_string_orders(&orders)
            }
            ("D", n) if n >= 3 => {
                // Chain s1..s_{n-1} with s_n branching off s_{n-2}.
                let mut mat = CoxeterMatrix::from_string_orders(&vec![3; n - 2])?;
                mat.n = n;
                for row in &mut mat.m {
                    row.push(2);
                }
                mat.m.push(vec![2; n]);
                mat.m[n - 1][n - 1] = 1;
                mat.m[n - 3][n - 1] = 3;
                mat.m[n - 1][n - 3] = 3;
                CoxeterMatrix::new(mat.m)
            }
            ("E", n) if (6..=8).contains(&n) => {
                let mut mat = CoxeterMatrix::from_string_orders(&vec![3; n - 2])?;
                mat.n = n;
                for row in &mut mat.m {
                    row.push(2);
                }
                mat.m.push(vec![2; n]);
                mat.m[n - 1][n - 1] = 1;
                mat.m[2][n - 1] = 3;
                mat.m[n - 1][2] = 3;
                CoxeterMatrix::new(mat.m)
            }
            ("F", 4) => CoxeterMatrix::from_string_orders(&[3, 4, 3]),
            ("G", 2) => CoxeterMatrix::from_string_orders(&[6]),
            ("H", 3) => CoxeterMatrix::from_string_orders(&[5, 3]),
            ("H", 4) => CoxeterMatrix::from_string_orders(&[5, 3, 3]),
            _ => Err(bad()),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self, i: usize, j: usize) -> u32 {
        self.m[i][j]
    }

    /// True when all non-consecutive generators commute.
    pub fn is_string_diagram(&self) -> bool {
        (0..self.n)
            .cartesian_product(0..self.n)
            .filter(|(i, j)| i.abs_diff(*j) >= 2)
            .all(|(i, j)| self.m[i][j] == 2)
    }

    /// The same diagram with generator indices reversed. For a string diagram
    /// this swaps a polytope construction with its dual.
    pub fn reversed(&self) -> CoxeterMatrix {
        let n = self.n;
        let mut m = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = self.m[n - 1 - i][n - 1 - j];
            }
        }
        CoxeterMatrix { n, m }
    }

    /// Parses the `.cox` format: first line the rank, then the matrix rows.
    /// `#` starts a comment; blank lines are skipped.
    pub fn parse_cox(text: &str) -> Result<CoxeterMatrix, CoxeterError> {
        let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.is_empty() {
                rows.push((lineno + 1, tokens));
            }
        }
        if rows.is_empty() {
            return Err(CoxeterError::Parse {
                line: 1,
                msg: "empty file".into(),
            });
        }
        let (first_line, header) = &rows[0];
        if header.len() != 1 {
            return Err(CoxeterError::Parse {
                line: *first_line,
                msg: "expected the rank alone on the first line".into(),
            });
        }
        let n: usize = header[0].parse().map_err(|_| CoxeterError::Parse {
            line: *first_line,
            msg: format!("invalid rank `{}`", header[0]),
        })?;
        if rows.len() != n + 1 {
            return Err(CoxeterError::Parse {
                line: rows.last().unwrap().0,
                msg: format!("expected {n} matrix rows, found {}", rows.len() - 1),
            });
        }
        let mut m = Vec::with_capacity(n);
        for (lineno, tokens) in &rows[1..] {
            if tokens.len() != n {
                return Err(CoxeterError::Parse {
                    line: *lineno,
                    msg: format!("expected {n} entries, found {}", tokens.len()),
                });
            }
            let mut row = Vec::with_capacity(n);
            for t in tokens {
                row.push(t.parse().map_err(|_| CoxeterError::Parse {
                    line: *lineno,
                    msg: format!("invalid entry `{t}`"),
                })?);
            }
            m.push(row);
        }
        CoxeterMatrix::new(m)
    }

    pub fn to_cox(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in &self.m {
            out.push_str(&row.iter().map(|v| v.to_string()).join(" "));
            out.push('\n');
        }
        out
    }
}

/// A finite Coxeter group as generator-action permutations on its elements.
/// Element 0 is the identity; numbering follows discovery order, scanning
/// elements in order and generators in matrix order.
#[derive(Clone, Debug)]
pub struct GroupTable {
    num_gens: usize,
    /// `right[g][w] = w·s_g`; each is a fixed-point-free involution.
    right: Vec<Vec<u32>>,
    /// Cayley-graph distance from the identity.
    length: Vec<u32>,
    /// BFS tree: `w = parent.0 · s_{parent.1}` with `l(parent.0) = l(w)-1`.
    parent: Vec<(u32, u8)>,
}

struct RelationRow {
    word: u16,
    left_idx: u16,
    right_idx: u16,
    left_elem: u32,
    right_elem: u32,
}

/// Relation-table state with wakeup-driven filling: each open row waits on
/// the one product cell blocking each of its ends, and setting a cell wakes
/// exactly the rows waiting there. Total work stays near-linear in
/// `|W| · Σ relation lengths`.
struct Deductions {
    words: Vec<Vec<u8>>,
    rows: Vec<RelationRow>,
    waiting: HashMap<(u32, u8), Vec<u32>>,
    queue: VecDeque<u32>,
}

const ROW_CLOSED: u16 = u16::MAX;

impl Deductions {
    fn add_row(&mut self, word: u16, elem: u32) {
        let len = self.words[word as usize].len() as u16;
        self.rows.push(RelationRow {
            word,
            left_idx: 0,
            right_idx: len - 1,
            left_elem: elem,
            right_elem: elem,
        });
        self.queue.push_back(self.rows.len() as u32 - 1);
    }

    /// Advances one row as far as the table allows. A row whose gap closes
    /// to a single letter yields the deduction
    /// `left_elem · word[idx] = right_elem`.
    fn advance(&mut self, row_id: u32, right: &[Vec<u32>]) -> Option<(u32, u8, u32)> {
        let row = &mut self.rows[row_id as usize];
        if row.left_idx == ROW_CLOSED {
            return None;
        }
        let word = &self.words[row.word as usize];
        while row.left_idx < row.right_idx {
            let g = word[row.left_idx as usize] as usize;
            let next = right[g][row.left_elem as usize];
            if next == u32::MAX {
                break;
            }
            row.left_elem = next;
            row.left_idx += 1;
        }
        while row.left_idx < row.right_idx {
            let g = word[row.right_idx as usize] as usize;
            let prev = right[g][row.right_elem as usize];
            if prev == u32::MAX {
                break;
            }
            row.right_elem = prev;
            row.right_idx -= 1;
        }
        if row.left_idx == row.right_idx {
            let fact = (row.left_elem, word[row.left_idx as usize], row.right_elem);
            row.left_idx = ROW_CLOSED;
            Some(fact)
        } else {
            let left_key = (row.left_elem, word[row.left_idx as usize]);
            let right_key = (row.right_elem, word[row.right_idx as usize]);
            self.waiting.entry(left_key).or_default().push(row_id);
            if right_key != left_key {
                self.waiting.entry(right_key).or_default().push(row_id);
            }
            None
        }
    }

    fn wake(&mut self, x: u32, g: u8) {
        if let Some(rows) = self.waiting.remove(&(x, g)) {
            self.queue.extend(rows);
        }
    }
}

/// Enumerates the group of a Coxeter matrix, failing once more than `cap`
/// elements appear (the matrix may present an infinite group).
pub fn enumerate_group(matrix: &CoxeterMatrix, cap: usize) -> Result<GroupTable, CoxeterError> {
    let n = matrix.rank();
    let mut right: Vec<Vec<u32>> = vec![vec![u32::MAX]; n];
    let mut ded = Deductions {
        words: Vec::new(),
        rows: Vec::new(),
        waiting: HashMap::new(),
        queue: VecDeque::new(),
    };
    for j in 0..n {
        for i in 0..j {
            let m = matrix.order(i, j) as usize;
            ded.words
                .push((0..m).flat_map(|_| [i as u8, j as u8]).collect());
        }
    }
    let num_words = ded.words.len();
    for w in 0..num_words as u16 {
        ded.add_row(w, 0);
    }

    let mut size = 1usize;
    let set_product = |right: &mut Vec<Vec<u32>>,
                       ded: &mut Deductions,
                       x: u32,
                       g: u8,
                       y: u32|
     -> Result<(), CoxeterError> {
        for (a, b) in [(x, y), (y, x)] {
            let cell = &mut right[g as usize][a as usize];
            if *cell == u32::MAX {
                *cell = b;
                ded.wake(a, g);
            } else if *cell != b {
                return Err(CoxeterError::Coincidence);
            }
        }
        Ok(())
    };

    let mut elem = 0usize;
    while elem < size {
        for g in 0..n {
            if right[g][elem] != u32::MAX {
                continue;
            }
            if size >= cap {
                return Err(CoxeterError::BudgetExceeded { cap });
            }
            let new = size as u32;
            size += 1;
            for col in right.iter_mut() {
                col.push(u32::MAX);
            }
            set_product(&mut right, &mut ded, elem as u32, g as u8, new)?;
            for w in 0..num_words as u16 {
                ded.add_row(w, new);
            }
            // Saturate deductions before defining anything else.
            while let Some(row_id) = ded.queue.pop_front() {
                if let Some((x, g, y)) = ded.advance(row_id, &right) {
                    set_product(&mut right, &mut ded, x, g, y)?;
                }
            }
        }
        elem += 1;
    }
    debug_assert!(
        ded.rows.iter().all(|r| r.left_idx == ROW_CLOSED),
        "complete table left a relation row open"
    );

    // Lengths and a shortest-word tree from a BFS over the finished table.
    let mut length = vec![u32::MAX; size];
    let mut parent = vec![(0u32, 0u8); size];
    length[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(w) = queue.pop_front() {
        for g in 0..n {
            let v = right[g][w as usize];
            if length[v as usize] == u32::MAX {
                length[v as usize] = length[w as usize] + 1;
                parent[v as usize] = (w, g as u8);
                queue.push_back(v);
            }
        }
    }
    Ok(GroupTable {
        num_gens: n,
        right,
        length,
        parent,
    })
}

impl GroupTable {
    pub fn size(&self) -> usize {
        self.right[0].len()
    }

    pub fn num_gens(&self) -> usize {
        self.num_gens
    }

    pub const IDENTITY: u32 = 0;

    /// Right multiplication by a generator.
    pub fn apply_gen(&self, w: u32, g: usize) -> u32 {
        self.right[g][w as usize]
    }

    /// Cayley-graph distance from the identity.
    pub fn length(&self, w: u32) -> usize {
        self.length[w as usize] as usize
    }

    /// A reduced word for `w`, as generator indices.
    pub fn word(&self, w: u32) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        let mut cur = w;
        while cur != 0 {
            let (prev, g) = self.parent[cur as usize];
            word.push(g as usize);
            cur = prev;
        }
        word.reverse();
        word
    }

    pub fn word_string(&self, w: u32) -> String {
        if w == 0 {
            return "e".into();
        }
        self.word(w).iter().map(|g| format!("s{}", g + 1)).join("")
    }

    /// Applies a generator word on the right.
    pub fn apply_word(&self, w: u32, word: &[usize]) -> u32 {
        word.iter().fold(w, |acc, &g| self.apply_gen(acc, g))
    }

    pub fn mult(&self, a: u32, b: u32) -> u32 {
        self.apply_word(a, &self.word(b))
    }

    /// Generators are involutions, so the inverse word is the reverse word.
    pub fn inverse(&self, w: u32) -> u32 {
        self.word(w)
            .iter()
            .rev()
            .fold(0, |acc, &g| self.apply_gen(acc, g))
    }

    /// The product `s_{delta[0]} ⋯ s_{delta[n-1]}`.
    pub fn coxeter_element(&self, delta: &[usize]) -> u32 {
        self.apply_word(0, delta)
    }

    pub fn element_order(&self, w: u32) -> usize {
        let mut order = 1;
        let mut cur = w;
        while cur != 0 {
            cur = self.mult(cur, w);
            order += 1;
        }
        order
    }

    /// Sanity-checks the finished table: fixed-point-free involutions, braid
    /// relations, transitivity from the identity.
    pub fn validate(&self, matrix: &CoxeterMatrix) -> Result<(), CoxeterError> {
        let n = self.num_gens;
        let size = self.size();
        for g in 0..n {
            for w in 0..size as u32 {
                let v = self.apply_gen(w, g);
                if v == w {
                    return Err(CoxeterError::VerificationFailed(format!(
                        "generator {g} fixes element {w}"
                    )));
                }
                if self.apply_gen(v, g) != w {
                    return Err(CoxeterError::VerificationFailed(format!(
                        "generator {g} is not an involution at element {w}"
                    )));
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let m = matrix.order(i, j) as usize;
                let word: Vec<usize> = (0..m).flat_map(|_| [i, j]).collect();
                for w in 0..size as u32 {
                    if self.apply_word(w, &word) != w {
                        return Err(CoxeterError::VerificationFailed(format!(
                            "braid relation ({},{}) fails at element {w}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        if self.length.contains(&u32::MAX) {
            return Err(CoxeterError::VerificationFailed(
                "the generator action is not transitive".into(),
            ));
        }
        Ok(())
    }
}

/// The order of a Coxeter element, verified independent of the generator
/// order on `min(n!, 24)` permutations drawn with the given seed.
pub fn coxeter_number(table: &GroupTable, seed: u64) -> Result<usize, CoxeterError> {
    let n = table.num_gens();
    let identity_order: Vec<usize> = (0..n).collect();
    let h = table.element_order(table.coxeter_element(&identity_order));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = factorial_capped(n, 24);
    for _ in 0..samples {
        let mut delta = identity_order.clone();
        delta.shuffle(&mut rng);
        let order = table.element_order(table.coxeter_element(&delta));
        if order != h {
            return Err(CoxeterError::VerificationFailed(format!(
                "Coxeter element for order {delta:?} has order {order}, expected {h}"
            )));
        }
    }
    Ok(h)
}

fn factorial_capped(n: usize, cap: usize) -> usize {
    let mut f = 1usize;
    for i in 1..=n {
        f = f.saturating_mul(i);
        if f >= cap {
            return cap;
        }
    }
    f
}

/// Left cosets of a standard parabolic subgroup.
///
/// `removed` lists the 0-based generator indices *omitted* from the subgroup:
/// the subgroup is generated by every other generator. Cosets are numbered by
/// their least element.
#[derive(Clone, Debug)]
pub struct ParabolicCosets {
    removed: Vec<usize>,
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

pub fn parabolic_cosets(table: &GroupTable, removed: &[usize]) -> ParabolicCosets {
    let n = table.num_gens();
    let allowed: Vec<usize> = (0..n).filter(|g| !removed.contains(g)).collect();
    let size = table.size();
    let mut coset_of = vec![u32::MAX; size];
    let mut reps = Vec::new();
    for start in 0..size as u32 {
        if coset_of[start as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(start);
        coset_of[start as usize] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for &g in &allowed {
                let v = table.apply_gen(w, g);
                if coset_of[v as usize] == u32::MAX {
                    coset_of[v as usize] = id;
                    queue.push_back(v);
                }
            }
        }
    }
    ParabolicCosets {
        removed: removed.to_vec(),
        coset_of,
        reps,
    }
}

impl ParabolicCosets {
    pub fn removed(&self) -> &[usize] {
        &self.removed
    }

    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_of(&self, w: u32) -> u32 {
        self.coset_of[w as usize]
    }

    /// The least element of the coset.
    pub fn representative(&self, coset: u32) -> u32 {
        self.reps[coset as usize]
    }
}

/// The Coxeter complex Σ(W,S): vertices are the cosets `w·W^i` over all
/// maximal parabolics, and each group element spans the facet of its cosets.
/// Facets correspond one-to-one with group elements, and the facet graph is
/// the Cayley graph.
pub struct CoxeterComplexData {
    pub matrix: CoxeterMatrix,
    pub table: GroupTable,
    pub complex: ThinChamberComplex,
    /// Per generator index, the cosets of the parabolic omitting it.
    cosets: Vec<ParabolicCosets>,
    vertex_at: Vec<Vec<VertexId>>,
    element_facet: Vec<Face>,
    facet_element: HashMap<Face, u32>,
}

/// Label for the coset vertex `w·W^i`; `typ` is 0-based, printed 1-based.
/// Dots keep the token clear of the `.cplx` comment character.
pub fn coset_label(typ: usize, coset: u32) -> String {
    format!("W{}.{}", typ + 1, coset)
}

pub fn coxeter_complex(
    matrix: &CoxeterMatrix,
    cap: usize,
) -> Result<CoxeterComplexData, CoxeterError> {
    let table = enumerate_group(matrix, cap)?;
    coxeter_complex_from_table(matrix.clone(), table)
}

pub fn coxeter_complex_from_table(
    matrix: CoxeterMatrix,
    table: GroupTable,
) -> Result<CoxeterComplexData, CoxeterError> {
    let n = matrix.rank();
    let size = table.size();
    let cosets: Vec<ParabolicCosets> = (0..n).map(|i| parabolic_cosets(&table, &[i])).collect();
    let mut facet_list: Vec<Vec<String>> = Vec::with_capacity(size);
    for w in 0..size as u32 {
        facet_list.push(
            (0..n)
                .map(|i| coset_label(i, cosets[i].coset_of(w)))
                .collect(),
        );
    }
    let complex = validate_thin_chamber(build_complex(&facet_list)?)?;
    let vertex_at: Vec<Vec<VertexId>> = (0..n)
        .map(|i| {
            (0..cosets[i].num_cosets() as u32)
                .map(|c| {
                    complex
                        .complex()
                        .vertex_by_label(&coset_label(i, c))
                        .expect("coset vertex interned")
                })
                .collect()
        })
        .collect();
    let element_facet: Vec<Face> = (0..size as u32)
        .map(|w| {
            Face::new(
                (0..n)
                    .map(|i| vertex_at[i][cosets[i].coset_of(w) as usize])
                    .collect(),
            )
        })
        .collect();
    let facet_element = element_facet
        .iter()
        .enumerate()
        .map(|(w, f)| (f.clone(), w as u32))
        .collect();
    Ok(CoxeterComplexData {
        matrix,
        table,
        complex,
        cosets,
        vertex_at,
        element_facet,
        facet_element,
    })
}

impl CoxeterComplexData {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn cosets(&self, typ: usize) -> &ParabolicCosets {
        &self.cosets[typ]
    }

    /// The complex vertex carrying the coset `w·W^{typ+1}`.
    pub fn coset_vertex(&self, typ: usize, w: u32) -> VertexId {
        self.vertex_at[typ][self.cosets[typ].coset_of(w) as usize]
    }

    pub fn facet_of_element(&self, w: u32) -> &Face {
        &self.element_facet[w as usize]
    }

    pub fn element_of_facet(&self, facet: &Face) -> Option<u32> {
        self.facet_element.get(facet).copied()
    }

    /// The flag with vertex order `w·W^{delta[0]+1}, …, w·W^{delta[n-1]+1}`.
    /// Every flag of the complex arises from exactly one `(w, delta)` pair.
    pub fn flag(&self, w: u32, delta: &[usize]) -> Flag {
        Flag::from_sequence_unchecked(delta.iter().map(|&i| self.coset_vertex(i, w)).collect())
    }

    /// The automorphism sending each coset `v·W^i` to `w·v·W^i`.
    pub fn left_multiplication(&self, w: u32) -> ComplexAutomorphism {
        let mut map = vec![VertexId(0); self.complex.num_vertices()];
        for (typ, cs) in self.cosets.iter().enumerate() {
            for c in 0..cs.num_cosets() as u32 {
                let image = self.table.mult(w, cs.representative(c));
                map[self.vertex_at[typ][c as usize].index()] = self.coset_vertex(typ, image);
            }
        }
        ComplexAutomorphism::from_map_unchecked(map)
    }
}

/// True iff some reduced expression of `w` uses pairwise-distinct generators.
/// Defined for `l(w) ≤ n`; walks right descents, consuming one unused letter
/// per step.
pub fn distinct_reduced_expression_exists(
    table: &GroupTable,
    w: u32,
) -> Result<bool, CoxeterError> {
    let n = table.num_gens();
    if table.length(w) > n {
        return Err(CoxeterError::LengthTooLarge {
            length: table.length(w),
            rank: n,
        });
    }
    fn descend(table: &GroupTable, w: u32, used: u32) -> bool {
        if w == GroupTable::IDENTITY {
            return true;
        }
        for g in 0..table.num_gens() {
            if used >> g & 1 == 1 {
                continue;
            }
            let v = table.apply_gen(w, g);
            if table.length(v) + 1 == table.length(w) && descend(table, v, used | 1 << g) {
                return true;
            }
        }
        false
    }
    Ok(descend(table, w, 0))
}

/// Outcome of the Coxeter-complex zigzag law check.
#[derive(Clone, Debug)]
pub struct ZigzagLawReport {
    pub group_order: usize,
    pub rank: usize,
    pub coxeter_number: usize,
    pub zigzag_count: usize,
    pub zigzag_length: usize,
    pub z_simple: bool,
    pub shadow_samples: usize,
}

/// Verifies the zigzag law of the Coxeter complex: every zigzag is simple of
/// length `n·h`, there are exactly `|W|(n-1)!/2h` of them, and sampled
/// orbits have the coset 0-shadow and the partial-product facet shadow.
pub fn verify_zigzag_law(
    data: &CoxeterComplexData,
    seed: u64,
    shadow_samples: usize,
) -> Result<ZigzagLawReport, CoxeterError> {
    let n = data.rank();
    let size = data.table.size();
    let h = coxeter_number(&data.table, seed)?;
    let zigzags = enumerate_zigzags(&data.complex);

    for z in &zigzags {
        if z.length() != n * h {
            return Err(CoxeterError::VerificationFailed(format!(
                "zigzag of length {} found, expected n·h = {}",
                z.length(),
                n * h
            )));
        }
        if !z.is_simple() {
            return Err(CoxeterError::VerificationFailed(
                "a zigzag repeats a vertex in its 0-shadow".into(),
            ));
        }
    }
    let lhs = zigzags.len() as u128 * 2 * h as u128;
    let rhs = size as u128 * factorial_u128(n - 1);
    if lhs != rhs {
        return Err(CoxeterError::VerificationFailed(format!(
            "found {} zigzags; |W|(n-1)!/2h = {}/{} is expected",
            zigzags.len(),
            rhs,
            2 * h
        )));
    }

    // Sampled orbits must match the closed-form shadows.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<usize> = (0..n).collect();
    for _ in 0..shadow_samples {
        let w = (rand::Rng::gen_range(&mut rng, 0..size)) as u32;
        let mut delta = base.clone();
        delta.shuffle(&mut rng);
        let orbit = t_orbit(&data.complex, &data.flag(w, &delta));
        if orbit.len() != n * h {
            return Err(CoxeterError::VerificationFailed(format!(
                "orbit of ({w}, {delta:?}) has length {}, expected {}",
                orbit.len(),
                n * h
            )));
        }
        let s_delta = data.table.coxeter_element(&delta);
        let mut power = GroupTable::IDENTITY; // s_delta^q as q advances
        for q in 0..h {
            let wq = data.table.mult(w, power);
            for (j, &typ) in delta.iter().enumerate() {
                let expected = data.coset_vertex(typ, wq);
                let actual = orbit[q * n + j].sequence()[0];
                if expected != actual {
                    return Err(CoxeterError::VerificationFailed(format!(
                        "0-shadow of ({w}, {delta:?}) differs at position {}",
                        q * n + j
                    )));
                }
            }
            // Facet shadow: w·s_delta^q·s_{delta[0]}⋯s_{delta[j-1]} at q·n+j.
            let mut partial = wq;
            for j in 0..n {
                if orbit[q * n + j].facet() != *data.facet_of_element(partial) {
                    return Err(CoxeterError::VerificationFailed(format!(
                        "facet shadow of ({w}, {delta:?}) differs at position {}",
                        q * n + j
                    )));
                }
                partial = data.table.apply_gen(partial, delta[j]);
            }
            power = data.table.mult(power, s_delta);
        }
    }

    Ok(ZigzagLawReport {
        group_order: size,
        rank: n,
        coxeter_number: h,
        zigzag_count: zigzags.len(),
        zigzag_length: n * h,
        z_simple: true,
        shadow_samples,
    })
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}
