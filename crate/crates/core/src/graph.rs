//! Graph model, star-partition certificates and the partition verifier.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Graphs up to this many vertices get a bit-matrix for O(1) edge queries.
pub const MATRIX_LIMIT: usize = 10_000;

#[derive(Debug, Clone)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            words,
            bits: vec![0; words * n],
        }
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<Vertex>>,
    matrix: OnceLock<Option<BitMatrix>>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            n: self.n,
            m: self.m,
            adj: self.adj.clone(),
            matrix: OnceLock::new(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
            matrix: OnceLock::new(),
        }
    }

    /// Builds a graph, rejecting self-loops, out-of-range ids and duplicate edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{}, {}}}",
                    u.min(w[0]),
                    u.max(w[0])
                )));
            }
        }
        Ok(Graph {
            n,
            m,
            adj,
            matrix: OnceLock::new(),
        })
    }

    /// Like [`Graph::from_edges`] but silently drops duplicates (self-loops are still errors).
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list: Vec<(Vertex, Vertex)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        list.sort_unstable();
        list.dedup();
        Self::from_edges(n, list)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    fn matrix(&self) -> Option<&BitMatrix> {
        self.matrix
            .get_or_init(|| {
                (self.n <= MATRIX_LIMIT).then(|| {
                    let mut mat = BitMatrix::new(self.n);
                    for (u, list) in self.adj.iter().enumerate() {
                        for &v in list {
                            mat.set(u, v);
                        }
                    }
                    mat
                })
            })
            .as_ref()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match self.matrix() {
            Some(mat) => mat.get(u, v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if local[w] != usize::MAX {
                    adj[i].push(local[w]);
                    if i < local[w] {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        Graph {
            n: vertices.len(),
            m,
            adj,
            matrix: OnceLock::new(),
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n, edges).expect("relabeling a simple graph by a permutation")
    }
}

/// Bipartite graph with sides addressed by local indices.
///
/// Left vertex `i` and right vertex `j` carry host labels `left[i]` and
/// `right[j]`; by default these are `i` and `n_left + j`, which is also
/// the numbering used by [`BipartiteGraph::to_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: Vec<Vertex>,
    right: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
    radj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new<I>(n_left: usize, n_right: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let left = (0..n_left).collect();
        let right = (n_left..n_left + n_right).collect();
        Self::with_labels(left, right, edges)
    }

    /// `edges` use local indices `(left index, right index)`.
    pub fn with_labels<I>(left: Vec<Vertex>, right: Vec<Vertex>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut all: Vec<Vertex> = left.iter().chain(right.iter()).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("bipartite sides are not disjoint".into()));
        }
        let mut adj = vec![Vec::new(); left.len()];
        let mut radj = vec![Vec::new(); right.len()];
        for (u, w) in edges {
            if u >= left.len() || w >= right.len() {
                return Err(Error::InvalidGraph(format!("bipartite edge ({u}, {w}) out of range")));
            }
            adj[u].push(w);
            radj[w].push(u);
        }
        for list in adj.iter_mut().chain(radj.iter_mut()) {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph("duplicate bipartite edge".into()));
            }
        }
        Ok(BipartiteGraph { left, right, adj, radj })
    }

    /// Splits `g` into `left_side` and the rest; fails if an edge lies within a side.
    pub fn from_graph(g: &Graph, left_side: &[Vertex]) -> Result<Self> {
        let mut side = vec![usize::MAX; g.n()];
        let mut right = Vec::new();
        for (i, &v) in left_side.iter().enumerate() {
            side[v] = i;
        }
        let mut right_index = vec![usize::MAX; g.n()];
        for v in 0..g.n() {
            if side[v] == usize::MAX {
                right_index[v] = right.len();
                right.push(v);
            }
        }
        let mut edges = Vec::new();
        for (u, v) in g.edges() {
            match (side[u] != usize::MAX, side[v] != usize::MAX) {
                (true, false) => edges.push((side[u], right_index[v])),
                (false, true) => edges.push((side[v], right_index[u])),
                _ => {
                    return Err(Error::InvalidGraph(format!(
                        "edge {{{u}, {v}}} does not cross the bipartition"
                    )))
                }
            }
        }
        Self::with_labels(left_side.to_vec(), right, edges)
    }

    pub fn n_left(&self) -> usize {
        self.left.len()
    }

    pub fn n_right(&self) -> usize {
        self.right.len()
    }

    pub fn left_labels(&self) -> &[Vertex] {
        &self.left
    }

    pub fn right_labels(&self) -> &[Vertex] {
        &self.right
    }

    pub fn left_neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn right_neighbors(&self, w: usize) -> &[usize] {
        &self.radj[w]
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.adj[u].binary_search(&w).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&w| (u, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// Plain graph on `0..n_left + n_right` (left first, then right).
    pub fn to_graph(&self) -> Graph {
        let nl = self.n_left();
        Graph::from_edges(nl + self.n_right(), self.edges().map(|(u, w)| (u, nl + w)))
            .expect("bipartite edges are simple")
    }
}

/// One star of a partition: a center and its `s` leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
}

impl Block {
    pub fn new(center: Vertex, mut leaves: Vec<Vertex>) -> Self {
        leaves.sort_unstable();
        Block { center, leaves }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(self.center).chain(self.leaves.iter().copied())
    }

    pub fn sorted_vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<_> = self.vertices().collect();
        vs.sort_unstable();
        vs
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.center)?;
        for l in &self.leaves {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// A partition of the vertex set into `s`-stars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPartition {
    pub s: usize,
    pub blocks: Vec<Block>,
}

impl StarPartition {
    pub fn new(s: usize, blocks: Vec<Block>) -> Self {
        StarPartition { s, blocks }
    }

    /// Blocks sorted by smallest member; stable textual form for goldens.
    pub fn normalized(mut self) -> Self {
        self.blocks.sort_by_key(|b| b.vertices().min().unwrap_or(usize::MAX));
        self
    }

    pub fn centers(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.blocks.iter().map(|b| b.center)
    }
}

/// First defect found by [`verify_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    StarSizeMismatch { expected: usize, got: usize },
    BlockSize { block: usize, size: usize },
    OutOfRange { vertex: Vertex },
    Overlap { vertex: Vertex },
    Missing { vertex: Vertex },
    NoStar { block: usize, vertices: Vec<Vertex> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::StarSizeMismatch { expected, got } => {
                write!(f, "partition has s = {got}, expected s = {expected}")
            }
            Violation::BlockSize { block, size } => {
                write!(f, "block {block} has {size} vertices")
            }
            Violation::OutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            Violation::Overlap { vertex } => write!(f, "vertex {vertex} covered twice"),
            Violation::Missing { vertex } => write!(f, "vertex {vertex} not covered"),
            Violation::NoStar { block, vertices } => {
                write!(f, "block {block} {vertices:?} contains no star")
            }
        }
    }
}

/// Returns the first vertex (by id) of `subset` with at least `s` neighbors inside `subset`.
pub fn contains_star(g: &Graph, subset: &[Vertex], s: usize) -> Option<Vertex> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted
        .into_iter()
        .find(|&v| subset.iter().filter(|&&w| w != v && g.has_edge(v, w)).count() >= s)
}

/// Checks that `p` is an `s`-star partition of `g`.
///
/// Blocks are treated as vertex sets: when the recorded center is not
/// adjacent to every leaf, the other members are tried as centers.
pub fn verify_partition(g: &Graph, s: usize, p: &StarPartition) -> std::result::Result<(), Violation> {
    if p.s != s {
        return Err(Violation::StarSizeMismatch { expected: s, got: p.s });
    }
    let mut covered = vec![false; g.n()];
    for (i, block) in p.blocks.iter().enumerate() {
        if block.leaves.len() != s {
            return Err(Violation::BlockSize {
                block: i,
                size: block.leaves.len() + 1,
            });
        }
        for v in block.vertices() {
            if v >= g.n() {
                return Err(Violation::OutOfRange { vertex: v });
            }
            if covered[v] {
                return Err(Violation::Overlap { vertex: v });
            }
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(Violation::Missing { vertex: v });
    }
    for (i, block) in p.blocks.iter().enumerate() {
        let stored_ok = block.leaves.iter().all(|&l| g.has_edge(block.center, l));
        if !stored_ok && contains_star(g, &block.sorted_vertices(), s).is_none() {
            return Err(Violation::NoStar {
                block: i,
                vertices: block.sorted_vertices(),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// Every component size is divisible by `s + 1`.
    PerComponent(Vec<Vec<Vertex>>),
    Infeasible {
        component_size: usize,
        block_size: usize,
    },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::PerComponent(_))
    }
}

/// Stars never cross components, so each component size must be a multiple of `s + 1`.
pub fn feasibility_precheck(g: &Graph, s: usize) -> Feasibility {
    let comps = g.components();
    match comps.iter().find(|c| c.len() % (s + 1) != 0) {
        Some(c) => Feasibility::Infeasible {
            component_size: c.len(),
            block_size: s + 1,
        },
        None => Feasibility::PerComponent(comps),
    }
}
