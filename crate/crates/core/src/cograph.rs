//! Star partitions of cographs by dynamic programming over a binary cotree.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{feasibility_precheck, Block, Graph, StarPartition, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CotreeNode {
    Leaf(Vertex),
    Union(usize, usize),
    Join(usize, usize),
}

/// Binary cotree; children always precede their parent in `nodes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cotree {
    nodes: Vec<CotreeNode>,
    sizes: Vec<usize>,
    root: Option<usize>,
}

impl Default for Cotree {
    fn default() -> Self {
        Self::new()
    }
}

impl Cotree {
    pub fn new() -> Self {
        Cotree {
            nodes: Vec::new(),
            sizes: Vec::new(),
            root: None,
        }
    }

    fn push(&mut self, node: CotreeNode, size: usize) -> usize {
        self.nodes.push(node);
        self.sizes.push(size);
        self.root = Some(self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn leaf(&mut self, v: Vertex) -> usize {
        self.push(CotreeNode::Leaf(v), 1)
    }

    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let size = self.sizes[a] + self.sizes[b];
        self.push(CotreeNode::Union(a, b), size)
    }

    pub fn join(&mut self, a: usize, b: usize) -> usize {
        let size = self.sizes[a] + self.sizes[b];
        self.push(CotreeNode::Join(a, b), size)
    }

    /// The most recently added node unless set otherwise.
    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn set_root(&mut self, x: usize) {
        self.root = Some(x);
    }

    pub fn node(&self, x: usize) -> CotreeNode {
        self.nodes[x]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of graph vertices below `x`.
    pub fn size(&self, x: usize) -> usize {
        self.sizes[x]
    }

    /// Graph vertices below `x`, in leaf order.
    pub fn vertices(&self, x: usize) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.sizes[x]);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match self.nodes[y] {
                CotreeNode::Leaf(v) => out.push(v),
                CotreeNode::Union(a, b) | CotreeNode::Join(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    /// The graph the tree denotes, on `n` vertices.
    pub fn to_graph(&self, n: usize) -> Result<Graph> {
        let mut edges = Vec::new();
        for node in &self.nodes {
            if let CotreeNode::Join(a, b) = *node {
                let vb = self.vertices(b);
                for u in self.vertices(a) {
                    edges.extend(vb.iter().map(|&w| (u, w)));
                }
            }
        }
        Graph::from_edges(n, edges)
    }

    fn write_sexp(&self, x: usize, out: &mut String) {
        match self.nodes[x] {
            CotreeNode::Leaf(v) => out.push_str(&v.to_string()),
            CotreeNode::Union(a, b) | CotreeNode::Join(a, b) => {
                let tag = if matches!(self.nodes[x], CotreeNode::Union(..)) {
                    "union"
                } else {
                    "join"
                };
                out.push('(');
                out.push_str(tag);
                out.push(' ');
                self.write_sexp(a, out);
                out.push(' ');
                self.write_sexp(b, out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Cotree {
    /// Nested s-expression such as `(join (union 0 2) 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if let Some(r) = self.root {
            self.write_sexp(r, &mut out);
        }
        f.write_str(&out)
    }
}

// Components of `vs` in g (complement = false) or in its complement.
fn split_parts(g: &Graph, vs: &[Vertex], complement: bool) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; vs.len()];
    let mut parts = Vec::new();
    for start in 0..vs.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut part = vec![vs[start]];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..vs.len() {
                if !seen[j] && g.has_edge(vs[i], vs[j]) != complement {
                    seen[j] = true;
                    part.push(vs[j]);
                    stack.push(j);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// Builds a cotree by splitting into components or co-components;
/// `None` if some piece of at least two vertices splits neither way,
/// i.e. `g` contains an induced P4.
pub fn build_cotree(g: &Graph) -> Option<Cotree> {
    let mut tree = Cotree::new();
    if g.n() == 0 {
        return Some(tree);
    }
    let all: Vec<Vertex> = (0..g.n()).collect();
    let root = build_rec(g, &all, &mut tree)?;
    tree.set_root(root);
    Some(tree)
}

fn build_rec(g: &Graph, vs: &[Vertex], tree: &mut Cotree) -> Option<usize> {
    if vs.len() == 1 {
        return Some(tree.leaf(vs[0]));
    }
    let comps = split_parts(g, vs, false);
    let (parts, is_join) = if comps.len() > 1 {
        (comps, false)
    } else {
        let co = split_parts(g, vs, true);
        if co.len() == 1 {
            return None;
        }
        (co, true)
    };
    // left-deep chain
    let mut acc = build_rec(g, &parts[0], tree)?;
    for part in &parts[1..] {
        let next = build_rec(g, part, tree)?;
        acc = if is_join {
            tree.join(acc, next)
        } else {
            tree.union(acc, next)
        };
    }
    Some(acc)
}

/// Value of a join cell: the most leaves covered when `c1` vertices of the
/// first side (size `n1`, best internal cover `cov1`) and `c2` of the second
/// are centers.
pub fn join_cell(s: usize, (n1, c1, cov1): (usize, usize, usize), (n2, c2, cov2): (usize, usize, usize)) -> usize {
    let (l1, l2) = (n1 - c1, n2 - c2);
    let cap1 = c1 * s;
    let cap2 = c2 * s;
    match (cap1 > l2, cap2 > l1) {
        (true, true) => l1 + l2,
        (false, false) => (c1 + c2) * s,
        // centers of side 1 cover all of side 2 and some of their own side
        (true, false) => cap2 + l2 + (cap1 - l2).min(l1 - cap2).min(cov1),
        (false, true) => cap1 + l1 + (cap2 - l1).min(l2 - cap1).min(cov2),
    }
}

/// `L[x][c]`: most leaves covered inside the subtree of `x` when `c` of its
/// vertices are centers (`None` for impossible `c`).
#[derive(Debug, Clone)]
pub struct CoverTable {
    pub s: usize,
    pub k: usize,
    rows: Vec<Vec<Option<usize>>>,
    split: Vec<Vec<(usize, usize)>>,
}

impl CoverTable {
    pub fn build(tree: &Cotree, s: usize, k: usize) -> CoverTable {
        let mut rows: Vec<Vec<Option<usize>>> = Vec::with_capacity(tree.len());
        let mut split = Vec::with_capacity(tree.len());
        for x in 0..tree.len() {
            let cmax = k.min(tree.size(x));
            let mut row = vec![None; k + 1];
            let mut choice = vec![(0, 0); k + 1];
            match tree.node(x) {
                CotreeNode::Leaf(_) => {
                    row[0] = Some(0);
                    if k >= 1 {
                        row[1] = Some(0);
                    }
                }
                CotreeNode::Union(a, b) | CotreeNode::Join(a, b) => {
                    let join = matches!(tree.node(x), CotreeNode::Join(..));
                    for c in 0..=cmax {
                        for c1 in c.saturating_sub(tree.size(b))..=c.min(tree.size(a)) {
                            let c2 = c - c1;
                            let (Some(v1), Some(v2)) = (rows[a][c1], rows[b][c2]) else {
                                continue;
                            };
                            let v = if join {
                                join_cell(s, (tree.size(a), c1, v1), (tree.size(b), c2, v2))
                            } else {
                                v1 + v2
                            };
                            if row[c].is_none_or(|best| v > best) {
                                row[c] = Some(v);
                                choice[c] = (c1, c2);
                            }
                        }
                    }
                }
            }
            rows.push(row);
            split.push(choice);
        }
        CoverTable { s, k, rows, split }
    }

    pub fn value(&self, x: usize, c: usize) -> Option<usize> {
        self.rows[x].get(c).copied().flatten()
    }

    /// `A[c1][c2]` at join node `x`, if both child cells are finite.
    pub fn join_value(&self, tree: &Cotree, x: usize, c1: usize, c2: usize) -> Option<usize> {
        let CotreeNode::Join(a, b) = tree.node(x) else {
            return None;
        };
        let v1 = self.value(a, c1)?;
        let v2 = self.value(b, c2)?;
        Some(join_cell(self.s, (tree.size(a), c1, v1), (tree.size(b), c2, v2)))
    }
}

// Centers of a subtree and the leaves each of them covers.
struct Cover {
    centers: Vec<(Vertex, Vec<Vertex>)>,
    covered: Vec<bool>,
}

impl Cover {
    fn count(&self) -> usize {
        self.centers.iter().map(|(_, l)| l.len()).sum()
    }

    fn absorb(&mut self, other: Cover) {
        self.centers.extend(other.centers);
        for (i, c) in other.covered.into_iter().enumerate() {
            self.covered[i] |= c;
        }
    }

    // Drops internal assignments until exactly `keep` remain.
    fn trim(&mut self, keep: usize) {
        let mut excess = self.count().saturating_sub(keep);
        for (_, leaves) in self.centers.iter_mut().rev() {
            while excess > 0 {
                let Some(l) = leaves.pop() else { break };
                self.covered[l] = false;
                excess -= 1;
            }
        }
    }
}

// Fills spare capacity of `centers` with uncovered non-centers from `pool`.
fn cross_cover(
    centers: &mut [(Vertex, Vec<Vertex>)],
    pool: &[Vertex],
    is_center: &[bool],
    covered: &mut [bool],
    s: usize,
    mut budget: usize,
) {
    let free: Vec<Vertex> = pool.iter().copied().filter(|&v| !is_center[v] && !covered[v]).collect();
    let mut free = free.into_iter();
    for (_, leaves) in centers.iter_mut() {
        while leaves.len() < s && budget > 0 {
            let Some(v) = free.next() else { return };
            covered[v] = true;
            leaves.push(v);
            budget -= 1;
        }
    }
}

fn realize(tree: &Cotree, table: &CoverTable, x: usize, c: usize, n: usize, is_center: &mut [bool]) -> Cover {
    let s = table.s;
    match tree.node(x) {
        CotreeNode::Leaf(v) => {
            let centers = if c == 1 {
                is_center[v] = true;
                vec![(v, Vec::new())]
            } else {
                Vec::new()
            };
            Cover {
                centers,
                covered: vec![false; n],
            }
        }
        CotreeNode::Union(a, b) => {
            let (c1, c2) = table.split[x][c];
            let mut left = realize(tree, table, a, c1, n, is_center);
            left.absorb(realize(tree, table, b, c2, n, is_center));
            left
        }
        CotreeNode::Join(a, b) => {
            let (c1, c2) = table.split[x][c];
            let (n1, n2) = (tree.size(a), tree.size(b));
            let (l1, l2) = (n1 - c1, n2 - c2);
            let mut first = realize(tree, table, a, c1, n, is_center);
            let mut second = realize(tree, table, b, c2, n, is_center);
            let (va, vb) = (tree.vertices(a), tree.vertices(b));
            let (cap1, cap2) = (c1 * s, c2 * s);
            match (cap1 > l2, cap2 > l1) {
                (true, true) | (false, false) => {
                    first.trim(0);
                    second.trim(0);
                }
                (true, false) => {
                    first.trim((cap1 - l2).min(l1 - cap2).min(table.value(a, c1).unwrap_or(0)));
                    second.trim(0);
                }
                (false, true) => {
                    first.trim(0);
                    second.trim((cap2 - l1).min(l2 - cap1).min(table.value(b, c2).unwrap_or(0)));
                }
            }
            let mut covered = first.covered.clone();
            for (i, c) in second.covered.iter().enumerate() {
                covered[i] |= *c;
            }
            // centers of one side take leaves of the other side first
            cross_cover(&mut second.centers, &va, is_center, &mut covered, s, usize::MAX);
            cross_cover(&mut first.centers, &vb, is_center, &mut covered, s, usize::MAX);
            let mut centers = first.centers;
            centers.extend(second.centers);
            Cover { centers, covered }
        }
    }
}

/// Decides and constructs an `s`-star partition of a cograph.
pub fn cograph_partition(g: &Graph, s: usize) -> Result<Option<StarPartition>> {
    let tree = build_cotree(g).ok_or(Error::NotCograph)?;
    cograph_partition_with(&tree, g.n(), s)
}

/// As [`cograph_partition`] for a given cotree over vertices `0..n`.
pub fn cograph_partition_with(tree: &Cotree, n: usize, s: usize) -> Result<Option<StarPartition>> {
    if s == 0 {
        return Err(Error::InvalidStarSize { min: 1, got: 0 });
    }
    if n == 0 {
        return Ok(Some(StarPartition::new(s, Vec::new())));
    }
    let root = tree.root().ok_or_else(|| Error::Internal("empty cotree".into()))?;
    if !feasibility_precheck(&tree.to_graph(n)?, s).is_feasible() {
        return Ok(None);
    }
    let k = n / (s + 1);
    let table = CoverTable::build(tree, s, k);
    if table.value(root, k) != Some(k * s) {
        return Ok(None);
    }
    let mut is_center = vec![false; n];
    let cover = realize(tree, &table, root, k, n, &mut is_center);
    if cover.count() != k * s || cover.centers.len() != k {
        return Err(Error::Internal(format!(
            "cotree reconstruction covered {} leaves with {} centers",
            cover.count(),
            cover.centers.len()
        )));
    }
    let blocks = cover
        .centers
        .into_iter()
        .map(|(c, leaves)| Block::new(c, leaves))
        .collect();
    Ok(Some(StarPartition::new(s, blocks)))
}
