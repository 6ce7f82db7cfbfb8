//! Star partitions of bipartite permutation graphs via a strong ordering
//! and a two-dimensional table over prefixes of the two sides.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Block, StarPartition, Vertex};
use crate::matching::max_bipartite_matching;

/// Total orders of both sides, as permutations of local indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongOrdering {
    pub u_order: Vec<usize>,
    pub w_order: Vec<usize>,
}

impl StrongOrdering {
    pub fn new(u_order: Vec<usize>, w_order: Vec<usize>) -> Self {
        StrongOrdering { u_order, w_order }
    }

    pub fn identity(g: &BipartiteGraph) -> Self {
        StrongOrdering::new((0..g.n_left()).collect(), (0..g.n_right()).collect())
    }

    /// Both orders must be permutations of their side.
    pub fn check_covers(&self, g: &BipartiteGraph) -> Result<()> {
        fn is_perm(p: &[usize], n: usize) -> bool {
            let mut seen = vec![false; n];
            p.len() == n && p.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
        }
        if !is_perm(&self.u_order, g.n_left()) {
            return Err(Error::OrderingMismatch(format!(
                "left order is not a permutation of 0..{}",
                g.n_left()
            )));
        }
        if !is_perm(&self.w_order, g.n_right()) {
            return Err(Error::OrderingMismatch(format!(
                "right order is not a permutation of 0..{}",
                g.n_right()
            )));
        }
        Ok(())
    }

    fn ranks(&self) -> (Vec<usize>, Vec<usize>) {
        (inverse(&self.u_order), inverse(&self.w_order))
    }
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut r = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        r[v] = i;
    }
    r
}

/// Exhaustive check over all pairs of crossing edges: whenever
/// `u < u'` and `w' < w` for edges `{u,w}`, `{u',w'}`, both `{u,w'}`
/// and `{u',w}` must be edges.
pub fn validate_strong_ordering(g: &BipartiteGraph, ord: &StrongOrdering) -> Result<bool> {
    ord.check_covers(g)?;
    let (ru, rw) = ord.ranks();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for &(u, w) in &edges {
        for &(u2, w2) in &edges {
            if ru[u] < ru[u2] && rw[w2] < rw[w] && !(g.has_edge(u, w2) && g.has_edge(u2, w)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Connected components as (left indices, right indices), ordered by
/// their first left (else right) index.
fn bipartite_components(g: &BipartiteGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let nl = g.n_left();
    let n = nl + g.n_right();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let (mut us, mut ws) = (Vec::new(), Vec::new());
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let next: Vec<usize> = if x < nl {
                us.push(x);
                g.left_neighbors(x).iter().map(|&w| nl + w).collect()
            } else {
                ws.push(x - nl);
                g.right_neighbors(x - nl).to_vec()
            };
            for y in next {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    queue.push_back(y);
                }
            }
        }
        us.sort_unstable();
        ws.sort_unstable();
        out.push((us, ws));
    }
    out
}

/// Orders restricted to each component, in order of appearance.
pub fn component_orders(g: &BipartiteGraph, ord: &StrongOrdering) -> Vec<(Vec<usize>, Vec<usize>)> {
    let comps = bipartite_components(g);
    let mut cu = vec![0; g.n_left()];
    let mut cw = vec![0; g.n_right()];
    for (i, (us, ws)) in comps.iter().enumerate() {
        us.iter().for_each(|&u| cu[u] = i);
        ws.iter().for_each(|&w| cw[w] = i);
    }
    let mut out = vec![(Vec::new(), Vec::new()); comps.len()];
    for &u in &ord.u_order {
        out[cu[u]].0.push(u);
    }
    for &w in &ord.w_order {
        out[cw[w]].1.push(w);
    }
    out
}

fn component_is_strong(g: &BipartiteGraph, us: &[usize], ws: &[usize]) -> bool {
    let ru: HashMap<usize, usize> = us.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let rw: HashMap<usize, usize> = ws.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let edges: Vec<(usize, usize)> = us
        .iter()
        .flat_map(|&u| g.left_neighbors(u).iter().map(move |&w| (u, w)))
        .collect();
    edges.iter().all(|&(u, w)| {
        edges
            .iter()
            .all(|&(u2, w2)| !(ru[&u] < ru[&u2] && rw[&w2] < rw[&w]) || (g.has_edge(u, w2) && g.has_edge(u2, w)))
    })
}

/// Strong ordering found by breadth-first search from an end vertex.
///
/// In a strong ordering of a connected graph the distance classes from the
/// first vertex are consecutive blocks of each side, and inside a class the
/// order is by (first, last) earlier-class neighbor and then by the number
/// of later-class neighbors; equal keys mean equal neighborhoods. Candidate
/// end vertices come from the farthest class of a double sweep (every
/// vertex of small components). Each result is validated; `None` means no
/// candidate produced a strong ordering.
pub fn compute_strong_ordering(g: &BipartiteGraph) -> Option<StrongOrdering> {
    let nl = g.n_left();
    let mut u_order = Vec::with_capacity(nl);
    let mut w_order = Vec::with_capacity(g.n_right());
    for (us, ws) in bipartite_components(g) {
        let (cu, cw) = order_component(g, &us, &ws)?;
        u_order.extend(cu);
        w_order.extend(cw);
    }
    Some(StrongOrdering::new(u_order, w_order))
}

// Vertices are `u` for left and `nl + w` for right.
fn neighbors_of(g: &BipartiteGraph, x: usize) -> Vec<usize> {
    let nl = g.n_left();
    if x < nl {
        g.left_neighbors(x).iter().map(|&w| nl + w).collect()
    } else {
        g.right_neighbors(x - nl).to_vec()
    }
}

fn bfs_levels(g: &BipartiteGraph, start: usize) -> Vec<Vec<usize>> {
    let mut dist: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut levels = vec![vec![start]];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for y in neighbors_of(g, x) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(d + 1);
                if levels.len() == d + 1 {
                    levels.push(Vec::new());
                }
                levels[d + 1].push(y);
                queue.push_back(y);
            }
        }
    }
    levels
}

fn ordered_from(g: &BipartiteGraph, start: usize) -> (Vec<usize>, Vec<usize>) {
    let nl = g.n_left();
    let mut levels = bfs_levels(g, start);
    let mut pos: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    for i in 1..levels.len() {
        let next: std::collections::HashSet<usize> = levels.get(i + 1).into_iter().flatten().copied().collect();
        levels[i].sort_by_key(|&x| {
            let nb = neighbors_of(g, x);
            let back = nb.iter().filter_map(|y| pos.get(y).copied());
            let first = back.clone().min().unwrap_or(0);
            let last = back.max().unwrap_or(0);
            let forward = nb.iter().filter(|y| next.contains(y)).count();
            (first, last, forward, x)
        });
        for (k, &x) in levels[i].iter().enumerate() {
            pos.insert(x, k);
        }
    }
    let (mut us, mut ws) = (Vec::new(), Vec::new());
    for x in levels.into_iter().flatten() {
        if x < nl {
            us.push(x);
        } else {
            ws.push(x - nl);
        }
    }
    (us, ws)
}

fn order_component(g: &BipartiteGraph, us: &[usize], ws: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    if us.len() + ws.len() <= 2 {
        return Some((us.to_vec(), ws.to_vec()));
    }
    let nl = g.n_left();
    let all: Vec<usize> = us.iter().copied().chain(ws.iter().map(|&w| nl + w)).collect();
    let candidates = if all.len() <= 64 {
        all
    } else {
        let far = bfs_levels(g, all[0]).pop().expect("nonempty component");
        let mut c = bfs_levels(g, far[0]).pop().expect("nonempty component");
        c.extend(far);
        c.truncate(16);
        c
    };
    candidates.into_iter().find_map(|start| {
        let (cu, cw) = ordered_from(g, start);
        component_is_strong(g, &cu, &cw).then_some((cu, cw))
    })
}

/// Centers on each side `(k_U, k_W)` forced by the side sizes, if they
/// are non-negative integers.
pub fn star_counts(n_u: usize, n_w: usize, s: usize) -> Result<Option<(usize, usize)>> {
    if s < 2 {
        return Err(Error::InvalidStarSize { min: 2, got: s });
    }
    let (nu, nw, s) = (n_u as i64, n_w as i64, s as i64);
    let den = s * s - 1;
    let (ku, kw) = (s * nw - nu, s * nu - nw);
    if ku < 0 || kw < 0 || ku % den != 0 || kw % den != 0 {
        return Ok(None);
    }
    let (ku, kw) = (ku / den, kw / den);
    debug_assert_eq!((ku + kw) * (s + 1), nu + nw);
    Ok(Some((ku as usize, kw as usize)))
}

/// How a table cell was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Base,
    /// W-centered star on the next `s` U-vertices and next W-vertex.
    A,
    /// U-centered star on the next U-vertex and next `s` W-vertices.
    B,
    /// Two stars on the next `s + 1` vertices of each side.
    C,
}

/// Table over `(x, y)`: `x` U-centered and `y` W-centered stars covering
/// the first `x + s*y` U-vertices and `y + s*x` W-vertices.
#[derive(Debug, Clone)]
pub struct DpTable {
    pub s: usize,
    pub k_u: usize,
    pub k_w: usize,
    cells: Vec<Option<Move>>,
}

impl DpTable {
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.cells[x * (self.k_w + 1) + y].is_some()
    }

    pub fn back(&self, x: usize, y: usize) -> Option<Move> {
        self.cells[x * (self.k_w + 1) + y]
    }

    /// Number of U- and W-vertices covered by cell `(x, y)`.
    pub fn prefix(&self, x: usize, y: usize) -> (usize, usize) {
        (x + self.s * y, y + self.s * x)
    }
}

struct Window<'a> {
    g: &'a BipartiteGraph,
    us: &'a [usize],
    ws: &'a [usize],
    s: usize,
}

impl Window<'_> {
    fn w_star(&self, u0: usize, w0: usize) -> bool {
        let w = self.ws[w0];
        self.us[u0..u0 + self.s].iter().all(|&u| self.g.has_edge(u, w))
    }

    fn u_star(&self, u0: usize, w0: usize) -> bool {
        let u = self.us[u0];
        self.ws[w0..w0 + self.s].iter().all(|&w| self.g.has_edge(u, w))
    }

    /// Centers `(i, j)` (offsets into the windows) of two disjoint stars on
    /// `us[u0..u0+s+1]` and `ws[w0..w0+s+1]`; interleaving pairs first.
    fn pair(&self, u0: usize, w0: usize) -> Option<(usize, usize)> {
        let s = self.s;
        let ok = |i: usize, j: usize| {
            let cu = self.us[u0 + i];
            let cw = self.ws[w0 + j];
            (0..=s).all(|b| b == j || self.g.has_edge(cu, self.ws[w0 + b]))
                && (0..=s).all(|a| a == i || self.g.has_edge(self.us[u0 + a], cw))
        };
        let inner = |i: usize| i > 0 && i < s;
        let mut fallback = None;
        for i in 0..=s {
            for j in 0..=s {
                if ok(i, j) {
                    if inner(i) && inner(j) {
                        return Some((i, j));
                    }
                    fallback.get_or_insert((i, j));
                }
            }
        }
        fallback
    }
}

/// Fills the table for one connected piece given its side orders.
/// `None` when the side sizes force no integral center counts.
pub fn fill_table(g: &BipartiteGraph, us: &[usize], ws: &[usize], s: usize) -> Result<Option<DpTable>> {
    let Some((k_u, k_w)) = star_counts(us.len(), ws.len(), s)? else {
        return Ok(None);
    };
    let win = Window { g, us, ws, s };
    let mut t = DpTable {
        s,
        k_u,
        k_w,
        cells: vec![None; (k_u + 1) * (k_w + 1)],
    };
    t.cells[0] = Some(Move::Base);
    for x in 0..=k_u {
        for y in 0..=k_w {
            if x + y == 0 {
                continue;
            }
            let (pu, pw) = t.prefix(x, y);
            if pu > us.len() || pw > ws.len() {
                continue;
            }
            let mv = if y > 0 && t.get(x, y - 1) && win.w_star(x + s * (y - 1), (y - 1) + s * x) {
                Some(Move::A)
            } else if x > 0 && t.get(x - 1, y) && win.u_star((x - 1) + s * y, y + s * (x - 1)) {
                Some(Move::B)
            } else if x > 0
                && y > 0
                && t.get(x - 1, y - 1)
                && win.pair((x - 1) + s * (y - 1), (y - 1) + s * (x - 1)).is_some()
            {
                Some(Move::C)
            } else {
                None
            };
            t.cells[x * (k_w + 1) + y] = mv;
        }
    }
    Ok(Some(t))
}

/// Blocks in local indices: `(center is left?, center, leaves)`.
type LocalBlock = (bool, usize, Vec<usize>);

fn walk_back(t: &DpTable, win: &Window<'_>) -> (Vec<LocalBlock>, Vec<(usize, usize)>) {
    let s = t.s;
    let (mut x, mut y) = (t.k_u, t.k_w);
    let mut blocks = Vec::new();
    let mut pairs = Vec::new();
    loop {
        match t.back(x, y).expect("walk stays on true cells") {
            Move::Base => break,
            Move::A => {
                y -= 1;
                let (u0, w0) = t.prefix(x, y);
                blocks.push((false, win.ws[w0], win.us[u0..u0 + s].to_vec()));
            }
            Move::B => {
                x -= 1;
                let (u0, w0) = t.prefix(x, y);
                blocks.push((true, win.us[u0], win.ws[w0..w0 + s].to_vec()));
            }
            Move::C => {
                x -= 1;
                y -= 1;
                let (u0, w0) = t.prefix(x, y);
                let (i, j) = win.pair(u0, w0).expect("cell was set by move (c)");
                let cu = win.us[u0 + i];
                let cw = win.ws[w0 + j];
                let u_leaves = (0..=s).filter(|&b| b != j).map(|b| win.ws[w0 + b]).collect();
                let w_leaves = (0..=s).filter(|&a| a != i).map(|a| win.us[u0 + a]).collect();
                pairs.push((blocks.len(), blocks.len() + 1));
                blocks.push((true, cu, u_leaves));
                blocks.push((false, cw, w_leaves));
            }
        }
    }
    (blocks, pairs)
}

/// A partition together with the pairs of blocks placed by move (c).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BippermSolution {
    pub partition: StarPartition,
    /// Block indices of pairs placed together as two stars.
    pub pairs: Vec<(usize, usize)>,
}

/// Decides and constructs an `s`-star partition; `ord` must be a strong
/// ordering (see [`validate_strong_ordering`]). Components are solved
/// separately. `s = 1` is answered by maximum matching.
pub fn bipperm_solve(g: &BipartiteGraph, ord: &StrongOrdering, s: usize) -> Result<Option<BippermSolution>> {
    if s == 0 {
        return Err(Error::InvalidStarSize { min: 1, got: 0 });
    }
    ord.check_covers(g)?;
    let label = |left: bool, i: usize| -> Vertex {
        if left {
            g.left_labels()[i]
        } else {
            g.right_labels()[i]
        }
    };
    if s == 1 {
        let m = max_bipartite_matching(g);
        if !m.is_perfect {
            return Ok(None);
        }
        let blocks = m
            .pairs
            .iter()
            .map(|&(u, w)| Block::new(label(true, u), vec![label(false, w)]))
            .collect();
        return Ok(Some(BippermSolution {
            partition: StarPartition::new(1, blocks),
            pairs: Vec::new(),
        }));
    }
    let mut blocks = Vec::new();
    let mut pairs = Vec::new();
    for (us, ws) in component_orders(g, ord) {
        let Some(t) = fill_table(g, &us, &ws, s)? else {
            return Ok(None);
        };
        if !t.get(t.k_u, t.k_w) {
            return Ok(None);
        }
        let win = Window { g, us: &us, ws: &ws, s };
        let (local, local_pairs) = walk_back(&t, &win);
        let offset = blocks.len();
        pairs.extend(local_pairs.into_iter().map(|(a, b)| (a + offset, b + offset)));
        for (left, c, leaves) in local {
            let leaves = leaves.into_iter().map(|l| label(!left, l)).collect();
            blocks.push(Block::new(label(left, c), leaves));
        }
    }
    Ok(Some(BippermSolution {
        partition: StarPartition::new(s, blocks),
        pairs,
    }))
}

pub fn bipperm_partition(g: &BipartiteGraph, ord: &StrongOrdering, s: usize) -> Result<Option<StarPartition>> {
    Ok(bipperm_solve(g, ord, s)?.map(|sol| sol.partition))
}

/// Whether two stars with centers on opposite sides each have their
/// center within the other's scope (the span of its leaves in `ord`).
pub fn is_interleaving(g: &BipartiteGraph, ord: &StrongOrdering, x: &Block, y: &Block) -> bool {
    let (ru, rw) = ord.ranks();
    let mut side: HashMap<Vertex, (bool, usize)> = HashMap::new();
    for (i, &v) in g.left_labels().iter().enumerate() {
        side.insert(v, (true, ru[i]));
    }
    for (i, &v) in g.right_labels().iter().enumerate() {
        side.insert(v, (false, rw[i]));
    }
    let within = |center: Vertex, star: &Block| {
        let (cs, cr) = side[&center];
        let ranks: Vec<usize> = star
            .leaves
            .iter()
            .map(|l| side[l])
            .filter(|&(ls, _)| ls == cs)
            .map(|(_, r)| r)
            .collect();
        match (ranks.iter().min(), ranks.iter().max()) {
            (Some(&lo), Some(&hi)) => lo <= cr && cr <= hi,
            _ => false,
        }
    };
    side[&x.center].0 != side[&y.center].0 && within(x.center, y) && within(y.center, x)
}

impl fmt::Display for StrongOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &[usize]| p.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "U: {}\nW: {}", join(&self.u_order), join(&self.w_order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_partition;

    fn six_path() -> BipartiteGraph {
        // u1w1, u2w1, u2w2, u3w2, u3w3
        BipartiteGraph::new(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn validator_examples() {
        let p4 = BipartiteGraph::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        assert!(validate_strong_ordering(&p4, &StrongOrdering::identity(&p4)).unwrap());
        let k22 = BipartiteGraph::new(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let rev = StrongOrdering::new(vec![1, 0], vec![0, 1]);
        assert!(validate_strong_ordering(&k22, &rev).unwrap());
        assert!(validate_strong_ordering(&k22, &StrongOrdering::new(vec![0], vec![0, 1])).is_err());
    }

    fn c6() -> BipartiteGraph {
        BipartiteGraph::new(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn six_cycle_has_no_strong_ordering() {
        let g = c6();
        let mut count = 0;
        for pu in permutations(3) {
            for pw in permutations(3) {
                count += 1;
                assert!(!validate_strong_ordering(&g, &StrongOrdering::new(pu.clone(), pw)).unwrap());
            }
        }
        assert_eq!(count, 36);
        assert_eq!(compute_strong_ordering(&g), None);
    }

    #[test]
    fn computed_orderings() {
        let p = six_path();
        let ord = compute_strong_ordering(&p).unwrap();
        assert!(validate_strong_ordering(&p, &ord).unwrap());
        let star = BipartiteGraph::new(1, 4, (0..4).map(|w| (0, w))).unwrap();
        assert!(compute_strong_ordering(&star).is_some());
    }

    #[test]
    fn counts() {
        assert_eq!(star_counts(4, 5, 2).unwrap(), Some((2, 1)));
        assert_eq!(star_counts(3, 3, 2).unwrap(), Some((1, 1)));
        assert_eq!(star_counts(2, 2, 2).unwrap(), None);
        assert_eq!(star_counts(1, 3, 3).unwrap(), Some((1, 0)));
        assert!(star_counts(2, 2, 1).is_err());
    }

    #[test]
    fn single_star() {
        let g = BipartiteGraph::new(1, 2, [(0, 0), (0, 1)]).unwrap();
        let p = bipperm_partition(&g, &StrongOrdering::identity(&g), 2)
            .unwrap()
            .unwrap();
        assert_eq!(p.blocks, vec![Block::new(0, vec![1, 2])]);
    }

    #[test]
    fn six_path_blocks() {
        let g = six_path();
        let p = bipperm_partition(&g, &StrongOrdering::identity(&g), 2)
            .unwrap()
            .unwrap();
        // left labels 0..3, right labels 3..6
        let mut blocks = p.blocks.clone();
        blocks.sort_by_key(|b| b.center);
        assert_eq!(blocks, vec![Block::new(2, vec![4, 5]), Block::new(3, vec![0, 1])]);
        assert_eq!(verify_partition(&g.to_graph(), 2, &p), Ok(()));
    }

    #[test]
    fn k22_fails_on_counts() {
        let g = BipartiteGraph::new(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(bipperm_partition(&g, &StrongOrdering::identity(&g), 2).unwrap(), None);
    }

    #[test]
    fn one_star_is_a_perfect_matching() {
        let g = BipartiteGraph::new(1, 2, [(0, 0), (0, 1)]).unwrap();
        assert_eq!(bipperm_partition(&g, &StrongOrdering::identity(&g), 1).unwrap(), None);
        let g = BipartiteGraph::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        let p = bipperm_partition(&g, &StrongOrdering::identity(&g), 1)
            .unwrap()
            .unwrap();
        assert_eq!(verify_partition(&g.to_graph(), 1, &p), Ok(()));
    }

    #[test]
    fn emitted_pairs_interleave() {
        // two crossing stars u1:{w0,w2} and w1:{u0,u2}, closed under the
        // strong-ordering rule
        let mut edges = std::collections::BTreeSet::from([(1, 0), (1, 2), (0, 1), (2, 1)]);
        loop {
            let snapshot: Vec<_> = edges.iter().copied().collect();
            let mut grew = false;
            for &(u, w) in &snapshot {
                for &(u2, w2) in &snapshot {
                    if u < u2 && w2 < w {
                        grew |= edges.insert((u, w2));
                        grew |= edges.insert((u2, w));
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let g = BipartiteGraph::new(3, 3, edges).unwrap();
        let ord = StrongOrdering::identity(&g);
        assert!(validate_strong_ordering(&g, &ord).unwrap());
        let sol = bipperm_solve(&g, &ord, 2).unwrap().unwrap();
        assert_eq!(verify_partition(&g.to_graph(), 2, &sol.partition), Ok(()));
        for &(a, b) in &sol.pairs {
            let (x, y) = (&sol.partition.blocks[a], &sol.partition.blocks[b]);
            assert!(is_interleaving(&g, &ord, x, y));
        }
    }
}
