//! Reduction images of exact cover and 3-dimensional matching instances,
//! edge subdivision, chordality, and seeded random instances per class.

use std::collections::HashMap;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipperm::StrongOrdering;
use crate::cograph::Cotree;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph, Vertex};
use crate::interval::{Coord, RawInterval};

/// Exact cover by `s`-sets. Sets hold indices into `universe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3CInstance {
    pub universe: Vec<String>,
    pub s: usize,
    pub sets: Vec<Vec<usize>>,
}

impl X3CInstance {
    /// Validates sizes and membership; element names must be distinct.
    pub fn new(universe: Vec<String>, s: usize, sets: Vec<Vec<String>>) -> Result<Self> {
        let index: HashMap<&str, usize> = universe.iter().enumerate().map(|(i, u)| (u.as_str(), i)).collect();
        if index.len() != universe.len() {
            return Err(Error::MalformedX3c("repeated universe element".into()));
        }
        let mut out = Vec::with_capacity(sets.len());
        for set in &sets {
            let mut ids = Vec::with_capacity(set.len());
            for name in set {
                let &i = index
                    .get(name.as_str())
                    .ok_or_else(|| Error::MalformedX3c(format!("{name} is not in the universe")))?;
                ids.push(i);
            }
            ids.sort_unstable();
            ids.dedup();
            if ids.len() != s {
                return Err(Error::MalformedX3c(format!(
                    "set {set:?} does not have {s} distinct elements"
                )));
            }
            out.push(ids);
        }
        Self::from_indices(universe.len(), s, out).map(|mut inst| {
            inst.universe = universe;
            inst
        })
    }

    /// Universe `0..u` named by decimal ids.
    pub fn from_indices(u: usize, s: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if s < 2 {
            return Err(Error::MalformedX3c(format!("set size {s} is below 2")));
        }
        if !u.is_multiple_of(s) {
            return Err(Error::MalformedX3c(format!(
                "universe size {u} is not a multiple of {s}"
            )));
        }
        for set in &sets {
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s || sorted.iter().any(|&e| e >= u) {
                return Err(Error::MalformedX3c(format!("bad set {set:?}")));
            }
        }
        if sets.len() < u / s {
            return Err(Error::MalformedX3c(format!(
                "{} sets cannot cover {u} elements",
                sets.len()
            )));
        }
        Ok(X3CInstance {
            universe: (0..u).map(|i| i.to_string()).collect(),
            s,
            sets,
        })
    }
}

/// Origin of a vertex in the split graph built from an exact cover instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum X3cVertex {
    Set(usize),
    Element(usize),
    CliqueDummy(usize),
    LeafDummy(usize),
    LastCliqueDummy,
    LastLeafDummy(usize),
}

/// Split graph with an `s`-star partition iff the instance has an exact cover.
///
/// Clique: set vertices, `q` dummies, one last dummy. Independent side:
/// element vertices, `q` dummies (one pendant per clique dummy) and `s - r`
/// pendants of the last dummy, where `m - n = (s - 1) q + r`.
pub fn x3c_to_split(inst: &X3CInstance) -> Result<(Graph, Vec<X3cVertex>)> {
    let s = inst.s;
    let m = inst.sets.len();
    let n = inst.universe.len() / s;
    let (q, r) = ((m - n) / (s - 1), (m - n) % (s - 1));
    let mut prov = Vec::new();
    prov.extend((0..m).map(X3cVertex::Set));
    prov.extend((0..q).map(X3cVertex::CliqueDummy));
    prov.push(X3cVertex::LastCliqueDummy);
    let clique_len = prov.len();
    prov.extend((0..inst.universe.len()).map(X3cVertex::Element));
    let elem0 = clique_len;
    let dummy0 = prov.len();
    prov.extend((0..q).map(X3cVertex::LeafDummy));
    let last0 = prov.len();
    prov.extend((0..s - r).map(X3cVertex::LastLeafDummy));

    let mut edges = Vec::new();
    for a in 0..clique_len {
        for b in a + 1..clique_len {
            edges.push((a, b));
        }
    }
    for (i, set) in inst.sets.iter().enumerate() {
        edges.extend(set.iter().map(|&e| (i, elem0 + e)));
    }
    for j in 0..q {
        edges.push((m + j, dummy0 + j));
    }
    let last = clique_len - 1;
    edges.extend((0..s - r).map(|j| (last, last0 + j)));
    Ok((Graph::from_edges(prov.len(), edges)?, prov))
}

/// 3-dimensional matching over `R`, `B`, `Y`, each of size `q`.
/// Triples hold indices into the three name lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TDMInstance {
    pub q: usize,
    pub names: [Vec<String>; 3],
    pub triples: Vec<(usize, usize, usize)>,
}

impl TDMInstance {
    /// Elements named `r0.., b0.., y0..`.
    pub fn new(q: usize, triples: Vec<(usize, usize, usize)>) -> Result<Self> {
        let names = ["r", "b", "y"].map(|p| (0..q).map(|i| format!("{p}{i}")).collect());
        Self::with_names(names, triples)
    }

    pub fn with_names(names: [Vec<String>; 3], triples: Vec<(usize, usize, usize)>) -> Result<Self> {
        let q = names[0].len();
        if names.iter().any(|v| v.len() != q) {
            return Err(Error::MalformedTdm("R, B and Y differ in size".into()));
        }
        let mut all: Vec<&String> = names.iter().flatten().collect();
        all.sort();
        all.dedup();
        if all.len() != 3 * q {
            return Err(Error::MalformedTdm("element names are not distinct".into()));
        }
        if let Some(t) = triples.iter().find(|t| t.0 >= q || t.1 >= q || t.2 >= q) {
            return Err(Error::MalformedTdm(format!("triple {t:?} out of range for q = {q}")));
        }
        Ok(TDMInstance { q, names, triples })
    }
}

/// Chordal graph with a P3-partition iff the instance has a perfect matching.
///
/// Element `a` (R, then B, then Y) gets `u_a = a` and pendant `3q + a`;
/// triple `t` gets `v_r, v_b, v_y = 6q + 3t + (0, 1, 2)`. Element vertices
/// form a clique and `v_b` also sees `u_r` and `u_y`.
pub fn tdm_to_chordal(inst: &TDMInstance) -> Graph {
    let q = inst.q;
    let n = 6 * q + 3 * inst.triples.len();
    let mut edges = Vec::new();
    for a in 0..3 * q {
        edges.push((a, 3 * q + a));
        for b in a + 1..3 * q {
            edges.push((a, b));
        }
    }
    for (t, &(r, b, y)) in inst.triples.iter().enumerate() {
        let (ur, ub, uy) = (r, q + b, 2 * q + y);
        let (vr, vb, vy) = (6 * q + 3 * t, 6 * q + 3 * t + 1, 6 * q + 3 * t + 2);
        edges.extend([(ur, vr), (ub, vb), (uy, vy), (vr, vb), (vb, vy), (vb, ur), (vb, uy)]);
    }
    Graph::from_edges(n, edges).expect("reduction edges are simple")
}

/// Replaces edge `{u, v}` by the path `u - n - n+1 - n+2 - v`.
pub fn subdivide_edge(g: &Graph, (u, v): (Vertex, Vertex)) -> Result<Graph> {
    if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
        return Err(Error::MissingEdge(u, v));
    }
    let n = g.n();
    let edges =
        g.edges()
            .filter(|&e| e != (u.min(v), u.max(v)))
            .chain([(u, n), (n, n + 1), (n + 1, n + 2), (n + 2, v)]);
    Graph::from_edges(n + 3, edges)
}

/// Maximum cardinality search, then a perfect-elimination check on the
/// reversed visit order.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| visited[v] == usize::MAX)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        visited[v] = step;
        order.push(v);
        for &w in g.neighbors(v) {
            if visited[w] == usize::MAX {
                weight[w] += 1;
            }
        }
    }
    // in elimination order v's later neighbors are those visited before it
    order.iter().all(|&v| {
        let earlier: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| visited[w] < visited[v])
            .collect();
        match earlier.iter().max_by_key(|&&w| visited[w]) {
            None => true,
            Some(&p) => earlier.iter().all(|&w| w == p || g.has_edge(p, w)),
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RandomKind {
    UnitIntervals,
    Intervals,
    BipPerm,
    Cograph,
    Split,
}

impl FromStr for RandomKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "unit-intervals" => RandomKind::UnitIntervals,
            "intervals" => RandomKind::Intervals,
            "bip-perm" => RandomKind::BipPerm,
            "cograph" => RandomKind::Cograph,
            "split" => RandomKind::Split,
            other => return Err(format!("unknown instance kind {other:?}")),
        })
    }
}

/// A generated instance in its class-specific form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Intervals(Vec<RawInterval>),
    Bipartite(BipartiteGraph, StrongOrdering),
    Graph(Graph),
}

/// Same `(kind, n, seed)` gives the same instance.
pub fn random_instance(kind: RandomKind, n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance_with(kind, n, &mut rng)
}

pub fn random_instance_with<R: Rng>(kind: RandomKind, n: usize, rng: &mut R) -> Instance {
    match kind {
        RandomKind::UnitIntervals => Instance::Intervals(random_unit_intervals(n, rng)),
        RandomKind::Intervals => Instance::Intervals(random_intervals(n, rng)),
        RandomKind::BipPerm => {
            let (g, ord) = random_bipperm(n, rng);
            Instance::Bipartite(g, ord)
        }
        RandomKind::Cograph => Instance::Graph(random_cotree(n, rng).to_graph(n).expect("cotree graph is simple")),
        RandomKind::Split => Instance::Graph(random_split(n, rng)),
    }
}

/// Length-1 intervals starting at multiples of 1/10 in `[0, n/2]`.
pub fn random_unit_intervals<R: Rng>(n: usize, rng: &mut R) -> Vec<RawInterval> {
    (0..n)
        .map(|id| {
            let b = Coord::new(rng.gen_range(0..=5 * n as i128), 10);
            RawInterval {
                id,
                birth: b,
                death: b + Coord::from_integer(1),
            }
        })
        .collect()
}

/// Integer endpoints; births in `[0, n)` and lengths in `[1, 8]`.
pub fn random_intervals<R: Rng>(n: usize, rng: &mut R) -> Vec<RawInterval> {
    (0..n)
        .map(|id| {
            let b = rng.gen_range(0..n.max(1)) as i128;
            let len = rng.gen_range(1..=8);
            RawInterval::new(id, b, b + len)
        })
        .collect()
}

/// `blocks` planted P3s: a center interval and two intervals starting inside
/// it, scattered over `[0, 4 * blocks)` and shuffled. Always a yes-instance.
pub fn planted_intervals<R: Rng>(blocks: usize, rng: &mut R) -> Vec<RawInterval> {
    let mut out = Vec::with_capacity(3 * blocks);
    for _ in 0..blocks {
        let b = rng.gen_range(0..4 * blocks.max(1)) as i128;
        let len: i128 = rng.gen_range(2..=6);
        out.push((b, b + len));
        for _ in 0..2 {
            let x = rng.gen_range(b..b + len);
            out.push((x, x + rng.gen_range(1..=4)));
        }
    }
    out.shuffle(rng);
    out.into_iter()
        .enumerate()
        .map(|(id, (b, d))| RawInterval::new(id, b, d))
        .collect()
}

/// Random cotree on the vertices `0..n` (shuffled), split points and labels uniform.
pub fn random_cotree<R: Rng>(n: usize, rng: &mut R) -> Cotree {
    let mut vs: Vec<Vertex> = (0..n).collect();
    vs.shuffle(rng);
    let mut tree = Cotree::new();
    if n > 0 {
        let root = cotree_rec(&vs, &mut tree, rng);
        tree.set_root(root);
    }
    tree
}

fn cotree_rec<R: Rng>(vs: &[Vertex], tree: &mut Cotree, rng: &mut R) -> usize {
    if vs.len() == 1 {
        return tree.leaf(vs[0]);
    }
    let cut = rng.gen_range(1..vs.len());
    let a = cotree_rec(&vs[..cut], tree, rng);
    let b = cotree_rec(&vs[cut..], tree, rng);
    if rng.gen_bool(0.5) {
        tree.join(a, b)
    } else {
        tree.union(a, b)
    }
}

/// Random clique size, random clique/independent edges, shuffled ids.
pub fn random_split<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut vs: Vec<Vertex> = (0..n).collect();
    vs.shuffle(rng);
    let c = if n == 0 { 0 } else { rng.gen_range(1..=n) };
    let p = rng.gen_range(0.15..0.75);
    let mut edges = Vec::new();
    for i in 0..c {
        for j in i + 1..c {
            edges.push((vs[i], vs[j]));
        }
        for &u in &vs[c..] {
            if rng.gen_bool(p) {
                edges.push((vs[i], u));
            }
        }
    }
    Graph::from_edges(n, edges).expect("split edges are simple")
}

/// Permutation graph of a 321-avoiding permutation: vertices are positions,
/// edges are inversions. Left-to-right maxima form the left side; both sides
/// ordered by position give a strong ordering. `None` if `perm` contains 321.
pub fn bipartite_from_permutation(perm: &[usize]) -> Option<(BipartiteGraph, StrongOrdering)> {
    let n = perm.len();
    let mut is_max = vec![false; n];
    let mut best = None;
    for i in 0..n {
        if best.is_none_or(|b| perm[i] > b) {
            is_max[i] = true;
            best = Some(perm[i]);
        }
    }
    let mut local = vec![0; n];
    let (mut nl, mut nr) = (0, 0);
    for i in 0..n {
        if is_max[i] {
            local[i] = nl;
            nl += 1;
        } else {
            local[i] = nr;
            nr += 1;
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if perm[i] > perm[j] {
                if is_max[i] == is_max[j] {
                    return None;
                }
                let (l, r) = if is_max[i] { (i, j) } else { (j, i) };
                edges.push((local[l], local[r]));
            }
        }
    }
    let g = BipartiteGraph::new(nl, nr, edges).expect("inversions are simple");
    let ord = StrongOrdering::identity(&g);
    Some((g, ord))
}

/// Merges two increasing sequences into a random 321-avoiding permutation.
pub fn random_bipperm<R: Rng>(n: usize, rng: &mut R) -> (BipartiteGraph, StrongOrdering) {
    let k = rng.gen_range(0..=n);
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(rng);
    let mut first_pos = positions[..k].to_vec();
    first_pos.sort_unstable();
    let mut values: Vec<usize> = (0..n).collect();
    values.shuffle(rng);
    let mut first_val = values[..k].to_vec();
    first_val.sort_unstable();
    let mut rest_val = values[k..].to_vec();
    rest_val.sort_unstable();
    let mut perm = vec![usize::MAX; n];
    for (&p, &v) in first_pos.iter().zip(&first_val) {
        perm[p] = v;
    }
    let mut rest = rest_val.into_iter();
    for slot in perm.iter_mut().filter(|x| **x == usize::MAX) {
        *slot = rest.next().expect("value count matches");
    }
    bipartite_from_permutation(&perm).expect("a merge of two increasing runs avoids 321")
}

/// `blocks` disjoint `K_{1,s}` blocks, each `[s, 0, ..., s-1]` (center among
/// the left-to-right maxima) or `[1, ..., s, 0]` (center on the other side),
/// then random adjacent swaps that add an inversion without creating a 321.
/// The result always has an `s`-star partition.
pub fn planted_bipperm<R: Rng>(blocks: usize, s: usize, swaps: usize, rng: &mut R) -> (BipartiteGraph, StrongOrdering) {
    let n = blocks * (s + 1);
    let mut perm = Vec::with_capacity(n);
    for b in 0..blocks {
        let base = b * (s + 1);
        if rng.gen_bool(0.5) {
            perm.push(base + s);
            perm.extend(base..base + s);
        } else {
            perm.extend(base + 1..=base + s);
            perm.push(base);
        }
    }
    if n >= 2 {
        for _ in 0..swaps {
            let i = rng.gen_range(0..n - 1);
            let (a, b) = (perm[i], perm[i + 1]);
            if a > b {
                continue;
            }
            if perm[..i].iter().any(|&x| x > b) || perm[i + 2..].iter().any(|&x| x < a) {
                continue;
            }
            perm.swap(i, i + 1);
        }
    }
    bipartite_from_permutation(&perm).expect("swaps keep the permutation 321-free")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipperm::validate_strong_ordering;
    use crate::split::split_decompose;

    #[test]
    fn x3c_images() {
        let inst = X3CInstance::from_indices(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let (g, prov) = x3c_to_split(&inst).unwrap();
        assert_eq!(g.n(), 8);
        let clique = prov
            .iter()
            .filter(|p| {
                matches!(
                    p,
                    X3cVertex::Set(_) | X3cVertex::CliqueDummy(_) | X3cVertex::LastCliqueDummy
                )
            })
            .count();
        assert_eq!(clique, 2);
        let inst = X3CInstance::from_indices(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 1, 3]]).unwrap();
        let (g, prov) = x3c_to_split(&inst).unwrap();
        // q = 0, r = 1: one last dummy with two pendants
        assert_eq!(
            prov.iter().filter(|p| matches!(p, X3cVertex::LastLeafDummy(_))).count(),
            2
        );
        assert_eq!(g.n(), 3 + 1 + 6 + 2);
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(X3CInstance::new(names(&["1", "2", "3"]), 3, vec![names(&["1", "2", "4"])]).is_err());
    }

    #[test]
    fn tdm_images() {
        let g = tdm_to_chordal(&TDMInstance::new(1, vec![(0, 0, 0)]).unwrap());
        assert_eq!(g.n(), 9);
        assert!(is_chordal(&g));
        let g = tdm_to_chordal(&TDMInstance::new(1, vec![]).unwrap());
        assert_eq!(g.n(), 6);
        assert!(TDMInstance::new(1, vec![(0, 1, 0)]).is_err());
    }

    #[test]
    fn subdivision() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let g = subdivide_edge(&p3, (1, 2)).unwrap();
        assert_eq!((g.n(), g.m()), (6, 5));
        assert!(g.has_edge(2, 5) && !g.has_edge(1, 2));
        assert_eq!(subdivide_edge(&p3, (0, 2)), Err(Error::MissingEdge(0, 2)));
    }

    #[test]
    fn chordality() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!is_chordal(&c4));
        let tree = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(is_chordal(&tree));
        let chorded = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(is_chordal(&chorded));
    }

    #[test]
    fn deterministic_per_seed() {
        for kind in [
            RandomKind::UnitIntervals,
            RandomKind::Intervals,
            RandomKind::BipPerm,
            RandomKind::Cograph,
            RandomKind::Split,
        ] {
            assert_eq!(random_instance(kind, 8, 1), random_instance(kind, 8, 1));
        }
    }

    #[test]
    fn generated_classes() {
        let Instance::Bipartite(g, ord) = random_instance(RandomKind::BipPerm, 10, 7) else {
            unreachable!()
        };
        assert!(validate_strong_ordering(&g, &ord).unwrap());
        let Instance::Graph(g) = random_instance(RandomKind::Split, 9, 3) else {
            unreachable!()
        };
        assert!(split_decompose(&g).is_some());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let raw = planted_intervals(30, &mut rng);
        let rep = crate::interval::normalize_events(&raw).unwrap();
        assert!(crate::interval::p3_decide(&rep).unwrap().feasible);
        let (g, ord) = planted_bipperm(20, 2, 60, &mut rng);
        assert!(validate_strong_ordering(&g, &ord).unwrap());
    }
}
