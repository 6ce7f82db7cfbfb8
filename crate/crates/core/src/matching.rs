//! Maximum matchings: Hopcroft-Karp for bipartite graphs and Edmonds'
//! blossom algorithm for general graphs.

use std::collections::VecDeque;

use crate::graph::{BipartiteGraph, Graph, Vertex};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatching {
    /// Matched pairs `(left index, right index)`, sorted by left index.
    pub pairs: Vec<(usize, usize)>,
    pub mate_left: Vec<Option<usize>>,
    pub mate_right: Vec<Option<usize>>,
    pub is_perfect: bool,
}

impl BipartiteMatching {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }
}

/// Hopcroft-Karp, `O(q * sqrt(p))` for `p` vertices and `q` edges.
pub fn max_bipartite_matching(b: &BipartiteGraph) -> BipartiteMatching {
    let nl = b.n_left();
    let nr = b.n_right();
    let mut mate_l = vec![NONE; nl];
    let mut mate_r = vec![NONE; nr];
    let mut dist = vec![0usize; nl];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..nl {
            if mate_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NONE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &w in b.left_neighbors(u) {
                let u2 = mate_r[w];
                if u2 == NONE {
                    found = true;
                } else if dist[u2] == NONE {
                    dist[u2] = dist[u] + 1;
                    queue.push_back(u2);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; nl];
        for u in 0..nl {
            if mate_l[u] == NONE {
                augment(b, u, &mut mate_l, &mut mate_r, &mut dist, &mut it);
            }
        }
    }

    let pairs: Vec<_> = mate_l
        .iter()
        .enumerate()
        .filter(|(_, &w)| w != NONE)
        .map(|(u, &w)| (u, w))
        .collect();
    let is_perfect = nl == nr && pairs.len() == nl;
    BipartiteMatching {
        pairs,
        mate_left: mate_l.iter().map(|&w| (w != NONE).then_some(w)).collect(),
        mate_right: mate_r.iter().map(|&u| (u != NONE).then_some(u)).collect(),
        is_perfect,
    }
}

// Iterative DFS along the BFS layers; `it[u]` is the next edge of `u` to try.
fn augment(
    b: &BipartiteGraph,
    root: usize,
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        let nbrs = b.left_neighbors(u);
        if it[u] == nbrs.len() {
            dist[u] = NONE;
            stack.pop();
            continue;
        }
        let w = nbrs[it[u]];
        let u2 = mate_r[w];
        if u2 == NONE {
            for &x in &stack {
                let wx = b.left_neighbors(x)[it[x]];
                mate_l[x] = wx;
                mate_r[wx] = x;
            }
            return true;
        }
        if dist[u2] != NONE && dist[u2] == dist[u] + 1 {
            stack.push(u2);
        } else {
            it[u] += 1;
        }
    }
    false
}

/// Maximum cardinality matching on a general graph (Edmonds, `O(n^3)`).
///
/// Returns `mate[v]` for every vertex.
pub fn max_general_matching(g: &Graph) -> Vec<Option<Vertex>> {
    let n = g.n();
    let mut mate = vec![NONE; n];

    // greedy warm start
    for u in 0..n {
        if mate[u] == NONE {
            if let Some(&v) = g.neighbors(u).iter().find(|&&v| mate[v] == NONE) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }

    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            if let Some(end) = search.find_path(g, &mate, root) {
                // alternate along parent pointers
                let mut v = end;
                while v != NONE {
                    let pv = search.parent[v];
                    let next = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = next;
                }
            }
        }
    }
    mate.into_iter().map(|v| (v != NONE).then_some(v)).collect()
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}
