//! Exhaustive search for star partitions of arbitrary graphs.

use crate::graph::{feasibility_precheck, Block, Graph, StarPartition, Vertex};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes(StarPartition),
    No,
    BudgetExceeded,
}

impl OracleAnswer {
    /// `Some(true)` for yes, `Some(false)` for no, `None` when the budget ran out.
    pub fn decision(&self) -> Option<bool> {
        match self {
            OracleAnswer::Yes(_) => Some(true),
            OracleAnswer::No => Some(false),
            OracleAnswer::BudgetExceeded => None,
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    s: usize,
    covered: Vec<bool>,
    // neighbors not yet covered
    free_deg: Vec<usize>,
    blocks: Vec<Block>,
    expansions: u64,
    budget: u64,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn take(&mut self, v: Vertex) {
        self.covered[v] = true;
        for &w in self.g.neighbors(v) {
            self.free_deg[w] -= 1;
        }
    }

    fn release(&mut self, v: Vertex) {
        self.covered[v] = false;
        for &w in self.g.neighbors(v) {
            self.free_deg[w] += 1;
        }
    }

    fn free_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !self.covered[w])
            .collect()
    }

    // Some uncovered vertex with no uncovered neighbor can never be placed.
    fn stranded(&self, block: &[Vertex]) -> bool {
        block.iter().any(|&b| {
            self.g
                .neighbors(b)
                .iter()
                .any(|&w| !self.covered[w] && self.free_deg[w] == 0)
        })
    }

    fn try_block(&mut self, center: Vertex, leaves: Vec<Vertex>, from: Vertex) -> Outcome {
        self.take(center);
        leaves.iter().for_each(|&l| self.take(l));
        let mut members = leaves.clone();
        members.push(center);
        let out = if self.stranded(&members) {
            Outcome::Exhausted
        } else {
            self.blocks.push(Block::new(center, leaves.clone()));
            let r = self.go(from);
            if !matches!(r, Outcome::Found) {
                self.blocks.pop();
            }
            r
        };
        if !matches!(out, Outcome::Found) {
            leaves.iter().for_each(|&l| self.release(l));
            self.release(center);
        }
        out
    }

    fn go(&mut self, from: Vertex) -> Outcome {
        let Some(v) = (from..self.g.n()).find(|&v| !self.covered[v]) else {
            return Outcome::Found;
        };
        self.expansions += 1;
        if self.expansions > self.budget {
            return Outcome::OutOfBudget;
        }
        let s = self.s;
        let nv = self.free_neighbors(v);
        // v as a leaf of a neighbor c
        // for s = 1 the center branch below already tries these edges
        if s >= 2 {
            for &c in &nv {
                let others: Vec<Vertex> = self.free_neighbors(c).into_iter().filter(|&w| w != v).collect();
                for mut rest in combinations(&others, s - 1) {
                    rest.push(v);
                    match self.try_block(c, rest, v) {
                        Outcome::Exhausted => {}
                        other => return other,
                    }
                }
            }
        }
        // v as center
        for leaves in combinations(&nv, s) {
            match self.try_block(v, leaves, v) {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
        Outcome::Exhausted
    }
}

/// All `k`-subsets of `items`, in lexicographic order of positions.
fn combinations(items: &[Vertex], k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + items.len() - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact decision by branching on the smallest uncovered vertex, either
/// as a leaf of one of its uncovered neighbors or as a center.
pub fn oracle_partition(g: &Graph, s: usize, budget: u64) -> OracleAnswer {
    assert!(s >= 1, "star size must be positive");
    if !feasibility_precheck(g, s).is_feasible() {
        return OracleAnswer::No;
    }
    let mut search = Search {
        g,
        s,
        covered: vec![false; g.n()],
        free_deg: (0..g.n()).map(|v| g.degree(v)).collect(),
        blocks: Vec::new(),
        expansions: 0,
        budget,
    };
    if (0..g.n()).any(|v| g.degree(v) == 0) {
        return OracleAnswer::No;
    }
    match search.go(0) {
        Outcome::Found => OracleAnswer::Yes(StarPartition::new(s, search.blocks)),
        Outcome::Exhausted => OracleAnswer::No,
        Outcome::OutOfBudget => OracleAnswer::BudgetExceeded,
    }
}
