//! P3-partitions of split graphs through degree-constrained factors of
//! the clique/independent-set bipartite graph and a perfect matching on a
//! gadget graph.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Block, Graph, StarPartition, Vertex};
use crate::matching::max_general_matching;
use crate::oracle::{oracle_partition, OracleAnswer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub clique: Vec<Vertex>,
    pub independent: Vec<Vertex>,
}

/// Clique/independent split from the degree sequence (largest `m` with
/// `d_m >= m - 1`, degrees descending, ties by id), checked directly.
pub fn split_decompose(g: &Graph) -> Option<SplitDecomposition> {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let m = (0..order.len()).take_while(|&i| g.degree(order[i]) >= i).count();
    let mut clique = order[..m].to_vec();
    let mut independent = order[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    let clique_ok = clique
        .iter()
        .enumerate()
        .all(|(i, &u)| clique[i + 1..].iter().all(|&v| g.has_edge(u, v)));
    let mut in_clique = vec![false; g.n()];
    clique.iter().for_each(|&v| in_clique[v] = true);
    let indep_ok = independent
        .iter()
        .all(|&u| g.neighbors(u).iter().all(|&v| in_clique[v]));
    (clique_ok && indep_ok).then_some(SplitDecomposition { clique, independent })
}

/// Where a vertex of the gadget graph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetVertex {
    /// `u^I` for an independent vertex.
    Independent(Vertex),
    /// `v_e` for clique vertex `v` and the edge to independent vertex `u`.
    Incidence { clique: Vertex, other: Vertex },
    /// `v_e` for the edge from clique vertex `v` to the apex.
    ApexIncidence { clique: Vertex },
    /// `v'_i`.
    CliqueCopy { clique: Vertex, index: usize },
    /// `z_v`.
    ApexSlot { clique: Vertex },
    /// `z'_i`.
    ApexCopy { index: usize },
}

/// The gadget graph whose perfect matchings encode feasible factors.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub provenance: Vec<GadgetVertex>,
    pub q: usize,
    pub r: usize,
    /// Per clique vertex (in decomposition order): the `v_e` vertices with
    /// their partner vertex outside the gadget (`u^I` or `z_v`).
    incidences: Vec<(Vertex, Vec<(Vertex, Vertex)>)>,
    apex_slots: Vec<Vertex>,
    apex_copies: usize,
}

impl GadgetGraph {
    /// Text dump in the graph format, preceded by a provenance comment block.
    pub fn dump(&self) -> String {
        let mut out = format!("# gadget graph: q = {}, r = {}\n", self.q, self.r);
        for (i, p) in self.provenance.iter().enumerate() {
            let _ = writeln!(out, "# {i} {p:?}");
        }
        out.push_str(&crate::io::write_graph(&self.graph));
        out
    }

    pub fn apex_copy_count(&self) -> usize {
        self.apex_copies
    }
}

/// Builds the gadget graph; `None` when the trivial counting checks already
/// rule out a P3-partition (`3 ∤ n` or `|I| > 2|C|`).
pub fn build_bstar(sd: &SplitDecomposition, g: &Graph) -> Option<GadgetGraph> {
    let (nc, ni) = (sd.clique.len(), sd.independent.len());
    if !g.n().is_multiple_of(3) || ni > 2 * nc {
        return None;
    }
    let budget = (2 * nc - ni) / 3;
    let (q, r) = (budget / 2, budget % 2);

    let mut prov: Vec<GadgetVertex> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let add = |p: GadgetVertex, prov: &mut Vec<GadgetVertex>| {
        prov.push(p);
        prov.len() - 1
    };

    let mut ind_id = vec![usize::MAX; g.n()];
    for &u in &sd.independent {
        ind_id[u] = add(GadgetVertex::Independent(u), &mut prov);
    }
    let apex_slots: Vec<Vertex> = sd
        .clique
        .iter()
        .map(|&v| add(GadgetVertex::ApexSlot { clique: v }, &mut prov))
        .collect();
    let apex_copies = nc - r;
    let zc: Vec<Vertex> = (0..apex_copies)
        .map(|i| add(GadgetVertex::ApexCopy { index: i }, &mut prov))
        .collect();
    for &zs in &apex_slots {
        edges.extend(zc.iter().map(|&c| (zs, c)));
    }
    for i in 0..q {
        edges.push((zc[2 * i], zc[2 * i + 1]));
    }

    let mut in_clique = vec![false; g.n()];
    sd.clique.iter().for_each(|&v| in_clique[v] = true);
    let mut incidences = Vec::with_capacity(nc);
    for (ci, &v) in sd.clique.iter().enumerate() {
        let mut inc = Vec::new();
        for &u in g.neighbors(v).iter().filter(|&&u| !in_clique[u]) {
            let ve = add(GadgetVertex::Incidence { clique: v, other: u }, &mut prov);
            edges.push((ind_id[u], ve));
            inc.push((ve, ind_id[u]));
        }
        let ve = add(GadgetVertex::ApexIncidence { clique: v }, &mut prov);
        edges.push((apex_slots[ci], ve));
        inc.push((ve, apex_slots[ci]));
        let copies: Vec<Vertex> = (0..inc.len())
            .map(|i| add(GadgetVertex::CliqueCopy { clique: v, index: i }, &mut prov))
            .collect();
        for &(ve, _) in &inc {
            edges.extend(copies.iter().map(|&c| (ve, c)));
        }
        // d_v >= 1 always (apex edge); the pair edge needs two copies
        if copies.len() >= 2 {
            edges.push((copies[0], copies[1]));
        }
        incidences.push((v, inc));
    }
    let graph = Graph::from_edges(prov.len(), edges).expect("gadget edges are simple");
    Some(GadgetGraph {
        graph,
        provenance: prov,
        q,
        r,
        incidences,
        apex_slots,
        apex_copies,
    })
}

/// Edges of the clique/independent bipartite graph, grouped by clique vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleFactor {
    /// `(clique vertex, its independent neighbors in the factor)`.
    pub clique_edges: Vec<(Vertex, Vec<Vertex>)>,
    /// Degree of the apex in the factor of the extended graph.
    pub apex_degree: usize,
}

impl FeasibleFactor {
    /// `(n_0, n_1, n_2)`: clique vertices of degree 0, 1 and 2.
    pub fn degree_counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for (_, nb) in &self.clique_edges {
            match nb.len() {
                0 => c.0 += 1,
                1 => c.1 += 1,
                _ => c.2 += 1,
            }
        }
        c
    }

    /// Checks every defining condition plus the mod-3 law.
    pub fn check(&self, sd: &SplitDecomposition) -> std::result::Result<(), String> {
        let mut deg_i = std::collections::HashMap::new();
        for (_, nb) in &self.clique_edges {
            if nb.len() > 2 {
                return Err(format!("clique vertex with {} factor edges", nb.len()));
            }
            for &u in nb {
                *deg_i.entry(u).or_insert(0usize) += 1;
            }
        }
        if let Some(&u) = sd.independent.iter().find(|u| deg_i.get(u) != Some(&1)) {
            return Err(format!("independent vertex {u} does not have degree 1"));
        }
        let (n0, n1, _) = self.degree_counts();
        if n0 < n1 {
            return Err(format!("{n0} degree-0 clique vertices but {n1} of degree 1"));
        }
        if (n0 - n1) % 3 != 0 {
            return Err(format!("n0 - n1 = {} is not a multiple of 3", n0 - n1));
        }
        Ok(())
    }
}

/// Reads a factor off a perfect matching of the gadget graph.
pub fn project_matching(gadget: &GadgetGraph, mate: &[Option<Vertex>]) -> Result<FeasibleFactor> {
    let mut clique_edges = Vec::with_capacity(gadget.incidences.len());
    let mut apex_degree = 0;
    for (v, inc) in &gadget.incidences {
        let external: Vec<&(Vertex, Vertex)> = inc.iter().filter(|(ve, partner)| mate[*ve] == Some(*partner)).collect();
        if !external.is_empty() && external.len() != 2 {
            return Err(Error::Internal(format!(
                "clique vertex {v} has {} external matches",
                external.len()
            )));
        }
        let mut nb = Vec::new();
        for &&(ve, _) in &external {
            match gadget.provenance[ve] {
                GadgetVertex::Incidence { other, .. } => nb.push(other),
                GadgetVertex::ApexIncidence { .. } => apex_degree += 1,
                other => return Err(Error::Internal(format!("unexpected incidence {other:?}"))),
            }
        }
        nb.sort_unstable();
        clique_edges.push((*v, nb));
    }
    let slots_out = gadget
        .apex_slots
        .iter()
        .filter(|&&zs| {
            matches!(
                mate[zs].map(|m| gadget.provenance[m]),
                Some(GadgetVertex::ApexIncidence { .. })
            )
        })
        .count();
    if slots_out != apex_degree
        || apex_degree < gadget.r
        || !(apex_degree - gadget.r).is_multiple_of(2)
        || (apex_degree - gadget.r) / 2 > gadget.q
    {
        return Err(Error::Internal(format!(
            "apex degree {apex_degree} is not 2i + r with i <= q (q = {}, r = {})",
            gadget.q, gadget.r
        )));
    }
    Ok(FeasibleFactor {
        clique_edges,
        apex_degree,
    })
}

/// Groups a feasible factor into P3s.
pub fn assemble(factor: &FeasibleFactor) -> Result<StarPartition> {
    let mut blocks = Vec::new();
    let mut zeros: Vec<Vertex> = factor
        .clique_edges
        .iter()
        .filter(|(_, nb)| nb.is_empty())
        .map(|(v, _)| *v)
        .collect();
    zeros.sort_unstable();
    let mut zeros = zeros.into_iter();
    let mut ones: Vec<(Vertex, Vertex)> = Vec::new();
    for (v, nb) in &factor.clique_edges {
        match nb.as_slice() {
            [a, b] => blocks.push(Block::new(*v, vec![*a, *b])),
            [a] => ones.push((*v, *a)),
            _ => {}
        }
    }
    ones.sort_unstable();
    for (v, u) in ones {
        let w = zeros
            .next()
            .ok_or_else(|| Error::Internal("too few degree-0 clique vertices".into()))?;
        blocks.push(Block::new(v, vec![u, w]));
    }
    let rest: Vec<Vertex> = zeros.collect();
    if !rest.len().is_multiple_of(3) {
        return Err(Error::Internal("leftover clique vertices not a multiple of 3".into()));
    }
    for t in rest.chunks(3) {
        blocks.push(Block::new(t[0], vec![t[1], t[2]]));
    }
    Ok(StarPartition::new(2, blocks))
}

/// Full pipeline output, kept for inspection.
#[derive(Debug, Clone)]
pub struct SplitSolution {
    pub decomposition: SplitDecomposition,
    pub factor: FeasibleFactor,
    pub partition: StarPartition,
}

/// Decides and constructs a P3-partition of a split graph.
pub fn p3_split_solve(g: &Graph) -> Result<Option<SplitSolution>> {
    let sd = split_decompose(g).ok_or(Error::NotSplit)?;
    let Some(gadget) = build_bstar(&sd, g) else {
        return Ok(None);
    };
    let mate = max_general_matching(&gadget.graph);
    if mate.iter().any(Option::is_none) {
        return Ok(None);
    }
    let factor = project_matching(&gadget, &mate)?;
    factor.check(&sd).map_err(Error::Internal)?;
    let partition = assemble(&factor)?;
    Ok(Some(SplitSolution {
        decomposition: sd,
        factor,
        partition,
    }))
}

pub fn p3_split(g: &Graph) -> Result<Option<StarPartition>> {
    Ok(p3_split_solve(g)?.map(|s| s.partition))
}

/// `s`-star partition of a split graph for `s != 2`: exhaustive search up to
/// `limit` vertices (the problem is NP-hard for `s >= 3`).
pub fn star_split(g: &Graph, s: usize, limit: usize, budget: u64) -> Result<Option<StarPartition>> {
    if s == 0 {
        return Err(Error::InvalidStarSize { min: 1, got: 0 });
    }
    if s == 2 {
        return p3_split(g);
    }
    if g.n() > limit {
        return Err(Error::InstanceTooLarge { n: g.n(), limit });
    }
    match oracle_partition(g, s, budget) {
        OracleAnswer::Yes(p) => Ok(Some(p)),
        OracleAnswer::No => Ok(None),
        OracleAnswer::BudgetExceeded => Err(Error::BudgetExceeded { budget }),
    }
}
