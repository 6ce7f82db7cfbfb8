//! Interval graphs: event normalization, the unit-interval greedy and the
//! handle-list sweep for P3-partitions.

mod handle_list;
mod sweep;

pub use handle_list::{Handle, HandleList};
pub use sweep::{p3_construct, p3_decide, p3_sweep, P3Decision};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Block, Graph, StarPartition, Vertex};

/// Exact rational coordinate of a raw interval endpoint.
pub type Coord = Ratio<i128>;

/// Right-open interval `[birth, death)` with arbitrary rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInterval {
    pub id: usize,
    pub birth: Coord,
    pub death: Coord,
}

impl RawInterval {
    pub fn new(id: usize, birth: impl Into<Coord>, death: impl Into<Coord>) -> Self {
        RawInterval {
            id,
            birth: birth.into(),
            death: death.into(),
        }
    }
}

/// Interval with integer event positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub id: usize,
    pub birth: usize,
    pub death: usize,
}

impl Interval {
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.birth < other.death && other.birth < self.death
    }

    pub fn handle(&self) -> Handle {
        Handle {
            id: self.id,
            death: self.death,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Birth,
    Death,
}

/// Interval representation indexed by id; ids are `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRepresentation {
    intervals: Vec<Interval>,
    normalized: bool,
}

impl IntervalRepresentation {
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self> {
        intervals.sort_by_key(|iv| iv.id);
        if let Some((i, _)) = intervals.iter().enumerate().find(|(i, iv)| iv.id != *i) {
            return Err(Error::InvalidGraph(format!(
                "interval ids must be exactly 0..n-1 (missing or repeated id near {i})"
            )));
        }
        if let Some(iv) = intervals.iter().find(|iv| iv.birth >= iv.death) {
            return Err(Error::MalformedInterval { id: iv.id });
        }
        let n = intervals.len();
        let mut seen = vec![false; 2 * n + 1];
        let mut normalized = true;
        for iv in &intervals {
            for p in [iv.birth, iv.death] {
                if p == 0 || p > 2 * n || seen[p] {
                    normalized = false;
                } else {
                    seen[p] = true;
                }
            }
        }
        Ok(IntervalRepresentation { intervals, normalized })
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn get(&self, id: usize) -> Interval {
        self.intervals[id]
    }

    /// `event_at[t]` for `t = 1..=2n` (index 0 unused). Only for normalized representations.
    pub fn events(&self) -> Result<Vec<Option<(usize, EventKind)>>> {
        if !self.normalized {
            return Err(Error::InvalidGraph("interval representation is not normalized".into()));
        }
        let mut ev = vec![None; 2 * self.n() + 1];
        for iv in &self.intervals {
            ev[iv.birth] = Some((iv.id, EventKind::Birth));
            ev[iv.death] = Some((iv.id, EventKind::Death));
        }
        Ok(ev)
    }

    /// Ids sorted by `(birth, id)`.
    pub fn birth_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&i| (self.intervals[i].birth, i));
        order
    }

    /// Connected components as runs of the birth order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut reach = 0;
        for id in self.birth_order() {
            let iv = self.intervals[id];
            match comps.last_mut() {
                Some(last) if iv.birth < reach => {
                    last.push(id);
                    reach = reach.max(iv.death);
                }
                _ => {
                    comps.push(vec![id]);
                    reach = iv.death;
                }
            }
        }
        comps
    }

    /// Number of intersecting pairs, without materializing the graph.
    pub fn edge_count(&self) -> usize {
        let mut ev: Vec<(usize, u8)> = Vec::with_capacity(2 * self.n());
        for iv in &self.intervals {
            ev.push((iv.birth, 1));
            ev.push((iv.death, 0));
        }
        ev.sort_unstable();
        let mut live = 0usize;
        let mut m = 0;
        for (_, kind) in ev {
            if kind == 1 {
                m += live;
                live += 1;
            } else {
                live -= 1;
            }
        }
        m
    }

    /// Intersection graph; vertex `i` is interval `i`.
    pub fn to_graph(&self) -> Graph {
        let order = self.birth_order();
        let mut edges = Vec::new();
        // live intervals kept sorted by death; O(n log n + m)
        let mut live: std::collections::BTreeSet<(usize, usize)> = Default::default();
        for id in order {
            let iv = self.intervals[id];
            while let Some(&(d, _)) = live.first() {
                if d <= iv.birth {
                    live.pop_first();
                } else {
                    break;
                }
            }
            edges.extend(live.iter().map(|&(_, other)| (other, id)));
            live.insert((iv.death, id));
        }
        Graph::from_edges(self.n(), edges).expect("interval intersection graph is simple")
    }
}

/// Maps rational endpoints to distinct positions `1..=2n`, preserving the
/// intersection graph of the right-open intervals.
///
/// At equal coordinates deaths precede births; ties among events of the
/// same kind are broken by id.
pub fn normalize_events(raw: &[RawInterval]) -> Result<IntervalRepresentation> {
    if let Some(r) = raw.iter().find(|r| r.birth >= r.death) {
        return Err(Error::MalformedInterval { id: r.id });
    }
    let mut events: Vec<(&Coord, u8, usize)> = Vec::with_capacity(2 * raw.len());
    for r in raw {
        events.push((&r.birth, 1, r.id));
        events.push((&r.death, 0, r.id));
    }
    events.sort();
    let mut pos = vec![(0usize, 0usize); raw.len()];
    let index: std::collections::HashMap<usize, usize> = raw.iter().enumerate().map(|(i, r)| (r.id, i)).collect();
    if index.len() != raw.len() {
        return Err(Error::InvalidGraph("duplicate interval id".into()));
    }
    for (rank, &(_, kind, id)) in events.iter().enumerate() {
        let slot = &mut pos[index[&id]];
        if kind == 1 {
            slot.0 = rank + 1;
        } else {
            slot.1 = rank + 1;
        }
    }
    let intervals = raw
        .iter()
        .zip(pos)
        .map(|(r, (birth, death))| Interval { id: r.id, birth, death })
        .collect();
    IntervalRepresentation::new(intervals)
}

/// Center of `members` (smallest id overlapping all others), if any.
pub(crate) fn interval_star_center(rep: &IntervalRepresentation, members: &[usize], s: usize) -> Option<usize> {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.into_iter().find(|&c| {
        let ci = rep.get(c);
        members.iter().filter(|&&o| o != c && ci.overlaps(&rep.get(o))).count() >= s
    })
}

/// Greedy star partition for unit interval graphs.
///
/// Takes the `s + 1` leftmost unprocessed intervals in birth order and
/// requires them to contain an `s`-star. The birth order of equal-length
/// intervals is a bicompatible elimination order, which is all the
/// greedy needs; on arbitrary interval inputs the answer may be wrong.
pub fn unit_interval_partition(rep: &IntervalRepresentation, s: usize) -> Result<Option<StarPartition>> {
    if s == 0 {
        return Err(Error::InvalidStarSize { min: 1, got: s });
    }
    if rep.components().iter().any(|c| c.len() % (s + 1) != 0) {
        return Ok(None);
    }
    let order = rep.birth_order();
    let mut blocks = Vec::with_capacity(order.len() / (s + 1));
    for chunk in order.chunks(s + 1) {
        let Some(center) = interval_star_center(rep, chunk, s) else {
            return Ok(None);
        };
        let leaves: Vec<Vertex> = chunk.iter().copied().filter(|&v| v != center).collect();
        blocks.push(Block::new(center, leaves));
    }
    Ok(Some(StarPartition::new(s, blocks)))
}
