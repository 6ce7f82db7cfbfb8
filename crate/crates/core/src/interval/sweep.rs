use super::{interval_star_center, EventKind, HandleList, IntervalRepresentation};
use crate::error::{Error, Result};
use crate::graph::{Block, StarPartition};

/// Outcome of the handle-list sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P3Decision {
    pub feasible: bool,
    /// `|A_t|` for every `t` the sweep defined, starting at `t = 0`.
    pub sizes: Vec<usize>,
}

/// Decides whether the interval graph has a P3-partition.
pub fn p3_decide(rep: &IntervalRepresentation) -> Result<P3Decision> {
    let (decision, _) = p3_sweep(rep, false, |_, _| {})?;
    Ok(decision)
}

/// Runs the sweep and, when it succeeds, returns a P3-partition built
/// alongside it.
pub fn p3_construct(rep: &IntervalRepresentation) -> Result<Option<StarPartition>> {
    let (decision, partition) = p3_sweep(rep, true, |_, _| {})?;
    Ok(if decision.feasible { partition } else { None })
}

// Part of the partial partition each born interval belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    Unborn,
    Single,
    // later-ending member of an edge; holds one handle
    EdgeHead { partner: usize },
    // earlier-ending member of an edge, or member of a triple
    Settled,
}

struct Partial<'a> {
    rep: &'a IntervalRepresentation,
    parts: Vec<Part>,
    blocks: Vec<Block>,
}

impl Partial<'_> {
    fn partner(&self, x: usize) -> Result<usize> {
        match self.parts[x] {
            Part::EdgeHead { partner } => Ok(partner),
            other => Err(Error::Internal(format!(
                "interval {x} holds one handle but is {other:?}"
            ))),
        }
    }

    fn expect_single(&self, x: usize) -> Result<()> {
        match self.parts[x] {
            Part::Single => Ok(()),
            other => Err(Error::Internal(format!(
                "interval {x} holds two handles but is {other:?}"
            ))),
        }
    }

    fn triple(&mut self, members: [usize; 3]) -> Result<()> {
        let center = interval_star_center(self.rep, &members, 2)
            .ok_or_else(|| Error::Internal(format!("{members:?} contains no P3")))?;
        let leaves = members.iter().copied().filter(|&v| v != center).collect();
        for v in members {
            self.parts[v] = Part::Settled;
        }
        self.blocks.push(Block::new(center, leaves));
        Ok(())
    }

    fn edge(&mut self, earlier: usize, head: usize) {
        self.parts[earlier] = Part::Settled;
        self.parts[head] = Part::EdgeHead { partner: earlier };
    }

    /// Merges the parts of `x` (dying), `y`, `z`: the owners of the three
    /// lowest handles, with their occurrence counts before deletion.
    fn merge(&mut self, x: usize, occ: [(usize, usize); 3]) -> Result<()> {
        let birth = |v: usize| self.rep.get(v).birth;
        let [(_, occ_x), (y, occ_y), (z, occ_z)] = occ;
        match (occ_x, occ_y) {
            (2, _) => {
                // x = y
                self.expect_single(x)?;
                match occ_z {
                    2 => {
                        self.expect_single(z)?;
                        self.edge(x, z);
                    }
                    _ => {
                        let u = self.partner(z)?;
                        self.triple([x, z, u])?;
                    }
                }
            }
            (_, 2) => {
                // z = y
                let u = self.partner(x)?;
                self.expect_single(y)?;
                self.triple([x, y, u])?;
            }
            _ => {
                let u = self.partner(x)?;
                let v = self.partner(y)?;
                let y_first = birth(y) < birth(x);
                let (reaching, other) = if y_first { (y, x) } else { (x, y) };
                match occ_z {
                    2 => {
                        self.expect_single(z)?;
                        self.triple([reaching, u, v])?;
                        self.edge(other, z);
                    }
                    _ => {
                        let w = self.partner(z)?;
                        self.triple([reaching, u, v])?;
                        self.triple([other, z, w])?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The sweep shared by [`p3_decide`] and [`p3_construct`].
///
/// `observe(t, A_t)` is called after every defined step, including `t = 0`.
/// With `construct` set, a partial partition is maintained next to the
/// handle list and returned when the sweep succeeds.
pub fn p3_sweep<F>(
    rep: &IntervalRepresentation,
    construct: bool,
    mut observe: F,
) -> Result<(P3Decision, Option<StarPartition>)>
where
    F: FnMut(usize, &HandleList),
{
    let events = rep.events()?;
    let n = rep.n();
    let mut list = HandleList::new();
    let mut sizes = Vec::with_capacity(2 * n + 1);
    let mut partial = construct.then(|| Partial {
        rep,
        parts: vec![Part::Unborn; n],
        blocks: Vec::with_capacity(n / 3),
    });
    sizes.push(0);
    observe(0, &list);

    for (t, event) in events.iter().enumerate().skip(1) {
        let (id, kind) = event.expect("normalized representations have an event at every position");
        let me = rep.get(id).handle();
        match kind {
            EventKind::Birth => {
                list.insert(me);
                list.insert(me);
                if let Some(p) = partial.as_mut() {
                    p.parts[id] = Part::Single;
                }
            }
            EventKind::Death => {
                let occ_x = list.occurrences(me);
                if occ_x > 0 {
                    if list.len() < 3 {
                        return Ok((P3Decision { feasible: false, sizes }, None));
                    }
                    let low = list.lowest(3);
                    if low[0] != me {
                        return Err(Error::Internal(format!("dying interval {id} is not the lowest handle")));
                    }
                    let occ = [0, 1, 2].map(|i| (low[i].id, list.occurrences(low[i])));
                    for h in &low {
                        list.remove_one(*h);
                    }
                    if let Some(p) = partial.as_mut() {
                        p.merge(id, occ)?;
                    }
                }
                if list.contains(me) {
                    return Err(Error::Internal(format!(
                        "interval {id} still holds a handle after its death"
                    )));
                }
            }
        }
        if let Some(low) = list.lowest(1).first() {
            if low.death <= t {
                return Err(Error::Internal(format!(
                    "handle of dead interval {} at t = {t}",
                    low.id
                )));
            }
        }
        sizes.push(list.len());
        observe(t, &list);
    }

    let partition = match partial {
        Some(p) => {
            if let Some(v) = p.parts.iter().position(|&part| part != Part::Settled) {
                return Err(Error::Internal(format!("interval {v} left unsettled")));
            }
            Some(StarPartition::new(2, p.blocks))
        }
        None => None,
    };
    Ok((P3Decision { feasible: true, sizes }, partition))
}
