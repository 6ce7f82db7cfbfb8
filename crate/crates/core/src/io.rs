//! Plain-text formats for graphs, bipartite graphs, intervals and partitions.
//!
//! All formats are ASCII, whitespace separated and LF terminated. Lines
//! starting with `#` are comments and are skipped by every reader.

use std::fmt::Write as _;

use crate::bipperm::StrongOrdering;
use crate::error::{Error, Result};
use crate::generators::{TDMInstance, X3CInstance};
use crate::graph::{BipartiteGraph, Block, Graph, StarPartition};
use crate::interval::{Coord, RawInterval};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            self.last = i + 1;
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((i + 1, t));
        }
        None
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next_line().ok_or_else(|| Error::Parse {
            line: self.last + 1,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers<const K: usize>(line: usize, text: &str) -> Result<[usize; K]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != K {
        return Err(parse_err(line, format!("expected {K} fields, found {}", fields.len())));
    }
    let mut out = [0; K];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| parse_err(line, format!("not a non-negative integer: {f:?}")))?;
    }
    Ok(out)
}

fn check_exhausted(lines: &mut Lines<'_>) -> Result<()> {
    match lines.next_line() {
        Some((line, text)) => Err(parse_err(line, format!("trailing content: {text:?}"))),
        None => Ok(()),
    }
}

/// Reads `n m` followed by `m` edge lines `u v`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect_line("header \"n m\"")?;
    let [n, m] = numbers::<2>(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines.expect_line("edge line \"u v\"")?;
        let [u, v] = numbers::<2>(line, text)?;
        if u >= n || v >= n || u == v {
            return Err(parse_err(line, format!("invalid edge {u} {v} for n = {n}")));
        }
        edges.push((u, v));
    }
    check_exhausted(&mut lines)?;
    Graph::from_edges(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Bipartite graph plus the optional ordering section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteInput {
    pub graph: BipartiteGraph,
    pub ordering: Option<StrongOrdering>,
}

/// Reads `nL nR m`, `m` lines `u w`, then optionally `order:` and two permutation lines.
pub fn parse_bipartite(text: &str) -> Result<BipartiteInput> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect_line("header \"nL nR m\"")?;
    let [nl, nr, m] = numbers::<3>(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines.expect_line("edge line \"u w\"")?;
        let [u, w] = numbers::<2>(line, text)?;
        if u >= nl || w >= nr {
            return Err(parse_err(line, format!("edge {u} {w} out of range")));
        }
        edges.push((u, w));
    }
    let graph = BipartiteGraph::new(nl, nr, edges)?;
    let ordering = match lines.next_line() {
        None => None,
        Some((line, "order:")) => {
            let mut perm = |len: usize| -> Result<Vec<usize>> {
                let (l, text) = lines.expect_line("ordering line")?;
                let v: Vec<usize> = text
                    .split_whitespace()
                    .map(|f| f.parse().map_err(|_| parse_err(l, format!("bad vertex {f:?}"))))
                    .collect::<Result<_>>()?;
                if v.len() != len {
                    return Err(parse_err(
                        l,
                        format!("ordering has {} entries, expected {len}", v.len()),
                    ));
                }
                Ok(v)
            };
            let u_order = perm(nl)?;
            let w_order = perm(nr)?;
            let ord = StrongOrdering::new(u_order, w_order);
            ord.check_covers(&graph).map_err(|e| parse_err(line, e.to_string()))?;
            Some(ord)
        }
        Some((line, text)) => return Err(parse_err(line, format!("expected \"order:\", found {text:?}"))),
    };
    check_exhausted(&mut lines)?;
    Ok(BipartiteInput { graph, ordering })
}

pub fn write_bipartite(b: &BipartiteGraph, ordering: Option<&StrongOrdering>) -> String {
    let mut out = format!("{} {} {}\n", b.n_left(), b.n_right(), b.edge_count());
    for (u, w) in b.edges() {
        let _ = writeln!(out, "{u} {w}");
    }
    if let Some(ord) = ordering {
        out.push_str("order:\n");
        for perm in [&ord.u_order, &ord.w_order] {
            let line: Vec<String> = perm.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Parses a decimal like `-3`, `1.25` or `.5` exactly; `p/q` is accepted too.
pub fn parse_decimal(text: &str) -> Option<Coord> {
    if let Some((p, q)) = text.split_once('/') {
        let p: i128 = p.parse().ok()?;
        let q: i128 = q.parse().ok()?;
        return (q != 0).then(|| Coord::new(p, q));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) || frac_part.len() > 30 {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mantissa: i128 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let scale = 10i128.checked_pow(frac_part.len() as u32)?;
    let v = Coord::new(mantissa, scale);
    Some(if neg { -v } else { v })
}

/// Reads `n` then `n` lines `id birth death`.
pub fn parse_intervals(text: &str) -> Result<Vec<RawInterval>> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect_line("header \"n\"")?;
    let [n] = numbers::<1>(line, header)?;
    let mut out = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for _ in 0..n {
        let (line, text) = lines.expect_line("interval line \"id birth death\"")?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(line, "expected \"id birth death\""));
        }
        let id: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(line, format!("bad id {:?}", fields[0])))?;
        if id >= n || seen[id] {
            return Err(parse_err(line, format!("id {id} repeated or out of range")));
        }
        seen[id] = true;
        let coord = |f: &str| parse_decimal(f).ok_or_else(|| parse_err(line, format!("bad coordinate {f:?}")));
        let birth = coord(fields[1])?;
        let death = coord(fields[2])?;
        if birth >= death {
            return Err(Error::MalformedInterval { id });
        }
        out.push(RawInterval { id, birth, death });
    }
    check_exhausted(&mut lines)?;
    Ok(out)
}

fn format_coord(c: &Coord) -> String {
    if c.is_integer() {
        return c.to_integer().to_string();
    }
    // terminating decimals print as decimals, everything else as p/q
    let mut den = *c.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while den % 2 == 0 {
        den /= 2;
        twos += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return format!("{}/{}", c.numer(), c.denom());
    }
    let places = twos.max(fives);
    let scaled = c * Coord::from_integer(10i128.pow(places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{:0>width$}", digits, width = places as usize + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places as usize);
    let sign = if scaled.to_integer() < 0 { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

pub fn write_intervals(raw: &[RawInterval]) -> String {
    let mut sorted: Vec<&RawInterval> = raw.iter().collect();
    sorted.sort_by_key(|r| r.id);
    let mut out = format!("{}\n", raw.len());
    for r in sorted {
        let _ = writeln!(out, "{} {} {}", r.id, format_coord(&r.birth), format_coord(&r.death));
    }
    out
}

/// Reads lines `center: leaf_1 ... leaf_s`; `s` is taken from the first block.
pub fn parse_partition(text: &str) -> Result<StarPartition> {
    let mut lines = Lines::new(text);
    let mut blocks = Vec::new();
    let mut s = None;
    while let Some((line, text)) = lines.next_line() {
        let (center, leaves) = text
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected \"center: leaves\""))?;
        let center: usize = center
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad center {center:?}")))?;
        let leaves: Vec<usize> = leaves
            .split_whitespace()
            .map(|f| f.parse().map_err(|_| parse_err(line, format!("bad leaf {f:?}"))))
            .collect::<Result<_>>()?;
        match s {
            None => s = Some(leaves.len()),
            Some(k) if k != leaves.len() => {
                return Err(parse_err(
                    line,
                    format!("block has {} leaves, expected {k}", leaves.len()),
                ))
            }
            _ => {}
        }
        blocks.push(Block::new(center, leaves));
    }
    let s = s.ok_or_else(|| parse_err(1, "empty partition"))?;
    Ok(StarPartition::new(s, blocks))
}

pub fn write_partition(p: &StarPartition) -> String {
    let mut out = String::new();
    for b in &p.blocks {
        let _ = writeln!(out, "{b}");
    }
    out
}

/// Reads `u s m`, a line of `u` element names, then `m` lines of `s` names.
pub fn parse_x3c(text: &str) -> Result<X3CInstance> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect_line("header \"u s m\"")?;
    let [u, s, m] = numbers::<3>(line, header)?;
    let names = |lines: &mut Lines<'_>, len: usize, what: &str| -> Result<Vec<String>> {
        let (line, text) = lines.expect_line(what)?;
        let v: Vec<String> = text.split_whitespace().map(str::to_owned).collect();
        if v.len() != len {
            return Err(parse_err(line, format!("expected {len} names, found {}", v.len())));
        }
        Ok(v)
    };
    let universe = names(&mut lines, u, "universe line")?;
    let sets = (0..m)
        .map(|_| names(&mut lines, s, "set line"))
        .collect::<Result<Vec<_>>>()?;
    check_exhausted(&mut lines)?;
    X3CInstance::new(universe, s, sets)
}

pub fn write_x3c(inst: &X3CInstance) -> String {
    let mut out = format!(
        "{} {} {}\n{}\n",
        inst.universe.len(),
        inst.s,
        inst.sets.len(),
        inst.universe.join(" ")
    );
    for set in &inst.sets {
        let names: Vec<&str> = set.iter().map(|&e| inst.universe[e].as_str()).collect();
        let _ = writeln!(out, "{}", names.join(" "));
    }
    out
}

/// Reads `q t`, the `R`, `B` and `Y` name lines, then `t` lines `r b y`.
pub fn parse_tdm(text: &str) -> Result<TDMInstance> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect_line("header \"q t\"")?;
    let [q, t] = numbers::<2>(line, header)?;
    let mut sides: [Vec<String>; 3] = Default::default();
    for side in sides.iter_mut() {
        let (line, text) = lines.expect_line("element line")?;
        *side = text.split_whitespace().map(str::to_owned).collect();
        if side.len() != q {
            return Err(parse_err(line, format!("expected {q} names, found {}", side.len())));
        }
    }
    let mut triples = Vec::with_capacity(t);
    for _ in 0..t {
        let (line, text) = lines.expect_line("triple line")?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(line, format!("expected 3 names, found {}", fields.len())));
        }
        let mut idx = [0; 3];
        for (k, f) in fields.iter().enumerate() {
            idx[k] = sides[k]
                .iter()
                .position(|x| x == f)
                .ok_or_else(|| Error::MalformedTdm(format!("line {line}: {f} is not in its set")))?;
        }
        triples.push((idx[0], idx[1], idx[2]));
    }
    check_exhausted(&mut lines)?;
    TDMInstance::with_names(sides, triples)
}

pub fn write_tdm(inst: &TDMInstance) -> String {
    let mut out = format!("{} {}\n", inst.q, inst.triples.len());
    for side in &inst.names {
        let _ = writeln!(out, "{}", side.join(" "));
    }
    for &(r, b, y) in &inst.triples {
        let _ = writeln!(out, "{} {} {}", inst.names[0][r], inst.names[1][b], inst.names[2][y]);
    }
    out
}
