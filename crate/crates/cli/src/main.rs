use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use starpart::bipperm::{bipperm_partition, compute_strong_ordering, validate_strong_ordering};
use starpart::cograph::{build_cotree, cograph_partition_with};
use starpart::generators::{
    planted_bipperm, planted_intervals, random_instance, tdm_to_chordal, x3c_to_split, Instance, RandomKind,
    TDMInstance, X3CInstance,
};
use starpart::interval::{normalize_events, p3_sweep, unit_interval_partition, IntervalRepresentation, RawInterval};
use starpart::matching::max_general_matching;
use starpart::split::{build_bstar, p3_split, split_decompose, star_split};
use starpart::{
    io, oracle_partition, verify_partition, Block, Error, Graph, OracleAnswer, StarPartition, DEFAULT_BUDGET,
};

const YES: u8 = 0;
const NO: u8 = 1;
const USAGE: u8 = 2;
const REFUSED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "starpart",
    version,
    about = "Partition graphs into vertex-disjoint stars K_{1,s}"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the input has an s-star partition
    Solve(SolveArgs),
    /// Check a partition file against a graph, interval or bipartite file
    Verify(VerifyArgs),
    /// Write generated instances
    #[command(subcommand)]
    Gen(GenCommand),
    /// Time a solver over a ladder of instance sizes (CSV on stdout)
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Class {
    UnitInterval,
    Interval,
    BipPerm,
    Cograph,
    Split,
    Oracle,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    class: Class,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    input: PathBuf,
    /// Write the partition here when the answer is yes
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Print the handle-list sizes of the interval sweep
    #[arg(long)]
    trace: bool,
    /// Node budget of the exhaustive search
    #[arg(long)]
    budget: Option<u64>,
    /// Largest split graph handed to exhaustive search when s != 2
    #[arg(long, default_value_t = 30)]
    limit: usize,
    /// Write the matching gadget built for a split graph
    #[arg(long)]
    dump_gadget: Option<PathBuf>,
    /// Write the cotree used for a cograph
    #[arg(long)]
    dump_cotree: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    partition: PathBuf,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Split graph encoding an exact cover instance
    X3cSplit {
        /// Read the instance instead of drawing a random one
        #[arg(long, conflicts_with_all = ["u", "sets"])]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        u: usize,
        #[arg(long, default_value_t = 3)]
        sets: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the source instance
        #[arg(long)]
        source: Option<PathBuf>,
    },
    /// Chordal graph encoding a 3-dimensional matching instance
    TdmChordal {
        #[arg(long, conflicts_with_all = ["q", "triples"])]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 3)]
        triples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        source: Option<PathBuf>,
    },
    /// Random instance of one graph class
    Random {
        #[arg(long)]
        kind: RandomKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    class: Class,
    /// Comma-separated sizes, e.g. 1e3,1e4,1e5
    #[arg(long, value_delimiter = ',', value_parser = parse_size)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_size(text: &str) -> Result<usize, String> {
    let x: f64 = text.trim().parse().map_err(|_| format!("bad size {text:?}"))?;
    if !(x >= 1.0 && x.fract() == 0.0 && x <= 1e9) {
        return Err(format!("bad size {text:?}"));
    }
    Ok(x as usize)
}

/// Exit code with a message for stderr.
struct Exit(u8, String);

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        let code = match e.downcast_ref::<Error>() {
            Some(Error::OpenProblem { .. } | Error::InstanceTooLarge { .. } | Error::BudgetExceeded { .. }) => REFUSED,
            _ => USAGE,
        };
        Exit(code, format!("{e:#}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Command::Solve(a) => solve(&a),
        Command::Verify(a) => verify(&a),
        Command::Gen(g) => generate(g).map(|()| YES).map_err(Exit::from),
        Command::Bench(b) => bench(&b).map(|()| YES).map_err(Exit::from),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("starpart: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_to(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn budget(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("STARPART_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("STARPART_BUDGET is not an integer: {v:?}")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn solve(a: &SolveArgs) -> Result<u8, Exit> {
    if a.s == 0 {
        return Err(Exit(USAGE, "--s must be at least 1".into()));
    }
    let text = read(&a.input)?;
    let partition = match a.class {
        Class::UnitInterval | Class::Interval => solve_intervals(a, &text)?,
        Class::BipPerm => {
            let inp = io::parse_bipartite(&text).map_err(anyhow::Error::from)?;
            let ord = match inp.ordering {
                Some(ord) => {
                    if !validate_strong_ordering(&inp.graph, &ord).map_err(anyhow::Error::from)? {
                        return Err(Exit(USAGE, "the given ordering is not a strong ordering".into()));
                    }
                    ord
                }
                None => compute_strong_ordering(&inp.graph).ok_or_else(|| {
                    Exit(
                        USAGE,
                        "no strong ordering found; the input does not look like a bipartite permutation graph".into(),
                    )
                })?,
            };
            bipperm_partition(&inp.graph, &ord, a.s).map_err(anyhow::Error::from)?
        }
        Class::Cograph => {
            let g = io::parse_graph(&text).map_err(anyhow::Error::from)?;
            let tree =
                build_cotree(&g).ok_or_else(|| Exit(USAGE, "input is not a cograph (it has an induced P4)".into()))?;
            if let Some(p) = &a.dump_cotree {
                write_to(Some(p), &format!("{tree}\n"))?;
            }
            cograph_partition_with(&tree, g.n(), a.s).map_err(anyhow::Error::from)?
        }
        Class::Split => {
            let g = io::parse_graph(&text).map_err(anyhow::Error::from)?;
            let sd = split_decompose(&g).ok_or_else(|| Exit(USAGE, "input is not a split graph".into()))?;
            if a.s == 2 {
                if let Some(p) = &a.dump_gadget {
                    let dump = build_bstar(&sd, &g)
                        .map(|gad| gad.dump())
                        .unwrap_or_else(|| "# no gadget: vertex counts already rule out a partition\n".into());
                    write_to(Some(p), &dump)?;
                }
                p3_split(&g).map_err(anyhow::Error::from)?
            } else {
                star_split(&g, a.s, a.limit, budget(a.budget)?).map_err(|e| match e {
                    Error::InstanceTooLarge { n, limit } => Exit(
                        REFUSED,
                        format!(
                            "refused: star partition on split graphs is NP-hard for s >= 3; \
                             {n} vertices exceed the exhaustive-search limit of {limit}"
                        ),
                    ),
                    other => Exit::from(anyhow::Error::from(other)),
                })?
            }
        }
        Class::Oracle => {
            let g = io::parse_graph(&text).map_err(anyhow::Error::from)?;
            let b = budget(a.budget)?;
            match oracle_partition(&g, a.s, b) {
                OracleAnswer::Yes(p) => Some(p),
                OracleAnswer::No => None,
                OracleAnswer::BudgetExceeded => {
                    return Err(Exit::from(anyhow::Error::from(Error::BudgetExceeded { budget: b })))
                }
            }
        }
    };
    match partition {
        Some(p) => {
            println!("yes");
            if let Some(path) = &a.certificate {
                write_to(Some(path), &io::write_partition(&p.normalized()))?;
            }
            Ok(YES)
        }
        None => {
            println!("no");
            Ok(NO)
        }
    }
}

fn solve_intervals(a: &SolveArgs, text: &str) -> Result<Option<StarPartition>, Exit> {
    let raw = io::parse_intervals(text).map_err(anyhow::Error::from)?;
    let rep = normalize_events(&raw).map_err(anyhow::Error::from)?;
    if a.class == Class::UnitInterval {
        let len = raw.first().map(|r| r.death - r.birth);
        if raw.iter().any(|r| Some(r.death - r.birth) != len) {
            return Err(Exit(
                USAGE,
                "unit-interval input must have intervals of one common length".into(),
            ));
        }
        return Ok(unit_interval_partition(&rep, a.s).map_err(anyhow::Error::from)?);
    }
    match a.s {
        1 => Ok(perfect_matching(&rep)),
        2 => {
            let (decision, partition) = p3_sweep(&rep, true, |_, _| {}).map_err(anyhow::Error::from)?;
            if a.trace {
                let sizes: Vec<String> = decision.sizes.iter().map(usize::to_string).collect();
                println!("sizes: {}", sizes.join(" "));
            }
            Ok(if decision.feasible { partition } else { None })
        }
        s => Err(Exit::from(anyhow::Error::from(Error::OpenProblem { s }))),
    }
}

fn perfect_matching(rep: &IntervalRepresentation) -> Option<StarPartition> {
    let g = rep.to_graph();
    let mate = max_general_matching(&g);
    let mut blocks = Vec::new();
    for (v, m) in mate.iter().enumerate() {
        let w = (*m)?;
        if v < w {
            blocks.push(Block::new(rep.intervals()[v].id, vec![rep.intervals()[w].id]));
        }
    }
    Some(StarPartition::new(1, blocks))
}

/// Graph built from any of the three input formats; the header width
/// (1, 2 or 3 fields) tells them apart.
fn load_any_graph(text: &str) -> anyhow::Result<Graph> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| anyhow!("empty input"))?;
    Ok(match header.split_whitespace().count() {
        1 => interval_graph_by_id(&io::parse_intervals(text)?)?,
        2 => io::parse_graph(text)?,
        3 => io::parse_bipartite(text)?.graph.to_graph(),
        k => bail!("unrecognized header with {k} fields"),
    })
}

// Intersection graph with vertex v standing for the interval with id v.
fn interval_graph_by_id(raw: &[RawInterval]) -> anyhow::Result<Graph> {
    let rep = normalize_events(raw)?;
    let ids: Vec<usize> = rep.intervals().iter().map(|i| i.id).collect();
    let n = raw.len();
    if ids.iter().any(|&id| id >= n) {
        bail!("interval ids must be 0..{n}");
    }
    let g = rep.to_graph();
    Ok(Graph::from_edges(n, g.edges().map(|(u, v)| (ids[u], ids[v])))?)
}

fn verify(a: &VerifyArgs) -> Result<u8, Exit> {
    let g = load_any_graph(&read(&a.input)?)?;
    let p = io::parse_partition(&read(&a.partition)?).map_err(anyhow::Error::from)?;
    match verify_partition(&g, p.s, &p) {
        Ok(()) => {
            println!("valid");
            Ok(YES)
        }
        Err(v) => {
            println!("invalid: {v}");
            Ok(NO)
        }
    }
}

fn generate(cmd: GenCommand) -> anyhow::Result<()> {
    match cmd {
        GenCommand::X3cSplit {
            input,
            u,
            sets,
            s,
            seed,
            output,
            source,
        } => {
            let inst = match input {
                Some(p) => io::parse_x3c(&read(&p)?)?,
                None => random_x3c(u, sets, s, seed)?,
            };
            if let Some(p) = source {
                write_to(Some(&p), &io::write_x3c(&inst))?;
            }
            let (g, _) = x3c_to_split(&inst)?;
            write_to(output.as_deref(), &io::write_graph(&g))
        }
        GenCommand::TdmChordal {
            input,
            q,
            triples,
            seed,
            output,
            source,
        } => {
            let inst = match input {
                Some(p) => io::parse_tdm(&read(&p)?)?,
                None => random_tdm(q, triples, seed)?,
            };
            if let Some(p) = source {
                write_to(Some(&p), &io::write_tdm(&inst))?;
            }
            write_to(output.as_deref(), &io::write_graph(&tdm_to_chordal(&inst)))
        }
        GenCommand::Random { kind, n, seed, output } => {
            let text = match random_instance(kind, n, seed) {
                Instance::Intervals(raw) => io::write_intervals(&raw),
                Instance::Bipartite(g, ord) => io::write_bipartite(&g, Some(&ord)),
                Instance::Graph(g) => io::write_graph(&g),
            };
            write_to(output.as_deref(), &text)
        }
    }
}

fn random_x3c(u: usize, sets: usize, s: usize, seed: u64) -> anyhow::Result<X3CInstance> {
    if s < 2 || u < s {
        bail!("need 2 <= s <= u");
    }
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(start: usize, u: usize, s: usize, cur: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            all.push(cur.clone());
            return;
        }
        for e in start..u {
            cur.push(e);
            rec(e + 1, u, s, cur, all);
            cur.pop();
            if all.len() > 1_000_000 {
                return;
            }
        }
    }
    rec(0, u, s, &mut cur, &mut all);
    if sets > all.len() {
        bail!("only {} distinct {s}-subsets of {u} elements exist", all.len());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen = all.choose_multiple(&mut rng, sets).cloned().collect();
    Ok(X3CInstance::from_indices(u, s, chosen)?)
}

fn random_tdm(q: usize, triples: usize, seed: u64) -> anyhow::Result<TDMInstance> {
    let all: Vec<(usize, usize, usize)> = (0..q)
        .flat_map(|r| (0..q).flat_map(move |b| (0..q).map(move |y| (r, b, y))))
        .collect();
    if triples > all.len() {
        bail!("only {} distinct triples exist for q = {q}", all.len());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(TDMInstance::new(
        q,
        all.choose_multiple(&mut rng, triples).copied().collect(),
    )?)
}

fn bench(b: &BenchArgs) -> anyhow::Result<()> {
    let mut out = String::from("class,n,m,micros,answer\n");
    let name = b
        .class
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned();
    for &n in &b.sizes {
        let (m, micros, answer) = bench_one(b.class, n, b.s, b.seed)?;
        let _ = writeln!(out, "{name},{n},{m},{micros},{}", if answer { "yes" } else { "no" });
    }
    print!("{out}");
    Ok(())
}

fn bench_one(class: Class, n: usize, s: usize, seed: u64) -> anyhow::Result<(usize, u128, bool)> {
    let kind = match class {
        Class::UnitInterval => RandomKind::UnitIntervals,
        Class::Interval => RandomKind::Intervals,
        Class::BipPerm => RandomKind::BipPerm,
        Class::Cograph => RandomKind::Cograph,
        Class::Split => RandomKind::Split,
        Class::Oracle => bail!("bench has no instance family for the oracle"),
    };
    // planted yes-instances make the interval sweep and the bipartite DP
    // run to the end instead of stopping at the first obstruction
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = match class {
        Class::BipPerm => {
            let (g, ord) = planted_bipperm((n / (s + 1)).max(1), s, 2 * n, &mut rng);
            Instance::Bipartite(g, ord)
        }
        Class::Interval => Instance::Intervals(planted_intervals((n / 3).max(1), &mut rng)),
        _ => random_instance(kind, n, seed),
    };
    let start = Instant::now();
    let (m, answer) = match (class, inst) {
        (Class::UnitInterval, Instance::Intervals(raw)) => {
            let rep = normalize_events(&raw)?;
            let ans = unit_interval_partition(&rep, s)?.is_some();
            (rep.edge_count(), ans)
        }
        (Class::Interval, Instance::Intervals(raw)) => {
            if s != 2 {
                bail!("interval bench supports s = 2 only");
            }
            let rep = normalize_events(&raw)?;
            let (d, _) = p3_sweep(&rep, false, |_, _| {})?;
            (rep.edge_count(), d.feasible)
        }
        (Class::BipPerm, Instance::Bipartite(g, ord)) => (g.edge_count(), bipperm_partition(&g, &ord, s)?.is_some()),
        (Class::Cograph, Instance::Graph(g)) => {
            let tree = build_cotree(&g).ok_or(Error::NotCograph)?;
            (g.m(), cograph_partition_with(&tree, g.n(), s)?.is_some())
        }
        (Class::Split, Instance::Graph(g)) => {
            if s != 2 {
                bail!("split bench supports s = 2 only");
            }
            (g.m(), p3_split(&g)?.is_some())
        }
        _ => unreachable!("instance kind follows the class"),
    };
    Ok((m, start.elapsed().as_micros(), answer))
}
