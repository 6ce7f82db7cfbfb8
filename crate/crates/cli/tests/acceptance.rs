//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//! Runs without the libtest harness so the report is always printed.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{b_matching, brute_has_partition, random_graph, subsets};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starpart::bipperm::{bipperm_solve, star_counts};
use starpart::cograph::{cograph_partition, CotreeNode, CoverTable};
use starpart::generators::{
    bipartite_from_permutation, is_chordal, planted_bipperm, planted_intervals, random_bipperm, random_cotree,
    random_intervals, random_split, random_unit_intervals, subdivide_edge, tdm_to_chordal, x3c_to_split, TDMInstance,
    X3CInstance,
};
use starpart::interval::{normalize_events, p3_construct, p3_decide, unit_interval_partition, Coord, RawInterval};
use starpart::split::p3_split_solve;
use starpart::{io, oracle_partition, verify_partition, Graph, OracleAnswer, StarPartition, DEFAULT_BUDGET};

/// Counts every partition handed to the verifier across all criteria.
#[derive(Default)]
struct Certificates {
    checked: usize,
    rejected: usize,
}

impl Certificates {
    fn check(&mut self, g: &Graph, s: usize, p: &StarPartition) -> bool {
        self.checked += 1;
        let ok = verify_partition(g, s, p).is_ok();
        self.rejected += usize::from(!ok);
        ok
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn oracle(g: &Graph, s: usize) -> Option<bool> {
    oracle_partition(g, s, DEFAULT_BUDGET).decision()
}

fn six_intervals() -> Vec<RawInterval> {
    [(1, 9), (2, 3), (4, 6), (5, 8), (7, 11), (10, 12)]
        .iter()
        .enumerate()
        .map(|(id, &(b, d)): (usize, &(i128, i128))| RawInterval::new(id, b, d))
        .collect()
}

fn criterion_1() -> Outcome {
    let rep = normalize_events(&six_intervals()).unwrap();
    let d = p3_decide(&rep).unwrap();
    let expected = vec![0, 2, 4, 1, 3, 5, 2, 4, 1, 1, 3, 0, 0];
    let best = (0..20)
        .map(|_| {
            let t = Instant::now();
            let _ = p3_decide(&rep).unwrap();
            t.elapsed()
        })
        .min()
        .unwrap();
    let pass = d.feasible && d.sizes == expected && best < Duration::from_millis(1);
    outcome(
        pass,
        format!("feasible = {}, sizes = {:?}, {best:?}", d.feasible, d.sizes),
    )
}

fn criterion_2(certs: &mut Certificates) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut mismatches, mut yes) = (0, 0);
    for i in 0..1000 {
        let raw = if i % 3 == 0 {
            planted_intervals(rng.gen_range(1..=5), &mut rng)
        } else {
            random_intervals(rng.gen_range(1..=15), &mut rng)
        };
        let rep = normalize_events(&raw).unwrap();
        let g = rep.to_graph();
        let expected = oracle(&g, 2).unwrap();
        yes += usize::from(expected);
        let decided = p3_decide(&rep).unwrap().feasible;
        let built = p3_construct(&rep).unwrap();
        let cert_ok = built.as_ref().is_none_or(|p| certs.check(&g, 2, p));
        if decided != expected || built.is_some() != expected || !cert_ok {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && elapsed < Duration::from_secs(60),
        format!("1000 instances ({yes} yes), {mismatches} mismatches, {elapsed:.2?}"),
    )
}

// Clusters of s + 1 unit intervals sharing a point, at random tenths.
fn planted_unit_intervals(blocks: usize, s: usize, rng: &mut ChaCha8Rng) -> Vec<RawInterval> {
    let mut births = Vec::new();
    for _ in 0..blocks {
        let c: i128 = rng.gen_range(0..20 * blocks as i128);
        births.extend((0..=s).map(|_| c + rng.gen_range(0..10)));
    }
    births.shuffle(rng);
    births
        .into_iter()
        .enumerate()
        .map(|(id, b)| {
            let birth = Coord::new(b, 10);
            RawInterval {
                id,
                birth,
                death: birth + 1,
            }
        })
        .collect()
}

fn criterion_3(certs: &mut Certificates) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut mismatches, mut yes) = (0, 0);
    for i in 0..1000 {
        let s = 1 + i % 3;
        let raw = if i % 2 == 0 {
            planted_unit_intervals(rng.gen_range(1..=15 / (s + 1)), s, &mut rng)
        } else {
            random_unit_intervals(rng.gen_range(1..=15), &mut rng)
        };
        let rep = normalize_events(&raw).unwrap();
        let g = rep.to_graph();
        let expected = oracle(&g, s).unwrap();
        yes += usize::from(expected);
        match unit_interval_partition(&rep, s).unwrap() {
            Some(p) => mismatches += usize::from(!expected || !certs.check(&g, s, &p)),
            None => mismatches += usize::from(expected),
        }
    }
    outcome(
        mismatches == 0,
        format!("1000 instances ({yes} yes), {mismatches} mismatches"),
    )
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_4(certs: &mut Certificates) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut mismatches, mut yes, mut paired) = (0, 0, 0);
    let mut check = |g: &starpart::BipartiteGraph, ord: &_, s: usize, certs: &mut Certificates| -> (bool, bool) {
        let host = g.to_graph();
        let expected = oracle(&host, s).unwrap();
        let ok = match bipperm_solve(g, ord, s).unwrap() {
            Some(sol) => {
                paired += usize::from(!sol.pairs.is_empty());
                let (ku, kw) = star_counts(g.n_left(), g.n_right(), s)
                    .unwrap()
                    .unwrap_or((usize::MAX, 0));
                let left = sol.partition.centers().filter(|&c| c < g.n_left()).count();
                let right = sol.partition.blocks.len() - left;
                expected && certs.check(&host, s, &sol.partition) && (left, right) == (ku, kw)
            }
            None => !expected,
        };
        (ok, expected)
    };
    for i in 0..500 {
        let s = 2 + i % 2;
        let n = rng.gen_range(1..=15);
        let (g, ord) = if i % 2 == 0 {
            planted_bipperm((n / (s + 1)).max(1), s, 3 * n, &mut rng)
        } else {
            random_bipperm(n, &mut rng)
        };
        let (ok, expected) = check(&g, &ord, s, certs);
        mismatches += usize::from(!ok);
        yes += usize::from(expected);
    }
    // every 321-avoiding permutation of length 8 with s = 3 (exercises paired stars)
    let mut extra = 0;
    for p in permutations(8) {
        if let Some((g, ord)) = bipartite_from_permutation(&p) {
            extra += 1;
            mismatches += usize::from(!check(&g, &ord, 3, certs).0);
        }
    }
    outcome(
        mismatches == 0,
        format!("500 instances ({yes} yes) + {extra} exhaustive, {paired} with paired stars, {mismatches} mismatches"),
    )
}

fn criterion_5(certs: &mut Certificates) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut mismatches, mut yes, mut cells, mut one_sided, mut cell_errors) = (0, 0, 0, 0, 0);
    for i in 0..500 {
        let s = 2 + i % 2;
        let n = rng.gen_range(1..=15);
        let tree = random_cotree(n, &mut rng);
        let g = tree.to_graph(n).unwrap();
        let expected = oracle(&g, s).unwrap();
        yes += usize::from(expected);
        match cograph_partition(&g, s).unwrap() {
            Some(p) => mismatches += usize::from(!expected || !certs.check(&g, s, &p)),
            None => mismatches += usize::from(expected),
        }
        let table = CoverTable::build(&tree, s, n);
        for x in 0..tree.len() {
            let CotreeNode::Join(a, b) = tree.node(x) else { continue };
            if tree.size(x) > 10 {
                continue;
            }
            let (va, vb) = (tree.vertices(a), tree.vertices(b));
            for c1 in 0..=va.len() {
                for c2 in 0..=vb.len() {
                    let Some(v) = table.join_value(&tree, x, c1, c2) else {
                        continue;
                    };
                    let mut best = 0;
                    for xa in subsets(&va, c1) {
                        for xb in subsets(&vb, c2) {
                            let centers: Vec<usize> = xa.iter().chain(&xb).copied().collect();
                            let others: Vec<usize> =
                                va.iter().chain(&vb).copied().filter(|v| !centers.contains(v)).collect();
                            best = best.max(b_matching(&g, &centers, &others, s));
                        }
                    }
                    cells += 1;
                    let (l1, l2) = (va.len() - c1, vb.len() - c2);
                    one_sided += usize::from((c1 * s > l2) != (c2 * s > l1));
                    cell_errors += usize::from(v != best);
                }
            }
        }
    }
    outcome(
        mismatches == 0 && cell_errors == 0,
        format!(
            "500 instances ({yes} yes), {mismatches} mismatches; {cells} join cells ({one_sided} one-sided), {cell_errors} differ from brute force"
        ),
    )
}

fn criterion_6(certs: &mut Certificates) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut mismatches, mut yes) = (0, 0);
    for _ in 0..500 {
        let g = random_split(rng.gen_range(1..=15), &mut rng);
        let expected = oracle(&g, 2).unwrap();
        yes += usize::from(expected);
        match p3_split_solve(&g).unwrap() {
            Some(sol) => {
                let (n0, n1, _) = sol.factor.degree_counts();
                let ok = expected
                    && sol.factor.check(&sol.decomposition).is_ok()
                    && n0 >= n1
                    && (n0 - n1) % 3 == 0
                    && certs.check(&g, 2, &sol.partition);
                mismatches += usize::from(!ok);
            }
            None => mismatches += usize::from(expected),
        }
    }
    outcome(
        mismatches == 0,
        format!("500 instances ({yes} yes), {mismatches} mismatches"),
    )
}

fn has_exact_cover(inst: &X3CInstance) -> bool {
    let idx: Vec<usize> = (0..inst.sets.len()).collect();
    subsets(&idx, inst.universe.len() / inst.s).into_iter().any(|pick| {
        let mut seen = vec![false; inst.universe.len()];
        pick.iter()
            .flat_map(|&i| &inst.sets[i])
            .all(|&e| !std::mem::replace(&mut seen[e], true))
    })
}

fn has_perfect_matching(inst: &TDMInstance) -> bool {
    let idx: Vec<usize> = (0..inst.triples.len()).collect();
    subsets(&idx, inst.q).into_iter().any(|pick| {
        let mut used = vec![[false; 3]; inst.q];
        pick.iter().all(|&i| {
            let (r, b, y) = inst.triples[i];
            let fresh = !used[r][0] && !used[b][1] && !used[y][2];
            used[r][0] = true;
            used[b][1] = true;
            used[y][2] = true;
            fresh
        })
    })
}

fn criterion_7(certs: &mut Certificates) -> Outcome {
    let mut x3c = 0;
    let mut mismatches = 0;
    let mut run = |inst: X3CInstance, certs: &mut Certificates| {
        let (g, _) = x3c_to_split(&inst).unwrap();
        let answer = oracle_partition(&g, inst.s, DEFAULT_BUDGET);
        let ok = match &answer {
            OracleAnswer::Yes(p) => has_exact_cover(&inst) && certs.check(&g, inst.s, p),
            OracleAnswer::No => !has_exact_cover(&inst),
            OracleAnswer::BudgetExceeded => false,
        };
        x3c += 1;
        usize::from(!ok)
    };
    // every collection of at most five 3-sets over 3 and 6 elements
    for u in [3, 6] {
        let all = subsets(&(0..u).collect::<Vec<_>>(), 3);
        let ids: Vec<usize> = (0..all.len()).collect();
        for m in u / 3..=5.min(all.len()) {
            for pick in subsets(&ids, m) {
                let sets = pick.iter().map(|&i| all[i].clone()).collect();
                mismatches += run(X3CInstance::from_indices(u, 3, sets).unwrap(), certs);
            }
        }
    }
    // nine elements: all three-set collections containing {0, 1, 2} (every
    // collection is a relabeling of one of these), sampled beyond that
    let all9 = subsets(&(0..9).collect::<Vec<_>>(), 3);
    for i in 1..all9.len() {
        for j in i + 1..all9.len() {
            let sets = vec![all9[0].clone(), all9[i].clone(), all9[j].clone()];
            mismatches += run(X3CInstance::from_indices(9, 3, sets).unwrap(), certs);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let m = rng.gen_range(4..=5);
        let sets = all9.choose_multiple(&mut rng, m).cloned().collect();
        mismatches += run(X3CInstance::from_indices(9, 3, sets).unwrap(), certs);
    }
    let mut tdm = 0;
    let mut not_chordal = 0;
    for q in 1..=2 {
        let all: Vec<(usize, usize, usize)> = (0..q)
            .flat_map(|r| (0..q).flat_map(move |b| (0..q).map(move |y| (r, b, y))))
            .collect();
        for mask in 0u32..1 << all.len() {
            let triples = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            let inst = TDMInstance::new(q, triples).unwrap();
            let g = tdm_to_chordal(&inst);
            not_chordal += usize::from(!is_chordal(&g));
            let ok = match oracle_partition(&g, 2, DEFAULT_BUDGET) {
                OracleAnswer::Yes(p) => has_perfect_matching(&inst) && certs.check(&g, 2, &p),
                OracleAnswer::No => !has_perfect_matching(&inst),
                OracleAnswer::BudgetExceeded => false,
            };
            mismatches += usize::from(!ok);
            tdm += 1;
        }
    }
    outcome(
        mismatches == 0 && not_chordal == 0,
        format!("{x3c} X3C + {tdm} 3DM instances, {mismatches} mismatches, {not_chordal} non-chordal images"),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut done, mut mismatches) = (0, 0);
    while done < 200 {
        let n = rng.gen_range(2..=9);
        let g = random_graph(n, rng.gen_range(0.2..0.8), &mut rng);
        let edges: Vec<_> = g.edges().collect();
        let Some(&e) = edges.choose(&mut rng) else { continue };
        let h = subdivide_edge(&g, e).unwrap();
        let (a, b) = (oracle(&g, 2), oracle(&h, 2));
        // the enumerator is an independent second opinion on the small side
        mismatches += usize::from(a != b || a != Some(brute_has_partition(&g, 2)));
        done += 1;
    }
    outcome(mismatches == 0, format!("200 pairs, {mismatches} mismatches"))
}

fn min_time(runs: usize, mut f: impl FnMut()) -> Duration {
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let big = normalize_events(&planted_intervals(100_000usize.div_ceil(3), &mut rng)).unwrap();
    let mut feasible = false;
    let t_big = min_time(1, || feasible = p3_decide(&big).unwrap().feasible);
    let random_big = normalize_events(&random_intervals(100_000, &mut rng)).unwrap();
    let t_random = min_time(1, || {
        let _ = p3_decide(&random_big).unwrap();
    });

    let (g, ord) = planted_bipperm(1000, 2, 6000, &mut rng);
    let mut solved = false;
    let t_dp = min_time(1, || solved = bipperm_solve(&g, &ord, 2).unwrap().is_some());

    let small = normalize_events(&planted_intervals(10_000 / 3, &mut rng)).unwrap();
    let double = normalize_events(&planted_intervals(20_000 / 3, &mut rng)).unwrap();
    let t1 = min_time(7, || {
        let _ = p3_decide(&small).unwrap();
    });
    let t2 = min_time(7, || {
        let _ = p3_decide(&double).unwrap();
    });
    let ratio = t2.as_secs_f64() / t1.as_secs_f64();
    let pass = feasible
        && solved
        && t_big < Duration::from_secs(2)
        && t_random < Duration::from_secs(2)
        && t_dp < Duration::from_secs(10)
        && ratio < 3.0;
    outcome(
        pass,
        format!(
            "intervals n = {}: {t_big:.2?} (random: {t_random:.2?}); bipartite DP n = {}: {t_dp:.2?}; 10^4 -> 2*10^4 ratio {ratio:.2}",
            big.n(),
            g.n_left() + g.n_right()
        ),
    )
}

fn run_cli(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_starpart"))
        .args(args)
        .output()
        .expect("run starpart")
        .status
        .code()
        .unwrap_or(-1)
}

fn criterion_10(certs: &Certificates) -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name);
    let s_of = |p: &Path| p.to_str().unwrap().to_owned();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut runs, mut yes, mut failures) = (0, 0, 0);
    for i in 0..20 {
        let n = rng.gen_range(3..=12);
        let cases: Vec<(&str, usize, String)> = vec![
            (
                "interval",
                2,
                io::write_intervals(&planted_intervals(1 + i % 4, &mut rng)),
            ),
            ("interval", 2, io::write_intervals(&random_intervals(n, &mut rng))),
            (
                "unit-interval",
                1 + i % 3,
                io::write_intervals(&random_unit_intervals(n, &mut rng)),
            ),
            ("bip-perm", 2, {
                let (g, ord) = planted_bipperm(1 + i % 4, 2, 10, &mut rng);
                io::write_bipartite(&g, if i % 2 == 0 { Some(&ord) } else { None })
            }),
            (
                "cograph",
                2 + i % 2,
                io::write_graph(&random_cotree(n, &mut rng).to_graph(n).unwrap()),
            ),
            ("split", 2, io::write_graph(&random_split(n, &mut rng))),
            ("oracle", 1 + i % 3, io::write_graph(&random_graph(n, 0.4, &mut rng))),
        ];
        for (k, (class, s, text)) in cases.into_iter().enumerate() {
            let input = path(&format!("in-{i}-{k}"));
            let cert = path(&format!("cert-{i}-{k}"));
            std::fs::write(&input, text).unwrap();
            let s = s.to_string();
            let code = run_cli(&[
                "solve",
                "--class",
                class,
                "--s",
                &s,
                "--input",
                &s_of(&input),
                "--certificate",
                &s_of(&cert),
            ]);
            runs += 1;
            match code {
                0 => {
                    yes += 1;
                    failures +=
                        usize::from(run_cli(&["verify", "--input", &s_of(&input), "--partition", &s_of(&cert)]) != 0);
                }
                1 => {}
                _ => failures += 1,
            }
        }
    }
    outcome(
        failures == 0 && certs.rejected == 0 && certs.checked > 0,
        format!(
            "{} library certificates, {} rejected; {runs} CLI solves ({yes} yes), {failures} failed round trips",
            certs.checked, certs.rejected
        ),
    )
}

fn main() {
    let mut certs = Certificates::default();
    let results = vec![
        ("1 six-interval trace", criterion_1()),
        ("2 interval vs oracle", criterion_2(&mut certs)),
        ("3 unit interval vs oracle", criterion_3(&mut certs)),
        ("4 bipartite permutation vs oracle", criterion_4(&mut certs)),
        ("5 cograph vs oracle", criterion_5(&mut certs)),
        ("6 split vs oracle", criterion_6(&mut certs)),
        ("7 reduction answer preservation", criterion_7(&mut certs)),
        ("8 subdivision invariance", criterion_8()),
        ("9 scaling", criterion_9()),
    ];
    let last = criterion_10(&certs);
    let mut failed = 0;
    for (name, o) in results.iter().chain(std::iter::once(&("10 certificates", last))) {
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
