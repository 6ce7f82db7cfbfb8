mod common;

use common::{b_matching, subsets};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starpart::cograph::{build_cotree, cograph_partition, cograph_partition_with, CotreeNode, CoverTable};
use starpart::generators::random_cotree;
use starpart::{oracle_partition, verify_partition, Graph, DEFAULT_BUDGET};

// Most leaves covered inside `vs` by some choice of `c1` centers from `a`
// and `c2` from `b`.
fn brute_cell(g: &Graph, a: &[usize], b: &[usize], c1: usize, c2: usize, s: usize) -> usize {
    let mut best = 0;
    for x in subsets(a, c1) {
        for y in subsets(b, c2) {
            let centers: Vec<usize> = x.iter().chain(&y).copied().collect();
            let others: Vec<usize> = a.iter().chain(b).copied().filter(|v| !centers.contains(v)).collect();
            best = best.max(b_matching(g, &centers, &others, s));
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn dp_matches_oracle(n in 1usize..=15, s in 2usize..=3, seed: u64) {
        let tree = random_cotree(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let g = tree.to_graph(n).unwrap();
        let expected = oracle_partition(&g, s, DEFAULT_BUDGET).decision().unwrap();
        match cograph_partition(&g, s).unwrap() {
            Some(p) => {
                prop_assert!(expected);
                prop_assert_eq!(verify_partition(&g, s, &p), Ok(()));
            }
            None => prop_assert!(!expected),
        }
        // the generated tree brackets the graph differently from the rebuilt one
        let direct = cograph_partition_with(&tree, n, s).unwrap();
        prop_assert_eq!(direct.is_some(), expected);
        if let Some(p) = direct {
            prop_assert_eq!(verify_partition(&g, s, &p), Ok(()));
        }
    }

    #[test]
    fn join_cells_match_brute_force(n in 2usize..=10, s in 1usize..=3, seed: u64) {
        let tree = random_cotree(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let g = tree.to_graph(n).unwrap();
        let table = CoverTable::build(&tree, s, n);
        for x in 0..tree.len() {
            let CotreeNode::Join(a, b) = tree.node(x) else { continue };
            let (va, vb) = (tree.vertices(a), tree.vertices(b));
            for c1 in 0..=va.len() {
                for c2 in 0..=vb.len() {
                    let Some(v) = table.join_value(&tree, x, c1, c2) else { continue };
                    prop_assert_eq!(v, brute_cell(&g, &va, &vb, c1, c2, s), "join {} cell ({}, {})", x, c1, c2);
                }
            }
        }
    }

    #[test]
    fn table_rows_match_brute_force(n in 1usize..=9, s in 1usize..=3, seed: u64) {
        let tree = random_cotree(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let g = tree.to_graph(n).unwrap();
        let table = CoverTable::build(&tree, s, n);
        for x in 0..tree.len() {
            let vs = tree.vertices(x);
            for c in 0..=vs.len() {
                let brute = brute_cell(&g, &vs, &[], c, 0, s);
                prop_assert_eq!(table.value(x, c), Some(brute), "node {} c = {}", x, c);
            }
        }
    }

    #[test]
    fn cotree_round_trip(n in 1usize..=15, seed: u64) {
        let g = random_cotree(n, &mut ChaCha8Rng::seed_from_u64(seed)).to_graph(n).unwrap();
        let rebuilt = build_cotree(&g).expect("cograph");
        prop_assert_eq!(rebuilt.to_graph(n).unwrap(), g);
    }
}

#[test]
fn non_cographs_are_rejected() {
    let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
    assert!(build_cotree(&c5).is_none());
    assert!(cograph_partition(&c5, 2).is_err());
}
