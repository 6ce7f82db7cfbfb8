//! Brute-force references shared by the integration suites. Nothing here
//! calls into the solver or oracle code paths it is used to check.
#![allow(dead_code)]

use starpart::Graph;

/// Exhaustive partition search: the smallest free vertex joins a block made
/// of itself and any `s` other free vertices, and the block must contain a
/// vertex adjacent to all of the others.
pub fn brute_has_partition(g: &Graph, s: usize) -> bool {
    fn adj(g: &Graph, u: usize, v: usize) -> bool {
        g.neighbors(u).contains(&v)
    }
    fn is_star(g: &Graph, block: &[usize]) -> bool {
        block.iter().any(|&c| block.iter().all(|&x| x == c || adj(g, c, x)))
    }
    fn rec(g: &Graph, s: usize, free: &mut Vec<bool>) -> bool {
        let Some(v) = free.iter().position(|&f| f) else {
            return true;
        };
        let others: Vec<usize> = (v + 1..g.n()).filter(|&w| free[w]).collect();
        if others.len() < s {
            return false;
        }
        // subsets of size s via bitmask over `others`
        let k = others.len();
        let mut found = false;
        let visit = |mask: u32, free: &mut Vec<bool>| {
            let mut block = vec![v];
            block.extend((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| others[i]));
            if !is_star(g, &block) {
                return false;
            }
            block.iter().for_each(|&x| free[x] = false);
            let ok = rec(g, s, free);
            block.iter().for_each(|&x| free[x] = true);
            ok
        };
        for mask in 0u32..1 << k {
            if mask.count_ones() as usize == s && visit(mask, free) {
                found = true;
                break;
            }
        }
        found
    }
    if !g.n().is_multiple_of(s + 1) {
        return false;
    }
    rec(g, s, &mut vec![true; g.n()])
}

/// Largest number of non-centers that can each be assigned to an adjacent
/// center in `centers`, every center taking at most `s`. Unit-capacity
/// augmenting paths over `s` copies of each center.
pub fn b_matching(g: &Graph, centers: &[usize], others: &[usize], s: usize) -> usize {
    let slots: Vec<usize> = centers.iter().flat_map(|&c| std::iter::repeat_n(c, s)).collect();
    let mut owner: Vec<Option<usize>> = vec![None; slots.len()];
    fn augment(g: &Graph, x: usize, slots: &[usize], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for i in 0..slots.len() {
            if seen[i] || !g.neighbors(slots[i]).contains(&x) {
                continue;
            }
            seen[i] = true;
            if owner[i].is_none_or(|y| augment(g, y, slots, owner, seen)) {
                owner[i] = Some(x);
                return true;
            }
        }
        false
    }
    others
        .iter()
        .filter(|&&x| augment(g, x, &slots, &mut owner, &mut vec![false; slots.len()]))
        .count()
}

/// All `k`-subsets of `items`.
pub fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| items[i]).collect())
        .collect()
}

/// Random simple graph with edge probability `p`.
pub fn random_graph<R: rand::Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
