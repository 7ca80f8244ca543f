#![allow(dead_code)]

use ribbon_degree::canon::Mode;
use ribbon_degree::ribbon::{HalfEdge, RibbonGraph};

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(acc.clone());
            return;
        };
        for i in 0..rest.len() {
            acc.push((first, rest[i]));
            let remaining: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .collect();
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// Valence sequences `[base, others...]` with `others` non-increasing,
/// base at least 2 and the rest at least 3, summing to `total`.
pub fn valence_sequences(total: usize) -> Vec<Vec<usize>> {
    fn rest(remaining: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        for v in (3..=remaining.min(max)).rev() {
            acc.push(v);
            rest(remaining - v, v, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for base in 2..=total {
        let mut acc = vec![base];
        rest(total - base, total, &mut acc, &mut out);
    }
    out
}

/// Every graph whose rotation lists the vertices as consecutive blocks
/// `0..v0, v0..v0+v1, ...` with the basepoint on the first block. Every valid
/// graph with `edges` edges is isomorphic to at least one of them.
pub fn block_graphs(edges: usize) -> Vec<RibbonGraph> {
    let n = 2 * edges;
    let matchings = perfect_matchings(n);
    let mut out = Vec::new();
    for seq in valence_sequences(n) {
        let mut rotations = Vec::new();
        let mut start = 0;
        for &d in &seq {
            rotations.push((start..start + d).collect::<Vec<HalfEdge>>());
            start += d;
        }
        for m in &matchings {
            if let Ok(g) = RibbonGraph::from_rotations(&rotations, m, 0) {
                out.push(g);
            }
        }
    }
    out
}

/// Isomorphism by search over all edge bijections with orientations.
pub fn brute_isomorphic(a: &RibbonGraph, b: &RibbonGraph, mode: Mode) -> bool {
    let n = a.half_edge_count();
    if n != b.half_edge_count() || a.vertex_count() != b.vertex_count() {
        return false;
    }
    let ea = a.edges();
    let eb = b.edges();
    let e = ea.len();
    for perm in permutations(e) {
        for flips in 0u32..(1 << e) {
            let mut phi = vec![0; n];
            for (i, &(x, y)) in ea.iter().enumerate() {
                let (u, w) = eb[perm[i]];
                let (u, w) = if flips & (1 << i) != 0 {
                    (w, u)
                } else {
                    (u, w)
                };
                phi[x] = u;
                phi[y] = w;
            }
            if b.vertex_of(phi[a.basepoint().0]) != b.basepoint() {
                continue;
            }
            let ok = match mode {
                Mode::Ribbon => (0..n).all(|h| phi[a.sigma_of(h)] == b.sigma_of(phi[h])),
                Mode::Plain => {
                    let mut image = std::collections::BTreeMap::new();
                    (0..n).all(|h| {
                        *image.entry(a.vertex_of(h)).or_insert(b.vertex_of(phi[h]))
                            == b.vertex_of(phi[h])
                    }) && image
                        .values()
                        .collect::<std::collections::BTreeSet<_>>()
                        .len()
                        == image.len()
                }
            };
            if ok {
                return true;
            }
        }
    }
    false
}

pub fn shuffle(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    p
}
