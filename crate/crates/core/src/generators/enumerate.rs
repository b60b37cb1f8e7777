//! Exhaustive enumeration of connected claw-free graphs up to isomorphism.
//!
//! Every connected claw-free graph on `n + 1` vertices arises from one on
//! `n` vertices by adding a vertex (delete any non-cut vertex), so the
//! orders are built level by level and deduplicated by canonical form.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Largest order supported by the bitmask representation.
pub const MAX_ENUMERATION_ORDER: usize = 10;

type Adj = Vec<u16>;

fn claw_free_at(adj: &Adj, c: usize) -> bool {
    let nb: Vec<usize> = (0..adj.len()).filter(|&y| adj[c] >> y & 1 == 1).collect();
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            if adj[nb[i]] >> nb[j] & 1 == 1 {
                continue;
            }
            for &w in &nb[j + 1..] {
                if adj[nb[i]] >> w & 1 == 0 && adj[nb[j]] >> w & 1 == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Ordered partition refinement to an equitable partition.
fn refine(adj: &Adj, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = adj.len();
    loop {
        let mut cell_of = vec![0usize; n];
        for (i, c) in cells.iter().enumerate() {
            for &x in c {
                cell_of[x] = i;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        for c in &cells {
            let mut keyed: Vec<(Vec<u8>, usize)> = c
                .iter()
                .map(|&x| {
                    let mut counts = vec![0u8; cells.len()];
                    for y in 0..n {
                        if adj[x] >> y & 1 == 1 {
                            counts[cell_of[y]] += 1;
                        }
                    }
                    (counts, x)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|k| k.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn code(adj: &Adj, order: &[usize]) -> Vec<u16> {
    let n = adj.len();
    let mut pos = vec![0usize; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    order
        .iter()
        .map(|&x| (0..n).filter(|&y| adj[x] >> y & 1 == 1).fold(0u16, |m, y| m | 1 << pos[y]))
        .collect()
}

fn search(adj: &Adj, cells: Vec<Vec<usize>>, best: &mut Option<Vec<u16>>) {
    let cells = refine(adj, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let c = code(adj, &order);
        if best.as_ref().is_none_or(|b| c > *b) {
            *best = Some(c);
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &x in &cells[target] {
        // swapping twins is an automorphism fixing the partition
        let twin = tried.iter().any(|&t| adj[t] & !(1 << x) == adj[x] & !(1 << t));
        if twin {
            continue;
        }
        tried.push(x);
        let mut split = cells.clone();
        let rest: Vec<usize> = split[target].iter().copied().filter(|&y| y != x).collect();
        split[target] = vec![x];
        split.insert(target + 1, rest);
        search(adj, split, best);
    }
}

fn canonical(adj: &Adj) -> Vec<u16> {
    let mut best = None;
    search(adj, vec![(0..adj.len()).collect()], &mut best);
    best.unwrap_or_default()
}

fn to_adj(g: &Graph) -> Adj {
    let (h, _) = g.compact();
    (0..h.order())
        .map(|i| h.nbrs(VertexId(i as u32)).iter().fold(0u16, |m, y| m | 1 << y.0))
        .collect()
}

fn from_code(code: &[u16]) -> Graph {
    let n = code.len();
    let mut g = Graph::with_vertices(n);
    for (i, &row) in code.iter().enumerate() {
        for j in i + 1..n {
            if row >> j & 1 == 1 {
                g.add_edge(VertexId(i as u32), VertexId(j as u32)).expect("vertices exist");
            }
        }
    }
    g
}

/// Canonical relabelling of `g`: isomorphic graphs map to equal graphs.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    if g.order() > 16 {
        return Err(Error::pre("canonical form supports at most 16 vertices"));
    }
    Ok(from_code(&canonical(&to_adj(g))))
}

/// All connected claw-free graphs of each order `1..=max_n`, one per
/// isomorphism class, in canonical form.
pub fn connected_clawfree_graphs(max_n: usize) -> Result<Vec<Vec<Graph>>> {
    if max_n > MAX_ENUMERATION_ORDER {
        return Err(Error::pre(format!("enumeration supports at most {MAX_ENUMERATION_ORDER} vertices")));
    }
    let mut levels: Vec<BTreeSet<Vec<u16>>> = Vec::new();
    if max_n >= 1 {
        levels.push(BTreeSet::from([vec![0u16]]));
    }
    for n in 1..max_n {
        let mut next = BTreeSet::new();
        for base in &levels[n - 1] {
            for s in 1u16..(1 << n) {
                let mut adj = base.clone();
                adj.push(s);
                for (y, row) in adj.iter_mut().enumerate().take(n) {
                    if s >> y & 1 == 1 {
                        *row |= 1 << n;
                    }
                }
                let ok = claw_free_at(&adj, n) && (0..n).filter(|&y| s >> y & 1 == 1).all(|y| claw_free_at(&adj, y));
                if ok {
                    next.insert(canonical(&adj));
                }
            }
        }
        levels.push(next);
    }
    Ok(levels.into_iter().map(|l| l.iter().map(|c| from_code(c)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn relabel(g: &Graph, perm: &[u32]) -> Graph {
        let edges: Vec<(u32, u32)> = g.edges().map(|e| (perm[e.u().index()], perm[e.v().index()])).collect();
        Graph::from_edges(g.order(), &edges).unwrap()
    }

    #[test]
    fn canonical_form_is_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let c9 = crate::generators::gen_cycle(9).unwrap();
        let k9 = crate::generators::gen_complete(9);
        let pet = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        for g in [c9, k9, pet, crate::generators::gen_construction_h().graph] {
            let c = canonical_form(&g).unwrap();
            for _ in 0..10 {
                let mut perm: Vec<u32> = (0..g.order() as u32).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&relabel(&g, &perm)).unwrap(), c);
            }
        }
    }

    /// Labelled brute force with permutation-minimal codes.
    fn brute_counts(max_n: usize) -> Vec<usize> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        (1..=max_n)
            .map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
                let ps = perms(n);
                let mut seen = BTreeSet::new();
                for mask in 0u32..(1 << pairs.len()) {
                    let mut adj = vec![0u16; n];
                    for (i, &(a, b)) in pairs.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            adj[a] |= 1 << b;
                            adj[b] |= 1 << a;
                        }
                    }
                    let g = from_code(&adj);
                    if !g.is_connected() || !g.is_claw_free() {
                        continue;
                    }
                    let best = ps.iter().map(|p| code(&adj, p)).max().unwrap();
                    seen.insert(best);
                }
                seen.len()
            })
            .collect()
    }

    #[test]
    fn small_orders_match_brute_force() {
        let levels = connected_clawfree_graphs(6).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, brute_counts(6));
        assert_eq!(counts, [1, 1, 2, 5, 14, 50]);
        for g in levels.iter().flatten() {
            assert!(g.is_connected() && g.is_claw_free());
        }
    }

    #[test]
    fn orders_seven_to_nine_counts() {
        let counts: Vec<usize> = connected_clawfree_graphs(9).unwrap().iter().map(Vec::len).collect();
        assert_eq!(counts, [1, 1, 2, 5, 14, 50, 191, 881, 4494]);
    }
}
