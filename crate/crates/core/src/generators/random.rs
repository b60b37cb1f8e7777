//! Seeded random claw-free graphs and family 𝒮 members.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cubic::RETRY_CAP;
use super::families::{gen_family_s, FamilySRecipe};
use crate::connectivity::is_k_connected;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClawFreeMethod {
    /// `L(H)` for a random connected simple graph `H` with `n` edges.
    #[default]
    LineGraph,
    /// Vertex-by-vertex growth inside closed neighbourhoods, rejecting
    /// additions that create a claw.
    LocalComplete,
}

/// Random connected simple graph with exactly `m` edges.
fn random_connected_with_edges(m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let kmin = (2..).find(|&k: &usize| k * (k - 1) / 2 >= m).expect("some k fits");
    let k = rng.gen_range(kmin..=(m + 1).max(kmin));
    let mut g = Graph::with_vertices(k);
    for i in 1..k as u32 {
        let j = rng.gen_range(0..i);
        g.add_edge(VertexId(i), VertexId(j)).expect("tree edge");
    }
    let mut missing: Vec<(u32, u32)> = (0..k as u32)
        .flat_map(|a| (a + 1..k as u32).map(move |b| (a, b)))
        .filter(|&(a, b)| !g.has_edge(VertexId(a), VertexId(b)))
        .collect();
    missing.shuffle(rng);
    for (a, b) in missing.into_iter().take(m - (k - 1)) {
        g.add_edge(VertexId(a), VertexId(b)).expect("new edge");
    }
    g
}

/// Random connected simple graph with exactly `m ≥ 1` edges and between
/// the fewest possible and `m + 1` vertices.
pub fn gen_random_connected(m: usize, seed: u64) -> Result<Graph> {
    if m == 0 {
        return Err(Error::pre("need at least one edge"));
    }
    Ok(random_connected_with_edges(m, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn claw_free_near(g: &Graph, x: VertexId) -> bool {
    std::iter::once(x).chain(g.nbrs(x).iter().copied()).all(|c| {
        let nb: Vec<VertexId> = g.nbrs(c).iter().copied().collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if g.has_edge(nb[i], nb[j]) {
                    continue;
                }
                for &w in &nb[j + 1..] {
                    if !g.has_edge(nb[i], w) && !g.has_edge(nb[j], w) {
                        return false;
                    }
                }
            }
        }
        true
    })
}

/// Grows from `K_{k+1}`; every new vertex gets at least `k` neighbours, so
/// the result stays `k`-connected.
fn grow_local(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let start = (k + 1).min(n);
    let mut g = super::families::gen_complete(start);
    while g.order() < n {
        let mut placed = false;
        for _ in 0..100 {
            let verts: Vec<VertexId> = g.vertices().collect();
            let x = *verts.choose(rng).expect("nonempty");
            let mut pool: Vec<VertexId> = std::iter::once(x).chain(g.nbrs(x).iter().copied()).collect();
            if rng.gen_bool(0.3) {
                if let Some(&y) = g.nbrs(x).iter().collect::<Vec<_>>().choose(rng) {
                    pool.extend(g.nbrs(*y).iter().copied());
                    pool.sort_unstable();
                    pool.dedup();
                }
            }
            pool.shuffle(rng);
            let lo = k.max(1).min(pool.len());
            let size = rng.gen_range(lo..=pool.len());
            let new = g.add_vertex();
            for &w in &pool[..size] {
                g.add_edge(new, w).expect("vertices exist");
            }
            if claw_free_near(&g, new) {
                placed = true;
                break;
            }
            g.remove_vertex(new);
        }
        if !placed {
            return None;
        }
    }
    Some(g.compact().0)
}

/// Connected claw-free graph on `n` vertices.
pub fn gen_random_clawfree(n: usize, seed: u64, method: ClawFreeMethod) -> Result<Graph> {
    gen_random_clawfree_connected(n, 1, seed, method)
}

/// Claw-free graph on `n` vertices with vertex connectivity at least `k`.
pub fn gen_random_clawfree_connected(n: usize, k: usize, seed: u64, method: ClawFreeMethod) -> Result<Graph> {
    if n == 0 || (k >= 1 && n <= k && !(n == 1 && k == 1)) {
        return Err(Error::pre(format!("no {k}-connected graph on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_CAP {
        let g = match method {
            ClawFreeMethod::LineGraph => random_connected_with_edges(n, &mut rng).line_graph().0,
            ClawFreeMethod::LocalComplete => match grow_local(n, k, &mut rng) {
                Some(g) => g,
                None => continue,
            },
        };
        if g.is_connected() && (k <= 1 || is_k_connected(&g, k)) {
            debug_assert!(g.is_claw_free());
            return Ok(g);
        }
    }
    Err(Error::pre(format!("no {k}-connected claw-free graph on {n} vertices within the retry cap")))
}

/// Random tree of `triangles` triangles with leaves on free corners; the
/// leaf count is a positive multiple of three, so `v ≡ 0 mod 3`.
pub fn random_family_s_recipe(triangles: usize, seed: u64) -> Result<FamilySRecipe> {
    if triangles == 0 {
        return Err(Error::pre("family 𝒮 recipe needs a triangle"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut free = vec![3usize; triangles];
    let mut links = Vec::new();
    for i in 1..triangles {
        let open: Vec<usize> = (0..i).filter(|&j| free[j] > 0).collect();
        let j = *open.choose(&mut rng).expect("a tree of triangles always has a free corner");
        free[i] -= 1;
        free[j] -= 1;
        links.push((j, i));
    }
    let corners: Vec<usize> = (0..triangles).flat_map(|t| std::iter::repeat_n(t, free[t])).collect();
    let most = corners.len() / 3;
    let count = 3 * rng.gen_range(1..=most.max(1));
    let mut leaves: Vec<usize> = corners.choose_multiple(&mut rng, count).copied().collect();
    leaves.sort_unstable();
    Ok(FamilySRecipe { triangles, links, leaves })
}

pub fn gen_random_family_s(triangles: usize, seed: u64) -> Result<Graph> {
    gen_family_s(&random_family_s_recipe(triangles, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_two_connected;
    use crate::generators::families::is_family_s;
    use crate::io::to_graph6;

    #[test]
    fn line_graph_method() {
        for seed in 0..30 {
            let g = gen_random_clawfree(12, seed, ClawFreeMethod::LineGraph).unwrap();
            assert_eq!(g.order(), 12);
            assert!(g.is_claw_free() && g.is_connected());
        }
    }

    #[test]
    fn local_method_and_connectivity() {
        for seed in 0..30 {
            let g = gen_random_clawfree_connected(14, 2, seed, ClawFreeMethod::LocalComplete).unwrap();
            assert_eq!(g.order(), 14);
            assert!(g.is_claw_free() && is_two_connected(&g));
            let h = gen_random_clawfree_connected(10, 2, seed, ClawFreeMethod::LineGraph).unwrap();
            assert!(h.is_claw_free() && is_two_connected(&h));
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        for m in [ClawFreeMethod::LineGraph, ClawFreeMethod::LocalComplete] {
            let a = gen_random_clawfree(15, 42, m).unwrap();
            let b = gen_random_clawfree(15, 42, m).unwrap();
            assert_eq!(to_graph6(&a), to_graph6(&b));
        }
    }

    #[test]
    fn random_family_s_members() {
        for seed in 0..40 {
            let g = gen_random_family_s(1 + seed as usize % 6, seed).unwrap();
            assert!(is_family_s(&g));
            assert_eq!(g.order() % 3, 0);
        }
    }
}
