//! Cubic multigraphs, their Δ-graphs, and random cubic graphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Rejection-sampling retry cap.
pub const RETRY_CAP: usize = 10_000;

/// Cubic graph on `0..n`, parallel edges allowed, no loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicMultigraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl CubicMultigraph {
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        let mut deg = vec![0usize; n];
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::Loop(VertexId(a)));
            }
            for x in [a, b] {
                *deg.get_mut(x as usize).ok_or(Error::UnknownVertex(VertexId(x)))? += 1;
            }
        }
        if let Some(x) = deg.iter().position(|&d| d != 3) {
            return Err(Error::pre(format!("vertex {x} has degree {}, not 3", deg[x])));
        }
        let mut edges: Vec<(u32, u32)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        Ok(CubicMultigraph { n, edges })
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> Self {
        CubicMultigraph::new(2, vec![(0, 1); 3]).expect("cubic")
    }

    pub fn k4() -> Self {
        CubicMultigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("cubic")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn is_simple(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] != w[1])
    }

    /// The underlying simple graph.
    pub fn simple(&self) -> Graph {
        let mut g = Graph::with_vertices(self.n);
        for &(a, b) in &self.edges {
            if !g.has_edge(VertexId(a), VertexId(b)) {
                g.add_edge(VertexId(a), VertexId(b)).expect("endpoints exist");
            }
        }
        g
    }

    /// Edge connectivity (which equals vertex connectivity for simple cubic
    /// graphs), capped at 3.
    pub fn connectivity(&self) -> usize {
        if !self.simple().is_connected() {
            return 0;
        }
        for k in 1..3 {
            let mut cut = false;
            crate::connectivity::any_subset(&(0..self.edges.len()).collect::<Vec<_>>(), k, &mut |del| {
                let mut g = Graph::with_vertices(self.n);
                for (i, &(a, b)) in self.edges.iter().enumerate() {
                    if !del.contains(&i) && !g.has_edge(VertexId(a), VertexId(b)) {
                        g.add_edge(VertexId(a), VertexId(b)).expect("endpoints exist");
                    }
                }
                cut = !g.is_connected();
                cut
            });
            if cut {
                return k;
            }
        }
        3
    }
}

/// `F^Δ`: vertex `i` of `F` becomes the triangle `3i, 3i+1, 3i+2`; the
/// edges of `F` become links between free corners.
pub fn gen_delta(f: &CubicMultigraph) -> Graph {
    let mut g = Graph::with_vertices(3 * f.order());
    for i in 0..f.order() as u32 {
        let t = [3 * i, 3 * i + 1, 3 * i + 2].map(VertexId);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            g.add_edge(t[a], t[b]).expect("corners exist");
        }
    }
    let mut used = vec![0u32; f.order()];
    for &(a, b) in f.edges() {
        let ca = VertexId(3 * a + used[a as usize]);
        let cb = VertexId(3 * b + used[b as usize]);
        used[a as usize] += 1;
        used[b as usize] += 1;
        g.add_edge(ca, cb).expect("corners exist");
    }
    g
}

/// Configuration model on `n` vertices, rejecting loops.
pub fn gen_random_cubic(n: usize, seed: u64) -> Result<CubicMultigraph> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::pre(format!("no cubic multigraph on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<u32> = (0..n as u32).flat_map(|x| [x; 3]).collect();
    for _ in 0..RETRY_CAP {
        points.shuffle(&mut rng);
        let edges: Vec<(u32, u32)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        if edges.iter().all(|&(a, b)| a != b) {
            return CubicMultigraph::new(n, edges);
        }
    }
    Err(Error::pre("random cubic multigraph: retry cap reached"))
}

/// Random cubic multigraph whose Δ-graph connectivity is at least `k`.
pub fn gen_random_cubic_connected(n: usize, k: usize, seed: u64) -> Result<CubicMultigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_CAP {
        let f = gen_random_cubic(n, rand::Rng::gen(&mut rng))?;
        if f.connectivity() >= k {
            return Ok(f);
        }
    }
    Err(Error::pre(format!("no {k}-connected cubic multigraph within the retry cap")))
}

/// Random simple cubic graph with vertex connectivity at least `k`.
pub fn gen_random_cubic_simple(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::pre(format!("no simple cubic graph on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_CAP {
        let f = gen_random_cubic(n, rand::Rng::gen(&mut rng))?;
        if !f.is_simple() {
            continue;
        }
        let g = f.simple();
        if vertex_connectivity(&g) >= k {
            return Ok(g);
        }
    }
    Err(Error::pre(format!("no {k}-connected simple cubic graph within the retry cap")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clawfree::delta_preimage;
    use crate::connectivity::vertex_connectivity;

    #[test]
    fn theta_gives_prism() {
        let g = gen_delta(&CubicMultigraph::theta());
        assert_eq!(g.order(), 6);
        assert!(g.is_regular(3) && g.is_claw_free());
        assert_eq!(vertex_connectivity(&g), 3);
    }

    #[test]
    fn k4_delta() {
        let g = gen_delta(&CubicMultigraph::k4());
        assert_eq!(g.order(), 12);
        assert_eq!(delta_preimage(&g).unwrap().node_count(), 4);
    }

    #[test]
    fn bridge_gives_connectivity_one() {
        // two copies of K4 minus an edge, joined by a bridge
        let f = CubicMultigraph::new(
            8,
            vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7), (0, 4), (3, 7)],
        )
        .unwrap();
        assert_eq!(f.connectivity(), 2);
        let f = CubicMultigraph::new(
            10,
            vec![
                (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (0, 4), (4, 9),
                (5, 6), (5, 7), (6, 7), (6, 8), (7, 8), (8, 9), (5, 9),
            ],
        )
        .unwrap();
        assert_eq!(f.connectivity(), 1);
        assert_eq!(vertex_connectivity(&gen_delta(&f)), 1);
    }

    #[test]
    fn contraction_round_trip() {
        for seed in 0..20 {
            let f = gen_random_cubic(8, seed).unwrap();
            let g = gen_delta(&f);
            let pre = delta_preimage(&g).unwrap();
            let mut links: Vec<(u32, u32)> = (0..pre.links.len())
                .map(|l| {
                    let (a, b) = pre.link_nodes(l);
                    let (a, b) = (pre.triangles[a][0].0 / 3, pre.triangles[b][0].0 / 3);
                    (a.min(b), a.max(b))
                })
                .collect();
            links.sort_unstable();
            assert_eq!(links, f.edges());
            assert_eq!(vertex_connectivity(&g).min(3), f.connectivity(), "{f:?}");
        }
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        assert_eq!(gen_random_cubic(12, 9).unwrap(), gen_random_cubic(12, 9).unwrap());
        assert!(gen_random_cubic(7, 0).is_err());
        let g = gen_random_cubic_simple(10, 3, 4).unwrap();
        assert!(g.is_regular(3) && vertex_connectivity(&g) >= 3);
    }
}
