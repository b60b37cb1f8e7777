//! Vertex and edge connectivity by exhaustive small-cut enumeration.
//!
//! The graphs handled here have at most a few dozen vertices, and the
//! largest `k` ever asked for is 4, so trying every separator of size `< k`
//! is cheap and obviously correct.

use std::collections::BTreeSet;

use crate::graph::{Edge, Graph, VertexId};

/// Calls `f` on every `k`-subset of `items` (lexicographic) until it
/// returns `true`; reports whether it did.
pub(crate) fn any_subset<T: Copy>(items: &[T], k: usize, f: &mut impl FnMut(&[T]) -> bool) -> bool {
    fn rec<T: Copy>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, f: &mut impl FnMut(&[T]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        let need = k - cur.len();
        for i in start..items.len() {
            if items.len() - i < need {
                break;
            }
            cur.push(items[i]);
            if rec(items, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// `k`-connected: more than `k` vertices and no separator of fewer than `k`
/// vertices.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.order() <= k || !g.is_connected() {
        return false;
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    for s in 1..k {
        let cut = any_subset(&vs, s, &mut |sep| {
            let removed: BTreeSet<VertexId> = sep.iter().copied().collect();
            !g.connected_without(&removed)
        });
        if cut {
            return false;
        }
    }
    true
}

pub fn is_two_connected(g: &Graph) -> bool {
    is_k_connected(g, 2)
}

/// Largest `k` for which `g` is `k`-connected (0 if disconnected or trivial).
pub fn vertex_connectivity(g: &Graph) -> usize {
    let mut k = 0;
    while is_k_connected(g, k + 1) {
        k += 1;
    }
    k
}

fn connected_without_edges(g: &Graph, removed: &[Edge]) -> bool {
    match g.delete_edges(removed) {
        Ok(h) => h.is_connected(),
        Err(_) => false,
    }
}

/// `k`-edge-connected: connected, at least two vertices, and no edge cut of
/// fewer than `k` edges.
pub fn is_k_edge_connected(g: &Graph, k: usize) -> bool {
    if g.order() < 2 || !g.is_connected() {
        return false;
    }
    let es: Vec<Edge> = g.edges().collect();
    for s in 1..k {
        if any_subset(&es, s, &mut |cut| !connected_without_edges(g, cut)) {
            return false;
        }
    }
    true
}

/// Edges whose removal disconnects their component.
pub fn bridges(g: &Graph) -> Vec<Edge> {
    g.edges()
        .filter(|&e| {
            let h = g.delete_edges(&[e]).expect("edge of g");
            !h.reach(e.u(), &BTreeSet::new()).contains(&e.v())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    fn complete(n: u32) -> Graph {
        let mut edges = vec![];
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    #[test]
    fn vertex_connectivity_examples() {
        assert_eq!(vertex_connectivity(&cycle(6)), 2);
        assert_eq!(vertex_connectivity(&complete(5)), 4);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(vertex_connectivity(&path), 1);
        assert!(!is_two_connected(&complete(2)));
        assert!(is_two_connected(&complete(3)));
        assert_eq!(vertex_connectivity(&Graph::with_vertices(2)), 0);
    }

    #[test]
    fn edge_connectivity_examples() {
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(is_k_edge_connected(&bowtie, 2));
        assert!(!is_k_edge_connected(&bowtie, 3));
        assert!(is_k_edge_connected(&complete(4), 3));
        let dumbbell = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(bridges(&dumbbell), vec![Edge::new(2, 3)]);
        assert!(bridges(&cycle(5)).is_empty());
    }
}
