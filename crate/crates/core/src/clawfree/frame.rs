//! Claw-free frames: the frame from Procedure E plus the matching `M` that
//! closes every claw of the frame into a triangle.

use serde::Serialize;

use super::ears::{is_frame, procedure_e, EarAssembly};
use crate::connectivity::is_two_connected;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// Node budget for the matching search.
const MATCHING_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug, Serialize)]
pub struct ClawFreeFrame {
    pub assembly: EarAssembly,
    /// `F = F(G)`.
    #[serde(skip)]
    pub frame: Graph,
    /// `M`, with `F_c = F ∪ M`.
    pub triangle_matching: Vec<Edge>,
    #[serde(skip)]
    pub combined: Graph,
    /// Number of valid matchings seen (the search stops at two).
    pub matchings_found: usize,
}

impl ClawFreeFrame {
    pub fn is_unique(&self) -> bool {
        self.matchings_found == 1
    }
}

/// Minimal 2-connected claw-free spanning subgraph check.
pub fn is_clawfree_frame(g: &Graph, f: &Graph) -> bool {
    if f.vertex_set() != g.vertex_set() || !f.edges().all(|e| g.has_edge(e.u(), e.v())) {
        return false;
    }
    if !is_two_connected(f) || !f.is_claw_free() {
        return false;
    }
    f.edges().all(|e| {
        let h = f.delete_edges(&[e]).expect("edge of f");
        !(is_two_connected(&h) && h.is_claw_free())
    })
}

/// Every degree-3 vertex lies in exactly one triangle, and every triangle
/// vertex has degree 3.
fn triangle_shape_ok(h: &Graph, x: VertexId) -> bool {
    let nb: Vec<VertexId> = h.nbrs(x).iter().copied().collect();
    let mut triangles = 0;
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            if h.has_edge(nb[i], nb[j]) {
                triangles += 1;
                if h.degree(x) != 3 || h.degree(nb[i]) != 3 || h.degree(nb[j]) != 3 {
                    return false;
                }
            }
        }
    }
    h.degree(x) != 3 || triangles == 1
}

fn local_ok(h: &Graph, x: VertexId) -> bool {
    let nb: Vec<VertexId> = h.nbrs(x).iter().copied().collect();
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            for k in j + 1..nb.len() {
                let (a, b, c) = (nb[i], nb[j], nb[k]);
                if !h.has_edge(a, b) && !h.has_edge(a, c) && !h.has_edge(b, c) {
                    return false;
                }
            }
        }
    }
    triangle_shape_ok(h, x)
}

struct MatchingSearch<'a> {
    g: &'a Graph,
    order: Vec<VertexId>,
    eligible: Vec<bool>,
    current: Graph,
    chosen: Vec<Edge>,
    found: Vec<Vec<Edge>>,
    nodes: u64,
}

impl MatchingSearch<'_> {
    fn pos(&self, x: VertexId) -> usize {
        self.order.binary_search(&x).expect("vertex")
    }

    /// Vertices whose closed neighbourhood is decided once positions below
    /// `cursor` are.
    fn settled_ok(&self, cursor: usize) -> bool {
        let x = self.order[cursor - 1];
        let mut check: Vec<VertexId> = vec![x];
        check.extend(self.current.nbrs(x).iter().copied());
        check.iter().all(|&u| {
            let decided = std::iter::once(u)
                .chain(self.current.nbrs(u).iter().copied())
                .all(|w| self.pos(w) < cursor || !self.eligible[self.pos(w)]);
            !decided || local_ok(&self.current, u)
        })
    }

    fn run(&mut self, cursor: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > MATCHING_BUDGET {
            return Err(Error::invariant("claw-free frame matching search exceeded its budget"));
        }
        if self.found.len() >= 2 {
            return Ok(());
        }
        if cursor > 0 && !self.settled_ok(cursor) {
            return Ok(());
        }
        if cursor == self.order.len() {
            let h = &self.current;
            if h.vertices().all(|x| local_ok(h, x)) && is_clawfree_frame(self.g, h) {
                self.found.push(self.chosen.clone());
            }
            return Ok(());
        }
        let x = self.order[cursor];
        let free = self.eligible[cursor] && self.current.degree(x) == 2;
        self.run(cursor + 1)?;
        if free {
            let partners: Vec<VertexId> = self
                .g
                .nbrs(x)
                .iter()
                .copied()
                .filter(|&w| {
                    let p = self.pos(w);
                    p > cursor
                        && self.eligible[p]
                        && self.current.degree(w) == 2
                        && !self.current.has_edge(x, w)
                })
                .collect();
            for w in partners {
                self.current.add_edge(x, w)?;
                self.chosen.push(Edge::new(x, w));
                self.run(cursor + 1)?;
                self.chosen.pop();
                self.current.remove_edge(Edge::new(x, w))?;
            }
        }
        Ok(())
    }
}

/// `F(G)` with its triangle matching, checked against (f1)-(f3).
pub fn clawfree_frame(g: &Graph) -> Result<ClawFreeFrame> {
    if !is_two_connected(g) {
        return Err(Error::pre("claw-free frame needs a 2-connected graph"));
    }
    if !g.is_claw_free() {
        return Err(Error::pre("claw-free frame needs a claw-free graph"));
    }
    if g.is_cycle() {
        return Err(Error::pre("graph is a cycle"));
    }
    let assembly = procedure_e(g, None)?;
    let frame = assembly.frame.clone();
    if frame.max_degree() > 3 || !is_frame(g, &frame) {
        return Err(Error::invariant("(f1): F(G) is not a frame of maximum degree three"));
    }
    let order: Vec<VertexId> = g.vertices().collect();
    let eligible = order.iter().map(|&x| frame.degree(x) == 2).collect();
    let mut search = MatchingSearch {
        g,
        order,
        eligible,
        current: frame.clone(),
        chosen: Vec::new(),
        found: Vec::new(),
        nodes: 0,
    };
    search.run(0)?;
    let found = search.found;
    let Some(m) = found.first().cloned() else {
        return Err(Error::invariant("(f2): no matching M makes F ∪ M a claw-free frame"));
    };
    let combined = frame.with_edges(&m)?;
    if !assembly.ears.is_empty() {
        let a = assembly.last();
        let rest = g.delete_vertices(a);
        let rest_frame = combined.delete_vertices(a);
        if rest.order() >= 3 && !is_clawfree_frame(&rest, &rest_frame) {
            return Err(Error::invariant("(f3): F_c - A is not a claw-free frame of G - A"));
        }
    }
    Ok(ClawFreeFrame {
        assembly,
        frame,
        triangle_matching: m,
        combined,
        matchings_found: found.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prism() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
            .unwrap()
    }

    #[test]
    fn prism_frame() {
        let f = clawfree_frame(&prism()).unwrap();
        assert!(f.is_unique());
        assert!(f.combined.max_degree() <= 3);
        assert!(f.combined.is_claw_free());
        assert!(is_clawfree_frame(&prism(), &f.combined));
    }

    #[test]
    fn cycle_is_rejected() {
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        assert!(matches!(clawfree_frame(&c6), Err(Error::Precondition(_))));
    }
}
