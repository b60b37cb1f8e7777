//! Λ-packings (sets of vertex-disjoint 3-vertex paths) and the constraints
//! the factor queries accept.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// A 3-vertex path `a - b - c`; `b` is the center.
pub type Path3 = [VertexId; 3];

pub fn path_edges(p: &Path3) -> [Edge; 2] {
    [Edge::new(p[0], p[1]), Edge::new(p[1], p[2])]
}

/// Same path up to reversal.
pub fn same_path(p: &Path3, q: &Path3) -> bool {
    p[1] == q[1] && ((p[0] == q[0] && p[2] == q[2]) || (p[0] == q[2] && p[2] == q[0]))
}

fn normalize(p: Path3) -> Path3 {
    if p[0] <= p[2] {
        p
    } else {
        [p[2], p[1], p[0]]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaPacking {
    pub paths: Vec<Path3>,
}

impl LambdaPacking {
    pub fn new(paths: Vec<Path3>) -> Self {
        LambdaPacking { paths }
    }

    /// `λ(P)`, the number of paths.
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.paths.iter().flatten().copied().collect()
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.paths.iter().flat_map(path_edges).collect()
    }

    pub fn extend(&mut self, other: LambdaPacking) {
        self.paths.extend(other.paths);
    }

    pub fn union(mut self, other: LambdaPacking) -> Self {
        self.extend(other);
        self
    }

    /// Paths with endpoints ordered and the list sorted; for comparisons.
    pub fn canonical(&self) -> Self {
        let mut paths: Vec<Path3> = self.paths.iter().copied().map(normalize).collect();
        paths.sort();
        LambdaPacking { paths }
    }

    pub fn contains_path(&self, p: &Path3) -> bool {
        self.paths.iter().any(|q| same_path(p, q))
    }

    pub fn uses_edge(&self, e: Edge) -> bool {
        self.paths.iter().any(|p| path_edges(p).contains(&e))
    }

    /// Checks that every path is a path of `g` and the paths are disjoint.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for p in &self.paths {
            for &x in p {
                if !g.contains(x) {
                    return Err(Error::UnknownVertex(x));
                }
                if !seen.insert(x) {
                    return Err(Error::invariant(format!("vertex {x} used twice in packing")));
                }
            }
            for e in path_edges(p) {
                if !g.has_edge(e.u(), e.v()) {
                    return Err(Error::UnknownEdge(e));
                }
            }
        }
        Ok(())
    }

    /// Valid and spanning.
    pub fn is_factor_of(&self, g: &Graph) -> bool {
        self.validate(g).is_ok() && 3 * self.len() == g.order()
    }

    /// Validates against `g` and the constraint, and (for factor queries)
    /// checks that the packing spans every non-forbidden vertex.
    pub fn check_factor(&self, g: &Graph, c: &PackingConstraint) -> Result<()> {
        self.validate(g)?;
        let verts = self.vertices();
        for x in &c.forbidden_vertices {
            if verts.contains(x) {
                return Err(Error::invariant(format!("factor uses forbidden vertex {x}")));
            }
        }
        for e in self.edges() {
            if c.forbidden_edges.contains(&e) {
                return Err(Error::invariant(format!("factor uses forbidden edge {e}")));
            }
        }
        if let Some(p) = &c.required_path {
            if !self.contains_path(p) {
                return Err(Error::invariant("factor misses the required path"));
            }
        }
        if let Some(e) = c.required_edge {
            if !self.uses_edge(e) {
                return Err(Error::invariant(format!("factor misses the required edge {e}")));
            }
        }
        let want = g.order() - c.forbidden_vertices.iter().filter(|x| g.contains(**x)).count();
        if verts.len() != want {
            return Err(Error::invariant(format!(
                "factor covers {} of {want} vertices",
                verts.len()
            )));
        }
        Ok(())
    }
}

/// Restrictions for Λ-factor queries. All fields default to "no constraint".
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingConstraint {
    pub forbidden_vertices: BTreeSet<VertexId>,
    pub forbidden_edges: BTreeSet<Edge>,
    pub required_path: Option<Path3>,
    pub required_edge: Option<Edge>,
}

impl PackingConstraint {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn without_vertices(vs: impl IntoIterator<Item = VertexId>) -> Self {
        PackingConstraint { forbidden_vertices: vs.into_iter().collect(), ..Self::default() }
    }

    pub fn without_edges(es: impl IntoIterator<Item = Edge>) -> Self {
        PackingConstraint { forbidden_edges: es.into_iter().collect(), ..Self::default() }
    }

    pub fn containing_edge(e: Edge) -> Self {
        PackingConstraint { required_edge: Some(e), ..Self::default() }
    }

    pub fn containing_path(p: Path3) -> Self {
        PackingConstraint { required_path: Some(p), ..Self::default() }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &x in &self.forbidden_vertices {
            if !g.contains(x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        for &e in &self.forbidden_edges {
            if !g.has_edge(e.u(), e.v()) {
                return Err(Error::UnknownEdge(e));
            }
        }
        if let Some(p) = &self.required_path {
            for e in path_edges(p) {
                if !g.has_edge(e.u(), e.v()) {
                    return Err(Error::UnknownEdge(e));
                }
                if self.forbidden_edges.contains(&e) {
                    return Err(Error::pre(format!("required path uses forbidden edge {e}")));
                }
            }
            if p[0] == p[2] {
                return Err(Error::pre("required path repeats a vertex"));
            }
            if p.iter().any(|x| self.forbidden_vertices.contains(x)) {
                return Err(Error::pre("required path uses a forbidden vertex"));
            }
        }
        if let Some(e) = self.required_edge {
            if !g.has_edge(e.u(), e.v()) {
                return Err(Error::UnknownEdge(e));
            }
            if self.forbidden_edges.contains(&e)
                || e.endpoints().iter().any(|x| self.forbidden_vertices.contains(x))
            {
                return Err(Error::pre("required edge is forbidden"));
            }
        }
        Ok(())
    }
}

/// Maximum packing of a path or cycle graph: consecutive triples along the
/// walk order.
pub fn pack_path_or_cycle(g: &Graph) -> Result<LambdaPacking> {
    let order = g
        .walk_order()
        .ok_or_else(|| Error::pre("graph is not a path or a cycle"))?;
    Ok(pack_sequence(&order))
}

/// Consecutive triples of a vertex sequence that is a walk in the host.
pub(crate) fn pack_sequence(seq: &[VertexId]) -> LambdaPacking {
    LambdaPacking::new(seq.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn validation_rejects_overlap_and_non_edges() {
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let ok = LambdaPacking::new(vec![[v(0), v(1), v(2)], [v(3), v(4), v(5)]]);
        assert!(ok.is_factor_of(&c6));
        let overlap = LambdaPacking::new(vec![[v(0), v(1), v(2)], [v(2), v(3), v(4)]]);
        assert!(overlap.validate(&c6).is_err());
        let chord = LambdaPacking::new(vec![[v(0), v(2), v(3)]]);
        assert!(chord.validate(&c6).is_err());
    }

    #[test]
    fn constraint_checks() {
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let p = LambdaPacking::new(vec![[v(0), v(1), v(2)], [v(3), v(4), v(5)]]);
        assert!(p.check_factor(&c6, &PackingConstraint::without_edges([Edge::new(2, 3)])).is_ok());
        assert!(p.check_factor(&c6, &PackingConstraint::without_edges([Edge::new(1, 2)])).is_err());
        assert!(p.check_factor(&c6, &PackingConstraint::containing_edge(Edge::new(4, 5))).is_ok());
        assert!(p.check_factor(&c6, &PackingConstraint::containing_path([v(2), v(1), v(0)])).is_ok());
        let bad = PackingConstraint {
            required_edge: Some(Edge::new(0, 1)),
            forbidden_edges: [Edge::new(0, 1)].into(),
            ..Default::default()
        };
        assert!(bad.validate(&c6).is_err());
    }

    #[test]
    fn path_and_cycle_packing() {
        let p7 = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        let p = pack_path_or_cycle(&p7).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.validate(&p7).is_ok());
    }
}
