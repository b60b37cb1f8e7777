//! Packings of a graph read through its line graph: Λ-packings as induced
//! matchings, edge-disjoint Λ-packings as matchings, and edge 3-factors as
//! Λ-factors of `L(G)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::clawfree::{factor_avoiding_edge, factor_containing_edge, pack_chain, pack_clawfree};
use crate::connectivity::{is_k_edge_connected, is_two_connected};
use crate::decomposition::block_decomposition;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::matching::maximum_matching;
use crate::oracle::{is_induced_matching, Oracle};
use crate::packing::{path_edges, LambdaPacking, PackingConstraint, Path3};

/// `L(G)` with the bijection between `E(G)` and `V(L(G))` in both
/// directions.
#[derive(Clone, Debug)]
pub struct LineGraph {
    pub graph: Graph,
    pub vertex_of: BTreeMap<Edge, VertexId>,
    pub edge_of: Vec<Edge>,
}

impl LineGraph {
    pub fn new(g: &Graph) -> Self {
        let (graph, vertex_of) = g.line_graph();
        let mut edge_of = vec![Edge::new(0u32, 1u32); vertex_of.len()];
        for (&e, &x) in &vertex_of {
            edge_of[x.index()] = e;
        }
        LineGraph { graph, vertex_of, edge_of }
    }

    /// The edge of `L(G)` joining the two edges of a 3-vertex path of `G`.
    pub fn edge_of_path(&self, p: &Path3) -> Result<Edge> {
        let [e1, e2] = path_edges(p);
        let a = *self.vertex_of.get(&e1).ok_or(Error::UnknownEdge(e1))?;
        let b = *self.vertex_of.get(&e2).ok_or(Error::UnknownEdge(e2))?;
        Ok(Edge::new(a, b))
    }

    /// The 3-vertex path of `G` formed by two adjacent edges of `G`.
    pub fn path_of_edge(&self, m: Edge) -> Result<Path3> {
        let e1 = *self.edge_of.get(m.u().index()).ok_or(Error::UnknownVertex(m.u()))?;
        let e2 = *self.edge_of.get(m.v().index()).ok_or(Error::UnknownVertex(m.v()))?;
        let mid = e1.shared(e2).ok_or(Error::UnknownEdge(m))?;
        Ok([e1.other(mid), mid, e2.other(mid)])
    }

    /// The edges of `G` behind a set of `L(G)` vertices.
    pub fn edges_of(&self, xs: impl IntoIterator<Item = VertexId>) -> Vec<Edge> {
        let mut out: Vec<Edge> = xs.into_iter().map(|x| self.edge_of[x.index()]).collect();
        out.sort_unstable();
        out
    }
}

/// Pairwise edge-disjoint parts of a host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDisjointPacking {
    pub parts: Vec<Vec<Edge>>,
}

impl EdgeDisjointPacking {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.parts.iter().flatten().copied().collect()
    }

    /// Parts are edge-disjoint edges of `g`, each with `size` edges spanning
    /// a connected subgraph.
    pub fn validate(&self, g: &Graph, size: usize) -> Result<()> {
        let mut seen = BTreeSet::new();
        for part in &self.parts {
            if part.len() != size {
                return Err(Error::invariant(format!("part {part:?} does not have {size} edges")));
            }
            for &e in part {
                if !g.has_edge(e.u(), e.v()) {
                    return Err(Error::UnknownEdge(e));
                }
                if !seen.insert(e) {
                    return Err(Error::invariant(format!("edge {e} in two parts")));
                }
            }
            let h = Graph::from_parts(part.iter().flat_map(|e| e.endpoints()), part.iter().copied())?;
            if !h.is_connected() {
                return Err(Error::invariant(format!("part {part:?} is not connected")));
            }
        }
        Ok(())
    }

    /// Parts cover every edge of `g`.
    pub fn is_factor_of(&self, g: &Graph, size: usize) -> bool {
        self.validate(g, size).is_ok() && self.edges().len() == g.size()
    }

    /// Some part contains both edges of `l`.
    pub fn has_member_containing(&self, l: &Path3) -> bool {
        let [e1, e2] = path_edges(l);
        self.parts.iter().any(|p| p.contains(&e1) && p.contains(&e2))
    }
}

/// `L(P)` as a matching of `L(G)`; it is induced exactly when `P` is a
/// Λ-packing.
pub fn lambda_packing_to_induced_matching(g: &Graph, p: &LambdaPacking) -> Result<Vec<Edge>> {
    p.validate(g)?;
    let lg = LineGraph::new(g);
    let m = p.paths.iter().map(|q| lg.edge_of_path(q)).collect::<Result<Vec<_>>>()?;
    debug_assert!(is_induced_matching(&lg.graph, &m));
    Ok(m)
}

/// Inverse of [`lambda_packing_to_induced_matching`].
pub fn induced_matching_to_lambda_packing(g: &Graph, m: &[Edge]) -> Result<LambdaPacking> {
    let lg = LineGraph::new(g);
    if !is_induced_matching(&lg.graph, m) {
        return Err(Error::pre("edge set is not an induced matching of L(G)"));
    }
    let p = LambdaPacking::new(m.iter().map(|&e| lg.path_of_edge(e)).collect::<Result<Vec<_>>>()?);
    p.validate(g)?;
    Ok(p)
}

/// `λ_e` and a maximum edge-disjoint Λ-packing.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaE {
    pub count: usize,
    pub packing: EdgeDisjointPacking,
    /// `⌊e/2⌋` for each component with an edge.
    pub per_component: Vec<usize>,
    /// The input has more than one component with edges; the count is the
    /// sum over components.
    pub aggregated: bool,
}

/// Pairs the edges of a connected graph into adjacent pairs, leaving at
/// most one edge over: at each vertex, in DFS post-order, the edges handed
/// to it are paired, and an odd one out is paired with the tree edge above.
pub fn pair_adjacent_edges(g: &Graph) -> Result<Vec<[Edge; 2]>> {
    let Some(root) = g.vertices().find(|&x| g.degree(x) > 0) else {
        return Ok(vec![]);
    };
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut depth: BTreeMap<VertexId, usize> = BTreeMap::from([(root, 0)]);
    let mut post = Vec::new();
    let mut stack = vec![(root, g.nbrs(root).iter().copied().collect::<Vec<_>>())];
    while let Some((x, rest)) = stack.last_mut() {
        let x = *x;
        match rest.pop() {
            Some(y) if !depth.contains_key(&y) => {
                parent.insert(y, x);
                depth.insert(y, depth[&x] + 1);
                stack.push((y, g.nbrs(y).iter().copied().collect()));
            }
            Some(_) => {}
            None => {
                post.push(x);
                stack.pop();
            }
        }
    }
    if g.edges().any(|e| !depth.contains_key(&e.u()) || !depth.contains_key(&e.v())) {
        return Err(Error::NotConnected);
    }
    let mut handed: BTreeMap<VertexId, Vec<Edge>> = BTreeMap::new();
    for e in g.edges() {
        let tree = parent.get(&e.u()) == Some(&e.v()) || parent.get(&e.v()) == Some(&e.u());
        if !tree {
            let deeper = if depth[&e.u()] > depth[&e.v()] { e.u() } else { e.v() };
            handed.entry(deeper).or_default().push(e);
        }
    }
    let mut pairs = Vec::new();
    for x in post {
        let mut list = handed.remove(&x).unwrap_or_default();
        let up = parent.get(&x).map(|&p| Edge::new(x, p));
        if list.len() % 2 == 1 {
            if let Some(t) = up {
                list.push(t);
            }
        } else if let Some(t) = up {
            handed.entry(parent[&x]).or_default().push(t);
        }
        for c in list.chunks(2) {
            if let [a, b] = c {
                pairs.push([*a, *b]);
            }
        }
    }
    Ok(pairs)
}

/// `λ_e(G)` by a maximum matching of `L(G)`, component by component.
pub fn lambda_e(g: &Graph) -> Result<LambdaE> {
    let mut parts = Vec::new();
    let mut per_component = Vec::new();
    for c in g.component_graphs().into_iter().filter(|c| c.size() > 0) {
        let lg = LineGraph::new(&c);
        let m = maximum_matching(&lg.graph);
        per_component.push(m.len());
        for e in m {
            parts.push(lg.edges_of([e.u(), e.v()]));
        }
    }
    let packing = EdgeDisjointPacking { parts };
    packing.validate(g, 2)?;
    Ok(LambdaE { count: packing.len(), packing, aggregated: per_component.len() > 1, per_component })
}

/// For connected `g` with `e(g)` odd: a maximum edge-disjoint Λ-packing in
/// which `l` is not a member.
pub fn lambda_e_avoiding(g: &Graph, l: &Path3) -> Result<EdgeDisjointPacking> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.size().is_multiple_of(2) {
        return Err(Error::pre("e(G) is even"));
    }
    let lg = LineGraph::new(g);
    let banned = lg.edge_of_path(l)?;
    let h = lg.graph.delete_edges(&[banned])?;
    let m = maximum_matching(&h);
    if m.len() != g.size() / 2 {
        return Err(Error::invariant("no maximum matching of L(G) avoids the path's edge"));
    }
    let packing = EdgeDisjointPacking { parts: m.iter().map(|e| lg.edges_of([e.u(), e.v()])).collect() };
    packing.validate(g, 2)?;
    Ok(packing)
}

fn parts_from_factor(lg: &LineGraph, p: &LambdaPacking) -> EdgeDisjointPacking {
    EdgeDisjointPacking { parts: p.paths.iter().map(|q| lg.edges_of(q.iter().copied())).collect() }
}

/// The line graph of `g` without its isolated vertices; errors name the
/// failed hypothesis.
fn edge_three_hypotheses(g: &Graph) -> Result<LineGraph> {
    if g.size() == 0 || !g.size().is_multiple_of(3) {
        return Err(Error::pre(format!("e(G) = {} is not a positive multiple of 3", g.size())));
    }
    let lg = LineGraph::new(g);
    if !lg.graph.is_connected() {
        return Err(Error::pre("L(G) is not connected"));
    }
    let eb = block_decomposition(&lg.graph)?.eb();
    if eb > 2 {
        return Err(Error::pre(format!("L(G) has {eb} end-blocks")));
    }
    Ok(lg)
}

/// A partition of `E(g)` into connected 3-edge parts, from a Λ-factor of
/// `L(g)`.
pub fn edge_three_factor(g: &Graph) -> Result<EdgeDisjointPacking> {
    let lg = edge_three_hypotheses(g)?;
    let p = pack_chain(&lg.graph)?;
    let q = parts_from_factor(&lg, &p);
    if !q.is_factor_of(g, 3) {
        return Err(Error::invariant("edge 3-factor does not partition E(G)"));
    }
    Ok(q)
}

/// A maximum edge-disjoint packing of connected 3-edge subgraphs; its size
/// is `λ(L(G))`.
pub fn edge_three_packing(g: &Graph) -> Result<EdgeDisjointPacking> {
    let lg = LineGraph::new(g);
    let mut q = EdgeDisjointPacking::default();
    for c in lg.graph.component_graphs().into_iter().filter(|c| c.order() >= 3) {
        let p = pack_clawfree(&c)?.packing;
        q.parts.extend(parts_from_factor(&lg, &p).parts);
    }
    q.validate(g, 3)?;
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathMode {
    /// No part contains both edges of the path.
    Avoiding,
    /// Some part contains both edges of the path.
    Containing,
}

/// An edge 3-factor with no part, or with some part, containing `l`.
pub fn edge_three_factor_constrained(g: &Graph, l: &Path3, mode: PathMode) -> Result<EdgeDisjointPacking> {
    let lg = edge_three_hypotheses(g)?;
    let link = lg.edge_of_path(l)?;
    let q = match mode {
        PathMode::Avoiding => {
            let core = g.delete_vertices(&g.leaves());
            let core = core.delete_vertices(&core.vertices().filter(|&x| core.degree(x) == 0).collect::<Vec<_>>());
            if !is_k_edge_connected(&core, 2) {
                return Err(Error::pre("G - Lv(G) is not edge 2-connected"));
            }
            if !is_two_connected(&lg.graph) {
                return Err(Error::pre("L(G) is not 2-connected"));
            }
            let p = factor_avoiding_edge(&lg.graph, link)?;
            let q = parts_from_factor(&lg, &p);
            if q.has_member_containing(l) {
                separating_factor(&lg, link)?
            } else {
                q
            }
        }
        PathMode::Containing => {
            if !is_k_edge_connected(g, 3) {
                return Err(Error::pre("G is not edge 3-connected"));
            }
            let p = factor_containing_edge(&lg.graph, link)?;
            parts_from_factor(&lg, &p)
        }
    };
    if !q.is_factor_of(g, 3) || q.has_member_containing(l) != (mode == PathMode::Containing) {
        return Err(Error::invariant("constrained edge 3-factor failed validation"));
    }
    Ok(q)
}

/// Exact fallback: a Λ-factor of `L(G)` with the ends of `link` in
/// different paths. Fixes the path through one end, then asks the oracle.
fn separating_factor(lg: &LineGraph, link: Edge) -> Result<EdgeDisjointPacking> {
    let h = &lg.graph;
    let (a, b) = (link.u(), link.v());
    let oracle = Oracle::default();
    let mut through_a: Vec<Path3> = Vec::new();
    for &x in h.nbrs(a) {
        for &y in h.nbrs(x) {
            if y != a {
                through_a.push([a, x, y]);
            }
        }
        for &y in h.nbrs(a) {
            if y > x {
                through_a.push([x, a, y]);
            }
        }
    }
    for p in through_a.into_iter().filter(|p| !p.contains(&b)) {
        let rest = h.delete_vertices(&p);
        if let Some(f) = oracle.factor(&rest, &PackingConstraint::none())? {
            let all = LambdaPacking::new(vec![p]).union(f);
            return Ok(parts_from_factor(lg, &all));
        }
    }
    Err(Error::invariant("no edge 3-factor separates the edges of the path"))
}
