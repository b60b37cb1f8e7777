//! Undirected simple graphs with stable vertex labels.
//!
//! Editing operations return a new graph and never renumber surviving
//! vertices, so a vertex can be followed through `G`, `G - x`, `G - L`, and so
//! on. Labels are allocated densely at construction time; [`Graph::add_vertex`]
//! always hands out a label above every label seen so far.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Unordered vertex pair, stored with the smaller label first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(self) -> VertexId {
        self.0
    }

    pub fn v(self) -> VertexId {
        self.1
    }

    pub fn endpoints(self) -> [VertexId; 2] {
        [self.0, self.1]
    }

    pub fn contains(self, x: VertexId) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(self, x: VertexId) -> VertexId {
        debug_assert!(self.contains(x));
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }

    /// Common endpoint of two distinct edges, if any.
    pub fn shared(self, other: Edge) -> Option<VertexId> {
        if self == other {
            return None;
        }
        self.endpoints().into_iter().find(|&x| other.contains(x))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// An induced `K_{1,3}`: `center` is adjacent to the three pairwise
/// non-adjacent `leaves`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claw {
    pub center: VertexId,
    pub leaves: [VertexId; 3],
}

impl Claw {
    pub fn vertices(&self) -> [VertexId; 4] {
        [self.center, self.leaves[0], self.leaves[1], self.leaves[2]]
    }
}

#[derive(Clone, Default)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    next_id: u32,
}

/// Graphs compare by vertex set and edges; the label allocator is ignored.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(v={}, e={}; ", self.order(), self.size())?;
        let mut first = true;
        for e in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{e}")?;
        }
        let isolated: Vec<_> = self.vertices().filter(|&x| self.degree(x) == 0).collect();
        if !isolated.is_empty() {
            write!(f, "; isolated {isolated:?}")?;
        }
        write!(f, ")")
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Graph::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Graph on `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(a, b) in edges {
            g.add_edge(VertexId(a), VertexId(b))?;
        }
        Ok(g)
    }

    /// Graph on exactly the given vertex labels plus edges among them.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let mut g = Graph::new();
        for x in vertices {
            g.insert_vertex(x);
        }
        for e in edges {
            g.add_edge(e.u(), e.v())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id);
        self.insert_vertex(id);
        id
    }

    /// Adds a vertex with a caller-chosen label (no-op if present).
    pub fn insert_vertex(&mut self, x: VertexId) {
        self.adj.entry(x).or_default();
        self.next_id = self.next_id.max(x.0 + 1);
    }

    /// Adds edge `ab`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        if a == b {
            return Err(Error::Loop(a));
        }
        for x in [a, b] {
            if !self.adj.contains_key(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        self.adj.get_mut(&a).unwrap().insert(b);
        self.adj.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    pub fn remove_edge(&mut self, e: Edge) -> Result<()> {
        if !self.has_edge(e.u(), e.v()) {
            return Err(Error::UnknownEdge(e));
        }
        self.adj.get_mut(&e.u()).unwrap().remove(&e.v());
        self.adj.get_mut(&e.v()).unwrap().remove(&e.u());
        Ok(())
    }

    pub fn remove_vertex(&mut self, x: VertexId) {
        if let Some(nbrs) = self.adj.remove(&x) {
            for y in nbrs {
                if let Some(s) = self.adj.get_mut(&y) {
                    s.remove(&x);
                }
            }
        }
    }

    /// Number of vertices, `v(G)`.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges, `e(G)`.
    pub fn size(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Label that [`Graph::add_vertex`] would hand out next.
    pub fn next_id(&self) -> VertexId {
        VertexId(self.next_id)
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.adj.contains_key(&x)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&a, ns)| ns.range(a..).map(move |&b| Edge(a, b)))
    }

    /// `N(x, G)`.
    pub fn neighbors(&self, x: VertexId) -> Result<&BTreeSet<VertexId>> {
        self.adj.get(&x).ok_or(Error::UnknownVertex(x))
    }

    /// Neighbors of a vertex known to be present.
    pub(crate) fn nbrs(&self, x: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[&x]
    }

    pub fn degree(&self, x: VertexId) -> usize {
        self.adj.get(&x).map_or(0, BTreeSet::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.values().all(|s| s.len() == d)
    }

    /// `Lv(G)`: vertices of degree one.
    pub fn leaves(&self) -> BTreeSet<VertexId> {
        self.adj
            .iter()
            .filter(|(_, s)| s.len() == 1)
            .map(|(&x, _)| x)
            .collect()
    }

    /// Induced subgraph on `V(G) \ removed`; surviving labels are unchanged.
    pub fn delete_vertices<'a>(&self, removed: impl IntoIterator<Item = &'a VertexId>) -> Graph {
        let mut g = self.clone();
        for &x in removed {
            g.remove_vertex(x);
        }
        g
    }

    pub fn delete_vertex(&self, x: VertexId) -> Graph {
        self.delete_vertices([x].iter())
    }

    /// Same vertex set with the given edges removed. Every edge must exist.
    pub fn delete_edges<'a>(&self, removed: impl IntoIterator<Item = &'a Edge>) -> Result<Graph> {
        let mut g = self.clone();
        for &e in removed {
            g.remove_edge(e)?;
        }
        Ok(g)
    }

    /// Copy with extra vertices/edges; unknown endpoints are created.
    pub fn with_edges<'a>(&self, added: impl IntoIterator<Item = &'a Edge>) -> Result<Graph> {
        let mut g = self.clone();
        for &e in added {
            g.insert_vertex(e.u());
            g.insert_vertex(e.v());
            g.add_edge(e.u(), e.v())?;
        }
        Ok(g)
    }

    /// Induced subgraph on `keep` (vertices absent from `G` are ignored).
    pub fn induced_subgraph<'a>(&self, keep: impl IntoIterator<Item = &'a VertexId>) -> Graph {
        let keep: BTreeSet<VertexId> = keep.into_iter().copied().filter(|x| self.contains(*x)).collect();
        let mut g = Graph { adj: BTreeMap::new(), next_id: self.next_id };
        for &x in &keep {
            let ns = self.adj[&x].iter().copied().filter(|y| keep.contains(y)).collect();
            g.adj.insert(x, ns);
        }
        g
    }

    /// The subgraph `Ẋ` induced by an edge subset: its vertices are the
    /// endpoints of `edges` and its edges are exactly `edges`.
    pub fn edge_subgraph<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> Result<Graph> {
        let mut g = Graph { adj: BTreeMap::new(), next_id: self.next_id };
        for &e in edges {
            if !self.has_edge(e.u(), e.v()) {
                return Err(Error::UnknownEdge(e));
            }
            g.adj.entry(e.u()).or_default().insert(e.v());
            g.adj.entry(e.v()).or_default().insert(e.u());
        }
        Ok(g)
    }

    /// Finds an induced claw, scanning every neighbourhood triple.
    pub fn find_claw(&self) -> Option<Claw> {
        for (&c, ns) in &self.adj {
            if ns.len() < 3 {
                continue;
            }
            let ns: Vec<VertexId> = ns.iter().copied().collect();
            for i in 0..ns.len() {
                for j in i + 1..ns.len() {
                    if self.has_edge(ns[i], ns[j]) {
                        continue;
                    }
                    for k in j + 1..ns.len() {
                        if !self.has_edge(ns[i], ns[k]) && !self.has_edge(ns[j], ns[k]) {
                            return Some(Claw { center: c, leaves: [ns[i], ns[j], ns[k]] });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_claw_free(&self) -> bool {
        self.find_claw().is_none()
    }

    /// Vertex sets of the connected components, ordered by smallest label.
    pub fn connected_components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for x in self.vertices() {
            if seen.contains(&x) {
                continue;
            }
            let comp = self.reach(x, &BTreeSet::new());
            seen.extend(comp.iter().copied());
            comps.push(comp);
        }
        comps
    }

    /// Components as standalone graphs.
    pub fn component_graphs(&self) -> Vec<Graph> {
        self.connected_components()
            .iter()
            .map(|c| self.induced_subgraph(c))
            .collect()
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub(crate) fn reach(&self, start: VertexId, blocked: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[&x] {
                if !blocked.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Connected and non-empty.
    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => false,
            Some(x) => self.reach(x, &BTreeSet::new()).len() == self.order(),
        }
    }

    /// `G - removed` is connected (and non-empty).
    pub(crate) fn connected_without(&self, removed: &BTreeSet<VertexId>) -> bool {
        let Some(start) = self.vertices().find(|x| !removed.contains(x)) else {
            return false;
        };
        let remaining = self.order() - removed.iter().filter(|x| self.contains(**x)).count();
        self.reach(start, removed).len() == remaining
    }

    /// Line graph `L(G)` and the bijection `E(G) -> V(L(G))`. Line-graph
    /// vertices are numbered in the lexicographic order of the edges.
    pub fn line_graph(&self) -> (Graph, BTreeMap<Edge, VertexId>) {
        let edges: Vec<Edge> = self.edges().collect();
        let map: BTreeMap<Edge, VertexId> = edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, VertexId(i as u32)))
            .collect();
        let mut lg = Graph::with_vertices(edges.len());
        for x in self.vertices() {
            let incident: Vec<VertexId> =
                self.adj[&x].iter().map(|&y| map[&Edge::new(x, y)]).collect();
            for i in 0..incident.len() {
                for j in i + 1..incident.len() {
                    lg.add_edge(incident[i], incident[j]).expect("line graph vertices exist");
                }
            }
        }
        (lg, map)
    }

    /// Disjoint union; `other` is shifted above every label of `self`.
    /// Returns the union and the shift applied to `other`.
    pub fn disjoint_union(&self, other: &Graph) -> (Graph, u32) {
        let shift = self.next_id;
        let mut g = self.clone();
        for x in other.vertices() {
            g.insert_vertex(VertexId(x.0 + shift));
        }
        for e in other.edges() {
            g.add_edge(VertexId(e.u().0 + shift), VertexId(e.v().0 + shift))
                .expect("shifted endpoints exist");
        }
        (g, shift)
    }

    /// Copy relabelled to `0..n` in label order, plus the old labels by
    /// new index.
    pub fn compact(&self) -> (Graph, Vec<VertexId>) {
        let order: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, u32> =
            order.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let mut g = Graph::with_vertices(order.len());
        for e in self.edges() {
            g.add_edge(VertexId(index[&e.u()]), VertexId(index[&e.v()]))
                .expect("compacted endpoints exist");
        }
        (g, order)
    }

    /// Checks symmetry and loop-freeness of the adjacency structure.
    pub fn validate(&self) -> Result<()> {
        for (&x, ns) in &self.adj {
            if ns.contains(&x) {
                return Err(Error::Loop(x));
            }
            if x.0 >= self.next_id {
                return Err(Error::invariant(format!("label {x} not below next id")));
            }
            for y in ns {
                match self.adj.get(y) {
                    Some(back) if back.contains(&x) => {}
                    _ => return Err(Error::invariant(format!("asymmetric adjacency {x}->{y}"))),
                }
            }
        }
        Ok(())
    }

    /// Is the graph a single cycle (connected, 2-regular, at least 3 vertices)?
    pub fn is_cycle(&self) -> bool {
        self.order() >= 3 && self.is_regular(2) && self.is_connected()
    }

    /// Is the graph a single path (connected, acyclic, max degree 2)?
    pub fn is_path(&self) -> bool {
        self.is_connected() && self.max_degree() <= 2 && self.size() + 1 == self.order()
    }

    /// Vertex order along a path or cycle graph, starting at the smallest
    /// endpoint (path) or the smallest vertex (cycle).
    pub fn walk_order(&self) -> Option<Vec<VertexId>> {
        if self.is_empty() || self.max_degree() > 2 || !self.is_connected() {
            return None;
        }
        let start = self
            .vertices()
            .find(|&x| self.degree(x) <= 1)
            .or_else(|| self.vertices().next())?;
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = self.adj[&cur].iter().copied().find(|&y| Some(y) != prev && y != start);
            match next {
                Some(y) if !order.contains(&y) => {
                    order.push(y);
                    prev = Some(cur);
                    cur = y;
                }
                _ => break,
            }
        }
        (order.len() == self.order()).then_some(order)
    }
}
