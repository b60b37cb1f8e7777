//! Δ-graphs: cubic graphs in which every vertex lies in exactly one
//! triangle, i.e. cubic multigraphs with every vertex blown up into a
//! triangle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::reduction::pack_components;
use crate::connectivity::is_two_connected;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::packing::{same_path, LambdaPacking, PackingConstraint, Path3};

/// The cubic multigraph a Δ-graph was built from. Nodes are the triangles;
/// links are the edges of the Δ-graph lying in no triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaPreimage {
    pub triangles: Vec<[VertexId; 3]>,
    pub node_of: BTreeMap<VertexId, usize>,
    pub links: Vec<Edge>,
}

impl DeltaPreimage {
    pub fn node_count(&self) -> usize {
        self.triangles.len()
    }

    /// The link at vertex `x` (its only edge outside its triangle).
    pub fn link_at(&self, x: VertexId) -> usize {
        self.links.iter().position(|l| l.contains(x)).expect("every vertex has a link")
    }

    /// Link endpoints as node pairs.
    pub fn link_nodes(&self, l: usize) -> (usize, usize) {
        let e = self.links[l];
        (self.node_of[&e.u()], self.node_of[&e.v()])
    }

    /// Triangle index containing both ends of `e`, if any.
    pub fn triangle_of(&self, e: Edge) -> Option<usize> {
        let a = self.node_of.get(&e.u())?;
        let b = self.node_of.get(&e.v())?;
        (a == b).then_some(*a)
    }

    /// Links at a node, in the order of the triangle's vertices.
    fn node_links(&self, n: usize) -> [usize; 3] {
        self.triangles[n].map(|x| self.link_at(x))
    }
}

/// Recovers the pre-image; fails unless `g` is cubic with every vertex in
/// exactly one triangle.
pub fn delta_preimage(g: &Graph) -> Result<DeltaPreimage> {
    if g.is_empty() || !g.is_regular(3) {
        return Err(Error::pre("a Δ-graph is cubic"));
    }
    let mut node_of = BTreeMap::new();
    let mut triangles = Vec::new();
    for x in g.vertices() {
        let nb: Vec<VertexId> = g.nbrs(x).iter().copied().collect();
        let mut tri = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                if g.has_edge(nb[i], nb[j]) {
                    tri.push((nb[i], nb[j]));
                }
            }
        }
        if tri.len() != 1 {
            return Err(Error::pre(format!("vertex {x} lies in {} triangles, a Δ-graph needs one", tri.len())));
        }
        if node_of.contains_key(&x) {
            continue;
        }
        let (a, b) = tri[0];
        let mut t = [x, a, b];
        t.sort();
        let n = triangles.len();
        for y in t {
            node_of.insert(y, n);
        }
        triangles.push(t);
    }
    let links = g.edges().filter(|e| node_of[&e.u()] != node_of[&e.v()]).collect();
    Ok(DeltaPreimage { triangles, node_of, links })
}

pub fn is_delta_graph(g: &Graph) -> bool {
    delta_preimage(g).is_ok()
}

fn require_two_connected_delta(g: &Graph) -> Result<DeltaPreimage> {
    let pre = delta_preimage(g)?;
    if !is_two_connected(g) {
        return Err(Error::pre("Δ-graph is not 2-connected"));
    }
    Ok(pre)
}

/// Perfect matching of the pre-image (as link indices) containing every
/// link of `forced` and none of `banned`.
fn perfect_matching(pre: &DeltaPreimage, forced: &[usize], banned: &[usize]) -> Option<Vec<usize>> {
    fn rec(pre: &DeltaPreimage, matched: &mut Vec<bool>, chosen: &mut Vec<usize>, banned: &[usize]) -> bool {
        let Some(n) = matched.iter().position(|m| !m) else {
            return true;
        };
        for l in pre.node_links(n) {
            if banned.contains(&l) || chosen.contains(&l) {
                continue;
            }
            let (a, b) = pre.link_nodes(l);
            let other = if a == n { b } else { a };
            if matched[other] {
                continue;
            }
            matched[n] = true;
            matched[other] = true;
            chosen.push(l);
            if rec(pre, matched, chosen, banned) {
                return true;
            }
            chosen.pop();
            matched[n] = false;
            matched[other] = false;
        }
        false
    }
    let mut matched = vec![false; pre.node_count()];
    let mut chosen = Vec::new();
    for &l in forced {
        let (a, b) = pre.link_nodes(l);
        if matched[a] || matched[b] || banned.contains(&l) {
            return None;
        }
        matched[a] = true;
        matched[b] = true;
        chosen.push(l);
    }
    rec(pre, &mut matched, &mut chosen, banned).then_some(chosen)
}

/// Walks a cycle of links through triangles starting at node `start`,
/// entering it by link `enter`. Returns the vertex sequence
/// `entry, middle, exit` per node along the cycle.
fn traverse(pre: &DeltaPreimage, cycle_links: &BTreeSet<usize>, start: usize, enter: usize) -> Vec<VertexId> {
    let mut seq = Vec::new();
    let mut node = start;
    let mut via = enter;
    loop {
        let tri = pre.triangles[node];
        let entry = *tri.iter().find(|&&x| pre.links[via].contains(x)).expect("link ends at node");
        let exit_link = *pre
            .node_links(node)
            .iter()
            .find(|&&l| l != via && cycle_links.contains(&l))
            .expect("cycle passes through node");
        let exit = *tri.iter().find(|&&x| pre.links[exit_link].contains(x)).expect("link ends at node");
        let middle = *tri.iter().find(|&&x| x != entry && x != exit).expect("three vertices");
        seq.extend([entry, middle, exit]);
        let (a, b) = pre.link_nodes(exit_link);
        let next = if a == node { b } else { a };
        via = exit_link;
        node = next;
        if node == start && via == enter {
            break;
        }
    }
    seq
}

/// Splits a Hamiltonian sequence `entry, middle, exit, entry, …` of a cycle
/// into non-triangle paths `middle, exit, next entry`.
fn split_shifted(seq: &[VertexId]) -> Vec<Path3> {
    let n = seq.len();
    (0..n / 3).map(|i| [seq[3 * i + 1], seq[3 * i + 2], seq[(3 * i + 3) % n]]).collect()
}

/// `L = x z z1` oriented so that `x z` lies in a triangle `T = x z s` and
/// `z z1` is a link.
fn orient(pre: &DeltaPreimage, l: Path3) -> Option<(VertexId, VertexId, VertexId)> {
    let [a, c, b] = l;
    if pre.triangle_of(Edge::new(a, c)).is_some() && pre.triangle_of(Edge::new(c, b)).is_none() {
        Some((a, c, b))
    } else if pre.triangle_of(Edge::new(b, c)).is_some() && pre.triangle_of(Edge::new(c, a)).is_none() {
        Some((b, c, a))
    } else {
        None
    }
}

fn check_path(g: &Graph, l: Path3) -> Result<()> {
    for e in [Edge::new(l[0], l[1]), Edge::new(l[1], l[2])] {
        if !g.has_edge(e.u(), e.v()) {
            return Err(Error::UnknownEdge(e));
        }
    }
    if l[0] == l[2] {
        return Err(Error::pre("path repeats a vertex"));
    }
    Ok(())
}

fn triangle_factor(pre: &DeltaPreimage, skip: &BTreeSet<usize>) -> Vec<Path3> {
    (0..pre.node_count())
        .filter(|n| !skip.contains(n))
        .map(|n| pre.triangles[n])
        .collect()
}

fn induces_triangle(g: &Graph, p: &Path3) -> bool {
    g.has_edge(p[0], p[2])
}

/// A Λ-factor of a 2-connected Δ-graph containing the 3-vertex path `L`:
/// all components triangles if `L` induces a triangle, otherwise no
/// component inducing a triangle.
pub fn delta_factor_through_path(g: &Graph, l: Path3) -> Result<LambdaPacking> {
    let pre = require_two_connected_delta(g)?;
    check_path(g, l)?;
    let out = if induces_triangle(g, &l) {
        let n = pre.node_of[&l[0]];
        let mut paths = vec![l];
        paths.extend(triangle_factor(&pre, &[n].into()));
        LambdaPacking::new(paths)
    } else {
        let (x, z, _) = orient(&pre, l).ok_or_else(|| Error::pre("path is neither a triangle nor triangle edge plus link"))?;
        let t = pre.node_of[&z];
        let s = *pre.triangles[t].iter().find(|&&v| v != x && v != z).expect("triangle");
        let (s_bar, z_bar) = (pre.link_at(s), pre.link_at(z));
        let matching = perfect_matching(&pre, &[pre.link_at(x)], &[s_bar, z_bar])
            .ok_or_else(|| Error::invariant("no 2-factor of the pre-image through the path"))?;
        let cycle_links: BTreeSet<usize> = (0..pre.links.len()).filter(|l| !matching.contains(l)).collect();
        let mut paths = Vec::new();
        let mut seen = BTreeSet::new();
        let mut starts = vec![(t, s_bar)];
        for n in 0..pre.node_count() {
            let entry = *pre.node_links(n).iter().find(|l| cycle_links.contains(l)).expect("2-factor");
            starts.push((n, entry));
        }
        for (n, entry) in starts {
            if seen.contains(&n) {
                continue;
            }
            let seq = traverse(&pre, &cycle_links, n, entry);
            for v in &seq {
                seen.insert(pre.node_of[v]);
            }
            paths.extend(split_shifted(&seq));
        }
        LambdaPacking::new(paths)
    };
    out.check_factor(g, &PackingConstraint::containing_path(l))?;
    let want_triangles = induces_triangle(g, &l);
    if out.paths.iter().any(|p| induces_triangle(g, p) != want_triangles) {
        return Err(Error::invariant("factor components do not match the triangle pattern"));
    }
    Ok(out)
}

/// A Λ-factor of a 2-connected Δ-graph containing the non-triangle path `L`
/// and at least one component inducing a triangle.
pub fn delta_factor_through_path_with_triangle(g: &Graph, l: Path3) -> Result<LambdaPacking> {
    let pre = require_two_connected_delta(g)?;
    check_path(g, l)?;
    if induces_triangle(g, &l) {
        return Err(Error::pre("path induces a triangle"));
    }
    let (x, z, _) = orient(&pre, l).ok_or_else(|| Error::pre("path is neither a triangle nor triangle edge plus link"))?;
    let t = pre.node_of[&z];
    let s = *pre.triangles[t].iter().find(|&&v| v != x && v != z).expect("triangle");
    let (s_bar, z_bar) = (pre.link_at(s), pre.link_at(z));
    let from = pre.node_of[&pre.links[s_bar].other(s)];
    let to = pre.node_of[&pre.links[z_bar].other(z)];
    // shortest node path from `from` to `to` avoiding `t`
    let mut prev: BTreeMap<usize, Option<(usize, usize)>> = BTreeMap::new();
    prev.insert(from, None);
    let mut queue = VecDeque::from([from]);
    while let Some(n) = queue.pop_front() {
        if n == to {
            break;
        }
        for link in pre.node_links(n) {
            let (a, b) = pre.link_nodes(link);
            let m = if a == n { b } else { a };
            if m == t || prev.contains_key(&m) {
                continue;
            }
            prev.insert(m, Some((n, link)));
            queue.push_back(m);
        }
    }
    if !prev.contains_key(&to) {
        return Err(Error::invariant("no cycle of the pre-image through the path"));
    }
    let mut cycle_links: BTreeSet<usize> = [s_bar, z_bar].into();
    let mut on_cycle: BTreeSet<usize> = [t, to].into();
    let mut cur = to;
    while let Some(Some((p, link))) = prev.get(&cur) {
        cycle_links.insert(*link);
        on_cycle.insert(*p);
        cur = *p;
    }
    if on_cycle.len() == pre.node_count() {
        return Err(Error::invariant(
            "every cycle of the pre-image through the path is spanning; no triangle component possible",
        ));
    }
    let seq = traverse(&pre, &cycle_links, t, s_bar);
    let mut paths = split_shifted(&seq);
    paths.extend(triangle_factor(&pre, &on_cycle));
    let out = LambdaPacking::new(paths);
    out.check_factor(g, &PackingConstraint::containing_path(l))?;
    if !out.paths.iter().any(|p| induces_triangle(g, p)) {
        return Err(Error::invariant("no triangle component"));
    }
    Ok(out)
}

/// Which of the obstructions (e1)-(e4) a 3-edge set matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThreeEdgeClass {
    Claw,
    Triangle,
    /// Two edges of one triangle plus an edge in no triangle, and `G − E`
    /// disconnected.
    SplitDisconnected,
    /// Two edges of one triangle plus an edge of another triangle,
    /// separated by the two outer edges `d` and `t`.
    SplitSeparated,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeEdgeVerdict {
    pub has_factor: bool,
    pub class: ThreeEdgeClass,
}

/// Decides whether `G − E` has a Λ-factor for a 2-connected Δ-graph and
/// three edges, by the (e1)-(e4) characterization.
pub fn delta_three_edge_test(g: &Graph, edges: &[Edge]) -> Result<ThreeEdgeVerdict> {
    let pre = require_two_connected_delta(g)?;
    let set: BTreeSet<Edge> = edges.iter().copied().collect();
    if edges.len() != 3 || set.len() != 3 {
        return Err(Error::pre("need exactly three distinct edges"));
    }
    for &e in &set {
        if !g.has_edge(e.u(), e.v()) {
            return Err(Error::UnknownEdge(e));
        }
    }
    let dot = Graph::new().with_edges(&set)?;
    let comps: Vec<BTreeSet<VertexId>> = dot.connected_components();
    let class = if comps.len() == 1 {
        if dot.order() == 4 && dot.max_degree() == 3 {
            ThreeEdgeClass::Claw
        } else if dot.order() == 3 {
            ThreeEdgeClass::Triangle
        } else {
            ThreeEdgeClass::None
        }
    } else if comps.len() == 2 {
        let (two, one): (Vec<Edge>, Vec<Edge>) = set.iter().partition(|e| {
            let c = comps.iter().find(|c| c.contains(&e.u())).expect("component");
            c.len() == 3
        });
        let (a, b, c) = (two[0], two[1], one[0]);
        match (pre.triangle_of(a), pre.triangle_of(b)) {
            (Some(ta), Some(tb)) if ta == tb => {
                let t1 = a.shared(b).expect("2-edge component is a path");
                match pre.triangle_of(c) {
                    None => {
                        if g.delete_edges(&set)?.is_connected() {
                            ThreeEdgeClass::None
                        } else {
                            ThreeEdgeClass::SplitDisconnected
                        }
                    }
                    Some(dn) => {
                        let d1 = *pre.triangles[dn].iter().find(|&&v| !c.contains(v)).expect("triangle");
                        let d = pre.links[pre.link_at(d1)];
                        let t = pre.links[pre.link_at(t1)];
                        let h = g.delete_edges(&BTreeSet::from([d, t]))?;
                        let side = h.reach(c.u(), &BTreeSet::new());
                        if !side.contains(&t1) {
                            ThreeEdgeClass::SplitSeparated
                        } else {
                            ThreeEdgeClass::None
                        }
                    }
                }
            }
            _ => ThreeEdgeClass::None,
        }
    } else {
        ThreeEdgeClass::None
    };
    Ok(ThreeEdgeVerdict { has_factor: class == ThreeEdgeClass::None, class })
}

/// A Λ-factor of `G − E` for a connected Δ-graph and two edges.
pub fn delta_two_edge_factor(g: &Graph, edges: &[Edge]) -> Result<LambdaPacking> {
    let pre = delta_preimage(g)?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let set: BTreeSet<Edge> = edges.iter().copied().collect();
    if edges.len() != 2 || set.len() != 2 {
        return Err(Error::pre("need exactly two distinct edges"));
    }
    for &e in &set {
        if !g.has_edge(e.u(), e.v()) {
            return Err(Error::UnknownEdge(e));
        }
    }
    let h = g.delete_edges(&set)?;
    let in_triangles: Vec<usize> = set.iter().filter_map(|&e| pre.triangle_of(e)).collect();
    let out = if in_triangles.len() == 2 && in_triangles[0] == in_triangles[1] {
        let p = pack_components(&h)?;
        if 3 * p.len() != h.order() {
            return Err(Error::invariant("G − E has no Λ-factor"));
        }
        p
    } else {
        let paths = pre
            .triangles
            .iter()
            .map(|&[a, b, c]| {
                let candidates = [[a, b, c], [b, c, a], [c, a, b]];
                *candidates
                    .iter()
                    .find(|p| !set.contains(&Edge::new(p[0], p[1])) && !set.contains(&Edge::new(p[1], p[2])))
                    .expect("at most one removed edge per triangle")
            })
            .collect();
        LambdaPacking::new(paths)
    };
    out.check_factor(g, &PackingConstraint::without_edges(set))?;
    Ok(out)
}

/// `L` is one of the paths of `p` (up to reversal).
pub fn contains_path(p: &LambdaPacking, l: &Path3) -> bool {
    p.paths.iter().any(|q| same_path(q, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::has_lambda_factor;

    /// Δ-graph of K4: triangles {0,1,2}, {3,4,5}, {6,7,8}, {9,10,11}.
    fn delta_k4() -> Graph {
        let mut edges = vec![];
        for t in 0..4u32 {
            let b = 3 * t;
            edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
        }
        edges.extend([(0, 3), (1, 6), (2, 9), (4, 7), (5, 10), (8, 11)]);
        Graph::from_edges(12, &edges).unwrap()
    }

    fn prism() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
            .unwrap()
    }

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn preimage_of_delta_k4() {
        let pre = delta_preimage(&delta_k4()).unwrap();
        assert_eq!(pre.node_count(), 4);
        assert_eq!(pre.links.len(), 6);
        assert!(!is_delta_graph(&Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()));
    }

    #[test]
    fn triangle_path_gives_triangle_factor() {
        let g = delta_k4();
        let p = delta_factor_through_path(&g, [v(0), v(1), v(2)]).unwrap();
        assert!(p.paths.iter().all(|q| g.has_edge(q[0], q[2])));
    }

    #[test]
    fn every_path_of_delta_k4() {
        let g = delta_k4();
        for c in g.vertices() {
            let nb: Vec<VertexId> = g.nbrs(c).iter().copied().collect();
            for i in 0..3 {
                for j in i + 1..3 {
                    let l = [nb[i], c, nb[j]];
                    let p = delta_factor_through_path(&g, l).unwrap();
                    assert!(contains_path(&p, &l));
                    if !g.has_edge(l[0], l[2]) {
                        let q = delta_factor_through_path_with_triangle(&g, l).unwrap();
                        assert!(contains_path(&q, &l));
                    }
                }
            }
        }
    }

    #[test]
    fn prism_has_no_triangle_component_through_a_mixed_path() {
        let g = prism();
        let l = [v(1), v(0), v(3)];
        assert!(delta_factor_through_path(&g, l).is_ok());
        assert!(matches!(delta_factor_through_path_with_triangle(&g, l), Err(Error::Invariant(_))));
    }

    #[test]
    fn three_edge_examples() {
        let g = delta_k4();
        let tri = [Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)];
        assert_eq!(delta_three_edge_test(&g, &tri).unwrap().class, ThreeEdgeClass::Triangle);
        let claw = [Edge::new(0, 1), Edge::new(0, 2), Edge::new(0, 3)];
        assert_eq!(delta_three_edge_test(&g, &claw).unwrap().class, ThreeEdgeClass::Claw);
        let path = [Edge::new(1, 2), Edge::new(0, 2), Edge::new(0, 3)];
        let verdict = delta_three_edge_test(&g, &path).unwrap();
        assert!(verdict.has_factor);
        assert!(has_lambda_factor(&g, &PackingConstraint::without_edges(path)).unwrap().0);
        assert!(delta_three_edge_test(&g, &tri[..2]).is_err());
    }

    #[test]
    fn two_edge_examples() {
        let g = delta_k4();
        let p = delta_two_edge_factor(&g, &[Edge::new(0, 1), Edge::new(1, 2)]).unwrap();
        assert!(p.is_factor_of(&g));
        let q = delta_two_edge_factor(&prism(), &[Edge::new(0, 3), Edge::new(1, 4)]).unwrap();
        assert!(q.is_factor_of(&prism()));
        assert!(delta_two_edge_factor(&g, &[Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)]).is_err());
    }
}
