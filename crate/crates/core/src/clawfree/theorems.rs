//! Constructive Λ-factor results for 2- and 3-connected claw-free graphs.
//!
//! Every function returns a packing that has already been validated against
//! its constraint. Precondition failures are [`Error::Precondition`]; a
//! valid input on which the construction finds nothing is reported as
//! [`Error::Invariant`] (a counterexample candidate).

use std::collections::BTreeSet;

use serde::Serialize;

use super::chain::{ear_recursion, pack_chain};
use super::reduction::pack_components;
use crate::connectivity::{any_subset, is_k_connected, is_two_connected};
use crate::decomposition::is_chain;
use crate::error::{Error, Result};
use crate::graph::{Claw, Edge, Graph, VertexId};
use crate::packing::{LambdaPacking, PackingConstraint, Path3};

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::pre(msg))
    }
}

fn require_clawfree_connectivity(g: &Graph, k: usize) -> Result<()> {
    require(g.is_claw_free(), "graph is not claw-free")?;
    let ok = if k == 2 { is_two_connected(g) } else { is_k_connected(g, k) };
    require(ok, &format!("graph is not {k}-connected"))
}

fn require_residue(g: &Graph, r: usize) -> Result<()> {
    require(g.order() % 3 == r, &format!("v(G) must be ≡ {r} mod 3"))
}

fn require_edge(g: &Graph, e: Edge) -> Result<()> {
    if g.has_edge(e.u(), e.v()) {
        Ok(())
    } else {
        Err(Error::UnknownEdge(e))
    }
}

fn require_vertex(g: &Graph, x: VertexId) -> Result<()> {
    if g.contains(x) {
        Ok(())
    } else {
        Err(Error::UnknownVertex(x))
    }
}

fn checked(g: &Graph, p: LambdaPacking, c: &PackingConstraint) -> Result<LambdaPacking> {
    p.check_factor(g, c)?;
    Ok(p)
}

/// Exact factor of `h` (component-wise), if one exists.
fn full_factor(h: &Graph) -> Result<Option<LambdaPacking>> {
    if !h.order().is_multiple_of(3) {
        return Ok(None);
    }
    let p = if is_chain(h) { pack_chain(h)? } else { pack_components(h)? };
    Ok((3 * p.len() == h.order()).then_some(p))
}

/// A Λ-factor of `G - e` (2-connected claw-free, `v ≡ 0`).
pub fn factor_avoiding_edge(g: &Graph, e: Edge) -> Result<LambdaPacking> {
    require_clawfree_connectivity(g, 2)?;
    require_residue(g, 0)?;
    require_edge(g, e)?;
    let p = ear_recursion(g, Some(e))?;
    checked(g, p, &PackingConstraint::without_edges([e]))
        .map_err(|err| Error::invariant(format!("avoid-e construction: {err}")))
}

/// A `{Λ, P_k}`-factor and a `{Λ, P_{k+3}}`-factor.
#[derive(Clone, Debug, Serialize)]
pub struct PathPlusFactors {
    pub k: usize,
    pub short_path: Vec<VertexId>,
    pub short_factor: LambdaPacking,
    pub long_path: Vec<VertexId>,
    pub long_factor: LambdaPacking,
}

fn is_path_in(g: &Graph, seq: &[VertexId]) -> bool {
    seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && seq.iter().collect::<BTreeSet<_>>().len() == seq.len()
}

/// A Hamiltonian path of `g[set]`, by trying every order.
fn small_hamiltonian_path(g: &Graph, set: &[VertexId]) -> Option<Vec<VertexId>> {
    fn rec(g: &Graph, set: &[VertexId], cur: &mut Vec<VertexId>) -> bool {
        if cur.len() == set.len() {
            return true;
        }
        for &x in set {
            if cur.contains(&x) || cur.last().is_some_and(|&l| !g.has_edge(l, x)) {
                continue;
            }
            cur.push(x);
            if rec(g, set, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    rec(g, set, &mut cur).then_some(cur)
}

/// Simple paths with `k` vertices, lowest start first.
fn for_each_path(g: &Graph, k: usize, f: &mut impl FnMut(&[VertexId]) -> Result<bool>) -> Result<bool> {
    fn rec(g: &Graph, k: usize, cur: &mut Vec<VertexId>, f: &mut impl FnMut(&[VertexId]) -> Result<bool>) -> Result<bool> {
        if cur.len() == k {
            // each path once: first end below last end
            if k == 1 || cur[0] < cur[k - 1] {
                return f(cur);
            }
            return Ok(false);
        }
        let last = *cur.last().expect("non-empty");
        let next: Vec<VertexId> = g.nbrs(last).iter().copied().filter(|w| !cur.contains(w)).collect();
        for w in next {
            cur.push(w);
            if rec(g, k, cur, f)? {
                return Ok(true);
            }
            cur.pop();
        }
        Ok(false)
    }
    for x in g.vertices() {
        if rec(g, k, &mut vec![x], f)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A path `P` on `k` vertices with a factor of `G - P`, by search.
fn search_path_complement(g: &Graph, k: usize) -> Result<Option<(Vec<VertexId>, LambdaPacking)>> {
    let mut found = None;
    for_each_path(g, k, &mut |seq| {
        if let Some(p) = full_factor(&g.delete_vertices(seq))? {
            found = Some((seq.to_vec(), p));
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

/// `{Λ, P_k}`- and `{Λ, P_{k+3}}`-factors of a 2-connected claw-free graph
/// with `v ≡ k ∈ {1, 2}`.
pub fn factor_plus_pk(g: &Graph) -> Result<PathPlusFactors> {
    require_clawfree_connectivity(g, 2)?;
    let k = g.order() % 3;
    require(k != 0, "v(G) must be ≡ 1 or 2 mod 3")?;
    let base = ear_recursion(g, None)?;
    let used = base.vertices();
    let rest: Vec<VertexId> = g.vertices().filter(|x| !used.contains(x)).collect();
    let (short_path, short_factor) = match small_hamiltonian_path(g, &rest) {
        Some(p) if rest.len() == k => (p, base.clone()),
        _ => search_path_complement(g, k)?
            .ok_or_else(|| Error::invariant(format!("no P_{k} with a factorable complement")))?,
    };
    let mut long = None;
    for (i, l) in short_factor.paths.iter().enumerate() {
        let mut set = short_path.clone();
        set.extend_from_slice(l);
        if let Some(p) = small_hamiltonian_path(g, &set) {
            let mut rest = short_factor.clone();
            rest.paths.remove(i);
            long = Some((p, rest));
            break;
        }
    }
    let (long_path, long_factor) = match long {
        Some(x) => x,
        None => search_path_complement(g, k + 3)?
            .ok_or_else(|| Error::invariant(format!("no P_{} with a factorable complement", k + 3)))?,
    };
    for (path, factor) in [(&short_path, &short_factor), (&long_path, &long_factor)] {
        if !is_path_in(g, path) {
            return Err(Error::invariant("returned sequence is not a path"));
        }
        factor.check_factor(g, &PackingConstraint::without_vertices(path.iter().copied()))?;
    }
    Ok(PathPlusFactors { k, short_path, short_factor, long_path, long_factor })
}

/// Claws `Y` (as subgraphs) of `g`: a center and three of its neighbours.
pub fn claws(g: &Graph) -> Vec<Claw> {
    let mut out = Vec::new();
    for c in g.vertices() {
        let nb: Vec<VertexId> = g.nbrs(c).iter().copied().collect();
        any_subset(&nb, 3, &mut |s| {
            out.push(Claw { center: c, leaves: [s[0], s[1], s[2]] });
            false
        });
    }
    out
}

/// Two claws `Y` with a Λ-factor of `G - Y` (2-connected claw-free, not a
/// cycle, `v ≡ 1`).
pub fn factor_minus_claw(g: &Graph) -> Result<Vec<(Claw, LambdaPacking)>> {
    require_clawfree_connectivity(g, 2)?;
    require_residue(g, 1)?;
    require(!g.is_cycle(), "graph is a cycle")?;
    let mut out = Vec::new();
    for y in claws(g) {
        let h = g.delete_vertices(&y.vertices());
        if let Some(p) = full_factor(&h)? {
            let p = checked(g, p, &PackingConstraint::without_vertices(y.vertices()))?;
            out.push((y, p));
            if out.len() == 2 {
                return Ok(out);
            }
        }
    }
    Err(Error::invariant(format!("found {} claws with a factorable complement, expected 2", out.len())))
}

/// A Λ-factor of `G - x` (2-connected claw-free, `v ≡ 1`).
pub fn factor_minus_vertex(g: &Graph, x: VertexId) -> Result<LambdaPacking> {
    require_clawfree_connectivity(g, 2)?;
    require_residue(g, 1)?;
    require_vertex(g, x)?;
    let h = g.delete_vertex(x);
    let p = pack_chain(&h).map_err(|e| Error::invariant(format!("G - x: {e}")))?;
    checked(g, p, &PackingConstraint::without_vertices([x]))
}

/// Two neighbours `b` of `x` with `G - {x, b}` connected and factorable
/// (2-connected claw-free, `v ≡ 2`).
pub fn factor_minus_edge_pair(g: &Graph, x: VertexId) -> Result<Vec<(VertexId, LambdaPacking)>> {
    require_clawfree_connectivity(g, 2)?;
    require_residue(g, 2)?;
    require_vertex(g, x)?;
    let mut out = Vec::new();
    for &b in g.nbrs(x) {
        let h = g.delete_vertices(&[x, b]);
        if !h.is_connected() {
            continue;
        }
        if let Some(p) = full_factor(&h)? {
            out.push((b, checked(g, p, &PackingConstraint::without_vertices([x, b]))?));
            if out.len() == 2 {
                return Ok(out);
            }
        }
    }
    Err(Error::invariant(format!("found {} edges at {x} with a factorable complement, expected 2", out.len())))
}

/// A Λ-factor of `G - {x, y}` for the edge `xy` (3-connected claw-free,
/// `v ≡ 2`).
pub fn factor_minus_adjacent_pair(g: &Graph, e: Edge) -> Result<LambdaPacking> {
    require_clawfree_connectivity(g, 3)?;
    require_residue(g, 2)?;
    require_edge(g, e)?;
    let h = g.delete_vertices(&e.endpoints());
    let p = pack_chain(&h).map_err(|err| Error::invariant(format!("G - {{x, y}}: {err}")))?;
    checked(g, p, &PackingConstraint::without_vertices(e.endpoints()))
}

/// Paths `x y z` centered at `y` with `G - L` connected and factorable.
fn paths_at(g: &Graph, x: VertexId, y: VertexId, limit: usize) -> Result<Vec<(Path3, LambdaPacking)>> {
    let mut out = Vec::new();
    for &z in g.nbrs(y) {
        if z == x {
            continue;
        }
        let l = [x, y, z];
        let h = g.delete_vertices(&l);
        if !h.is_connected() {
            continue;
        }
        if let Some(p) = full_factor(&h)? {
            out.push((l, p));
            if out.len() == limit {
                break;
            }
        }
    }
    Ok(out)
}

/// Two paths `L` centered at `y` through `xy` with `G - L` connected and
/// factorable (3-connected claw-free, `v ≡ 0`).
pub fn factor_minus_path_through_edge(g: &Graph, x: VertexId, y: VertexId) -> Result<Vec<(Path3, LambdaPacking)>> {
    require_clawfree_connectivity(g, 3)?;
    require_residue(g, 0)?;
    require_edge(g, Edge::new(x, y))?;
    let found = paths_at(g, x, y, 2)?;
    if found.len() < 2 {
        return Err(Error::invariant(format!("found {} paths centered at {y} through {x}{y}, expected 2", found.len())));
    }
    found
        .into_iter()
        .map(|(l, p)| Ok((l, checked(g, p, &PackingConstraint::without_vertices(l))?)))
        .collect()
}

/// A Λ-factor of `G` containing `e` (3-connected claw-free, `v ≡ 0`).
pub fn factor_containing_edge(g: &Graph, e: Edge) -> Result<LambdaPacking> {
    require_clawfree_connectivity(g, 3)?;
    require_residue(g, 0)?;
    require_edge(g, e)?;
    for (x, y) in [(e.u(), e.v()), (e.v(), e.u())] {
        if let Some((l, p)) = paths_at(g, x, y, 1)?.pop() {
            let f = LambdaPacking::new(vec![l]).union(p);
            return checked(g, f, &PackingConstraint::containing_edge(e));
        }
    }
    Err(Error::invariant(format!("no Λ-factor through {e}")))
}

/// A Λ-factor of `G - L` for a 3-vertex path `L` (3-connected claw-free,
/// `v ≡ 0`, and the center of `L` of degree 3, or `G` cubic, or `G`
/// 4-connected).
pub fn factor_containing_path(g: &Graph, l: Path3) -> Result<LambdaPacking> {
    require_clawfree_connectivity(g, 3)?;
    require_residue(g, 0)?;
    for w in l.windows(2) {
        require_edge(g, Edge::new(w[0], w[1]))?;
    }
    require(l[0] != l[2], "path repeats a vertex")?;
    let hyp = g.degree(l[1]) == 3 || g.is_regular(3) || is_k_connected(g, 4);
    require(hyp, "center of L must have degree 3, or G cubic, or G 4-connected")?;
    let h = g.delete_vertices(&l);
    if !h.is_connected() {
        return Err(Error::invariant("G - L is not connected"));
    }
    let p = full_factor(&h)?.ok_or_else(|| Error::invariant("G - L has no Λ-factor"))?;
    checked(g, p, &PackingConstraint::without_vertices(l))
}

/// A Λ-factor of `G - x - e` (3-connected claw-free, `v ≡ 1`).
pub fn factor_minus_vertex_and_edge(g: &Graph, x: VertexId, e: Edge) -> Result<LambdaPacking> {
    require_clawfree_connectivity(g, 3)?;
    require_residue(g, 1)?;
    require_vertex(g, x)?;
    require_edge(g, e)?;
    let h = g.delete_vertex(x);
    let p = if h.has_edge(e.u(), e.v()) {
        factor_avoiding_edge(&h, e)?
    } else {
        super::chain::pack_2connected_clawfree(&h)?
    };
    let mut c = PackingConstraint::without_vertices([x]);
    if h.has_edge(e.u(), e.v()) {
        c.forbidden_edges.insert(e);
    }
    checked(g, p, &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::has_lambda_factor;

    fn prism() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
            .unwrap()
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
    fn prism_avoids_every_edge() {
        let g = prism();
        for e in g.edges() {
            let p = factor_avoiding_edge(&g, e).unwrap();
            assert!(!p.uses_edge(e));
            assert!(has_lambda_factor(&g, &PackingConstraint::without_edges([e])).unwrap().0);
        }
    }

    #[test]
    fn complete_graphs() {
        let k7 = complete(7);
        let f = factor_plus_pk(&k7).unwrap();
        assert_eq!((f.short_path.len(), f.long_path.len()), (1, 4));
        let y = factor_minus_claw(&k7).unwrap();
        assert_eq!(y.len(), 2);
        assert_eq!(factor_minus_vertex_and_edge(&k7, VertexId(0), Edge::new(1, 2)).unwrap().len(), 2);
        let k8 = complete(8);
        assert_eq!(factor_plus_pk(&k8).unwrap().long_path.len(), 5);
        assert_eq!(factor_minus_edge_pair(&k8, VertexId(3)).unwrap().len(), 2);
        assert_eq!(factor_minus_adjacent_pair(&k8, Edge::new(0, 1)).unwrap().len(), 2);
        let k6 = complete(6);
        assert!(factor_containing_edge(&k6, Edge::new(2, 4)).unwrap().uses_edge(Edge::new(2, 4)));
        assert_eq!(factor_minus_path_through_edge(&k6, VertexId(0), VertexId(1)).unwrap().len(), 2);
    }

    #[test]
    fn preconditions() {
        let g = prism();
        assert!(matches!(factor_minus_vertex(&g, VertexId(0)), Err(Error::Precondition(_))));
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        assert!(matches!(factor_containing_edge(&c6, Edge::new(0, 1)), Err(Error::Precondition(_))));
        assert!(matches!(factor_minus_claw(&complete(4).delete_vertex(VertexId(0))), Err(Error::Precondition(_))));
    }
}
