//! Packing 2-connected claw-free graphs through their ear assemblies, and
//! claw-free chains block by block.

use std::collections::BTreeSet;

use super::ears::procedure_e;
use super::reduction::pack_components;
use crate::connectivity::is_two_connected;
use crate::decomposition::{block_decomposition, is_chain, BlockKind};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::packing::{pack_sequence, LambdaPacking, Path3};

/// `G - P` is acceptable to continue the ear recursion on.
fn residual_ok(h: &Graph) -> bool {
    match h.order() {
        0 | 1 => true,
        2 => h.size() == 1,
        _ => is_two_connected(h),
    }
}

/// All maximum packings of a path given as a vertex sequence, those
/// avoiding both ends first.
fn path_packings(seq: &[VertexId]) -> Vec<LambdaPacking> {
    fn rec(seq: &[VertexId], i: usize, gaps: usize, cur: &mut Vec<Path3>, out: &mut Vec<Vec<Path3>>) {
        if seq.len() - i < 3 {
            out.push(cur.clone());
            return;
        }
        cur.push([seq[i], seq[i + 1], seq[i + 2]]);
        rec(seq, i + 3, gaps, cur, out);
        cur.pop();
        if gaps > 0 {
            rec(seq, i + 1, gaps - 1, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(seq, 0, seq.len() % 3, &mut Vec::new(), &mut out);
    let want = seq.len() / 3;
    let ends = [seq[0], seq[seq.len() - 1]];
    let mut packs: Vec<LambdaPacking> = out
        .into_iter()
        .filter(|p| p.len() == want)
        .map(LambdaPacking::new)
        .collect();
    packs.sort_by_key(|p| p.paths.iter().flatten().filter(|x| ends.contains(x)).count());
    packs
}

/// A maximum packing `P` of the last ear with `h - P` still 2-connected.
fn pack_last_ear(h: &Graph, ear: &[VertexId], avoid: Option<Edge>) -> Result<LambdaPacking> {
    for p in path_packings(ear) {
        if avoid.is_some_and(|e| p.uses_edge(e)) {
            continue;
        }
        if residual_ok(&h.delete_vertices(&p.vertices())) {
            return Ok(p);
        }
    }
    Err(Error::invariant("(f4): no maximum packing of the last ear leaves a 2-connected graph"))
}

/// Consecutive triples of a cyclic order, starting at `start`.
fn pack_cycle_from(cycle: &[VertexId], start: usize) -> LambdaPacking {
    let n = cycle.len();
    let rotated: Vec<VertexId> = (0..n).map(|i| cycle[(start + i) % n]).collect();
    pack_sequence(&rotated)
}

fn check_two_connected_clawfree(g: &Graph) -> Result<()> {
    if !is_two_connected(g) {
        return Err(Error::pre("graph is not 2-connected"));
    }
    if !g.is_claw_free() {
        return Err(Error::pre("graph is not claw-free"));
    }
    Ok(())
}

pub(crate) fn certify(g: &Graph, p: LambdaPacking, want: usize, what: &str) -> Result<LambdaPacking> {
    p.validate(g)?;
    if p.len() < want {
        return Err(Error::invariant(format!("{what}: packed {} paths, expected {want}", p.len())));
    }
    Ok(p)
}

/// Ear recursion; with `avoid`, Procedure E' anchored at the edge while the
/// edge survives, and no returned path uses it.
pub(crate) fn ear_recursion(g: &Graph, avoid: Option<Edge>) -> Result<LambdaPacking> {
    let mut h = g.clone();
    let mut out = LambdaPacking::default();
    while h.order() > 2 {
        let anchor = avoid.filter(|e| h.has_edge(e.u(), e.v()));
        let a = procedure_e(&h, anchor)?;
        if a.r() == 0 {
            let cycle = &a.base_cycle;
            let n = cycle.len();
            let start = match anchor {
                Some(e) => (0..n)
                    .find(|&i| Edge::new(cycle[i], cycle[(i + 1) % n]) == e)
                    .map_or(0, |i| (i + 1) % n),
                None => 0,
            };
            out.extend(pack_cycle_from(cycle, start));
            break;
        }
        let p = pack_last_ear(&h, a.last(), anchor)?;
        h = h.delete_vertices(&p.vertices());
        out.extend(p);
    }
    Ok(out)
}

/// Maximum packing (`⌊v/3⌋` paths) of a 2-connected claw-free graph.
pub fn pack_2connected_clawfree(g: &Graph) -> Result<LambdaPacking> {
    check_two_connected_clawfree(g)?;
    let p = ear_recursion(g, None)?;
    certify(g, p, g.order() / 3, "2-connected claw-free packing")
}

/// Maximum packing (`⌊v/3⌋` paths) of a connected claw-free graph with at
/// most two end-blocks.
pub fn pack_chain(g: &Graph) -> Result<LambdaPacking> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !g.is_claw_free() {
        return Err(Error::pre("graph is not claw-free"));
    }
    if g.order() >= 2 {
        let eb = block_decomposition(g)?.eb();
        if eb > 2 {
            return Err(Error::NotAChain(eb));
        }
    }
    let p = chain_rec(g)?;
    certify(g, p, g.order() / 3, "chain packing")
}

fn chain_rec(g: &Graph) -> Result<LambdaPacking> {
    let v = g.order();
    if v < 3 {
        return Ok(LambdaPacking::default());
    }
    if is_two_connected(g) {
        return ear_recursion(g, None);
    }
    if g.is_path() {
        return Ok(pack_sequence(&g.walk_order().expect("path")));
    }
    let d = block_decomposition(g)?;
    let two_connected_end = d
        .end_blocks
        .iter()
        .map(|&i| &d.blocks[i])
        .filter(|b| b.kind == BlockKind::TwoConnected)
        .min_by_key(|b| b.vertices.iter().next().copied());
    if let Some(block) = two_connected_end {
        let a = &block.vertices;
        let x = *block.boundary.iter().next().expect("end-block of a separable graph");
        return match a.len() % 3 {
            0 => {
                let pa = ear_recursion(&g.induced_subgraph(a), None)?;
                Ok(pa.union(chain_rec(&g.delete_vertices(a))?))
            }
            1 => {
                let inner: BTreeSet<VertexId> = a.iter().copied().filter(|&y| y != x).collect();
                let pa = ear_recursion(&g.induced_subgraph(&inner), None)?;
                Ok(pa.union(chain_rec(&g.delete_vertices(&inner))?))
            }
            _ => {
                let ys: Vec<VertexId> = g.nbrs(x).iter().copied().filter(|y| a.contains(y)).collect();
                let pa = end_block_minus_edge(g, a, x, &ys)?;
                let rest = chain_rec(&g.delete_vertices(&pa.vertices()))?;
                Ok(pa.union(rest))
            }
        };
    }
    if !v.is_multiple_of(3) {
        let leaf = *g.leaves().iter().next().expect("chain with match end-blocks has a leaf");
        return chain_rec(&g.delete_vertex(leaf));
    }
    // both end-blocks are matches and v ≡ 0: peel the leading path
    let p0 = *g.leaves().iter().next().expect("leaf");
    let mut q = vec![p0];
    let mut prev = None;
    let mut cur = p0;
    while g.degree(cur) <= 2 {
        let next = g.nbrs(cur).iter().copied().find(|&w| Some(w) != prev);
        match next {
            Some(w) => {
                prev = Some(cur);
                cur = w;
                q.push(w);
            }
            None => break,
        }
    }
    let take = match q.len() % 3 {
        0 => q.len(),
        1 => q.len() - 1,
        _ if q.len() >= 5 => q.len() - 2,
        _ => 0,
    };
    if take > 0 {
        let pq = pack_sequence(&q[..take]);
        return Ok(pq.union(chain_rec(&g.delete_vertices(&q[..take]))?));
    }
    let x = q[1];
    let want = v / 3;
    for &w in g.nbrs(x) {
        if w == p0 {
            continue;
        }
        let rest = pack_components(&g.delete_vertices(&[p0, x, w]))?;
        if rest.len() + 1 == want {
            return Ok(LambdaPacking::new(vec![[p0, x, w]]).union(rest));
        }
    }
    Err(Error::invariant("chain packing: no path at the pendant edge reaches ⌊v/3⌋"))
}

/// For an end-block `A` with `v(A) ≡ 2` and cut vertex `x`: a factor of
/// `A - {x, y}` for some neighbour `y` of `x` in `A`.
fn end_block_minus_edge(g: &Graph, a: &BTreeSet<VertexId>, x: VertexId, ys: &[VertexId]) -> Result<LambdaPacking> {
    let want = (a.len() - 2) / 3;
    let rest_of = |y: VertexId| {
        let keep: BTreeSet<VertexId> = a.iter().copied().filter(|&z| z != x && z != y).collect();
        g.induced_subgraph(&keep)
    };
    for &y in ys {
        let h = rest_of(y);
        if is_chain(&h) {
            if let Ok(p) = chain_rec(&h) {
                if p.len() == want {
                    return Ok(p);
                }
            }
        }
    }
    for &y in ys {
        let p = pack_components(&rest_of(y))?;
        if p.len() == want {
            return Ok(p);
        }
    }
    Err(Error::invariant("chain packing: no edge at the cut vertex leaves a factorable end-block"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::lambda_exact;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    #[test]
    fn path_packings_order() {
        let seq: Vec<VertexId> = (0..5).map(VertexId).collect();
        let ps = path_packings(&seq);
        assert_eq!(ps.len(), 3);
        assert_eq!(ps[0].paths, vec![[VertexId(1), VertexId(2), VertexId(3)]]);
    }

    #[test]
    fn spec_examples() {
        assert_eq!(pack_2connected_clawfree(&cycle(9)).unwrap().len(), 3);
        let prism =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
                .unwrap();
        assert!(pack_2connected_clawfree(&prism).unwrap().is_factor_of(&prism));
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(pack_2connected_clawfree(&k4).unwrap().len(), 1);

        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(pack_chain(&bowtie).unwrap().len(), 1);
        let p6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(pack_chain(&p6).unwrap().len(), 2);
        let tail = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(pack_chain(&tail).unwrap().len(), 2);
        assert_eq!(lambda_exact(&tail).unwrap().0, 2);
    }

    #[test]
    fn net_is_not_a_chain() {
        let net = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(pack_chain(&net), Err(Error::NotAChain(3)));
    }
}
