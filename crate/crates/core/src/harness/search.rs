//! Small exhaustive searches used by the theorem checks.

use std::collections::HashSet;

use crate::graph::{Graph, VertexId};
use crate::oracle::Oracle;
use crate::packing::{PackingConstraint, Path3};
use crate::error::{Error, Result};

/// Every 3-vertex path `[a, b, c]` (center `b`, `a < c`).
pub fn paths3(g: &Graph) -> Vec<Path3> {
    let mut out = Vec::new();
    for b in g.vertices() {
        let nb: Vec<VertexId> = g.nbrs(b).iter().copied().collect();
        for i in 0..nb.len() {
            for &c in &nb[i + 1..] {
                out.push([nb[i], b, c]);
            }
        }
    }
    out
}

/// Every path on `k` vertices, listed once (first vertex below last).
pub fn simple_paths(g: &Graph, k: usize) -> Vec<Vec<VertexId>> {
    fn extend(g: &Graph, k: usize, cur: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if cur.len() == k {
            if k == 1 || cur[0] < cur[k - 1] {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().expect("nonempty");
        for &y in g.nbrs(last) {
            if !cur.contains(&y) {
                cur.push(y);
                extend(g, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for x in g.vertices() {
        extend(g, k, &mut vec![x], &mut out);
    }
    out
}

/// Does `g` minus `removed` have a Λ-factor?
pub fn factor_without(o: &Oracle, g: &Graph, removed: &[VertexId]) -> Result<bool> {
    Ok(o.factor(&g.delete_vertices(removed), &PackingConstraint::none())?.is_some())
}

pub fn has_factor(o: &Oracle, g: &Graph, c: &PackingConstraint) -> Result<bool> {
    Ok(o.factor(g, c)?.is_some())
}

/// A Λ-factor of `g` containing every path in `required` and otherwise only
/// paths accepted by `allow`.
pub fn filtered_factor(
    g: &Graph,
    cap: usize,
    required: &[Path3],
    allow: impl Fn(&Path3) -> bool,
) -> Result<Option<Vec<Path3>>> {
    let (h, labels) = g.compact();
    let n = h.order();
    if n > cap.min(64) {
        return Err(Error::OracleCap { order: n, cap: cap.min(64) });
    }
    let index_of = |x: VertexId| labels.iter().position(|&y| y == x);
    let mut taken = 0u64;
    for p in required {
        for &x in p {
            let Some(i) = index_of(x) else { return Err(Error::UnknownVertex(x)) };
            if taken >> i & 1 == 1 {
                return Ok(None);
            }
            taken |= 1 << i;
        }
        if !g.has_edge(p[0], p[1]) || !g.has_edge(p[1], p[2]) {
            return Ok(None);
        }
    }
    let mut by_vertex: Vec<Vec<(u64, [usize; 3])>> = vec![Vec::new(); n];
    for p in paths3(&h) {
        let labelled = p.map(|x| labels[x.index()]);
        if !allow(&labelled) {
            continue;
        }
        let idx = p.map(|x| x.index());
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if mask & taken != 0 {
            continue;
        }
        for &i in &idx {
            by_vertex[i].push((mask, idx));
        }
    }
    fn solve(left: u64, by_vertex: &[Vec<(u64, [usize; 3])>], dead: &mut HashSet<u64>, out: &mut Vec<[usize; 3]>) -> bool {
        if left == 0 {
            return true;
        }
        if !left.count_ones().is_multiple_of(3) || dead.contains(&left) {
            return false;
        }
        let x = left.trailing_zeros() as usize;
        for &(mask, idx) in &by_vertex[x] {
            if mask & left == mask {
                out.push(idx);
                if solve(left & !mask, by_vertex, dead, out) {
                    return true;
                }
                out.pop();
            }
        }
        dead.insert(left);
        false
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    if solve(full & !taken, &by_vertex, &mut HashSet::new(), &mut out) {
        let mut paths = required.to_vec();
        paths.extend(out.into_iter().map(|p| p.map(|i| labels[i])));
        Ok(Some(paths))
    } else {
        Ok(None)
    }
}

/// Maximum number of 3-vertex paths whose union is an induced subgraph:
/// each path induced and no edges between different paths.
pub fn max_union_induced_packing(g: &Graph, cap: usize) -> Result<usize> {
    let (h, _) = g.compact();
    let n = h.order();
    if n > cap.min(64) {
        return Err(Error::OracleCap { order: n, cap: cap.min(64) });
    }
    let adj: Vec<u64> = (0..n)
        .map(|i| h.nbrs(VertexId(i as u32)).iter().fold(0u64, |m, y| m | 1 << y.index()))
        .collect();
    let mut induced: Vec<Vec<(u64, u64)>> = vec![Vec::new(); n];
    for p in paths3(&h) {
        let [a, b, c] = p.map(|x| x.index());
        if adj[a] >> c & 1 == 1 {
            continue;
        }
        let mask = 1u64 << a | 1 << b | 1 << c;
        let closed = mask | adj[a] | adj[b] | adj[c];
        for i in [a, b, c] {
            induced[i].push((mask, closed));
        }
    }
    fn value(s: u64, induced: &[Vec<(u64, u64)>], memo: &mut std::collections::HashMap<u64, usize>) -> usize {
        if s.count_ones() < 3 {
            return 0;
        }
        if let Some(&v) = memo.get(&s) {
            return v;
        }
        let v = s.trailing_zeros() as usize;
        let mut best = value(s & !(1 << v), induced, memo);
        for &(mask, closed) in &induced[v] {
            if mask & s == mask {
                best = best.max(1 + value(s & !closed, induced, memo));
            }
        }
        memo.insert(s, best);
        best
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(value(full, &induced, &mut Default::default()))
}

/// A spanning packing of vertex-disjoint 4-vertex paths, by exhaustive
/// search over bitmasks.
pub fn p4_factor(g: &Graph, cap: usize) -> Result<Option<Vec<[VertexId; 4]>>> {
    let (h, labels) = g.compact();
    let n = h.order();
    if n > cap.min(64) {
        return Err(Error::OracleCap { order: n, cap: cap.min(64) });
    }
    if n % 4 != 0 {
        return Ok(None);
    }
    let paths: Vec<Vec<VertexId>> = simple_paths(&h, 4);
    let mut by_vertex: Vec<Vec<(u64, [usize; 4])>> = vec![Vec::new(); n];
    for p in &paths {
        let idx = [p[0].index(), p[1].index(), p[2].index(), p[3].index()];
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        for &i in &idx {
            by_vertex[i].push((mask, idx));
        }
    }
    fn solve(
        left: u64,
        by_vertex: &[Vec<(u64, [usize; 4])>],
        dead: &mut HashSet<u64>,
        out: &mut Vec<[usize; 4]>,
    ) -> bool {
        if left == 0 {
            return true;
        }
        if dead.contains(&left) {
            return false;
        }
        let x = left.trailing_zeros() as usize;
        for &(mask, idx) in &by_vertex[x] {
            if mask & left == mask {
                out.push(idx);
                if solve(left & !mask, by_vertex, dead, out) {
                    return true;
                }
                out.pop();
            }
        }
        dead.insert(left);
        false
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    if solve(full, &by_vertex, &mut HashSet::new(), &mut out) {
        Ok(Some(out.into_iter().map(|p| p.map(|i| labels[i])).collect()))
    } else {
        Ok(None)
    }
}
