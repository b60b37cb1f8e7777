//! Exact exponential solvers over vertex bitmasks.
//!
//! These are the ground truth that the polynomial constructions are checked
//! against. Every solver refuses graphs above its vertex cap instead of
//! degrading.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::packing::{LambdaPacking, PackingConstraint, Path3};

pub const DEFAULT_CAP: usize = 24;
pub const DEFAULT_DOMINATION_CAP: usize = 30;
pub const DEFAULT_MEMO_CAP: usize = 1 << 24;

/// Graph relabelled to `0..n` with adjacency bitmasks.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub labels: Vec<VertexId>,
    pub adj: Vec<u64>,
}

impl Dense {
    pub fn new(g: &Graph, cap: usize) -> Result<Self> {
        let cap = cap.min(64);
        if g.order() > cap {
            return Err(Error::OracleCap { order: g.order(), cap });
        }
        let labels: Vec<VertexId> = g.vertices().collect();
        let adj = labels
            .iter()
            .map(|&x| {
                g.nbrs(x)
                    .iter()
                    .map(|y| 1u64 << labels.binary_search(y).expect("neighbour in graph"))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        Ok(Dense { labels, adj })
    }

    pub fn full(&self) -> u64 {
        mask_below(self.labels.len())
    }

    pub fn bit(&self, x: VertexId) -> Option<u64> {
        self.labels.binary_search(&x).ok().map(|i| 1u64 << i)
    }

    fn remove_edge(&mut self, e: Edge) {
        if let (Ok(a), Ok(b)) = (self.labels.binary_search(&e.u()), self.labels.binary_search(&e.v())) {
            self.adj[a] &= !(1 << b);
            self.adj[b] &= !(1 << a);
        }
    }

    /// Component of `s` containing vertex `v` (which must be in `s`).
    pub fn component(&self, v: usize, s: u64) -> u64 {
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for i in bits(frontier) {
                next |= self.adj[i];
            }
            next &= s & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    fn path(&self, p: [usize; 3]) -> Path3 {
        [self.labels[p[0]], self.labels[p[1]], self.labels[p[2]]]
    }
}

pub(crate) fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices of set bits, ascending.
pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Paths of the remaining graph `s` that contain its lowest vertex `v`,
/// with `v` as an end first and then as the center.
fn paths_at(d: &Dense, v: usize, s: u64, induced: bool) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    let nv = d.adj[v] & s;
    for a in bits(nv) {
        for b in bits(d.adj[a] & s & !(1 << v)) {
            if induced && d.adj[v] & (1 << b) != 0 {
                continue;
            }
            out.push([v, a, b]);
        }
    }
    for a in bits(nv) {
        for b in bits(nv & !mask_below(a + 1)) {
            if induced && d.adj[a] & (1 << b) != 0 {
                continue;
            }
            out.push([a, v, b]);
        }
    }
    out
}

fn path_mask(p: [usize; 3]) -> u64 {
    (1 << p[0]) | (1 << p[1]) | (1 << p[2])
}

struct PackSolver<'a> {
    d: &'a Dense,
    induced: bool,
    memo: HashMap<u64, u8>,
    memo_cap: usize,
}

impl PackSolver<'_> {
    fn value(&mut self, s: u64) -> u8 {
        if s.count_ones() < 3 {
            return 0;
        }
        if let Some(&v) = self.memo.get(&s) {
            return v;
        }
        let v = s.trailing_zeros() as usize;
        let comp = self.d.component(v, s);
        let res = if comp != s {
            self.value(comp) + self.value(s & !comp)
        } else {
            let bound = (s.count_ones() / 3) as u8;
            let mut best = self.value(s & !(1 << v));
            if best < bound {
                for p in paths_at(self.d, v, s, self.induced) {
                    let got = 1 + self.value(s & !path_mask(p));
                    if got > best {
                        best = got;
                        if best == bound {
                            break;
                        }
                    }
                }
            }
            best
        };
        if self.memo.len() < self.memo_cap {
            self.memo.insert(s, res);
        }
        res
    }

    fn witness(&mut self, s: u64, out: &mut Vec<[usize; 3]>) {
        let target = self.value(s);
        if target == 0 {
            return;
        }
        let v = s.trailing_zeros() as usize;
        let comp = self.d.component(v, s);
        if comp != s {
            self.witness(comp, out);
            self.witness(s & !comp, out);
            return;
        }
        if self.value(s & !(1 << v)) == target {
            self.witness(s & !(1 << v), out);
            return;
        }
        for p in paths_at(self.d, v, s, self.induced) {
            if 1 + self.value(s & !path_mask(p)) == target {
                out.push(p);
                self.witness(s & !path_mask(p), out);
                return;
            }
        }
        unreachable!("memoised optimum has a realising branch");
    }
}

struct FactorSolver<'a> {
    d: &'a Dense,
    memo: HashMap<u64, bool>,
    memo_cap: usize,
}

impl FactorSolver<'_> {
    fn solvable(&mut self, s: u64) -> bool {
        if s == 0 {
            return true;
        }
        if !s.count_ones().is_multiple_of(3) {
            return false;
        }
        if let Some(&r) = self.memo.get(&s) {
            return r;
        }
        let v = s.trailing_zeros() as usize;
        let comp = self.d.component(v, s);
        let res = if comp != s {
            self.solvable(comp) && self.solvable(s & !comp)
        } else {
            paths_at(self.d, v, s, false)
                .into_iter()
                .any(|p| self.solvable(s & !path_mask(p)))
        };
        if self.memo.len() < self.memo_cap {
            self.memo.insert(s, res);
        }
        res
    }

    fn witness(&mut self, s: u64, out: &mut Vec<[usize; 3]>) {
        if s == 0 {
            return;
        }
        let v = s.trailing_zeros() as usize;
        let comp = self.d.component(v, s);
        if comp != s {
            self.witness(comp, out);
            self.witness(s & !comp, out);
            return;
        }
        for p in paths_at(self.d, v, s, false) {
            if self.solvable(s & !path_mask(p)) {
                out.push(p);
                self.witness(s & !path_mask(p), out);
                return;
            }
        }
        unreachable!("witness requested for a solvable set");
    }
}

/// Exact solvers with configurable caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    /// Largest order accepted by the Λ-packing, factor, induced and
    /// matching solvers.
    pub cap: usize,
    /// Largest order accepted by the domination solvers.
    pub domination_cap: usize,
    /// Memo entries kept per call; further states are recomputed.
    pub memo_cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP, domination_cap: DEFAULT_DOMINATION_CAP, memo_cap: DEFAULT_MEMO_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap, ..Oracle::default() }
    }

    fn pack(&self, g: &Graph, induced: bool) -> Result<(usize, LambdaPacking)> {
        let d = Dense::new(g, self.cap)?;
        let mut s = PackSolver { d: &d, induced, memo: HashMap::new(), memo_cap: self.memo_cap };
        let full = d.full();
        let value = s.value(full) as usize;
        let mut paths = Vec::new();
        s.witness(full, &mut paths);
        Ok((value, LambdaPacking::new(paths.into_iter().map(|p| d.path(p)).collect())))
    }

    /// `λ(G)` and a maximum packing.
    pub fn lambda(&self, g: &Graph) -> Result<(usize, LambdaPacking)> {
        self.pack(g, false)
    }

    /// Maximum number of disjoint paths each inducing a 3-vertex path.
    pub fn lambda_induced(&self, g: &Graph) -> Result<(usize, LambdaPacking)> {
        self.pack(g, true)
    }

    /// A Λ-factor honouring `c`, if one exists. "Factor" means spanning all
    /// vertices that are not forbidden.
    pub fn factor(&self, g: &Graph, c: &PackingConstraint) -> Result<Option<LambdaPacking>> {
        c.validate(g)?;
        let mut d = Dense::new(g, self.cap)?;
        for &e in &c.forbidden_edges {
            d.remove_edge(e);
        }
        let mut s = d.full();
        for &x in &c.forbidden_vertices {
            s &= !d.bit(x).expect("validated");
        }
        if s.count_ones() % 3 != 0 {
            return Ok(None);
        }
        let index = |x: VertexId| d.labels.binary_search(&x).expect("validated");
        let mut candidates: Vec<[usize; 3]> = Vec::new();
        if let Some(p) = c.required_path {
            candidates.push([index(p[0]), index(p[1]), index(p[2])]);
        } else if let Some(e) = c.required_edge {
            let (x, y) = (index(e.u()), index(e.v()));
            for (a, b) in [(x, y), (y, x)] {
                for z in bits(d.adj[a] & s & !(1 << b)) {
                    candidates.push([z, a, b]);
                }
            }
        }
        let mut solver = FactorSolver { d: &d, memo: HashMap::new(), memo_cap: self.memo_cap };
        let mut out = Vec::new();
        if c.required_path.is_none() && c.required_edge.is_none() {
            if !solver.solvable(s) {
                return Ok(None);
            }
            solver.witness(s, &mut out);
        } else {
            let Some(&p) = candidates
                .iter()
                .find(|&&p| path_mask(p) & s == path_mask(p) && solver.solvable(s & !path_mask(p)))
            else {
                return Ok(None);
            };
            out.push(p);
            solver.witness(s & !path_mask(p), &mut out);
        }
        let packing = LambdaPacking::new(out.into_iter().map(|p| d.path(p)).collect());
        debug_assert!(packing.check_factor(g, c).is_ok());
        Ok(Some(packing))
    }

    /// Maximum induced matching: edges pairwise at distance at least two.
    pub fn induced_matching(&self, g: &Graph) -> Result<(usize, Vec<Edge>)> {
        let d = Dense::new(g, self.cap)?;
        let closed: Vec<u64> = (0..d.labels.len()).map(|i| d.adj[i] | (1 << i)).collect();
        let mut memo: HashMap<u64, u8> = HashMap::new();

        fn value(d: &Dense, closed: &[u64], memo: &mut HashMap<u64, u8>, cap: usize, s: u64) -> u8 {
            let live = bits(s).filter(|&i| d.adj[i] & s != 0).fold(0u64, |a, i| a | (1 << i));
            if live == 0 {
                return 0;
            }
            if let Some(&r) = memo.get(&live) {
                return r;
            }
            let v = live.trailing_zeros() as usize;
            let comp = d.component(v, live);
            let res = if comp != live {
                value(d, closed, memo, cap, comp) + value(d, closed, memo, cap, live & !comp)
            } else {
                let mut best = value(d, closed, memo, cap, live & !(1 << v));
                for u in bits(d.adj[v] & live) {
                    best = best.max(1 + value(d, closed, memo, cap, live & !(closed[u] | closed[v])));
                }
                best
            };
            if memo.len() < cap {
                memo.insert(live, res);
            }
            res
        }

        let full = d.full();
        let target = value(&d, &closed, &mut memo, self.memo_cap, full);
        let mut edges = Vec::new();
        let mut s = full;
        let mut left = target;
        while left > 0 {
            let live = bits(s).filter(|&i| d.adj[i] & s != 0).fold(0u64, |a, i| a | (1 << i));
            let v = live.trailing_zeros() as usize;
            if value(&d, &closed, &mut memo, self.memo_cap, live & !(1 << v)) == left {
                s = live & !(1 << v);
                continue;
            }
            let u = bits(d.adj[v] & live)
                .find(|&u| 1 + value(&d, &closed, &mut memo, self.memo_cap, live & !(closed[u] | closed[v])) == left)
                .expect("optimum is realised by some edge at v");
            edges.push(Edge::new(d.labels[v], d.labels[u]));
            s = live & !(closed[u] | closed[v]);
            left -= 1;
        }
        Ok((target as usize, edges))
    }

    /// `γ(G)` and a minimum dominating set.
    pub fn domination(&self, g: &Graph) -> Result<(usize, BTreeSet<VertexId>)> {
        self.dominate(g, false)
    }

    /// `γ_i(G)` and a minimum independent dominating set.
    pub fn independent_domination(&self, g: &Graph) -> Result<(usize, BTreeSet<VertexId>)> {
        self.dominate(g, true)
    }

    fn dominate(&self, g: &Graph, independent: bool) -> Result<(usize, BTreeSet<VertexId>)> {
        let d = Dense::new(g, self.domination_cap)?;
        let n = d.labels.len();
        let closed: Vec<u64> = (0..n).map(|i| d.adj[i] | (1 << i)).collect();
        let mut bb = DomSearch { closed: &closed, full: d.full(), independent, best: n + 1, best_set: 0 };
        bb.greedy();
        bb.search(0, 0, 0);
        let set = bits(bb.best_set).map(|i| d.labels[i]).collect();
        Ok((bb.best, set))
    }
}

struct DomSearch<'a> {
    closed: &'a [u64],
    full: u64,
    independent: bool,
    best: usize,
    best_set: u64,
}

impl DomSearch<'_> {
    fn allowed(&self, chosen: u64) -> u64 {
        if self.independent {
            let blocked = bits(chosen).fold(0u64, |a, i| a | self.closed[i]);
            self.full & !blocked
        } else {
            self.full & !chosen
        }
    }

    fn greedy(&mut self) {
        let (mut chosen, mut dom) = (0u64, 0u64);
        while dom != self.full {
            let allowed = self.allowed(chosen);
            let w = bits(allowed)
                .max_by_key(|&w| ((self.closed[w] & !dom).count_ones(), std::cmp::Reverse(w)))
                .expect("an undominated vertex is always allowed");
            chosen |= 1 << w;
            dom |= self.closed[w];
        }
        self.best = chosen.count_ones() as usize;
        self.best_set = chosen;
    }

    fn lower_bound(&self, undominated: u64, allowed: u64) -> usize {
        let cover = bits(allowed)
            .map(|w| (self.closed[w] & undominated).count_ones())
            .max()
            .unwrap_or(0)
            .max(1) as usize;
        let by_cover = (undominated.count_ones() as usize).div_ceil(cover);
        let mut used = 0u64;
        let mut packed = 0;
        let mut order: Vec<usize> = bits(undominated).collect();
        order.sort_by_key(|&u| (self.closed[u] & allowed).count_ones());
        for u in order {
            let c = self.closed[u] & allowed;
            if c & used == 0 {
                used |= c;
                packed += 1;
            }
        }
        by_cover.max(packed)
    }

    fn search(&mut self, chosen: u64, dominated: u64, count: usize) {
        if dominated == self.full {
            if count < self.best {
                self.best = count;
                self.best_set = chosen;
            }
            return;
        }
        let undominated = self.full & !dominated;
        let allowed = self.allowed(chosen);
        if count + self.lower_bound(undominated, allowed) >= self.best {
            return;
        }
        let u = bits(undominated)
            .min_by_key(|&u| (self.closed[u] & allowed).count_ones())
            .expect("undominated is non-empty");
        let mut cands: Vec<usize> = bits(self.closed[u] & allowed).collect();
        cands.sort_by_key(|&w| std::cmp::Reverse((self.closed[w] & undominated).count_ones()));
        for w in cands {
            self.search(chosen | (1 << w), dominated | self.closed[w], count + 1);
        }
    }
}

pub fn lambda_exact(g: &Graph) -> Result<(usize, LambdaPacking)> {
    Oracle::default().lambda(g)
}

pub fn has_lambda_factor(g: &Graph, c: &PackingConstraint) -> Result<(bool, Option<LambdaPacking>)> {
    let f = Oracle::default().factor(g, c)?;
    Ok((f.is_some(), f))
}

pub fn lambda_induced_exact(g: &Graph) -> Result<(usize, LambdaPacking)> {
    Oracle::default().lambda_induced(g)
}

pub fn max_induced_matching(g: &Graph) -> Result<(usize, Vec<Edge>)> {
    Oracle::default().induced_matching(g)
}

pub fn domination_exact(g: &Graph) -> Result<(usize, BTreeSet<VertexId>)> {
    Oracle::default().domination(g)
}

pub fn independent_domination_exact(g: &Graph) -> Result<(usize, BTreeSet<VertexId>)> {
    Oracle::default().independent_domination(g)
}

/// Is `set` a dominating set of `g`?
pub fn dominates(g: &Graph, set: &BTreeSet<VertexId>) -> bool {
    g.vertices()
        .all(|x| set.contains(&x) || g.nbrs(x).iter().any(|y| set.contains(y)))
}

/// Are the edges pairwise at distance at least two?
pub fn is_induced_matching(g: &Graph, edges: &[Edge]) -> bool {
    let mut ends = BTreeSet::new();
    for e in edges {
        if !g.has_edge(e.u(), e.v()) {
            return false;
        }
        for x in e.endpoints() {
            if !ends.insert(x) {
                return false;
            }
        }
    }
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            for a in e.endpoints() {
                for b in f.endpoints() {
                    if g.has_edge(a, b) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Does each path of the packing induce a path (no chord between its ends)?
pub fn is_induced_packing(g: &Graph, p: &LambdaPacking) -> bool {
    p.validate(g).is_ok() && p.paths.iter().all(|q| !g.has_edge(q[0], q[2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(u32, u32)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    fn cycle(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g(n as usize, &edges)
    }

    fn complete(n: u32) -> Graph {
        let mut edges = vec![];
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        g(n as usize, &edges)
    }

    fn net() -> Graph {
        g(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    }

    /// Brute force over all path triples, for cross-checking on tiny graphs.
    fn brute_lambda(h: &Graph, induced: bool) -> usize {
        let vs: Vec<VertexId> = h.vertices().collect();
        let mut paths = vec![];
        for &b in &vs {
            for &a in h.nbrs(b) {
                for &c in h.nbrs(b) {
                    if a < c && !(induced && h.has_edge(a, c)) {
                        paths.push([a, b, c]);
                    }
                }
            }
        }
        fn rec(paths: &[Path3], i: usize, used: &mut BTreeSet<VertexId>) -> usize {
            if i == paths.len() {
                return 0;
            }
            let mut best = rec(paths, i + 1, used);
            if paths[i].iter().all(|x| !used.contains(x)) {
                used.extend(paths[i]);
                best = best.max(1 + rec(paths, i + 1, used));
                for x in paths[i] {
                    used.remove(&x);
                }
            }
            best
        }
        rec(&paths, 0, &mut BTreeSet::new())
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_exact(&complete(4)).unwrap().0, 1);
        assert_eq!(lambda_exact(&net()).unwrap().0, 1);
        let (k, p) = lambda_exact(&cycle(6)).unwrap();
        assert_eq!(k, 2);
        assert!(p.is_factor_of(&cycle(6)));
        let big = cycle(25);
        assert_eq!(lambda_exact(&big), Err(Error::OracleCap { order: 25, cap: 24 }));
    }

    #[test]
    fn factor_examples() {
        let (ok, w) = has_lambda_factor(&complete(3), &PackingConstraint::none()).unwrap();
        assert!(ok && w.unwrap().len() == 1);
        assert!(!has_lambda_factor(&net(), &PackingConstraint::none()).unwrap().0);
        assert!(!has_lambda_factor(&cycle(7), &PackingConstraint::none()).unwrap().0);
        let c6 = cycle(6);
        let avoid = PackingConstraint::without_edges([Edge::new(0, 1), Edge::new(2, 3)]);
        assert!(!has_lambda_factor(&c6, &avoid).unwrap().0);
        let through = PackingConstraint::containing_edge(Edge::new(0, 1));
        let (ok, w) = has_lambda_factor(&c6, &through).unwrap();
        assert!(ok && w.unwrap().uses_edge(Edge::new(0, 1)));
        let minus = PackingConstraint::without_vertices([VertexId(0)]);
        assert!(!has_lambda_factor(&c6, &minus).unwrap().0);
    }

    #[test]
    fn induced_examples() {
        assert_eq!(lambda_induced_exact(&complete(3)).unwrap().0, 0);
        assert_eq!(lambda_induced_exact(&g(3, &[(0, 1), (1, 2)])).unwrap().0, 1);
        let (k, p) = lambda_induced_exact(&cycle(6)).unwrap();
        assert_eq!(k, 2);
        assert!(is_induced_packing(&cycle(6), &p));
    }

    #[test]
    fn induced_matching_examples() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(max_induced_matching(&p4).unwrap().0, 1);
        let two = g(4, &[(0, 1), (2, 3)]);
        assert_eq!(max_induced_matching(&two).unwrap().0, 2);
        let (k, m) = max_induced_matching(&cycle(7)).unwrap();
        assert_eq!(k, 2);
        assert!(is_induced_matching(&cycle(7), &m));
    }

    #[test]
    fn domination_examples() {
        assert_eq!(domination_exact(&complete(4)).unwrap().0, 1);
        assert_eq!(domination_exact(&cycle(6)).unwrap().0, 2);
        let (k, set) = domination_exact(&net()).unwrap();
        assert_eq!(k, 3);
        assert!(dominates(&net(), &set));
        let (ki, seti) = independent_domination_exact(&net()).unwrap();
        assert_eq!(ki, 3);
        assert!(dominates(&net(), &seti));
        // double star: gamma = 2 but gamma_i = 3 + ... larger
        let ds = g(8, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6), (4, 7)]);
        assert_eq!(domination_exact(&ds).unwrap().0, 2);
        assert_eq!(independent_domination_exact(&ds).unwrap().0, 4);
    }

    #[test]
    fn oracle_matches_brute_force_on_small_graphs() {
        // every graph on 6 vertices with edges drawn from a fixed pattern
        let all: Vec<(u32, u32)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
        for mask in (0u32..1 << all.len()).step_by(97) {
            let edges: Vec<_> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            let h = g(6, &edges);
            assert_eq!(lambda_exact(&h).unwrap().0, brute_lambda(&h, false), "{h:?}");
            assert_eq!(lambda_induced_exact(&h).unwrap().0, brute_lambda(&h, true), "{h:?}");
        }
    }
}
