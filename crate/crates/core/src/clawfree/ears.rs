//! Ear assemblies built from a longest cycle and successive longest ears.
//!
//! Both searches are exact depth-first searches with a reachability bound;
//! they are exponential in the worst case and meant for graphs with a few
//! dozen vertices.

use serde::Serialize;

use crate::connectivity::is_two_connected;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// Largest order the exact searches accept.
pub const EAR_SEARCH_CAP: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EarAssembly {
    /// `A_0` as a cyclic vertex order.
    pub base_cycle: Vec<VertexId>,
    /// `A_1 .. A_r`, each listed from one attachment vertex to the other.
    pub ears: Vec<Vec<VertexId>>,
    /// `F(G) = G_r`.
    #[serde(skip)]
    pub frame: Graph,
}

impl EarAssembly {
    /// `r`, the number of ears after the base cycle.
    pub fn r(&self) -> usize {
        self.ears.len()
    }

    /// `A(G)`: the last ear, or the base cycle when `r = 0`.
    pub fn last(&self) -> &[VertexId] {
        self.ears.last().map_or(&self.base_cycle, Vec::as_slice)
    }

    pub fn is_hamiltonian(&self) -> bool {
        self.ears.is_empty() && self.base_cycle.len() == self.frame.order()
    }
}

pub(crate) struct Bits {
    pub labels: Vec<VertexId>,
    pub adj: Vec<u128>,
}

impl Bits {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.order() > EAR_SEARCH_CAP {
            return Err(Error::pre(format!(
                "exact cycle search limited to {EAR_SEARCH_CAP} vertices, got {}",
                g.order()
            )));
        }
        let labels: Vec<VertexId> = g.vertices().collect();
        let adj = labels
            .iter()
            .map(|&x| {
                g.nbrs(x)
                    .iter()
                    .fold(0u128, |m, y| m | 1u128 << labels.binary_search(y).expect("vertex"))
            })
            .collect();
        Ok(Bits { labels, adj })
    }

    pub fn index(&self, x: VertexId) -> usize {
        self.labels.binary_search(&x).expect("vertex of this graph")
    }

    pub fn full(&self) -> u128 {
        let n = self.labels.len();
        if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        }
    }

    /// Vertices of `within` reachable from `from`'s neighbours inside `within`.
    fn reach(&self, from: usize, within: u128) -> u128 {
        let mut seen = self.adj[from] & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let i = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[i];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }
}

fn ones(mut m: u128) -> impl Iterator<Item = usize> {
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

struct CycleSearch<'a> {
    b: &'a Bits,
    start: usize,
    allowed: u128,
    must: u128,
    path: Vec<usize>,
    best: Vec<usize>,
    target: usize,
}

impl CycleSearch<'_> {
    /// Returns `true` once a cycle of length `target` has been found.
    fn dfs(&mut self, cur: usize, visited: u128) -> bool {
        if self.path.len() >= 3
            && self.b.adj[cur] >> self.start & 1 == 1
            && self.must & !visited == 0
            && self.path.len() > self.best.len()
        {
            self.best = self.path.clone();
            if self.best.len() >= self.target {
                return true;
            }
        }
        let free = self.allowed & !visited;
        let reach = self.b.reach(cur, free);
        if self.path.len() + (reach.count_ones() as usize) <= self.best.len() {
            return false;
        }
        if self.must & !visited & !reach != 0 {
            return false;
        }
        if reach & self.b.adj[self.start] == 0 {
            return false;
        }
        let mut next: Vec<usize> = ones(self.b.adj[cur] & free).collect();
        next.sort_by_key(|&w| ((self.b.adj[w] & free).count_ones(), w));
        for w in next {
            self.path.push(w);
            if self.dfs(w, visited | 1u128 << w) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// A longest cycle; with `through`, a longest cycle containing both
/// endpoints of the edge (so the edge lies on it or is a chord of it).
pub(crate) fn longest_cycle(b: &Bits, through: Option<(usize, usize)>) -> Vec<usize> {
    let n = b.labels.len();
    let mut best: Vec<usize> = Vec::new();
    match through {
        Some((u, v)) => {
            let mut s = CycleSearch {
                b,
                start: u,
                allowed: b.full(),
                must: 1u128 << v,
                path: vec![u],
                best: Vec::new(),
                target: n,
            };
            s.dfs(u, 1u128 << u);
            best = s.best;
        }
        None => {
            for start in 0..n {
                let allowed = b.full() & !((1u128 << start) - 1);
                if (allowed.count_ones() as usize) <= best.len() {
                    break;
                }
                let mut s = CycleSearch {
                    b,
                    start,
                    allowed,
                    must: 0,
                    path: vec![start],
                    best: best.clone(),
                    target: n,
                };
                let done = s.dfs(start, 1u128 << start);
                best = s.best;
                if done {
                    break;
                }
            }
        }
    }
    best
}

struct EarSearch<'a> {
    b: &'a Bits,
    outside: u128,
    start: usize,
    path: Vec<usize>,
    best: Vec<usize>,
}

impl EarSearch<'_> {
    fn dfs(&mut self, cur: usize, visited: u128) -> bool {
        let limit = self.outside.count_ones() as usize + 2;
        if cur != self.start {
            let inside = self.b.adj[cur] & !self.outside & !(1u128 << self.start);
            if let Some(end) = ones(inside).next() {
                if self.path.len() + 1 > self.best.len() {
                    self.best = self.path.clone();
                    self.best.push(end);
                    if self.best.len() == limit {
                        return true;
                    }
                }
            }
        }
        let free = self.outside & !visited;
        let reach = self.b.reach(cur, free);
        if self.path.len() + 1 + reach.count_ones() as usize <= self.best.len() {
            return false;
        }
        for w in ones(self.b.adj[cur] & free) {
            self.path.push(w);
            if self.dfs(w, visited | 1u128 << w) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// A longest path with at least two edges whose ends lie in `built` and
/// whose inner vertices lie outside it.
pub(crate) fn longest_ear(b: &Bits, built: u128) -> Option<Vec<usize>> {
    let outside = b.full() & !built;
    if outside == 0 {
        return None;
    }
    let mut best: Vec<usize> = Vec::new();
    for a in ones(built) {
        if b.adj[a] & outside == 0 {
            continue;
        }
        let mut s = EarSearch { b, outside, start: a, path: vec![a], best: best.clone() };
        let done = s.dfs(a, 0);
        best = s.best;
        if done {
            break;
        }
    }
    (best.len() >= 3).then_some(best)
}

/// Procedure E (or E' with `anchor`): longest cycle, then longest ears.
pub fn procedure_e(g: &Graph, anchor: Option<Edge>) -> Result<EarAssembly> {
    if !is_two_connected(g) {
        return Err(Error::pre("ear assembly needs a 2-connected graph"));
    }
    if let Some(e) = anchor {
        if !g.has_edge(e.u(), e.v()) {
            return Err(Error::UnknownEdge(e));
        }
    }
    let b = Bits::new(g)?;
    let through = anchor.map(|e| (b.index(e.u()), b.index(e.v())));
    let cycle = longest_cycle(&b, through);
    let mut built = cycle.iter().fold(0u128, |m, &i| m | 1u128 << i);
    let mut frame = Graph::from_parts(cycle.iter().map(|&i| b.labels[i]), std::iter::empty())?;
    for k in 0..cycle.len() {
        frame.add_edge(b.labels[cycle[k]], b.labels[cycle[(k + 1) % cycle.len()]])?;
    }
    let mut ears = Vec::new();
    while let Some(ear) = longest_ear(&b, built) {
        for &i in &ear {
            frame.insert_vertex(b.labels[i]);
        }
        for w in ear.windows(2) {
            frame.add_edge(b.labels[w[0]], b.labels[w[1]])?;
        }
        for &i in &ear {
            built |= 1u128 << i;
        }
        ears.push(ear.iter().map(|&i| b.labels[i]).collect());
    }
    if built != b.full() {
        return Err(Error::invariant("ear assembly does not span a 2-connected graph"));
    }
    Ok(EarAssembly { base_cycle: cycle.iter().map(|&i| b.labels[i]).collect(), ears, frame })
}

/// Checks that `f` is a frame of `g`: spanning, 2-connected, and minimal
/// (no edge can be dropped keeping 2-connectivity).
pub fn is_frame(g: &Graph, f: &Graph) -> bool {
    if f.vertex_set() != g.vertex_set() || !f.edges().all(|e| g.has_edge(e.u(), e.v())) {
        return false;
    }
    if !is_two_connected(f) {
        return false;
    }
    f.edges()
        .all(|e| !is_two_connected(&f.delete_edges(&[e]).expect("edge of f")))
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
    fn cycle_has_no_ears() {
        let a = procedure_e(&cycle(7), None).unwrap();
        assert_eq!(a.r(), 0);
        assert_eq!(a.base_cycle.len(), 7);
        assert_eq!(a.frame, cycle(7));
    }

    #[test]
    fn k4_frame_is_hamiltonian_cycle() {
        let k4 = complete(4);
        let a = procedure_e(&k4, None).unwrap();
        assert_eq!(a.r(), 0);
        assert!(a.frame.is_cycle() && a.frame.order() == 4);
        assert!(is_frame(&k4, &a.frame));
        let e = Edge::new(0, 2);
        let a = procedure_e(&k4, Some(e)).unwrap();
        assert!(a.base_cycle.contains(&VertexId(0)) && a.base_cycle.contains(&VertexId(2)));
    }

    #[test]
    fn theta_graph_needs_an_ear() {
        // two vertices joined by three paths of lengths 2, 3, 4
        let g = Graph::from_edges(
            7,
            &[(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (0, 5), (5, 6), (6, 1)],
        )
        .unwrap();
        let a = procedure_e(&g, None).unwrap();
        assert_eq!(a.base_cycle.len(), 6);
        assert_eq!(a.r(), 1);
        assert_eq!(a.last().len(), 3);
        assert!(is_frame(&g, &a.frame));
    }

    #[test]
    fn not_two_connected_is_rejected() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(procedure_e(&p, None).is_err());
    }
}
