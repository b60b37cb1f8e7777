//! Maximum matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

use crate::graph::{Edge, Graph, VertexId};

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom = vec![false; n];
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        NONE
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// A maximum matching of `g`.
pub fn maximum_matching(g: &Graph) -> Vec<Edge> {
    let (h, labels) = g.compact();
    let n = h.order();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| h.nbrs(VertexId(i as u32)).iter().map(|y| y.index()).collect())
        .collect();
    let mut b = Blossom {
        adj: &adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    // greedy start
    for v in 0..n {
        if b.mate[v] == NONE {
            if let Some(&w) = adj[v].iter().find(|&&w| b.mate[w] == NONE) {
                b.mate[v] = w;
                b.mate[w] = v;
            }
        }
    }
    for v in 0..n {
        if b.mate[v] == NONE {
            let end = b.find_path(v);
            if end != NONE {
                b.augment(end);
            }
        }
    }
    (0..n)
        .filter(|&v| b.mate[v] != NONE && v < b.mate[v])
        .map(|v| Edge::new(labels[v], labels[b.mate[v]]))
        .collect()
}

/// Is `m` a matching of `g`?
pub fn is_matching(g: &Graph, m: &[Edge]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    m.iter().all(|e| g.has_edge(e.u(), e.v()) && seen.insert(e.u()) && seen.insert(e.v()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: &Graph) -> usize {
        let edges: Vec<Edge> = g.edges().collect();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let m: Vec<Edge> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            if m.len() > best && is_matching(g, &m) {
                best = m.len();
            }
        }
        best
    }

    #[test]
    fn odd_cycles_and_blossoms() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(maximum_matching(&c5).len(), 2);
        // two triangles joined by a path, forcing a blossom contraction
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 7)])
            .unwrap();
        let m = maximum_matching(&g);
        assert!(is_matching(&g, &m));
        assert_eq!(m.len(), 4);
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(1..9u32);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.35) {
                        edges.push((a, b));
                    }
                }
            }
            if edges.len() > 16 {
                edges.truncate(16);
            }
            let g = Graph::from_edges(n as usize, &edges).unwrap();
            let m = maximum_matching(&g);
            assert!(is_matching(&g, &m));
            assert_eq!(m.len(), brute(&g), "{g:?}");
        }
    }
}
