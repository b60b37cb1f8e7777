//! Blocks, end-blocks, end-chains, chains, cacti and edge-chains.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::connectivity::{bridges, is_k_edge_connected};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockKind {
    TwoConnected,
    Match,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: BTreeSet<VertexId>,
    pub kind: BlockKind,
    /// Vertices of the block with a neighbour outside it, i.e. the cut
    /// vertices of the host lying in this block.
    pub boundary: BTreeSet<VertexId>,
}

impl Block {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_end_block(&self) -> bool {
        self.boundary.len() <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndChain {
    pub vertices: BTreeSet<VertexId>,
    pub boundary: VertexId,
    /// Indices into [`ChainDecomposition::blocks`], starting at the end-block.
    pub blocks: Vec<usize>,
}

impl EndChain {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: BTreeSet<VertexId>,
    /// Edges of the block-cut tree as (block index, cut vertex).
    pub block_tree: Vec<(usize, VertexId)>,
    pub end_blocks: Vec<usize>,
    pub end_chains: Vec<EndChain>,
}

impl ChainDecomposition {
    /// `eb(G)`.
    pub fn eb(&self) -> usize {
        self.end_blocks.len()
    }

    pub fn is_chain(&self) -> bool {
        self.eb() <= 2
    }

    pub fn is_cactus(&self) -> bool {
        self.eb() >= 3 && self.end_chains.iter().all(|c| c.order() == 2)
    }

    /// Blocks containing `x`.
    pub fn blocks_at(&self, x: VertexId) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.blocks[i].vertices.contains(&x))
            .collect()
    }
}

/// Biconnected components by the DFS lowpoint method. Returns vertex sets.
fn biconnected_components(g: &Graph) -> Vec<BTreeSet<VertexId>> {
    struct State<'a> {
        g: &'a Graph,
        disc: BTreeMap<VertexId, usize>,
        low: BTreeMap<VertexId, usize>,
        stack: Vec<Edge>,
        out: Vec<BTreeSet<VertexId>>,
        time: usize,
    }

    fn dfs(s: &mut State<'_>, u: VertexId, parent: Option<VertexId>) {
        s.time += 1;
        s.disc.insert(u, s.time);
        s.low.insert(u, s.time);
        let nbrs: Vec<VertexId> = s.g.nbrs(u).iter().copied().collect();
        for w in nbrs {
            if Some(w) == parent {
                continue;
            }
            match s.disc.get(&w).copied() {
                None => {
                    s.stack.push(Edge::new(u, w));
                    dfs(s, w, Some(u));
                    let lw = s.low[&w];
                    if lw < s.low[&u] {
                        s.low.insert(u, lw);
                    }
                    if lw >= s.disc[&u] {
                        let mut comp = BTreeSet::new();
                        while let Some(e) = s.stack.pop() {
                            comp.insert(e.u());
                            comp.insert(e.v());
                            if e == Edge::new(u, w) {
                                break;
                            }
                        }
                        s.out.push(comp);
                    }
                }
                Some(dw) => {
                    if dw < s.disc[&u] {
                        s.stack.push(Edge::new(u, w));
                        if dw < s.low[&u] {
                            s.low.insert(u, dw);
                        }
                    }
                }
            }
        }
    }

    let mut s = State {
        g,
        disc: BTreeMap::new(),
        low: BTreeMap::new(),
        stack: Vec::new(),
        out: Vec::new(),
        time: 0,
    };
    if let Some(root) = g.vertices().next() {
        dfs(&mut s, root, None);
    }
    s.out.sort();
    s.out
}

/// Block structure of a connected graph with at least two vertices.
pub fn block_decomposition(g: &Graph) -> Result<ChainDecomposition> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.order() < 2 {
        return Err(Error::pre("block decomposition needs at least two vertices"));
    }
    let comps = biconnected_components(g);
    let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
    for c in &comps {
        for &x in c {
            *count.entry(x).or_default() += 1;
        }
    }
    let cut_vertices: BTreeSet<VertexId> =
        count.iter().filter(|(_, &n)| n >= 2).map(|(&x, _)| x).collect();
    let blocks: Vec<Block> = comps
        .into_iter()
        .map(|vertices| Block {
            kind: if vertices.len() == 2 { BlockKind::Match } else { BlockKind::TwoConnected },
            boundary: vertices.intersection(&cut_vertices).copied().collect(),
            vertices,
        })
        .collect();
    let mut block_tree = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &c in &b.boundary {
            block_tree.push((i, c));
        }
    }
    let end_blocks: Vec<usize> = (0..blocks.len()).filter(|&i| blocks[i].is_end_block()).collect();
    let mut d = ChainDecomposition {
        blocks,
        cut_vertices,
        block_tree,
        end_blocks,
        end_chains: Vec::new(),
    };
    if d.eb() >= 3 {
        d.end_chains = d.end_blocks.iter().map(|&b| grow_end_chain(&d, b)).collect();
    }
    Ok(d)
}

/// Walks from end-block `start` towards the interior while every cut vertex
/// passed lies in exactly two blocks and the next block has at most two
/// boundary vertices.
fn grow_end_chain(d: &ChainDecomposition, start: usize) -> EndChain {
    let mut blocks = vec![start];
    let mut vertices = d.blocks[start].vertices.clone();
    let mut cur = start;
    let mut at = *d.blocks[start].boundary.iter().next().expect("eb >= 3 implies a cut vertex");
    loop {
        let around = d.blocks_at(at);
        if around.len() != 2 {
            break;
        }
        let next = if around[0] == cur { around[1] } else { around[0] };
        let nb = &d.blocks[next];
        if nb.boundary.len() != 2 {
            break;
        }
        let exit = *nb.boundary.iter().find(|&&c| c != at).expect("two boundary vertices");
        vertices.extend(nb.vertices.iter().copied());
        blocks.push(next);
        cur = next;
        at = exit;
    }
    EndChain { vertices, boundary: at, blocks }
}

/// `eb(G)` for a connected graph; single vertices have none.
pub fn end_block_count(g: &Graph) -> Result<usize> {
    if g.order() == 1 {
        return Ok(0);
    }
    Ok(block_decomposition(g)?.eb())
}

/// End-chains of a connected graph with their boundary vertices.
pub fn end_chains(g: &Graph) -> Result<Vec<EndChain>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.order() < 2 {
        return Ok(Vec::new());
    }
    Ok(block_decomposition(g)?.end_chains)
}

/// Connected with at most two end-blocks.
pub fn is_chain(g: &Graph) -> bool {
    g.is_connected() && end_block_count(g).is_ok_and(|eb| eb <= 2)
}

/// Connected, at least three end-blocks, and every end-chain is a match.
pub fn is_cactus(g: &Graph) -> bool {
    g.is_connected() && g.order() >= 2 && block_decomposition(g).is_ok_and(|d| d.is_cactus())
}

/// `G - Lv(G)` is a row `B_1 e_1 B_2 ... e_{k-1} B_k` of disjoint
/// edge-2-connected graphs joined by single edges between consecutive ones.
pub fn is_edge_chain(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    let core = g.delete_vertices(&g.leaves());
    if !core.is_connected() {
        return false;
    }
    let cut = bridges(&core);
    let Ok(pieces_graph) = core.delete_edges(&cut) else {
        return false;
    };
    let pieces = pieces_graph.connected_components();
    let piece_of: BTreeMap<VertexId, usize> = pieces
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.iter().map(move |&x| (x, i)))
        .collect();
    for p in &pieces {
        if !is_k_edge_connected(&pieces_graph.induced_subgraph(p), 2) {
            return false;
        }
    }
    let mut tree_degree = vec![0usize; pieces.len()];
    for e in &cut {
        tree_degree[piece_of[&e.u()]] += 1;
        tree_degree[piece_of[&e.v()]] += 1;
    }
    tree_degree.iter().all(|&d| d <= 2)
}
