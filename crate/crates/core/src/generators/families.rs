//! Deterministic families: cycles, nets, prisms, cacti, family 𝒮 members and
//! the constructions `R`, `Q` and `H`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::vertex_connectivity;
use crate::decomposition::is_cactus;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

fn v(x: u32) -> VertexId {
    VertexId(x)
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::pre(format!("no cycle on {n} vertices")));
    }
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    Graph::from_edges(n, &edges)
}

pub fn gen_path(n: usize) -> Result<Graph> {
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn gen_complete(n: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            g.add_edge(v(a), v(b)).expect("vertices exist");
        }
    }
    g
}

/// Triangle `0, 1, 2` with leaves `3, 4, 5` at `0, 1, 2`.
pub fn gen_net() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).expect("net")
}

/// Triangles `0, 1, 2` and `3, 4, 5` with the matching `i, i + 3`.
pub fn gen_prism() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).expect("prism")
}

/// `k` disjoint copies of `K4`.
pub fn gen_k4_union(k: usize) -> Graph {
    let mut g = Graph::new();
    for _ in 0..k {
        g = g.disjoint_union(&gen_complete(4)).0;
    }
    g
}

/// A cactus given by a claw-free core and the core vertices receiving a
/// pendant leaf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CactusRecipe {
    pub core: Vec<(u32, u32)>,
    pub core_order: usize,
    pub pendants: Vec<u32>,
}

pub fn gen_cactus(recipe: &CactusRecipe) -> Result<Graph> {
    let mut g = Graph::from_edges(recipe.core_order, &recipe.core)?;
    let mut seen = BTreeSet::new();
    for &x in &recipe.pendants {
        if !g.contains(v(x)) || !seen.insert(x) {
            return Err(Error::Recipe(format!("pendant attachment {x} is unknown or repeated")));
        }
        let leaf = g.add_vertex();
        g.add_edge(v(x), leaf)?;
    }
    if !g.is_connected() || !g.is_claw_free() {
        return Err(Error::Recipe("cactus must be connected and claw-free".into()));
    }
    if !is_cactus(&g) {
        return Err(Error::Recipe("result is not a cactus".into()));
    }
    Ok(g)
}

/// Family 𝒮 membership conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySCondition {
    Connected,
    MaxDegreeThree,
    OneTriangle,
    ThreeLeaves,
}

impl fmt::Display for FamilySCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilySCondition::Connected => "α1: graph is not connected",
            FamilySCondition::MaxDegreeThree => "α2: a vertex has degree above 3",
            FamilySCondition::OneTriangle => "α3: a vertex of degree 2 or 3 is not in exactly one triangle",
            FamilySCondition::ThreeLeaves => "α4: fewer than three leaves",
        })
    }
}

fn triangles_at(g: &Graph, x: VertexId) -> usize {
    let nb: Vec<VertexId> = g.nbrs(x).iter().copied().collect();
    let mut t = 0;
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            t += usize::from(g.has_edge(nb[i], nb[j]));
        }
    }
    t
}

/// The first family 𝒮 condition `g` violates.
pub fn family_s_violation(g: &Graph) -> Option<FamilySCondition> {
    if !g.is_connected() {
        return Some(FamilySCondition::Connected);
    }
    if g.max_degree() > 3 {
        return Some(FamilySCondition::MaxDegreeThree);
    }
    if g.vertices().any(|x| g.degree(x) >= 2 && triangles_at(g, x) != 1) {
        return Some(FamilySCondition::OneTriangle);
    }
    if g.leaves().len() < 3 {
        return Some(FamilySCondition::ThreeLeaves);
    }
    None
}

pub fn is_family_s(g: &Graph) -> bool {
    family_s_violation(g).is_none()
}

/// A tree of triangles: node `i` becomes triangle `3i, 3i+1, 3i+2`, each
/// link joins free corners of two triangles, and each entry of `leaves`
/// hangs a leaf on a free corner of that triangle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySRecipe {
    pub triangles: usize,
    pub links: Vec<(usize, usize)>,
    pub leaves: Vec<usize>,
}

impl FamilySRecipe {
    /// One triangle with three leaves: the net.
    pub fn net() -> Self {
        FamilySRecipe { triangles: 1, links: vec![], leaves: vec![0, 0, 0] }
    }

    /// The net with every leaf replaced by a triangle carrying one leaf.
    pub fn extended_net() -> Self {
        FamilySRecipe { triangles: 4, links: vec![(0, 1), (0, 2), (0, 3)], leaves: vec![1, 2, 3] }
    }
}

pub fn gen_family_s(recipe: &FamilySRecipe) -> Result<Graph> {
    let mut g = Graph::with_vertices(3 * recipe.triangles);
    for i in 0..recipe.triangles as u32 {
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            g.add_edge(v(3 * i + a), v(3 * i + b))?;
        }
    }
    let mut used = vec![0u32; recipe.triangles];
    let mut corner = |t: usize| -> Result<VertexId> {
        let u = used
            .get_mut(t)
            .ok_or_else(|| Error::Recipe(format!("no triangle {t} in the recipe")))?;
        if *u == 3 {
            return Err(Error::Recipe(format!("{}", FamilySCondition::MaxDegreeThree)));
        }
        *u += 1;
        Ok(v(3 * t as u32 + *u - 1))
    };
    let mut ends = Vec::new();
    for &(a, b) in &recipe.links {
        if a == b {
            return Err(Error::Recipe(format!("{}", FamilySCondition::OneTriangle)));
        }
        ends.push((corner(a)?, corner(b)?));
    }
    let mut leaves = Vec::new();
    for &t in &recipe.leaves {
        leaves.push(corner(t)?);
    }
    for (a, b) in ends {
        g.add_edge(a, b)?;
    }
    for x in leaves {
        let leaf = g.add_vertex();
        g.add_edge(x, leaf)?;
    }
    match family_s_violation(&g) {
        Some(c) => Err(Error::Recipe(c.to_string())),
        None => Ok(g),
    }
}

/// Construction `R` with its distinguished edges `a = a1a2` and `b = b1b2`.
#[derive(Clone, Debug)]
pub struct ConstructionR {
    pub graph: Graph,
    pub a: Edge,
    pub b: Edge,
    pub z: VertexId,
    /// Both cycle lengths are `≡ 1 mod 3`, so no factor contains `a` or `b`.
    pub claim_applies: bool,
}

/// Construction `Q` with its distinguished edge `e = z1z2`.
#[derive(Clone, Debug)]
pub struct ConstructionQ {
    pub graph: Graph,
    pub e: Edge,
    pub a: Edge,
    pub b: Edge,
    /// Both cycle lengths are `≡ 2 mod 3`, so no factor contains `e`.
    pub claim_applies: bool,
}

/// Two cycles on `0..na` and `na..na+nb`, plus the hub vertices.
fn two_cycles(na: usize, nb: usize, hubs: usize) -> Result<(Graph, Edge, Edge)> {
    if na < 3 || nb < 3 {
        return Err(Error::pre(format!("cycle lengths {na}, {nb} must be at least 3")));
    }
    let mut g = Graph::with_vertices(na + nb + hubs);
    for (start, len) in [(0, na as u32), (na as u32, nb as u32)] {
        for i in 0..len {
            g.add_edge(v(start + i), v(start + (i + 1) % len))?;
        }
    }
    Ok((g, Edge::new(0u32, 1u32), Edge::new(na as u32, na as u32 + 1)))
}

pub fn gen_construction_r(na: usize, nb: usize) -> Result<ConstructionR> {
    let (mut g, a, b) = two_cycles(na, nb, 1)?;
    let z = v((na + nb) as u32);
    for x in a.endpoints().into_iter().chain(b.endpoints()) {
        g.add_edge(z, x)?;
    }
    debug_assert!(g.is_claw_free() && vertex_connectivity(&g) == 1);
    Ok(ConstructionR { graph: g, a, b, z, claim_applies: na % 3 == 1 && nb % 3 == 1 })
}

pub fn gen_construction_q(na: usize, nb: usize) -> Result<ConstructionQ> {
    let (mut g, a, b) = two_cycles(na, nb, 2)?;
    let z1 = v((na + nb) as u32);
    let z2 = v((na + nb + 1) as u32);
    g.add_edge(z1, z2)?;
    for z in [z1, z2] {
        for x in a.endpoints().into_iter().chain(b.endpoints()) {
            g.add_edge(z, x)?;
        }
    }
    debug_assert!(g.is_claw_free() && vertex_connectivity(&g) == 2);
    Ok(ConstructionQ { graph: g, e: Edge::new(z1, z2), a, b, claim_applies: na % 3 == 2 && nb % 3 == 2 })
}

/// Construction `H`: a net on `0..6` (leaves `3, 4, 5`), the triangle
/// `T = {6, 7, 8}`, and every edge `v_i t_j` with `i ≠ j`.
#[derive(Clone, Debug)]
pub struct ConstructionH {
    pub graph: Graph,
    pub triangle: [VertexId; 3],
}

pub fn gen_construction_h() -> ConstructionH {
    let mut g = gen_net();
    let t = [g.add_vertex(), g.add_vertex(), g.add_vertex()];
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        g.add_edge(t[a], t[b]).expect("triangle");
    }
    for i in 0..3 {
        for (j, &tj) in t.iter().enumerate() {
            if i != j {
                g.add_edge(v(3 + i as u32), tj).expect("link");
            }
        }
    }
    ConstructionH { graph: g, triangle: t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{has_lambda_factor, lambda_exact};
    use crate::packing::PackingConstraint;

    #[test]
    fn family_s_recipes() {
        assert_eq!(gen_family_s(&FamilySRecipe::net()).unwrap(), gen_net());
        let g = gen_family_s(&FamilySRecipe::extended_net()).unwrap();
        assert_eq!(g.order(), 15);
        assert!(!has_lambda_factor(&g, &PackingConstraint::none()).unwrap().0);
        let two = FamilySRecipe { triangles: 1, links: vec![], leaves: vec![0, 0] };
        assert!(matches!(gen_family_s(&two), Err(Error::Recipe(m)) if m.starts_with("α4")));
        let over = FamilySRecipe { triangles: 1, links: vec![], leaves: vec![0, 0, 0, 0] };
        assert!(matches!(gen_family_s(&over), Err(Error::Recipe(m)) if m.starts_with("α2")));
        assert_eq!(family_s_violation(&gen_cycle(6).unwrap()), Some(FamilySCondition::OneTriangle));
    }

    #[test]
    fn construction_r() {
        let r = gen_construction_r(4, 4).unwrap();
        assert_eq!(r.graph.order(), 9);
        assert!(r.claim_applies);
        for e in [r.a, r.b] {
            assert!(!has_lambda_factor(&r.graph, &PackingConstraint::containing_edge(e)).unwrap().0);
        }
        assert!(!gen_construction_r(3, 4).unwrap().claim_applies);
        assert!(gen_construction_r(2, 4).is_err());
    }

    #[test]
    fn construction_q() {
        let q = gen_construction_q(5, 5).unwrap();
        assert_eq!(q.graph.order(), 12);
        assert!(q.graph.is_claw_free());
        assert!(!has_lambda_factor(&q.graph, &PackingConstraint::containing_edge(q.e)).unwrap().0);
        assert!(!gen_construction_q(4, 5).unwrap().claim_applies);
    }

    #[test]
    fn construction_h() {
        let h = gen_construction_h();
        let g = &h.graph;
        assert_eq!(g.order(), 9);
        assert!(g.is_claw_free());
        assert_eq!(vertex_connectivity(g), 3);
        let mut degrees: Vec<usize> = g.vertices().map(|x| g.degree(x)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, [3, 3, 3, 3, 3, 3, 4, 4, 4]);
        assert_eq!(lambda_exact(&g.delete_vertices(&h.triangle)).unwrap().0, 1);
    }

    #[test]
    fn cactus_recipe() {
        let net = CactusRecipe { core: vec![(0, 1), (1, 2), (0, 2)], core_order: 3, pendants: vec![0, 1, 2] };
        assert_eq!(gen_cactus(&net).unwrap(), gen_net());
        let bad = CactusRecipe { core: vec![(0, 1), (1, 2)], core_order: 3, pendants: vec![1] };
        assert!(gen_cactus(&bad).is_err());
    }
}
