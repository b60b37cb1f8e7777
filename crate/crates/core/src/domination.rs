//! Domination bounds obtained from Λ-packings via star factors.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::json;

use crate::clawfree::{claws, pack_clawfree};
use crate::connectivity::is_two_connected;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracle::{dominates, Oracle, DEFAULT_DOMINATION_CAP};
use crate::packing::{LambdaPacking, PackingConstraint};
use crate::report::{Status, VerdictReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: VertexId,
    pub leaves: BTreeSet<VertexId>,
}

/// Spanning forest of stars `K_{1,s}`, `s ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarFactor {
    pub stars: Vec<Star>,
}

impl StarFactor {
    /// Number of components, an upper bound on `γ`.
    pub fn len(&self) -> usize {
        self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    pub fn centers(&self) -> BTreeSet<VertexId> {
        self.stars.iter().map(|s| s.center).collect()
    }

    /// Stars span `g`, are vertex-disjoint, and use edges of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for s in &self.stars {
            for &x in std::iter::once(&s.center).chain(&s.leaves) {
                if !g.contains(x) {
                    return Err(Error::UnknownVertex(x));
                }
                if !seen.insert(x) {
                    return Err(Error::invariant(format!("vertex {x} in two stars")));
                }
            }
            if let Some(&l) = s.leaves.iter().find(|&&l| !g.has_edge(s.center, l)) {
                return Err(Error::invariant(format!("star leaf {l} not adjacent to center {}", s.center)));
            }
        }
        if seen.len() != g.order() {
            return Err(Error::invariant("star factor does not span the graph"));
        }
        Ok(())
    }
}

/// Each path becomes a star at its middle vertex; every other vertex joins
/// an adjacent center if it has one, else starts its own star.
pub fn packing_to_star_factor(g: &Graph, p: &LambdaPacking) -> Result<StarFactor> {
    p.validate(g)?;
    let mut stars: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for &[a, b, c] in &p.paths {
        stars.insert(b, BTreeSet::from([a, c]));
    }
    let covered = p.vertices();
    for x in g.vertices().filter(|x| !covered.contains(x)) {
        match g.nbrs(x).iter().find(|y| stars.contains_key(y)) {
            Some(&c) => {
                stars.get_mut(&c).expect("center").insert(x);
            }
            None => {
                stars.insert(x, BTreeSet::new());
            }
        }
    }
    let f = StarFactor { stars: stars.into_iter().map(|(center, leaves)| Star { center, leaves }).collect() };
    debug_assert!(f.validate(g).is_ok() && dominates(g, &f.centers()));
    Ok(f)
}

/// Star factor `P(X)` of a dominating set `X`: every vertex outside `X`
/// joins its smallest neighbour in `X`.
pub fn star_factor_from_dominating_set(g: &Graph, x: &BTreeSet<VertexId>) -> Result<StarFactor> {
    if !dominates(g, x) {
        return Err(Error::pre("set does not dominate the graph"));
    }
    let mut stars: BTreeMap<VertexId, BTreeSet<VertexId>> = x.iter().map(|&c| (c, BTreeSet::new())).collect();
    for y in g.vertices().filter(|y| !x.contains(y)) {
        let c = *g.nbrs(y).iter().find(|c| x.contains(c)).expect("dominated");
        stars.get_mut(&c).expect("center").insert(y);
    }
    Ok(StarFactor { stars: stars.into_iter().map(|(center, leaves)| Star { center, leaves }).collect() })
}

/// `γ ≤ ⌈v/3⌉` and `γ = γ_i` for 2-connected claw-free graphs, with
/// `γ ≤ ⌊v/3⌋` when `v ≡ 1` and the graph is not a cycle.
pub fn check_gamma_bounds(g: &Graph) -> VerdictReport {
    check_gamma_bounds_capped(g, DEFAULT_DOMINATION_CAP)
}

pub fn check_gamma_bounds_capped(g: &Graph, cap: usize) -> VerdictReport {
    let r = VerdictReport::start("gamma", g);
    if !is_two_connected(g) || !g.is_claw_free() {
        return r.unmet("graph is not 2-connected and claw-free");
    }
    if g.order() > cap {
        return r.skipped(format!("{} vertices above the domination cap {cap}", g.order()));
    }
    let mut r = r;
    r.hypothesis_holds("2-connected claw-free");
    let oracle = Oracle { domination_cap: cap, ..Oracle::default() };
    let (gamma, gamma_i) = match (oracle.domination(g), oracle.independent_domination(g)) {
        (Ok((a, _)), Ok((b, _))) => (a, b),
        (Err(e), _) | (_, Err(e)) => return r.errored(e.to_string()),
    };
    let v = g.order();
    let lambda = match pack_clawfree(g) {
        Ok(o) => o.packing.len(),
        Err(e) => return r.errored(e.to_string()),
    };
    let ceil = v.div_ceil(3);
    let strict = v % 3 == 1 && !g.is_cycle();
    let bound = if strict { v / 3 } else { ceil };
    let mut failures = Vec::new();
    if gamma > bound {
        failures.push(format!("γ = {gamma} > {bound}"));
    }
    if gamma != gamma_i {
        failures.push(format!("γ = {gamma} but γ_i = {gamma_i}"));
    }
    if gamma + 2 * lambda > v {
        failures.push(format!("γ = {gamma} > v - 2λ = {}", v - 2 * lambda));
    }
    let detail = if failures.is_empty() {
        format!("γ = γ_i = {gamma} ≤ {bound}; v - 2λ = {}", v - 2 * lambda)
    } else {
        failures.join("; ")
    };
    r.conclude(failures.is_empty(), detail, Status::CounterexampleCandidate)
        .with_margin(bound as i64 - gamma as i64)
        .with_witness(json!({ "gamma": gamma, "gamma_i": gamma_i, "lambda": lambda }))
}

/// `γ ≤ v − 2λ`, exactly, for any graph within both oracle caps.
pub fn check_gamma_vs_lambda(g: &Graph, oracle: &Oracle) -> VerdictReport {
    let mut r = VerdictReport::start("gamma-lambda", g);
    r.hypothesis_holds("any graph");
    let (gamma, lambda) = match (oracle.domination(g), oracle.lambda(g)) {
        (Ok((a, _)), Ok((b, _))) => (a, b),
        (Err(Error::OracleCap { order, cap }), _) | (_, Err(Error::OracleCap { order, cap })) => {
            return r.skipped(format!("{order} vertices above cap {cap}"))
        }
        (Err(e), _) | (_, Err(e)) => return r.errored(e.to_string()),
    };
    let v = g.order() as i64;
    let margin = v - 2 * lambda as i64 - gamma as i64;
    r.conclude(margin >= 0, format!("γ = {gamma}, λ = {lambda}"), Status::CounterexampleCandidate)
        .with_margin(margin)
}

/// A Hamiltonian cycle by exhaustive search, for small graphs.
pub fn hamiltonian_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    let (h, labels) = g.compact();
    let n = h.order();
    if !(3..=64).contains(&n) {
        return None;
    }
    let adj: Vec<u64> =
        (0..n).map(|i| h.nbrs(VertexId(i as u32)).iter().fold(0u64, |m, y| m | 1 << y.0)).collect();
    fn dfs(adj: &[u64], path: &mut Vec<usize>, used: u64, n: usize) -> bool {
        let last = *path.last().expect("nonempty");
        if path.len() == n {
            return adj[last] & 1 == 1;
        }
        let mut cand = adj[last] & !used;
        while cand != 0 {
            let y = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            path.push(y);
            if dfs(adj, path, used | 1 << y, n) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = vec![0];
    dfs(&adj, &mut path, 1, n).then(|| path.into_iter().map(|i| labels[i]).collect())
}

fn is_hamiltonian_cycle(g: &Graph, cycle: &[VertexId]) -> bool {
    let n = cycle.len();
    n == g.order()
        && n >= 3
        && cycle.iter().collect::<BTreeSet<_>>().len() == n
        && (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// For a cubic Hamiltonian graph with `v ≡ 1`: a claw `Y` with `G − Y`
/// factorable, hence `γ ≤ ⌊v/3⌋`.
pub fn check_ham_claw(g: &Graph, cycle: &[VertexId]) -> Result<VerdictReport> {
    check_ham_claw_with(g, cycle, &Oracle::default())
}

pub fn check_ham_claw_with(g: &Graph, cycle: &[VertexId], oracle: &Oracle) -> Result<VerdictReport> {
    if !g.is_regular(3) {
        return Err(Error::pre("graph is not cubic"));
    }
    if g.order() % 3 != 1 {
        return Err(Error::pre(format!("v = {} is not ≡ 1 mod 3", g.order())));
    }
    if !is_hamiltonian_cycle(g, cycle) {
        return Err(Error::pre("supplied order is not a Hamiltonian cycle"));
    }
    let mut r = VerdictReport::start("Ham", g);
    r.hypothesis_holds("cubic, Hamiltonian, v ≡ 1 mod 3");
    if g.order() - 4 > oracle.cap {
        return Ok(r.skipped(format!("{} vertices above the oracle cap", g.order() - 4)));
    }
    for y in claws(g) {
        let h = g.delete_vertices(&y.vertices());
        let (ok, p) = match oracle.factor(&h, &PackingConstraint::none()) {
            Ok(p) => (p.is_some(), p),
            Err(e) => return Ok(r.errored(e.to_string())),
        };
        if ok {
            let p = p.expect("factor");
            let mut dom: BTreeSet<VertexId> = p.paths.iter().map(|q| q[1]).collect();
            dom.insert(y.center);
            let valid = dominates(g, &dom) && dom.len() <= g.order() / 3;
            let detail = format!("claw at {} leaves a factorable graph; dominating set of size {}", y.center, dom.len());
            return Ok(r
                .conclude(valid, detail, Status::CounterexampleCandidate)
                .with_witness(json!({ "claw": y, "factor": p, "dominating_set": dom })));
        }
    }
    Ok(r.conclude(false, "no claw leaves a factorable graph", Status::CounterexampleCandidate))
}

/// The λ/v bound implied by `γ = (p/q)·v` and `γ ≤ v − 2λ`, as a reduced
/// fraction: `λ/v ≤ (q − p) / 2q`.
pub fn lambda_ratio_from_gamma(p: u64, q: u64) -> (u64, u64) {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let (num, den) = (q - p, 2 * q);
    let d = gcd(num, den);
    (num / d, den / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete, gen_cycle, gen_prism};
    use crate::oracle::{domination_exact, independent_domination_exact, lambda_exact};

    #[test]
    fn star_factors() {
        let c9 = gen_cycle(9).unwrap();
        let p = crate::packing::pack_path_or_cycle(&c9).unwrap();
        let f = packing_to_star_factor(&c9, &p).unwrap();
        assert_eq!(f.len(), 3);
        let k4 = gen_complete(4);
        let (_, p) = lambda_exact(&k4).unwrap();
        let f = packing_to_star_factor(&k4, &p).unwrap();
        assert!(f.len() <= 2 && f.len() >= domination_exact(&k4).unwrap().0);
        assert_eq!(domination_exact(&k4).unwrap().0, 1);
        let x = domination_exact(&c9).unwrap().1;
        assert_eq!(star_factor_from_dominating_set(&c9, &x).unwrap().len(), 3);
    }

    #[test]
    fn gamma_examples() {
        let c7 = gen_cycle(7).unwrap();
        assert_eq!(domination_exact(&c7).unwrap().0, 3);
        let r = check_gamma_bounds(&c7);
        assert_eq!(r.status, Status::Confirmed);
        assert_eq!(r.margin, Some(0));
        assert_eq!(domination_exact(&gen_prism()).unwrap().0, 2);
        assert_eq!(independent_domination_exact(&gen_prism()).unwrap().0, 2);
        assert_eq!(check_gamma_bounds(&gen_prism()).status, Status::Confirmed);
        let net = crate::generators::gen_net();
        assert_eq!(check_gamma_bounds(&net).status, Status::HypothesisUnmet);
    }

    #[test]
    fn ham_claw() {
        let k4 = gen_complete(4);
        let cycle: Vec<VertexId> = (0..4).map(VertexId).collect();
        assert_eq!(check_ham_claw(&k4, &cycle).unwrap().status, Status::Confirmed);
        // Petersen graph: cubic, v = 10, not Hamiltonian
        let pet = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        assert!(hamiltonian_cycle(&pet).is_none());
        let fake: Vec<VertexId> = (0..10).map(VertexId).collect();
        assert!(check_ham_claw(&pet, &fake).is_err());
        let prism5 = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (5, 6), (6, 7), (7, 8), (8, 9), (5, 9), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)],
        )
        .unwrap();
        let h = hamiltonian_cycle(&prism5).unwrap();
        assert_eq!(check_ham_claw(&prism5, &h).unwrap().status, Status::Confirmed);
    }

    #[test]
    fn reed_replay() {
        // 1/3 + 1/60 = 21/60
        assert_eq!(lambda_ratio_from_gamma(21, 60), (13, 40));
    }
}
