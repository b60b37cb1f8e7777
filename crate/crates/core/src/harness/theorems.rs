use serde::Serialize;
use serde_json::{json, Value};

use super::search::{factor_without, filtered_factor, has_factor, max_union_induced_packing, p4_factor, paths3, simple_paths};
use super::Extras;
use crate::clawfree::{
    claws, contains_path, delta_factor_through_path, delta_factor_through_path_with_triangle, delta_three_edge_test,
    delta_two_edge_factor, factor_avoiding_edge, factor_containing_edge, factor_containing_path,
    factor_minus_adjacent_pair, factor_minus_claw, factor_minus_edge_pair, factor_minus_path_through_edge,
    factor_minus_vertex, factor_minus_vertex_and_edge, factor_plus_pk, is_delta_graph, pack_2connected_clawfree,
    pack_chain, pack_clawfree,
};
use crate::connectivity::{is_k_connected, is_k_edge_connected};
use crate::decomposition::{block_decomposition, is_edge_chain};
use crate::domination::{check_gamma_bounds_capped, check_gamma_vs_lambda, check_ham_claw_with, hamiltonian_cycle};
use crate::error::{Error, Result};
use crate::generators::is_family_s;
use crate::graph::{Edge, Graph, VertexId};
use crate::linegraph::{
    edge_three_factor, edge_three_factor_constrained, induced_matching_to_lambda_packing, lambda_e,
    lambda_packing_to_induced_matching, pair_adjacent_edges, LineGraph, PathMode,
};
use crate::packing::{LambdaPacking, PackingConstraint, Path3};
use crate::report::{Status, VerdictReport};

type Hyp = std::result::Result<String, String>;

/// One checkable statement.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TheoremInfo {
    pub id: &'static str,
    pub statement: &'static str,
    /// Open problems only ever report "none falsifying".
    pub open: bool,
}

type Runner = fn(&Graph, &Extras, VerdictReport) -> VerdictReport;

pub(super) struct Entry {
    pub info: TheoremInfo,
    pub run: Runner,
}

const fn thm(id: &'static str, statement: &'static str, run: Runner) -> Entry {
    Entry { info: TheoremInfo { id, statement, open: false }, run }
}

const fn open(id: &'static str, statement: &'static str, run: Runner) -> Entry {
    Entry { info: TheoremInfo { id, statement, open: true }, run }
}

pub(super) const TABLE: &[Entry] = &[
    thm("km", "cubic: λ ≥ ⌈v/4⌉", km),
    thm("2conclfr", "2-connected claw-free: λ = ⌊v/3⌋, residue a vertex or an edge", two_con_clfr),
    thm("eb(G)clfr", "connected claw-free, eb ≥ 2: λ ≥ ⌊(v − eb + 2)/3⌋", eb_clfr),
    thm("Conclfr2endbplocks", "connected claw-free with two end-blocks: λ = ⌊v/3⌋", two_end_blocks),
    thm("A", "family S: no Λ-factor", family_s),
    thm("avoid-e", "2-connected claw-free, v ≡ 0: G − e has a Λ-factor for every edge e", avoid_e),
    thm("pk-factors", "2-connected claw-free, v ≡ k ∈ {1,2}: {Λ,P_k}- and {Λ,P_k+3}-factors", pk_factors),
    thm("G-Y", "2-connected claw-free, v ≡ 1, not a cycle: two claws Y with G − Y factorable", g_minus_y),
    thm("clfree-2con-x", "2-connected claw-free, v ≡ 1: G − x has a Λ-factor for every x", minus_x),
    thm("clfree-2con-xb", "2-connected claw-free, v ≡ 2: every x has two edges xb with G − {x,b} factorable", minus_xb),
    thm("clfree-3con-xy", "3-connected claw-free, v ≡ 2: G − {x,y} has a Λ-factor for every edge xy", minus_xy),
    thm("clfree-3con-L", "3-connected claw-free, v ≡ 0: every edge xy has two paths L at y with G − L factorable", minus_l_at_edge),
    thm("clfree-3con-deg3L", "3-connected claw-free, v ≡ 0: G − L has a Λ-factor for every path L with a degree-3 center", minus_l_deg3),
    thm("clfree-4con-L", "4-connected claw-free, v ≡ 0: G − L has a Λ-factor for every 3-vertex path L", minus_l_4con),
    thm("contain-e", "3-connected claw-free, v ≡ 0: a Λ-factor containing e for every edge e", contain_e),
    thm("clfree-3con-xe", "3-connected claw-free, v ≡ 1: G − {x,e} has a Λ-factor for every x and e", minus_xe),
    thm("delta-path", "2-connected Δ-graph: a Λ-factor through L, all triangles or none", delta_path),
    thm("delta-path-triangle", "2-connected Δ-graph, L not a triangle: a Λ-factor through L with a triangle component", delta_path_triangle),
    thm("delta-3edge", "2-connected Δ-graph: G − E factorable iff E is not (e1)-(e4)", delta_3edge),
    thm("delta-2edge", "Δ-graph: G − E has a Λ-factor for every pair of edges E", delta_2edge),
    thm("clfree-3con-3edge", "3-connected claw-free, v ≡ 0: G − E factorable iff E is not a claw or a triangle", clfree_3edge),
    thm("gamma", "2-connected claw-free: γ ≤ ⌈v/3⌉ (⌊v/3⌋ if v ≡ 1, not a cycle) and γ = γ_i", gamma),
    thm("gamma-lambda", "γ ≤ v − 2λ", gamma_lambda),
    thm("Ham", "cubic Hamiltonian, v ≡ 1: a claw Y with G − Y factorable", ham),
    thm("lambda-e", "connected: λ_e = ⌊e/2⌋", lambda_e_thm),
    thm("inducedmatching", "λ(G) equals the induced matching number of L(G), with packings mapped both ways", induced_matching),
    thm("edge3packing", "L(G) connected with eb ≤ 2, e ≡ 0: an edge 3-factor", edge3packing),
    thm("edge-chain", "edge-chain: L(G) has at most two end-blocks", edge_chain),
    thm("edge3-avoid", "edge-chain, e ≡ 0, G − Lv edge 2-connected: an edge 3-factor with no part containing L", edge3_avoid),
    thm("edge3-contain", "edge 3-connected, e ≡ 0: an edge 3-factor with a part containing L", edge3_contain),
    open("Pr3con", "cubic 3-connected: λ = ⌊v/3⌋?", pr3con),
    open("problem-v1mod3", "cubic 3-connected, v ≡ 1: γ ≤ ⌊v/3⌋?", problem_v1mod3),
    open("3conclawfreePi", "3-connected claw-free, v ≡ 0 mod 4: a P4-factor?", conj_pi),
    open("inducedLpacking", "3-connected claw-free, v ≡ 0 mod 4: a maximum induced Λ-packing of L(G) has v/4 members?", conj_induced),
];

// ---- hypotheses

fn clawfree_k(g: &Graph, k: usize) -> Hyp {
    if g.order() < 3 {
        return Err(format!("only {} vertices", g.order()));
    }
    if !g.is_claw_free() {
        return Err("graph has a claw".into());
    }
    if !is_k_connected(g, k) {
        return Err(format!("not {k}-connected"));
    }
    Ok(format!("{k}-connected claw-free"))
}

fn residue(g: &Graph, r: &[usize], modulus: usize) -> Hyp {
    let v = g.order();
    if r.contains(&(v % modulus)) {
        Ok(format!("v = {v} ≡ {} mod {modulus}", v % modulus))
    } else {
        Err(format!("v = {v} ≡ {} mod {modulus}", v % modulus))
    }
}

fn all(parts: &[Hyp]) -> Hyp {
    let mut ok = Vec::new();
    for p in parts {
        match p {
            Ok(s) => ok.push(s.clone()),
            Err(e) => return Err(e.clone()),
        }
    }
    Ok(ok.join("; "))
}

fn cubic_k(g: &Graph, k: usize) -> Hyp {
    if g.is_empty() || !g.is_regular(3) {
        return Err("not cubic".into());
    }
    if k > 0 && !is_k_connected(g, k) {
        return Err(format!("not {k}-connected"));
    }
    Ok(if k > 0 { format!("cubic {k}-connected") } else { "cubic".into() })
}

fn delta_2con(g: &Graph) -> Hyp {
    if !is_delta_graph(g) {
        return Err("not a Δ-graph".into());
    }
    if !is_k_connected(g, 2) {
        return Err("not 2-connected".into());
    }
    Ok("2-connected Δ-graph".into())
}

// ---- quantifier expansion

fn edges(g: &Graph, x: &Extras) -> Vec<Edge> {
    if x.edges.is_empty() {
        g.edges().collect()
    } else {
        x.edges.clone()
    }
}

fn vertices(g: &Graph, x: &Extras) -> Vec<VertexId> {
    if x.vertices.is_empty() {
        g.vertices().collect()
    } else {
        x.vertices.clone()
    }
}

fn paths(g: &Graph, x: &Extras) -> Vec<Path3> {
    if x.paths.is_empty() {
        paths3(g)
    } else {
        x.paths.clone()
    }
}

fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Copy>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

fn edge_sets(g: &Graph, x: &Extras, k: usize) -> Vec<Vec<Edge>> {
    if x.edges.len() == k {
        vec![x.edges.clone()]
    } else {
        subsets(&g.edges().collect::<Vec<_>>(), k)
    }
}

// ---- runners

fn oracle_text(r: &Result<bool>) -> String {
    match r {
        Ok(true) => "oracle: conclusion holds".into(),
        Ok(false) => "oracle: conclusion fails".into(),
        Err(e) => format!("oracle: {e}"),
    }
}

/// Every item gets a certificate from the constructive path; a failure is
/// re-checked by the oracle before it is labelled.
fn existence<Q: Serialize>(
    r: VerdictReport,
    items: &[Q],
    construct: impl Fn(&Q) -> Result<Value>,
    verify: impl Fn(&Q) -> Result<bool>,
) -> VerdictReport {
    let mut certs = Vec::new();
    for q in items {
        match construct(q) {
            Ok(w) => {
                if certs.len() < 3 {
                    certs.push(w);
                }
            }
            Err(e) => {
                let truth = verify(q);
                let status = match truth {
                    Ok(false) => Status::CounterexampleCandidate,
                    _ => Status::AlgorithmBugCandidate,
                };
                let detail = format!("constructive check failed: {e}; {}", oracle_text(&truth));
                return r
                    .conclude(false, detail, status)
                    .with_witness(json!({ "item": q, "error": e.to_string() }));
            }
        }
    }
    r.conclude(true, format!("{} cases certified", items.len()), Status::Confirmed)
        .with_witness(json!({ "checked": items.len(), "certificates": certs }))
}

/// Every item is decided by the oracle alone.
fn by_oracle<Q: Serialize>(
    r: VerdictReport,
    items: &[Q],
    open: bool,
    holds: impl Fn(&Q) -> Result<bool>,
) -> VerdictReport {
    for q in items {
        match holds(q) {
            Ok(true) => {}
            Ok(false) => {
                return r
                    .conclude(false, "oracle: conclusion fails", Status::CounterexampleCandidate)
                    .with_witness(json!({ "item": q }))
            }
            Err(Error::OracleCap { order, cap }) => return r.skipped(format!("{order} vertices above cap {cap}")),
            Err(e) => return r.errored(e.to_string()),
        }
    }
    let r = r
        .conclude(true, format!("{} cases checked by the oracle", items.len()), Status::Confirmed)
        .with_witness(json!({ "checked": items.len() }));
    if open {
        none_falsifying(r)
    } else {
        r
    }
}

fn none_falsifying(mut r: VerdictReport) -> VerdictReport {
    if r.status == Status::Confirmed {
        r.status = Status::NoneFalsifying;
        if let Some(c) = r.conclusion.as_mut() {
            c.detail = format!("searched 1 instance, none falsifying ({})", c.detail);
        }
    }
    r
}

/// A yes/no prediction compared with the oracle on every item.
fn decision<Q: Serialize>(
    r: VerdictReport,
    items: &[Q],
    predict: impl Fn(&Q) -> Result<(bool, Value)>,
    truth: impl Fn(&Q) -> Result<bool>,
) -> VerdictReport {
    let (mut yes, mut no) = (0usize, 0usize);
    for q in items {
        let (p, class) = match predict(q) {
            Ok(p) => p,
            Err(e) => return r.errored(format!("prediction failed: {e}")).with_witness(json!({ "item": q })),
        };
        match truth(q) {
            Ok(t) if t == p => {
                if t {
                    yes += 1
                } else {
                    no += 1
                }
            }
            Ok(t) => {
                let detail = format!("predicted {p}, oracle says {t}");
                return r
                    .conclude(false, detail, Status::CounterexampleCandidate)
                    .with_witness(json!({ "item": q, "class": class }));
            }
            Err(Error::OracleCap { order, cap }) => return r.skipped(format!("{order} vertices above cap {cap}")),
            Err(e) => return r.errored(e.to_string()),
        }
    }
    r.conclude(true, format!("{} cases agree ({yes} factorable, {no} not)", items.len()), Status::Confirmed)
        .with_witness(json!({ "checked": items.len(), "factorable": yes, "not_factorable": no }))
}

fn start(r: VerdictReport, h: Hyp) -> std::result::Result<VerdictReport, VerdictReport> {
    match h {
        Ok(d) => {
            let mut r = r;
            r.hypothesis_holds(d);
            Ok(r)
        }
        Err(d) => Err(r.unmet(d)),
    }
}

macro_rules! hyp {
    ($r:expr, $h:expr) => {
        match start($r, $h) {
            Ok(r) => r,
            Err(r) => return r,
        }
    };
}

fn check_factor(p: &LambdaPacking, g: &Graph, c: &PackingConstraint) -> Result<Value> {
    p.check_factor(g, c)?;
    Ok(json!(p))
}

// ---- counting statements

fn km(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, cubic_k(g, 0));
    let bound = g.order().div_ceil(4);
    match x.oracle.lambda(g) {
        Ok((l, p)) => r
            .conclude(l >= bound, format!("λ = {l}, ⌈v/4⌉ = {bound}"), Status::CounterexampleCandidate)
            .with_margin(l as i64 - bound as i64)
            .with_witness(json!({ "lambda": l, "packing": p })),
        Err(Error::OracleCap { order, cap }) => r.skipped(format!("{order} vertices above cap {cap}")),
        Err(e) => r.errored(e.to_string()),
    }
}

/// Compares a packer count against the oracle when cross-checking.
fn cross_check(r: VerdictReport, x: &Extras, g: &Graph, count: usize) -> std::result::Result<VerdictReport, VerdictReport> {
    if !x.cross_check {
        return Ok(r);
    }
    match x.oracle.lambda(g) {
        Ok((l, _)) if l == count => Ok(r),
        Ok((l, _)) => Err(r.conclude(false, format!("packer found {count}, oracle λ = {l}"), Status::AlgorithmBugCandidate)),
        Err(_) => Ok(r),
    }
}

fn two_con_clfr(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, clawfree_k(g, 2));
    let v = g.order();
    let construct = |_: &()| -> Result<Value> {
        let p = pack_2connected_clawfree(g)?;
        p.validate(g)?;
        if p.len() != v / 3 {
            return Err(Error::invariant(format!("packing has {} paths, expected {}", p.len(), v / 3)));
        }
        let covered = p.vertices();
        let left: Vec<VertexId> = g.vertices().filter(|y| !covered.contains(y)).collect();
        let residue = match left.as_slice() {
            [] => json!("factor"),
            [a] => json!({ "minus_vertex": a }),
            [a, b] if g.has_edge(*a, *b) => json!({ "minus_edge": Edge::new(*a, *b) }),
            [a, _] => {
                let (b, f) = factor_minus_edge_pair(g, *a)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::invariant("no edge realizes the residue"))?;
                f.check_factor(g, &PackingConstraint::without_vertices([*a, b]))?;
                json!({ "minus_edge": Edge::new(*a, b), "factor": f })
            }
            _ => return Err(Error::invariant("more than two vertices uncovered")),
        };
        Ok(json!({ "packing": p, "residue": residue }))
    };
    let verify = |_: &()| -> Result<bool> {
        let (l, _) = x.oracle.lambda(g)?;
        if l != v / 3 {
            return Ok(false);
        }
        if v % 3 != 2 {
            return Ok(true);
        }
        for e in g.edges() {
            if factor_without(&x.oracle, g, &e.endpoints())? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let r = match cross_check(r, x, g, v / 3) {
        Ok(r) => r,
        Err(r) => return r,
    };
    existence(r, &[()], construct, verify)
}

fn eb_clfr(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let eb = match block_decomposition(g) {
        Ok(d) => d.eb(),
        Err(e) => return r.unmet(e.to_string()),
    };
    let h = all(&[clawfree_k(g, 1), if eb >= 2 { Ok(format!("eb = {eb}")) } else { Err(format!("eb = {eb} < 2")) }]);
    let r = hyp!(r, h);
    let bound = (g.order() + 2 - eb) / 3;
    let out = match pack_clawfree(g) {
        Ok(o) => o,
        Err(e) => {
            let truth = x.oracle.lambda(g).map(|(l, _)| l >= bound);
            let status = if truth == Ok(false) { Status::CounterexampleCandidate } else { Status::AlgorithmBugCandidate };
            return r.conclude(false, format!("packer failed: {e}; {}", oracle_text(&truth)), status);
        }
    };
    if let Err(e) = out.packing.validate(g) {
        return r.errored(e.to_string());
    }
    let got = out.packing.len();
    let r = match cross_check(r, x, g, got) {
        Ok(r) => r,
        Err(r) => return r,
    };
    if got >= bound {
        return r
            .conclude(true, format!("{got} paths, bound {bound}"), Status::Confirmed)
            .with_margin(got as i64 - bound as i64)
            .with_witness(json!({ "packing": out.packing, "eb": eb, "bound": bound }));
    }
    let truth = x.oracle.lambda(g).map(|(l, _)| l >= bound);
    let status = if truth == Ok(false) { Status::CounterexampleCandidate } else { Status::AlgorithmBugCandidate };
    r.conclude(false, format!("{got} paths below bound {bound}; {}", oracle_text(&truth)), status)
        .with_margin(got as i64 - bound as i64)
}

fn two_end_blocks(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let eb = match block_decomposition(g) {
        Ok(d) => d.eb(),
        Err(e) => return r.unmet(e.to_string()),
    };
    let h = all(&[clawfree_k(g, 1), if eb == 2 { Ok("two end-blocks".into()) } else { Err(format!("eb = {eb}")) }]);
    let r = hyp!(r, h);
    let target = g.order() / 3;
    let r = match cross_check(r, x, g, target) {
        Ok(r) => r,
        Err(r) => return r,
    };
    existence(
        r,
        &[()],
        |_| {
            let p = pack_chain(g)?;
            p.validate(g)?;
            if p.len() != target {
                return Err(Error::invariant(format!("{} paths, expected {target}", p.len())));
            }
            Ok(json!(p))
        },
        |_| Ok(x.oracle.lambda(g)?.0 == target),
    )
}

fn family_s(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, if is_family_s(g) { Ok("member of S".into()) } else { Err("not in S".into()) });
    match x.oracle.factor(g, &PackingConstraint::none()) {
        Ok(None) => {
            let lambda = pack_clawfree(g).map(|o| o.packing.len()).ok();
            r.conclude(true, "no Λ-factor", Status::Confirmed).with_witness(json!({ "packer_lambda": lambda }))
        }
        Ok(Some(p)) => r
            .conclude(false, "oracle found a Λ-factor", Status::CounterexampleCandidate)
            .with_witness(json!(p)),
        Err(Error::OracleCap { order, cap }) => r.skipped(format!("{order} vertices above cap {cap}")),
        Err(e) => r.errored(e.to_string()),
    }
}

// ---- factor statements

fn avoid_e(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 2), residue(g, &[0], 3)]));
    existence(
        r,
        &edges(g, x),
        |&e| check_factor(&factor_avoiding_edge(g, e)?, g, &PackingConstraint::without_edges([e])),
        |&e| has_factor(&x.oracle, g, &PackingConstraint::without_edges([e])),
    )
}

fn pk_factors(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 2), residue(g, &[1, 2], 3)]));
    let k = g.order() % 3;
    let path_ok = |p: &[VertexId], len: usize| p.len() == len && p.windows(2).all(|w| g.has_edge(w[0], w[1]));
    existence(
        r,
        &[()],
        |_| {
            let f = factor_plus_pk(g)?;
            if !path_ok(&f.short_path, k) || !path_ok(&f.long_path, k + 3) {
                return Err(Error::invariant("returned paths are not paths of the right order"));
            }
            f.short_factor.check_factor(g, &PackingConstraint::without_vertices(f.short_path.iter().copied()))?;
            f.long_factor.check_factor(g, &PackingConstraint::without_vertices(f.long_path.iter().copied()))?;
            Ok(json!(f))
        },
        |_| {
            let mut found = [false, false];
            for (i, len) in [k, k + 3].into_iter().enumerate() {
                for p in simple_paths(g, len) {
                    if factor_without(&x.oracle, g, &p)? {
                        found[i] = true;
                        break;
                    }
                }
            }
            Ok(found == [true, true])
        },
    )
}

fn g_minus_y(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let not_cycle = if g.is_cycle() { Err("graph is a cycle".to_string()) } else { Ok("not a cycle".to_string()) };
    let r = hyp!(r, all(&[clawfree_k(g, 2), residue(g, &[1], 3), not_cycle]));
    existence(
        r,
        &[()],
        |_| {
            let found = factor_minus_claw(g)?;
            if found.len() < 2 {
                return Err(Error::invariant(format!("{} claws found", found.len())));
            }
            for (y, p) in &found {
                let vs = y.vertices();
                if !vs[1..].iter().all(|&l| g.has_edge(y.center, l)) {
                    return Err(Error::invariant("returned claw is not a subgraph"));
                }
                p.check_factor(g, &PackingConstraint::without_vertices(vs))?;
            }
            Ok(json!(found))
        },
        |_| {
            let mut n = 0;
            for y in claws(g) {
                if factor_without(&x.oracle, g, &y.vertices())? {
                    n += 1;
                    if n == 2 {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        },
    )
}

fn minus_x(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 2), residue(g, &[1], 3)]));
    existence(
        r,
        &vertices(g, x),
        |&v| check_factor(&factor_minus_vertex(g, v)?, g, &PackingConstraint::without_vertices([v])),
        |&v| factor_without(&x.oracle, g, &[v]),
    )
}

fn minus_xb(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 2), residue(g, &[2], 3)]));
    let qualifies = |v: VertexId, b: VertexId| g.delete_vertices(&[v, b]).is_connected();
    existence(
        r,
        &vertices(g, x),
        |&v| {
            let found = factor_minus_edge_pair(g, v)?;
            let distinct: std::collections::BTreeSet<VertexId> = found.iter().map(|f| f.0).collect();
            if distinct.len() < 2 {
                return Err(Error::invariant(format!("{} edges xb found at {v}", distinct.len())));
            }
            for (b, p) in &found {
                if !g.has_edge(v, *b) || !qualifies(v, *b) {
                    return Err(Error::invariant("returned b is not a neighbour leaving a connected graph"));
                }
                p.check_factor(g, &PackingConstraint::without_vertices([v, *b]))?;
            }
            Ok(json!({ "x": v, "found": found }))
        },
        |&v| {
            let mut n = 0;
            for &b in g.nbrs(v) {
                if qualifies(v, b) && factor_without(&x.oracle, g, &[v, b])? {
                    n += 1;
                }
            }
            Ok(n >= 2)
        },
    )
}

fn minus_xy(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 3), residue(g, &[2], 3)]));
    existence(
        r,
        &edges(g, x),
        |&e| check_factor(&factor_minus_adjacent_pair(g, e)?, g, &PackingConstraint::without_vertices(e.endpoints())),
        |&e| factor_without(&x.oracle, g, &e.endpoints()),
    )
}

fn minus_l_at_edge(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 3), residue(g, &[0], 3)]));
    let items: Vec<(VertexId, VertexId)> = edges(g, x).into_iter().flat_map(|e| [(e.u(), e.v()), (e.v(), e.u())]).collect();
    let qualifies = |l: &Path3| g.delete_vertices(l).is_connected();
    existence(
        r,
        &items,
        |&(a, b)| {
            let found = factor_minus_path_through_edge(g, a, b)?;
            if found.len() < 2 {
                return Err(Error::invariant(format!("{} paths found", found.len())));
            }
            for (l, p) in &found {
                if l[1] != b || !l.contains(&a) || !g.has_edge(l[0], l[1]) || !g.has_edge(l[1], l[2]) || !qualifies(l) {
                    return Err(Error::invariant("returned path does not meet the conditions"));
                }
                p.check_factor(g, &PackingConstraint::without_vertices(l.iter().copied()))?;
            }
            Ok(json!({ "edge": [a, b], "found": found }))
        },
        |&(a, b)| {
            let mut n = 0;
            for &c in g.nbrs(b) {
                let l = [a, b, c];
                if c != a && qualifies(&l) && factor_without(&x.oracle, g, &l)? {
                    n += 1;
                }
            }
            Ok(n >= 2)
        },
    )
}

fn minus_l(g: &Graph, x: &Extras, r: VerdictReport, items: Vec<Path3>) -> VerdictReport {
    existence(
        r,
        &items,
        |&l| check_factor(&factor_containing_path(g, l)?, g, &PackingConstraint::without_vertices(l)),
        |&l| factor_without(&x.oracle, g, &l),
    )
}

fn minus_l_deg3(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 3), residue(g, &[0], 3)]));
    let items: Vec<Path3> = paths(g, x).into_iter().filter(|l| g.degree(l[1]) == 3).collect();
    if items.is_empty() {
        return r.unmet("no 3-vertex path has a degree-3 center");
    }
    minus_l(g, x, r, items)
}

fn minus_l_4con(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 4), residue(g, &[0], 3)]));
    let items = paths(g, x);
    minus_l(g, x, r, items)
}

fn contain_e(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 3), residue(g, &[0], 3)]));
    existence(
        r,
        &edges(g, x),
        |&e| check_factor(&factor_containing_edge(g, e)?, g, &PackingConstraint::containing_edge(e)),
        |&e| has_factor(&x.oracle, g, &PackingConstraint::containing_edge(e)),
    )
}

fn minus_xe(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 3), residue(g, &[1], 3)]));
    let es = edges(g, x);
    let items: Vec<(VertexId, Edge)> = vertices(g, x).into_iter().flat_map(|v| es.iter().map(move |&e| (v, e))).collect();
    let constraint = |v: VertexId, e: Edge| {
        let mut c = PackingConstraint::without_vertices([v]);
        if !e.contains(v) {
            c.forbidden_edges.insert(e);
        }
        c
    };
    existence(
        r,
        &items,
        |&(v, e)| check_factor(&factor_minus_vertex_and_edge(g, v, e)?, g, &constraint(v, e)),
        |&(v, e)| has_factor(&x.oracle, g, &constraint(v, e)),
    )
}

// ---- Δ-graphs

fn is_triangle(g: &Graph, l: &Path3) -> bool {
    g.has_edge(l[0], l[2])
}

fn delta_path(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, delta_2con(g));
    existence(
        r,
        &paths(g, x),
        |&l| {
            let p = delta_factor_through_path(g, l)?;
            p.check_factor(g, &PackingConstraint::containing_path(l))?;
            let want = is_triangle(g, &l);
            if !p.paths.iter().all(|q| is_triangle(g, q) == want) {
                return Err(Error::invariant("components do not match the triangle condition"));
            }
            Ok(json!({ "path": l, "factor": p }))
        },
        |&l| {
            let want = is_triangle(g, &l);
            Ok(filtered_factor(g, x.oracle.cap, &[l], |q| is_triangle(g, q) == want)?.is_some())
        },
    )
}

fn delta_path_triangle(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, delta_2con(g));
    let items: Vec<Path3> = paths(g, x).into_iter().filter(|l| !is_triangle(g, l)).collect();
    existence(
        r,
        &items,
        |&l| {
            let p = delta_factor_through_path_with_triangle(g, l)?;
            p.check_factor(g, &PackingConstraint::containing_path(l))?;
            if !contains_path(&p, &l) || !p.paths.iter().any(|q| is_triangle(g, q)) {
                return Err(Error::invariant("no triangle component"));
            }
            Ok(json!({ "path": l, "factor": p }))
        },
        |&l| {
            for t in paths3(g).into_iter().filter(|t| is_triangle(g, t) && t[1] < t[0]) {
                if t.iter().any(|v| l.contains(v)) {
                    continue;
                }
                if filtered_factor(g, x.oracle.cap, &[l, t], |_| true)?.is_some() {
                    return Ok(true);
                }
            }
            Ok(false)
        },
    )
}

fn delta_3edge(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, delta_2con(g));
    decision(
        r,
        &edge_sets(g, x, 3),
        |es| delta_three_edge_test(g, es).map(|v| (v.has_factor, json!(v.class))),
        |es| has_factor(&x.oracle, g, &PackingConstraint::without_edges(es.iter().copied())),
    )
}

fn delta_2edge(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let h = if !is_delta_graph(g) {
        Err("not a Δ-graph".to_string())
    } else if !g.is_connected() {
        Err("not connected".to_string())
    } else {
        Ok("connected Δ-graph".to_string())
    };
    let r = hyp!(r, h);
    existence(
        r,
        &edge_sets(g, x, 2),
        |es| {
            let c = PackingConstraint::without_edges(es.iter().copied());
            check_factor(&delta_two_edge_factor(g, es)?, g, &c)
        },
        |es| has_factor(&x.oracle, g, &PackingConstraint::without_edges(es.iter().copied())),
    )
}

/// Is the subgraph formed by three edges a claw or a triangle?
fn claw_or_triangle(es: &[Edge]) -> bool {
    let mut ends: Vec<VertexId> = es.iter().flat_map(|e| e.endpoints()).collect();
    ends.sort();
    ends.dedup();
    match ends.len() {
        3 => true,
        4 => ends.iter().any(|&v| es.iter().all(|e| e.contains(v))),
        _ => false,
    }
}

fn clfree_3edge(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 3), residue(g, &[0], 3)]));
    decision(
        r,
        &edge_sets(g, x, 3),
        |es| Ok((!claw_or_triangle(es), json!(if claw_or_triangle(es) { "claw-or-triangle" } else { "other" }))),
        |es| has_factor(&x.oracle, g, &PackingConstraint::without_edges(es.iter().copied())),
    )
}

// ---- domination

fn gamma(g: &Graph, x: &Extras, _: VerdictReport) -> VerdictReport {
    check_gamma_bounds_capped(g, x.oracle.domination_cap)
}

fn gamma_lambda(g: &Graph, x: &Extras, _: VerdictReport) -> VerdictReport {
    check_gamma_vs_lambda(g, &x.oracle)
}

fn ham(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[cubic_k(g, 0), residue(g, &[1], 3)]));
    let cycle = match &x.cycle {
        Some(c) => Some(c.clone()),
        None if g.order() <= 64 => hamiltonian_cycle(g),
        None => None,
    };
    let Some(cycle) = cycle else {
        return r.unmet("no Hamiltonian cycle");
    };
    match check_ham_claw_with(g, &cycle, &x.oracle) {
        Ok(rep) => rep,
        Err(e) => r.unmet(e.to_string()),
    }
}

// ---- line graphs

fn lambda_e_thm(g: &Graph, _: &Extras, r: VerdictReport) -> VerdictReport {
    let h = if g.is_connected() && g.size() > 0 { Ok("connected".to_string()) } else { Err("not connected or no edges".to_string()) };
    let r = hyp!(r, h);
    let target = g.size() / 2;
    let (m, pairs) = match (lambda_e(g), pair_adjacent_edges(g)) {
        (Ok(m), Ok(p)) => (m, p),
        (Err(e), _) | (_, Err(e)) => return r.conclude(false, e.to_string(), Status::AlgorithmBugCandidate),
    };
    let ok = m.count == target && pairs.len() == target && m.packing.validate(g, 2).is_ok();
    r.conclude(ok, format!("matching in L(G): {}, pairing: {}, ⌊e/2⌋ = {target}", m.count, pairs.len()), Status::AlgorithmBugCandidate)
        .with_witness(json!({ "pairs": pairs }))
}

fn induced_matching(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let mut r = r;
    r.hypothesis_holds("any graph");
    let lg = LineGraph::new(g);
    let (lambda, p) = match x.oracle.lambda(g) {
        Ok(v) => v,
        Err(Error::OracleCap { order, cap }) => return r.skipped(format!("{order} vertices above cap {cap}")),
        Err(e) => return r.errored(e.to_string()),
    };
    let (im, m) = match x.oracle.induced_matching(&lg.graph) {
        Ok(v) => v,
        Err(Error::OracleCap { order, cap }) => return r.skipped(format!("L(G) has {order} vertices above cap {cap}")),
        Err(e) => return r.errored(e.to_string()),
    };
    let forward = lambda_packing_to_induced_matching(g, &p);
    let back = induced_matching_to_lambda_packing(g, &m);
    let round = forward
        .as_ref()
        .ok()
        .and_then(|f| induced_matching_to_lambda_packing(g, f).ok())
        .map(|q| q.canonical() == p.canonical())
        .unwrap_or(false);
    let ok = lambda == im && forward.map(|f| f.len() == lambda).unwrap_or(false) && back.map(|b| b.len() == im).unwrap_or(false) && round;
    r.conclude(ok, format!("λ(G) = {lambda}, induced matching of L(G) = {im}, round trip {round}"), Status::AlgorithmBugCandidate)
}

fn edge3_hyp(g: &Graph) -> Hyp {
    if g.size() == 0 || !g.size().is_multiple_of(3) {
        return Err(format!("e = {} is not a positive multiple of 3", g.size()));
    }
    let lg = LineGraph::new(g);
    if !lg.graph.is_connected() {
        return Err("L(G) is not connected".into());
    }
    let eb = block_decomposition(&lg.graph).map(|d| d.eb()).unwrap_or(usize::MAX);
    if eb > 2 {
        return Err(format!("L(G) has {eb} end-blocks"));
    }
    Ok(format!("e = {} ≡ 0, L(G) connected with eb = {eb}", g.size()))
}

fn edge3packing(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, edge3_hyp(g));
    existence(
        r,
        &[()],
        |_| {
            let q = edge_three_factor(g)?;
            q.validate(g, 3)?;
            Ok(json!(q))
        },
        |_| has_factor(&x.oracle, &LineGraph::new(g).graph, &PackingConstraint::none()),
    )
}

fn edge_chain(g: &Graph, _: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, if is_edge_chain(g) { Ok("edge-chain".to_string()) } else { Err("not an edge-chain".to_string()) });
    let lg = LineGraph::new(g);
    match block_decomposition(&lg.graph) {
        Ok(d) => r.conclude(d.eb() <= 2, format!("L(G) has {} end-blocks", d.eb()), Status::CounterexampleCandidate),
        Err(e) => r.conclude(false, format!("L(G): {e}"), Status::CounterexampleCandidate),
    }
}

fn line_paths(g: &Graph, x: &Extras) -> Vec<Path3> {
    paths(g, x)
}

/// The L(G)-vertices of the two edges of `l`.
fn link(lg: &LineGraph, l: &Path3) -> [VertexId; 2] {
    [lg.vertex_of[&Edge::new(l[0], l[1])], lg.vertex_of[&Edge::new(l[1], l[2])]]
}

fn edge3_avoid(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let core = g.delete_vertices(&g.leaves());
    let core = core.delete_vertices(&core.vertices().filter(|&v| core.degree(v) == 0).collect::<Vec<_>>());
    let lg = LineGraph::new(g);
    let h = all(&[
        if is_edge_chain(g) { Ok("edge-chain".into()) } else { Err("not an edge-chain".into()) },
        edge3_hyp(g),
        if is_k_edge_connected(&core, 2) { Ok("G − Lv edge 2-connected".into()) } else { Err("G − Lv not edge 2-connected".into()) },
        if is_k_connected(&lg.graph, 2) { Ok("L(G) 2-connected".into()) } else { Err("L(G) not 2-connected".into()) },
    ]);
    let r = hyp!(r, h);
    existence(
        r,
        &line_paths(g, x),
        |l| {
            let q = edge_three_factor_constrained(g, l, PathMode::Avoiding)?;
            Ok(json!({ "path": l, "factor": q }))
        },
        |l| {
            let [a, b] = link(&lg, l);
            Ok(filtered_factor(&lg.graph, x.oracle.cap, &[], |q| !(q.contains(&a) && q.contains(&b)))?.is_some())
        },
    )
}

fn edge3_contain(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let h = all(&[
        edge3_hyp(g),
        if is_k_edge_connected(g, 3) { Ok("edge 3-connected".into()) } else { Err("not edge 3-connected".into()) },
    ]);
    let r = hyp!(r, h);
    let lg = LineGraph::new(g);
    existence(
        r,
        &line_paths(g, x),
        |l| {
            let q = edge_three_factor_constrained(g, l, PathMode::Containing)?;
            Ok(json!({ "path": l, "factor": q }))
        },
        |l| {
            let [a, b] = link(&lg, l);
            has_factor(&x.oracle, &lg.graph, &PackingConstraint::containing_edge(Edge::new(a, b)))
        },
    )
}

// ---- open problems

fn pr3con(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, cubic_k(g, 3));
    by_oracle(r, &[()], true, |_| Ok(x.oracle.lambda(g)?.0 == g.order() / 3))
}

fn problem_v1mod3(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[cubic_k(g, 3), residue(g, &[1], 3)]));
    by_oracle(r, &[()], true, |_| Ok(x.oracle.domination(g)?.0 <= g.order() / 3))
}

fn conj_pi(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 3), residue(g, &[0], 4)]));
    by_oracle(r, &[()], true, |_| Ok(p4_factor(g, x.oracle.cap)?.is_some()))
}

fn conj_induced(g: &Graph, x: &Extras, r: VerdictReport) -> VerdictReport {
    let r = hyp!(r, all(&[clawfree_k(g, 3), residue(g, &[0], 4)]));
    let lg = LineGraph::new(g);
    by_oracle(r, &[()], true, |_| Ok(max_union_induced_packing(&lg.graph, x.oracle.cap)? == g.order() / 4))
}
