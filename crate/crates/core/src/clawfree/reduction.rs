//! End-chain reduction and the general claw-free packer.

use std::collections::BTreeSet;

use serde::Serialize;

use super::chain::{certify, pack_chain};
use crate::decomposition::{block_decomposition, is_chain};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::packing::LambdaPacking;

/// One trimmed piece `D_i = ⌊C⌋` with its Λ-factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trimmed {
    /// The end-chain `C` that was trimmed.
    pub chain: BTreeSet<VertexId>,
    pub boundary: VertexId,
    /// `V(⌊C⌋)`.
    pub vertices: BTreeSet<VertexId>,
    pub factor: LambdaPacking,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualKind {
    Chain,
    Cactus,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionTrace {
    pub trimmed: Vec<Trimmed>,
    #[serde(skip)]
    pub residual: Graph,
    pub residual_kind: ResidualKind,
}

impl ReductionTrace {
    /// `Σ v(D_i) / 3`.
    pub fn trimmed_paths(&self) -> usize {
        self.trimmed.iter().map(|t| t.factor.len()).sum()
    }
}

/// How cactus residuals are packed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CactusMode {
    /// Branch on how the lowest leaf is used; exact, exponential in the
    /// number of leaves.
    #[default]
    Exact,
    /// Repeatedly drop a leaf; meets `⌊(v − eb + 2)/3⌋`.
    Bound,
}

#[derive(Clone, Debug, Serialize)]
pub struct PackOutcome {
    pub packing: LambdaPacking,
    pub trace: ReductionTrace,
    /// `Σ v(D_i)/3` plus `⌊v/3⌋` per chain residual component and
    /// `⌊(v − eb + 2)/3⌋` per cactus residual component.
    pub lower_bound: usize,
    /// The packing is known to be maximum.
    pub exact: bool,
}

/// `⌊C⌋` of an end-chain `chain` of `host` with boundary vertex `b`, and a
/// Λ-factor of it.
pub fn trim_end_chain(host: &Graph, chain: &BTreeSet<VertexId>, b: VertexId) -> Result<Trimmed> {
    if !chain.contains(&b) {
        return Err(Error::UnknownVertex(b));
    }
    if chain.len() < 3 {
        return Err(Error::pre("end-chain has fewer than three vertices"));
    }
    let c = host.induced_subgraph(chain);
    if !c.is_connected() || !c.is_claw_free() {
        return Err(Error::pre("end-chain must be connected and claw-free"));
    }
    let full = |h: &Graph| -> Result<Option<LambdaPacking>> {
        let p = if is_chain(h) { pack_chain(h).or_else(|_| pack_components(h))? } else { pack_components(h)? };
        Ok((3 * p.len() == h.order()).then_some(p))
    };
    let done = |keep: BTreeSet<VertexId>, factor: LambdaPacking| Trimmed {
        chain: chain.clone(),
        boundary: b,
        vertices: keep,
        factor,
    };
    match chain.len() % 3 {
        0 => {
            let p = full(&c)?.ok_or_else(|| Error::invariant("end-chain has no Λ-factor"))?;
            Ok(done(chain.clone(), p))
        }
        1 => {
            let keep: BTreeSet<VertexId> = chain.iter().copied().filter(|&x| x != b).collect();
            let p = full(&c.induced_subgraph(&keep))?
                .ok_or_else(|| Error::invariant("end-chain minus its boundary has no Λ-factor"))?;
            Ok(done(keep, p))
        }
        _ => {
            let nbrs: Vec<VertexId> = c.nbrs(b).iter().copied().collect();
            let keep_of = |y: VertexId| -> BTreeSet<VertexId> {
                chain.iter().copied().filter(|&x| x != b && x != y).collect()
            };
            for &y in &nbrs {
                let h = c.induced_subgraph(&keep_of(y));
                if is_chain(&h) {
                    if let Ok(p) = pack_chain(&h) {
                        if 3 * p.len() == h.order() {
                            return Ok(done(keep_of(y), p));
                        }
                    }
                }
            }
            for &y in &nbrs {
                let h = c.induced_subgraph(&keep_of(y));
                if let Some(p) = full(&h)? {
                    return Ok(done(keep_of(y), p));
                }
            }
            Err(Error::invariant("chain2mod3 violated: no edge at the boundary leaves a factorable chain"))
        }
    }
}

/// Trims end-chains with at least three vertices until every component is
/// a chain or a cactus.
pub fn reduce(g: &Graph) -> Result<ReductionTrace> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !g.is_claw_free() {
        return Err(Error::pre("graph is not claw-free"));
    }
    let mut work = g.clone();
    let mut trimmed = Vec::new();
    'outer: loop {
        for comp in work.connected_components() {
            if comp.len() < 3 {
                continue;
            }
            let h = work.induced_subgraph(&comp);
            let d = block_decomposition(&h)?;
            if d.eb() <= 2 {
                continue;
            }
            let pick = d
                .end_chains
                .iter()
                .filter(|c| c.order() >= 3)
                .min_by_key(|c| c.vertices.iter().next().copied());
            if let Some(c) = pick {
                let t = trim_end_chain(&h, &c.vertices, c.boundary)?;
                work = work.delete_vertices(&t.vertices);
                trimmed.push(t);
                continue 'outer;
            }
        }
        break;
    }
    let residual_kind = if work.component_graphs().iter().all(|h| h.order() < 2 || is_chain(h)) {
        ResidualKind::Chain
    } else {
        ResidualKind::Cactus
    };
    Ok(ReductionTrace { trimmed, residual: work, residual_kind })
}

/// Reduction, then chain packing of chain residuals and (by `mode`) cactus
/// packing of the rest.
pub fn pack_clawfree_with(g: &Graph, mode: CactusMode) -> Result<PackOutcome> {
    let trace = reduce(g)?;
    let mut packing = LambdaPacking::default();
    for t in &trace.trimmed {
        packing.extend(t.factor.clone());
    }
    let mut lower_bound = trace.trimmed_paths();
    let mut exact = true;
    for h in trace.residual.component_graphs() {
        if h.order() < 3 {
            continue;
        }
        if is_chain(&h) {
            lower_bound += h.order() / 3;
            packing.extend(pack_chain(&h)?);
            continue;
        }
        let eb = block_decomposition(&h)?.eb();
        let bound = (h.order() + 2 - eb) / 3;
        lower_bound += bound;
        let p = match mode {
            CactusMode::Exact => cactus_exact(&h)?,
            CactusMode::Bound => {
                let p = cactus_bound(&h)?;
                if p.len() < h.order() / 3 {
                    exact = false;
                }
                p
            }
        };
        packing.extend(certify(&h, p, bound, "cactus packing")?);
    }
    let packing = certify(g, packing, lower_bound, "claw-free packing")?;
    if packing.len() == g.order() / 3 {
        exact = true;
    }
    Ok(PackOutcome { packing, trace, lower_bound, exact })
}

/// [`pack_clawfree_with`] in exact mode.
pub fn pack_clawfree(g: &Graph) -> Result<PackOutcome> {
    pack_clawfree_with(g, CactusMode::Exact)
}

/// Packs every component of a claw-free graph exactly.
pub fn pack_components(g: &Graph) -> Result<LambdaPacking> {
    let mut out = LambdaPacking::default();
    for h in g.component_graphs() {
        if h.order() >= 3 {
            out.extend(pack_clawfree(&h)?.packing);
        }
    }
    Ok(out)
}

fn lowest_leaf(k: &Graph) -> Result<VertexId> {
    k.leaves()
        .into_iter()
        .next()
        .ok_or_else(|| Error::invariant("cactus without a leaf"))
}

fn cactus_exact(k: &Graph) -> Result<LambdaPacking> {
    let ceiling = k.order() / 3;
    let leaf = lowest_leaf(k)?;
    let x = *k.nbrs(leaf).iter().next().expect("leaf has a neighbour");
    let mut best = pack_components(&k.delete_vertex(leaf))?;
    if best.len() == ceiling {
        return Ok(best);
    }
    for &w in k.nbrs(x) {
        if w == leaf {
            continue;
        }
        let p = LambdaPacking::new(vec![[leaf, x, w]]).union(pack_components(&k.delete_vertices(&[leaf, x, w]))?);
        if p.len() > best.len() {
            best = p;
            if best.len() == ceiling {
                break;
            }
        }
    }
    Ok(best)
}

fn cactus_bound(k: &Graph) -> Result<LambdaPacking> {
    let leaf = lowest_leaf(k)?;
    Ok(pack_clawfree_with(&k.delete_vertex(leaf), CactusMode::Bound)?.packing)
}
