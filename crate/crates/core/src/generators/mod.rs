//! Instance supply: the named families, seeded random graphs and exhaustive
//! enumeration of small connected claw-free graphs.

mod cubic;
mod enumerate;
mod families;
mod random;

use serde::{Deserialize, Serialize};

pub use cubic::{
    gen_delta, gen_random_cubic, gen_random_cubic_connected, gen_random_cubic_simple, CubicMultigraph, RETRY_CAP,
};
pub use enumerate::{canonical_form, connected_clawfree_graphs, MAX_ENUMERATION_ORDER};
pub use families::{
    family_s_violation, gen_cactus, gen_complete, gen_construction_h, gen_construction_q, gen_construction_r,
    gen_cycle, gen_family_s, gen_k4_union, gen_net, gen_path, gen_prism, is_family_s, CactusRecipe,
    ConstructionH, ConstructionQ, ConstructionR, FamilySCondition, FamilySRecipe,
};
pub use random::{
    gen_random_clawfree, gen_random_clawfree_connected, gen_random_connected, gen_random_family_s, random_family_s_recipe,
    ClawFreeMethod,
};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::io::to_graph6;

/// A family id with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "camelCase")]
pub enum FamilyRecipe {
    Net,
    Cactus(CactusRecipe),
    /// `F^Δ` of a random cubic multigraph on `n` vertices with edge
    /// connectivity at least `connectivity`, or of a given one.
    Delta {
        n: usize,
        #[serde(default)]
        connectivity: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default)]
        cubic: Option<CubicMultigraph>,
    },
    /// A given recipe, or a random one on `triangles` triangles.
    FamilyS {
        #[serde(default)]
        recipe: Option<FamilySRecipe>,
        #[serde(default)]
        triangles: usize,
        #[serde(default)]
        seed: u64,
    },
    ConstructionR { na: usize, nb: usize },
    ConstructionQ { na: usize, nb: usize },
    ConstructionH,
    CubicRandom {
        n: usize,
        #[serde(default)]
        connectivity: usize,
        #[serde(default)]
        seed: u64,
    },
    ClawfreeRandom {
        n: usize,
        #[serde(default)]
        connectivity: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default)]
        method: ClawFreeMethod,
    },
    Cycle { n: usize },
    Prism,
}

impl FamilyRecipe {
    pub fn id(&self) -> &'static str {
        match self {
            FamilyRecipe::Net => "net",
            FamilyRecipe::Cactus(_) => "cactus",
            FamilyRecipe::Delta { .. } => "delta",
            FamilyRecipe::FamilyS { .. } => "familyS",
            FamilyRecipe::ConstructionR { .. } => "constructionR",
            FamilyRecipe::ConstructionQ { .. } => "constructionQ",
            FamilyRecipe::ConstructionH => "constructionH",
            FamilyRecipe::CubicRandom { .. } => "cubicRandom",
            FamilyRecipe::ClawfreeRandom { .. } => "clawfreeRandom",
            FamilyRecipe::Cycle { .. } => "cycle",
            FamilyRecipe::Prism => "prism",
        }
    }

    /// The same recipe with its seed replaced, for families that take one.
    pub fn with_seed(&self, s: u64) -> Self {
        let mut r = self.clone();
        match &mut r {
            FamilyRecipe::Delta { seed, .. }
            | FamilyRecipe::FamilyS { seed, .. }
            | FamilyRecipe::CubicRandom { seed, .. }
            | FamilyRecipe::ClawfreeRandom { seed, .. } => *seed = s,
            _ => {}
        }
        r
    }
}

/// A generated graph plus its manifest entry.
#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub family: String,
    pub recipe: FamilyRecipe,
    pub graph6: String,
    pub order: usize,
    pub distinguished_vertices: Vec<VertexId>,
    pub distinguished_edges: Vec<Edge>,
    /// For `R` and `Q`: whether the residue hypothesis of the negative claim
    /// holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim_applies: Option<bool>,
    #[serde(skip)]
    pub graph: Graph,
}

impl Instance {
    fn plain(recipe: &FamilyRecipe, graph: Graph) -> Self {
        Instance {
            family: recipe.id().to_string(),
            recipe: recipe.clone(),
            graph6: to_graph6(&graph),
            order: graph.order(),
            distinguished_vertices: vec![],
            distinguished_edges: vec![],
            claim_applies: None,
            graph,
        }
    }
}

/// Builds and validates one instance.
pub fn generate(recipe: &FamilyRecipe) -> Result<Instance> {
    let inst = match recipe {
        FamilyRecipe::Net => Instance::plain(recipe, gen_net()),
        FamilyRecipe::Cactus(c) => Instance::plain(recipe, gen_cactus(c)?),
        FamilyRecipe::Delta { n, connectivity, seed, cubic } => {
            let f = match cubic {
                Some(f) => f.clone(),
                None => gen_random_cubic_connected(*n, *connectivity, *seed)?,
            };
            Instance::plain(recipe, gen_delta(&f))
        }
        FamilyRecipe::FamilyS { recipe: r, triangles, seed } => {
            let r = match r {
                Some(r) => r.clone(),
                None => random_family_s_recipe(*triangles, *seed)?,
            };
            Instance::plain(recipe, gen_family_s(&r)?)
        }
        FamilyRecipe::ConstructionR { na, nb } => {
            let r = gen_construction_r(*na, *nb)?;
            let mut i = Instance::plain(recipe, r.graph);
            i.distinguished_vertices = vec![r.z];
            i.distinguished_edges = vec![r.a, r.b];
            i.claim_applies = Some(r.claim_applies);
            i
        }
        FamilyRecipe::ConstructionQ { na, nb } => {
            let q = gen_construction_q(*na, *nb)?;
            let mut i = Instance::plain(recipe, q.graph);
            i.distinguished_edges = vec![q.e, q.a, q.b];
            i.claim_applies = Some(q.claim_applies);
            i
        }
        FamilyRecipe::ConstructionH => {
            let h = gen_construction_h();
            let mut i = Instance::plain(recipe, h.graph);
            i.distinguished_vertices = h.triangle.to_vec();
            i
        }
        FamilyRecipe::CubicRandom { n, connectivity, seed } => {
            Instance::plain(recipe, gen_random_cubic_simple(*n, *connectivity, *seed)?)
        }
        FamilyRecipe::ClawfreeRandom { n, connectivity, seed, method } => {
            Instance::plain(recipe, gen_random_clawfree_connected(*n, (*connectivity).max(1), *seed, *method)?)
        }
        FamilyRecipe::Cycle { n } => Instance::plain(recipe, gen_cycle(*n)?),
        FamilyRecipe::Prism => Instance::plain(recipe, gen_prism()),
    };
    validate_instance(recipe, &inst.graph)?;
    Ok(inst)
}

fn validate_instance(recipe: &FamilyRecipe, g: &Graph) -> Result<()> {
    g.validate()?;
    let ok = match recipe {
        FamilyRecipe::CubicRandom { .. } => g.is_regular(3),
        FamilyRecipe::Delta { .. } => g.is_regular(3) && g.is_claw_free(),
        FamilyRecipe::FamilyS { .. } | FamilyRecipe::Net => is_family_s(g),
        _ => g.is_claw_free(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::invariant(format!("{} instance failed its family validator", recipe.id())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recipes_round_trip_through_json() {
        let recipes = [
            FamilyRecipe::Net,
            FamilyRecipe::Prism,
            FamilyRecipe::ConstructionR { na: 4, nb: 7 },
            FamilyRecipe::ClawfreeRandom { n: 10, connectivity: 2, seed: 3, method: ClawFreeMethod::LocalComplete },
            FamilyRecipe::FamilyS { recipe: None, triangles: 3, seed: 1 },
            FamilyRecipe::Delta { n: 4, connectivity: 2, seed: 0, cubic: None },
        ];
        for r in recipes {
            let s = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<FamilyRecipe>(&s).unwrap(), r);
            let inst = generate(&r).unwrap();
            assert_eq!(inst.family, r.id());
        }
        let parsed: FamilyRecipe = serde_json::from_str(r#"{"family":"cycle","n":9}"#).unwrap();
        assert_eq!(generate(&parsed).unwrap().order, 9);
    }

    #[test]
    fn construction_manifests() {
        let r = generate(&FamilyRecipe::ConstructionR { na: 7, nb: 7 }).unwrap();
        assert_eq!(r.order, 15);
        assert_eq!(r.claim_applies, Some(true));
        let q = generate(&FamilyRecipe::ConstructionQ { na: 8, nb: 8 }).unwrap();
        assert_eq!(q.order, 18);
    }
}
