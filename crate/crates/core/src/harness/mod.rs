//! Batch theorem checks and campaigns.
//!
//! Each statement is checked literally on one instance: quantifiers over
//! edges, vertices and paths are expanded, constructive failures are
//! re-checked by the exact oracle before they are labelled, and open
//! problems only ever report "none falsifying".

pub mod search;
mod theorems;

use std::sync::mpsc;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{generate, FamilyRecipe};
use crate::graph::{Edge, Graph, VertexId};
use crate::io::{from_graph6, to_graph6};
use crate::oracle::Oracle;
use crate::packing::Path3;
use crate::report::{Check, Status, VerdictReport};

pub use theorems::TheoremInfo;

/// Default per-instance time budget.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

/// Optional quantifier restrictions and solver settings. Empty lists mean
/// "every edge / vertex / path of the instance".
#[derive(Clone, Debug)]
pub struct Extras {
    pub edges: Vec<Edge>,
    pub vertices: Vec<VertexId>,
    pub paths: Vec<Path3>,
    pub cycle: Option<Vec<VertexId>>,
    pub oracle: Oracle,
    /// Also compare packer counts with the oracle when the packer succeeds.
    pub cross_check: bool,
}

impl Default for Extras {
    fn default() -> Self {
        Extras {
            edges: vec![],
            vertices: vec![],
            paths: vec![],
            cycle: None,
            oracle: Oracle::default(),
            cross_check: true,
        }
    }
}

impl Extras {
    pub fn with_oracle(oracle: Oracle) -> Self {
        Extras { oracle, ..Extras::default() }
    }
}

pub fn theorems() -> Vec<TheoremInfo> {
    theorems::TABLE.iter().map(|e| e.info).collect()
}

pub fn theorem_ids() -> Vec<&'static str> {
    theorems::TABLE.iter().map(|e| e.info.id).collect()
}

fn lookup(id: &str) -> Result<&'static theorems::Entry> {
    theorems::TABLE
        .iter()
        .find(|e| e.info.id == id)
        .ok_or_else(|| Error::UnknownTheorem { id: id.to_string(), valid: theorem_ids().join(", ") })
}

fn validate_extras(g: &Graph, x: &Extras) -> Result<()> {
    for &v in &x.vertices {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    for &e in &x.edges {
        if !g.has_edge(e.u(), e.v()) {
            return Err(Error::UnknownEdge(e));
        }
    }
    for p in &x.paths {
        if !g.has_edge(p[0], p[1]) || !g.has_edge(p[1], p[2]) || p[0] == p[2] {
            return Err(Error::pre(format!("{p:?} is not a 3-vertex path")));
        }
    }
    Ok(())
}

/// Checks statement `id` on `g`.
pub fn check_theorem(id: &str, g: &Graph, x: &Extras) -> Result<VerdictReport> {
    let entry = lookup(id)?;
    validate_extras(g, x)?;
    Ok((entry.run)(g, x, VerdictReport::start(id, g)))
}

/// [`check_theorem`] with a wall-clock budget; an overrun is reported as
/// skipped. The worker thread is left to finish in the background.
pub fn check_theorem_timed(id: &str, g: &Graph, x: &Extras, timeout: Duration) -> Result<VerdictReport> {
    let entry = lookup(id)?;
    validate_extras(g, x)?;
    let (tx, rx) = mpsc::channel();
    let (h, xx, name) = (g.clone(), x.clone(), id.to_string());
    std::thread::spawn(move || {
        let _ = tx.send((entry.run)(&h, &xx, VerdictReport::start(&name, &h)));
    });
    match rx.recv_timeout(timeout) {
        Ok(r) => Ok(r),
        Err(_) => {
            let mut r = VerdictReport::start(id, g).skipped(format!("time budget of {}s exceeded", timeout.as_secs_f64()));
            r.elapsed_us = timeout.as_micros() as u64;
            Ok(r)
        }
    }
}

/// Where campaign instances come from.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceSource {
    /// `count` instances of each recipe; seeded recipes get seeds
    /// `seed, seed + 1, ...`.
    Generated { recipes: Vec<FamilyRecipe>, count: usize },
    /// graph6 lines.
    Graph6 { lines: Vec<String> },
}

#[derive(Clone, Debug)]
pub struct Campaign {
    pub theorems: Vec<String>,
    pub source: InstanceSource,
    pub oracle: Oracle,
    pub seed: u64,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    pub timeout: Duration,
    pub cross_check: bool,
}

impl Campaign {
    pub fn new(theorems: Vec<String>, source: InstanceSource) -> Self {
        Campaign {
            theorems,
            source,
            oracle: Oracle::default(),
            seed: 0,
            jobs: 0,
            timeout: DEFAULT_TIMEOUT,
            cross_check: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub confirmed: usize,
    pub hypothesis_unmet: usize,
    pub skipped: usize,
    pub none_falsifying: usize,
    pub counterexample_candidate: usize,
    pub algorithm_bug_candidate: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(reports: &[VerdictReport]) -> Self {
        let mut s = Summary { total: reports.len(), ..Summary::default() };
        for r in reports {
            match r.status {
                Status::Confirmed => s.confirmed += 1,
                Status::HypothesisUnmet => s.hypothesis_unmet += 1,
                Status::Skipped => s.skipped += 1,
                Status::NoneFalsifying => s.none_falsifying += 1,
                Status::CounterexampleCandidate => s.counterexample_candidate += 1,
                Status::AlgorithmBugCandidate => s.algorithm_bug_candidate += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    pub fn has_failures(&self) -> bool {
        self.counterexample_candidate + self.algorithm_bug_candidate + self.error > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignResult {
    pub reports: Vec<VerdictReport>,
    pub summary: Summary,
}

impl CampaignResult {
    pub fn to_json_lines(&self) -> String {
        self.reports.iter().map(|r| r.to_json_line() + "\n").collect()
    }
}

enum Slot {
    Ready(Graph, String),
    Failed(String, String),
}

fn instances(c: &Campaign) -> Vec<Slot> {
    match &c.source {
        InstanceSource::Generated { recipes, count } => recipes
            .iter()
            .flat_map(|r| (0..*count).map(move |i| r.with_seed(c.seed.wrapping_add(i as u64))))
            .map(|r| {
                let tag = serde_json::to_string(&r).expect("recipes serialize");
                match generate(&r) {
                    Ok(inst) => Slot::Ready(inst.graph, tag),
                    Err(e) => Slot::Failed(tag, e.to_string()),
                }
            })
            .collect(),
        InstanceSource::Graph6 { lines } => lines
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| match from_graph6(l.trim()) {
                Ok(g) => Slot::Ready(g, format!("line {}", i + 1)),
                Err(e) => Slot::Failed(format!("line {}", i + 1), e.to_string()),
            })
            .collect(),
    }
}

fn failed_report(theorem: &str, tag: &str, err: &str) -> VerdictReport {
    let mut r = VerdictReport::start(theorem, &Graph::new()).errored(format!("instance unavailable: {err}"));
    r.instance.clear();
    r.instance_ref = Some(tag.to_string());
    r.hypothesis = Check { passed: false, detail: "not evaluated".into() };
    r.elapsed_us = 0;
    r
}

/// Runs every (theorem, instance) pair. Reports come back in input order:
/// instances outer, theorems inner. Instance failures become error reports.
pub fn run_campaign(c: &Campaign) -> Result<CampaignResult> {
    for t in &c.theorems {
        lookup(t)?;
    }
    let slots = instances(c);
    let work: Vec<(&Slot, &String)> = slots.iter().flat_map(|s| c.theorems.iter().map(move |t| (s, t))).collect();
    let extras = Extras { oracle: c.oracle, cross_check: c.cross_check, ..Extras::default() };
    let run = |(slot, t): &(&Slot, &String)| match slot {
        Slot::Ready(g, tag) => {
            let mut r = check_theorem_timed(t, g, &extras, c.timeout)
                .unwrap_or_else(|e| VerdictReport::start(t, g).errored(e.to_string()));
            r.instance_ref = Some(tag.clone());
            r
        }
        Slot::Failed(tag, err) => failed_report(t, tag, err),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.jobs)
        .build()
        .map_err(|e| Error::pre(format!("thread pool: {e}")))?;
    let reports: Vec<VerdictReport> = pool.install(|| work.par_iter().map(run).collect());
    let summary = Summary::of(&reports);
    Ok(CampaignResult { reports, summary })
}

/// graph6 lines for a list of graphs.
pub fn graph6_lines(gs: &[Graph]) -> Vec<String> {
    gs.iter().map(to_graph6).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete, gen_construction_r, gen_cycle, gen_net, gen_prism, ClawFreeMethod};

    fn status(id: &str, g: &Graph) -> Status {
        check_theorem(id, g, &Extras::default()).unwrap().status
    }

    #[test]
    fn unknown_id_lists_valid_ids() {
        let e = check_theorem("nope", &gen_net(), &Extras::default()).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("2conclfr") && msg.contains("G-Y") && msg.contains("Pr3con"));
    }

    #[test]
    fn ids_are_unique() {
        let mut ids = theorem_ids();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn small_instances() {
        assert_eq!(status("2conclfr", &gen_prism()), Status::Confirmed);
        assert_eq!(status("2conclfr", &gen_net()), Status::HypothesisUnmet);
        assert_eq!(status("A", &gen_net()), Status::Confirmed);
        assert_eq!(status("eb(G)clfr", &gen_net()), Status::Confirmed);
        assert_eq!(status("avoid-e", &gen_prism()), Status::Confirmed);
        assert_eq!(status("km", &gen_complete(4)), Status::Confirmed);
        assert_eq!(status("Ham", &gen_complete(4)), Status::Confirmed);
        assert_eq!(status("delta-3edge", &gen_prism()), Status::Confirmed);
        assert_eq!(status("delta-2edge", &gen_prism()), Status::Confirmed);
        assert_eq!(status("lambda-e", &gen_net()), Status::Confirmed);
        assert_eq!(status("inducedmatching", &gen_cycle(7).unwrap()), Status::Confirmed);
    }

    #[test]
    fn g_minus_y_on_k4_style_instance() {
        let g = crate::generators::gen_random_clawfree_connected(10, 2, 3, ClawFreeMethod::LocalComplete).unwrap();
        let r = check_theorem("G-Y", &g, &Extras::default()).unwrap();
        assert!(matches!(r.status, Status::Confirmed | Status::HypothesisUnmet), "{r:?}");
    }

    #[test]
    fn open_problems_never_confirm() {
        let r = check_theorem("Pr3con", &gen_complete(4), &Extras::default()).unwrap();
        assert_eq!(r.status, Status::NoneFalsifying);
        assert!(r.conclusion.unwrap().detail.contains("none falsifying"));
        assert_eq!(status("3conclawfreePi", &gen_complete(4)), Status::NoneFalsifying);
        assert_eq!(status("inducedLpacking", &gen_complete(4)), Status::NoneFalsifying);
    }

    #[test]
    fn construction_r_is_a_counterexample_to_containment_without_three_connectivity() {
        let r = gen_construction_r(4, 4).unwrap();
        let rep = check_theorem("contain-e", &r.graph, &Extras::default()).unwrap();
        assert_eq!(rep.status, Status::HypothesisUnmet);
    }

    #[test]
    fn campaign_is_deterministic_and_ordered() {
        let source = InstanceSource::Generated {
            recipes: vec![FamilyRecipe::ClawfreeRandom { n: 9, connectivity: 2, seed: 0, method: ClawFreeMethod::LineGraph }],
            count: 6,
        };
        let mut c = Campaign::new(vec!["2conclfr".into(), "gamma".into()], source);
        c.seed = 11;
        c.jobs = 3;
        let a = run_campaign(&c).unwrap();
        c.jobs = 1;
        let b = run_campaign(&c).unwrap();
        assert_eq!(a.reports.len(), 12);
        let strip = |r: &CampaignResult| r.reports.iter().map(|r| r.without_timing()).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(a.reports[0].theorem, "2conclfr");
        assert_eq!(a.reports[1].theorem, "gamma");
        assert!(!a.summary.has_failures(), "{:?}", a.summary);
    }

    #[test]
    fn bad_instances_are_recorded() {
        let c = Campaign::new(vec!["km".into()], InstanceSource::Graph6 { lines: vec!["C~".into(), "!!".into()] });
        let res = run_campaign(&c).unwrap();
        assert_eq!(res.reports.len(), 2);
        assert_eq!(res.reports[0].status, Status::Confirmed);
        assert_eq!(res.reports[1].status, Status::Error);
        assert_eq!(res.summary.error, 1);
    }

    #[test]
    fn timeouts_skip() {
        let g = gen_complete(4);
        let r = check_theorem_timed("km", &g, &Extras::default(), Duration::from_secs(30)).unwrap();
        assert_eq!(r.status, Status::Confirmed);
    }
}
