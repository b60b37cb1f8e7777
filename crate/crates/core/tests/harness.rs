use p3pack::generators::{
    gen_delta, gen_prism, gen_random_cubic_connected, gen_random_clawfree_connected, ClawFreeMethod, CubicMultigraph,
    FamilyRecipe,
};
use p3pack::harness::{check_theorem, run_campaign, Campaign, Extras, InstanceSource};
use p3pack::report::Status;
use p3pack::{Graph, VertexId};

fn check(id: &str, g: &Graph) -> p3pack::report::VerdictReport {
    check_theorem(id, g, &Extras::default()).unwrap()
}

#[test]
fn two_connected_campaign_confirms_every_instance() {
    let source = InstanceSource::Generated {
        recipes: vec![FamilyRecipe::ClawfreeRandom { n: 12, connectivity: 2, seed: 0, method: ClawFreeMethod::LocalComplete }],
        count: 100,
    };
    let res = run_campaign(&Campaign::new(vec!["2conclfr".into()], source)).unwrap();
    assert_eq!(res.summary.total, 100);
    assert_eq!(res.summary.confirmed, 100, "{:?}", res.summary);
}

#[test]
fn family_s_campaign_confirms_no_factor() {
    let source = InstanceSource::Generated {
        recipes: vec![FamilyRecipe::FamilyS { recipe: None, triangles: 4, seed: 0 }],
        count: 20,
    };
    let res = run_campaign(&Campaign::new(vec!["A".into()], source)).unwrap();
    assert_eq!(res.summary.confirmed, 20, "{:?}", res.summary);
}

#[test]
fn open_problem_campaign_never_claims_truth() {
    let source = InstanceSource::Generated {
        recipes: (4..=20).step_by(2).map(|n| FamilyRecipe::CubicRandom { n, connectivity: 3, seed: 0 }).collect(),
        count: 3,
    };
    let res = run_campaign(&Campaign::new(vec!["Pr3con".into(), "problem-v1mod3".into()], source)).unwrap();
    assert_eq!(res.summary.confirmed, 0);
    assert_eq!(res.summary.counterexample_candidate, 0);
    assert!(res.summary.none_falsifying > 20, "{:?}", res.summary);
    for r in res.reports.iter().filter(|r| r.status == Status::NoneFalsifying) {
        assert!(r.conclusion.as_ref().unwrap().detail.contains("none falsifying"));
    }
}

#[test]
fn g_minus_y_finds_two_claws() {
    // v = 10 ≡ 1, 2-connected claw-free, not a cycle
    let g = gen_random_clawfree_connected(10, 2, 7, ClawFreeMethod::LocalComplete).unwrap();
    let r = check("G-Y", &g);
    assert_eq!(r.status, Status::Confirmed, "{r:?}");
    let found = r.witness.unwrap()["certificates"][0].as_array().unwrap().len();
    assert!(found >= 2);
}

#[test]
fn delta_k4_all_triples() {
    let g = gen_delta(&CubicMultigraph::k4());
    let r = check("delta-3edge", &g);
    assert_eq!(r.status, Status::Confirmed);
    assert_eq!(r.witness.unwrap()["checked"], 816);
}

#[test]
fn two_edges_at_every_vertex() {
    let g = gen_random_clawfree_connected(11, 2, 4, ClawFreeMethod::LineGraph).unwrap();
    let r = check("clfree-2con-xb", &g);
    assert_eq!(r.status, Status::Confirmed, "{r:?}");
    assert_eq!(r.witness.unwrap()["checked"], 11);
}

#[test]
fn delta_paths_through_triangles_or_links() {
    for seed in 0..4 {
        let g = gen_delta(&gen_random_cubic_connected(6, 2, seed).unwrap());
        assert_eq!(check("delta-path", &g).status, Status::Confirmed);
    }
    assert_eq!(check("delta-path", &gen_prism()).status, Status::Confirmed);
}

#[test]
fn triangle_component_claim_fails_on_the_prism() {
    let r = check("delta-path-triangle", &gen_prism());
    assert_eq!(r.status, Status::CounterexampleCandidate);
    let item = &r.witness.unwrap()["item"];
    let l: Vec<VertexId> = serde_json::from_value(item.clone()).unwrap();
    assert_eq!(l.len(), 3);
    for seed in 0..4 {
        let g = gen_delta(&gen_random_cubic_connected(8, 3, seed).unwrap());
        assert_eq!(check("delta-path-triangle", &g).status, Status::Confirmed);
    }
}

#[test]
fn quantifiers_can_be_restricted() {
    let g = gen_prism();
    let x = Extras { edges: vec![p3pack::Edge::new(0u32, 3u32)], ..Extras::default() };
    let r = check_theorem("avoid-e", &g, &x).unwrap();
    assert_eq!(r.witness.unwrap()["checked"], 1);
    let bad = Extras { edges: vec![p3pack::Edge::new(0u32, 4u32)], ..Extras::default() };
    assert!(check_theorem("avoid-e", &g, &bad).is_err());
}

#[test]
fn reports_round_trip_as_json_lines() {
    let r = check("2conclfr", &gen_prism());
    let line = r.to_json_line();
    assert!(!line.contains('\n'));
    let back: p3pack::report::VerdictReport = serde_json::from_str(&line).unwrap();
    assert_eq!(back.without_timing(), r.without_timing());
}
