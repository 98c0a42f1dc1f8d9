use proptest::prelude::*;
use spanner_core::diagnostics::{replay_trace, PotentialTracker};
use spanner_core::experiment::{run_sweep, SweepConfig, SweepFamily};
use spanner_core::{
    apsp, build_2_spanner, build_6_spanner, check_2spanner_step_law, check_cauchy_bound, complete, default_cap,
    gen_gnp, parse_edge_list, seed_degree_capped, seed_empty, serialize_edge_list, verify_spanner, DistanceMatrix,
    PotentialSpec, Recording, UNREACHABLE,
};

#[test]
fn six_spanner_sweep_baseline() {
    // Frozen output of the p = 0.5, seed 0 sweep; any change to the
    // generator, the seed rule or the pair order shows up here.
    let config = SweepConfig {
        family: SweepFamily::Gnp,
        ns: vec![64, 128, 256, 512],
        params: vec![0.5],
        seeds: vec![0],
        k: 6,
        allow_other_k: false,
        check_step_law: false,
        timing: false,
    };
    let outcome = run_sweep(&config).unwrap();
    let finals: Vec<_> = outcome.records.iter().map(|r| (r.n, r.final_edges)).collect();
    assert_eq!(finals, vec![(64, 239), (128, 612), (256, 1500), (512, 4027)]);
    for r in &outcome.records {
        assert!(r.ratio_43 < 1.0, "{r:?}");
        assert!(r.seed_edges <= r.n * default_cap(r.n));
    }
}

#[test]
fn two_spanner_sweep_baseline() {
    let config = SweepConfig {
        family: SweepFamily::Gnp,
        ns: vec![64, 128, 256],
        params: vec![0.5],
        seeds: vec![0],
        k: 2,
        allow_other_k: false,
        check_step_law: true,
        timing: false,
    };
    let outcome = run_sweep(&config).unwrap();
    let finals: Vec<_> = outcome.records.iter().map(|r| (r.n, r.final_edges)).collect();
    assert_eq!(finals, vec![(64, 90), (128, 184), (256, 386)]);
    assert_eq!(outcome.step_law_failures, 0);
}

#[test]
fn spanner_files_round_trip() {
    let g = gen_gnp(70, 0.15, 21).unwrap();
    let (h, _) = build_2_spanner(&g);
    let text = serialize_edge_list(&h.to_graph());
    let parsed = parse_edge_list(&text).unwrap();
    assert_eq!(parsed, h.to_graph());
    assert!(parsed.edges().all(|(u, v)| g.has_edge(u, v)));
}

#[test]
fn connected_inputs_give_spanning_subgraphs() {
    for seed in 0..20 {
        let g = gen_gnp(40, 0.25, seed).unwrap();
        if !g.is_connected() {
            continue;
        }
        for (h, _) in [build_2_spanner(&g), build_6_spanner(&g)] {
            assert!(h.edge_count() >= g.node_count() - 1);
            assert!(h.edge_count() <= g.edge_count());
            assert!(h.to_graph().is_connected());
        }
    }
}

#[test]
fn disconnected_hosts_are_handled() {
    let g = parse_edge_list("n 7\n0 1\n1 2\n2 0\n4 5").unwrap();
    for (h, _) in [build_2_spanner(&g), build_6_spanner(&g)] {
        assert!(verify_spanner(&h, 2).is_empty());
        let d = apsp(&h);
        assert_eq!(d.get(0, 4), UNREACHABLE);
        assert_eq!(d.get(3, 6), UNREACHABLE);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn traces_obey_potential_laws(n in 2usize..=14, p in 0.05f64..0.95, seed in any::<u64>()) {
        let g = gen_gnp(n, p, seed).unwrap();
        for (k, seed_state) in [(2u32, seed_empty(&g)), (6, seed_degree_capped(&g, default_cap(n)))] {
            let spec = PotentialSpec::for_k(k);
            let (h, trace) = complete(seed_state.clone(), k, Recording::Potentials(spec));
            prop_assert!(verify_spanner(&h, k).is_empty());
            if k == 2 {
                prop_assert!(check_2spanner_step_law(&trace).unwrap().iter().all(|&d| d <= 0));
            }
            for step in &trace.steps {
                let pot = step.potentials.unwrap();
                prop_assert!(pot.v_after >= pot.v_before);
                prop_assert!(pot.c_after > pot.c_before);
                prop_assert!(pot.v_after <= u64::from(spec.slack) * (n as u64) * (n as u64 - 1) / 2);
            }
            let mut previous: Option<DistanceMatrix> = None;
            replay_trace(seed_state, &trace, |_, state| {
                assert!(check_cauchy_bound(state));
                let d = apsp(state);
                if let Some(prev) = &previous {
                    for u in 0..n {
                        for v in 0..n {
                            assert!(d.get(u, v) <= prev.get(u, v));
                        }
                    }
                }
                previous = Some(d);
            });
        }
    }

    #[test]
    fn tracker_distances_match_apsp(n in 2usize..=16, p in 0.1f64..0.8, seed in any::<u64>()) {
        let g = gen_gnp(n, p, seed).unwrap();
        let mut h = seed_empty(&g);
        let mut tracker = PotentialTracker::new(&h, PotentialSpec::for_k(2));
        for (a, b) in g.edges().collect::<Vec<_>>().into_iter().rev() {
            h.insert_edge(a, b).unwrap();
            tracker.insert_edge(a, b);
            prop_assert_eq!(tracker.distances(), &apsp(&h));
        }
    }
}
