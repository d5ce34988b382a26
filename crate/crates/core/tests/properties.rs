mod common;

use common::*;
use proptest::prelude::*;
use tdl_core::certify::certify;
use tdl_core::construct;
use tdl_core::io::{graph_from_json, graph_to_json};
use tdl_core::solve::sets_of_size;
use tdl_core::{min_set, simulate, step, Configuration, Exec, Graph, ModelSpec, Role, SolveOptions};

fn arb_model() -> impl Strategy<Value = ModelSpec> {
    prop::sample::select(model_matrix())
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, any::<u64>(), 0.0..0.6f64).prop_map(|(n, seed, p)| random_connected(&mut rng(seed), n, p))
}

fn arb_role() -> impl Strategy<Value = Role> {
    prop::sample::select(Role::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn step_matches_rule_by_rule_update(g in arb_graph(14), model in arb_model(), mask in any::<u64>()) {
        let n = g.node_count();
        let c = Configuration::from_mask(n, mask & ((1 << n) - 1));
        let next = step(&g, &model, &c).unwrap();
        prop_assert_eq!(to_bools(n, &next.black_nodes()), oracle_step(&g, &model, &to_bools(n, &c.black_nodes())));
    }

    #[test]
    fn simulate_finds_the_first_repeat(g in arb_graph(12), model in arb_model(), mask in any::<u64>()) {
        let n = g.node_count();
        let c = Configuration::from_mask(n, mask & ((1 << n) - 1));
        let traj = simulate(&g, &model, &c, None).unwrap();
        let (orbit, from) = oracle_orbit(&g, &model, to_bools(n, &c.black_nodes()));
        prop_assert!(!traj.step_cap_hit);
        prop_assert_eq!(traj.stabilization_time, from);
        prop_assert_eq!(traj.period, orbit.len() - from);
    }

    #[test]
    fn certificates_agree_with_oracles(g in arb_graph(10), model in arb_model(), role in arb_role(), mask in 1u64..) {
        prop_assume!(g.validate(&model).is_ok());
        let n = g.node_count();
        let nodes = Configuration::from_mask(n, mask & ((1 << n) - 1)).black_nodes();
        prop_assume!(!nodes.is_empty());
        let cert = certify(&g, &model, role, &nodes).unwrap();
        prop_assert_eq!(cert.verdict, oracle_role(&g, &model, role, &nodes));
    }

    #[test]
    fn solver_is_independent_of_execution_mode(g in arb_graph(11), model in arb_model(), role in arb_role()) {
        prop_assume!(g.validate(&model).is_ok());
        let seq = min_set(&g, &model, role, SolveOptions { exec: Exec::Sequential, ..SolveOptions::default() }).unwrap();
        let par = min_set(&g, &model, role, SolveOptions { exec: Exec::Parallel, ..SolveOptions::default() }).unwrap();
        prop_assert_eq!(&seq, &par);
        let all = sets_of_size(&g, &model, role, seq.minimum_size, Exec::Parallel).unwrap();
        prop_assert_eq!(all.first(), Some(&seq.witness));
    }

    #[test]
    fn bitstring_round_trip(n in 1usize..150, seed in any::<u64>()) {
        let c = Configuration::from_nodes(n, &(0..n).filter(|v| (seed.rotate_left(*v as u32) & 1) == 1).collect::<Vec<_>>()).unwrap();
        let back = Configuration::parse_bitstring(&c.to_bitstring(), n).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn graph_json_round_trip(g in arb_graph(20)) {
        let text = graph_to_json(&g).to_string();
        prop_assert_eq!(graph_from_json(&text).unwrap(), g);
    }
}

/// Graphs above one machine word take the generic path; compare it with the
/// oracle on a few long cycles and tori.
#[test]
fn multi_word_configurations_follow_the_rules() {
    let graphs = [construct::cycle(70).unwrap(), construct::torus(9, 2).unwrap(), construct::cycle(129).unwrap()];
    let mut rng = rng(5);
    for g in &graphs {
        let n = g.node_count();
        for model in model_matrix() {
            let nodes: Vec<usize> = (0..n).filter(|_| rand::Rng::random_bool(&mut rng, 0.5)).collect();
            let traj = simulate(g, &model, &Configuration::from_nodes(n, &nodes).unwrap(), None).unwrap();
            let (orbit, from) = oracle_orbit(g, &model, to_bools(n, &nodes));
            assert_eq!(traj.stabilization_time, from, "{model} on n={n}");
            assert_eq!(traj.period, orbit.len() - from, "{model} on n={n}");
            assert_eq!(to_bools(n, &traj.last().black_nodes()), orbit[orbit.len() - 1]);
        }
    }
}
