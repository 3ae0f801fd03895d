mod common;

use std::collections::BTreeSet;

use mfnrel::benchlab::fixtures::example_fixture;
use mfnrel::reliability::{DEFAULT_IE_LIMIT, DEFAULT_STATE_LIMIT};
use mfnrel::{
    alpha, best_time, beta, brute_force_reliability, compare, enumerate_mps, is_real_dtb, parse_instance,
    path_stats, reliability, solve, write_instance, xi, Algorithm, Dominance, Instance, MpCatalog, Network, Query,
    Rational, StateVector, TransmissionTime,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random network that has at least one minimal path.
fn connected(seed: u64, nodes: usize, arcs: usize, cap: u32) -> (Network, MpCatalog) {
    let mut r = rng(seed);
    loop {
        let net = common::random_network(&mut r, nodes, arcs, cap);
        let cat = enumerate_mps(&net).unwrap();
        if !cat.is_empty() {
            return (net, cat);
        }
    }
}

fn vecs() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, Vec<u32>)> {
    (1usize..6).prop_flat_map(|m| {
        let v = || prop::collection::vec(0u32..4, m);
        (v(), v(), v())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dominance_is_a_partial_order((a, b, c) in vecs()) {
        let (x, y, z) = (StateVector::new(a), StateVector::new(b), StateVector::new(c));
        prop_assert_eq!(compare(&x, &x).unwrap(), Dominance::Equal);
        let xy = compare(&x, &y).unwrap();
        let yx = compare(&y, &x).unwrap();
        let flipped = match xy {
            Dominance::Less => Dominance::Greater,
            Dominance::Greater => Dominance::Less,
            other => other,
        };
        prop_assert_eq!(yx, flipped);
        if xy == Dominance::Equal {
            prop_assert_eq!(&x, &y);
        }
        if x.le(&y) && y.le(&z) {
            prop_assert!(x.le(&z));
        }
        prop_assert_eq!(x.le(&y), matches!(xy, Dominance::Less | Dominance::Equal));
    }

    #[test]
    fn more_capacity_never_slows_a_path(seed in any::<u64>(), d in 1u64..40) {
        let (net, cat) = connected(seed, 6, 9, 5);
        let mut r = rng(seed ^ 1);
        let x = common::random_state(&mut r, &net);
        let y = StateVector::new(x.iter().zip(net.arcs()).map(|(&v, a)| r.gen_range(v..=a.max_cap)).collect());
        for p in cat.paths() {
            prop_assert!(xi(d, &y, p).unwrap() <= xi(d, &x, p).unwrap());
        }
        prop_assert!(best_time(d, &y, cat.paths(), u64::MAX).unwrap() <= best_time(d, &x, cat.paths(), u64::MAX).unwrap());
    }

    #[test]
    fn larger_demand_never_speeds_up(seed in any::<u64>(), d in 1u64..40, extra in 0u64..40) {
        let (net, cat) = connected(seed, 6, 9, 5);
        let x = common::random_state(&mut rng(seed ^ 2), &net);
        for p in cat.paths() {
            prop_assert!(xi(d, &x, p).unwrap() <= xi(d + extra, &x, p).unwrap());
        }
    }

    #[test]
    fn extra_arcs_never_help(seed in any::<u64>(), d in 1u64..40) {
        let (net, cat) = connected(seed, 6, 9, 5);
        let mut r = rng(seed ^ 3);
        let x = common::random_state(&mut r, &net);
        for p in cat.paths() {
            let mut ids = p.arc_ids().to_vec();
            ids.push(r.gen_range(1..=net.arc_count()));
            let sup = path_stats(&net, &ids).unwrap();
            prop_assert!(p.lp() <= sup.lp() && p.cp() <= sup.cp() && p.kp_max() >= sup.kp_max());
            prop_assert!(xi(d, &x, p).unwrap() <= xi(d, &x, &sup).unwrap());
        }
    }

    #[test]
    fn cost_is_linear_in_demand(seed in any::<u64>(), d1 in 1u64..1000, d2 in 1u64..1000) {
        let (_, cat) = connected(seed, 6, 9, 5);
        for p in cat.paths() {
            prop_assert_eq!(beta(d1 + d2, p), beta(d1, p) + beta(d2, p));
            prop_assert_eq!(beta(d1, p), d1 * p.cp());
        }
    }

    #[test]
    fn alpha_is_the_least_sufficient_level(d in 1u64..500, t in 1u64..60, lp in 0u64..60) {
        prop_assume!(lp < t);
        let a = alpha(d, t, lp).unwrap();
        prop_assert!(a >= 1);
        prop_assert!(lp + d.div_ceil(a) <= t);
        if a > 1 {
            prop_assert!(lp + d.div_ceil(a - 1) > t);
        }
    }

    #[test]
    fn enumeration_matches_node_walks(seed in any::<u64>()) {
        let net = common::random_network(&mut rng(seed), 7, 12, 3);
        let cat = enumerate_mps(&net).unwrap();
        let got: BTreeSet<Vec<usize>> = cat.paths().iter().map(|p| p.arc_ids().to_vec()).collect();
        let want: BTreeSet<Vec<usize>> = common::naive_paths(&net).into_iter().collect();
        prop_assert_eq!(got.len(), cat.q());
        prop_assert_eq!(got, want);
        prop_assert!(mfnrel::validate_catalog(&net, &cat).is_ok());
    }

    #[test]
    fn solvers_match_exhaustive_enumeration(seed in any::<u64>()) {
        let (net, cat) = connected(seed, 5, 6, 2);
        let q = common::random_query(&mut rng(seed ^ 4));
        let (want_p, want_min) = common::naive_reliability(&net, &cat, &q);
        let want: BTreeSet<StateVector> = want_min.into_iter().map(StateVector::new).collect();
        for alg in Algorithm::ALL {
            let set = solve(&net, &cat, &q, alg).vector_set();
            prop_assert_eq!(&set, &want);
            let rep = reliability::<f64>(&net, &cat, &q, alg, DEFAULT_IE_LIMIT).unwrap();
            prop_assert!((rep.reliability - want_p).abs() < 1e-9);
        }
        let oracle = brute_force_reliability(&net, &cat, &q, DEFAULT_STATE_LIMIT).unwrap();
        prop_assert!((oracle.probability - want_p).abs() < 1e-9);
        prop_assert_eq!(oracle.omega_min.into_iter().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn solutions_are_real_minimal_states(seed in any::<u64>()) {
        let (net, cat) = connected(seed, 6, 9, 4);
        let q = common::random_query(&mut rng(seed ^ 5));
        let set = solve(&net, &cat, &q, Algorithm::Direct);
        for s in &set.solutions {
            prop_assert!(is_real_dtb(&net, &cat, &q, &s.vector).unwrap());
            let t = best_time(q.d, &s.vector, cat.paths(), q.b).unwrap();
            prop_assert!(t.within(q.t));
        }
        set.check_antichain().unwrap();
    }

    #[test]
    fn reliability_is_monotone_in_limits(seed in any::<u64>()) {
        let (net, cat) = connected(seed, 6, 8, 3);
        let q = common::random_query(&mut rng(seed ^ 6));
        let r = |q: Query| reliability::<f64>(&net, &cat, &q, Algorithm::Direct, DEFAULT_IE_LIMIT).unwrap().reliability;
        let base = r(q);
        let (longer, richer, heavier) = (Query { t: q.t + 1, ..q }, Query { b: q.b + 3, ..q }, Query { d: q.d + 1, ..q });
        prop_assert!(r(longer) >= base - 1e-12);
        prop_assert!(r(richer) >= base - 1e-12);
        prop_assert!(r(heavier) <= base + 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&base));
    }

    #[test]
    fn instance_format_round_trips(seed in any::<u64>(), with_query in any::<bool>()) {
        let mut r = rng(seed);
        let net = common::random_network(&mut r, 7, 10, 4);
        let mut inst = Instance::new(net);
        if with_query {
            inst.query = Some(common::random_query(&mut r));
        }
        let text = write_instance(&inst);
        let back: Instance = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
    }
}

#[test]
fn exact_example_reliability() {
    let fx = example_fixture::<Rational>();
    let rep = reliability(&fx.network, &fx.catalog, &fx.query, Algorithm::Direct, DEFAULT_IE_LIMIT).unwrap();
    assert_eq!(rep.reliability, Rational::new(17.into(), 25.into()));
    let oracle = brute_force_reliability(&fx.network, &fx.catalog, &fx.query, DEFAULT_STATE_LIMIT).unwrap();
    assert_eq!(oracle.probability, rep.reliability);
    assert_eq!(oracle.states, 172_800);
}

#[test]
fn example_intermediate_values() {
    let fx = example_fixture::<f64>();
    let set = solve(&fx.network, &fx.catalog, &fx.query, Algorithm::Direct);
    assert_eq!(set.counters.k, 4);
    let levels: Vec<u64> = [1, 2, 4, 5]
        .iter()
        .map(|&j| alpha(fx.query.d, fx.query.t, fx.catalog.get(j).unwrap().lp()).unwrap())
        .collect();
    assert_eq!(levels, vec![3, 5, 4, 4]);
    assert_eq!(set.sigma(), 1);
    assert_eq!(set.solutions[0].vector, StateVector::new(vec![3, 0, 0, 0, 0, 3, 0, 0]));
    assert_eq!(
        xi(fx.query.d, &set.solutions[0].vector, fx.catalog.get(1).unwrap()).unwrap(),
        TransmissionTime::Finite(8)
    );
}
