mod common;

use ahpp_core::eval::{
    evaluate_f1, evaluate_link_prediction, evaluate_topk, f1_at_k, link_prediction, sample_queries,
    split_edges, topk_precision, ClusterGroundTruth,
};
use ahpp_core::graph::{generate_clustered, PlantedClusters};
use ahpp_core::push::{asrp, AsrpParams};
use ahpp_core::score::ScoreVector;
use ahpp_core::{Algorithm, QueryParams, SolverConfig};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn planted(u: usize, seed: u64) -> (ahpp_core::AttributedBipartiteGraph, Vec<usize>) {
    generate_clustered(&PlantedClusters {
        u_count: u,
        v_count: u,
        attr_count: u / 2,
        clusters: 3,
        edges_per_u: 3,
        attrs_per_u: 2,
        intra_prob: 0.85,
        seed,
    })
    .unwrap()
}

#[test]
fn example_ranks_u2_above_u3() {
    let g = common::example1();
    let p = QueryParams::default();
    let ap = AsrpParams::estimate(&g, &p, 30).unwrap();
    let s = asrp(&g, &p, g.u_index("u1").unwrap(), &ap).unwrap();
    assert!(s.get(g.u_index("u2").unwrap()) > s.get(g.u_index("u3").unwrap()));
}

#[test]
fn planted_clusters_beat_random_ranking() {
    let (g, labels) = planted(30, 11);
    let truth = ClusterGroundTruth::from_labels(&labels).unwrap();
    let cfg = SolverConfig::new(Algorithm::Pi, QueryParams::default());
    let solver = cfg.prepare(&g).unwrap();
    let queries: Vec<usize> = (0..g.u_count()).collect();
    let model = evaluate_f1(&solver, &truth, &queries, 1).unwrap().mean;

    let mut random = 0.0;
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for &q in &queries {
            let mut order: Vec<usize> = (0..g.u_count()).collect();
            order.shuffle(&mut rng);
            let mut scores = vec![0.0; g.u_count()];
            for (rank, u) in order.into_iter().enumerate() {
                scores[u] = 1.0 / (rank + 1) as f64;
            }
            random += f1_at_k(&ScoreVector::new(q, scores), &truth, q).unwrap();
        }
    }
    random /= (100 * queries.len()) as f64;
    assert!(model >= random, "model {model} vs random {random}");
}

#[test]
fn topk_report_on_fixture() {
    let g = common::random_graph(2);
    let cfg = SolverConfig::new(Algorithm::Asrp, QueryParams::default());
    let solver = cfg.prepare(&g).unwrap();
    let q = sample_queries(&g, 5, 1);
    let r = evaluate_topk(&solver, &q, g.u_count().min(10), 3).unwrap();
    assert_eq!(r.values.len(), 5);
    assert!(r.mean >= 0.99);
    let mut csv = Vec::new();
    r.write_csv(&g, &mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().last().unwrap().contains(",mean,"));
}

#[test]
fn link_prediction_is_deterministic() {
    let (g, _) = planted(90, 4);
    let cfg = SolverConfig::new(Algorithm::Asrp, QueryParams::new(0.15, 0.35, 1e-4).unwrap());
    let a = evaluate_link_prediction(&g, &cfg, 0.2, 10, 5, 1).unwrap();
    let b = evaluate_link_prediction(&g, &cfg, 0.2, 10, 5, 4).unwrap();
    assert_eq!(a.values, b.values);
    assert_eq!(a.mean, b.mean);
    assert!((0.0..=1.0).contains(&a.mean));
}

/// Attributes follow the planted blocks, so mixing them in should help
/// recover deleted edges. Reported rather than asserted per seed.
#[test]
fn attributes_help_link_prediction() {
    let (mut with, mut without) = (0.0, 0.0);
    for seed in 0..10 {
        let (g, _) = planted(200, seed);
        let split = split_edges(&g, 0.2, seed).unwrap();
        let h = &split.held_out;
        for (beta, acc) in [(0.35, &mut with), (0.0, &mut without)] {
            let p = QueryParams::new(0.15, beta, 1e-4).unwrap();
            let ap = AsrpParams::estimate(h, &p, 30).unwrap();
            *acc += link_prediction(h, &split.removed, |q| asrp(h, &p, q, &ap), 50).unwrap();
        }
    }
    println!("link prediction precision over 10 seeds: beta=0.35 {:.4}, beta=0 {:.4}", with / 10.0, without / 10.0);
    assert!(with >= without, "attribute-aware {with} < structure-only {without}");
}

fn scores(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(prop_oneof![Just(0.0), Just(0.5), 0.0..1.0f64], n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f1_equals_precision_and_recall(s in scores(24), labels in proptest::collection::vec(0usize..3, 24), q in 0usize..24) {
        prop_assume!(labels.iter().any(|&l| l != labels[0]));
        let truth = ClusterGroundTruth::from_labels(&labels).unwrap();
        let sv = ScoreVector::new(q, s);
        let c = labels[q];
        let k = labels.iter().filter(|&&l| l == c).count();
        let hits = sv.top_k(k).into_iter().filter(|&u| labels[u] == c).count() as f64;
        let f1 = f1_at_k(&sv, &truth, q).unwrap();
        prop_assert!((f1 - hits / k as f64).abs() < 1e-15);
        prop_assert!((0.0..=1.0).contains(&f1));
    }

    #[test]
    fn topk_precision_ignores_order_preserving_rescaling(a in scores(30), e in scores(30), k in 1usize..=30) {
        let approx = ScoreVector::new(0, a.clone());
        let exact = ScoreVector::new(0, e);
        let squashed = ScoreVector::new(0, a.iter().map(|x| x * x * 0.5).collect());
        let p = topk_precision(&approx, &exact, k).unwrap();
        prop_assert_eq!(p, topk_precision(&squashed, &exact, k).unwrap());
        prop_assert_eq!(p, topk_precision(&exact, &approx, k).unwrap());
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn link_prediction_monotone_in_k(seed in 0u64..20, s in scores(50)) {
        let g = common::random_graph(seed);
        let split = split_edges(&g, 0.3, seed).unwrap();
        let h = &split.held_out;
        let n = h.u_count();
        let fixed = |q: usize| Ok(ScoreVector::new(q, s[..n].to_vec()));
        let mut prev = 0.0;
        for k in 0..=n {
            let p = link_prediction(h, &split.removed, fixed, k).unwrap();
            prop_assert!(p >= prev);
            prop_assert!((0.0..=1.0).contains(&p));
            prev = p;
        }
    }
}
