mod common;

use common::*;
use permqml::graph::{generate_balanced_dataset, GraphSample};
use permqml::statevector::GateInstr;
use permqml::training::{
    aggregate_seeds, batch_objective, predict, predictions, qng_step, train_run,
    train_run_with_circuit, EpochStats, MetricMode, RunRecord, TrainConfig,
};
use permqml::{AnsatzKind, CircuitIR, Property};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_config() -> TrainConfig {
    TrainConfig {
        epochs: 3,
        train_per_epoch: 20,
        minibatch: 5,
        seeds: vec![0, 1],
        ..TrainConfig::default()
    }
}

#[test]
fn free_circuit_with_tied_slots_equals_sn() {
    let n = 5;
    let sn = AnsatzKind::SnInvariant.build(n, 3).unwrap();
    let free = AnsatzKind::FreeParameters.build(n, 3).unwrap();
    // map every free slot onto the Sn slot driving the same gate position
    let tied: Vec<GateInstr> = free
        .gates()
        .iter()
        .zip(sn.gates())
        .map(|(f, s)| {
            assert_eq!((f.kind, &f.qubits), (s.kind, &s.qubits));
            s.clone()
        })
        .collect();
    let tied = CircuitIR::new(n, tied, sn.n_params(), AnsatzKind::FreeParameters, sn.slot_layers().to_vec()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let params = random_params(sn.n_params(), 1.0, &mut rng);
    let mut free_params = vec![0.0; free.n_params()];
    for (f, s) in free.gates().iter().zip(sn.gates()) {
        free_params[f.param_slot.unwrap()] = params[s.param_slot.unwrap()];
    }
    for _ in 0..10 {
        let g = random_graph(n, &mut rng);
        let a = predict(&sn, &params, &g).unwrap();
        assert!((a - predict(&tied, &params, &g).unwrap()).abs() < 1e-12);
        assert!((a - predict(&free, &free_params, &g).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn isomorphic_pairs_get_equal_predictions() {
    let n = 7;
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let sn = AnsatzKind::SnInvariant.build(n, 4).unwrap();
    let params = random_params(sn.n_params(), 1.0, &mut rng);
    for _ in 0..100 {
        let g = random_graph(n, &mut rng);
        let h = g.relabeled(&random_perm(n, &mut rng)).unwrap();
        assert!((predict(&sn, &params, &g).unwrap() - predict(&sn, &params, &h).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn cyclic_circuit_is_not_fully_symmetric() {
    let n = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let cn = AnsatzKind::CnInvariant.build(n, 3).unwrap();
    let params = random_params(cn.n_params(), 1.0, &mut rng);
    let mut best: f64 = 0.0;
    for _ in 0..20 {
        let g = random_graph(n, &mut rng);
        let h = g.relabeled(&random_perm(n, &mut rng)).unwrap();
        best = best.max((predict(&cn, &params, &g).unwrap() - predict(&cn, &params, &h).unwrap()).abs());
    }
    assert!(best > 1e-3, "{best}");
}

#[test]
fn natural_gradient_step_lowers_the_loss() {
    let n = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let batch: Vec<GraphSample> = (0..8)
        .map(|_| GraphSample::labeled(random_graph(n, &mut rng), Property::Connected))
        .collect();
    let config = TrainConfig {
        learning_rate: 0.01,
        ..TrainConfig::default()
    };
    for kind in AnsatzKind::ALL {
        let c = kind.build(n, 2).unwrap();
        let params = random_params(c.n_params(), 0.5, &mut rng);
        for mode in [MetricMode::Exact, MetricMode::BlockDiagonal] {
            let before = batch_objective(&c, &params, &batch, Some(mode)).unwrap();
            let next = qng_step(&params, &before.gradient, before.metric.as_ref().unwrap(), &config).unwrap();
            let after = batch_objective(&c, &next, &batch, None).unwrap();
            assert!(after.loss < before.loss, "{kind} {mode:?}: {} -> {}", before.loss, after.loss);
        }
    }
}

#[test]
fn predictions_keep_input_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let c = AnsatzKind::CnInvariant.build(5, 2).unwrap();
    let params = random_params(c.n_params(), 1.0, &mut rng);
    let samples: Vec<GraphSample> = (0..30)
        .map(|_| GraphSample::labeled(random_graph(5, &mut rng), Property::Bipartite))
        .collect();
    let batch = predictions(&c, &params, &samples).unwrap();
    for (s, p) in samples.iter().zip(batch) {
        assert_eq!(predict(&c, &params, &s.graph).unwrap(), p);
    }
}

#[test]
fn runs_are_reproducible_per_seed() {
    let ds = generate_balanced_dataset(Property::Connected, 4, 40, &mut ChaCha8Rng::seed_from_u64(36)).unwrap();
    let cfg = small_config();
    let a = train_run(AnsatzKind::StronglyEntangling, &ds, &cfg, 7).unwrap();
    let b = train_run(AnsatzKind::StronglyEntangling, &ds, &cfg, 7).unwrap();
    assert_eq!(a, b);
    let c = train_run(AnsatzKind::StronglyEntangling, &ds, &cfg, 8).unwrap();
    assert_ne!(a.final_params, c.final_params);
    assert_eq!(a.epochs.iter().map(|e| e.epoch).collect::<Vec<_>>(), [1, 2, 3]);
    for e in &a.epochs {
        for x in [e.train_acc, e.val_acc, e.near_zero_frac] {
            assert!((0.0..=1.0).contains(&x));
        }
    }
}

#[test]
fn relabeled_dataset_gives_the_same_sn_run() {
    let n = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let ds = generate_balanced_dataset(Property::Connected, n, 40, &mut rng).unwrap();
    let moved = ds.relabeled(&random_perm(n, &mut rng)).unwrap();
    let circuit = AnsatzKind::SnInvariant.build(n, 4).unwrap();
    let cfg = small_config();
    let a = train_run_with_circuit(&circuit, &ds, &cfg, 3).unwrap();
    let b = train_run_with_circuit(&circuit, &moved, &cfg, 3).unwrap();
    // rounding differences pass through (G + λI)⁻¹ on every step, so only
    // near-equality of the parameters can be asked for
    for (x, y) in a.final_params.iter().zip(&b.final_params) {
        assert!((x - y).abs() < 1e-6, "{x} vs {y}");
    }
    for (x, y) in a.epochs.iter().zip(&b.epochs) {
        assert!((x.loss - y.loss).abs() < 1e-6);
        assert_eq!((x.train_acc, x.val_acc), (y.train_acc, y.val_acc));
    }
}

#[test]
fn training_needs_a_validation_split() {
    let ds = generate_balanced_dataset(Property::Connected, 4, 20, &mut ChaCha8Rng::seed_from_u64(38)).unwrap();
    assert!(train_run(AnsatzKind::SnInvariant, &ds, &small_config(), 0).is_err());
}

fn record(seed: u64, accs: &[f64]) -> RunRecord {
    RunRecord {
        seed,
        ansatz: AnsatzKind::CnInvariant,
        property: Property::Connected,
        epochs: accs
            .iter()
            .enumerate()
            .map(|(i, &a)| EpochStats {
                epoch: i + 1,
                loss: 1.0 - a,
                train_acc: a,
                val_acc: a,
                near_zero_frac: 0.0,
            })
            .collect(),
        final_params: vec![],
    }
}

#[test]
fn aggregation_examples() {
    let agg = aggregate_seeds(&[record(0, &[0.8]), record(1, &[0.9])]).unwrap();
    assert!((agg[0].mean - 0.85).abs() < 1e-12);
    let want = 1.96 * (0.005f64).sqrt() / 2f64.sqrt();
    assert!((agg[0].ci95 - want).abs() < 1e-12);
    assert!((agg[0].ci95 - 0.098).abs() < 1e-3);

    let same = aggregate_seeds(&[record(0, &[0.6, 0.7]), record(1, &[0.6, 0.7]), record(2, &[0.6, 0.7])]).unwrap();
    assert!(same.iter().all(|a| a.ci95 == 0.0));
    assert!(aggregate_seeds(&[record(0, &[0.6])]).is_err());
}
