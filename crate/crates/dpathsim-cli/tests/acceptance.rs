//! Acceptance suite. Each test checks one release criterion end to end
//! and prints a `acceptance <criterion>: PASS` line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dpathsim::traceio::{
    export_ecdf_csv, export_trace, load_model, parse_ecdf_csv, parse_trace, save_model,
};
use dpathsim::{
    build_reference_models, ks_distance, reference_configs, relative_frequencies, run_simulation,
    run_simulation_with_model, DataRateSpec, DelaySample, EmpiricalDistribution, PacketSizeSpec,
    ScenarioConfig, Stage, StageDelayModel, TraceFile, TraceRow,
};

fn pass(name: &str, started: Instant) {
    println!(
        "acceptance {name}: PASS ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

/// Random trace mixing a coarse tie-heavy grid with continuous values.
fn random_trace(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<f64> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                rng.gen_range(0u32..60) as f64 * 0.5
            } else {
                rng.gen_range(0.0..100.0)
            }
        })
        .collect()
}

fn canonical(samples: &[f64]) -> Vec<f64> {
    samples
        .iter()
        .map(|&v| DelaySample::new(v).unwrap().value())
        .collect()
}

/// Criterion: for randomized traces, `eval` equals the brute-force
/// linear-scan count at every support point and at random query points,
/// exactly.
#[test]
fn a1_ecdf_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..1000 {
        let samples = random_trace(&mut rng, 1000);
        let canon = canonical(&samples);
        let n = canon.len() as f64;
        let brute = |x: f64| canon.iter().filter(|&&v| v <= x).count() as f64 / n;

        let dist = EmpiricalDistribution::from_samples(&samples).unwrap();
        for &x in dist.support() {
            assert_eq!(dist.eval(x).unwrap(), brute(x));
        }
        for _ in 0..50 {
            let x = rng.gen_range(-5.0..110.0);
            assert_eq!(dist.eval(x).unwrap(), brute(x));
        }
    }
    assert!(started.elapsed().as_secs_f64() < 10.0, "runtime bound");
    pass("ecdf-oracle-equivalence", started);
}

/// Criterion: relative frequencies sum to one within 1e-12 and their
/// cumulative sum (in exact count arithmetic) reproduces the built ECDF
/// bit for bit.
#[test]
fn a2_relative_frequency_consistency() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..1000 {
        let samples = random_trace(&mut rng, 1000);
        let n = samples.len() as f64;
        let freqs = relative_frequencies(&samples).unwrap();
        let sum: f64 = freqs.iter().map(|(_, f)| f).sum();
        assert!((sum - 1.0).abs() <= 1e-12);

        let dist = EmpiricalDistribution::from_samples(&samples).unwrap();
        assert_eq!(freqs.len(), dist.support().len());
        let mut cumulative_count = 0u64;
        for ((value, freq), (&support, &cum)) in
            freqs.iter().zip(dist.support().iter().zip(dist.cum_prob()))
        {
            assert_eq!(*value, support);
            // freq is exactly count/n, so count is recoverable exactly.
            cumulative_count += (freq * n).round() as u64;
            assert_eq!(cum, cumulative_count as f64 / n);
        }
        assert_eq!(cumulative_count, samples.len() as u64);
    }
    pass("relative-frequency-consistency", started);
}

/// Criterion: 1e5 seeded draws from a fixed reference distribution
/// rebuild to a KS distance below 0.01.
#[test]
fn a3_resampling_fidelity() {
    let started = Instant::now();
    let models = build_reference_models();
    let dist = &models["voi"].cpu_counters;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let draws: Vec<f64> = (0..100_000).map(|_| dist.sample(&mut rng)).collect();
    let rebuilt = EmpiricalDistribution::from_samples(&draws).unwrap();
    let ks = ks_distance(dist, &rebuilt);
    assert!(ks < 0.01, "ks = {ks}");
    assert!(started.elapsed().as_secs_f64() < 5.0, "runtime bound");
    pass("resampling-fidelity", started);
}

/// Criterion: over a 1e5-packet run with a positive-support upcall
/// distribution, every record satisfies the stage-sum identity and
/// upcall > 0 exactly on cache misses.
#[test]
fn a4_stage_sum_and_upcall_iff_miss() {
    let started = Instant::now();
    // Three packet-size flows against a two-entry cache keep misses
    // recurring throughout the run.
    let config = ScenarioConfig {
        packet_size: PacketSizeSpec::Variable(vec![56, 576, 1400]),
        data_rate: DataRateSpec::Fixed(750_000.0),
        packet_count: 100_000,
        seed: 4242,
        cache_capacity: 2,
        ..reference_configs()["voi-vps"].clone()
    };
    let models = build_reference_models();
    assert!(models["voi"].upcall.min() > 0.0);
    let report = run_simulation(&config).unwrap();
    assert_eq!(report.records.len(), 100_000);
    for r in &report.records {
        assert_eq!(
            r.total_us,
            r.cpu_counters_us + r.lookup_us + r.upcall_us + r.stats_update_us
        );
        assert_eq!(r.upcall_us > 0.0, !r.cache_hit);
    }
    assert!(report.miss_count > 1, "workload must re-miss");
    assert!(started.elapsed().as_secs_f64() < 10.0, "runtime bound");
    pass("stage-sum-and-upcall-iff-miss", started);
}

/// Criterion: with stage point masses (4, 3, 5, 2) us and one flow, the
/// first packet's total is exactly 14 us and every other packet's exactly
/// 9 us, over 10 000 packets.
#[test]
fn a5_point_mass_end_to_end() {
    let started = Instant::now();
    let model = StageDelayModel::point_masses(4.0, 3.0, 5.0, 2.0).unwrap();
    let config = ScenarioConfig {
        packet_size: PacketSizeSpec::Fixed(576),
        data_rate: DataRateSpec::Fixed(750_000.0),
        packet_count: 10_000,
        ..reference_configs()["voi-vdr"].clone()
    };
    let report = run_simulation_with_model(&config, &model).unwrap();
    assert_eq!(report.records.len(), 10_000);
    assert_eq!(report.records[0].total_us, 14.0);
    assert!(!report.records[0].cache_hit);
    for r in &report.records[1..] {
        assert_eq!(r.total_us, 9.0);
        assert!(r.cache_hit);
    }
    pass("point-mass-end-to-end", started);
}

/// Criterion: the bundled synthetic reference models reproduce every
/// scalar anchor, with zero tolerance: virtual-platform total median at
/// or below 25 us and maximum at or below 40 us, baremetal maximum at or
/// below 10 us, CPU-counter fetch with the largest stage mean and lookup
/// second on both platforms, and strictly lower baremetal variance per
/// stage.
#[test]
fn a6_reference_dataset_delay_anchors() {
    let started = Instant::now();
    let models = build_reference_models();

    for model in [&models["voi"], &models["boi"]] {
        let mean = |s: Stage| model.stage(s).mean();
        assert!(mean(Stage::CpuCounters) > mean(Stage::Lookup));
        assert!(mean(Stage::Lookup) > mean(Stage::Upcall));
        assert!(mean(Stage::Lookup) > mean(Stage::StatsUpdate));
    }
    for stage in Stage::ALL {
        assert!(
            models["boi"].stage(stage).variance() < models["voi"].stage(stage).variance(),
            "{stage} variance ordering"
        );
    }

    for (name, config) in reference_configs() {
        let report = run_simulation(&config).unwrap();
        let total = report.total_summary;
        match config.platform {
            dpathsim::Platform::Voi => {
                assert!(total.median <= 25.0, "{name}: median {}", total.median);
                assert!(total.max <= 40.0, "{name}: max {}", total.max);
            }
            dpathsim::Platform::Boi => {
                assert!(total.max <= 10.0, "{name}: max {}", total.max);
            }
        }
    }
    assert!(started.elapsed().as_secs_f64() < 30.0, "runtime bound");
    pass("reference-dataset-delay-anchors", started);
}

fn tree_bytes(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut files: Vec<(PathBuf, Vec<u8>)> = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(current) = stack.pop() {
        for entry in fs::read_dir(&current).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().to_path_buf();
                files.push((rel, fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

/// Criterion: `simulate` run twice with an identical config and seed
/// produces byte-identical output trees, across process invocations.
#[test]
fn a7_simulate_determinism() {
    let started = Instant::now();
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/voi-ram.conf");
    let work = tempfile::tempdir().unwrap();
    let mut trees = Vec::new();
    for run in ["first", "second"] {
        let out = work.path().join(run);
        let status = Command::new(env!("CARGO_BIN_EXE_dpathsim"))
            .args([
                "simulate",
                config.to_str().unwrap(),
                "-o",
                out.to_str().unwrap(),
            ])
            .env_remove("DPATHSIM_SEED")
            .status()
            .unwrap();
        assert!(status.success());
        trees.push(tree_bytes(&out));
    }
    assert_eq!(trees[0].len(), 7, "records, five ECDFs, summary");
    assert_eq!(trees[0], trees[1]);
    pass("simulate-determinism", started);
}

/// Criterion: 1000 randomized distributions, models, and traces
/// round-trip losslessly: the model container and trace format exactly,
/// the ECDF CSV with support exact and probabilities at its stated
/// twelve-decimal precision.
#[test]
fn a8_serialization_round_trips() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for round in 0..1000 {
        let samples = random_trace(&mut rng, 250);

        let rows: Vec<TraceRow> = canonical(&samples)
            .into_iter()
            .enumerate()
            .map(|(i, delay_us)| TraceRow {
                index: i as u64 + 1,
                delay_us,
            })
            .collect();
        let trace = TraceFile {
            rows,
            stage: Some("lookup".to_string()),
            platform: Some("voi".to_string()),
            scenario: Some(format!("round-{round}")),
        };
        let reparsed = parse_trace(&export_trace(&trace)).unwrap();
        assert_eq!(reparsed.rows, trace.rows);

        let dist = EmpiricalDistribution::from_samples(&samples).unwrap();
        let curve = parse_ecdf_csv(&export_ecdf_csv(&dist)).unwrap();
        assert_eq!(curve.support, dist.support());
        assert_eq!(*curve.cum_prob.last().unwrap(), 1.0);
        for (got, want) in curve.cum_prob.iter().zip(dist.cum_prob()) {
            assert!((got - want).abs() <= 1e-12);
        }

        let model = StageDelayModel {
            cpu_counters: dist.clone(),
            lookup: EmpiricalDistribution::from_samples(&random_trace(&mut rng, 120)).unwrap(),
            upcall: EmpiricalDistribution::from_samples(&random_trace(&mut rng, 120)).unwrap(),
            stats_update: EmpiricalDistribution::from_samples(&random_trace(&mut rng, 120))
                .unwrap(),
        };
        assert_eq!(load_model(&save_model(&model)).unwrap(), model);
    }
    pass("serialization-round-trips", started);
}
