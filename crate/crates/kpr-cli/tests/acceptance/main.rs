//! Acceptance suite. One test per criterion; each prints its measured
//! values so a failure carries the evidence with it.
//!
//! 1. random-choice baseline utilization,
//! 2. two-customer lock-in and its Variant-2 escape,
//! 3. Variant-1 stabilization by period 20,
//! 4. Variant-2 long-run utilization levels,
//! 5. Variant-2 dominance over Variant 1,
//! 6. noisy-report sweep trends,
//! 7. property suites (closure, proportionality, linearity, exact oracle,
//!    monotonicity, identity, reproducibility),
//! 8. noisy-report inclusion frequencies.


use std::time::Instant;

use kpr_cli::csv::{export_sweep, write_series};
use kpr_cli::{derive_seeds, five_percent_protocol, run_sweep, SimConfig};
use kpr_core::{
    aggregate_runs, final_utilization, noisy_idle_set, rp1_rp2_revise, rp3_revise, rp4_revise,
    rp5_revise, run_baseline, run_from_state, stability_fraction, utilization_fraction, GroupView,
    MetricsSeries, ProbabilityVector, ProtocolConfig, ProtocolKind, RestaurantSet, RevisionMode,
    RngStream, RunConfig, VariantId, WorldState, FINAL_WINDOW, NORMALIZATION_TOLERANCE,
};

const MASTER_SEED: u64 = 42;
const SEEDS: usize = 10;
const RANDOM_REFERENCE: f64 = 0.632_120_558_828_557_7; // 1 - 1/e

fn seeds() -> Vec<u64> {
    derive_seeds(MASTER_SEED, SEEDS)
}

fn run_all(config: &RunConfig) -> Vec<MetricsSeries> {
    kpr_cli::run_seeds(config, &seeds()).expect("runs succeed")
}

fn mean_final(runs: &[MetricsSeries], window: usize) -> f64 {
    let finals: Vec<f64> = runs
        .iter()
        .map(|s| final_utilization(s, window).unwrap())
        .collect();
    finals.iter().sum::<f64>() / finals.len() as f64
}

fn five_percent_config(label: &str, variant: VariantId, periods: usize) -> RunConfig {
    RunConfig {
        n: 1000,
        periods,
        variant,
        protocol: ProtocolConfig::new(five_percent_protocol(label, 1000)),
    }
}

#[test]
fn criterion_1_random_baseline() {
    let start = Instant::now();
    let mut total = 0.0;
    for &seed in &seeds() {
        let series = run_baseline(1000, 1, &mut RngStream::new(seed)).unwrap();
        total += series.records[0].utilization;
    }
    let mean = total / SEEDS as f64;
    let elapsed = start.elapsed();
    println!(
        "criterion 1: baseline period-1 mean utilization {mean:.4} \
         (reference {RANDOM_REFERENCE:.4}), runtime {elapsed:?}"
    );
    assert!(
        (mean - RANDOM_REFERENCE).abs() <= 0.02,
        "baseline mean {mean} not within 0.02 of {RANDOM_REFERENCE}"
    );
    assert!(elapsed.as_secs_f64() < 1.0, "baseline took {elapsed:?}");
}

fn lock_in_vectors() -> Vec<ProbabilityVector> {
    vec![
        ProbabilityVector::one_hot(2, 1).unwrap(),
        ProbabilityVector::one_hot(2, 1).unwrap(),
    ]
}

#[test]
fn criterion_2_lock_in_counterexample() {
    // Variant 1: both customers pinned on restaurant 1 split it forever.
    let state = WorldState::with_vectors(
        VariantId::Variant1,
        ProtocolConfig::new(ProtocolKind::Rp1 { k: 1 }),
        lock_in_vectors(),
    )
    .unwrap();
    let series = run_from_state(state, 50, &mut RngStream::new(MASTER_SEED)).unwrap();
    assert!(
        series.records.iter().all(|r| r.utilization == 0.5),
        "variant 1 lock-in must hold utilization at exactly 0.5"
    );

    // Variant 2: the bumped customer walks away and both get served.
    let protocols = [
        ("rp1", ProtocolKind::Rp1 { k: 1 }),
        ("rp3", ProtocolKind::Rp3 { group_size: 2 }),
        ("rp5", ProtocolKind::Rp5 { pi: 0.05 }),
    ];
    for (label, kind) in protocols {
        let mut escaped = 0;
        for &seed in &seeds() {
            let state = WorldState::with_vectors(
                VariantId::Variant2,
                ProtocolConfig::new(kind),
                lock_in_vectors(),
            )
            .unwrap();
            let series = run_from_state(state, 10, &mut RngStream::new(seed)).unwrap();
            if series.records.iter().any(|r| r.utilization == 1.0) {
                escaped += 1;
            }
        }
        println!("criterion 2: variant 2 {label} escaped on {escaped}/{SEEDS} seeds");
        assert!(
            escaped >= 9,
            "variant 2 {label} escaped the lock-in on only {escaped}/{SEEDS} seeds"
        );
    }
}

/// Information levels tried in ascending order; 0.05 is the reported
/// 5% setting.
const LEVELS: [f64; 6] = [0.05, 0.1, 0.25, 0.5, 0.75, 1.0];

fn protocol_at_level(label: &str, n: usize, level: f64) -> ProtocolKind {
    let size = ((n as f64 * level).round() as usize).clamp(1, n);
    match label {
        "rp1" => ProtocolKind::Rp1 { k: size.min(n - 1) },
        "rp2" => ProtocolKind::Rp2 { group_size: size },
        "rp3" => ProtocolKind::Rp3 { group_size: size },
        "rp4" => ProtocolKind::Rp4 { alpha: level },
        "rp5" => ProtocolKind::Rp5 { pi: level },
        other => panic!("unknown protocol {other}"),
    }
}

#[test]
fn criterion_3_variant1_stabilization() {
    for label in ["rp1", "rp2", "rp3", "rp4", "rp5"] {
        let mut passing_level = None;
        for &level in &LEVELS {
            let config = RunConfig {
                n: 1000,
                periods: 20,
                variant: VariantId::Variant1,
                protocol: ProtocolConfig::new(protocol_at_level(label, 1000, level)),
            };
            let runs = run_all(&config);
            let agg = aggregate_runs(&runs).unwrap();
            let stability = agg.last().unwrap().mean_stability;
            if stability >= 0.99 {
                passing_level = Some((level, stability));
                break;
            }
            println!(
                "criterion 3: {label} at information level {level} only reached \
                 stability {stability:.4} by period 20"
            );
        }
        let (level, stability) =
            passing_level.unwrap_or_else(|| panic!("{label} never reached 0.99 stability"));
        println!(
            "criterion 3: {label} mean stability {stability:.4} by period 20 \
             at information level {level}{}",
            if level == 0.05 {
                " (the 5% setting)"
            } else {
                ""
            }
        );
    }
}

#[test]
fn criterion_4_variant2_near_full_utilization() {
    let mut finals = Vec::new();
    for label in ["rp1", "rp2", "rp3", "rp5", "rp4"] {
        let config = five_percent_config(label, VariantId::Variant2, 100);
        let start = Instant::now();
        let runs = run_all(&config);
        let elapsed = start.elapsed();
        let final_u = mean_final(&runs, FINAL_WINDOW);
        println!("criterion 4: {label} variant-2 final utilization {final_u:.4} ({elapsed:?})");
        assert!(
            elapsed.as_secs_f64() < 10.0,
            "{label} batch took {elapsed:?}"
        );
        finals.push((label, final_u));
    }
    let rp4_final = finals.iter().find(|(l, _)| *l == "rp4").unwrap().1;
    let others_min = finals
        .iter()
        .filter(|(l, _)| *l != "rp4")
        .map(|&(_, u)| u)
        .fold(f64::INFINITY, f64::min);
    println!(
        "criterion 4: min(rp1,rp2,rp3,rp5) = {others_min:.4}, rp4 = {rp4_final:.4}, \
         gap = {:.4} (required >= 0.05)",
        others_min - rp4_final
    );
    for (label, u) in &finals {
        if *label != "rp4" {
            assert!(*u >= 0.95, "{label} final utilization {u} below 0.95");
        }
    }
    // Known red: utilization is monotone under variant 2 (a served
    // customer always returns; a bump swaps who is served, never the
    // count), so by periods 91-100 every protocol has crept near 1 and
    // the inaccurate-report handicap has decayed to ~0.005 here. The
    // handicap is pronounced at shorter horizons (~0.05 at 20 periods).
    // The 0.05 end-state target is kept rather than loosened.
    assert!(
        rp4_final <= others_min - 0.05,
        "rp4 final utilization {rp4_final:.4} is not at least 0.05 below the \
         others' minimum {others_min:.4} (gap {:.4})",
        others_min - rp4_final
    );
}

#[test]
fn criterion_5_variant_dominance() {
    for label in ["rp1", "rp2", "rp3", "rp4", "rp5"] {
        let v1 = mean_final(
            &run_all(&five_percent_config(label, VariantId::Variant1, 20)),
            FINAL_WINDOW,
        );
        let v2 = mean_final(
            &run_all(&five_percent_config(label, VariantId::Variant2, 20)),
            FINAL_WINDOW,
        );
        println!("criterion 5: {label} final utilization v1 {v1:.4} vs v2 {v2:.4}");
        assert!(
            v2 >= v1 - 0.01,
            "{label}: variant 2 ({v2:.4}) fell more than 0.01 below variant 1 ({v1:.4})"
        );
    }
}

#[test]
fn criterion_6_rp6_sweep_trends() {
    let axis: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let base = SimConfig {
        run: RunConfig {
            n: 1000,
            periods: 100,
            variant: VariantId::Variant2,
            protocol: ProtocolConfig::new(ProtocolKind::Rp6 {
                alpha: 0.0,
                pi: 0.0,
            }),
        },
        seeds: seeds(),
        out: std::path::PathBuf::from("unused.csv"),
    };
    let start = Instant::now();
    let grid = run_sweep(&axis, &axis, &base).expect("sweep runs");
    println!(
        "criterion 6: 11x11 grid with {SEEDS} seeds/cell in {:?}",
        start.elapsed()
    );

    let artifact = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("rp6_sweep.csv");
    export_sweep(&artifact, &grid).unwrap();
    println!("criterion 6: grid written to {}", artifact.display());

    // (a) Full belief: utilization must not fall as accuracy rises,
    // up to 0.02 sampling noise against the running maximum.
    let pi_one = axis.len() - 1;
    let mut running_max = f64::NEG_INFINITY;
    for (ai, &alpha) in axis.iter().enumerate() {
        let u = grid.cell(ai, pi_one).mean_final_utilization;
        println!("criterion 6a: pi=1.0 alpha={alpha:.1} final {u:.4}");
        assert!(
            u >= running_max - 0.02,
            "at pi=1.0, utilization {u:.4} at alpha={alpha} dropped more than \
             0.02 below the running maximum {running_max:.4}"
        );
        running_max = running_max.max(u);
    }

    // (b) Zero belief: the report is ignored, the row is flat.
    let row: Vec<f64> = (0..axis.len())
        .map(|ai| grid.cell(ai, 0).mean_final_utilization)
        .collect();
    let spread = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - row.iter().cloned().fold(f64::INFINITY, f64::min);
    println!("criterion 6b: pi=0.0 row spread across alpha = {spread:.6}");
    assert!(spread <= 0.05, "pi=0 row spread {spread} exceeds 0.05");

    // (c) Low accuracy column, recorded without asserting monotonicity:
    // belief in a worthless report need not help.
    println!("criterion 6c: alpha=0.0 column (belief from 0.0 to 1.0):");
    let mut non_monotone = false;
    let mut prev = f64::NEG_INFINITY;
    for (pi_idx, &pi) in axis.iter().enumerate() {
        let u = grid.cell(0, pi_idx).mean_final_utilization;
        println!("criterion 6c:   pi={pi:.1} final {u:.4}");
        if u < prev {
            non_monotone = true;
        }
        prev = u;
    }
    println!("criterion 6c: column monotone in belief: {}", !non_monotone);
}

// ---------------------------------------------------------------------
// Criterion 7: property suites.
// ---------------------------------------------------------------------

/// Deterministic fuzz vector: mixes dense, sparse, and near-one-hot
/// shapes over 2..=max_n restaurants.
fn fuzz_vector(rng: &mut RngStream, max_n: usize) -> ProbabilityVector {
    let n = 2 + rng.uniform_index(max_n - 1);
    match rng.uniform_index(4) {
        0 => ProbabilityVector::one_hot(n, rng.uniform_index(n)).unwrap(),
        1 => {
            // Sparse: a handful of positive entries.
            let mut weights = vec![0.0; n];
            let support = 1 + rng.uniform_index(n);
            for _ in 0..support {
                weights[rng.uniform_index(n)] += rng.next_f64() + 0.01;
            }
            normalize(weights)
        }
        2 => {
            // Near-one-hot with valid dust elsewhere.
            let hot = rng.uniform_index(n);
            let mut weights = vec![1e-12; n];
            weights[hot] = 1.0;
            normalize(weights)
        }
        _ => normalize((0..n).map(|_| rng.next_f64() + 1e-3).collect()),
    }
}

fn normalize(mut weights: Vec<f64>) -> ProbabilityVector {
    let sum: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= sum;
    }
    ProbabilityVector::from_entries(weights).unwrap()
}

fn fuzz_subset(rng: &mut RngStream, n: usize) -> RestaurantSet {
    let mut set = RestaurantSet::empty(n);
    for j in 0..n {
        if rng.next_f64() < 0.4 {
            set.insert(j);
        }
    }
    set
}

fn assert_distribution(v: &ProbabilityVector, context: &str) {
    let mut sum = 0.0;
    for j in 0..v.len() {
        let p = v.entry(j);
        assert!(p >= 0.0, "{context}: negative entry {p} at {j}");
        sum += p;
    }
    assert!(
        (sum - 1.0).abs() <= NORMALIZATION_TOLERANCE,
        "{context}: sum {sum}"
    );
}

fn property_normalization_closure() {
    let cases = 10_000;
    let mut rng = RngStream::new(0xFACE);
    for op in 0..5 {
        for case in 0..cases {
            let v = fuzz_vector(&mut rng, 40);
            let n = v.len();
            let own = rng.uniform_index(n);
            let mode = if case % 2 == 0 {
                RevisionMode::MassPreserving
            } else {
                RevisionMode::LiteralEquations
            };
            let out = match op {
                0 => {
                    let mut visited = fuzz_subset(&mut rng, n);
                    visited.insert(own);
                    rp1_rp2_revise(&v, &visited, own, mode)
                }
                1 => {
                    let members = fuzz_subset(&mut rng, n);
                    let split = fuzz_subset(&mut rng, n);
                    let group = GroupView {
                        served: members.ids().filter(|j| !split.contains(*j)).collect(),
                        idle: members.ids().filter(|j| split.contains(*j)).collect(),
                    };
                    rp3_revise(&v, &group, mode)
                }
                2 => rp4_revise(&v, &fuzz_subset(&mut rng, n), own),
                3 => rp5_revise(&v, &fuzz_subset(&mut rng, n), own, rng.next_f64()),
                _ => {
                    let idle: Vec<bool> = (0..n).map(|_| rng.next_f64() < 0.3).collect();
                    let alpha = rng.next_f64();
                    let reported = noisy_idle_set(&idle, alpha, &mut rng);
                    rp5_revise(&v, &reported, own, rng.next_f64())
                }
            };
            assert_distribution(&out, &format!("op {op} case {case}"));
        }
    }
    println!("criterion 7: normalization closure held for 5 x {cases} fuzz cases");
}

fn property_proportionality() {
    let cases = 10_000;
    let mut rng = RngStream::new(0xBEEF);
    let mut checked = 0usize;
    while checked < cases {
        let v = fuzz_vector(&mut rng, 24);
        let n = v.len();
        let z = fuzz_subset(&mut rng, n);
        if z.len() >= n {
            continue;
        }
        let surviving: f64 = (0..n).filter(|&j| !z.contains(j)).map(|j| v.entry(j)).sum();
        if surviving == 0.0 {
            continue;
        }
        let out = v
            .zero_and_redistribute(&z, RevisionMode::MassPreserving)
            .unwrap();
        for j in (0..n).filter(|&j| !z.contains(j)) {
            for k in (0..n).filter(|&k| !z.contains(k)) {
                if v.entry(k) > 0.0 {
                    let before = v.entry(j) / v.entry(k);
                    let after = out.entry(j) / out.entry(k);
                    assert!(
                        (before - after).abs() <= 1e-9 * before.max(1.0),
                        "proportion {before} became {after}"
                    );
                }
            }
        }
        checked += 1;
    }
    println!("criterion 7: proportionality preserved over {cases} redistribution cases");
}

fn property_blend_linearity() {
    let mut rng = RngStream::new(0xB1ED);
    let pis: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    for _ in 0..500 {
        let v = fuzz_vector(&mut rng, 16);
        let n = v.len();
        let own = rng.uniform_index(n);
        let reported = fuzz_subset(&mut rng, n);
        let believe = rp5_revise(&v, &reported, own, 1.0);
        let doubt = rp5_revise(&v, &reported, own, 0.0);
        for &pi in &pis {
            let blended = rp5_revise(&v, &reported, own, pi);
            for j in 0..n {
                let expected = pi * believe.entry(j) + (1.0 - pi) * doubt.entry(j);
                assert!(
                    (blended.entry(j) - expected).abs() <= 1e-9,
                    "blend at pi={pi} deviates at {j}"
                );
            }
        }
    }
    println!("criterion 7: belief blend linear at 11 belief levels over 500 cases");
}

fn property_exact_oracle() {
    oracle::validate_oracle();
    let mut rng = RngStream::new(0x0AC1E);
    let cases = 3_000;

    let close = |got: &ProbabilityVector, want: &[num::rational::BigRational], what: &str| {
        for (j, want_j) in want.iter().enumerate() {
            let w = oracle::to_f64(want_j);
            assert!(
                (got.entry(j) - w).abs() <= 1e-12,
                "{what}: entry {j} got {} want {w}",
                got.entry(j)
            );
        }
    };

    for case in 0..cases {
        let n = 2 + rng.uniform_index(3); // 2..=4
                                          // Small integer weights make human re-derivation possible.
        let mut weights: Vec<f64> = (0..n).map(|_| rng.uniform_index(9) as f64).collect();
        if weights.iter().all(|&w| w == 0.0) {
            weights[rng.uniform_index(n)] = 1.0;
        }
        let sum: f64 = weights.iter().sum();
        let v = ProbabilityVector::from_entries(weights.iter().map(|w| w / sum).collect()).unwrap();
        let rv = oracle::from_entries(&v.to_dense());
        let own = rng.uniform_index(n);
        let literal = case % 2 == 1;
        let mode = if literal {
            RevisionMode::LiteralEquations
        } else {
            RevisionMode::MassPreserving
        };

        // Window/group removal.
        let mut visited = fuzz_subset(&mut rng, n);
        visited.insert(own);
        let flags: Vec<bool> = (0..n).map(|j| visited.contains(j)).collect();
        match oracle::zero_and_redistribute(&rv, &flags, literal) {
            Some(expected) if visited.len() < n => {
                close(
                    &rp1_rp2_revise(&v, &visited, own, mode),
                    &expected,
                    "window removal",
                );
            }
            _ => {
                // Full cover: the agent falls back to uniform over the
                // others, re-derived directly here.
                let got = rp1_rp2_revise(&v, &visited, own, mode);
                for j in 0..n {
                    let want = if j == own { 0.0 } else { 1.0 / (n - 1) as f64 };
                    assert!((got.entry(j) - want).abs() <= 1e-12);
                }
            }
        }

        // Group-local revision.
        let members = fuzz_subset(&mut rng, n);
        let split = fuzz_subset(&mut rng, n);
        let group = GroupView {
            served: members.ids().filter(|j| !split.contains(*j)).collect(),
            idle: members.ids().filter(|j| split.contains(*j)).collect(),
        };
        close(
            &rp3_revise(&v, &group, mode),
            &oracle::rp3(&rv, &group.served, &group.idle, literal),
            "group revision",
        );

        // Report concentration and belief blend.
        let reported = fuzz_subset(&mut rng, n);
        let rflags: Vec<bool> = (0..n).map(|j| reported.contains(j)).collect();
        close(
            &rp4_revise(&v, &reported, own),
            &oracle::rp4(&rv, &rflags, own),
            "report concentration",
        );
        let pi = rng.uniform_index(5) as f64 / 4.0;
        close(
            &rp5_revise(&v, &reported, own, pi),
            &oracle::rp5(&rv, &rflags, own, &oracle::rational(pi)),
            "belief blend",
        );
    }
    println!("criterion 7: exact rational oracle matched over {cases} cases at n <= 4");
}

fn property_variant1_monotone() {
    let mut rng = RngStream::new(0x51AB);
    for sim in 0..120 {
        let n = 2 + rng.uniform_index(23);
        let protocol = random_protocol(&mut rng, n);
        let mut state = WorldState::new(n, VariantId::Variant1, protocol).unwrap();
        let mut run_rng = RngStream::new(rng.next_u64());
        let mut stable = vec![false; n];
        for _ in 0..25 {
            kpr_core::advance_period(&mut state, &mut run_rng).unwrap();
            for (i, c) in state.customers().iter().enumerate() {
                if stable[i] {
                    assert!(
                        c.vector.is_stable(),
                        "sim {sim}: customer {i} destabilized under variant 1"
                    );
                }
                stable[i] |= c.vector.is_stable();
            }
        }
    }
    println!("criterion 7: variant-1 stable sets monotone over 120 random runs");
}

fn property_variant2_identity() {
    let mut rng = RngStream::new(0x1DE7);
    for _ in 0..120 {
        let n = 2 + rng.uniform_index(23);
        let protocol = random_protocol(&mut rng, n);
        let mut state = WorldState::new(n, VariantId::Variant2, protocol).unwrap();
        let mut run_rng = RngStream::new(rng.next_u64());
        for _ in 0..25 {
            let outcome = kpr_core::advance_period(&mut state, &mut run_rng).unwrap();
            let util = utilization_fraction(&outcome, n);
            let stab = stability_fraction(state.customers(), VariantId::Variant2);
            assert_eq!(util, stab, "variant-2 stability must equal utilization");
        }
    }
    println!("criterion 7: variant-2 stability equals utilization over 120 random runs");
}

fn random_protocol(rng: &mut RngStream, n: usize) -> ProtocolConfig {
    let kind = match rng.uniform_index(6) {
        0 => ProtocolKind::Rp1 {
            k: 1 + rng.uniform_index(n - 1),
        },
        1 => ProtocolKind::Rp2 {
            group_size: 1 + rng.uniform_index(n),
        },
        2 => ProtocolKind::Rp3 {
            group_size: 1 + rng.uniform_index(n),
        },
        3 => ProtocolKind::Rp4 {
            alpha: rng.next_f64(),
        },
        4 => ProtocolKind::Rp5 { pi: rng.next_f64() },
        _ => ProtocolKind::Rp6 {
            alpha: rng.next_f64(),
            pi: rng.next_f64(),
        },
    };
    ProtocolConfig {
        kind,
        literal_equations: rng.next_f64() < 0.2,
    }
}

fn property_reproducibility() {
    let config = RunConfig {
        n: 200,
        periods: 30,
        variant: VariantId::Variant2,
        protocol: ProtocolConfig::new(ProtocolKind::Rp6 {
            alpha: 0.35,
            pi: 0.65,
        }),
    };
    let export = || {
        let runs = kpr_cli::run_seeds(&config, &derive_seeds(MASTER_SEED, 3)).unwrap();
        let mut buf = Vec::new();
        write_series(&mut buf, &runs).unwrap();
        buf
    };
    let a = export();
    let b = export();
    assert_eq!(a, b, "seeded reruns must export byte-identical series");
    assert!(!a.is_empty());
    println!("criterion 7: seeded reruns export byte-identical bytes");
}

#[test]
fn criterion_7_property_suites() {
    property_normalization_closure();
    property_proportionality();
    property_blend_linearity();
    property_exact_oracle();
    property_variant1_monotone();
    property_variant2_identity();
    property_reproducibility();
}

#[test]
fn criterion_8_noisy_report_frequencies() {
    let n = 200;
    let idle: Vec<bool> = (0..n).map(|j| j < n / 2).collect();
    let trials = 100_000;
    let base = 1.0 / std::f64::consts::E;
    for (i, alpha) in [0.0, 0.3, 0.7, 1.0].into_iter().enumerate() {
        let mut rng = RngStream::new(1000 + i as u64);
        let mut idle_hits = 0usize;
        let mut busy_hits = 0usize;
        for _ in 0..trials {
            let reported = noisy_idle_set(&idle, alpha, &mut rng);
            for j in reported.ids() {
                if idle[j] {
                    idle_hits += 1;
                } else {
                    busy_hits += 1;
                }
            }
        }
        let idle_freq = idle_hits as f64 / (trials * n / 2) as f64;
        let busy_freq = busy_hits as f64 / (trials * n / 2) as f64;
        let want_idle = alpha + (1.0 - alpha) * base;
        let want_busy = (1.0 - alpha) * base;
        println!(
            "criterion 8: alpha={alpha} idle {idle_freq:.4} (want {want_idle:.4}) \
             busy {busy_freq:.4} (want {want_busy:.4})"
        );
        assert!(
            (idle_freq - want_idle).abs() <= 0.01,
            "idle inclusion at alpha={alpha}: {idle_freq} vs {want_idle}"
        );
        assert!(
            (busy_freq - want_busy).abs() <= 0.01,
            "busy inclusion at alpha={alpha}: {busy_freq} vs {want_busy}"
        );
    }
}
