//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ecaspectrum::classical::statistical_complexity;
use ecaspectrum::eca::{run_open_boundary_padded, seeded_initial};
use ecaspectrum::harness::{rank_spectrum, traces_csv, ExperimentResults};
use ecaspectrum::quantum::quantum_statistical_memory;
use ecaspectrum::{
    infer_classical, infer_quantum, run_experiment, EpsilonMachine, ExperimentConfig, FuturesEstimator,
    GramMatrix, RuleTable, Tape,
};

const L: usize = 6;
const ORACLE_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn config(rules: &[u8], width: usize, t_max: usize, seeds: &[u64]) -> ExperimentConfig {
    ExperimentConfig {
        rules: rules.to_vec(),
        width,
        seeds: seeds.to_vec(),
        ..ExperimentConfig::default().with_t_max(t_max)
    }
}

fn run(config: &ExperimentConfig) -> ExperimentResults {
    let results = run_experiment(config).expect("valid configuration");
    assert!(
        results.failures.is_empty(),
        "units failed: {:?}",
        results.failures
    );
    results
}

/// Runs shared between criteria: 2, 3 (both scales) and 4.
struct Runs {
    class_one: ExperimentResults,
    rule30_full: ExperimentResults,
    rule30_scaled: ExperimentResults,
    spectrum: ExperimentResults,
    spectrum_config: ExperimentConfig,
}

const SPECTRUM_RULES: [u8; 6] = [18, 22, 30, 54, 110, 122];

impl Runs {
    fn new() -> Runs {
        let spectrum_config = config(&SPECTRUM_RULES, 16_000, 1000, &[1, 2, 3]);
        Runs {
            class_one: run(&config(&[0, 8, 32, 128], 8_000, 200, &[1, 2, 3, 4, 5])),
            rule30_full: run(&config(&[30], 64_000, 1000, &[1, 2, 3, 4, 5])),
            rule30_scaled: run(&config(&[30], 16_000, 1000, &[1, 2, 3, 4, 5])),
            spectrum: run(&spectrum_config),
            spectrum_config,
        }
    }
}

fn exact_oracles() -> Outcome {
    let w = 64_000;
    let cases: [(&str, Tape, usize, f64); 4] = [
        ("all-zeros", Tape::zeros(w), 1, 0.0),
        ("all-ones", Tape::ones(w), 1, 0.0),
        ("alternating", Tape::periodic(&[false, true], w), 2, 1.0),
        (
            "period-3",
            Tape::periodic(&[false, false, true], w),
            3,
            3f64.log2(),
        ),
    ];
    let mut failures = Vec::new();
    for (name, row, states, bits) in &cases {
        let classical = infer_classical(row, L, 0.05).expect("classical inference");
        let n = classical.partition.n_states();
        let c_mu = classical.c_mu;
        let mut ok = n == *states && (c_mu - bits).abs() <= ORACLE_TOL;
        let mut qs = Vec::new();
        for estimator in [FuturesEstimator::Chained, FuturesEstimator::Direct] {
            let c_q = infer_quantum(row, L, estimator).expect("quantum inference").c_q;
            ok &= (c_q - bits).abs() <= ORACLE_TOL;
            qs.push(c_q);
        }
        if !ok {
            failures.push(format!("{name}: states {n}, C_mu {c_mu}, C_q {qs:?}"));
        }
    }
    if failures.is_empty() {
        outcome(
            true,
            "(states, C_mu, C_q) exact within 1e-9 for 4 periodic rows at W=64000",
        )
    } else {
        outcome(false, failures.join("; "))
    }
}

fn class_one(runs: &Runs) -> Outcome {
    let worst = runs
        .class_one
        .traces
        .iter()
        .flat_map(|tr| {
            tr.points
                .iter()
                .filter(|p| p.t >= 50)
                .map(move |p| (tr.rule, p.c_q))
        })
        .fold((0u8, 0.0f64), |acc, x| if x.1 > acc.1 { x } else { acc });
    outcome(
        worst.1 <= 1e-6,
        format!(
            "rules 0,8,32,128 at W=8000: max C_q for t>=50 is {:.3e} (rule {})",
            worst.1, worst.0
        ),
    )
}

fn max_c_q(results: &ExperimentResults) -> f64 {
    results
        .traces
        .iter()
        .flat_map(|tr| tr.points.iter().map(|p| p.c_q))
        .fold(0.0, f64::max)
}

fn rule_30(runs: &Runs) -> Outcome {
    let full = max_c_q(&runs.rule30_full);
    let scaled = max_c_q(&runs.rule30_scaled);
    outcome(
        full <= 0.05 && scaled <= 0.1,
        format!("rule 30, 5 seeds: max C_q {full:.4} at W=64000 (<= 0.05), {scaled:.4} at W=16000 (<= 0.1)"),
    )
}

fn spectrum_ordering(runs: &Runs) -> Outcome {
    let report = rank_spectrum(&runs.spectrum.traces).expect("ranking");
    let rate = |r: u8| report.rate(r).expect("every rule has a rate");
    let growers_beat_flat = [54, 122, 18]
        .iter()
        .all(|&g| [22, 30].iter().all(|&f| rate(g) > rate(f)));
    let s110 = report.summary(110).unwrap();
    let at = |t: usize| s110.c_q_mean[s110.t.iter().position(|&x| x == t).unwrap()];
    let gain = at(1000) - at(10);
    let rates: Vec<String> = SPECTRUM_RULES
        .iter()
        .map(|&r| format!("{r}:{:.4}", rate(r)))
        .collect();
    outcome(
        rate(110) > rate(54) && growers_beat_flat && gain >= 0.5,
        format!(
            "ranking {:?}, rates [{}], rule 110 gains {gain:.3} bits from t=10 to t=1000",
            report.ranking,
            rates.join(" ")
        ),
    )
}

/// Exact word probabilities and conditional futures of the
/// golden-mean process: after a 0 emit 0 or 1 with probability 1/2, after a 1
/// emit 0. Returns C_q from the exact Gram matrix and C_mu from the 2-state
/// machine.
fn golden_mean() -> (f64, f64) {
    // state 0: last symbol 0; state 1: last symbol 1
    let emit = |state: usize, y: usize| -> f64 {
        match (state, y) {
            (0, _) => 0.5,
            (1, 0) => 1.0,
            _ => 0.0,
        }
    };
    let word_prob = |start: usize, word: u32, len: usize| -> f64 {
        let mut state = start;
        let mut p = 1.0;
        for i in (0..len).rev() {
            let y = ((word >> i) & 1) as usize;
            p *= emit(state, y);
            state = y;
        }
        p
    };
    let pi = [2.0 / 3.0, 1.0 / 3.0];
    let mut parts_owned = Vec::new();
    for past in 0..(1u32 << L) {
        let p = pi[0] * word_prob(0, past, L) + pi[1] * word_prob(1, past, L);
        if p == 0.0 {
            continue;
        }
        let state = (past & 1) as usize;
        let futures: Vec<f64> = (0..(1u32 << L)).map(|f| word_prob(state, f, L)).collect();
        parts_owned.push((past, p, futures));
    }
    let parts: Vec<(u32, f64, &[f64])> = parts_owned
        .iter()
        .map(|(k, p, f)| (*k, *p, f.as_slice()))
        .collect();
    let c_q = quantum_statistical_memory(&GramMatrix::from_parts(L, &parts)).expect("exact Gram matrix");

    // T^y[to][from]
    let t0 = vec![vec![0.5, 1.0], vec![0.0, 0.0]];
    let t1 = vec![vec![0.0, 0.0], vec![0.5, 0.0]];
    let machine = EpsilonMachine::from_transitions(t0, t1, None).expect("golden-mean machine");
    (c_q, statistical_complexity(&machine))
}

fn quantum_advantage(runs: &Runs) -> Outcome {
    let (c_q, c_mu) = golden_mean();
    let mut rows = 0usize;
    let mut violations = Vec::new();
    let all = [
        &runs.class_one,
        &runs.rule30_full,
        &runs.rule30_scaled,
        &runs.spectrum,
    ];
    for results in all {
        for tr in &results.traces {
            for p in &tr.points {
                rows += 1;
                if p.c_q > p.diagnostics.past_entropy + 1e-12 {
                    violations.push(format!("rule {} seed {} t {}", tr.rule, tr.seed, p.t));
                }
            }
        }
    }
    outcome(
        c_q < c_mu && violations.is_empty(),
        format!(
            "golden mean C_q {c_q:.6} < C_mu {c_mu:.6}; C_q <= H[pasts] on {}/{rows} rows{}",
            rows - violations.len(),
            if violations.is_empty() {
                String::new()
            } else {
                format!(" (violations: {violations:?})")
            }
        ),
    )
}

fn light_cone() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut mismatches = Vec::new();
    for _ in 0..100 {
        let rule = RuleTable::new(rng.gen());
        let seed: u64 = rng.gen();
        let width = rng.gen_range(1..=64);
        let t_max = rng.gen_range(1..=16);
        let init = seeded_initial(width, seed);
        let a = run_open_boundary_padded(&init, &rule, t_max, t_max, seed).unwrap();
        let b = run_open_boundary_padded(&init, &rule, t_max, 2 * t_max, seed).unwrap();
        if a.rows != b.rows {
            mismatches.push(format!(
                "rule {} seed {seed} W {width} t_max {t_max}",
                rule.number()
            ));
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "100 random (rule, seed, W<=64, t_max<=16): {} mismatches {mismatches:?}",
            mismatches.len()
        ),
    )
}

fn hygiene(runs: &Runs) -> Outcome {
    let mut worst_trace = 0.0f64;
    let mut worst_min = f64::INFINITY;
    let mut worst_residual = 0.0f64;
    let mut machines = 0usize;
    for results in [&runs.rule30_full, &runs.rule30_scaled, &runs.spectrum] {
        for p in results.traces.iter().flat_map(|tr| &tr.points) {
            let d = &p.diagnostics;
            worst_trace = worst_trace.max((d.gram_trace - 1.0).abs());
            worst_min = worst_min.min(d.min_eigenvalue);
            if let Some(r) = d.stationary_residual {
                machines += 1;
                worst_residual = worst_residual.max(r);
            }
        }
    }
    outcome(
        worst_trace <= 1e-9 && worst_min >= -1e-9 && worst_residual <= 1e-10 && machines > 0,
        format!(
            "max |tr G - 1| {worst_trace:.2e}, min eigenvalue {worst_min:.2e}, max stationary residual {worst_residual:.2e} over {machines} machines"
        ),
    )
}

fn reproducibility(runs: &Runs) -> Outcome {
    let first = traces_csv(&runs.spectrum.traces);
    let again = traces_csv(&run(&runs.spectrum_config).traces);
    let single = traces_csv(
        &run(&ExperimentConfig {
            threads: Some(1),
            ..runs.spectrum_config.clone()
        })
        .traces,
    );
    outcome(
        first == again && first == single,
        format!(
            "criterion 4 repeated (default pool and 1 thread): {} CSV bytes, identical: {}",
            first.len(),
            first == again && first == single
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results = vec![("1 exact oracles", exact_oracles())];
    let runs = Runs::new();
    results.push(("2 class I decay", class_one(&runs)));
    results.push(("3 rule 30 stays near zero", rule_30(&runs)));
    results.push(("4 spectrum ordering", spectrum_ordering(&runs)));
    results.push(("5 quantum advantage", quantum_advantage(&runs)));
    results.push(("6 light cone", light_cone()));
    results.push(("7 numerical hygiene", hygiene(&runs)));
    results.push(("8 reproducibility", reproducibility(&runs)));

    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1?}",
        results.len() - failed,
        results.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
