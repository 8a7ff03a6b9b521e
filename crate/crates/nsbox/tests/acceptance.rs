//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with its runtime (visible with `cargo test -- --nocapture`).

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::panic::AssertUnwindSafe;
use std::process::Command;
use std::time::{Duration, Instant};

use common::random_ns_box;
use nsbox::bits;
use nsbox::icgame::{concatenated_rac_exact, ic_violation_scan, tripartite_guess_game};
use nsbox::svetlichny::{
    hybrid_local_bound, sign_v, sign_v_parity, svetlichny_correlator, svetlichny_probability,
};
use nsbox::wiring::{verify_simulation, GroupSplit};
use nsbox::{Bias, ConditionalBox};

const BIAS_GRID: [f64; 6] = [0.0, 0.25, 0.5, FRAC_1_SQRT_2, 0.9, 1.0];

fn criterion(number: u32, budget: Duration, what: &str, body: impl FnOnce()) {
    let started = Instant::now();
    match std::panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => {
            let elapsed = started.elapsed();
            println!("criterion {number:2}: PASS ({elapsed:.2?}) — {what}");
            assert!(
                elapsed <= budget,
                "criterion {number} exceeded its {budget:?} budget: {elapsed:?}"
            );
        }
        Err(panic) => {
            println!("criterion {number:2}: FAIL — {what}");
            std::panic::resume_unwind(panic);
        }
    }
}

fn iso(n: usize, e: f64) -> ConditionalBox {
    ConditionalBox::isotropic(n, Bias::new(e).unwrap()).unwrap()
}

#[test]
fn criterion_01_svetlichny_values() {
    criterion(
        1,
        Duration::from_secs(1),
        "isotropic correlator S_N = 2^N E with the three tripartite thresholds",
        || {
            assert!((svetlichny_correlator(&iso(3, 1.0)) - 8.0).abs() < 1e-9);
            assert!((svetlichny_correlator(&iso(3, FRAC_1_SQRT_2)) - 4.0 * SQRT_2).abs() < 1e-9);
            assert!((4.0 * SQRT_2 - 5.656_854_249).abs() < 1e-9);
            assert!((svetlichny_correlator(&iso(3, 0.5)) - 4.0).abs() < 1e-9);

            for n in 4..=6usize {
                let scale = f64::powi(2.0, n as i32);
                for e in BIAS_GRID {
                    let s = svetlichny_correlator(&iso(n, e));
                    assert!((s - scale * e).abs() < 1e-9, "n={n} e={e}");
                }
                let at_half = svetlichny_correlator(&iso(n, 0.5));
                assert!(
                    (at_half - scale / 2.0).abs() < 1e-9,
                    "hybrid bound value at E=1/2, n={n}"
                );
            }
        },
    );
}

#[test]
fn criterion_02_hybrid_local_oracle() {
    criterion(
        2,
        Duration::from_secs(10),
        "exhaustive tripartite hybrid maximum is exactly 3/4 with a replayable witness",
        || {
            let bound = hybrid_local_bound(3).unwrap();
            assert_eq!(bound.max_average, 0.75);
            assert_eq!(bound.settings_correct, 6);

            let replay = bound.witness.to_box(3).unwrap();
            assert_eq!(svetlichny_probability(&replay), 0.75);
        },
    );
}

#[test]
fn criterion_03_sign_function_identity() {
    criterion(
        3,
        Duration::from_secs(1),
        "both sign forms agree on every input string up to 8 parties",
        || {
            for n in 1..=8usize {
                for inputs in 0..1usize << n {
                    assert_eq!(
                        sign_v(inputs),
                        sign_v_parity(inputs),
                        "n={n} inputs={inputs:b}"
                    );
                }
            }
        },
    );
}

#[test]
fn criterion_04_correlator_probability_identity() {
    criterion(
        4,
        Duration::from_secs(5),
        "S_N = |2^{N+1} avgP - 2^N| on 100 random no-signaling mixtures",
        || {
            let mut checked = 0;
            for n in 2..=5usize {
                for seed in 0..25u64 {
                    let b = random_ns_box(n, 1000 * n as u64 + seed);
                    let avg = svetlichny_probability(&b);
                    let s = svetlichny_correlator(&b);
                    let scale = f64::powi(2.0, n as i32);
                    assert!(
                        (s - (2.0 * scale * avg - scale).abs()).abs() < 1e-9,
                        "n={n} seed={seed}"
                    );
                    checked += 1;
                }
            }
            assert_eq!(checked, 100);
        },
    );
}

#[test]
fn criterion_05_tripartite_guess_game() {
    criterion(
        5,
        Duration::from_secs(1),
        "guessing game reaches p_x = p_y = (1+E)/2, certainty and Fano 2 at E = 1",
        || {
            let extremal = tripartite_guess_game(&iso(3, 1.0)).unwrap();
            assert_eq!(extremal.success_probs, vec![1.0, 1.0]);
            assert_eq!(extremal.i_fano, 2.0);
            assert!(extremal.i_fano > 1.0 && extremal.violates_ic);

            for e in [0.0, 0.1, 0.25, 0.4, 0.5, 0.6, FRAC_1_SQRT_2, 0.75, 0.9, 1.0] {
                let result = tripartite_guess_game(&iso(3, e)).unwrap();
                let expected = (1.0 + e) / 2.0;
                assert!((result.success_probs[0] - expected).abs() < 1e-12, "e={e}");
                assert!((result.success_probs[1] - expected).abs() < 1e-12, "e={e}");
            }
        },
    );
}

#[test]
fn criterion_06_wiring_correctness() {
    criterion(
        6,
        Duration::from_secs(30),
        "merge + restrict of every split of every isotropic box reproduces the bipartite box",
        || {
            for n in 2..=6usize {
                for k in 1..n {
                    for e in BIAS_GRID {
                        let split = GroupSplit::new(n, k).unwrap();
                        assert!(
                            verify_simulation(&iso(n, e), split, Bias::new(e).unwrap()),
                            "n={n} k={k} e={e}"
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_07_rac_oracle_equivalence() {
    criterion(
        7,
        Duration::from_secs(10),
        "exact tree enumeration matches (1+E^k)/2 at depths 1..3",
        || {
            for depth in 1..=3usize {
                for e in [0.0, 0.3, FRAC_1_SQRT_2, 0.9, 1.0] {
                    let exact = concatenated_rac_exact(Bias::new(e).unwrap(), depth).unwrap();
                    let analytic = (1.0 + e.powi(depth as i32)) / 2.0;
                    assert!(
                        (exact.per_bit_success - analytic).abs() < 1e-12,
                        "depth={depth} e={e}"
                    );
                }
            }
        },
    );
}

#[test]
fn criterion_08_ic_threshold_dichotomy() {
    criterion(
        8,
        Duration::from_secs(5),
        "IC violation starts strictly above the quantum bias E = 1/sqrt(2)",
        || {
            for e in [0.60, 0.70, FRAC_1_SQRT_2] {
                assert_eq!(ic_violation_scan(Bias::new(e).unwrap(), 25), None, "e={e}");
            }
            let mut last = usize::MAX;
            for e in [0.72, 0.75, 0.80, 1.00] {
                let found = ic_violation_scan(Bias::new(e).unwrap(), 25)
                    .unwrap_or_else(|| panic!("expected a finite depth at e={e}"));
                assert!(found <= last, "depth not non-increasing at e={e}");
                last = found;
            }
            assert_eq!(ic_violation_scan(Bias::new(1.0).unwrap(), 25), Some(1));
        },
    );
}

#[test]
fn criterion_09_no_signaling_suite() {
    criterion(
        9,
        Duration::from_secs(10),
        "isotropic boxes are no-signaling to 1e-12; a signaling table reports discrepancy >= 0.5",
        || {
            for n in 2..=6usize {
                for e in BIAS_GRID {
                    let report = iso(n, e).verify_no_signaling(1e-12);
                    assert!(report.normalized, "n={n} e={e}");
                    assert!(report.no_signaling, "n={n} e={e}");
                    assert!(report.max_marginal_discrepancy < 1e-12, "n={n} e={e}");
                }
            }

            // Party 0 outputs x AND y; its marginal depends on party 1's input.
            let outputs: Vec<usize> = (0..4)
                .map(|input| ((bits::bit(input, 2, 0) & bits::bit(input, 2, 1)) as usize) << 1)
                .collect();
            let signaling = ConditionalBox::deterministic(2, &outputs).unwrap();
            let report = signaling.verify_no_signaling(1e-9);
            assert!(!report.no_signaling);
            assert!(report.max_marginal_discrepancy >= 0.5);
        },
    );
}

#[test]
fn criterion_10_cli_determinism() {
    criterion(
        10,
        Duration::from_secs(30),
        "repeated CLI runs with a fixed seed emit byte-identical output",
        || {
            let args = [
                "sweep",
                "--grid",
                "0.60,0.70710678,0.72,0.75,1.0",
                "--kmax",
                "25",
                "--seed",
                "42",
            ];
            let run = || {
                Command::new(env!("CARGO_BIN_EXE_nsbox"))
                    .args(args)
                    .output()
                    .expect("binary runs")
            };
            let first = run();
            let second = run();
            assert_eq!(first.status.code(), Some(0));
            assert_eq!(first.stdout, second.stdout);
            assert!(!first.stdout.is_empty());

            let verify = |_| {
                Command::new(env!("CARGO_BIN_EXE_nsbox"))
                    .args([
                        "verify",
                        "--box",
                        "isotropic:4:0.9",
                        "--seed",
                        "42",
                        "--format",
                        "csv",
                    ])
                    .output()
                    .expect("binary runs")
            };
            let a = verify(0);
            let b = verify(1);
            assert_eq!(a.stdout, b.stdout);
        },
    );
}
