//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use chebotarev::cyclotomic::{CycInt, CycRat, Valuation};
use chebotarev::fourier_minors::{combinations, composite_counterexample, FourierMinor, IndexSet};
use chebotarev::fp_poly::{lemma2_scan_exhaustive, lemma2_scan_random, FpPoly, FpScalar};
use chebotarev::recovery::{measure, recover, uniqueness_audit};
use chebotarev::uncertainty::{construct_extremal, uncertainty_check};
use num_bigint::BigInt;
use rand::Rng;
use serde_json::Value;

use common::*;

const SEED: u64 = 0x5EED;
const COEFF_BOUND: i64 = 1_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_chebotarev"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

fn without_elapsed(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("elapsed_ms");
    }
    v
}

/// Theorem: every square minor is non-zero, with exact pair counts.
fn ac1_theorem_exhaustive() -> Outcome {
    let mut details = Vec::new();
    for (p, expected, limit) in [
        (2u64, 5u64, Duration::from_secs(1)),
        (3, 19, Duration::from_secs(1)),
        (5, 251, Duration::from_secs(1)),
        (7, 3431, Duration::from_secs(60)),
    ] {
        let independent: u64 = (1..=p).map(|m| binomial(p, m).pow(2)).sum();
        ensure!(
            independent == expected,
            "count oracle for p = {p}: {independent}"
        );
        ensure!(
            binomial(2 * p, p) - 1 == expected,
            "binomial identity fails for p = {p}"
        );
        let start = Instant::now();
        let (code, report) = cli(&["verify-minors", "--p", &p.to_string()]);
        let wall = start.elapsed();
        ensure!(code == 0, "p = {p}: exit code {code}");
        ensure!(
            report["all_nonzero"] == Value::Bool(true),
            "p = {p}: {report}"
        );
        ensure!(report["pairs_checked"] == expected, "p = {p}: {report}");
        ensure!(report["counterexample"].is_null(), "p = {p}: {report}");
        let elapsed = Duration::from_millis(report["elapsed_ms"].as_u64().unwrap_or(u64::MAX));
        ensure!(elapsed < limit, "p = {p}: {elapsed:?} exceeds {limit:?}");
        details.push(format!(
            "p={p}: {expected} pairs in {} ms",
            wall.as_millis()
        ));
    }
    Ok(details.join(", "))
}

/// Root-multiplicity bound, exhaustive and random, plus tightness.
fn ac2_lemma2() -> Outcome {
    for (p, polys) in [(2u64, 3usize), (3, 26)] {
        let r = lemma2_scan_exhaustive(prime(p)).map_err(|e| e.to_string())?;
        ensure!(
            r.polynomials == polys,
            "p = {p}: {} polynomials",
            r.polynomials
        );
        ensure!(
            r.checks == polys * (p as usize - 1),
            "p = {p}: {} checks",
            r.checks
        );
        ensure!(r.violations == 0, "p = {p}: {} violations", r.violations);
    }
    for p in [5u64, 7] {
        let r = lemma2_scan_random(prime(p), 10_000, SEED).map_err(|e| e.to_string())?;
        ensure!(
            r.polynomials == 10_000 && r.violations == 0,
            "p = {p}: {r:?}"
        );
    }
    for p in [3u64, 5, 7] {
        let ones = vec![1i64; p as usize];
        ensure!(
            x_minus_one_pow_mod(p - 1, p) == ones,
            "(x - 1)^(p-1) is not 1 + … + x^(p-1) mod {p}"
        );
        let g = FpPoly::new(prime(p), &ones);
        let m = g
            .root_multiplicity(FpScalar::new(prime(p), 1))
            .map_err(|e| e.to_string())?;
        ensure!(m == p as usize - 1, "p = {p}: multiplicity {m}");
        ensure!(g.nonzero_coeff_count() == p as usize, "p = {p}: count");
    }
    Ok("p=2,3 exhaustive (3, 26 polys); p=5,7 10^4 random; tight for p=3,5,7".into())
}

/// Reduction is a ring homomorphism whose kernel is exactly `(1 - ω)`.
fn ac3_lemma1() -> Outcome {
    let mut rng = rng(SEED);
    let mut divisions = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        let pr = prime(p);
        let pi = CycInt::one_minus_omega(pr);
        for _ in 0..1000 {
            let a = random_cycint(&mut rng, pr, COEFF_BOUND);
            let b = random_cycint(&mut rng, pr, COEFF_BOUND);
            let (ra, rb) = (
                a.reduce_mod_one_minus_omega(),
                b.reduce_mod_one_minus_omega(),
            );
            ensure!(
                (&a + &b).reduce_mod_one_minus_omega() == (ra + rb) % p,
                "additivity fails at p = {p}"
            );
            ensure!(
                (&a * &b).reduce_mod_one_minus_omega() == (ra * rb) % p,
                "multiplicativity fails at p = {p}"
            );
        }
        for i in 0..1000 {
            let r = random_cycint(&mut rng, pr, COEFF_BOUND);
            // half the elements are forced into the kernel
            let x = if i % 2 == 0 { &pi * &r } else { r };
            let in_kernel = x.reduce_mod_one_minus_omega() == 0;
            match x.divide_by_one_minus_omega() {
                Ok(q) => {
                    ensure!(
                        in_kernel,
                        "division succeeded outside the kernel at p = {p}"
                    );
                    ensure!(&pi * &q == x, "multiply-back fails at p = {p}");
                    divisions += 1;
                }
                Err(_) => ensure!(!in_kernel, "division failed inside the kernel at p = {p}"),
            }
        }
    }
    Ok(format!(
        "6 primes x 10^3 pairs; {divisions} exact divisions verified"
    ))
}

/// `v(p) = p - 1` and additivity of the valuation.
fn ac4_valuation() -> Outcome {
    let mut rng = rng(SEED ^ 4);
    for p in PRIMES {
        let pr = prime(p);
        let v = CycInt::from_integer(pr, p as i64).valuation_one_minus_omega();
        ensure!(v == Valuation::Finite(p - 1), "v({p}) = {v}");
        let pi = CycInt::one_minus_omega(pr);
        for _ in 0..1000 {
            let a =
                &random_nonzero_cycint(&mut rng, pr, COEFF_BOUND) * &pi.pow(rng.gen_range(0..3));
            let b =
                &random_nonzero_cycint(&mut rng, pr, COEFF_BOUND) * &pi.pow(rng.gen_range(0..3));
            let (va, vb) = (
                a.valuation_one_minus_omega().finite().unwrap(),
                b.valuation_one_minus_omega().finite().unwrap(),
            );
            let vab = (&a * &b).valuation_one_minus_omega();
            ensure!(
                vab == Valuation::Finite(va + vb),
                "p = {p}: {vab} != {va} + {vb}"
            );
        }
    }
    Ok("v(p)=p-1 for p in {2..13}; additivity on 6 x 10^3 pairs".into())
}

/// `|supp f| + |supp f̂| >= p + 1`, exhaustive, random, and tight.
fn ac5_uncertainty() -> Outcome {
    for (p, count) in [(2u64, 8usize), (3, 26), (5, 242)] {
        let mut n = 0;
        for f in ternary_signals(prime(p)) {
            let r = uncertainty_check(&f).map_err(|e| format!("p = {p}: {e}"))?;
            ensure!(r.sum > p as usize, "p = {p}: sum {}", r.sum);
            n += 1;
        }
        ensure!(n == count, "p = {p}: enumerated {n} signals");
    }
    let mut rng = rng(SEED ^ 5);
    for p in [7u64, 11, 13] {
        let pr = prime(p);
        for _ in 0..10_000 {
            let size = rng.gen_range(1..=p as usize);
            let f = random_sparse_signal(&mut rng, pr, size, random_value);
            let r = uncertainty_check(&f).map_err(|e| format!("p = {p}: {e}"))?;
            ensure!(r.supp_f == size && r.sum > p as usize, "p = {p}: {r:?}");
        }
    }
    for p in [3u64, 5, 7, 11] {
        let pr = prime(p);
        for k in 1..=p as usize {
            let f = construct_extremal(pr, k).map_err(|e| e.to_string())?;
            let pair = (f.support().len(), f.dft().support().len());
            ensure!(
                pair == (k, p as usize + 1 - k),
                "p = {p}, k = {k}: {pair:?}"
            );
        }
    }
    Ok("8/26/242 ternary signals; 3 x 10^4 random; tight pairs for p=3,5,7,11".into())
}

/// `M·N = p·I` and `det M · det N = p^p` for the full matrix.
fn ac6_full_matrix() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        let pr = prime(p);
        let all = IndexSet::range(pr, 0, p as u32).unwrap();
        let m = FourierMinor::build(pr, &all, &all).unwrap();
        let n = m.conjugate();
        let product = matmul(pr, m.entries(), n.entries());
        for (i, row) in product.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expected = CycInt::from_integer(pr, if i == j { p as i64 } else { 0 });
                ensure!(*v == expected, "p = {p}: (M N)[{i}][{j}] = {v}");
            }
        }
        let d = &m.determinant_integral() * &n.determinant_integral();
        let pp = BigInt::from(p).pow(p as u32);
        ensure!(
            d == CycInt::from_integer(pr, pp.clone()),
            "p = {p}: det product {d}"
        );
    }
    Ok("p=2,3,5,7 exact".into())
}

/// Sparse recovery from 2k samples, and collision-free audits.
fn ac7_recovery() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(SEED ^ 7);
    for p in [5u64, 7, 11] {
        let pr = prime(p);
        for trial in 0..100 {
            let k = rng.gen_range(0..=p as usize / 2);
            let f = random_sparse_signal(&mut rng, pr, k, random_rational_value);
            let samples = IndexSet::new(pr, &random_subset(&mut rng, pr, 2 * k)).unwrap();
            let m = measure(&f, &samples).map_err(|e| e.to_string())?;
            let r = recover(&m, k).map_err(|e| format!("p = {p}, trial {trial}: {e}"))?;
            ensure!(r.signal == f, "p = {p}, trial {trial}: wrong signal");
            ensure!(
                r.support == f.support(),
                "p = {p}, trial {trial}: wrong support"
            );
        }
    }
    let p5 = prime(5);
    let p3 = prime(3);
    let p2 = prime(2);
    let p7 = prime(7);
    let audits = [
        (
            p5,
            1,
            vec![0, 1],
            vec![CycRat::from_integer(p5, 1), CycRat::from_integer(p5, 2)],
        ),
        (p3, 1, vec![0, 2], vec![CycRat::one(p3)]),
        (p2, 1, vec![0, 1], vec![CycRat::one(p2)]),
        (
            p7,
            2,
            vec![1, 2, 4, 5],
            vec![
                CycRat::one(p7),
                CycRat::from_integer(p7, -1),
                CycRat::omega_pow(p7, 1),
            ],
        ),
    ];
    for (pr, k, samples, pool) in audits {
        let samples = IndexSet::new(pr, &samples).unwrap();
        let r = uniqueness_audit(pr, k, &samples, &pool).map_err(|e| e.to_string())?;
        ensure!(r.collisions == 0, "audit collided: {r:?}");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!(
        "300 trials + 4 audits in {} ms",
        elapsed.as_millis()
    ))
}

/// Elimination agrees with cofactor expansion on every minor of size <= 3 at p = 5.
fn ac8_determinant_oracle() -> Outcome {
    let pr = prime(5);
    let mut checked = 0;
    for size in 1..=3 {
        let subsets = combinations(5, size);
        for rows in &subsets {
            for cols in &subsets {
                let rows =
                    IndexSet::new(pr, &rows.iter().map(|&r| i64::from(r)).collect::<Vec<_>>())
                        .unwrap();
                let cols =
                    IndexSet::new(pr, &cols.iter().map(|&c| i64::from(c)).collect::<Vec<_>>())
                        .unwrap();
                let m = FourierMinor::build(pr, &rows, &cols).unwrap();
                let oracle = cofactor_determinant(pr, m.entries());
                ensure!(
                    m.determinant_integral() == oracle,
                    "I = {:?}, J = {:?}",
                    rows.elems(),
                    cols.elems()
                );
                checked += 1;
            }
        }
    }
    ensure!(checked == 225, "checked {checked} minors");
    Ok("225 minors".into())
}

fn ac9_negative_control() -> Outcome {
    let r = composite_counterexample();
    ensure!(r.n == 4 && r.rows == [0, 2] && r.cols == [0, 2], "{r:?}");
    ensure!(
        r.det_is_zero && r.det.re == 0 && r.det.im == 0,
        "det {:?}",
        r.det
    );
    ensure!(r.prime_control.nonzero, "prime control vanished");
    Ok("n=4, I=J={0,2}: det 0".into())
}

/// Identical flags give identical JSON; `--jobs 4` matches `--jobs 1`.
fn ac10_reproducibility() -> Outcome {
    let dir = std::env::temp_dir().join(format!("chebotarev-ac10-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let pr = prime(7);
    let f = chebotarev::uncertainty::Signal::from_integers(pr, &[0, 2, 0, 0, -3, 0, 0]).unwrap();
    let signal = dir.join("signal.json");
    std::fs::write(&signal, f.to_json()).unwrap();
    let samples = IndexSet::new(pr, &[0, 2, 3, 6]).unwrap();
    let meas = dir.join("m.json");
    std::fs::write(&meas, measure(&f, &samples).unwrap().to_json()).unwrap();
    let coeffs = dir.join("g.json");
    std::fs::write(
        &coeffs,
        r#"{"p":7,"terms":{"0":["1","0","0","0","0","0"],"3":["0","-2","0","0","0","0"]}}"#,
    )
    .unwrap();
    let (signal, meas, coeffs) = (
        signal.to_str().unwrap().to_owned(),
        meas.to_str().unwrap().to_owned(),
        coeffs.to_str().unwrap().to_owned(),
    );

    let commands: Vec<Vec<&str>> = vec![
        vec!["verify-minors", "--p", "5"],
        vec!["verify-minors", "--p", "7", "--size", "3"],
        vec!["det", "--p", "7", "--rows", "1,2,4", "--cols", "0,3,5"],
        vec!["valuation", "--p", "7", "--coeffs", "7,0,0,0,0,14"],
        vec!["lemma2", "--p", "7", "--poly", "1,-3,3,-1", "--root", "1"],
        vec![
            "lemma2-scan",
            "--p",
            "7",
            "--random",
            "--count",
            "500",
            "--seed",
            "42",
        ],
        vec!["lemma2-scan", "--p", "3", "--exhaustive"],
        vec!["uncertainty", "--p", "7", "--signal", &signal],
        vec!["recover", "--p", "7", "--k", "2", "--measurements", &meas],
        vec!["trace", "--p", "7", "--rows", "0,1", "--coeffs", &coeffs],
        vec!["composite-counterexample"],
    ];
    for args in &commands {
        let (c1, a) = cli(args);
        let (c2, b) = cli(args);
        ensure!(c1 == 0 && c2 == 0, "{args:?}: exit codes {c1}, {c2}");
        ensure!(!a.is_null(), "{args:?}: no JSON");
        ensure!(
            without_elapsed(a.clone()) == without_elapsed(b),
            "{args:?}: runs differ"
        );
        let mut jobs4 = args.clone();
        jobs4.extend(["--jobs", "4"]);
        let (c4, d) = cli(&jobs4);
        ensure!(c4 == 0, "{jobs4:?}: exit {c4}");
        ensure!(
            without_elapsed(a) == without_elapsed(d),
            "{args:?}: --jobs 4 differs"
        );
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} subcommands", commands.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "AC1",
            "all minors non-zero (p = 2, 3, 5, 7)",
            ac1_theorem_exhaustive,
        ),
        (
            "AC2",
            "root multiplicity below coefficient count",
            ac2_lemma2,
        ),
        ("AC3", "reduction homomorphism and kernel", ac3_lemma1),
        ("AC4", "(1 - w)-adic valuation", ac4_valuation),
        (
            "AC5",
            "uncertainty inequality and tightness",
            ac5_uncertainty,
        ),
        ("AC6", "full matrix identity", ac6_full_matrix),
        ("AC7", "sparse recovery and uniqueness audits", ac7_recovery),
        (
            "AC8",
            "elimination vs cofactor determinant",
            ac8_determinant_oracle,
        ),
        ("AC9", "composite negative control", ac9_negative_control),
        ("AC10", "reproducible CLI output", ac10_reproducibility),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| id.eq_ignore_ascii_case(f)) {
            continue;
        }
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {id:<5} {name} [{detail}] ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id:<5} {name}: {why} ({secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
