//! Acceptance gate: every criterion runs at zero tolerance and prints one
//! PASS/FAIL line with its wall time. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rumin_core::cinfty::finite::cohomology;
use rumin_core::cinfty::shuffle_product;
use rumin_core::model::finite_rumin_model;
use rumin_core::rumin::{closed_form_structure, gamma, pi_form};
use rumin_core::suites::{run_suite, run_suite_with, Suite, VerifyConfig, VerifyReport};
use rumin_core::{int, lefschetz_power_matrix, ContactModel, Form, GradedElement, Matrix, Rational};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn config(n: usize, trials: u64, seed: u64, max_poly_degree: u32) -> VerifyConfig {
    VerifyConfig {
        n,
        trials,
        seed,
        max_poly_degree,
    }
}

fn suites_pass(suites: &[Suite], cfgs: &[VerifyConfig]) -> Outcome {
    let mut checks = 0;
    for cfg in cfgs {
        for &s in suites {
            let r = run_suite(s, cfg).map_err(|e| format!("{s} n={}: {e}", cfg.n))?;
            ensure(r.passed, || {
                format!("{s} n={} failed: {:?}", cfg.n, r.failures.first())
            })?;
            checks += r.checks;
        }
    }
    Ok(format!("{checks} exact checks"))
}

// Expansions as displayed for nu_{1,1}, nu_{1,2}, nu_{2,1}: each term is a
// word over (w, t, e) = (0, 1, 2) and its sign as a function of the degrees.
fn parity(x: i32) -> i32 {
    if x.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn displayed(p: usize, q: usize, d: [i32; 3]) -> Vec<(i32, Vec<usize>)> {
    let [w, t, e] = d;
    match (p, q) {
        (1, 1) => vec![(1, vec![0, 1]), (-parity(w * t), vec![1, 0])],
        (1, 2) => vec![
            (1, vec![0, 1, 2]),
            (-parity(w * t), vec![1, 0, 2]),
            (parity(w * (t + e)), vec![1, 2, 0]),
        ],
        (2, 1) => vec![
            (1, vec![0, 1, 2]),
            (-parity(t * e), vec![0, 2, 1]),
            (parity(e * (w + t)), vec![2, 0, 1]),
        ],
        _ => unreachable!(),
    }
}

fn criterion_1() -> Outcome {
    let mut compared = 0;
    for bits in 0..8 {
        let d = [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
        for (p, q) in [(1, 1), (1, 2), (2, 1)] {
            let degrees = &d[..p + q];
            let ours: Vec<(i32, Vec<usize>)> = shuffle_product(p, q, degrees)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|w| (w.sign, w.word))
                .collect();
            let expected = displayed(p, q, d);
            ensure(ours == expected, || {
                format!("nu_{{{p},{q}}} at degrees {degrees:?}: {ours:?} vs {expected:?}")
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} expansions match term by term"))
}

fn criterion_2() -> Outcome {
    suites_pass(
        &[Suite::DsaLemma],
        &[config(1, 100, 2, 2), config(2, 100, 2, 2)],
    )
}

fn criterion_3() -> Outcome {
    let mut dets = Vec::new();
    for n in 1..=3 {
        let model = ContactModel::new(n).map_err(|e| e.to_string())?;
        for k in 1..=n {
            let m = lefschetz_power_matrix(&model, k).map_err(|e| e.to_string())?;
            ensure(m.rows() == m.cols(), || format!("n={n} k={k}: not square"))?;
            let rank = oracle_rank(&m);
            ensure(rank == m.rows(), || format!("n={n} k={k}: rank {rank} < {}", m.rows()))?;
            dets.push(format!("n{n}k{k}:{}", m.determinant()));
        }
    }
    Ok(format!("determinants {}", dets.join(" ")))
}

fn criterion_4() -> Outcome {
    suites_pass(
        &[Suite::GammaProps, Suite::GammaInvariance],
        &[config(1, 100, 4, 2), config(2, 100, 4, 2)],
    )
}

fn criterion_5() -> Outcome {
    suites_pass(
        &[Suite::Retract, Suite::RuminMembership],
        &[config(1, 100, 5, 2), config(2, 100, 5, 2)],
    )
}

fn criterion_6() -> Outcome {
    suites_pass(
        &[Suite::Stasheff, Suite::ShuffleVanishing, Suite::Morphism],
        &[config(1, 50, 6, 2), config(2, 50, 6, 2)],
    )
}

fn criterion_7() -> Outcome {
    suites_pass(
        &[Suite::TransferMatch, Suite::HigherVanish],
        &[config(1, 50, 7, 2), config(2, 50, 7, 2)],
    )
}

/// Rank by plain Gaussian elimination over the rationals, kept separate from
/// the library's echelon routine.
fn oracle_rank(m: &Matrix) -> usize {
    let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in col..m.cols() {
                    let delta = &f * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers from the blocks of a differential:
/// `b_k = dim_k - rank d_k - rank d_{k-1}`.
fn oracle_betti(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len())
        .map(|k| dims[k] - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
        .collect()
}

/// Exterior algebra on `a, b, c` with `dc = a^b`, written out directly.
/// Monomials are bitmasks over `(a, b, c)`; `d` sends `c` to `a^b` and kills
/// every other monomial, because each of them already contains `a` or `b`
/// next to `c`, or no `c` at all.
fn lambda_abc_betti() -> Vec<usize> {
    let basis: Vec<Vec<u8>> = (0..=3)
        .map(|k| (0u8..8).filter(|s| s.count_ones() == k).collect())
        .collect();
    let ranks: Vec<usize> = (0..=3)
        .map(|k| {
            if k == 3 {
                return 0;
            }
            let target = &basis[k + 1];
            let mut m = Matrix::zeros(target.len(), basis[k].len());
            for (j, &s) in basis[k].iter().enumerate() {
                if s == 0b100 {
                    let i = target.iter().position(|&x| x == 0b011).unwrap();
                    m[(i, j)] = int(1);
                }
            }
            oracle_rank(&m)
        })
        .collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    oracle_betti(&dims, &ranks)
}

fn criterion_8() -> Outcome {
    let model = ContactModel::new(1).map_err(|e| e.to_string())?;
    let fm = finite_rumin_model(&model, 5).map_err(|e| e.to_string())?;
    ensure(fm.ce.basis().len() == 8 && fm.rumin.basis().len() == 6, || {
        format!(
            "dimensions {} and {}",
            fm.ce.basis().len(),
            fm.rumin.basis().len()
        )
    })?;

    let betti_of = |alg: &rumin_core::FiniteGradedAlgebra| -> Vec<usize> {
        let dims: Vec<usize> = (0..=3).map(|k| alg.basis().dim(k)).collect();
        let ranks: Vec<usize> = (0..=3).map(|k| oracle_rank(&alg.differential().block(k))).collect();
        oracle_betti(&dims, &ranks)
    };
    let expected = vec![1, 2, 2, 1];
    let independent = lambda_abc_betti();
    ensure(independent == expected, || format!("hand-built Lambda(a,b,c): {independent:?}"))?;
    for (name, alg) in [("CE", &fm.ce), ("Rumin", &fm.rumin)] {
        let b = betti_of(alg);
        ensure(b == expected, || format!("{name} Betti numbers {b:?}"))?;
        let lib: Vec<usize> = cohomology(alg).betti_numbers().into_iter().map(|(_, b)| b).collect();
        ensure(lib == expected, || format!("{name} library Betti numbers {lib:?}"))?;
    }

    // The ce-cohomology suite covers the ring isomorphism and the exhaustive
    // Stasheff, morphism and shuffle checks through arity 5.
    let report = run_suite(Suite::CeCohomology, &config(1, 1, 0, 0)).map_err(|e| e.to_string())?;
    ensure(report.passed, || format!("ce-cohomology: {:?}", report.failures.first()))?;
    ensure(
        report.notes.iter().any(|n| n == "ring isomorphism [f1]: true"),
        || format!("notes {:?}", report.notes),
    )?;

    // m3(a, b, a) by hand: Gamma(dx1^dy1) = theta, Gamma(dy1^dx1) = -theta, so
    // m3 = pi(theta^a - (-1)^1 a^(-theta)) = 2 theta^a.
    // coframe indices: 0 = theta, 1 = dx1, 2 = dy1
    let dx = Form::generator(&model, 1).map_err(|e| e.to_string())?;
    let dy = Form::generator(&model, 2).map_err(|e| e.to_string())?;
    let theta = model.theta();
    ensure(gamma(&dx.wedge(&dy)) == theta, || "Gamma(dx1^dy1) != theta".to_string())?;
    let by_hand = pi_form(&(&theta.wedge(&dx) + &dx.wedge(&-&theta)));
    ensure(by_hand == theta.wedge(&dx).scale(&int(2)), || format!("by hand: {by_hand}"))?;

    let a = fm.rumin_vector("dx1").ok_or("no dx1")?;
    let b = fm.rumin_vector("dy1").ok_or("no dy1")?;
    let ca = fm.rumin_vector("theta^dx1").ok_or("no theta^dx1")?;
    let m3 = fm.m.eval(3, &[a.clone(), b, a]).map_err(|e| e.to_string())?;
    ensure(m3 == ca.scaled(&int(2)), || format!("m3(a,b,a) = {m3}"))?;
    ensure(fm.forms.to_form(&fm.include.apply(&m3)) == by_hand, || {
        "finite and symbolic m3 disagree".to_string()
    })?;
    // c^a is closed and the Rumin differential into degree 2 vanishes, so
    // the class of 2 c^a is nonzero.
    ensure(fm.rumin.d(&m3).is_zero(), || "m3(a,b,a) is not closed".to_string())?;
    ensure(oracle_rank(&fm.rumin.differential().block(1)) == 0, || {
        "degree-2 coboundaries are nonzero".to_string()
    })?;
    let class = cohomology(&fm.rumin)
        .class_of(&fm.rumin, &m3)
        .map_err(|e| e.to_string())?;
    ensure(class.iter().any(|c| !c.is_zero()), || "zero class".to_string())?;
    Ok(format!("Betti (1,2,2,1) both sides, {} exhaustive checks", report.checks))
}

fn sign_of_degree(d: i32) -> Rational {
    if d.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn first_failure(r: &VerifyReport, check_prefix: &str) -> Result<String, String> {
    ensure(!r.passed, || format!("{} passed with a corrupted operation", r.suite))?;
    let w = r
        .failures
        .iter()
        .find(|w| w.check.starts_with(check_prefix))
        .ok_or_else(|| format!("no witness from '{check_prefix}'"))?;
    ensure(!w.inputs.is_empty() && w.residual != "0", || format!("empty witness {w:?}"))?;
    Ok(format!("{} (trial {})", w.check, w.trial))
}

fn criterion_9() -> Outcome {
    // m3 with the sign of its second term flipped.
    let mut bad_m3 = closed_form_structure(5);
    bad_m3.m.replace(3, -1, |x: &[Form]| {
        let (a, b, c) = (&x[0], &x[1], &x[2]);
        let left = gamma(&a.wedge(b)).wedge(c);
        let right = a.wedge(&gamma(&b.wedge(c))).scale(&sign_of_degree(a.degree()));
        pi_form(&(&left + &right))
    });
    let cfg = config(3, 4, 9, 1);
    let r = run_suite_with(Suite::Stasheff, &cfg, &bad_m3).map_err(|e| e.to_string())?;
    let w1 = first_failure(&r, "Stasheff relation of order 3")?;

    // f2 with its sign flipped.
    let mut bad_f2 = closed_form_structure(5);
    bad_f2
        .f
        .replace(2, -1, |x: &[Form]| gamma(&x[0].wedge(&x[1])));
    let cfg = config(2, 10, 9, 1);
    let r = run_suite_with(Suite::Morphism, &cfg, &bad_f2).map_err(|e| e.to_string())?;
    let w2 = first_failure(&r, "A-infinity morphism relation of order 2")?;
    Ok(format!("caught: {w1}; {w2}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("shuffle ground truth", criterion_1, 1),
        ("theta^dw = w^dtheta on vertical forms", criterion_2, 30),
        ("Lefschetz powers invertible", criterion_3, 5),
        ("Gamma properties and invariance", criterion_4, 120),
        ("projection and Rumin membership", criterion_5, 120),
        ("closed-form C-infinity structure", criterion_6, 600),
        ("transfer cross-check", criterion_7, 300),
        ("finite model end to end", criterion_8, 60),
        ("negative controls", criterion_9, 60),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let elapsed = started.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed > Duration::from_secs(*limit) {
                Err(format!("{msg}; over the {limit} s limit"))
            } else {
                Ok(msg)
            }
        });
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {}: {name} [{secs:.2} s] {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name} [{secs:.2} s] {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
