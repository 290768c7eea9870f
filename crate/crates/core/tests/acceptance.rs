//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ucnorm::agler_cone::{agler_feasibility, cone_to_factorization, row_cone_check, ConeProblem, ConeStatus};
use ucnorm::opspace::{kv_block_report, kv_tuple, Base, OperatorSpaceSpec};
use ucnorm::pick::{pick_solve, PickProblem, PickStatus};
use ucnorm::polyeval::{
    da_multiplier_lb, kv_polynomial, sign_pattern_quadratic, sup_norm_lb, uc_norm_lb, MatrixPolynomial, SamplePlan,
    SearchBudget,
};
use ucnorm::random::{
    gaussian_vector, point_in_ball, point_on_sphere, random_matrix, random_unitary, rng_for, unit_phase,
};
use ucnorm::realization::{
    build_colligation, defect_check, eval_transfer, two_z1z2_factorization, two_z1z2_sigma, verify_factorization,
    Colligation,
};
use ucnorm::tensor_core::{c, identity, kron, op_norm, ComplexMatrix, MatrixTuple, C64};

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

fn two_z1z2() -> MatrixPolynomial {
    MatrixPolynomial::scalar(2, &[(&[1, 1], c(2.0, 0.0))]).unwrap()
}

fn ball_point(seed: u64, i: u64, radius: f64) -> Vec<C64> {
    point_in_ball(Base::L2, 2, radius, &mut rng_for(seed, i))
}

fn kv_integrity() -> Outcome {
    let t = kv_tuple();
    let commutator = t.commutator_norm();
    let largest = t.iter().map(op_norm).fold(0.0, f64::max);
    let mut identity_error: f64 = 0.0;
    let mut failures = 0;
    for i in 0..200u64 {
        let mut rng = rng_for(1, i);
        let a = if i % 2 == 0 {
            // each diagonal position carries a point of the ℓ¹ ball
            let d = 1 + (i as usize / 2) % 4;
            let rows: Vec<Vec<C64>> = (0..d).map(|_| point_in_ball(Base::L1, 3, 1.0, &mut rng)).collect();
            let diag = |j: usize| {
                ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(rows.iter().map(|r| r[j]).collect()))
            };
            MatrixTuple::new(vec![diag(0), diag(1), diag(2)]).unwrap()
        } else {
            // general matrices scaled onto the hypotheses
            let d = 1 + (i as usize / 2) % 3;
            let raw = MatrixTuple::new((0..3).map(|_| random_matrix(d, d, &mut rng)).collect()).unwrap();
            let mut worst = op_norm(&raw.column_matrix());
            for mask in 0..8u32 {
                let s = |b: u32| if mask & (1 << b) == 0 { 1.0 } else { -1.0 };
                let combo = raw.get(0).scale(s(0)) + raw.get(1).scale(s(1)) + raw.get(2).scale(s(2));
                worst = worst.max(op_norm(&combo));
            }
            raw.scaled(1.0 / worst)
        };
        let report = kv_block_report(&a).unwrap();
        identity_error = identity_error.max(report.identity_error());
        if !report.hypotheses_hold || !report.passed() {
            failures += 1;
        }
    }
    outcome(
        commutator <= 1e-14 && largest <= 1.0 + 1e-12 && failures == 0 && identity_error <= 1e-10,
        format!(
            "commutator {commutator:.1e}, max ‖T_j‖ {largest:.15}, block identity error {identity_error:.1e}, {failures}/200 tuples failed"
        ),
    )
}

fn von_neumann_violation() -> Outcome {
    let polydisk = OperatorSpaceSpec::min(3, Base::L1).dual().unwrap();
    let grid = SamplePlan::TorusGrid { per_axis: 60 };
    let measure = |p: &MatrixPolynomial| {
        let r = op_norm(&p.eval_tuple(&kv_tuple()).unwrap());
        let s = sup_norm_lb(p, &polydisk, grid);
        (r, s)
    };
    let (r, s) = measure(&kv_polynomial());
    if r > s + 0.05 {
        return outcome(true, format!("candidate quadratic: ‖p(T)‖ = {r:.12}, torus sup ≈ {s:.12}"));
    }
    let mut best = (f64::NEG_INFINITY, 0, r, s);
    for pattern in 0..64 {
        let (r, s) = measure(&sign_pattern_quadratic(pattern));
        if r - s > best.0 {
            best = (r - s, pattern, r, s);
        }
    }
    outcome(
        best.0 > 0.05,
        format!(
            "candidate failed (r {r:.6}, s {s:.6}); best sign pattern {} gives r {:.6}, s {:.6}",
            best.1, best.2, best.3
        ),
    )
}

fn two_z1z2_factorization_check() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut dev_l2: f64 = 0.0;
    let mut dev_sq: f64 = 0.0;
    let sigma = two_z1z2_sigma();
    for i in 0..400u64 {
        let z = ball_point(3, 2 * i, 1.0);
        let w = ball_point(3, 2 * i + 1, 1.0);
        let data = two_z1z2_factorization(vec![z.clone(), w]).unwrap();
        worst = worst.max(verify_factorization(&data, 1e-10).unwrap().0);
        let norm = op_norm(&sigma.sigma(&z).unwrap());
        let l2 = Base::L2.norm(&z);
        dev_l2 = dev_l2.max((norm - l2).abs());
        dev_sq = dev_sq.max((norm - l2 * l2).abs());
    }
    outcome(
        worst <= 1e-10,
        format!(
            "max residual {worst:.2e}; ‖σ(z)‖ vs √(|z₁|²+|z₂|²): max dev {dev_l2:.1e}, vs |z₁|²+|z₂|²: max dev {dev_sq:.3}"
        ),
    )
}

fn lurking_roundtrip() -> Outcome {
    let points: Vec<Vec<C64>> = (0..12).map(|i| ball_point(4, i, 0.98)).collect();
    let data = two_z1z2_factorization(points).unwrap();
    let gram = verify_factorization(&data, 1e-9).unwrap().0;
    let col = match build_colligation(&data, 1e-9) {
        Ok(col) => col,
        Err(e) => return outcome(false, format!("build failed: {e}")),
    };
    let sigma = two_z1z2_sigma();
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let z = ball_point(5, i, 0.98);
        let v = eval_transfer(&col, &sigma, &z).unwrap()[(0, 0)];
        worst = worst.max((v - c(2.0, 0.0) * z[0] * z[1]).norm());
    }
    let unitarity = col.unitarity_residual();
    outcome(
        gram <= 1e-9 && worst <= 1e-7 && unitarity <= 1e-9,
        format!("Gram mismatch {gram:.1e}, held-out error {worst:.1e}, unitarity {unitarity:.1e}, k = {}", col.k()),
    )
}

fn defect_identity() -> Outcome {
    let mut worst_defect: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    for i in 0..100u64 {
        let mut rng = rng_for(6, i);
        let k = 1 + (i as usize % 8);
        let n = 1 + (i as usize / 8) % 3;
        let lift = 1 + (i as usize / 24) % 2;
        let col = Colligation::from_unitary(&random_unitary(k + n, &mut rng), k).unwrap();
        let x = random_matrix(k * lift, k * lift, &mut rng);
        let radius = 0.95 * rand::Rng::random::<f64>(&mut rng).max(0.05);
        let x = x.scale(radius / op_norm(&x));
        worst_defect = worst_defect.max(defect_check(&col, &x).unwrap());
        worst_norm = worst_norm.max(op_norm(&col.transfer_at(&x).unwrap()));
    }
    outcome(
        worst_defect <= 1e-10 && worst_norm <= 1.0 + 1e-9,
        format!("max defect residual {worst_defect:.1e}, max ‖Q‖ {worst_norm:.12}"),
    )
}

fn classical_pick() -> Outcome {
    let disk = OperatorSpaceSpec::max(1, Base::L1);
    let rho = |a: C64, b: C64| ((a - b) / (c(1.0, 0.0) - b.conj() * a)).norm();
    let mut mismatches = 0;
    let mut feasible = 0;
    let mut interp: f64 = 0.0;
    let mut boundary: f64 = 0.0;
    for i in 0..100u64 {
        let mut rng = rng_for(7, i);
        let l: Vec<C64> = (0..2).map(|_| point_in_ball(Base::Linf, 1, 0.95, &mut rng)[0]).collect();
        let w: Vec<C64> = (0..2).map(|_| point_in_ball(Base::Linf, 1, 0.95, &mut rng)[0]).collect();
        let prob = PickProblem::new(disk.clone(), vec![vec![l[0]], vec![l[1]]], w.clone()).unwrap();
        let r = pick_solve(&prob).unwrap();
        let expected = if rho(w[0], w[1]) <= rho(l[0], l[1]) {
            PickStatus::Feasible
        } else {
            PickStatus::Infeasible
        };
        if r.status != expected {
            mismatches += 1;
            continue;
        }
        if r.status == PickStatus::Feasible {
            feasible += 1;
            for (z, v) in l.iter().zip(&w) {
                interp = interp.max((r.interpolate(&[*z]).unwrap() - v).norm());
            }
            let col = r.interpolant.as_ref().unwrap();
            let t = &r.witness.as_ref().unwrap().tuple;
            for _ in 0..500 {
                let sigma = t.sigma(&[unit_phase(&mut rng)]).unwrap();
                match col.transfer_at(&sigma) {
                    Ok(v) => boundary = boundary.max(op_norm(&v)),
                    Err(_) => boundary = f64::INFINITY,
                }
            }
        }
    }
    outcome(
        mismatches == 0 && interp <= 1e-7 && boundary <= 1.0 + 1e-6,
        format!(
            "{mismatches} verdict mismatches, {feasible} feasible; node error {interp:.1e}, max |f| on circle {boundary:.12}"
        ),
    )
}

fn drury_arveson_pick() -> Outcome {
    // generator: transfer function with σ(z) = Σ z_k E_1k ⊗ I_2 on ℂ² ⊗ ℂ²
    let row_tuple = MatrixTuple::new(
        (0..2)
            .map(|k| {
                let mut unit = ComplexMatrix::zeros(2, 2);
                unit[(0, k)] = c(1.0, 0.0);
                kron(&unit, &identity(2))
            })
            .collect(),
    )
    .unwrap();
    let generator = Colligation::from_unitary(&random_unitary(5, &mut rng_for(8, 0)), 4).unwrap();
    let nodes: Vec<Vec<C64>> = (0..4).map(|i| ball_point(8, 1 + i, 0.9)).collect();
    let values: Vec<ComplexMatrix> = nodes.iter().map(|z| eval_transfer(&generator, &row_tuple, z).unwrap()).collect();
    let row = OperatorSpaceSpec::row(2);
    let prob = ConeProblem::from_values(row.clone(), nodes.clone(), &values).unwrap();
    let cert = row_cone_check(&prob).unwrap();
    let mut node_error = f64::INFINITY;
    if cert.status == ConeStatus::Feasible {
        let data = cone_to_factorization(&cert, &prob, &values, 64).unwrap();
        if let Ok(col) = build_colligation(&data, 1e-8) {
            node_error = nodes
                .iter()
                .zip(&values)
                .map(|(z, v)| (eval_transfer(&col, &data.sigma, z).unwrap() - v).norm())
                .fold(0.0, f64::max);
        }
    }

    // 2z₁z₂ has multiplier norm above one: look for a node set exposing it
    let p = two_z1z2();
    let column = OperatorSpaceSpec::column(2);
    let mut found = None;
    'search: for m in [3usize, 4, 6, 8] {
        for radius in [0.3, 0.5, 0.7, 0.9] {
            for trial in 0..20u64 {
                let pts: Vec<Vec<C64>> = (0..m as u64)
                    .map(|i| {
                        point_on_sphere(Base::L2, 2, &mut rng_for(9, trial * 100 + i))
                            .into_iter()
                            .map(|w| w * radius)
                            .collect()
                    })
                    .collect();
                let vals: Vec<ComplexMatrix> = pts.iter().map(|z| p.eval_point(z).unwrap()).collect();
                let prob = ConeProblem::from_values(column.clone(), pts, &vals).unwrap();
                let cert = row_cone_check(&prob).unwrap();
                if cert.status != ConeStatus::Feasible {
                    found = Some((m, radius, -cert.residual));
                    break 'search;
                }
            }
        }
    }
    let detail = match found {
        Some((m, r, e)) => format!(
            "generated data {:?}, node error {node_error:.1e}; 2z₁z₂ kernel not PSD on {m} nodes at radius {r} (min eigenvalue {e:.3e})",
            cert.status
        ),
        None => format!("generated data {:?}, node error {node_error:.1e}; no non-PSD node set found", cert.status),
    };
    outcome(cert.status == ConeStatus::Feasible && node_error <= 1e-7 && found.is_some(), detail)
}

fn bidisk_feasibility() -> Outcome {
    let spec = OperatorSpaceSpec::max(2, Base::L1);
    let pts: Vec<Vec<C64>> = (0..8)
        .map(|i| point_in_ball(Base::Linf, 2, 0.95, &mut rng_for(10, i)))
        .collect();
    let product = MatrixPolynomial::scalar(2, &[(&[1, 1], c(1.0, 0.0))]).unwrap();
    let vals: Vec<ComplexMatrix> = pts.iter().map(|z| product.eval_point(z).unwrap()).collect();
    let prob = ConeProblem::from_values(spec.clone(), pts.clone(), &vals).unwrap();
    let good = agler_feasibility(&prob, 10_000, 1e-6).unwrap();
    let monotone = good.trace.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9) + 1e-15);

    let mut pts = pts;
    pts[7] = vec![c(0.0, 0.93), c(0.2, -0.1)];
    let scaled = MatrixPolynomial::scalar(2, &[(&[1, 0], c(1.2, 0.0))]).unwrap();
    let vals: Vec<ComplexMatrix> = pts.iter().map(|z| scaled.eval_point(z).unwrap()).collect();
    let prob = ConeProblem::from_values(spec, pts, &vals).unwrap();
    let bad = agler_feasibility(&prob, 10_000, 1e-6).unwrap();
    outcome(
        good.status == ConeStatus::Feasible
            && good.residual <= 1e-6
            && monotone
            && bad.status == ConeStatus::Undecided
            && bad.residual > 1e-3,
        format!(
            "z₁z₂: {:?} after {} iterations (residual {:.1e}, monotone trace {monotone}); 1.2z₁: {:?} with residual {:.3e}",
            good.status, good.iterations, good.residual, bad.status, bad.residual
        ),
    )
}

fn da_oracle() -> Outcome {
    let p = two_z1z2();
    let values: Vec<f64> = (0..=10).map(|d| da_multiplier_lb(&p, d).unwrap()).collect();
    let nondecreasing = values.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    let first_over = values.iter().position(|&v| v > 1.01);
    let top = values[10];
    let budget = SearchBudget {
        samples: 200,
        max_dim: 4,
        seed: 11,
        include_library: true,
        degree_cap: 10,
        polish_steps: 200,
    };
    let (uc, witness) = uc_norm_lb(&p, &OperatorSpaceSpec::column(2), budget).unwrap();
    let gap = (uc - top).abs();
    outcome(
        nondecreasing && first_over.is_some() && gap <= 1e-6,
        format!(
            "lower bounds d=0..10: {}; first > 1.01 at d = {:?}; uc_norm_lb {uc:.12} (witness size {}), gap {gap:.1e}",
            values.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>().join(" "),
            first_over,
            witness.dim()
        ),
    )
}

fn embedding_isometry() -> Outcome {
    let budget = SearchBudget {
        samples: 400,
        max_dim: 3,
        seed: 12,
        include_library: false,
        degree_cap: 1,
        polish_steps: 600,
    };
    let mut worst: f64 = 0.0;
    for i in 0..50u64 {
        let mut rng = rng_for(12, i);
        let n = 2 + (i as usize % 3);
        let a = gaussian_vector(n, &mut rng);
        let p = MatrixPolynomial::linear(&a).unwrap();
        for e in [OperatorSpaceSpec::max(n, Base::L1), OperatorSpaceSpec::row(n)] {
            let (v, _) = uc_norm_lb(&p, &e, budget).unwrap();
            let target = e.vector_norm(&a).unwrap();
            worst = worst.max((v - target).abs());
        }
    }
    outcome(worst <= 1e-3, format!("max |uc_norm_lb − ‖a‖| over 100 runs {worst:.2e}"))
}

/// Name, check and runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("KV example integrity", kv_integrity, Some(10)),
        ("von Neumann violation", von_neumann_violation, Some(60)),
        ("2z1z2 factorization", two_z1z2_factorization_check, Some(5)),
        ("lurking-isometry roundtrip", lurking_roundtrip, Some(5)),
        ("defect identity", defect_identity, Some(10)),
        ("classical Pick agreement", classical_pick, Some(30)),
        ("Drury-Arveson Pick", drury_arveson_pick, Some(30)),
        ("bidisk Agler feasibility", bidisk_feasibility, Some(60)),
        ("DA multiplier oracle", da_oracle, Some(30)),
        ("embedding isometry", embedding_isometry, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|s| elapsed < Duration::from_secs(s));
        let pass = result.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map(|s| format!(" < {s} s")).unwrap_or_default();
        println!(
            "[{}] {:>2} {name}: {} ({:.2} s{budget})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
