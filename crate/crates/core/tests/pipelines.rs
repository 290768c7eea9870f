use ucnorm::agler_cone::{agler_feasibility, cone_to_factorization, row_cone_check, ConeProblem, ConeStatus};
use ucnorm::opspace::{duality_falsifier, is_cc, kv_tuple, Base, OperatorSpaceSpec, SamplingBudget};
use ucnorm::polyeval::{kv_polynomial, uc_norm_lb, MatrixPolynomial, SearchBudget};
use ucnorm::random::{point_in_ball, rng_for};
use ucnorm::realization::{build_colligation, eval_transfer, verify_factorization};
use ucnorm::tensor_core::{c, ComplexMatrix, MatrixTuple, C64};

fn values(p: &MatrixPolynomial, pts: &[Vec<C64>]) -> Vec<ComplexMatrix> {
    pts.iter().map(|z| p.eval_point(z).unwrap()).collect()
}

#[test]
fn bidisk_certificate_realizes_the_product() {
    let spec = OperatorSpaceSpec::max(2, Base::L1);
    let pts: Vec<Vec<C64>> = (0..8).map(|i| point_in_ball(Base::Linf, 2, 0.9, &mut rng_for(40, i))).collect();
    let p = MatrixPolynomial::scalar(2, &[(&[1, 1], c(1.0, 0.0))]).unwrap();
    let vals = values(&p, &pts);
    let prob = ConeProblem::from_values(spec, pts, &vals).unwrap();
    let tol = 1e-9;
    let cert = agler_feasibility(&prob, 20_000, tol).unwrap();
    assert_eq!(cert.status, ConeStatus::Feasible);
    let data = cone_to_factorization(&cert, &prob, &vals, 64).unwrap();
    assert!(verify_factorization(&data, 10.0 * tol).unwrap().1);
    let col = build_colligation(&data, 10.0 * tol).unwrap();
    for z in (0..8).map(|i| point_in_ball(Base::Linf, 2, 0.9, &mut rng_for(40, i))) {
        let v = eval_transfer(&col, &data.sigma, &z).unwrap()[(0, 0)];
        assert!((v - z[0] * z[1]).norm() < 1e-5);
    }
}

#[test]
fn ball_certificate_for_a_coordinate() {
    let spec = OperatorSpaceSpec::row(3);
    let pts: Vec<Vec<C64>> = (0..6).map(|i| point_in_ball(Base::L2, 3, 0.95, &mut rng_for(41, i))).collect();
    let p = MatrixPolynomial::linear(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
    let vals = values(&p, &pts);
    let prob = ConeProblem::from_values(spec, pts, &vals).unwrap();
    let cert = row_cone_check(&prob).unwrap();
    assert_eq!(cert.status, ConeStatus::Feasible);
    let data = cone_to_factorization(&cert, &prob, &vals, 128).unwrap();
    let (residual, _) = verify_factorization(&data, 1e-8).unwrap();
    assert!(residual <= 1e-8, "{residual}");
}

#[test]
fn searches_do_not_depend_on_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let budget = SearchBudget {
                samples: 300,
                max_dim: 3,
                seed: 9,
                ..SearchBudget::default()
            };
            let uc = uc_norm_lb(&kv_polynomial(), &OperatorSpaceSpec::max(3, Base::L1), budget).unwrap();
            let t = MatrixTuple::new(vec![ComplexMatrix::identity(2, 2) * c(0.8, 0.0); 2]).unwrap();
            let f = duality_falsifier(&OperatorSpaceSpec::max(2, Base::L2), &t, 1e-9, SamplingBudget::new(300, 3, 2))
                .unwrap();
            (uc, f)
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn kv_tuple_verdicts() {
    let t = kv_tuple();
    let budget = SamplingBudget::new(500, 3, 1);
    assert!(is_cc(&OperatorSpaceSpec::min(3, Base::L1), &t, 1e-9, budget).unwrap().is_verified());
    // each T_j has norm one, so the tuple is also cc for MAX(ℓ¹)
    assert!(is_cc(&OperatorSpaceSpec::max(3, Base::L1), &t, 1e-9, budget).unwrap().is_verified());
}
