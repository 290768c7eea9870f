//! Finite-set cone feasibility: can `P_ij = I − p(λ_i)p(λ_j)*` be written as
//! `Σ_k Γ_k,ij (1 − λ_i^k conj(λ_j^k))` with positive kernels `Γ_k`
//! (polydisk), or as `Γ_ij (1 − ⟨λ_i, λ_j⟩)` with one positive `Γ` (ball)?
//!
//! The ball case has the closed form `Γ = P / (1 − ⟨λ_i, λ_j⟩)`. The polydisk
//! case is a semidefinite feasibility problem, solved here by Douglas–Rachford
//! splitting between the affine constraint set and the product of PSD cones.
//! Failure to converge is reported as undecided, never as infeasible.

use log::debug;

use crate::error::{Error, Result};
use crate::opspace::{Base, OperatorSpaceSpec, SpaceKind};
use crate::realization::FactorizationData;
use crate::tensor_core::{c, gram_factor, hermitian_eigen, kron, min_eigenvalue, ComplexMatrix, MatrixTuple, C64};

/// Points closer than this are treated as the same node.
pub const NODE_SEPARATION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ConeProblem {
    spec: OperatorSpaceSpec,
    points: Vec<Vec<C64>>,
    target: ComplexMatrix,
    block: usize,
}

/// Which factorization the kernels of a certificate describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeShape {
    /// One kernel per coordinate, `Σ_k Γ_k (1 − λ^k conj(μ^k))`.
    Polydisk,
    /// A single kernel, `Γ (1 − ⟨λ, μ⟩)`.
    Ball,
}

impl ConeProblem {
    /// `target` is `m N × m N` with block `(i, j)` equal to `P_ij`.
    pub fn new(spec: OperatorSpaceSpec, points: Vec<Vec<C64>>, target: ComplexMatrix, block: usize) -> Result<Self> {
        let shape = shape_of(&spec)?;
        let m = points.len();
        if m == 0 || block == 0 {
            return Err(Error::Dimension("cone problem needs at least one point and N >= 1".into()));
        }
        if target.nrows() != m * block || target.ncols() != m * block {
            return Err(Error::Dimension(format!(
                "target is {}x{}, expected {}x{}",
                target.nrows(),
                target.ncols(),
                m * block,
                m * block
            )));
        }
        if target.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let asym = (&target - target.adjoint()).norm();
        if asym > 1e-12 * target.norm().max(1.0) {
            return Err(Error::Dimension(format!("target is not Hermitian (asymmetry {asym:.3e})")));
        }
        let domain = match shape {
            ConeShape::Polydisk => Base::Linf,
            ConeShape::Ball => Base::L2,
        };
        for (i, z) in points.iter().enumerate() {
            if z.len() != spec.n() {
                return Err(Error::Arity {
                    expected: spec.n(),
                    found: z.len(),
                });
            }
            let r = domain.norm(z);
            if r.is_nan() || r >= 1.0 {
                return Err(Error::Domain(format!("point {i} has norm {r}, outside the open unit ball")));
            }
        }
        check_distinct(&points)?;
        Ok(Self {
            spec,
            points,
            target,
            block,
        })
    }

    /// Target `I − p(λ_i)p(λ_j)*` from the values `p(λ_i)`.
    pub fn from_values(spec: OperatorSpaceSpec, points: Vec<Vec<C64>>, values: &[ComplexMatrix]) -> Result<Self> {
        if values.len() != points.len() {
            return Err(Error::Dimension(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        let block = values.first().map(|v| v.nrows()).unwrap_or(1);
        for v in values {
            if v.nrows() != block || v.ncols() != block {
                return Err(Error::Dimension("values must be square of a common size".into()));
            }
        }
        let m = points.len();
        let mut target = ComplexMatrix::zeros(m * block, m * block);
        for i in 0..m {
            for j in 0..m {
                let b = crate::tensor_core::identity(block) - &values[i] * values[j].adjoint();
                target.view_mut((i * block, j * block), (block, block)).copy_from(&b);
            }
        }
        Self::new(spec, points, target, block)
    }

    pub fn spec(&self) -> &OperatorSpaceSpec {
        &self.spec
    }

    pub fn points(&self) -> &[Vec<C64>] {
        &self.points
    }

    pub fn target(&self) -> &ComplexMatrix {
        &self.target
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn shape(&self) -> ConeShape {
        shape_of(&self.spec).expect("validated on construction")
    }

    /// `K_k,ij = 1 − λ_i^k conj(λ_j^k)` (polydisk, one per coordinate) or
    /// `1 − ⟨λ_i, λ_j⟩` (ball), expanded to `N × N` blocks.
    fn weights(&self) -> Vec<ComplexMatrix> {
        let m = self.points.len();
        let ones = ComplexMatrix::from_element(self.block, self.block, c(1.0, 0.0));
        let expand = |f: &dyn Fn(&[C64], &[C64]) -> C64| {
            let small = ComplexMatrix::from_fn(m, m, |i, j| f(&self.points[i], &self.points[j]));
            kron(&small, &ones)
        };
        match self.shape() {
            ConeShape::Polydisk => (0..self.spec.n())
                .map(|k| expand(&|a, b| c(1.0, 0.0) - a[k] * b[k].conj()))
                .collect(),
            ConeShape::Ball => vec![expand(&|a, b| {
                c(1.0, 0.0) - a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<C64>()
            })],
        }
    }
}

fn shape_of(spec: &OperatorSpaceSpec) -> Result<ConeShape> {
    match spec.kind() {
        _ if spec.n() == 1 => Ok(ConeShape::Polydisk),
        SpaceKind::Max(Base::L1) => Ok(ConeShape::Polydisk),
        SpaceKind::Row | SpaceKind::Column => Ok(ConeShape::Ball),
        _ => Err(Error::Unsupported(format!(
            "no finite semidefinite cone for {}",
            spec.tag()
        ))),
    }
}

pub(crate) fn check_distinct(points: &[Vec<C64>]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let gap = Base::L2.norm(&points[i].iter().zip(&points[j]).map(|(a, b)| a - b).collect::<Vec<_>>());
            if gap <= NODE_SEPARATION {
                return Err(Error::DuplicateNode(i, j));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeStatus {
    Feasible,
    Undecided,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeCertificate {
    pub status: ConeStatus,
    pub shape: ConeShape,
    /// PSD kernels `Γ_k`, each `m N × m N`.
    pub kernels: Vec<ComplexMatrix>,
    /// Frobenius norm of `Σ_k Γ_k ∘ K_k − P` for the reported kernels.
    pub residual: f64,
    pub iterations: usize,
    /// Per-iteration splitting residual `‖z − y‖` (nonincreasing).
    pub trace: Vec<f64>,
}

/// Closed-form ball test `Γ = P ∘ 1/(1 − ⟨λ_i, λ_j⟩)`; feasible iff `Γ ⪰ 0`.
/// The reported residual is the negative part of the smallest eigenvalue.
pub fn row_cone_check(prob: &ConeProblem) -> Result<ConeCertificate> {
    if prob.shape() != ConeShape::Ball && prob.spec.n() != 1 {
        return Err(Error::Unsupported(format!(
            "closed-form ball test needs a row or column space, got {}",
            prob.spec.tag()
        )));
    }
    let weights = prob.weights();
    let k = &weights[0];
    let gamma = prob.target.zip_map(k, |p, w| p / w);
    let gamma = (&gamma + gamma.adjoint()) * c(0.5, 0.0);
    let lowest = min_eigenvalue(&gamma)?;
    let slack = 1e-9 * gamma.norm().max(1.0);
    let status = if lowest >= -slack {
        ConeStatus::Feasible
    } else {
        ConeStatus::Undecided
    };
    Ok(ConeCertificate {
        status,
        shape: ConeShape::Ball,
        kernels: vec![gamma],
        residual: (-lowest).max(0.0),
        iterations: 0,
        trace: Vec::new(),
    })
}

/// Douglas–Rachford splitting for the polydisk cone: with `P_C` the
/// projection onto PSD tuples and `P_A` the entrywise projection onto
/// `Σ_k Γ_k,ij K_k,ij = P_ij`, iterate `y = P_C(x)`, `z = P_A(2y − x)`,
/// `x ← x + z − y`. Stops with a feasible certificate once the PSD iterate
/// `y` reproduces `P` to `tol` in Frobenius norm.
pub fn agler_feasibility(prob: &ConeProblem, max_iter: usize, tol: f64) -> Result<ConeCertificate> {
    if prob.shape() != ConeShape::Polydisk {
        return Err(Error::Unsupported(format!(
            "iterative cone solver handles the polydisk structure, got {}",
            prob.spec.tag()
        )));
    }
    let weights = prob.weights();
    let size = prob.target.nrows();
    let norm_sqr = weights
        .iter()
        .fold(ComplexMatrix::zeros(size, size), |acc, k| acc + k.map(|w| c(w.norm_sqr(), 0.0)));

    let project_affine = |g: &[ComplexMatrix]| -> Vec<ComplexMatrix> {
        let mut excess = -prob.target.clone();
        for (gk, kk) in g.iter().zip(&weights) {
            excess += gk.component_mul(kk);
        }
        let scaled = excess.zip_map(&norm_sqr, |e, n| e / n.re);
        g.iter()
            .zip(&weights)
            .map(|(gk, kk)| gk - kk.map(|w| w.conj()).component_mul(&scaled))
            .collect()
    };
    let reconstruction = |g: &[ComplexMatrix]| -> f64 {
        let mut excess = -prob.target.clone();
        for (gk, kk) in g.iter().zip(&weights) {
            excess += gk.component_mul(kk);
        }
        excess.norm()
    };

    let mut x = vec![ComplexMatrix::zeros(size, size); weights.len()];
    let mut trace = Vec::new();
    let mut y = project_psd_all(&x)?;
    let mut residual = reconstruction(&y);
    let mut iterations = 0;
    while residual > tol && iterations < max_iter {
        let reflected: Vec<ComplexMatrix> = y.iter().zip(&x).map(|(yk, xk)| yk * c(2.0, 0.0) - xk).collect();
        let z = project_affine(&reflected);
        let mut step = 0.0;
        for ((xk, zk), yk) in x.iter_mut().zip(&z).zip(&y) {
            let d = zk - yk;
            step += d.norm_squared();
            *xk += d;
        }
        trace.push(step.sqrt());
        y = project_psd_all(&x)?;
        residual = reconstruction(&y);
        iterations += 1;
    }
    let status = if residual <= tol {
        ConeStatus::Feasible
    } else {
        ConeStatus::Undecided
    };
    debug!("cone solver: {status:?} after {iterations} iterations, residual {residual:.3e}");
    Ok(ConeCertificate {
        status,
        shape: ConeShape::Polydisk,
        kernels: y,
        residual,
        iterations,
        trace,
    })
}

fn project_psd_all(g: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
    g.iter().map(project_psd).collect()
}

/// Nearest PSD matrix in Frobenius norm (eigenvalue clipping of the
/// Hermitian part).
pub fn project_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (values, vectors) = hermitian_eigen(a)?;
    let mut scaled = vectors.clone();
    for (k, &v) in values.iter().enumerate() {
        let s = c(v.max(0.0).sqrt(), 0.0);
        scaled.column_mut(k).scale_mut(s.re);
    }
    Ok(&scaled * scaled.adjoint())
}

/// Gram-factors the kernels of a feasible certificate into factorization
/// data with internal dimension at most `dim_cap`.
///
/// Polydisk: `Γ_k = G_kG_k*`, state space `⊕_k ℂ^{r_k}`, `T_k` the coordinate
/// projections and `F(λ_i) = [G_1,i … G_n,i]`. Ball: `Γ = GG*`, state space
/// `ℂⁿ ⊗ ℂʳ`, `T_k = E_1k ⊗ I_r` and `F(λ_i) = e_1ᵀ ⊗ G_i`, so that
/// `σ(λ)σ(μ)* = ⟨λ, μ⟩ E_11 ⊗ I_r`.
pub fn cone_to_factorization(
    cert: &ConeCertificate,
    prob: &ConeProblem,
    values: &[ComplexMatrix],
    dim_cap: usize,
) -> Result<FactorizationData> {
    if cert.status != ConeStatus::Feasible {
        return Err(Error::Unsupported("only feasible certificates can be factored".into()));
    }
    let n = prob.spec.n();
    let m = prob.points.len();
    let block = prob.block;
    if values.len() != m {
        return Err(Error::Dimension(format!("{m} points but {} values", values.len())));
    }
    let factors = cert
        .kernels
        .iter()
        .map(|g| gram_factor(&project_psd(g)?, 1e-12))
        .collect::<Result<Vec<_>>>()?;
    let node_rows = |g: &ComplexMatrix, i: usize| g.rows(i * block, block).into_owned();
    let (sigma, f_values) = match cert.shape {
        ConeShape::Polydisk => {
            if factors.len() != n {
                return Err(Error::Dimension(format!("expected {n} kernels, got {}", factors.len())));
            }
            let ranks: Vec<usize> = factors.iter().map(|g| g.ncols()).collect();
            let total: usize = ranks.iter().sum::<usize>().max(1);
            check_cap(total, dim_cap)?;
            let mut offset = 0;
            let mut mats = Vec::with_capacity(n);
            for &r in &ranks {
                let mut t = ComplexMatrix::zeros(total, total);
                for a in offset..offset + r {
                    t[(a, a)] = c(1.0, 0.0);
                }
                mats.push(t);
                offset += r;
            }
            let f_values = (0..m)
                .map(|i| {
                    let mut f = ComplexMatrix::zeros(block, total);
                    let mut offset = 0;
                    for g in &factors {
                        f.view_mut((0, offset), (block, g.ncols())).copy_from(&node_rows(g, i));
                        offset += g.ncols();
                    }
                    f
                })
                .collect();
            (MatrixTuple::new(mats)?, f_values)
        }
        ConeShape::Ball => {
            let g = factors
                .first()
                .ok_or_else(|| Error::Dimension("ball certificate carries no kernel".into()))?;
            let r = g.ncols().max(1);
            let total = n * r;
            check_cap(total, dim_cap)?;
            let mats = (0..n)
                .map(|k| {
                    let mut unit = ComplexMatrix::zeros(n, n);
                    unit[(0, k)] = c(1.0, 0.0);
                    kron(&unit, &crate::tensor_core::identity(r))
                })
                .collect();
            let f_values = (0..m)
                .map(|i| {
                    let mut f = ComplexMatrix::zeros(block, total);
                    f.view_mut((0, 0), (block, g.ncols())).copy_from(&node_rows(g, i));
                    f
                })
                .collect();
            (MatrixTuple::new(mats)?, f_values)
        }
    };
    FactorizationData::new(prob.points.clone(), f_values, sigma, values.to_vec())
}

fn check_cap(total: usize, cap: usize) -> Result<()> {
    if total > cap {
        return Err(Error::Capacity(format!(
            "factorization needs internal dimension {total}, cap is {cap}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyeval::MatrixPolynomial;
    use crate::random::{point_in_ball, rng_for};
    use crate::realization::{build_colligation, eval_transfer, verify_factorization};
    use proptest::prelude::*;

    fn points(base: Base, n: usize, count: usize, seed: u64, radius: f64) -> Vec<Vec<C64>> {
        (0..count)
            .map(|i| point_in_ball(base, n, radius, &mut rng_for(seed, i as u64)))
            .collect()
    }

    fn values(p: &MatrixPolynomial, pts: &[Vec<C64>]) -> Vec<ComplexMatrix> {
        pts.iter().map(|z| p.eval_point(z).unwrap()).collect()
    }

    fn poly(n: usize, terms: &[(&[u32], f64)]) -> MatrixPolynomial {
        let terms: Vec<(&[u32], C64)> = terms.iter().map(|(e, a)| (*e, c(*a, 0.0))).collect();
        MatrixPolynomial::scalar(n, &terms).unwrap()
    }

    #[test]
    fn validation() {
        let spec = OperatorSpaceSpec::max(2, Base::L1);
        let pts = vec![vec![c(0.1, 0.0), c(0.2, 0.0)], vec![c(0.1, 0.0), c(0.2, 0.0)]];
        let vals = vec![ComplexMatrix::zeros(1, 1); 2];
        assert!(matches!(
            ConeProblem::from_values(spec.clone(), pts, &vals),
            Err(Error::DuplicateNode(0, 1))
        ));
        let pts = vec![vec![c(0.1, 0.0), c(1.0, 0.0)]];
        assert!(matches!(
            ConeProblem::from_values(spec, pts.clone(), &vals[..1]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ConeProblem::from_values(OperatorSpaceSpec::min(2, Base::L1), pts, &vals[..1]),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn ball_zero_and_coordinate_are_feasible() {
        let spec = OperatorSpaceSpec::row(2);
        let pts = points(Base::L2, 2, 6, 1, 0.95);
        for p in [poly(2, &[]), poly(2, &[(&[1, 0], 1.0)])] {
            let prob = ConeProblem::from_values(spec.clone(), pts.clone(), &values(&p, &pts)).unwrap();
            let cert = row_cone_check(&prob).unwrap();
            assert_eq!(cert.status, ConeStatus::Feasible);
            let data = cone_to_factorization(&cert, &prob, &values(&p, &pts), 64).unwrap();
            assert!(verify_factorization(&data, 1e-8).unwrap().1);
        }
    }

    #[test]
    fn ball_rejects_two_z1z2_on_some_node_set() {
        let spec = OperatorSpaceSpec::column(2);
        let p = poly(2, &[(&[1, 1], 2.0)]);
        let pts: Vec<Vec<C64>> = (0..10)
            .map(|i| {
                let z = crate::random::point_on_sphere(Base::L2, 2, &mut rng_for(6, i));
                z.into_iter().map(|w| w * 0.7).collect()
            })
            .collect();
        let prob = ConeProblem::from_values(spec, pts.clone(), &values(&p, &pts)).unwrap();
        let cert = row_cone_check(&prob).unwrap();
        assert_eq!(cert.status, ConeStatus::Undecided);
        assert!(cert.residual > 1e-6);
    }

    #[test]
    fn polydisk_coordinate_function_converges_fast() {
        let spec = OperatorSpaceSpec::max(2, Base::L1);
        let pts = points(Base::Linf, 2, 6, 2, 0.9);
        let p = poly(2, &[(&[1, 0], 1.0)]);
        let vals = values(&p, &pts);
        let prob = ConeProblem::from_values(spec, pts, &vals).unwrap();
        let cert = agler_feasibility(&prob, 2000, 1e-8).unwrap();
        assert_eq!(cert.status, ConeStatus::Feasible);
        let data = cone_to_factorization(&cert, &prob, &vals, 64).unwrap();
        assert!(verify_factorization(&data, 1e-7).unwrap().1);
    }

    #[test]
    fn polydisk_product_end_to_end() {
        let spec = OperatorSpaceSpec::max(2, Base::L1);
        let pts = points(Base::Linf, 2, 8, 3, 0.9);
        let p = poly(2, &[(&[1, 1], 1.0)]);
        let vals = values(&p, &pts);
        let prob = ConeProblem::from_values(spec, pts, &vals).unwrap();
        let cert = agler_feasibility(&prob, 10_000, 1e-9).unwrap();
        assert_eq!(cert.status, ConeStatus::Feasible, "residual {}", cert.residual);
        for w in cert.trace.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-9) + 1e-15);
        }
        let data = cone_to_factorization(&cert, &prob, &vals, 64).unwrap();
        let (residual, pass) = verify_factorization(&data, 1e-8).unwrap();
        assert!(pass, "{residual}");
        let col = build_colligation(&data, 1e-8).unwrap();
        for (z, v) in data.points.iter().zip(&vals) {
            let got = eval_transfer(&col, &data.sigma, z).unwrap();
            assert!((got - v).norm() < 1e-6);
        }
    }

    #[test]
    fn polydisk_over_one_stalls() {
        let spec = OperatorSpaceSpec::max(2, Base::L1);
        let mut pts = points(Base::Linf, 2, 7, 4, 0.9);
        pts.push(vec![c(0.95, 0.0), c(0.1, 0.0)]);
        let p = poly(2, &[(&[1, 0], 1.2)]);
        let prob = ConeProblem::from_values(spec, pts.clone(), &values(&p, &pts)).unwrap();
        let cert = agler_feasibility(&prob, 2000, 1e-6).unwrap();
        assert_eq!(cert.status, ConeStatus::Undecided);
        assert!(cert.residual > 1e-3);
        assert!(matches!(
            cone_to_factorization(&cert, &prob, &values(&p, &pts), 64),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn capacity_is_enforced() {
        let spec = OperatorSpaceSpec::row(2);
        let pts = points(Base::L2, 2, 5, 5, 0.9);
        let p = poly(2, &[]);
        let prob = ConeProblem::from_values(spec, pts.clone(), &values(&p, &pts)).unwrap();
        let cert = row_cone_check(&prob).unwrap();
        assert!(matches!(
            cone_to_factorization(&cert, &prob, &values(&p, &pts), 3),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn one_variable_paths_agree() {
        for seed in 0..20 {
            let mut rng = rng_for(100 + seed, 0);
            let pts = points(Base::Linf, 1, 3, 100 + seed, 0.9);
            let w: Vec<ComplexMatrix> = (0..3)
                .map(|_| ComplexMatrix::from_element(1, 1, crate::random::point_in_ball(Base::Linf, 1, 1.0, &mut rng)[0]))
                .collect();
            let disk = ConeProblem::from_values(OperatorSpaceSpec::max(1, Base::L1), pts.clone(), &w).unwrap();
            let ball = ConeProblem::from_values(OperatorSpaceSpec::row(1), pts, &w).unwrap();
            let closed = row_cone_check(&ball).unwrap();
            let iter = agler_feasibility(&disk, 20_000, 1e-7).unwrap();
            let lowest = min_eigenvalue(&closed.kernels[0]).unwrap();
            // skip instances too close to the boundary of the cone to call
            if lowest.abs() > 1e-3 {
                assert_eq!(closed.status, iter.status, "seed {seed}: lowest {lowest}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn feasibility_survives_restriction(seed in any::<u64>(), keep in 1usize..6) {
            let spec = OperatorSpaceSpec::row(2);
            let pts = points(Base::L2, 2, 6, seed, 0.9);
            let p = poly(2, &[(&[1, 0], 0.6), (&[0, 1], 0.3), (&[1, 1], 0.4)]);
            let prob = ConeProblem::from_values(spec.clone(), pts.clone(), &values(&p, &pts)).unwrap();
            if row_cone_check(&prob).unwrap().status == ConeStatus::Feasible {
                let sub: Vec<_> = pts[..keep].to_vec();
                let prob = ConeProblem::from_values(spec, sub.clone(), &values(&p, &sub)).unwrap();
                prop_assert_eq!(row_cone_check(&prob).unwrap().status, ConeStatus::Feasible);
            }
        }

        #[test]
        fn splitting_residual_never_increases(seed in any::<u64>()) {
            let spec = OperatorSpaceSpec::max(2, Base::L1);
            let pts = points(Base::Linf, 2, 5, seed, 0.95);
            let p = poly(2, &[(&[1, 0], 0.7), (&[1, 1], 0.5)]);
            let prob = ConeProblem::from_values(spec, pts.clone(), &values(&p, &pts)).unwrap();
            let cert = agler_feasibility(&prob, 300, 1e-12).unwrap();
            for w in cert.trace.windows(2) {
                prop_assert!(w[1] <= w[0] * (1.0 + 1e-9) + 1e-14);
            }
        }
    }
}
