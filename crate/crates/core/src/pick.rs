//! Scalar Nevanlinna–Pick interpolation: given nodes `λ_i` in the domain and
//! targets `w_i`, find `f` in the unit ball of the universal algebra with
//! `f(λ_i) = w_i`, as the transfer function of a unitary colligation.
//!
//! Feasibility is witnessed by a tuple `T` and row vectors `v_i` with
//! `1 − w_i conj(w_j) = v_i [I − σ_T(λ_i)σ_T(λ_j)*] v_j*`.

use log::debug;

use crate::agler_cone::{
    agler_feasibility, check_distinct, cone_to_factorization, row_cone_check, ConeCertificate, ConeProblem,
    ConeShape, ConeStatus,
};
use crate::error::{Error, Result};
use crate::opspace::{OperatorSpaceSpec, SpaceKind};
use crate::realization::{build_colligation, eval_transfer, Colligation, FactorizationData};
use crate::tensor_core::{c, identity, ComplexMatrix, MatrixTuple, C64};

/// Pick matrices with smallest eigenvalue below `−INFEASIBLE_TOL` are
/// reported infeasible.
pub const INFEASIBLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PickProblem {
    spec: OperatorSpaceSpec,
    nodes: Vec<Vec<C64>>,
    targets: Vec<C64>,
}

impl PickProblem {
    pub fn new(spec: OperatorSpaceSpec, nodes: Vec<Vec<C64>>, targets: Vec<C64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != targets.len() {
            return Err(Error::Dimension(format!(
                "{} nodes and {} targets",
                nodes.len(),
                targets.len()
            )));
        }
        for (i, z) in nodes.iter().enumerate() {
            let r = spec.domain_norm(z)?;
            if r.is_nan() || r >= 1.0 {
                return Err(Error::Domain(format!("node {i} has norm {r}, outside the open unit ball")));
            }
        }
        if targets.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        check_distinct(&nodes)?;
        Ok(Self { spec, nodes, targets })
    }

    pub fn spec(&self) -> &OperatorSpaceSpec {
        &self.spec
    }

    pub fn nodes(&self) -> &[Vec<C64>] {
        &self.nodes
    }

    pub fn targets(&self) -> &[C64] {
        &self.targets
    }

    fn target_values(&self) -> Vec<ComplexMatrix> {
        self.targets.iter().map(|&w| ComplexMatrix::from_element(1, 1, w)).collect()
    }

    fn cone(&self) -> Result<ConeProblem> {
        ConeProblem::from_values(self.spec.clone(), self.nodes.clone(), &self.target_values())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PickStatus {
    Feasible,
    Infeasible,
    Undecided,
}

/// The tuple `T` and the row vectors `v_i` (each `1 × k`).
#[derive(Debug, Clone, PartialEq)]
pub struct NpWitness {
    pub tuple: MatrixTuple,
    pub vectors: Vec<ComplexMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PickResult {
    pub status: PickStatus,
    pub witness: Option<NpWitness>,
    pub interpolant: Option<Colligation>,
    /// Smallest eigenvalue of the closed-form Pick matrix, when there is one.
    pub min_eigenvalue: Option<f64>,
    /// Solver residual for the iterative path, witness residual otherwise.
    pub residual: f64,
    pub iterations: usize,
}

impl PickResult {
    /// `f(z)` for a feasible result.
    pub fn interpolate(&self, z: &[C64]) -> Result<C64> {
        match (&self.interpolant, &self.witness) {
            (Some(col), Some(w)) => Ok(eval_transfer(col, &w.tuple, z)?[(0, 0)]),
            _ => Err(Error::Unsupported("no interpolant for a problem that is not feasible".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PickOptions {
    /// Iteration cap for the polydisk solver.
    pub max_iter: usize,
    /// Frobenius residual at which the polydisk solver stops.
    pub tol: f64,
    /// Largest internal dimension of the witness.
    pub dim_cap: usize,
}

impl Default for PickOptions {
    fn default() -> Self {
        Self {
            max_iter: 50_000,
            tol: 1e-10,
            dim_cap: 256,
        }
    }
}

pub fn pick_solve(prob: &PickProblem) -> Result<PickResult> {
    pick_solve_with(prob, PickOptions::default())
}

/// Dispatches on the structure of the problem:
///
/// * one variable, row or column spaces: the closed-form Pick matrix
///   `[(1 − w_i conj(w_j)) / (1 − ⟨λ_i, λ_j⟩)]` decides feasibility;
/// * `MAX(ℓ¹)` (polydisk): the iterative cone solver, which can only report
///   feasible or undecided.
///
/// Feasible kernels are Gram-factored into a witness and turned into an
/// interpolating colligation.
pub fn pick_solve_with(prob: &PickProblem, opts: PickOptions) -> Result<PickResult> {
    let cone = prob.cone()?;
    let closed_form = prob.spec.n() == 1 || matches!(prob.spec.kind(), SpaceKind::Row | SpaceKind::Column);
    let (cert, min_eig) = if closed_form {
        // in one variable both shapes give the same kernel
        let cert = row_cone_check(&cone)?;
        let lowest = crate::tensor_core::min_eigenvalue(&cert.kernels[0])?;
        if lowest < -INFEASIBLE_TOL {
            return Ok(PickResult {
                status: PickStatus::Infeasible,
                witness: None,
                interpolant: None,
                min_eigenvalue: Some(lowest),
                residual: cert.residual,
                iterations: 0,
            });
        }
        let cert = ConeCertificate {
            status: ConeStatus::Feasible,
            shape: if prob.spec.n() == 1 { ConeShape::Polydisk } else { ConeShape::Ball },
            ..cert
        };
        (cert, Some(lowest))
    } else if matches!(cone.shape(), ConeShape::Polydisk) {
        let cert = agler_feasibility(&cone, opts.max_iter, opts.tol)?;
        if cert.status != ConeStatus::Feasible {
            return Ok(PickResult {
                status: PickStatus::Undecided,
                witness: None,
                interpolant: None,
                min_eigenvalue: None,
                residual: cert.residual,
                iterations: cert.iterations,
            });
        }
        (cert, None)
    } else {
        return Err(Error::Unsupported(format!("Pick problems over {}", prob.spec.tag())));
    };

    let data = cone_to_factorization(&cert, &cone, &prob.target_values(), opts.dim_cap)?;
    let witness = NpWitness {
        tuple: data.sigma.clone(),
        vectors: data.f_values.clone(),
    };
    let residual = np_residual(&witness, prob)?;
    let interpolant = build(&data, residual);
    debug!(
        "pick: feasible witness of dimension {}, residual {residual:.3e}",
        witness.tuple.dim()
    );
    match interpolant {
        Some(col) => Ok(PickResult {
            status: PickStatus::Feasible,
            witness: Some(witness),
            interpolant: Some(col),
            min_eigenvalue: min_eig,
            residual,
            iterations: cert.iterations,
        }),
        None => Ok(PickResult {
            status: PickStatus::Undecided,
            witness: None,
            interpolant: None,
            min_eigenvalue: min_eig,
            residual,
            iterations: cert.iterations,
        }),
    }
}

fn build(data: &FactorizationData, residual: f64) -> Option<Colligation> {
    // accept what the witness actually achieves, up to the contract bound
    let tol = (10.0 * residual).clamp(1e-12, 1e-7);
    build_colligation(data, tol).ok()
}

/// `max_ij |(1 − w_i conj(w_j)) − v_i [I − σ(λ_i)σ(λ_j)*] v_j*|`.
pub fn np_residual(witness: &NpWitness, prob: &PickProblem) -> Result<f64> {
    residual_with(witness, prob, |t, a, b| {
        let sa = t.sigma(a)?;
        let sb = t.sigma(b)?;
        Ok(identity(t.dim()) - sa * sb.adjoint())
    })
}

/// Same quantity with the middle factor written as the double sum
/// `I − Σ_{k,l} λ_i^k conj(λ_j^l) T_k T_l*`.
pub fn np_residual_double_sum(witness: &NpWitness, prob: &PickProblem) -> Result<f64> {
    residual_with(witness, prob, |t, a, b| {
        let mut m = identity(t.dim());
        for (k, tk) in t.iter().enumerate() {
            for (l, tl) in t.iter().enumerate() {
                m -= tk * tl.adjoint() * (a[k] * b[l].conj());
            }
        }
        Ok(m)
    })
}

fn residual_with(
    witness: &NpWitness,
    prob: &PickProblem,
    middle: impl Fn(&MatrixTuple, &[C64], &[C64]) -> Result<ComplexMatrix>,
) -> Result<f64> {
    let m = prob.nodes.len();
    let k = witness.tuple.dim();
    if witness.vectors.len() != m {
        return Err(Error::Dimension(format!("{m} nodes but {} vectors", witness.vectors.len())));
    }
    if witness.tuple.len() != prob.spec.n() {
        return Err(Error::Arity {
            expected: prob.spec.n(),
            found: witness.tuple.len(),
        });
    }
    for v in &witness.vectors {
        if v.nrows() != 1 || v.ncols() != k {
            return Err(Error::Dimension(format!("witness vectors must be 1x{k}")));
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let lhs = c(1.0, 0.0) - prob.targets[i] * prob.targets[j].conj();
            let mid = middle(&witness.tuple, &prob.nodes[i], &prob.nodes[j])?;
            let rhs = (&witness.vectors[i] * mid * witness.vectors[j].adjoint())[(0, 0)];
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}
