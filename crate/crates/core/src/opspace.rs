//! Operator space structures over `ℂⁿ` and complete-contractivity verdicts.
//!
//! A tuple `T = (T₁,…,Tₙ)` defines the map `σ_T(z) = Σ z_j T_j`. Whether `σ_T`
//! is completely contractive (cc) for a structure `E` is decided from a
//! closed form where one exists. Otherwise the duality pairing is sampled:
//! `σ_T` is cc for `E` iff `‖Σ T_j ⊗ B_j‖ ≤ 1` for every `B` with `σ_B` cc
//! for `E*`, so a violating `B` falsifies, and sampling can never verify.

use std::fmt;

use crate::error::{Error, Result};
use crate::random::{par_best, point_on_sphere, random_contraction, random_isometry, random_matrix, DrawRng};
use crate::tensor_core::{c, identity, is_psd, kron, op_norm, pair_tuples, ComplexMatrix, MatrixTuple, C64};
use rand::Rng;

/// Banach-space norm on `ℂⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    L1,
    L2,
    Linf,
}

impl Base {
    /// Dual norm under the symmetric pairing `⟨z, w⟩ = Σ z_j w_j`.
    pub fn dual(self) -> Base {
        match self {
            Base::L1 => Base::Linf,
            Base::L2 => Base::L2,
            Base::Linf => Base::L1,
        }
    }

    pub fn norm(self, z: &[C64]) -> f64 {
        match self {
            Base::L1 => z.iter().map(|w| w.norm()).sum(),
            Base::L2 => z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt(),
            Base::Linf => z.iter().fold(0.0, |m, w| m.max(w.norm())),
        }
    }

    /// A point `z` of the closed unit ball of `self` with
    /// `Σ z_j λ_j = ‖λ‖_{self.dual()}`.
    pub fn norming_point(self, lambda: &[C64]) -> Vec<C64> {
        let n = lambda.len();
        let phase = |w: C64| if w.norm() > 0.0 { w.conj() / w.norm() } else { c(1.0, 0.0) };
        match self {
            Base::L1 => {
                let j = (0..n)
                    .max_by(|&a, &b| lambda[a].norm().total_cmp(&lambda[b].norm()))
                    .unwrap_or(0);
                (0..n).map(|k| if k == j { phase(lambda[k]) } else { c(0.0, 0.0) }).collect()
            }
            Base::L2 => {
                let norm = Base::L2.norm(lambda);
                if norm == 0.0 {
                    return vec![c(0.0, 0.0); n];
                }
                lambda.iter().map(|w| w.conj() / norm).collect()
            }
            Base::Linf => lambda.iter().map(|&w| phase(w)).collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Base::L1 => "l1",
            Base::L2 => "l2",
            Base::Linf => "linf",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpaceKind {
    Min(Base),
    Max(Base),
    /// `ℂⁿ` along the first row of `M_n`.
    Row,
    /// `ℂⁿ` along the first column of `M_n`.
    Column,
    /// The structure induced by `z ↦ Σ z_j G_j`.
    Concrete(MatrixTuple),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpaceSpec {
    n: usize,
    kind: SpaceKind,
}

impl OperatorSpaceSpec {
    pub fn new(n: usize, kind: SpaceKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("an operator space needs n >= 1".into()));
        }
        if let SpaceKind::Concrete(g) = &kind {
            if g.len() != n {
                return Err(Error::Arity {
                    expected: n,
                    found: g.len(),
                });
            }
        }
        Ok(Self { n, kind })
    }

    pub fn min(n: usize, base: Base) -> Self {
        Self::new(n, SpaceKind::Min(base)).expect("n >= 1")
    }

    pub fn max(n: usize, base: Base) -> Self {
        Self::new(n, SpaceKind::Max(base)).expect("n >= 1")
    }

    pub fn row(n: usize) -> Self {
        Self::new(n, SpaceKind::Row).expect("n >= 1")
    }

    pub fn column(n: usize) -> Self {
        Self::new(n, SpaceKind::Column).expect("n >= 1")
    }

    pub fn concrete(generators: MatrixTuple) -> Self {
        let n = generators.len();
        Self {
            n,
            kind: SpaceKind::Concrete(generators),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    /// `MIN(V)* = MAX(V*)`, `MAX(V)* = MIN(V*)`, `R_n* = C_n`. Concrete
    /// structures have no closed-form dual.
    pub fn dual(&self) -> Option<Self> {
        let kind = match &self.kind {
            SpaceKind::Min(b) => SpaceKind::Max(b.dual()),
            SpaceKind::Max(b) => SpaceKind::Min(b.dual()),
            SpaceKind::Row => SpaceKind::Column,
            SpaceKind::Column => SpaceKind::Row,
            SpaceKind::Concrete(_) => return None,
        };
        Some(Self { n: self.n, kind })
    }

    /// The norm of the underlying Banach space `V`, when it is one of the
    /// standard ones.
    pub fn base(&self) -> Option<Base> {
        match &self.kind {
            SpaceKind::Min(b) | SpaceKind::Max(b) => Some(*b),
            SpaceKind::Row | SpaceKind::Column => Some(Base::L2),
            SpaceKind::Concrete(_) => None,
        }
    }

    /// Norm whose open unit ball carries the joint spectra of tuples that are
    /// cc for this structure, i.e. the domain `Ω` of `UC(self)`: the dual of
    /// the base norm.
    pub fn domain_base(&self) -> Option<Base> {
        self.base().map(Base::dual)
    }

    pub fn vector_norm(&self, z: &[C64]) -> Result<f64> {
        if z.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                found: z.len(),
            });
        }
        match &self.kind {
            SpaceKind::Concrete(g) => Ok(op_norm(&g.sigma(z)?)),
            _ => Ok(self.base().expect("standard base").norm(z)),
        }
    }

    pub fn domain_norm(&self, z: &[C64]) -> Result<f64> {
        if z.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                found: z.len(),
            });
        }
        self.domain_base()
            .map(|b| b.norm(z))
            .ok_or_else(|| Error::Unsupported("domain norm of a concrete operator space".into()))
    }

    /// Short tag used in text formats and on the command line.
    pub fn tag(&self) -> String {
        match &self.kind {
            SpaceKind::Min(b) => format!("min-{}", b.name()),
            SpaceKind::Max(b) => format!("max-{}", b.name()),
            SpaceKind::Row => "row".into(),
            SpaceKind::Column => "column".into(),
            SpaceKind::Concrete(_) => "concrete".into(),
        }
    }

    /// Parses a tag produced by [`tag`](Self::tag) (not `concrete`).
    pub fn from_tag(tag: &str, n: usize) -> Result<Self> {
        let kind = match tag {
            "min-l1" => SpaceKind::Min(Base::L1),
            "min-l2" => SpaceKind::Min(Base::L2),
            "min-linf" => SpaceKind::Min(Base::Linf),
            "max-l1" => SpaceKind::Max(Base::L1),
            "max-l2" => SpaceKind::Max(Base::L2),
            "max-linf" => SpaceKind::Max(Base::Linf),
            "row" => SpaceKind::Row,
            "column" => SpaceKind::Column,
            other => return Err(Error::Unsupported(format!("unknown operator space `{other}`"))),
        };
        Self::new(n, kind)
    }
}

impl fmt::Display for OperatorSpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n = {})", self.tag(), self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Verified,
    Falsified,
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CcVerdict {
    pub status: CcStatus,
    /// Dual-side tuple `B` with `‖Σ T_j ⊗ B_j‖ > 1 + tol`; present iff falsified.
    pub witness: Option<MatrixTuple>,
    /// Best pairing norm found, or the certified upper bound when verified.
    pub bound: Option<f64>,
}

impl CcVerdict {
    fn verified(bound: f64) -> Self {
        Self {
            status: CcStatus::Verified,
            witness: None,
            bound: Some(bound),
        }
    }

    fn falsified(witness: MatrixTuple, bound: f64) -> Self {
        Self {
            status: CcStatus::Falsified,
            witness: Some(witness),
            bound: Some(bound),
        }
    }

    fn unknown(bound: f64) -> Self {
        Self {
            status: CcStatus::Unknown,
            witness: None,
            bound: Some(bound),
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == CcStatus::Verified
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingBudget {
    /// Number of random draws.
    pub samples: usize,
    /// Largest matrix size of a sampled tuple.
    pub max_dim: usize,
    pub seed: u64,
}

impl SamplingBudget {
    pub fn new(samples: usize, max_dim: usize, seed: u64) -> Self {
        Self {
            samples,
            max_dim: max_dim.max(1),
            seed,
        }
    }

    /// Closed forms only.
    pub fn none() -> Self {
        Self::new(0, 1, 0)
    }
}

impl Default for SamplingBudget {
    fn default() -> Self {
        Self::new(2000, 4, 0)
    }
}

/// Decides whether `σ_t` is completely contractive for `spec`.
///
/// * `MAX(ℓ¹)`: cc iff every `T_j` is a contraction.
/// * `MAX(ℓ²)`, `MAX(ℓ^∞)`: cc iff contractive; certified by the row or
///   column norm (ℓ²) or `Σ‖T_j‖` (ℓ^∞), falsified by sampling the unit
///   sphere of the base norm.
/// * `ROW`: cc iff `I − Σ T_j*T_j ⪰ 0`; `COLUMN`: cc iff `I − Σ T_jT_j* ⪰ 0`.
/// * `MIN(·)`: closed forms for diagonal tuples and for the Kaijser–Varopoulos
///   tuple over `MIN(ℓ¹₃)`; otherwise sampled falsification against tuples
///   that are cc for `MAX(V*)`.
/// * `CONCRETE`: sampled falsification against normalised matrix tuples in
///   the unit ball of `M_m(E)`.
pub fn is_cc(spec: &OperatorSpaceSpec, t: &MatrixTuple, tol: f64, budget: SamplingBudget) -> Result<CcVerdict> {
    check_arity(spec, t)?;
    let n = spec.n();
    match spec.kind() {
        SpaceKind::Max(Base::L1) => {
            let (j, worst) = largest_entry_norm(t);
            if worst <= 1.0 + tol {
                Ok(CcVerdict::verified(worst))
            } else {
                Ok(CcVerdict::falsified(slot_witness(n, j), worst))
            }
        }
        SpaceKind::Max(b @ (Base::L2 | Base::Linf)) => {
            let certificate = match b {
                Base::L2 => op_norm(&t.row_matrix()).min(op_norm(&t.column_matrix())),
                _ => t.iter().map(op_norm).sum(),
            };
            if certificate <= 1.0 + tol {
                return Ok(CcVerdict::verified(certificate));
            }
            let (j, slot) = largest_entry_norm(t);
            let mut best = (slot, slot_witness(n, j));
            if let Some((v, _, w)) = par_best(budget.samples, budget.seed, 0, |rng| {
                let z = point_on_sphere(*b, n, rng);
                Some((op_norm(&t.sigma(&z).ok()?), MatrixTuple::scalar(&z).ok()?))
            }) {
                if v > best.0 {
                    best = (v, w);
                }
            }
            Ok(settle(best, tol))
        }
        SpaceKind::Row => {
            let gram: ComplexMatrix = t.iter().map(|m| m.adjoint() * m).sum();
            row_column_verdict(&gram, t, tol, |j| matrix_unit(n, j, 0))
        }
        SpaceKind::Column => {
            let gram: ComplexMatrix = t.iter().map(|m| m * m.adjoint()).sum();
            row_column_verdict(&gram, t, tol, |j| matrix_unit(n, 0, j))
        }
        SpaceKind::Min(b) => {
            if t.is_diagonal() {
                return Ok(diagonal_verdict(*b, t, tol));
            }
            if *b == Base::L1 && is_kv_tuple(t) {
                return Ok(CcVerdict::verified(1.0));
            }
            // level one: scalar points of the base ball
            let (j, slot) = largest_entry_norm(t);
            let mut best = (slot, slot_witness(n, j));
            let half = budget.samples / 2;
            if let Some((v, _, w)) = par_best(half, budget.seed, 0, |rng| {
                let z = point_on_sphere(*b, n, rng);
                Some((op_norm(&t.sigma(&z).ok()?), MatrixTuple::scalar(&z).ok()?))
            }) {
                if v > best.0 {
                    best = (v, w);
                }
            }
            let dual = spec.dual().expect("MIN has a dual");
            if let Some((v, _, w)) = par_best(budget.samples - half, budget.seed, 1 << 32, |rng| {
                let dim = rng.random_range(1..=budget.max_dim);
                let b = sample_cc_tuple(&dual, dim, rng);
                Some((op_norm(&pair_tuples(t, &b).ok()?), b))
            }) {
                if v > best.0 {
                    best = (v, w);
                }
            }
            Ok(settle(best, tol))
        }
        SpaceKind::Concrete(g) => {
            let found = par_best(budget.samples, budget.seed, 0, |rng| {
                let dim = rng.random_range(1..=budget.max_dim);
                let a = MatrixTuple::new((0..n).map(|_| random_matrix(dim, dim, rng)).collect()).ok()?;
                let scale = op_norm(&pair_tuples(&a, g).ok()?);
                if scale == 0.0 {
                    return None;
                }
                let a = a.scaled(1.0 / scale);
                Some((op_norm(&pair_tuples(t, &a).ok()?), a))
            });
            match found {
                Some((v, _, w)) => Ok(settle((v, w), tol)),
                None => Ok(CcVerdict::unknown(0.0)),
            }
        }
    }
}

/// Searches tuples `T` that are cc for `e` for a large pairing
/// `‖Σ S_j ⊗ T_j‖`. Because the draws are prefix-stable, the reported bound
/// is a running maximum and never decreases as the budget grows. A bound
/// above `1 + tol` shows `σ_S` is not cc for `e*`.
pub fn duality_falsifier(e: &OperatorSpaceSpec, s: &MatrixTuple, tol: f64, budget: SamplingBudget) -> Result<CcVerdict> {
    check_arity(e, s)?;
    let n = e.n();
    let mut best: Option<(f64, MatrixTuple)> = None;
    let mut consider = |v: f64, w: MatrixTuple| {
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, w));
        }
    };
    // single-slot scalar tuples are cc for every structure except possibly
    // concrete ones, where they are checked like any other candidate
    for j in 0..n {
        let w = slot_witness(n, j);
        if matches!(e.kind(), SpaceKind::Concrete(_)) && !is_cc(e, &w, 0.0, SamplingBudget::none())?.is_verified() {
            continue;
        }
        consider(op_norm(&pair_tuples(s, &w)?), w);
    }
    if let Some((v, _, w)) = par_best(budget.samples, budget.seed, 0, |rng| {
        let dim = rng.random_range(1..=budget.max_dim);
        let t = sample_cc_tuple(e, dim, rng);
        Some((op_norm(&pair_tuples(s, &t).ok()?), t))
    }) {
        consider(v, w);
    }
    Ok(match best {
        Some(found) => settle(found, tol),
        None => CcVerdict::unknown(0.0),
    })
}

/// Draws a `dim × dim` tuple whose map is cc for `spec` by construction.
///
/// * `MAX(ℓ¹)`: independent contractions.
/// * `MAX(ℓ²)` and `ROW`: `T_j = V_j D` with `[V₁; …; Vₙ]` an isometry and `D`
///   a contraction, so `Σ T_j*T_j ⪯ I`.
/// * `COLUMN`: `T_j = D W_j` with `[W₁ … Wₙ]` a co-isometry.
/// * `MAX(ℓ^∞)`: `T_j = w_j C_j` with `Σ w_j = 1` and contractions `C_j`.
/// * `MIN(V)`: commuting diagonal tuples with joint spectrum in the unit ball
///   of `V*` (maps into commutative algebras are cc iff contractive).
/// * `CONCRETE(G)`: compressions `r·W*(G_j ⊗ I)W`.
pub fn sample_cc_tuple(spec: &OperatorSpaceSpec, dim: usize, rng: &mut DrawRng) -> MatrixTuple {
    let n = spec.n();
    let mats: Vec<ComplexMatrix> = match spec.kind() {
        SpaceKind::Max(Base::L1) => (0..n).map(|_| random_contraction(dim, rng)).collect(),
        SpaceKind::Max(Base::L2) | SpaceKind::Row => {
            let v = random_isometry(n * dim, dim, rng);
            let d = random_contraction(dim, rng);
            (0..n).map(|j| v.rows(j * dim, dim) * &d).collect()
        }
        SpaceKind::Column => {
            let v = random_isometry(n * dim, dim, rng);
            let d = random_contraction(dim, rng);
            (0..n).map(|j| &d * v.rows(j * dim, dim).adjoint()).collect()
        }
        SpaceKind::Max(Base::Linf) => {
            let w = point_on_sphere(Base::L1, n, rng);
            w.iter().map(|wj| random_contraction(dim, rng).scale(wj.norm())).collect()
        }
        SpaceKind::Min(b) => {
            let mut mats = vec![ComplexMatrix::zeros(dim, dim); n];
            for k in 0..dim {
                let r = if rng.random::<bool>() { 1.0 } else { rng.random::<f64>() };
                let lambda = point_on_sphere(b.dual(), n, rng);
                for (m, l) in mats.iter_mut().zip(lambda) {
                    m[(k, k)] = l * r;
                }
            }
            mats
        }
        SpaceKind::Concrete(g) => {
            let copies = dim.div_ceil(g.dim());
            let w = random_isometry(g.dim() * copies, dim, rng);
            let r = if rng.random::<bool>() { 1.0 } else { rng.random::<f64>() };
            g.iter()
                .map(|gj| (w.adjoint() * kron(gj, &identity(copies)) * &w).scale(r))
                .collect()
        }
    };
    MatrixTuple::new(mats).expect("square tuple of common size")
}

fn check_arity(spec: &OperatorSpaceSpec, t: &MatrixTuple) -> Result<()> {
    if spec.n() != t.len() {
        return Err(Error::Arity {
            expected: spec.n(),
            found: t.len(),
        });
    }
    Ok(())
}

fn largest_entry_norm(t: &MatrixTuple) -> (usize, f64) {
    t.iter()
        .map(op_norm)
        .enumerate()
        .fold((0, 0.0), |(bj, bv), (j, v)| if v > bv { (j, v) } else { (bj, bv) })
}

/// The scalar tuple `e_j`, which pairs with `T` to give `T_j`.
fn slot_witness(n: usize, j: usize) -> MatrixTuple {
    let z: Vec<C64> = (0..n).map(|k| if k == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect();
    MatrixTuple::scalar(&z).expect("n >= 1")
}

fn matrix_unit_tuple(n: usize, f: impl Fn(usize) -> ComplexMatrix) -> MatrixTuple {
    MatrixTuple::new((0..n).map(f).collect()).expect("square matrix units")
}

fn matrix_unit(n: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(i, j)] = c(1.0, 0.0);
    m
}

fn row_column_verdict(
    gram: &ComplexMatrix,
    t: &MatrixTuple,
    tol: f64,
    unit: impl Fn(usize) -> ComplexMatrix,
) -> Result<CcVerdict> {
    let bound = op_norm(gram).sqrt();
    if is_psd(&(identity(t.dim()) - gram), tol)? {
        return Ok(CcVerdict::verified(bound));
    }
    // the canonical embedding of the dual space is completely isometric
    let witness = matrix_unit_tuple(t.len(), unit);
    let v = op_norm(&pair_tuples(t, &witness)?);
    Ok(settle((v, witness), tol))
}

fn diagonal_verdict(base: Base, t: &MatrixTuple, tol: f64) -> CcVerdict {
    let dual = base.dual();
    let mut worst = (0.0, Vec::new());
    for k in 0..t.dim() {
        let lambda: Vec<C64> = t.iter().map(|m| m[(k, k)]).collect();
        let v = dual.norm(&lambda);
        if v > worst.0 || worst.1.is_empty() {
            worst = (v, lambda);
        }
    }
    if worst.0 <= 1.0 + tol {
        CcVerdict::verified(worst.0)
    } else {
        let z = base.norming_point(&worst.1);
        CcVerdict::falsified(MatrixTuple::scalar(&z).expect("n >= 1"), worst.0)
    }
}

fn settle((bound, witness): (f64, MatrixTuple), tol: f64) -> CcVerdict {
    if bound > 1.0 + tol {
        CcVerdict::falsified(witness, bound)
    } else {
        CcVerdict::unknown(bound)
    }
}

/// The Kaijser–Varopoulos contractions `T_j = e_{j+1} e₁ᵀ + e₅ v_jᵀ` on `ℂ⁵`
/// with `v₁ = (−e₂+e₃+e₄)/√3`, `v₂ = (e₂−e₃+e₄)/√3`, `v₃ = (e₂+e₃−e₄)/√3`.
pub fn kv_tuple() -> MatrixTuple {
    let s = 1.0 / 3.0_f64.sqrt();
    let signs = [[-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]];
    let mats = (0..3)
        .map(|j| {
            let mut m = ComplexMatrix::zeros(5, 5);
            m[(j + 1, 0)] = c(1.0, 0.0);
            for (k, sign) in signs[j].iter().enumerate() {
                m[(4, k + 1)] = c(sign * s, 0.0);
            }
            m
        })
        .collect();
    MatrixTuple::new(mats).expect("5x5 tuple")
}

fn is_kv_tuple(t: &MatrixTuple) -> bool {
    t.len() == 3
        && t.dim() == 5
        && kv_tuple()
            .iter()
            .zip(t.iter())
            .all(|(a, b)| op_norm(&(a - b)) <= 1e-12)
}

/// Norms entering the block structure of `Σ A_j ⊗ T_j` for the
/// Kaijser–Varopoulos tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct KvBlockReport {
    /// `‖Σ A_j ⊗ T_j‖` computed directly.
    pub direct_norm: f64,
    /// Norm of the shuffled block matrix `Σ T_j ⊗ A_j`.
    pub block_norm: f64,
    /// `‖[A₁; A₂; A₃]‖`.
    pub first_column_norm: f64,
    /// `‖[B₁ B₂ B₃]‖` with `B_k` the signed combinations `/√3`.
    pub last_row_norm: f64,
    /// Every `‖±A₁ ± A₂ ± A₃‖ ≤ 1` and `I − Σ A_j*A_j ⪰ 0`.
    pub hypotheses_hold: bool,
}

impl KvBlockReport {
    pub fn identity_error(&self) -> f64 {
        let predicted = self.first_column_norm.max(self.last_row_norm);
        (self.direct_norm - predicted).abs().max((self.block_norm - self.direct_norm).abs())
    }

    pub fn passed(&self) -> bool {
        let scale = self.direct_norm.max(1.0);
        self.identity_error() <= 1e-10 * scale && (!self.hypotheses_hold || self.direct_norm <= 1.0 + 1e-9)
    }
}

pub fn kv_block_report(a: &MatrixTuple) -> Result<KvBlockReport> {
    if a.len() != 3 {
        return Err(Error::Arity {
            expected: 3,
            found: a.len(),
        });
    }
    let kv = kv_tuple();
    let m = a.dim();
    let direct: ComplexMatrix = a.iter().zip(kv.iter()).map(|(x, t)| kron(x, t)).sum();
    let block: ComplexMatrix = a.iter().zip(kv.iter()).map(|(x, t)| kron(t, x)).sum();
    let s = 1.0 / 3.0_f64.sqrt();
    let (a1, a2, a3) = (a.get(0), a.get(1), a.get(2));
    let bs = [
        (-a1 + a2 + a3).scale(s),
        (a1 - a2 + a3).scale(s),
        (a1 + a2 - a3).scale(s),
    ];
    let mut last_row = ComplexMatrix::zeros(m, 3 * m);
    for (k, b) in bs.iter().enumerate() {
        last_row.view_mut((0, k * m), (m, m)).copy_from(b);
    }
    let mut signs_ok = true;
    for mask in 0..8u32 {
        let sign = |bit: u32| if mask & (1 << bit) == 0 { 1.0 } else { -1.0 };
        let combo = a1.scale(sign(0)) + a2.scale(sign(1)) + a3.scale(sign(2));
        signs_ok &= op_norm(&combo) <= 1.0 + 1e-9;
    }
    let gram: ComplexMatrix = a.iter().map(|x| x.adjoint() * x).sum();
    let column_ok = is_psd(&(identity(m) - gram), 1e-9)?;
    Ok(KvBlockReport {
        direct_norm: op_norm(&direct),
        block_norm: op_norm(&block),
        first_column_norm: op_norm(&a.column_matrix()),
        last_row_norm: op_norm(&last_row),
        hypotheses_hold: signs_ok && column_ok,
    })
}

/// Checks the block-norm identity `‖Σ A_j ⊗ T_j‖ = max(‖first column‖,
/// ‖last row‖)` and, when the sign and column conditions hold, that the
/// pairing is at most one.
pub fn kv_structural_check(a: &MatrixTuple) -> Result<bool> {
    Ok(kv_block_report(a)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{rng_for, random_unitary};

    fn budget() -> SamplingBudget {
        SamplingBudget::new(400, 3, 7)
    }

    #[test]
    fn vector_norms() {
        let ones = vec![c(1.0, 0.0); 3];
        assert_eq!(OperatorSpaceSpec::max(3, Base::L1).vector_norm(&ones).unwrap(), 3.0);
        let z = [c(0.6, 0.0), c(0.0, 0.8)];
        assert!((OperatorSpaceSpec::row(2).vector_norm(&z).unwrap() - 1.0).abs() < 1e-15);
        let mut e11 = ComplexMatrix::zeros(2, 2);
        e11[(0, 0)] = c(1.0, 0.0);
        let mut e22 = ComplexMatrix::zeros(2, 2);
        e22[(1, 1)] = c(1.0, 0.0);
        let spec = OperatorSpaceSpec::concrete(MatrixTuple::new(vec![e11, e22]).unwrap());
        let z = [c(0.3, -0.4), c(-0.2, 0.1)];
        assert!((spec.vector_norm(&z).unwrap() - 0.5).abs() < 1e-14);
        assert!(matches!(spec.vector_norm(&z[..1]), Err(Error::Arity { .. })));
    }

    #[test]
    fn dual_is_an_involution() {
        for spec in [
            OperatorSpaceSpec::min(3, Base::L1),
            OperatorSpaceSpec::max(2, Base::L2),
            OperatorSpaceSpec::min(2, Base::Linf),
            OperatorSpaceSpec::row(4),
            OperatorSpaceSpec::column(2),
        ] {
            assert_eq!(spec.dual().unwrap().dual().unwrap(), spec);
        }
        assert_eq!(OperatorSpaceSpec::row(2).dual().unwrap(), OperatorSpaceSpec::column(2));
        assert_eq!(
            OperatorSpaceSpec::min(3, Base::L1).dual().unwrap(),
            OperatorSpaceSpec::max(3, Base::Linf)
        );
        assert!(OperatorSpaceSpec::concrete(kv_tuple()).dual().is_none());
    }

    #[test]
    fn max_l1_unitaries_verified() {
        let mut rng = rng_for(1, 0);
        let t = MatrixTuple::new((0..3).map(|_| random_unitary(4, &mut rng)).collect()).unwrap();
        let v = is_cc(&OperatorSpaceSpec::max(3, Base::L1), &t, 1e-9, budget()).unwrap();
        assert_eq!(v.status, CcStatus::Verified);
    }

    #[test]
    fn max_l1_is_exactly_the_contraction_test() {
        let mut rng = rng_for(2, 0);
        let t = MatrixTuple::new(vec![random_unitary(3, &mut rng), random_unitary(3, &mut rng).scale(1.2)]).unwrap();
        let v = is_cc(&OperatorSpaceSpec::max(2, Base::L1), &t, 1e-9, budget()).unwrap();
        assert_eq!(v.status, CcStatus::Falsified);
        let w = v.witness.unwrap();
        assert!(op_norm(&pair_tuples(&t, &w).unwrap()) > 1.0 + 1e-9);
    }

    #[test]
    fn row_rejects_oversized_tuple() {
        // Σ T_j T_j* = Σ T_j* T_j = 2I
        let t = MatrixTuple::new(vec![identity(2), identity(2)]).unwrap();
        let v = is_cc(&OperatorSpaceSpec::row(2), &t, 1e-9, budget()).unwrap();
        assert_eq!(v.status, CcStatus::Falsified);
        assert!((v.bound.unwrap() - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn row_and_column_conditions_differ() {
        // T_j = E_{1j}: Σ T_j*T_j = I but Σ T_jT_j* = 2E₁₁
        let t = matrix_unit_tuple(2, |j| matrix_unit(2, 0, j));
        let column = is_cc(&OperatorSpaceSpec::column(2), &t, 1e-9, budget()).unwrap();
        let row = is_cc(&OperatorSpaceSpec::row(2), &t, 1e-9, budget()).unwrap();
        assert_eq!(row.status, CcStatus::Verified);
        assert_eq!(column.status, CcStatus::Falsified);
        assert!((column.bound.unwrap() - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kv_tuple_shape_and_commutation() {
        let t = kv_tuple();
        assert_eq!(t.len(), 3);
        assert_eq!(t.dim(), 5);
        assert!(t.commutator_norm() <= 1e-14);
        for m in t.iter() {
            assert!(op_norm(m) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn kv_over_min_l1_is_verified_and_not_falsified_by_sampling() {
        let spec = OperatorSpaceSpec::min(3, Base::L1);
        assert!(is_cc(&spec, &kv_tuple(), 1e-9, budget()).unwrap().is_verified());
        // sampling alone, bypassing the closed form, never finds a violation
        let f = duality_falsifier(&spec.dual().unwrap(), &kv_tuple(), 1e-9, SamplingBudget::new(2000, 3, 3)).unwrap();
        assert_ne!(f.status, CcStatus::Falsified);
        assert!(f.bound.unwrap() <= 1.0 + 1e-9);
    }

    #[test]
    fn min_diagonal_closed_form() {
        // joint spectrum (0.9, 0.9): in the polydisk, outside the ℓ¹ ball
        let d = ComplexMatrix::from_diagonal_element(1, 1, c(0.9, 0.0));
        let t = MatrixTuple::new(vec![d.clone(), d]).unwrap();
        assert!(is_cc(&OperatorSpaceSpec::min(2, Base::L1), &t, 1e-9, budget()).unwrap().is_verified());
        let v = is_cc(&OperatorSpaceSpec::min(2, Base::Linf), &t, 1e-9, budget()).unwrap();
        assert_eq!(v.status, CcStatus::Falsified);
        assert!(op_norm(&pair_tuples(&t, &v.witness.unwrap()).unwrap()) > 1.0 + 1e-9);
    }

    #[test]
    fn duality_falsifier_cases() {
        let row = OperatorSpaceSpec::row(2);
        let zero = MatrixTuple::zeros(2, 3);
        let v = duality_falsifier(&row, &zero, 1e-9, budget()).unwrap();
        assert_eq!(v.bound, Some(0.0));
        assert_ne!(v.status, CcStatus::Falsified);

        // a commuting pair of diagonal contractions with ‖(a, b)‖₂ ≤ 1 pointwise
        let s = MatrixTuple::new(vec![
            ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.3)])),
            ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.0, 0.8), c(0.5, 0.0)])),
        ])
        .unwrap();
        let v = duality_falsifier(&row, &s, 1e-9, budget()).unwrap();
        assert_eq!(v.status, CcStatus::Unknown);
        assert!(v.bound.unwrap() <= 1.0 + 1e-9);

        let mut rng = rng_for(4, 0);
        let big = MatrixTuple::new(vec![random_unitary(2, &mut rng).scale(1.5), identity(2).scale(0.1)]).unwrap();
        let v = duality_falsifier(&OperatorSpaceSpec::max(2, Base::L1), &big, 1e-9, budget()).unwrap();
        assert_eq!(v.status, CcStatus::Falsified);
        assert!(v.bound.unwrap() >= 1.5 - 1e-12);
    }

    #[test]
    fn duality_falsifier_bound_grows_with_budget() {
        let mut rng = rng_for(5, 0);
        let s = MatrixTuple::new(vec![random_contraction(2, &mut rng), random_contraction(2, &mut rng)]).unwrap();
        let e = OperatorSpaceSpec::max(2, Base::L2);
        let mut last = 0.0;
        for samples in [0, 10, 50, 200] {
            let b = duality_falsifier(&e, &s, 1e-9, SamplingBudget::new(samples, 3, 11)).unwrap().bound.unwrap();
            assert!(b >= last);
            last = b;
        }
    }

    #[test]
    fn sampled_tuples_satisfy_their_closed_forms() {
        let specs = [
            OperatorSpaceSpec::max(3, Base::L1),
            OperatorSpaceSpec::max(3, Base::L2),
            OperatorSpaceSpec::max(3, Base::Linf),
            OperatorSpaceSpec::row(3),
            OperatorSpaceSpec::column(3),
            OperatorSpaceSpec::min(3, Base::L1),
            OperatorSpaceSpec::min(3, Base::L2),
        ];
        for (i, spec) in specs.iter().enumerate() {
            for k in 0..20 {
                let mut rng = rng_for(i as u64, k);
                let t = sample_cc_tuple(spec, 1 + (k as usize % 4), &mut rng);
                let v = is_cc(spec, &t, 1e-9, SamplingBudget::none()).unwrap();
                assert!(v.is_verified(), "{spec}: {v:?}");
            }
        }
    }

    #[test]
    fn kv_check_examples() {
        let third = identity(2).scale(1.0 / 3.0);
        let a = MatrixTuple::new(vec![third.clone(), third.clone(), third]).unwrap();
        let r = kv_block_report(&a).unwrap();
        assert!(r.hypotheses_hold);
        assert!(r.passed());

        let a = MatrixTuple::scalar(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let r = kv_block_report(&a).unwrap();
        assert!((r.direct_norm - 1.0).abs() < 1e-12);
        assert!(r.passed());

        let diag = |v: [f64; 2]| ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(v[0], 0.0), c(0.0, v[1])]));
        let a = MatrixTuple::new(vec![diag([0.5, 0.2]), diag([-0.3, 0.4]), diag([0.2, -0.4])]).unwrap();
        let r = kv_block_report(&a).unwrap();
        assert!(r.hypotheses_hold);
        assert!(r.direct_norm <= 1.0 + 1e-12);
        assert!(kv_structural_check(&a).unwrap());

        assert!(matches!(kv_structural_check(&MatrixTuple::zeros(2, 2)), Err(Error::Arity { .. })));
    }

    #[test]
    fn tags_round_trip() {
        for tag in ["min-l1", "min-l2", "min-linf", "max-l1", "max-l2", "max-linf", "row", "column"] {
            assert_eq!(OperatorSpaceSpec::from_tag(tag, 2).unwrap().tag(), tag);
        }
        assert!(OperatorSpaceSpec::from_tag("sup", 2).is_err());
    }
}
