//! Matrix-coefficient polynomials: evaluation at points and on commuting
//! tuples, supremum-norm estimates and lower bounds for universal norms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use log::debug;
use rand::Rng;

use crate::error::{Error, Result};
use crate::opspace::{is_cc, kv_tuple, Base, OperatorSpaceSpec, SamplingBudget, SpaceKind};
use crate::random::{par_best, point_on_sphere, random_matrix, rng_for, DrawRng};
use crate::tensor_core::{c, identity, kron, op_norm, ComplexMatrix, MatrixTuple, C64};

/// Exponent vector `(n₁,…,nₙ)`, ordered by total degree and then
/// lexicographically with larger leading exponents first
/// (`1, z₁, z₂, z₁², z₁z₂, z₂², …`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Self(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` when every exponent is at least the other's.
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// `ln ‖z^α‖²` in the Drury–Arveson space, `‖z^α‖² = α!/|α|!`.
    fn ln_da_norm_sqr(&self) -> f64 {
        let ln_fact = |k: u32| (1..=k).map(|i| (i as f64).ln()).sum::<f64>();
        self.0.iter().map(|&a| ln_fact(a)).sum::<f64>() - ln_fact(self.degree())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// All exponent vectors in `n` variables of total degree `≤ degree`, in
/// graded order.
pub fn monomials(n: usize, degree: u32) -> Vec<MultiIndex> {
    fn fill(rest: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slots == 1 {
            prefix.push(rest);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=rest).rev() {
            prefix.push(a);
            fill(rest - a, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=degree {
        fill(d, n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// `p(z) = Σ A_α z^α` with `rows × cols` complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    n: usize,
    rows: usize,
    cols: usize,
    terms: BTreeMap<MultiIndex, ComplexMatrix>,
}

impl MatrixPolynomial {
    /// The zero polynomial in `n` variables with `rows × cols` coefficients.
    pub fn zero(n: usize, rows: usize, cols: usize) -> Result<Self> {
        if n == 0 || rows == 0 || cols == 0 {
            return Err(Error::Dimension("polynomial needs n, rows, cols >= 1".into()));
        }
        Ok(Self {
            n,
            rows,
            cols,
            terms: BTreeMap::new(),
        })
    }

    /// Scalar polynomial from `(exponents, coefficient)` pairs.
    pub fn scalar(n: usize, terms: &[(&[u32], C64)]) -> Result<Self> {
        let mut p = Self::zero(n, 1, 1)?;
        for (e, a) in terms {
            p.add_term(MultiIndex(e.to_vec()), ComplexMatrix::from_element(1, 1, *a))?;
        }
        Ok(p)
    }

    /// `Σ a_j z_j`.
    pub fn linear(a: &[C64]) -> Result<Self> {
        let mut p = Self::zero(a.len(), 1, 1)?;
        for (j, &aj) in a.iter().enumerate() {
            p.add_term(MultiIndex::unit(a.len(), j), ComplexMatrix::from_element(1, 1, aj))?;
        }
        Ok(p)
    }

    /// Adds `coeff · z^index`, merging with an existing term.
    pub fn add_term(&mut self, index: MultiIndex, coeff: ComplexMatrix) -> Result<()> {
        if index.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                found: index.len(),
            });
        }
        if coeff.nrows() != self.rows || coeff.ncols() != self.cols {
            return Err(Error::Dimension(format!(
                "coefficient is {}x{}, expected {}x{}",
                coeff.nrows(),
                coeff.ncols(),
                self.rows,
                self.cols
            )));
        }
        if coeff.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        match self.terms.get_mut(&index) {
            Some(a) => *a += coeff,
            None => {
                self.terms.insert(index, coeff);
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_scalar(&self) -> bool {
        self.rows == 1 && self.cols == 1
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, ComplexMatrix> {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> ComplexMatrix {
        self.terms
            .get(&MultiIndex::zero(self.n))
            .cloned()
            .unwrap_or_else(|| ComplexMatrix::zeros(self.rows, self.cols))
    }

    pub fn scaled(&self, s: C64) -> Self {
        let mut out = self.clone();
        for a in out.terms.values_mut() {
            *a *= s;
        }
        out
    }

    /// Product `p·q` with coefficient products `A_α B_β`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Arity {
                expected: self.n,
                found: other.n,
            });
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{} coefficients",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.n, self.rows, other.cols)?;
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), x * y)?;
            }
        }
        Ok(out)
    }

    pub fn eval_point(&self, z: &[C64]) -> Result<ComplexMatrix> {
        if z.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                found: z.len(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, self.cols);
        for (index, a) in &self.terms {
            let mono = index
                .exponents()
                .iter()
                .zip(z)
                .fold(c(1.0, 0.0), |acc, (&k, &zj)| acc * zj.powu(k));
            out += a * mono;
        }
        Ok(out)
    }

    /// `p(T) = Σ A_α ⊗ T^α` for a commuting tuple.
    pub fn eval_tuple(&self, t: &MatrixTuple) -> Result<ComplexMatrix> {
        if t.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                found: t.len(),
            });
        }
        let scale = t.iter().map(op_norm).fold(1.0_f64, f64::max);
        let commutator = t.commutator_norm();
        if commutator > 1e-9 * scale * scale {
            return Err(Error::NonCommuting(commutator));
        }
        Ok(self.eval_tuple_unchecked(t))
    }

    fn eval_tuple_unchecked(&self, t: &MatrixTuple) -> ComplexMatrix {
        let d = t.dim();
        let top = self.degree() as usize;
        // powers[j][k] = T_j^k
        let powers: Vec<Vec<ComplexMatrix>> = t
            .iter()
            .map(|m| {
                let mut row = vec![identity(d)];
                for k in 0..top {
                    let next = &row[k] * m;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut out = ComplexMatrix::zeros(self.rows * d, self.cols * d);
        for (index, a) in &self.terms {
            let mut mono = identity(d);
            for (j, &k) in index.exponents().iter().enumerate() {
                if k > 0 {
                    mono *= &powers[j][k as usize];
                }
            }
            out += kron(a, &mono);
        }
        out
    }
}

impl fmt::Display for MatrixPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (index, a) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if self.is_scalar() {
                write!(f, "({})", a[(0, 0)])?;
            } else {
                write!(f, "A")?;
            }
            for (j, &k) in index.exponents().iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·z{}", j + 1)?,
                    _ => write!(f, "·z{}^{k}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Which points of the closed unit ball `sup_norm_lb` evaluates at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplePlan {
    /// Product grid of `per_axis` equally spaced phases on the torus. For
    /// other norms the same number of random sphere points is used.
    TorusGrid { per_axis: usize },
    /// `count` seeded random points of the unit sphere.
    Random { count: usize, seed: u64 },
}

/// Lower bound for `sup ‖p(z)‖` over the closed unit ball of the base norm of
/// `spec`. Only sphere points are sampled, which loses nothing by the maximum
/// principle along complex lines through the origin. Enlarging a plan (more
/// grid refinements by an integer factor, or a longer random prefix) never
/// decreases the result.
pub fn sup_norm_lb(p: &MatrixPolynomial, spec: &OperatorSpaceSpec, plan: SamplePlan) -> f64 {
    sup_norm_search(p, spec, plan).map(|(v, _)| v).unwrap_or(0.0)
}

/// As [`sup_norm_lb`], also returning the maximising point.
pub fn sup_norm_search(p: &MatrixPolynomial, spec: &OperatorSpaceSpec, plan: SamplePlan) -> Option<(f64, Vec<C64>)> {
    let n = p.n();
    let base = spec.base();
    let constant = op_norm(&p.constant_term());
    let found = match (plan, base) {
        (SamplePlan::TorusGrid { per_axis }, Some(Base::Linf)) => {
            grid_search(p, per_axis.max(1))
        }
        (SamplePlan::TorusGrid { per_axis }, _) => {
            let count = per_axis.max(1).saturating_pow(n as u32);
            random_sphere_search(p, spec, count, 0)
        }
        (SamplePlan::Random { count, seed }, _) => random_sphere_search(p, spec, count, seed),
    };
    match found {
        Some((v, z)) if v >= constant => Some((v, z)),
        _ => Some((constant, vec![c(0.0, 0.0); n])),
    }
}

fn grid_search(p: &MatrixPolynomial, per_axis: usize) -> Option<(f64, Vec<C64>)> {
    use rayon::prelude::*;
    let n = p.n();
    let total = per_axis.checked_pow(n as u32)?;
    let phases: Vec<C64> = (0..per_axis)
        .map(|k| C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / per_axis as f64))
        .collect();
    (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let z: Vec<C64> = (0..n)
                .map(|_| {
                    let w = phases[idx % per_axis];
                    idx /= per_axis;
                    w
                })
                .collect();
            let v = p.eval_point(&z).map(|m| op_norm(&m)).unwrap_or(0.0);
            (v, z)
        })
        .reduce_with(|a, b| if b.0 > a.0 { b } else { a })
}

fn random_sphere_search(
    p: &MatrixPolynomial,
    spec: &OperatorSpaceSpec,
    count: usize,
    seed: u64,
) -> Option<(f64, Vec<C64>)> {
    let n = p.n();
    par_best(count, seed, 0, |rng| {
        let z = sphere_point(spec, n, rng)?;
        Some((op_norm(&p.eval_point(&z).ok()?), z))
    })
    .map(|(v, _, z)| (v, z))
}

/// A point on the unit sphere of the base norm of `spec`; for concrete
/// structures a Gaussian direction normalised in the induced norm.
fn sphere_point(spec: &OperatorSpaceSpec, n: usize, rng: &mut DrawRng) -> Option<Vec<C64>> {
    match spec.base() {
        Some(b) => Some(point_on_sphere(b, n, rng)),
        None => {
            let z = point_on_sphere(Base::L2, n, rng);
            let norm = spec.vector_norm(&z).ok()?;
            (norm > 0.0).then(|| z.into_iter().map(|w| w / norm).collect())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Random draws for each generator family.
    pub samples: usize,
    /// Largest size of generated non-scalar tuples.
    pub max_dim: usize,
    pub seed: u64,
    /// Also try the built-in tuples (Kaijser–Varopoulos, truncated shifts).
    pub include_library: bool,
    /// Truncation degree for the library shift tuples.
    pub degree_cap: u32,
    /// Hill-climbing steps applied to the best scalar point.
    pub polish_steps: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            samples: 2000,
            max_dim: 4,
            seed: 0,
            include_library: true,
            degree_cap: 6,
            polish_steps: 400,
        }
    }
}

/// Lower bound for `sup ‖p(S)‖` over commuting tuples `S` whose map is
/// completely contractive for `e`, with the tuple attaining it.
///
/// Every candidate is admitted only after [`is_cc`] returns a verified
/// verdict. Candidates: the zero tuple; scalar points on the unit sphere of
/// the dual norm (drawn exactly as [`sup_norm_lb`] with
/// `SamplePlan::Random { count: samples, seed }` on `e.dual()`), refined by
/// hill climbing; commuting tuples of polynomials in one random matrix,
/// rescaled into the cc set; and optionally the library tuples. Concrete
/// structures admit only the zero tuple.
pub fn uc_norm_lb(p: &MatrixPolynomial, e: &OperatorSpaceSpec, budget: SearchBudget) -> Result<(f64, MatrixTuple)> {
    let n = p.n();
    if e.n() != n {
        return Err(Error::Arity {
            expected: n,
            found: e.n(),
        });
    }
    let zero = MatrixTuple::zeros(n, 1);
    let mut best = (op_norm(&p.constant_term()), zero);
    let consider = |v: f64, t: MatrixTuple, best: &mut (f64, MatrixTuple)| {
        if v > best.0 {
            *best = (v, t);
        }
    };
    let Some(domain) = e.domain_base() else {
        return Ok(best);
    };
    let admitted = |t: &MatrixTuple| -> bool {
        is_cc(e, t, 1e-12, SamplingBudget::none())
            .map(|v| v.is_verified())
            .unwrap_or(false)
    };

    // scalar points
    let scalar = par_best(budget.samples, budget.seed, 0, |rng| {
        let z = point_on_sphere(domain, n, rng);
        Some((op_norm(&p.eval_point(&z).ok()?), z))
    });
    if let Some((_, _, z)) = scalar {
        let (v, z) = polish_point(p, domain, z, budget.polish_steps, budget.seed);
        let t = MatrixTuple::scalar(&z)?;
        if admitted(&t) {
            consider(v, t, &mut best);
        }
    }

    // commuting tuples q_j(X)
    if budget.max_dim > 1 {
        let family = par_best(budget.samples, budget.seed, 1 << 40, |rng| {
            let t = commuting_candidate(e, n, budget.max_dim, rng)?;
            if !admitted(&t) {
                return None;
            }
            Some((op_norm(&p.eval_tuple(&t).ok()?), t))
        });
        if let Some((v, _, t)) = family {
            consider(v, t, &mut best);
        }
    }

    if budget.include_library {
        let mut library = Vec::new();
        if n == 3 {
            library.push(kv_tuple());
        }
        let shift = da_shift_tuple(n, budget.degree_cap);
        library.push(shift.transpose());
        library.push(shift);
        for t in library {
            if admitted(&t) {
                let v = op_norm(&p.eval_tuple(&t)?);
                debug!("library tuple of size {} gives {v}", t.dim());
                consider(v, t, &mut best);
            }
        }
    }
    Ok(best)
}

/// Random-direction hill climbing on the unit sphere of `domain`.
fn polish_point(p: &MatrixPolynomial, domain: Base, z: Vec<C64>, steps: usize, seed: u64) -> (f64, Vec<C64>) {
    let value = |z: &[C64]| p.eval_point(z).map(|m| op_norm(&m)).unwrap_or(0.0);
    let mut rng = rng_for(seed, u64::MAX);
    let mut best = (value(&z), z);
    let mut step = 0.25;
    for _ in 0..steps {
        let delta = point_on_sphere(Base::L2, best.1.len(), &mut rng);
        let trial: Vec<C64> = best.1.iter().zip(&delta).map(|(a, d)| a + d * step).collect();
        let trial: Vec<C64> = if domain == Base::Linf {
            // stay on the torus, where polynomials attain their polydisk maximum
            if trial.iter().any(|w| w.norm() == 0.0) {
                continue;
            }
            trial.into_iter().map(|w| w / w.norm()).collect()
        } else {
            let norm = domain.norm(&trial);
            if norm == 0.0 {
                continue;
            }
            trial.into_iter().map(|w| w / norm).collect()
        };
        let v = value(&trial);
        // expand on success, contract on failure (roughly a one-in-five
        // success rate at equilibrium)
        if v > best.0 {
            best = (v, trial);
            step = (step * 1.5).min(1.0);
        } else {
            step = (step * 0.9).max(1e-9);
        }
    }
    best
}

/// `S_j = Σ_k c_{jk} X^k` for a random (often nilpotent) `X`, scaled so that
/// the closed-form cc test of `e` holds.
fn commuting_candidate(e: &OperatorSpaceSpec, n: usize, max_dim: usize, rng: &mut DrawRng) -> Option<MatrixTuple> {
    let d = rng.random_range(2..=max_dim.max(2));
    let mut x = random_matrix(d, d, rng);
    if rng.random::<bool>() {
        // strictly upper triangular
        for i in 0..d {
            for j in 0..=i {
                x[(i, j)] = c(0.0, 0.0);
            }
        }
    }
    let mut powers = vec![identity(d)];
    for k in 1..d {
        let next = &powers[k - 1] * &x;
        powers.push(next);
    }
    let mats: Vec<ComplexMatrix> = (0..n)
        .map(|_| {
            powers
                .iter()
                .fold(ComplexMatrix::zeros(d, d), |acc, pk| acc + pk * crate::random::complex_gaussian(rng))
        })
        .collect();
    let t = MatrixTuple::new(mats).ok()?;
    let radius = if rng.random::<bool>() { 1.0 } else { rng.random::<f64>() };
    let scaled = match e.kind() {
        SpaceKind::Max(Base::L1) => {
            MatrixTuple::new(t.iter().map(|m| m.scale(radius / op_norm(m).max(1e-300))).collect()).ok()?
        }
        SpaceKind::Max(Base::L2) => {
            let s = op_norm(&t.row_matrix()).min(op_norm(&t.column_matrix()));
            t.scaled(radius / s)
        }
        SpaceKind::Max(Base::Linf) => {
            let s: f64 = t.iter().map(op_norm).sum();
            t.scaled(radius / s)
        }
        SpaceKind::Row => t.scaled(radius / op_norm(&t.column_matrix())),
        SpaceKind::Column => t.scaled(radius / op_norm(&t.row_matrix())),
        // only normal tuples have a closed-form cc test here
        SpaceKind::Min(_) | SpaceKind::Concrete(_) => return None,
    };
    // shave rounding so the closed form accepts boundary tuples
    Some(scaled.scaled(1.0 - 1e-13))
}

/// Commuting tuple on polynomials of degree `≤ degree` in the Drury–Arveson
/// inner product: the coordinate multipliers compressed to that co-invariant
/// subspace, `S_j e_α = √((α_j+1)/(|α|+1)) e_{α+ε_j}` (zero at top degree).
/// `Σ S_jS_j* ⪯ I`.
pub fn da_shift_tuple(n: usize, degree: u32) -> MatrixTuple {
    let basis = monomials(n, degree);
    let position: BTreeMap<&MultiIndex, usize> = basis.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let dim = basis.len();
    let mats = (0..n)
        .map(|j| {
            let mut m = ComplexMatrix::zeros(dim, dim);
            for (col, alpha) in basis.iter().enumerate() {
                if alpha.degree() == degree {
                    continue;
                }
                let target = alpha.add(&MultiIndex::unit(n, j));
                let w = ((alpha.0[j] + 1) as f64 / (alpha.degree() + 1) as f64).sqrt();
                m[(position[&target], col)] = c(w, 0.0);
            }
            m
        })
        .collect();
    MatrixTuple::new(mats).expect("square shift matrices")
}

/// Norm of the multiplier `M_p` compressed to polynomials of degree
/// `≤ degree_cap` in the Drury–Arveson space. The matrix in the orthonormal
/// monomial basis has entries `c_{α−β} ‖z^α‖/‖z^β‖`. The subspace is
/// co-invariant, so this is a lower bound for the multiplier norm and grows
/// with `degree_cap`.
pub fn da_multiplier_lb(p: &MatrixPolynomial, degree_cap: u32) -> Result<f64> {
    if !p.is_scalar() {
        return Err(Error::Unsupported(
            "multiplier norms are implemented for scalar polynomials".into(),
        ));
    }
    let basis = monomials(p.n(), degree_cap);
    let ln_norm: Vec<f64> = basis.iter().map(|a| 0.5 * a.ln_da_norm_sqr()).collect();
    let dim = basis.len();
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (i, alpha) in basis.iter().enumerate() {
        for (j, beta) in basis.iter().enumerate() {
            if let Some(gap) = alpha.checked_sub(beta) {
                if let Some(a) = p.terms().get(&gap) {
                    m[(i, j)] = a[(0, 0)] * (ln_norm[i] - ln_norm[j]).exp();
                }
            }
        }
    }
    Ok(op_norm(&m))
}

/// `z₁² + z₂² + z₃² − 2z₁z₂ − 2z₁z₃ − 2z₂z₃`.
pub fn kv_polynomial() -> MatrixPolynomial {
    let one = c(1.0, 0.0);
    let minus_two = c(-2.0, 0.0);
    MatrixPolynomial::scalar(
        3,
        &[
            (&[2, 0, 0], one),
            (&[0, 2, 0], one),
            (&[0, 0, 2], one),
            (&[1, 1, 0], minus_two),
            (&[1, 0, 1], minus_two),
            (&[0, 1, 1], minus_two),
        ],
    )
    .expect("well-formed polynomial")
}

/// Symmetric quadratic `Σ z_j² + Σ_{i<j} s_{ij} 2 z_i z_j` with signs
/// `(s₁₂, s₁₃, s₂₃)` and square signs `(q₁, q₂, q₃)` read from the bits of
/// `pattern` (bit set means `−`), `pattern < 64`.
pub fn sign_pattern_quadratic(pattern: u32) -> MatrixPolynomial {
    let sign = |bit: u32| if pattern & (1 << bit) == 0 { 1.0 } else { -1.0 };
    MatrixPolynomial::scalar(
        3,
        &[
            (&[2, 0, 0], c(sign(0), 0.0)),
            (&[0, 2, 0], c(sign(1), 0.0)),
            (&[0, 0, 2], c(sign(2), 0.0)),
            (&[1, 1, 0], c(2.0 * sign(3), 0.0)),
            (&[1, 0, 1], c(2.0 * sign(4), 0.0)),
            (&[0, 1, 1], c(2.0 * sign(5), 0.0)),
        ],
    )
    .expect("well-formed polynomial")
}
