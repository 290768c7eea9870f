//! Agler–Nevanlinna factorizations `I − p(z)p(w)* = F(z)[I − σ(z)σ(w)*]F(w)*`
//! on finite sets, the unitary colligations read off from them, and
//! evaluation of transfer functions on points and commuting tuples.

use log::{debug, warn};

use crate::error::{Error, Result};
use crate::polyeval::MatrixPolynomial;
use crate::tensor_core::{
    c, extend_isometry, identity, kron, op_norm, pair_tuples, swap_tensor_factors, unitarity_residual, ComplexMatrix,
    IsometryData, MatrixTuple, C64,
};

/// Tolerance on `‖U*U − I‖` accepted for a colligation.
pub const UNITARY_TOL: f64 = 1e-9;

/// Block unitary `U = [A B; C D]` on `ℂᵏ ⊕ ℂᴺ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Colligation {
    a: ComplexMatrix,
    b: ComplexMatrix,
    c: ComplexMatrix,
    d: ComplexMatrix,
}

impl Colligation {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix, c: ComplexMatrix, d: ComplexMatrix) -> Result<Self> {
        let k = a.nrows();
        let n = d.nrows();
        let shapes = [
            (&a, k, k, "A"),
            (&b, k, n, "B"),
            (&c, n, k, "C"),
            (&d, n, n, "D"),
        ];
        for (m, r, cols, name) in shapes {
            if m.nrows() != r || m.ncols() != cols {
                return Err(Error::Dimension(format!(
                    "block {name} is {}x{}, expected {r}x{cols}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        if n == 0 {
            return Err(Error::Dimension("colligation needs N >= 1".into()));
        }
        let out = Self { a, b, c, d };
        let residual = unitarity_residual(&out.unitary());
        if residual.is_nan() || residual > UNITARY_TOL {
            return Err(Error::NotUnitary(residual));
        }
        Ok(out)
    }

    /// Splits a `(k+N)`-square unitary after its first `k` rows and columns.
    pub fn from_unitary(u: &ComplexMatrix, k: usize) -> Result<Self> {
        let total = u.nrows();
        if u.ncols() != total || k >= total {
            return Err(Error::Dimension(format!(
                "cannot split a {}x{} matrix at {k}",
                u.nrows(),
                u.ncols()
            )));
        }
        let n = total - k;
        Self::new(
            u.view((0, 0), (k, k)).into_owned(),
            u.view((0, k), (k, n)).into_owned(),
            u.view((k, 0), (n, k)).into_owned(),
            u.view((k, k), (n, n)).into_owned(),
        )
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn c(&self) -> &ComplexMatrix {
        &self.c
    }

    pub fn d(&self) -> &ComplexMatrix {
        &self.d
    }

    /// Internal dimension `k`.
    pub fn k(&self) -> usize {
        self.a.nrows()
    }

    /// Output dimension `N`.
    pub fn n_out(&self) -> usize {
        self.d.nrows()
    }

    pub fn unitary(&self) -> ComplexMatrix {
        let (k, n) = (self.k(), self.n_out());
        let mut u = ComplexMatrix::zeros(k + n, k + n);
        u.view_mut((0, 0), (k, k)).copy_from(&self.a);
        u.view_mut((0, k), (k, n)).copy_from(&self.b);
        u.view_mut((k, 0), (n, k)).copy_from(&self.c);
        u.view_mut((k, k), (n, n)).copy_from(&self.d);
        u
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.unitary())
    }

    /// `D̃ + C̃X(I − ÃX)⁻¹B̃` with tildes meaning `I_L ⊗ ·`, for `X` of size
    /// `Lk × Lk`. The caller guarantees `‖X‖ < 1`.
    pub fn transfer_at(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let k = self.k();
        let lift = self.lift(x)?;
        if k == 0 {
            return Ok(kron(&identity(lift), &self.d));
        }
        let il = identity(lift);
        let a = kron(&il, &self.a);
        let resolvent_rhs = kron(&il, &self.b);
        let system = identity(lift * k) - &a * x;
        let solved = system
            .lu()
            .solve(&resolvent_rhs)
            .ok_or_else(|| Error::Domain("I - AX is singular".into()))?;
        Ok(kron(&il, &self.d) + kron(&il, &self.c) * x * solved)
    }

    fn lift(&self, x: &ComplexMatrix) -> Result<usize> {
        let k = self.k();
        let size = x.nrows();
        if x.ncols() != size || (k == 0 && size != 0) || (k > 0 && (size == 0 || !size.is_multiple_of(k))) {
            return Err(Error::Dimension(format!(
                "argument is {}x{}, need a square multiple of k = {k}",
                x.nrows(),
                x.ncols()
            )));
        }
        Ok(size.checked_div(k).unwrap_or(1))
    }
}

/// Values on a finite set `Λ` of a candidate factorization
/// `I − p(λ_i)p(λ_j)* = F(λ_i)[I − σ(λ_i)σ(λ_j)*]F(λ_j)*`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationData {
    pub points: Vec<Vec<C64>>,
    /// `F(λ_i)`, each `N × k`.
    pub f_values: Vec<ComplexMatrix>,
    /// `σ(z) = Σ z_j T_j` with `k × k` matrices `T_j`.
    pub sigma: MatrixTuple,
    /// `p(λ_i)`, each `N × N`.
    pub p_values: Vec<ComplexMatrix>,
}

impl FactorizationData {
    pub fn new(
        points: Vec<Vec<C64>>,
        f_values: Vec<ComplexMatrix>,
        sigma: MatrixTuple,
        p_values: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        let out = Self {
            points,
            f_values,
            sigma,
            p_values,
        };
        out.validate()?;
        Ok(out)
    }

    /// Samples `F` and `p` at the given points.
    pub fn from_polynomials(
        points: Vec<Vec<C64>>,
        f: &MatrixPolynomial,
        sigma: MatrixTuple,
        p: &MatrixPolynomial,
    ) -> Result<Self> {
        let f_values = points.iter().map(|z| f.eval_point(z)).collect::<Result<Vec<_>>>()?;
        let p_values = points.iter().map(|z| p.eval_point(z)).collect::<Result<Vec<_>>>()?;
        Self::new(points, f_values, sigma, p_values)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Internal dimension `k`.
    pub fn k(&self) -> usize {
        self.sigma.dim()
    }

    /// Output dimension `N`.
    pub fn n_out(&self) -> usize {
        self.p_values.first().map(|m| m.nrows()).unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.points.len();
        if m == 0 {
            return Err(Error::Dimension("factorization data needs at least one point".into()));
        }
        if self.f_values.len() != m || self.p_values.len() != m {
            return Err(Error::Dimension(format!(
                "{m} points but {} F-values and {} p-values",
                self.f_values.len(),
                self.p_values.len()
            )));
        }
        let (n, k, vars) = (self.n_out(), self.k(), self.sigma.len());
        for (i, z) in self.points.iter().enumerate() {
            if z.len() != vars {
                return Err(Error::Arity {
                    expected: vars,
                    found: z.len(),
                });
            }
            let f = &self.f_values[i];
            let p = &self.p_values[i];
            if f.nrows() != n || f.ncols() != k || p.nrows() != n || p.ncols() != n {
                return Err(Error::Dimension(format!(
                    "point {i}: F is {}x{}, p is {}x{}, expected {n}x{k} and {n}x{n}",
                    f.nrows(),
                    f.ncols(),
                    p.nrows(),
                    p.ncols()
                )));
            }
            let finite = |m: &ComplexMatrix| m.iter().all(|w| w.re.is_finite() && w.im.is_finite());
            if !finite(f) || !finite(p) || z.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(())
    }

    fn sigmas(&self) -> Result<Vec<ComplexMatrix>> {
        self.points.iter().map(|z| self.sigma.sigma(z)).collect()
    }
}

/// Largest block error of the factorization over all point pairs, and
/// whether it is at most `tol`.
pub fn verify_factorization(d: &FactorizationData, tol: f64) -> Result<(f64, bool)> {
    d.validate()?;
    let n = d.n_out();
    let k = d.k();
    let sigmas = d.sigmas()?;
    let mut worst: f64 = 0.0;
    for i in 0..d.len() {
        for j in 0..d.len() {
            let lhs = identity(n) - &d.p_values[i] * d.p_values[j].adjoint();
            let middle = identity(k) - &sigmas[i] * sigmas[j].adjoint();
            let rhs = &d.f_values[i] * middle * d.f_values[j].adjoint();
            worst = worst.max(op_norm(&(lhs - rhs)));
        }
    }
    Ok((worst, worst <= tol))
}

/// Lurking-isometry construction. The vectors `(σ(λ)*F(λ)*x, x)` and
/// `(F(λ)*x, p(λ)*x)`, for `x` running over the standard basis of `ℂᴺ`, have
/// equal Gram matrices exactly when the factorization holds; the unitary
/// `W` extending `(σ*F*x, x) ↦ (F*x, p*x)` is `U*` for a colligation whose
/// transfer function equals `p` on the data points.
pub fn build_colligation(d: &FactorizationData, tol: f64) -> Result<Colligation> {
    let (residual, pass) = verify_factorization(d, tol)?;
    if !pass {
        return Err(Error::GramMismatch(residual));
    }
    let n = d.n_out();
    let k = d.k();
    let sigmas = d.sigmas()?;
    let cols = d.len() * n;
    let mut domain = ComplexMatrix::zeros(k + n, cols);
    let mut image = ComplexMatrix::zeros(k + n, cols);
    for (i, (f, p)) in d.f_values.iter().zip(&d.p_values).enumerate() {
        let f_star = f.adjoint();
        let top = sigmas[i].adjoint() * &f_star;
        let p_star = p.adjoint();
        for x in 0..n {
            let col = i * n + x;
            domain.view_mut((0, col), (k, 1)).copy_from(&top.column(x));
            domain[(k + x, col)] = c(1.0, 0.0);
            image.view_mut((0, col), (k, 1)).copy_from(&f_star.column(x));
            image.view_mut((k, col), (n, 1)).copy_from(&p_star.column(x));
        }
    }
    let iso = IsometryData::new(domain, image)?;
    let (w, _) = extend_isometry(&iso, tol)?;
    let colligation = Colligation::from_unitary(&w.adjoint(), k)?;
    debug!(
        "built colligation with k = {k}, N = {n}, unitarity residual {:.3e}",
        colligation.unitarity_residual()
    );
    Ok(colligation)
}

/// `D + C(I − σ(z)A)⁻¹σ(z)B` with `σ(z) = Σ z_j T_j`.
pub fn eval_transfer(col: &Colligation, t: &MatrixTuple, z: &[C64]) -> Result<ComplexMatrix> {
    if t.dim() != col.k() {
        return Err(Error::Dimension(format!(
            "sigma acts on dimension {}, colligation on {}",
            t.dim(),
            col.k()
        )));
    }
    let sigma = t.sigma(z)?;
    let norm = op_norm(&sigma);
    if norm >= 1.0 {
        return Err(Error::Domain(format!("‖σ(z)‖ = {norm} is not below one")));
    }
    if norm > 0.999 {
        warn!("‖σ(z)‖ = {norm}: transfer evaluation is ill-conditioned");
    }
    // (I − σA)⁻¹σ = σ(I − Aσ)⁻¹
    col.transfer_at(&sigma)
}

/// Error of the identity `I − Q*Q = B̃*(I − ÃX)⁻*(I − X*X)(I − ÃX)⁻¹B̃` for
/// `Q = D̃ + C̃X(I − ÃX)⁻¹B̃`.
pub fn defect_check(col: &Colligation, x: &ComplexMatrix) -> Result<f64> {
    let norm = op_norm(x);
    if norm >= 1.0 {
        return Err(Error::Domain(format!("‖X‖ = {norm} is not below one")));
    }
    let lift = col.lift(x)?;
    let k = col.k();
    let n = col.n_out();
    let q = col.transfer_at(x)?;
    let lhs = identity(lift * n) - q.adjoint() * &q;
    if k == 0 {
        return Ok(op_norm(&lhs));
    }
    let il = identity(lift);
    let system = identity(lift * k) - kron(&il, col.a()) * x;
    let y = system
        .lu()
        .solve(&kron(&il, col.b()))
        .ok_or_else(|| Error::Domain("I - AX is singular".into()))?;
    let rhs = y.adjoint() * (identity(lift * k) - x.adjoint() * x) * &y;
    Ok(op_norm(&(lhs - rhs)))
}

/// The transfer function applied to a commuting tuple `S` through
/// `X = Σ r S_j ⊗ T_j`. The result acts on `ℂᴺ ⊗ ℂᴸ` (coefficient factor
/// outer), the layout used by [`MatrixPolynomial::eval_tuple`].
pub fn eval_transfer_on_tuple(col: &Colligation, t: &MatrixTuple, s: &MatrixTuple, r: f64) -> Result<ComplexMatrix> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("radius {r} outside (0, 1)")));
    }
    let scale = s.iter().map(op_norm).fold(1.0_f64, f64::max);
    let commutator = s.commutator_norm();
    if commutator > 1e-9 * scale * scale {
        return Err(Error::NonCommuting(commutator));
    }
    if t.dim() != col.k() {
        return Err(Error::Dimension(format!(
            "sigma acts on dimension {}, colligation on {}",
            t.dim(),
            col.k()
        )));
    }
    let x = pair_tuples(&s.scaled(r), t)?;
    let norm = op_norm(&x);
    if norm >= 1.0 {
        return Err(Error::Domain(format!("‖Σ rS_j ⊗ T_j‖ = {norm} is not below one")));
    }
    let q = col.transfer_at(&x)?;
    swap_tensor_factors(&q, s.dim(), col.n_out())
}

/// The `6 × 6` tuple with `F(z)σ(z) = (0, z₁, z₂, 2z₁z₂, 0, 0)` for
/// `F(z) = (1, 0, 0, 0, z₁, z₂)`:
/// `T₁ = E₁₂ + E₃₁ + E₄₅ + E₆₄`, `T₂ = E₁₃ + E₂₁ + E₄₆ + E₅₄`.
pub fn two_z1z2_sigma() -> MatrixTuple {
    let unit_sum = |pairs: &[(usize, usize)]| {
        let mut m = ComplexMatrix::zeros(6, 6);
        for &(i, j) in pairs {
            m[(i - 1, j - 1)] = c(1.0, 0.0);
        }
        m
    };
    MatrixTuple::new(vec![
        unit_sum(&[(1, 2), (3, 1), (4, 5), (6, 4)]),
        unit_sum(&[(1, 3), (2, 1), (4, 6), (5, 4)]),
    ])
    .expect("6x6 tuple")
}

/// `F(z) = (1, 0, 0, 0, z₁, z₂)` as a `1 × 6` polynomial.
pub fn two_z1z2_f() -> MatrixPolynomial {
    let mut f = MatrixPolynomial::zero(2, 1, 6).expect("valid shape");
    let row = |k: usize| {
        let mut m = ComplexMatrix::zeros(1, 6);
        m[(0, k)] = c(1.0, 0.0);
        m
    };
    f.add_term(crate::polyeval::MultiIndex(vec![0, 0]), row(0)).expect("shape");
    f.add_term(crate::polyeval::MultiIndex(vec![1, 0]), row(4)).expect("shape");
    f.add_term(crate::polyeval::MultiIndex(vec![0, 1]), row(5)).expect("shape");
    f
}

pub fn two_z1z2() -> MatrixPolynomial {
    MatrixPolynomial::scalar(2, &[(&[1, 1], c(2.0, 0.0))]).expect("valid polynomial")
}

/// Factorization data of `2z₁z₂` at the given points of the unit ball.
pub fn two_z1z2_factorization(points: Vec<Vec<C64>>) -> Result<FactorizationData> {
    FactorizationData::from_polynomials(points, &two_z1z2_f(), two_z1z2_sigma(), &two_z1z2())
}
