//! Dense complex linear algebra kernel.
//!
//! Matrices are `nalgebra` dense matrices over `Complex<f64>`. Everything here
//! is a pure function of its inputs.

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;

/// Relative tolerance used for eigenvalue and singular value decisions.
pub const EIG_TOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Kronecker product; entry `(i·b.rows + p, j·b.cols + q)` is `a[i,j]·b[p,q]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Largest singular value.
pub fn op_norm(a: &ComplexMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if a.nrows() == 1 || a.ncols() == 1 {
        return a.norm();
    }
    a.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |m: f64, s| m.max(*s))
}

/// Eigen-decomposition of the Hermitian part `(a + a*)/2`, eigenvalues in
/// descending order. Each eigenvector is phase-normalised so that its largest
/// entry is real and positive, which makes the output reproducible.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    ensure_square(a)?;
    let n = a.nrows();
    if n == 0 {
        return Ok((Vec::new(), ComplexMatrix::zeros(0, 0)));
    }
    let h = (a + a.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        values.push(eig.eigenvalues[src]);
        let col = eig.eigenvectors.column(src);
        let pivot = col
            .iter()
            .copied()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .unwrap_or(c(1.0, 0.0));
        let phase = if pivot.norm() > 0.0 {
            pivot.conj() / pivot.norm()
        } else {
            c(1.0, 0.0)
        };
        vectors.set_column(dst, &(col * phase));
    }
    Ok((values, vectors))
}

/// Smallest eigenvalue of the Hermitian part.
pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    let (values, _) = hermitian_eigen(a)?;
    Ok(values.last().copied().unwrap_or(0.0))
}

/// `‖a − a*‖ ≤ tol` and `λ_min((a + a*)/2) ≥ −tol`, both with a relative
/// floor of `EIG_TOL·‖a‖` for roundoff.
pub fn is_psd(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    ensure_square(a)?;
    let slack = tol + EIG_TOL * op_norm(a);
    if op_norm(&(a - a.adjoint())) > slack {
        return Ok(false);
    }
    Ok(min_eigenvalue(a)? >= -slack)
}

/// Factor a PSD matrix as `F·F*`, keeping eigenvalues above `tol·‖p‖`.
pub fn gram_factor(p: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    ensure_square(p)?;
    if !is_psd(p, tol)? {
        return Err(Error::NotPositive {
            min_eigenvalue: min_eigenvalue(p)?,
        });
    }
    let (values, vectors) = hermitian_eigen(p)?;
    let threshold = tol.max(EIG_TOL) * op_norm(p);
    let rank = values.iter().take_while(|&&v| v > threshold).count();
    let mut f = ComplexMatrix::zeros(p.nrows(), rank);
    for (k, v) in values.iter().take(rank).enumerate() {
        f.set_column(k, &(vectors.column(k) * c(v.sqrt(), 0.0)));
    }
    Ok(f)
}

/// Conjugates `a`, an operator on `ℂ^outer ⊗ ℂ^inner`, by the swap
/// `x ⊗ y ↦ y ⊗ x`, giving an operator on `ℂ^inner ⊗ ℂ^outer`.
pub fn swap_tensor_factors(a: &ComplexMatrix, outer: usize, inner: usize) -> Result<ComplexMatrix> {
    let n = outer * inner;
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::Dimension(format!(
            "expected {n}x{n} for a {outer}⊗{inner} swap, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let idx = |o: usize, i: usize| i * outer + o;
    let mut out = ComplexMatrix::zeros(n, n);
    for o1 in 0..outer {
        for i1 in 0..inner {
            for o2 in 0..outer {
                for i2 in 0..inner {
                    out[(idx(o1, i1), idx(o2, i2))] = a[(o1 * inner + i1, o2 * inner + i2)];
                }
            }
        }
    }
    Ok(out)
}

fn ensure_square(a: &ComplexMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(())
}

/// An `n`-tuple of commuting-or-not square matrices of a common size.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple {
    mats: Vec<ComplexMatrix>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<ComplexMatrix>) -> Result<Self> {
        let first = mats
            .first()
            .ok_or_else(|| Error::Dimension("a tuple needs at least one matrix".into()))?;
        let dim = first.nrows();
        for (j, m) in mats.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::Dimension(format!(
                    "tuple entry {j} is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { mats })
    }

    /// A tuple of `1×1` matrices, i.e. a point of `ℂⁿ`.
    pub fn scalar(values: &[C64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| ComplexMatrix::from_element(1, 1, v))
                .collect(),
        )
    }

    pub fn zeros(n: usize, dim: usize) -> Self {
        Self {
            mats: vec![ComplexMatrix::zeros(dim, dim); n.max(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.mats[0].nrows()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    pub fn get(&self, j: usize) -> &ComplexMatrix {
        &self.mats[j]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ComplexMatrix> {
        self.mats.iter()
    }

    pub fn into_inner(self) -> Vec<ComplexMatrix> {
        self.mats
    }

    /// `σ_T(z) = Σ z_j T_j`.
    pub fn sigma(&self, z: &[C64]) -> Result<ComplexMatrix> {
        if z.len() != self.len() {
            return Err(Error::Arity {
                expected: self.len(),
                found: z.len(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
        for (t, &zj) in self.mats.iter().zip(z) {
            out += t * zj;
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mats: self.mats.iter().map(|m| m.adjoint()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            mats: self.mats.iter().map(|m| m.transpose()).collect(),
        }
    }

    pub fn scaled(&self, r: f64) -> Self {
        Self {
            mats: self.mats.iter().map(|m| m.scale(r)).collect(),
        }
    }

    /// `W* T_j W` for a `dim × m` matrix `W`.
    pub fn compress(&self, w: &ComplexMatrix) -> Result<Self> {
        if w.nrows() != self.dim() {
            return Err(Error::Dimension(format!(
                "compression needs {} rows, got {}",
                self.dim(),
                w.nrows()
            )));
        }
        Self::new(self.mats.iter().map(|m| w.adjoint() * m * w).collect())
    }

    /// The block row `[T₁ … Tₙ]`.
    pub fn row_matrix(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d, d * self.len());
        for (j, m) in self.mats.iter().enumerate() {
            out.view_mut((0, j * d), (d, d)).copy_from(m);
        }
        out
    }

    /// The block column `[T₁; …; Tₙ]`.
    pub fn column_matrix(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d * self.len(), d);
        for (j, m) in self.mats.iter().enumerate() {
            out.view_mut((j * d, 0), (d, d)).copy_from(m);
        }
        out
    }

    /// Largest commutator norm `max_{i<j} ‖T_iT_j − T_jT_i‖`.
    pub fn commutator_norm(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let a = &self.mats[i];
                let b = &self.mats[j];
                worst = worst.max(op_norm(&(a * b - b * a)));
            }
        }
        worst
    }

    pub fn is_diagonal(&self) -> bool {
        self.mats.iter().all(|m| {
            m.iter()
                .enumerate()
                .all(|(k, z)| k % m.nrows() == k / m.nrows() || *z == c(0.0, 0.0))
        })
    }
}

/// `Σ_j S_j ⊗ T_j`.
pub fn pair_tuples(s: &MatrixTuple, t: &MatrixTuple) -> Result<ComplexMatrix> {
    if s.len() != t.len() {
        return Err(Error::Arity {
            expected: s.len(),
            found: t.len(),
        });
    }
    let mut out = ComplexMatrix::zeros(s.dim() * t.dim(), s.dim() * t.dim());
    for (a, b) in s.iter().zip(t.iter()) {
        out += kron(a, b);
    }
    Ok(out)
}

pub fn commutes(t: &MatrixTuple, tol: f64) -> bool {
    t.commutator_norm() <= tol
}

/// Pairs of vectors `m_i ↦ n_i` defining a partial isometry, stored as the
/// columns of two `d × L` matrices.
#[derive(Debug, Clone)]
pub struct IsometryData {
    domain: ComplexMatrix,
    image: ComplexMatrix,
}

impl IsometryData {
    pub fn new(domain: ComplexMatrix, image: ComplexMatrix) -> Result<Self> {
        if domain.shape() != image.shape() {
            return Err(Error::Dimension(format!(
                "domain vectors {:?} and image vectors {:?} differ in shape",
                domain.shape(),
                image.shape()
            )));
        }
        Ok(Self { domain, image })
    }

    /// No vectors at all in ambient dimension `d`.
    pub fn empty(d: usize) -> Self {
        Self {
            domain: ComplexMatrix::zeros(d, 0),
            image: ComplexMatrix::zeros(d, 0),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.domain.nrows()
    }

    pub fn domain(&self) -> &ComplexMatrix {
        &self.domain
    }

    pub fn image(&self) -> &ComplexMatrix {
        &self.image
    }

    /// `‖M*M − N*N‖`, the obstruction to a well-defined isometry.
    pub fn gram_mismatch(&self) -> f64 {
        let gm = self.domain.adjoint() * &self.domain;
        let gn = self.image.adjoint() * &self.image;
        op_norm(&(gm - gn))
    }
}

/// Extends the isometry `m_i ↦ n_i` to a unitary on the ambient space.
///
/// The spans are identified through the shared right singular vectors of the
/// domain matrix; orthogonal complements are completed by Gram–Schmidt over
/// the standard basis in index order and matched in that order. Returns the
/// unitary and the dimension it acts on.
pub fn extend_isometry(iso: &IsometryData, tol: f64) -> Result<(ComplexMatrix, usize)> {
    let d = iso.ambient_dim();
    let scale = op_norm(&(iso.domain.adjoint() * &iso.domain)).max(1.0);
    let mismatch = iso.gram_mismatch();
    if mismatch > tol * scale {
        return Err(Error::GramMismatch(mismatch));
    }
    let (q_dom, q_img) = if iso.domain.ncols() == 0 {
        (ComplexMatrix::zeros(d, 0), ComplexMatrix::zeros(d, 0))
    } else {
        let svd = iso.domain.clone().svd(true, true);
        let u = svd.u.expect("requested u");
        let v_t = svd.v_t.expect("requested v_t");
        let sigma = &svd.singular_values;
        let smax = sigma.iter().fold(0.0_f64, |m, s| m.max(*s));
        let cutoff = 1e-8 * smax;
        let keep: Vec<usize> = (0..sigma.len()).filter(|&k| sigma[k] > cutoff).collect();
        let mut q_dom = ComplexMatrix::zeros(d, keep.len());
        let mut q_img = ComplexMatrix::zeros(d, keep.len());
        for (col, &k) in keep.iter().enumerate() {
            q_dom.set_column(col, &u.column(k));
            let v = v_t.row(k).adjoint();
            let img = &iso.image * v / c(sigma[k], 0.0);
            q_img.set_column(col, &img);
        }
        (q_dom, nearest_isometry(&q_img))
    };
    let comp_dom = complete_basis(&q_dom);
    let comp_img = complete_basis(&q_img);
    let u = &q_img * q_dom.adjoint() + &comp_img * comp_dom.adjoint();
    Ok((u, d))
}

/// Polar factor of a tall matrix: the closest matrix with orthonormal columns.
fn nearest_isometry(q: &ComplexMatrix) -> ComplexMatrix {
    if q.ncols() == 0 {
        return q.clone();
    }
    let svd = q.clone().svd(true, true);
    svd.u.expect("requested u") * svd.v_t.expect("requested v_t")
}

/// Orthonormal basis of the orthogonal complement of the (orthonormal)
/// columns of `q`, by Gram–Schmidt over `e_0, e_1, …` in order.
pub fn complete_basis(q: &ComplexMatrix) -> ComplexMatrix {
    let d = q.nrows();
    let target = d.saturating_sub(q.ncols());
    let mut basis: Vec<nalgebra::DVector<C64>> = q.column_iter().map(|c| c.into_owned()).collect();
    let mut added = Vec::with_capacity(target);
    let accept = 0.5 / (d.max(1) as f64).sqrt();
    for i in 0..d {
        if added.len() == target {
            break;
        }
        let mut v = nalgebra::DVector::<C64>::zeros(d);
        v[i] = c(1.0, 0.0);
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dotc(&v);
                v -= b * proj;
            }
        }
        let norm = v.norm();
        if norm > accept {
            v /= c(norm, 0.0);
            basis.push(v.clone());
            added.push(v);
        }
    }
    let mut out = ComplexMatrix::zeros(d, added.len());
    for (k, v) in added.iter().enumerate() {
        out.set_column(k, v);
    }
    out
}

/// `‖U*U − I‖`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    op_norm(&(u.adjoint() * u - identity(u.ncols())))
}
