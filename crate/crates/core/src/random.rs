//! Seeded random generators for matrices, tuples and points.
//!
//! Every draw in a sampling loop gets its own generator derived from
//! `(master seed, draw index)`, so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::opspace::Base;
use crate::tensor_core::{c, ComplexMatrix, C64};

pub type DrawRng = ChaCha8Rng;

/// Generator for draw `index` under `seed`.
pub fn rng_for(seed: u64, index: u64) -> DrawRng {
    // splitmix64 finaliser over the pair
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn unit_phase<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU)
}

/// Entries i.i.d. standard complex Gaussian.
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    random_isometry(d, d, rng)
}

/// `rows × cols` matrix with orthonormal columns, `rows ≥ cols`.
pub fn random_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = random_matrix(rows, cols, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..cols {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            let col = q.column(k) * phase;
            q.set_column(k, &col);
        }
    }
    q
}

/// A contraction `U·diag(s)·V*` with singular values drawn from `[0, 1]`,
/// half of the time with all singular values equal to one.
pub fn random_contraction<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let u = random_unitary(d, rng);
    if rng.random::<bool>() {
        return u;
    }
    let v = random_unitary(d, rng);
    let s = ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            c(rng.random::<f64>().sqrt(), 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    u * s * v.adjoint()
}

/// Uniform-ish point on the unit sphere of `base` in `ℂⁿ`.
pub fn point_on_sphere<R: Rng + ?Sized>(base: Base, n: usize, rng: &mut R) -> Vec<C64> {
    match base {
        Base::Linf => (0..n).map(|_| unit_phase(rng)).collect(),
        Base::L2 => {
            let z: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
            let norm = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
            z.into_iter().map(|w| w / norm).collect()
        }
        Base::L1 => {
            // Dirichlet(1,…,1) moduli with uniform phases
            let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            let total: f64 = e.iter().sum();
            e.into_iter().map(|t| unit_phase(rng) * (t / total)).collect()
        }
    }
}

/// Point of the open unit ball of `base` with radius at most `max_radius`.
pub fn point_in_ball<R: Rng + ?Sized>(base: Base, n: usize, max_radius: f64, rng: &mut R) -> Vec<C64> {
    let r = max_radius * rng.random::<f64>().powf(1.0 / (2.0 * n as f64));
    point_on_sphere(base, n, rng).into_iter().map(|w| w * r).collect()
}

/// Random complex `n`-vector (as used for polynomial coefficients).
pub fn gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Evaluates `count` independent draws in parallel and returns the best
/// `(value, draw index, payload)`; ties go to the lowest index, so the result
/// is independent of thread scheduling.
pub(crate) fn par_best<T, F>(count: usize, seed: u64, stream: u64, f: F) -> Option<(f64, usize, T)>
where
    T: Send,
    F: Fn(&mut DrawRng) -> Option<(f64, T)> + Sync,
{
    use rayon::prelude::*;
    (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = rng_for(seed, stream.wrapping_add(i as u64));
            f(&mut rng).map(|(v, t)| (v, i, t))
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
}
