//! Singular values by one-sided (Hestenes) Jacobi rotations.

use num_complex::Complex;

use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Singular values of a `rows × cols` row-major complex matrix, descending.
///
/// Column pairs are rotated until mutually orthogonal; the column norms are
/// then the singular values. Only the values are needed, so the right
/// singular vectors are never accumulated.
pub fn singular_values<T: Real>(matrix: &[Complex<T>], rows: usize, cols: usize) -> Vec<T> {
    assert_eq!(matrix.len(), rows * cols, "matrix shape mismatch");
    let mut columns: Vec<Vec<Complex<T>>> =
        (0..cols).map(|j| (0..rows).map(|i| matrix[i * cols + j]).collect()).collect();
    let mut norms: Vec<T> = columns.iter().map(|c| sq_norm(c)).collect();
    let tol = T::epsilon() * T::from_usize_lossy(rows.max(1));

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (alpha, beta) = (norms[p], norms[q]);
                if alpha == T::zero() || beta == T::zero() {
                    continue;
                }
                let gamma: Complex<T> = columns[p].iter().zip(&columns[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // reduce to a real rotation between a_p and e^{-iχ} a_q
                let phase = gamma.unscale(g).conj();
                let zeta = (beta - alpha) / (T::lit(2.0) * g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = (T::one() + t * t).sqrt().recip();
                let s = c * t;
                let (left, right) = columns.split_at_mut(q);
                for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let yq = *y * phase;
                    let xp = *x;
                    *x = xp.scale(c) - yq.scale(s);
                    *y = xp.scale(s) + yq.scale(c);
                }
                norms[p] = alpha - t * g;
                norms[q] = beta + t * g;
            }
        }
        // refresh to shed drift from the incremental norm updates
        for (n, c) in norms.iter_mut().zip(&columns) {
            *n = sq_norm(c);
        }
        if !rotated {
            break;
        }
    }
    let mut values: Vec<T> = norms.into_iter().map(|n| n.max(T::zero()).sqrt()).collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    values
}

fn sq_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum()
}
