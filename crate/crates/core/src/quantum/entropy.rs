use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::state::StateVector;
use super::svd::singular_values;

/// Reduced state of one half of the chain.
#[derive(Debug, Clone)]
pub struct ReducedDensityMatrix<T = f64> {
    dim: usize,
    entries: Vec<Complex<T>>,
    eigenvalues: Vec<T>,
}

impl<T: Real> ReducedDensityMatrix<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Eigenvalues in descending order, taken as squared singular values of
    /// the reshaped amplitude matrix.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Von Neumann entropy in bits.
    pub fn entropy_bits(&self) -> T {
        entropy_bits(&self.eigenvalues)
    }
}

/// `-Σ λ log₂ λ`, treating `0 log 0` (and round-off negatives) as zero.
pub fn entropy_bits<T: Real>(eigenvalues: &[T]) -> T {
    let s: T = eigenvalues.iter().filter(|&&l| l > T::zero()).map(|&l| -l * l.log2()).sum();
    s.max(T::zero())
}

/// Amplitudes as a `2^(L/2) × 2^(L/2)` matrix, rows indexing the first half.
fn half_split<T: Real>(state: &StateVector<T>) -> Result<usize> {
    let l = state.num_spins();
    if !l.is_multiple_of(2) {
        return Err(Error::Bipartition(l));
    }
    Ok(1usize << (l / 2))
}

/// `ρ_A = Tr_B |ψ⟩⟨ψ|` for A = the first `L/2` qubits (high-order bits).
pub fn reduced_density<T: Real>(state: &StateVector<T>) -> Result<ReducedDensityMatrix<T>> {
    let d = half_split(state)?;
    let m = state.amplitudes();
    let mut entries = vec![Complex::new(T::zero(), T::zero()); d * d];
    for i in 0..d {
        for j in i..d {
            let v: Complex<T> = (0..d).map(|k| m[i * d + k] * m[j * d + k].conj()).sum();
            entries[i * d + j] = v;
            entries[j * d + i] = v.conj();
        }
    }
    let eigenvalues = singular_values(m, d, d).into_iter().map(|s| s * s).collect();
    Ok(ReducedDensityMatrix { dim: d, entries, eigenvalues })
}

/// `ρ_B = Tr_A |ψ⟩⟨ψ|`, the complementary half. Its spectrum is computed from
/// the transposed amplitude matrix, independently of [`reduced_density`].
pub fn reduced_density_complement<T: Real>(state: &StateVector<T>) -> Result<ReducedDensityMatrix<T>> {
    let d = half_split(state)?;
    let m = state.amplitudes();
    let transposed: Vec<Complex<T>> = (0..d).flat_map(|j| (0..d).map(move |i| m[i * d + j])).collect();
    let mut entries = vec![Complex::new(T::zero(), T::zero()); d * d];
    for i in 0..d {
        for j in i..d {
            let v: Complex<T> = (0..d).map(|k| transposed[i * d + k] * transposed[j * d + k].conj()).sum();
            entries[i * d + j] = v;
            entries[j * d + i] = v.conj();
        }
    }
    let eigenvalues = singular_values(&transposed, d, d).into_iter().map(|s| s * s).collect();
    Ok(ReducedDensityMatrix { dim: d, entries, eigenvalues })
}

/// Half-chain von Neumann entropy in bits, in `[0, L/2]`.
pub fn entanglement_entropy<T: Real>(state: &StateVector<T>) -> Result<T> {
    let d = half_split(state)?;
    let sv = singular_values(state.amplitudes(), d, d);
    let lambdas: Vec<T> = sv.into_iter().map(|s| s * s).collect();
    let bound = T::from_usize_lossy(state.num_spins() / 2);
    Ok(entropy_bits(&lambdas).min(bound))
}
