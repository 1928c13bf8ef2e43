//! Dense brute-force references: explicit collective operators, matrix
//! exponentials by Hermitian eigendecomposition, and entropy from an explicit
//! partial trace. Used only to check the factorized routines.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::StateVector;

/// Largest chain the dense oracle accepts.
pub const ORACLE_MAX_SPINS: usize = 6;

/// Explicit `2^L × 2^L` matrix.
pub type DenseOperator = DMatrix<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Collective {
    Sy,
    Sz,
    Sz2,
}

fn check_scale(num_spins: usize) -> Result<()> {
    if num_spins == 0 || num_spins > ORACLE_MAX_SPINS {
        return Err(Error::OracleScale { got: num_spins, max: ORACLE_MAX_SPINS });
    }
    Ok(())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli(kind: Collective) -> DenseOperator {
    match kind {
        Collective::Sy => DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        _ => DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    }
}

/// `½ Σ_i σ_i` (or its square) built from Kronecker products; qubit 0 is the
/// leftmost factor.
pub fn collective_operator(kind: Collective, num_spins: usize) -> Result<DenseOperator> {
    check_scale(num_spins)?;
    let dim = 1usize << num_spins;
    let id2 = DMatrix::<Complex64>::identity(2, 2);
    let sigma = pauli(kind);
    let mut total = DMatrix::<Complex64>::zeros(dim, dim);
    for site in 0..num_spins {
        let mut term = DMatrix::<Complex64>::identity(1, 1);
        for q in 0..num_spins {
            term = term.kronecker(if q == site { &sigma } else { &id2 });
        }
        total += term;
    }
    total *= c(0.5, 0.0);
    Ok(match kind {
        Collective::Sz2 => &total * &total,
        _ => total,
    })
}

/// `e^{-i t H}` for Hermitian `H`.
pub fn dense_evolution(op: &DenseOperator, t: f64) -> Result<DenseOperator> {
    if !op.is_square() {
        return Err(Error::OracleInput("operator is not square".into()));
    }
    let herm_err = (op - op.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if herm_err > 1e-12 {
        return Err(Error::OracleInput(format!("operator is not Hermitian (max deviation {herm_err:e})")));
    }
    let eig = op.clone().symmetric_eigen();
    let phases = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&e| Complex64::from_polar(1.0, -t * e)),
    );
    let v = &eig.eigenvectors;
    Ok(v * DMatrix::from_diagonal(&phases) * v.adjoint())
}

/// Applies a dense operator to a state.
pub fn apply(op: &DenseOperator, state: &StateVector<f64>) -> Result<StateVector<f64>> {
    if op.ncols() != state.dim() {
        return Err(Error::OracleInput("operator and state dimensions differ".into()));
    }
    let v = DVector::from_column_slice(state.amplitudes());
    let out = op * v;
    StateVector::from_amplitudes(state.num_spins(), out.iter().copied().collect())
}

/// One kicked-rotor step `e^{-i(α/L)S_z²} e^{-iβS_y}` as a dense product.
pub fn dense_kick(num_spins: usize, alpha: f64, beta: f64) -> Result<DenseOperator> {
    let rot = dense_evolution(&collective_operator(Collective::Sy, num_spins)?, beta)?;
    let kick = dense_evolution(&collective_operator(Collective::Sz2, num_spins)?, alpha / num_spins as f64)?;
    Ok(kick * rot)
}

/// `|θ,φ⟩ = e^{-iφS_z} e^{-iθS_y}|0…0⟩` straight from the operator definition.
pub fn dense_coherent_state(num_spins: usize, theta: f64, phi: f64) -> Result<StateVector<f64>> {
    let ry = dense_evolution(&collective_operator(Collective::Sy, num_spins)?, theta)?;
    let rz = dense_evolution(&collective_operator(Collective::Sz, num_spins)?, phi)?;
    apply(&(rz * ry), &StateVector::basis(num_spins, 0)?)
}

/// Half-chain entropy in bits via the full density matrix, an explicit
/// partial trace over the low-order half, and a Hermitian eigensolver.
pub fn brute_entropy(state: &StateVector<f64>) -> Result<f64> {
    let l = state.num_spins();
    check_scale(l)?;
    if !l.is_multiple_of(2) {
        return Err(Error::Bipartition(l));
    }
    let dim = state.dim();
    let psi = state.amplitudes();
    let rho = DMatrix::from_fn(dim, dim, |i, j| psi[i] * psi[j].conj());
    let half = 1usize << (l / 2);
    let mut rho_a = DMatrix::<Complex64>::zeros(half, half);
    for a in 0..half {
        for a2 in 0..half {
            let mut acc = c(0.0, 0.0);
            for b in 0..half {
                acc += rho[(a * half + b, a2 * half + b)];
            }
            rho_a[(a, a2)] = acc;
        }
    }
    let eig = rho_a.symmetric_eigen();
    Ok(eig.eigenvalues.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum::<f64>().max(0.0))
}
