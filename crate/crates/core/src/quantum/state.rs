use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{wrap_angle, Real};

use super::MAX_SPINS;

/// Bloch-sphere direction: polar `theta` in `[0, π]`, azimuth `phi` in `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalAngles<T = f64> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> SphericalAngles<T> {
    /// Validates `theta` and wraps `phi` into `(-π, π]`.
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !(theta >= T::zero() && theta <= T::PI()) || !phi.is_finite() {
            return Err(Error::Input(format!(
                "polar angle {theta} outside [0, π] or non-finite azimuth {phi}"
            )));
        }
        Ok(Self { theta, phi: wrap_angle(phi) })
    }

    /// Single-spin amplitudes `(e^{-iφ/2} cos(θ/2), e^{iφ/2} sin(θ/2))`.
    pub fn spinor(&self) -> [Complex<T>; 2] {
        let half = T::lit(0.5);
        let (s, c) = (self.theta * half).sin_cos();
        let rot = Complex::from_polar(T::one(), self.phi * half);
        [rot.conj().scale(c), rot.scale(s)]
    }

    /// Angle between two directions on the sphere.
    pub fn separation(&self, other: &Self) -> T {
        let dot = self.theta.cos() * other.theta.cos()
            + self.theta.sin() * other.theta.sin() * (self.phi - other.phi).cos();
        dot.max(-T::one()).min(T::one()).acos()
    }
}

/// Pure state of `num_spins` qubits as `2^L` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T = f64> {
    amplitudes: Vec<Complex<T>>,
    num_spins: usize,
}

impl<T: Real> StateVector<T> {
    /// Wraps explicit amplitudes, rescaling them to unit norm.
    pub fn from_amplitudes(num_spins: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if num_spins == 0 || num_spins > MAX_SPINS {
            return Err(Error::SizeLimit(num_spins));
        }
        if amplitudes.len() != 1 << num_spins {
            return Err(Error::Input(format!(
                "expected {} amplitudes for {num_spins} spins, got {}",
                1usize << num_spins,
                amplitudes.len()
            )));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::Input("state has zero or non-finite norm".into()));
        }
        let inv = norm.recip();
        Ok(Self { amplitudes: amplitudes.into_iter().map(|a| a.scale(inv)).collect(), num_spins })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_spins: usize, index: usize) -> Result<Self> {
        if num_spins == 0 || num_spins > MAX_SPINS {
            return Err(Error::SizeLimit(num_spins));
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << num_spins];
        let slot = amplitudes
            .get_mut(index)
            .ok_or_else(|| Error::Input(format!("basis index {index} out of range")))?;
        *slot = Complex::new(T::one(), T::zero());
        Ok(Self { amplitudes, num_spins })
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Multiplies every amplitude by `e^{iχ}`.
    pub fn with_global_phase(mut self, chi: T) -> Self {
        let p = Complex::from_polar(T::one(), chi);
        self.amplitudes.iter_mut().for_each(|a| *a *= p);
        self
    }

    /// Sums of amplitudes grouped by Hamming weight of the basis index.
    pub(crate) fn weight_sums(&self) -> Vec<Complex<T>> {
        let mut sums = vec![Complex::new(T::zero(), T::zero()); self.num_spins + 1];
        for (b, a) in self.amplitudes.iter().enumerate() {
            sums[b.count_ones() as usize] += *a;
        }
        sums
    }
}

/// Product state with every spin along `angles`.
pub fn coherent_state<T: Real>(num_spins: usize, angles: SphericalAngles<T>) -> Result<StateVector<T>> {
    if num_spins == 0 || num_spins > MAX_SPINS {
        return Err(Error::SizeLimit(num_spins));
    }
    let [up, down] = angles.spinor();
    // amplitude depends only on how many spins are down
    let mut by_weight = Vec::with_capacity(num_spins + 1);
    for k in 0..=num_spins {
        by_weight.push(up.powu((num_spins - k) as u32) * down.powu(k as u32));
    }
    let amplitudes = (0..1usize << num_spins).map(|b| by_weight[b.count_ones() as usize]).collect();
    Ok(StateVector { amplitudes, num_spins })
}

/// Largest amplitude difference after aligning `b`'s global phase to `a` on
/// the largest-magnitude amplitude of `a`.
pub fn max_diff_up_to_global_phase<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> T {
    assert_eq!(a.dim(), b.dim(), "state dimensions differ");
    let pivot = a
        .amplitudes
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm_sqr().partial_cmp(&y.1.norm_sqr()).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    let (pa, pb) = (a.amplitudes[pivot], b.amplitudes[pivot]);
    let phase = if pb.norm() > T::zero() {
        let r = pa * pb.conj();
        r.unscale(r.norm())
    } else {
        Complex::new(T::one(), T::zero())
    };
    a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| (*x - *y * phase).norm()).fold(T::zero(), T::max)
}
