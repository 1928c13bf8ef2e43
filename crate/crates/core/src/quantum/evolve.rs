use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::state::{coherent_state, SphericalAngles, StateVector};
use super::MAX_SPINS;

/// Dynamics driving a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// `H = S_z²`, sampled every `dt`.
    Oat,
    /// Stroboscopic map `e^{-i(α/L)S_z²} e^{-iβS_y}` per kick.
    KickedRotor,
}

/// Everything needed to reproduce one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig<T = f64> {
    pub model: Model,
    pub num_spins: usize,
    pub initial: SphericalAngles<T>,
    pub alpha: T,
    pub beta: T,
    pub num_steps: usize,
    pub dt: T,
}

impl<T: Real> ScenarioConfig<T> {
    /// Checks the scenario invariants, including `num_steps >= 1`.
    pub fn validate(&self) -> Result<()> {
        self.validate_dynamics()?;
        if self.num_steps == 0 {
            return Err(Error::Input("num_steps must be at least 1".into()));
        }
        Ok(())
    }

    fn validate_dynamics(&self) -> Result<()> {
        let l = self.num_spins;
        if !(2..=MAX_SPINS).contains(&l) {
            return Err(Error::SizeLimit(l));
        }
        if !l.is_multiple_of(2) {
            return Err(Error::Bipartition(l));
        }
        match self.model {
            Model::Oat if !(self.dt > T::zero()) => {
                Err(Error::Input(format!("dt must be positive, got {}", self.dt)))
            }
            Model::KickedRotor if !(self.alpha >= T::zero()) || !self.beta.is_finite() => {
                Err(Error::Input(format!("alpha must be non-negative, got {}", self.alpha)))
            }
            _ => Ok(()),
        }
    }

    /// Evolution time (OAT) or kick count (kicked rotor) of step `k`.
    pub fn step_coordinate(&self, k: usize) -> T {
        match self.model {
            Model::Oat => T::from_usize_lossy(k) * self.dt,
            Model::KickedRotor => T::from_usize_lossy(k),
        }
    }
}

/// Phase factors `e^{-i t m²}` indexed by Hamming weight, `m = (L - 2k)/2`.
fn twist_phases<T: Real>(num_spins: usize, t: T) -> Vec<Complex<T>> {
    let l = T::from_usize_lossy(num_spins);
    (0..=num_spins)
        .map(|k| {
            let m = (l - T::lit(2.0) * T::from_usize_lossy(k)) * T::lit(0.5);
            Complex::from_polar(T::one(), -t * m * m)
        })
        .collect()
}

impl<T: Real> StateVector<T> {
    /// In-place `e^{-it S_z²}`.
    pub fn twist(&mut self, t: T) {
        let phases = twist_phases(self.num_spins(), t);
        for (b, a) in self.amplitudes_mut().iter_mut().enumerate() {
            *a *= phases[b.count_ones() as usize];
        }
    }

    /// In-place `e^{-iβ S_y}`, applied as one 2×2 rotation per qubit.
    pub fn rotate_y(&mut self, beta: T) {
        let (s, c) = (beta * T::lit(0.5)).sin_cos();
        let n = self.num_spins();
        let amps = self.amplitudes_mut();
        for bit in 0..n {
            let stride = 1usize << bit;
            for block in amps.chunks_exact_mut(2 * stride) {
                let (lo, hi) = block.split_at_mut(stride);
                for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a0, *a1);
                    *a0 = x.scale(c) - y.scale(s);
                    *a1 = x.scale(s) + y.scale(c);
                }
            }
        }
    }

    /// In-place kicked-rotor step: rotation, then kick of strength `alpha / L`.
    pub fn kick(&mut self, alpha: T, beta: T) {
        self.rotate_y(beta);
        let per_spin = alpha / T::from_usize_lossy(self.num_spins());
        self.twist(per_spin);
    }
}

pub fn apply_oat<T: Real>(state: &StateVector<T>, t: T) -> StateVector<T> {
    let mut out = state.clone();
    out.twist(t);
    out
}

pub fn apply_rotation_y<T: Real>(state: &StateVector<T>, beta: T) -> StateVector<T> {
    let mut out = state.clone();
    out.rotate_y(beta);
    out
}

pub fn kicked_rotor_step<T: Real>(state: &StateVector<T>, alpha: T, beta: T) -> StateVector<T> {
    let mut out = state.clone();
    out.kick(alpha, beta);
    out
}

/// Initial coherent state followed by one state per step (`num_steps + 1` total).
///
/// OAT states are evaluated directly at `t_k = k·dt` from the initial state, so
/// no phase error accumulates along the trajectory. `num_steps == 0` is allowed
/// here and yields only the initial state.
pub fn evolve_trajectory<T: Real>(config: &ScenarioConfig<T>) -> Result<Vec<StateVector<T>>> {
    config.validate_dynamics()?;
    let initial = coherent_state(config.num_spins, config.initial)?;
    let states = match config.model {
        Model::Oat => (0..=config.num_steps)
            .into_par_iter()
            .map(|k| apply_oat(&initial, config.step_coordinate(k)))
            .collect(),
        Model::KickedRotor => {
            let mut states = Vec::with_capacity(config.num_steps + 1);
            let mut current = initial;
            for _ in 0..config.num_steps {
                let next = kicked_rotor_step(&current, config.alpha, config.beta);
                states.push(std::mem::replace(&mut current, next));
            }
            states.push(current);
            states
        }
    };
    Ok(states)
}
