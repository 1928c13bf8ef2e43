//! Husimi Q function of a chain state on a fixed spherical grid, plus the
//! peak and spread statistics that drive the sonification.

use std::io::Write;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quantum::{SphericalAngles, StateVector};
use crate::scalar::Real;

/// Regular `(θ, φ)` grid: θ spans `[0, π]` inclusive, φ spans `(-π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalGrid<T = f64> {
    theta_values: Vec<T>,
    phi_values: Vec<T>,
}

impl<T: Real> SphericalGrid<T> {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 || n_phi < 2 {
            return Err(Error::Input(format!("grid needs at least 2x2 points, got {n_theta}x{n_phi}")));
        }
        let dtheta = T::PI() / T::from_usize_lossy(n_theta - 1);
        let dphi = T::TAU() / T::from_usize_lossy(n_phi);
        let mut theta_values: Vec<T> = (0..n_theta).map(|i| T::from_usize_lossy(i) * dtheta).collect();
        theta_values[n_theta - 1] = T::PI();
        let mut phi_values: Vec<T> =
            (0..n_phi).map(|j| -T::PI() + T::from_usize_lossy(j + 1) * dphi).collect();
        phi_values[n_phi - 1] = T::PI();
        Ok(Self { theta_values, phi_values })
    }

    pub fn n_theta(&self) -> usize {
        self.theta_values.len()
    }

    pub fn n_phi(&self) -> usize {
        self.phi_values.len()
    }

    pub fn theta_values(&self) -> &[T] {
        &self.theta_values
    }

    pub fn phi_values(&self) -> &[T] {
        &self.phi_values
    }

    pub fn angles(&self, i: usize, j: usize) -> SphericalAngles<T> {
        SphericalAngles { theta: self.theta_values[i], phi: self.phi_values[j] }
    }
}

impl Default for SphericalGrid<f64> {
    fn default() -> Self {
        Self::new(65, 128).expect("default grid is valid")
    }
}

/// `Q(θ_i, φ_j) = |⟨θ_i, φ_j|ψ⟩|²` over a grid, row-major in θ.
#[derive(Debug, Clone, PartialEq)]
pub struct HusimiFrame<T = f64> {
    pub grid: SphericalGrid<T>,
    pub values: Vec<T>,
    pub step_index: usize,
}

impl<T: Real> HusimiFrame<T> {
    pub fn value(&self, i: usize, j: usize) -> T {
        self.values[i * self.grid.n_phi() + j]
    }

    pub fn max_value(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    /// Frame with every value multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self { values: self.values.iter().map(|&q| q * factor).collect(), ..self.clone() }
    }

    /// Grid points that are at least as large as their 8 neighbours (φ wraps)
    /// and no smaller than `min_fraction` of the frame maximum.
    ///
    /// The θ = 0 and θ = π rows each collapse to one physical point; they are
    /// reported once (at φ index 0) when the pole beats the whole adjacent row.
    pub fn local_maxima(&self, min_fraction: T) -> Vec<(usize, usize)> {
        let (nt, np) = (self.grid.n_theta(), self.grid.n_phi());
        let floor = self.max_value() * min_fraction;
        let mut found = Vec::new();
        for (pole, next) in [(0, 1), (nt - 1, nt - 2)] {
            let v = self.value(pole, 0);
            if v >= floor && (0..np).all(|j| v >= self.value(next, j)) {
                found.push((pole, 0));
            }
        }
        found.sort_unstable();
        found.dedup();
        for i in 1..nt - 1 {
            for j in 0..np {
                let v = self.value(i, j);
                if v < floor {
                    continue;
                }
                let mut is_max = true;
                'scan: for di in [-1isize, 0, 1] {
                    for dj in [-1isize, 0, 1] {
                        if di == 0 && dj == 0 {
                            continue;
                        }
                        let ni = (i as isize + di) as usize;
                        let nj = (j as isize + dj).rem_euclid(np as isize) as usize;
                        if self.value(ni, nj) > v {
                            is_max = false;
                            break 'scan;
                        }
                    }
                }
                if is_max {
                    found.push((i, j));
                }
            }
        }
        found.sort_unstable();
        found
    }

    /// Text export: a `# step=.. n_theta=.. n_phi=..` header, then one
    /// comma-separated row per θ value.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let np = self.grid.n_phi();
        writeln!(out, "# step={} n_theta={} n_phi={}", self.step_index, self.grid.n_theta(), np)?;
        for row in self.values.chunks(np) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// Evaluates the Husimi function of `state` on `grid`.
///
/// A coherent-state bra factorizes over qubits, so its overlap with basis
/// state `b` depends only on the Hamming weight of `b`: the amplitudes are
/// summed per weight once, and each grid point costs `O(L)`.
pub fn husimi_frame<T: Real>(
    state: &StateVector<T>,
    grid: &SphericalGrid<T>,
    step_index: usize,
) -> HusimiFrame<T> {
    let l = state.num_spins();
    let sums = state.weight_sums();
    let half = T::lit(0.5);
    let phi_phase: Vec<Complex<T>> =
        grid.phi_values().iter().map(|&phi| Complex::from_polar(T::one(), phi * half)).collect();
    let mut values = Vec::with_capacity(grid.n_theta() * grid.n_phi());
    let mut weighted = vec![Complex::new(T::zero(), T::zero()); l + 1];
    for &theta in grid.theta_values() {
        let (s, c) = (theta * half).sin_cos();
        // cos^{L-k} sin^k S_k
        for (k, w) in weighted.iter_mut().enumerate() {
            *w = sums[k].scale(c.powi((l - k) as i32) * s.powi(k as i32));
        }
        for &p in &phi_phase {
            // conj bra factor per weight k carries e^{iφ(L-2k)/2}
            let step = p.conj() * p.conj();
            let mut phase = p.powu(l as u32);
            let mut acc = Complex::new(T::zero(), T::zero());
            for w in &weighted {
                acc += *w * phase;
                phase *= step;
            }
            values.push(acc.norm_sqr());
        }
    }
    HusimiFrame { grid: grid.clone(), values, step_index }
}

/// Dominant peak and angular spread of one frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSummary<T = f64> {
    pub peak: SphericalAngles<T>,
    pub peak_value: T,
    /// `min(1, 2σ_θ/π)` with σ_θ the standard deviation of θ under `Q·sin θ`.
    pub spread: T,
}

pub fn summarize<T: Real>(frame: &HusimiFrame<T>) -> Result<FrameSummary<T>> {
    let np = frame.grid.n_phi();
    let mut best = (0usize, T::neg_infinity());
    for (idx, &v) in frame.values.iter().enumerate() {
        if v > best.1 {
            best = (idx, v);
        }
    }
    let (mut total, mut first, mut second) = (T::zero(), T::zero(), T::zero());
    for (i, row) in frame.values.chunks(np).enumerate() {
        let theta = frame.grid.theta_values()[i];
        let row_weight: T = row.iter().copied().sum::<T>() * theta.sin();
        total += row_weight;
        first += row_weight * theta;
        second += row_weight * theta * theta;
    }
    if !(total > T::zero()) || !(best.1 > T::zero()) {
        return Err(Error::DegenerateFrame);
    }
    let mean = first / total;
    let variance = (second / total - mean * mean).max(T::zero());
    let spread = (T::lit(2.0) * variance.sqrt() / T::PI()).min(T::one());
    Ok(FrameSummary { peak: frame.grid.angles(best.0 / np, best.0 % np), peak_value: best.1, spread })
}
