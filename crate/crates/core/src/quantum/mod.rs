//! Spin-1/2 chain state vectors, coherent-state preparation, one-axis
//! twisting and kicked-rotor evolution, and half-chain entanglement entropy.
//!
//! Basis index bit `L - 1 - q` holds qubit `q`, so qubit 0 is the most
//! significant bit. Bit value 0 is spin up.

mod entropy;
mod evolve;
mod state;
mod svd;

pub use entropy::{
    entanglement_entropy, entropy_bits, reduced_density, reduced_density_complement, ReducedDensityMatrix,
};
pub use evolve::{apply_oat, apply_rotation_y, evolve_trajectory, kicked_rotor_step, Model, ScenarioConfig};
pub use state::{coherent_state, max_diff_up_to_global_phase, SphericalAngles, StateVector};
pub use svd::singular_values;

/// Largest chain length accepted by [`coherent_state`].
pub const MAX_SPINS: usize = 14;
