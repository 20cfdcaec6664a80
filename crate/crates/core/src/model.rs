//! Physical quantities and closed-form link/compute formulas.
//!
//! Everything here is a pure function: channel gains of the two line-of-sight
//! links, OFDMA link rates, the four task delay components, L-UAV compute and
//! transmit energies, and flight energy. All radio math is carried out in
//! linear units; dB/dBm values are converted once at config load.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Horizontal position in meters. Vehicles sit at altitude 0, L-UAVs at
/// `alt_luav`, the H-UAV at `alt_huav`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position2D {
    pub x: f64,
    pub y: f64,
}

impl Position2D {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Squared horizontal distance to `other`.
    pub fn dist_sq(&self, other: &Position2D) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Position2D) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Radio constants, all in linear units.
#[derive(Debug, Clone, Copy)]
pub struct RadioParams {
    /// Reference channel gain at 1 m (linear, converted from dB).
    pub ref_gain: f64,
    /// Noise power spectral density in W/Hz (converted from dBm/Hz).
    pub noise_psd: f64,
    /// Bandwidth of each vehicle-to-L-UAV link, Hz.
    pub bw_v2lu: f64,
    /// Bandwidth of each L-UAV-to-H-UAV link, Hz.
    pub bw_lu2hu: f64,
    /// Vehicle transmit power, W.
    pub tx_power_vehicle: f64,
    /// L-UAV transmit power, W.
    pub tx_power_luav: f64,
    /// L-UAV flight altitude, m.
    pub alt_luav: f64,
    /// H-UAV flight altitude, m.
    pub alt_huav: f64,
}

/// Compute/energy constants of the L-UAV fleet and the H-UAV server.
#[derive(Debug, Clone, Copy)]
pub struct ComputeParams {
    /// Per-L-UAV CPU capacity, Hz.
    pub luav_cpu_cap: f64,
    /// H-UAV (backup server) CPU capacity, Hz.
    pub huav_cpu_cap: f64,
    /// CPU energy factor kappa, J·s²/cycle³.
    pub cpu_energy_factor: f64,
    /// L-UAV mass, kg.
    pub luav_mass: f64,
    /// Slot length tau, s.
    pub slot_len: f64,
    /// Per-slot reference energy quota of each L-UAV, J.
    pub energy_quota: f64,
    /// L-UAV maximum speed, m/s.
    pub max_speed_luav: f64,
    /// H-UAV maximum speed, m/s.
    pub max_speed_huav: f64,
}

/// One computation task emitted by a vehicle for one slot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Task {
    /// Task data size, bits.
    pub data_bits: f64,
    /// Computational density, CPU cycles per bit.
    pub cycles_per_bit: f64,
    /// Delay requirement, s.
    pub deadline: f64,
    pub vehicle_id: usize,
}

impl Task {
    /// Total CPU cycles needed to process the whole task.
    pub fn total_cycles(&self) -> f64 {
        self.data_bits * self.cycles_per_bit
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("zero frequency with nonzero workload share ({context})")]
    ZeroFrequency { context: &'static str },
}

/// Converts a dB value to its linear ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear ratio to dB.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Converts dBm (per Hz) to W (per Hz).
pub fn dbm_to_watt(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// LoS channel gain of the vehicle-to-L-UAV uplink:
/// `ref_gain / (alt_luav^2 + |pos_u - pos_v|^2)`.
pub fn channel_gain_v2lu(pos_v: &Position2D, pos_u: &Position2D, radio: &RadioParams) -> f64 {
    radio.ref_gain / (radio.alt_luav * radio.alt_luav + pos_u.dist_sq(pos_v))
}

/// LoS channel gain of the L-UAV-to-H-UAV relay link, with the altitude gap
/// `alt_huav - alt_luav` as the vertical term.
pub fn channel_gain_lu2hu(pos_u: &Position2D, pos_h: &Position2D, radio: &RadioParams) -> f64 {
    let gap = radio.alt_huav - radio.alt_luav;
    radio.ref_gain / (gap * gap + pos_u.dist_sq(pos_h))
}

/// OFDMA link rate `B * log2(1 + P*h / (N0*B))` in bits/s.
///
/// Uses `ln_1p` so the rate stays positive and accurate when the SNR is far
/// below one.
pub fn link_rate(bandwidth: f64, tx_power: f64, gain: f64, noise_psd: f64) -> f64 {
    let snr = tx_power * gain / (noise_psd * bandwidth);
    bandwidth * snr.ln_1p() / std::f64::consts::LN_2
}

/// The four delay components of one task, in seconds:
/// upload, L-UAV compute, relay, H-UAV compute.
///
/// Components whose workload share is zero are zero even when the matching
/// CPU allocation is zero, so both split-ratio endpoints stay evaluable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayComponents {
    pub t_tr_v2lu: f64,
    pub t_comp_lu: f64,
    pub t_tr_lu2hu: f64,
    pub t_comp_hu: f64,
}

impl DelayComponents {
    pub fn total(&self) -> f64 {
        self.t_tr_v2lu + self.t_comp_lu + self.t_tr_lu2hu + self.t_comp_hu
    }
}

/// Splits a task's delay into its four components for split ratio `alpha`
/// (fraction computed on the L-UAV), CPU allocations `f_lu`/`f_hu`, and link
/// rates `r_v2lu`/`r_lu2hu`.
pub fn task_delay_components(
    task: &Task,
    alpha: f64,
    f_lu: f64,
    f_hu: f64,
    r_v2lu: f64,
    r_lu2hu: f64,
) -> Result<DelayComponents, ModelError> {
    let cycles = task.total_cycles();
    let local_cycles = cycles * alpha;
    let remote_bits = task.data_bits * (1.0 - alpha);
    let remote_cycles = cycles * (1.0 - alpha);

    let t_comp_lu = if local_cycles == 0.0 {
        0.0
    } else if f_lu <= 0.0 {
        return Err(ModelError::ZeroFrequency {
            context: "local compute with alpha > 0",
        });
    } else {
        local_cycles / f_lu
    };
    let t_comp_hu = if remote_cycles == 0.0 {
        0.0
    } else if f_hu <= 0.0 {
        return Err(ModelError::ZeroFrequency {
            context: "backup compute with alpha < 1",
        });
    } else {
        remote_cycles / f_hu
    };
    let t_tr_lu2hu = if remote_bits == 0.0 {
        0.0
    } else {
        remote_bits / r_lu2hu
    };

    Ok(DelayComponents {
        t_tr_v2lu: task.data_bits / r_v2lu,
        t_comp_lu,
        t_tr_lu2hu,
        t_comp_hu,
    })
}

/// L-UAV energy spent on one task: `(compute, transmit)` in J.
///
/// Compute energy is `kappa * D*C*alpha * f_lu^2`; transmit energy is the
/// L-UAV transmit power times the relay time.
pub fn luav_energy_components(
    task: &Task,
    alpha: f64,
    f_lu: f64,
    t_tr_lu2hu: f64,
    compute: &ComputeParams,
    radio: &RadioParams,
) -> (f64, f64) {
    let e_comp = compute.cpu_energy_factor * task.total_cycles() * alpha * f_lu * f_lu;
    let e_tr = radio.tx_power_luav * t_tr_lu2hu;
    (e_comp, e_tr)
}

/// Flight energy for moving from `prev` to `next` within one slot:
/// `0.5 * M * tau * (|next-prev| / tau)^2`.
pub fn flight_energy(prev: &Position2D, next: &Position2D, compute: &ComputeParams) -> f64 {
    let d_sq = prev.dist_sq(next);
    0.5 * compute.luav_mass * d_sq / compute.slot_len
}
