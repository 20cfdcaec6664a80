//! Scenario configuration: physical, radio, and compute constants plus solver
//! tolerances. Values with dB/dBm units are converted to linear form once,
//! in [`ScenarioConfig::radio_params`]; everything downstream is linear.

use crate::model::{dbm_to_watt, db_to_linear, ComputeParams, Position2D, RadioParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config key `{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
}

fn invalid(key: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key,
        reason: reason.into(),
    }
}

/// Full scenario description. `Default` carries the reference parameter set;
/// a config file only needs to name the fields it overrides.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    /// Side length of the square field, m.
    pub field_size: f64,
    /// Initial L-UAV positions; also the static service-area centers.
    pub luav_positions: Vec<Position2D>,
    /// Initial H-UAV position.
    pub huav_position: Position2D,
    /// Number of vehicles (constant within a run).
    pub n_vehicles: usize,
    /// Vehicle speed range, km/h.
    pub speed_min_kmh: f64,
    pub speed_max_kmh: f64,

    /// Task data size range, Mbit (1 Mbit = 1e6 bits).
    pub data_min_mbit: f64,
    pub data_max_mbit: f64,
    /// Computational density range, cycles/bit.
    pub density_min: f64,
    pub density_max: f64,
    /// Task deadline range, s.
    pub deadline_min_s: f64,
    pub deadline_max_s: f64,

    /// Reference channel gain at 1 m, dB.
    pub gamma0_db: f64,
    /// Noise power spectral density, dBm/Hz.
    pub n0_dbm_hz: f64,
    /// Bandwidth of each vehicle-to-L-UAV link, Hz.
    pub bw_v2lu_hz: f64,
    /// Bandwidth of each L-UAV-to-H-UAV link, Hz.
    pub bw_lu2hu_hz: f64,
    /// Vehicle transmit power, W.
    pub p_vehicle_w: f64,
    /// L-UAV transmit power, W.
    pub p_luav_w: f64,
    /// L-UAV altitude, m.
    pub h1_m: f64,
    /// H-UAV altitude, m.
    pub h2_m: f64,

    /// Per-L-UAV CPU capacity, Hz.
    pub f_luav_hz: f64,
    /// H-UAV CPU capacity, Hz.
    pub f_huav_hz: f64,
    /// CPU energy factor kappa, J·s²/cycle³.
    pub kappa: f64,
    /// L-UAV mass, kg.
    pub mass_luav_kg: f64,
    /// Slot length, s.
    pub slot_len_s: f64,
    /// Per-slot energy quota of each L-UAV, J.
    pub e_quota_j: f64,
    /// Max L-UAV speed, m/s.
    pub s_luav_max: f64,
    /// Max H-UAV speed, m/s.
    pub s_huav_max: f64,

    /// Control parameter weighting delay against queue-scaled energy.
    pub k_penalty: f64,
    /// Initial task split ratio used by the alternating solver.
    pub init_alpha: f64,
    /// Deadline violation penalty, in multiples of `k_penalty` per second.
    pub deadline_penalty_factor: f64,

    /// Relative tolerance of the per-slot block-descent loop.
    pub bcd_tol: f64,
    /// Max block-descent iterations per slot.
    pub bcd_max_iters: usize,
    /// Relative tolerance of the subproblem-1 alternation.
    pub alternation_tol: f64,
    /// Max subproblem-1 alternations.
    pub alternation_max_iters: usize,
    /// Relative tolerance of each SCA loop (true objective improvement).
    pub sca_tol: f64,
    /// Max SCA iterations per trajectory subproblem.
    pub sca_max_iters: usize,
    /// Interior-point duality-gap tolerance (scaled by 1+|objective|).
    pub solver_tol: f64,
    /// Trust-region radius cap for trajectory linearization, m.
    pub trust_region_m: f64,

    /// Small constant added to the queue-deviation denominator of the
    /// delay-to-energy-deviation ratio, J.
    pub dedr_epsilon_j: f64,
    /// Stratospheric relay altitude used by the hard-energy-cap baseline, m.
    pub hap_altitude_m: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            field_size: 1000.0,
            luav_positions: vec![
                Position2D::new(250.0, 250.0),
                Position2D::new(750.0, 250.0),
                Position2D::new(750.0, 750.0),
                Position2D::new(250.0, 750.0),
            ],
            huav_position: Position2D::new(500.0, 500.0),
            n_vehicles: 20,
            speed_min_kmh: 30.0,
            speed_max_kmh: 80.0,
            data_min_mbit: 1.0,
            data_max_mbit: 10.0,
            density_min: 10.0,
            density_max: 100.0,
            deadline_min_s: 0.05,
            deadline_max_s: 0.2,
            gamma0_db: -50.0,
            n0_dbm_hz: -174.0,
            bw_v2lu_hz: 2e6,
            bw_lu2hu_hz: 10e6,
            p_vehicle_w: 0.5,
            p_luav_w: 1.0,
            h1_m: 100.0,
            h2_m: 150.0,
            f_luav_hz: 10e9,
            f_huav_hz: 50e9,
            kappa: 1e-27,
            mass_luav_kg: 4.0,
            slot_len_s: 0.2,
            e_quota_j: 4.5,
            s_luav_max: 15.0,
            s_huav_max: 15.0,
            k_penalty: 50.0,
            init_alpha: 0.5,
            deadline_penalty_factor: 1e3,
            bcd_tol: 1e-3,
            bcd_max_iters: 10,
            alternation_tol: 1e-4,
            alternation_max_iters: 20,
            sca_tol: 1e-4,
            sca_max_iters: 15,
            solver_tol: 1e-8,
            trust_region_m: 50.0,
            dedr_epsilon_j: 0.01,
            hap_altitude_m: 20_000.0,
        }
    }
}

impl ScenarioConfig {
    pub fn n_luavs(&self) -> usize {
        self.luav_positions.len()
    }

    /// Radio constants in linear units.
    pub fn radio_params(&self) -> RadioParams {
        RadioParams {
            ref_gain: db_to_linear(self.gamma0_db),
            noise_psd: dbm_to_watt(self.n0_dbm_hz),
            bw_v2lu: self.bw_v2lu_hz,
            bw_lu2hu: self.bw_lu2hu_hz,
            tx_power_vehicle: self.p_vehicle_w,
            tx_power_luav: self.p_luav_w,
            alt_luav: self.h1_m,
            alt_huav: self.h2_m,
        }
    }

    pub fn compute_params(&self) -> ComputeParams {
        ComputeParams {
            luav_cpu_cap: self.f_luav_hz,
            huav_cpu_cap: self.f_huav_hz,
            cpu_energy_factor: self.kappa,
            luav_mass: self.mass_luav_kg,
            slot_len: self.slot_len_s,
            energy_quota: self.e_quota_j,
            max_speed_luav: self.s_luav_max,
            max_speed_huav: self.s_huav_max,
        }
    }

    /// Deadline-violation weight in objective units per second of violation.
    pub fn deadline_penalty_weight(&self) -> f64 {
        self.deadline_penalty_factor * self.k_penalty
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive: [(&'static str, f64); 16] = [
            ("field_size", self.field_size),
            ("bw_v2lu_hz", self.bw_v2lu_hz),
            ("bw_lu2hu_hz", self.bw_lu2hu_hz),
            ("p_vehicle_w", self.p_vehicle_w),
            ("p_luav_w", self.p_luav_w),
            ("h1_m", self.h1_m),
            ("f_luav_hz", self.f_luav_hz),
            ("f_huav_hz", self.f_huav_hz),
            ("kappa", self.kappa),
            ("mass_luav_kg", self.mass_luav_kg),
            ("slot_len_s", self.slot_len_s),
            ("e_quota_j", self.e_quota_j),
            ("s_luav_max", self.s_luav_max),
            ("s_huav_max", self.s_huav_max),
            ("k_penalty", self.k_penalty),
            ("dedr_epsilon_j", self.dedr_epsilon_j),
        ];
        for (key, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(invalid(key, format!("must be strictly positive, got {value}")));
            }
        }
        if self.h2_m <= self.h1_m {
            return Err(invalid("h2_m", "H-UAV altitude must exceed L-UAV altitude"));
        }
        if self.luav_positions.is_empty() {
            return Err(invalid("luav_positions", "need at least one L-UAV"));
        }
        for (i, p) in self.luav_positions.iter().enumerate() {
            if !p.is_finite()
                || p.x < 0.0
                || p.y < 0.0
                || p.x > self.field_size
                || p.y > self.field_size
            {
                return Err(invalid(
                    "luav_positions",
                    format!("position {i} ({}, {}) outside the field", p.x, p.y),
                ));
            }
        }
        if !self.huav_position.is_finite() {
            return Err(invalid("huav_position", "must be finite"));
        }
        let ranges = [
            ("speed_min_kmh/speed_max_kmh", self.speed_min_kmh, self.speed_max_kmh),
            ("data_min_mbit/data_max_mbit", self.data_min_mbit, self.data_max_mbit),
            ("density_min/density_max", self.density_min, self.density_max),
            ("deadline_min_s/deadline_max_s", self.deadline_min_s, self.deadline_max_s),
        ];
        for (key, lo, hi) in ranges {
            if !(lo > 0.0) || !(hi >= lo) {
                return Err(invalid(key, format!("invalid range [{lo}, {hi}]")));
            }
        }
        if !(0.0..=1.0).contains(&self.init_alpha) {
            return Err(invalid("init_alpha", "must lie in [0, 1]"));
        }
        if self.hap_altitude_m <= self.h1_m {
            return Err(invalid("hap_altitude_m", "must exceed the L-UAV altitude"));
        }
        if self.bcd_max_iters == 0 || self.alternation_max_iters == 0 || self.sca_max_iters == 0 {
            return Err(invalid("bcd_max_iters", "iteration caps must be >= 1"));
        }
        Ok(())
    }
}
