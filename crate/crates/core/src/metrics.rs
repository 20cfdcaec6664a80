//! Per-slot metrics emitted by the horizon loop.

use serde::{Deserialize, Serialize};

/// Energy drawn by one L-UAV during one slot, split by source, J.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergySplit {
    pub compute: f64,
    pub transmit: f64,
    pub flight: f64,
}

impl EnergySplit {
    pub fn total(&self) -> f64 {
        self.compute + self.transmit + self.flight
    }
}

/// Everything the harness records about one slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotMetrics {
    pub slot: u64,
    /// Mean achieved task delay over the slot's vehicles, s (0 when empty).
    pub mean_task_delay: f64,
    /// Sum of achieved task delays, s.
    pub total_delay: f64,
    pub per_luav_energy: Vec<EnergySplit>,
    /// Queue values at the start of the slot (the weights the slot ran with).
    pub queue_values: Vec<f64>,
    /// Delay-to-energy-deviation ratio for this slot.
    pub dedr: f64,
    /// Tasks whose achieved delay exceeded their deadline.
    pub deadline_violations: usize,
    pub bcd_iterations: usize,
    /// Set when a solver failure forced the slot onto the previous trajectory.
    pub fallback: bool,
}

/// `mean_delay / (mean_queue_dev + epsilon)`; the epsilon keeps the ratio
/// finite when no energy deviation has accumulated.
pub fn compute_dedr(mean_delay: f64, mean_queue_dev: f64, epsilon: f64) -> f64 {
    assert!(epsilon > 0.0, "epsilon must be positive");
    mean_delay / (mean_queue_dev + epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedr_hand_value() {
        let d = compute_dedr(0.1, 0.5, 0.01);
        assert!((d - 0.1 / 0.51).abs() < 1e-12, "{d}");
        assert!((d - 0.196).abs() < 1e-3);
    }

    #[test]
    fn dedr_zero_deviation_guard() {
        let d = compute_dedr(0.1, 0.0, 0.01);
        assert!(d.is_finite());
        assert!((d - 10.0).abs() < 1e-12);
    }

    #[test]
    fn dedr_epsilon_linearity_at_zero_deviation() {
        let a = compute_dedr(0.1, 0.0, 0.01);
        let b = compute_dedr(0.1, 0.0, 0.02);
        assert!((a - 2.0 * b).abs() < 1e-12);
    }
}
