//! Per-L-UAV energy quota deviation queues and the transformed per-slot
//! objective.
//!
//! Each L-UAV carries a virtual queue accumulating how far its per-slot energy
//! has exceeded the quota: `Q(n+1) = max{Q(n) + E(n) - E_q, 0}`. The queue
//! value weights that L-UAV's energy inside the per-slot objective
//! `K*T(n) + sum_u Q_u(n)*E_u(n)`, so an L-UAV over its budget trades delay
//! for energy savings until the deviation drains.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QueueError {
    #[error("energy vector length {got} does not match queue count {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Cumulative per-L-UAV energy quota deviation, J.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDeviationQueue {
    values: Vec<f64>,
    slot_index: u64,
}

impl EnergyDeviationQueue {
    /// All-zero queues for `n_luavs` L-UAVs at slot 0.
    pub fn new(n_luavs: usize) -> Self {
        Self {
            values: vec![0.0; n_luavs],
            slot_index: 0,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, luav: usize) -> f64 {
        self.values[luav]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn slot_index(&self) -> u64 {
        self.slot_index
    }

    pub fn mean(&self) -> f64 {
        if self.values.is_empty() {
            0.0
        } else {
            self.values.iter().sum::<f64>() / self.values.len() as f64
        }
    }

    /// Applies one slot's consumed energies, clamping each queue at zero, and
    /// advances the slot index.
    pub fn update(&self, e_consumed: &[f64], e_quota: f64) -> Result<Self, QueueError> {
        if e_consumed.len() != self.values.len() {
            return Err(QueueError::LengthMismatch {
                expected: self.values.len(),
                got: e_consumed.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(e_consumed)
            .map(|(q, e)| (q + e - e_quota).max(0.0))
            .collect();
        Ok(Self {
            values,
            slot_index: self.slot_index + 1,
        })
    }

    #[cfg(test)]
    pub(crate) fn from_values(values: Vec<f64>) -> Self {
        Self {
            values,
            slot_index: 0,
        }
    }
}

/// Control weights of the transformed per-slot objective.
#[derive(Debug, Clone, Copy)]
pub struct LyapunovWeights {
    /// Delay weight K > 0.
    pub k_penalty: f64,
}

impl LyapunovWeights {
    pub fn new(k_penalty: f64) -> Self {
        assert!(k_penalty > 0.0, "k_penalty must be positive");
        Self { k_penalty }
    }
}

/// Evaluates `K*T(n) + sum_u Q_u(n)*E_u(n)`.
pub fn transformed_objective(
    weights: &LyapunovWeights,
    total_delay: f64,
    queue: &EnergyDeviationQueue,
    e_per_luav: &[f64],
) -> f64 {
    assert_eq!(
        queue.len(),
        e_per_luav.len(),
        "queue and energy vectors must have equal length"
    );
    let energy_term: f64 = queue
        .values()
        .iter()
        .zip(e_per_luav)
        .map(|(q, e)| q * e)
        .sum();
    weights.k_penalty * total_delay + energy_term
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn update_hand_values() {
        let q = EnergyDeviationQueue::new(1);
        let q1 = q.update(&[5.0], 4.5).unwrap();
        assert_eq!(q1.values(), &[0.5]);
        assert_eq!(q1.slot_index(), 1);

        let q2 = EnergyDeviationQueue::new(1).update(&[4.5], 4.5).unwrap();
        assert_eq!(q2.values(), &[0.0]);

        let q3 = EnergyDeviationQueue::from_values(vec![1.0])
            .update(&[2.0], 4.5)
            .unwrap();
        assert_eq!(q3.values(), &[0.0], "clamped at zero");
    }

    #[test]
    fn update_length_mismatch() {
        let q = EnergyDeviationQueue::new(2);
        assert_eq!(
            q.update(&[1.0], 4.5).unwrap_err(),
            QueueError::LengthMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn queues_nonnegative_after_any_sequence() {
        let mut q = EnergyDeviationQueue::new(3);
        let streams = [
            [9.0, 0.0, 4.5],
            [0.0, 0.0, 0.0],
            [100.0, 1.0, 4.4],
            [0.1, 8.0, 4.6],
        ];
        for e in streams {
            q = q.update(&e, 4.5).unwrap();
            assert!(q.values().iter().all(|v| *v >= 0.0), "{:?}", q.values());
        }
    }

    #[test]
    fn stability_under_slack_consumption() {
        // With E <= E_q - eps each slot, a queue drains to zero within
        // ceil(Q0 / eps) slots.
        let q0 = 10.0;
        let eps = 0.75;
        let mut q = EnergyDeviationQueue::from_values(vec![q0]);
        let bound = (q0 / eps).ceil() as usize;
        let mut drained_at = None;
        for n in 1..=bound {
            q = q.update(&[4.5 - eps], 4.5).unwrap();
            if q.value(0) == 0.0 {
                drained_at = Some(n);
                break;
            }
        }
        assert!(drained_at.is_some(), "queue never drained within {bound} slots");
    }

    #[test]
    fn objective_hand_values() {
        let w = LyapunovWeights::new(50.0);
        let q = EnergyDeviationQueue::from_values(vec![1.0, 0.0, 0.0, 0.0]);
        let obj = transformed_objective(&w, 0.4, &q, &[3.0, 2.0, 2.0, 2.0]);
        assert!((obj - 23.0).abs() < 1e-12, "{obj}");
    }

    #[test]
    fn objective_degenerates_to_delay_when_queues_zero() {
        let w = LyapunovWeights::new(50.0);
        let q = EnergyDeviationQueue::new(4);
        let obj = transformed_objective(&w, 0.4, &q, &[3.0, 2.0, 2.0, 2.0]);
        assert_eq!(obj, 50.0 * 0.4);
    }

    #[test]
    fn doubling_queues_doubles_energy_term() {
        let w = LyapunovWeights::new(50.0);
        let q = EnergyDeviationQueue::from_values(vec![1.0, 2.0]);
        let q2 = EnergyDeviationQueue::from_values(vec![2.0, 4.0]);
        let delay_term = 50.0 * 0.4;
        let e = [3.0, 1.0];
        let a = transformed_objective(&w, 0.4, &q, &e) - delay_term;
        let b = transformed_objective(&w, 0.4, &q2, &e) - delay_term;
        assert!((b - 2.0 * a).abs() < 1e-12);
    }
}
