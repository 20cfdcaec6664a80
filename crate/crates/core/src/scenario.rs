//! Vehicle population, mobility, task generation, and vehicle-to-L-UAV
//! association.
//!
//! Vehicles are placed uniformly on the field with a constant speed drawn
//! from the configured km/h range and a uniform random heading; they reflect
//! specularly off the field boundary, which keeps the population constant.
//! Service areas are static: each vehicle is assigned to the L-UAV whose
//! initial position is nearest (for the default four-UAV layout this is
//! exactly the 500 m x 500 m quadrant containing the vehicle), ties going to
//! the lower L-UAV index. One task per vehicle is drawn fresh every slot.

use crate::config::ScenarioConfig;
use crate::model::{Position2D, Task};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const KMH_TO_MS: f64 = 1000.0 / 3600.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleState {
    pub id: usize,
    pub position: Position2D,
    /// Velocity vector, m/s. Magnitude is constant per vehicle.
    pub velocity: (f64, f64),
}

/// The deterministic problem instance handed to the per-slot scheduler.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotSnapshot {
    pub slot_index: u64,
    pub vehicles: Vec<VehicleState>,
    pub tasks: Vec<Task>,
    /// `associations[v]` is the serving L-UAV index of vehicle `v`.
    pub associations: Vec<usize>,
    /// L-UAV positions at the start of the slot.
    pub luav_positions: Vec<Position2D>,
    /// H-UAV position at the start of the slot.
    pub huav_position: Position2D,
}

impl SlotSnapshot {
    pub fn n_vehicles(&self) -> usize {
        self.vehicles.len()
    }

    pub fn n_luavs(&self) -> usize {
        self.luav_positions.len()
    }

    /// Vehicle indices served by L-UAV `u`, in vehicle order.
    pub fn vehicles_of(&self, u: usize) -> Vec<usize> {
        (0..self.vehicles.len())
            .filter(|&v| self.associations[v] == u)
            .collect()
    }

    /// Serializes to one JSON line, the unit of the replay stream.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("snapshot serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }
}

/// Mutable scenario state owned by one horizon loop.
#[derive(Debug, Clone)]
pub struct ScenarioState {
    config: ScenarioConfig,
    vehicles: Vec<VehicleState>,
    /// Static association centers (initial L-UAV positions).
    service_centers: Vec<Position2D>,
    rng: ChaCha8Rng,
    slot_index: u64,
}

impl ScenarioState {
    /// Places vehicles and draws their constant speeds/headings.
    pub fn init(config: &ScenarioConfig, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vehicles = (0..config.n_vehicles)
            .map(|id| {
                let position = Position2D::new(
                    rng.gen_range(0.0..config.field_size),
                    rng.gen_range(0.0..config.field_size),
                );
                let speed = rng.gen_range(config.speed_min_kmh..=config.speed_max_kmh) * KMH_TO_MS;
                let heading = rng.gen_range(0.0..std::f64::consts::TAU);
                VehicleState {
                    id,
                    position,
                    velocity: (speed * heading.cos(), speed * heading.sin()),
                }
            })
            .collect();
        Self {
            config: config.clone(),
            vehicles,
            service_centers: config.luav_positions.clone(),
            rng,
            slot_index: 0,
        }
    }

    pub fn vehicles(&self) -> &[VehicleState] {
        &self.vehicles
    }

    pub fn slot_index(&self) -> u64 {
        self.slot_index
    }

    /// Advances every vehicle by `dt` seconds with specular reflection at the
    /// field boundary. Speed magnitude is preserved.
    pub fn step_vehicles(&mut self, dt: f64) {
        let size = self.config.field_size;
        for v in &mut self.vehicles {
            let mut x = v.position.x + v.velocity.0 * dt;
            let mut y = v.position.y + v.velocity.1 * dt;
            let (mut vx, mut vy) = v.velocity;
            // A vehicle moves at most ~4.5 m per slot, so a single fold per
            // axis is enough; the loop guards pathological dt values.
            let mut guard = 0;
            while (x < 0.0 || x > size) && guard < 64 {
                x = if x < 0.0 { -x } else { 2.0 * size - x };
                vx = -vx;
                guard += 1;
            }
            guard = 0;
            while (y < 0.0 || y > size) && guard < 64 {
                y = if y < 0.0 { -y } else { 2.0 * size - y };
                vy = -vy;
                guard += 1;
            }
            v.position = Position2D::new(x, y);
            v.velocity = (vx, vy);
        }
    }

    /// Draws one task per vehicle for the current slot.
    pub fn spawn_tasks(&mut self) -> Vec<Task> {
        let c = &self.config;
        self.vehicles
            .iter()
            .map(|v| Task {
                data_bits: self.rng.gen_range(c.data_min_mbit..=c.data_max_mbit) * 1e6,
                cycles_per_bit: self.rng.gen_range(c.density_min..=c.density_max),
                deadline: self.rng.gen_range(c.deadline_min_s..=c.deadline_max_s),
                vehicle_id: v.id,
            })
            .collect()
    }

    /// Assigns each vehicle to the L-UAV with the nearest static service
    /// center; ties go to the lower index.
    pub fn associate(&self) -> Vec<usize> {
        self.vehicles
            .iter()
            .map(|v| nearest_center(&v.position, &self.service_centers))
            .collect()
    }

    /// Builds the snapshot for the current slot: fresh tasks, associations,
    /// and the UAV positions carried over from the previous slot's decision.
    pub fn snapshot(
        &mut self,
        luav_positions: &[Position2D],
        huav_position: Position2D,
    ) -> SlotSnapshot {
        let tasks = self.spawn_tasks();
        let associations = self.associate();
        SlotSnapshot {
            slot_index: self.slot_index,
            vehicles: self.vehicles.clone(),
            tasks,
            associations,
            luav_positions: luav_positions.to_vec(),
            huav_position,
        }
    }

    /// Moves time forward one slot: vehicles advance, slot index increments.
    pub fn advance_slot(&mut self) {
        self.step_vehicles(self.config.slot_len_s);
        self.slot_index += 1;
    }
}

fn nearest_center(p: &Position2D, centers: &[Position2D]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, c) in centers.iter().enumerate() {
        let d = p.dist_sq(c);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> ScenarioConfig {
        ScenarioConfig::default()
    }

    #[test]
    fn init_positions_match_reference_layout() {
        let c = config();
        let s = ScenarioState::init(&c, 1);
        assert_eq!(s.service_centers[0], Position2D::new(250.0, 250.0));
        assert_eq!(s.service_centers[1], Position2D::new(750.0, 250.0));
        assert_eq!(s.service_centers[2], Position2D::new(750.0, 750.0));
        assert_eq!(s.service_centers[3], Position2D::new(250.0, 750.0));
        assert_eq!(c.huav_position, Position2D::new(500.0, 500.0));
        for v in s.vehicles() {
            assert!(v.position.x >= 0.0 && v.position.x <= 1000.0);
            assert!(v.position.y >= 0.0 && v.position.y <= 1000.0);
        }
    }

    #[test]
    fn init_deterministic() {
        let c = config();
        let a = ScenarioState::init(&c, 42);
        let b = ScenarioState::init(&c, 42);
        assert_eq!(a.vehicles(), b.vehicles());
    }

    #[test]
    fn speeds_within_converted_bounds() {
        let c = config();
        let s = ScenarioState::init(&c, 9);
        for v in s.vehicles() {
            let speed = (v.velocity.0.powi(2) + v.velocity.1.powi(2)).sqrt();
            assert!(speed >= 30.0 * KMH_TO_MS - 1e-9, "{speed}");
            assert!(speed <= 80.0 * KMH_TO_MS + 1e-9, "{speed}");
        }
    }

    #[test]
    fn reflection_hand_value() {
        let c = config();
        let mut s = ScenarioState::init(&c, 1);
        s.vehicles = vec![VehicleState {
            id: 0,
            position: Position2D::new(999.0, 500.0),
            velocity: (20.0, 0.0),
        }];
        s.step_vehicles(0.2);
        let v = &s.vehicles[0];
        assert!((v.position.x - 997.0).abs() < 1e-12, "{}", v.position.x);
        assert_eq!(v.position.y, 500.0);
        assert_eq!(v.velocity.0, -20.0);
    }

    #[test]
    fn zero_dt_is_identity() {
        let c = config();
        let mut s = ScenarioState::init(&c, 5);
        let before = s.vehicles().to_vec();
        s.step_vehicles(0.0);
        assert_eq!(s.vehicles(), &before[..]);
    }

    #[test]
    fn reflection_preserves_speed() {
        let c = config();
        let mut s = ScenarioState::init(&c, 17);
        let speeds: Vec<f64> = s
            .vehicles()
            .iter()
            .map(|v| (v.velocity.0.powi(2) + v.velocity.1.powi(2)).sqrt())
            .collect();
        for _ in 0..2000 {
            s.step_vehicles(0.2);
        }
        for (v, s0) in s.vehicles().iter().zip(&speeds) {
            let speed = (v.velocity.0.powi(2) + v.velocity.1.powi(2)).sqrt();
            assert!((speed - s0).abs() < 1e-12 * s0);
            assert!(v.position.x >= 0.0 && v.position.x <= 1000.0);
            assert!(v.position.y >= 0.0 && v.position.y <= 1000.0);
        }
    }

    #[test]
    fn task_draws_within_bounds() {
        let mut c = config();
        c.n_vehicles = 100;
        let mut s = ScenarioState::init(&c, 23);
        for _ in 0..100 {
            for t in s.spawn_tasks() {
                assert!(t.data_bits >= 1e6 && t.data_bits <= 1e7);
                assert!(t.cycles_per_bit >= 10.0 && t.cycles_per_bit <= 100.0);
                assert!(t.deadline >= 0.05 && t.deadline <= 0.2);
            }
        }
    }

    #[test]
    fn task_streams_deterministic() {
        let c = config();
        let mut a = ScenarioState::init(&c, 77);
        let mut b = ScenarioState::init(&c, 77);
        for _ in 0..10 {
            assert_eq!(a.spawn_tasks(), b.spawn_tasks());
            a.advance_slot();
            b.advance_slot();
        }
    }

    #[test]
    fn association_quadrants() {
        let c = config();
        let mut s = ScenarioState::init(&c, 1);
        s.vehicles = vec![
            VehicleState {
                id: 0,
                position: Position2D::new(100.0, 100.0),
                velocity: (0.0, 0.0),
            },
            VehicleState {
                id: 1,
                position: Position2D::new(750.1, 250.0),
                velocity: (0.0, 0.0),
            },
            VehicleState {
                id: 2,
                position: Position2D::new(500.0, 100.0),
                velocity: (0.0, 0.0),
            },
        ];
        let assoc = s.associate();
        assert_eq!(assoc, vec![0, 1, 0], "boundary x=500 ties to lower index");
    }

    #[test]
    fn association_partitions_all_vehicles() {
        let mut c = config();
        c.n_vehicles = 200;
        let mut s = ScenarioState::init(&c, 3);
        for _ in 0..50 {
            let assoc = s.associate();
            assert_eq!(assoc.len(), 200);
            let counts = assoc.iter().fold(vec![0usize; 4], |mut acc, &u| {
                acc[u] += 1;
                acc
            });
            assert_eq!(counts.iter().sum::<usize>(), 200);
            s.advance_slot();
        }
    }

    #[test]
    fn snapshot_json_roundtrip() {
        let c = config();
        let mut s = ScenarioState::init(&c, 13);
        let snap = s.snapshot(&c.luav_positions, c.huav_position);
        let line = snap.to_json_line();
        assert!(!line.contains('\n'));
        let back = SlotSnapshot::from_json_line(&line).unwrap();
        assert_eq!(snap, back);
    }
}
