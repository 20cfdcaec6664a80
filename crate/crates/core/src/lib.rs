//! Discrete-time simulator and online optimization engine for a multi-tier
//! UAV edge-computing network.
//!
//! Vehicles on a square field generate one computation task per time slot.
//! Each vehicle uploads its task to the low-tier UAV (L-UAV) serving its
//! quadrant; the L-UAV computes a fraction of the task locally and relays the
//! remainder to a high-tier UAV (H-UAV) acting as a mobile backup server.
//! The per-slot controller picks task split ratios, CPU allocations, and next
//! positions for both UAV tiers so that total task delay is minimized while
//! the long-term average energy drawn by each L-UAV stays under a per-slot
//! quota. The long-term constraint is enforced through virtual energy-deviation
//! queues (drift-plus-penalty); the per-slot problem is solved by block
//! coordinate descent over three subproblems:
//!
//! 1. task split ratios + CPU allocation (alternating exact minimization),
//! 2. L-UAV positions (successive convex approximation),
//! 3. H-UAV position (successive convex approximation).
//!
//! The crate also ships three benchmark schedulers (fixed H-UAV trajectory,
//! hard per-slot energy cap with a stratospheric relay, and an energy-blind
//! delay minimizer with a ground relay) that share the same pipeline, plus a
//! scenario generator and per-slot metrics used by the experiment harness.

pub mod alloc;
pub mod baseline;
pub mod config;
pub mod convex;
pub mod metrics;
pub mod model;
pub mod queue;
pub mod scenario;
pub mod sched;
pub mod traj;

pub use config::ScenarioConfig;
pub use metrics::SlotMetrics;
pub use queue::{EnergyDeviationQueue, LyapunovWeights};
pub use scenario::SlotSnapshot;
