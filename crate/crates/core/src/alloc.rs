//! Joint task split and CPU allocation (subproblem-1).
//!
//! With the UAV positions held fixed, the per-slot objective restricted to
//! the split ratios `alpha` and the CPU allocations `f` decomposes cleanly:
//! for fixed `alpha` it is convex in `f` (sums of `w/f` and `Q*kappa*w*f^2`
//! terms under capacity caps), and for fixed `f` it is affine in each
//! vehicle's `alpha`. The solver therefore alternates an interior-point
//! f-solve with an exact per-vehicle endpoint search over `alpha` until the
//! block objective stops improving.
//!
//! Deadlines are handled with one slack variable per task carrying a linear
//! penalty of `deadline_penalty` per second of violation. The penalty weight
//! dwarfs every delay coefficient, so whenever a task's deadline is jointly
//! satisfiable the optimum drives its slack to zero and the constraint is
//! effectively hard; tasks that cannot meet their deadline keep a positive
//! slack which is reported as a violation instead of aborting the slot.
//!
//! CPU variables are solved in GHz to keep the Newton system well scaled.

use crate::convex::{solve, Bound, ConstraintFn, ConvexProgram, LinearIneq, ObjectiveFn};

/// Hz per internal frequency unit.
const F_SCALE: f64 = 1e9;
/// Fraction of a capacity left as interior margin when building start points.
const START_MARGIN: f64 = 0.9;

/// Per-vehicle constants of one slot at fixed UAV positions.
#[derive(Debug, Clone)]
pub struct VehicleParams {
    /// Task size, bits.
    pub data_bits: f64,
    /// Full task workload `D*C`, cycles.
    pub total_cycles: f64,
    /// Delay requirement, s.
    pub deadline: f64,
    /// Serving L-UAV index.
    pub luav: usize,
    /// Uplink rate at the current positions, bits/s.
    pub uplink_rate: f64,
    /// Relay rate of the serving L-UAV at the current positions, bits/s.
    pub relay_rate: f64,
}

/// Inputs shared by every allocation operation for one slot.
#[derive(Debug, Clone)]
pub struct AllocationInput<'a> {
    pub vehicles: &'a [VehicleParams],
    pub n_luavs: usize,
    /// Per-L-UAV energy weight in the objective (the queue values, or zeros
    /// for delay-only schedulers).
    pub queue_weights: &'a [f64],
    pub k_penalty: f64,
    /// Weight per second of deadline violation.
    pub deadline_penalty: f64,
    /// Per-L-UAV CPU capacity, Hz.
    pub luav_cap: f64,
    /// Backup server CPU capacity, Hz.
    pub backup_cap: f64,
    pub kappa: f64,
    pub tx_power_luav: f64,
    /// Hard per-L-UAV caps on compute+transmit energy for this slot, J.
    pub energy_budgets: Option<Vec<f64>>,
    pub solver_tol: f64,
}

/// Split ratios and CPU allocations for one slot, in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationDecision {
    pub alpha: Vec<f64>,
    pub f_lu: Vec<f64>,
    pub f_hu: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Subproblem1Result {
    pub decision: AllocationDecision,
    /// Block objective after each alternation round; non-increasing.
    pub objective_trace: Vec<f64>,
    pub alternations: usize,
    /// Set when the hard energy cap forced split ratios upward.
    pub energy_forced: bool,
}

impl AllocationInput<'_> {
    fn queue_weight(&self, u: usize) -> f64 {
        self.queue_weights[u]
    }

    /// Transmit energy of L-UAV `u` under `alpha`, J.
    fn relay_energy(&self, u: usize, alpha: &[f64]) -> f64 {
        self.vehicles
            .iter()
            .enumerate()
            .filter(|(_, v)| v.luav == u)
            .map(|(i, v)| self.tx_power_luav * v.data_bits * (1.0 - alpha[i]) / v.relay_rate)
            .sum()
    }
}

/// Block objective: delay, queue-weighted energy, and deadline penalties for
/// the given allocation at fixed positions. Flight energy is a constant of
/// the block and not included.
pub fn allocation_objective(
    input: &AllocationInput,
    alpha: &[f64],
    f_lu: &[f64],
    f_hu: &[f64],
) -> f64 {
    let mut total = 0.0;
    let mut e_per_u = vec![0.0; input.n_luavs];
    for (i, v) in input.vehicles.iter().enumerate() {
        let a = alpha[i];
        let w_lu = v.total_cycles * a;
        let w_hu = v.total_cycles * (1.0 - a);
        let relay_bits = v.data_bits * (1.0 - a);
        let t_local = match (w_lu > 0.0, f_lu[i] > 0.0) {
            (false, _) => 0.0,
            (true, true) => w_lu / f_lu[i],
            (true, false) => return f64::INFINITY,
        };
        let t_backup = match (w_hu > 0.0, f_hu[i] > 0.0) {
            (false, _) => 0.0,
            (true, true) => w_hu / f_hu[i],
            (true, false) => return f64::INFINITY,
        };
        let t_relay = relay_bits / v.relay_rate;
        let t_up = v.data_bits / v.uplink_rate;
        let t_total = t_up + t_local + t_relay + t_backup;
        total +=
            input.k_penalty * t_total + input.deadline_penalty * (t_total - v.deadline).max(0.0);
        e_per_u[v.luav] += input.kappa * w_lu * f_lu[i] * f_lu[i]
            + input.tx_power_luav * relay_bits / v.relay_rate;
    }
    for (u, e) in e_per_u.iter().enumerate() {
        total += input.queue_weight(u) * e;
    }
    total
}

// ---- f-step ----------------------------------------------------------------

/// Deadline constraint `sum w/x - s <= bound` over scaled CPU variables.
struct DeadlineIneq {
    recips: Vec<(usize, f64)>,
    slack: usize,
    bound: f64,
}

impl ConstraintFn for DeadlineIneq {
    fn value(&self, x: &[f64]) -> f64 {
        let mut v = -x[self.slack] - self.bound;
        for &(i, w) in &self.recips {
            if x[i] <= 0.0 {
                return f64::INFINITY;
            }
            v += w / x[i];
        }
        v
    }
    fn grad_nz(&self, x: &[f64], out: &mut Vec<(usize, f64)>) {
        for &(i, w) in &self.recips {
            out.push((i, -w / (x[i] * x[i])));
        }
        out.push((self.slack, -1.0));
    }
    fn add_hess_scaled(&self, x: &[f64], scale: f64, hess: &mut [f64], stride: usize) {
        for &(i, w) in &self.recips {
            hess[i * stride + i] += scale * 2.0 * w / (x[i] * x[i] * x[i]);
        }
    }
}

/// Hard energy cap `sum c*x^2 <= bound` (diagonal quadratic).
struct EnergyQuadIneq {
    quads: Vec<(usize, f64)>,
    bound: f64,
}

impl ConstraintFn for EnergyQuadIneq {
    fn value(&self, x: &[f64]) -> f64 {
        self.quads.iter().map(|&(i, c)| c * x[i] * x[i]).sum::<f64>() - self.bound
    }
    fn grad_nz(&self, x: &[f64], out: &mut Vec<(usize, f64)>) {
        for &(i, c) in &self.quads {
            out.push((i, 2.0 * c * x[i]));
        }
    }
    fn add_hess_scaled(&self, _x: &[f64], scale: f64, hess: &mut [f64], stride: usize) {
        for &(i, c) in &self.quads {
            hess[i * stride + i] += scale * 2.0 * c;
        }
    }
}

/// `sum a/x + sum b*x^2 + sum c*x` over the program variables.
struct FStepObjective {
    recip: Vec<(usize, f64)>,
    quad: Vec<(usize, f64)>,
    linear: Vec<(usize, f64)>,
}

impl ObjectiveFn for FStepObjective {
    fn value(&self, x: &[f64]) -> f64 {
        let mut v = 0.0;
        for &(i, a) in &self.recip {
            if x[i] <= 0.0 {
                return f64::INFINITY;
            }
            v += a / x[i];
        }
        for &(i, b) in &self.quad {
            v += b * x[i] * x[i];
        }
        for &(i, c) in &self.linear {
            v += c * x[i];
        }
        v
    }
    fn grad(&self, x: &[f64], out: &mut [f64]) {
        out[..x.len()].fill(0.0);
        for &(i, a) in &self.recip {
            out[i] -= a / (x[i] * x[i]);
        }
        for &(i, b) in &self.quad {
            out[i] += 2.0 * b * x[i];
        }
        for &(i, c) in &self.linear {
            out[i] += c;
        }
    }
    fn add_hess_scaled(&self, x: &[f64], scale: f64, hess: &mut [f64]) {
        let n = x.len();
        for &(i, a) in &self.recip {
            hess[i * n + i] += scale * 2.0 * a / (x[i] * x[i] * x[i]);
        }
        for &(i, b) in &self.quad {
            hess[i * n + i] += scale * 2.0 * b;
        }
    }
}

struct VarMap {
    f_lu: Vec<Option<usize>>,
    f_hu: Vec<Option<usize>>,
    slack: Vec<usize>,
    dim: usize,
}

fn var_map(input: &AllocationInput, alpha: &[f64]) -> VarMap {
    let n = input.vehicles.len();
    let mut f_lu = vec![None; n];
    let mut f_hu = vec![None; n];
    let mut dim = 0;
    for i in 0..n {
        if alpha[i] > 0.0 {
            f_lu[i] = Some(dim);
            dim += 1;
        }
    }
    for i in 0..n {
        if alpha[i] < 1.0 {
            f_hu[i] = Some(dim);
            dim += 1;
        }
    }
    let slack: Vec<usize> = (0..n).map(|i| dim + i).collect();
    dim += n;
    VarMap {
        f_lu,
        f_hu,
        slack,
        dim,
    }
}

/// Optimal CPU allocations for fixed split ratios. `warm` is compared against
/// the fresh solve and the better block objective wins, which keeps the outer
/// alternation monotone. Returns `(f_lu, f_hu)` in Hz.
pub fn optimize_f_given_alpha(
    input: &AllocationInput,
    alpha: &[f64],
    warm: Option<(&[f64], &[f64])>,
) -> (Vec<f64>, Vec<f64>) {
    let n = input.vehicles.len();
    if n == 0 {
        return (vec![], vec![]);
    }
    let map = var_map(input, alpha);

    let mut recip = Vec::new();
    let mut quad = Vec::new();
    let mut linear = Vec::new();
    for (i, v) in input.vehicles.iter().enumerate() {
        let w_lu = v.total_cycles * alpha[i];
        let w_hu = v.total_cycles * (1.0 - alpha[i]);
        if let Some(j) = map.f_lu[i] {
            recip.push((j, input.k_penalty * w_lu / F_SCALE));
            let q = input.queue_weight(v.luav);
            if q > 0.0 {
                quad.push((j, q * input.kappa * w_lu * F_SCALE * F_SCALE));
            }
        }
        if let Some(j) = map.f_hu[i] {
            recip.push((j, input.k_penalty * w_hu / F_SCALE));
        }
        linear.push((map.slack[i], input.deadline_penalty));
    }
    let objective = FStepObjective { recip, quad, linear };

    // Capacity constraints per L-UAV and for the backup server.
    let mut constraints_owned: Vec<Box<dyn ConstraintFn>> = Vec::new();
    for u in 0..input.n_luavs {
        let coeffs: Vec<(usize, f64)> = (0..n)
            .filter(|&i| input.vehicles[i].luav == u)
            .filter_map(|i| map.f_lu[i].map(|j| (j, 1.0)))
            .collect();
        if !coeffs.is_empty() {
            constraints_owned.push(Box::new(LinearIneq {
                coeffs,
                bound: input.luav_cap / F_SCALE,
            }));
        }
    }
    let h_coeffs: Vec<(usize, f64)> = (0..n)
        .filter_map(|i| map.f_hu[i].map(|j| (j, 1.0)))
        .collect();
    if !h_coeffs.is_empty() {
        constraints_owned.push(Box::new(LinearIneq {
            coeffs: h_coeffs,
            bound: input.backup_cap / F_SCALE,
        }));
    }

    // Deadline constraints with slack relief.
    let mut deadline_bounds = vec![0.0; n];
    for (i, v) in input.vehicles.iter().enumerate() {
        let t_up = v.data_bits / v.uplink_rate;
        let t_relay = v.data_bits * (1.0 - alpha[i]) / v.relay_rate;
        deadline_bounds[i] = v.deadline - t_up - t_relay;
        let mut recips = Vec::new();
        if let Some(j) = map.f_lu[i] {
            recips.push((j, v.total_cycles * alpha[i] / F_SCALE));
        }
        if let Some(j) = map.f_hu[i] {
            recips.push((j, v.total_cycles * (1.0 - alpha[i]) / F_SCALE));
        }
        constraints_owned.push(Box::new(DeadlineIneq {
            recips,
            slack: map.slack[i],
            bound: deadline_bounds[i],
        }));
    }

    // Hard per-L-UAV energy caps (compute side; transmit is a constant here).
    if let Some(budgets) = &input.energy_budgets {
        for u in 0..input.n_luavs {
            let quads: Vec<(usize, f64)> = (0..n)
                .filter(|&i| input.vehicles[i].luav == u)
                .filter_map(|i| {
                    map.f_lu[i].map(|j| {
                        (
                            j,
                            input.kappa
                                * input.vehicles[i].total_cycles
                                * alpha[i]
                                * F_SCALE
                                * F_SCALE,
                        )
                    })
                })
                .collect();
            if quads.is_empty() {
                continue;
            }
            let bound = (budgets[u] - input.relay_energy(u, alpha)).max(1e-9);
            constraints_owned.push(Box::new(EnergyQuadIneq { quads, bound }));
        }
    }

    let constraints: Vec<&dyn ConstraintFn> =
        constraints_owned.iter().map(|b| b.as_ref()).collect();
    let bounds = vec![Bound::nonneg(); map.dim];
    let start = build_start(input, alpha, &map, &deadline_bounds);

    let prog = ConvexProgram {
        dim: map.dim,
        objective: &objective,
        constraints,
        bounds,
    };
    let report = solve(&prog, &start, input.solver_tol);

    let extract = |x: &[f64]| -> (Vec<f64>, Vec<f64>) {
        let f_lu: Vec<f64> = (0..n)
            .map(|i| map.f_lu[i].map_or(0.0, |j| x[j] * F_SCALE))
            .collect();
        let f_hu: Vec<f64> = (0..n)
            .map(|i| map.f_hu[i].map_or(0.0, |j| x[j] * F_SCALE))
            .collect();
        (f_lu, f_hu)
    };

    let (f_lu, f_hu) = match report {
        Ok(r) => extract(&r.solution),
        Err(_) => extract(&start),
    };

    // Keep whichever of fresh solve and warm start scores better.
    if let Some((warm_lu, warm_hu)) = warm {
        let fresh = allocation_objective(input, alpha, &f_lu, &f_hu);
        let kept = allocation_objective(input, alpha, warm_lu, warm_hu);
        if kept < fresh {
            return (warm_lu.to_vec(), warm_hu.to_vec());
        }
    }
    (f_lu, f_hu)
}

/// Water-filling shaped, strictly feasible start point.
fn build_start(
    input: &AllocationInput,
    alpha: &[f64],
    map: &VarMap,
    deadline_bounds: &[f64],
) -> Vec<f64> {
    let n = input.vehicles.len();
    let mut x = vec![0.0; map.dim];

    for u in 0..input.n_luavs {
        let members: Vec<usize> = (0..n)
            .filter(|&i| input.vehicles[i].luav == u && map.f_lu[i].is_some())
            .collect();
        if members.is_empty() {
            continue;
        }
        let q = input.queue_weight(u);
        // Unconstrained stationary point of K*w/f + Q*kappa*w*f^2 in Hz.
        let f_star = if q > 0.0 {
            (input.k_penalty / (2.0 * q * input.kappa)).cbrt()
        } else {
            f64::INFINITY
        };
        let sqrt_sum: f64 = members
            .iter()
            .map(|&i| (input.vehicles[i].total_cycles * alpha[i]).sqrt())
            .sum();
        for &i in &members {
            let share = START_MARGIN * input.luav_cap
                * (input.vehicles[i].total_cycles * alpha[i]).sqrt()
                / sqrt_sum.max(1e-300);
            x[map.f_lu[i].unwrap()] = f_star.min(share).max(1e-6 * F_SCALE) / F_SCALE;
        }
        // Respect a hard energy budget by uniform downscaling.
        if let Some(budgets) = &input.energy_budgets {
            let budget = (budgets[u] - input.relay_energy(u, alpha)).max(1e-9);
            let used: f64 = members
                .iter()
                .map(|&i| {
                    let f = x[map.f_lu[i].unwrap()] * F_SCALE;
                    input.kappa * input.vehicles[i].total_cycles * alpha[i] * f * f
                })
                .sum();
            if used > START_MARGIN * budget {
                let scale = (START_MARGIN * budget / used).sqrt();
                for &i in &members {
                    x[map.f_lu[i].unwrap()] *= scale;
                }
            }
        }
    }

    let h_members: Vec<usize> = (0..n).filter(|&i| map.f_hu[i].is_some()).collect();
    let sqrt_sum: f64 = h_members
        .iter()
        .map(|&i| (input.vehicles[i].total_cycles * (1.0 - alpha[i])).sqrt())
        .sum();
    for &i in &h_members {
        let share = START_MARGIN * input.backup_cap
            * (input.vehicles[i].total_cycles * (1.0 - alpha[i])).sqrt()
            / sqrt_sum.max(1e-300);
        x[map.f_hu[i].unwrap()] = share.max(1e-6 * F_SCALE) / F_SCALE;
    }

    // Slacks sit strictly above the current violation.
    for i in 0..n {
        let mut lhs = 0.0;
        if let Some(j) = map.f_lu[i] {
            lhs += input.vehicles[i].total_cycles * alpha[i] / F_SCALE / x[j];
        }
        if let Some(j) = map.f_hu[i] {
            lhs += input.vehicles[i].total_cycles * (1.0 - alpha[i]) / F_SCALE / x[j];
        }
        x[map.slack[i]] = (lhs - deadline_bounds[i]).max(0.0) + 0.05;
    }
    x
}

// ---- alpha-step ------------------------------------------------------------

/// Exact minimization of each vehicle's split ratio with the CPU allocations
/// fixed. The per-vehicle objective is affine plus one deadline hinge, so
/// the optimum sits at an interval endpoint or the hinge breakpoint; ties
/// break toward the smaller ratio. Under a hard energy budget the feasible
/// interval is additionally clipped, with vehicles processed in index order
/// against the group's running energy. Returns `(alpha, energy_forced)`.
pub fn optimize_alpha_given_f(
    input: &AllocationInput,
    f_lu: &[f64],
    f_hu: &[f64],
    current_alpha: &[f64],
) -> (Vec<f64>, bool) {
    let n = input.vehicles.len();
    let mut alpha = current_alpha.to_vec();
    let mut forced = false;

    for i in 0..n {
        let v = &input.vehicles[i];
        let f_l = f_lu[i];
        let f_h = f_hu[i];
        let q = input.queue_weight(v.luav);

        // Domain restrictions from pinned allocations.
        let (lo_dom, hi_dom): (f64, f64) = match (f_l > 0.0, f_h > 0.0) {
            (true, true) => (0.0, 1.0),
            (false, true) => (0.0, 0.0),
            (true, false) => (1.0, 1.0),
            (false, false) => continue,
        };

        let mut lo = lo_dom;
        let mut hi = hi_dom;

        // A hard energy cap induces an affine interval for this vehicle given
        // the rest of its group's current consumption.
        if let Some(budgets) = &input.energy_budgets {
            let u = v.luav;
            let others: f64 = (0..n)
                .filter(|&k| k != i && input.vehicles[k].luav == u)
                .map(|k| {
                    let vk = &input.vehicles[k];
                    input.kappa * vk.total_cycles * alpha[k] * f_lu[k] * f_lu[k]
                        + input.tx_power_luav * vk.data_bits * (1.0 - alpha[k]) / vk.relay_rate
                })
                .sum();
            let residual = budgets[u] - others;
            let e0 = input.tx_power_luav * v.data_bits / v.relay_rate;
            let e_slope = input.kappa * v.total_cycles * f_l * f_l - e0;
            if e_slope.abs() > 1e-300 {
                let boundary = (residual - e0) / e_slope;
                if e_slope > 0.0 {
                    hi = hi.min(boundary);
                } else {
                    lo = lo.max(boundary);
                }
            } else if e0 > residual {
                lo = 1.0;
                hi = 0.0;
            }
            lo = lo.max(lo_dom);
            hi = hi.min(hi_dom);
            if lo > hi {
                // Cap unsatisfiable for this vehicle alone: take the
                // energy-minimal end of the domain and flag it.
                forced = true;
                alpha[i] = if e_slope > 0.0 { lo_dom } else { hi_dom };
                continue;
            }
        }

        let t_up = v.data_bits / v.uplink_rate;
        let t_at = |a: f64| -> f64 {
            let local = if v.total_cycles * a > 0.0 {
                v.total_cycles * a / f_l
            } else {
                0.0
            };
            let backup = if v.total_cycles * (1.0 - a) > 0.0 {
                v.total_cycles * (1.0 - a) / f_h
            } else {
                0.0
            };
            t_up + local + v.data_bits * (1.0 - a) / v.relay_rate + backup
        };

        // Candidates: interval ends plus the deadline hinge breakpoint.
        let mut candidates = vec![lo, hi];
        if f_l > 0.0 && f_h > 0.0 {
            let slope = v.total_cycles / f_l - v.data_bits / v.relay_rate - v.total_cycles / f_h;
            if slope.abs() > 1e-300 {
                let breakpoint = (v.deadline - t_at(0.0)) / slope;
                if breakpoint > lo && breakpoint < hi {
                    candidates.push(breakpoint);
                }
            }
        }
        candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let objective_at = |a: f64| -> f64 {
            let t = t_at(a);
            let e = input.kappa * v.total_cycles * a * f_l * f_l
                + input.tx_power_luav * v.data_bits * (1.0 - a) / v.relay_rate;
            input.k_penalty * t + q * e + input.deadline_penalty * (t - v.deadline).max(0.0)
        };

        let mut best = candidates[0];
        let mut best_val = objective_at(best);
        for &c in &candidates[1..] {
            let val = objective_at(c);
            if val < best_val {
                best = c;
                best_val = val;
            }
        }
        alpha[i] = best;
    }
    (alpha, forced)
}

// ---- alternation -----------------------------------------------------------

/// Blends the split ratios of one L-UAV's vehicles toward full local compute
/// until the transmit energy alone fits in half the budget, leaving the rest
/// for compute. Returns true if anything changed.
fn force_alpha_for_budget(input: &AllocationInput, alpha: &mut [f64]) -> bool {
    let Some(budgets) = &input.energy_budgets else {
        return false;
    };
    let mut forced = false;
    for u in 0..input.n_luavs {
        let e_tr = input.relay_energy(u, alpha);
        if e_tr <= 0.5 * budgets[u] {
            continue;
        }
        let keep = 0.5 * budgets[u] / e_tr;
        for (i, v) in input.vehicles.iter().enumerate() {
            if v.luav == u {
                alpha[i] = 1.0 - keep * (1.0 - alpha[i]);
            }
        }
        forced = true;
    }
    forced
}

/// Alternating minimization over `(alpha, f)`; see the module docs.
pub fn solve_subproblem1(
    input: &AllocationInput,
    init_alpha: &[f64],
    max_iters: usize,
    rel_tol: f64,
) -> Subproblem1Result {
    let n = input.vehicles.len();
    if n == 0 {
        return Subproblem1Result {
            decision: AllocationDecision {
                alpha: vec![],
                f_lu: vec![],
                f_hu: vec![],
            },
            objective_trace: vec![0.0],
            alternations: 0,
            energy_forced: false,
        };
    }

    let mut alpha: Vec<f64> = init_alpha.iter().map(|a| a.clamp(0.0, 1.0)).collect();
    let mut energy_forced = force_alpha_for_budget(input, &mut alpha);

    let mut f_lu = vec![0.0; n];
    let mut f_hu = vec![0.0; n];
    let mut have_f = false;
    let mut trace = Vec::with_capacity(max_iters);
    let mut prev_obj = f64::INFINITY;
    let mut alternations = 0;

    for iter in 0..max_iters {
        let warm = if have_f {
            Some((f_lu.as_slice(), f_hu.as_slice()))
        } else {
            None
        };
        let (new_lu, new_hu) = optimize_f_given_alpha(input, &alpha, warm);
        f_lu = new_lu;
        f_hu = new_hu;
        have_f = true;

        let (new_alpha, forced) = optimize_alpha_given_f(input, &f_lu, &f_hu, &alpha);
        energy_forced |= forced;
        alpha = new_alpha;
        // Pinned ratios free their CPU allocation.
        for i in 0..n {
            if alpha[i] == 0.0 {
                f_lu[i] = 0.0;
            }
            if alpha[i] == 1.0 {
                f_hu[i] = 0.0;
            }
        }

        let obj = allocation_objective(input, &alpha, &f_lu, &f_hu);
        trace.push(obj);
        alternations = iter + 1;
        if prev_obj.is_finite() && prev_obj - obj < rel_tol * prev_obj.abs().max(1e-12) {
            break;
        }
        prev_obj = obj;
    }

    Subproblem1Result {
        decision: AllocationDecision { alpha, f_lu, f_hu },
        objective_trace: trace,
        alternations,
        energy_forced,
    }
}
