//! Small dense constrained convex minimizer.
//!
//! Logarithmic-barrier interior point with damped Newton steps and
//! backtracking line search. The barrier parameter follows the schedule
//! `t <- 10*t` from `t = 1`, and the outer loop stops once the duality-gap
//! bound `m/t` falls under the tolerance scaled by `1 + |objective|`.
//! Problems here are tiny (a few dozen variables), so dense Cholesky
//! factorization per Newton step is the whole linear algebra story.
//!
//! Constraints are smooth convex functions `g(x) <= 0` described through the
//! [`ConstraintFn`] trait; linear and ball constraints ship as ready-made
//! implementations and callers provide their own shapes where needed.
//! Gradients are sparse `(index, value)` pairs and Hessians accumulate into
//! the shared Newton matrix, so a constraint touching three variables costs
//! O(1) regardless of the problem dimension. A start that is not strictly
//! feasible goes through a Phase-1 pass minimizing the worst violation; if
//! that optimum is nonnegative the program is reported infeasible together
//! with the violating constraint indices.

use thiserror::Error;

/// Objective with analytic gradient. The Hessian defaults to central finite
/// differences of the gradient; performance-sensitive callers override it.
pub trait ObjectiveFn {
    /// May return `+inf` to flag a point outside the objective's domain; the
    /// line search then rejects the step.
    fn value(&self, x: &[f64]) -> f64;
    fn grad(&self, x: &[f64], out: &mut [f64]);

    /// Accumulate `scale * hessian(x)` into the row-major matrix `hess`.
    fn add_hess_scaled(&self, x: &[f64], scale: f64, hess: &mut [f64]) {
        let n = x.len();
        let mut fd = vec![0.0; n * n];
        fd_hess_of_grad(&|y, g| self.grad(y, g), x, &mut fd);
        for (h, f) in hess.iter_mut().zip(&fd) {
            *h += scale * f;
        }
    }
}

/// Smooth convex constraint `g(x) <= 0`.
pub trait ConstraintFn {
    fn value(&self, x: &[f64]) -> f64;
    /// Append the nonzero gradient entries as `(index, value)` pairs.
    fn grad_nz(&self, x: &[f64], out: &mut Vec<(usize, f64)>);
    /// Accumulate `scale * hessian(x)` into the row-major matrix with the
    /// given row stride.
    fn add_hess_scaled(&self, x: &[f64], scale: f64, hess: &mut [f64], stride: usize);
}

/// `a . x <= b`, sparse coefficients.
#[derive(Debug, Clone)]
pub struct LinearIneq {
    pub coeffs: Vec<(usize, f64)>,
    pub bound: f64,
}

impl ConstraintFn for LinearIneq {
    fn value(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(i, a)| a * x[i]).sum::<f64>() - self.bound
    }
    fn grad_nz(&self, _x: &[f64], out: &mut Vec<(usize, f64)>) {
        out.extend_from_slice(&self.coeffs);
    }
    fn add_hess_scaled(&self, _x: &[f64], _scale: f64, _hess: &mut [f64], _stride: usize) {}
}

/// `|x_c - center|^2 <= radius_sq` over a pair of coordinates.
#[derive(Debug, Clone)]
pub struct BallIneq {
    pub coords: (usize, usize),
    pub center: (f64, f64),
    pub radius_sq: f64,
}

impl ConstraintFn for BallIneq {
    fn value(&self, x: &[f64]) -> f64 {
        let dx = x[self.coords.0] - self.center.0;
        let dy = x[self.coords.1] - self.center.1;
        dx * dx + dy * dy - self.radius_sq
    }
    fn grad_nz(&self, x: &[f64], out: &mut Vec<(usize, f64)>) {
        out.push((self.coords.0, 2.0 * (x[self.coords.0] - self.center.0)));
        out.push((self.coords.1, 2.0 * (x[self.coords.1] - self.center.1)));
    }
    fn add_hess_scaled(&self, _x: &[f64], scale: f64, hess: &mut [f64], stride: usize) {
        hess[self.coords.0 * stride + self.coords.0] += 2.0 * scale;
        hess[self.coords.1 * stride + self.coords.1] += 2.0 * scale;
    }
}

/// Per-coordinate bounds; either side may be infinite.
#[derive(Debug, Clone, Copy)]
pub struct Bound {
    pub lo: f64,
    pub hi: f64,
}

impl Bound {
    pub const FREE: Bound = Bound {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn nonneg() -> Bound {
        Bound {
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }

    pub fn new(lo: f64, hi: f64) -> Bound {
        Bound { lo, hi }
    }
}

pub struct ConvexProgram<'a> {
    pub dim: usize,
    pub objective: &'a dyn ObjectiveFn,
    pub constraints: Vec<&'a dyn ConstraintFn>,
    /// Defaults to free when shorter than `dim`.
    pub bounds: Vec<Bound>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: Vec<f64>,
    pub objective_value: f64,
    /// Total Newton iterations across barrier stages.
    pub iterations: usize,
    pub converged: bool,
    pub max_constraint_violation: f64,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("infeasible program: best max-violation {best_violation:.3e}, worst constraints {violating:?}")]
    Infeasible {
        violating: Vec<usize>,
        best_violation: f64,
    },
}

#[derive(Debug, Error, PartialEq)]
pub enum BisectError {
    #[error("no sign change over [{lo}, {hi}]: f(lo)={f_lo:.3e}, f(hi)={f_hi:.3e}")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
}

pub const FEASIBILITY_TOL: f64 = 1e-8;
const BARRIER_MU: f64 = 10.0;
const MAX_NEWTON_PER_STAGE: usize = 60;
const MAX_STAGES: usize = 40;

/// Minimizes the program from `start`. `tol` bounds the duality gap relative
/// to `1 + |objective|`. A start outside the strictly feasible region first
/// runs through Phase-1.
pub fn solve(program: &ConvexProgram, start: &[f64], tol: f64) -> Result<SolveReport, SolveError> {
    assert_eq!(start.len(), program.dim);
    let mut x = start.to_vec();
    nudge_into_bounds(program, &mut x);

    if !is_strictly_feasible(program, &x) {
        x = phase1(program, &x)?;
    }

    let mut scratch = Scratch::new(program.dim);
    let m = barrier_term_count(program);
    let mut t = 1.0f64;
    let mut total_newton = 0usize;
    let mut converged = false;

    for _ in 0..MAX_STAGES {
        total_newton += newton_centering(program, &mut x, t, &mut scratch);
        let f0 = program.objective.value(&x);
        if m == 0 || (m as f64) / t <= tol * (1.0 + f0.abs()) {
            converged = true;
            break;
        }
        t *= BARRIER_MU;
    }

    let violation = max_violation(program, &x);
    Ok(SolveReport {
        objective_value: program.objective.value(&x),
        solution: x,
        iterations: total_newton,
        converged: converged && violation <= FEASIBILITY_TOL,
        max_constraint_violation: violation,
    })
}

/// Root of a monotone function on a bracketing interval.
pub fn bisect(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64, BisectError> {
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(BisectError::NoBracket { lo, hi, f_lo, f_hi });
    }
    let (mut a, mut b, mut f_a) = (lo, hi, f_lo);
    loop {
        let mid = 0.5 * (a + b);
        let f_mid = f(mid);
        if f_mid.abs() <= tol || (b - a).abs() <= tol {
            return Ok(mid);
        }
        if f_mid.signum() == f_a.signum() {
            a = mid;
            f_a = f_mid;
        } else {
            b = mid;
        }
    }
}

/// Central finite-difference gradient, for validating analytic gradients.
pub fn central_diff_grad(f: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut g = vec![0.0; n];
    let mut xp = x.to_vec();
    for i in 0..n {
        let h = 1e-6 * (1.0 + x[i].abs());
        xp[i] = x[i] + h;
        let fp = f(&xp);
        xp[i] = x[i] - h;
        let fm = f(&xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    g
}

fn fd_hess_of_grad(grad: &dyn Fn(&[f64], &mut [f64]), x: &[f64], out: &mut [f64]) {
    let n = x.len();
    let mut xp = x.to_vec();
    let mut gp = vec![0.0; n];
    let mut gm = vec![0.0; n];
    for i in 0..n {
        let h = 1e-6 * (1.0 + x[i].abs());
        xp[i] = x[i] + h;
        grad(&xp, &mut gp);
        xp[i] = x[i] - h;
        grad(&xp, &mut gm);
        xp[i] = x[i];
        for j in 0..n {
            out[i * n + j] = (gp[j] - gm[j]) / (2.0 * h);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (out[i * n + j] + out[j * n + i]);
            out[i * n + j] = avg;
            out[j * n + i] = avg;
        }
    }
}

struct Scratch {
    grad: Vec<f64>,
    hess: Vec<f64>,
    nz: Vec<(usize, f64)>,
    step: Vec<f64>,
    trial: Vec<f64>,
    chol: Vec<f64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self {
            grad: vec![0.0; n],
            hess: vec![0.0; n * n],
            nz: Vec::with_capacity(n),
            step: vec![0.0; n],
            trial: vec![0.0; n],
            chol: vec![0.0; n * n],
        }
    }
}

fn bound(program: &ConvexProgram, i: usize) -> Bound {
    program.bounds.get(i).copied().unwrap_or(Bound::FREE)
}

fn barrier_term_count(program: &ConvexProgram) -> usize {
    let mut m = program.constraints.len();
    for i in 0..program.dim {
        let b = bound(program, i);
        if b.lo.is_finite() {
            m += 1;
        }
        if b.hi.is_finite() {
            m += 1;
        }
    }
    m
}

fn nudge_into_bounds(program: &ConvexProgram, x: &mut [f64]) {
    for i in 0..program.dim {
        let b = bound(program, i);
        if b.lo.is_finite() && b.hi.is_finite() {
            let width = b.hi - b.lo;
            let margin = 1e-9 * width.max(1e-9);
            x[i] = x[i].clamp(b.lo + margin, b.hi - margin);
        } else if b.lo.is_finite() && x[i] <= b.lo {
            x[i] = b.lo + 1e-12 * (1.0 + b.lo.abs());
        } else if b.hi.is_finite() && x[i] >= b.hi {
            x[i] = b.hi - 1e-12 * (1.0 + b.hi.abs());
        }
    }
}

fn is_strictly_feasible(program: &ConvexProgram, x: &[f64]) -> bool {
    for i in 0..program.dim {
        let b = bound(program, i);
        if x[i] <= b.lo || x[i] >= b.hi {
            return false;
        }
    }
    program.constraints.iter().all(|c| c.value(x) < 0.0) && program.objective.value(x).is_finite()
}

fn max_violation(program: &ConvexProgram, x: &[f64]) -> f64 {
    let mut v: f64 = 0.0;
    for c in &program.constraints {
        v = v.max(c.value(x));
    }
    for i in 0..program.dim {
        let b = bound(program, i);
        if b.lo.is_finite() {
            v = v.max(b.lo - x[i]);
        }
        if b.hi.is_finite() {
            v = v.max(x[i] - b.hi);
        }
    }
    v
}

/// Barrier-augmented value `t*f0 + phi`; +inf outside the strict interior.
fn merit(program: &ConvexProgram, x: &[f64], t: f64) -> f64 {
    let f0 = program.objective.value(x);
    if !f0.is_finite() {
        return f64::INFINITY;
    }
    let mut phi = 0.0;
    for c in &program.constraints {
        let g = c.value(x);
        if g >= 0.0 {
            return f64::INFINITY;
        }
        phi -= (-g).ln();
    }
    for i in 0..program.dim {
        let b = bound(program, i);
        if b.lo.is_finite() {
            let slack = x[i] - b.lo;
            if slack <= 0.0 {
                return f64::INFINITY;
            }
            phi -= slack.ln();
        }
        if b.hi.is_finite() {
            let slack = b.hi - x[i];
            if slack <= 0.0 {
                return f64::INFINITY;
            }
            phi -= slack.ln();
        }
    }
    t * f0 + phi
}

/// Damped Newton on the barrier-augmented function. Returns Newton steps used.
fn newton_centering(program: &ConvexProgram, x: &mut Vec<f64>, t: f64, s: &mut Scratch) -> usize {
    let n = program.dim;
    let mut steps = 0;

    for _ in 0..MAX_NEWTON_PER_STAGE {
        program.objective.grad(x, &mut s.grad);
        for v in s.grad.iter_mut() {
            *v *= t;
        }
        s.hess.fill(0.0);
        program.objective.add_hess_scaled(x, t, &mut s.hess);

        for c in &program.constraints {
            let g = c.value(x);
            debug_assert!(g < 0.0, "iterate left the interior");
            let inv = 1.0 / (-g);
            s.nz.clear();
            c.grad_nz(x, &mut s.nz);
            for &(i, gi) in s.nz.iter() {
                s.grad[i] += inv * gi;
            }
            let inv_sq = inv * inv;
            for &(i, gi) in s.nz.iter() {
                for &(j, gj) in s.nz.iter() {
                    s.hess[i * n + j] += inv_sq * gi * gj;
                }
            }
            c.add_hess_scaled(x, inv, &mut s.hess, n);
        }
        for i in 0..n {
            let b = bound(program, i);
            if b.lo.is_finite() {
                let slack = x[i] - b.lo;
                s.grad[i] -= 1.0 / slack;
                s.hess[i * n + i] += 1.0 / (slack * slack);
            }
            if b.hi.is_finite() {
                let slack = b.hi - x[i];
                s.grad[i] += 1.0 / slack;
                s.hess[i * n + i] += 1.0 / (slack * slack);
            }
        }

        if !solve_newton_system(&s.hess, &s.grad, &mut s.step, &mut s.chol, n) {
            break;
        }

        // Newton decrement: lambda^2 = -grad . step.
        let decrement_sq: f64 = -s.grad.iter().zip(&s.step).map(|(g, d)| g * d).sum::<f64>();
        if !(decrement_sq > 2e-13 * (1.0 + t.abs())) {
            break;
        }

        let merit_0 = merit(program, x, t);
        let slope = -decrement_sq;
        let mut alpha = 1.0f64;
        let mut accepted = false;
        for _ in 0..60 {
            for i in 0..n {
                s.trial[i] = x[i] + alpha * s.step[i];
            }
            let m_trial = merit(program, &s.trial, t);
            if m_trial.is_finite() && m_trial <= merit_0 + 0.25 * alpha * slope {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            break;
        }
        x.copy_from_slice(&s.trial);
        steps += 1;
    }
    steps
}

/// Cholesky solve of `H step = -g` with escalating ridge regularization.
fn solve_newton_system(
    hess: &[f64],
    grad: &[f64],
    step: &mut [f64],
    chol: &mut [f64],
    n: usize,
) -> bool {
    let base: f64 = (0..n).map(|i| hess[i * n + i].abs()).fold(0.0, f64::max);
    let mut ridge = 0.0;
    for attempt in 0..9 {
        chol.copy_from_slice(hess);
        if ridge > 0.0 {
            for i in 0..n {
                chol[i * n + i] += ridge;
            }
        }
        if cholesky_in_place(chol, n) {
            for i in 0..n {
                let mut sum = -grad[i];
                for j in 0..i {
                    sum -= chol[i * n + j] * step[j];
                }
                step[i] = sum / chol[i * n + i];
            }
            for i in (0..n).rev() {
                let mut sum = step[i];
                for j in (i + 1)..n {
                    sum -= chol[j * n + i] * step[j];
                }
                step[i] = sum / chol[i * n + i];
            }
            return true;
        }
        ridge = if attempt == 0 {
            1e-12 * base.max(1e-30)
        } else {
            ridge * 100.0
        };
    }
    false
}

/// In-place lower-triangular Cholesky; false on a non-positive pivot.
fn cholesky_in_place(a: &mut [f64], n: usize) -> bool {
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i * n + j];
            for k in 0..j {
                sum -= a[i * n + k] * a[j * n + k];
            }
            if i == j {
                if !(sum > 0.0) || !sum.is_finite() {
                    return false;
                }
                a[i * n + i] = sum.sqrt();
            } else {
                a[i * n + j] = sum / a[j * n + j];
            }
        }
    }
    true
}

// ---- Phase-1 ---------------------------------------------------------------

struct Phase1Objective;

impl ObjectiveFn for Phase1Objective {
    fn value(&self, x: &[f64]) -> f64 {
        x[x.len() - 1]
    }
    fn grad(&self, x: &[f64], out: &mut [f64]) {
        out[..x.len()].fill(0.0);
        out[x.len() - 1] = 1.0;
    }
    fn add_hess_scaled(&self, _x: &[f64], _scale: f64, _hess: &mut [f64]) {}
}

/// Original constraint relaxed by the Phase-1 slack: `g(x) - s <= 0`.
struct Relaxed<'a> {
    inner: &'a dyn ConstraintFn,
    n: usize,
}

impl ConstraintFn for Relaxed<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        self.inner.value(&x[..self.n]) - x[self.n]
    }
    fn grad_nz(&self, x: &[f64], out: &mut Vec<(usize, f64)>) {
        self.inner.grad_nz(&x[..self.n], out);
        out.push((self.n, -1.0));
    }
    fn add_hess_scaled(&self, x: &[f64], scale: f64, hess: &mut [f64], stride: usize) {
        self.inner.add_hess_scaled(&x[..self.n], scale, hess, stride);
    }
}

fn phase1(program: &ConvexProgram, start: &[f64]) -> Result<Vec<f64>, SolveError> {
    let n = program.dim;
    let worst = program
        .constraints
        .iter()
        .map(|c| c.value(start))
        .fold(0.0f64, f64::max);

    let relaxed: Vec<Relaxed> = program
        .constraints
        .iter()
        .map(|c| Relaxed { inner: *c, n })
        .collect();
    let constraint_refs: Vec<&dyn ConstraintFn> =
        relaxed.iter().map(|r| r as &dyn ConstraintFn).collect();

    let mut bounds = Vec::with_capacity(n + 1);
    for i in 0..n {
        bounds.push(bound(program, i));
    }
    bounds.push(Bound::FREE);

    let objective = Phase1Objective;
    let aug = ConvexProgram {
        dim: n + 1,
        objective: &objective,
        constraints: constraint_refs,
        bounds,
    };

    let mut x = Vec::with_capacity(n + 1);
    x.extend_from_slice(start);
    x.push(worst + 1.0);

    let mut scratch = Scratch::new(n + 1);
    let mut t = 1.0;
    for _ in 0..MAX_STAGES {
        newton_centering(&aug, &mut x, t, &mut scratch);
        if program.constraints.iter().all(|c| c.value(&x[..n]) < -1e-9)
            && program.objective.value(&x[..n]).is_finite()
        {
            return Ok(x[..n].to_vec());
        }
        if (barrier_term_count(&aug) as f64) / t <= 1e-10 {
            break;
        }
        t *= BARRIER_MU;
    }

    let values: Vec<f64> = program.constraints.iter().map(|c| c.value(&x[..n])).collect();
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let violating = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v >= -1e-9)
        .map(|(i, _)| i)
        .collect();
    Err(SolveError::Infeasible {
        violating,
        best_violation: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Quadratic {
        center: Vec<f64>,
    }

    impl ObjectiveFn for Quadratic {
        fn value(&self, x: &[f64]) -> f64 {
            x.iter()
                .zip(&self.center)
                .map(|(xi, ci)| (xi - ci) * (xi - ci))
                .sum()
        }
        fn grad(&self, x: &[f64], out: &mut [f64]) {
            for i in 0..x.len() {
                out[i] = 2.0 * (x[i] - self.center[i]);
            }
        }
        fn add_hess_scaled(&self, x: &[f64], scale: f64, hess: &mut [f64]) {
            let n = x.len();
            for i in 0..n {
                hess[i * n + i] += 2.0 * scale;
            }
        }
    }

    struct Reciprocal;

    impl ObjectiveFn for Reciprocal {
        fn value(&self, x: &[f64]) -> f64 {
            1.0 / x[0]
        }
        fn grad(&self, x: &[f64], out: &mut [f64]) {
            out[0] = -1.0 / (x[0] * x[0]);
        }
        fn add_hess_scaled(&self, x: &[f64], scale: f64, hess: &mut [f64]) {
            hess[0] += scale * 2.0 / (x[0] * x[0] * x[0]);
        }
    }

    #[test]
    fn projection_onto_simplex_face() {
        // min (x-1)^2 + (y-2)^2  s.t. x+y <= 1, x >= 0, y >= 0  ->  (0, 1)
        let obj = Quadratic {
            center: vec![1.0, 2.0],
        };
        let cons = LinearIneq {
            coeffs: vec![(0, 1.0), (1, 1.0)],
            bound: 1.0,
        };
        let prog = ConvexProgram {
            dim: 2,
            objective: &obj,
            constraints: vec![&cons],
            bounds: vec![Bound::nonneg(), Bound::nonneg()],
        };
        let r = solve(&prog, &[0.25, 0.25], 1e-10).unwrap();
        assert!(r.converged);
        assert!((r.solution[0] - 0.0).abs() < 1e-4, "{:?}", r.solution);
        assert!((r.solution[1] - 1.0).abs() < 1e-4, "{:?}", r.solution);
        assert!(r.max_constraint_violation <= FEASIBILITY_TOL);
    }

    #[test]
    fn interior_optimum_is_exact() {
        let obj = Quadratic {
            center: vec![0.3, -0.4, 0.1],
        };
        let prog = ConvexProgram {
            dim: 3,
            objective: &obj,
            constraints: vec![],
            bounds: vec![Bound::new(-1.0, 1.0); 3],
        };
        let r = solve(&prog, &[0.0, 0.0, 0.0], 1e-10).unwrap();
        assert!(r.converged);
        for (xi, ci) in r.solution.iter().zip(&obj.center) {
            assert!((xi - ci).abs() < 1e-6, "{:?}", r.solution);
        }
    }

    #[test]
    fn monotone_objective_hits_boundary() {
        // min 1/x on [2, 5] -> x = 5.
        let prog = ConvexProgram {
            dim: 1,
            objective: &Reciprocal,
            constraints: vec![],
            bounds: vec![Bound::new(2.0, 5.0)],
        };
        let r = solve(&prog, &[3.0], 1e-10).unwrap();
        assert!(r.converged);
        assert!((r.solution[0] - 5.0).abs() < 1e-5, "{:?}", r.solution);
    }

    #[test]
    fn ball_constraint_projection() {
        // min (x-10)^2 + (y-1)^2 s.t. |x - (1,1)| <= 2 -> (3, 1).
        let obj = Quadratic {
            center: vec![10.0, 1.0],
        };
        let ball = BallIneq {
            coords: (0, 1),
            center: (1.0, 1.0),
            radius_sq: 4.0,
        };
        let prog = ConvexProgram {
            dim: 2,
            objective: &obj,
            constraints: vec![&ball],
            bounds: vec![],
        };
        let r = solve(&prog, &[1.0, 1.0], 1e-10).unwrap();
        assert!(r.converged);
        assert!((r.solution[0] - 3.0).abs() < 1e-4, "{:?}", r.solution);
        assert!((r.solution[1] - 1.0).abs() < 1e-4, "{:?}", r.solution);
    }

    #[test]
    fn phase1_recovers_feasible_start() {
        let obj = Quadratic {
            center: vec![1.0, 2.0],
        };
        let cons = LinearIneq {
            coeffs: vec![(0, 1.0), (1, 1.0)],
            bound: 1.0,
        };
        let prog = ConvexProgram {
            dim: 2,
            objective: &obj,
            constraints: vec![&cons],
            bounds: vec![Bound::nonneg(), Bound::nonneg()],
        };
        let r = solve(&prog, &[5.0, 5.0], 1e-10).unwrap();
        assert!(r.converged);
        assert!((r.solution[0] - 0.0).abs() < 1e-4);
        assert!((r.solution[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn infeasible_program_reported() {
        // x <= -1 and x >= 0 cannot hold together.
        let obj = Quadratic { center: vec![0.0] };
        let cons = LinearIneq {
            coeffs: vec![(0, 1.0)],
            bound: -1.0,
        };
        let prog = ConvexProgram {
            dim: 1,
            objective: &obj,
            constraints: vec![&cons],
            bounds: vec![Bound::nonneg()],
        };
        let err = solve(&prog, &[0.5], 1e-8).unwrap_err();
        match err {
            SolveError::Infeasible { violating, .. } => assert_eq!(violating, vec![0]),
        }
    }

    #[test]
    fn deterministic_bitwise() {
        let obj = Quadratic {
            center: vec![1.0, 2.0],
        };
        let cons = LinearIneq {
            coeffs: vec![(0, 1.0), (1, 1.0)],
            bound: 1.0,
        };
        let prog = ConvexProgram {
            dim: 2,
            objective: &obj,
            constraints: vec![&cons],
            bounds: vec![Bound::nonneg(), Bound::nonneg()],
        };
        let a = solve(&prog, &[0.2, 0.3], 1e-10).unwrap();
        let b = solve(&prog, &[0.2, 0.3], 1e-10).unwrap();
        assert_eq!(a.solution, b.solution);
        assert_eq!(a.objective_value, b.objective_value);
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn bisect_linear_root() {
        let f = |x: f64| x - 3.0;
        let root = bisect(&f, 0.0, 10.0, 1e-12).unwrap();
        assert!((root - 3.0).abs() < 1e-9);
    }

    #[test]
    fn bisect_sqrt2() {
        let f = |x: f64| x * x - 2.0;
        let root = bisect(&f, 0.0, 2.0, 1e-12).unwrap();
        assert!((root - std::f64::consts::SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn bisect_rejects_constant_sign() {
        let f = |x: f64| x * x + 1.0;
        assert!(matches!(
            bisect(&f, -1.0, 1.0, 1e-12),
            Err(BisectError::NoBracket { .. })
        ));
    }

    #[test]
    fn default_fd_hessian_matches_analytic() {
        struct NoHess;
        impl ObjectiveFn for NoHess {
            fn value(&self, x: &[f64]) -> f64 {
                x[0].powi(4) + 3.0 * x[0] * x[1] + x[1] * x[1]
            }
            fn grad(&self, x: &[f64], out: &mut [f64]) {
                out[0] = 4.0 * x[0].powi(3) + 3.0 * x[1];
                out[1] = 3.0 * x[0] + 2.0 * x[1];
            }
        }
        let mut h = vec![0.0; 4];
        NoHess.add_hess_scaled(&[0.7, -0.2], 1.0, &mut h);
        assert!((h[0] - 4.0 * 3.0 * 0.49).abs() < 1e-4, "{h:?}");
        assert!((h[1] - 3.0).abs() < 1e-5);
        assert!((h[2] - 3.0).abs() < 1e-5);
        assert!((h[3] - 2.0).abs() < 1e-5);
    }
}
