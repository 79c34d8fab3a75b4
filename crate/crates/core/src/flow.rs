//! Fixed-step RK4 integration of Morse and Nash flows on the torus.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::nash_hessian;
use crate::error::{Error, Result};
use crate::field::{fd_gradient, CostField, FD_STEP};
use crate::trig::{TorusPoint, TrigMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlowKind {
    /// `(+∂₁F, +∂₂F)`: gradient ascent in both players.
    Morse,
    /// `(+∂₁F, −∂₂F)`: ascent for player 1, descent for player 2.
    Nash,
}

impl FromStr for FlowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "morse" => Ok(FlowKind::Morse),
            "nash" => Ok(FlowKind::Nash),
            other => Err(Error::Parse(format!(
                "unknown flow {other:?} (expected morse or nash)"
            ))),
        }
    }
}

impl std::fmt::Display for FlowKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FlowKind::Morse => "morse",
            FlowKind::Nash => "nash",
        })
    }
}

/// Vector field of `kind` for `field`. Black-box fields are differentiated by
/// central differences with step `h`.
pub fn velocity<F: CostField + ?Sized>(
    field: &F,
    kind: FlowKind,
    p: TorusPoint,
    h: f64,
) -> [f64; 2] {
    let g = field
        .analytic_gradient(p)
        .unwrap_or_else(|| fd_gradient(field, p, h));
    match kind {
        FlowKind::Morse => g,
        FlowKind::Nash => [g[0], -g[1]],
    }
}

/// Finite-difference step for black-box fields at time step `dt`.
pub fn fd_step_for(dt: f64) -> f64 {
    (dt / 10.0).min(FD_STEP)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub points: Vec<(f64, TorusPoint)>,
    pub dt: f64,
    pub method: &'static str,
}

impl Trajectory {
    pub fn last(&self) -> TorusPoint {
        self.points
            .last()
            .map(|p| p.1)
            .expect("trajectory holds at least the seed")
    }
}

struct Stepper<'a, F: ?Sized> {
    field: &'a F,
    kind: FlowKind,
    dt: f64,
    h: f64,
}

impl<F: CostField + ?Sized> Stepper<'_, F> {
    fn eval(&self, p: TorusPoint) -> Result<[f64; 2]> {
        let v = velocity(self.field, self.kind, p, self.h);
        if v[0].is_finite() && v[1].is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(p))
        }
    }

    /// One classical RK4 step; returns the unwrapped displacement.
    fn step(&self, p: TorusPoint) -> Result<[f64; 2]> {
        let dt = self.dt;
        let k1 = self.eval(p)?;
        let k2 = self.eval(p.offset(0.5 * dt * k1[0], 0.5 * dt * k1[1]))?;
        let k3 = self.eval(p.offset(0.5 * dt * k2[0], 0.5 * dt * k2[1]))?;
        let k4 = self.eval(p.offset(dt * k3[0], dt * k3[1]))?;
        Ok([
            dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ])
    }
}

fn check_dt(dt: f64) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "dt must be positive, got {dt}"
        )));
    }
    Ok(())
}

/// Integrates `steps` RK4 steps from `seed`; every point is wrapped into [0,1)².
pub fn integrate<F: CostField + ?Sized>(
    field: &F,
    kind: FlowKind,
    seed: TorusPoint,
    dt: f64,
    steps: usize,
) -> Result<Trajectory> {
    check_dt(dt)?;
    let stepper = Stepper {
        field,
        kind,
        dt,
        h: fd_step_for(dt),
    };
    let mut points = Vec::with_capacity(steps + 1);
    let mut p = TorusPoint::new(seed.theta1, seed.theta2);
    points.push((0.0, p));
    for k in 1..=steps {
        let d = stepper.step(p)?;
        p = p.offset(d[0], d[1]);
        points.push((k as f64 * dt, p));
    }
    Ok(Trajectory {
        points,
        dt,
        method: "rk4",
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Portrait {
    pub seeds: Vec<TorusPoint>,
    /// One per seed; a failed seed keeps only its starting point.
    pub trajectories: Vec<Trajectory>,
    /// `(seed index, error message)` for seeds whose integration aborted.
    pub failures: Vec<(usize, String)>,
    pub field_descriptor: String,
    pub flow: FlowKind,
}

/// `n × n` seeds at cell centres `((i+½)/n, (j+½)/n)`, ordered row by row.
pub fn seed_lattice(n: usize) -> Vec<TorusPoint> {
    (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| {
                TorusPoint::new((i as f64 + 0.5) / n as f64, (j as f64 + 0.5) / n as f64)
            })
        })
        .collect()
}

pub fn portrait<F: CostField + ?Sized>(
    field: &F,
    kind: FlowKind,
    seed_grid: usize,
    dt: f64,
    steps: usize,
) -> Result<Portrait> {
    if seed_grid < 2 {
        return Err(Error::InvalidParameter(format!(
            "seed grid must be >= 2, got {seed_grid}"
        )));
    }
    check_dt(dt)?;
    let seeds = seed_lattice(seed_grid);
    let results: Vec<Result<Trajectory>> = seeds
        .par_iter()
        .map(|&s| integrate(field, kind, s, dt, steps))
        .collect();
    let mut trajectories = Vec::with_capacity(seeds.len());
    let mut failures = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(t) => trajectories.push(t),
            Err(e) => {
                failures.push((i, e.to_string()));
                trajectories.push(Trajectory {
                    points: vec![(0.0, seeds[i])],
                    dt,
                    method: "rk4",
                });
            }
        }
    }
    Ok(Portrait {
        seeds,
        trajectories,
        failures,
        field_descriptor: field.describe(),
        flow: kind,
    })
}

/// `seed_id,t,theta1,theta2` rows for every trajectory point.
pub fn portrait_csv(portrait: &Portrait) -> String {
    let mut out = String::from("seed_id,t,theta1,theta2\n");
    for (i, t) in portrait.trajectories.iter().enumerate() {
        for (time, p) in &t.points {
            let _ = writeln!(out, "{i},{time:.9},{:.9},{:.9}", p.theta1, p.theta2);
        }
    }
    out
}

/// First integral `P(θ₁) + Q(θ₂)` of the Nash flow of a single basis mode,
/// with `P = −ln|cos(2πm₁θ₁)|/m₁²` for a sine factor and `−ln|sin(2πm₁θ₁)|/m₁²`
/// for a cosine factor (likewise `Q`).
pub fn separable_invariant(mode: TrigMode, p: TorusPoint) -> Result<f64> {
    if !mode.is_two_dimensional() {
        return Err(Error::NotTwoDimensional(mode.to_string()));
    }
    let part = |parity, m: u32, theta: f64| -> Result<f64> {
        let arg = crate::trig::Parity::flip(parity)
            .apply(std::f64::consts::TAU * m as f64 * theta)
            .abs();
        if arg < 1e-12 {
            return Err(Error::SingularInvariant(p));
        }
        Ok(-arg.ln() / (m as f64 * m as f64))
    };
    Ok(part(mode.alpha, mode.m1, p.theta1)? + part(mode.beta, mode.m2, p.theta2)?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoincareReturn {
    pub period: f64,
    pub point: TorusPoint,
    pub distance: f64,
}

/// Integrates until the orbit crosses the line through `seed` normal to the
/// initial velocity in the same direction again; the crossing is linearly
/// interpolated. `None` if no return happens within `max_steps`.
pub fn poincare_return<F: CostField + ?Sized>(
    field: &F,
    kind: FlowKind,
    seed: TorusPoint,
    dt: f64,
    max_steps: usize,
) -> Result<Option<PoincareReturn>> {
    check_dt(dt)?;
    let stepper = Stepper {
        field,
        kind,
        dt,
        h: fd_step_for(dt),
    };
    let v0 = stepper.eval(seed)?;
    // unwrapped offset from the seed
    let mut x = [0.0, 0.0];
    let side = |x: [f64; 2]| x[0] * v0[0] + x[1] * v0[1];
    let mut left = false;
    for k in 1..=max_steps {
        let p = seed.offset(x[0], x[1]);
        let d = stepper.step(p)?;
        let next = [x[0] + d[0], x[1] + d[1]];
        let (a, b) = (side(x), side(next));
        if a < 0.0 {
            left = true;
        }
        if left && a < 0.0 && b >= 0.0 {
            let f = a / (a - b);
            let y = [x[0] + f * d[0], x[1] + f * d[1]];
            let point = seed.offset(y[0], y[1]);
            return Ok(Some(PoincareReturn {
                period: (k as f64 - 1.0 + f) * dt,
                point,
                distance: y[0].hypot(y[1]),
            }));
        }
        x = next;
    }
    Ok(None)
}

/// Pointwise distance between paired trajectories of two fields, maximized over
/// seeds: `(t, max_seed d(φ_A(t), φ_B(t)))`.
pub fn flow_distance<A: CostField + ?Sized, B: CostField + ?Sized>(
    field_a: &A,
    field_b: &B,
    kind: FlowKind,
    seeds: &[TorusPoint],
    dt: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    let pairs: Vec<(Trajectory, Trajectory)> = seeds
        .par_iter()
        .map(|&s| {
            Ok((
                integrate(field_a, kind, s, dt, steps)?,
                integrate(field_b, kind, s, dt, steps)?,
            ))
        })
        .collect::<Result<_>>()?;
    Ok((0..=steps)
        .map(|k| {
            let d = pairs
                .iter()
                .map(|(a, b)| a.points[k].1.distance(b.points[k].1))
                .fold(0.0, f64::max);
            (k as f64 * dt, d)
        })
        .collect())
}

fn grid_points(n: usize) -> impl Iterator<Item = TorusPoint> {
    (0..n).flat_map(move |i| {
        (0..n).map(move |j| TorusPoint::new(i as f64 / n as f64, j as f64 / n as f64))
    })
}

/// Empirical Lipschitz constant: max Frobenius norm of the Nash Hessian over an
/// `n × n` grid (the Morse Jacobian has the same norm).
pub fn lipschitz_estimate<F: CostField + ?Sized>(field: &F, n: usize) -> f64 {
    grid_points(n)
        .map(|p| {
            let e = nash_hessian(field, p).entries;
            (e[0][0].powi(2) + e[0][1].powi(2) + e[1][0].powi(2) + e[1][1].powi(2)).sqrt()
        })
        .fold(0.0, f64::max)
}

/// `sup ‖X_A − X_B‖` over an `n × n` grid.
pub fn field_difference<A: CostField + ?Sized, B: CostField + ?Sized>(
    field_a: &A,
    field_b: &B,
    kind: FlowKind,
    n: usize,
) -> f64 {
    grid_points(n)
        .map(|p| {
            let a = velocity(field_a, kind, p, FD_STEP);
            let b = velocity(field_b, kind, p, FD_STEP);
            (a[0] - b[0]).hypot(a[1] - b[1])
        })
        .fold(0.0, f64::max)
}

/// Gronwall comparison bound `(e^{Mt} − 1)/M · ‖X − Y‖∞`.
pub fn gronwall_bound(lipschitz: f64, sup_difference: f64, t: f64) -> f64 {
    if lipschitz == 0.0 {
        return t * sup_difference;
    }
    (lipschitz * t).exp_m1() / lipschitz * sup_difference
}
