//! Toy GAN whose discriminator and generator parameters live on circles.
//!
//! Data follow `Exp(χ(ω))`, the generator pushes a uniform latent through the
//! quantile of `Exp(χ(θ₂))`, and the discriminator is the optimal one for
//! `Exp(χ(θ₁))`, with link `χ(θ) = sin²(πθ) + 1`.

use std::f64::consts::PI;

use dashmap::DashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::CostField;
use crate::trig::{wrap_unit, TorusPoint};

/// Exponential distribution with rate `xi` (mean `1/xi`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpFamily {
    pub xi: f64,
}

impl ExpFamily {
    pub fn new(xi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rate must be positive, got {xi}"
            )));
        }
        Ok(ExpFamily { xi })
    }

    pub fn density(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            self.xi * (-self.xi * x).exp()
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            -(-self.xi * x).exp_m1()
        }
    }

    pub fn quantile(&self, lambda: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&lambda) {
            return Err(Error::QuantileDomain(lambda));
        }
        Ok(-(-lambda).ln_1p() / self.xi)
    }
}

/// Link from the circle to the rate parameter; takes values in `[1, 2]`.
pub fn chi(theta: f64) -> f64 {
    let s = (PI * theta).sin();
    s * s + 1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GanConfig {
    pub omega: f64,
    pub x_cutoff: f64,
    pub simpson_nodes: usize,
}

impl Default for GanConfig {
    fn default() -> Self {
        GanConfig {
            omega: 0.25,
            x_cutoff: 40.0,
            simpson_nodes: 401,
        }
    }
}

impl GanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.omega) {
            return Err(Error::InvalidParameter(format!(
                "omega must lie in [0,1), got {}",
                self.omega
            )));
        }
        if !(self.x_cutoff > 0.0 && self.x_cutoff.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "x_cutoff must be positive, got {}",
                self.x_cutoff
            )));
        }
        if self.simpson_nodes < 3 || self.simpson_nodes % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "simpson_nodes must be odd and >= 3, got {}",
                self.simpson_nodes
            )));
        }
        Ok(())
    }

    pub fn data(&self) -> ExpFamily {
        ExpFamily {
            xi: chi(self.omega),
        }
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// `ln r` with `r = f_{χ(θ₁)}(x) / f_{χ(ω)}(x)`.
fn log_ratio(theta1: f64, x: f64, cfg: &GanConfig) -> f64 {
    let (c1, cw) = (chi(theta1), chi(cfg.omega));
    (c1 / cw).ln() - (c1 - cw) * x
}

/// Optimal discriminator for parameter `θ₁`: `f_{χ(ω)} / (f_{χ(ω)} + f_{χ(θ₁)})`.
pub fn discriminator(theta1: f64, x: f64, cfg: &GanConfig) -> f64 {
    1.0 / (1.0 + log_ratio(theta1, x, cfg).exp())
}

/// Generator: quantile of `Exp(χ(θ₂))` at `λ`.
pub fn generator(theta2: f64, lambda: f64, _cfg: &GanConfig) -> Result<f64> {
    ExpFamily { xi: chi(theta2) }.quantile(lambda)
}

/// Composite Simpson rule with `nodes` (odd) equally spaced nodes on `[a, b]`.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, nodes: usize) -> f64 {
    assert!(
        nodes >= 3 && nodes % 2 == 1,
        "simpson needs an odd node count >= 3"
    );
    let n = nodes - 1;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// `E_data log D + E_latent log(1 − D(G(λ)))`, the latent expectation taken in
/// the `x = G(λ)` variable so that the quantile's singularity at `λ → 1`
/// disappears. Both integrals run over `[0, x_cutoff]`.
pub fn cost(theta1: f64, theta2: f64, cfg: &GanConfig) -> Result<f64> {
    cfg.validate()?;
    let data = cfg.data();
    let gen = ExpFamily { xi: chi(theta2) };
    let real_integrand = |x: f64| -softplus(log_ratio(theta1, x, cfg)) * data.density(x);
    let fake_integrand = |x: f64| -softplus(-log_ratio(theta1, x, cfg)) * gen.density(x);
    let total = simpson(real_integrand, 0.0, cfg.x_cutoff, cfg.simpson_nodes)
        + simpson(fake_integrand, 0.0, cfg.x_cutoff, cfg.simpson_nodes);
    if !total.is_finite() {
        let n = cfg.simpson_nodes - 1;
        let x = (0..=n)
            .map(|i| cfg.x_cutoff * i as f64 / n as f64)
            .find(|&x| !(real_integrand(x).is_finite() && fake_integrand(x).is_finite()))
            .unwrap_or(f64::NAN);
        return Err(Error::CostDiagnostic { theta1, theta2, x });
    }
    Ok(total)
}

const CACHE_RESOLUTION: f64 = 1e-9;
const DEFAULT_CACHE_CAPACITY: usize = 1 << 20;

/// The cost as a [`CostField`], memoized on a `1e-9` lattice of parameters.
/// Evaluation happens at the snapped coordinates so results do not depend on
/// which nearby query filled the cache.
pub struct GanField {
    cfg: GanConfig,
    cache: DashMap<(u64, u64), f64>,
    capacity: usize,
}

impl GanField {
    pub fn new(cfg: GanConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(GanField {
            cfg,
            cache: DashMap::new(),
            capacity: DEFAULT_CACHE_CAPACITY,
        })
    }

    pub fn with_capacity(cfg: GanConfig, capacity: usize) -> Result<Self> {
        let mut f = GanField::new(cfg)?;
        f.capacity = capacity.max(1);
        Ok(f)
    }

    pub fn config(&self) -> &GanConfig {
        &self.cfg
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.len()
    }

    fn key(theta: f64) -> u64 {
        let steps = (1.0 / CACHE_RESOLUTION).round() as u64;
        ((wrap_unit(theta) / CACHE_RESOLUTION).round() as u64) % steps
    }
}

impl CostField for GanField {
    fn evaluate(&self, p: TorusPoint) -> f64 {
        let key = (GanField::key(p.theta1), GanField::key(p.theta2));
        if let Some(v) = self.cache.get(&key) {
            return *v;
        }
        let (t1, t2) = (
            key.0 as f64 * CACHE_RESOLUTION,
            key.1 as f64 * CACHE_RESOLUTION,
        );
        let v = cost(t1, t2, &self.cfg).unwrap_or(f64::NAN);
        if self.cache.len() >= self.capacity {
            self.cache.clear();
        }
        self.cache.insert(key, v);
        v
    }

    fn describe(&self) -> String {
        format!(
            "torus GAN (omega={}, x_cutoff={}, simpson_nodes={})",
            self.cfg.omega, self.cfg.x_cutoff, self.cfg.simpson_nodes
        )
    }
}
