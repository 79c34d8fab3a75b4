//! Nash vector field, Nash Hessian and critical-point classification.
//!
//! Axis 1 is the maximizing (discriminator) player, axis 2 the minimizing
//! (generator) player, so the Nash field is `(+∂₁F, −∂₂F)`.

mod lattice;
mod numeric;
mod pipeline;
mod report;
mod sign;

pub use lattice::{
    basis_critical_points, par, single_axis_flow, type_i_point, type_ii_point, vanishing_criterion,
    BasisCensus, Orientation, SingleAxisFlow,
};
pub use numeric::{
    classify_numeric, gradient_winding, locate_critical_points, morse_index, refine_critical_point,
    refine_with_radius, trust_radius, NEWTON_DET_MIN,
};
pub use pipeline::{
    classify_level, is_refinement_failure, pipeline, pipeline_from_table, pipeline_with,
    LevelSummary, PipelineConfig, PipelineOutcome,
};
pub use report::{Classification, CriticalPointReport, Location, PointType};
pub use sign::{classify_two_term, sigma, two_term_signs, OneSided, SignTriple, TwoTermSigns};

use num_complex::Complex;

use crate::field::{gradient_of, hessian_of, CostField, FD_STEP};
use crate::trig::TorusPoint;

/// Relative |Re λ| / |Im λ| below which a complex pair counts as a center.
pub const DEFAULT_CENTER_TOL: f64 = 1e-7;
/// Real eigenvalue pairs with `min|λ| ≤ DEGENERATE_RATIO · max|λ|` are degenerate.
pub const DEGENERATE_RATIO: f64 = 1e-6;
/// Largest Nash-field norm accepted as a critical point by [`classify_numeric`].
pub const CRITICAL_RESIDUAL: f64 = 1e-8;

pub type Eigenpair = [Complex<f64>; 2];

/// Jacobian of the Nash field: the plain Hessian with its bottom row negated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NashHessian {
    pub entries: [[f64; 2]; 2],
    pub trace: f64,
    pub det: f64,
    pub eigenvalues: Eigenpair,
}

impl NashHessian {
    pub fn from_hessian(h: [[f64; 2]; 2]) -> Self {
        let entries = [[h[0][0], h[0][1]], [-h[1][0], -h[1][1]]];
        let trace = entries[0][0] + entries[1][1];
        let det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
        NashHessian {
            entries,
            trace,
            det,
            eigenvalues: eigenvalues_2x2(trace, det),
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.entries
            .iter()
            .map(|r| r[0].abs() + r[1].abs())
            .fold(0.0, f64::max)
    }
}

/// Closed-form eigenvalues of a real 2×2 matrix from its trace and determinant.
/// Real pairs are ordered descending; complex pairs have positive imaginary part first.
pub fn eigenvalues_2x2(trace: f64, det: f64) -> Eigenpair {
    let half = trace / 2.0;
    let disc = half * half - det;
    if disc >= 0.0 {
        let r = disc.sqrt();
        // avoid cancellation in the smaller root
        let big = if half >= 0.0 { half + r } else { half - r };
        let small = if big != 0.0 { det / big } else { 0.0 };
        let (a, b) = if big >= small {
            (big, small)
        } else {
            (small, big)
        };
        [Complex::new(a, 0.0), Complex::new(b, 0.0)]
    } else {
        let im = (-disc).sqrt();
        [Complex::new(half, im), Complex::new(half, -im)]
    }
}

/// Eigenvalues of a symmetric 2×2 matrix, descending.
pub fn symmetric_eigenvalues(h: [[f64; 2]; 2]) -> [f64; 2] {
    let mean = (h[0][0] + h[1][1]) / 2.0;
    let r = (((h[0][0] - h[1][1]) / 2.0).powi(2) + h[0][1] * h[0][1]).sqrt();
    [mean + r, mean - r]
}

/// `(+∂F/∂θ₁, −∂F/∂θ₂)`.
pub fn nash_field<F: CostField + ?Sized>(field: &F, p: TorusPoint) -> [f64; 2] {
    let g = gradient_of(field, p, FD_STEP);
    [g[0], -g[1]]
}

pub fn nash_hessian<F: CostField + ?Sized>(field: &F, p: TorusPoint) -> NashHessian {
    NashHessian::from_hessian(hessian_of(field, p, FD_STEP))
}

/// Flow type read off the linearization alone.
pub fn classify_eigenvalues(ev: &Eigenpair, center_tol: f64) -> Classification {
    if ev[0].im != 0.0 {
        let (re, im) = (ev[0].re, ev[0].im.abs());
        if re.abs() <= center_tol * im {
            Classification::Center
        } else if re < 0.0 {
            Classification::SpiralAttractor
        } else {
            Classification::SpiralRepulsor
        }
    } else {
        let (a, b) = (ev[0].re, ev[1].re);
        let big = a.abs().max(b.abs());
        if big == 0.0 || a.abs().min(b.abs()) <= DEGENERATE_RATIO * big {
            Classification::Degenerate
        } else if a * b < 0.0 {
            Classification::Saddle
        } else if a < 0.0 {
            Classification::AttractingNode
        } else {
            Classification::RepellingNode
        }
    }
}

pub fn sign_of(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Σ (−1)^index over the reports; 0 is consistent with χ(T²) = 0.
pub fn poincare_hopf_audit(reports: &[CriticalPointReport]) -> i64 {
    reports
        .iter()
        .map(|r| if r.morse_index % 2 == 0 { 1 } else { -1 })
        .sum()
}
