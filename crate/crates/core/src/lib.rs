//! Fourier-mode analysis of min-max (Nash) flows on the 2-torus.
//!
//! The crate decomposes a doubly periodic cost `F(θ₁, θ₂)` into real sine/cosine
//! modes, classifies the critical points of the Nash flow
//! `θ₁' = +∂F/∂θ₁, θ₂' = −∂F/∂θ₂` of truncated series, and integrates the flow.
//! A toy GAN whose parameters live on circles ships as a built-in cost field.

pub mod dynamics;
pub mod error;
pub mod field;
pub mod flow;
pub mod gan;
pub mod spectral;
pub mod svg;
pub mod trig;

pub use dynamics::{
    basis_critical_points, classify_level, classify_numeric, classify_two_term,
    is_refinement_failure, locate_critical_points, nash_field, nash_hessian, par, pipeline,
    pipeline_from_table, pipeline_with, poincare_hopf_audit, refine_critical_point, sigma,
    single_axis_flow, vanishing_criterion, BasisCensus, Classification, CriticalPointReport,
    Eigenpair, Location, NashHessian, OneSided, Orientation, PipelineConfig, PipelineOutcome,
    PointType, SignTriple, SingleAxisFlow, DEFAULT_CENTER_TOL,
};
pub use error::{Error, Result};
pub use field::{CostField, FnField};
pub use flow::{
    field_difference, flow_distance, gronwall_bound, integrate, lipschitz_estimate,
    poincare_return, portrait, portrait_csv, separable_invariant, FlowKind, PoincareReturn,
    Portrait, Trajectory,
};
pub use gan::{cost, discriminator, generator, ExpFamily, GanConfig, GanField};
pub use spectral::{
    coefficient_quadrature, spectrum_fft, split_superposition, truncate_spectrum, GridSamples,
    ModeEntry, ModeTable,
};
pub use svg::{render_portrait, SvgOptions};
pub use trig::{
    mode_eval, mode_partial, poly_eval, poly_gradient, poly_hessian, Axis, Parity,
    RationalTorusPoint, TorusPoint, TrigMode, TrigPolynomial,
};
