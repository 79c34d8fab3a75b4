//! Abstract periodic scalar fields on T².

use crate::trig::{TorusPoint, TrigPolynomial};

/// Step used for central differences on fields without analytic derivatives.
pub const FD_STEP: f64 = 1e-4;

/// A 1-periodic scalar field on the torus.
///
/// Implementors must be callable from many threads at once; grid sampling and
/// phase portraits evaluate in parallel.
pub trait CostField: Sync {
    fn evaluate(&self, p: TorusPoint) -> f64;

    /// Exact gradient when available; `None` falls back to central differences.
    fn analytic_gradient(&self, _p: TorusPoint) -> Option<[f64; 2]> {
        None
    }

    fn analytic_hessian(&self, _p: TorusPoint) -> Option<[[f64; 2]; 2]> {
        None
    }

    /// Highest frequency present, when the field is band-limited and known.
    fn max_frequency(&self) -> Option<u32> {
        None
    }

    fn describe(&self) -> String;
}

impl CostField for TrigPolynomial {
    fn evaluate(&self, p: TorusPoint) -> f64 {
        self.eval(p)
    }

    fn analytic_gradient(&self, p: TorusPoint) -> Option<[f64; 2]> {
        Some(self.gradient(p))
    }

    fn analytic_hessian(&self, p: TorusPoint) -> Option<[[f64; 2]; 2]> {
        Some(self.hessian(p))
    }

    fn max_frequency(&self) -> Option<u32> {
        Some(TrigPolynomial::max_frequency(self))
    }

    fn describe(&self) -> String {
        format!("trig polynomial {self}")
    }
}

impl<T: CostField + ?Sized> CostField for &T {
    fn evaluate(&self, p: TorusPoint) -> f64 {
        (**self).evaluate(p)
    }

    fn analytic_gradient(&self, p: TorusPoint) -> Option<[f64; 2]> {
        (**self).analytic_gradient(p)
    }

    fn analytic_hessian(&self, p: TorusPoint) -> Option<[[f64; 2]; 2]> {
        (**self).analytic_hessian(p)
    }

    fn max_frequency(&self) -> Option<u32> {
        (**self).max_frequency()
    }

    fn describe(&self) -> String {
        (**self).describe()
    }
}

/// Black-box field backed by a closure.
pub struct FnField<F> {
    f: F,
    label: String,
}

impl<F: Fn(TorusPoint) -> f64 + Sync> FnField<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        FnField {
            f,
            label: label.into(),
        }
    }
}

impl<F: Fn(TorusPoint) -> f64 + Sync> CostField for FnField<F> {
    fn evaluate(&self, p: TorusPoint) -> f64 {
        (self.f)(p)
    }

    fn describe(&self) -> String {
        self.label.clone()
    }
}

/// Central-difference gradient with step `h`.
pub fn fd_gradient<F: CostField + ?Sized>(field: &F, p: TorusPoint, h: f64) -> [f64; 2] {
    let e = |d1: f64, d2: f64| field.evaluate(p.offset(d1, d2));
    [
        (e(h, 0.0) - e(-h, 0.0)) / (2.0 * h),
        (e(0.0, h) - e(0.0, -h)) / (2.0 * h),
    ]
}

/// Central-difference Hessian with step `h`; symmetric by construction.
pub fn fd_hessian<F: CostField + ?Sized>(field: &F, p: TorusPoint, h: f64) -> [[f64; 2]; 2] {
    let e = |d1: f64, d2: f64| field.evaluate(p.offset(d1, d2));
    let f0 = e(0.0, 0.0);
    let h11 = (e(h, 0.0) - 2.0 * f0 + e(-h, 0.0)) / (h * h);
    let h22 = (e(0.0, h) - 2.0 * f0 + e(0.0, -h)) / (h * h);
    let h12 = (e(h, h) - e(h, -h) - e(-h, h) + e(-h, -h)) / (4.0 * h * h);
    [[h11, h12], [h12, h22]]
}

/// Analytic gradient when the field offers one, central differences otherwise.
pub fn gradient_of<F: CostField + ?Sized>(field: &F, p: TorusPoint, h: f64) -> [f64; 2] {
    field
        .analytic_gradient(p)
        .unwrap_or_else(|| fd_gradient(field, p, h))
}

pub fn hessian_of<F: CostField + ?Sized>(field: &F, p: TorusPoint, h: f64) -> [[f64; 2]; 2] {
    field
        .analytic_hessian(p)
        .unwrap_or_else(|| fd_hessian(field, p, h))
}
