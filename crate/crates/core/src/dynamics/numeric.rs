//! Newton refinement and eigenvalue-based classification for arbitrary fields.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use super::report::{Classification, CriticalPointReport, Location, PointType};
use super::{
    classify_eigenvalues, nash_field, nash_hessian, sign_of, symmetric_eigenvalues,
    CRITICAL_RESIDUAL, DEGENERATE_RATIO,
};
use crate::error::{Error, Result};
use crate::field::{gradient_of, hessian_of, CostField, FD_STEP};
use crate::trig::TorusPoint;

/// Newton steps are refused when the Nash Hessian determinant is this small.
pub const NEWTON_DET_MIN: f64 = 1e-10;

const WINDING_SAMPLES: usize = 256;

/// Half the minimum lattice spacing: `1/(8·max frequency)`. Fields of unknown
/// bandwidth are treated as frequency 2.
pub fn trust_radius<F: CostField + ?Sized>(field: &F) -> f64 {
    1.0 / (8.0 * field.max_frequency().unwrap_or(2).max(1) as f64)
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Newton iteration on the Nash field with the Nash Hessian as Jacobian,
/// confined to [`trust_radius`] around the guess.
pub fn refine_critical_point<F: CostField + ?Sized>(
    field: &F,
    guess: TorusPoint,
    tol: f64,
    max_iter: usize,
) -> Result<TorusPoint> {
    refine_with_radius(field, guess, tol, max_iter, trust_radius(field))
}

pub fn refine_with_radius<F: CostField + ?Sized>(
    field: &F,
    guess: TorusPoint,
    tol: f64,
    max_iter: usize,
    radius: f64,
) -> Result<TorusPoint> {
    let mut p = guess;
    let mut residual = f64::INFINITY;
    for _ in 0..=max_iter {
        let n = nash_field(field, p);
        if !(n[0].is_finite() && n[1].is_finite()) {
            return Err(Error::NonFinite(p));
        }
        residual = norm(n);
        if residual <= tol {
            return Ok(p);
        }
        let j = nash_hessian(field, p);
        if j.det.abs() <= NEWTON_DET_MIN {
            return Err(Error::SingularHessian {
                point: p,
                det: j.det,
            });
        }
        let [[a, b], [c, d]] = j.entries;
        let d1 = -(d * n[0] - b * n[1]) / j.det;
        let d2 = -(-c * n[0] + a * n[1]) / j.det;
        p = p.offset(d1, d2);
        let distance = guess.distance(p);
        if distance > radius {
            return Err(Error::LeftBasin { radius, distance });
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

/// Winding number of a planar vector field along a circle of radius `r`.
fn winding(center: TorusPoint, r: f64, v: impl Fn(TorusPoint) -> [f64; 2]) -> i32 {
    let angle = |t: f64| {
        let w = v(center.offset(r * t.cos(), r * t.sin()));
        w[1].atan2(w[0])
    };
    let mut total = 0.0;
    let mut prev = angle(0.0);
    for k in 1..=WINDING_SAMPLES {
        let cur = angle(TAU * k as f64 / WINDING_SAMPLES as f64);
        let mut d = cur - prev;
        if d > PI {
            d -= TAU;
        } else if d < -PI {
            d += TAU;
        }
        total += d;
        prev = cur;
    }
    (total / TAU).round() as i32
}

fn probe_radius<F: CostField + ?Sized>(field: &F) -> f64 {
    trust_radius(field) / 16.0
}

/// Index of the gradient field around `p`: +1 at extrema, −1 at saddles.
pub fn gradient_winding<F: CostField + ?Sized>(field: &F, p: TorusPoint, r: f64) -> i32 {
    winding(p, r, |q| gradient_of(field, q, FD_STEP))
}

/// Number of negative eigenvalues of the plain Hessian. When the Hessian is
/// degenerate the gradient index decides: −1 gives 1, +1 gives 2 or 0 by the
/// sign of the Laplacian.
pub fn morse_index<F: CostField + ?Sized>(field: &F, p: TorusPoint) -> u8 {
    let h = hessian_of(field, p, FD_STEP);
    let ev = symmetric_eigenvalues(h);
    let big = ev[0].abs().max(ev[1].abs());
    let negatives = ev.iter().filter(|&&l| l < 0.0).count() as u8;
    if big > 0.0 && ev[0].abs().min(ev[1].abs()) > DEGENERATE_RATIO * big {
        return negatives;
    }
    match gradient_winding(field, p, probe_radius(field)) {
        -1 => 1,
        1 => {
            if h[0][0] + h[1][1] < 0.0 {
                2
            } else {
                0
            }
        }
        _ => negatives,
    }
}

/// Classifies a critical point from the eigenvalues of the Nash Hessian.
///
/// A degenerate linearization falls back on the index of the Nash field:
/// index −1 is reported as a saddle, anything else stays `Degenerate`.
pub fn classify_numeric<F: CostField + ?Sized>(
    field: &F,
    p: TorusPoint,
    center_tol: f64,
) -> Result<CriticalPointReport> {
    let n = nash_field(field, p);
    let residual = norm(n);
    if !(residual <= CRITICAL_RESIDUAL) {
        return Err(Error::NotCritical { point: p, residual });
    }
    let h = nash_hessian(field, p);
    let mut classification = classify_eigenvalues(&h.eigenvalues, center_tol);
    let mut note = None;
    if classification == Classification::Degenerate {
        let idx = winding(p, probe_radius(field), |q| nash_field(field, q));
        if idx == -1 {
            classification = Classification::Saddle;
        }
        note = Some(format!("degenerate linearization; Nash-field index {idx}"));
    }
    let trace_sign = if classification == Classification::Center {
        0
    } else {
        sign_of(h.trace)
    };
    Ok(CriticalPointReport {
        location: Location::Refined(p),
        lattice_indices: None,
        point_type: PointType::Other,
        classification,
        eigen: h.eigenvalues,
        morse_index: morse_index(field, p),
        trace_sign,
        signs: None,
        note,
    })
}

/// Critical points found by refining every node `(i/n, j/n)` of a seed grid
/// within a radius of one cell. Points closer than half the trust radius are
/// merged (keeping the smallest residual, since Newton stalls anywhere near a
/// degenerate zero) and the survivors are sorted by location. Seeds whose
/// refinement fails are skipped.
pub fn locate_critical_points<F: CostField + ?Sized>(
    field: &F,
    n: usize,
    tol: f64,
    center_tol: f64,
) -> Vec<CriticalPointReport> {
    let seeds: Vec<TorusPoint> = (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| TorusPoint::new(i as f64 / n as f64, j as f64 / n as f64))
        })
        .collect();
    let mut found: Vec<(f64, TorusPoint)> = seeds
        .par_iter()
        .filter_map(|&s| refine_with_radius(field, s, tol, 50, 1.0 / n as f64).ok())
        .map(|p| (norm(nash_field(field, p)), p))
        .collect();
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Converged copies of one point differ by at most ~sqrt(tol) (degenerate
    // points converge linearly); distinct points may sit far closer than the
    // trust radius once strong terms bifurcate the lattice.
    let merge = (trust_radius(field) / 2.0).min(100.0 * tol.sqrt());
    let mut unique: Vec<TorusPoint> = Vec::new();
    for (_, p) in found {
        if unique.iter().all(|q| q.distance(p) > merge) {
            unique.push(p);
        }
    }
    let key = |p: &TorusPoint| {
        (
            (p.theta1 * 1e6).round() as i64,
            (p.theta2 * 1e6).round() as i64,
        )
    };
    unique.sort_by_key(key);
    unique
        .into_iter()
        .filter_map(|p| classify_numeric(field, p, center_tol).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;
    use crate::trig::{TrigMode, TrigPolynomial};

    #[test]
    fn newton_recovers_lattice_center() {
        let poly = TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 0, 0));
        let p = refine_critical_point(&poly, TorusPoint::new(0.01, 0.02), 1e-12, 50).unwrap();
        assert!(p.distance(TorusPoint::new(0.0, 0.0)) < 1e-12);
    }

    #[test]
    fn zero_iterations_when_already_critical() {
        let poly = TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 0, 0));
        let seed = TorusPoint::new(0.5, 0.0);
        let p = refine_critical_point(&poly, seed, 1e-10, 0).unwrap();
        assert_eq!(p, seed);
    }

    #[test]
    fn singular_and_basin_errors() {
        let c = TrigPolynomial::single(1.0, TrigMode::bits(1, 0, 0, 1));
        assert!(matches!(
            refine_critical_point(&c, TorusPoint::new(0.1, 0.3), 1e-12, 20),
            Err(Error::SingularHessian { .. })
        ));
        let poly = TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 0, 0));
        assert!(matches!(
            refine_with_radius(&poly, TorusPoint::new(0.1, 0.1), 1e-12, 20, 1e-4),
            Err(Error::LeftBasin { .. })
        ));
    }

    #[test]
    fn numeric_classification_examples() {
        let poly = TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 0, 0));
        let r = classify_numeric(&poly, TorusPoint::new(0.0, 0.0), 1e-7).unwrap();
        assert_eq!(r.classification, Classification::Center);
        assert_eq!(r.morse_index, 1);
        let r = classify_numeric(&poly, TorusPoint::new(0.25, 0.25), 1e-7).unwrap();
        assert_eq!(r.classification, Classification::Saddle);
        assert_eq!(r.morse_index, 2);
        let r = classify_numeric(&poly, TorusPoint::new(0.25, 0.75), 1e-7).unwrap();
        assert_eq!(r.morse_index, 0);
        assert!(matches!(
            classify_numeric(&poly, TorusPoint::new(0.1, 0.1), 1e-7),
            Err(Error::NotCritical { .. })
        ));
    }

    #[test]
    fn degenerate_extremum_falls_back_to_index() {
        // F = −θ₁⁴ − θ₂² near the origin: a degenerate maximum
        let f = FnField::new("quartic", |p: TorusPoint| {
            let [x, y] = TorusPoint::new(0.0, 0.0).displacement_to(p);
            -(x.powi(4)) - y * y
        });
        let r = classify_numeric(&f, TorusPoint::new(0.0, 0.0), 1e-7).unwrap();
        assert_eq!(r.classification, Classification::Saddle);
        assert_eq!(r.morse_index, 2);
        assert!(r.note.is_some());
    }

    #[test]
    fn locator_finds_the_full_census() {
        let poly = TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 0, 0));
        let found = locate_critical_points(&poly, 8, 1e-12, 1e-7);
        assert_eq!(found.len(), 8);
        assert_eq!(
            found
                .iter()
                .filter(|r| r.classification == Classification::Saddle)
                .count(),
            4
        );
        assert_eq!(super::super::poincare_hopf_audit(&found), 0);
    }
}
