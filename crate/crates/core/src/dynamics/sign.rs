//! Exact sign arithmetic for two-term polynomials `Λ + μΛ'` at the type-II
//! points of the leading mode.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::lattice::type_ii_point;
use super::numeric::{morse_index, refine_critical_point};
use super::report::{Classification, CriticalPointReport, Location, PointType};
use super::{nash_hessian, DEFAULT_CENTER_TOL};
use crate::error::{Error, Result};
use crate::trig::{rational, reduce_unit, Parity, TrigMode, TrigPolynomial};

/// Sign of a function at a point together with its one-sided limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OneSided {
    pub left: i8,
    pub value: i8,
    pub right: i8,
}

impl OneSided {
    fn flat(v: i8) -> Self {
        OneSided {
            left: v,
            value: v,
            right: v,
        }
    }

    /// Limit from the side `direction` (−1 left, +1 right, 0 the value itself).
    pub fn toward(&self, direction: i8) -> i8 {
        match direction.signum() {
            -1 => self.left,
            1 => self.right,
            _ => self.value,
        }
    }
}

/// `σ⁰(θ) = sign sin 2πθ`, `σ¹(θ) = sign cos 2πθ`, evaluated exactly.
pub fn sigma(parity: Parity, theta: &BigRational) -> OneSided {
    let t = reduce_unit(theta);
    let half = rational(1, 2);
    let q1 = rational(1, 4);
    let q3 = rational(3, 4);
    match parity {
        Parity::Sin => {
            if t.is_zero() {
                OneSided {
                    left: -1,
                    value: 0,
                    right: 1,
                }
            } else if t == half {
                OneSided {
                    left: 1,
                    value: 0,
                    right: -1,
                }
            } else if t < half {
                OneSided::flat(1)
            } else {
                OneSided::flat(-1)
            }
        }
        Parity::Cos => {
            if t == q1 {
                OneSided {
                    left: 1,
                    value: 0,
                    right: -1,
                }
            } else if t == q3 {
                OneSided {
                    left: -1,
                    value: 0,
                    right: 1,
                }
            } else if t < q1 || t > q3 {
                OneSided::flat(1)
            } else {
                OneSided::flat(-1)
            }
        }
    }
}

fn parity_sign(p: Parity) -> i8 {
    if p == Parity::Sin {
        1
    } else {
        -1
    }
}

/// The sign quantities A, B₁, B₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignTriple {
    #[serde(rename = "A")]
    pub a: i8,
    #[serde(rename = "B1")]
    pub b1: i8,
    #[serde(rename = "B2")]
    pub b2: i8,
}

/// Every exact sign entering the two-term analysis at one type-II point.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoTermSigns {
    pub location: crate::trig::RationalTorusPoint,
    /// σ^γ(n₁θ₁⁰), σ^δ(n₂θ₂⁰): signs of the perturbing factors.
    pub p0: i8,
    pub q0: i8,
    /// Signs of the derivatives of the perturbing factors.
    pub p1: i8,
    pub q1: i8,
    /// Signs of the derivatives of the leading factors (never 0 on type II).
    pub f1: i8,
    pub g1: i8,
    pub triple: SignTriple,
    /// Sign of `μ·σ^γ·σ^δ·(n₂² − n₁²)`, the trace when the gradient vanishes.
    pub trace_factor: i8,
}

impl TwoTermSigns {
    pub fn gradient_vanishes(&self) -> bool {
        self.p1 * self.q0 == 0 && self.p0 * self.q1 == 0
    }
}

fn check_inputs(lead: &TrigMode, mu: f64, pert: &TrigMode) -> Result<()> {
    if !lead.is_two_dimensional() {
        return Err(Error::NotTwoDimensional(lead.to_string()));
    }
    if !pert.is_two_dimensional() {
        return Err(Error::NotTwoDimensional(pert.to_string()));
    }
    if !(mu.is_finite() && mu.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "|mu| must be < 1, got {mu}"
        )));
    }
    Ok(())
}

/// Evaluates all signs at the type-II point `(k₁, k₂)` of `lead`.
pub fn two_term_signs(
    lead: &TrigMode,
    mu: f64,
    pert: &TrigMode,
    k1: i64,
    k2: i64,
) -> Result<TwoTermSigns> {
    check_inputs(lead, mu, pert)?;
    let loc = type_ii_point(lead, k1, k2);
    let scale = |n: u32, t: &BigRational| t * BigRational::from_integer(n.into());
    let x1 = scale(pert.m1, &loc.theta1);
    let x2 = scale(pert.m2, &loc.theta2);
    let (gamma, delta) = (pert.alpha, pert.beta);

    let p0 = sigma(gamma, &x1).value;
    let q0 = sigma(delta, &x2).value;
    let p1 = parity_sign(gamma) * sigma(gamma.flip(), &x1).value;
    let q1 = parity_sign(delta) * sigma(delta.flip(), &x2).value;
    let f1 = parity_sign(lead.alpha) * sigma(lead.alpha.flip(), &scale(lead.m1, &loc.theta1)).value;
    let g1 = parity_sign(lead.beta) * sigma(lead.beta.flip(), &scale(lead.m2, &loc.theta2)).value;
    if f1 == 0 || g1 == 0 {
        return Err(Error::DegenerateSign(format!(
            "leading mode {lead} has a vanishing derivative factor at {loc}"
        )));
    }

    let smu = super::sign_of(mu);
    let a = smu * parity_sign(gamma) * sigma(gamma.flip(), &x1).value * q0;
    let b1 = smu * p0 * q0;
    let lead_part =
        if (k1 + k2 + lead.alpha.bit() as i64 + lead.beta.bit() as i64).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        } * (lead.m1 as f64 * lead.m2 as f64);
    let cross = (parity_sign(gamma) * parity_sign(delta)) as f64
        * mu
        * (pert.m1 as f64 * pert.m2 as f64)
        * (sigma(gamma.flip(), &x1).value * sigma(delta.flip(), &x2).value) as f64;
    let b2 = super::sign_of(lead_part + cross);
    let (n1, n2) = (pert.m1 as i64, pert.m2 as i64);
    let trace_factor = smu * p0 * q0 * super::sign_of((n2 * n2 - n1 * n1) as f64);

    Ok(TwoTermSigns {
        location: loc,
        p0,
        q0,
        p1,
        q1,
        f1,
        g1,
        triple: SignTriple { a, b1, b2 },
        trace_factor,
    })
}

/// Sign of the Nash-Hessian trace at the critical point continuing the
/// type-II point, or 0 when it is a center.
///
/// * `σ^γσ^δ = 0` at the lattice point: the perturbation factor is odd about
///   it, the flow is reversible and the point stays a center.
/// * `n₁ ≠ n₂`: the trace is `4π²μ·σ^γσ^δ·(n₂²−n₁²)` to first order.
/// * `n₁ = n₂`: the first-order trace cancels; the sign comes from the lead's
///   own diagonal `4π²(m₂²−m₁²)·f·g` evaluated at the displaced point, whose
///   factor signs follow from the Newton step `d = −μ H_Λ⁻¹ ∇Λ'`.
fn trace_sign(s: &TwoTermSigns, lead: &TrigMode, mu: f64, pert: &TrigMode) -> i8 {
    if s.p0 * s.q0 == 0 {
        return 0;
    }
    if pert.m1 != pert.m2 {
        return s.trace_factor;
    }
    if lead.m1 == lead.m2 || (s.p1 == 0 && s.q1 == 0) {
        return 0;
    }
    let smu = super::sign_of(mu);
    let (sf, sg) = match (s.p1 != 0, s.q1 != 0) {
        (true, true) => (-smu * s.p0 * s.q1 * s.g1, -smu * s.p1 * s.q0 * s.f1),
        (false, true) => {
            let sf = -smu * s.p0 * s.q1 * s.g1;
            (sf, smu * s.p0 * s.q0 * sf)
        }
        (true, false) => {
            let sg = -smu * s.p1 * s.q0 * s.f1;
            (smu * s.p0 * s.q0 * sg, sg)
        }
        (false, false) => unreachable!(),
    };
    let (m1, m2) = (lead.m1 as i64, lead.m2 as i64);
    super::sign_of((m2 * m2 - m1 * m1) as f64) * sf * sg
}

/// Classifies the critical point of `lead + μ·pert` that continues the type-II
/// point `(k₁, k₂)` of `lead`, from exact signs alone.
///
/// The reported location is the Newton-refined point when the gradient does not
/// vanish at the lattice point (and refinement succeeds); eigenvalues are
/// numeric at the reported location and informational only.
pub fn classify_two_term(
    lead: TrigMode,
    mu: f64,
    pert: TrigMode,
    k1: i64,
    k2: i64,
) -> Result<CriticalPointReport> {
    let s = two_term_signs(&lead, mu, &pert, k1, k2)?;
    let trace = trace_sign(&s, &lead, mu, &pert);
    let classification = match trace {
        -1 => Classification::SpiralAttractor,
        1 => Classification::SpiralRepulsor,
        _ => Classification::Center,
    };

    let poly = TrigPolynomial::two_term(lead, mu, pert);
    let mut note = None;
    let location = if s.gradient_vanishes() {
        Location::Exact(s.location.clone())
    } else {
        match refine_critical_point(&poly, s.location.to_point(), 1e-12, 50) {
            Ok(p) => Location::Refined(p),
            Err(e) => {
                note = Some(format!("refinement failed: {e}"));
                Location::Exact(s.location.clone())
            }
        }
    };
    let p = location.point();
    let h = nash_hessian(&poly, p);
    if classification == Classification::Center
        && h.trace.abs() > DEFAULT_CENTER_TOL * h.det.abs().sqrt()
    {
        note.get_or_insert_with(|| {
            "trace vanishes at the sign level; higher modes decide".to_string()
        });
    }
    Ok(CriticalPointReport {
        location,
        lattice_indices: Some((k1, k2)),
        point_type: PointType::II,
        classification,
        eigen: h.eigenvalues,
        morse_index: morse_index(&poly, p),
        trace_sign: trace,
        signs: Some(s.triple),
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(Parity::Sin, &rational(1, 4)).value, 1);
        assert_eq!(
            sigma(Parity::Cos, &rational(1, 4)),
            OneSided {
                left: 1,
                value: 0,
                right: -1
            }
        );
        assert_eq!(sigma(Parity::Sin, &rational(3, 4)).value, -1);
        assert_eq!(
            sigma(Parity::Sin, &rational(0, 1)),
            OneSided {
                left: -1,
                value: 0,
                right: 1
            }
        );
        assert_eq!(sigma(Parity::Cos, &rational(7, 4)).left, -1);
        assert_eq!(sigma(Parity::Cos, &rational(5, 8)).value, -1);
    }

    #[test]
    fn sigma_matches_floating_sign_away_from_zeros() {
        for num in 0..48 {
            let t = rational(num, 48);
            let x = num as f64 / 48.0;
            for (p, v) in [
                (Parity::Sin, (std::f64::consts::TAU * x).sin()),
                (Parity::Cos, (std::f64::consts::TAU * x).cos()),
            ] {
                let s = sigma(p, &t);
                if v.abs() > 1e-9 {
                    assert_eq!(s.value as f64, v.signum(), "{p:?} at {num}/48");
                    assert_eq!(s.left, s.value);
                } else {
                    assert_eq!(s.value, 0);
                    let l = p.apply(std::f64::consts::TAU * (x - 1e-6));
                    let r = p.apply(std::f64::consts::TAU * (x + 1e-6));
                    assert_eq!((s.left as f64, s.right as f64), (l.signum(), r.signum()));
                }
            }
        }
    }

    #[test]
    fn weak_odd_mode_breaks_into_spirals() {
        for (k1, k2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let r = classify_two_term(
                TrigMode::bits(1, 1, 0, 0),
                0.03,
                TrigMode::bits(3, 5, 1, 1),
                k1,
                k2,
            )
            .unwrap();
            assert!(
                r.classification.is_spiral(),
                "{k1},{k2}: {:?}",
                r.classification
            );
        }
    }

    #[test]
    fn equal_frequency_perturbation_keeps_centers() {
        for k1 in 0..4 {
            for k2 in 0..4 {
                let r = classify_two_term(
                    TrigMode::bits(2, 2, 0, 0),
                    0.02,
                    TrigMode::bits(4, 4, 1, 1),
                    k1,
                    k2,
                )
                .unwrap();
                assert_eq!(r.classification, Classification::Center);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(classify_two_term(
            TrigMode::bits(1, 0, 0, 1),
            0.1,
            TrigMode::bits(1, 1, 0, 0),
            0,
            0
        )
        .is_err());
        assert!(classify_two_term(
            TrigMode::bits(1, 1, 0, 0),
            1.5,
            TrigMode::bits(2, 1, 0, 0),
            0,
            0
        )
        .is_err());
    }

    #[test]
    fn sign_triple_for_cosine_pair() {
        // Λ¹¹₁₁ − 0.003·Λ¹¹₂₃ at (1/4, 1/4): the perturbing factors vanish there
        let s = two_term_signs(
            &TrigMode::bits(1, 1, 1, 1),
            -0.003,
            &TrigMode::bits(2, 3, 1, 1),
            0,
            0,
        )
        .unwrap();
        assert_eq!(s.location.to_string(), "(1/4, 1/4)");
        assert_eq!((s.p0, s.q0), (-1, 0));
        assert_eq!(s.triple, SignTriple { a: 0, b1: 0, b2: 1 });
    }
}
