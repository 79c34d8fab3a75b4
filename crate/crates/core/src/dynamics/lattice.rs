//! Closed-form critical points of single Fourier modes.

use std::f64::consts::PI;

use num_complex::Complex;
use num_rational::BigRational;

use super::report::{Classification, CriticalPointReport, Location, PointType};
use crate::error::{Error, Result};
use crate::trig::{mode_exact_value, rational, Parity, RationalTorusPoint, TrigMode};

/// Type-I lattice point `((2k₁−α+1)/(4m₁), (2k₂−β+1)/(4m₂))`: an extremum of the
/// mode and a saddle of its Nash flow.
pub fn type_i_point(mode: &TrigMode, k1: i64, k2: i64) -> RationalTorusPoint {
    RationalTorusPoint::new(
        rational(2 * k1 - mode.alpha.bit() as i64 + 1, 4 * mode.m1 as i64),
        rational(2 * k2 - mode.beta.bit() as i64 + 1, 4 * mode.m2 as i64),
    )
}

/// Type-II lattice point `((2k₁+α)/(4m₁), (2k₂+β)/(4m₂))`: a saddle of the mode
/// and a center of its Nash flow.
pub fn type_ii_point(mode: &TrigMode, k1: i64, k2: i64) -> RationalTorusPoint {
    RationalTorusPoint::new(
        rational(2 * k1 + mode.alpha.bit() as i64, 4 * mode.m1 as i64),
        rational(2 * k2 + mode.beta.bit() as i64, 4 * mode.m2 as i64),
    )
}

/// All critical points of one basis mode.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisCensus {
    pub mode: TrigMode,
    pub reports: Vec<CriticalPointReport>,
    /// Number of zeros of the mode on the lattice of its nodal lines, `4m₁m₂`.
    pub zero_count: u64,
}

impl BasisCensus {
    pub fn count(&self, c: Classification) -> usize {
        self.reports
            .iter()
            .filter(|r| r.classification == c)
            .count()
    }
}

fn require_two_dimensional(mode: &TrigMode) -> Result<()> {
    if !mode.is_two_dimensional() {
        return Err(Error::NotTwoDimensional(mode.to_string()));
    }
    Ok(())
}

/// Enumerates the `8m₁m₂` critical points of `mode` with exact locations.
/// Eigenvalues come from the closed-form Nash Hessian at each lattice family.
pub fn basis_critical_points(mode: TrigMode) -> Result<BasisCensus> {
    require_two_dimensional(&mode)?;
    let (m1, m2) = (mode.m1 as i64, mode.m2 as i64);
    let four_pi2 = 4.0 * PI * PI;
    let mut reports = Vec::with_capacity((8 * m1 * m2) as usize);

    for k1 in 0..2 * m1 {
        for k2 in 0..2 * m2 {
            let loc = type_i_point(&mode, k1, k2);
            let v = mode_exact_value(&mode, &loc).ok_or_else(|| {
                Error::DegenerateSign(format!("type-I point {loc} is off the quarter lattice"))
            })? as f64;
            let mut ev = [
                four_pi2 * (m2 * m2) as f64 * v,
                -four_pi2 * (m1 * m1) as f64 * v,
            ];
            ev.sort_by(|a, b| b.total_cmp(a));
            reports.push(CriticalPointReport {
                location: Location::Exact(loc),
                lattice_indices: Some((k1, k2)),
                point_type: PointType::I,
                classification: Classification::Saddle,
                eigen: [Complex::new(ev[0], 0.0), Complex::new(ev[1], 0.0)],
                // maximum when the mode equals +1
                morse_index: if v > 0.0 { 2 } else { 0 },
                trace_sign: super::sign_of(-v * (m1 * m1 - m2 * m2) as f64),
                signs: None,
                note: None,
            });
        }
    }

    let dual = TrigMode::new(mode.m1, mode.m2, mode.alpha.flip(), mode.beta.flip());
    for k1 in 0..2 * m1 {
        for k2 in 0..2 * m2 {
            let loc = type_ii_point(&mode, k1, k2);
            let v = mode_exact_value(&dual, &loc).ok_or_else(|| {
                Error::DegenerateSign(format!("type-II point {loc} is off the quarter lattice"))
            })?;
            let w = four_pi2 * (m1 * m2) as f64 * v.abs() as f64;
            reports.push(CriticalPointReport {
                location: Location::Exact(loc),
                lattice_indices: Some((k1, k2)),
                point_type: PointType::II,
                classification: Classification::Center,
                eigen: [Complex::new(0.0, w), Complex::new(0.0, -w)],
                morse_index: 1,
                trace_sign: 0,
                signs: None,
                note: None,
            });
        }
    }

    Ok(BasisCensus {
        mode,
        reports,
        zero_count: (4 * m1 * m2) as u64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
    Constant,
}

/// Flow of a mode that depends on one coordinate only.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleAxisFlow {
    pub orientation: Orientation,
    pub critical_lines: Vec<BigRational>,
    pub attracting: Vec<bool>,
}

/// Describes the Nash flow of a single-variable mode. The zero-frequency factor
/// is taken as 1 whatever its parity, so the mode is read as a function of the
/// other coordinate alone.
pub fn single_axis_flow(mode: TrigMode) -> Result<SingleAxisFlow> {
    if mode.is_two_dimensional() {
        return Err(Error::NotSingleAxis(mode.to_string()));
    }
    let lines = |m: u32, parity: Parity| -> (Vec<BigRational>, Vec<i64>) {
        let m = m as i64;
        let ks: Vec<i64> = (0..2 * m).collect();
        let pts = ks
            .iter()
            .map(|&k| crate::trig::reduce_unit(&rational(2 * k - parity.bit() as i64 + 1, 4 * m)))
            .collect();
        (pts, ks)
    };
    match (mode.m1, mode.m2) {
        (0, 0) => Ok(SingleAxisFlow {
            orientation: Orientation::Constant,
            critical_lines: Vec::new(),
            attracting: Vec::new(),
        }),
        (m1, 0) => {
            // θ₁' = +∂₁F climbs to the maxima (even k)
            let (critical_lines, ks) = lines(m1, mode.alpha);
            Ok(SingleAxisFlow {
                orientation: Orientation::Horizontal,
                critical_lines,
                attracting: ks.iter().map(|k| k % 2 == 0).collect(),
            })
        }
        (_, m2) => {
            // θ₂' = −∂₂F descends to the minima (odd k)
            let (critical_lines, ks) = lines(m2, mode.beta);
            Ok(SingleAxisFlow {
                orientation: Orientation::Vertical,
                critical_lines,
                attracting: ks.iter().map(|k| k % 2 != 0).collect(),
            })
        }
    }
}

/// 2-adic valuation of `n ≥ 1`.
pub fn par(n: u64) -> u32 {
    assert!(n > 0, "par is undefined at 0");
    n.trailing_zeros()
}

/// Whether `Λ^{α+1,β+1}_{n₁,n₂}` vanishes at some type-II point of
/// `Λ^{α,β}_{m₁,m₂}`.
///
/// On axis 1 the factor `trig_{α+1}(π n₁(2k₁+α)/(2m₁))` has a zero for some
/// `k₁` exactly when `par(m₁) ≥ par(n₁)+1` (α = 0) or `par(m₁) ≤ par(n₁)−1`
/// (α = 1); the equality `par(m₁) = par(n₁) + (−1)^α` is the tightest instance.
pub fn vanishing_criterion(
    m1: u64,
    m2: u64,
    n1: u64,
    n2: u64,
    alpha: Parity,
    beta: Parity,
) -> bool {
    fn axis(m: u64, n: u64, p: Parity) -> bool {
        let (pm, pn) = (par(m) as i64, par(n) as i64);
        match p {
            Parity::Sin => pm >= pn + 1,
            Parity::Cos => pm <= pn - 1,
        }
    }
    axis(m1, n1, alpha) || axis(m2, n2, beta)
}
