//! Spectrum → truncation → classification loop, increasing the truncation level
//! while centers persist.

use rayon::prelude::*;
use serde::Serialize;

use super::lattice::{basis_critical_points, type_i_point, type_ii_point};
use super::numeric::{classify_numeric, morse_index, refine_critical_point};
use super::report::{Classification, CriticalPointReport, PointType};
use super::sign::classify_two_term;
use super::{poincare_hopf_audit, DEFAULT_CENTER_TOL};
use crate::error::{Error, Result};
use crate::field::CostField;
use crate::spectral::{spectrum_fft, GridSamples, ModeTable};
use crate::trig::{TrigMode, TrigPolynomial};

#[derive(Clone, Debug, Serialize)]
pub struct PipelineConfig {
    pub grid: usize,
    pub max_freq: u32,
    pub max_s: usize,
    pub center_tol: f64,
    /// Neighbouring |ratio| values closer than this are treated as tied.
    pub similarity: f64,
    pub max_permutations: usize,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            grid: 64,
            max_freq: 10,
            max_s: 8,
            center_tol: DEFAULT_CENTER_TOL,
            similarity: 0.005,
            max_permutations: 64,
            newton_tol: 1e-12,
            newton_max_iter: 50,
        }
    }
}

/// Verdicts at one truncation level.
#[derive(Clone, Debug, Serialize)]
pub struct LevelSummary {
    pub s: usize,
    pub polynomial: TrigPolynomial,
    pub centers: usize,
    pub unresolved: usize,
    pub type_ii: Vec<Classification>,
    pub poincare_hopf: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineOutcome {
    pub s0: usize,
    pub reports: Vec<CriticalPointReport>,
    pub permutations_checked: usize,
    pub permutations_agree: bool,
    pub history: Vec<LevelSummary>,
    #[serde(skip)]
    pub table: ModeTable,
}

/// Runs the loop with default settings except for the grid, bandwidth and depth.
pub fn pipeline<F: CostField + ?Sized>(
    field: &F,
    grid: usize,
    max_freq: u32,
    max_s: usize,
) -> Result<PipelineOutcome> {
    pipeline_with(
        field,
        &PipelineConfig {
            grid,
            max_freq,
            max_s,
            ..PipelineConfig::default()
        },
    )
}

pub fn pipeline_with<F: CostField + ?Sized>(
    field: &F,
    cfg: &PipelineConfig,
) -> Result<PipelineOutcome> {
    if cfg.grid <= 2 * cfg.max_freq as usize {
        return Err(Error::GridTooSmall {
            n1: cfg.grid,
            n2: cfg.grid,
            max_freq: cfg.max_freq,
        });
    }
    let samples = GridSamples::from_field(field, cfg.grid, cfg.grid)?;
    let table = spectrum_fft(&samples, cfg.max_freq)?;
    pipeline_from_table(&table, cfg)
}

/// The classification loop on an already extracted spectrum.
pub fn pipeline_from_table(table: &ModeTable, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    let two_d = table.two_dimensional();
    let entries = two_d.entries();
    let mut history = Vec::new();
    for s in 0..=cfg.max_s {
        if entries.len() < s + 1 {
            return Err(Error::Exhausted {
                max_s: s.saturating_sub(1),
            });
        }
        let modes: Vec<(f64, TrigMode)> = entries[..=s].iter().map(|e| (e.coeff, e.mode)).collect();
        let reports = classify_level(&modes, cfg)?;
        let summary = summarize(s, &modes, &reports);
        let resolved = summary.centers == 0 && summary.unresolved == 0;
        history.push(summary);
        if resolved {
            let (checked, agree) = check_permutations(entries, s, cfg, &reports)?;
            return Ok(PipelineOutcome {
                s0: s,
                reports,
                permutations_checked: checked,
                permutations_agree: agree,
                history,
                table: two_d,
            });
        }
    }
    Err(Error::Exhausted { max_s: cfg.max_s })
}

fn summarize(s: usize, modes: &[(f64, TrigMode)], reports: &[CriticalPointReport]) -> LevelSummary {
    LevelSummary {
        s,
        polynomial: TrigPolynomial::from_terms(modes.iter().copied()),
        centers: reports
            .iter()
            .filter(|r| r.classification == Classification::Center)
            .count(),
        unresolved: reports
            .iter()
            .filter(|r| r.classification == Classification::Degenerate)
            .count(),
        type_ii: reports
            .iter()
            .filter(|r| r.point_type == PointType::II)
            .map(|r| r.classification)
            .collect(),
        poincare_hopf: poincare_hopf_audit(reports),
    }
}

/// Classifies every lattice point of the leading mode of `Σ cᵢ·Λᵢ` (leading
/// term first). Level 0 is the exact census; two two-dimensional terms use the
/// sign rule on type-II points; otherwise each lattice seed is refined and the
/// eigenvalues are read. A negative leading coefficient reverses the flow.
pub fn classify_level(
    modes: &[(f64, TrigMode)],
    cfg: &PipelineConfig,
) -> Result<Vec<CriticalPointReport>> {
    let (scale, lead) = modes[0];
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "leading coefficient must be finite and nonzero, got {scale}"
        )));
    }
    let orient = |r: CriticalPointReport| if scale < 0.0 { reversed(r) } else { r };
    if modes.len() == 1 {
        return Ok(basis_critical_points(lead)?
            .reports
            .into_iter()
            .map(orient)
            .collect());
    }
    let two_term = modes.len() == 2 && modes[1].1.is_two_dimensional();
    let poly = TrigPolynomial::from_terms(modes.iter().copied());
    let seeds: Vec<(PointType, i64, i64)> = [PointType::I, PointType::II]
        .into_iter()
        .flat_map(|t| {
            (0..2 * lead.m1 as i64)
                .flat_map(move |k1| (0..2 * lead.m2 as i64).map(move |k2| (t, k1, k2)))
        })
        .collect();
    seeds
        .par_iter()
        .map(|&(t, k1, k2)| {
            if t == PointType::II && two_term {
                let mut r = orient(classify_two_term(
                    lead,
                    modes[1].0 / scale,
                    modes[1].1,
                    k1,
                    k2,
                )?);
                r.morse_index = morse_index(&poly, r.point());
                return Ok(r);
            }
            let seed = match t {
                PointType::I => type_i_point(&lead, k1, k2),
                _ => type_ii_point(&lead, k1, k2),
            };
            let mut report = match refine_critical_point(
                &poly,
                seed.to_point(),
                cfg.newton_tol,
                cfg.newton_max_iter,
            )
            .and_then(|p| classify_numeric(&poly, p, cfg.center_tol))
            {
                Ok(r) => r,
                Err(e) => unresolved_report(&poly, seed.to_point(), e),
            };
            report.point_type = t;
            report.lattice_indices = Some((k1, k2));
            Ok(report)
        })
        .collect()
}

/// The same critical point under the time-reversed flow (field multiplied by
/// a negative constant).
fn reversed(mut r: CriticalPointReport) -> CriticalPointReport {
    r.classification = match r.classification {
        Classification::SpiralAttractor => Classification::SpiralRepulsor,
        Classification::SpiralRepulsor => Classification::SpiralAttractor,
        Classification::AttractingNode => Classification::RepellingNode,
        Classification::RepellingNode => Classification::AttractingNode,
        c => c,
    };
    r.eigen = [-r.eigen[0], -r.eigen[1]];
    r.trace_sign = -r.trace_sign;
    r.morse_index = 2 - r.morse_index;
    r
}

/// Refinement failures keep the seed and are reported as unresolved.
pub fn is_refinement_failure(r: &CriticalPointReport) -> bool {
    r.classification == Classification::Degenerate
        && r.note
            .as_deref()
            .is_some_and(|n| n.starts_with(REFINEMENT_FAILED))
}

const REFINEMENT_FAILED: &str = "refinement failed";

fn unresolved_report(
    poly: &TrigPolynomial,
    p: crate::trig::TorusPoint,
    e: Error,
) -> CriticalPointReport {
    let h = super::nash_hessian(poly, p);
    CriticalPointReport {
        location: super::report::Location::Refined(p),
        lattice_indices: None,
        point_type: PointType::Other,
        classification: Classification::Degenerate,
        eigen: h.eigenvalues,
        morse_index: morse_index(poly, p),
        trace_sign: 0,
        signs: None,
        note: Some(format!("{REFINEMENT_FAILED}: {e}")),
    }
}

/// Tied block straddling the truncation boundary between index `s` and `s+1`.
fn tied_block(
    entries: &[crate::spectral::ModeEntry],
    s: usize,
    similarity: f64,
) -> Option<(usize, usize)> {
    let r = |i: usize| entries[i].ratio.abs();
    if s + 1 >= entries.len() || s == 0 || (r(s) - r(s + 1)).abs() >= similarity {
        return None;
    }
    let mut lo = s;
    while lo > 1 && (r(lo - 1) - r(lo)).abs() < similarity {
        lo -= 1;
    }
    let mut hi = s + 1;
    while hi + 1 < entries.len() && (r(hi) - r(hi + 1)).abs() < similarity {
        hi += 1;
    }
    Some((lo, hi))
}

fn combinations(n: usize, k: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        if out.len() >= cap {
            break;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Re-runs the accepted level with every alternative selection from a tied
/// block; returns how many were checked and whether all still have no center.
fn check_permutations(
    entries: &[crate::spectral::ModeEntry],
    s: usize,
    cfg: &PipelineConfig,
    accepted: &[CriticalPointReport],
) -> Result<(usize, bool)> {
    let Some((lo, hi)) = tied_block(entries, s, cfg.similarity) else {
        return Ok((0, true));
    };
    let block: Vec<usize> = (lo..=hi).collect();
    let keep = s - lo + 1;
    let verdict = |reports: &[CriticalPointReport]| {
        reports
            .iter()
            .filter(|r| r.point_type == PointType::II)
            .map(|r| r.classification)
            .collect::<Vec<_>>()
    };
    let reference = verdict(accepted);
    let mut checked = 0;
    let mut agree = true;
    for pick in combinations(block.len(), keep, cfg.max_permutations + 1) {
        let chosen: Vec<usize> = pick.iter().map(|&i| block[i]).collect();
        if chosen.iter().copied().eq(lo..=s) {
            continue;
        }
        if checked >= cfg.max_permutations {
            break;
        }
        let mut modes: Vec<(f64, TrigMode)> =
            entries[..lo].iter().map(|e| (e.coeff, e.mode)).collect();
        modes.extend(chosen.iter().map(|&i| (entries[i].coeff, entries[i].mode)));
        let reports = classify_level(&modes, cfg)?;
        checked += 1;
        agree &= verdict(&reports) == reference;
    }
    Ok((checked, agree))
}
