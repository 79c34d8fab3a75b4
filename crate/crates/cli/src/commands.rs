//! Subcommand implementations. Each returns the process exit code.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::json;
use torus_nash::{
    classify_level, integrate, is_refinement_failure, locate_critical_points, pipeline_with,
    poincare_hopf_audit, portrait, portrait_csv, render_portrait, spectrum_fft, Classification,
    CostField, CriticalPointReport, FlowKind, GridSamples, ModeTable, PipelineConfig, Portrait,
    SvgOptions, TorusPoint, TrigMode, TrigPolynomial, DEFAULT_CENTER_TOL,
};

use crate::field::{load_polynomial, Field, GanArgs};
use crate::manifest::Recorder;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DEFERRED: u8 = 2;
pub const EXIT_NO_CONVERGENCE: u8 = 3;

const TABLE_ROWS: usize = 10;

fn table_layout(table: &ModeTable, rows: usize) -> String {
    let mut out = format!(
        "{:>4} {:>4} {:>3} {:>3} {:>12} {:>9}\n",
        "m1", "m2", "a", "b", "coeff", "ratio"
    );
    for e in table.entries().iter().take(rows) {
        out += &format!(
            "{:>4} {:>4} {:>3} {:>3} {:>12.5} {:>9.4}\n",
            e.mode.m1,
            e.mode.m2,
            e.mode.alpha.bit(),
            e.mode.beta.bit(),
            e.coeff,
            e.ratio
        );
    }
    out
}

fn spectrum(field: &Field, grid: usize, max_freq: u32) -> Result<ModeTable> {
    let samples = GridSamples::from_field(field.as_cost(), grid, grid)?;
    Ok(spectrum_fft(&samples, max_freq)?)
}

pub struct CoeffsArgs {
    pub field: String,
    pub grid: usize,
    pub max_freq: u32,
    pub all_modes: bool,
    pub gan: GanArgs,
    pub out: PathBuf,
}

pub fn coeffs(a: CoeffsArgs) -> Result<u8> {
    let started = Instant::now();
    let field = Field::load(&a.field, &a.gan)?;
    let mut table = spectrum(&field, a.grid, a.max_freq)?;
    if !a.all_modes {
        table = table.two_dimensional();
    }
    let mut rec = Recorder::new("coeffs", &a.out, started)?;
    rec.param("field", &a.field)
        .param("grid", a.grid)
        .param("max_freq", a.max_freq)
        .param("all_modes", a.all_modes);
    if matches!(field, Field::Gan(_)) {
        rec.param("gan", &a.gan);
    }
    rec.write("coeffs.csv", &table.to_csv())?;
    print!("{}", table_layout(&table, TABLE_ROWS));
    rec.finish(EXIT_OK)?;
    Ok(EXIT_OK)
}

pub struct GanTableArgs {
    pub grid: usize,
    pub max_freq: u32,
    pub rows: usize,
    pub gan: GanArgs,
    pub out: PathBuf,
}

pub fn gan_table(a: GanTableArgs) -> Result<u8> {
    let started = Instant::now();
    let field = Field::load("gan", &a.gan)?;
    let table = spectrum(&field, a.grid, a.max_freq)?.two_dimensional();
    let top = ModeTable::from_coefficients(
        table
            .entries()
            .iter()
            .take(a.rows)
            .map(|e| (e.mode, e.coeff)),
    );
    let mut rec = Recorder::new("gan-table", &a.out, started)?;
    rec.param("grid", a.grid)
        .param("max_freq", a.max_freq)
        .param("rows", a.rows)
        .param("gan", &a.gan);
    rec.write("table1.csv", &top.to_csv())?;
    print!("{}", table_layout(&top, a.rows));
    rec.finish(EXIT_OK)?;
    Ok(EXIT_OK)
}

pub struct ClassifyArgs {
    pub poly: Option<PathBuf>,
    pub lead: Option<TrigMode>,
    pub mu: Option<f64>,
    pub pert: Option<TrigMode>,
    pub out: PathBuf,
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    polynomial: &'a TrigPolynomial,
    method: &'static str,
    poincare_hopf: i64,
    reports: &'a [CriticalPointReport],
}

/// Terms ordered for classification: the dominant two-dimensional mode first,
/// then the rest by decreasing magnitude.
fn ordered_terms(poly: &TrigPolynomial) -> Vec<(f64, TrigMode)> {
    let mut terms: Vec<(f64, TrigMode)> = poly
        .terms()
        .iter()
        .filter(|t| t.mode.max_frequency() > 0)
        .map(|t| (t.coeff, t.mode))
        .collect();
    terms.sort_by(|a, b| {
        b.0.abs()
            .total_cmp(&a.0.abs())
            .then(a.1.tie_key().cmp(&b.1.tie_key()))
    });
    if let Some(i) = terms.iter().position(|t| t.1.is_two_dimensional()) {
        let lead = terms.remove(i);
        terms.insert(0, lead);
    }
    terms
}

fn verdict_code(reports: &[CriticalPointReport]) -> u8 {
    if reports.iter().any(is_refinement_failure) {
        EXIT_NO_CONVERGENCE
    } else if reports.iter().any(|r| {
        matches!(
            r.classification,
            Classification::Center | Classification::Degenerate
        )
    }) {
        EXIT_DEFERRED
    } else {
        EXIT_OK
    }
}

pub fn classify(a: ClassifyArgs) -> Result<u8> {
    let started = Instant::now();
    let poly = match (&a.poly, a.lead, a.mu, a.pert) {
        (Some(path), None, None, None) => load_polynomial(path)?,
        (None, Some(lead), Some(mu), Some(pert)) => {
            if !lead.is_two_dimensional() {
                bail!("--lead must have both frequencies >= 1, got {lead}");
            }
            TrigPolynomial::two_term(lead, mu, pert)
        }
        _ => bail!("give either a polynomial JSON path or all of --lead, --mu and --pert"),
    };
    let terms = ordered_terms(&poly);
    let (reports, method) = match terms.first() {
        Some(t) if t.1.is_two_dimensional() => {
            let method = if terms.len() == 2 && terms[1].1.is_two_dimensional() {
                "sign-rule"
            } else {
                "newton"
            };
            (classify_level(&terms, &PipelineConfig::default())?, method)
        }
        Some(_) => {
            bail!("{poly} has no two-dimensional mode; its critical sets are lines, not points")
        }
        None => (Vec::new(), "none"),
    };
    let checksum = poincare_hopf_audit(&reports);
    let body = serde_json::to_string_pretty(&ClassifyReport {
        polynomial: &poly,
        method,
        poincare_hopf: checksum,
        reports: &reports,
    })? + "\n";
    let code = verdict_code(&reports);
    let mut rec = Recorder::new("classify", &a.out, started)?;
    rec.param("poly", a.poly.as_ref().map(|p| p.display().to_string()))
        .param("lead", a.lead.map(|m| m.to_string()))
        .param("mu", a.mu)
        .param("pert", a.pert.map(|m| m.to_string()));
    rec.write("classify.json", &body)?;
    print!("{body}");
    rec.finish(code)?;
    Ok(code)
}

pub struct FlowArgs {
    pub field: String,
    pub flow: FlowKind,
    pub seed: TorusPoint,
    pub dt: f64,
    pub steps: usize,
    pub gan: GanArgs,
    pub out: PathBuf,
}

pub fn flow(a: FlowArgs) -> Result<u8> {
    let started = Instant::now();
    let field = Field::load(&a.field, &a.gan)?;
    let traj = integrate(field.as_cost(), a.flow, a.seed, a.dt, a.steps)?;
    let end = traj.last();
    let single = Portrait {
        seeds: vec![a.seed],
        trajectories: vec![traj],
        failures: Vec::new(),
        field_descriptor: field.as_cost().describe(),
        flow: a.flow,
    };
    let mut rec = Recorder::new("flow", &a.out, started)?;
    rec.param("field", &a.field)
        .param("flow", a.flow)
        .param("seed", [a.seed.theta1, a.seed.theta2])
        .param("dt", a.dt)
        .param("steps", a.steps);
    if matches!(field, Field::Gan(_)) {
        rec.param("gan", &a.gan);
    }
    rec.write("trajectory.csv", &portrait_csv(&single))?;
    println!("{} -> {end} after t = {}", a.seed, a.dt * a.steps as f64);
    rec.finish(EXIT_OK)?;
    Ok(EXIT_OK)
}

pub struct PortraitArgs {
    pub field: String,
    pub flow: FlowKind,
    pub seed_grid: usize,
    pub dt: f64,
    pub steps: usize,
    pub gan: GanArgs,
    pub out: PathBuf,
}

/// Markers for the portrait: critical points located from a seed grid fine
/// enough for the field's bandwidth. Constant fields have none.
fn markers(field: &dyn CostField) -> Vec<(TorusPoint, Classification)> {
    let freq = field.max_frequency();
    if freq == Some(0) {
        return Vec::new();
    }
    let n = 8 * freq.unwrap_or(1).max(1) as usize;
    let p = TorusPoint::new(0.0, 0.0);
    let tol = if field.analytic_gradient(p).is_some() {
        1e-12
    } else {
        1e-9
    };
    locate_critical_points(field, n, tol, DEFAULT_CENTER_TOL)
        .into_iter()
        .map(|r| (r.point(), r.classification))
        .collect()
}

pub fn portrait_cmd(a: PortraitArgs) -> Result<u8> {
    let started = Instant::now();
    let field = Field::load(&a.field, &a.gan)?;
    let cost = field.as_cost();
    let p = portrait(cost, a.flow, a.seed_grid, a.dt, a.steps)?;
    let marks = markers(cost);
    let mut rec = Recorder::new("portrait", &a.out, started)?;
    rec.param("field", &a.field)
        .param("flow", a.flow)
        .param("seed_grid", a.seed_grid)
        .param("dt", a.dt)
        .param("steps", a.steps);
    if matches!(field, Field::Gan(_)) {
        rec.param("gan", &a.gan);
    }
    for (i, e) in &p.failures {
        rec.warn(format!("seed {i} ({}): {e}", p.seeds[*i]));
    }
    rec.write(
        "portrait.svg",
        &render_portrait(&p, &marks, &SvgOptions::default()),
    )?;
    rec.write("portrait.csv", &portrait_csv(&p))?;
    println!(
        "{} trajectories, {} failures, {} critical points",
        p.trajectories.len(),
        p.failures.len(),
        marks.len()
    );
    for (pt, c) in &marks {
        println!("  {pt} {}", c.as_str());
    }
    rec.finish(EXIT_OK)?;
    Ok(EXIT_OK)
}

pub struct PipelineArgs {
    pub field: String,
    pub grid: usize,
    pub max_freq: u32,
    pub max_s: usize,
    pub gan: GanArgs,
    pub out: PathBuf,
}

pub fn pipeline_cmd(a: PipelineArgs) -> Result<u8> {
    let started = Instant::now();
    let field = Field::load(&a.field, &a.gan)?;
    let cfg = PipelineConfig {
        grid: a.grid,
        max_freq: a.max_freq,
        max_s: a.max_s,
        ..PipelineConfig::default()
    };
    let outcome = pipeline_with(field.as_cost(), &cfg)?;
    let used: Vec<_> = outcome
        .table
        .entries()
        .iter()
        .take(outcome.s0 + 1)
        .collect();
    let body = serde_json::to_string_pretty(&json!({
        "field": field.as_cost().describe(),
        "config": cfg,
        "s0": outcome.s0,
        "modes": used,
        "poincare_hopf": poincare_hopf_audit(&outcome.reports),
        "permutations_checked": outcome.permutations_checked,
        "permutations_agree": outcome.permutations_agree,
        "reports": outcome.reports,
        "history": outcome.history,
    }))? + "\n";
    let mut rec = Recorder::new("pipeline", &a.out, started)?;
    rec.param("field", &a.field)
        .param("grid", a.grid)
        .param("max_freq", a.max_freq)
        .param("max_s", a.max_s)
        .param("s0", outcome.s0);
    if matches!(field, Field::Gan(_)) {
        rec.param("gan", &a.gan);
    }
    if !outcome.permutations_agree {
        rec.warn("a tied-mode permutation changes the type-II verdicts");
    }
    rec.write("pipeline.json", &body)?;
    rec.write("pipeline_modes.csv", &outcome.table.to_csv())?;
    println!("s0 = {}", outcome.s0);
    for h in &outcome.history {
        let verdicts: Vec<&str> = h.type_ii.iter().map(|c| c.as_str()).collect();
        println!("  s = {}: {}", h.s, verdicts.join(" "));
    }
    rec.finish(EXIT_OK)?;
    Ok(EXIT_OK)
}
