//! Fourier coefficient extraction: rectangular-rule quadrature, 2-D FFT,
//! ranked mode tables and normalized truncations.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::CostField;
use crate::trig::{wrap_unit, TorusPoint, TrigMode, TrigPolynomial};

/// Coefficients whose magnitude falls below this are dropped from FFT tables.
pub const DROP_THRESHOLD: f64 = 1e-12;
/// Magnitudes within this distance are considered tied when ranking.
pub const TIE_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_GRID: usize = 64;

/// Uniform samples `value[i][j] = F(i/n1, j/n2)`, stored row-major
/// (`values[i * n2 + j]`).
#[derive(Clone, Debug, PartialEq)]
pub struct GridSamples {
    n1: usize,
    n2: usize,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct GridSidecar {
    n1: usize,
    n2: usize,
}

impl GridSamples {
    pub fn new(n1: usize, n2: usize, values: Vec<f64>) -> Result<Self> {
        if n1 < 2 || n2 < 2 {
            return Err(Error::InvalidGrid(format!(
                "need n1, n2 >= 2, got {n1}x{n2}"
            )));
        }
        if values.len() != n1 * n2 {
            return Err(Error::InvalidGrid(format!(
                "expected {} values for a {n1}x{n2} grid, got {}",
                n1 * n2,
                values.len()
            )));
        }
        Ok(GridSamples { n1, n2, values })
    }

    /// Samples `field` on the grid, one rayon task per row.
    pub fn from_field<F: CostField + ?Sized>(field: &F, n1: usize, n2: usize) -> Result<Self> {
        if n1 < 2 || n2 < 2 {
            return Err(Error::InvalidGrid(format!(
                "need n1, n2 >= 2, got {n1}x{n2}"
            )));
        }
        let rows: Vec<Vec<f64>> = (0..n1)
            .into_par_iter()
            .map(|i| {
                (0..n2)
                    .map(|j| {
                        field.evaluate(TorusPoint::new(i as f64 / n1 as f64, j as f64 / n2 as f64))
                    })
                    .collect()
            })
            .collect();
        let values: Vec<f64> = rows.into_iter().flatten().collect();
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            let p = TorusPoint::new((k / n2) as f64 / n1 as f64, (k % n2) as f64 / n2 as f64);
            return Err(Error::NonFinite(p));
        }
        GridSamples::new(n1, n2, values)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n2 + j]
    }

    pub fn point(&self, i: usize, j: usize) -> TorusPoint {
        TorusPoint::new(i as f64 / self.n1 as f64, j as f64 / self.n2 as f64)
    }

    /// One grid row per line, values comma-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n1 {
            let row: Vec<String> = (0..self.n2)
                .map(|j| format!("{}", self.get(i, j)))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut n1 = 0;
        let mut n2 = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let row = line
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            match n2 {
                None => n2 = Some(row.len()),
                Some(n) if n != row.len() => {
                    return Err(Error::InvalidGrid(format!(
                        "ragged row {n1}: {} values, expected {n}",
                        row.len()
                    )))
                }
                _ => {}
            }
            values.extend(row);
            n1 += 1;
        }
        GridSamples::new(n1, n2.unwrap_or(0), values)
    }

    /// Writes `<stem>.csv` and the `<stem>.json` sidecar into `dir`.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
        let csv = dir.join(format!("{stem}.csv"));
        let json = dir.join(format!("{stem}.json"));
        fs::write(&csv, self.to_csv())?;
        fs::write(
            &json,
            serde_json::to_string(&GridSidecar {
                n1: self.n1,
                n2: self.n2,
            })?,
        )?;
        Ok((csv, json))
    }

    pub fn read(csv: &Path, sidecar: &Path) -> Result<Self> {
        let meta: GridSidecar = serde_json::from_str(&fs::read_to_string(sidecar)?)?;
        let grid = GridSamples::from_csv(&fs::read_to_string(csv)?)?;
        if grid.n1 != meta.n1 || grid.n2 != meta.n2 {
            return Err(Error::InvalidGrid(format!(
                "sidecar says {}x{}, csv holds {}x{}",
                meta.n1, meta.n2, grid.n1, grid.n2
            )));
        }
        Ok(grid)
    }
}

/// Periodic bilinear interpolation, so stored samples can stand in for a field.
impl CostField for GridSamples {
    fn evaluate(&self, p: TorusPoint) -> f64 {
        let x = wrap_unit(p.theta1) * self.n1 as f64;
        let y = wrap_unit(p.theta2) * self.n2 as f64;
        let (i0, j0) = (x.floor() as usize % self.n1, y.floor() as usize % self.n2);
        let (i1, j1) = ((i0 + 1) % self.n1, (j0 + 1) % self.n2);
        let (fx, fy) = (x - x.floor(), y - y.floor());
        let a = self.get(i0, j0) * (1.0 - fy) + self.get(i0, j1) * fy;
        let b = self.get(i1, j0) * (1.0 - fy) + self.get(i1, j1) * fy;
        a * (1.0 - fx) + b * fx
    }

    fn describe(&self) -> String {
        format!("{}x{} grid samples", self.n1, self.n2)
    }
}

/// Normalization δ: 1 for the constant, 2 with one zero frequency, 4 otherwise.
pub fn normalization(mode: &TrigMode) -> f64 {
    match (mode.m1 == 0, mode.m2 == 0) {
        (true, true) => 1.0,
        (false, false) => 4.0,
        _ => 2.0,
    }
}

fn nyquist_guard(nodes: usize, mode: &TrigMode) -> Result<()> {
    let required = 2 * mode.max_frequency() as usize + 2;
    if nodes < required {
        return Err(Error::Aliasing {
            nodes,
            frequency: mode.max_frequency(),
            required,
        });
    }
    Ok(())
}

/// δ · rectangular-rule integral of `F · Λ` over `[0,1)²` with
/// `nodes_per_axis²` samples.
pub fn coefficient_quadrature<F: CostField + ?Sized>(
    field: &F,
    mode: TrigMode,
    nodes_per_axis: usize,
) -> Result<f64> {
    nyquist_guard(nodes_per_axis, &mode)?;
    let n = nodes_per_axis;
    let sum: f64 = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let p = TorusPoint::new(i as f64 / n as f64, j as f64 / n as f64);
                    field.evaluate(p) * mode.eval(p)
                })
                .sum::<f64>()
        })
        .collect::<Vec<_>>()
        .iter()
        .sum();
    Ok(normalization(&mode) * sum / (n * n) as f64)
}

/// Same rule applied to pre-computed samples (no re-evaluation of the field).
pub fn coefficient_from_samples(samples: &GridSamples, mode: TrigMode) -> Result<f64> {
    nyquist_guard(samples.n1.min(samples.n2), &mode)?;
    let mut sum = 0.0;
    for i in 0..samples.n1 {
        for j in 0..samples.n2 {
            sum += samples.get(i, j) * mode.eval(samples.point(i, j));
        }
    }
    Ok(normalization(&mode) * sum / (samples.n1 * samples.n2) as f64)
}

/// One row of a [`ModeTable`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeEntry {
    pub mode: TrigMode,
    pub coeff: f64,
    pub ratio: f64,
}

/// Modes ranked by descending `|coeff|`; `ratio = coeff / coeff_0`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModeTable {
    entries: Vec<ModeEntry>,
}

impl ModeTable {
    /// Ranks the given coefficients. Magnitudes within [`TIE_TOLERANCE`] of
    /// their neighbour are ordered by `(m1+m2, m1, α, β)`.
    pub fn from_coefficients(coeffs: impl IntoIterator<Item = (TrigMode, f64)>) -> Self {
        let mut rows: Vec<(TrigMode, f64)> = coeffs.into_iter().collect();
        rows.sort_by(|a, b| {
            b.1.abs()
                .total_cmp(&a.1.abs())
                .then_with(|| a.0.tie_key().cmp(&b.0.tie_key()))
        });
        // Re-order runs of near-equal magnitudes deterministically.
        let mut start = 0;
        while start < rows.len() {
            let mut end = start + 1;
            while end < rows.len() && (rows[end - 1].1.abs() - rows[end].1.abs()) <= TIE_TOLERANCE {
                end += 1;
            }
            rows[start..end].sort_by_key(|r| r.0.tie_key());
            start = end;
        }
        let lead = rows.first().map_or(1.0, |r| r.1);
        ModeTable {
            entries: rows
                .into_iter()
                .map(|(mode, coeff)| ModeEntry {
                    mode,
                    coeff,
                    ratio: coeff / lead,
                })
                .collect(),
        }
    }

    pub fn entries(&self) -> &[ModeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, mode: &TrigMode) -> Option<&ModeEntry> {
        self.entries.iter().find(|e| e.mode == *mode)
    }

    /// Only modes with both frequencies ≥ 1, ratios renormalized to the new lead.
    pub fn two_dimensional(&self) -> ModeTable {
        ModeTable::from_coefficients(
            self.entries
                .iter()
                .filter(|e| e.mode.is_two_dimensional())
                .map(|e| (e.mode, e.coeff)),
        )
    }

    pub fn to_polynomial(&self) -> TrigPolynomial {
        TrigPolynomial::from_terms(self.entries.iter().map(|e| (e.coeff, e.mode)))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m1,m2,alpha,beta,coeff,ratio\n");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
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

    /// Parses the CSV layout written by [`ModeTable::to_csv`]; the ratio column
    /// is recomputed from the coefficients.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "m1,m2,alpha,beta,coeff,ratio" => {}
            other => return Err(Error::Parse(format!("unexpected header {other:?}"))),
        }
        let rows = lines
            .map(|line| {
                let cols: Vec<&str> = line.split(',').map(str::trim).collect();
                if cols.len() != 6 {
                    return Err(Error::Parse(format!("expected 6 columns: {line:?}")));
                }
                let mode: TrigMode = cols[..4].join(",").parse()?;
                let coeff = cols[4]
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("{:?}: {e}", cols[4])))?;
                Ok((mode, coeff))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModeTable::from_coefficients(rows))
    }
}

fn fft2(samples: &GridSamples) -> Vec<Complex<f64>> {
    let (n1, n2) = (samples.n1, samples.n2);
    let mut data: Vec<Complex<f64>> = samples
        .values
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    let row_fft = planner.plan_fft_forward(n2);
    for row in data.chunks_exact_mut(n2) {
        row_fft.process(row);
    }
    let col_fft = planner.plan_fft_forward(n1);
    let mut col = vec![Complex::new(0.0, 0.0); n1];
    for j in 0..n2 {
        for i in 0..n1 {
            col[i] = data[i * n2 + j];
        }
        col_fft.process(&mut col);
        for i in 0..n1 {
            data[i * n2 + j] = col[i];
        }
    }
    data
}

/// All real sin/cos coefficients with `0 ≤ m1, m2 ≤ max_freq` from a 2-D DFT
/// of the samples, ranked; entries below [`DROP_THRESHOLD`] are omitted.
pub fn spectrum_fft(samples: &GridSamples, max_freq: u32) -> Result<ModeTable> {
    let (n1, n2) = (samples.n1, samples.n2);
    let k = max_freq as usize;
    if n1 <= 2 * k || n2 <= 2 * k {
        return Err(Error::GridTooSmall { n1, n2, max_freq });
    }
    let spec = fft2(samples);
    let scale = 1.0 / (n1 * n2) as f64;
    let c = |a: i64, b: i64| -> Complex<f64> {
        let i = a.rem_euclid(n1 as i64) as usize;
        let j = b.rem_euclid(n2 as i64) as usize;
        spec[i * n2 + j] * scale
    };

    let mut coeffs = Vec::new();
    for m1 in 0..=max_freq {
        for m2 in 0..=max_freq {
            let (a, b) = (m1 as i64, m2 as i64);
            match (m1, m2) {
                (0, 0) => coeffs.push((TrigMode::bits(0, 0, 1, 1), c(0, 0).re)),
                (_, 0) => {
                    let z = c(a, 0);
                    coeffs.push((TrigMode::bits(m1, 0, 1, 1), 2.0 * z.re));
                    coeffs.push((TrigMode::bits(m1, 0, 0, 1), -2.0 * z.im));
                }
                (0, _) => {
                    let z = c(0, b);
                    coeffs.push((TrigMode::bits(0, m2, 1, 1), 2.0 * z.re));
                    coeffs.push((TrigMode::bits(0, m2, 1, 0), -2.0 * z.im));
                }
                _ => {
                    let p = c(a, b);
                    let m = c(a, -b);
                    coeffs.push((TrigMode::bits(m1, m2, 1, 1), 2.0 * (p + m).re));
                    coeffs.push((TrigMode::bits(m1, m2, 0, 0), -2.0 * (p - m).re));
                    coeffs.push((TrigMode::bits(m1, m2, 0, 1), -2.0 * (p + m).im));
                    coeffs.push((TrigMode::bits(m1, m2, 1, 0), -2.0 * (p - m).im));
                }
            }
        }
    }
    coeffs.retain(|(_, v)| v.abs() >= DROP_THRESHOLD);
    Ok(ModeTable::from_coefficients(coeffs))
}

/// Normalized truncation `Λ_lead + Σ_{i=1..s} ratio_i Λ_i` over the fully
/// two-dimensional modes of `table`.
pub fn truncate_spectrum(table: &ModeTable, s: usize) -> Result<TrigPolynomial> {
    let two_d = table.two_dimensional();
    if two_d.len() < s + 1 {
        return Err(Error::NotEnoughModes {
            needed: s + 1,
            available: two_d.len(),
        });
    }
    Ok(TrigPolynomial::from_terms(
        two_d.entries[..=s].iter().map(|e| (e.ratio, e.mode)),
    ))
}

/// Splits `F = Δ₁(θ₁) + Δ₂(θ₂) + Θ(θ₁, θ₂)`; the constant is shared equally
/// between the two single-variable parts.
pub fn split_superposition(
    poly: &TrigPolynomial,
) -> (TrigPolynomial, TrigPolynomial, TrigPolynomial) {
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    let mut theta = Vec::new();
    for t in poly.terms() {
        match (t.mode.m1 == 0, t.mode.m2 == 0) {
            (true, true) => {
                d1.push((t.coeff / 2.0, t.mode));
                d2.push((t.coeff / 2.0, t.mode));
            }
            (false, true) => d1.push((t.coeff, t.mode)),
            (true, false) => d2.push((t.coeff, t.mode)),
            (false, false) => theta.push((t.coeff, t.mode)),
        }
    }
    (
        TrigPolynomial::from_terms(d1),
        TrigPolynomial::from_terms(d2),
        TrigPolynomial::from_terms(theta),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_of(poly: &TrigPolynomial, n: usize) -> GridSamples {
        GridSamples::from_field(poly, n, n).unwrap()
    }

    #[test]
    fn quadrature_orthonormality() {
        let f = TrigPolynomial::single(1.0, TrigMode::bits(1, 2, 1, 1));
        let a = coefficient_quadrature(&f, TrigMode::bits(1, 2, 1, 1), 64).unwrap();
        assert!((a - 1.0).abs() < 1e-12);
        let b = coefficient_quadrature(&f, TrigMode::bits(2, 1, 1, 1), 64).unwrap();
        assert!(b.abs() < 1e-12);
    }

    #[test]
    fn quadrature_rejects_aliasing() {
        let f = TrigPolynomial::constant(1.0);
        let err = coefficient_quadrature(&f, TrigMode::bits(3, 1, 1, 1), 7).unwrap_err();
        assert!(matches!(err, Error::Aliasing { required: 8, .. }));
        assert!(coefficient_quadrature(&f, TrigMode::bits(3, 1, 1, 1), 8).is_ok());
    }

    #[test]
    fn fft_pure_mode_and_constant() {
        let cc = TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 1, 1));
        let t = spectrum_fft(&grid_of(&cc, 16), 4).unwrap();
        let big: Vec<_> = t
            .entries()
            .iter()
            .filter(|e| e.coeff.abs() > 1e-10)
            .collect();
        assert_eq!(big.len(), 1);
        assert_eq!(big[0].mode, TrigMode::bits(1, 1, 1, 1));
        assert!((big[0].coeff - 1.0).abs() < 1e-12);

        let c = TrigPolynomial::constant(3.5);
        let t = spectrum_fft(&grid_of(&c, 16), 4).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.entries()[0].mode, TrigMode::constant());
        assert!((t.entries()[0].coeff - 3.5).abs() < 1e-12);
    }

    #[test]
    fn fft_parity_mapping_round_trip() {
        // one term of every parity/frequency shape
        let poly = TrigPolynomial::from_terms([
            (0.7, TrigMode::bits(0, 0, 1, 1)),
            (1.1, TrigMode::bits(2, 0, 1, 1)),
            (-0.4, TrigMode::bits(3, 0, 0, 1)),
            (0.25, TrigMode::bits(0, 1, 1, 1)),
            (0.9, TrigMode::bits(0, 2, 1, 0)),
            (0.3, TrigMode::bits(1, 2, 0, 0)),
            (-0.6, TrigMode::bits(2, 1, 0, 1)),
            (0.45, TrigMode::bits(3, 3, 1, 0)),
            (-0.2, TrigMode::bits(1, 3, 1, 1)),
        ]);
        let t = spectrum_fft(&grid_of(&poly, 16), 3).unwrap();
        for term in poly.terms() {
            let got = t.get(&term.mode).map_or(0.0, |e| e.coeff);
            assert!(
                (got - term.coeff).abs() < 1e-12,
                "{}: {got} vs {}",
                term.mode,
                term.coeff
            );
        }
        assert_eq!(t.len(), poly.len());
    }

    #[test]
    fn fft_rejects_small_grid() {
        let c = TrigPolynomial::constant(1.0);
        let g = grid_of(&c, 8);
        assert!(matches!(
            spectrum_fft(&g, 4),
            Err(Error::GridTooSmall { .. })
        ));
        assert!(spectrum_fft(&g, 3).is_ok());
    }

    fn reference_table() -> ModeTable {
        ModeTable::from_coefficients([
            (TrigMode::bits(1, 1, 1, 1), 0.06127),
            (TrigMode::bits(1, 2, 1, 1), 0.01102),
            (TrigMode::bits(2, 1, 1, 1), -0.00503),
            (TrigMode::bits(2, 2, 1, 1), -0.00404),
            (TrigMode::bits(2, 3, 1, 1), -0.00325),
        ])
    }

    #[test]
    fn truncation_levels() {
        let t = reference_table();
        let p0 = truncate_spectrum(&t, 0).unwrap();
        assert_eq!(p0, TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 1, 1)));
        let p1 = truncate_spectrum(&t, 1).unwrap();
        assert!((p1.coefficient(&TrigMode::bits(1, 2, 1, 1)) - 0.1800).abs() < 5e-4);
        let p4 = truncate_spectrum(&t, 4).unwrap();
        assert_eq!(p4.len(), 5);
        let last = p4.terms()[4];
        assert_eq!(last.mode, TrigMode::bits(2, 3, 1, 1));
        assert!((last.coeff + 0.0532).abs() < 5e-4);
        assert!(matches!(
            truncate_spectrum(&t, 5),
            Err(Error::NotEnoughModes {
                needed: 6,
                available: 5
            })
        ));
    }

    #[test]
    fn truncation_skips_single_axis_modes() {
        let t = ModeTable::from_coefficients([
            (TrigMode::constant(), -1.4),
            (TrigMode::bits(1, 1, 1, 1), 0.06),
            (TrigMode::bits(2, 0, 1, 1), -0.015),
            (TrigMode::bits(1, 2, 1, 1), 0.012),
        ]);
        let p = truncate_spectrum(&t, 1).unwrap();
        assert_eq!(p.terms()[0].coeff, 1.0);
        assert_eq!(p.terms()[1].mode, TrigMode::bits(1, 2, 1, 1));
    }

    #[test]
    fn ties_are_ordered_deterministically() {
        let t = ModeTable::from_coefficients([
            (TrigMode::bits(2, 1, 1, 1), 0.5),
            (TrigMode::bits(1, 2, 1, 1), -0.5),
            (TrigMode::bits(1, 1, 1, 1), 1.0),
        ]);
        let modes: Vec<_> = t.entries().iter().map(|e| e.mode).collect();
        assert_eq!(
            modes,
            vec![
                TrigMode::bits(1, 1, 1, 1),
                TrigMode::bits(1, 2, 1, 1),
                TrigMode::bits(2, 1, 1, 1)
            ]
        );
        assert_eq!(t.entries()[0].ratio, 1.0);
    }

    #[test]
    fn csv_round_trip() {
        let t = reference_table();
        let text = t.to_csv();
        assert!(text.starts_with("m1,m2,alpha,beta,coeff,ratio\n1,1,1,1,0.06127,1\n"));
        assert_eq!(ModeTable::from_csv(&text).unwrap(), t);
    }

    #[test]
    fn grid_csv_round_trip() {
        let p = TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 0, 1));
        let g = GridSamples::from_field(&p, 4, 6).unwrap();
        assert_eq!(g.get(1, 0), p.eval(TorusPoint::new(0.25, 0.0)));
        let back = GridSamples::from_csv(&g.to_csv()).unwrap();
        assert_eq!(back, g);
        let dir = std::env::temp_dir().join(format!("grid-rt-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let (csv, json) = g.write(&dir, "samples").unwrap();
        assert_eq!(GridSamples::read(&csv, &json).unwrap(), g);
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn grid_rejects_degenerate_shapes() {
        assert!(GridSamples::new(1, 4, vec![0.0; 4]).is_err());
        assert!(GridSamples::new(2, 2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn superposition_examples() {
        let p = TrigPolynomial::from_terms([
            (1.0, TrigMode::bits(3, 0, 1, 0)),
            (1.0, TrigMode::bits(1, 1, 0, 0)),
        ]);
        let (d1, d2, th) = split_superposition(&p);
        assert_eq!(d1, TrigPolynomial::single(1.0, TrigMode::bits(3, 0, 1, 0)));
        assert!(d2.is_empty());
        assert_eq!(th, TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 0, 0)));

        let (d1, d2, th) = split_superposition(&TrigPolynomial::constant(3.0));
        assert_eq!(d1, TrigPolynomial::constant(1.5));
        assert_eq!(d2, TrigPolynomial::constant(1.5));
        assert!(th.is_empty());

        let only = TrigPolynomial::single(2.0, TrigMode::bits(2, 3, 1, 1));
        assert_eq!(split_superposition(&only).2, only);
    }
}
