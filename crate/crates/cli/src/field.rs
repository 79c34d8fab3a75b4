//! Field specifications: the literal `gan` or a path to a polynomial JSON file.

use std::path::Path;

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;
use torus_nash::{CostField, GanConfig, GanField, TrigPolynomial};

#[derive(Args, Clone, Debug, Serialize)]
pub struct GanArgs {
    /// True parameter of the data distribution.
    #[arg(long, default_value_t = 0.25)]
    pub omega: f64,
    /// Upper limit of the cost integrals.
    #[arg(long, default_value_t = 40.0)]
    pub x_cutoff: f64,
    /// Simpson nodes per integral (odd).
    #[arg(long, default_value_t = 401)]
    pub simpson_nodes: usize,
}

impl GanArgs {
    pub fn config(&self) -> GanConfig {
        GanConfig {
            omega: self.omega,
            x_cutoff: self.x_cutoff,
            simpson_nodes: self.simpson_nodes,
        }
    }
}

pub enum Field {
    Gan(GanField),
    Poly(TrigPolynomial),
}

impl Field {
    pub fn load(spec: &str, gan: &GanArgs) -> Result<Field> {
        if spec == "gan" {
            return Ok(Field::Gan(GanField::new(gan.config())?));
        }
        Ok(Field::Poly(load_polynomial(Path::new(spec))?))
    }

    pub fn as_cost(&self) -> &dyn CostField {
        match self {
            Field::Gan(g) => g,
            Field::Poly(p) => p,
        }
    }
}

pub fn load_polynomial(path: &Path) -> Result<TrigPolynomial> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading field spec {}", path.display()))?;
    TrigPolynomial::from_json(&text)
        .with_context(|| format!("parsing polynomial {}", path.display()))
}
