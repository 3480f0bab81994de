use std::path::PathBuf;

use deficit::nearly_flat::{cosmological_constant, cosmological_constant_exact, mantissa_exponent, CosmologyResult};
use serde::Serialize;

use crate::error::CliError;
use crate::manifest::{sidecar_path, write_json, Run};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Co-moving volume in cubic meters.
    #[arg(long, default_value_t = 3.5e80, allow_hyphen_values = true)]
    pub volume: f64,
    /// Planck length in meters.
    #[arg(long, default_value_t = 1.6e-35, allow_hyphen_values = true)]
    pub planck_length: f64,
    /// Use the exact expectation with degeneracy ratio `--C`.
    #[arg(long, requires = "c")]
    pub exact: bool,
    #[arg(long = "C", id = "c", allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Replace the state count (exact model only).
    #[arg(long = "N", requires = "exact")]
    pub n: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
pub struct Report {
    pub planck_length_m: f64,
    pub volume_m3: f64,
    pub volume_natural: f64,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "delta_A")]
    pub delta_a: f64,
    pub expected_action: f64,
    pub lambda: f64,
    pub lambda_log10: f64,
    pub lambda_mantissa: f64,
    pub lambda_exponent: i32,
    #[serde(rename = "alpha_G")]
    pub alpha_g: f64,
    pub model: &'static str,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
}

impl From<CosmologyResult> for Report {
    fn from(r: CosmologyResult) -> Self {
        let (lambda_mantissa, lambda_exponent) = mantissa_exponent(r.lambda_log10);
        Self {
            planck_length_m: r.planck_length_m,
            volume_m3: r.volume_m3,
            volume_natural: r.volume_natural,
            n: r.n,
            delta_a: r.delta_a,
            expected_action: r.expected_action,
            lambda: r.lambda,
            lambda_log10: r.lambda_log10,
            lambda_mantissa,
            lambda_exponent,
            alpha_g: r.alpha_g,
            model: r.model.as_str(),
            c: r.c,
        }
    }
}

pub fn run(args: Args, ctx: &Run) -> Result<(), CliError> {
    let result = match (args.exact, args.c) {
        (true, Some(c)) => cosmological_constant_exact(args.planck_length, args.volume, c, args.n)?,
        (false, Some(_)) => return Err(CliError::invalid("--C only applies with --exact")),
        _ => cosmological_constant(args.planck_length, args.volume)?,
    };
    let report = Report::from(result);
    match &args.out {
        Some(path) => {
            write_json(path, &report)?;
            ctx.write(&sidecar_path(path), &[], std::slice::from_ref(path))
        }
        None => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            Ok(())
        }
    }
}
