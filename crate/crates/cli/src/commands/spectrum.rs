use std::fmt::Write as _;
use std::path::PathBuf;

use deficit::exec::Execution;
use deficit::spectrum::{bracket, min_bracketing_k, n1_window, spectrum_levels, WalkupParams, DEFAULT_GAMMA_STAR};

use crate::error::CliError;
use crate::manifest::{sidecar_path, write_text, Run};
use crate::output::float;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Number of tetrahedra. With `--target` and no `--K`, the smallest
    /// bracketing size is used.
    #[arg(long = "K", short = 'K')]
    pub k: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_GAMMA_STAR, allow_hyphen_values = true)]
    pub gamma_star: i64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub edge_length: f64,
    /// Action per volume to bracket.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: Args, ctx: &Run) -> Result<(), CliError> {
    let params = WalkupParams::new(args.gamma_star, if args.gamma_star == DEFAULT_GAMMA_STAR { "S3 (Walkup)" } else { "user" })?;
    if !(args.edge_length > 0.0 && args.edge_length.is_finite()) {
        return Err(CliError::invalid(format!("edge length must be positive, got {}", args.edge_length)));
    }
    let k = match (args.k, args.target) {
        (Some(0), _) => return Err(CliError::invalid("K must be at least 1")),
        (Some(k), _) => k,
        (None, Some(x)) => min_bracketing_k(x, args.edge_length, params.gamma_star, Execution::default())?,
        (None, None) => return Err(CliError::invalid("either --K or --target is required")),
    };
    let found = args.target.map(|x| bracket(x, k, args.edge_length, params.gamma_star)).transpose()?;

    let window = n1_window(k, params.gamma_star);
    let mut csv = String::new();
    writeln!(csv, "# K={k} gamma_star={} ({}, assumed) edge_length={}", params.gamma_star, params.manifold, float(args.edge_length)).unwrap();
    writeln!(csv, "# action_per_volume in natural units; window {window}").unwrap();
    if let (Some(x), Some(b)) = (args.target, &found) {
        writeln!(
            csv,
            "# target {}: + marks n1={} (larger action), - marks n1={} (smaller action){}",
            float(x),
            b.upper.n1,
            b.lower.n1,
            if b.exact_hit { ", exact hit on +" } else { "" }
        )
        .unwrap();
    }
    writeln!(csv, "K,n1,mu_num,mu_den,action_per_volume,guaranteed,bracket").unwrap();
    for level in spectrum_levels(k, args.edge_length, params.gamma_star) {
        let side = match &found {
            Some(b) if b.upper.n1 == level.n1 => "+",
            Some(b) if b.lower.n1 == level.n1 => "-",
            _ => "",
        };
        writeln!(
            csv,
            "{},{},{},{},{},{},{side}",
            level.k,
            level.n1,
            level.mu.numer(),
            level.mu.denom(),
            float(level.action_per_volume),
            level.guaranteed
        )
        .unwrap();
    }
    match &args.out {
        Some(path) => {
            write_text(path, &csv)?;
            ctx.write(&sidecar_path(path), &[], std::slice::from_ref(path))
        }
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}
