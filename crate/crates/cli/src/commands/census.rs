use std::fs;
use std::path::{Path, PathBuf};

use deficit::census::{enumerate_with, histogram, write_signatures, CensusConfig, ManifoldFilter, DEFAULT_MAX_TETRAHEDRA};
use deficit::exec::Execution;
use deficit::recognition::{SphereRecognizer, BUDGET_ENV, DEFAULT_BUDGET};
use deficit::ValidityMode;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, EXIT_UNKNOWN};
use crate::manifest::{write_json, Run, VERSION};

/// Largest size accepted with `--allow-large`.
const LARGE_CEILING: usize = 9;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Enumerate every size from 1 up to this many tetrahedra.
    #[arg(long)]
    pub max_tets: usize,
    #[arg(long)]
    pub mode: ValidityMode,
    #[arg(long, default_value = "s3")]
    pub filter: ManifoldFilter,
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads; 1 runs sequentially, 0 picks automatically.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Exit with status 5 if any sphere recognition is inconclusive.
    #[arg(long)]
    pub fail_on_unknown: bool,
    /// Permit sizes beyond the default ceiling (slow).
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Level {
    pub n1: u64,
    pub count: u64,
}

/// JSON sidecar written next to each signature file.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Sidecar {
    pub version: String,
    #[serde(rename = "K")]
    pub k: u64,
    pub mode: String,
    pub filter: String,
    pub signature_file: String,
    pub total: u64,
    pub counts: Vec<Level>,
    pub unknown: u64,
    pub unknown_signatures: Vec<String>,
    pub rejected: u64,
    pub recognition_budget: usize,
}

pub fn file_stem(k: usize, mode: ValidityMode, filter: ManifoldFilter) -> String {
    format!("k{k}-{mode}-{filter}")
}

pub fn recognition_budget() -> Result<usize, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::invalid(format!("{BUDGET_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn run(args: Args, ctx: &Run) -> Result<(), CliError> {
    let ceiling = if args.allow_large { LARGE_CEILING } else { DEFAULT_MAX_TETRAHEDRA };
    if args.max_tets == 0 || args.max_tets > ceiling {
        return Err(deficit::census::CensusError::SizeOutOfRange {
            k: args.max_tets,
            max: ceiling,
        }
        .into());
    }
    let budget = recognition_budget()?;
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let recognizer = (args.filter == ManifoldFilter::Sphere).then(|| SphereRecognizer::new(budget));
    let mut outputs = Vec::new();
    let mut unknown_total = 0;
    for k in 1..=args.max_tets {
        let config = CensusConfig::new(k, args.mode)
            .filter(args.filter)
            .exec(Execution::from_jobs(args.jobs))
            .recognition_budget(budget)
            .max_tetrahedra(ceiling);
        let census = enumerate_with(&config, recognizer.as_ref())?;
        let stem = file_stem(k, args.mode, args.filter);
        let sig_path = args.out.join(format!("{stem}.sig"));
        write_signatures(&sig_path, &census).map_err(|e| CliError::io(&sig_path, e))?;
        let h = histogram(&census);
        let sidecar = Sidecar {
            version: VERSION.to_owned(),
            k: k as u64,
            mode: args.mode.to_string(),
            filter: args.filter.to_string(),
            signature_file: format!("{stem}.sig"),
            total: h.total(),
            counts: h.counts.iter().map(|(&n1, &count)| Level { n1, count }).collect(),
            unknown: h.unknown,
            unknown_signatures: census.unknown.clone(),
            rejected: census.rejected as u64,
            recognition_budget: budget,
        };
        let json_path = args.out.join(format!("{stem}.json"));
        write_json(&json_path, &sidecar)?;
        println!("K={k} {} {}: {} triangulations, {} unknown", args.mode, args.filter, h.total(), h.unknown);
        unknown_total += h.unknown;
        outputs.push(sig_path);
        outputs.push(json_path);
    }
    ctx.write(&args.out.join("manifest.json"), &[], &outputs)?;
    if args.fail_on_unknown && unknown_total > 0 {
        return Err(CliError::new(
            EXIT_UNKNOWN,
            "BudgetExceeded",
            format!("{unknown_total} sphere recognitions were inconclusive"),
        ));
    }
    Ok(())
}

/// Every sidecar in `dir`, sorted by file name.
pub fn read_sidecars(dir: &Path) -> Result<Vec<(PathBuf, Sidecar)>, CliError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json") && p.file_name().is_some_and(|n| n != "manifest.json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).map_err(|e| CliError::io(&p, e))?;
            let sidecar = serde_json::from_str(&text)
                .map_err(|e| CliError::new(crate::error::EXIT_INVALID, "ParseError", format!("{}: {e}", p.display())))?;
            Ok((p, sidecar))
        })
        .collect()
}
