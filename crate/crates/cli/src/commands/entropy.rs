use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use deficit::census::{entropy_curve, estimate_c, spearman, DegeneracyHistogram, ManifoldFilter};
use deficit::ValidityMode;

use super::census::read_sidecars;
use crate::error::CliError;
use crate::manifest::{sidecar_path, write_text, Run};
use crate::output::float;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Directory written by `census`.
    #[arg(long)]
    pub census: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Needed only when the directory holds both modes.
    #[arg(long)]
    pub mode: Option<ValidityMode>,
    #[arg(long, default_value = "s3")]
    pub filter: ManifoldFilter,
    /// Restrict to these sizes (repeatable).
    #[arg(long = "K", short = 'K')]
    pub sizes: Vec<u64>,
    /// Action per volume at which to estimate count ratios.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub target: f64,
}

pub fn run(args: Args, ctx: &Run) -> Result<(), CliError> {
    let all = read_sidecars(&args.census)?;
    let filter = args.filter.to_string();
    let modes: BTreeSet<&str> = all.iter().filter(|(_, s)| s.filter == filter).map(|(_, s)| s.mode.as_str()).collect();
    let mode = match (args.mode, modes.len()) {
        (Some(m), _) => m,
        (None, 1) => modes.first().unwrap().parse().map_err(CliError::invalid)?,
        (None, 0) => return Err(CliError::invalid(format!("no {filter} census in {}", args.census.display()))),
        (None, _) => return Err(CliError::invalid("census directory holds several modes; pass --mode")),
    };
    let mut inputs = Vec::new();
    let mut histograms = Vec::new();
    for (path, s) in all {
        if s.mode != mode.to_string() || s.filter != filter || !(args.sizes.is_empty() || args.sizes.contains(&s.k)) {
            continue;
        }
        histograms.push(DegeneracyHistogram {
            k: s.k,
            mode,
            counts: s.counts.iter().map(|l| (l.n1, l.count)).collect(),
            unknown: s.unknown,
        });
        inputs.push(path);
    }
    histograms.sort_by_key(|h| h.k);

    let points = entropy_curve(&histograms);
    let mut csv = String::new();
    writeln!(csv, "# {mode} {filter} census; natural units, l=1").unwrap();
    writeln!(csv, "K,n1,mu,action_per_volume,count,entropy_per_volume").unwrap();
    for p in &points {
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            p.k,
            p.n1,
            float(*p.mu.numer() as f64 / *p.mu.denom() as f64),
            float(p.action_per_volume),
            p.count,
            float(p.entropy_per_volume)
        )
        .unwrap();
    }
    write_text(&args.out, &csv)?;
    ctx.write(&sidecar_path(&args.out), &inputs, std::slice::from_ref(&args.out))?;

    println!("{} points from {} sizes", points.len(), histograms.len());
    if let Some(h) = histograms.iter().rev().find(|h| h.total() > 0) {
        let pts: Vec<_> = points.iter().filter(|p| p.k == h.k).collect();
        let xs: Vec<f64> = pts.iter().map(|p| p.action_per_volume).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.entropy_per_volume).collect();
        match spearman(&xs, &ys) {
            Some(r) => println!("K={}: Spearman(entropy, action) = {r:.6}", h.k),
            None => println!("K={}: Spearman(entropy, action) undefined ({} levels)", h.k, pts.len()),
        }
    }
    for h in histograms.iter().filter(|h| h.total() > 0) {
        match estimate_c(h, args.target) {
            Ok(c) => println!(
                "K={} x={}: count({})={} / count({})={} = {:.6} (estimate at this K only)",
                c.k, args.target, c.n1_plus, c.count_plus, c.n1_minus, c.count_minus, c.ratio
            ),
            Err(e) => println!("K={} x={}: {}", h.k, args.target, e),
        }
    }
    Ok(())
}
