use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use deficit::format::parse_triangulations;
use deficit::regge::regge_action_direct;
use deficit::ValidityMode;

use crate::error::CliError;
use crate::manifest::{sidecar_path, write_text, Run};
use crate::output::float;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Triangulation file (one or more blocks).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub edge_length: f64,
    /// Report only the action per unit volume.
    #[arg(long)]
    pub normalized: bool,
    #[arg(long, default_value = "lenient")]
    pub mode: ValidityMode,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: Args, ctx: &Run) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.input).map_err(|e| CliError::io(&args.input, e))?;
    let tris = parse_triangulations(&text, args.mode)?;
    if tris.is_empty() {
        return Err(CliError::invalid(format!("{}: no triangulation found", args.input.display())));
    }
    let mut report = String::new();
    for (i, t) in tris.iter().enumerate() {
        let value = regge_action_direct(t, args.edge_length)?;
        if args.normalized {
            writeln!(report, "{}", float(value.per_volume)).unwrap();
            continue;
        }
        let fv = t.f_vector();
        let mu = t.mean_edge_degree();
        if tris.len() > 1 {
            writeln!(report, "# triangulation {i}").unwrap();
        }
        writeln!(report, "tetrahedra       {}", fv.n3).unwrap();
        writeln!(report, "f-vector         {} {} {} {}", fv.n0, fv.n1, fv.n2, fv.n3).unwrap();
        writeln!(
            report,
            "mean degree      {}/{} = {}",
            mu.numer(),
            mu.denom(),
            float(*mu.numer() as f64 / *mu.denom() as f64)
        )
        .unwrap();
        writeln!(report, "edge length      {}", float(args.edge_length)).unwrap();
        writeln!(report, "action           {}", float(value.total)).unwrap();
        writeln!(report, "volume           {}", float(value.volume)).unwrap();
        writeln!(report, "action/volume    {}", float(value.per_volume)).unwrap();
    }
    match &args.out {
        Some(path) => {
            write_text(path, &report)?;
            ctx.write(&sidecar_path(path), std::slice::from_ref(&args.input), std::slice::from_ref(path))
        }
        None => {
            print!("{report}");
            Ok(())
        }
    }
}
