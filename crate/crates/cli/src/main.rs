mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use repvar::cohomology::DEFAULT_RANK_TOL;
use repvar::Error;

#[derive(Parser, Debug)]
#[command(name = "repvar", version, about = "SU(2) representation varieties, moduli polytopes and Bohr-Sommerfeld counts")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Relative rank tolerance.
    #[arg(long, global = true, env = "REPVAR_TOL")]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace polynomial of a word or of a two-bridge knot.
    TracePoly(commands::TracePolyArgs),
    /// Arcs of irreducible representations of a torus knot group.
    TorusKnot(commands::TorusKnotArgs),
    /// Sampled zero set of a two-bridge polynomial inside the trace region.
    ZeroSet(commands::ZeroSetArgs),
    /// Twisted cohomology dimensions with rank diagnostics.
    Cohomology(commands::CohomologyArgs),
    /// Regularity test for a knot group representation.
    Regularity(commands::RegularityArgs),
    /// Torsion of the twisted cochain complex.
    Torsion(commands::TorsionArgs),
    /// Volume of the moduli polytope of a trivalent graph.
    Polytope(commands::PolytopeArgs),
    /// Bohr-Sommerfeld fiber count.
    BsCount(commands::BsCountArgs),
    /// Verlinde formula value.
    Verlinde(commands::VerlindeArgs),
    /// Bohr-Sommerfeld levels of the height function on the sphere.
    SphereBs(commands::SphereBsArgs),
    /// Chern-Simons value of the trivial connection on a quotient of S^3.
    LensCs(commands::LensCsArgs),
}

/// Everything a subcommand produces. `config` is echoed with every format.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub csv: Option<String>,
    pub config: Vec<(&'static str, String)>,
    /// Set when the result was computed but a tolerance check failed.
    pub warning: Option<String>,
}

impl Report {
    pub fn new(text: String, json: serde_json::Value) -> Self {
        Report { text, json, csv: None, config: Vec::new(), warning: None }
    }

    pub fn with(mut self, key: &'static str, value: impl ToString) -> Self {
        self.config.push((key, value.to_string()));
        self
    }
}

pub struct Ctx {
    pub seed: u64,
    pub tol: f64,
}

fn render(name: &str, ctx: &Ctx, fmt: Format, r: &Report) -> repvar::Result<String> {
    let mut config = vec![
        ("command", name.to_string()),
        ("seed", ctx.seed.to_string()),
        ("tol", format!("{:e}", ctx.tol)),
    ];
    config.extend(r.config.iter().cloned());
    let echo = config
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(match fmt {
        Format::Text => format!("{}# config {echo}\n", r.text),
        Format::Csv => match &r.csv {
            Some(csv) => format!("{csv}# config {echo}\n"),
            None => return Err(Error::Invalid(format!("{name} has no csv output"))),
        },
        Format::Json => {
            let cfg: serde_json::Map<_, _> = config
                .into_iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
                .collect();
            let doc = serde_json::json!({ "result": r.json, "config": cfg });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
    })
}

fn run(cli: Cli) -> repvar::Result<Option<String>> {
    let tol = cli.global.tol.unwrap_or(DEFAULT_RANK_TOL);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Invalid(format!("tolerance {tol} outside (0, 1)")));
    }
    let ctx = Ctx { seed: cli.global.seed, tol };
    let (name, report) = match &cli.command {
        Command::TracePoly(a) => ("trace-poly", commands::trace_poly(a, &ctx)?),
        Command::TorusKnot(a) => ("torus-knot", commands::torus_knot(a, &ctx)?),
        Command::ZeroSet(a) => ("zero-set", commands::zero_set(a, &ctx)?),
        Command::Cohomology(a) => ("cohomology", commands::cohomology(a, &ctx)?),
        Command::Regularity(a) => ("regularity", commands::regularity(a, &ctx)?),
        Command::Torsion(a) => ("torsion", commands::torsion(a, &ctx)?),
        Command::Polytope(a) => ("polytope", commands::polytope(a, &ctx)?),
        Command::BsCount(a) => ("bs-count", commands::bs_count(a, &ctx)?),
        Command::Verlinde(a) => ("verlinde", commands::verlinde(a, &ctx)?),
        Command::SphereBs(a) => ("sphere-bs", commands::sphere_bs(a, &ctx)?),
        Command::LensCs(a) => ("lens-cs", commands::lens_cs(a, &ctx)?),
    };
    let out = render(name, &ctx, cli.global.format, &report)?;
    match &cli.global.output {
        Some(path) => std::fs::write(path, &out)?,
        None => std::io::stdout().write_all(out.as_bytes())?,
    }
    Ok(report.warning)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(w)) => {
            eprintln!("error: {w}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}
