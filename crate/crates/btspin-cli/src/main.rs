//! `btspin` — command-line front end for the branched twist spin
//! calculus.
//!
//! Every command is a thin composition of library operations; all
//! arithmetic and all output formatting live in the library so that the
//! printed bytes coincide with direct library calls.  Exit codes: 0 on
//! success, 1 on domain errors, 2 on parse errors (command line or knot
//! file).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use btspin::assembly::{
    apply_gluck, build_closed_complex, build_complement_complex, sphere_certificate, vankampen_pi1,
    PieceComplex,
};
use btspin::gluing::{identity_sweep, IdentityReport};
use btspin::knotfile::{parse_knot_file, KnotFileError, KnotPresentation};
use btspin::orbitdata::{classify, reduce_to_base, BTSIndex, Site, TwinState};

#[derive(Parser)]
#[command(name = "btspin", version, about = "Branched twist spin calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlongArg {
    /// Twist along the twin partner of (m, n).
    Partner,
    /// Twist along the knot (m, n) itself.
    #[value(name = "self")]
    SelfKnot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SiteArg {
    First,
    Second,
}

impl From<SiteArg> for Site {
    fn from(s: SiteArg) -> Site {
        match s {
            SiteArg::First => Site::First,
            SiteArg::Second => Site::Second,
        }
    }
}

#[derive(Args)]
struct ComplexMode {
    /// Use the closed five-piece decomposition.
    #[arg(long, conflicts_with_all = ["complement", "gluck"])]
    closed: bool,
    /// Use the two-piece complement decomposition (default).
    #[arg(long, conflicts_with = "gluck")]
    complement: bool,
    /// Apply the Gluck twist to the closed decomposition at this site.
    #[arg(long, value_enum)]
    gluck: Option<SiteArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the twin partner of an index pair.
    #[command(allow_negative_numbers = true)]
    Twin { m: i64, n: i64 },
    /// Rewrite an index pair by one Gluck twist.
    #[command(allow_negative_numbers = true)]
    Gluck {
        #[arg(long, value_enum)]
        along: AlongArg,
        m: i64,
        n: i64,
    },
    /// Run the Euclidean reduction to branch index 1 and print the trace.
    #[command(allow_negative_numbers = true)]
    Reduce { m: i64, n: i64 },
    /// Check the gluing-matrix identities over all coprime pairs up to a
    /// bound.
    #[command(allow_negative_numbers = true)]
    VerifyMatrices {
        #[arg(long)]
        max: i64,
    },
    /// Print the fundamental group presentation of the knot complement.
    #[command(allow_negative_numbers = true)]
    Pi1 {
        #[arg(long)]
        knot: PathBuf,
        m: i64,
        n: i64,
    },
    /// Print the first homology of a decomposition.
    #[command(allow_negative_numbers = true)]
    H1 {
        #[arg(long)]
        knot: PathBuf,
        m: i64,
        n: i64,
        #[command(flatten)]
        mode: ComplexMode,
    },
    /// Report the inequivalent-pair test for an index pair.
    #[command(allow_negative_numbers = true)]
    Classify {
        m: i64,
        n: i64,
        /// Assert that the branched twist spin is nontrivial.
        #[arg(long)]
        nontrivial: bool,
    },
    /// Print the partial 4-sphere certificate of the closed (optionally
    /// Gluck-twisted) decomposition.
    #[command(allow_negative_numbers = true)]
    Certify {
        #[arg(long)]
        knot: PathBuf,
        m: i64,
        n: i64,
        #[arg(long, value_enum)]
        gluck: Option<SiteArg>,
        /// Largest symmetric-group degree to enumerate (2..=6).
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
}

enum CliError {
    /// Domain-level failure; exit code 1.
    Domain(String),
    /// Knot-file parse failure; exit code 2.
    Parse(String),
}

impl From<KnotFileError> for CliError {
    fn from(e: KnotFileError) -> CliError {
        match e {
            KnotFileError::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<btspin::orbitdata::OrbitError> for CliError {
    fn from(e: btspin::orbitdata::OrbitError) -> CliError {
        CliError::Domain(e.to_string())
    }
}

impl From<btspin::assembly::AssemblyError> for CliError {
    fn from(e: btspin::assembly::AssemblyError) -> CliError {
        CliError::Domain(e.to_string())
    }
}

fn load_knot(path: &PathBuf) -> Result<KnotPresentation, CliError> {
    Ok(parse_knot_file(path)?)
}

fn gluck_complex(
    knot: &KnotPresentation,
    m: i64,
    n: i64,
    site: Site,
) -> Result<PieceComplex, CliError> {
    let closed = build_closed_complex(&knot.group, m, n)?;
    Ok(apply_gluck(&closed, site)?)
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Twin { m, n } => {
            let idx = BTSIndex::new(m, n)?;
            let partner = idx.twin_partner()?;
            Ok(format!("{idx} | partner {partner}\n"))
        }
        Command::Gluck { along, m, n } => {
            let idx = BTSIndex::new(m, n)?;
            let state = TwinState::new(idx)?;
            let site = match along {
                AlongArg::Partner => Site::Second,
                AlongArg::SelfKnot => Site::First,
            };
            let out = state.gluck_rewrite(site)?;
            Ok(format!("{} -> {}\n", idx, out.first()))
        }
        Command::Reduce { m, n } => {
            let idx = BTSIndex::new(m, n)?;
            Ok(format!("{}\n", reduce_to_base(idx)))
        }
        Command::VerifyMatrices { max } => {
            if max < 1 {
                return Err(CliError::Domain("--max must be at least 1".into()));
            }
            let sweep = identity_sweep(max);
            let mut out = String::new();
            out.push_str(&format!("{:<20}result\n", "identity"));
            for (name, ok) in IdentityReport::NAMES.iter().zip(sweep.per_identity) {
                out.push_str(&format!(
                    "{:<20}{}\n",
                    name,
                    if ok { "pass" } else { "fail" }
                ));
            }
            if sweep.all_hold() {
                out.push_str(&format!("all identities hold ({} pairs)\n", sweep.pairs));
                Ok(out)
            } else {
                out.push_str(&format!(
                    "identity failures on {} of {} pairs: {:?}\n",
                    sweep.failures.len(),
                    sweep.pairs,
                    sweep.failures
                ));
                Err(CliError::Domain(out))
            }
        }
        Command::Pi1 { knot, m, n } => {
            let knot = load_knot(&knot)?;
            let complement = build_complement_complex(&knot.group, m, n)?;
            let pi1 = vankampen_pi1(&complement)?;
            Ok(format!(
                "pi1 of complement ({m},{n}) of knot {}\n{}",
                knot.name, pi1
            ))
        }
        Command::H1 { knot, m, n, mode } => {
            let knot = load_knot(&knot)?;
            let (what, complex) = if mode.closed {
                (
                    format!("closed ({m},{n})"),
                    build_closed_complex(&knot.group, m, n)?,
                )
            } else if let Some(site) = mode.gluck {
                let site: Site = site.into();
                (
                    format!("gluck({site}) of closed ({m},{n})"),
                    gluck_complex(&knot, m, n, site)?,
                )
            } else {
                (
                    format!("complement ({m},{n})"),
                    build_complement_complex(&knot.group, m, n)?,
                )
            };
            let h1 = btspin::assembly::h1(&complex)?;
            Ok(format!("h1 of {what} of knot {}: {h1}\n", knot.name))
        }
        Command::Classify { m, n, nontrivial } => {
            let idx = BTSIndex::new(m, n)?;
            Ok(format!("{}\n", classify(idx, nontrivial)))
        }
        Command::Certify {
            knot,
            m,
            n,
            gluck,
            kmax,
        } => {
            let knot = load_knot(&knot)?;
            let (what, complex) = match gluck {
                Some(site) => {
                    let site: Site = site.into();
                    (
                        format!("gluck({site}) of closed ({m},{n})"),
                        gluck_complex(&knot, m, n, site)?,
                    )
                }
                None => (
                    format!("closed ({m},{n})"),
                    build_closed_complex(&knot.group, m, n)?,
                ),
            };
            let pi1 = vankampen_pi1(&complex)?;
            if pi1.num_generators() > 3 {
                return Err(CliError::Domain(format!(
                    "certificate enumeration is capped at 3 generators; this presentation has {}",
                    pi1.num_generators()
                )));
            }
            let report = sphere_certificate(&complex, kmax).map_err(|e| match e {
                btspin::assembly::AssemblyError::Group(g) => CliError::Domain(g.to_string()),
                other => CliError::Domain(other.to_string()),
            })?;
            Ok(format!(
                "certificate for {what} of knot {}\n{}\n",
                knot.name, report
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
