//! Command-line front end: load rules and configurations, run automata,
//! analyze rules, compose them, verify compositions and inverses, and build
//! hyperbolic patches.
//!
//! Exit codes: 0 on success (holds / no obstruction / consistent), 1 when an
//! analysis or verification finds a violation (with a replayable witness on
//! stdout), 2 on validation or usage errors.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gset_ca::analysis;
use gset_ca::ca::Window;
use gset_ca::files::{parse_window, rule_file_from_triple, window_or_bounds, ConfigFile, RuleFile};
use gset_ca::group::Isometry;
use gset_ca::hyperbolic;
use gset_ca::render;
use gset_ca::{Configuration, ConstructionTriple, Error};

#[derive(Parser)]
#[command(name = "gset-ca", version, about = "Cellular automata on group-acted cell sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Step a configuration and write the result.
    Run(RunArgs),
    /// Analyze a rule: minimal memory, equivariance, or invariance.
    Analyze(AnalyzeArgs),
    /// Write the composed construction triple of two rules.
    Compose(ComposeArgs),
    /// Check the composed triple against stepping the two rules in turn.
    VerifyCompose(VerifyComposeArgs),
    /// Build or run the octagonal hyperbolic patch.
    #[command(subcommand)]
    Hyp(HypCommand),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_name = "FILE")]
    rule: PathBuf,
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    #[arg(long, value_name = "N")]
    steps: u64,
    /// Clip window "x0,y0,x1,y1"; defaults to the support box plus one.
    #[arg(long, value_name = "X0,Y0,X1,Y1", allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write every intermediate configuration, as `OUT_f<i>.<ext>`.
    #[arg(long)]
    frames: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Pgm,
    Svg,
    Json,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(subcommand)]
    what: AnalyzeCommand,
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Print the minimal memory set (the cells the rule actually reads).
    MinMemory {
        #[arg(long, value_name = "FILE")]
        rule: PathBuf,
    },
    /// Search the stabilizer obstruction set up to a radius and test the
    /// rule's invariance under every element found.
    Equivariance {
        #[arg(long, value_name = "FILE")]
        rule: PathBuf,
        #[arg(long, value_name = "R")]
        radius: i64,
    },
    /// Test the rule's invariance under the given origin-fixing isometries.
    Invariance {
        #[arg(long, value_name = "FILE")]
        rule: PathBuf,
        /// Isometry "A:tx,ty"; repeat for several elements.
        #[arg(long = "elements", value_name = "ISO", required = true)]
        elements: Vec<String>,
    },
}

#[derive(Args)]
struct ComposeArgs {
    #[arg(long, value_name = "FILE")]
    rule1: PathBuf,
    #[arg(long, value_name = "FILE")]
    rule2: PathBuf,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyComposeArgs {
    #[arg(long, value_name = "FILE")]
    rule1: PathBuf,
    #[arg(long, value_name = "FILE")]
    rule2: PathBuf,
    #[arg(long, value_name = "N", default_value_t = 100)]
    trials: u64,
    #[arg(long, value_name = "SEED")]
    seed: u64,
    #[arg(long, value_name = "R", default_value_t = 5)]
    radius: i64,
}

#[derive(Subcommand)]
enum HypCommand {
    /// Build a patch, print the per-ring cell counts, and render it.
    Build {
        #[arg(long, value_name = "L")]
        layers: u32,
        #[arg(long, value_name = "FILE.svg")]
        out: PathBuf,
    },
    /// Run the octagonal Game of Life on a patch.
    Run {
        #[arg(long, value_name = "L")]
        layers: u32,
        /// JSON array of alive cell ids.
        #[arg(long, value_name = "FILE")]
        alive: PathBuf,
        #[arg(long, value_name = "N")]
        steps: u64,
        #[arg(long, value_name = "FILE.svg")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Result<u8, Error> {
    match cmd {
        Command::Run(args) => cmd_run(args),
        Command::Analyze(args) => cmd_analyze(args.what),
        Command::Compose(args) => cmd_compose(args),
        Command::VerifyCompose(args) => cmd_verify_compose(args),
        Command::Hyp(args) => cmd_hyp(args),
    }
}

fn load_triple(path: &Path) -> Result<ConstructionTriple, Error> {
    RuleFile::read(path)?.into_triple()
}

fn write_rendered(
    tr: &ConstructionTriple,
    x: &Configuration,
    window: Option<Window>,
    format: Format,
    path: &Path,
) -> Result<(), Error> {
    let w = window_or_bounds(window, x);
    let contents = match format {
        Format::Text => render::config_text(x, tr.states(), w)?,
        Format::Pgm => render::config_pgm(x, tr.states(), w)?,
        Format::Svg => render::config_svg(x, tr.states(), w, tr.universe())?,
        Format::Json => ConfigFile::from_configuration(x).to_json(),
    };
    std::fs::write(path, contents)?;
    Ok(())
}

fn frame_path(out: &Path, i: u64) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("frame");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("txt");
    out.with_file_name(format!("{stem}_f{i}.{ext}"))
}

fn cmd_run(args: RunArgs) -> Result<u8, Error> {
    let tr = load_triple(&args.rule)?;
    let mut x = ConfigFile::read(&args.config)?.into_configuration()?;
    x.validate(tr.states())?;
    let window = args.window.as_deref().map(parse_window).transpose()?;

    for i in 1..=args.steps {
        x = tr.step(&x)?;
        if args.frames {
            write_rendered(&tr, &x, window, args.format, &frame_path(&args.out, i))?;
        }
    }
    write_rendered(&tr, &x, window, args.format, &args.out)?;
    Ok(0)
}

fn cmd_analyze(what: AnalyzeCommand) -> Result<u8, Error> {
    match what {
        AnalyzeCommand::MinMemory { rule } => {
            let tr = load_triple(&rule)?;
            let minimal = analysis::useful_cells(&tr)?;
            println!("minimal memory set: {} cells", minimal.len());
            for c in minimal.cells() {
                println!("  {c}");
            }
            Ok(0)
        }
        AnalyzeCommand::Equivariance { rule, radius } => {
            let tr = load_triple(&rule)?;
            let report = analysis::equivariance_check(&tr, radius)?;
            println!("{report}");
            Ok(if report.no_obstruction() { 0 } else { 1 })
        }
        AnalyzeCommand::Invariance { rule, elements } => {
            let tr = load_triple(&rule)?;
            let elements: Vec<Isometry> = elements
                .iter()
                .map(|e| e.parse())
                .collect::<Result<_, _>>()?;
            let reports = analysis::invariance_check(&tr, &elements)?;
            let mut all_hold = true;
            for report in &reports {
                println!("{report}");
                all_hold &= report.holds;
            }
            Ok(if all_hold { 0 } else { 1 })
        }
    }
}

fn cmd_compose(args: ComposeArgs) -> Result<u8, Error> {
    let first = load_triple(&args.rule1)?;
    let second = load_triple(&args.rule2)?;
    let composed = analysis::compose_triples(&first, &second)?;
    let file = rule_file_from_triple(&composed)?;
    std::fs::write(&args.out, file.to_json())?;
    println!(
        "composed memory set: {} cells; written to {}",
        composed.memory().len(),
        args.out.display()
    );
    Ok(0)
}

fn cmd_verify_compose(args: VerifyComposeArgs) -> Result<u8, Error> {
    let first = load_triple(&args.rule1)?;
    let second = load_triple(&args.rule2)?;
    let composed = analysis::compose_triples(&first, &second)?;
    let report = analysis::verify_composition(
        &first,
        &second,
        &composed,
        args.trials,
        args.seed,
        args.radius,
    )?;
    println!("{report}");
    Ok(if report.is_consistent() { 0 } else { 1 })
}

fn cmd_hyp(cmd: HypCommand) -> Result<u8, Error> {
    match cmd {
        HypCommand::Build { layers, out } => {
            let patch = hyperbolic::build_patch(layers)?;
            for (layer, count) in patch.layer_counts().iter().enumerate() {
                println!("layer {layer}: {count} cells");
            }
            println!("total: {} cells", patch.len());
            std::fs::write(&out, render::patch_svg(&patch, &BTreeSet::new())?)?;
            Ok(0)
        }
        HypCommand::Run {
            layers,
            alive,
            steps,
            out,
        } => {
            let patch = hyperbolic::build_patch(layers)?;
            let ids: Vec<usize> = serde_json::from_str(&std::fs::read_to_string(&alive)?)?;
            let mut alive: BTreeSet<usize> = ids.into_iter().collect();
            for &id in &alive {
                if id >= patch.len() {
                    return Err(Error::UnknownCell(id));
                }
            }
            for _ in 0..steps {
                alive = hyperbolic::hyp_gol_step(&patch, &alive)?;
            }
            let ids: Vec<usize> = alive.iter().copied().collect();
            println!("alive after {steps} steps: {ids:?}");
            std::fs::write(&out, render::patch_svg(&patch, &alive)?)?;
            Ok(0)
        }
    }
}
