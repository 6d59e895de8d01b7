use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mtf_core::input::load_module;
use mtf_core::mtf::{build_mtf_fan_with, BuildOptions, MTFFan, DEFAULT_SEED};
use mtf_core::oracle::{
    verify_dim_formula, verify_fan, verify_point, verify_structure, with_pool, SampleSet, VerifyOptions,
    DEFAULT_BOUND, DEFAULT_PAIR_BUDGET,
};
use mtf_core::output::{
    to_json_string, ClassifyJson, FanJson, PathsJson, PolytopeJson, VerifyJson, WallJson,
};
use mtf_core::presets::{preset, PRESET_NAMES};
use mtf_core::stability::StabilityVector;
use mtf_core::svg::render_svg;
use mtf_core::{Error, Module, Result};

/// Newton polytopes and fans of semistable torsion classes of quiver modules.
#[derive(Parser, Debug)]
#[command(name = "mtf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in example module.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES))]
    preset: Option<String>,
    /// JSON file describing an algebra and a module.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Write the result here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Seed for all random sampling.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The Newton polytope with its face lattice.
    Newton(Common),
    /// The fan with the torsion data of every cone.
    Fan(Common),
    /// The wall of the module.
    Wall(Common),
    /// The class of a single stability vector, checked against the definitions.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated rationals, e.g. `1,-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Brute-force checks at sampled stability vectors; exits with 1 on any violation.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Grid half-width.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
        /// Number of explicitly checked sample pairs.
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        pairs: usize,
    },
    /// Increasing paths of maximal cones and of Newton vertices.
    Paths(Common),
    /// SVG drawing of a fan in the plane.
    Svg(Common),
}

fn load(source: &Source) -> Result<Module> {
    match (&source.preset, &source.input) {
        (Some(name), None) => preset(name),
        (None, Some(path)) => load_module(&fs::read_to_string(path)?),
        _ => Err(Error::EmptyInput),
    }
}

fn build(common: &Common) -> Result<MTFFan> {
    let m = load(&common.source)?;
    let options = BuildOptions {
        seed: common.seed,
        ..BuildOptions::default()
    };
    with_pool(|| build_mtf_fan_with(&m, &options))
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.output {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Newton(c) => {
            let fan = build(&c)?;
            emit(&c, &to_json_string(&PolytopeJson::new(fan.polytope()))?)?;
        }
        Command::Fan(c) => {
            let fan = build(&c)?;
            emit(&c, &to_json_string(&FanJson::new(&fan))?)?;
        }
        Command::Wall(c) => {
            let fan = build(&c)?;
            emit(&c, &to_json_string(&WallJson::new(&fan)?)?)?;
        }
        Command::Classify { common, theta } => {
            let theta: StabilityVector = theta.parse()?;
            let fan = build(&common)?;
            fan.locate(&theta)?;
            let report = verify_point(&fan, &theta);
            let ok = report.is_ok();
            emit(&common, &to_json_string(&ClassifyJson::new(&fan, &theta, report)?)?)?;
            return Ok(ok);
        }
        Command::Verify { common, bound, pairs } => {
            let fan = build(&common)?;
            let samples = SampleSet::new(&fan, bound, common.seed);
            let options = VerifyOptions {
                pair_budget: pairs,
                seed: common.seed,
            };
            let sampled = verify_fan(&fan, &samples, options);
            let doc = VerifyJson::new(
                bound,
                common.seed,
                sampled,
                with_pool(|| verify_structure(&fan, bound)),
                verify_dim_formula(&fan),
            );
            emit(&common, &to_json_string(&doc)?)?;
            if !doc.ok {
                eprintln!("verify: {} violation(s)", doc.violation_count());
            }
            return Ok(doc.ok);
        }
        Command::Paths(c) => {
            let fan = build(&c)?;
            let cat = fan.fan_paths()?;
            emit(&c, &to_json_string(&PathsJson::new(&fan, &cat))?)?;
        }
        Command::Svg(c) => {
            let fan = build(&c)?;
            emit(&c, &render_svg(&fan)?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
