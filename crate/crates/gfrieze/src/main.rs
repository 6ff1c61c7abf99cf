//! Command-line driver: parse a run configuration, compute the frieze, emit
//! the requested artifacts, and exit 0 only when the frieze check passes.
//!
//! Exit codes: 0 = verification passed, 1 = input error, 2 = verification
//! failed.

use gfrieze::ccmap::MapMode;
use gfrieze::config::{self, OutputKind, RunConfig};
use gfrieze::emit;
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

const USAGE: &str = "\
gfrieze - generalised friezes from a modified Caldero-Chapoton map

USAGE:
    gfrieze --config <file> [--mode <modified|original|integer>]
            [--out <dir>] [--emit <text,json,tikz,dot,report>] [--verify]
    gfrieze --seed-examples [--out <dir>]

FLAGS:
    --config <file>     run configuration (JSON)
    --mode <mode>       override the mode from the config
    --out <dir>         output directory (default: .)
    --emit <list>       comma-separated outputs, overriding the config
    --verify            force the report output; exit 2 when the check fails
    --seed-examples     write the two example configurations and exit
    --help              print this message
";

struct Args {
    config: Option<PathBuf>,
    mode: Option<String>,
    out: PathBuf,
    emit: Option<Vec<String>>,
    verify: bool,
    seed_examples: bool,
}

fn parse_args() -> Result<Args, String> {
    let mut args = Args {
        config: None,
        mode: None,
        out: PathBuf::from("."),
        emit: None,
        verify: false,
        seed_examples: false,
    };
    let mut it = std::env::args().skip(1);
    while let Some(flag) = it.next() {
        match flag.as_str() {
            "--config" => {
                let v = it.next().ok_or("--config needs a file argument")?;
                args.config = Some(PathBuf::from(v));
            }
            "--mode" => {
                args.mode = Some(it.next().ok_or("--mode needs an argument")?);
            }
            "--out" => {
                args.out = PathBuf::from(it.next().ok_or("--out needs a directory argument")?);
            }
            "--emit" => {
                let v = it.next().ok_or("--emit needs a comma-separated list")?;
                args.emit = Some(v.split(',').map(|s| s.trim().to_string()).collect());
            }
            "--verify" => args.verify = true,
            "--seed-examples" => args.seed_examples = true,
            "--help" | "-h" => {
                print!("{USAGE}");
                std::process::exit(0);
            }
            other => return Err(format!("unknown flag `{other}`")),
        }
    }
    Ok(args)
}

const EXAMPLE_MODIFIED: &str = include_str!("../configs/a5_modified.cfg");
const EXAMPLE_ORIGINAL: &str = include_str!("../configs/a5_original.cfg");

fn seed_examples(out: &PathBuf) -> std::io::Result<()> {
    std::fs::create_dir_all(out)?;
    for (name, body) in [
        ("a5_modified.cfg", EXAMPLE_MODIFIED),
        ("a5_original.cfg", EXAMPLE_ORIGINAL),
    ] {
        let path = out.join(name);
        std::fs::write(&path, body)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn apply_overrides(config: &mut RunConfig, args: &Args) -> Result<(), String> {
    if let Some(mode) = &args.mode {
        config.mode = MapMode::parse(mode).ok_or(format!("unknown mode `{mode}`"))?;
        if config.mode == MapMode::Original {
            config.r = config.t.clone();
        }
    }
    if let Some(list) = &args.emit {
        let mut set = BTreeSet::new();
        for name in list {
            let kind = OutputKind::parse(name).ok_or(format!("unknown output `{name}`"))?;
            set.insert(kind);
        }
        config.outputs = set;
    }
    if args.verify {
        config.outputs.insert(OutputKind::Report);
    }
    Ok(())
}

fn run() -> Result<bool, String> {
    let args = parse_args()?;
    if args.seed_examples {
        seed_examples(&args.out).map_err(|e| e.to_string())?;
        return Ok(true);
    }
    let path = args.config.clone().ok_or("missing --config (see --help)")?;
    let mut config = config::parse_config(&path).map_err(|e| e.to_string())?;
    apply_overrides(&mut config, &args)?;

    let ctx = config::build_context(&config).map_err(|e| e.to_string())?;
    let report = ctx.frieze_check();

    std::fs::create_dir_all(&args.out).map_err(|e| e.to_string())?;
    for kind in &config.outputs {
        let (name, body) = match kind {
            OutputKind::Text => ("frieze.txt", emit::emit_text(&ctx, &report)),
            OutputKind::Json => ("frieze.json", emit::emit_json(&ctx, &report)),
            OutputKind::Tikz => ("frieze.tex", emit::emit_tikz(&ctx)),
            OutputKind::Dot => ("quiver.dot", emit::emit_dot(&ctx)),
            OutputKind::Report => ("report.txt", emit::emit_report(&ctx, &report)),
        };
        let path = args.out.join(name);
        std::fs::write(&path, body).map_err(|e| e.to_string())?;
        println!("wrote {}", path.display());
    }

    let ones = report.defect_one_ends().len();
    println!(
        "frieze check: {} ({} of {} meshes have defect 1)",
        if report.pass { "pass" } else { "FAIL" },
        ones,
        report.meshes.len()
    );
    Ok(report.pass)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
