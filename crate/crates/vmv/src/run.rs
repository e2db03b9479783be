use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;

use crate::args::{Cli, Format};
use crate::commands::{execute, Report};
use crate::config::{resolve, Settings};
use crate::error::{CliError, Result, EXIT_OK};
use crate::manifest::{write_artifact, Artifact, RunManifest};

/// Runs `vmv` on `args` (program name first) against the process's stdout and stderr.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (out, err) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut out.lock(), &mut err.lock())
}

fn diagnose(err: &mut dyn Write, e: &CliError) -> u8 {
    let _ = writeln!(err, "{}", e.to_json());
    e.exit_code()
}

/// Runs `vmv` with explicit output streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => return diagnose(err, &CliError::Usage(e.render().to_string().trim_end().to_string())),
    };
    let settings = match resolve(&cli.global) {
        Ok(s) => s,
        Err(e) => return diagnose(err, &e),
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();

    if let Err(source) = std::fs::create_dir_all(&settings.out_dir) {
        return diagnose(err, &CliError::Io { path: settings.out_dir.clone(), source });
    }
    let start = Instant::now();
    let outcome = execute(&cli.command, &settings).and_then(|r| emit(&r, &cli, &settings).map(|(a, text)| (r, a, text)));
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let name = cli.command.name();
    let params = serde_json::to_value(&cli.command).expect("arguments serialize").get(name).cloned().unwrap_or(Value::Null);
    let mut manifest = RunManifest {
        tool: "vmv".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        subcommand: name.into(),
        argv,
        params,
        budget: settings.budget.0.to_string(),
        strategy: None,
        threads: settings.threads,
        seed: settings.seed,
        format: settings.format.extension().into(),
        config_file: settings.config_path.as_ref().map(|p| p.display().to_string()),
        status: "ok".into(),
        exit_code: EXIT_OK,
        error: None,
        wall_time_ms,
        artifacts: Vec::new(),
        details: Value::Null,
    };
    let code = match outcome {
        Ok((report, artifact, text)) => {
            manifest.strategy = report.strategy.map(|s| s.name().to_string());
            manifest.details = report.details;
            manifest.artifacts.push(artifact);
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            manifest.status = "error".into();
            manifest.exit_code = e.exit_code();
            manifest.error = Some(e.to_json()["error"].clone());
            diagnose(err, &e)
        }
    };
    match manifest.write(&settings.out_dir) {
        Ok(()) => code,
        Err(e) if code == EXIT_OK => diagnose(err, &e),
        Err(_) => code,
    }
}

/// Writes the artifact; returns its manifest entry and the stdout text.
fn emit(report: &Report, cli: &Cli, settings: &Settings) -> Result<(Artifact, String)> {
    let name = cli.command.name();
    let (file, text) = match settings.format {
        Format::Json => {
            let mut pretty = serde_json::to_string_pretty(&report.json).expect("json");
            pretty.push('\n');
            let mut compact = serde_json::to_string(&report.json).expect("json");
            compact.push('\n');
            (pretty, compact)
        }
        Format::Csv => {
            let csv = report
                .csv
                .clone()
                .ok_or_else(|| CliError::Usage(format!("--format csv is only available for tables and ladders, not {name}")))?;
            (csv.clone(), csv)
        }
    };
    let artifact = write_artifact(&settings.out_dir, &format!("{name}.{}", settings.format.extension()), file.as_bytes())?;
    Ok((artifact, text))
}
