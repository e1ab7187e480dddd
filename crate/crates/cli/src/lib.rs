//! Command-line front end: builds or loads a model, runs the verification
//! suite and renders reports.
//!
//! Exit statuses: 0 when every requested check passes, 1 when a check
//! fails, 2 for usage or config errors.

mod args;
pub mod config;
pub mod render;
pub mod run;
pub mod words;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::Parser;
use serde_json::json;

pub use args::{Cli, Command};
pub use config::{CheckKind, ModelSource, RunConfig};
pub use render::{emit_report, Format};
pub use run::{resolve_model, run, Report};

use hqmm_core::aklt::dense_contraction;
use hqmm_core::grouprep::{cocycle_eval, detect_nontrivial_class, pairing_table, TwoCocycle};
use hqmm_core::hqmm::finite_volume_state;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] hqmm_core::Error),
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses arguments, runs the command, writes to `out`/`err` and returns
/// the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Verify(a) => {
            let print_config = a.print_config;
            let (config, format, output) = a.into_run_config()?;
            if print_config {
                writeln!(out, "{}", config.to_json()).map_err(stdout_error)?;
                return Ok(EXIT_PASS);
            }
            let report = run(&config)?;
            let bytes = emit_report(&report, format);
            if let Some(path) = output {
                fs::write(&path, emit_report(&report, Format::Json)).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    source: e,
                })?;
            }
            out.write_all(&bytes).map_err(stdout_error)?;
            Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Eval(a) => {
            let model = resolve_model(&a.model_source()?, a.structure)?;
            let labels: Option<Vec<String>> = model.aklt.as_ref().map(|m| m.metadata().labels.to_vec());
            let word = words::parse_word_spec(
                &a.word,
                model.triple.hidden_dim(),
                model.triple.obs_dim(),
                labels.as_deref(),
            )?;
            let value = finite_volume_state(&model.triple, model.structure, &word)?;
            let oracle = if a.oracle {
                Some(dense_contraction(&model.triple, model.structure, &word)?)
            } else {
                None
            };
            match a.format {
                Format::Json => {
                    let mut body = json!({
                        "structure": model.structure,
                        "length": word.len(),
                        "value": { "re": value.re, "im": value.im },
                    });
                    if let Some(o) = oracle {
                        body["oracle"] = json!({ "re": o.re, "im": o.im });
                    }
                    let s = serde_json::to_string_pretty(&body).expect("serializes");
                    writeln!(out, "{s}").map_err(stdout_error)?;
                }
                Format::Text => {
                    if value.im.abs() > 1e-15 {
                        writeln!(out, "{} {:+}i", value.re, value.im).map_err(stdout_error)?;
                    } else {
                        writeln!(out, "{}", value.re).map_err(stdout_error)?;
                    }
                    if let Some(o) = oracle {
                        writeln!(out, "oracle {}", o.re).map_err(stdout_error)?;
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Cocycle(a) => {
            let elements = a.elements()?;
            let cocycle = TwoCocycle::spin_half();
            let omega: Vec<Vec<f64>> = elements
                .iter()
                .map(|g| elements.iter().map(|h| cocycle_eval(g, h)).collect())
                .collect();
            let pairing = pairing_table(&cocycle, &elements)?;
            let detection = detect_nontrivial_class(&elements)?;
            match a.format {
                Format::Json => {
                    let body = json!({
                        "elements": elements.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "cocycle": omega,
                        "pairing": pairing.iter().map(|row| row.iter().map(|p| p.re).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "nontrivial": detection.nontrivial,
                        "witness": detection.witness.map(|(g, h)| [g.to_string(), h.to_string()]),
                        "witness_pairing": detection.witness_pairing.map(|p| p.re),
                    });
                    let s = serde_json::to_string_pretty(&body).expect("serializes");
                    writeln!(out, "{s}").map_err(stdout_error)?;
                }
                Format::Text => {
                    for (i, g) in elements.iter().enumerate() {
                        writeln!(out, "g{i} = {g}").map_err(stdout_error)?;
                    }
                    writeln!(out, "cocycle").map_err(stdout_error)?;
                    for row in &omega {
                        let cells: Vec<String> = row.iter().map(|v| format!("{v:+.0}")).collect();
                        writeln!(out, "  {}", cells.join(" ")).map_err(stdout_error)?;
                    }
                    writeln!(out, "pairing").map_err(stdout_error)?;
                    for row in &pairing {
                        let cells: Vec<String> = row.iter().map(|v| format!("{:+.0}", v.re)).collect();
                        writeln!(out, "  {}", cells.join(" ")).map_err(stdout_error)?;
                    }
                    match detection.witness {
                        Some((g, h)) => writeln!(out, "nontrivial: witness ({g}, {h})"),
                        None => writeln!(out, "trivial on this subgroup"),
                    }
                    .map_err(stdout_error)?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Report(a) => {
            let text = fs::read_to_string(&a.path).map_err(|e| CliError::Io {
                path: a.path.display().to_string(),
                source: e,
            })?;
            let report: Report =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", a.path.display())))?;
            out.write_all(&emit_report(&report, a.format)).map_err(stdout_error)?;
            Ok(EXIT_PASS)
        }
    }
}

fn stdout_error(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}
