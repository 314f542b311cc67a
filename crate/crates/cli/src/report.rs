use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

use crate::{Cli, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Some work was skipped on budget; nothing failed.
    Incomplete,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Incomplete => "incomplete",
        }
    }

    pub fn from_pass(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A command's outcome in every output format.
pub struct Report {
    pub status: Status,
    pub result: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    status: &'static str,
    config: &'a Cli,
    timestamp: String,
    result: &'a Value,
}

pub fn render(cli: &Cli, rep: &Report) -> Result<String> {
    Ok(match cli.format {
        Format::Json => {
            let env = Envelope {
                tool: "ekr",
                version: env!("CARGO_PKG_VERSION"),
                command: cli.command.name(),
                status: rep.status.label(),
                config: cli,
                timestamp: OffsetDateTime::now_utc().format(&Rfc3339)?,
                result: &rep.result,
            };
            let mut s = serde_json::to_string_pretty(&env)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&rep.header)?;
            for row in &rep.rows {
                w.write_record(row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => rep.text.clone(),
    })
}

fn destination(cli: &Cli) -> Option<PathBuf> {
    cli.output.clone().or_else(|| {
        cli.out_dir
            .as_ref()
            .map(|d| d.join(format!("{}.{}", cli.command.name(), cli.format.extension())))
    })
}

pub fn emit(cli: &Cli, rep: &Report) -> Result<()> {
    let body = render(cli, rep)?;
    match destination(cli) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        }
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}
