use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use rtreelab::report::{CheckReport, Status};
use serde_json::{json, Value};

use crate::args::{Common, Format};
use crate::run::{CliError, CliResult, Outcome};

/// Environment variable naming the default directory for output files.
pub const OUT_DIR_VAR: &str = "RTREELAB_OUT_DIR";

fn extension(f: Format) -> &'static str {
    match f {
        Format::Text => "txt",
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Csv => "csv",
    }
}

fn reports_csv(reports: &[CheckReport]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    w.write_record(["check", "status", "params", "samples", "seed", "evidence", "message"]).map_err(err)?;
    for r in reports {
        w.write_record([
            r.check.clone(),
            r.status.to_string(),
            r.params.to_string(),
            r.samples.to_string(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            serde_json::to_value(r.evidence).expect("serializes").as_str().unwrap_or_default().to_string(),
            r.message.clone(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

/// Formats and writes an outcome; returns whether any report failed.
pub fn emit(name: &str, common: &Common, config: Value, mut outcome: Outcome) -> CliResult<bool> {
    outcome.reports.sort_by(|a, b| a.check.cmp(&b.check));
    let count = |s: Status| outcome.reports.iter().filter(|r| r.status == s).count();
    let (pass, fail, inconclusive) = (count(Status::Pass), count(Status::Fail), count(Status::Inconclusive));
    let body = match common.format {
        Format::Json => {
            let mut doc = json!({
                "command": name,
                "config": config,
                "reports": outcome.reports,
                "summary": {"pass": pass, "fail": fail, "inconclusive": inconclusive},
            });
            if let Some(data) = outcome.data.take() {
                doc["data"] = data;
            }
            if !common.no_timestamp {
                let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                doc["timestamp"] = json!(secs);
            }
            serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
        }
        Format::Dot => outcome
            .dot
            .take()
            .ok_or_else(|| CliError::Usage(format!("{name} has no DOT output")))?,
        Format::Csv => match outcome.csv.take() {
            Some(csv) => csv,
            None => reports_csv(&outcome.reports)?,
        },
        Format::Text => {
            let mut s = format!("# rtreelab {name} {config}\n");
            for r in &outcome.reports {
                s.push_str(&format!("{r}\n"));
                if r.status == Status::Fail {
                    if let Some(w) = &r.witness {
                        s.push_str(&format!("    witness: {w}\n"));
                    }
                }
            }
            for l in &outcome.lines {
                s.push_str(l);
                s.push('\n');
            }
            if !outcome.reports.is_empty() {
                s.push_str(&format!("{pass} PASS, {fail} FAIL, {inconclusive} INCONCLUSIVE\n"));
            }
            s
        }
    };
    let path = match (&common.output, std::env::var_os(OUT_DIR_VAR)) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(PathBuf::from(dir).join(format!("{name}.{}", extension(common.format)))),
        (None, None) => None,
    };
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&p, body)?;
            eprintln!("wrote {}", p.display());
        }
        None => print!("{body}"),
    }
    Ok(fail > 0)
}
