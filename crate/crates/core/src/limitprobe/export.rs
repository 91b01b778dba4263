use std::fmt::Display;

use serde_json::{json, Value};

use super::probe::ProbeResult;
use crate::bassserre::TreePoint;
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// `{x, y, values, status, ...}` for one probe.
pub fn probe_row<E: GroupElement + Display>(x: &TreePoint<E>, y: &TreePoint<E>, r: &ProbeResult) -> Value {
    json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "start": r.start,
        "values": r.values,
        "value": r.value,
        "stable_stage": r.stable_stage,
        "j_max": r.j_max,
        "status": r.status,
    })
}

/// One line per probe: the points, the status and the distance at each stage.
pub fn probe_table_csv<E: GroupElement + Display>(rows: &[(TreePoint<E>, TreePoint<E>, ProbeResult)]) -> Result<String> {
    let stages = rows.iter().map(|(_, _, r)| r.start + r.values.len()).max().unwrap_or(1);
    let first = rows.iter().map(|(_, _, r)| r.start).min().unwrap_or(1);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["x".to_string(), "y".into(), "status".into(), "value".into()];
    header.extend((first..stages).map(|j| format!("d{j}")));
    let io = |e: csv::Error| Error::Unsupported(format!("csv: {e}"));
    w.write_record(&header).map_err(io)?;
    for (x, y, r) in rows {
        let mut rec = vec![x.to_string(), y.to_string(), r.status.to_string(), r.value.to_string()];
        rec.extend((first..stages).map(|j| r.at(j).map(|d| d.to_string()).unwrap_or_default()));
        w.write_record(&rec).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Unsupported(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Unsupported(e.to_string()))
}
