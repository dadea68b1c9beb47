//! Text formats: raw delay traces, ECDF/record/comparison CSVs, and the
//! stage-delay model container.
//!
//! All functions here operate on byte buffers; callers own file I/O.
//! Formats are line-oriented and deterministic. Support values are
//! written with three decimals (their full ingestion resolution) and
//! cumulative probabilities with twelve; the model container and the
//! records CSV use shortest-exact float formatting, so they round-trip
//! bit-for-bit.

use std::fmt::Write as _;

use crate::datapath::{FlowKey, PacketRecord, Stage, StageDelayModel};
use crate::empirical::{DelaySample, EmpiricalDistribution};
use crate::error::{Error, Result};
use crate::scenario::ComparisonTable;

/// One trace row: a strictly increasing sample index and a delay in
/// microseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub index: u64,
    pub delay_us: f64,
}

/// A raw per-packet delay series for one datapath stage, as measured or
/// synthesized, with optional provenance labels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TraceFile {
    pub rows: Vec<TraceRow>,
    pub stage: Option<String>,
    pub platform: Option<String>,
    pub scenario: Option<String>,
}

impl TraceFile {
    pub fn delays(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.delay_us).collect()
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the whitespace-delimited two-column trace format
/// (`sample_index delay_us`). Lines starting with `#` and blank lines are
/// skipped; delays are rounded to three decimals on ingestion. Never
/// panics on arbitrary input.
pub fn parse_trace(bytes: &[u8]) -> Result<TraceFile> {
    let mut rows: Vec<TraceRow> = Vec::new();
    for (idx, raw_line) in bytes.split(|&b| b == b'\n').enumerate() {
        let line_no = idx + 1;
        let line = std::str::from_utf8(raw_line)
            .map_err(|_| parse_err(line_no, "not valid UTF-8"))?
            .trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::MalformedRow { line: line_no });
        }
        let index: u64 = fields[0]
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad sample index `{}`", fields[0])))?;
        let raw_delay: f64 = fields[1]
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad delay value `{}`", fields[1])))?;
        let delay = DelaySample::new(raw_delay)
            .map(DelaySample::value)
            .ok_or_else(|| parse_err(line_no, "delay must be finite and non-negative"))?;
        if let Some(last) = rows.last() {
            if index <= last.index {
                return Err(parse_err(
                    line_no,
                    "sample index must be strictly increasing",
                ));
            }
        }
        rows.push(TraceRow {
            index,
            delay_us: delay,
        });
    }
    if rows.is_empty() {
        return Err(Error::EmptyTrace);
    }
    Ok(TraceFile {
        rows,
        ..TraceFile::default()
    })
}

/// Writes a trace back out; metadata labels become `#` comments, so
/// re-parsing yields identical rows.
pub fn export_trace(trace: &TraceFile) -> Vec<u8> {
    let mut out = String::new();
    for (label, value) in [
        ("stage", &trace.stage),
        ("platform", &trace.platform),
        ("scenario", &trace.scenario),
    ] {
        if let Some(v) = value {
            let _ = writeln!(out, "# {label}: {v}");
        }
    }
    for row in &trace.rows {
        let _ = writeln!(out, "{} {:.3}", row.index, row.delay_us);
    }
    out.into_bytes()
}

/// CSV rendering of an ECDF: header `value_us,cum_prob`, one row per
/// support point, values at three decimals and probabilities at twelve.
pub fn export_ecdf_csv(dist: &EmpiricalDistribution) -> Vec<u8> {
    let mut out = String::from("value_us,cum_prob\n");
    for (&value, &cum) in dist.support().iter().zip(dist.cum_prob()) {
        let _ = writeln!(out, "{value:.3},{cum:.12}");
    }
    out.into_bytes()
}

/// The step-function points of an exported ECDF CSV. The CSV does not
/// carry the underlying sample count, so this is a curve, not a full
/// [`EmpiricalDistribution`].
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfCurve {
    pub support: Vec<f64>,
    pub cum_prob: Vec<f64>,
}

/// Parses the output of [`export_ecdf_csv`].
pub fn parse_ecdf_csv(bytes: &[u8]) -> Result<EcdfCurve> {
    let text = std::str::from_utf8(bytes).map_err(|_| parse_err(1, "not valid UTF-8"))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "value_us,cum_prob")) => {}
        _ => return Err(parse_err(1, "expected header `value_us,cum_prob`")),
    }
    let mut support = Vec::new();
    let mut cum_prob = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (v, c) = line
            .split_once(',')
            .ok_or(Error::MalformedRow { line: line_no })?;
        support.push(
            v.trim()
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad value `{v}`")))?,
        );
        cum_prob.push(
            c.trim()
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad probability `{c}`")))?,
        );
    }
    if support.is_empty() {
        return Err(Error::EmptyTrace);
    }
    Ok(EcdfCurve { support, cum_prob })
}

const MODEL_MAGIC: &str = "dpathsim-model v1";

/// Serializes a stage-delay model as four labeled ECDF sections in one
/// text container. Floats use shortest-exact formatting; `load_model`
/// reconstructs the model bit-for-bit.
pub fn save_model(model: &StageDelayModel) -> Vec<u8> {
    let mut out = String::new();
    let _ = writeln!(out, "{MODEL_MAGIC}");
    for stage in Stage::ALL {
        let dist = model.stage(stage);
        let _ = writeln!(out, "\n[{}]", stage.label());
        let _ = writeln!(out, "n_samples {}", dist.n_samples());
        for (&value, &cum) in dist.support().iter().zip(dist.cum_prob()) {
            let _ = writeln!(out, "{value} {cum}");
        }
    }
    out.into_bytes()
}

/// Parses the output of [`save_model`], revalidating every distribution
/// invariant and requiring each stage section exactly once.
pub fn load_model(bytes: &[u8]) -> Result<StageDelayModel> {
    struct Section {
        n_samples: Option<u64>,
        support: Vec<f64>,
        cum_prob: Vec<f64>,
    }
    let text = std::str::from_utf8(bytes).map_err(|_| parse_err(1, "not valid UTF-8"))?;
    let mut sections: [Option<Section>; 4] = [None, None, None, None];
    let mut current: Option<usize> = None;

    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first.trim() == MODEL_MAGIC => {}
        _ => return Err(parse_err(1, format!("expected `{MODEL_MAGIC}` header"))),
    }
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let stage = Stage::from_label(name)
                .ok_or_else(|| parse_err(line_no, format!("unknown stage section `{name}`")))?;
            let slot = Stage::ALL.iter().position(|&s| s == stage).unwrap();
            if sections[slot].is_some() {
                return Err(Error::DuplicateStage {
                    stage: name.to_string(),
                });
            }
            sections[slot] = Some(Section {
                n_samples: None,
                support: Vec::new(),
                cum_prob: Vec::new(),
            });
            current = Some(slot);
            continue;
        }
        let slot = current.ok_or_else(|| parse_err(line_no, "data before any stage section"))?;
        let section = sections[slot].as_mut().unwrap();
        if let Some(n) = line.strip_prefix("n_samples ") {
            section.n_samples = Some(
                n.trim()
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad n_samples `{n}`")))?,
            );
            continue;
        }
        let (v, c) = line
            .split_once(' ')
            .ok_or(Error::MalformedRow { line: line_no })?;
        section.support.push(
            v.trim()
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad value `{v}`")))?,
        );
        section.cum_prob.push(
            c.trim()
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad probability `{c}`")))?,
        );
    }

    let mut dists: Vec<EmpiricalDistribution> = Vec::with_capacity(4);
    for (slot, stage) in Stage::ALL.iter().enumerate() {
        let section = sections[slot]
            .take()
            .ok_or_else(|| Error::IncompleteModel {
                stage: stage.label().to_string(),
            })?;
        let n_samples = section.n_samples.ok_or_else(|| Error::IncompleteModel {
            stage: stage.label().to_string(),
        })?;
        dists.push(
            EmpiricalDistribution::from_parts(section.support, section.cum_prob, n_samples)
                .map_err(|e| match e {
                    Error::InvalidDistribution { message } => Error::InvalidDistribution {
                        message: format!("stage `{}`: {message}", stage.label()),
                    },
                    other => other,
                })?,
        );
    }
    let mut dists = dists.into_iter();
    Ok(StageDelayModel {
        cpu_counters: dists.next().unwrap(),
        lookup: dists.next().unwrap(),
        upcall: dists.next().unwrap(),
        stats_update: dists.next().unwrap(),
    })
}

const RECORDS_HEADER: &str = "id,arrival_us,flow,cache_hit,wait_us,cpu_counters_us,lookup_us,upcall_us,stats_update_us,total_us,departure_us";

/// CSV rendering of per-packet records with shortest-exact floats, so a
/// parsed-back record equals the in-memory one bit-for-bit.
pub fn export_records_csv(records: &[PacketRecord]) -> Vec<u8> {
    let mut out = String::from(RECORDS_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.id,
            r.arrival_us,
            r.key,
            r.cache_hit,
            r.wait_us,
            r.cpu_counters_us,
            r.lookup_us,
            r.upcall_us,
            r.stats_update_us,
            r.total_us,
            r.departure_us
        );
    }
    out.into_bytes()
}

fn parse_flow(field: &str, line_no: usize) -> Result<FlowKey> {
    let parts: Vec<&str> = field.split(':').collect();
    if parts.len() != 3 {
        return Err(parse_err(line_no, format!("bad flow key `{field}`")));
    }
    let nums: Result<Vec<u32>> = parts
        .iter()
        .map(|p| {
            p.parse::<u32>()
                .map_err(|_| parse_err(line_no, format!("bad flow key `{field}`")))
        })
        .collect();
    let nums = nums?;
    Ok(FlowKey::new(nums[0], nums[1], nums[2]))
}

/// Parses the output of [`export_records_csv`].
pub fn parse_records_csv(bytes: &[u8]) -> Result<Vec<PacketRecord>> {
    let text = std::str::from_utf8(bytes).map_err(|_| parse_err(1, "not valid UTF-8"))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == RECORDS_HEADER => {}
        _ => return Err(parse_err(1, "bad records header")),
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(Error::MalformedRow { line: line_no });
        }
        let num = |i: usize| -> Result<f64> {
            fields[i]
                .parse::<f64>()
                .map_err(|_| parse_err(line_no, format!("bad number `{}`", fields[i])))
        };
        let cache_hit = match fields[3] {
            "true" => true,
            "false" => false,
            other => return Err(parse_err(line_no, format!("bad cache_hit `{other}`"))),
        };
        records.push(PacketRecord {
            id: fields[0]
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad id `{}`", fields[0])))?,
            arrival_us: num(1)?,
            key: parse_flow(fields[2], line_no)?,
            cache_hit,
            wait_us: num(4)?,
            cpu_counters_us: num(5)?,
            lookup_us: num(6)?,
            upcall_us: num(7)?,
            stats_update_us: num(8)?,
            total_us: num(9)?,
            departure_us: num(10)?,
        });
    }
    if records.is_empty() {
        return Err(Error::EmptyTrace);
    }
    Ok(records)
}

/// CSV rendering of a scenario comparison table.
pub fn export_comparison_csv(table: &ComparisonTable) -> Vec<u8> {
    let mut out = String::from(
        "component,ks_distance,delta_min_us,delta_max_us,delta_mean_us,delta_median_us,delta_p95_us,delta_p99_us\n",
    );
    for row in &table.rows {
        let d = &row.delta;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.component, row.ks, d.min, d.max, d.mean, d.median, d.p95, d.p99
        );
    }
    out.into_bytes()
}
