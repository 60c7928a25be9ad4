//! CSV writers (and the region-map reader) plus the growth-record JSON.
//!
//! Floats are written with Rust's shortest round-trip formatting, so every
//! value read back parses to the identical bit pattern.

use std::fmt::Write as _;

use serde::Serialize;

use netstab_core::scan::RegionMap;
use netstab_core::sim::{GrowthEstimate, Trajectory};
use netstab_core::LaplacianSpectrum;

pub const REGION_HEADER: &str = "axis1,axis2,stable,margin,growth_rate";
pub const TRAJECTORY_HEADER: &str = "t,node,u,v,du,dv";
pub const SPECTRUM_HEADER: &str = "index,re,im";

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("expected header {expected:?}, got {got:?}")]
    BadHeader { expected: &'static str, got: String },
}

/// `index,re,im` in the spectrum's (sorted) order.
pub fn write_spectrum_csv(spectrum: &LaplacianSpectrum) -> String {
    let mut out = String::from(SPECTRUM_HEADER);
    out.push('\n');
    for (i, z) in spectrum.eigenvalues().iter().enumerate() {
        writeln!(out, "{i},{},{}", z.re, z.im).unwrap();
    }
    out
}

/// `axis1,axis2,stable,margin,growth_rate`, row-major in axis1 then axis2;
/// a failed root fit leaves the growth_rate field empty.
pub fn write_region_csv(map: &RegionMap) -> String {
    let mut out = String::from(REGION_HEADER);
    out.push('\n');
    for i1 in 0..map.resolution {
        let v1 = map.value1(i1);
        for i2 in 0..map.resolution {
            let v2 = map.value2(i2);
            let cell = map.cell(i1, i2);
            write!(out, "{v1},{v2},{},{}", cell.stable, cell.margin).unwrap();
            match cell.growth_rate {
                Some(rate) => writeln!(out, ",{rate}").unwrap(),
                None => out.push_str(",\n"),
            }
        }
    }
    out
}

/// One parsed region-map row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionRow {
    pub axis1: f64,
    pub axis2: f64,
    pub stable: bool,
    pub margin: f64,
    pub growth_rate: Option<f64>,
}

pub fn read_region_csv(text: &str) -> Result<Vec<RegionRow>, CsvError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == REGION_HEADER => {}
        other => {
            return Err(CsvError::BadHeader {
                expected: REGION_HEADER,
                got: other.map(|(_, h)| h.into()).unwrap_or_default(),
            })
        }
    }

    let mut rows = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 5 {
            return Err(CsvError::Malformed {
                line,
                msg: format!("expected 5 fields, got {}", fields.len()),
            });
        }
        let num = |field: &str, what: &str| {
            field.parse::<f64>().map_err(|_| CsvError::Malformed {
                line,
                msg: format!("invalid {what} {field:?}"),
            })
        };
        let stable = match fields[2] {
            "true" => true,
            "false" => false,
            other => {
                return Err(CsvError::Malformed {
                    line,
                    msg: format!("invalid stable flag {other:?}"),
                })
            }
        };
        rows.push(RegionRow {
            axis1: num(fields[0], "axis1 value")?,
            axis2: num(fields[1], "axis2 value")?,
            stable,
            margin: num(fields[3], "margin")?,
            growth_rate: if fields[4].is_empty() {
                None
            } else {
                Some(num(fields[4], "growth rate")?)
            },
        });
    }
    Ok(rows)
}

/// `t,node,u,v,du,dv`, node-major within each sampled instant.
pub fn write_trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from(TRAJECTORY_HEADER);
    out.push('\n');
    for state in &traj.states {
        for node in 0..state.n() {
            writeln!(
                out,
                "{},{node},{},{},{},{}",
                state.time, state.u[node], state.v[node], state.du[node], state.dv[node]
            )
            .unwrap();
        }
    }
    out
}

/// One growth experiment as a machine-readable record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRecord {
    pub seed: u64,
    pub rate: f64,
    pub residual: f64,
    pub verdict: String,
}

impl GrowthRecord {
    pub fn new(seed: u64, est: &GrowthEstimate) -> Self {
        let verdict = if est.blew_up {
            "blow-up"
        } else if est.stable {
            "stable"
        } else {
            "unstable"
        };
        GrowthRecord {
            seed,
            rate: est.rate,
            residual: est.residual,
            verdict: verdict.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}
