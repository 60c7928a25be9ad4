//! Run configuration: a flat INI-style text file with `[section]` headers,
//! `key = value` lines and `#` comments. Sections are `model`, `transport`,
//! `network`, `scan` and `sim`; each command demands the sections it needs.
//! Unknown sections, unknown keys and duplicates are rejected with their
//! line number so typos cannot silently fall back to defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use netstab_core::network::{newman_watts_directed, symmetrize};
use netstab_core::scan::{AxisSpec, ScanAxis};
use netstab_core::{AdjacencyMatrix, BrusselatorParams, Complex64, ReactionModel, TransportParams};

use crate::edgelist::{self, EdgeListError};

pub const SCAN_RE_DEFAULT: (f64, f64) = (-6.0, 0.0);
pub const SCAN_IM_DEFAULT: (f64, f64) = (-3.0, 3.0);
pub const SCAN_RESOLUTION_DEFAULT: usize = 61;
pub const SIM_AMPLITUDE_DEFAULT: f64 = 1e-6;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("config line {line}: unknown section [{name}]")]
    UnknownSection { line: usize, name: String },
    #[error("config line {line}: section [{name}] appears twice")]
    DuplicateSection { line: usize, name: String },
    #[error("config line {line}: unknown key {key:?} in [{section}]")]
    UnknownKey {
        line: usize,
        section: &'static str,
        key: String,
    },
    #[error("config line {line}: duplicate key {key:?} in [{section}]")]
    DuplicateKey {
        line: usize,
        section: &'static str,
        key: String,
    },
    #[error("config is missing the [{section}] section")]
    MissingSection { section: &'static str },
    #[error("config section [{section}] is missing {key}")]
    MissingKey {
        section: &'static str,
        key: &'static str,
    },
    #[error("config line {line}: [{section}] {key}: {msg}")]
    InvalidValue {
        line: usize,
        section: &'static str,
        key: String,
        msg: String,
    },
    #[error("invalid [{section}] configuration: {msg}")]
    Rejected { section: &'static str, msg: String },
    #[error("edge list {path}: {source}")]
    EdgeList {
        path: PathBuf,
        source: EdgeListError,
    },
}

/// Reaction kinetics selected by `[model] name`.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Brusselator(BrusselatorParams),
}

impl ModelSpec {
    pub fn build(&self) -> ReactionModel {
        match self {
            ModelSpec::Brusselator(p) => netstab_core::models::brusselator(p),
        }
    }

    pub fn parameters(&self) -> &BrusselatorParams {
        match self {
            ModelSpec::Brusselator(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkSource {
    NewmanWatts {
        n: usize,
        k: usize,
        p: f64,
        seed: u64,
    },
    EdgeList(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    pub source: NetworkSource,
    pub symmetrize: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub resolution: usize,
    /// Explicit eigenvalue samples for parameter planes without a network.
    pub lambda: Option<Vec<Complex64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Step size; `None` defers to the integrator's heuristic.
    pub dt: Option<f64>,
    pub horizon: f64,
    pub amplitude: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: Option<ModelSpec>,
    pub transport: Option<TransportParams>,
    pub network: Option<NetworkConfig>,
    pub scan: Option<ScanConfig>,
    pub sim: Option<SimConfig>,
    /// Directory that relative edge-list paths resolve against.
    pub base_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn require_model(&self) -> Result<&ModelSpec, ConfigError> {
        self.model
            .as_ref()
            .ok_or(ConfigError::MissingSection { section: "model" })
    }

    pub fn require_transport(&self) -> Result<&TransportParams, ConfigError> {
        self.transport.as_ref().ok_or(ConfigError::MissingSection {
            section: "transport",
        })
    }

    pub fn require_network(&self) -> Result<&NetworkConfig, ConfigError> {
        self.network
            .as_ref()
            .ok_or(ConfigError::MissingSection { section: "network" })
    }

    pub fn require_scan(&self) -> Result<&ScanConfig, ConfigError> {
        self.scan
            .as_ref()
            .ok_or(ConfigError::MissingSection { section: "scan" })
    }

    pub fn require_sim(&self) -> Result<&SimConfig, ConfigError> {
        self.sim
            .as_ref()
            .ok_or(ConfigError::MissingSection { section: "sim" })
    }

    /// Builds the configured adjacency matrix, applying `symmetrize` last.
    pub fn adjacency(&self) -> Result<AdjacencyMatrix, ConfigError> {
        let net = self.require_network()?;
        let a = match &net.source {
            NetworkSource::NewmanWatts { n, k, p, seed } => {
                newman_watts_directed(*n, *k, *p, *seed).map_err(|e| ConfigError::Rejected {
                    section: "network",
                    msg: e.to_string(),
                })?
            }
            NetworkSource::EdgeList(path) => {
                let full = match (&self.base_dir, path.is_relative()) {
                    (Some(dir), true) => dir.join(path),
                    _ => path.clone(),
                };
                let text = fs::read_to_string(&full).map_err(|source| ConfigError::Io {
                    path: full.clone(),
                    source,
                })?;
                edgelist::read_edge_list(&text)
                    .map_err(|source| ConfigError::EdgeList { path: full, source })?
            }
        };
        Ok(if net.symmetrize { symmetrize(&a) } else { a })
    }

    /// Replaces every seed in the config (generator and simulation).
    pub fn override_seeds(&mut self, seed: u64) {
        if let Some(net) = &mut self.network {
            if let NetworkSource::NewmanWatts { seed: s, .. } = &mut net.source {
                *s = seed;
            }
        }
        if let Some(sim) = &mut self.sim {
            sim.seed = seed;
        }
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = parse_config(&text)?;
    cfg.base_dir = path.parent().map(Path::to_path_buf);
    Ok(cfg)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut sections = split_sections(text)?;
    let model = sections.remove("model").map(parse_model).transpose()?;
    let transport = sections
        .remove("transport")
        .map(parse_transport)
        .transpose()?;
    let network = sections.remove("network").map(parse_network).transpose()?;
    let scan = sections.remove("scan").map(parse_scan).transpose()?;
    let sim = sections.remove("sim").map(parse_sim).transpose()?;
    Ok(RunConfig {
        model,
        transport,
        network,
        scan,
        sim,
        base_dir: None,
    })
}

const SECTION_NAMES: [&str; 5] = ["model", "transport", "network", "scan", "sim"];

/// One parsed section: key -> (value, line).
struct Section {
    name: &'static str,
    entries: BTreeMap<String, (String, usize)>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<(String, usize)> {
        self.entries.remove(key)
    }

    fn take_parsed<T: std::str::FromStr>(
        &mut self,
        key: &'static str,
        what: &str,
    ) -> Result<Option<T>, ConfigError> {
        match self.take(key) {
            None => Ok(None),
            Some((value, line)) => {
                value
                    .parse::<T>()
                    .map(Some)
                    .map_err(|_| ConfigError::InvalidValue {
                        line,
                        section: self.name,
                        key: key.into(),
                        msg: format!("expected {what}, got {value:?}"),
                    })
            }
        }
    }

    fn need_parsed<T: std::str::FromStr>(
        &mut self,
        key: &'static str,
        what: &str,
    ) -> Result<T, ConfigError> {
        self.take_parsed(key, what)?.ok_or(ConfigError::MissingKey {
            section: self.name,
            key,
        })
    }

    fn take_bool(&mut self, key: &'static str) -> Result<Option<bool>, ConfigError> {
        match self.take(key) {
            None => Ok(None),
            Some((value, line)) => match value.as_str() {
                "true" => Ok(Some(true)),
                "false" => Ok(Some(false)),
                _ => Err(ConfigError::InvalidValue {
                    line,
                    section: self.name,
                    key: key.into(),
                    msg: format!("expected true or false, got {value:?}"),
                }),
            },
        }
    }

    fn invalid(&self, key: &str, line: usize, msg: String) -> ConfigError {
        ConfigError::InvalidValue {
            line,
            section: self.name,
            key: key.into(),
            msg,
        }
    }

    /// Errors on the first leftover key; call after all known keys are taken.
    fn finish(self) -> Result<(), ConfigError> {
        match self.entries.into_iter().min_by_key(|(_, (_, line))| *line) {
            None => Ok(()),
            Some((key, (_, line))) => Err(ConfigError::UnknownKey {
                line,
                section: self.name,
                key,
            }),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
    .trim()
}

fn split_sections(text: &str) -> Result<BTreeMap<&'static str, Section>, ConfigError> {
    let mut sections: BTreeMap<&'static str, Section> = BTreeMap::new();
    let mut current: Option<&'static str> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        if let Some(inner) = content.strip_prefix('[') {
            let Some(name) = inner.strip_suffix(']').map(str::trim) else {
                return Err(ConfigError::Syntax {
                    line,
                    msg: format!("malformed section header {content:?}"),
                });
            };
            let Some(canonical) = SECTION_NAMES.iter().copied().find(|s| *s == name) else {
                return Err(ConfigError::UnknownSection {
                    line,
                    name: name.into(),
                });
            };
            if sections.contains_key(canonical) {
                return Err(ConfigError::DuplicateSection {
                    line,
                    name: name.into(),
                });
            }
            sections.insert(
                canonical,
                Section {
                    name: canonical,
                    entries: BTreeMap::new(),
                },
            );
            current = Some(canonical);
            continue;
        }

        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Syntax {
                line,
                msg: format!("expected key = value, got {content:?}"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                msg: String::from("empty key or value"),
            });
        }
        let Some(section) = current else {
            return Err(ConfigError::Syntax {
                line,
                msg: format!("key {key:?} outside any section"),
            });
        };
        let entries = &mut sections.get_mut(section).unwrap().entries;
        if entries.contains_key(key) {
            return Err(ConfigError::DuplicateKey {
                line,
                section,
                key: key.into(),
            });
        }
        entries.insert(key.into(), (value.into(), line));
    }
    Ok(sections)
}

fn parse_model(mut s: Section) -> Result<ModelSpec, ConfigError> {
    let (name, line) = s.take("name").ok_or(ConfigError::MissingKey {
        section: "model",
        key: "name",
    })?;
    if name != "brusselator" {
        return Err(s.invalid(
            "name",
            line,
            format!("unknown model {name:?} (supported: brusselator)"),
        ));
    }
    let b: f64 = s.need_parsed("b", "a number")?;
    let c: f64 = s.need_parsed("c", "a number")?;
    s.finish()?;
    let params = BrusselatorParams::new(b, c).map_err(|e| ConfigError::Rejected {
        section: "model",
        msg: e.to_string(),
    })?;
    Ok(ModelSpec::Brusselator(params))
}

fn parse_transport(mut s: Section) -> Result<TransportParams, ConfigError> {
    let d_u: f64 = s.need_parsed("d_u", "a number")?;
    let d_v: f64 = s.need_parsed("d_v", "a number")?;
    let tau_u: f64 = s.need_parsed("tau_u", "a number")?;
    let tau_v: f64 = s.need_parsed("tau_v", "a number")?;
    s.finish()?;
    TransportParams::new(d_u, d_v, tau_u, tau_v).map_err(|e| ConfigError::Rejected {
        section: "transport",
        msg: e.to_string(),
    })
}

fn parse_network(mut s: Section) -> Result<NetworkConfig, ConfigError> {
    let generator = s.take("generator");
    let edge_list = s.take("edge_list");
    let symmetrize = s.take_bool("symmetrize")?.unwrap_or(false);

    let source = match (generator, edge_list) {
        (Some((name, line)), None) => {
            if name != "newman_watts" {
                return Err(s.invalid(
                    "generator",
                    line,
                    format!("unknown generator {name:?} (supported: newman_watts)"),
                ));
            }
            NetworkSource::NewmanWatts {
                n: s.need_parsed("n", "a node count")?,
                k: s.need_parsed("k", "a ring degree")?,
                p: s.need_parsed("p", "a probability")?,
                seed: s.need_parsed("seed", "an unsigned integer")?,
            }
        }
        (None, Some((path, _))) => NetworkSource::EdgeList(PathBuf::from(path)),
        (Some((_, line)), Some(_)) => {
            return Err(s.invalid(
                "generator",
                line,
                String::from("generator and edge_list are mutually exclusive"),
            ));
        }
        (None, None) => {
            return Err(ConfigError::Rejected {
                section: "network",
                msg: String::from("needs either generator = newman_watts or edge_list = <path>"),
            });
        }
    };
    s.finish()?;
    Ok(NetworkConfig { source, symmetrize })
}

fn axis_from(
    s: &mut Section,
    which: &'static str,
    min_key: &'static str,
    max_key: &'static str,
    default: ScanAxis,
) -> Result<AxisSpec, ConfigError> {
    let axis = match s.take(which) {
        None => default,
        Some((name, line)) => ScanAxis::parse(&name).map_err(|_| {
            s.invalid(
                which,
                line,
                format!("unknown axis {name:?} (valid: b, c, tau_u, tau_v, d_u, d_v, lambda_re, lambda_im)"),
            )
        })?,
    };
    let range = match axis {
        ScanAxis::LambdaRe => Some(SCAN_RE_DEFAULT),
        ScanAxis::LambdaIm => Some(SCAN_IM_DEFAULT),
        _ => None,
    };
    let min: f64 = match (s.take_parsed(min_key, "a number")?, range) {
        (Some(v), _) => v,
        (None, Some((lo, _))) => lo,
        (None, None) => {
            return Err(ConfigError::MissingKey {
                section: "scan",
                key: min_key,
            })
        }
    };
    let max: f64 = match (s.take_parsed(max_key, "a number")?, range) {
        (Some(v), _) => v,
        (None, Some((_, hi))) => hi,
        (None, None) => {
            return Err(ConfigError::MissingKey {
                section: "scan",
                key: max_key,
            })
        }
    };
    Ok(AxisSpec { axis, min, max })
}

fn parse_lambda_list(s: &Section, value: &str, line: usize) -> Result<Vec<Complex64>, ConfigError> {
    let mut out = Vec::new();
    for pair in value.split(';') {
        let pair = pair.trim();
        if pair.is_empty() {
            continue;
        }
        let parsed = pair.split_once(',').and_then(|(re, im)| {
            let re = re.trim().parse::<f64>().ok()?;
            let im = im.trim().parse::<f64>().ok()?;
            Some(Complex64::new(re, im))
        });
        match parsed {
            Some(z) => out.push(z),
            None => {
                return Err(s.invalid(
                    "lambda",
                    line,
                    format!("expected re,im pairs separated by ';', got {pair:?}"),
                ))
            }
        }
    }
    if out.is_empty() {
        return Err(s.invalid(
            "lambda",
            line,
            String::from("needs at least one re,im pair"),
        ));
    }
    Ok(out)
}

fn parse_scan(mut s: Section) -> Result<ScanConfig, ConfigError> {
    let axis1 = axis_from(
        &mut s,
        "axis1",
        "axis1_min",
        "axis1_max",
        ScanAxis::LambdaRe,
    )?;
    let axis2 = axis_from(
        &mut s,
        "axis2",
        "axis2_min",
        "axis2_max",
        ScanAxis::LambdaIm,
    )?;
    let resolution = s
        .take_parsed("resolution", "an integer >= 2")?
        .unwrap_or(SCAN_RESOLUTION_DEFAULT);
    let lambda = match s.take("lambda") {
        None => None,
        Some((value, line)) => Some(parse_lambda_list(&s, &value, line)?),
    };
    s.finish()?;
    Ok(ScanConfig {
        axis1,
        axis2,
        resolution,
        lambda,
    })
}

fn parse_sim(mut s: Section) -> Result<SimConfig, ConfigError> {
    let dt = s.take_parsed::<f64>("dt", "a number")?;
    let horizon: f64 = s.need_parsed("horizon", "a number")?;
    let amplitude: f64 = s
        .take_parsed("amplitude", "a number")?
        .unwrap_or(SIM_AMPLITUDE_DEFAULT);
    let seed: u64 = s.need_parsed("seed", "an unsigned integer")?;
    s.finish()?;
    if let Some(dt) = dt {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(ConfigError::Rejected {
                section: "sim",
                msg: format!("dt must be positive and finite, got {dt}"),
            });
        }
    }
    if !horizon.is_finite() || horizon <= 0.0 {
        return Err(ConfigError::Rejected {
            section: "sim",
            msg: format!("horizon must be positive and finite, got {horizon}"),
        });
    }
    if !amplitude.is_finite() || amplitude <= 0.0 {
        return Err(ConfigError::Rejected {
            section: "sim",
            msg: format!("amplitude must be positive and finite, got {amplitude}"),
        });
    }
    Ok(SimConfig {
        dt,
        horizon,
        amplitude,
        seed,
    })
}
