//! Text formats: edge lists, pmf CSVs, witness JSON and report summaries.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use pa_core::bounds::BoundReport;
use pa_core::clique::Witness;
use pa_core::urn::UrnPmf;
use pa_core::{ArithmeticMode, PaGraph, Pmf};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, FormatError>;

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| FormatError::Io { path: path.to_owned(), source })
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_owned(), source })
}

// ---------------------------------------------------------------------------
// Edge lists

pub fn edge_list(g: &PaGraph, seed: u64) -> String {
    let mut out = format!("# pa n={} m={} seed={}\n", g.n(), g.m(), seed);
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

/// Parses an edge list; returns the graph and the seed from its header.
pub fn parse_edge_list(path: &Path, text: &str) -> Result<(PaGraph, u64)> {
    let parse_err = |line: usize, message: String| FormatError::Parse { path: path.to_owned(), line, message };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file".into()))?;
    let fields = header
        .strip_prefix("# pa ")
        .ok_or_else(|| parse_err(1, format!("expected header \"# pa n=<n> m=<m> seed=<seed>\", found {header:?}")))?;
    let (mut n, mut m, mut seed) = (None, None, None);
    for field in fields.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| parse_err(1, format!("malformed header field {field:?}")))?;
        let value: u64 = value.parse().map_err(|_| parse_err(1, format!("non-integer header value {field:?}")))?;
        match key {
            "n" => n = Some(value),
            "m" => m = Some(value),
            "seed" => seed = Some(value),
            _ => return Err(parse_err(1, format!("unknown header field {key:?}"))),
        }
    }
    let missing = |k: &str| parse_err(1, format!("header lacks {k}="));
    let n = u32::try_from(n.ok_or_else(|| missing("n"))?).map_err(|_| parse_err(1, "n out of range".into()))?;
    let m = u32::try_from(m.ok_or_else(|| missing("m"))?).map_err(|_| parse_err(1, "m out of range".into()))?;
    let seed = seed.ok_or_else(|| missing("seed"))?;

    let mut edges = Vec::with_capacity(n as usize * m as usize);
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace().map(str::parse::<u32>);
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(parse_err(i + 1, format!("expected \"u v\", found {line:?}"))),
        }
    }
    if edges.len() != n as usize * m as usize {
        return Err(FormatError::Invalid {
            path: path.to_owned(),
            message: format!("{} edges listed, header implies n·m = {}", edges.len(), n as usize * m as usize),
        });
    }
    let g = PaGraph::from_edges(n, m, &edges)
        .map_err(|e| FormatError::Invalid { path: path.to_owned(), message: e.to_string() })?;
    Ok((g, seed))
}

pub fn read_edge_list(path: &Path) -> Result<(PaGraph, u64)> {
    parse_edge_list(path, &read_text(path)?)
}

// ---------------------------------------------------------------------------
// Distributions

/// `degree,probability` rows.
pub fn degree_csv(pmf: &Pmf) -> String {
    let mut out = String::from("degree,probability\n");
    for (k, p) in pmf.rows() {
        writeln!(out, "{k},{p}").expect("writing to a String");
    }
    out
}

/// `k,probability` rows behind a comment header describing the urn.
pub fn urn_csv(law: &UrnPmf, mode: ArithmeticMode, formula: &str) -> String {
    let s = law.spec;
    let mut out = format!(
        "# urn matrix={} a0={} b0={} n={} mode={} formula={}\nk,probability\n",
        s.matrix,
        s.a0,
        s.b0,
        law.n,
        mode_label(mode),
        formula
    );
    for (k, p) in law.pmf.rows() {
        writeln!(out, "{k},{p}").expect("writing to a String");
    }
    out
}

pub fn mode_label(mode: ArithmeticMode) -> &'static str {
    if mode.is_exact() {
        "exact"
    } else {
        "float"
    }
}

/// Parses `degree,probability` or `k,probability` CSV into float pairs.
/// Exact `num/den` entries are converted with `f64` division.
pub fn parse_pmf_csv(path: &Path, text: &str) -> Result<Vec<(u64, f64)>> {
    let parse_err = |line: usize, message: String| FormatError::Parse { path: path.to_owned(), line, message };
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (i, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if !header_seen {
            header_seen = true;
            continue;
        }
        let (k, p) = line.split_once(',').ok_or_else(|| parse_err(i + 1, "expected two columns".into()))?;
        let k: u64 = k.parse().map_err(|_| parse_err(i + 1, format!("bad value {k:?}")))?;
        let p = match p.split_once('/') {
            Some((a, b)) => {
                let a: f64 = a.parse().map_err(|_| parse_err(i + 1, format!("bad numerator {a:?}")))?;
                let b: f64 = b.parse().map_err(|_| parse_err(i + 1, format!("bad denominator {b:?}")))?;
                a / b
            }
            None => p.parse().map_err(|_| parse_err(i + 1, format!("bad probability {p:?}")))?,
        };
        rows.push((k, p));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Witnesses

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorJson {
    pub pair: [u32; 2],
    pub vertex: u32,
}

/// `{k, principals, connectors: [{pair: [a, b], vertex: c}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub k: usize,
    pub principals: Vec<u32>,
    pub connectors: Vec<ConnectorJson>,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            k: w.k(),
            principals: w.principals.clone(),
            connectors: w.connectors.iter().map(|&((a, b), c)| ConnectorJson { pair: [a, b], vertex: c }).collect(),
        }
    }
}

impl WitnessJson {
    pub fn into_witness(self) -> std::result::Result<Witness, String> {
        if self.k != self.principals.len() {
            return Err(format!("k = {} but {} principals listed", self.k, self.principals.len()));
        }
        Ok(Witness {
            principals: self.principals,
            connectors: self.connectors.into_iter().map(|c| ((c.pair[0], c.pair[1]), c.vertex)).collect(),
        })
    }
}

/// Reads a witness, either bare or wrapped in a finder result's `witness` field.
pub fn read_witness(path: &Path) -> Result<Witness> {
    let invalid = |message: String| FormatError::Invalid { path: path.to_owned(), message };
    let value: serde_json::Value = serde_json::from_str(&read_text(path)?).map_err(|e| invalid(e.to_string()))?;
    let value = match value.get("witness") {
        Some(serde_json::Value::Null) => return Err(invalid("file records no witness".into())),
        Some(inner) => inner.clone(),
        None => value,
    };
    let json: WitnessJson = serde_json::from_value(value).map_err(|e| invalid(e.to_string()))?;
    json.into_witness().map_err(invalid)
}

// ---------------------------------------------------------------------------
// Bound reports

/// One summary row per report.
pub fn reports_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from("name,parameters,measured,bound,direction,holds,method,trials,successes,ci_halfwidth\n");
    for r in reports {
        let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let direction = serde_json::to_value(r.direction).expect("enum serializes");
        let method = serde_json::to_value(r.method).expect("enum serializes");
        writeln!(
            out,
            "{},{},{:?},{:?},{},{},{},{},{},{:?}",
            r.name,
            params.join(";"),
            r.measured,
            r.bound,
            direction.as_str().unwrap_or_default(),
            r.holds,
            method.as_str().unwrap_or_default(),
            r.trials,
            r.successes,
            r.ci_halfwidth
        )
        .expect("writing to a String");
    }
    out
}
