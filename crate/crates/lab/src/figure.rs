//! Data behind the two degree-distribution panels.
//!
//! Left: the law of `D(10⁴)` of the first vertex, unconditionally and given
//! `D(100) = 18` or `D(1000) = 56`. Right: the law of the total degree at
//! `10⁴` of the first 1, 20 and 50 vertices, started from their fixed total
//! degree `2k` at time `k`.

use std::fmt::Write as _;

use pa_core::exact_dist::{conditional_dist, forward_dp, vertex_dist, DegreeDistribution};
use pa_core::{ArithmeticMode, Result};

pub const HORIZON: u64 = 10_000;
pub const CONDITIONS: [(u64, u64); 2] = [(100, 18), (1000, 56)];
pub const SET_SIZES: [u64; 3] = [1, 20, 50];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Panel {
    Left,
    Right,
}

impl std::str::FromStr for Panel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "left" => Ok(Panel::Left),
            "right" => Ok(Panel::Right),
            _ => Err(format!("unknown panel {s:?} (expected left or right)")),
        }
    }
}

/// Named float pmfs sharing one degree axis.
#[derive(Debug, Clone)]
pub struct FigureTable {
    pub columns: Vec<String>,
    pub series: Vec<DegreeDistribution>,
}

impl FigureTable {
    pub fn degree_range(&self) -> (u64, u64) {
        let lo = self.series.iter().map(|d| d.support_min()).min().unwrap_or(0);
        let hi = self.series.iter().map(|d| d.support_max()).max().unwrap_or(0);
        (lo, hi)
    }

    /// `degree,<columns…>`, zero outside each support.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        let (lo, hi) = self.degree_range();
        for k in lo..=hi {
            write!(out, "{k}").expect("writing to a String");
            for s in &self.series {
                write!(out, ",{:?}", s.pmf.prob_f64(k)).expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }
}

pub fn panel(which: Panel) -> Result<FigureTable> {
    match which {
        Panel::Left => left(),
        Panel::Right => right(),
    }
}

fn left() -> Result<FigureTable> {
    let mut series = vec![vertex_dist(1, HORIZON, ArithmeticMode::Float)?];
    let mut columns = vec!["p_uncond".to_string()];
    for (t, d) in CONDITIONS {
        series.push(conditional_dist(t, d, HORIZON, ArithmeticMode::Float)?);
        columns.push(format!("p_cond{t}"));
    }
    Ok(FigureTable { columns, series })
}

fn right() -> Result<FigureTable> {
    let mut series = Vec::new();
    let mut columns = Vec::new();
    for k in SET_SIZES {
        series.push(forward_dp(&DegreeDistribution::point(k, 2 * k), HORIZON, ArithmeticMode::Float)?);
        columns.push(format!("p_set{k}"));
    }
    Ok(FigureTable { columns, series })
}
