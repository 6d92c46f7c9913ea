//! One-subdivided clique witnesses.
//!
//! A witness of size `k` is a set of `k` principal vertices together with a
//! private connector vertex for each principal pair, adjacent to both ends.
//!
//! The online finder follows the constructive argument: principals are the
//! per-block degree maxima among `v_1..v_{t1}` at time `t2`, after which every
//! arriving vertex whose first edge lands on one principal and whose second
//! edge lands on another becomes the connector of that pair (if still open).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::invalid;
use crate::exec::Executor;
use crate::process::{merge_to_m, PaGraph, Process};
use crate::rng::derive_seed;
use crate::stats::{wilson_interval, Z_99};
use crate::Result;

/// A principal pair, smaller id first.
pub type Pair = (u32, u32);

fn pair(a: u32, b: u32) -> Pair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Principals plus one connector per principal pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub principals: Vec<u32>,
    pub connectors: Vec<(Pair, u32)>,
}

impl Witness {
    pub fn k(&self) -> usize {
        self.principals.len()
    }

    pub fn connector(&self, a: u32, b: u32) -> Option<u32> {
        let key = pair(a, b);
        self.connectors.iter().find(|(p, _)| *p == key).map(|&(_, c)| c)
    }
}

/// How principals and connectors are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum FinderMode {
    PaperFaithful,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FinderConfig {
    pub k: u32,
    pub mode: FinderMode,
    /// Principals are drawn from `v_1..v_{t1}`, in `k` blocks of `t1/k`.
    pub t1: u64,
    /// Time at which principal degrees are compared.
    pub t2: u64,
    pub horizon: u64,
    pub strict_first_edges: bool,
}

impl FinderConfig {
    /// Defaults `t1 = k²`, `t2 = k⁴`, strict first edges.
    pub fn new(k: u32, horizon: u64) -> Self {
        let k64 = k as u64;
        FinderConfig {
            k,
            mode: FinderMode::PaperFaithful,
            t1: k64 * k64,
            t2: k64 * k64 * k64 * k64,
            horizon,
            strict_first_edges: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(invalid!("k must be at least 1"));
        }
        if self.t1 < self.k as u64 || !self.t1.is_multiple_of(self.k as u64) {
            return Err(invalid!("t1 = {} must be a positive multiple of k = {}", self.t1, self.k));
        }
        if self.t1 > self.t2 {
            return Err(invalid!("t1 = {} exceeds t2 = {}", self.t1, self.t2));
        }
        if self.t2 > self.horizon {
            return Err(invalid!("t2 = {} exceeds the horizon {}", self.t2, self.horizon));
        }
        if self.horizon > u32::MAX as u64 {
            return Err(invalid!("horizon exceeds the vertex id space"));
        }
        Ok(())
    }
}

/// For each of the `k` consecutive blocks of `v_1..v_{t1}`, the member of
/// largest degree in `g` (lowest id on ties).
pub fn select_principals(g: &PaGraph, cfg: &FinderConfig) -> Result<Vec<u32>> {
    cfg.validate()?;
    if (g.n() as u64) < cfg.t1 {
        return Err(invalid!("graph has {} vertices, fewer than t1 = {}", g.n(), cfg.t1));
    }
    Ok(principals_by_degree(cfg, |v| g.degree(v)))
}

fn principals_by_degree(cfg: &FinderConfig, degree: impl Fn(u32) -> u32) -> Vec<u32> {
    let block = (cfg.t1 / cfg.k as u64) as u32;
    (0..cfg.k)
        .map(|b| {
            let first = b * block + 1;
            // max_by_key keeps the last maximum; scan in reverse for the lowest id.
            (first..first + block).rev().max_by_key(|&v| degree(v)).expect("nonempty block")
        })
        .collect()
}

/// Per-run observations of the online finder.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunStats {
    /// Time at which the run stopped (completion or horizon).
    pub stop_time: u64,
    /// Connection time of each principal pair, if connected.
    pub connection_times: Vec<(Pair, Option<u64>)>,
    /// Checkpoints `t2, 2t2, 4t2, …` passed by the run.
    pub checkpoints: Vec<u64>,
    /// Principal degrees at each checkpoint, in principal order.
    pub principal_degrees: Vec<Vec<u32>>,
}

/// Result of one online run.
#[derive(Debug, Clone)]
pub struct OnlineRun {
    pub witness: Option<Witness>,
    pub stats: RunStats,
    /// `G_m` at the stopping time.
    pub graph: PaGraph,
}

struct Merged<'a> {
    process: &'a Process,
    m: u32,
}

impl Merged<'_> {
    fn degree(&self, v: u32) -> u32 {
        let g = self.process.graph();
        ((v - 1) * self.m + 1..=v * self.m).map(|u| g.degree(u)).sum()
    }
}

/// Runs `G_m^n` and scans arriving vertices for connectors after `t2`.
pub fn find_witness_online(n: u64, m: u32, cfg: &FinderConfig, seed: u64) -> Result<OnlineRun> {
    cfg.validate()?;
    if cfg.horizon != n {
        return Err(invalid!("config horizon {} differs from n = {n}", cfg.horizon));
    }
    if m == 0 {
        return Err(invalid!("m must be at least 1"));
    }
    if cfg.mode == FinderMode::PaperFaithful && m < 2 {
        return Err(invalid!("the online finder needs m ≥ 2"));
    }
    if cfg.strict_first_edges && m < 2 {
        return Err(invalid!("strict first edges need m ≥ 2"));
    }
    if n.checked_mul(m as u64).is_none_or(|t| t >= 1 << 31) {
        return Err(invalid!("m·n too large"));
    }

    let mut process = Process::new(seed);
    process.run_to(cfg.t2 as u32 * m);
    let principals = principals_by_degree(cfg, |v| Merged { process: &process, m }.degree(v));

    let mut pairs: Vec<Pair> = Vec::new();
    for (i, &a) in principals.iter().enumerate() {
        for &b in &principals[i + 1..] {
            pairs.push(pair(a, b));
        }
    }
    pairs.sort_unstable();
    let index: BTreeMap<Pair, usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut connected: Vec<Option<(u32, u64)>> = alloc::vec![None; pairs.len()];
    let mut open = pairs.len();
    let is_principal = |v: u32| principals.contains(&v);

    let mut stats = RunStats::default();
    let mut next_checkpoint = cfg.t2;
    let record = |stats: &mut RunStats, process: &Process, t: u64| {
        stats.checkpoints.push(t);
        let merged = Merged { process, m };
        stats.principal_degrees.push(principals.iter().map(|&p| merged.degree(p)).collect());
    };

    let mut t = cfg.t2;
    if t == next_checkpoint {
        record(&mut stats, &process, t);
        next_checkpoint = t.saturating_mul(2);
    }
    let mut targets = Vec::with_capacity(m as usize);
    while open > 0 && t < n {
        t += 1;
        targets.clear();
        for _ in 0..m {
            let target = process.step();
            targets.push((target - 1) / m + 1);
        }
        let v = t as u32;
        let slot = if cfg.strict_first_edges {
            let (f, s) = (targets[0], targets[1]);
            if f != s && is_principal(f) && is_principal(s) {
                let i = index[&pair(f, s)];
                connected[i].is_none().then_some(i)
            } else {
                None
            }
        } else {
            let mut hit: Vec<u32> = targets.iter().copied().filter(|&x| x != v && is_principal(x)).collect();
            hit.sort_unstable();
            hit.dedup();
            let mut best = None;
            for (x, &a) in hit.iter().enumerate() {
                for &b in &hit[x + 1..] {
                    let i = index[&(a, b)];
                    if connected[i].is_none() && best.is_none_or(|j| i < j) {
                        best = Some(i);
                    }
                }
            }
            best
        };
        if let Some(i) = slot {
            connected[i] = Some((v, t));
            open -= 1;
        }
        if t == next_checkpoint {
            record(&mut stats, &process, t);
            next_checkpoint = t.saturating_mul(2);
        }
    }

    stats.stop_time = t;
    stats.connection_times = pairs.iter().zip(&connected).map(|(&p, c)| (p, c.map(|(_, time)| time))).collect();
    let witness = (open == 0).then(|| Witness {
        principals: principals.clone(),
        connectors: pairs.iter().zip(&connected).map(|(&p, c)| (p, c.expect("all pairs connected").0)).collect(),
    });
    let (g1, _) = process.into_parts();
    let graph = merge_to_m(&g1, m)?;
    Ok(OnlineRun { witness, stats, graph })
}

/// Outcome of [`verify_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub valid: bool,
    /// Violations in the order found; the first names the first violated pair.
    pub diagnostics: Vec<String>,
}

/// Sorted, deduplicated adjacency used for membership queries.
struct Adjacency {
    edges: Vec<Pair>,
}

impl Adjacency {
    fn new(g: &PaGraph) -> Self {
        let mut edges: Vec<Pair> = g.edges().filter(|(a, b)| a != b).map(|(a, b)| pair(a, b)).collect();
        edges.sort_unstable();
        edges.dedup();
        Adjacency { edges }
    }

    fn adjacent(&self, a: u32, b: u32) -> bool {
        self.edges.binary_search(&pair(a, b)).is_ok()
    }
}

/// Checks every witness invariant against `g`.
pub fn verify_witness(g: &PaGraph, w: &Witness) -> Result<WitnessCheck> {
    let n = g.n();
    let ids = w.principals.iter().copied().chain(w.connectors.iter().flat_map(|&((a, b), c)| [a, b, c]));
    for v in ids {
        if v == 0 || v > n {
            return Err(invalid!("vertex {v} outside 1..={n}"));
        }
    }
    let adjacency = Adjacency::new(g);
    let mut diagnostics = Vec::new();

    let mut principals = w.principals.clone();
    principals.sort_unstable();
    if principals.windows(2).any(|p| p[0] == p[1]) {
        diagnostics.push(String::from("duplicate principal"));
    }
    let mut seen: BTreeMap<Pair, u32> = BTreeMap::new();
    for &((a, b), c) in &w.connectors {
        let key = pair(a, b);
        if a == b || principals.binary_search(&a).is_err() || principals.binary_search(&b).is_err() {
            diagnostics.push(alloc::format!("pair {{{a},{b}}}: not a pair of distinct principals"));
        }
        if seen.insert(key, c).is_some() {
            diagnostics.push(alloc::format!("pair {{{a},{b}}}: listed twice"));
        }
    }
    for (i, &a) in principals.iter().enumerate() {
        for &b in &principals[i + 1..] {
            if a != b && !seen.contains_key(&(a, b)) {
                diagnostics.push(alloc::format!("pair {{{a},{b}}}: missing connector"));
            }
        }
    }
    let mut used: BTreeMap<u32, Pair> = BTreeMap::new();
    for &((a, b), c) in &w.connectors {
        if let Some((x, y)) = used.insert(c, pair(a, b)) {
            diagnostics.push(alloc::format!("pair {{{a},{b}}}: connector reuse of {c} (also {{{x},{y}}})"));
        }
        if principals.binary_search(&c).is_ok() {
            diagnostics.push(alloc::format!("pair {{{a},{b}}}: connector {c} is a principal"));
        }
        for end in [a, b] {
            if !adjacency.adjacent(c, end) {
                diagnostics.push(alloc::format!("pair {{{a},{b}}}: connector {c} not adjacent to {end}"));
            }
        }
    }
    Ok(WitnessCheck { valid: diagnostics.is_empty(), diagnostics })
}

/// In a merged graph, whether each connector's first two edges hit its pair.
pub fn connectors_use_first_edges(g: &PaGraph, w: &Witness) -> bool {
    let m = g.m() as usize;
    m >= 2
        && w.connectors.iter().all(|&((a, b), c)| {
            let first = (c as usize - 1) * m;
            let (u1, x) = g.edge(first);
            let (u2, y) = g.edge(first + 1);
            u1 == c && u2 == c && pair(x, y) == (a, b) && x != y
        })
}

/// Largest witness found greedily: principals are the top-degree vertices,
/// connectors are matched in increasing id order to the smallest open pair
/// they cover. `k` decreases from an upper estimate until a witness exists.
pub fn greedy_max_witness(g: &PaGraph) -> Witness {
    let n = g.n() as usize;
    let mut neighbours: Vec<Vec<u32>> = alloc::vec![Vec::new(); n + 1];
    for (a, b) in g.edges() {
        if a != b {
            neighbours[a as usize].push(b);
            neighbours[b as usize].push(a);
        }
    }
    for list in neighbours.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    let mut order: Vec<u32> = (1..=n as u32).collect();
    // Degree descending, then id ascending.
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));

    let fits = |k: usize| k * (k - 1) / 2 + k <= n && neighbours[order[k - 1] as usize].len() + 1 >= k;
    let mut k_max = 1;
    while k_max < n && fits(k_max + 1) {
        k_max += 1;
    }
    for k in (2..=k_max).rev() {
        if let Some(w) = greedy_attempt(&order[..k], &neighbours) {
            return w;
        }
    }
    Witness { principals: alloc::vec![order[0]], connectors: Vec::new() }
}

fn greedy_attempt(top: &[u32], neighbours: &[Vec<u32>]) -> Option<Witness> {
    let mut principals = top.to_vec();
    principals.sort_unstable();
    let k = principals.len();
    let pair_index = |i: usize, j: usize| i * k - i * (i + 1) / 2 + (j - i - 1);
    let npairs = k * (k - 1) / 2;

    // (candidate, principal index), grouped by candidate in increasing id.
    let mut incidences: Vec<(u32, usize)> = Vec::new();
    for (i, &p) in principals.iter().enumerate() {
        for &u in &neighbours[p as usize] {
            if principals.binary_search(&u).is_err() {
                incidences.push((u, i));
            }
        }
    }
    incidences.sort_unstable();
    let touched: Vec<(u32, Vec<usize>)> = incidences
        .chunk_by(|a, b| a.0 == b.0)
        .filter(|group| group.len() >= 2)
        .map(|group| (group[0].0, group.iter().map(|&(_, i)| i).collect()))
        .collect();
    if touched.len() < npairs {
        return None;
    }
    let mut coverage = alloc::vec![0u32; npairs];
    for (_, list) in &touched {
        for (x, &i) in list.iter().enumerate() {
            for &j in &list[x + 1..] {
                coverage[pair_index(i, j)] += 1;
            }
        }
    }
    if coverage.contains(&0) {
        return None;
    }
    let mut assigned: Vec<Option<u32>> = alloc::vec![None; npairs];
    let mut open = npairs;
    for (c, list) in &touched {
        let c = *c;
        // Lists are built in increasing principal index, so pairs come out in
        // lexicographic order.
        'pairs: for (x, &i) in list.iter().enumerate() {
            for &j in &list[x + 1..] {
                let p = pair_index(i, j);
                if assigned[p].is_none() {
                    assigned[p] = Some(c);
                    open -= 1;
                    break 'pairs;
                }
            }
        }
        if open == 0 {
            break;
        }
    }
    if open > 0 {
        return None;
    }
    let mut connectors = Vec::with_capacity(npairs);
    for i in 0..k {
        for j in i + 1..k {
            connectors.push(((principals[i], principals[j]), assigned[pair_index(i, j)].expect("assigned")));
        }
    }
    Some(Witness { principals, connectors })
}

/// Success frequency of the online finder over independent runs.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SuccessEstimate {
    pub n: u64,
    pub m: u32,
    pub k: u32,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    /// Wilson 99% interval.
    pub interval: (f64, f64),
}

pub fn success_probability(cfg: &FinderConfig, m: u32, trials: u64, seed: u64, exec: &dyn Executor) -> Result<SuccessEstimate> {
    if trials == 0 {
        return Err(invalid!("trials must be positive"));
    }
    cfg.validate()?;
    let n = cfg.horizon;
    // Surface argument errors once, outside the trial loop.
    if cfg.mode == FinderMode::PaperFaithful && m < 2 {
        return Err(invalid!("the online finder needs m ≥ 2"));
    }
    let successes = exec.count(trials, &|i| {
        find_witness_online(n, m, cfg, derive_seed(seed, i)).map(|r| r.witness.is_some()).unwrap_or(false)
    });
    Ok(SuccessEstimate {
        n,
        m,
        k: cfg.k,
        trials,
        successes,
        estimate: successes as f64 / trials as f64,
        interval: wilson_interval(successes, trials, Z_99),
    })
}
