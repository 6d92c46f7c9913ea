//! The sequential preferential attachment process.
//!
//! For `m = 1`, vertex `v_t` arrives with one edge whose far endpoint is drawn
//! proportional to degree, counting the pending stub of `v_t` itself as degree
//! one (drawing it creates a self-loop). Sampling picks a uniform slot among the
//! `2(t-1)` committed endpoints plus the stub, which is exact and `O(1)` per step.
//!
//! For `m > 1` the graph on `n` vertices is the `m = 1` graph on `m·n` vertices
//! with consecutive blocks of `m` vertices merged.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{invalid, unsupported};
use crate::rng::{rng_from_seed, PaRng};
use crate::Result;

/// Parameters of one process run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProcessParams {
    pub m: u32,
    pub seed: u64,
}

impl ProcessParams {
    pub fn new(m: u32, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(invalid!("m must be at least 1"));
        }
        Ok(ProcessParams { m, seed })
    }
}

/// A preferential attachment multigraph with 1-based vertex ids.
///
/// Edge `j` is stored as the endpoint pair at `2(j-1), 2(j-1)+1`. For `m = 1`
/// the first endpoint is the arriving vertex `v_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaGraph {
    m: u32,
    endpoints: Vec<u32>,
    degrees: Vec<u32>,
}

impl PaGraph {
    pub fn n(&self) -> u32 {
        self.degrees.len() as u32
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len() / 2
    }

    /// Edge `j` (0-based position in the edge sequence).
    pub fn edge(&self, j: usize) -> (u32, u32) {
        (self.endpoints[2 * j], self.endpoints[2 * j + 1])
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (u32, u32)> + '_ {
        self.endpoints.chunks_exact(2).map(|e| (e[0], e[1]))
    }

    /// Degree of `v` (1-based). Panics if `v` is out of range.
    pub fn degree(&self, v: u32) -> u32 {
        self.degrees[v as usize - 1]
    }

    /// Degrees indexed from vertex 1.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Rebuilds a graph from its edge sequence, recomputing degrees.
    pub fn from_edges(n: u32, m: u32, edges: &[(u32, u32)]) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(invalid!("n and m must be positive"));
        }
        let mut degrees = alloc::vec![0u32; n as usize];
        let mut endpoints = Vec::with_capacity(2 * edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(invalid!("vertex {x} outside 1..={n}"));
                }
                degrees[x as usize - 1] += 1;
                endpoints.push(x);
            }
        }
        Ok(PaGraph { m, endpoints, degrees })
    }

    /// Checks the structural invariants; returns the first violation found.
    pub fn check_invariants(&self) -> core::result::Result<(), alloc::string::String> {
        let n = self.n() as usize;
        let m = self.m as usize;
        if self.edge_count() != m * n {
            return Err(alloc::format!("{} edges, expected {}", self.edge_count(), m * n));
        }
        let mut counted = alloc::vec![0u32; n];
        for &x in &self.endpoints {
            if x == 0 || x as usize > n {
                return Err(alloc::format!("endpoint {x} out of range"));
            }
            counted[x as usize - 1] += 1;
        }
        if counted != self.degrees {
            return Err("degree array disagrees with edge multiset".into());
        }
        let total: u64 = self.degrees.iter().map(|&d| d as u64).sum();
        if total != 2 * (m * n) as u64 {
            return Err(alloc::format!("degree sum {total}, expected {}", 2 * m * n));
        }
        if m == 1 {
            for (j, (a, b)) in self.edges().enumerate() {
                let v = j as u32 + 1;
                if a != v || b > v {
                    return Err(alloc::format!("edge {v} is ({a}, {b})"));
                }
            }
        }
        Ok(())
    }
}

/// A running `m = 1` process together with its random stream.
#[derive(Debug, Clone)]
pub struct Process {
    graph: PaGraph,
    rng: PaRng,
}

impl Process {
    /// `G_1^1`: one vertex with a self-loop. The forced first step draws nothing.
    pub fn new(seed: u64) -> Self {
        Process {
            graph: PaGraph { m: 1, endpoints: alloc::vec![1, 1], degrees: alloc::vec![2] },
            rng: rng_from_seed(seed),
        }
    }

    /// Continues a run from a graph and the stream that produced it.
    pub fn resume(graph: PaGraph, rng: PaRng) -> Result<Self> {
        if graph.m != 1 {
            return Err(unsupported!("stepping requires m = 1 (got m = {})", graph.m));
        }
        Ok(Process { graph, rng })
    }

    pub fn time(&self) -> u32 {
        self.graph.n()
    }

    pub fn graph(&self) -> &PaGraph {
        &self.graph
    }

    pub fn into_parts(self) -> (PaGraph, PaRng) {
        (self.graph, self.rng)
    }

    /// Adds `v_t` and its edge; returns the far endpoint (`t` for a self-loop).
    pub fn step(&mut self) -> u32 {
        let t = self
            .graph
            .n()
            .checked_add(1)
            .filter(|&t| t < (1 << 31))
            .expect("process time exceeds the u32 id space");
        let slots = 2 * t - 1;
        let r = self.rng.random_range(0..slots);
        let target = if r == slots - 1 { t } else { self.graph.endpoints[r as usize] };
        self.graph.endpoints.push(t);
        self.graph.endpoints.push(target);
        self.graph.degrees.push(1);
        self.graph.degrees[target as usize - 1] += 1;
        target
    }

    /// Steps until the graph has `n` vertices.
    pub fn run_to(&mut self, n: u32) {
        while self.graph.n() < n {
            self.step();
        }
    }
}

fn checked_total(n: u32, m: u32) -> Result<u32> {
    if n == 0 {
        return Err(invalid!("n must be at least 1"));
    }
    if m == 0 {
        return Err(invalid!("m must be at least 1"));
    }
    n.checked_mul(m).filter(|&t| t < (1 << 31)).ok_or_else(|| invalid!("m·n = {n}·{m} is too large"))
}

/// `G_m^n` for the given seed.
pub fn generate(n: u32, params: ProcessParams) -> Result<PaGraph> {
    let total = checked_total(n, params.m)?;
    let mut process = Process::new(params.seed);
    process.run_to(total);
    let (g1, _) = process.into_parts();
    if params.m == 1 {
        Ok(g1)
    } else {
        merge_to_m(&g1, params.m)
    }
}

/// Merges blocks `{v_{(i-1)m+1}, …, v_{im}}` of an `m = 1` graph into `v'_i`.
pub fn merge_to_m(g1: &PaGraph, m: u32) -> Result<PaGraph> {
    if m == 0 {
        return Err(invalid!("m must be at least 1"));
    }
    if g1.m != 1 {
        return Err(invalid!("merging expects an m = 1 graph (got m = {})", g1.m));
    }
    if !g1.n().is_multiple_of(m) {
        return Err(invalid!("{} vertices are not divisible into blocks of {m}", g1.n()));
    }
    let block = |v: u32| (v - 1) / m + 1;
    let endpoints = g1.endpoints.iter().map(|&v| block(v)).collect();
    let degrees = g1.degrees.chunks_exact(m as usize).map(|b| b.iter().sum()).collect();
    Ok(PaGraph { m, endpoints, degrees })
}

/// A fixed set of vertices `S ⊆ {v_1, …, v_{t0}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<u32>,
    t0: u32,
}

impl VertexSet {
    pub fn new(mut members: Vec<u32>, t0: u32) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(invalid!("vertex set is empty"));
        }
        if members[0] == 0 || *members.last().unwrap() > t0 {
            return Err(invalid!("vertex set members must lie in 1..={t0}"));
        }
        Ok(VertexSet { members, t0 })
    }

    /// `{v_1, …, v_k}` fixed at time `k`.
    pub fn initial_segment(k: u32) -> Result<Self> {
        Self::new((1..=k).collect(), k)
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn t0(&self) -> u32 {
        self.t0
    }
}

/// `D(S)`, the total degree of the members of `s` in `g`.
pub fn degree_of_set(g: &PaGraph, s: &VertexSet) -> Result<u64> {
    let n = g.n();
    s.members
        .iter()
        .map(|&v| {
            if v > n {
                Err(invalid!("vertex {v} outside 1..={n}"))
            } else {
                Ok(g.degree(v) as u64)
            }
        })
        .sum()
}

/// `D_m^t(S)` at each checkpoint `t` along a single run to `n`.
///
/// The run stops after the last checkpoint; `n` only bounds the checkpoints.
pub fn trajectory(n: u32, params: ProcessParams, s: &VertexSet, checkpoints: &[u32]) -> Result<Vec<u64>> {
    let m = params.m;
    checked_total(n, m)?;
    if s.t0 > n {
        return Err(invalid!("set fixed at t0 = {} beyond n = {n}", s.t0));
    }
    for w in checkpoints.windows(2) {
        if w[0] > w[1] {
            return Err(invalid!("checkpoints must be ascending"));
        }
    }
    if let Some(&first) = checkpoints.first() {
        if first < s.t0 {
            return Err(invalid!("checkpoint {first} precedes t0 = {}", s.t0));
        }
    }
    if let Some(&last) = checkpoints.last() {
        if last > n {
            return Err(invalid!("checkpoint {last} beyond n = {n}"));
        }
    }

    // Membership over merged ids; the m = 1 vertex u belongs to block (u-1)/m + 1.
    let mut in_set = alloc::vec![false; s.t0 as usize + 1];
    for &v in &s.members {
        in_set[v as usize] = true;
    }
    let member = |u: u32| {
        let b = ((u - 1) / m + 1) as usize;
        b < in_set.len() && in_set[b]
    };

    let mut process = Process::new(params.seed);
    let mut d: u64 = if member(1) { 2 } else { 0 };
    let mut out = Vec::with_capacity(checkpoints.len());
    for &c in checkpoints {
        while process.time() < c * m {
            let target = process.step();
            let t = process.time();
            d += member(t) as u64 + member(target) as u64;
        }
        out.push(d);
    }
    Ok(out)
}
