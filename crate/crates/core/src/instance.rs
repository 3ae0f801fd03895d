//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! nodes 3
//! source 1
//! sink 3
//! arc 1 1 2 2 1 1  0.1 0.2 0.7      # id tail head M lead cost [p0 .. pM]
//! arc 2 2 3 1 1 2
//! mp 1 2                             # optional explicit minimal path
//! query 2 4 10                       # optional d T b
//! ```
//!
//! When `mp` lines are present they replace enumeration; otherwise the
//! catalog is enumerated from the topology.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::netmodel::{Arc, Network, Query, DIST_SUM_TOLERANCE};
use crate::pathfind::{enumerate_mps_with_limit, MpCatalog, DEFAULT_MP_LIMIT};
use crate::scalar::Probability;

#[derive(Clone, Debug, PartialEq)]
pub struct Instance<P = f64> {
    pub network: Network<P>,
    /// Explicit minimal paths, as arc-id sets in file order.
    pub mps: Option<Vec<Vec<usize>>>,
    pub query: Option<Query>,
}

impl<P: Probability> Instance<P> {
    pub fn new(network: Network<P>) -> Self {
        Self { network, mps: None, query: None }
    }

    /// The explicit catalog if the file lists one, else the enumerated one.
    pub fn catalog(&self) -> Result<MpCatalog> {
        self.catalog_with_limit(DEFAULT_MP_LIMIT)
    }

    pub fn catalog_with_limit(&self, limit: usize) -> Result<MpCatalog> {
        match &self.mps {
            Some(sets) => MpCatalog::from_arc_sets(&self.network, sets),
            None => enumerate_mps_with_limit(&self.network, limit),
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn num<T: std::str::FromStr>(line: usize, what: &str, tok: Option<&str>) -> Result<T> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| perr(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_instance<P: Probability>(text: &str) -> Result<Instance<P>> {
    let mut nodes: Option<usize> = None;
    let mut source: Option<usize> = None;
    let mut sink: Option<usize> = None;
    let mut arcs: Vec<Arc<P>> = Vec::new();
    let mut mps: Vec<Vec<usize>> = Vec::new();
    let mut query = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(key) = toks.next() else { continue };
        match key {
            "nodes" => {
                if nodes.is_some() {
                    return Err(perr(line, "duplicate `nodes` line"));
                }
                let n: usize = num(line, "node count", toks.next())?;
                if n < 2 {
                    return Err(perr(line, "need at least two nodes"));
                }
                nodes = Some(n);
            }
            "source" => source = Some(num(line, "source node", toks.next())?),
            "sink" => sink = Some(num(line, "sink node", toks.next())?),
            "arc" => {
                let n = nodes.ok_or_else(|| perr(line, "`nodes` must precede arcs"))?;
                let id: usize = num(line, "arc id", toks.next())?;
                if id != arcs.len() + 1 {
                    return Err(perr(line, format!("arc ids must be contiguous; expected {}, got {id}", arcs.len() + 1)));
                }
                let tail: usize = num(line, "tail", toks.next())?;
                let head: usize = num(line, "head", toks.next())?;
                let max_cap: u32 = num(line, "maximum capacity", toks.next())?;
                let lead: u64 = num(line, "lead time", toks.next())?;
                let cost: u64 = num(line, "unit cost", toks.next())?;
                for (what, v) in [("tail", tail), ("head", head)] {
                    if v < 1 || v > n {
                        return Err(perr(line, format!("{what} {v} outside 1..={n}")));
                    }
                }
                if tail == head {
                    return Err(perr(line, "self-loop"));
                }
                if lead < 1 || cost < 1 {
                    return Err(perr(line, "lead time and unit cost must be at least 1"));
                }
                let probs: Vec<&str> = toks.collect();
                let mut arc = Arc::new(id, tail, head, max_cap, lead, cost);
                if !probs.is_empty() {
                    if probs.len() != max_cap as usize + 1 {
                        return Err(perr(line, format!("expected {} probabilities, got {}", max_cap + 1, probs.len())));
                    }
                    let dist = probs
                        .iter()
                        .map(|t| P::parse(t).filter(Probability::is_unit).ok_or_else(|| perr(line, format!("invalid probability `{t}`"))))
                        .collect::<Result<Vec<P>>>()?;
                    let total: f64 = dist.iter().map(Probability::to_f64).sum();
                    if (total - 1.0).abs() > DIST_SUM_TOLERANCE {
                        return Err(perr(line, format!("probabilities sum to {total}")));
                    }
                    arc.dist = Some(dist);
                }
                arcs.push(arc);
            }
            "mp" => {
                let ids = toks.map(|t| num(line, "arc id", Some(t))).collect::<Result<Vec<usize>>>()?;
                if ids.is_empty() {
                    return Err(perr(line, "empty minimal path"));
                }
                mps.push(ids);
            }
            "query" => {
                let d = num(line, "demand", toks.next())?;
                let t = num(line, "time limit", toks.next())?;
                let b = num(line, "budget", toks.next())?;
                query = Some(Query::new(d, t, b).map_err(|e| perr(line, e.to_string()))?);
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
        // Keywords with fixed arity must not carry trailing tokens.
        if matches!(key, "nodes" | "source" | "sink" | "query") {
            let extra = content.split_whitespace().count() - if key == "query" { 4 } else { 2 };
            if extra > 0 {
                return Err(perr(line, format!("trailing tokens after `{key}`")));
            }
        }
    }

    let n = nodes.ok_or_else(|| perr(last_line, "missing `nodes` line"))?;
    let network = Network::new(n, source.unwrap_or(1), sink.unwrap_or(n), arcs).map_err(|e| perr(last_line, e.to_string()))?;
    for set in &mps {
        if let Some(&bad) = set.iter().find(|&&id| id < 1 || id > network.arc_count()) {
            return Err(perr(last_line, format!("minimal path references unknown arc {bad}")));
        }
    }
    Ok(Instance { network, mps: (!mps.is_empty()).then_some(mps), query })
}

/// Canonical text form; `parse_instance(&write_instance(i)) == i`.
pub fn write_instance<P: Probability>(inst: &Instance<P>) -> String {
    let net = &inst.network;
    let mut out = String::new();
    let _ = writeln!(out, "nodes {}", net.node_count());
    let _ = writeln!(out, "source {}", net.source());
    let _ = writeln!(out, "sink {}", net.sink());
    for a in net.arcs() {
        let _ = write!(out, "arc {} {} {} {} {} {}", a.id, a.tail, a.head, a.max_cap, a.lead, a.unit_cost);
        if let Some(dist) = &a.dist {
            for p in dist {
                let _ = write!(out, " {}", p.render());
            }
        }
        out.push('\n');
    }
    if let Some(sets) = &inst.mps {
        for set in sets {
            let ids: Vec<String> = set.iter().map(|id| id.to_string()).collect();
            let _ = writeln!(out, "mp {}", ids.join(" "));
        }
    }
    if let Some(q) = &inst.query {
        let _ = writeln!(out, "query {} {} {}", q.d, q.t, q.b);
    }
    out
}
