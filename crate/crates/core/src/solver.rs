//! Generation of the minimal state vectors that admit a timely, affordable
//! single-path transmission.
//!
//! For a path with lead time `LP < T`, the smallest capacity that delivers
//! `d` units by time `T` is `alpha = ceil(d / (T - LP))`. If the path can
//! carry that much (`alpha <= KP(M)`) the vector with `alpha` on the path's
//! arcs and zero elsewhere is a minimal feasible state. Two generation
//! orders are provided:
//!
//! * [`Algorithm::Direct`] drops unaffordable and too-slow paths first and
//!   only then builds vectors.
//! * [`Algorithm::Baseline`] builds a vector for every path that meets the
//!   deadline and afterwards discards the ones over budget.
//!
//! Both produce the same set of vectors; they differ only in work done.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::netmodel::{affordable, best_time, compare, Dominance, Network, Query, StateVector};
use crate::pathfind::MpCatalog;
use crate::scalar::Probability;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Filter by budget and lead time, then build vectors (`a1`).
    Direct,
    /// Build vectors for all paths, then filter by budget (`a2`).
    Baseline,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Direct, Algorithm::Baseline];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Direct => "a1",
            Algorithm::Baseline => "a2",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a1" | "direct" => Ok(Algorithm::Direct),
            "a2" | "baseline" => Ok(Algorithm::Baseline),
            other => Err(Error::Precondition(format!("unknown algorithm `{other}` (expected a1 or a2)"))),
        }
    }
}

/// One generated vector and the minimal path it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// 1-based index into the catalog.
    pub mp: usize,
    /// Capacity placed on every arc of the path.
    pub level: u32,
    pub vector: StateVector,
}

/// Work and filtering counters of one solve.
///
/// For [`Algorithm::Direct`]: `k + removed_cost + removed_time = q` and
/// `sigma + removed_capacity = k`; a path failing both filters is counted
/// under `removed_time`.
///
/// For [`Algorithm::Baseline`]: `k = q` (every path enters the capacity
/// step), `removed_time + removed_capacity + candidates = q`, and
/// `sigma + removed_cost = candidates`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub q: usize,
    pub k: usize,
    pub sigma: usize,
    pub removed_cost: usize,
    pub removed_time: usize,
    pub removed_capacity: usize,
    /// Vectors built before any budget filtering.
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub algorithm: Algorithm,
    pub solutions: Vec<Solution>,
    pub counters: Counters,
}

impl SolutionSet {
    pub fn sigma(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &StateVector> + '_ {
        self.solutions.iter().map(|s| &s.vector)
    }

    pub fn vector_set(&self) -> BTreeSet<StateVector> {
        self.vectors().cloned().collect()
    }

    /// Fails if two vectors are comparable under the componentwise order.
    pub fn check_antichain(&self) -> Result<()> {
        for (i, a) in self.solutions.iter().enumerate() {
            for b in &self.solutions[i + 1..] {
                if compare(&a.vector, &b.vector)? != Dominance::Incomparable {
                    return Err(Error::Correctness(format!(
                        "vectors from paths {} and {} are comparable",
                        a.mp, b.mp
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Smallest path capacity meeting the deadline: `ceil(d / (T - lp))`.
pub fn alpha(d: u64, t: u64, lp: u64) -> Result<u64> {
    if lp >= t {
        return Err(Error::Precondition(format!("lead time {lp} leaves no time before limit {t}")));
    }
    Ok(d.div_ceil(t - lp))
}

fn emit(m: usize, cat: &MpCatalog, j: usize, level: u64) -> Solution {
    let level = level as u32;
    Solution { mp: j + 1, level, vector: cat.paths()[j].indicator(m, level) }
}

/// Filter-first generation (`a1`).
pub fn solve_direct<P: Probability>(net: &Network<P>, cat: &MpCatalog, q: &Query) -> SolutionSet {
    let m = net.arc_count();
    let mut c = Counters { q: cat.q(), ..Counters::default() };
    let mut survivors = Vec::with_capacity(cat.q());
    for (j, path) in cat.paths().iter().enumerate() {
        if path.lp() >= q.t {
            c.removed_time += 1;
        } else if !affordable(q.d, path, q.b) {
            c.removed_cost += 1;
        } else {
            survivors.push(j);
        }
    }
    c.k = survivors.len();

    let mut solutions = Vec::new();
    for j in survivors {
        let path = &cat.paths()[j];
        let level = q.d.div_ceil(q.t - path.lp());
        if level <= path.kp_max() as u64 {
            solutions.push(emit(m, cat, j, level));
        } else {
            c.removed_capacity += 1;
        }
    }
    c.sigma = solutions.len();
    c.candidates = c.sigma;
    SolutionSet { algorithm: Algorithm::Direct, solutions, counters: c }
}

/// Build-then-filter generation (`a2`).
pub fn solve_baseline<P: Probability>(net: &Network<P>, cat: &MpCatalog, q: &Query) -> SolutionSet {
    let m = net.arc_count();
    let mut c = Counters { q: cat.q(), k: cat.q(), ..Counters::default() };
    let mut built = Vec::new();
    for (j, path) in cat.paths().iter().enumerate() {
        let Ok(level) = alpha(q.d, q.t, path.lp()) else {
            c.removed_time += 1;
            continue;
        };
        if level <= path.kp_max() as u64 {
            built.push(emit(m, cat, j, level));
        } else {
            c.removed_capacity += 1;
        }
    }
    c.candidates = built.len();
    built.retain(|s| affordable(q.d, &cat.paths()[s.mp - 1], q.b));
    c.removed_cost = c.candidates - built.len();
    c.sigma = built.len();
    SolutionSet { algorithm: Algorithm::Baseline, solutions: built, counters: c }
}

pub fn solve<P: Probability>(net: &Network<P>, cat: &MpCatalog, q: &Query, algorithm: Algorithm) -> SolutionSet {
    match algorithm {
        Algorithm::Direct => solve_direct(net, cat, q),
        Algorithm::Baseline => solve_baseline(net, cat, q),
    }
}

/// Whether `x` is a minimal state vector meeting the deadline and budget.
///
/// Since the best transmission time is nonincreasing in every capacity, it
/// suffices to try decrementing each positive coordinate once.
pub fn is_real_dtb<P: Probability>(net: &Network<P>, cat: &MpCatalog, q: &Query, x: &StateVector) -> Result<bool> {
    net.check_state(x)?;
    let paths = cat.paths();
    if !best_time(q.d, x, paths, q.b)?.within(q.t) {
        return Ok(false);
    }
    let mut y = x.clone().into_inner();
    for i in 0..y.len() {
        if y[i] == 0 {
            continue;
        }
        y[i] -= 1;
        let still_ok = best_time(q.d, &StateVector::new(y.clone()), paths, q.b)?.within(q.t);
        y[i] += 1;
        if still_ok {
            return Ok(false);
        }
    }
    Ok(true)
}
