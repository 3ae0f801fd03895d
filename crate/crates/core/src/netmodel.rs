//! Network, state vectors and the elementary transmission formulas.
//!
//! Sending `d` units over an arc with capacity `x`, lead time `l` and unit
//! cost `c` takes `l + ceil(d / x)` time units and costs `d * c`. Along a
//! path the lead times and unit costs add up and the capacity is the
//! bottleneck (minimum) of the arc capacities.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Probability;

/// Tolerance on the total mass of a capacity distribution.
pub const DIST_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Arc<P = f64> {
    /// 1-based arc index.
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    pub max_cap: u32,
    pub lead: u64,
    pub unit_cost: u64,
    /// `dist[v]` is `Pr(x = v)` for `v = 0..=max_cap`.
    pub dist: Option<Vec<P>>,
}

impl<P: Probability> Arc<P> {
    pub fn new(id: usize, tail: usize, head: usize, max_cap: u32, lead: u64, unit_cost: u64) -> Self {
        Self { id, tail, head, max_cap, lead, unit_cost, dist: None }
    }

    pub fn with_dist(mut self, dist: Vec<P>) -> Self {
        self.dist = Some(dist);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.tail == self.head {
            return Err(Error::InvalidNetwork(format!("arc {} is a self-loop on node {}", self.id, self.tail)));
        }
        if self.lead < 1 {
            return Err(Error::InvalidNetwork(format!("arc {} has lead time 0", self.id)));
        }
        if self.unit_cost < 1 {
            return Err(Error::InvalidNetwork(format!("arc {} has unit cost 0", self.id)));
        }
        if let Some(dist) = &self.dist {
            let expected = self.max_cap as usize + 1;
            if dist.len() != expected {
                return Err(Error::InvalidDistribution {
                    arc: self.id,
                    reason: format!("expected {expected} probabilities, got {}", dist.len()),
                });
            }
            if let Some(v) = dist.iter().position(|p| !p.is_unit()) {
                return Err(Error::InvalidDistribution {
                    arc: self.id,
                    reason: format!("probability of capacity {v} is outside [0, 1]"),
                });
            }
            let total: f64 = dist.iter().map(Probability::to_f64).sum();
            if (total - 1.0).abs() > DIST_SUM_TOLERANCE {
                return Err(Error::InvalidDistribution {
                    arc: self.id,
                    reason: format!("probabilities sum to {total}"),
                });
            }
        }
        Ok(())
    }
}

/// A directed multigraph with per-arc capacity, lead time and unit cost.
#[derive(Clone, Debug, PartialEq)]
pub struct Network<P = f64> {
    n: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc<P>>,
}

impl<P: Probability> Network<P> {
    pub fn new(n: usize, source: usize, sink: usize, arcs: Vec<Arc<P>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidNetwork(format!("need at least two nodes, got {n}")));
        }
        for (what, node) in [("source", source), ("sink", sink)] {
            if node < 1 || node > n {
                return Err(Error::InvalidNetwork(format!("{what} {node} outside 1..={n}")));
            }
        }
        if source == sink {
            return Err(Error::InvalidNetwork("source and sink coincide".into()));
        }
        for (pos, arc) in arcs.iter().enumerate() {
            if arc.id != pos + 1 {
                return Err(Error::InvalidNetwork(format!(
                    "arc ids must run 1..m in order; position {} holds id {}",
                    pos + 1,
                    arc.id
                )));
            }
            for node in [arc.tail, arc.head] {
                if node < 1 || node > n {
                    return Err(Error::InvalidNetwork(format!("arc {} references node {node}", arc.id)));
                }
            }
            arc.validate()?;
        }
        Ok(Self { n, source, sink, arcs })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc<P>] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> Result<&Arc<P>> {
        id.checked_sub(1).and_then(|i| self.arcs.get(i)).ok_or(Error::UnknownArc(id))
    }

    /// The maximum capacity vector `M`.
    pub fn max_state(&self) -> StateVector {
        StateVector::new(self.arcs.iter().map(|a| a.max_cap).collect())
    }

    pub fn has_distributions(&self) -> bool {
        self.arcs.iter().all(|a| a.dist.is_some())
    }

    /// Number of state vectors `X <= M`, saturating at `u128::MAX`.
    pub fn state_space_size(&self) -> u128 {
        self.arcs
            .iter()
            .try_fold(1u128, |acc, a| acc.checked_mul(a.max_cap as u128 + 1))
            .unwrap_or(u128::MAX)
    }

    /// Checks that `x` has the right length and lies below `M`.
    pub fn check_state(&self, x: &StateVector) -> Result<()> {
        if x.len() != self.arc_count() {
            return Err(Error::Dimension { expected: self.arc_count(), actual: x.len() });
        }
        if let Some(arc) = self.arcs.iter().zip(x.iter()).find(|(a, &v)| v > a.max_cap).map(|(a, _)| a) {
            return Err(Error::Precondition(format!(
                "state exceeds maximum capacity {} on arc {}",
                arc.max_cap, arc.id
            )));
        }
        Ok(())
    }

    /// Same topology and attributes with distributions dropped.
    pub fn without_distributions(&self) -> Self {
        let mut net = self.clone();
        for arc in &mut net.arcs {
            arc.dist = None;
        }
        net
    }

    /// Converts the probability scalar type.
    pub fn map_probabilities<Q: Probability>(&self, mut f: impl FnMut(&P) -> Q) -> Network<Q> {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                id: a.id,
                tail: a.tail,
                head: a.head,
                max_cap: a.max_cap,
                lead: a.lead,
                unit_cost: a.unit_cost,
                dist: a.dist.as_ref().map(|d| d.iter().map(&mut f).collect()),
            })
            .collect();
        Network { n: self.n, source: self.source, sink: self.sink, arcs }
    }
}

/// Outcome of comparing two state vectors componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// A system state vector: one current capacity per arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateVector(Vec<u32>);

impl StateVector {
    pub fn new(caps: Vec<u32>) -> Self {
        Self(caps)
    }

    pub fn zeros(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &u32> + '_ {
        self.0.iter()
    }

    /// Capacity of the 1-based arc `id`.
    pub fn cap(&self, id: usize) -> Option<u32> {
        id.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// Arc ids with nonzero capacity.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &v)| v > 0).map(|(i, _)| i + 1).collect()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &StateVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl From<Vec<u32>> for StateVector {
    fn from(caps: Vec<u32>) -> Self {
        Self(caps)
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise partial order: `Less` means `x <= y` and `x != y`.
pub fn compare(x: &StateVector, y: &StateVector) -> Result<Dominance> {
    if x.len() != y.len() {
        return Err(Error::Dimension { expected: x.len(), actual: y.len() });
    }
    let mut some_less = false;
    let mut some_greater = false;
    for (a, b) in x.iter().zip(y.iter()) {
        match a.cmp(b) {
            Ordering::Less => some_less = true,
            Ordering::Greater => some_greater = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (some_less, some_greater) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::Less,
        (false, true) => Dominance::Greater,
        (true, true) => Dominance::Incomparable,
    })
}

/// A transmission time, where `Infeasible` ranks above every finite time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransmissionTime {
    Finite(u64),
    Infeasible,
}

impl TransmissionTime {
    pub fn within(self, limit: u64) -> bool {
        matches!(self, TransmissionTime::Finite(t) if t <= limit)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            TransmissionTime::Finite(t) => Some(t),
            TransmissionTime::Infeasible => None,
        }
    }
}

impl fmt::Display for TransmissionTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransmissionTime::Finite(t) => write!(f, "{t}"),
            TransmissionTime::Infeasible => write!(f, "inf"),
        }
    }
}

/// Demand `d`, time limit `T` and budget `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Query {
    pub d: u64,
    pub t: u64,
    pub b: u64,
}

impl Query {
    pub fn new(d: u64, t: u64, b: u64) -> Result<Self> {
        for (name, v) in [("d", d), ("T", t), ("b", b)] {
            if v < 1 {
                return Err(Error::InvalidQuery(format!("{name} must be at least 1")));
            }
        }
        Ok(Self { d, t, b })
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={}, T={}, b={})", self.d, self.t, self.b)
    }
}

/// A minimal path as a set of arc ids, with its lead time, unit cost and
/// maximum capacity cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinimalPath {
    arc_ids: Vec<usize>,
    lp: u64,
    cp: u64,
    kp_max: u32,
}

impl MinimalPath {
    /// Builds a path from raw parts without consulting a network.
    ///
    /// The caller vouches for the caches; `validate_catalog` re-derives them.
    pub fn from_parts(mut arc_ids: Vec<usize>, lp: u64, cp: u64, kp_max: u32) -> Self {
        arc_ids.sort_unstable();
        arc_ids.dedup();
        Self { arc_ids, lp, cp, kp_max }
    }

    pub fn arc_ids(&self) -> &[usize] {
        &self.arc_ids
    }

    /// Sum of lead times.
    pub fn lp(&self) -> u64 {
        self.lp
    }

    /// Sum of unit costs.
    pub fn cp(&self) -> u64 {
        self.cp
    }

    /// Path capacity under the maximum state `M`.
    pub fn kp_max(&self) -> u32 {
        self.kp_max
    }

    pub fn len(&self) -> usize {
        self.arc_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arc_ids.is_empty()
    }

    pub fn contains(&self, arc_id: usize) -> bool {
        self.arc_ids.binary_search(&arc_id).is_ok()
    }

    pub fn is_subset_of(&self, other: &MinimalPath) -> bool {
        self.arc_ids.iter().all(|id| other.contains(*id))
    }

    /// The vector with `level` on this path's arcs and zero elsewhere.
    pub fn indicator(&self, m: usize, level: u32) -> StateVector {
        let mut caps = vec![0; m];
        for &id in &self.arc_ids {
            caps[id - 1] = level;
        }
        StateVector(caps)
    }
}

/// Time and cost of sending `d` units over one arc of capacity `x`.
pub fn arc_transmit(d: u64, x: u32, lead: u64, unit_cost: u64) -> Result<(u64, u64)> {
    if x == 0 {
        return Err(Error::InfeasibleCapacity);
    }
    Ok((lead + d.div_ceil(x as u64), d * unit_cost))
}

/// Computes `LP`, `CP` and `KP(M)` for the arc set `arc_ids`.
pub fn path_stats<P: Probability>(net: &Network<P>, arc_ids: &[usize]) -> Result<MinimalPath> {
    if arc_ids.is_empty() {
        return Err(Error::Precondition("a path needs at least one arc".into()));
    }
    let mut ids = arc_ids.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let mut lp = 0;
    let mut cp = 0;
    let mut kp = u32::MAX;
    for &id in &ids {
        let arc = net.arc(id)?;
        lp += arc.lead;
        cp += arc.unit_cost;
        kp = kp.min(arc.max_cap);
    }
    Ok(MinimalPath { arc_ids: ids, lp, cp, kp_max: kp })
}

/// Bottleneck capacity `KP(X)` of `path` under `x`.
pub fn path_capacity(x: &StateVector, path: &MinimalPath) -> Result<u32> {
    let mut kp = u32::MAX;
    for &id in path.arc_ids() {
        let v = x.cap(id).ok_or(Error::Dimension { expected: id, actual: x.len() })?;
        kp = kp.min(v);
    }
    Ok(kp)
}

/// Time to send `d` units along `path` under `x`.
pub fn xi(d: u64, x: &StateVector, path: &MinimalPath) -> Result<TransmissionTime> {
    let kp = path_capacity(x, path)?;
    Ok(if kp == 0 {
        TransmissionTime::Infeasible
    } else {
        TransmissionTime::Finite(path.lp() + d.div_ceil(kp as u64))
    })
}

/// Cost of sending `d` units along `path`.
pub fn beta(d: u64, path: &MinimalPath) -> u64 {
    d * path.cp()
}

/// Whether `path` can carry `d` units within budget `b` (`d * CP <= b`).
pub fn affordable(d: u64, path: &MinimalPath, b: u64) -> bool {
    beta(d, path) <= b
}

/// Best transmission time over all budget-feasible minimal paths.
pub fn best_time(d: u64, x: &StateVector, paths: &[MinimalPath], b: u64) -> Result<TransmissionTime> {
    if paths.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let mut best = TransmissionTime::Infeasible;
    for path in paths.iter().filter(|p| affordable(d, p, b)) {
        best = best.min(xi(d, x, path)?);
    }
    Ok(best)
}
