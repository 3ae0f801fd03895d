//! Exact reliability from a set of minimal vectors.
//!
//! With independent arc capacities, the probability that the state
//! dominates a vector `V` is the product of per-arc tails `Pr(x_i >= V_i)`,
//! and the intersection of several such upsets is the upset of their
//! componentwise maximum. The union over all minimal vectors is then
//! evaluated by inclusion-exclusion.
//!
//! [`brute_force_reliability`] enumerates the whole state space instead and
//! serves as the independent reference.

use crate::error::{Error, Result};
use crate::netmodel::{best_time, Network, Query, StateVector};
use crate::pathfind::MpCatalog;
use crate::scalar::{KahanSum, Probability};
use crate::solver::{solve, Algorithm, SolutionSet};

pub const DEFAULT_IE_LIMIT: usize = 30;
pub const DEFAULT_STATE_LIMIT: u64 = 5_000_000;

/// Per-arc survival tails `t_i[v] = Pr(x_i >= v)` for `v = 0..=M_i + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailTable<P = f64> {
    tails: Vec<Vec<P>>,
}

impl<P: Probability> TailTable<P> {
    pub fn from_network(net: &Network<P>) -> Result<Self> {
        let mut tails = Vec::with_capacity(net.arc_count());
        for arc in net.arcs() {
            let dist = arc.dist.as_ref().ok_or(Error::MissingDistribution(arc.id))?;
            let mut t = vec![P::zero(); dist.len() + 1];
            let mut acc = KahanSum::new();
            for v in (1..dist.len()).rev() {
                acc.add(dist[v].clone());
                t[v] = acc.total();
            }
            t[0] = P::one();
            tails.push(t);
        }
        Ok(Self { tails })
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len()
    }

    /// `Pr(x_i >= v)` for 1-based arc `id`; zero above the maximum.
    pub fn tail(&self, id: usize, v: u32) -> P {
        let t = &self.tails[id - 1];
        t.get(v as usize).cloned().unwrap_or_else(P::zero)
    }

    pub fn max_cap(&self, id: usize) -> u32 {
        (self.tails[id - 1].len() - 2) as u32
    }

    pub fn raw(&self) -> &[Vec<P>] {
        &self.tails
    }
}

/// `Pr(X >= v)`.
pub fn upset_prob<P: Probability>(tails: &TailTable<P>, v: &StateVector) -> Result<P> {
    if v.len() != tails.arc_count() {
        return Err(Error::Dimension { expected: tails.arc_count(), actual: v.len() });
    }
    let mut p = P::one();
    for (i, &x) in v.iter().enumerate() {
        if x > tails.max_cap(i + 1) {
            return Err(Error::Precondition(format!(
                "capacity {x} above maximum {} on arc {}",
                tails.max_cap(i + 1),
                i + 1
            )));
        }
        if x > 0 {
            p = p * tails.tail(i + 1, x);
        }
    }
    Ok(p)
}

/// Result of an inclusion-exclusion evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct UnionProb<P> {
    pub probability: P,
    /// Number of nonempty subsets evaluated, `2^sigma - 1`.
    pub terms: u64,
}

/// `Pr(union of upsets)` over `vectors` by inclusion-exclusion, refusing more
/// than `limit` vectors.
pub fn union_prob_ie<P: Probability>(tails: &TailTable<P>, vectors: &[StateVector], limit: usize) -> Result<UnionProb<P>> {
    if vectors.len() > limit {
        return Err(Error::resource(format!("{} vectors for inclusion-exclusion", vectors.len()), limit as u64));
    }
    if vectors.is_empty() {
        return Ok(UnionProb { probability: P::zero(), terms: 0 });
    }
    let m = tails.arc_count();
    for v in vectors {
        upset_prob(tails, v)?;
    }

    // Only arcs touched by some vector contribute a factor other than one.
    let active: Vec<usize> = (0..m).filter(|&i| vectors.iter().any(|v| v.as_slice()[i] > 0)).collect();
    let rows: Vec<Vec<u32>> = vectors.iter().map(|v| active.iter().map(|&i| v.as_slice()[i]).collect()).collect();

    struct Walk<'a, P> {
        tails: &'a TailTable<P>,
        active: &'a [usize],
        rows: &'a [Vec<u32>],
        sum: KahanSum<P>,
        terms: u64,
    }

    impl<P: Probability> Walk<'_, P> {
        // Visits every nonempty subset whose smallest index is >= `from`,
        // extending the running componentwise maximum `level`.
        fn go(&mut self, from: usize, level: &[u32], size: usize) {
            for r in from..self.rows.len() {
                let next: Vec<u32> = level.iter().zip(&self.rows[r]).map(|(a, b)| *a.max(b)).collect();
                let mut p = P::one();
                for (pos, &x) in next.iter().enumerate() {
                    if x > 0 {
                        p = p * self.tails.tail(self.active[pos] + 1, x);
                    }
                }
                if (size + 1) % 2 == 1 {
                    self.sum.add(p);
                } else {
                    self.sum.add(P::zero() - p);
                }
                self.terms += 1;
                self.go(r + 1, &next, size + 1);
            }
        }
    }

    let mut walk = Walk { tails, active: &active, rows: &rows, sum: KahanSum::new(), terms: 0 };
    walk.go(0, &vec![0; active.len()], 0);
    Ok(UnionProb { probability: walk.sum.total(), terms: walk.terms })
}

/// Reference reliability by exhaustive state enumeration.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult<P> {
    pub probability: P,
    /// Minimal elements of `{X <= M : best time <= T}` in lexicographic order.
    pub omega_min: Vec<StateVector>,
    pub states: u64,
    pub feasible_states: u64,
}

/// Sums `Pr(X)` over every `X <= M` whose best budget-feasible transmission
/// time meets `T`, and extracts the minimal feasible states.
pub fn brute_force_reliability<P: Probability>(
    net: &Network<P>,
    cat: &MpCatalog,
    q: &Query,
    state_limit: u64,
) -> Result<OracleResult<P>> {
    let size = net.state_space_size();
    if size > state_limit as u128 {
        return Err(Error::resource(format!("state space of {size} vectors"), state_limit));
    }
    let dists: Vec<&Vec<P>> =
        net.arcs().iter().map(|a| a.dist.as_ref().ok_or(Error::MissingDistribution(a.id))).collect::<Result<_>>()?;
    if cat.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let m = net.arc_count();
    let max = net.max_state().into_inner();
    let mut x = vec![0u32; m];
    let mut sum = KahanSum::new();
    let mut feasible = Vec::new();
    let mut states = 0u64;
    loop {
        states += 1;
        let state = StateVector::new(x.clone());
        if best_time(q.d, &state, cat.paths(), q.b)?.within(q.t) {
            let mut p = P::one();
            for (i, &v) in x.iter().enumerate() {
                p = p * dists[i][v as usize].clone();
            }
            sum.add(p);
            feasible.push(state);
        }
        // Odometer increment over the box 0..=M.
        let mut i = 0;
        while i < m && x[i] == max[i] {
            x[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
        x[i] += 1;
    }

    let feasible_states = feasible.len() as u64;
    // A feasible state is minimal iff no already-found minimal state lies
    // below it, provided states are visited by ascending coordinate sum.
    feasible.sort_by_key(|s| s.iter().map(|&v| v as u64).sum::<u64>());
    let mut omega_min: Vec<StateVector> = Vec::new();
    for s in feasible {
        if !omega_min.iter().any(|z| z.le(&s)) {
            omega_min.push(s);
        }
    }
    omega_min.sort();
    Ok(OracleResult { probability: sum.total(), omega_min, states, feasible_states })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReliabilityReport<P> {
    pub reliability: P,
    pub solutions: SolutionSet,
    pub ie_terms: u64,
}

/// Generates the minimal vectors with `algorithm` and evaluates their union.
pub fn reliability<P: Probability>(
    net: &Network<P>,
    cat: &MpCatalog,
    q: &Query,
    algorithm: Algorithm,
    ie_limit: usize,
) -> Result<ReliabilityReport<P>> {
    let tails = TailTable::from_network(net)?;
    let solutions = solve(net, cat, q, algorithm);
    solutions.check_antichain()?;
    let vectors: Vec<StateVector> = solutions.vectors().cloned().collect();
    let union = union_prob_ie(&tails, &vectors, ie_limit)?;
    Ok(ReliabilityReport { reliability: union.probability, solutions, ie_terms: union.terms })
}
