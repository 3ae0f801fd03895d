//! Random benchmark instances.
//!
//! For `n` nodes the arc count is drawn uniformly from `[f, f + g]` with
//! `f = 3 (ceil(n/2) - 1)` and `g = 25 - ceil(n/2)`. Arc endpoints are
//! distinct ordered pairs that neither enter node 1 nor leave node `n`.
//! Capacities, lead times and unit costs are uniform in `[10, 50]`,
//! `[5, 10]` and `[5, 20]`. Limits are set from the catalog means:
//! `d = ceil(sum KP(M) / q)`, `T = ceil(sum LP / q)`, `b = ceil(d sum CP / q)`.

use std::ops::RangeInclusive;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::netmodel::{Arc, Network, Query};
use crate::pathfind::{enumerate_mps_with_limit, MpCatalog, DEFAULT_MP_LIMIT};
use crate::scalar::Probability;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub seed: u64,
    pub cap_range: RangeInclusive<u32>,
    pub lead_range: RangeInclusive<u64>,
    pub cost_range: RangeInclusive<u64>,
    pub mp_limit: usize,
    pub max_rejections: usize,
}

impl GenConfig {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        let cfg = Self {
            n,
            seed,
            cap_range: 10..=50,
            lead_range: 5..=10,
            cost_range: 5..=20,
            mp_limit: DEFAULT_MP_LIMIT,
            max_rejections: 1000,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::Generation(format!("need at least 4 nodes, got {}", self.n)));
        }
        if self.g() < 0 {
            return Err(Error::Generation(format!("arc-count spread is negative for n = {}", self.n)));
        }
        if self.cap_range.is_empty() || self.lead_range.is_empty() || self.cost_range.is_empty() {
            return Err(Error::Generation("empty value range".into()));
        }
        if *self.lead_range.start() < 1 || *self.cost_range.start() < 1 {
            return Err(Error::Generation("lead times and costs must be at least 1".into()));
        }
        Ok(())
    }

    fn half(&self) -> usize {
        self.n.div_ceil(2)
    }

    /// Lower arc-count bound `3 (ceil(n/2) - 1)`.
    pub fn f(&self) -> usize {
        3 * (self.half() - 1)
    }

    /// Arc-count spread `25 - ceil(n/2)`.
    pub fn g(&self) -> i64 {
        25 - self.half() as i64
    }

    /// Number of admissible ordered endpoint pairs.
    pub fn admissible_pairs(&self) -> usize {
        (self.n - 1) * (self.n - 1) - (self.n - 2)
    }

    /// Inclusive arc-count range, capped by the number of admissible pairs.
    pub fn arc_count_range(&self) -> (usize, usize) {
        let hi = (self.f() + self.g() as usize).min(self.admissible_pairs());
        (self.f().min(hi), hi)
    }
}

/// Capacity distribution for generated arcs: 0.7 at `M`, 0.1 at `M - 1`
/// and the remaining 0.2 spread evenly over `0..=M-2`.
pub fn capacity_distribution<P: Probability>(max_cap: u32) -> Vec<P> {
    match max_cap {
        0 => vec![P::one()],
        1 => vec![P::from_ratio(3, 10), P::from_ratio(7, 10)],
        m => {
            let low = m as u64 - 1;
            let mut dist = vec![P::from_ratio(2, 10 * low); low as usize];
            dist.push(P::from_ratio(1, 10));
            dist.push(P::from_ratio(7, 10));
            dist
        }
    }
}

/// Limits derived from a catalog's mean capacity, lead time and cost.
pub fn derive_query(cat: &MpCatalog) -> Result<Query> {
    if cat.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let q = cat.q() as u64;
    let kp: u64 = cat.paths().iter().map(|p| p.kp_max() as u64).sum();
    let d = kp.div_ceil(q).max(1);
    demand_query(cat, d)
}

/// `T` and `b` from the catalog for a given demand.
pub fn demand_query(cat: &MpCatalog, d: u64) -> Result<Query> {
    if cat.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let q = cat.q() as u64;
    let lp: u64 = cat.paths().iter().map(|p| p.lp()).sum();
    let cp: u64 = cat.paths().iter().map(|p| p.cp()).sum();
    Query::new(d, lp.div_ceil(q), (d * cp).div_ceil(q))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedInstance<P = f64> {
    pub network: Network<P>,
    pub catalog: MpCatalog,
    pub query: Query,
    /// Draws needed before an acceptable network came up.
    pub attempts: usize,
}

fn draw_network<P: Probability>(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Network<P> {
    let n = cfg.n;
    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|u| (2..=n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let (lo, hi) = cfg.arc_count_range();
    let m = rng.gen_range(lo..=hi);
    let mut chosen: Vec<(usize, usize)> = index::sample(rng, pairs.len(), m).into_iter().map(|i| pairs[i]).collect();
    chosen.sort_unstable();
    let arcs = chosen
        .into_iter()
        .enumerate()
        .map(|(i, (tail, head))| {
            let max_cap = rng.gen_range(cfg.cap_range.clone());
            let lead = rng.gen_range(cfg.lead_range.clone());
            let cost = rng.gen_range(cfg.cost_range.clone());
            Arc::new(i + 1, tail, head, max_cap, lead, cost).with_dist(capacity_distribution(max_cap))
        })
        .collect();
    Network::new(n, 1, n, arcs).expect("generated arcs are admissible")
}

/// Draws networks until one has between 1 and `mp_limit` minimal paths.
pub fn generate_instance<P: Probability>(cfg: &GenConfig) -> Result<GeneratedInstance<P>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for attempt in 1..=cfg.max_rejections {
        let network = draw_network::<P>(cfg, &mut rng);
        match enumerate_mps_with_limit(&network, cfg.mp_limit) {
            Ok(catalog) if !catalog.is_empty() => {
                let query = derive_query(&catalog)?;
                return Ok(GeneratedInstance { network, catalog, query, attempts: attempt });
            }
            Ok(_) | Err(Error::ResourceLimit { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Generation(format!(
        "{} consecutive draws for n = {} had no usable minimal path set",
        cfg.max_rejections, cfg.n
    )))
}

/// Seed of the `k`-th instance with `n` nodes in a suite.
pub fn suite_seed(base: u64, n: usize, k: usize) -> u64 {
    // splitmix64 finaliser over a packed (base, n, k) key
    let mut z = base ^ ((n as u64) << 32) ^ k as u64;
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One suite entry: node count, index within the group, and the instance.
pub type SuiteEntry<P> = (usize, usize, GeneratedInstance<P>);

/// `per_n` instances for every node count in `nodes`.
pub fn generate_suite<P: Probability>(base_seed: u64, nodes: RangeInclusive<usize>, per_n: usize) -> Result<Vec<SuiteEntry<P>>> {
    let mut out = Vec::new();
    for n in nodes {
        for k in 0..per_n {
            let cfg = GenConfig::new(n, suite_seed(base_seed, n, k))?;
            out.push((n, k, generate_instance(&cfg)?));
        }
    }
    Ok(out)
}
