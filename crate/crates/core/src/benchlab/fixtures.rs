//! Bundled benchmark networks.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generator::{capacity_distribution, demand_query, GenConfig};
use crate::error::{Error, Result};
use crate::instance::{parse_instance, Instance};
use crate::netmodel::{Arc, Network, Query};
use crate::pathfind::MpCatalog;
use crate::scalar::Probability;

/// Eight-arc, five-node example with its arc data and nine minimal paths.
pub const EXAMPLE_INSTANCE: &str = include_str!("../../data/eight_arc.txt");

/// 28-node, 40-arc Pan-European topology with randomized arc attributes.
pub const PAN_EUROPEAN_INSTANCE: &str = include_str!("../../data/pan_european.txt");

/// Seed used to draw the Pan-European arc attributes.
pub const PAN_EUROPEAN_SEED: u64 = 2022;

/// The eight-arc example at minimal-path granularity.
///
/// The arc endpoints are placeholders. The paths' arc sets are chosen to give
/// the intended lead times, costs and capacities, so the catalog is explicit
/// rather than enumerated.
#[derive(Clone, Debug, PartialEq)]
pub struct ExampleFixture<P = f64> {
    pub network: Network<P>,
    pub catalog: MpCatalog,
    pub query: Query,
}

pub fn example_fixture<P: Probability>() -> ExampleFixture<P> {
    let inst: Instance<P> = parse_instance(EXAMPLE_INSTANCE).expect("bundled fixture parses");
    let catalog = inst.catalog().expect("bundled fixture paths are valid");
    ExampleFixture {
        network: inst.network,
        catalog,
        query: inst.query.expect("bundled fixture carries a query"),
    }
}

pub fn pan_european_fixture<P: Probability>() -> Result<Network<P>> {
    Ok(parse_instance::<P>(PAN_EUROPEAN_INSTANCE)?.network)
}

/// Loads a Pan-European style topology from disk.
pub fn load_pan_european<P: Probability>(path: &Path) -> Result<Network<P>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_instance::<P>(&text)?.network)
}

/// Draws capacity, lead time and cost for each `(tail, head)` pair from the
/// generator's default ranges.
pub fn randomize_attributes<P: Probability>(
    n: usize,
    source: usize,
    sink: usize,
    endpoints: &[(usize, usize)],
    seed: u64,
) -> Result<Network<P>> {
    let ranges = GenConfig::new(n.max(4), seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs = endpoints
        .iter()
        .enumerate()
        .map(|(i, &(tail, head))| {
            let max_cap = rng.gen_range(ranges.cap_range.clone());
            let lead = rng.gen_range(ranges.lead_range.clone());
            let cost = rng.gen_range(ranges.cost_range.clone());
            Arc::new(i + 1, tail, head, max_cap, lead, cost).with_dist(capacity_distribution(max_cap))
        })
        .collect();
    Network::new(n, source, sink, arcs)
}

/// Ten demand levels `d* - 5 ..= d* + 4` around `d* = ceil(sum KP(M) / q)`,
/// each with its derived time and budget limits. Levels below 1 are skipped.
pub fn demand_sweep(cat: &MpCatalog) -> Result<Vec<Query>> {
    if cat.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let kp: u64 = cat.paths().iter().map(|p| p.kp_max() as u64).sum();
    let center = kp.div_ceil(cat.q() as u64) as i64;
    (center - 5..=center + 4).filter(|&d| d >= 1).map(|d| demand_query(cat, d as u64)).collect()
}
