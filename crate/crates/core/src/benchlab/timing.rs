//! Wall-clock timing of solution-set generation.
//!
//! Only generation is timed; the union-probability step is excluded. Each
//! measurement batches enough solves to fill `min_sample`, the first batch
//! is discarded as warmup, and the median per-solve time of the following
//! `repetitions` batches is reported.

use std::collections::BTreeMap;
use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::netmodel::{Network, Query};
use crate::pathfind::MpCatalog;
use crate::scalar::Probability;
use crate::solver::{solve, Algorithm, SolutionSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimingProtocol {
    pub warmup: usize,
    pub repetitions: usize,
    pub min_sample: Duration,
}

impl Default for TimingProtocol {
    fn default() -> Self {
        Self { warmup: 1, repetitions: 5, min_sample: Duration::from_micros(200) }
    }
}

#[derive(Clone, Debug)]
pub struct BenchInstance<P = f64> {
    pub name: String,
    /// Grouping key, e.g. the node count.
    pub group: usize,
    pub network: Network<P>,
    pub catalog: MpCatalog,
    pub query: Query,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimingRecord {
    pub instance: String,
    pub group: usize,
    pub algorithm: Algorithm,
    /// Median seconds per solve.
    pub seconds: f64,
    pub sigma: usize,
    pub k: usize,
    pub q: usize,
}

fn batch_seconds<P: Probability>(inst: &BenchInstance<P>, alg: Algorithm, iters: u64) -> f64 {
    let start = Instant::now();
    for _ in 0..iters {
        black_box(solve(black_box(&inst.network), black_box(&inst.catalog), black_box(&inst.query), alg));
    }
    start.elapsed().as_secs_f64() / iters as f64
}

/// Median per-solve time of `alg` on `inst`.
pub fn time_solve<P: Probability>(inst: &BenchInstance<P>, alg: Algorithm, protocol: &TimingProtocol) -> f64 {
    let mut iters = 1u64;
    loop {
        let start = Instant::now();
        for _ in 0..iters {
            black_box(solve(&inst.network, &inst.catalog, &inst.query, alg));
        }
        if start.elapsed() >= protocol.min_sample || iters >= 1 << 24 {
            break;
        }
        iters *= 2;
    }
    for _ in 0..protocol.warmup {
        batch_seconds(inst, alg, iters);
    }
    let mut samples: Vec<f64> = (0..protocol.repetitions.max(1)).map(|_| batch_seconds(inst, alg, iters)).collect();
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2].max(f64::MIN_POSITIVE)
}

/// Fails unless every solution set holds the same vectors.
pub fn check_agreement(name: &str, results: &[SolutionSet]) -> Result<()> {
    let Some(first) = results.first() else { return Ok(()) };
    let reference = first.vector_set();
    for r in &results[1..] {
        if r.vector_set() != reference {
            return Err(Error::Correctness(format!(
                "{} and {} disagree on instance {name}",
                first.algorithm, r.algorithm
            )));
        }
    }
    Ok(())
}

/// Times every algorithm on one instance after checking they agree.
pub fn benchmark_instance<P: Probability>(
    inst: &BenchInstance<P>,
    algorithms: &[Algorithm],
    protocol: &TimingProtocol,
) -> Result<Vec<TimingRecord>> {
    let results: Vec<_> = algorithms.iter().map(|&a| solve(&inst.network, &inst.catalog, &inst.query, a)).collect();
    check_agreement(&inst.name, &results)?;
    Ok(results
        .iter()
        .map(|r| TimingRecord {
            instance: inst.name.clone(),
            group: inst.group,
            algorithm: r.algorithm,
            seconds: time_solve(inst, r.algorithm, protocol),
            sigma: r.sigma(),
            k: r.counters.k,
            q: r.counters.q,
        })
        .collect())
}

/// Single-threaded benchmark over all instances; aborts on disagreement.
pub fn run_benchmark<P: Probability>(
    instances: &[BenchInstance<P>],
    algorithms: &[Algorithm],
    protocol: &TimingProtocol,
) -> Result<Vec<TimingRecord>> {
    let mut out = Vec::with_capacity(instances.len() * algorithms.len());
    for inst in instances {
        out.extend(benchmark_instance(inst, algorithms, protocol)?);
    }
    Ok(out)
}

/// Mean time per algorithm within one group.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRow {
    pub group: usize,
    pub instances: usize,
    pub mean_seconds: BTreeMap<Algorithm, f64>,
}

impl GroupRow {
    /// `mean(b) / mean(a)`.
    pub fn ratio(&self, a: Algorithm, b: Algorithm) -> Option<f64> {
        Some(self.mean_seconds.get(&b)? / self.mean_seconds.get(&a)?)
    }
}

pub fn group_means(records: &[TimingRecord]) -> Vec<GroupRow> {
    let mut acc: BTreeMap<usize, BTreeMap<Algorithm, (f64, usize)>> = BTreeMap::new();
    for r in records {
        let e = acc.entry(r.group).or_default().entry(r.algorithm).or_insert((0.0, 0));
        e.0 += r.seconds;
        e.1 += 1;
    }
    acc.into_iter()
        .map(|(group, by_alg)| GroupRow {
            group,
            instances: by_alg.values().map(|v| v.1).max().unwrap_or(0),
            mean_seconds: by_alg.into_iter().map(|(a, (s, c))| (a, s / c as f64)).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchlab::fixtures::example_fixture;

    fn example_bench() -> BenchInstance {
        let fx = example_fixture::<f64>();
        BenchInstance { name: "example".into(), group: 5, network: fx.network, catalog: fx.catalog, query: fx.query }
    }

    #[test]
    fn both_algorithms_time_positive_and_agree() {
        let protocol = TimingProtocol { min_sample: Duration::from_micros(20), ..Default::default() };
        let recs = run_benchmark(&[example_bench()], &Algorithm::ALL, &protocol).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs.iter().all(|r| r.seconds > 0.0 && r.sigma == 1 && r.q == 9));
        assert_eq!(recs[0].k, 4);
    }

    #[test]
    fn disagreement_aborts() {
        let inst = example_bench();
        let a = solve(&inst.network, &inst.catalog, &inst.query, Algorithm::Direct);
        let mut b = solve(&inst.network, &inst.catalog, &inst.query, Algorithm::Baseline);
        assert!(check_agreement("example", &[a.clone(), b.clone()]).is_ok());
        b.solutions[0].vector = crate::netmodel::StateVector::zeros(8);
        assert!(matches!(check_agreement("example", &[a, b]), Err(Error::Correctness(_))));
    }

    #[test]
    fn group_means_and_ratio() {
        let rec = |g, a, s| TimingRecord { instance: String::new(), group: g, algorithm: a, seconds: s, sigma: 0, k: 0, q: 0 };
        let rows = group_means(&[
            rec(11, Algorithm::Direct, 1.0),
            rec(11, Algorithm::Direct, 3.0),
            rec(11, Algorithm::Baseline, 4.0),
            rec(11, Algorithm::Baseline, 8.0),
            rec(12, Algorithm::Direct, 1.0),
        ]);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].mean_seconds[&Algorithm::Direct], 2.0);
        assert_eq!(rows[0].ratio(Algorithm::Direct, Algorithm::Baseline), Some(3.0));
        assert_eq!(rows[1].ratio(Algorithm::Direct, Algorithm::Baseline), None);
    }
}
