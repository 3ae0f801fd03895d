#![allow(dead_code)]

use mfnrel::{Arc, MpCatalog, Network, Probability, Query, StateVector};
use rand::Rng;

/// Random network with `2..=max_nodes` nodes and `1..=max_arcs` arcs, every
/// capacity in `1..=max_cap`, and a random full-support distribution.
pub fn random_network<R: Rng>(rng: &mut R, max_nodes: usize, max_arcs: usize, max_cap: u32) -> Network<f64> {
    let n = rng.gen_range(2..=max_nodes);
    let m = rng.gen_range(1..=max_arcs);
    let arcs = (1..=m)
        .map(|id| {
            let tail = rng.gen_range(1..=n);
            let mut head = rng.gen_range(1..n);
            if head >= tail {
                head += 1;
            }
            let cap = rng.gen_range(1..=max_cap);
            let weights: Vec<f64> = (0..=cap).map(|_| rng.gen_range(1..=9) as f64).collect();
            let total: f64 = weights.iter().sum();
            Arc::new(id, tail, head, cap, rng.gen_range(1..=3), rng.gen_range(1..=3))
                .with_dist(weights.iter().map(|w| w / total).collect())
        })
        .collect();
    Network::new(n, 1, n, arcs).unwrap()
}

pub fn random_query<R: Rng>(rng: &mut R) -> Query {
    Query::new(rng.gen_range(1..=6), rng.gen_range(1..=10), rng.gen_range(1..=30)).unwrap()
}

pub fn random_state<R: Rng, P: Probability>(rng: &mut R, net: &Network<P>) -> StateVector {
    StateVector::new(net.arcs().iter().map(|a| rng.gen_range(0..=a.max_cap)).collect())
}

/// Every state vector `0 <= x <= M`, in lexicographic order.
pub fn all_states<P: Probability>(net: &Network<P>) -> Vec<Vec<u32>> {
    let caps: Vec<u32> = net.arcs().iter().map(|a| a.max_cap).collect();
    let mut out = vec![vec![0u32; caps.len()]];
    let mut cur = vec![0u32; caps.len()];
    loop {
        let mut i = caps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < caps[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
        out.push(cur.clone());
    }
}

/// Source-to-sink simple paths as sorted arc-id sets, found by walking node
/// sequences and trying every arc between consecutive nodes.
pub fn naive_paths<P: Probability>(net: &Network<P>) -> Vec<Vec<usize>> {
    fn walk<P: Probability>(net: &Network<P>, node: usize, used_nodes: &mut Vec<usize>, arcs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if node == net.sink() {
            let mut set = arcs.clone();
            set.sort_unstable();
            out.push(set);
            return;
        }
        for next in 1..=net.node_count() {
            if used_nodes.contains(&next) {
                continue;
            }
            for a in net.arcs().iter().filter(|a| a.tail == node && a.head == next) {
                used_nodes.push(next);
                arcs.push(a.id);
                walk(net, next, used_nodes, arcs, out);
                arcs.pop();
                used_nodes.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(net, net.source(), &mut vec![net.source()], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Whether state `x` can send `d` units over some path of `cat` within `t`
/// and `b`, computed from the raw arc data.
pub fn naive_feasible<P: Probability>(net: &Network<P>, cat: &MpCatalog, q: &Query, x: &[u32]) -> bool {
    cat.paths().iter().any(|p| {
        let arcs: Vec<&Arc<P>> = p.arc_ids().iter().map(|&id| &net.arcs()[id - 1]).collect();
        let cost: u64 = arcs.iter().map(|a| a.unit_cost).sum::<u64>() * q.d;
        let width = arcs.iter().map(|a| x[a.id - 1]).min().unwrap();
        if cost > q.b || width == 0 {
            return false;
        }
        let lead: u64 = arcs.iter().map(|a| a.lead).sum();
        lead + q.d.div_ceil(width as u64) <= q.t
    })
}

/// Reliability and minimal feasible states by exhaustive enumeration.
pub fn naive_reliability(net: &Network<f64>, cat: &MpCatalog, q: &Query) -> (f64, Vec<Vec<u32>>) {
    let feasible: Vec<Vec<u32>> = all_states(net).into_iter().filter(|x| naive_feasible(net, cat, q, x)).collect();
    let prob = feasible
        .iter()
        .map(|x| net.arcs().iter().map(|a| a.dist.as_ref().unwrap()[x[a.id - 1] as usize]).product::<f64>())
        .sum();
    // feasibility is monotone, so x is minimal iff every single decrement is infeasible
    let set: std::collections::HashSet<&Vec<u32>> = feasible.iter().collect();
    let minimal = feasible
        .iter()
        .filter(|x| {
            (0..x.len()).filter(|&i| x[i] > 0).all(|i| {
                let mut y = (*x).clone();
                y[i] -= 1;
                !set.contains(&y)
            })
        })
        .cloned()
        .collect();
    (prob, minimal)
}
