//! Minimal-path enumeration.
//!
//! In a directed network every simple source-to-sink path is minimal: each
//! node on it has exactly one outgoing path arc, so the only sub-walk from
//! the source that reaches the sink is the path itself. Enumeration is a
//! depth-first search that tries outgoing arcs in ascending id order.

use std::fmt;

use crate::error::{Error, Result};
use crate::netmodel::{path_stats, MinimalPath, Network};
use crate::scalar::Probability;

pub const DEFAULT_MP_LIMIT: usize = 100_000;

/// All minimal paths of a network in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MpCatalog {
    paths: Vec<MinimalPath>,
}

impl MpCatalog {
    pub fn new(paths: Vec<MinimalPath>) -> Self {
        Self { paths }
    }

    /// Builds a catalog from explicit arc sets, computing caches from `net`.
    pub fn from_arc_sets<P: Probability>(net: &Network<P>, sets: &[Vec<usize>]) -> Result<Self> {
        let paths = sets.iter().map(|s| path_stats(net, s)).collect::<Result<_>>()?;
        Ok(Self { paths })
    }

    pub fn paths(&self) -> &[MinimalPath] {
        &self.paths
    }

    /// Number of minimal paths.
    pub fn q(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// The 1-based `j`-th path.
    pub fn get(&self, j: usize) -> Option<&MinimalPath> {
        j.checked_sub(1).and_then(|i| self.paths.get(i))
    }
}

pub fn enumerate_mps<P: Probability>(net: &Network<P>) -> Result<MpCatalog> {
    enumerate_mps_with_limit(net, DEFAULT_MP_LIMIT)
}

/// Enumerates every simple source-to-sink path, failing once more than
/// `limit` paths have been found.
pub fn enumerate_mps_with_limit<P: Probability>(net: &Network<P>, limit: usize) -> Result<MpCatalog> {
    let n = net.node_count();
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for arc in net.arcs() {
        out[arc.tail].push((arc.id, arc.head));
    }

    struct Search<'a> {
        out: &'a [Vec<(usize, usize)>],
        sink: usize,
        limit: usize,
        on_path: Vec<bool>,
        stack: Vec<usize>,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn visit(&mut self, node: usize) -> bool {
            self.on_path[node] = true;
            for &(arc, head) in &self.out[node] {
                if head == self.sink {
                    if self.found.len() == self.limit {
                        return false;
                    }
                    let mut ids = self.stack.clone();
                    ids.push(arc);
                    self.found.push(ids);
                } else if !self.on_path[head] {
                    self.stack.push(arc);
                    let keep_going = self.visit(head);
                    self.stack.pop();
                    if !keep_going {
                        return false;
                    }
                }
            }
            self.on_path[node] = false;
            true
        }
    }

    let mut search = Search {
        out: &out,
        sink: net.sink(),
        limit,
        on_path: vec![false; n + 1],
        stack: Vec::new(),
        found: Vec::new(),
    };
    if !search.visit(net.source()) {
        return Err(Error::resource("minimal path count", limit as u64));
    }
    MpCatalog::from_arc_sets(net, &search.found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Empty,
    UnknownArc(usize),
    /// The arcs do not chain into a single source-to-sink walk.
    NotAWalk,
    RepeatedNode(usize),
    /// Some other catalog path is a proper subset of this one.
    NotMinimal { subset: usize },
    Duplicate { of: usize },
    CacheMismatch { field: &'static str, cached: u64, actual: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1-based catalog index.
    pub path: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "path {}: ", self.path)?;
        match &self.kind {
            ViolationKind::Empty => write!(f, "empty arc set"),
            ViolationKind::UnknownArc(id) => write!(f, "unknown arc {id}"),
            ViolationKind::NotAWalk => write!(f, "arcs do not form a source-to-sink walk"),
            ViolationKind::RepeatedNode(v) => write!(f, "node {v} visited twice"),
            ViolationKind::NotMinimal { subset } => write!(f, "contains path {subset}"),
            ViolationKind::Duplicate { of } => write!(f, "duplicates path {of}"),
            ViolationKind::CacheMismatch { field, cached, actual } => {
                write!(f, "cached {field}={cached} but recomputes to {actual}")
            }
        }
    }
}

/// Every problem found in a catalog; empty when the catalog is sound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogReport {
    pub violations: Vec<Violation>,
}

impl CatalogReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, path: usize, pred: impl Fn(&ViolationKind) -> bool) -> bool {
        self.violations.iter().any(|v| v.path == path && pred(&v.kind))
    }
}

/// Checks connectivity, simplicity, mutual non-inclusion and caches.
pub fn validate_catalog<P: Probability>(net: &Network<P>, cat: &MpCatalog) -> CatalogReport {
    let mut violations = Vec::new();
    let mut push = |path: usize, kind: ViolationKind| violations.push(Violation { path, kind });

    for (i, path) in cat.paths().iter().enumerate() {
        let j = i + 1;
        if path.is_empty() {
            push(j, ViolationKind::Empty);
            continue;
        }
        if let Some(&bad) = path.arc_ids().iter().find(|&&id| net.arc(id).is_err()) {
            push(j, ViolationKind::UnknownArc(bad));
            continue;
        }

        // Follow the unique path arc out of each node starting at the source.
        let mut node = net.source();
        let mut seen = vec![false; net.node_count() + 1];
        seen[node] = true;
        let mut used = 0;
        let mut walk_ok = true;
        while node != net.sink() {
            let mut next = path.arc_ids().iter().filter(|&&id| net.arcs()[id - 1].tail == node);
            let Some(&arc_id) = next.next() else {
                walk_ok = false;
                break;
            };
            if next.next().is_some() {
                walk_ok = false;
                break;
            }
            used += 1;
            node = net.arcs()[arc_id - 1].head;
            if seen[node] {
                push(j, ViolationKind::RepeatedNode(node));
                walk_ok = false;
                break;
            }
            seen[node] = true;
        }
        if walk_ok && used != path.len() {
            walk_ok = false;
        }
        if !walk_ok {
            push(j, ViolationKind::NotAWalk);
        }

        if let Ok(fresh) = path_stats(net, path.arc_ids()) {
            let checks = [
                ("lp", path.lp(), fresh.lp()),
                ("cp", path.cp(), fresh.cp()),
                ("kp_max", path.kp_max() as u64, fresh.kp_max() as u64),
            ];
            for (field, cached, actual) in checks {
                if cached != actual {
                    push(j, ViolationKind::CacheMismatch { field, cached, actual });
                }
            }
        }
    }

    for (i, a) in cat.paths().iter().enumerate() {
        for (r, b) in cat.paths().iter().enumerate() {
            if i == r || b.is_empty() {
                continue;
            }
            if a.arc_ids() == b.arc_ids() {
                if r < i {
                    violations.push(Violation { path: i + 1, kind: ViolationKind::Duplicate { of: r + 1 } });
                }
            } else if b.is_subset_of(a) {
                violations.push(Violation { path: i + 1, kind: ViolationKind::NotMinimal { subset: r + 1 } });
            }
        }
    }
    CatalogReport { violations }
}
