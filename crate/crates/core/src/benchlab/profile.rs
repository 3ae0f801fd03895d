//! Performance profiles over a time matrix.
//!
//! For instance `i` and solver `j`, the ratio is `r[i][j] = t[i][j] / min_j t[i][j]`
//! and the profile `Pr_j(tau)` is the fraction of instances with
//! `r[i][j] <= tau`.

use crate::error::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileData {
    pub labels: Vec<String>,
    /// `ratios[j][i]`, one row per solver.
    pub ratios: Vec<Vec<f64>>,
    /// Log-spaced from 1 to the largest ratio, both ends exact.
    pub taus: Vec<f64>,
    /// `curves[j][t]` is `Pr_j(taus[t])`.
    pub curves: Vec<Vec<f64>>,
}

impl ProfileData {
    pub fn instances(&self) -> usize {
        self.ratios.first().map_or(0, Vec::len)
    }

    /// `Pr_j(tau)` evaluated exactly at any `tau`.
    pub fn pr(&self, j: usize, tau: f64) -> f64 {
        let row = &self.ratios[j];
        row.iter().filter(|&&r| r <= tau).count() as f64 / row.len() as f64
    }

    pub fn max_ratio(&self) -> f64 {
        self.taus.last().copied().unwrap_or(1.0)
    }
}

/// Builds the profile from `times[i][j]` (instance `i`, solver `j`).
pub fn performance_profile(times: &[Vec<f64>], labels: &[String], grid_points: usize) -> Result<ProfileData> {
    if times.is_empty() {
        return Err(Error::Data("performance profile needs at least one instance".into()));
    }
    let solvers = labels.len();
    if solvers < 2 {
        return Err(Error::Data("performance profile needs at least two solvers".into()));
    }
    let mut ratios = vec![Vec::with_capacity(times.len()); solvers];
    for (i, row) in times.iter().enumerate() {
        if row.len() != solvers {
            return Err(Error::Data(format!("instance {i} has {} times for {solvers} solvers", row.len())));
        }
        if let Some(&bad) = row.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
            return Err(Error::Data(format!("instance {i} has non-positive time {bad}")));
        }
        let best = row.iter().copied().fold(f64::INFINITY, f64::min);
        for (j, &t) in row.iter().enumerate() {
            ratios[j].push(if t == best { 1.0 } else { t / best });
        }
    }

    let max_ratio = ratios.iter().flatten().copied().fold(1.0, f64::max);
    let points = grid_points.max(2);
    let taus: Vec<f64> = if max_ratio == 1.0 {
        vec![1.0]
    } else {
        let span = max_ratio.ln();
        let mut g: Vec<f64> = (0..points).map(|p| (span * p as f64 / (points - 1) as f64).exp()).collect();
        g[0] = 1.0;
        g[points - 1] = max_ratio;
        g
    };

    let mut data = ProfileData { labels: labels.to_vec(), ratios, taus, curves: Vec::new() };
    data.curves = (0..solvers).map(|j| data.taus.iter().map(|&t| data.pr(j, t)).collect()).collect();
    Ok(data)
}
