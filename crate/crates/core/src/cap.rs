//! Hyperspherical caps on the unit 3-sphere in R^4: membership of lattice
//! points, the cap-area fraction, cap-restricted representation counts
//! `r(n, Ω)`, and equidistribution experiments comparing `r(n, Ω)/r(n)`
//! against the area fraction.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use std::f64::consts::PI;

use crate::counting::{self, LatticePoint4, DEFAULT_ENUMERATION_BUDGET};
use crate::vec4;
use crate::Error;

/// Relative tolerance of the membership comparison. Mathematically exact
/// boundary points (an equator point of a hemisphere, a 45-degree lattice
/// point) land on the wrong side of a naive `⟨axis, y⟩ ≥ |axis|·√n·cos θ`
/// purely through rounding of `cos`/`sqrt`; widening the threshold by this
/// much keeps them included, as the closed-cap definition requires.
pub(crate) const BOUNDARY_TOL: f64 = 1e-12;

/// The points of the unit 3-sphere within angle `theta` of `axis`.
///
/// The axis sets a direction only and need not be unit length; `theta = π`
/// covers the whole sphere (admitted so that degenerate full-sphere cases
/// are expressible).
#[derive(Debug, Clone, Copy)]
pub struct Cap {
    axis: [f64; 4],
    theta: f64,
    cos_theta: f64,
}

impl Cap {
    pub fn new(axis: [f64; 4], theta: f64) -> Result<Self, Error> {
        if !axis.iter().all(|c| c.is_finite()) || vec4::dot(axis, axis) == 0.0 {
            return Err(Error::InvalidAxis);
        }
        if !(theta > 0.0 && theta <= PI) {
            return Err(Error::DomainError(theta));
        }
        Ok(Cap { axis, theta, cos_theta: theta.cos() })
    }

    pub fn axis(&self) -> [f64; 4] {
        self.axis
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The smallest inner product `⟨axis, y⟩` that counts as inside, for
    /// points on the sphere of squared radius `n`. One canonical formula so
    /// that membership tests agree bit for bit everywhere.
    pub(crate) fn threshold(&self, n: u64) -> f64 {
        vec4::len(self.axis) * (n as f64).sqrt() * (self.cos_theta - BOUNDARY_TOL)
    }

    /// Membership of a lattice point on the sphere of squared radius `n`.
    ///
    /// Evaluated in the inner-product form `⟨axis, y⟩ ≥ |axis|·√n·cos θ`,
    /// which includes the boundary and never feeds arccos a value rounded
    /// outside `[-1, 1]`; the comparison carries [`BOUNDARY_TOL`].
    pub fn contains(&self, y: &LatticePoint4, n: u64) -> bool {
        debug_assert_eq!(y.norm2(), n);
        let yf = [y.0[0] as f64, y.0[1] as f64, y.0[2] as f64, y.0[3] as f64];
        vec4::dot(self.axis, yf) >= self.threshold(n)
    }
}

/// Fraction of the 3-sphere's surface covered by a cap of angular radius
/// `theta`: `(θ − sin θ · cos θ)/π`. Strictly increasing, with value 1/2 at
/// the hemisphere and 1 at `θ = π`.
pub fn cap_area_ratio(theta: f64) -> Result<f64, Error> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::DomainError(theta));
    }
    Ok((theta - theta.sin() * theta.cos()) / PI)
}

/// `r(n, Ω)`: how many of the `r4(n)` representations of `n` land in the
/// cap after normalization to the unit sphere.
pub fn count_in_cap(n: u64, cap: &Cap) -> Result<u64, Error> {
    count_in_cap_with_budget(n, cap, DEFAULT_ENUMERATION_BUDGET)
}

pub fn count_in_cap_with_budget(n: u64, cap: &Cap, budget: u64) -> Result<u64, Error> {
    let pts = counting::enumerate_four_squares_with_budget(n, budget)?;
    #[cfg(feature = "parallel")]
    let count = pts.par_iter().filter(|y| cap.contains(y, n)).count();
    #[cfg(not(feature = "parallel"))]
    let count = pts.iter().filter(|y| cap.contains(y, n)).count();
    Ok(count as u64)
}

/// One experiment row: the counts and the ratio for a single odd `n`.
#[derive(Debug, Clone, Copy)]
pub struct EquiRow {
    pub n: u64,
    pub r_n: u64,
    pub r_n_cap: u64,
    pub ratio: f64,
    pub rel_error: f64,
}

/// Cap-count equidistribution experiment over the odd `n` in a range.
///
/// `rel_error` compares `r(n, Ω)/r(n)` against the cap's area fraction; the
/// aggregates summarize how fast the ratios settle toward it.
#[derive(Debug, Clone)]
pub struct EquiReport {
    pub n_lo: u64,
    pub n_hi: u64,
    pub cap: Cap,
    pub rows: Vec<EquiRow>,
    pub predicted_ratio: f64,
    pub mean_rel_error: f64,
    pub max_rel_error: f64,
}

impl EquiReport {
    /// CSV with header `n,r_n,r_n_cap,ratio,predicted,rel_error`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,r_n,r_n_cap,ratio,predicted,rel_error\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.n, row.r_n, row.r_n_cap, row.ratio, self.predicted_ratio, row.rel_error
            ));
        }
        out
    }
}

fn equi_row(n: u64, cap: &Cap, predicted: f64, budget: u64, seq: bool) -> Result<EquiRow, Error> {
    let count = if seq {
        let pts = counting::enumerate_four_squares_seq_with_budget(n, budget)?;
        pts.iter().filter(|y| cap.contains(y, n)).count() as u64
    } else {
        count_in_cap_with_budget(n, cap, budget)?
    };
    let r_n = counting::r4(n);
    let ratio = count as f64 / r_n as f64;
    Ok(EquiRow { n, r_n, r_n_cap: count, ratio, rel_error: (ratio - predicted).abs() / predicted })
}

fn assemble(n_lo: u64, n_hi: u64, cap: Cap, predicted: f64, rows: Vec<EquiRow>) -> EquiReport {
    let max_rel_error = rows.iter().map(|r| r.rel_error).fold(0.0, f64::max);
    let mean_rel_error = if rows.is_empty() {
        0.0
    } else {
        rows.iter().map(|r| r.rel_error).sum::<f64>() / rows.len() as f64
    };
    EquiReport { n_lo, n_hi, cap, rows, predicted_ratio: predicted, mean_rel_error, max_rel_error }
}

fn odd_values(n_lo: u64, n_hi: u64) -> Vec<u64> {
    (n_lo.max(1)..=n_hi).filter(|n| n % 2 == 1).collect()
}

/// Runs the experiment for every odd `n` in `[n_lo, n_hi]`.
pub fn equidistribution_report(n_lo: u64, n_hi: u64, cap: &Cap) -> Result<EquiReport, Error> {
    equidistribution_report_with_budget(n_lo, n_hi, cap, DEFAULT_ENUMERATION_BUDGET)
}

pub fn equidistribution_report_with_budget(
    n_lo: u64,
    n_hi: u64,
    cap: &Cap,
    budget: u64,
) -> Result<EquiReport, Error> {
    let predicted = cap_area_ratio(cap.theta)?;
    let ns = odd_values(n_lo, n_hi);
    #[cfg(feature = "parallel")]
    let rows: Result<Vec<EquiRow>, Error> =
        ns.par_iter().map(|&n| equi_row(n, cap, predicted, budget, false)).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Result<Vec<EquiRow>, Error> =
        ns.iter().map(|&n| equi_row(n, cap, predicted, budget, false)).collect();
    Ok(assemble(n_lo, n_hi, *cap, predicted, rows?))
}

/// Sequential reference lane of [`equidistribution_report`].
pub fn equidistribution_report_seq(n_lo: u64, n_hi: u64, cap: &Cap) -> Result<EquiReport, Error> {
    let predicted = cap_area_ratio(cap.theta)?;
    let rows: Result<Vec<EquiRow>, Error> = odd_values(n_lo, n_hi)
        .into_iter()
        .map(|n| equi_row(n, cap, predicted, DEFAULT_ENUMERATION_BUDGET, true))
        .collect();
    Ok(assemble(n_lo, n_hi, *cap, predicted, rows?))
}
