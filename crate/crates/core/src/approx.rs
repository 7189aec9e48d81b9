//! Constructive approximation of an arbitrary quaternion by a quotient of
//! Hurwitz primes.
//!
//! For a target `h` with nonzero norm and a tolerance `eps`, the search
//! shrinks `eps` to `eps_eff` so that it sits below both `‖h‖` and `1/‖h‖`,
//! derives a cap angle `eps1 = eps_eff²/(10(‖h‖ + eps_eff))`, and then hunts
//! for two prime spheres:
//!
//! - a denominator prime `q` whose sphere carries a lattice point `x` within
//!   angle `eps1` of the first axis (so `x ≈ (√q, 0, 0, 0)`), and
//! - a numerator prime `p` in the open interval
//!   `(q(‖h‖ − eps²/10), q(‖h‖ + eps²/10))` whose sphere carries a lattice
//!   point `y` within angle `eps1` of the direction of `h`.
//!
//! With `q = x` and `p = y` read as Hurwitz integers, `p·q⁻¹ ≈ (x1/q)·p ≈ h`.
//! The inequality chain behind that estimate is re-checked on every accepted
//! candidate, but acceptance itself is by direct measurement of
//! `|h − p·q⁻¹|` — never by trusting the bounds.
//!
//! Neither sphere is searched by full enumeration. The denominator sweep
//! visits `q = m² + s` for small `s` (the only odd numbers whose sphere can
//! meet a narrow axis cap) and checks whether the residual `s` is a sum of
//! three squares; the numerator check enumerates the few lattice points in
//! the ball of radius `√(2p(1 − cos eps1))` around `√p·ĥ`, which contains
//! every cap point of the sphere. Both are exactly equivalent to filtering
//! the full enumeration and keep the search feasible for spheres around
//! `10^11` and beyond.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use std::f64::consts::PI;

use crate::cap::{self, Cap};
use crate::counting::{self, LatticePoint4};
use crate::quaternion::{HurwitzInt, Quaternion, Subring};
use crate::vec4;
use crate::Error;

/// Default cap on candidate denominator primes per request.
pub const DEFAULT_SEARCH_BUDGET: u64 = 5000;

/// Which quotient convention to approximate with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientSide {
    /// `p · q⁻¹`
    Right,
    /// `q⁻¹ · p`
    Left,
}

/// An approximation request. `subring` selects where the returned primes
/// must live: `H1` (integer coordinates, the default), `H2` (half-odd
/// coordinates, right quotients only), or `Any`.
#[derive(Debug, Clone, Copy)]
pub struct ApproxRequest {
    pub h: Quaternion,
    pub eps: f64,
    pub side: QuotientSide,
    pub subring: Subring,
    pub search_budget: u64,
}

impl ApproxRequest {
    pub fn new(h: Quaternion, eps: f64) -> Self {
        ApproxRequest {
            h,
            eps,
            side: QuotientSide::Right,
            subring: Subring::H1,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }

    pub fn side(mut self, side: QuotientSide) -> Self {
        self.side = side;
        self
    }

    pub fn subring(mut self, subring: Subring) -> Self {
        self.subring = subring;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.search_budget = budget;
        self
    }
}

/// Search effort counters.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct SearchStats {
    /// Primality checks spent on candidate spheres.
    pub primes_tried: u64,
    /// Lattice points visited while scanning spheres for cap members.
    pub lattice_points_scanned: u64,
    /// Denominator candidates consumed (one per outer search round).
    pub q_retries: u64,
}

/// A verified approximation: two Hurwitz primes, their quotient, and the
/// measured error.
#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub p: HurwitzInt,
    pub q: HurwitzInt,
    pub quotient: Quaternion,
    pub achieved_error: f64,
    /// The caller's tolerance.
    pub eps: f64,
    /// Cap angle used by the search; zero for the zero-target branch.
    pub eps1: f64,
    pub p_norm: u64,
    pub q_norm: u64,
    pub side: QuotientSide,
    pub subring: Subring,
    pub stats: SearchStats,
}

impl ApproxResult {
    /// JSON object with doubled coordinates for `p` and `q`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p.doubled(),
            "q": self.q.doubled(),
            "p_norm": self.p_norm,
            "q_norm": self.q_norm,
            "side": match self.side { QuotientSide::Right => "right", QuotientSide::Left => "left" },
            "subring": match self.subring { Subring::H2 => "H2", _ => "H1" },
            "quotient": self.quotient.embed(),
            "achieved_error": self.achieved_error,
            "eps": self.eps,
            "eps1": self.eps1,
            "stats": {
                "primes_tried": self.stats.primes_tried,
                "lattice_points_scanned": self.stats.lattice_points_scanned,
                "q_retries": self.stats.q_retries,
            },
        })
    }
}

/// Cap angle for the sphere searches: `eps²/(10(‖h‖ + eps))`. Stays at or
/// below one whenever `eps < min(‖h‖, 1/‖h‖)`.
pub fn epsilon1(h: &Quaternion, eps: f64) -> f64 {
    eps * eps / (10.0 * (h.norm() + eps))
}

/// Multiplies by the unit `(1 + i + j + k)/2` on the right, moving an
/// odd-norm integer-coordinate element into the half-odd subring while
/// preserving norm, primality, and (for right quotients) quotient values.
pub fn to_h2(a: &HurwitzInt) -> Result<HurwitzInt, Error> {
    debug_assert_eq!(a.subring(), Subring::H1, "to_h2 expects integer coordinates");
    let n = a.hnorm();
    if n % 2 == 0 {
        // with an even norm the coordinate sum is even and the product
        // stays in H1
        return Err(Error::EvenNorm(n));
    }
    let u = HurwitzInt::from_doubled([1, 1, 1, 1]).expect("unit");
    let out = a.mul(&u);
    debug_assert_eq!(out.subring(), Subring::H2);
    debug_assert_eq!(out.hnorm(), n);
    Ok(out)
}

/// Smallest odd prime `q ≥ start` whose sphere meets the cap of angle
/// `eps1` around the first axis, together with the cap point maximizing the
/// first coordinate (ties broken toward the lexicographically largest
/// point).
///
/// `budget` bounds the primality checks spent before giving up.
pub fn find_q(eps1: f64, start: u64, budget: u64) -> Result<(u64, LatticePoint4), Error> {
    let mut stats = SearchStats::default();
    find_q_inner(eps1, start, budget, &mut stats)
}

fn find_q_inner(
    theta: f64,
    start: u64,
    budget: u64,
    stats: &mut SearchStats,
) -> Result<(u64, LatticePoint4), Error> {
    assert!(theta > 0.0 && theta <= PI, "cap angle {theta} outside (0, pi]");
    let cap = Cap::new([1.0, 0.0, 0.0, 0.0], theta).expect("axis cap");
    let cos_eff = theta.cos() - cap::BOUNDARY_TOL;
    let start = start.max(3);
    // A sphere q meets the axis cap iff some x1 in [√q·cosθ, √q] leaves a
    // residual q − x1² that is a sum of three squares. Writing q = m² + s
    // with 1 ≤ s ≤ 2m sweeps the odd numbers in ascending order while
    // skipping, for narrow caps, the (vast) stretches where the window
    // [√q·cosθ, √q] contains no integer at all: there s must stay below
    // roughly m²·tan²θ.
    let tan2 = if cos_eff > 0.0 { 1.0 / (cos_eff * cos_eff) - 1.0 } else { f64::INFINITY };
    let mut checks = 0u64;
    let mut m = start.isqrt();
    loop {
        let s_hi = if cos_eff > 0.0 {
            let lim = (m as f64) * (m as f64) * tan2;
            if lim >= (2 * m) as f64 {
                2 * m
            } else {
                // slack of two; the membership threshold is the authority
                (lim as u64).saturating_add(2).min(2 * m)
            }
        } else {
            2 * m
        };
        let s_lo = if m * m < start { (start - m * m).max(1) } else { 1 };
        for s in s_lo..=s_hi {
            let q = m * m + s;
            if q % 2 == 0 {
                continue;
            }
            let axis_floor = cap.threshold(q);
            // descend from the largest possible first coordinate
            let mut x1 = m;
            loop {
                if (x1 as f64) < axis_floor {
                    break;
                }
                let residual = q - x1 * x1;
                if counting::three_square_representable(residual) {
                    checks += 1;
                    stats.primes_tried += 1;
                    if counting::is_prime(q) {
                        let rest = counting::lex_max_three_square(residual).expect("representable");
                        let x = LatticePoint4([x1 as i64, rest[0], rest[1], rest[2]]);
                        debug_assert_eq!(x.norm2(), q);
                        return Ok((q, x));
                    }
                    break; // composite sphere; next q
                }
                if x1 == 0 {
                    break;
                }
                x1 -= 1;
            }
            if checks >= budget {
                return Err(Error::BudgetExhausted { best: None, stats: *stats });
            }
        }
        m += 1;
        if m > 3_000_000_000 {
            // q would overflow the supported range long before this
            return Err(Error::BudgetExhausted { best: None, stats: *stats });
        }
    }
}

/// First prime `p` in the open interval `(q(‖h‖ − eps²/10), q(‖h‖ + eps²/10))`
/// whose sphere carries a lattice point within angle `eps1` of the direction
/// of `h`, together with the lexicographically smallest such point.
pub fn find_p(
    q: u64,
    h: &Quaternion,
    eps: f64,
    eps1: f64,
) -> Result<(u64, LatticePoint4), Error> {
    let mut stats = SearchStats::default();
    find_p_inner(q, h, eps, eps1, &mut stats)
}

fn find_p_inner(
    q: u64,
    h: &Quaternion,
    eps: f64,
    theta: f64,
    stats: &mut SearchStats,
) -> Result<(u64, LatticePoint4), Error> {
    let hn = h.norm();
    assert!(hn > 0.0, "the numerator search needs a nonzero target");
    let lo = q as f64 * (hn - eps * eps / 10.0);
    let hi = q as f64 * (hn + eps * eps / 10.0);
    let cap = Cap::new(h.embed(), theta)?;
    let axis = h.embed();
    let axis_len = vec4::len(axis);
    let unit = [axis[0] / axis_len, axis[1] / axis_len, axis[2] / axis_len, axis[3] / axis_len];
    let sin_half = (0.5 * theta).sin();

    let mut primes = counting::interval_primes(lo, hi);
    let mut any_prime = false;
    const CHUNK: usize = 16;
    loop {
        let chunk: Vec<u64> = primes.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        any_prime = true;
        // candidate spheres are independent, so they can be checked
        // speculatively; the reported hit and statistics follow the
        // sequential candidate order
        #[cfg(feature = "parallel")]
        let outcomes: Vec<(Option<LatticePoint4>, u64)> = chunk
            .par_iter()
            .map(|&p| lex_min_cap_point(p, unit, sin_half, &cap))
            .collect();
        #[cfg(not(feature = "parallel"))]
        let outcomes: Vec<(Option<LatticePoint4>, u64)> = chunk
            .iter()
            .map(|&p| lex_min_cap_point(p, unit, sin_half, &cap))
            .collect();
        for (i, (hit, visited)) in outcomes.iter().enumerate() {
            stats.primes_tried += 1;
            stats.lattice_points_scanned += visited;
            if let Some(y) = hit {
                return Ok((chunk[i], *y));
            }
        }
    }
    Err(if any_prime {
        Error::NoLatticePointInCap { lo, hi }
    } else {
        Error::NoPrimeInInterval { lo, hi }
    })
}

/// Scans the lattice ball that encloses the cap of half-chord `2√p·sin(θ/2)`
/// around `√p · unit` for points of squared length exactly `p`, in ascending
/// lexicographic order. Returns the first cap member plus the number of
/// interior nodes visited.
fn lex_min_cap_point(
    p: u64,
    unit: [f64; 4],
    sin_half: f64,
    cap: &Cap,
) -> (Option<LatticePoint4>, u64) {
    let r = (p as f64).sqrt();
    // every point passing the membership threshold satisfies
    // |y − r·unit|² ≤ 2p(1 − cosθ + tolerance) = 4p·sin²(θ/2) + 2p·tolerance
    let rho2 = p as f64 * (4.0 * sin_half * sin_half + 2.0 * cap::BOUNDARY_TOL);
    let rho = rho2.sqrt() * (1.0 + 1e-12) + 1e-6;
    let center = [r * unit[0], r * unit[1], r * unit[2], r * unit[3]];
    let mut visited = 0u64;
    let range = |c: f64, radius: f64| {
        let lo = (c - radius).floor() as i64;
        let hi = (c + radius).ceil() as i64;
        lo..=hi
    };
    let p_i = p as i64;
    for y1 in range(center[0], rho) {
        let d1 = y1 as f64 - center[0];
        let rem1 = rho * rho - d1 * d1;
        if rem1 < 0.0 {
            continue;
        }
        let r1 = rem1.sqrt();
        for y2 in range(center[1], r1) {
            let d2 = y2 as f64 - center[1];
            let rem2 = rem1 - d2 * d2;
            if rem2 < 0.0 {
                continue;
            }
            let r2 = rem2.sqrt();
            for y3 in range(center[2], r2) {
                visited += 1;
                let partial = y1 * y1 + y2 * y2 + y3 * y3;
                if partial > p_i {
                    continue;
                }
                if let Some(t) = counting::perfect_sqrt((p_i - partial) as u64) {
                    let t = t as i64;
                    let candidates = if t == 0 { [0, 0] } else { [-t, t] };
                    let mut seen_zero = false;
                    for &y4 in &candidates {
                        if t == 0 && seen_zero {
                            break;
                        }
                        seen_zero = true;
                        let pt = LatticePoint4([y1, y2, y3, y4]);
                        if cap.contains(&pt, p) {
                            return (Some(pt), visited);
                        }
                    }
                }
            }
        }
    }
    (None, visited)
}

/// Non-strict comparison for re-checking real inequalities whose sides are
/// evaluated in floating point. `rel` covers evaluation rounding; `abs`
/// covers the membership threshold's boundary tolerance, which admits points
/// whose cosine falls short of `cos θ` by up to that much.
fn holds(lhs: f64, rhs: f64, rel: f64, abs: f64) -> bool {
    lhs <= rhs * (1.0 + rel) + abs
}

/// Re-derives the inequality chain that makes the accepted candidate work.
/// A violation means the search fed itself an invalid sphere point, so it
/// aborts loudly instead of returning a subtly wrong witness. All slacks sit
/// orders of magnitude below the chain's real safety margins.
fn check_candidate_bounds(
    h: &Quaternion,
    eps: f64,
    theta: f64,
    q: u64,
    x: &LatticePoint4,
    p: u64,
    y: &LatticePoint4,
) {
    let hn = h.norm();
    let sqrt_q = (q as f64).sqrt();
    let x1 = x.0[0];
    assert!(x1 >= 0, "denominator cap point has negative axis coordinate");
    let s_x = q - (x1 * x1) as u64;

    // axis deficit 1 − x1/√q, in a cancellation-free form
    let deficit = s_x as f64 / (sqrt_q * (sqrt_q + x1 as f64));
    assert!(
        holds(deficit, 0.5 * theta * theta, 1e-9, 2.0 * cap::BOUNDARY_TOL),
        "axis alignment bound violated: 1 - x1/sqrt(q) = {deficit:e} for q={q}, x={:?}",
        x.0
    );

    // transverse coordinates of x stay below √q·θ
    for l in 1..4 {
        let xl = x.0[l] as f64;
        assert!(
            holds(xl * xl / q as f64, theta * theta, 1e-9, 4.0 * cap::BOUNDARY_TOL),
            "transverse bound violated at coordinate {l}: x={:?}, q={q}",
            x.0
        );
    }

    // p/q stays inside the radial shell around ‖h‖
    assert!(
        holds(p as f64 / q as f64, hn + eps * eps / 10.0, 1e-9, 0.0),
        "radial shell bound violated: p/q = {} vs {}",
        p as f64 / q as f64,
        hn + eps * eps / 10.0
    );

    // squared deviation of y/√q from the embedded target
    let he = h.embed();
    let mut dev2 = 0.0;
    for (hc, yc) in he.iter().zip(&y.0) {
        let d = hc - *yc as f64 / sqrt_q;
        dev2 += d * d;
    }
    assert!(
        holds(dev2, eps * eps / 9.0, 1e-9, 10.0 * cap::BOUNDARY_TOL * (1.0 + hn)),
        "direction bound violated: |h - y/sqrt(q)|^2 = {dev2:e} vs eps^2/9 = {:e}",
        eps * eps / 9.0
    );

    // transverse part of the quotient error
    let transverse: f64 = (1..4).map(|l| x.0[l].unsigned_abs() as f64).sum::<f64>()
        * (p as f64).sqrt()
        / q as f64;
    assert!(
        holds(transverse, eps / 3.0, 1e-6, 0.0),
        "transverse quotient bound violated: {transverse:e} vs eps/3"
    );

    // radial part of the quotient error
    let y_quat = Quaternion::new(y.0[0] as f64, y.0[1] as f64, y.0[2] as f64, y.0[3] as f64);
    let radial = h.distance(y_quat.scale(x1 as f64 / q as f64));
    assert!(
        holds(radial, 2.0 * eps / 3.0, 1e-6, 0.0),
        "radial quotient bound violated: {radial:e} vs 2·eps/3"
    );
}

fn quotient_for(side: QuotientSide, p: &HurwitzInt, q: &HurwitzInt) -> Result<Quaternion, Error> {
    match side {
        QuotientSide::Right => p.to_quaternion().right_quotient(q.to_quaternion()),
        QuotientSide::Left => p.to_quaternion().left_quotient(q.to_quaternion()),
    }
}

/// Zero-target branch: rational primes with `p < q·eps²`, searched over
/// ascending `q` and then ascending `p`, lifted to Hurwitz primes through a
/// four-square representation. The quotient has length `√(p/q) < eps`.
pub fn approximate_zero(eps: f64, search_budget: u64) -> Result<ApproxResult, Error> {
    approximate_zero_impl(&ApproxRequest::new(Quaternion::ZERO, eps).budget(search_budget))
}

fn approximate_zero_impl(req: &ApproxRequest) -> Result<ApproxResult, Error> {
    let eps = req.eps;
    let half_odd = matches!(req.subring, Subring::H2);
    // the smallest admissible numerator prime is fixed; only the denominator
    // grows. H2 output needs odd norms, which excludes 2 on both sides.
    let p_norm: u64 = if half_odd { 3 } else { 2 };
    let mut stats = SearchStats::default();
    let mut q_norm = None;
    let mut candidate = if half_odd { 3u64 } else { 2 };
    let mut examined = 0u64;
    while examined < req.search_budget {
        if counting::is_prime(candidate) {
            stats.primes_tried += 1;
            examined += 1;
            if (p_norm as f64) < (candidate as f64) * eps * eps {
                q_norm = Some(candidate);
                break;
            }
        }
        candidate = if candidate == 2 { 3 } else { candidate + 2 };
    }
    let Some(q_norm) = q_norm else {
        return Err(Error::BudgetExhausted { best: None, stats });
    };

    let lift = |n: u64| {
        HurwitzInt::from_integers(counting::lex_max_four_square(n).expect("four squares"))
    };
    let mut p = lift(p_norm);
    let mut q = lift(q_norm);
    let mut subring = Subring::H1;
    if half_odd {
        p = to_h2(&p)?;
        q = to_h2(&q)?;
        subring = Subring::H2;
    }
    let quotient = quotient_for(req.side, &p, &q)?;
    let achieved_error = req.h.distance(quotient);
    debug_assert!(achieved_error < eps);
    Ok(ApproxResult {
        p,
        q,
        quotient,
        achieved_error,
        eps,
        eps1: 0.0,
        p_norm,
        q_norm,
        side: req.side,
        subring,
        stats,
    })
}

/// Finds Hurwitz primes `p, q` with `|h − p·q⁻¹| < eps` (or the left-quotient
/// mirror), for any target `h` and any `eps > 0`.
///
/// The search is deterministic: fixed candidate order, fixed tie-breaking,
/// and acceptance of the first candidate whose directly measured error beats
/// `eps` (with a `1e-9` safety margin when `eps > 1e-6`). On failure the
/// returned [`Error::BudgetExhausted`] carries the best rejected candidate
/// and the accumulated statistics.
pub fn approximate(req: &ApproxRequest) -> Result<ApproxResult, Error> {
    assert!(req.eps > 0.0 && req.eps.is_finite(), "eps must be positive and finite");
    assert!(req.search_budget >= 1, "search budget must be at least 1");
    if matches!(req.subring, Subring::H2) && matches!(req.side, QuotientSide::Left) {
        return Err(Error::UnsupportedCombination);
    }
    if req.h.is_zero() {
        return approximate_zero_impl(req);
    }

    let hn = req.h.norm();
    // shrink eps below min(‖h‖, 1/‖h‖); a smaller achieved error still
    // satisfies the caller's eps
    let eps_eff = req.eps.min(0.999 * hn.min(1.0 / hn)).min(1.0);
    let theta = epsilon1(&req.h, eps_eff);
    let mut stats = SearchStats::default();

    let q_floor = (1.0 / (theta * theta)).ceil();
    if !(q_floor <= 4.0e18) {
        // the denominator scale needed for this target/eps exceeds 64-bit
        // sphere arithmetic
        return Err(Error::BudgetExhausted { best: None, stats });
    }
    // narrow caps need large spheres before they catch lattice points
    let mut start = (q_floor as u64).max(3);
    let accept_below = if req.eps > 1e-6 { req.eps - 1e-9 } else { req.eps };
    let mut best: Option<ApproxResult> = None;

    for _ in 0..req.search_budget {
        stats.q_retries += 1;
        let (q_norm, x) = match find_q_inner(theta, start, req.search_budget, &mut stats) {
            Ok(found) => found,
            Err(Error::BudgetExhausted { .. }) => {
                return Err(Error::BudgetExhausted { best: best.map(Box::new), stats })
            }
            Err(e) => return Err(e),
        };
        match find_p_inner(q_norm, &req.h, eps_eff, theta, &mut stats) {
            Ok((p_norm, y)) => {
                check_candidate_bounds(&req.h, eps_eff, theta, q_norm, &x, p_norm, &y);
                let mut p = HurwitzInt::from_integers(y.0);
                let mut q = HurwitzInt::from_integers(x.0);
                let mut subring = Subring::H1;
                if matches!(req.subring, Subring::H2) {
                    // q is odd by construction and the radial shell sits far
                    // above 2, so both norms are odd
                    p = to_h2(&p)?;
                    q = to_h2(&q)?;
                    subring = Subring::H2;
                }
                let quotient = quotient_for(req.side, &p, &q)?;
                let achieved_error = req.h.distance(quotient);
                let candidate = ApproxResult {
                    p,
                    q,
                    quotient,
                    achieved_error,
                    eps: req.eps,
                    eps1: theta,
                    p_norm,
                    q_norm,
                    side: req.side,
                    subring,
                    stats,
                };
                if achieved_error < accept_below {
                    return Ok(candidate);
                }
                if best.as_ref().is_none_or(|b| candidate.achieved_error < b.achieved_error) {
                    best = Some(candidate);
                }
            }
            Err(Error::NoPrimeInInterval { .. }) | Err(Error::NoLatticePointInCap { .. }) => {}
            Err(e) => return Err(e),
        }
        // grow geometrically; barren scales are left behind quickly and the
        // candidate order stays fixed
        if q_norm > u64::MAX / 2 - 1 {
            return Err(Error::BudgetExhausted { best: best.map(Box::new), stats });
        }
        start = 2 * q_norm + 1;
    }
    Err(Error::BudgetExhausted { best: best.map(Box::new), stats })
}
