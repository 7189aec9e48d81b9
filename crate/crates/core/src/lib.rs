//! Hurwitz quaternion arithmetic and approximation of arbitrary quaternions
//! by quotients of Hurwitz primes.
//!
//! Every quaternion can be approximated to any accuracy by a quotient `p·q⁻¹`
//! of two Hurwitz primes (Hurwitz quaternions whose norm is a rational
//! prime). This crate makes that statement effective: [`approx::approximate`]
//! takes a target and a tolerance and returns explicit primes together with
//! the achieved error, verified directly.
//!
//! The crate has four layers:
//!
//! - [`quaternion`] — floating-point quaternion algebra plus the exact
//!   half-integer Hurwitz layer. All number-theoretic decisions happen on
//!   exact integers; floats are only used for geometry and error measurement.
//! - [`counting`] — deterministic 64-bit primality, divisor sums, the
//!   four-square counting formulas, and exhaustive enumeration of
//!   representations of `n` as a sum of four squares.
//! - [`cap`] — hyperspherical caps on the unit 3-sphere, cap-restricted
//!   lattice counts, and equidistribution experiments.
//! - [`approx`] — the constructive search itself.
//!
//! ```
//! use hurwitz_core::approx::{approximate, ApproxRequest};
//! use hurwitz_core::counting::is_hurwitz_prime;
//! use hurwitz_core::quaternion::Quaternion;
//!
//! let h = Quaternion::new(1.0, 1.0, 0.0, 0.0);
//! let r = approximate(&ApproxRequest::new(h, 0.5)).unwrap();
//! assert!(r.achieved_error < 0.5);
//! assert!(is_hurwitz_prime(&r.p) && is_hurwitz_prime(&r.q));
//! ```
//!
//! With the default `parallel` feature the enumeration and search kernels run
//! on rayon; disabling it (`--no-default-features`) selects the sequential
//! reference lane. Both lanes produce identical output.

pub mod approx;
pub mod cap;
pub mod counting;
pub mod quaternion;
mod vec4;

pub use approx::{approximate, ApproxRequest, ApproxResult, QuotientSide, SearchStats};
pub use cap::{cap_area_ratio, count_in_cap, equidistribution_report, Cap, EquiReport};
pub use counting::{
    enumerate_four_squares, enumerate_hurwitz, hurwitz_count, is_hurwitz_prime, is_prime,
    primes_in_interval, r4, LatticePoint4,
};
pub use quaternion::{units, HurwitzInt, Quaternion, Subring};

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Inverse or quotient requested for a quaternion of norm zero.
    #[error("inverse of a quaternion with zero norm")]
    ZeroNorm,
    /// Doubled coordinates must be all even or all odd.
    #[error("doubled coordinates {0:?} mix parities")]
    MixedParity([i64; 4]),
    /// Enumeration refused because `n` exceeds the configured budget.
    #[error("n = {n} exceeds the enumeration budget {budget}")]
    BudgetExceeded { n: u64, budget: u64 },
    /// Cap angle outside `(0, π]`.
    #[error("cap angle {0} is outside (0, pi]")]
    DomainError(f64),
    /// Cap axis must be finite with nonzero length.
    #[error("cap axis must be finite and nonzero")]
    InvalidAxis,
    /// The open interval contains no prime at all.
    #[error("no prime strictly inside ({lo}, {hi})")]
    NoPrimeInInterval { lo: f64, hi: f64 },
    /// Primes exist in the interval but none of their spheres meets the cap.
    #[error("no lattice point in the target cap on any prime sphere in ({lo}, {hi})")]
    NoLatticePointInCap { lo: f64, hi: f64 },
    /// Moving to the half-integer subring requires an odd norm.
    #[error("norm {0} is even; only odd norms move to the half-integer subring")]
    EvenNorm(u64),
    /// The half-integer subring is only wired up for right quotients.
    #[error("left quotients with H2 output are not supported")]
    UnsupportedCombination,
    /// The search ran out of candidate primes; carries the best candidate
    /// seen (if any) and the accumulated search statistics.
    #[error("search budget exhausted after {} primality checks", stats.primes_tried)]
    BudgetExhausted {
        best: Option<Box<ApproxResult>>,
        stats: SearchStats,
    },
}
