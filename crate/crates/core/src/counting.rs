//! Integer machinery: deterministic 64-bit primality, divisor sums, the
//! classical four-square counting formulas, and exhaustive enumeration of
//! representations of `n` as a sum of four squares.
//!
//! Enumeration walks the canonical solutions `a ≥ b ≥ c ≥ d ≥ 0` largest
//! coordinate first with remaining-budget pruning, expands each through the
//! sign/permutation group, and emits the full list in ascending
//! lexicographic order. With the `parallel` feature the expansion and sort
//! run on rayon; the `_seq` variants are the always-available sequential
//! reference lane and produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::quaternion::HurwitzInt;
use crate::Error;

/// Default ceiling on `n` for the enumeration entry points.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000_000_000;

/// An integer vector in Z^4; ordering is lexicographic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint4(pub [i64; 4]);

impl LatticePoint4 {
    /// Exact squared Euclidean length.
    pub fn norm2(&self) -> u64 {
        let s: i128 = self.0.iter().map(|&c| (c as i128) * (c as i128)).sum();
        u64::try_from(s).expect("squared length exceeds u64")
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality for the full `u64` range: trial division by the
/// first few primes, then a strong-pseudoprime test over a fixed witness set
/// with no counterexample below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = w % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sum of all divisors of `n`, by trial factorization. 128-bit intermediates
/// guard the partial products.
pub fn divisor_sum(n: u64) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    let mut total: u128 = 1;
    let mut d = 2u64;
    while d as u128 * d as u128 <= m as u128 {
        if m % d == 0 {
            let mut term: u128 = 1;
            let mut power: u128 = 1;
            while m % d == 0 {
                m /= d;
                power *= d as u128;
                term += power;
            }
            total *= term;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        total *= 1 + m as u128;
    }
    u64::try_from(total).expect("divisor sum exceeds u64")
}

/// Sum of the odd divisors of `n`.
pub fn odd_divisor_sum(n: u64) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    while m % 2 == 0 {
        m /= 2;
    }
    divisor_sum(m)
}

/// Number of integer solutions of `x1² + x2² + x3² + x4² = n`, by Jacobi's
/// four-square formula: `8·σ(n)` for odd `n`, `24·(sum of odd divisors)` for
/// even `n`.
pub fn r4(n: u64) -> u64 {
    assert!(n >= 1);
    if n % 2 == 1 {
        8 * divisor_sum(n)
    } else {
        24 * odd_divisor_sum(n)
    }
}

/// Number of Hurwitz quaternions of norm `n`: `24 · (sum of odd divisors)`.
pub fn hurwitz_count(n: u64) -> u64 {
    assert!(n >= 1);
    24 * odd_divisor_sum(n)
}

/// Canonical representations `a ≥ b ≥ c ≥ d ≥ 0` of `n` as a sum of four
/// squares, largest coordinate first with pruning on the remaining budget.
fn canonical_four_squares(n: u64) -> Vec<[u64; 4]> {
    if n == 0 {
        return vec![[0, 0, 0, 0]];
    }
    let mut out = Vec::new();
    for a in (0..=n.isqrt()).rev() {
        let a2 = a * a;
        if 4 * a2 < n {
            break;
        }
        let ra = n - a2;
        for b in (0..=a.min(ra.isqrt())).rev() {
            let b2 = b * b;
            if 3 * b2 < ra {
                break;
            }
            let rb = ra - b2;
            for c in (0..=b.min(rb.isqrt())).rev() {
                let c2 = c * c;
                if 2 * c2 < rb {
                    break;
                }
                let rc = rb - c2;
                let d = rc.isqrt();
                if d * d == rc && d <= c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Canonical all-odd representations `a ≥ b ≥ c ≥ d ≥ 1` of `m` as a sum of
/// four odd squares.
fn canonical_four_squares_odd(m: u64) -> Vec<[u64; 4]> {
    let odd_floor = |x: u64| {
        let r = x.isqrt();
        if r % 2 == 0 {
            r.saturating_sub(1)
        } else {
            r
        }
    };
    let mut out = Vec::new();
    let mut a = odd_floor(m);
    while a >= 1 {
        let a2 = a * a;
        if 4 * a2 < m {
            break;
        }
        let ra = m - a2;
        let mut b = a.min(odd_floor(ra));
        while b >= 1 {
            let b2 = b * b;
            if 3 * b2 < ra {
                break;
            }
            let rb = ra - b2;
            let mut c = b.min(odd_floor(rb));
            while c >= 1 {
                let c2 = c * c;
                if 2 * c2 < rb {
                    break;
                }
                let rc = rb - c2;
                let d = rc.isqrt();
                if d * d == rc && d % 2 == 1 && d <= c {
                    out.push([a, b, c, d]);
                }
                if c < 3 {
                    break;
                }
                c -= 2;
            }
            if b < 3 {
                break;
            }
            b -= 2;
        }
        if a < 3 {
            break;
        }
        a -= 2;
    }
    out
}

const PERMS4: [[usize; 4]; 24] = [
    [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
    [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
    [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
    [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
];

/// Orbit of a canonical solution under coordinate permutations and sign
/// flips. Zero coordinates take no sign, so the orbit has no duplicates.
fn expand(canon: [u64; 4]) -> Vec<LatticePoint4> {
    let mut arrangements: Vec<[u64; 4]> = PERMS4
        .iter()
        .map(|p| [canon[p[0]], canon[p[1]], canon[p[2]], canon[p[3]]])
        .collect();
    arrangements.sort_unstable();
    arrangements.dedup();
    let mut out = Vec::with_capacity(arrangements.len() * 16);
    for arr in arrangements {
        'mask: for mask in 0u32..16 {
            let mut v = [0i64; 4];
            for i in 0..4 {
                if mask & (1 << i) != 0 {
                    if arr[i] == 0 {
                        continue 'mask;
                    }
                    v[i] = -(arr[i] as i64);
                } else {
                    v[i] = arr[i] as i64;
                }
            }
            out.push(LatticePoint4(v));
        }
    }
    out
}

fn expand_all(canon: Vec<[u64; 4]>) -> Vec<LatticePoint4> {
    #[cfg(feature = "parallel")]
    {
        let mut pts: Vec<LatticePoint4> =
            canon.par_iter().flat_map_iter(|&c| expand(c)).collect();
        pts.par_sort_unstable();
        pts
    }
    #[cfg(not(feature = "parallel"))]
    {
        expand_all_seq(canon)
    }
}

fn expand_all_seq(canon: Vec<[u64; 4]>) -> Vec<LatticePoint4> {
    let mut pts: Vec<LatticePoint4> = canon.into_iter().flat_map(expand).collect();
    pts.sort_unstable();
    pts
}

/// All integer 4-vectors of squared length exactly `n`, in ascending
/// lexicographic order. The list length equals [`r4`]`(n)` for `n ≥ 1`.
pub fn enumerate_four_squares(n: u64) -> Result<Vec<LatticePoint4>, Error> {
    enumerate_four_squares_with_budget(n, DEFAULT_ENUMERATION_BUDGET)
}

pub fn enumerate_four_squares_with_budget(n: u64, budget: u64) -> Result<Vec<LatticePoint4>, Error> {
    if n > budget {
        return Err(Error::BudgetExceeded { n, budget });
    }
    Ok(expand_all(canonical_four_squares(n)))
}

/// Sequential reference lane of [`enumerate_four_squares`].
pub fn enumerate_four_squares_seq(n: u64) -> Result<Vec<LatticePoint4>, Error> {
    enumerate_four_squares_seq_with_budget(n, DEFAULT_ENUMERATION_BUDGET)
}

pub(crate) fn enumerate_four_squares_seq_with_budget(
    n: u64,
    budget: u64,
) -> Result<Vec<LatticePoint4>, Error> {
    if n > budget {
        return Err(Error::BudgetExceeded { n, budget });
    }
    Ok(expand_all_seq(canonical_four_squares(n)))
}

/// All Hurwitz quaternions of norm `n`, in ascending doubled-coordinate
/// order: the integer-coordinate solutions of `Σ x² = n` together with the
/// all-odd doubled solutions of `Σ d² = 4n`. The list length equals
/// [`hurwitz_count`]`(n)`.
pub fn enumerate_hurwitz(n: u64) -> Result<Vec<HurwitzInt>, Error> {
    enumerate_hurwitz_with_budget(n, DEFAULT_ENUMERATION_BUDGET)
}

pub fn enumerate_hurwitz_with_budget(n: u64, budget: u64) -> Result<Vec<HurwitzInt>, Error> {
    assert!(n >= 1);
    if n > budget {
        return Err(Error::BudgetExceeded { n, budget });
    }
    let integer_reps = enumerate_four_squares_with_budget(n, budget)?;
    let odd = expand_all(canonical_four_squares_odd(4 * n));
    let mut all: Vec<HurwitzInt> = integer_reps
        .into_iter()
        .map(|p| HurwitzInt::from_integers(p.0))
        .chain(odd.into_iter().map(|p| HurwitzInt::from_doubled_unchecked(p.0)))
        .collect();
    all.sort_unstable();
    Ok(all)
}

/// A Hurwitz quaternion is prime exactly when its norm is a rational prime.
pub fn is_hurwitz_prime(a: &HurwitzInt) -> bool {
    is_prime(a.hnorm())
}

/// Primes `p` with `lo < p < hi` (both ends strict), ascending.
pub fn primes_in_interval(lo: f64, hi: f64) -> Vec<u64> {
    interval_primes(lo, hi).collect()
}

pub(crate) fn interval_primes(lo: f64, hi: f64) -> impl Iterator<Item = u64> {
    let start = if lo < 2.0 { 2u64 } else { (lo.floor() as u64).saturating_add(1) };
    (start..)
        .take_while(move |&c| (c as f64) < hi)
        .filter(move |&c| (c as f64) > lo && is_prime(c))
}

pub(crate) fn perfect_sqrt(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Whether `n` is a sum of three integer squares, i.e. not of the form
/// `4^a (8b + 7)`.
pub(crate) fn three_square_representable(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    let mut m = n;
    while m % 4 == 0 {
        m /= 4;
    }
    m % 8 != 7
}

/// The lexicographically largest `[x, y, z]` with `x² + y² + z² = s`.
pub(crate) fn lex_max_three_square(s: u64) -> Option<[i64; 3]> {
    if !three_square_representable(s) {
        return None;
    }
    for x in (0..=s.isqrt()).rev() {
        let rest = s - x * x;
        for y in (0..=rest.isqrt()).rev() {
            if let Some(z) = perfect_sqrt(rest - y * y) {
                return Some([x as i64, y as i64, z as i64]);
            }
        }
    }
    None
}

/// The lexicographically largest `[w, x, y, z]` with squared length `n`.
pub(crate) fn lex_max_four_square(n: u64) -> Option<[i64; 4]> {
    for w in (0..=n.isqrt()).rev() {
        let rest = n - w * w;
        if let Some([x, y, z]) = lex_max_three_square(rest) {
            return Some([w as i64, x, y, z]);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::units;

    fn trial_division(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(561)); // Carmichael number
        assert!(is_prime(1000003));
        assert!(!is_prime(0) && !is_prime(1));
        for n in 0..2000 {
            assert_eq!(is_prime(n), trial_division(n), "disagree at {n}");
        }
        // strong-pseudoprime stress values around 2^32
        assert!(is_prime(4294967311));
        assert!(!is_prime(4294967297)); // 641 * 6700417
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(odd_divisor_sum(1), 1);
        assert_eq!(odd_divisor_sum(12), 4);
        for p in [3u64, 5, 7, 11, 101] {
            assert_eq!(odd_divisor_sum(p), 1 + p);
        }
        assert_eq!(divisor_sum(12), 28);
    }

    #[test]
    fn jacobi_counts() {
        assert_eq!(r4(1), 8);
        assert_eq!(r4(2), 24);
        assert_eq!(r4(25), 248);
    }

    #[test]
    fn hurwitz_counts() {
        assert_eq!(hurwitz_count(1), 24);
        assert_eq!(hurwitz_count(2), 24);
        assert_eq!(hurwitz_count(3), 96);
    }

    #[test]
    fn enumeration_basics() {
        assert_eq!(enumerate_four_squares(0).unwrap(), vec![LatticePoint4([0, 0, 0, 0])]);
        let ones = enumerate_four_squares(1).unwrap();
        assert_eq!(ones.len(), 8);
        assert_eq!(ones[0], LatticePoint4([-1, 0, 0, 0]));
        assert_eq!(ones[7], LatticePoint4([1, 0, 0, 0]));
        let n25 = enumerate_four_squares(25).unwrap();
        assert_eq!(n25.len() as u64, r4(25));
        // ascending, unique, and on the right sphere
        for w in n25.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(n25.iter().all(|p| p.norm2() == 25));
    }

    #[test]
    fn enumeration_budget() {
        assert!(matches!(
            enumerate_four_squares_with_budget(100, 10),
            Err(Error::BudgetExceeded { n: 100, budget: 10 })
        ));
    }

    #[test]
    fn hurwitz_enumeration() {
        let norm1 = enumerate_hurwitz(1).unwrap();
        assert_eq!(norm1, units());
        let norm2 = enumerate_hurwitz(2).unwrap();
        assert_eq!(norm2.len(), 24);
        assert!(norm2.iter().all(|a| a.doubled().iter().all(|d| d % 2 == 0)));
        assert_eq!(enumerate_hurwitz(3).unwrap().len() as u64, hurwitz_count(3));
    }

    #[test]
    fn hurwitz_primes() {
        let one_plus_i = HurwitzInt::from_doubled([2, 2, 0, 0]).unwrap();
        assert!(is_hurwitz_prime(&one_plus_i));
        let two_plus_i = HurwitzInt::from_doubled([4, 2, 0, 0]).unwrap();
        assert!(is_hurwitz_prime(&two_plus_i));
        let two = HurwitzInt::from_doubled([4, 0, 0, 0]).unwrap();
        assert!(!is_hurwitz_prime(&two)); // norm 4 = 2·2
    }

    #[test]
    fn interval_primes_examples() {
        assert_eq!(primes_in_interval(10.0, 20.0), vec![11, 13, 17, 19]);
        assert_eq!(primes_in_interval(24.0, 28.0), Vec::<u64>::new());
        assert_eq!(primes_in_interval(1.0, 3.0), vec![2]);
        // endpoints are strict
        assert_eq!(primes_in_interval(11.0, 13.0), Vec::<u64>::new());
    }

    #[test]
    fn three_square_criterion() {
        assert!(three_square_representable(0));
        assert!(three_square_representable(2));
        assert!(!three_square_representable(7));
        assert!(!three_square_representable(28)); // 4·7
        assert!(three_square_representable(1_000_003));
    }

    #[test]
    fn lex_max_decompositions() {
        assert_eq!(lex_max_three_square(2), Some([1, 1, 0]));
        assert_eq!(lex_max_three_square(7), None);
        assert_eq!(lex_max_four_square(2), Some([1, 1, 0, 0]));
        assert_eq!(lex_max_four_square(25), Some([5, 0, 0, 0]));
        assert_eq!(lex_max_four_square(7), Some([2, 1, 1, 1]));
        for n in 1..200u64 {
            let rep = lex_max_four_square(n).unwrap();
            let s: i64 = rep.iter().map(|v| v * v).sum();
            assert_eq!(s as u64, n);
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        for n in [0u64, 1, 2, 97, 360, 1001] {
            assert_eq!(
                enumerate_four_squares(n).unwrap(),
                enumerate_four_squares_seq(n).unwrap()
            );
        }
    }
}
