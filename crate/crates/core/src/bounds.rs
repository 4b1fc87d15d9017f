//! Prime-interval bound calculators for the global log canonical threshold:
//! the Bertrand-interval bound (valid for every n >= 1) and the sharper
//! Nagura-interval bound for n >= 23.

use crate::error::{Error, Result};
use crate::primes::{is_prime_u64, Sieve};
use crate::rat::Rat;

/// Smallest prime p' with 2n+3 < p' < 2(2n+3). Returns (p', p'-1) where
/// p'-1 bounds lct(P^n, Gbar); also certifies p' <= 4n+5.
pub fn thomas_bound(n: u64) -> Result<(u64, Rat)> {
    if n < 1 {
        return Err(Error::Unsupported("need n >= 1".into()));
    }
    let lo = 2 * n + 3;
    let hi = 2 * lo;
    let p = (lo + 1..hi)
        .find(|&k| is_prime_u64(k))
        .ok_or_else(|| Error::Internal(format!("no prime in ({lo}, {hi})")))?;
    if p > 4 * n + 5 {
        return Err(Error::Internal(format!(
            "prime {p} violates p <= 4n+5 = {}",
            4 * n + 5
        )));
    }
    Ok((p, Rat::int((p - 1) as i64)))
}

/// Sieve-backed variant for exhaustive sweeps.
pub fn thomas_bound_with(n: u64, sieve: &Sieve) -> Result<(u64, Rat)> {
    let lo = (2 * n + 3) as usize;
    let hi = 2 * lo;
    let p = sieve
        .first_prime_between(lo, hi)
        .ok_or_else(|| Error::Internal(format!("no prime in ({lo}, {hi})")))? as u64;
    if p > 4 * n + 5 {
        return Err(Error::Internal(format!(
            "prime {p} violates p <= 4n+5 = {}",
            4 * n + 5
        )));
    }
    Ok((p, Rat::int((p - 1) as i64)))
}

/// For n >= 23, finds a prime in (2n+3, (6/5)(2n+4)] and returns the bound
/// p-1, certified to be at most 12(n+1)/5.
pub fn nagura_bound(n: u64) -> Result<(u64, Rat)> {
    if n < 23 {
        return Err(Error::Unsupported(format!(
            "the Nagura interval bound needs n >= 23, got {n}"
        )));
    }
    let lo = 2 * n + 3;
    // upper end: (6/5)(2n+4) = (12n+24)/5, inclusive
    let hi = (12 * n + 24) / 5;
    let p = (lo + 1..=hi)
        .find(|&k| is_prime_u64(k))
        .ok_or_else(|| Error::Internal(format!("no prime in ({lo}, {hi}]")))?;
    let bound = Rat::int((p - 1) as i64);
    let cap = Rat::new(12 * (n as i64 + 1), 5);
    if bound > cap {
        return Err(Error::Internal(format!(
            "Nagura bound {bound} exceeds 12(n+1)/5 = {cap}"
        )));
    }
    Ok((p, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thomas_reference_values() {
        // n = 1: interval (5, 10), smallest prime 7, bound 6
        assert_eq!(thomas_bound(1).unwrap(), (7, Rat::int(6)));
        // n = 10: interval (23, 46), smallest prime 29, bound 28
        assert_eq!(thomas_bound(10).unwrap(), (29, Rat::int(28)));
        assert!(thomas_bound(0).is_err());
    }

    #[test]
    fn nagura_reference_values() {
        // n = 23: prime in (49, 60], smallest is 53, bound 52 <= 288/5
        let (p, b) = nagura_bound(23).unwrap();
        assert_eq!(p, 53);
        assert_eq!(b, Rat::int(52));
        assert!(b <= Rat::new(288, 5));
        // n = 24: prime exists in (51, 63]
        assert!(nagura_bound(24).is_ok());
        assert!(nagura_bound(22).is_err());
    }

    #[test]
    fn sieved_agrees_with_direct() {
        let sieve = Sieve::new(5000);
        for n in 1..=1000u64 {
            assert_eq!(
                thomas_bound(n).unwrap(),
                thomas_bound_with(n, &sieve).unwrap()
            );
        }
    }
}
