//! Brieskorn–Pham exponent arithmetic: the exceptionality check for
//! x_0^{a_0} + ... + x_n^{a_n} = 0 and two constructive procedures that
//! produce valid exponent tuples in every dimension n >= 3.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::primes::{is_prime, next_prime, prev_prime};

/// Exponent tuple (a_0, ..., a_n), strictly increasing, all >= 2, n >= 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpTuple {
    exponents: Vec<BigUint>,
}

/// Exact certificate attached to an exceptionality check.
#[derive(Clone, Debug)]
pub struct BpCertificate {
    pub pairwise_coprime: bool,
    /// The exact value of 1/a_0 + ... + 1/a_n.
    pub reciprocal_sum: BigRational,
    /// 1 < sum holds.
    pub above_one: bool,
    /// sum < 1 + 1/a_n holds.
    pub below_one_plus_min: bool,
    pub exceptional: bool,
}

impl BpTuple {
    pub fn new(exponents: Vec<BigUint>) -> Result<BpTuple> {
        if exponents.len() < 4 {
            return Err(Error::Unsupported(format!(
                "need at least 4 exponents (n >= 3), got {}",
                exponents.len()
            )));
        }
        let two = BigUint::from(2u32);
        for w in exponents.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Validation(
                    "exponents must be strictly increasing".into(),
                ));
            }
        }
        if exponents[0] < two {
            return Err(Error::Validation("exponents must be at least 2".into()));
        }
        Ok(BpTuple { exponents })
    }

    pub fn from_u64(exps: &[u64]) -> Result<BpTuple> {
        BpTuple::new(exps.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn exponents(&self) -> &[BigUint] {
        &self.exponents
    }

    /// n, where the tuple has n+1 entries.
    pub fn n(&self) -> usize {
        self.exponents.len() - 1
    }

    pub fn reciprocal_sum(&self) -> BigRational {
        self.exponents
            .iter()
            .map(|a| BigRational::new(BigInt::one(), BigInt::from(a.clone())))
            .sum()
    }

    /// The singularity is exceptional when the exponents are pairwise coprime
    /// and 1 < sum(1/a_i) < 1 + 1/max(a_i).
    pub fn is_exceptional(&self) -> BpCertificate {
        let mut pairwise_coprime = true;
        'outer: for i in 0..self.exponents.len() {
            for j in i + 1..self.exponents.len() {
                if !self.exponents[i].gcd(&self.exponents[j]).is_one() {
                    pairwise_coprime = false;
                    break 'outer;
                }
            }
        }
        let sum = self.reciprocal_sum();
        let one = BigRational::one();
        let largest = self.exponents.last().unwrap();
        let min_recip = BigRational::new(BigInt::one(), BigInt::from(largest.clone()));
        let above_one = sum > one;
        let below = sum < &one + &min_recip;
        BpCertificate {
            pairwise_coprime,
            above_one,
            below_one_plus_min: below,
            exceptional: pairwise_coprime && above_one && below,
            reciprocal_sum: sum,
        }
    }

    /// The restricted condition: all exponents prime and
    /// 1/a_0 + ... + 1/a_{n-1} < 1 < 1/a_0 + ... + 1/a_n.
    pub fn restricted_check(&self) -> bool {
        if !self.exponents.iter().all(is_prime) {
            return false;
        }
        let one = BigRational::one();
        let full = self.reciprocal_sum();
        let last = self.exponents.last().unwrap();
        let prefix = &full - BigRational::new(BigInt::one(), BigInt::from(last.clone()));
        prefix < one && one < full
    }
}

fn recip(b: &BigUint) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(b.clone()))
}

/// Largest prime p with prefix_sum + 1/p > 1, i.e. the largest prime
/// strictly below 1/(1 - prefix_sum). Requires prefix_sum < 1.
fn largest_prime_completing(prefix_sum: &BigRational) -> Result<BigUint> {
    let deficit = BigRational::one() - prefix_sum;
    if deficit <= BigRational::zero() {
        return Err(Error::Internal("prefix sum already at least 1".into()));
    }
    // bound = 1/deficit; we need the largest prime c with c < bound.
    let bound = deficit.recip();
    let num = bound.numer().to_biguint().unwrap();
    let den = bound.denom().to_biguint().unwrap();
    let (q, r) = num.div_rem(&den);
    // ceil(bound) - 1 < bound <= ceil(bound); largest integer < bound:
    let top = if r.is_zero() { &q - BigUint::one() } else { q };
    prev_prime(&(top + BigUint::one()))
        .ok_or_else(|| Error::Internal("no prime below completion bound".into()))
}

/// Inductive prime-tuple construction. Base case n = 3 gives (2, 3, 7, 41);
/// each further step drops the last entry, recomputes the maximal completing
/// prime c, takes the three smallest primes p1 < p2 < p3 in (c, 2c) and
/// appends (p2, p3). Every output passes `restricted_check`.
pub fn construct_inductive(n: usize) -> Result<BpTuple> {
    if n < 3 {
        return Err(Error::Unsupported(
            "inductive construction needs n >= 3".into(),
        ));
    }
    let mut exps: Vec<BigUint> = [2u64, 3, 7, 41].iter().map(|&e| BigUint::from(e)).collect();
    for _ in 4..=n {
        exps.pop();
        let prefix_sum: BigRational = exps.iter().map(recip).sum();
        let c = largest_prime_completing(&prefix_sum)?;
        if c <= BigUint::from(8u32) {
            return Err(Error::Internal(
                "completing prime dropped to 8 or below; interval argument void".into(),
            ));
        }
        let double = &c * BigUint::from(2u32);
        let p1 = next_prime(&c);
        let p2 = next_prime(&p1);
        let p3 = next_prime(&p2);
        if p3 >= double {
            return Err(Error::Internal("fewer than three primes in (c, 2c)".into()));
        }
        exps.push(p2);
        exps.push(p3);
    }
    let t = BpTuple::new(exps)?;
    if !t.restricted_check() {
        return Err(Error::Internal(
            "inductive construction produced an invalid tuple".into(),
        ));
    }
    Ok(t)
}

/// Sylvester numbers 2, 3, 7, 43, 1807, ... (s_{k+1} = s_k(s_k - 1) + 1).
pub fn sylvester(k: usize) -> BigUint {
    let mut s = BigUint::from(2u32);
    for _ in 0..k {
        s = &s * (&s - BigUint::one()) + BigUint::one();
    }
    s
}

/// Sylvester-sequence construction: (s_0, ..., s_{n-1}, p) where p is the
/// smallest prime with s_{n-1} < p < s_n - 1. Sylvester numbers are pairwise
/// coprime and sum(1/s_i, i < n) = 1 - 1/(s_n - 1), so the output passes
/// `is_exceptional`.
pub fn construct_sylvester(n: usize) -> Result<BpTuple> {
    if n < 3 {
        return Err(Error::Unsupported(
            "Sylvester construction needs n >= 3".into(),
        ));
    }
    let mut exps: Vec<BigUint> = (0..n).map(sylvester).collect();
    let upper = sylvester(n) - BigUint::one();
    let p = next_prime(exps.last().unwrap());
    if p >= upper {
        return Err(Error::Internal("no prime in the Sylvester gap".into()));
    }
    exps.push(p);
    let t = BpTuple::new(exps)?;
    if !t.is_exceptional().exceptional {
        return Err(Error::Internal(
            "Sylvester construction produced an invalid tuple".into(),
        ));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(e: &[u64]) -> BpTuple {
        BpTuple::from_u64(e).unwrap()
    }

    #[test]
    fn reference_four_tuple() {
        // 1/2 + 1/3 + 1/7 + 1/41 = 1723/1722 and 1 < 1723/1722 < 1 + 1/41.
        let t = tup(&[2, 3, 7, 41]);
        let cert = t.is_exceptional();
        assert!(cert.exceptional);
        assert_eq!(
            cert.reciprocal_sum,
            BigRational::new(BigInt::from(1723), BigInt::from(1722))
        );
        assert!(t.restricted_check());
    }

    #[test]
    fn sum_below_one_rejected() {
        // 1/2 + 1/3 + 1/7 + 1/43 = 1805/1806 < 1.
        let t = tup(&[2, 3, 7, 43]);
        let cert = t.is_exceptional();
        assert_eq!(
            cert.reciprocal_sum,
            BigRational::new(BigInt::from(1805), BigInt::from(1806))
        );
        assert!(!cert.above_one);
        assert!(!cert.exceptional);
        assert!(!t.restricted_check());
    }

    #[test]
    fn coprimality_rejected() {
        let cert = tup(&[2, 4, 7, 41]).is_exceptional();
        assert!(!cert.pairwise_coprime);
        assert!(!cert.exceptional);
    }

    #[test]
    fn restricted_check_edge_cases() {
        // prefix 1/2 + 1/3 + 1/5 = 31/30 > 1
        assert!(!tup(&[2, 3, 5, 7]).restricted_check());
        // 40 is not prime
        assert!(!tup(&[2, 3, 7, 40]).restricted_check());
    }

    #[test]
    fn tuple_validation() {
        assert!(BpTuple::from_u64(&[2, 3, 7]).is_err());
        assert!(BpTuple::from_u64(&[2, 3, 3, 7]).is_err());
        assert!(BpTuple::from_u64(&[1, 2, 3, 5]).is_err());
    }

    #[test]
    fn inductive_base_and_step() {
        assert_eq!(construct_inductive(3).unwrap(), tup(&[2, 3, 7, 41]));
        // Step for n = 4: prefix (2,3,7), c = 41, primes above: 43, 47, 53,
        // keep (p2, p3) = (47, 53).
        assert_eq!(construct_inductive(4).unwrap(), tup(&[2, 3, 7, 47, 53]));
    }

    #[test]
    fn sylvester_sequence_values() {
        let expect = [2u64, 3, 7, 43, 1807, 3263443];
        for (k, &v) in expect.iter().enumerate() {
            assert_eq!(sylvester(k), BigUint::from(v));
        }
    }

    #[test]
    fn sylvester_prefix_identity() {
        // sum(1/s_i, i < n) = 1 - 1/(s_n - 1) for n <= 10
        for n in 1..=10usize {
            let sum: BigRational = (0..n)
                .map(|k| BigRational::new(BigInt::one(), BigInt::from(sylvester(k))))
                .sum();
            let sn1 = BigInt::from(sylvester(n)) - BigInt::one();
            assert_eq!(
                sum,
                BigRational::one() - BigRational::new(BigInt::one(), sn1)
            );
        }
    }

    #[test]
    fn sylvester_small_cases() {
        let t = construct_sylvester(3).unwrap();
        // smallest prime in (7, 42) is 11
        assert_eq!(t, tup(&[2, 3, 7, 11]));
        let t4 = construct_sylvester(4).unwrap();
        assert_eq!(t4.exponents()[..4], tup(&[2, 3, 7, 43]).exponents()[..4]);
        assert!(t4.exponents()[4] > BigUint::from(43u32));
        assert!(t4.exponents()[4] < BigUint::from(1806u32));
    }
}
