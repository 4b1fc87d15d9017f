//! Primality testing and prime scans.
//!
//! Three regimes, chosen by size:
//! * `u64` inputs: Miller–Rabin with the first twelve prime bases, which is a
//!   proven deterministic test for everything below 3.18e24.
//! * big integers below 3_317_044_064_679_887_385_961_981 (the Sorenson–Webster
//!   bound for the first thirteen prime bases): still proven deterministic.
//! * larger big integers: strong Miller–Rabin to the first 20 prime bases plus
//!   a strong Lucas test (Baillie–PSW and then some). No composite passing
//!   this combination is known; pseudoprime risk is the documented limitation.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_u64(r, a, m);
        }
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES[..12] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'bases: for &a in &SMALL_PRIMES[..12] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, base: u64) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let b = BigUint::from(base) % n;
    if b.is_zero() {
        return true;
    }
    let mut x = b.modpow(&d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(mut a: num_bigint::BigInt, mut n: num_bigint::BigInt) -> i32 {
    use num_bigint::BigInt;
    let zero = BigInt::from(0);
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    let mut t = 1i32;
    a = a.mod_floor(&n);
    while a != zero {
        while a.is_even() {
            a /= 2;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Strong Lucas probable prime test with Selfridge's parameter choice.
fn strong_lucas(n: &BigUint) -> bool {
    use num_bigint::BigInt;
    let nbi = BigInt::from(n.clone());
    // Find D = 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = BigInt::from(5);
    loop {
        match jacobi(d.clone(), nbi.clone()) {
            -1 => break,
            0 => {
                // gcd(|D|, n) > 1; composite unless n == |D|.
                return nbi == d.clone().abs();
            }
            _ => {}
        }
        d = if d > BigInt::from(0) {
            -(d + BigInt::from(2))
        } else {
            -(d - BigInt::from(2))
        };
    }
    let p = BigInt::one();
    let q = (BigInt::one() - &d) / BigInt::from(4);

    // n + 1 = 2^s * t with t odd.
    let np1 = n + BigUint::one();
    let s = np1.trailing_zeros().unwrap_or(0);
    let t = &np1 >> s;

    // Lucas sequences U_k, V_k computed by binary expansion of t.
    let modn = |x: BigInt| x.mod_floor(&nbi);
    let half = |x: BigInt| -> BigInt {
        // Exact division by 2 modulo odd n.
        if x.is_even() {
            modn(x / 2)
        } else {
            modn((x + &nbi) / 2)
        }
    };
    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = modn(q.clone());
    let bits = t.bits();
    for i in (0..bits - 1).rev() {
        // double: U_{2k} = U_k V_k, V_{2k} = V_k^2 - 2 Q^k
        let u2 = modn(&u * &v);
        let v2 = modn(&v * &v - BigInt::from(2) * &qk);
        qk = modn(&qk * &qk);
        u = u2;
        v = v2;
        if t.bit(i) {
            // increment: U_{k+1} = (P U_k + V_k)/2, V_{k+1} = (D U_k + P V_k)/2
            let un = half(&p * &u + &v);
            let vn = half(&d * &u + &p * &v);
            qk = modn(&qk * &q);
            u = un;
            v = vn;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        let v2 = modn(&v * &v - BigInt::from(2) * &qk);
        qk = modn(&qk * &qk);
        v = v2;
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Largest bound for which Miller–Rabin with the first 13 prime bases is a
/// proven deterministic primality test (Sorenson & Webster).
fn proven_mr_bound() -> BigUint {
    BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap()
}

/// Primality for arbitrary-size integers. Deterministic and proven below
/// 3.3e24; Baillie–PSW plus 20 Miller–Rabin bases above that.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in &SMALL_PRIMES {
        if (n % BigUint::from(p)).is_zero() {
            return false;
        }
    }
    // light trial division before the expensive tests
    let mut q = 73u64;
    while q < 1_500 {
        if (n % BigUint::from(q)).is_zero() {
            return false;
        }
        q += 2;
    }
    if *n < proven_mr_bound() {
        return SMALL_PRIMES[..13]
            .iter()
            .all(|&b| strong_probable_prime(n, b));
    }
    SMALL_PRIMES.iter().all(|&b| strong_probable_prime(n, b)) && strong_lucas(n)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if *n < two {
        return two;
    }
    if *n <= BigUint::from(1_000_000u32) {
        let mut v = n.to_u64().unwrap() + 1;
        loop {
            if is_prime_u64(v) {
                return BigUint::from(v);
            }
            v += 1;
        }
    }
    let mut c = n + BigUint::one();
    if (&c % 2u32).is_zero() {
        c += BigUint::one();
    }
    // Sieve candidate offsets by small primes, then test survivors.
    // Candidates are c, c+2, c+4, ... (all odd since c is odd).
    loop {
        let window = 4096u64;
        let alive = sieve_window(&c, window, true);
        for k in 0..window {
            if alive[k as usize] {
                let cand = &c + BigUint::from(2 * k);
                if is_prime(&cand) {
                    return cand;
                }
            }
        }
        c += BigUint::from(2 * window);
    }
}

/// Marks offsets k < window such that c ± 2k survives small-prime sieving.
fn sieve_window(c: &BigUint, window: u64, upward: bool) -> Vec<bool> {
    let mut alive = vec![true; window as usize];
    let sieve = Sieve::new(20_000);
    for p in 3..20_000u64 {
        if !sieve.is_prime(p as usize) {
            continue;
        }
        let r = (c % BigUint::from(p)).to_u64().unwrap();
        // Solve c ± 2k ≡ 0 (mod p) for the smallest k ≥ 0.
        let need = if upward { (p - r) % p } else { r % p };
        let inv2 = (p + 1) / 2; // inverse of 2 mod odd p
        let mut k = (need % p) * inv2 % p;
        while k < window {
            alive[k as usize] = false;
            k += p;
        }
    }
    alive
}

/// Largest prime strictly less than `n`, if any.
pub fn prev_prime(n: &BigUint) -> Option<BigUint> {
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    if *n <= two {
        return None;
    }
    if *n == three {
        return Some(two);
    }
    if *n <= BigUint::from(1_000_000u32) {
        let mut v = n.to_u64().unwrap() - 1;
        loop {
            if is_prime_u64(v) {
                return Some(BigUint::from(v));
            }
            v -= 1;
        }
    }
    let mut c = n - BigUint::one();
    if (&c % 2u32).is_zero() {
        c -= BigUint::one();
    }
    loop {
        let window = 4096u64;
        let alive = sieve_window(&c, window, false);
        for k in 0..window {
            if alive[k as usize] {
                let cand = &c - BigUint::from(2 * k);
                if is_prime(&cand) {
                    return Some(cand);
                }
            }
        }
        c -= BigUint::from(2 * window);
    }
}

/// Simple sieve of Eratosthenes up to `limit` inclusive.
pub struct Sieve {
    is_prime: Vec<bool>,
}

impl Sieve {
    pub fn new(limit: usize) -> Sieve {
        let mut is_prime = vec![true; limit + 1];
        is_prime[0] = false;
        if limit >= 1 {
            is_prime[1] = false;
        }
        let mut i = 2usize;
        while i * i <= limit {
            if is_prime[i] {
                let mut j = i * i;
                while j <= limit {
                    is_prime[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        Sieve { is_prime }
    }

    pub fn is_prime(&self, n: usize) -> bool {
        self.is_prime.get(n).copied().unwrap_or_else(|| {
            panic!("sieve limit exceeded: {n}");
        })
    }

    /// Smallest prime in the half-open interval `(lo, hi)`.
    pub fn first_prime_between(&self, lo: usize, hi: usize) -> Option<usize> {
        (lo + 1..hi).find(|&k| self.is_prime(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn u64_primality_against_sieve() {
        let sieve = Sieve::new(20_000);
        for n in 0..20_000usize {
            assert_eq!(is_prime_u64(n as u64), sieve.is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn known_large_primes_and_composites() {
        // 2^61 - 1 is a Mersenne prime; 2^67 - 1 = 193707721 * 761838257287.
        assert!(is_prime(&BigUint::from(2305843009213693951u64)));
        let m67 = (BigUint::one() << 67) - BigUint::one();
        assert!(!is_prime(&m67));
        // A 100-digit prime (from standard tables).
        let p100 = BigUint::from_str(
            "2074722246773485207821695222107608587480996474721117292752992589912196684750549658310084416732550077",
        )
        .unwrap();
        assert!(is_prime(&p100));
        assert!(!is_prime(&(p100 * BigUint::from(3u32))));
    }

    #[test]
    fn next_and_prev() {
        assert_eq!(next_prime(&BigUint::from(7u32)), BigUint::from(11u32));
        assert_eq!(next_prime(&BigUint::from(8u32)), BigUint::from(11u32));
        assert_eq!(
            prev_prime(&BigUint::from(42u32)),
            Some(BigUint::from(41u32))
        );
        assert_eq!(prev_prime(&BigUint::from(3u32)), Some(BigUint::from(2u32)));
        assert_eq!(prev_prime(&BigUint::from(2u32)), None);
        // Sylvester-scale window: the next prime after s_6 = 10650056950807.
        let s6 = BigUint::from(10650056950807u64);
        let p = next_prime(&s6);
        assert!(is_prime(&p));
        assert!(p.to_u64().unwrap() > 10650056950807);
        assert!(p.to_u64().unwrap() < 10650056951000);
    }
}
