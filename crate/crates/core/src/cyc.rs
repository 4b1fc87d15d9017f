//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! A value of order m is stored by its coordinates in the power basis
//! 1, z, ..., z^{phi(m)-1}, where z = zeta_m and reduction happens modulo the
//! m-th cyclotomic polynomial. Coordinates in this basis are unique, so
//! structural equality of reduced coordinates is exact equality in the field.
//! Mixed-order operands are promoted to the lcm order first.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::rat::Rat;

type Coeffs = SmallVec<[Rat; 4]>;

/// Per-order context: the cyclotomic polynomial and the reduced coordinates
/// of every power z^k, 0 <= k < m.
struct CycCtx {
    #[allow(dead_code)]
    m: u32,
    phi: usize,
    /// power_rows[k] = coordinates of zeta_m^k in the power basis.
    power_rows: Vec<Vec<i64>>,
}

fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Integer polynomial division, exact; coefficients ascending.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i128> = num.iter().map(|&c| c as i128).collect();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap() as i128;
    assert!(rem.len() > dd);
    let mut quot = vec![0i128; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        debug_assert_eq!(c % lead, 0);
        let q = c / lead;
        quot[i] = q;
        for (j, &dc) in den.iter().enumerate() {
            rem[i + j] -= q * dc as i128;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
    quot.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

/// Coefficients of the m-th cyclotomic polynomial, ascending.
fn cyclotomic_poly(m: u32) -> Vec<i64> {
    if m == 1 {
        return vec![-1, 1]; // x - 1
    }
    // (x^m - 1) / prod_{d | m, d < m} Phi_d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

impl CycCtx {
    fn new(m: u32) -> CycCtx {
        let phi = euler_phi(m);
        let cp = cyclotomic_poly(m);
        debug_assert_eq!(cp.len(), phi + 1);
        debug_assert_eq!(cp[phi], 1);
        let mut power_rows: Vec<Vec<i64>> = Vec::with_capacity(m as usize);
        // row_0 = 1, and row_{k+1} = x * row_k reduced mod Phi_m.
        let mut row = vec![0i64; phi];
        row[0] = 1;
        for _ in 0..m {
            power_rows.push(row.clone());
            // multiply by x
            let top = row[phi - 1];
            for i in (1..phi).rev() {
                row[i] = row[i - 1];
            }
            row[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    row[i] = row[i]
                        .checked_sub(top.checked_mul(cp[i]).expect("cyclotomic overflow"))
                        .expect("cyclotomic overflow");
                }
            }
        }
        CycCtx { m, phi, power_rows }
    }
}

fn ctx(m: u32) -> Arc<CycCtx> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(m)
        .or_insert_with(|| Arc::new(CycCtx::new(m)))
        .clone()
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// An exact element of a cyclotomic field Q(zeta_m).
#[derive(Clone)]
pub struct Cyc {
    m: u32,
    c: Coeffs,
}

impl Cyc {
    pub fn zero() -> Cyc {
        Cyc {
            m: 1,
            c: smallvec![Rat::ZERO],
        }
    }

    pub fn one() -> Cyc {
        Cyc {
            m: 1,
            c: smallvec![Rat::ONE],
        }
    }

    pub fn from_rat(r: Rat) -> Cyc {
        Cyc {
            m: 1,
            c: smallvec![r],
        }
    }

    pub fn int(n: i64) -> Cyc {
        Cyc::from_rat(Rat::int(n))
    }

    /// zeta_m^k.
    pub fn root(m: u32, k: i64) -> Cyc {
        assert!(m >= 1);
        let k = k.rem_euclid(m as i64) as u32;
        let cx = ctx(m);
        let c = cx.power_rows[k as usize]
            .iter()
            .map(|&v| Rat::int(v))
            .collect();
        Cyc { m, c }
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|r| r.is_zero())
    }

    /// Rational part, if the value is rational.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.c[1..].iter().all(|r| r.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rat().is_some()
    }

    /// Re-expresses the value in Q(zeta_target); target must be a multiple of
    /// the current order.
    pub fn promote(&self, target: u32) -> Cyc {
        if target == self.m {
            return self.clone();
        }
        debug_assert_eq!(target % self.m, 0);
        let cx = ctx(target);
        let step = (target / self.m) as usize;
        let mut out: Coeffs = smallvec![Rat::ZERO; cx.phi];
        for (i, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let row = &cx.power_rows[(i * step) % target as usize];
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    out[j] += &(&Rat::int(v) * coeff);
                }
            }
        }
        Cyc { m: target, c: out }
    }

    fn promoted_pair(&self, other: &Cyc) -> (Cyc, Cyc, u32) {
        let m = lcm_u32(self.m, other.m);
        (self.promote(m), other.promote(m), m)
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        if self.m == other.m {
            let c = self
                .c
                .iter()
                .zip(other.c.iter())
                .map(|(a, b)| a + b)
                .collect();
            return Cyc { m: self.m, c };
        }
        let (a, b, m) = self.promoted_pair(other);
        let c = a.c.iter().zip(b.c.iter()).map(|(a, b)| a + b).collect();
        Cyc { m, c }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            m: self.m,
            c: self.c.iter().map(|r| -r).collect(),
        }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        if self.m != other.m {
            let (a, b, _) = self.promoted_pair(other);
            return a.mul(&b);
        }
        let cx = ctx(self.m);
        let phi = cx.phi;
        // raw convolution, then fold powers >= phi through the power table
        let mut buf: SmallVec<[Rat; 8]> = smallvec![Rat::ZERO; 2 * phi - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                buf[i + j] += &(a * b);
            }
        }
        let mut out: Coeffs = buf[..phi].iter().cloned().collect();
        for k in phi..2 * phi - 1 {
            if buf[k].is_zero() {
                continue;
            }
            let row = &cx.power_rows[k % self.m as usize];
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    out[j] += &(&Rat::int(v) * &buf[k]);
                }
            }
        }
        Cyc { m: self.m, c: out }
    }

    pub fn scale(&self, r: &Rat) -> Cyc {
        Cyc {
            m: self.m,
            c: self.c.iter().map(|a| a * r).collect(),
        }
    }

    /// Galois automorphism zeta_m -> zeta_m^k; requires gcd(k, m) = 1.
    pub fn galois(&self, k: u32) -> Cyc {
        let k = k % self.m;
        assert_eq!(
            gcd_u32(k, self.m),
            1,
            "galois exponent not coprime to order"
        );
        let cx = ctx(self.m);
        let mut out: Coeffs = smallvec![Rat::ZERO; cx.phi];
        for (i, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let row = &cx.power_rows[(i * k as usize) % self.m as usize];
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    out[j] += &(&Rat::int(v) * coeff);
                }
            }
        }
        Cyc { m: self.m, c: out }
    }

    /// Complex conjugation (zeta -> zeta^{m-1}).
    pub fn conj(&self) -> Cyc {
        if self.m <= 2 {
            return self.clone();
        }
        self.galois(self.m - 1)
    }

    /// Multiplicative inverse via the product of Galois conjugates: the norm
    /// of a nonzero value is a nonzero rational.
    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rat() {
            return Ok(Cyc::from_rat(r.recip()?));
        }
        let mut prod = Cyc::one();
        for k in 2..self.m {
            if gcd_u32(k, self.m) == 1 {
                prod = prod.mul(&self.galois(k));
            }
        }
        let norm = self.mul(&prod);
        let norm_rat = norm
            .to_rat()
            .ok_or_else(|| Error::Internal("norm of cyclotomic is not rational".into()))?;
        Ok(prod.scale(&norm_rat.recip()?))
    }

    pub fn div(&self, other: &Cyc) -> Result<Cyc> {
        Ok(self.mul(&other.inv()?))
    }

    /// Value times its complex conjugate (a non-negative real; rational for
    /// traces of finite-order matrices only in special cases, but always
    /// Galois-twist invariant).
    pub fn norm_conj(&self) -> Cyc {
        self.mul(&self.conj())
    }

    /// Rewrites the value in the smallest cyclotomic field Q(zeta_d), d | m,
    /// that contains it. The result is the canonical form used for hashing.
    pub fn reduce_order(&self) -> Cyc {
        if self.m == 1 {
            return self.clone();
        }
        if let Some(r) = self.to_rat() {
            return Cyc::from_rat(r);
        }
        let m = self.m;
        let mut divisors: Vec<u32> = (1..=m / 2).filter(|d| m % d == 0).collect();
        divisors.sort_unstable();
        for d in divisors {
            if let Some(c) = self.try_demote(d) {
                return Cyc { m: d, c };
            }
        }
        self.clone()
    }

    /// Attempts to express the value in Q(zeta_d) for a proper divisor d.
    fn try_demote(&self, d: u32) -> Option<Coeffs> {
        let cx = ctx(self.m);
        let phid = euler_phi(d);
        if phid >= cx.phi {
            return None;
        }
        let step = (self.m / d) as usize;
        // Solve sum_j y_j * emb(zeta_d^j) = self by Gaussian elimination on
        // the (phi(m) x phi(d)) embedding matrix.
        let rows = cx.phi;
        let cols = phid;
        let mut aug: Vec<Vec<Rat>> = vec![vec![Rat::ZERO; cols + 1]; rows];
        for j in 0..cols {
            let row = &cx.power_rows[(j * step) % self.m as usize];
            for i in 0..rows {
                aug[i][j] = Rat::int(row[i]);
            }
        }
        for i in 0..rows {
            aug[i][cols] = self.c[i].clone();
        }
        // forward elimination
        let mut pivot_row = 0usize;
        let mut pivots = Vec::new();
        for col in 0..cols {
            let Some(p) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(pivot_row, p);
            let inv = aug[pivot_row][col].recip().unwrap();
            for x in aug[pivot_row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..rows {
                if r != pivot_row && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for cidx in 0..=cols {
                        let s = &aug[pivot_row][cidx] * &f;
                        aug[r][cidx] -= &s;
                    }
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
        // consistency: rows past the pivots must have zero rhs
        for r in pivot_row..rows {
            if !aug[r][cols].is_zero() {
                return None;
            }
        }
        let mut y: Coeffs = smallvec![Rat::ZERO; cols];
        for (r, col) in pivots {
            y[col] = aug[r][cols].clone();
        }
        Some(y)
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.c == other.c;
        }
        let (a, b, _) = self.promoted_pair(other);
        a.c == b.c
    }
}
impl Eq for Cyc {}

impl Hash for Cyc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let r = self.reduce_order();
        r.m.hash(state);
        r.c.hash(state);
    }
}

impl fmt::Display for Cyc {
    /// Emits the textual grammar: signed sums of `c`, `c*z^k`, `z^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (order {})", self.m)
    }
}

/// Parses the entry grammar at a given root order: signed sums of terms
/// `c`, `c*z^k`, `z`, `z^k` with `c` a decimal integer or fraction `a/b`.
/// Whitespace-insensitive.
pub fn parse_cyc(input: &str, root_order: u32) -> Result<Cyc> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |pos: usize, msg: &str| Error::Parse {
        msg: format!("{msg} (in {input:?})"),
        pos: Some(pos),
    };
    if s.is_empty() {
        return Err(err(0, "empty entry"));
    }
    let mut acc = Cyc::zero();
    let mut i = 0usize;
    loop {
        // sign
        let mut sign = 1i64;
        while i < s.len() && (s[i] == '+' || s[i] == '-') {
            if s[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= s.len() {
            return Err(err(i, "dangling sign"));
        }
        // optional rational coefficient
        let mut coeff = Rat::int(1);
        let mut saw_number = false;
        if s[i].is_ascii_digit() {
            saw_number = true;
            let start = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            let mut text: String = s[start..i].iter().collect();
            if i < s.len() && s[i] == '/' {
                i += 1;
                let dstart = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                if dstart == i {
                    return Err(err(i, "missing denominator"));
                }
                text.push('/');
                text.extend(&s[dstart..i]);
            }
            coeff = text.parse()?;
        }
        if sign < 0 {
            coeff = -coeff;
        }
        // optional root power
        let mut star = false;
        if i < s.len() && s[i] == '*' {
            if !saw_number {
                return Err(err(i, "stray '*'"));
            }
            star = true;
            i += 1;
        }
        let term = if i < s.len() && s[i] == 'z' {
            i += 1;
            let mut k = 1i64;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let start = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(err(i, "missing exponent"));
                }
                let text: String = s[start..i].iter().collect();
                k = text
                    .parse()
                    .map_err(|_| err(start, "exponent out of range"))?;
            }
            Cyc::root(root_order, k).scale(&coeff)
        } else {
            if star {
                return Err(err(i, "expected z after '*'"));
            }
            if !saw_number {
                return Err(err(i, "expected number or z"));
            }
            Cyc::from_rat(coeff)
        };
        acc = acc.add(&term);
        if i >= s.len() {
            break;
        }
        if s[i] != '+' && s[i] != '-' {
            return Err(err(i, "expected '+' or '-'"));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(m: u32, k: i64) -> Cyc {
        Cyc::root(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // first index with a coefficient of magnitude 2
        assert!(cyclotomic_poly(105).iter().any(|&c| c.abs() == 2));
    }

    #[test]
    fn sums_of_roots() {
        // zeta_5 + zeta_5^2 + zeta_5^3 + zeta_5^4 = -1
        let s = z(5, 1).add(&z(5, 2)).add(&z(5, 3)).add(&z(5, 4));
        assert_eq!(s, Cyc::int(-1));
        assert!(s.is_rational());
        // zeta_4^2 = -1
        assert_eq!(z(4, 1).mul(&z(4, 1)), Cyc::int(-1));
        // zeta_5 alone is irrational
        assert!(!z(5, 1).is_rational());
    }

    #[test]
    fn inverse_of_root() {
        assert_eq!(z(5, 1).inv().unwrap(), z(5, 4));
        assert_eq!(z(8, 3).inv().unwrap(), z(8, 5));
        assert!(Cyc::zero().inv().is_err());
        let a = z(5, 1).add(&Cyc::int(3));
        assert_eq!(a.mul(&a.inv().unwrap()), Cyc::one());
    }

    #[test]
    fn conjugation() {
        // conj(zeta_4) = -zeta_4
        assert_eq!(z(4, 1).conj(), z(4, 1).neg());
        // conj fixes rationals
        assert_eq!(
            Cyc::from_rat(Rat::new(7, 3)).conj(),
            Cyc::from_rat(Rat::new(7, 3))
        );
        // involution
        let a = z(12, 5).add(&z(12, 2).scale(&Rat::new(3, 2)));
        assert_eq!(a.conj().conj(), a);
        // ring homomorphism
        let b = z(12, 7).sub(&Cyc::int(2));
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
    }

    #[test]
    fn cross_order_equality_and_promotion() {
        // zeta_8^2 = zeta_4 = i
        assert_eq!(z(8, 2), z(4, 1));
        let x = z(4, 1);
        let up = x.promote(40);
        assert_eq!(up.order(), 40);
        assert_eq!(up, x);
        assert_eq!(up.reduce_order().order(), 4);
        // sqrt5 = zeta5 - zeta5^2 - zeta5^3 + zeta5^4 squares to 5
        let sqrt5 = z(5, 1).sub(&z(5, 2)).sub(&z(5, 3)).add(&z(5, 4));
        assert_eq!(sqrt5.mul(&sqrt5), Cyc::int(5));
    }

    #[test]
    fn hashing_respects_cross_order_equality() {
        use std::collections::hash_map::DefaultHasher;
        let h = |c: &Cyc| {
            let mut s = DefaultHasher::new();
            c.hash(&mut s);
            s.finish()
        };
        assert_eq!(h(&z(8, 2)), h(&z(4, 1)));
        assert_eq!(h(&z(10, 5)), h(&Cyc::int(-1)));
    }

    #[test]
    fn parse_and_display() {
        let m = 8;
        for text in ["1/2 + 1/2*z^2", "z^3 - z", "-1", "2/3*z - 1/3", "z", "0"] {
            let v = parse_cyc(text, m).unwrap();
            let again = parse_cyc(&v.to_string(), m).unwrap();
            assert_eq!(v, again, "roundtrip failed for {text}");
        }
        assert_eq!(parse_cyc("z^2", 4).unwrap(), Cyc::int(-1));
        assert_eq!(
            parse_cyc("  - 2 * z ^ 2 + 1", 8).unwrap(),
            Cyc::int(1).sub(&z(8, 2).scale(&Rat::int(2)))
        );
        assert!(parse_cyc("", 8).is_err());
        assert!(parse_cyc("1+", 8).is_err());
        assert!(parse_cyc("q", 8).is_err());
        assert!(parse_cyc("1/", 8).is_err());
        assert!(parse_cyc("2*", 8).is_err());
    }

    fn arb_cyc(m: u32) -> impl Strategy<Value = Cyc> {
        let phi = euler_phi(m);
        proptest::collection::vec((-6i64..=6, 1i64..=4), phi).prop_map(move |v| {
            let mut acc = Cyc::zero();
            for (k, (n, d)) in v.into_iter().enumerate() {
                acc = acc.add(&Cyc::root(m, k as i64).scale(&Rat::new(n, d)));
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // Field axioms with exact equality, across mixed orders 8 and 12.
        #[test]
        fn field_axioms(a in arb_cyc(8), b in arb_cyc(12), c in arb_cyc(6)) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), Cyc::one());
            }
        }

        #[test]
        fn promotion_roundtrip(a in arb_cyc(12)) {
            let up = a.promote(60);
            prop_assert_eq!(&up, &a);
            prop_assert_eq!(up.reduce_order(), a.reduce_order());
        }

        #[test]
        fn conj_is_involutive_hom(a in arb_cyc(20), b in arb_cyc(20)) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
            prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        }

        #[test]
        fn display_parse_roundtrip(a in arb_cyc(8)) {
            let text = a.to_string();
            prop_assert_eq!(parse_cyc(&text, 8).unwrap(), a);
        }
    }
}
