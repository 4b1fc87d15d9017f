//! Structure of small finite abelian groups given by a Cayley table:
//! a direct-sum basis, invariant factors, exponent vectors, and the full
//! character group.

use crate::cyc::Cyc;
use crate::group::TableGroup;

pub struct AbelianStructure {
    /// Basis element indices in the table group.
    pub basis: Vec<u16>,
    /// Orders of the basis elements, in a divisor chain d_1 >= d_2 >= ...
    pub invariant_factors: Vec<u64>,
    /// For every element, its exponent vector with respect to the basis.
    pub exponents: Vec<Vec<u32>>,
}

fn elem_order(t: &TableGroup, a: u16) -> u64 {
    let n = t.core.n;
    let mut x = a as usize;
    let mut k = 1u64;
    while x != 0 {
        x = t.core.mul[x * n + a as usize] as usize;
        k += 1;
    }
    k
}

fn powers_of(t: &TableGroup, a: u16) -> Vec<u16> {
    let n = t.core.n;
    let mut out = vec![0u16];
    let mut x = a;
    while x != 0 {
        out.push(x);
        x = t.core.mul[x as usize * n + a as usize];
    }
    out
}

/// Decomposes an abelian table group into a direct sum of cyclic groups.
/// Greedy: repeatedly adjoin an element of maximal order whose cyclic group
/// meets the current span trivially.
pub fn abelian_structure(t: &TableGroup) -> AbelianStructure {
    let n = t.core.n;
    // verify commutativity in debug builds
    debug_assert!(
        (0..n).all(|a| (0..n).all(|b| { t.core.mul[a * n + b] == t.core.mul[b * n + a] }))
    );
    let mut span: Vec<bool> = vec![false; n];
    span[0] = true;
    let mut span_list: Vec<u16> = vec![0];
    let mut basis: Vec<u16> = Vec::new();
    let mut factors: Vec<u64> = Vec::new();
    let mut orders: Vec<u64> = (0..n as u16).map(|a| elem_order(t, a)).collect();
    orders[0] = 1;
    while span_list.len() < n {
        let mut best: Option<(u64, u16)> = None;
        for a in 1..n as u16 {
            if span[a as usize] {
                continue;
            }
            // cyclic group of a must meet the span only at the identity
            let ok = powers_of(t, a)
                .into_iter()
                .skip(1)
                .all(|x| !span[x as usize]);
            if !ok {
                continue;
            }
            let o = orders[a as usize];
            match best {
                Some((bo, ba)) if (bo, std::cmp::Reverse(ba)) >= (o, std::cmp::Reverse(a)) => {}
                _ => best = Some((o, a)),
            }
        }
        let (o, a) = best.expect("abelian decomposition stalled");
        basis.push(a);
        factors.push(o);
        // extend the span by all products span_element * a^k
        let pows = powers_of(t, a);
        let mut new_list = Vec::with_capacity(span_list.len() * pows.len());
        for &s in &span_list {
            for &p in &pows {
                let x = t.core.mul[s as usize * n + p as usize];
                if !span[x as usize] {
                    span[x as usize] = true;
                }
                new_list.push(x);
            }
        }
        new_list.sort_unstable();
        new_list.dedup();
        span_list = new_list;
    }
    // exponent vectors by enumerating all basis power combinations
    let mut exponents: Vec<Vec<u32>> = vec![Vec::new(); n];
    let r = basis.len();
    let mut combo = vec![0u32; r];
    loop {
        let mut x = 0u16;
        for (i, &b) in basis.iter().enumerate() {
            let pws = powers_of(t, b);
            x = t.core.mul[x as usize * n + pws[combo[i] as usize % pws.len()] as usize];
        }
        exponents[x as usize] = combo.clone();
        // odometer
        let mut i = 0;
        loop {
            if i == r {
                let exps = exponents;
                return AbelianStructure {
                    basis,
                    invariant_factors: factors,
                    exponents: exps,
                };
            }
            combo[i] += 1;
            if (combo[i] as u64) < factors[i] {
                break;
            }
            combo[i] = 0;
            i += 1;
        }
    }
}

/// All characters of the abelian group: one row per character, one value per
/// group element. The trivial character comes first.
pub fn abelian_characters(t: &TableGroup, st: &AbelianStructure) -> Vec<Vec<Cyc>> {
    let n = t.core.n;
    let r = st.basis.len();
    let mut chars = Vec::with_capacity(n);
    let mut tuple = vec![0u64; r];
    loop {
        let mut row = Vec::with_capacity(n);
        for e in 0..n {
            let mut v = Cyc::one();
            for i in 0..r {
                let d = st.invariant_factors[i];
                let k = (tuple[i] * st.exponents[e][i] as u64) % d;
                v = v.mul(&Cyc::root(d as u32, k as i64));
            }
            row.push(v);
        }
        chars.push(row);
        let mut i = 0;
        loop {
            if i == r {
                return chars;
            }
            tuple[i] += 1;
            if tuple[i] < st.invariant_factors[i] {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, GFMat2};

    fn cyclic_table(n: usize) -> TableGroup {
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u16;
            }
        }
        TableGroup::new(mul, n)
    }

    #[test]
    fn cyclic_group_structure() {
        let t = cyclic_table(12);
        let st = abelian_structure(&t);
        assert_eq!(st.invariant_factors, vec![12]);
        let chars = abelian_characters(&t, &st);
        assert_eq!(chars.len(), 12);
        // first character is trivial
        assert!(chars[0].iter().all(|v| v.is_one()));
        // characters are multiplicative
        for row in &chars {
            for a in 0..12usize {
                for b in 0..12usize {
                    let ab = t.core.mul[a * 12 + b] as usize;
                    assert_eq!(row[a].mul(&row[b]), row[ab]);
                }
            }
        }
    }

    #[test]
    fn z2_x_z4_structure() {
        // build Z2 x Z4 as a table
        let n = 8;
        let mut mul = vec![0u16; n * n];
        let enc = |a: usize, b: usize| (a * 4 + b) as u16;
        for a1 in 0..2 {
            for b1 in 0..4 {
                for a2 in 0..2 {
                    for b2 in 0..4 {
                        mul[(enc(a1, b1) as usize) * n + enc(a2, b2) as usize] =
                            enc((a1 + a2) % 2, (b1 + b2) % 4);
                    }
                }
            }
        }
        let t = TableGroup::new(mul, n);
        let st = abelian_structure(&t);
        assert_eq!(st.invariant_factors, vec![4, 2]);
        assert_eq!(abelian_characters(&t, &st).len(), 8);
    }

    #[test]
    fn quotient_of_sl2f3_is_z3() {
        let s3 = GFMat2::new(3, 0, -1, 1, 0);
        let t3 = GFMat2::new(3, 1, 1, 0, 1);
        let g = FiniteGroup::close(&[s3, t3], 1000).unwrap();
        let k = g.commutator_subgroup();
        assert_eq!(k.len(), 8); // [SL(2,3), SL(2,3)] = Q8
        let part = g.cosets(&k);
        let q = g.quotient(&part);
        let st = abelian_structure(&q);
        assert_eq!(st.invariant_factors, vec![3]);
    }
}
