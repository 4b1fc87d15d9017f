//! Brute-force cross-checks that deliberately avoid the character-theoretic
//! machinery: the Reynolds operator computed as an explicit matrix average
//! over all group elements, with the invariant dimension read off as an exact
//! rank. Used by the verification suite as an independent oracle for
//! `invariant_dimension` in small dimensions and degrees.

use crate::cyc::Cyc;
use crate::gmatrix::{rank, GMatrix};
use crate::matgroup::MatrixGroup;
use crate::rat::Rat;

/// dim of degree-d invariants as the rank of (1/|G|) sum_g Sym^d(g),
/// averaging over every element explicitly.
pub fn reynolds_invariant_rank(g: &MatrixGroup, d: usize) -> usize {
    let n = crate::gmatrix::monomials(g.dim(), d).len();
    let order = g.root_order();
    let mut acc: Vec<Vec<Cyc>> = vec![vec![Cyc::zero().promote(order); n]; n];
    for e in g.elements() {
        let s = e.sym_power(d);
        for i in 0..n {
            for j in 0..n {
                let v = s.at(i, j);
                if !v.is_zero() {
                    acc[i][j] = acc[i][j].add(v);
                }
            }
        }
    }
    let scale = Rat::new(1, g.order() as i64);
    for row in acc.iter_mut() {
        for v in row.iter_mut() {
            *v = v.scale(&scale);
        }
    }
    // the averaged operator is idempotent; its rank is its trace, but rank is
    // computed independently here on purpose
    rank(acc)
}

/// Same averaging specialized to a projector sanity check: the Reynolds
/// matrix must be idempotent.
pub fn reynolds_is_idempotent(g: &MatrixGroup, d: usize) -> bool {
    let n = crate::gmatrix::monomials(g.dim(), d).len();
    let order = g.root_order();
    let mut entries: Vec<Cyc> = vec![Cyc::zero().promote(order); n * n];
    for e in g.elements() {
        let s = e.sym_power(d);
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = entries[i * n + j].add(s.at(i, j));
            }
        }
    }
    let scale = Rat::new(1, g.order() as i64);
    for v in entries.iter_mut() {
        *v = v.scale(&scale);
    }
    let m = GMatrix::new(n, order, entries).unwrap();
    m.matmul(&m) == m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;
    use crate::chars::invariant_dimension;

    #[test]
    fn reynolds_matches_characters_in_dim_2() {
        for name in ["2A4", "2S4"] {
            let g = build(name).unwrap().group().unwrap();
            for d in 1..=4usize {
                assert_eq!(
                    reynolds_invariant_rank(&g, d) as u64,
                    invariant_dimension(&g, d as u64).unwrap(),
                    "{name} degree {d}"
                );
            }
            assert!(reynolds_is_idempotent(&g, 3));
        }
    }
}
