//! Square matrices over cyclotomic numbers, and the exact linear algebra the
//! rest of the crate needs (inverse, determinant, rank, nullspace, symmetric
//! powers).
//!
//! Every entry of a `GMatrix` is stored at the matrix's declared root order,
//! so equality and hashing are plain structural operations. All matrices in
//! one group share one root order.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::cyc::Cyc;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct GMatrix {
    dim: usize,
    root_order: u32,
    entries: Vec<Cyc>, // row-major, all at root_order
}

impl GMatrix {
    pub fn new(dim: usize, root_order: u32, entries: Vec<Cyc>) -> Result<GMatrix> {
        if entries.len() != dim * dim {
            return Err(Error::Mismatch(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|e| {
                if root_order % e.order() != 0 {
                    Err(Error::Mismatch(format!(
                        "entry of order {} does not embed in root order {root_order}",
                        e.order()
                    )))
                } else {
                    Ok(e.promote(root_order))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GMatrix {
            dim,
            root_order,
            entries,
        })
    }

    pub fn identity(dim: usize, root_order: u32) -> GMatrix {
        let mut entries = vec![Cyc::zero().promote(root_order); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Cyc::one().promote(root_order);
        }
        GMatrix {
            dim,
            root_order,
            entries,
        }
    }

    pub fn scalar(dim: usize, root_order: u32, v: &Cyc) -> GMatrix {
        let mut m = GMatrix::identity(dim, root_order);
        for i in 0..dim {
            m.entries[i * dim + i] = v.promote(root_order);
        }
        m
    }

    pub fn from_rows(root_order: u32, rows: Vec<Vec<Cyc>>) -> Result<GMatrix> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Mismatch("matrix is not square".into()));
        }
        GMatrix::new(dim, root_order, rows.into_iter().flatten().collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn at(&self, i: usize, j: usize) -> &Cyc {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Cyc] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self == &GMatrix::identity(self.dim, self.root_order)
    }

    pub fn is_scalar(&self) -> Option<Cyc> {
        let d = self.at(0, 0).clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.at(i, j);
                if i == j {
                    if *e != d {
                        return None;
                    }
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        Some(d)
    }

    /// Rewrites the matrix at a (larger) root order.
    pub fn promote(&self, root_order: u32) -> Result<GMatrix> {
        if root_order == self.root_order {
            return Ok(self.clone());
        }
        GMatrix::new(self.dim, root_order, self.entries.clone())
    }

    pub fn matmul(&self, other: &GMatrix) -> GMatrix {
        debug_assert_eq!(self.dim, other.dim);
        debug_assert_eq!(self.root_order, other.root_order);
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Cyc::zero().promote(self.root_order);
                for k in 0..n {
                    let a = self.at(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.push(acc);
            }
        }
        GMatrix {
            dim: n,
            root_order: self.root_order,
            entries: out,
        }
    }

    pub fn scale(&self, v: &Cyc) -> GMatrix {
        let v = v.promote(self.root_order);
        GMatrix {
            dim: self.dim,
            root_order: self.root_order,
            entries: self.entries.iter().map(|e| e.mul(&v)).collect(),
        }
    }

    pub fn trace(&self) -> Cyc {
        let mut t = Cyc::zero();
        for i in 0..self.dim {
            t = t.add(self.at(i, i));
        }
        t
    }

    pub fn sub(&self, other: &GMatrix) -> GMatrix {
        debug_assert_eq!(self.root_order, other.root_order);
        GMatrix {
            dim: self.dim,
            root_order: self.root_order,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn det(&self) -> Cyc {
        let n = self.dim;
        let mut a: Vec<Vec<Cyc>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut det = Cyc::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Cyc::zero();
            };
            if p != col {
                a.swap(col, p);
                det = det.neg();
            }
            det = det.mul(&a[col][col]);
            let inv = a[col][col].inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].mul(&inv);
                for c in col..n {
                    let s = a[col][c].mul(&f);
                    a[r][c] = a[r][c].sub(&s);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<GMatrix> {
        let n = self.dim;
        let mut a: Vec<Vec<Cyc>> = (0..n)
            .map(|i| {
                let mut row = self.entries[i * n..(i + 1) * n].to_vec();
                for j in 0..n {
                    row.push(if i == j {
                        Cyc::one().promote(self.root_order)
                    } else {
                        Cyc::zero().promote(self.root_order)
                    });
                }
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap(col, p);
            let inv = a[col][col].inv()?;
            for x in a[col].iter_mut() {
                *x = x.mul(&inv);
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let s = a[col][c].mul(&f);
                        a[r][c] = a[r][c].sub(&s);
                    }
                }
            }
        }
        let entries = a
            .into_iter()
            .flat_map(|row| row.into_iter().skip(n))
            .collect();
        GMatrix::new(n, self.root_order, entries)
    }

    /// Multiplicative order; errors if it exceeds `limit`.
    pub fn mult_order(&self, limit: u32) -> Result<u32> {
        let id = GMatrix::identity(self.dim, self.root_order);
        let mut p = self.clone();
        for k in 1..=limit {
            if p == id {
                return Ok(k);
            }
            p = p.matmul(self);
        }
        Err(Error::LimitExceeded {
            limit: limit as usize,
        })
    }

    pub fn pow(&self, mut e: u64) -> GMatrix {
        let mut base = self.clone();
        let mut acc = GMatrix::identity(self.dim, self.root_order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    /// rank(self - 1) == 1, i.e. the element fixes a hyperplane pointwise.
    pub fn is_reflection(&self) -> bool {
        if self.is_identity() {
            return false;
        }
        let diff = self.sub(&GMatrix::identity(self.dim, self.root_order));
        let rows: Vec<Vec<Cyc>> = (0..self.dim)
            .map(|i| diff.entries[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect();
        rank(rows) == 1
    }

    /// The induced action on Sym^d of the underlying space: rows and columns
    /// are indexed by the degree-d monomials in dim variables.
    pub fn sym_power(&self, d: usize) -> GMatrix {
        let monos = monomials(self.dim, d);
        let n = monos.len();
        let mut out = vec![Cyc::zero().promote(self.root_order); n * n];
        // column j: image of monomial m_j under x_i -> sum_k a_{ki} x_k
        // (action on coordinates as functions: we only need a consistent
        // multiplicative convention; sym_power(AB) = sym_power(A) sym_power(B)).
        for (j, mono) in monos.iter().enumerate() {
            // expand prod_i (sum_k A[k][i] x_k)^{mono[i]}
            let mut poly: Vec<(Vec<u32>, Cyc)> =
                vec![(vec![0; self.dim], Cyc::one().promote(self.root_order))];
            for (i, &e) in mono.iter().enumerate() {
                for _ in 0..e {
                    let mut next: Vec<(Vec<u32>, Cyc)> = Vec::new();
                    for (exps, coeff) in &poly {
                        for k in 0..self.dim {
                            let a = self.at(k, i);
                            if a.is_zero() {
                                continue;
                            }
                            let mut ne = exps.clone();
                            ne[k] += 1;
                            let nc = coeff.mul(a);
                            if let Some(slot) = next.iter_mut().find(|(ex, _)| *ex == ne) {
                                slot.1 = slot.1.add(&nc);
                            } else {
                                next.push((ne, nc));
                            }
                        }
                    }
                    poly = next;
                }
            }
            for (exps, coeff) in poly {
                let i = monos.iter().position(|m| *m == exps).unwrap();
                out[i * n + j] = out[i * n + j].add(&coeff);
            }
        }
        GMatrix {
            dim: n,
            root_order: self.root_order,
            entries: out,
        }
    }
}

impl Hash for GMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.root_order.hash(state);
        // Entries are already reduced at a common order; hash raw coordinates.
        for e in &self.entries {
            e.coeffs().hash(state);
        }
    }
}

impl fmt::Debug for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GMatrix({}x{}, z = zeta_{})",
            self.dim, self.dim, self.root_order
        )?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// All exponent vectors of total degree d in `vars` variables,
/// lexicographically ordered.
pub fn monomials(vars: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(vars: usize, d: usize, out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>) {
        if vars == 1 {
            prefix.push(d as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u32);
            rec(vars - 1, d - e, out, prefix);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut out, &mut Vec::new());
    out
}

/// Row rank of a rectangular matrix (rows of equal length), destructive.
pub fn rank(mut rows: Vec<Vec<Cyc>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut r = 0usize;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in col..cols {
                    let s = rows[r][c].mul(&f);
                    rows[i][c] = rows[i][c].sub(&s);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Reduced row echelon form; returns the nonzero rows. This is the canonical
/// form of the row space, so two sub spaces are equal iff their rref rows are.
pub fn rref(mut rows: Vec<Vec<Cyc>>) -> Vec<Vec<Cyc>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut r = 0usize;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..cols {
                    let s = rows[r][c].mul(&f);
                    rows[i][c] = rows[i][c].sub(&s);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

/// Basis of the right nullspace of `rows` (vectors v with rows * v = 0).
pub fn nullspace(rows: Vec<Vec<Cyc>>, cols: usize) -> Vec<Vec<Cyc>> {
    let rr = rref(rows);
    let mut pivot_of_col = vec![None; cols];
    for (i, row) in rr.iter().enumerate() {
        if let Some(c) = row.iter().position(|x| !x.is_zero()) {
            pivot_of_col[c] = Some(i);
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Cyc::zero(); cols];
        v[free] = Cyc::one();
        for c in 0..cols {
            if let Some(i) = pivot_of_col[c] {
                v[c] = rr[i][free].neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// Kronecker product: (a ⊗ b) acts on the tensor basis e_i ⊗ f_j ordered
/// with the first factor most significant.
pub fn kron(a: &GMatrix, b: &GMatrix) -> GMatrix {
    let (da, db) = (a.dim(), b.dim());
    let order = num_integer::lcm(a.root_order(), b.root_order());
    let n = da * db;
    let mut entries = vec![Cyc::zero(); n * n];
    for i1 in 0..da {
        for j1 in 0..da {
            let x = a.at(i1, j1);
            if x.is_zero() {
                continue;
            }
            for i2 in 0..db {
                for j2 in 0..db {
                    let y = b.at(i2, j2);
                    if y.is_zero() {
                        continue;
                    }
                    entries[(i1 * db + i2) * n + (j1 * db + j2)] = x.mul(y);
                }
            }
        }
    }
    GMatrix::new(n, order, entries).unwrap()
}

/// Parses a matrix given as rows of entry strings in the textual grammar.
pub fn parse_matrix(rows: &[Vec<String>], root_order: u32) -> Result<GMatrix> {
    let dim = rows.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::Parse {
                msg: format!("row {i} has {} entries, expected {dim}", row.len()),
                pos: None,
            });
        }
        for cell in row {
            entries.push(crate::cyc::parse_cyc(cell, root_order)?);
        }
    }
    GMatrix::new(dim, root_order, entries)
}

/// Builds a matrix from small integer entries (no roots of unity).
pub fn int_matrix(root_order: u32, rows: &[&[i64]]) -> GMatrix {
    let dim = rows.len();
    let entries = rows
        .iter()
        .flat_map(|r| r.iter().map(|&v| Cyc::int(v)))
        .collect();
    GMatrix::new(dim, root_order, entries).unwrap()
}

/// Builds a diagonal matrix with entries zeta_{root_order}^{k_i} scaled by 1.
pub fn root_diag(root_order: u32, powers: &[i64]) -> GMatrix {
    let dim = powers.len();
    let mut entries = vec![Cyc::zero(); dim * dim];
    for (i, &k) in powers.iter().enumerate() {
        entries[i * dim + i] = Cyc::root(root_order, k);
    }
    GMatrix::new(dim, root_order, entries).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    #[test]
    fn mul_inverse_det() {
        let a = int_matrix(4, &[&[1, 1], &[0, 1]]);
        let b = int_matrix(4, &[&[0, -1], &[1, 0]]);
        let ab = a.matmul(&b);
        assert_eq!(*ab.at(0, 0), Cyc::int(1));
        assert_eq!(ab.det(), Cyc::one());
        let inv = ab.inverse().unwrap();
        assert!(ab.matmul(&inv).is_identity());
        assert_eq!(b.mult_order(10).unwrap(), 4);

        let sing = int_matrix(4, &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.det(), Cyc::zero());
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn reflection_predicate() {
        // diag(zeta_3, 1, 1, 1) is a reflection
        let r = root_diag(3, &[1, 0, 0, 0]);
        assert!(r.is_reflection());
        // -identity in dim >= 2 is not
        let m = GMatrix::scalar(3, 2, &Cyc::int(-1));
        assert!(!m.is_reflection());
        assert!(!GMatrix::identity(4, 1).is_reflection());
    }

    #[test]
    fn sym_power_is_multiplicative() {
        let a = parse_matrix(
            &[
                vec!["z".into(), "1/2".into()],
                vec!["0".into(), "z^7".into()],
            ],
            8,
        )
        .unwrap();
        let b = int_matrix(8, &[&[0, -1], &[1, 0]]);
        for d in 1..=3usize {
            let lhs = a.matmul(&b).sym_power(d);
            let rhs = a.sym_power(d).matmul(&b.sym_power(d));
            assert_eq!(lhs, rhs, "Sym^{d} not multiplicative");
        }
        // dim of Sym^d(C^2) is d+1
        assert_eq!(a.sym_power(3).dim(), 4);
        // Sym^0 is trivial
        assert!(a.sym_power(0).is_identity());
    }

    #[test]
    fn sym_cube_of_sl2_lands_in_sl4() {
        let b = int_matrix(8, &[&[0, -1], &[1, 0]]);
        let s3 = b.sym_power(3);
        assert_eq!(s3.dim(), 4);
        assert_eq!(s3.det(), Cyc::one());
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![
            vec![Cyc::int(1), Cyc::int(2), Cyc::int(3)],
            vec![Cyc::int(2), Cyc::int(4), Cyc::int(6)],
            vec![Cyc::int(0), Cyc::int(1), Cyc::int(1)],
        ];
        assert_eq!(rank(rows.clone()), 2);
        let ns = nullspace(rows, 3);
        assert_eq!(ns.len(), 1);
        // verify the kernel vector: x + 2y + 3z = 0, y + z = 0
        let v = &ns[0];
        let a = v[0]
            .add(&v[1].scale(&Rat::int(2)))
            .add(&v[2].scale(&Rat::int(3)));
        assert!(a.is_zero());
    }

    #[test]
    fn trace_of_scalar() {
        // zeta * identity in dim 5 has trace 5 zeta
        let m = GMatrix::scalar(5, 5, &Cyc::root(5, 1));
        assert_eq!(m.trace(), Cyc::root(5, 1).scale(&Rat::int(5)));
    }
}
