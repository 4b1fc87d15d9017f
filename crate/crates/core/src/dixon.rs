//! Irreducible character tables by the Burnside–Dixon method: compute class
//! algebra structure constants, split common eigenvectors over a suitable
//! prime field, then lift the mod-p values to exact cyclotomic numbers via
//! eigenvalue multiplicities.
//!
//! Also the normal-subgroup lattice: every normal subgroup is an intersection
//! of kernels of irreducible characters, so once the table exists the lattice
//! is pure set arithmetic.

use rustc_hash::FxHashSet;

use crate::chars::{inner_product, ClassSource};
use crate::cyc::Cyc;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElem};
use crate::primes::is_prime_u64;
use crate::rat::Rat;

pub struct CharacterTable {
    /// One row per irreducible character, values indexed by class.
    pub rows: Vec<Vec<Cyc>>,
    pub degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn irreducible_count(&self) -> usize {
        self.rows.len()
    }

    /// Multiset of degrees, ascending.
    pub fn degree_multiset(&self) -> Vec<u64> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            factors.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'outer: for g in 2..p {
        for &f in &factors {
            if powmod(g, (p - 1) / f, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root found");
}

/// Dense k x k matrix over F_p.
#[derive(Clone)]
struct ModMat {
    k: usize,
    a: Vec<u64>,
}

impl ModMat {
    fn zero(k: usize) -> ModMat {
        ModMat {
            k,
            a: vec![0; k * k],
        }
    }
    fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.k + j]
    }
    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.k + j] = v;
    }
}

/// Right nullspace basis of a rectangular matrix over F_p (rows x cols).
fn nullspace_mod(rows: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = invmod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for cc in 0..cols {
                    m[i][cc] = (m[i][cc] + (p - f) * m[r][cc]) % p;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for c in 0..cols {
            if let Some(i) = pivot_of_col[c] {
                v[c] = (p - m[i][free]) % p;
            }
        }
        basis.push(v);
    }
    basis
}

struct ClassMeta {
    member_lists: Vec<Vec<u32>>,
}

impl ClassMeta {
    fn new<E: GroupElem>(g: &FiniteGroup<E>) -> ClassMeta {
        let cls = g.classes();
        let mut member_lists = vec![Vec::new(); cls.reps.len()];
        for (i, &c) in cls.class_of.iter().enumerate() {
            member_lists[c as usize].push(i as u32);
        }
        ClassMeta { member_lists }
    }
}

/// Structure-constant matrix A_i with (A_i)[j][l] = #{(x,y) in C_i x C_j :
/// x y = rep_l}; the vectors of central character values are its common
/// eigenvectors.
fn class_matrix<E: GroupElem>(g: &FiniteGroup<E>, meta: &ClassMeta, i: usize, p: u64) -> ModMat {
    let cls = g.classes();
    let k = cls.reps.len();
    let mut m = ModMat::zero(k);
    for &x in &meta.member_lists[i] {
        let xinv = g.inverse_index(x);
        for (l, &rep) in cls.reps.iter().enumerate() {
            let y = g.imul(xinv, rep);
            let j = cls.class_of[y as usize] as usize;
            let v = m.at(j, l);
            m.set(j, l, (v + 1) % p);
        }
    }
    m
}

/// Full irreducible character table over exact cyclotomics, cached on the
/// group after the first computation.
pub fn character_table<E: GroupElem>(g: &FiniteGroup<E>) -> Result<std::rc::Rc<CharacterTable>>
where
    FiniteGroup<E>: ClassSource,
{
    if let Some(hit) = g.char_table_cache.get() {
        return Ok(std::rc::Rc::clone(hit));
    }
    let table = std::rc::Rc::new(character_table_uncached(g)?);
    let _ = g.char_table_cache.set(std::rc::Rc::clone(&table));
    Ok(table)
}

fn character_table_uncached<E: GroupElem>(g: &FiniteGroup<E>) -> Result<CharacterTable>
where
    FiniteGroup<E>: ClassSource,
{
    let cls = g.classes();
    let k = cls.reps.len();
    let n = g.order() as u64;
    let e = cls.exponent;

    // smallest prime p = 1 mod exponent with p^2 > 4|G|
    let mut p = e + 1;
    loop {
        if p > 2 * (n as f64).sqrt() as u64 + 1 && is_prime_u64(p) {
            break;
        }
        p += e;
    }

    let meta = ClassMeta::new(g);

    // split the k-dimensional space into common eigenvectors of the class
    // matrices, processing small classes first
    let mut order: Vec<usize> = (1..k).collect();
    order.sort_by_key(|&i| cls.sizes[i]);
    // blocks: list of bases (each basis = list of k-vectors)
    let mut blocks: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect()];
    for &i in &order {
        if blocks.iter().all(|b| b.len() == 1) {
            break;
        }
        let a = class_matrix(g, &meta, i, p);
        let mut next: Vec<Vec<Vec<u64>>> = Vec::new();
        for block in blocks {
            if block.len() == 1 {
                next.push(block);
                continue;
            }
            let b = block.len();
            // restriction R of A to the block: A * w_col = sum_r R[r][col] w_r
            let imgs: Vec<Vec<u64>> = block
                .iter()
                .map(|w| {
                    let mut out = vec![0u64; k];
                    for (j, o) in out.iter_mut().enumerate() {
                        let mut acc = 0u128;
                        for l in 0..k {
                            acc += a.at(j, l) as u128 * w[l] as u128;
                        }
                        *o = (acc % p as u128) as u64;
                    }
                    out
                })
                .collect();
            // solve for R: stack block vectors as columns, solve for each image
            let r_mat = solve_in_basis(&block, &imgs, k, b, p)?;
            // eigenvalues of R by scanning F_p
            let mut found = 0usize;
            for lam in 0..p {
                if found == b {
                    break;
                }
                // nullspace of (R - lam I)
                let mut rows = vec![vec![0u64; b]; b];
                for rr in 0..b {
                    for cc in 0..b {
                        let mut v = r_mat[rr][cc];
                        if rr == cc {
                            v = (v + p - lam % p) % p;
                        }
                        rows[rr][cc] = v;
                    }
                }
                let ns = nullspace_mod(rows, b, p);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|u| {
                        let mut w = vec![0u64; k];
                        for (ci, coeff) in u.iter().enumerate() {
                            for j in 0..k {
                                w[j] = (w[j] + coeff * block[ci][j]) % p;
                            }
                        }
                        w
                    })
                    .collect();
                next.push(sub);
            }
            if found != b {
                return Err(Error::Internal(
                    "class matrix failed to split over the chosen prime".into(),
                ));
            }
        }
        blocks = next;
    }
    if blocks.len() != k || blocks.iter().any(|b| b.len() != 1) {
        return Err(Error::Internal(format!(
            "expected {k} one-dimensional blocks, got {}",
            blocks.len()
        )));
    }

    // normalize each eigenvector so the identity-class entry is 1: the
    // entries are then the central character values omega(C_j)
    let sizes_mod: Vec<u64> = cls.sizes.iter().map(|&s| s % p).collect();
    let size_inv: Vec<u64> = sizes_mod.iter().map(|&s| invmod(s, p)).collect();
    let mut rows_out: Vec<Vec<Cyc>> = Vec::with_capacity(k);
    let mut degrees: Vec<u64> = Vec::with_capacity(k);

    let theta = powmod(primitive_root(p), (p - 1) / e, p); // primitive e-th root
    for block in &blocks {
        let w = &block[0];
        if w[0] == 0 {
            return Err(Error::Internal(
                "central character vanishes on the identity class".into(),
            ));
        }
        let scale = invmod(w[0], p);
        let omega: Vec<u64> = w.iter().map(|&x| x * scale % p).collect();
        // degree: d^2 = |G| / sum_j omega_j omega_{j*} / |C_j|
        let mut s = 0u64;
        for j in 0..k {
            let jstar = cls.inverse_class[j] as usize;
            s = (s + omega[j] * omega[jstar] % p * size_inv[j]) % p;
        }
        let target = n % p * invmod(s, p) % p;
        let mut degree = 0u64;
        let max_d = (n as f64).sqrt() as u64 + 1;
        for d in 1..=max_d {
            if d * d % p == target {
                degree = d;
                break;
            }
        }
        if degree == 0 || n % degree != 0 {
            return Err(Error::Internal(format!(
                "no valid degree with d^2 = {target} mod {p}"
            )));
        }
        // chi_p(C_j) = d * omega_j / |C_j| mod p
        let chi_p: Vec<u64> = (0..k)
            .map(|j| degree % p * omega[j] % p * size_inv[j] % p)
            .collect();
        // lift each value: chi(g_j) = sum_t n_t zeta_o^t with
        // n_t = (1/o) sum_s chi_p(g_j^s) theta_o^{-st}
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let o = cls.rep_orders[j] as u64;
            let theta_o = powmod(theta, e / o, p);
            let theta_o_inv = invmod(theta_o, p);
            let o_inv = invmod(o % p, p);
            let mut val = Cyc::zero();
            for t in 0..o {
                let mut acc = 0u64;
                for s in 0..o {
                    let cj = g
                        .power(j, s)
                        .map_err(|_| Error::Internal("power map unavailable".into()))?;
                    acc = (acc + chi_p[cj] * powmod(theta_o_inv, s * t % o, p)) % p;
                }
                let nt = acc * o_inv % p;
                if nt > degree {
                    return Err(Error::Internal(format!(
                        "eigenvalue multiplicity {nt} exceeds degree {degree}"
                    )));
                }
                if nt > 0 {
                    val = val.add(&Cyc::root(o as u32, t as i64).scale(&Rat::int(nt as i64)));
                }
            }
            row.push(val);
        }
        if row[0] != Cyc::int(degree as i64) {
            return Err(Error::Internal(
                "lifted character disagrees with its degree on the identity".into(),
            ));
        }
        degrees.push(degree);
        rows_out.push(row);
    }

    // sum of squares and orthogonality checks, exact
    let sum_sq: u64 = degrees.iter().map(|d| d * d).sum();
    if sum_sq != n {
        return Err(Error::Internal(format!(
            "degree squares sum to {sum_sq}, group order is {n}"
        )));
    }
    for a in 0..k {
        for b in a..k {
            let ip = inner_product(g, &rows_out[a], &rows_out[b])?;
            let expect = if a == b { Cyc::one() } else { Cyc::zero() };
            if ip != expect {
                return Err(Error::Internal(format!(
                    "row orthogonality failed at ({a}, {b}): {ip}"
                )));
            }
        }
    }

    // deterministic row order: by degree, then by value strings
    let mut idx: Vec<usize> = (0..k).collect();
    let keys: Vec<(u64, String)> = (0..k)
        .map(|i| {
            (
                degrees[i],
                rows_out[i]
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            )
        })
        .collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let rows = idx.iter().map(|&i| rows_out[i].clone()).collect();
    let degrees = idx.iter().map(|&i| degrees[i]).collect();
    Ok(CharacterTable { rows, degrees })
}

/// Express each image vector in the given independent basis (all over F_p).
/// Returns R with R[r][c] = coefficient of basis[r] in image[c].
fn solve_in_basis(
    basis: &[Vec<u64>],
    images: &[Vec<u64>],
    k: usize,
    b: usize,
    p: u64,
) -> Result<Vec<Vec<u64>>> {
    // augmented system: k x (b + b) [basis columns | image columns]
    let mut aug = vec![vec![0u64; b + images.len()]; k];
    for (c, v) in basis.iter().enumerate() {
        for j in 0..k {
            aug[j][c] = v[j];
        }
    }
    for (c, v) in images.iter().enumerate() {
        for j in 0..k {
            aug[j][b + c] = v[j];
        }
    }
    // eliminate
    let mut r = 0usize;
    let mut pivots = Vec::new();
    for c in 0..b {
        let Some(pr) = (r..k).find(|&i| aug[i][c] != 0) else {
            return Err(Error::Internal("block basis is dependent".into()));
        };
        aug.swap(r, pr);
        let inv = invmod(aug[r][c], p);
        for x in aug[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..k {
            if i != r && aug[i][c] != 0 {
                let f = aug[i][c];
                for cc in 0..b + images.len() {
                    aug[i][cc] = (aug[i][cc] + (p - f) * aug[r][cc] % p) % p;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    let mut out = vec![vec![0u64; images.len()]; b];
    for (c, &pr) in pivots.iter().enumerate() {
        for (ic, _) in images.iter().enumerate() {
            out[c][ic] = aug[pr][b + ic];
        }
    }
    // consistency: rows below the pivots must be zero on image columns
    for i in r..k {
        for ic in 0..images.len() {
            if aug[i][b + ic] != 0 {
                return Err(Error::Internal(
                    "image does not lie in the block span".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// All normal subgroups, as sorted class-id lists, via intersections of
/// character kernels.
pub fn normal_subgroups_classes<E: GroupElem>(
    g: &FiniteGroup<E>,
    table: &CharacterTable,
) -> Vec<Vec<u32>> {
    let k = g.classes().reps.len();
    let kernels: Vec<Vec<u32>> = table
        .rows
        .iter()
        .map(|row| {
            (0..k as u32)
                .filter(|&c| row[c as usize] == row[0])
                .collect()
        })
        .collect();
    let mut all: FxHashSet<Vec<u32>> = FxHashSet::default();
    all.insert((0..k as u32).collect()); // G itself
    for ker in &kernels {
        all.insert(ker.clone());
    }
    loop {
        let snapshot: Vec<Vec<u32>> = all.iter().cloned().collect();
        let before = all.len();
        for a in &snapshot {
            for ker in &kernels {
                let meet: Vec<u32> = a
                    .iter()
                    .copied()
                    .filter(|c| ker.binary_search(c).is_ok())
                    .collect();
                all.insert(meet);
            }
        }
        if all.len() == before {
            break;
        }
    }
    let mut out: Vec<Vec<u32>> = all.into_iter().collect();
    out.sort();
    out
}

/// Normal subgroups of index at most `max_index`, as sorted element index
/// lists.
pub fn normal_subgroups_small_index<E: GroupElem>(
    g: &FiniteGroup<E>,
    max_index: u64,
) -> Result<Vec<Vec<u32>>>
where
    FiniteGroup<E>: ClassSource,
{
    let table = character_table(g)?;
    let cls = g.classes();
    let n = g.order() as u64;
    let mut out = Vec::new();
    for class_set in normal_subgroups_classes(g, &table) {
        let size: u64 = class_set.iter().map(|&c| cls.sizes[c as usize]).sum();
        if size * max_index < n {
            continue;
        }
        let mut elems: Vec<u32> = (0..g.order() as u32)
            .filter(|&i| class_set.binary_search(&cls.class_of[i as usize]).is_ok())
            .collect();
        elems.sort_unstable();
        out.push(elems);
    }
    out.sort_by_key(|h| std::cmp::Reverse(h.len()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmatrix::{int_matrix, root_diag};
    use crate::group::GFMat2;

    #[test]
    fn abelian_table_is_all_linear() {
        let z6 = root_diag(6, &[1]);
        let g = FiniteGroup::close(&[z6], 100).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degree_multiset(), vec![1; 6]);
    }

    #[test]
    fn s3_degrees() {
        // S3 as permutation matrices in GL(3)
        let swap = int_matrix(1, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let cyc = int_matrix(1, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let g = FiniteGroup::close(&[swap, cyc], 100).unwrap();
        assert_eq!(g.order(), 6);
        let t = character_table(&g).unwrap();
        assert_eq!(t.degree_multiset(), vec![1, 1, 2]);
    }

    #[test]
    fn sl2_f5_table() {
        let s = GFMat2::new(5, 0, -1, 1, 0);
        let tgen = GFMat2::new(5, 1, 1, 0, 1);
        let g = FiniteGroup::close(&[s, tgen], 1000).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degree_multiset(), vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    }

    #[test]
    fn a5_degrees_via_f2_matrices() {
        // A5 inside GL(4, 2): generated by the images of (12345) and (12)(34)
        // as permutation matrices.
        let c5 = int_matrix(
            1,
            &[
                &[0, 0, 0, 0, 1],
                &[1, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0],
                &[0, 0, 1, 0, 0],
                &[0, 0, 0, 1, 0],
            ],
        );
        let dbl = int_matrix(
            1,
            &[
                &[0, 1, 0, 0, 0],
                &[1, 0, 0, 0, 0],
                &[0, 0, 0, 1, 0],
                &[0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1],
            ],
        );
        let g = FiniteGroup::close(&[c5, dbl], 1000).unwrap();
        assert_eq!(g.order(), 60);
        let t = character_table(&g).unwrap();
        assert_eq!(t.degree_multiset(), vec![1, 3, 3, 4, 5]);
    }

    #[test]
    fn sl2_f7_has_quartic_invariant() {
        // SL(2, F_7) in its 4-dimensional representations has an invariant of
        // degree exactly 4: visible from the abstract character table and
        // power maps alone, no matrix model needed.
        let s = GFMat2::new(7, 0, -1, 1, 0);
        let t = GFMat2::new(7, 1, 1, 0, 1);
        let g = FiniteGroup::close(&[s, t], 1000).unwrap();
        assert_eq!(g.order(), 336);
        let table = character_table(&g).unwrap();
        let centre_class = {
            let cls = g.classes();
            let minus = GFMat2::new(7, -1, 0, 0, -1);
            cls.class_of[g.position(&minus).unwrap() as usize] as usize
        };
        let mut checked = 0;
        for (row, &deg) in table.rows.iter().zip(table.degrees.iter()) {
            // faithful degree-4 rows: the central involution acts by -1
            if deg != 4 || row[centre_class] != crate::cyc::Cyc::int(-4) {
                continue;
            }
            checked += 1;
            for d in 1..=3u64 {
                let sym = crate::chars::sym_power_character(&g, row, d).unwrap();
                let triv = vec![crate::cyc::Cyc::one(); g.class_count()];
                let ip = crate::chars::inner_product(&g, &sym, &triv).unwrap();
                assert!(ip.is_zero(), "unexpected invariant of degree {d}");
            }
            let sym4 = crate::chars::sym_power_character(&g, row, 4).unwrap();
            let triv = vec![crate::cyc::Cyc::one(); g.class_count()];
            let ip = crate::chars::inner_product(&g, &sym4, &triv).unwrap();
            assert_eq!(ip, crate::cyc::Cyc::one(), "one invariant quartic");
        }
        assert_eq!(checked, 2, "two faithful 4-dimensional characters");
    }

    #[test]
    fn normal_subgroup_lattice_of_z6() {
        let z6 = root_diag(6, &[1]);
        let g = FiniteGroup::close(&[z6], 100).unwrap();
        // Z6 has exactly 4 normal subgroups
        let subs = normal_subgroups_small_index(&g, 6).unwrap();
        assert_eq!(subs.len(), 4);
        let mut sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3, 6]);
    }

    #[test]
    fn simple_group_lattice() {
        let c5 = int_matrix(
            1,
            &[
                &[0, 0, 0, 0, 1],
                &[1, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0],
                &[0, 0, 1, 0, 0],
                &[0, 0, 0, 1, 0],
            ],
        );
        let dbl = int_matrix(
            1,
            &[
                &[0, 1, 0, 0, 0],
                &[1, 0, 0, 0, 0],
                &[0, 0, 0, 1, 0],
                &[0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1],
            ],
        );
        let g = FiniteGroup::close(&[c5, dbl], 1000).unwrap();
        let subs = normal_subgroups_small_index(&g, 60).unwrap();
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![60, 1]);
    }
}
