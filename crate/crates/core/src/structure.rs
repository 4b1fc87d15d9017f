//! Transitivity (irreducibility), systems of imprimitivity, and the
//! invariant-twisted-cubic test in dimension 4.
//!
//! The block-system search is a semi-decision: any system it returns is
//! re-verified against every generator, but a "none found" answer is not a
//! primitivity certificate. The classifier upgrades "none found" to
//! "primitive" only through catalog identification.

use rustc_hash::FxHashSet;

use crate::chars::{inner_product, sym_power_character};
use crate::cyc::Cyc;
use crate::dixon::{character_table, normal_subgroups_small_index};
use crate::error::{Error, Result};
use crate::gmatrix::{nullspace, rank, rref, GMatrix};
use crate::matgroup::MatrixGroup;

/// A verified system of imprimitivity: r subspaces of dimension d, jointly
/// spanning, permuted by every generator.
#[derive(Clone)]
pub struct BlockSystem {
    pub block_dim: usize,
    /// rref bases, one per block; each basis is block_dim rows of dim entries
    pub blocks: Vec<Vec<Vec<Cyc>>>,
    /// generator_perms[g][b] = index of the image of block b under generator g
    pub generator_perms: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// True iff the natural representation is irreducible.
pub fn is_transitive(g: &MatrixGroup) -> Result<bool> {
    let chi = g.natural_character();
    Ok(inner_product(g, &chi, &chi)? == Cyc::one())
}

/// Image of a subspace (rref basis) under a matrix, as an rref basis.
fn apply_to_subspace(m: &GMatrix, basis: &[Vec<Cyc>]) -> Vec<Vec<Cyc>> {
    let n = m.dim();
    let rows: Vec<Vec<Cyc>> = basis
        .iter()
        .map(|v| {
            (0..n)
                .map(|i| {
                    let mut acc = Cyc::zero();
                    for (j, vj) in v.iter().enumerate() {
                        if !vj.is_zero() {
                            acc = acc.add(&m.at(i, j).mul(vj));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    rref(rows)
}

/// Canonical fingerprint of an rref basis for dedup and lookup.
fn canon_key(basis: &[Vec<Cyc>]) -> String {
    let rows: Vec<String> = basis
        .iter()
        .map(|v| {
            v.iter()
                .map(|c| {
                    let r = c.reduce_order();
                    format!("{}@{}", r, r.order())
                })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    rows.join(";")
}

/// Eigenvalue candidates of a finite-order matrix: all o-th roots of unity.
fn eigenvalues(g: &MatrixGroup, elem: u32) -> Vec<(Cyc, Vec<Vec<Cyc>>)> {
    let m = g.element(elem);
    let cls = g.classes();
    let order = cls.rep_orders[cls.class_of[elem as usize] as usize];
    let n = m.dim();
    let mut out = Vec::new();
    for k in 0..order {
        let lambda = Cyc::root(order, k as i64);
        // nullspace of (m - lambda I)
        let rows: Vec<Vec<Cyc>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = m.at(i, j).clone();
                        if i == j {
                            v = v.sub(&lambda);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let ns = nullspace(rows, n);
        if !ns.is_empty() {
            out.push((lambda, rref(ns)));
        }
    }
    out
}

/// Intersection of two subspaces given by bases.
fn intersect(a: &[Vec<Cyc>], b: &[Vec<Cyc>], n: usize) -> Vec<Vec<Cyc>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // v in A cap B: v = sum x_i a_i = sum y_j b_j; solve for (x, -y)
    let cols = a.len() + b.len();
    let mut rows: Vec<Vec<Cyc>> = Vec::with_capacity(n);
    for coord in 0..n {
        let mut row = Vec::with_capacity(cols);
        for ai in a {
            row.push(ai[coord].clone());
        }
        for bj in b {
            row.push(bj[coord].neg());
        }
        rows.push(row);
    }
    let kernel = nullspace(rows, cols);
    let vecs: Vec<Vec<Cyc>> = kernel
        .iter()
        .map(|k| {
            (0..n)
                .map(|coord| {
                    let mut acc = Cyc::zero();
                    for (i, ai) in a.iter().enumerate() {
                        if !k[i].is_zero() {
                            acc = acc.add(&ai[coord].mul(&k[i]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    rref(vecs)
}

fn divisors_of(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Common eigencharacter subspaces of a subgroup: the maximal subspaces on
/// which every listed element acts by a scalar.
fn eigencharacter_spaces(g: &MatrixGroup, subgroup_gens: &[u32]) -> Vec<Vec<Vec<Cyc>>> {
    let n = g.dim();
    let full: Vec<Vec<Cyc>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Cyc::one() } else { Cyc::zero() })
                .collect()
        })
        .collect();
    let mut spaces = vec![full];
    for &k in subgroup_gens {
        let eigs = eigenvalues(g, k);
        let mut next = Vec::new();
        for s in &spaces {
            for (_, e) in &eigs {
                let meet = intersect(s, e, n);
                if !meet.is_empty() {
                    next.push(meet);
                }
            }
        }
        spaces = next;
        if spaces.is_empty() {
            break;
        }
    }
    spaces
}

/// Fixed search procedure for a system of imprimitivity. Returns a verified
/// system or None. Seeds come from eigenspaces of class representatives,
/// pairwise intersections for commuting representatives, and eigencharacter
/// spaces of small-index normal subgroups; each seed's orbit is grown under
/// the generators, and unions of whole orbits are tested for a direct-sum
/// decomposition.
pub fn find_block_system(g: &MatrixGroup) -> Result<Option<BlockSystem>> {
    let n = g.dim();
    for r in divisors_of(n) {
        if r < 2 {
            continue;
        }
        let d = n / r;
        let seeds = collect_seeds(g, d, r)?;
        if let Some(sys) = assemble_blocks(g, &seeds, d, r)? {
            return Ok(Some(sys));
        }
    }
    Ok(None)
}

fn collect_seeds(g: &MatrixGroup, d: usize, r: usize) -> Result<Vec<Vec<Vec<Cyc>>>> {
    let n = g.dim();
    let cls = g.classes();
    let mut seeds: Vec<Vec<Vec<Cyc>>> = Vec::new();
    let mut seen: FxHashSet<String> = FxHashSet::default();
    let mut push = |basis: Vec<Vec<Cyc>>, seeds: &mut Vec<Vec<Vec<Cyc>>>| {
        if basis.len() == d && seen.insert(canon_key(&basis)) {
            seeds.push(basis);
        }
    };

    // coordinate lines are always cheap seeds for d = 1
    if d == 1 {
        for i in 0..n {
            let mut v = vec![Cyc::zero(); n];
            v[i] = Cyc::one();
            push(rref(vec![v]), &mut seeds);
        }
    }

    // (a) eigenspaces of class representatives, and pairwise intersections of
    // eigenspaces of commuting representatives
    let rep_eigs: Vec<Vec<(Cyc, Vec<Vec<Cyc>>)>> =
        cls.reps.iter().map(|&rep| eigenvalues(g, rep)).collect();
    for eigs in &rep_eigs {
        for (_, basis) in eigs {
            push(basis.clone(), &mut seeds);
        }
    }
    for i in 0..cls.reps.len() {
        for j in i + 1..cls.reps.len() {
            let (a, b) = (cls.reps[i], cls.reps[j]);
            if g.imul(a, b) != g.imul(b, a) {
                continue;
            }
            for (_, ea) in &rep_eigs[i] {
                if ea.len() < d {
                    continue;
                }
                for (_, eb) in &rep_eigs[j] {
                    if eb.len() < d {
                        continue;
                    }
                    let meet = intersect(ea, eb, n);
                    push(meet, &mut seeds);
                }
            }
        }
    }

    // (b) eigencharacter spaces of normal subgroups of index <= r!
    let max_index = factorial(r);
    if let Ok(normals) = normal_subgroups_small_index(g, max_index) {
        for nsub in normals {
            if nsub.len() == 1 || nsub.len() == g.order() {
                continue;
            }
            let sub_gen_indices = g.small_generating_set(&nsub);
            for space in eigencharacter_spaces(g, &sub_gen_indices) {
                if space.len() == d {
                    push(space, &mut seeds);
                } else if d == 1 && space.len() > 1 {
                    // refine to lines using eigenspaces of class reps
                    for eigs in &rep_eigs {
                        for (_, e) in eigs {
                            let meet = intersect(&space, e, n);
                            push(meet, &mut seeds);
                        }
                    }
                }
            }
        }
    }
    Ok(seeds)
}

fn assemble_blocks(
    g: &MatrixGroup,
    seeds: &[Vec<Vec<Cyc>>],
    d: usize,
    r: usize,
) -> Result<Option<BlockSystem>> {
    let n = g.dim();
    let gens = g.generators();
    // orbits of seeds under the generators, capped at r blocks
    let mut orbits: Vec<Vec<Vec<Vec<Cyc>>>> = Vec::new();
    let mut seen_orbit_keys: FxHashSet<String> = FxHashSet::default();
    'seed: for seed in seeds {
        let mut orbit = vec![seed.clone()];
        let mut keys: FxHashSet<String> = FxHashSet::default();
        keys.insert(canon_key(seed));
        let mut qi = 0usize;
        while qi < orbit.len() {
            let current = orbit[qi].clone();
            qi += 1;
            for gen in gens {
                let img = apply_to_subspace(gen, &current);
                if img.len() != d {
                    continue 'seed; // degenerate image; not a block candidate
                }
                let key = canon_key(&img);
                if keys.insert(key) {
                    orbit.push(img);
                    if orbit.len() > r {
                        continue 'seed;
                    }
                }
            }
        }
        // canonical orbit key = sorted block keys
        let mut ks: Vec<String> = orbit.iter().map(|b| canon_key(b)).collect();
        ks.sort();
        if seen_orbit_keys.insert(ks.join("|")) {
            orbits.push(orbit);
        }
    }
    // search unions of whole orbits totalling r blocks that span directly
    fn dfs(
        orbits: &[Vec<Vec<Vec<Cyc>>>],
        start: usize,
        chosen: &mut Vec<usize>,
        count: usize,
        r: usize,
        d: usize,
        n: usize,
    ) -> Option<Vec<usize>> {
        if count == r {
            // final rank check happens in the caller
            return Some(chosen.clone());
        }
        for i in start..orbits.len() {
            if count + orbits[i].len() > r {
                continue;
            }
            // quick independence precheck: stacked rank must be full
            chosen.push(i);
            let mut stacked: Vec<Vec<Cyc>> = Vec::new();
            for &o in chosen.iter() {
                for b in &orbits[o] {
                    stacked.extend(b.iter().cloned());
                }
            }
            let full = stacked.len() == rank(stacked);
            if full {
                if let Some(res) = dfs(orbits, i + 1, chosen, count + orbits[i].len(), r, d, n) {
                    return Some(res);
                }
            }
            chosen.pop();
        }
        None
    }
    let mut chosen = Vec::new();
    let Some(selection) = dfs(&orbits, 0, &mut chosen, 0, r, d, n) else {
        return Ok(None);
    };
    let mut blocks: Vec<Vec<Vec<Cyc>>> = Vec::new();
    for &o in &selection {
        blocks.extend(orbits[o].iter().cloned());
    }
    verify_block_system(g, blocks, d).map(Some)
}

/// Re-verifies a candidate decomposition independently of the search path:
/// r*d = n, joint direct spanning, and every generator permutes the blocks.
pub fn verify_block_system(
    g: &MatrixGroup,
    blocks: Vec<Vec<Vec<Cyc>>>,
    d: usize,
) -> Result<BlockSystem> {
    let n = g.dim();
    let r = blocks.len();
    if r * d != n {
        return Err(Error::Internal(
            "block count times dimension mismatch".into(),
        ));
    }
    let mut stacked: Vec<Vec<Cyc>> = Vec::new();
    for b in &blocks {
        if b.len() != d {
            return Err(Error::Internal("block of wrong dimension".into()));
        }
        stacked.extend(b.iter().cloned());
    }
    if rank(stacked) != n {
        return Err(Error::Internal("blocks do not span directly".into()));
    }
    let keys: Vec<String> = blocks.iter().map(|b| canon_key(b)).collect();
    let mut generator_perms = Vec::new();
    for gen in g.generators() {
        let mut perm = vec![usize::MAX; r];
        for (bi, b) in blocks.iter().enumerate() {
            let img = apply_to_subspace(gen, b);
            let key = canon_key(&img);
            let Some(target) = keys.iter().position(|k| *k == key) else {
                return Err(Error::Internal(
                    "generator does not permute the candidate blocks".into(),
                ));
            };
            perm[bi] = target;
        }
        generator_perms.push(perm);
    }
    Ok(BlockSystem {
        block_dim: d,
        blocks,
        generator_perms,
    })
}

/// For a full line decomposition (d = 1, r = n), conjugating by the basis of
/// block lines must make every generator monomial.
pub fn verify_monomial_form(g: &MatrixGroup, sys: &BlockSystem) -> Result<bool> {
    if sys.block_dim != 1 || sys.block_count() != g.dim() {
        return Ok(false);
    }
    let n = g.dim();
    let m0 = g.root_order();
    let cols: Vec<Vec<Cyc>> = sys.blocks.iter().map(|b| b[0].clone()).collect();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for col in cols.iter() {
            entries.push(col[i].clone());
        }
    }
    let order = cols
        .iter()
        .flatten()
        .fold(m0, |acc, c| num_integer::lcm(acc, c.order()));
    let p = GMatrix::new(n, order, entries)?;
    let pinv = p.inverse()?;
    for gen in g.generators() {
        let conj = pinv.matmul(&gen.promote(order)?).matmul(&p);
        // monomial: exactly one nonzero entry per row and column
        for i in 0..n {
            let row_nz = (0..n).filter(|&j| !conj.at(i, j).is_zero()).count();
            let col_nz = (0..n).filter(|&j| !conj.at(j, i).is_zero()).count();
            if row_nz != 1 || col_nz != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Twisted-cubic test for a group supplied only as a character fixture: a
/// projective twisted cubic forces a degree-2 irreducible character, so a
/// fixture whose declared irreducible degrees contain no 2 has none. A
/// fixture that does declare a degree-2 character cannot be decided at this
/// level and is an error.
pub fn fixture_invariant_twisted_cubic(f: &crate::catalog::CharFixture) -> Result<bool> {
    if f.irreducible_degrees.is_empty() {
        return Err(Error::Unsupported(format!(
            "fixture {} declares no irreducible degrees",
            f.name
        )));
    }
    if f.irreducible_degrees.contains(&2) {
        return Err(Error::Unsupported(format!(
            "fixture {} has degree-2 characters; the test needs a matrix model",
            f.name
        )));
    }
    Ok(false)
}

/// Character-level test for an invariant projective twisted cubic in P^3:
/// true iff some irreducible degree-2 character psi and linear character mu
/// satisfy chi_nat * mu = Sym^3(psi).
pub fn invariant_twisted_cubic_exists(g: &MatrixGroup) -> Result<bool> {
    if g.dim() != 4 {
        return Err(Error::Unsupported(format!(
            "twisted cubic test needs dimension 4, got {}",
            g.dim()
        )));
    }
    let table = character_table(g)?;
    let psis: Vec<&Vec<Cyc>> = table
        .rows
        .iter()
        .zip(table.degrees.iter())
        .filter(|(_, &d)| d == 2)
        .map(|(row, _)| row)
        .collect();
    if psis.is_empty() {
        return Ok(false);
    }
    let lins: Vec<&Vec<Cyc>> = table
        .rows
        .iter()
        .zip(table.degrees.iter())
        .filter(|(_, &d)| d == 1)
        .map(|(row, _)| row)
        .collect();
    let chi = g.natural_character();
    for psi in &psis {
        let sym3 = sym_power_character(g, psi, 3)?;
        for mu in &lins {
            let twisted: Vec<Cyc> = chi.iter().zip(mu.iter()).map(|(a, b)| a.mul(b)).collect();
            if twisted == sym3 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmatrix::{int_matrix, root_diag};
    use crate::group::FiniteGroup;

    fn heisenberg5() -> MatrixGroup {
        let shift = int_matrix(
            5,
            &[
                &[0, 0, 0, 0, 1],
                &[1, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0],
                &[0, 0, 1, 0, 0],
                &[0, 0, 0, 1, 0],
            ],
        );
        let diag = root_diag(5, &[1, 2, 3, 4, 0]);
        FiniteGroup::close(&[shift, diag], 10_000).unwrap()
    }

    #[test]
    fn heisenberg_is_transitive_and_imprimitive() {
        let g = heisenberg5();
        assert!(is_transitive(&g).unwrap());
        let sys = find_block_system(&g).unwrap().expect("coordinate lines");
        assert_eq!(sys.block_dim, 1);
        assert_eq!(sys.block_count(), 5);
        // the shift generator permutes the lines in a 5-cycle
        let perm = &sys.generator_perms[0];
        let mut seen = vec![false; 5];
        for &t in perm {
            seen[t] = true;
        }
        assert!(seen.iter().all(|&b| b));
        assert!(verify_monomial_form(&g, &sys).unwrap());
    }

    #[test]
    fn trivial_group_is_intransitive_in_dim_2() {
        let id = crate::gmatrix::GMatrix::identity(2, 1);
        let g = FiniteGroup::close(&[id], 10).unwrap();
        assert!(!is_transitive(&g).unwrap());
        // every line is invariant: a 2-line system exists
        let sys = find_block_system(&g).unwrap();
        assert!(sys.is_some());
    }

    #[test]
    fn quaternion_in_dim2_is_primitive_for_the_search() {
        // Q8 in SL(2): irreducible, and its only block shape would be 2 lines;
        // i and j do not share eigenlines, so no system exists.
        let qi = crate::gmatrix::parse_matrix(
            &[vec!["z".into(), "0".into()], vec!["0".into(), "-z".into()]],
            4,
        )
        .unwrap();
        let qj = int_matrix(4, &[&[0, 1], &[-1, 0]]);
        let g = FiniteGroup::close(&[qi, qj], 100).unwrap();
        assert!(is_transitive(&g).unwrap());
        // Q8's image in PGL(2) is the Klein four-group acting on the 3 pairs
        // of eigenlines... each individual pair IS permuted, but the pair of
        // eigenlines of i is swapped by j and spans: that IS a block system.
        let sys = find_block_system(&g).unwrap();
        assert!(sys.is_some(), "Q8 in SL(2) is monomial (imprimitive)");
    }

    #[test]
    fn twisted_cubic_rejects_wrong_dimension() {
        let g = heisenberg5();
        assert!(invariant_twisted_cubic_exists(&g).is_err());
    }

    #[test]
    fn twisted_cubic_on_symmetric_cube() {
        // the symmetric cube of the binary icosahedral group carries an
        // invariant rational cubic curve by construction
        let g = crate::catalog::build("sl25-sym3").unwrap().group().unwrap();
        assert!(invariant_twisted_cubic_exists(&g).unwrap());
    }

    #[test]
    fn twisted_cubic_on_fixture() {
        // the double cover of A_6 has no degree-2 irreducible characters,
        // so no invariant twisted cubic exists
        let f = crate::catalog::build("2A6-fixture")
            .unwrap()
            .fixture()
            .unwrap();
        assert_eq!(fixture_invariant_twisted_cubic(&f).unwrap(), false);
    }
}
