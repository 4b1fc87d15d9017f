//! Class functions and character-theoretic dimension counts: symmetric-power
//! characters, inner products, invariant and semi-invariant dimensions,
//! linear characters, and the Molien series as an independent second route
//! to the same dimensions.

use crate::abelian::{abelian_characters, abelian_structure};
use crate::cyc::Cyc;
use crate::error::{Error, Result};
use crate::matgroup::MatrixGroup;
use crate::rat::Rat;

/// Class-level data shared by matrix groups and character fixtures: class
/// sizes and power maps. Power maps may be partial for fixtures.
pub trait ClassSource {
    fn class_count(&self) -> usize;
    fn class_size(&self, c: usize) -> u64;
    fn group_order(&self) -> u64;
    /// Class of rep_c^k.
    fn power(&self, c: usize, k: u64) -> Result<usize>;
}

impl<E: crate::group::GroupElem> ClassSource for crate::group::FiniteGroup<E> {
    fn class_count(&self) -> usize {
        self.classes().reps.len()
    }
    fn class_size(&self, c: usize) -> u64 {
        self.classes().sizes[c]
    }
    fn group_order(&self) -> u64 {
        self.order() as u64
    }
    fn power(&self, c: usize, k: u64) -> Result<usize> {
        Ok(self.power_class(c, k) as usize)
    }
}

/// (1/|G|) sum over classes of size * a(c) * conj(b(c)).
pub fn inner_product<S: ClassSource>(src: &S, a: &[Cyc], b: &[Cyc]) -> Result<Cyc> {
    if a.len() != src.class_count() || b.len() != src.class_count() {
        return Err(Error::Mismatch(
            "class function length does not match class count".into(),
        ));
    }
    let mut acc = Cyc::zero();
    for c in 0..src.class_count() {
        let term = a[c]
            .mul(&b[c].conj())
            .scale(&Rat::int(src.class_size(c) as i64));
        acc = acc.add(&term);
    }
    Ok(acc.scale(&Rat::new(1, src.group_order() as i64)))
}

/// Character of Sym^d of the representation with character `chi`, via the
/// Newton-style recurrence s_d(g) = (1/d) sum_{k=1..d} chi(g^k) s_{d-k}(g).
pub fn sym_power_character<S: ClassSource>(src: &S, chi: &[Cyc], d: u64) -> Result<Vec<Cyc>> {
    let k = src.class_count();
    let mut rows: Vec<Vec<Cyc>> = vec![vec![Cyc::one(); k]];
    for deg in 1..=d {
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let mut acc = Cyc::zero();
            for j in 1..=deg {
                let pc = src.power(c, j)?;
                acc = acc.add(&chi[pc].mul(&rows[(deg - j) as usize][c]));
            }
            row.push(acc.scale(&Rat::new(1, deg as i64)));
        }
        rows.push(row);
    }
    Ok(rows.pop().unwrap())
}

/// Closed form for the quartic symmetric power:
/// (chi(g)^4 + 6 chi(g)^2 chi(g^2) + 3 chi(g^2)^2 + 8 chi(g) chi(g^3)
///  + 6 chi(g^4)) / 24.
pub fn sym4_closed_form<S: ClassSource>(src: &S, chi: &[Cyc]) -> Result<Vec<Cyc>> {
    let mut out = Vec::with_capacity(src.class_count());
    for c in 0..src.class_count() {
        let x1 = &chi[c];
        let x2 = &chi[src.power(c, 2)?];
        let x3 = &chi[src.power(c, 3)?];
        let x4 = &chi[src.power(c, 4)?];
        let mut acc = x1.mul(x1).mul(x1).mul(x1);
        acc = acc.add(&x1.mul(x1).mul(x2).scale(&Rat::int(6)));
        acc = acc.add(&x2.mul(x2).scale(&Rat::int(3)));
        acc = acc.add(&x1.mul(x3).scale(&Rat::int(8)));
        acc = acc.add(&x4.scale(&Rat::int(6)));
        out.push(acc.scale(&Rat::new(1, 24)));
    }
    Ok(out)
}

fn expect_nonneg_int(v: &Cyc, what: &str) -> Result<u64> {
    let r = v
        .to_rat()
        .ok_or_else(|| Error::Internal(format!("{what} is not rational: {v}")))?;
    match r.to_i64() {
        Some(n) if n >= 0 => Ok(n as u64),
        _ => Err(Error::Internal(format!(
            "{what} is not a non-negative integer: {r}"
        ))),
    }
}

/// All degree-1 characters of the group, as class functions, pulled back
/// from the abelianization G/[G,G]. The trivial character comes first.
pub fn linear_characters(g: &MatrixGroup) -> Vec<Vec<Cyc>> {
    let comm = g.commutator_subgroup();
    let comm_gens = g.small_generating_set(&comm);
    let part = g.cosets(&comm_gens);
    let q = g.quotient(&part);
    let st = abelian_structure(&q);
    let chars = abelian_characters(&q, &st);
    let reps = &g.classes().reps;
    chars
        .into_iter()
        .map(|row| {
            reps.iter()
                .map(|&r| row[part.coset_id[r as usize] as usize].clone())
                .collect()
        })
        .collect()
}

/// The abelianization G/[G,G] as invariant factors plus the element-to-coset
/// projection.
pub struct Abelianization {
    pub invariant_factors: Vec<u64>,
    pub coset_of: Vec<u32>,
}

pub fn abelianization(g: &MatrixGroup) -> Abelianization {
    let comm = g.commutator_subgroup();
    let comm_gens = g.small_generating_set(&comm);
    let part = g.cosets(&comm_gens);
    let q = g.quotient(&part);
    let st = abelian_structure(&q);
    Abelianization {
        invariant_factors: st.invariant_factors,
        coset_of: part.coset_id,
    }
}

/// dim of the G-invariant forms of degree d: the multiplicity of the trivial
/// character in Sym^d of the natural representation.
pub fn invariant_dimension(g: &MatrixGroup, d: u64) -> Result<u64> {
    let chi = g.natural_character();
    let sym = sym_power_character(g, &chi, d)?;
    let triv = vec![Cyc::one(); g.class_count()];
    let ip = inner_product(g, &sym, &triv)?;
    expect_nonneg_int(&ip, "invariant dimension")
}

/// dim of the span of all semi-invariants of degree d: the sum over the
/// linear characters lambda of the multiplicity of lambda in Sym^d.
pub fn semiinvariant_dimension(g: &MatrixGroup, d: u64) -> Result<u64> {
    let chi = g.natural_character();
    let sym = sym_power_character(g, &chi, d)?;
    let mut total = 0u64;
    for lambda in linear_characters(g) {
        let ip = inner_product(g, &sym, &lambda)?;
        total += expect_nonneg_int(&ip, "semi-invariant multiplicity")?;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinDegree {
    Found(u64),
    GreaterThan(u64),
}

impl std::fmt::Display for MinDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinDegree::Found(d) => write!(f, "{d}"),
            MinDegree::GreaterThan(d) => write!(f, "greater than {d}"),
        }
    }
}

/// Smallest d <= max_d with a nonzero semi-invariant of degree d.
pub fn min_semiinvariant_degree(g: &MatrixGroup, max_d: u64) -> Result<MinDegree> {
    for d in 1..=max_d {
        if semiinvariant_dimension(g, d)? > 0 {
            return Ok(MinDegree::Found(d));
        }
    }
    Ok(MinDegree::GreaterThan(max_d))
}

/// Coefficients 0..=max_d of the Molien series
/// (1/|G|) sum_g conj(lambda(g)) / det(1 - t g),
/// computed per class from power sums of the natural character. This is an
/// independent route to the same dimensions as `invariant_dimension` /
/// `semiinvariant_dimension` (a class function exp/Newton identity instead of
/// the symmetric-power character recurrence... the denominators are built
/// from elementary symmetric functions of the eigenvalues).
pub fn molien_relative(g: &MatrixGroup, lambda: &[Cyc], max_d: u64) -> Result<Vec<u64>> {
    let n = g.dim();
    let chi = g.natural_character();
    let k = g.class_count();
    let mut total = vec![Cyc::zero(); max_d as usize + 1];
    for c in 0..k {
        // power sums p_j = chi(g^j), elementary symmetric e_j by Newton
        let mut p = vec![Cyc::zero(); n + 1];
        for (j, pj) in p.iter_mut().enumerate().skip(1) {
            *pj = chi[g.power_class(c, j as u64) as usize].clone();
        }
        let mut e = vec![Cyc::zero(); n + 1];
        e[0] = Cyc::one();
        for j in 1..=n {
            let mut acc = Cyc::zero();
            for i in 1..=j {
                let term = e[j - i].mul(&p[i]);
                if i % 2 == 1 {
                    acc = acc.add(&term);
                } else {
                    acc = acc.sub(&term);
                }
            }
            e[j] = acc.scale(&Rat::new(1, j as i64));
        }
        // det(1 - t g) = sum_j (-1)^j e_j t^j; invert the series mod t^{max_d+1}
        let den: Vec<Cyc> = (0..=n)
            .map(|j| if j % 2 == 0 { e[j].clone() } else { e[j].neg() })
            .collect();
        let mut inv = vec![Cyc::zero(); max_d as usize + 1];
        inv[0] = Cyc::one();
        for j in 1..=max_d as usize {
            let mut acc = Cyc::zero();
            for i in 1..=n.min(j) {
                acc = acc.add(&den[i].mul(&inv[j - i]));
            }
            inv[j] = acc.neg();
        }
        let weight = lambda[c].conj().scale(&Rat::int(g.class_size(c) as i64));
        for (t, i) in total.iter_mut().zip(inv.iter()) {
            *t = t.add(&i.mul(&weight));
        }
    }
    let scale = Rat::new(1, g.order() as i64);
    total
        .iter()
        .map(|v| expect_nonneg_int(&v.scale(&scale), "Molien coefficient"))
        .collect()
}

/// Molien coefficients against the trivial character: invariant dimensions
/// for every degree 0..=max_d.
pub fn molien_dimensions(g: &MatrixGroup, max_d: u64) -> Result<Vec<u64>> {
    let triv = vec![Cyc::one(); g.class_count()];
    molien_relative(g, &triv, max_d)
}

/// Dimensions of the irreducible constituents (with multiplicity) of the
/// action of G on the space of degree-d forms invariant under a normal
/// subgroup K, sorted ascending. K acts trivially on that space, so the
/// decomposition happens over the quotient G/K.
pub fn constituent_dimensions(
    g: &MatrixGroup,
    sub_gens: &[crate::gmatrix::GMatrix],
    d: u64,
) -> Result<Vec<u64>> {
    let sub = crate::group::FiniteGroup::close(sub_gens, g.order())?;
    let sub_idx: Vec<u32> = sub
        .elements()
        .iter()
        .map(|e| {
            g.position(e)
                .ok_or_else(|| Error::Mismatch("subgroup element not in parent group".into()))
        })
        .collect::<Result<_>>()?;
    let sub_gen_idx: Vec<u32> = sub_gens.iter().map(|e| g.position(e).unwrap()).collect();

    // character of G on the K-invariant degree-d forms:
    // theta(g) = (1/|K|) sum_{h in K} chi_d(g h)
    let chi = g.natural_character();
    let chi_d = sym_power_character(g, &chi, d)?;
    let cls = g.classes();
    let theta_g: Vec<Cyc> = cls
        .reps
        .iter()
        .map(|&r| {
            let mut acc = Cyc::zero();
            for &h in &sub_idx {
                let x = g.imul(r, h);
                acc = acc.add(&chi_d[cls.class_of[x as usize] as usize]);
            }
            acc.scale(&Rat::new(1, sub_idx.len() as i64))
        })
        .collect();

    // push down to the quotient G/K
    let part = g.cosets(&sub_gen_idx);
    let table_grp = g.quotient(&part);
    let q = table_grp.as_group();
    let qcls = q.classes();
    let theta_q: Vec<Cyc> = qcls
        .reps
        .iter()
        .map(|&qr| {
            let coset = q.element(qr).i as usize;
            let g_rep = part.reps[coset];
            theta_g[cls.class_of[g_rep as usize] as usize].clone()
        })
        .collect();

    let table = crate::dixon::character_table(&q)?;
    let mut dims = Vec::new();
    let mut total = 0u64;
    for (row, &deg) in table.rows.iter().zip(table.degrees.iter()) {
        let m = inner_product(&q, &theta_q, row)?;
        let m = expect_nonneg_int(&m, "constituent multiplicity")?;
        for _ in 0..m {
            dims.push(deg);
            total += deg;
        }
    }
    // the pieces must add up to the dimension of the invariant space
    let w_dim = theta_g[0]
        .to_rat()
        .and_then(|r| r.to_i64())
        .ok_or_else(|| Error::Internal("invariant space dimension not integral".into()))?;
    if total != w_dim as u64 {
        return Err(Error::Internal(format!(
            "constituents sum to {total}, space has dimension {w_dim}"
        )));
    }
    dims.sort_unstable();
    Ok(dims)
}
