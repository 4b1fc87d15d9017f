//! Generic finite-group machinery: closure from generators (Dimino's
//! algorithm), conjugacy classes by orbit expansion, power maps, centers,
//! commutator subgroups, cosets and quotient groups.
//!
//! The machinery is generic over the element type so the same code drives
//! matrix groups over cyclotomic numbers, the small finite-field matrix
//! groups used for quotient bookkeeping, and Cayley-table groups.

use std::cell::OnceCell;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

use rustc_hash::{FxHashMap, FxHasher};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub trait GroupElem: Clone + Eq + Hash {
    fn gmul(&self, other: &Self) -> Self;
    fn ginv(&self) -> Self;
    /// Identity element of the same shape (dimension, field order, table).
    fn gidentity(&self) -> Self;
}

fn hash64<E: Hash>(e: &E) -> u64 {
    let mut h = FxHasher::default();
    e.hash(&mut h);
    h.finish()
}

#[derive(Clone, Copy, Debug)]
enum Provenance {
    Identity,
    Gen(u32),
    /// elements[a] * elements[b]
    Prod(u32, u32),
}

/// Conjugacy class data. Classes are ordered by their smallest element index,
/// so the partition is deterministic.
pub struct Classes {
    pub class_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
    pub rep_orders: Vec<u32>,
    /// class of the inverses of class i
    pub inverse_class: Vec<u32>,
    pub exponent: u64,
}

pub struct FiniteGroup<E: GroupElem> {
    elements: Vec<E>,
    index: FxHashMap<u64, SmallVec<[u32; 1]>>,
    prov: Vec<Provenance>,
    gen_elems: Vec<E>,
    gen_indices: Vec<u32>,
    inv: Vec<u32>,
    classes: OnceCell<Classes>,
    /// power_maps[k][class] = class of rep^k, for 0 <= k <= exponent
    power_maps: OnceCell<Vec<Vec<u32>>>,
    commutator: OnceCell<Rc<Vec<u32>>>,
    pub(crate) char_table_cache: OnceCell<Rc<crate::dixon::CharacterTable>>,
}

impl<E: GroupElem> FiniteGroup<E> {
    /// Closure of the generating set. Aborts with an error once more than
    /// `limit` elements appear, which turns infinite input into a clean
    /// failure.
    pub fn close(gens: &[E], limit: usize) -> Result<FiniteGroup<E>> {
        assert!(
            !gens.is_empty(),
            "need at least one generator to fix the shape"
        );
        let id = gens[0].gidentity();
        let mut g = FiniteGroup {
            elements: Vec::new(),
            index: FxHashMap::default(),
            prov: Vec::new(),
            gen_elems: gens.to_vec(),
            gen_indices: Vec::new(),
            inv: Vec::new(),
            classes: OnceCell::new(),
            power_maps: OnceCell::new(),
            commutator: OnceCell::new(),
            char_table_cache: OnceCell::new(),
        };
        g.push(id, Provenance::Identity, limit)?;

        for (gi, gen) in gens.iter().enumerate() {
            if g.position(gen).is_some() {
                g.gen_indices.push(g.position(gen).unwrap());
                continue;
            }
            // Dimino inductive step: extend the closed subgroup S (the current
            // element list) by `gen`. New elements arrive in whole cosets S*r.
            let s_order = g.elements.len();
            let first = g.push(gen.clone(), Provenance::Gen(gi as u32), limit)?;
            g.gen_indices.push(first);
            for s in 1..s_order {
                let e = g.elements[s].gmul(gen);
                g.push(e, Provenance::Prod(s as u32, first), limit)?;
            }
            let mut rep_queue: Vec<u32> = vec![first];
            let mut qi = 0usize;
            while qi < rep_queue.len() {
                let r = rep_queue[qi];
                qi += 1;
                for gj in 0..=gi {
                    let cand = g.elements[r as usize].gmul(&gens[gj]);
                    if g.position(&cand).is_some() {
                        continue;
                    }
                    // new coset: representative first, then the rest of S*c
                    let c_idx = g.push(cand, Provenance::Prod(r, g.gen_indices[gj]), limit)?;
                    rep_queue.push(c_idx);
                    for s in 1..s_order {
                        let e = g.elements[s].gmul(&g.elements[c_idx as usize]);
                        g.push(e, Provenance::Prod(s as u32, c_idx), limit)?;
                    }
                }
            }
        }
        g.fill_inverses();
        Ok(g)
    }

    /// Builds a group from a complete element list (validated to be closed:
    /// closure of the set equals the set). Generators are taken to be the
    /// whole list unless a generating subset is supplied.
    pub fn from_elements(elements: Vec<E>, gens: Option<Vec<E>>) -> Result<FiniteGroup<E>> {
        let n = elements.len();
        let gens = gens.unwrap_or_else(|| elements.clone());
        let g = FiniteGroup::close(&gens, n)?;
        if g.order() != n {
            return Err(Error::Validation(format!(
                "element list of size {n} closed to {} elements",
                g.order()
            )));
        }
        for e in &elements {
            if g.position(e).is_none() {
                return Err(Error::Validation(
                    "element list is not the closure of its generators".into(),
                ));
            }
        }
        Ok(g)
    }

    fn push(&mut self, e: E, p: Provenance, limit: usize) -> Result<u32> {
        if self.elements.len() >= limit {
            return Err(Error::LimitExceeded { limit });
        }
        let h = hash64(&e);
        let idx = self.elements.len() as u32;
        self.index.entry(h).or_default().push(idx);
        self.elements.push(e);
        self.prov.push(p);
        Ok(idx)
    }

    /// Index of an element, resolving hash collisions by full comparison.
    pub fn position(&self, e: &E) -> Option<u32> {
        let h = hash64(e);
        let cands = self.index.get(&h)?;
        cands
            .iter()
            .copied()
            .find(|&i| &self.elements[i as usize] == e)
    }

    pub fn contains(&self, e: &E) -> bool {
        self.position(e).is_some()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: u32) -> &E {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn generators(&self) -> &[E] {
        &self.gen_elems
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_indices
    }

    pub fn identity_index(&self) -> u32 {
        0
    }

    pub fn inverse_index(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    /// Product by element indices (one multiplication plus one lookup).
    pub fn imul(&self, a: u32, b: u32) -> u32 {
        let e = self.elements[a as usize].gmul(&self.elements[b as usize]);
        self.position(&e)
            .expect("group not closed under multiplication")
    }

    fn fill_inverses(&mut self) {
        let n = self.elements.len();
        let mut inv = vec![u32::MAX; n];
        inv[0] = 0;
        for i in 1..n {
            let e_inv = match self.prov[i] {
                Provenance::Identity => self.elements[0].clone(),
                Provenance::Gen(k) => self.gen_elems[k as usize].ginv(),
                Provenance::Prod(a, b) => {
                    // (ab)^{-1} = b^{-1} a^{-1}, both already known
                    let bi = inv[b as usize] as usize;
                    let ai = inv[a as usize] as usize;
                    debug_assert!(bi != u32::MAX as usize && ai != u32::MAX as usize);
                    self.elements[bi].gmul(&self.elements[ai])
                }
            };
            inv[i] = self.position(&e_inv).expect("inverse missing from closure");
        }
        self.inv = inv;
    }

    /// Propagates a homomorphism given on the generators through the closure
    /// provenance; returns the image of every element. The caller must supply
    /// labels that actually define a homomorphism.
    pub fn propagate_hom<L: GroupElem>(&self, id_label: &L, gen_labels: &[L]) -> Vec<L> {
        assert_eq!(gen_labels.len(), self.gen_elems.len());
        let mut out: Vec<L> = Vec::with_capacity(self.elements.len());
        for i in 0..self.elements.len() {
            let l = match self.prov[i] {
                Provenance::Identity => id_label.clone(),
                Provenance::Gen(k) => gen_labels[k as usize].clone(),
                Provenance::Prod(a, b) => out[a as usize].gmul(&out[b as usize]),
            };
            out.push(l);
        }
        out
    }

    /// Conjugacy classes by orbit expansion under generator conjugation.
    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.elements.len();
            let gen_idx: Vec<u32> = self.gen_indices.clone();
            let gen_inv: Vec<u32> = gen_idx.iter().map(|&g| self.inv[g as usize]).collect();
            let mut class_of = vec![u32::MAX; n];
            let mut reps = Vec::new();
            let mut sizes = Vec::new();
            for start in 0..n as u32 {
                if class_of[start as usize] != u32::MAX {
                    continue;
                }
                let cid = reps.len() as u32;
                reps.push(start);
                class_of[start as usize] = cid;
                let mut queue = vec![start];
                let mut size = 1u64;
                while let Some(x) = queue.pop() {
                    for (g, ginv) in gen_idx.iter().zip(gen_inv.iter()) {
                        let y = self.imul(self.imul(*g, x), *ginv);
                        if class_of[y as usize] == u32::MAX {
                            class_of[y as usize] = cid;
                            queue.push(y);
                            size += 1;
                        }
                    }
                }
                sizes.push(size);
            }
            let rep_orders: Vec<u32> = reps
                .iter()
                .map(|&r| {
                    let mut p = self.imul(0, r);
                    let mut k = 1u32;
                    while p != 0 {
                        p = self.imul(p, r);
                        k += 1;
                    }
                    k
                })
                .collect();
            let exponent = rep_orders
                .iter()
                .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64));
            let inverse_class: Vec<u32> = reps
                .iter()
                .map(|&r| class_of[self.inv[r as usize] as usize])
                .collect();
            Classes {
                class_of,
                reps,
                sizes,
                rep_orders,
                inverse_class,
                exponent,
            }
        })
    }

    pub fn class_count(&self) -> usize {
        self.classes().reps.len()
    }

    /// power map: maps[k][c] = class of rep_c^k for 0 <= k <= exponent.
    fn power_table(&self) -> &Vec<Vec<u32>> {
        self.power_maps.get_or_init(|| {
            let cls = self.classes();
            let e = cls.exponent as usize;
            let mut maps = vec![vec![0u32; cls.reps.len()]; e + 1];
            for (c, &r) in cls.reps.iter().enumerate() {
                let mut p = 0u32; // identity
                for row in maps.iter_mut().take(e + 1) {
                    row[c] = cls.class_of[p as usize];
                    p = self.imul(p, r);
                }
            }
            maps
        })
    }

    /// Class of rep_c^k for arbitrary k >= 0.
    pub fn power_class(&self, c: usize, k: u64) -> u32 {
        let e = self.classes().exponent;
        self.power_table()[(k % e) as usize][c]
    }

    /// Center = union of the size-1 classes.
    pub fn center_indices(&self) -> Vec<u32> {
        let cls = self.classes();
        let mut out: Vec<u32> = (0..self.order() as u32)
            .filter(|&i| cls.sizes[cls.class_of[i as usize] as usize] == 1)
            .collect();
        out.sort_unstable();
        out
    }

    /// Subgroup generated by the given element indices (sorted index list).
    pub fn subgroup_closure(&self, seeds: &[u32]) -> Vec<u32> {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut list: Vec<u32> = vec![0];
        let mut queue: Vec<u32> = vec![0];
        let seeds: Vec<u32> = {
            let mut s: Vec<u32> = seeds.to_vec();
            s.sort_unstable();
            s.dedup();
            s
        };
        while let Some(x) = queue.pop() {
            for &s in &seeds {
                let y = self.imul(x, s);
                if !member[y as usize] {
                    member[y as usize] = true;
                    list.push(y);
                    queue.push(y);
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Greedy small generating set for a subgroup given by its (sorted)
    /// element index list. Works entirely at the index level.
    pub fn small_generating_set(&self, indices: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut have: Vec<u32> = vec![0];
        for &i in indices {
            if i == 0 || have.binary_search(&i).is_ok() {
                continue;
            }
            gens.push(i);
            have = self.subgroup_closure(&gens);
            if have.len() == indices.len() {
                break;
            }
        }
        if gens.is_empty() {
            gens.push(0);
        }
        gens
    }

    /// Smallest normal subgroup containing the seeds.
    pub fn normal_closure(&self, seeds: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = seeds.to_vec();
        loop {
            let h = self.subgroup_closure(&gens);
            let member: Vec<bool> = {
                let mut m = vec![false; self.order()];
                for &i in &h {
                    m[i as usize] = true;
                }
                m
            };
            let mut new_gens = Vec::new();
            'search: for &x in &h {
                for &g in &self.gen_indices {
                    let y = self.imul(self.imul(g, x), self.inv[g as usize]);
                    if !member[y as usize] {
                        new_gens.push(y);
                        break 'search;
                    }
                }
            }
            if new_gens.is_empty() {
                return h;
            }
            gens.extend(new_gens);
        }
    }

    /// Commutator subgroup [G, G]: normal closure of generator commutators.
    pub fn commutator_subgroup(&self) -> Rc<Vec<u32>> {
        self.commutator
            .get_or_init(|| {
                let gi = &self.gen_indices;
                let mut seeds = Vec::new();
                for &a in gi {
                    for &b in gi {
                        if a == b {
                            continue;
                        }
                        let c = self.imul(
                            self.imul(self.imul(a, b), self.inv[a as usize]),
                            self.inv[b as usize],
                        );
                        seeds.push(c);
                    }
                }
                if seeds.is_empty() {
                    seeds.push(0);
                }
                Rc::new(self.normal_closure(&seeds))
            })
            .clone()
    }

    pub fn is_perfect(&self) -> bool {
        self.commutator_subgroup().len() == self.order()
    }

    /// Partition into left cosets of the subgroup generated by `sub_gens`
    /// (equal to right cosets when the subgroup is normal). Returns, for each
    /// element, its coset id; coset 0 contains the identity, and cosets are
    /// numbered by their smallest element index.
    pub fn cosets(&self, sub_gens: &[u32]) -> CosetPartition {
        let n = self.order();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut Vec<u32>, mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let gp = parent[parent[x as usize] as usize];
                parent[x as usize] = gp;
                x = gp;
            }
            x
        }
        for i in 0..n as u32 {
            for &s in sub_gens {
                let j = self.imul(i, s);
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b as usize] = a;
                }
            }
        }
        // canonical root = smallest member; assign ids in order of that root
        let mut root_min: FxHashMap<u32, u32> = FxHashMap::default();
        for i in 0..n as u32 {
            let r = find(&mut parent, i);
            let e = root_min.entry(r).or_insert(i);
            if *e > i {
                *e = i;
            }
        }
        let mut mins: Vec<u32> = root_min.values().copied().collect();
        mins.sort_unstable();
        let id_of_min: FxHashMap<u32, u32> = mins
            .iter()
            .enumerate()
            .map(|(k, &m)| (m, k as u32))
            .collect();
        let mut coset_id = vec![0u32; n];
        for i in 0..n as u32 {
            let r = find(&mut parent, i);
            coset_id[i as usize] = id_of_min[&root_min[&r]];
        }
        CosetPartition {
            coset_id,
            reps: mins,
        }
    }

    /// Cayley-table group of the quotient by a normal subgroup.
    pub fn quotient(&self, part: &CosetPartition) -> TableGroup {
        let q = part.reps.len();
        let mut mul = vec![0u16; q * q];
        for (a, &ra) in part.reps.iter().enumerate() {
            for (b, &rb) in part.reps.iter().enumerate() {
                mul[a * q + b] = part.coset_id[self.imul(ra, rb) as usize] as u16;
            }
        }
        TableGroup::new(mul, q)
    }
}

#[derive(Clone)]
pub struct CosetPartition {
    pub coset_id: Vec<u32>,
    /// smallest element index in each coset, sorted; reps[0] = identity coset
    pub reps: Vec<u32>,
}

/// A small group given by its full Cayley table; element 0 is the identity.
pub struct TableGroup {
    pub core: Rc<TableCore>,
}

pub struct TableCore {
    pub n: usize,
    pub mul: Vec<u16>,
    pub inv: Vec<u16>,
}

impl TableGroup {
    pub fn new(mul: Vec<u16>, n: usize) -> TableGroup {
        assert_eq!(mul.len(), n * n);
        for a in 0..n {
            assert_eq!(mul[0 * n + a], a as u16, "element 0 must be the identity");
            assert_eq!(mul[a * n + 0], a as u16, "element 0 must be the identity");
        }
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mul[a * n + b] == 0)
                .expect("table row without inverse");
            inv[a] = b as u16;
        }
        TableGroup {
            core: Rc::new(TableCore { n, mul, inv }),
        }
    }

    pub fn order(&self) -> usize {
        self.core.n
    }

    pub fn elem(&self, i: u16) -> TElem {
        TElem {
            core: Rc::clone(&self.core),
            i,
        }
    }

    /// The quotient group as a generic FiniteGroup over table elements.
    pub fn as_group(&self) -> FiniteGroup<TElem> {
        let gens: Vec<TElem> = (0..self.core.n as u16).map(|i| self.elem(i)).collect();
        FiniteGroup::close(&gens, self.core.n).expect("table closure")
    }
}

#[derive(Clone)]
pub struct TElem {
    pub core: Rc<TableCore>,
    pub i: u16,
}

impl PartialEq for TElem {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(Rc::ptr_eq(&self.core, &other.core));
        self.i == other.i
    }
}
impl Eq for TElem {}
impl Hash for TElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.i.hash(state);
    }
}
impl GroupElem for TElem {
    fn gmul(&self, other: &Self) -> Self {
        TElem {
            core: Rc::clone(&self.core),
            i: self.core.mul[self.i as usize * self.core.n + other.i as usize],
        }
    }
    fn ginv(&self) -> Self {
        TElem {
            core: Rc::clone(&self.core),
            i: self.core.inv[self.i as usize],
        }
    }
    fn gidentity(&self) -> Self {
        TElem {
            core: Rc::clone(&self.core),
            i: 0,
        }
    }
}

/// 4x4 matrix over F_2, rows as nibbles of a u16.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GF2Mat4 {
    pub rows: [u8; 4],
}

impl GF2Mat4 {
    pub const IDENTITY: GF2Mat4 = GF2Mat4 { rows: [1, 2, 4, 8] };

    pub fn from_cols(cols: [[u8; 4]; 4]) -> GF2Mat4 {
        let mut rows = [0u8; 4];
        for (j, col) in cols.iter().enumerate() {
            for (i, &bit) in col.iter().enumerate() {
                if bit & 1 == 1 {
                    rows[i] |= 1 << j;
                }
            }
        }
        GF2Mat4 { rows }
    }

    pub fn mul_vec(&self, v: u8) -> u8 {
        let mut out = 0u8;
        for i in 0..4 {
            out |= (((self.rows[i] & v).count_ones() as u8) & 1) << i;
        }
        out
    }
}

impl GroupElem for GF2Mat4 {
    fn gmul(&self, other: &Self) -> Self {
        // (self * other): columns of the product are self applied to other's columns
        let mut rows = [0u8; 4];
        for j in 0..4 {
            // column j of other
            let mut col = 0u8;
            for i in 0..4 {
                col |= ((other.rows[i] >> j) & 1) << i;
            }
            let out = self.mul_vec(col);
            for i in 0..4 {
                rows[i] |= ((out >> i) & 1) << j;
            }
        }
        GF2Mat4 { rows }
    }
    fn ginv(&self) -> Self {
        // order of GL(4,2) divides 20160; brute force by powering
        let mut p = *self;
        let mut prev = GF2Mat4::IDENTITY;
        loop {
            if p == GF2Mat4::IDENTITY {
                return prev;
            }
            prev = p;
            p = p.gmul(self);
        }
    }
    fn gidentity(&self) -> Self {
        GF2Mat4::IDENTITY
    }
}

/// 2x2 matrix over F_p for a small prime p (entries 0..p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GFMat2 {
    pub p: u8,
    pub e: [u8; 4], // a b / c d
}

impl GFMat2 {
    pub fn new(p: u8, a: i64, b: i64, c: i64, d: i64) -> GFMat2 {
        let m = |x: i64| x.rem_euclid(p as i64) as u8;
        GFMat2 {
            p,
            e: [m(a), m(b), m(c), m(d)],
        }
    }

    pub fn identity(p: u8) -> GFMat2 {
        GFMat2::new(p, 1, 0, 0, 1)
    }

    pub fn det(&self) -> u8 {
        let p = self.p as i64;
        let [a, b, c, d] = self.e.map(|x| x as i64);
        ((a * d - b * c).rem_euclid(p)) as u8
    }
}

impl GroupElem for GFMat2 {
    fn gmul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p as u32;
        let [a, b, c, d] = self.e.map(|x| x as u32);
        let [e, f, g, h] = other.e.map(|x| x as u32);
        GFMat2 {
            p: self.p,
            e: [
                ((a * e + b * g) % p) as u8,
                ((a * f + b * h) % p) as u8,
                ((c * e + d * g) % p) as u8,
                ((c * f + d * h) % p) as u8,
            ],
        }
    }
    fn ginv(&self) -> Self {
        let p = self.p as i64;
        let [a, b, c, d] = self.e.map(|x| x as i64);
        let det = (a * d - b * c).rem_euclid(p);
        // inverse of det mod p by brute force (p is tiny)
        let det_inv = (1..p)
            .find(|&x| (x * det) % p == 1)
            .expect("singular GFMat2");
        GFMat2::new(self.p, d * det_inv, -b * det_inv, -c * det_inv, a * det_inv)
    }
    fn gidentity(&self) -> Self {
        GFMat2::identity(self.p)
    }
}

impl GroupElem for crate::gmatrix::GMatrix {
    fn gmul(&self, other: &Self) -> Self {
        self.matmul(other)
    }
    fn ginv(&self) -> Self {
        self.inverse().expect("group element must be invertible")
    }
    fn gidentity(&self) -> Self {
        crate::gmatrix::GMatrix::identity(self.dim(), self.root_order())
    }
}
