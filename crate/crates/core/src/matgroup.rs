//! Analyses specific to matrix groups: the natural character, reflections,
//! scalar elements, projective order, and convenient subgroup views.

use crate::cyc::Cyc;
use crate::error::{Error, Result};
use crate::gmatrix::GMatrix;
use crate::group::FiniteGroup;

pub type MatrixGroup = FiniteGroup<GMatrix>;

/// Default closure limit: every catalog group is far below this, and the
/// limit converts infinite input into a clean error.
pub const DEFAULT_CLOSURE_LIMIT: usize = 1_000_000;

impl FiniteGroup<GMatrix> {
    pub fn dim(&self) -> usize {
        self.element(0).dim()
    }

    pub fn root_order(&self) -> u32 {
        self.element(0).root_order()
    }

    /// Trace of one representative per conjugacy class.
    pub fn natural_character(&self) -> Vec<Cyc> {
        self.classes()
            .reps
            .iter()
            .map(|&r| self.element(r).trace())
            .collect()
    }

    /// True iff class `c` consists of reflections (fixes a hyperplane
    /// pointwise). Reflection-ness is a class property.
    pub fn class_is_reflection(&self, c: usize) -> bool {
        self.element(self.classes().reps[c]).is_reflection()
    }

    pub fn has_reflections(&self) -> bool {
        (0..self.class_count()).any(|c| self.class_is_reflection(c))
    }

    /// Indices of the scalar matrices in the group (always central).
    pub fn scalar_indices(&self) -> Vec<u32> {
        self.center_indices()
            .into_iter()
            .filter(|&i| self.element(i).is_scalar().is_some())
            .collect()
    }

    /// |G| / #scalars: the order of the image in PGL.
    pub fn projective_order(&self) -> u64 {
        (self.order() / self.scalar_indices().len()) as u64
    }

    /// Order of the projective image of a single element: the smallest k >= 1
    /// with g^k scalar.
    pub fn projective_element_order(&self, i: u32) -> u32 {
        let mut p = i;
        let mut k = 1u32;
        loop {
            if self.element(p).is_scalar().is_some() {
                return k;
            }
            p = self.imul(p, i);
            k += 1;
        }
    }

    /// Verifies that every generator has determinant 1.
    pub fn check_special_linear(&self) -> Result<()> {
        for g in self.generators() {
            if g.det() != Cyc::one() {
                return Err(Error::Validation(format!(
                    "generator determinant is {}, not 1",
                    g.det()
                )));
            }
        }
        Ok(())
    }

    /// New group built from a sorted element index list (must be closed).
    pub fn subgroup(&self, indices: &[u32]) -> Result<MatrixGroup> {
        let elems: Vec<GMatrix> = indices.iter().map(|&i| self.element(i).clone()).collect();
        let gens: Vec<GMatrix> = self
            .small_generating_set(indices)
            .iter()
            .map(|&i| self.element(i).clone())
            .collect();
        FiniteGroup::from_elements(elems, Some(gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmatrix::{int_matrix, root_diag};
    use crate::rat::Rat;

    /// The two generators acting on C^5: the cyclic coordinate shift and the
    /// diagonal diag(z, z^2, z^3, z^4, 1) with z a primitive fifth root.
    pub fn heisenberg5_gens() -> Vec<GMatrix> {
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
        vec![shift, diag]
    }

    #[test]
    fn heisenberg_structure() {
        let g = FiniteGroup::close(&heisenberg5_gens(), 10_000).unwrap();
        assert_eq!(g.order(), 125);
        g.check_special_linear().unwrap();
        // 29 classes: 5 central of size 1, 24 of size 5
        assert_eq!(g.class_count(), 29);
        let mut ones = 0;
        let mut fives = 0;
        for &s in &g.classes().sizes {
            match s {
                1 => ones += 1,
                5 => fives += 1,
                other => panic!("unexpected class size {other}"),
            }
        }
        assert_eq!((ones, fives), (5, 24));
        // center is Z_5 and contains z * identity
        let center = g.center_indices();
        assert_eq!(center.len(), 5);
        let zid = GMatrix::scalar(5, 5, &Cyc::root(5, 1));
        assert!(center.iter().any(|&i| *g.element(i) == zid));
        // scalars coincide with the center here
        assert_eq!(g.scalar_indices().len(), 5);
        assert_eq!(g.projective_order(), 25);
        // natural character of the identity class is the dimension
        let chi = g.natural_character();
        assert_eq!(chi[0], Cyc::int(5));
        // no reflections inside SL
        assert!(!g.has_reflections());
    }

    #[test]
    fn reflection_detection() {
        let r = root_diag(3, &[1, 0, 0, 0]);
        let g = FiniteGroup::close(&[r], 100).unwrap();
        assert!(g.has_reflections());
    }

    #[test]
    fn projective_element_orders() {
        let g = FiniteGroup::close(&heisenberg5_gens(), 10_000).unwrap();
        // the shift has order 5 and is not scalar until the fifth power
        let shift = g.generator_indices()[0];
        assert_eq!(g.projective_element_order(shift), 5);
    }

    #[test]
    fn subgroup_view() {
        let g = FiniteGroup::close(&heisenberg5_gens(), 10_000).unwrap();
        let center = g.center_indices();
        let z = g.subgroup(&center).unwrap();
        assert_eq!(z.order(), 5);
        assert_eq!(z.natural_character().len(), 5);
        assert_eq!(z.natural_character()[0], Cyc::int(1).scale(&Rat::int(5)));
    }
}
