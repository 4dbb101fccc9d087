//! Linear codes, share sets and nested code pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef};
use crate::linalg::{same_field, Matrix, OrderedBasis, Subspace, Vector};

/// Participants are limited to what fits in the bitmask.
pub const MAX_PARTICIPANTS: usize = 64;

/// A subset J of the participants {1..n}.
///
/// Indices are 1-based at the boundary (parsing, display) and 0-based
/// everywhere else. Bit `i` of the mask is participant `i + 1`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShareSet {
    n: usize,
    mask: u64,
}

impl fmt::Debug for ShareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ShareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl ShareSet {
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > MAX_PARTICIPANTS {
            return Err(Error::TooManyParticipants { n, max: MAX_PARTICIPANTS });
        }
        let full = full_mask(n);
        if mask & !full != 0 {
            let index = 64 - mask.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, n });
        }
        Ok(ShareSet { n, mask })
    }

    /// From 1-based participant indices.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            mask |= 1 << (i - 1);
        }
        Self::from_mask(n, mask)
    }

    /// Parses `"1,2,3"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Self::from_mask(n, 0);
        }
        let idx = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad index {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(n, &idx)
    }

    pub fn empty(n: usize) -> Self {
        ShareSet { n, mask: 0 }
    }

    pub fn all(n: usize) -> Self {
        ShareSet { n, mask: full_mask(n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.n)
    }

    /// 0-based member indices, ascending.
    pub fn members(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.contains(i)).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.mask >> i & 1 == 1
    }

    pub fn complement(&self) -> ShareSet {
        ShareSet {
            n: self.n,
            mask: !self.mask & full_mask(self.n),
        }
    }

    pub fn is_subset_of(&self, other: &ShareSet) -> bool {
        self.mask & !other.mask == 0
    }

    /// Every subset of {1..n}, ordered by mask.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = ShareSet> {
        (0..=full_mask(n)).map(move |mask| ShareSet { n, mask })
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A linear code `C ⊆ F_q^n`, stored as its RREF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    space: Subspace,
}

impl LinearCode {
    pub fn new(field: &FieldRef, n: usize, generators: &[Vector]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("code length must be positive".into()));
        }
        Ok(LinearCode {
            space: Subspace::span(field, n, generators)?,
        })
    }

    pub fn from_generator(generator: &Matrix) -> Result<Self> {
        if generator.cols() == 0 {
            return Err(Error::InvalidParameters("code length must be positive".into()));
        }
        Ok(LinearCode {
            space: Subspace::from_matrix(generator),
        })
    }

    pub fn from_subspace(space: Subspace) -> Self {
        LinearCode { space }
    }

    pub fn full(field: &FieldRef, n: usize) -> Self {
        LinearCode {
            space: Subspace::full(field, n),
        }
    }

    pub fn zero(field: &FieldRef, n: usize) -> Self {
        LinearCode {
            space: Subspace::zero(field, n),
        }
    }

    pub fn field(&self) -> &FieldRef {
        self.space.field()
    }

    pub fn length(&self) -> usize {
        self.space.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// RREF generator matrix.
    pub fn generator(&self) -> &Matrix {
        self.space.basis()
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.space.contains(v)
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    fn check_len(&self, j: &ShareSet) -> Result<()> {
        if j.n() != self.length() {
            return Err(Error::DimensionMismatch {
                expected: self.length(),
                got: j.n(),
            });
        }
        Ok(())
    }

    /// The punctured code `P_J(C)`, coordinates in ascending index order.
    pub fn project(&self, j: &ShareSet) -> Result<LinearCode> {
        self.check_len(j)?;
        if j.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(LinearCode {
            space: self.space.project(&j.members()),
        })
    }

    /// `dim P_J(C)`, zero for empty J.
    pub fn projected_dim(&self, j: &ShareSet) -> usize {
        self.space.project(&j.members()).dim()
    }

    /// `C ∩ ker(P_J)`: the codewords vanishing on every coordinate in J.
    pub fn vanishing_on(&self, j: &ShareSet) -> LinearCode {
        let ker = Subspace::coordinate_kernel(self.field(), self.length(), &j.members());
        LinearCode {
            space: self.space.intersect(&ker).expect("same ambient"),
        }
    }

    /// The shortened code `P_J(C ∩ ker(P_{J̄}))`.
    pub fn shorten(&self, j: &ShareSet) -> Result<LinearCode> {
        self.check_len(j)?;
        if j.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.vanishing_on(&j.complement()).project(j)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode {
            space: self.space.annihilator(),
        }
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        Ok(LinearCode {
            space: self.space.sum(&other.space)?,
        })
    }

    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode> {
        Ok(LinearCode {
            space: self.space.intersect(&other.space)?,
        })
    }
}

/// A nested pair `C₂ ⊊ C₁` together with the secret labelling `f`.
///
/// `f(s)` is the coset `Σ sᵢ·reps[i] + C₂`; the representatives are fixed
/// at construction and recorded in scheme files.
#[derive(Clone, Debug)]
pub struct NestedPair {
    c1: LinearCode,
    c2: LinearCode,
    reps: Vec<Vector>,
    rep_matrix: Matrix,
}

impl NestedPair {
    /// Builds the pair with deterministic representatives from
    /// [`Subspace::quotient_representatives`].
    pub fn new(c1: LinearCode, c2: LinearCode) -> Result<Self> {
        Self::check_nesting(&c1, &c2)?;
        let reps = c1.space().quotient_representatives(c2.space())?;
        Self::with_representatives(c1, c2, reps)
    }

    /// Builds the pair with caller-chosen coset representatives, which must
    /// lie in C₁ and be independent modulo C₂.
    pub fn with_representatives(c1: LinearCode, c2: LinearCode, reps: Vec<Vector>) -> Result<Self> {
        Self::check_nesting(&c1, &c2)?;
        let secret_dim = c1.dim() - c2.dim();
        if reps.len() != secret_dim {
            return Err(Error::DimensionMismatch {
                expected: secret_dim,
                got: reps.len(),
            });
        }
        let n = c1.length();
        let rep_matrix = Matrix::from_rows(c1.field(), n, &reps)?;
        if reps.iter().any(|r| !c1.contains(r)) {
            return Err(Error::NotNested);
        }
        let with_c2 = rep_matrix.vstack(c2.generator())?;
        if with_c2.rank() != c1.dim() {
            return Err(Error::InvalidParameters(
                "coset representatives are not independent modulo C2".into(),
            ));
        }
        Ok(NestedPair {
            c1,
            c2,
            reps,
            rep_matrix,
        })
    }

    fn check_nesting(c1: &LinearCode, c2: &LinearCode) -> Result<()> {
        same_field(c1.field(), c2.field())?;
        if c1.length() != c2.length() {
            return Err(Error::AmbientMismatch(c1.length(), c2.length()));
        }
        if !c2.is_subcode_of(c1) {
            return Err(Error::NotNested);
        }
        if c1.dim() == c2.dim() {
            return Err(Error::EqualCodes);
        }
        Ok(())
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn field(&self) -> &FieldRef {
        self.c1.field()
    }

    pub fn n(&self) -> usize {
        self.c1.length()
    }

    pub fn secret_dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.reps
    }

    /// Matrix whose rows are the coset representatives.
    pub fn representative_matrix(&self) -> &Matrix {
        &self.rep_matrix
    }

    /// The canonical representative `Σ sᵢ·reps[i]` of `f(s)`.
    pub fn representative(&self, s: &[FieldElement]) -> Vector {
        self.rep_matrix.apply_row(s)
    }

    /// All |C₂| vectors of the coset `f(s)`.
    pub fn coset(&self, s: &[FieldElement]) -> Vec<Vector> {
        let base = self.representative(s);
        let f = self.field();
        self.c2
            .space()
            .elements()
            .into_iter()
            .map(|c| base.iter().zip(&c).map(|(&a, &b)| f.add(a, b)).collect())
            .collect()
    }

    /// Secret coordinates of the coset containing `x ∈ C₁`.
    pub fn secret_of(&self, x: &[FieldElement]) -> Option<Vector> {
        let mut rows = self.reps.clone();
        rows.extend(self.c2.space().basis_vectors());
        let basis = OrderedBasis::new(self.field(), self.n(), &rows).ok()?;
        basis.coordinates(x).map(|c| c[..self.secret_dim()].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn sample() -> NestedPair {
        crate::constructions::q7_sample_pair()
    }

    #[test]
    fn share_set_basics() {
        let j = ShareSet::from_indices(5, &[1, 2, 3]).unwrap();
        assert_eq!(j.members(), vec![0, 1, 2]);
        assert_eq!(j.complement().members(), vec![3, 4]);
        assert_eq!(j.to_string(), "{1,2,3}");
        assert_eq!(ShareSet::parse(5, "1, 2,3").unwrap(), j);
        assert!(matches!(ShareSet::from_indices(5, &[6]), Err(Error::IndexOutOfRange { index: 6, n: 5 })));
        assert!(matches!(ShareSet::from_indices(5, &[0]), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(ShareSet::all_subsets(5).count(), 32);
        assert!(ShareSet::empty(3).complement().is_full());
    }

    #[test]
    fn q7_sample_projections() {
        let pair = sample();
        assert_eq!(pair.secret_dim(), 3);
        let j = ShareSet::from_indices(5, &[1, 2, 3]).unwrap();
        assert_eq!(pair.c1().project(&j).unwrap().dim(), 3);
        assert_eq!(pair.c2().project(&j).unwrap().dim(), 1);
        assert_eq!(pair.c2().shorten(&j).unwrap().dim(), 0);
        assert_eq!(pair.c1().project(&ShareSet::empty(5)), Err(Error::EmptySubset));
    }

    #[test]
    fn full_code_projection_and_shortening() {
        let f = FiniteField::new(3, 1).unwrap();
        let full = LinearCode::full(&f, 5);
        let j = ShareSet::from_indices(5, &[2, 4]).unwrap();
        assert_eq!(full.project(&j).unwrap(), LinearCode::full(&f, 2));
        assert_eq!(full.shorten(&j).unwrap(), LinearCode::full(&f, 2));
    }

    #[test]
    fn repetition_code_shortening_and_dual() {
        let f = FiniteField::new(7, 1).unwrap();
        let rep = LinearCode::new(&f, 5, &[vec![FieldElement::ONE; 5]]).unwrap();
        let j = ShareSet::from_indices(5, &[1, 3, 5]).unwrap();
        assert_eq!(rep.shorten(&j).unwrap().dim(), 0);
        let d = rep.dual();
        assert_eq!(d.dim(), 4);
        assert_eq!(d.dual(), rep);
    }

    #[test]
    fn nested_pair_errors() {
        let f = FiniteField::new(2, 1).unwrap();
        let full = LinearCode::full(&f, 2);
        let zero = LinearCode::zero(&f, 2);
        assert_eq!(NestedPair::new(full.clone(), zero.clone()).unwrap().secret_dim(), 2);
        assert_eq!(NestedPair::new(full.clone(), full.clone()).unwrap_err(), Error::EqualCodes);
        assert_eq!(NestedPair::new(zero, full).unwrap_err(), Error::NotNested);
    }

    #[test]
    fn cosets_partition_c1() {
        let pair = sample();
        let f = pair.field();
        let s = vec![f.elem(1).unwrap(), f.elem(0).unwrap(), f.elem(0).unwrap()];
        let coset = pair.coset(&s);
        assert_eq!(coset.len(), 7);
        for x in &coset {
            assert!(pair.c1().contains(x));
            assert_eq!(pair.secret_of(x).unwrap(), s);
        }
    }
}
