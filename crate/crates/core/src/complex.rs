//! Finite cochain complexes of rational vector spaces, with Betti numbers
//! and explicit cohomology representatives.

use crate::matrix::RatMatrix;
use crate::rational::Rat;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential shape mismatch at degree {0}")]
    ShapeMismatch(usize),
    #[error("d∘d is nonzero at degree {0}")]
    DifferentialSquare(usize),
    #[error("degree {degree} out of range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
}

/// Cochain complex `V_0 -> V_1 -> ... -> V_top` with exact rational
/// differentials. `diffs[p]` maps degree `p` to degree `p+1`; the last one
/// maps into the zero space.
#[derive(Clone, Debug)]
pub struct Complex {
    dims: Vec<usize>,
    diffs: Vec<RatMatrix>,
}

impl Complex {
    /// Builds the complex and checks both shapes and `d∘d = 0`.
    pub fn new(dims: Vec<usize>, mut diffs: Vec<RatMatrix>) -> Result<Self, ComplexError> {
        assert!(!dims.is_empty(), "empty complex");
        let top = dims.len() - 1;
        if diffs.len() == top {
            diffs.push(RatMatrix::zeros(0, dims[top]));
        }
        if diffs.len() != top + 1 {
            return Err(ComplexError::ShapeMismatch(diffs.len()));
        }
        for p in 0..=top {
            let expect_rows = if p == top { 0 } else { dims[p + 1] };
            if diffs[p].rows() != expect_rows || diffs[p].cols() != dims[p] {
                return Err(ComplexError::ShapeMismatch(p));
            }
        }
        for p in 0..top {
            if !diffs[p + 1].mul(&diffs[p]).is_zero() {
                return Err(ComplexError::DifferentialSquare(p));
            }
        }
        Ok(Complex { dims, diffs })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, p: usize) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    pub fn diff(&self, p: usize) -> &RatMatrix {
        &self.diffs[p]
    }

    fn check_degree(&self, p: usize) -> Result<(), ComplexError> {
        if p > self.top() {
            return Err(ComplexError::DegreeOutOfRange {
                degree: p,
                top: self.top(),
            });
        }
        Ok(())
    }

    /// `b_p = dim ker d_p - rank d_{p-1}` for every degree.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.top())
            .map(|p| {
                let kernel = self.dim(p) - self.diffs[p].rank();
                let image = if p == 0 { 0 } else { self.diffs[p - 1].rank() };
                kernel - image
            })
            .collect()
    }

    /// Kernel basis of `d_p` (canonically scaled).
    pub fn cocycles(&self, p: usize) -> Result<Vec<Vec<Rat>>, ComplexError> {
        self.check_degree(p)?;
        Ok(self.diffs[p].kernel_basis())
    }

    /// Matrix whose columns span the coboundaries in degree `p`.
    pub fn coboundary_matrix(&self, p: usize) -> RatMatrix {
        if p == 0 {
            RatMatrix::zeros(self.dim(0), 0)
        } else {
            self.diffs[p - 1].clone()
        }
    }

    /// True when the degree-`p` vector is a cocycle.
    pub fn is_cocycle(&self, p: usize, v: &[Rat]) -> bool {
        self.diffs[p].mul_vec(v).iter().all(num_traits::Zero::is_zero)
    }

    /// Cocycle representatives spanning `H^p`: kernel vectors kept greedily
    /// when they are independent modulo the coboundaries, so the choice is
    /// deterministic for a fixed basis order.
    pub fn cohomology_basis(&self, p: usize) -> Result<Vec<Vec<Rat>>, ComplexError> {
        self.check_degree(p)?;
        let mut span = self.coboundary_matrix(p);
        let mut rank = span.rank();
        let mut reps = Vec::new();
        for v in self.diffs[p].kernel_basis() {
            let candidate = span.hstack(&RatMatrix::from_cols(&[v.clone()], self.dim(p)));
            let r = candidate.rank();
            if r > rank {
                span = candidate;
                rank = r;
                reps.push(v);
            }
        }
        Ok(reps)
    }

    /// Coordinates of a cocycle in the `cohomology_basis(p)` representatives
    /// modulo coboundaries. `None` when `v` is not a cocycle.
    pub fn express_in_cohomology(&self, p: usize, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.is_cocycle(p, v) {
            return None;
        }
        let reps = self.cohomology_basis(p).ok()?;
        let rep_mat = RatMatrix::from_cols(&reps, self.dim(p));
        let system = rep_mat.hstack(&self.coboundary_matrix(p));
        let solution = system.solve(v)?;
        Some(solution[..reps.len()].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RatMatrix;

    #[test]
    fn rejects_non_complexes() {
        // d1 ∘ d0 ≠ 0: both identity maps on a 1-dim space
        let dims = vec![1, 1, 1];
        let diffs = vec![RatMatrix::identity(1), RatMatrix::identity(1)];
        assert_eq!(
            Complex::new(dims, diffs).unwrap_err(),
            ComplexError::DifferentialSquare(0)
        );
    }

    #[test]
    fn circle_like_complex() {
        // 0 -> Q -> Q -> 0 with zero differential: betti (1, 1)
        let c = Complex::new(vec![1, 1], vec![RatMatrix::zeros(1, 1)]).unwrap();
        assert_eq!(c.betti(), vec![1, 1]);
        assert_eq!(c.cohomology_basis(0).unwrap().len(), 1);
        assert!(c.cohomology_basis(2).is_err());
    }
}
