//! Left-invariant complex and symplectic structure tests on
//! four-dimensional Lie algebras: Nijenhuis integrability, the abelian
//! condition `[Ju, Jv] = [u, v]`, and existence of invariant symplectic
//! forms through the quadratic the wedge square induces on the closed
//! two-forms.

use crate::lie::{LieAlgebra, LieError};
use crate::matrix::RatMatrix;
use crate::rational::{rat_int, Rat};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("J does not square to minus the identity")]
    NotAComplexStructure,
    #[error("J is {got}x{got} but the algebra has dimension {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("operation needs a four-dimensional algebra, got dimension {0}")]
    NotFourDimensional(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// An endomorphism with `J² = -1` on the algebra's underlying space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostComplexStructure {
    matrix: RatMatrix,
}

impl AlmostComplexStructure {
    pub fn new(matrix: RatMatrix) -> Result<Self, GeometryError> {
        let n = matrix.rows();
        if matrix.cols() != n {
            return Err(GeometryError::NotAComplexStructure);
        }
        let minus_identity = RatMatrix::identity(n).scale(&rat_int(-1));
        if matrix.mul(&matrix) != minus_identity {
            return Err(GeometryError::NotAComplexStructure);
        }
        Ok(AlmostComplexStructure { matrix })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.mul_vec(v)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// The standard pairing on basis order `(T, X, Y, Z)`: `J X = Y` and
/// `J Z = T`, closed up by `J² = -1`.
pub fn builtin_j() -> AlmostComplexStructure {
    AlmostComplexStructure::new(RatMatrix::from_i64_rows(&[
        &[0, 0, 0, 1],
        &[0, 0, -1, 0],
        &[0, 1, 0, 0],
        &[-1, 0, 0, 0],
    ]))
    .unwrap()
}

/// The other pairing used as a counterexample: `J X = Z`, `J Y = T`.
pub fn swapped_j() -> AlmostComplexStructure {
    AlmostComplexStructure::new(RatMatrix::from_i64_rows(&[
        &[0, 0, 1, 0],
        &[0, 0, 0, -1],
        &[-1, 0, 0, 0],
        &[0, 1, 0, 0],
    ]))
    .unwrap()
}

fn check_compatible(alg: &LieAlgebra, j: &AlmostComplexStructure) -> Result<(), GeometryError> {
    if alg.dim() != j.dim() {
        return Err(GeometryError::DimensionMismatch {
            want: alg.dim(),
            got: j.dim(),
        });
    }
    Ok(())
}

fn basis_vector(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = rat_int(1);
    v
}

/// Nijenhuis tensor `N(u, v) = [Ju, Jv] - J[Ju, v] - J[u, Jv] - [u, v]` on
/// all basis pairs `i < j`; every value zero means `J` is integrable.
pub fn nijenhuis(
    alg: &LieAlgebra,
    j: &AlmostComplexStructure,
) -> Result<Vec<((usize, usize), Vec<Rat>)>, GeometryError> {
    check_compatible(alg, j)?;
    let n = alg.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(((a, b), nijenhuis_pair(alg, j, a, b)?));
        }
    }
    Ok(out)
}

fn nijenhuis_pair(
    alg: &LieAlgebra,
    j: &AlmostComplexStructure,
    a: usize,
    b: usize,
) -> Result<Vec<Rat>, GeometryError> {
    let n = alg.dim();
    let u = basis_vector(n, a);
    let v = basis_vector(n, b);
    let ju = j.apply(&u);
    let jv = j.apply(&v);
    let term1 = alg.bracket(&ju, &jv)?;
    let term2 = j.apply(&alg.bracket(&ju, &v)?);
    let term3 = j.apply(&alg.bracket(&u, &jv)?);
    let term4 = alg.bracket(&u, &v)?;
    Ok((0..n)
        .map(|i| &term1[i] - &term2[i] - &term3[i] - &term4[i])
        .collect())
}

/// True when all Nijenhuis values vanish.
pub fn is_integrable(
    alg: &LieAlgebra,
    j: &AlmostComplexStructure,
) -> Result<bool, GeometryError> {
    Ok(nijenhuis(alg, j)?
        .iter()
        .all(|(_, v)| v.iter().all(Rat::is_zero)))
}

/// The abelian condition `[Ju, Jv] = [u, v]`, checked on basis pairs,
/// which suffices by bilinearity.
pub fn is_abelian_cs(
    alg: &LieAlgebra,
    j: &AlmostComplexStructure,
) -> Result<bool, GeometryError> {
    check_compatible(alg, j)?;
    let n = alg.dim();
    for a in 0..n {
        for b in a + 1..n {
            let ju = j.apply(&basis_vector(n, a));
            let jv = j.apply(&basis_vector(n, b));
            if alg.bracket(&ju, &jv)? != alg.bracket_basis(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact basis of the closed two-forms, the kernel of the degree-2
/// Chevalley-Eilenberg differential.
pub fn closed_two_forms(alg: &LieAlgebra) -> Result<Vec<Vec<Rat>>, GeometryError> {
    Ok(alg.ce_complex()?.complex().cocycles(2).unwrap())
}

/// True when the two-form (in wedge-monomial coordinates) is closed in the
/// algebra's complex. Used to compare the same form across algebras on a
/// shared basis.
pub fn is_closed_two_form(alg: &LieAlgebra, form: &[Rat]) -> Result<bool, GeometryError> {
    let ce = alg.ce_complex()?;
    Ok(ce.diff(2).mul_vec(form).iter().all(Rat::is_zero))
}

/// Symmetric quadratic form `c ↦ (ω(c) ∧ ω(c))` on the coefficients of the
/// generic closed two-form `ω(c) = Σ c_i β_i`, read off the top wedge
/// coefficient. Nonzero values are exactly the nondegenerate members.
#[derive(Clone, Debug)]
pub struct WedgeSquareForm {
    /// `gram[i][j]` is the top coefficient of `β_i ∧ β_j`.
    pub gram: Vec<Vec<Rat>>,
}

impl WedgeSquareForm {
    pub fn vars(&self) -> usize {
        self.gram.len()
    }

    pub fn evaluate(&self, c: &[Rat]) -> Rat {
        let mut out = Rat::zero();
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if !g.is_zero() {
                    out += &c[i] * &c[j] * g;
                }
            }
        }
        out
    }

    /// Symbolic zero test: a symmetric quadratic vanishes identically iff
    /// its Gram matrix is zero.
    pub fn is_zero_symbolic(&self) -> bool {
        self.gram.iter().all(|row| row.iter().all(Rat::is_zero))
    }

    /// Grid zero test over `{0, 1, 2}^vars`: sound and complete for a
    /// polynomial of degree at most two in each variable, and a cross-check
    /// of the symbolic test.
    pub fn is_zero_on_grid(&self) -> bool {
        self.grid_points().all(|c| self.evaluate(&c).is_zero())
    }

    /// First grid point with nonzero value, in deterministic grid order.
    pub fn first_nonzero_point(&self) -> Option<Vec<Rat>> {
        self.grid_points().find(|c| !self.evaluate(c).is_zero())
    }

    fn grid_points(&self) -> impl Iterator<Item = Vec<Rat>> + '_ {
        let vars = self.vars();
        let total = 3usize.pow(vars as u32);
        (0..total).map(move |mut idx| {
            let mut point = Vec::with_capacity(vars);
            for _ in 0..vars {
                point.push(rat_int((idx % 3) as i64));
                idx /= 3;
            }
            point
        })
    }
}

/// Builds the wedge-square quadratic over the closed two-form basis of a
/// four-dimensional algebra.
pub fn wedge_square_form(alg: &LieAlgebra) -> Result<WedgeSquareForm, GeometryError> {
    if alg.dim() != 4 {
        return Err(GeometryError::NotFourDimensional(alg.dim()));
    }
    let basis = closed_two_forms(alg)?;
    let gram = basis
        .iter()
        .map(|bi| {
            basis
                .iter()
                .map(|bj| {
                    let product = crate::exterior::wedge(4, 2, bi, 2, bj);
                    product[0].clone() // Λ⁴ is one-dimensional
                })
                .collect()
        })
        .collect();
    Ok(WedgeSquareForm { gram })
}

/// A verified invariant symplectic form: closed by construction over the
/// closed basis, with nonzero wedge square.
#[derive(Clone, Debug)]
pub struct SymplecticWitness {
    /// Coefficients over the closed two-form basis.
    pub coefficients: Vec<Rat>,
    /// The form itself in wedge-monomial coordinates.
    pub form: Vec<Rat>,
    /// Top coefficient of `ω ∧ ω`; nonzero certifies nondegeneracy.
    pub wedge_square: Rat,
}

/// Searches for a left-invariant symplectic form: `None` exactly when the
/// wedge-square quadratic vanishes identically on the closed two-forms
/// (verified both symbolically and on the grid); otherwise the first
/// nondegenerate grid point, returned with its certificate.
pub fn invariant_symplectic(alg: &LieAlgebra) -> Result<Option<SymplecticWitness>, GeometryError> {
    let quad = wedge_square_form(alg)?;
    let symbolically_zero = quad.is_zero_symbolic();
    assert_eq!(
        symbolically_zero,
        quad.is_zero_on_grid(),
        "symbolic and grid identity tests disagree"
    );
    if symbolically_zero {
        return Ok(None);
    }
    let basis = closed_two_forms(alg)?;
    let coefficients = quad
        .first_nonzero_point()
        .expect("grid test found a nonzero value");
    let mut form = vec![Rat::zero(); 6];
    for (c, b) in coefficients.iter().zip(&basis) {
        for (slot, v) in b.iter().enumerate() {
            form[slot] += c * v;
        }
    }
    let wedge_square = crate::exterior::wedge(4, 2, &form, 2, &form)[0].clone();
    debug_assert!(!wedge_square.is_zero());
    debug_assert!(is_closed_two_form(alg, &form)?);
    Ok(Some(SymplecticWitness {
        coefficients,
        form,
        wedge_square,
    }))
}
