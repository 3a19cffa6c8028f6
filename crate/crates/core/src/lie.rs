//! Finite-dimensional Lie algebras over the rationals: structure
//! constants, Jacobi validation, adjoint operators, unimodularity,
//! Chevalley-Eilenberg cohomology, and the complete-solvability witness
//! search.
//!
//! Sign convention for the differential: `dω(X, Y) = -ω([X, Y])` on
//! one-forms, so `[X, Y] = Z` dualizes to `dγ = -α∧β`.

use crate::complex::{Complex, ComplexError};
use crate::exterior::{binomial, monomial_index, monomials, sort_sign};
use crate::matrix::RatMatrix;
use crate::poly::RatPoly;
use crate::rational::{format_rat, parse_rat, rat_int, Rat};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("coefficient vector has length {got}, algebra dimension is {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("structure constants violate the Jacobi identity: {0}")]
    NotALieAlgebra(#[from] ComplexError),
    #[error("degree {degree} out of range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("bad algebra description: {0}")]
    BadDescription(String),
}

/// Lie algebra given by dimension, basis labels, and structure constants
/// `c^k_{ij}` stored only for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// `brackets[pair_index(i, j)][k]` is the `e_k` coefficient of `[e_i, e_j]`.
    brackets: Vec<Vec<Rat>>,
}

/// A Jacobi defect on a basis triple; an empty defect list means the
/// constants define a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub defect: Vec<Rat>,
}

impl LieAlgebra {
    /// Builds an algebra from sparse bracket data `((i, j), [e_i, e_j])`
    /// with `i < j`; omitted pairs commute. Labels default to `e0`, `e1`, ...
    pub fn from_brackets(
        dim: usize,
        labels: Option<Vec<String>>,
        entries: &[((usize, usize), Vec<Rat>)],
    ) -> Result<Self, LieError> {
        let labels =
            labels.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        if labels.len() != dim {
            return Err(LieError::BadDescription(format!(
                "{} labels for dimension {dim}",
                labels.len()
            )));
        }
        let mut brackets = vec![vec![Rat::zero(); dim]; dim * (dim.saturating_sub(1)) / 2];
        for ((i, j), coeffs) in entries {
            if *i >= *j || *j >= dim {
                return Err(LieError::BadDescription(format!(
                    "bracket pair ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            if coeffs.len() != dim {
                return Err(LieError::DimensionMismatch {
                    want: dim,
                    got: coeffs.len(),
                });
            }
            brackets[pair_index(dim, *i, *j)] = coeffs.clone();
        }
        Ok(LieAlgebra {
            dim,
            labels,
            brackets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[e_i, e_j]` as a coefficient vector, any index order.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => vec![Rat::zero(); self.dim],
            Ordering::Less => self.brackets[pair_index(self.dim, i, j)].clone(),
            Ordering::Greater => self.brackets[pair_index(self.dim, j, i)]
                .iter()
                .map(|c| -c.clone())
                .collect(),
        }
    }

    /// `[u, v]` by bilinear extension.
    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Result<Vec<Rat>, LieError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let coeff = &u[i] * &v[j];
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &coeff * c;
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_len(&self, v: &[Rat]) -> Result<(), LieError> {
        if v.len() != self.dim {
            return Err(LieError::DimensionMismatch {
                want: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Jacobi defects `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`
    /// over all basis triples. Violations are data, not errors.
    pub fn validate(&self) -> Vec<JacobiViolation> {
        let unit = |i: usize| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); self.dim];
            v[i] = rat_int(1);
            v
        };
        let mut violations = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket(&self.bracket_basis(i, j), &unit(k)).unwrap();
                    let b = self.bracket(&self.bracket_basis(j, k), &unit(i)).unwrap();
                    let c = self.bracket(&self.bracket_basis(k, i), &unit(j)).unwrap();
                    let defect: Vec<Rat> = a
                        .iter()
                        .zip(&b)
                        .zip(&c)
                        .map(|((x, y), z)| x + y + z)
                        .collect();
                    if defect.iter().any(|v| !v.is_zero()) {
                        violations.push(JacobiViolation {
                            triple: (i, j, k),
                            defect,
                        });
                    }
                }
            }
        }
        violations
    }

    /// Matrix of `ad_v = [v, ·]` in the chosen basis.
    pub fn adjoint(&self, v: &[Rat]) -> Result<RatMatrix, LieError> {
        self.check_len(v)?;
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut unit = vec![Rat::zero(); self.dim];
            unit[j] = rat_int(1);
            let col = self.bracket(v, &unit)?;
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// True iff `trace(ad_{e_i}) = 0` for every basis vector.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| {
            let mut unit = vec![Rat::zero(); self.dim];
            unit[i] = rat_int(1);
            self.adjoint(&unit).unwrap().trace().is_zero()
        })
    }

    /// The Chevalley-Eilenberg complex on `Λ^* g*`; fails when `d∘d ≠ 0`,
    /// which is exactly a Jacobi failure.
    pub fn ce_complex(&self) -> Result<CeComplex, LieError> {
        let n = self.dim;
        let dims: Vec<usize> = (0..=n).map(|p| binomial(n, p)).collect();
        let mut diffs = Vec::with_capacity(n + 1);
        for p in 0..n {
            let source = monomials(n, p);
            let mut d = RatMatrix::zeros(binomial(n, p + 1), binomial(n, p));
            for (col, mono) in source.iter().enumerate() {
                for (slot, &gen) in mono.iter().enumerate() {
                    let slot_sign = if slot % 2 == 0 { 1 } else { -1 };
                    // d e^gen = -Σ_{i<j} c^gen_{ij} e^i ∧ e^j
                    for i in 0..n {
                        for j in i + 1..n {
                            let c = &self.brackets[pair_index(n, i, j)][gen];
                            if c.is_zero() {
                                continue;
                            }
                            let mut idx: Vec<usize> = mono[..slot]
                                .iter()
                                .chain([i, j].iter())
                                .chain(mono[slot + 1..].iter())
                                .copied()
                                .collect();
                            let Some(sgn) = sort_sign(&mut idx) else {
                                continue;
                            };
                            let row = monomial_index(n, &idx);
                            let term =
                                d.at(row, col) + c * rat_int(-(slot_sign * sgn) as i64);
                            d.set(row, col, term);
                        }
                    }
                }
            }
            diffs.push(d);
        }
        let complex = Complex::new(dims, diffs)?;
        Ok(CeComplex {
            algebra: self.clone(),
            complex,
        })
    }

    /// Chevalley-Eilenberg Betti numbers `b_0..b_dim`.
    pub fn betti(&self) -> Result<Vec<usize>, LieError> {
        Ok(self.ce_complex()?.complex.betti())
    }

    /// Searches the trial vectors for one whose adjoint certifies that the
    /// algebra is not completely solvable.
    pub fn completely_solvable_witness(&self, trials: &[Vec<Rat>]) -> SolvabilityVerdict {
        for v in trials {
            let ad = match self.adjoint(v) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let char_poly = ad.char_poly();
            let distinct_real = char_poly
                .sturm_real_root_count()
                .expect("characteristic polynomial is monic");
            let distinct_complex = char_poly
                .squarefree_part()
                .degree()
                .expect("characteristic polynomial is monic");
            if distinct_real < distinct_complex {
                return SolvabilityVerdict::Witness {
                    vector: v.clone(),
                    char_poly,
                    distinct_real,
                    distinct_complex,
                };
            }
        }
        SolvabilityVerdict::NoWitnessFound {
            trials: trials.len(),
        }
    }
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    // pairs (i, j), i < j, in lexicographic order
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

/// Chevalley-Eilenberg complex of an algebra, with its monomial bases.
#[derive(Clone, Debug)]
pub struct CeComplex {
    algebra: LieAlgebra,
    complex: Complex,
}

impl CeComplex {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn diff(&self, p: usize) -> &RatMatrix {
        self.complex.diff(p)
    }

    /// Monomial basis of degree `p` as index subsets.
    pub fn basis(&self, p: usize) -> Vec<Vec<usize>> {
        monomials(self.algebra.dim, p)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.complex.betti()
    }

    /// Representatives spanning `H^p`.
    pub fn cohomology_basis(&self, p: usize) -> Result<Vec<Vec<Rat>>, LieError> {
        self.complex
            .cohomology_basis(p)
            .map_err(|_| LieError::DegreeOutOfRange {
                degree: p,
                top: self.algebra.dim,
            })
    }

    /// Cohomology in all degrees at once.
    pub fn cohomology(&self) -> CohomologyResult {
        let betti = self.betti();
        let representatives = (0..=self.algebra.dim)
            .map(|p| self.complex.cohomology_basis(p).unwrap())
            .collect();
        CohomologyResult {
            betti,
            representatives,
        }
    }

    /// Renders a degree-`p` coordinate vector as a combination of labeled
    /// wedge monomials, e.g. `a^b + 2 a^c`.
    pub fn format_cochain(&self, p: usize, v: &[Rat]) -> String {
        let monos = self.basis(p);
        let mut terms = Vec::new();
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = if p == 0 {
                "1".to_string()
            } else {
                monos[idx]
                    .iter()
                    .map(|&i| self.algebra.labels[i].clone())
                    .collect::<Vec<_>>()
                    .join("^")
            };
            let coeff = format_rat(c);
            terms.push(match coeff.as_str() {
                "1" => mono,
                "-1" => format!("-{mono}"),
                _ => format!("{coeff} {mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Betti numbers with explicit cocycle representatives per degree.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub betti: Vec<usize>,
    pub representatives: Vec<Vec<Vec<Rat>>>,
}

/// Outcome of the complete-solvability search. A witness proves the
/// algebra is NOT completely solvable; absence of one over the trial set
/// is inconclusive and reported as such.
#[derive(Clone, Debug)]
pub enum SolvabilityVerdict {
    Witness {
        vector: Vec<Rat>,
        char_poly: RatPoly,
        distinct_real: usize,
        distinct_complex: usize,
    },
    NoWitnessFound {
        trials: usize,
    },
}

impl SolvabilityVerdict {
    pub fn is_witness(&self) -> bool {
        matches!(self, SolvabilityVerdict::Witness { .. })
    }
}

/// Basis vectors followed by `extra` seeded pseudo-random rational
/// combinations; deterministic for a fixed seed.
pub fn default_trial_vectors(dim: usize, seed: u64, extra: usize) -> Vec<Vec<Rat>> {
    let mut trials: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = rat_int(1);
            v
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        trials.push(
            (0..dim)
                .map(|_| {
                    let numer = rng.random_range(-3i64..=3);
                    let denom = rng.random_range(1i64..=3);
                    crate::rational::rat(numer, denom)
                })
                .collect(),
        );
    }
    trials
}

// ---------------------------------------------------------------------------
// builtins

/// Heisenberg algebra: `[X, Y] = Z`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        Some(vec!["X".into(), "Y".into(), "Z".into()]),
        &[((0, 1), vec![rat_int(0), rat_int(0), rat_int(1)])],
    )
    .unwrap()
}

/// Oscillator algebra: the rotation derivation `T` over the Heisenberg
/// algebra, `[T, X] = -Y`, `[T, Y] = X`, `[X, Y] = Z`.
pub fn oscillator() -> LieAlgebra {
    LieAlgebra::from_brackets(
        4,
        Some(vec!["T".into(), "X".into(), "Y".into(), "Z".into()]),
        &[
            ((0, 1), vec![rat_int(0), rat_int(0), rat_int(-1), rat_int(0)]),
            ((0, 2), vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)]),
            ((1, 2), vec![rat_int(0), rat_int(0), rat_int(0), rat_int(1)]),
        ],
    )
    .unwrap()
}

/// Product of a line with the Heisenberg algebra: only `[X, Y] = Z`.
pub fn r_x_h3() -> LieAlgebra {
    LieAlgebra::from_brackets(
        4,
        Some(vec!["T".into(), "X".into(), "Y".into(), "Z".into()]),
        &[((1, 2), vec![rat_int(0), rat_int(0), rat_int(0), rat_int(1)])],
    )
    .unwrap()
}

/// Three-dimensional solvable algebra with a rotational derivation:
/// `[e1, e2] = λ e3`, `[e1, e3] = -λ e2`, dually `de² = λ e¹∧e³` and
/// `de³ = -λ e¹∧e²`.
///
/// The classical model uses the scale `2π`; cohomology ranks are invariant
/// under any nonzero scaling of the parameter, so a rational `scale`
/// (default 1) is used to keep the arithmetic exact.
pub fn rotation_solvable_3d(scale: &Rat) -> LieAlgebra {
    let z = Rat::zero;
    LieAlgebra::from_brackets(
        3,
        Some(vec!["e1".into(), "e2".into(), "e3".into()]),
        &[
            ((0, 1), vec![z(), z(), scale.clone()]),
            ((0, 2), vec![z(), -scale.clone(), z()]),
        ],
    )
    .unwrap()
}

/// Builtin algebras addressable by name.
pub fn builtin(name: &str) -> Option<LieAlgebra> {
    match name {
        "h3" => Some(heisenberg()),
        "oscillator" => Some(oscillator()),
        "r_x_h3" => Some(r_x_h3()),
        "example_sec3" => Some(rotation_solvable_3d(&rat_int(1))),
        _ => None,
    }
}

pub const BUILTIN_NAMES: &[&str] = &["h3", "oscillator", "r_x_h3", "example_sec3"];

// ---------------------------------------------------------------------------
// JSON form

#[derive(Serialize, Deserialize)]
struct LieAlgebraJson {
    dim: usize,
    labels: Vec<String>,
    brackets: Vec<BracketJson>,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    i: usize,
    j: usize,
    coeffs: Vec<String>,
}

impl LieAlgebra {
    /// JSON form: `{"dim": n, "labels": [...], "brackets":
    /// [{"i": 0, "j": 1, "coeffs": ["0", "1/2", ...]}]}` with rationals as
    /// `p/q` strings; only nonzero brackets are listed.
    pub fn to_json(&self) -> serde_json::Value {
        let brackets = (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let coeffs = &self.brackets[pair_index(self.dim, i, j)];
                if coeffs.iter().all(Rat::is_zero) {
                    return None;
                }
                Some(BracketJson {
                    i,
                    j,
                    coeffs: coeffs.iter().map(format_rat).collect(),
                })
            })
            .collect();
        serde_json::to_value(LieAlgebraJson {
            dim: self.dim,
            labels: self.labels.clone(),
            brackets,
        })
        .unwrap()
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, LieError> {
        let parsed: LieAlgebraJson = serde_json::from_value(value.clone())
            .map_err(|e| LieError::BadDescription(e.to_string()))?;
        let entries = parsed
            .brackets
            .iter()
            .map(|b| {
                let coeffs = b
                    .coeffs
                    .iter()
                    .map(|s| parse_rat(s).map_err(|e| LieError::BadDescription(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(((b.i, b.j), coeffs))
            })
            .collect::<Result<Vec<_>, LieError>>()?;
        LieAlgebra::from_brackets(parsed.dim, Some(parsed.labels), &entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn unit(dim: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[i] = rat_int(1);
        v
    }

    #[test]
    fn builtins_satisfy_jacobi() {
        for name in BUILTIN_NAMES {
            assert!(builtin(name).unwrap().validate().is_empty(), "{name}");
        }
        assert!(rotation_solvable_3d(&rat(3, 7)).validate().is_empty());
    }

    #[test]
    fn validate_flags_bad_constants() {
        // [e1,e2]=e3, [e1,e3]=e1 is not a Lie algebra; the direct Jacobi
        // evaluation on (e1, e2, e3) is the oracle.
        let alg = LieAlgebra::from_brackets(
            3,
            None,
            &[
                ((0, 1), vec![rat_int(0), rat_int(0), rat_int(1)]),
                ((0, 2), vec![rat_int(1), rat_int(0), rat_int(0)]),
            ],
        )
        .unwrap();
        let violations = alg.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].triple, (0, 1, 2));
        // a perturbation of it stays broken
        let perturbed = LieAlgebra::from_brackets(
            3,
            None,
            &[
                ((0, 1), vec![rat_int(0), rat(1, 3), rat_int(1)]),
                ((0, 2), vec![rat_int(1), rat_int(0), rat_int(0)]),
            ],
        )
        .unwrap();
        assert!(!perturbed.validate().is_empty());
    }

    #[test]
    fn adjoint_matrices() {
        let h3 = heisenberg();
        // central element has zero adjoint
        assert!(h3.adjoint(&unit(3, 2)).unwrap().is_zero());

        // rotation block on (X, Y) for the derivation generator
        let g = oscillator();
        let ad = g.adjoint(&unit(4, 0)).unwrap();
        let expected = RatMatrix::from_i64_rows(&[
            &[0, 0, 0, 0],
            &[0, 0, 1, 0],
            &[0, -1, 0, 0],
            &[0, 0, 0, 0],
        ]);
        assert_eq!(ad, expected);

        // abelian: all adjoints vanish
        let abelian = LieAlgebra::from_brackets(3, None, &[]).unwrap();
        assert!(abelian.adjoint(&unit(3, 1)).unwrap().is_zero());

        assert!(matches!(
            g.adjoint(&unit(3, 0)),
            Err(LieError::DimensionMismatch { want: 4, got: 3 })
        ));
    }

    #[test]
    fn unimodularity() {
        assert!(oscillator().is_unimodular());
        assert!(heisenberg().is_unimodular());
        assert!(r_x_h3().is_unimodular());
        // [X, Y] = Y has trace ad_X = 1
        let affine = LieAlgebra::from_brackets(
            2,
            None,
            &[((0, 1), vec![rat_int(0), rat_int(1)])],
        )
        .unwrap();
        assert!(!affine.is_unimodular());
    }

    #[test]
    fn heisenberg_differential() {
        let ce = heisenberg().ce_complex().unwrap();
        // d e^3 = -e^1∧e^2, other generators closed
        let d1 = ce.diff(1);
        assert_eq!(d1.col(0), vec![rat_int(0), rat_int(0), rat_int(0)]);
        assert_eq!(d1.col(1), vec![rat_int(0), rat_int(0), rat_int(0)]);
        assert_eq!(d1.col(2), vec![rat_int(-1), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn abelian_differentials_vanish() {
        let abelian = LieAlgebra::from_brackets(4, None, &[]).unwrap();
        let ce = abelian.ce_complex().unwrap();
        for p in 0..=4 {
            assert!(ce.diff(p).is_zero());
        }
        assert_eq!(abelian.betti().unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn rotation_solvable_differential() {
        // scale 1: de² = e¹∧e³, de³ = -e¹∧e²
        let ce = rotation_solvable_3d(&rat_int(1)).ce_complex().unwrap();
        let d1 = ce.diff(1);
        // Λ² basis order: e12, e13, e23
        assert_eq!(d1.col(1), vec![rat_int(0), rat_int(1), rat_int(0)]);
        assert_eq!(d1.col(2), vec![rat_int(-1), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn betti_tables() {
        assert_eq!(oscillator().betti().unwrap(), vec![1, 1, 0, 1, 1]);
        assert_eq!(r_x_h3().betti().unwrap(), vec![1, 3, 4, 3, 1]);
        assert_eq!(heisenberg().betti().unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn betti_of_rotation_solvable_is_scale_invariant() {
        let reference = rotation_solvable_3d(&rat_int(1)).betti().unwrap();
        for scale in [rat_int(2), rat(3, 5), rat(-7, 1), rat(1, 12)] {
            assert_eq!(rotation_solvable_3d(&scale).betti().unwrap(), reference);
        }
        assert_eq!(reference.iter().map(|&b| b as i64).sum::<i64>() % 2, 0);
    }

    #[test]
    fn euler_characteristic_vanishes() {
        for name in BUILTIN_NAMES {
            let betti = builtin(name).unwrap().betti().unwrap();
            let chi: i64 = betti
                .iter()
                .enumerate()
                .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(chi, 0, "{name}");
        }
    }

    #[test]
    fn kunneth_for_the_product() {
        // b_p(t x h3) = Σ_{i+j=p} b_i(t) b_j(h3); the line has betti (1, 1)
        let h3 = heisenberg().betti().unwrap();
        let product = r_x_h3().betti().unwrap();
        for (p, &b) in product.iter().enumerate() {
            let mut expect = 0;
            if p < h3.len() {
                expect += h3[p];
            }
            if p >= 1 && p - 1 < h3.len() {
                expect += h3[p - 1];
            }
            assert_eq!(b, expect, "degree {p}");
        }
    }

    #[test]
    fn cohomology_representatives() {
        let ce = heisenberg().ce_complex().unwrap();
        // H² spanned by e^1∧e^3, e^2∧e^3 (basis order e12, e13, e23)
        let reps = ce.cohomology_basis(2).unwrap();
        assert_eq!(reps.len(), 2);
        let span = RatMatrix::from_cols(&reps, 3);
        let expected = RatMatrix::from_i64_rows(&[&[0, 0], &[1, 0], &[0, 1]]);
        // same column span: stacking does not raise the rank
        assert_eq!(span.rank(), 2);
        assert_eq!(span.hstack(&expected).rank(), 2);

        // abelian plane: both dual generators generate H¹
        let abelian = LieAlgebra::from_brackets(2, None, &[]).unwrap();
        let reps = abelian.ce_complex().unwrap().cohomology_basis(1).unwrap();
        assert_eq!(reps.len(), 2);

        assert!(ce.cohomology_basis(9).is_err());
    }

    #[test]
    fn d_squared_is_zero_for_all_builtins() {
        for name in BUILTIN_NAMES {
            let ce = builtin(name).unwrap().ce_complex().unwrap();
            let n = ce.algebra().dim();
            for p in 0..n {
                assert!(ce.diff(p + 1).mul(ce.diff(p)).is_zero(), "{name} at {p}");
            }
        }
    }

    #[test]
    fn solvability_witness() {
        let trials = default_trial_vectors(4, 0, 8);
        // the derivation generator of the oscillator algebra is a witness:
        // char poly x^2 (x^2 + 1) has 1 distinct real root out of 3
        match oscillator().completely_solvable_witness(&trials) {
            SolvabilityVerdict::Witness {
                vector,
                char_poly,
                distinct_real,
                distinct_complex,
            } => {
                assert_eq!(vector, unit(4, 0));
                assert_eq!(
                    char_poly,
                    RatPoly::from_i64_coeffs(&[0, 0, 1, 0, 1])
                );
                assert_eq!((distinct_real, distinct_complex), (1, 3));
            }
            other => panic!("expected witness, got {other:?}"),
        }
        // nilpotent and abelian searches come back inconclusive
        let trials3 = default_trial_vectors(3, 0, 8);
        assert!(!heisenberg().completely_solvable_witness(&trials3).is_witness());
        let abelian = LieAlgebra::from_brackets(3, None, &[]).unwrap();
        assert!(!abelian.completely_solvable_witness(&trials3).is_witness());
    }

    #[test]
    fn json_round_trip() {
        for name in BUILTIN_NAMES {
            let alg = builtin(name).unwrap();
            let json = alg.to_json();
            assert_eq!(LieAlgebra::from_json(&json).unwrap(), alg);
        }
        let bad = serde_json::json!({"dim": 2, "labels": ["a", "b"],
            "brackets": [{"i": 1, "j": 0, "coeffs": ["1", "0"]}]});
        assert!(LieAlgebra::from_json(&bad).is_err());
    }
}
