//! Solvmanifold cohomology for the three lattice families: the flavor-0
//! manifold carries the cohomology of the product algebra's
//! Chevalley-Eilenberg complex, the covered manifolds take the invariants
//! of the finite deck action on it, and free odd-generated differential
//! algebras provide the minimal models, with quasi-isomorphism checks.
//!
//! The quotient computation happens entirely at the cochain level of the
//! product algebra, where the deck action is linear and commutes with the
//! differential.

use crate::complex::Complex;
use crate::exterior::{monomial_index, monomials, sort_sign};
use crate::lie::{r_x_h3, CeComplex, CohomologyResult};
use crate::matrix::RatMatrix;
use crate::oscillator::{Flavor, LatticeId};
use crate::rational::{format_rat, parse_rat, rat_int, Rat};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("generator `{0}` must have odd degree")]
    EvenDegreeGenerator(String),
    #[error("differential of `{0}` has the wrong degree")]
    DifferentialDegree(String),
    #[error("the differential does not square to zero")]
    DifferentialSquare,
    #[error("assignment for generator `{0}` is not compatible with the differentials")]
    NotACochainMap(String),
    #[error("assignment vector has the wrong length for its degree")]
    AssignmentShape,
    #[error("assignment image is not invariant under the deck action")]
    NotInvariant,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Chevalley-Eilenberg complex of the product algebra, the cochain model
/// of the flavor-0 solvmanifold. Basis labels are `(T, X, Y, Z)` with dual
/// generators `(τ, α, β, γ)` in that order.
pub fn base_complex() -> CeComplex {
    r_x_h3().ce_complex().expect("builtin algebra is Lie")
}

/// Cohomology of the flavor-0 solvmanifold with representatives taken from
/// the product algebra's complex.
pub fn base_cohomology() -> CohomologyResult {
    base_complex().cohomology()
}

/// Degree-1 generator labels of the base complex.
pub const BASE_LABELS: [&str; 4] = ["τ", "α", "β", "γ"];

/// Renders a degree-`p` cochain of the base complex with the dual labels.
pub fn format_base_cochain(p: usize, v: &[Rat]) -> String {
    let monos = monomials(4, p);
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
                .map(|&i| BASE_LABELS[i].to_string())
                .collect::<Vec<_>>()
                .concat()
        };
        let coeff = format_rat(c);
        terms.push(match coeff.as_str() {
            "1" => mono,
            "-1" => format!("-{mono}"),
            _ => format!("{coeff} {mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

// ---------------------------------------------------------------------------
// deck actions

/// Generator of the finite deck group acting on the degree-1 generator
/// space of the base complex, ordered `(τ, α, β, γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckAction {
    pub order: usize,
    pub gen_matrix: RatMatrix,
}

impl DeckAction {
    pub fn trivial() -> Self {
        DeckAction {
            order: 1,
            gen_matrix: RatMatrix::identity(4),
        }
    }

    /// Extension of the generator to degree-`p` cochains by wedge minors.
    pub fn on_cochains(&self, p: usize) -> RatMatrix {
        wedge_power(&self.gen_matrix, p)
    }
}

/// Deck action of the covering onto the flavor's solvmanifold, derived
/// from the rotation on the translation directions: the dual of the
/// flavor's angle rotation, extended by the identity on `τ` and `γ`.
pub fn deck_action(flavor: Flavor) -> DeckAction {
    let period = flavor.period();
    // dual action on coefficient space: transpose of the inverse rotation
    let inv = crate::oscillator::rotation(-period);
    let mut m = RatMatrix::identity(4);
    for i in 0..2 {
        for j in 0..2 {
            m.set(1 + i, 1 + j, rat_int(inv[j][i]));
        }
    }
    let order = match flavor {
        Flavor::Zero => 1,
        Flavor::Pi => 2,
        Flavor::PiHalf => 4,
    };
    let action = DeckAction {
        order,
        gen_matrix: m,
    };
    debug_assert!(action_is_valid(&action));
    action
}

/// `gen_matrix^order = 1` and the wedge extension commutes with the base
/// differential in every degree.
pub fn action_is_valid(action: &DeckAction) -> bool {
    let mut power = RatMatrix::identity(4);
    for _ in 0..action.order {
        power = power.mul(&action.gen_matrix);
    }
    if power != RatMatrix::identity(4) {
        return false;
    }
    let base = base_complex();
    (0..4).all(|p| {
        let a_p = action.on_cochains(p);
        let a_next = action.on_cochains(p + 1);
        a_next.mul(base.diff(p)) == base.diff(p).mul(&a_p)
    })
}

/// `p`-th exterior power of a square matrix: the matrix of `p`-minors on
/// the lexicographic monomial bases.
pub fn wedge_power(m: &RatMatrix, p: usize) -> RatMatrix {
    let n = m.rows();
    let basis = monomials(n, p);
    let mut out = RatMatrix::zeros(basis.len(), basis.len());
    for (col, s) in basis.iter().enumerate() {
        for (row, t) in basis.iter().enumerate() {
            let mut minor = RatMatrix::zeros(p, p);
            for (a, &ti) in t.iter().enumerate() {
                for (b, &sj) in s.iter().enumerate() {
                    minor.set(a, b, m.at(ti, sj).clone());
                }
            }
            out.set(row, col, minor.det());
        }
    }
    out
}

/// Matrix of the deck generator on `H^p`, in the representative basis of
/// the base complex: extend to cochains by wedge minors, push the
/// representatives through, and reduce modulo coboundaries.
pub fn induced_action(action: &DeckAction, p: usize) -> RatMatrix {
    let base = base_complex();
    let reps = base.cohomology_basis(p).expect("degree in range");
    let on_cochains = action.on_cochains(p);
    let cols: Vec<Vec<Rat>> = reps
        .iter()
        .map(|r| {
            base.complex()
                .express_in_cohomology(p, &on_cochains.mul_vec(r))
                .expect("deck action preserves cocycles")
        })
        .collect();
    RatMatrix::from_cols(&cols, reps.len())
}

/// Averaging projector `(1/order) Σ ρ^i` for the induced action on `H^p`.
pub fn averaging_projector(action: &DeckAction, p: usize) -> RatMatrix {
    let rho = induced_action(action, p);
    let n = rho.rows();
    let mut power = RatMatrix::identity(n);
    let mut sum = RatMatrix::zeros(n, n);
    for _ in 0..action.order {
        sum = sum.add(&power);
        power = power.mul(&rho);
    }
    sum.scale(&(rat_int(1) / rat_int(action.order as i64)))
}

/// Betti numbers of the quotient: fixed-subspace dimensions of the cyclic
/// deck group on each `H^p`.
pub fn invariant_betti(action: &DeckAction) -> Vec<usize> {
    (0..=4).map(|p| averaging_projector(action, p).rank()).collect()
}

/// Betti numbers of the solvmanifold named by the lattice; the result only
/// depends on the flavor.
pub fn solvmanifold_betti(lattice: LatticeId) -> Vec<usize> {
    match lattice.flavor {
        Flavor::Zero => base_complex().betti(),
        flavor => invariant_betti(&deck_action(flavor)),
    }
}

/// Poincaré duality `b_p = b_{4-p}` plus vanishing Euler characteristic.
pub fn duality_checks(betti: &[usize]) -> bool {
    betti.len() == 5
        && (0..5).all(|p| betti[p] == betti[4 - p])
        && betti
            .iter()
            .enumerate()
            .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum::<i64>()
            == 0
}

// ---------------------------------------------------------------------------
// invariant subcomplex

/// The fixed subcomplex of the base complex under a deck action, carried
/// by explicit inclusion matrices per degree.
pub struct InvariantComplex {
    pub complex: Complex,
    /// Columns of `inclusions[p]` are the invariant basis vectors inside
    /// the ambient degree-`p` cochain space.
    pub inclusions: Vec<RatMatrix>,
}

impl InvariantComplex {
    /// Coordinates of an ambient cochain inside the invariant basis;
    /// `None` when the vector is not invariant.
    pub fn restrict(&self, p: usize, v: &[Rat]) -> Option<Vec<Rat>> {
        let coords = self.inclusions[p].solve(v)?;
        (self.inclusions[p].mul_vec(&coords) == v).then_some(coords)
    }
}

/// Builds the invariant subcomplex by averaging at the cochain level.
pub fn invariant_subcomplex(action: &DeckAction) -> InvariantComplex {
    let base = base_complex();
    let mut inclusions = Vec::new();
    for p in 0..=4 {
        // cochain-level projector
        let dim = base.complex().dim(p);
        let mut sum = RatMatrix::zeros(dim, dim);
        let mut power = RatMatrix::identity(dim);
        let rho = action.on_cochains(p);
        for _ in 0..action.order {
            sum = sum.add(&power);
            power = power.mul(&rho);
        }
        let projector = sum.scale(&(rat_int(1) / rat_int(action.order as i64)));
        // independent columns of the projector span the invariants
        let mut chosen: Vec<Vec<Rat>> = Vec::new();
        let mut span = RatMatrix::zeros(dim, 0);
        for j in 0..dim {
            let col = projector.col(j);
            let candidate = span.hstack(&RatMatrix::from_cols(&[col.clone()], dim));
            if candidate.rank() > span.rank() {
                span = candidate;
                chosen.push(col);
            }
        }
        inclusions.push(RatMatrix::from_cols(&chosen, dim));
    }
    let dims: Vec<usize> = inclusions.iter().map(RatMatrix::cols).collect();
    let mut diffs = Vec::new();
    for p in 0..4 {
        let mut cols = Vec::new();
        for j in 0..dims[p] {
            let ambient = base.diff(p).mul_vec(&inclusions[p].col(j));
            let restricted = inclusions[p + 1]
                .solve(&ambient)
                .expect("differential preserves invariants");
            cols.push(restricted);
        }
        diffs.push(RatMatrix::from_cols(&cols, dims[p + 1]));
    }
    let complex = Complex::new(dims, diffs).expect("restricted differential squares to zero");
    InvariantComplex {
        complex,
        inclusions,
    }
}

// ---------------------------------------------------------------------------
// free odd-generated differential algebras (minimal models)

/// Sum of rational multiples of square-free generator monomials, each
/// monomial a sorted list of generator indices.
pub type CdgaElement = Vec<(Rat, Vec<usize>)>;

/// Free graded-commutative algebra on odd-degree generators with a
/// differential; finite-dimensional because every odd generator squares
/// to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct OddCdga {
    pub generators: Vec<(String, usize)>,
    /// `diffs[i]` is `d(generator i)`, a combination of monomials of
    /// degree `deg(g_i) + 1`.
    pub diffs: Vec<CdgaElement>,
}

impl OddCdga {
    pub fn new(
        generators: Vec<(String, usize)>,
        diffs: Vec<CdgaElement>,
    ) -> Result<Self, TopologyError> {
        assert_eq!(generators.len(), diffs.len(), "one differential per generator");
        for (name, degree) in &generators {
            if degree % 2 == 0 {
                return Err(TopologyError::EvenDegreeGenerator(name.clone()));
            }
        }
        let cdga = OddCdga { generators, diffs };
        for (i, d) in cdga.diffs.iter().enumerate() {
            let want = cdga.generators[i].1 + 1;
            for (_, mono) in d {
                if cdga.monomial_degree(mono) != want {
                    return Err(TopologyError::DifferentialDegree(
                        cdga.generators[i].0.clone(),
                    ));
                }
            }
        }
        Ok(cdga)
    }

    fn monomial_degree(&self, mono: &[usize]) -> usize {
        mono.iter().map(|&i| self.generators[i].1).sum()
    }

    /// Top total degree: the product of all generators.
    pub fn top_degree(&self) -> usize {
        self.generators.iter().map(|&(_, d)| d).sum()
    }

    /// Monomial bases per total degree: all square-free products, sorted
    /// lexicographically within a degree.
    pub fn graded_bases(&self) -> Vec<Vec<Vec<usize>>> {
        let g = self.generators.len();
        let mut bases = vec![Vec::new(); self.top_degree() + 1];
        for mask in 0u32..(1 << g) {
            let mono: Vec<usize> = (0..g).filter(|&i| mask & (1 << i) != 0).collect();
            bases[self.monomial_degree(&mono)].push(mono);
        }
        for b in &mut bases {
            b.sort();
        }
        bases
    }

    /// Product of two monomials: `None` when a generator repeats, else the
    /// sorted monomial with the permutation sign (all generators are odd,
    /// so graded commutativity is plain anticommutativity).
    fn mono_mul(a: &[usize], b: &[usize]) -> Option<(i32, Vec<usize>)> {
        let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
        let sign = sort_sign(&mut idx)?;
        Some((sign, idx))
    }

    /// `d` of a monomial by the graded Leibniz rule.
    fn mono_diff(&self, mono: &[usize]) -> CdgaElement {
        let mut out: CdgaElement = Vec::new();
        for (slot, &gen) in mono.iter().enumerate() {
            // preceding generators are odd, so the Koszul sign is (-1)^slot
            let slot_sign = if slot % 2 == 0 { 1 } else { -1 };
            for (coeff, dmono) in &self.diffs[gen] {
                let prefix: Vec<usize> = mono[..slot].to_vec();
                let suffix: Vec<usize> = mono[slot + 1..].to_vec();
                let Some((s1, merged)) = Self::mono_mul(&prefix, dmono) else {
                    continue;
                };
                let Some((s2, full)) = Self::mono_mul(&merged, &suffix) else {
                    continue;
                };
                out.push((coeff * rat_int((slot_sign * s1 * s2) as i64), full));
            }
        }
        normalize_element(out)
    }

    /// The underlying cochain complex graded by total degree; fails when
    /// the extended derivation does not square to zero.
    pub fn complex(&self) -> Result<Complex, TopologyError> {
        let bases = self.graded_bases();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let top = self.top_degree();
        let mut diffs = Vec::new();
        for p in 0..top {
            let mut d = RatMatrix::zeros(dims[p + 1], dims[p]);
            for (col, mono) in bases[p].iter().enumerate() {
                for (coeff, target) in self.mono_diff(mono) {
                    let row = bases[p + 1]
                        .iter()
                        .position(|m| *m == target)
                        .expect("derivation raises degree by one");
                    let v = d.at(row, col) + coeff;
                    d.set(row, col, v);
                }
            }
            diffs.push(d);
        }
        Complex::new(dims, diffs).map_err(|_| TopologyError::DifferentialSquare)
    }

    /// Betti numbers of the algebra.
    pub fn cohomology(&self) -> Result<Vec<usize>, TopologyError> {
        Ok(self.complex()?.betti())
    }

    /// Parses the text form, e.g.
    /// `gen x1:1 y1:1 z1:1 t1:1; d z1 = -x1*y1;`.
    ///
    /// Unlisted differentials default to zero; a term is an optional
    /// rational coefficient and a `*`-joined monomial, terms combined
    /// with `+` and `-`.
    pub fn parse(text: &str) -> Result<Self, TopologyError> {
        let mut generators: Vec<(String, usize)> = Vec::new();
        let mut pending: Vec<(String, String)> = Vec::new();
        for stmt in text.split(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            if let Some(rest) = stmt.strip_prefix("gen ") {
                for item in rest.split_whitespace() {
                    let (name, degree) = item
                        .split_once(':')
                        .ok_or_else(|| TopologyError::Parse(format!("bad generator `{item}`")))?;
                    let degree: usize = degree
                        .parse()
                        .map_err(|_| TopologyError::Parse(format!("bad degree in `{item}`")))?;
                    generators.push((name.to_string(), degree));
                }
            } else if let Some(rest) = stmt.strip_prefix("d ") {
                let (name, expr) = rest
                    .split_once('=')
                    .ok_or_else(|| TopologyError::Parse(format!("missing `=` in `{stmt}`")))?;
                pending.push((name.trim().to_string(), expr.trim().to_string()));
            } else {
                return Err(TopologyError::Parse(format!(
                    "expected `gen` or `d`, found `{stmt}`"
                )));
            }
        }
        let index_of = |name: &str| -> Result<usize, TopologyError> {
            generators
                .iter()
                .position(|(n, _)| n == name)
                .ok_or_else(|| TopologyError::Parse(format!("unknown generator `{name}`")))
        };
        let mut diffs: Vec<CdgaElement> = vec![Vec::new(); generators.len()];
        for (name, expr) in pending {
            let target = index_of(&name)?;
            diffs[target] = parse_cdga_element(&expr, &index_of)?;
        }
        OddCdga::new(generators, diffs)
    }

    /// Text form accepted back by [`OddCdga::parse`].
    pub fn render(&self) -> String {
        let mut out = format!(
            "gen {};",
            self.generators
                .iter()
                .map(|(n, d)| format!("{n}:{d}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
        for (i, d) in self.diffs.iter().enumerate() {
            if d.is_empty() {
                continue;
            }
            out.push_str(&format!(
                " d {} = {};",
                self.generators[i].0,
                self.format_element(d)
            ));
        }
        out
    }

    pub fn format_element(&self, element: &CdgaElement) -> String {
        if element.is_empty() {
            return "0".into();
        }
        element
            .iter()
            .map(|(c, mono)| {
                let names = mono
                    .iter()
                    .map(|&i| self.generators[i].0.clone())
                    .collect::<Vec<_>>()
                    .join("*");
                match format_rat(c).as_str() {
                    "1" => names,
                    "-1" => format!("-{names}"),
                    c => format!("{c}*{names}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn normalize_element(element: CdgaElement) -> CdgaElement {
    let mut map: std::collections::BTreeMap<Vec<usize>, Rat> = Default::default();
    for (c, mono) in element {
        *map.entry(mono).or_insert_with(Rat::zero) += c;
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(mono, c)| (c, mono))
        .collect()
}

fn parse_cdga_element(
    expr: &str,
    index_of: &dyn Fn(&str) -> Result<usize, TopologyError>,
) -> Result<CdgaElement, TopologyError> {
    let mut compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(Vec::new());
    }
    if !compact.starts_with('+') && !compact.starts_with('-') {
        compact.insert(0, '+');
    }
    // each term starts at its sign and runs to the next one
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut chars = compact.chars().peekable();
    while let Some(sign_ch) = chars.next() {
        let sign = match sign_ch {
            '+' => 1,
            '-' => -1,
            _ => return Err(TopologyError::Parse(format!("malformed `{expr}`"))),
        };
        let mut body = String::new();
        while let Some(&c) = chars.peek() {
            if c == '+' || c == '-' {
                break;
            }
            body.push(c);
            chars.next();
        }
        if body.is_empty() {
            return Err(TopologyError::Parse(format!("dangling sign in `{expr}`")));
        }
        terms.push((sign, body));
    }
    let mut out: CdgaElement = Vec::new();
    for (sign, term) in &terms {
        let mut coeff = rat_int(*sign);
        let mut mono = Vec::new();
        for part in term.split('*') {
            if let Ok(idx) = index_of(part) {
                mono.push(idx);
            } else if let Ok(r) = parse_rat(part) {
                coeff *= r;
            } else {
                return Err(TopologyError::Parse(format!("bad factor `{part}`")));
            }
        }
        if mono.is_empty() {
            return Err(TopologyError::Parse(format!(
                "constant term `{term}` is not a monomial"
            )));
        }
        let mut sorted = mono.clone();
        let s = sort_sign(&mut sorted)
            .ok_or_else(|| TopologyError::Parse(format!("repeated generator in `{term}`")))?;
        out.push((coeff * rat_int(s as i64), sorted));
    }
    Ok(normalize_element(out))
}

/// The free algebra on four degree-1 generators with `d z1 = -x1 y1`: the
/// minimal model of the flavor-0 solvmanifold.
pub fn minimal_model_kodaira() -> OddCdga {
    OddCdga::parse("gen x1:1 y1:1 z1:1 t1:1; d z1 = -x1*y1;").unwrap()
}

/// The free algebra on `t1` (degree 1) and `w3` (degree 3) with zero
/// differential: the minimal model of both covered solvmanifolds.
pub fn minimal_model_quotient() -> OddCdga {
    OddCdga::parse("gen t1:1 w3:3;").unwrap()
}

// ---------------------------------------------------------------------------
// quasi-isomorphism verification

/// Images of the model generators as cochain vectors of the base complex,
/// one per generator, at the generator's degree.
pub type CdgaAssignment = Vec<Vec<Rat>>;

/// `x1 -> α, y1 -> β, z1 -> γ, t1 -> τ` for the flavor-0 model.
pub fn kodaira_assignment() -> CdgaAssignment {
    let unit = |i: usize| {
        let mut v = vec![Rat::zero(); 4];
        v[i] = Rat::one();
        v
    };
    vec![unit(1), unit(2), unit(3), unit(0)]
}

/// `t1 -> τ, w3 -> αβγ` for the quotient model.
pub fn quotient_assignment() -> CdgaAssignment {
    let mut tau = vec![Rat::zero(); 4];
    tau[0] = Rat::one();
    let mut abc = vec![Rat::zero(); 4];
    abc[monomial_index(4, &[1, 2, 3])] = Rat::one();
    vec![tau, abc]
}

/// Target of a quasi-isomorphism check: the full base complex for the
/// flavor-0 manifold, or the deck-invariant subcomplex for the covered
/// ones. Assignment vectors are always given in ambient cochain
/// coordinates.
struct Target {
    complex: Complex,
    inclusions: Option<Vec<RatMatrix>>,
}

impl Target {
    fn for_lattice(lattice: LatticeId) -> Target {
        match lattice.flavor {
            Flavor::Zero => Target {
                complex: base_complex().complex().clone(),
                inclusions: None,
            },
            flavor => {
                let inv = invariant_subcomplex(&deck_action(flavor));
                Target {
                    complex: inv.complex,
                    inclusions: Some(inv.inclusions),
                }
            }
        }
    }

    fn restrict(&self, p: usize, v: &[Rat]) -> Result<Vec<Rat>, TopologyError> {
        match &self.inclusions {
            None => Ok(v.to_vec()),
            Some(inc) => {
                let coords = inc[p].solve(v).ok_or(TopologyError::NotInvariant)?;
                if inc[p].mul_vec(&coords) != v {
                    return Err(TopologyError::NotInvariant);
                }
                Ok(coords)
            }
        }
    }
}

/// Checks that the generator assignment induces an isomorphism on
/// cohomology from the model onto the solvmanifold's complex: the
/// assignment must be a cochain map on generators, and in every degree the
/// images of a model cohomology basis must stay independent modulo
/// coboundaries while the Betti numbers agree.
pub fn quasi_iso_check(
    model: &OddCdga,
    lattice: LatticeId,
    assignment: &CdgaAssignment,
) -> Result<bool, TopologyError> {
    assert_eq!(
        assignment.len(),
        model.generators.len(),
        "one image per generator"
    );
    let target = Target::for_lattice(lattice);
    for (i, v) in assignment.iter().enumerate() {
        let p = model.generators[i].1;
        if p > 4 || v.len() != crate::exterior::binomial(4, p) {
            return Err(TopologyError::AssignmentShape);
        }
        // the image must live in the target (invariance, for quotients)
        target.restrict(p, v)?;
    }

    // ambient image of a model monomial: wedge of the generator images
    let map_mono = |mono: &[usize]| -> (usize, Vec<Rat>) {
        let factors: Vec<(usize, Vec<Rat>)> = mono
            .iter()
            .map(|&i| (model.generators[i].1, assignment[i].clone()))
            .collect();
        crate::exterior::wedge_many(4, &factors)
    };
    let map_element = |element: &CdgaElement, degree: usize| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); crate::exterior::binomial(4, degree)];
        for (c, mono) in element {
            let (d, v) = map_mono(mono);
            debug_assert_eq!(d, degree);
            for (slot, value) in v.iter().enumerate() {
                out[slot] += c * value;
            }
        }
        out
    };

    // cochain-map condition on generators: d φ(g) = φ(d g)
    let ambient = base_complex();
    for (i, (name, degree)) in model.generators.iter().enumerate() {
        let lhs = ambient.diff(*degree).mul_vec(&assignment[i]);
        let rhs = map_element(&model.diffs[i], degree + 1);
        if lhs != rhs {
            return Err(TopologyError::NotACochainMap(name.clone()));
        }
    }

    let model_complex = model.complex()?;
    let model_betti = model_complex.betti();
    let target_betti = target.complex.betti();
    let model_bases = model.graded_bases();
    let top = model_complex.top().max(target.complex.top());
    for p in 0..=top {
        let mb = model_betti.get(p).copied().unwrap_or(0);
        let tb = target_betti.get(p).copied().unwrap_or(0);
        if mb != tb {
            return Ok(false);
        }
        if mb == 0 {
            continue;
        }
        // push a model cohomology basis through the map
        let reps = model_complex.cohomology_basis(p).expect("degree in range");
        let mut span = target.complex.coboundary_matrix(p);
        let base_rank = span.rank();
        for rep in &reps {
            let element: CdgaElement = rep
                .iter()
                .zip(&model_bases[p])
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, mono)| (c.clone(), mono.clone()))
                .collect();
            let ambient_image = map_element(&element, p);
            let restricted = target.restrict(p, &ambient_image)?;
            if !target.complex.is_cocycle(p, &restricted) {
                return Err(TopologyError::NotACochainMap(format!("degree {p}")));
            }
            span = span.hstack(&RatMatrix::from_cols(
                &[restricted],
                target.complex.dim(p),
            ));
        }
        // independent modulo coboundaries, and spanning because mb == tb
        if span.rank() != base_rank + reps.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
