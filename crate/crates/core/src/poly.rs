//! Univariate polynomials over the rationals, with the Sturm real-root
//! count used by the complete-solvability witness search.

use crate::rational::{sign, Rat};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no root count")]
    ZeroPolynomial,
}

/// Polynomial with rational coefficients, ascending degree, trailing zeros
/// trimmed. The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| crate::rational::rat_int(c)).collect())
    }

    /// `x - root`
    pub fn linear(root: &Rat) -> Self {
        Self::from_coeffs(vec![-root.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division, `divisor` nonzero.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        if rem.len() < dlen {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dlen + 1];
        let lead = divisor.leading().unwrap().clone();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dlen - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &c * d;
            }
            quot[k] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * crate::rational::rat_int(i as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                RatPoly {
                    coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
                }
            }
        }
    }

    /// `p / gcd(p, p')`: same roots, all simple. Its degree is the number
    /// of distinct complex roots.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Number of distinct real roots via the canonical Sturm chain,
    /// evaluated at -inf and +inf through leading-coefficient signs.
    pub fn sturm_real_root_count(&self) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(0);
        }
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            chain.push(r.neg());
        }
        chain.pop(); // drop the zero tail

        let sign_at = |p: &RatPoly, at_plus_inf: bool| -> i32 {
            let s = sign(p.leading().unwrap());
            let deg = p.degree().unwrap();
            if at_plus_inf || deg % 2 == 0 {
                s
            } else {
                -s
            }
        };
        let variations = |at_plus_inf: bool| -> usize {
            let signs: Vec<i32> = chain
                .iter()
                .map(|p| sign_at(p, at_plus_inf))
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        Ok(variations(false) - variations(true))
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = crate::rational::format_rat(c);
                match i {
                    0 => c,
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use proptest::prelude::*;

    #[test]
    fn sturm_basics() {
        // x^2 + 1: no real roots
        let p = RatPoly::from_i64_coeffs(&[1, 0, 1]);
        assert_eq!(p.sturm_real_root_count().unwrap(), 0);
        // x^2 - 1: two
        let p = RatPoly::from_i64_coeffs(&[-1, 0, 1]);
        assert_eq!(p.sturm_real_root_count().unwrap(), 2);
        // x^2 (x^2 + 1): just the root 0; the oracle is the rational root 0
        // by inspection plus the Sturm count of the cofactor x^2 + 1.
        let p = RatPoly::from_i64_coeffs(&[0, 0, 1, 0, 1]);
        let cofactor = RatPoly::from_i64_coeffs(&[1, 0, 1]);
        assert_eq!(cofactor.sturm_real_root_count().unwrap(), 0);
        assert_eq!(p.sturm_real_root_count().unwrap(), 1);
        // squarefree degree counts distinct complex roots
        assert_eq!(p.squarefree_part().degree(), Some(3));
    }

    #[test]
    fn sturm_rejects_zero() {
        assert_eq!(
            RatPoly::zero().sturm_real_root_count(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn gcd_and_division() {
        let p = RatPoly::from_i64_coeffs(&[-1, 0, 1]); // (x-1)(x+1)
        let q = RatPoly::from_i64_coeffs(&[-1, 1]); // x - 1
        assert_eq!(p.gcd(&q), q.monic());
        let (quot, rem) = p.div_rem(&q);
        assert!(rem.is_zero());
        assert_eq!(quot, RatPoly::from_i64_coeffs(&[1, 1]));
    }

    proptest! {
        // Sturm count of a product of distinct linear factors equals the
        // number of factors.
        #[test]
        fn sturm_counts_distinct_linear_factors(mut roots in proptest::collection::btree_set(-20i64..20, 1..5)) {
            let mut p = RatPoly::one();
            let count = roots.len();
            for r in std::mem::take(&mut roots) {
                p = p.mul(&RatPoly::linear(&rat_int(r)));
            }
            prop_assert_eq!(p.sturm_real_root_count().unwrap(), count);
        }

        #[test]
        fn div_rem_reconstructs(a in proptest::collection::vec(-9i64..9, 0..6),
                                b in proptest::collection::vec(-9i64..9, 1..4)) {
            let p = RatPoly::from_i64_coeffs(&a);
            let d = RatPoly::from_i64_coeffs(&b);
            prop_assume!(!d.is_zero());
            let (q, r) = p.div_rem(&d);
            prop_assert_eq!(q.mul(&d).add(&r), p);
            prop_assert!(r.is_zero() || r.degree() < d.degree());
        }
    }
}
