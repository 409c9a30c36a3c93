//! Multigraded Cox-ring polynomials on the model varieties.
//!
//! The gradings live in the Picard lattice, written as pairs `(k, l)`:
//! `k·u + l·f` on a Hirzebruch surface, `k·u + l·v` on a P²-bundle, and plain
//! degree `(d, 0)` on P¹ and P². Variable degrees:
//!
//! * P¹: `s, t` of degree `(1,0)`
//! * P²: `x, y, z` of degree `(1,0)`
//! * `Y_ℓ`: `y0` of degree `u`, `y1` of degree `u - ℓf`, `w0, w1` of degree `f`
//! * `Y_{a,b}`: `z0` of degree `u`, `z1` of degree `u - av`, `z2` of degree
//!   `u - bv`, `w0, w1` of degree `v`
//!
//! These choices reproduce the splittings `π_*O_π(1) = O ⊕ O(ℓ)` and
//! `π_*O_π(1) = O ⊕ O(a) ⊕ O(b)`: the graded piece of multidegree `(k, l)`
//! has exactly `h⁰` monomials whenever the class is effective.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{format_rational, Rational};
use crate::variety::Variety;

/// Multidegree `(k, l)` in the Picard lattice; `l` is 0 on P¹ and P².
pub type Multidegree = (i64, i64);

/// Degree of one Cox variable.
pub fn var_degree(variety: Variety, var: usize) -> Multidegree {
    match variety {
        Variety::P1 | Variety::P2 => (1, 0),
        Variety::Hirzebruch { ell } => match var {
            0 => (1, 0),
            1 => (1, -(ell as i64)),
            2 | 3 => (0, 1),
            _ => panic!("Hirzebruch has 4 Cox variables"),
        },
        Variety::P2Bundle { a, b } => match var {
            0 => (1, 0),
            1 => (1, -(a as i64)),
            2 => (1, -(b as i64)),
            3 | 4 => (0, 1),
            _ => panic!("P2-bundle has 5 Cox variables"),
        },
    }
}

/// Multidegree of an exponent vector.
pub fn monomial_degree(variety: Variety, exps: &[u32]) -> Multidegree {
    assert_eq!(exps.len(), variety.cox_vars(), "exponent vector length mismatch");
    let mut deg = (0i64, 0i64);
    for (i, &e) in exps.iter().enumerate() {
        let (du, dv) = var_degree(variety, i);
        deg.0 += du * e as i64;
        deg.1 += dv * e as i64;
    }
    deg
}

/// All monomials of the given multidegree, in ascending lexicographic order
/// of the exponent vector. Empty for non-effective classes.
pub fn cox_basis(variety: Variety, degree: Multidegree) -> Vec<Vec<u32>> {
    let (k, l) = degree;
    let mut out = Vec::new();
    match variety {
        Variety::P1 => {
            if l != 0 || k < 0 {
                return out;
            }
            for e0 in 0..=k {
                out.push(vec![e0 as u32, (k - e0) as u32]);
            }
        }
        Variety::P2 => {
            if l != 0 || k < 0 {
                return out;
            }
            for e0 in 0..=k {
                for e1 in 0..=(k - e0) {
                    out.push(vec![e0 as u32, e1 as u32, (k - e0 - e1) as u32]);
                }
            }
        }
        Variety::Hirzebruch { ell } => {
            if k < 0 {
                return out;
            }
            for e0 in 0..=k {
                let e1 = k - e0;
                let m = l + ell as i64 * e1;
                if m < 0 {
                    continue;
                }
                for f0 in 0..=m {
                    out.push(vec![e0 as u32, e1 as u32, f0 as u32, (m - f0) as u32]);
                }
            }
        }
        Variety::P2Bundle { a, b } => {
            if k < 0 {
                return out;
            }
            for e0 in 0..=k {
                for e1 in 0..=(k - e0) {
                    let e2 = k - e0 - e1;
                    let m = l + a as i64 * e1 + b as i64 * e2;
                    if m < 0 {
                        continue;
                    }
                    for f0 in 0..=m {
                        out.push(vec![e0 as u32, e1 as u32, e2 as u32, f0 as u32, (m - f0) as u32]);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxError {
    #[error("Inhomogeneous: term {0:?} has degree {1:?}, expected {2:?}")]
    Inhomogeneous(Vec<u32>, (i64, i64), (i64, i64)),
    #[error("VarietyMismatch: {0} vs {1}")]
    VarietyMismatch(Variety, Variety),
}

/// A homogeneous polynomial in the Cox ring of one model variety.
///
/// Terms are keyed by exponent vector, kept free of zero coefficients, and all
/// share one multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxPolynomial {
    variety: Variety,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl CoxPolynomial {
    pub fn zero(variety: Variety) -> Self {
        Self { variety, terms: BTreeMap::new() }
    }

    pub fn monomial(variety: Variety, exps: Vec<u32>, coeff: Rational) -> Self {
        assert_eq!(exps.len(), variety.cox_vars(), "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Self { variety, terms }
    }

    /// The i-th Cox variable as a polynomial.
    pub fn variable(variety: Variety, var: usize) -> Self {
        let mut exps = vec![0u32; variety.cox_vars()];
        exps[var] = 1;
        Self::monomial(variety, exps, Rational::one())
    }

    pub fn constant(variety: Variety, c: Rational) -> Self {
        Self::monomial(variety, vec![0; variety.cox_vars()], c)
    }

    /// Accumulates terms; fails if the result would be inhomogeneous.
    pub fn from_terms(
        variety: Variety,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, CoxError> {
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        let mut degree: Option<Multidegree> = None;
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), variety.cox_vars(), "exponent vector length mismatch");
            if coeff.is_zero() {
                continue;
            }
            let d = monomial_degree(variety, &exps);
            match degree {
                None => degree = Some(d),
                Some(expect) if expect != d => {
                    return Err(CoxError::Inhomogeneous(exps, d, expect));
                }
                _ => {}
            }
            let slot = map.entry(exps).or_insert_with(Rational::zero);
            *slot += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self { variety, terms: map })
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multidegree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<Multidegree> {
        self.terms.keys().next().map(|e| monomial_degree(self.variety, e))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self, CoxError> {
        if self.variety != other.variety {
            return Err(CoxError::VarietyMismatch(self.variety, other.variety));
        }
        Self::from_terms(
            self.variety,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.variety);
        }
        Self {
            variety: self.variety,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Exact product. Panics on variety mismatch (caller bug); the product of
    /// homogeneous polynomials is homogeneous of the summed multidegree.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.variety, other.variety, "cox multiply across varieties");
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = map.entry(exps).or_insert_with(Rational::zero);
                *slot += ca * cb;
            }
        }
        map.retain(|_, c| !c.is_zero());
        Self { variety: self.variety, terms: map }
    }

    /// Evaluates at a point given by one value per Cox variable.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.variety.cox_vars(), "point length mismatch");
        let mut acc = Rational::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(exps) {
                term *= crate::rational::pow(x, e);
            }
            acc += term;
        }
        acc
    }

    /// Substitutes base coordinates `(w0, w1)` on `Y_{a,b}`, leaving a
    /// polynomial in the fiber coordinates, pushed onto P² via
    /// `(z0,z1,z2) -> (x,y,z)`.
    pub fn restrict_fiber(&self, w0: &Rational, w1: &Rational) -> Self {
        assert!(
            matches!(self.variety, Variety::P2Bundle { .. }),
            "fiber restriction needs a P2-bundle"
        );
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let c = coeff * crate::rational::pow(w0, exps[3]) * crate::rational::pow(w1, exps[4]);
            if c.is_zero() {
                continue;
            }
            let slot = map.entry(vec![exps[0], exps[1], exps[2]]).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { variety: Variety::P2, terms: map }
    }

    /// Restriction to the exceptional line `Λ = {z1 = z2 = 0}` of `Y_{a,b}`.
    ///
    /// Surviving terms are `z0^k w0^f0 w1^f1`; since `Λ ≅ P¹` with coordinates
    /// `(w0, w1)`, the result is a P¹ form of degree `l` (the `v`-part of this
    /// polynomial's multidegree). Degree-`u` entries restrict to constants.
    pub fn restrict_lambda(&self) -> Self {
        assert!(
            matches!(self.variety, Variety::P2Bundle { .. }),
            "Lambda restriction needs a P2-bundle"
        );
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            if exps[1] != 0 || exps[2] != 0 {
                continue;
            }
            map.insert(vec![exps[3], exps[4]], coeff.clone());
        }
        Self { variety: Variety::P1, terms: map }
    }
}

impl fmt::Display for CoxPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.variety.cox_var_names();
        let mut first = true;
        for (exps, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(coeff))?;
            for (i, &e) in exps.iter().enumerate() {
                if e == 1 {
                    write!(f, "*{}", names[i])?;
                } else if e > 1 {
                    write!(f, "*{}^{}", names[i], e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn basis_counts_on_p2_bundle() {
        // graded piece of O_pi(1): 3 + a + b monomials
        for (a, b) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 3)] {
            let v = Variety::p2_bundle(a, b);
            assert_eq!(cox_basis(v, (1, 0)).len() as u32, 3 + a + b, "({a},{b})");
        }
        assert_eq!(cox_basis(Variety::p2_bundle(0, 1), (1, 0)).len(), 4);
    }

    #[test]
    fn basis_of_degree_zero_is_the_constant() {
        for v in [
            Variety::P1,
            Variety::P2,
            Variety::hirzebruch(1),
            Variety::p2_bundle(1, 2),
        ] {
            assert_eq!(cox_basis(v, (0, 0)), vec![vec![0; v.cox_vars()]]);
        }
    }

    #[test]
    fn basis_on_hirzebruch_matches_pushforward_splitting() {
        // h0(O(ku + lf)) = sum_i h0(P1, O(l + i*ell)), the splitting oracle
        for ell in 0..=3u32 {
            let v = Variety::hirzebruch(ell);
            for k in 0..=4i64 {
                for l in -3..=4i64 {
                    let expect: i64 = (0..=k).map(|i| (l + ell as i64 * i + 1).max(0)).sum();
                    assert_eq!(cox_basis(v, (k, l)).len() as i64, expect, "ell={ell} k={k} l={l}");
                }
            }
        }
        assert_eq!(cox_basis(Variety::hirzebruch(1), (1, 1)).len(), 5);
    }

    #[test]
    fn basis_is_empty_for_non_effective() {
        assert!(cox_basis(Variety::P2, (-1, 0)).is_empty());
        assert!(cox_basis(Variety::hirzebruch(2), (2, -20)).is_empty());
        assert!(cox_basis(Variety::p2_bundle(0, 0), (1, -1)).is_empty());
    }

    #[test]
    fn multiply_by_one_and_squares() {
        let v = Variety::p2_bundle(0, 1);
        let z0 = CoxPolynomial::variable(v, 0);
        let one = CoxPolynomial::constant(v, rat(1));
        let p = z0.add(&CoxPolynomial::variable(v, 1)).unwrap();
        assert_eq!(p.multiply(&one), p);
        let sq = z0.multiply(&z0);
        assert_eq!(sq.degree(), Some((2, 0)));
        assert_eq!(sq.coefficient(&[2, 0, 0, 0, 0]), rat(1));
    }

    #[test]
    fn difference_of_squares_by_hand() {
        // (z0 + w0^a z1)(z0 - w0^a z1) = z0^2 - w0^(2a) z1^2 on Y_{a,b}
        let a = 2u32;
        let v = Variety::p2_bundle(a, 3);
        let z0 = CoxPolynomial::variable(v, 0);
        let w0a_z1 = CoxPolynomial::monomial(v, vec![0, 1, 0, a, 0], rat(1));
        let p = z0.add(&w0a_z1).unwrap();
        let q = z0.add(&w0a_z1.neg()).unwrap();
        let prod = p.multiply(&q);
        let expect = CoxPolynomial::from_terms(
            v,
            [
                (vec![2, 0, 0, 0, 0], rat(1)),
                (vec![0, 2, 0, 2 * a, 0], rat(-1)),
            ],
        )
        .unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn multiplication_commutes_and_associates_on_seeded_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let v = Variety::p2_bundle(1, 2);
        let basis = cox_basis(v, (1, 0));
        let random_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
            CoxPolynomial::from_terms(
                v,
                basis.iter().map(|e| (e.clone(), rat(rng.gen_range(-3..=3)))),
            )
            .unwrap()
        };
        for _ in 0..20 {
            let p = random_poly(&mut rng);
            let q = random_poly(&mut rng);
            let r = random_poly(&mut rng);
            assert_eq!(p.multiply(&q), q.multiply(&p));
            assert_eq!(p.multiply(&q).multiply(&r), p.multiply(&q.multiply(&r)));
        }
    }

    #[test]
    fn homogeneity_is_enforced() {
        let v = Variety::hirzebruch(1);
        let err = CoxPolynomial::from_terms(
            v,
            [
                (vec![1, 0, 0, 0], rat(1)), // degree (1, 0)
                (vec![0, 0, 1, 0], rat(1)), // degree (0, 1)
            ],
        );
        assert!(matches!(err, Err(CoxError::Inhomogeneous(..))));
    }

    #[test]
    fn fiber_restriction_kills_w1_terms_at_infinity() {
        let v = Variety::p2_bundle(0, 1);
        // w1 * z2 has degree u
        let p = CoxPolynomial::monomial(v, vec![0, 0, 1, 0, 1], rat(1));
        let at_10 = p.restrict_fiber(&rat(1), &rat(0));
        assert!(at_10.is_zero());
        let at_11 = p.restrict_fiber(&rat(1), &rat(1));
        assert_eq!(at_11.coefficient(&[0, 0, 1]), rat(1));
    }

    #[test]
    fn lambda_restriction_keeps_only_z0_terms() {
        let v = Variety::p2_bundle(1, 2);
        let p = CoxPolynomial::from_terms(
            v,
            [
                (vec![1, 0, 0, 0, 0], rat(5)),
                (vec![0, 1, 0, 1, 0], rat(3)),
                (vec![0, 0, 1, 0, 2], rat(-2)),
            ],
        )
        .unwrap();
        let r = p.restrict_lambda();
        assert_eq!(r.variety(), Variety::P1);
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coefficient(&[0, 0]), rat(5));
    }
}
