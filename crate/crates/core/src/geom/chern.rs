//! Chern characters, resolutions, Riemann-Roch and the pushforward to P¹.

use num_traits::One;

use crate::rational::{rat, ratio, Rational};
use crate::variety::Variety;

use super::chow::{relative_todd_total, todd_total, ChowClass, GeomError};

/// Chern character of a (virtual) sheaf, stored as one mixed-degree class
/// `ch₀·1 + ch₁ + ch₂ + ch₃`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    ch: ChowClass,
}

impl ChernData {
    pub fn from_total(ch: ChowClass) -> Self {
        Self { ch }
    }

    /// Assembles ch from rank and Chern classes `c1, c2, c3`.
    pub fn from_chern_classes(
        variety: Variety,
        rank: Rational,
        c1: &ChowClass,
        c2: &ChowClass,
        c3: &ChowClass,
    ) -> Result<Self, GeomError> {
        for (d, c) in [(1usize, c1), (2, c2), (3, c3)] {
            if !c.is_pure_of_degree(d) {
                return Err(GeomError::DegreeMismatch(format!("c{d} = {c} is not pure of degree {d}")));
            }
        }
        let c1sq = c1.intersect(c1)?;
        let ch2 = c1sq.sub(&c2.scale(&rat(2)))?.scale(&ratio(1, 2));
        // ch3 = (c1^3 - 3 c1 c2 + 3 c3)/6
        let c1cu = c1sq.intersect(c1)?;
        let ch3 = c1cu
            .sub(&c1.intersect(c2)?.scale(&rat(3)))?
            .add(&c3.scale(&rat(3)))?
            .scale(&ratio(1, 6));
        let ch = ChowClass::one(variety)
            .scale(&rank)
            .add(c1)?
            .add(&ch2)?
            .add(&ch3)?;
        Ok(Self { ch })
    }

    /// Chern character of the line bundle `O(D)`.
    pub fn line_bundle(divisor: &ChowClass) -> Result<Self, GeomError> {
        Ok(Self { ch: divisor.exp_divisor()? })
    }

    pub fn variety(&self) -> Variety {
        self.ch.variety()
    }

    pub fn total(&self) -> &ChowClass {
        &self.ch
    }

    pub fn rank(&self) -> Rational {
        self.ch.coeff(0).clone()
    }

    pub fn ch_part(&self, d: usize) -> ChowClass {
        self.ch.graded_part(d)
    }

    pub fn add(&self, other: &Self) -> Result<Self, GeomError> {
        Ok(Self { ch: self.ch.add(&other.ch)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GeomError> {
        Ok(Self { ch: self.ch.sub(&other.ch)? })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { ch: self.ch.scale(c) }
    }

    /// Tensoring with a line bundle multiplies ch by `exp` of its class.
    pub fn twist(&self, divisor: &ChowClass) -> Result<Self, GeomError> {
        Ok(Self { ch: self.ch.intersect(&divisor.exp_divisor()?)? })
    }

    /// First Chern class.
    pub fn c1(&self) -> ChowClass {
        self.ch.graded_part(1)
    }

    /// `c2 = c1²/2 - ch2`.
    pub fn c2(&self) -> ChowClass {
        let c1 = self.c1();
        let c1sq = c1.intersect(&c1).unwrap();
        c1sq.scale(&ratio(1, 2)).sub(&self.ch_part(2)).unwrap()
    }

    /// `c3 = 2·ch3 - c1³/3 + c1·c2`.
    pub fn c3(&self) -> ChowClass {
        let c1 = self.c1();
        let c1sq = c1.intersect(&c1).unwrap();
        let c1cu = c1sq.intersect(&c1).unwrap();
        self.ch_part(3)
            .scale(&rat(2))
            .sub(&c1cu.scale(&ratio(1, 3)))
            .unwrap()
            .add(&c1.intersect(&self.c2()).unwrap())
            .unwrap()
    }
}

/// Chern data of a complex built from line bundles: `ch = Σ sign·exp(class)`.
///
/// Each term is a signed line-bundle class on one common variety; signs are
/// ±1 and multiplicity is expressed by repeating terms (or scaling).
pub fn chern_from_resolution(terms: &[(i32, ChowClass)]) -> Result<ChernData, GeomError> {
    let variety = terms
        .first()
        .map(|(_, c)| c.variety())
        .ok_or_else(|| GeomError::WrongVariety("empty resolution".into()))?;
    let mut acc = ChowClass::zero(variety);
    for (sign, class) in terms {
        assert!(sign.abs() == 1, "signs must be ±1");
        if class.variety() != variety {
            return Err(GeomError::VarietyMismatch(variety, class.variety()));
        }
        let e = class.exp_divisor()?;
        acc = if *sign > 0 { acc.add(&e)? } else { acc.sub(&e)? };
    }
    Ok(ChernData::from_total(acc))
}

/// Euler characteristic by Riemann-Roch: the degree of `(ch · Td)_top`.
///
/// Fails with `NonIntegralResult` when the answer is not an integer, which
/// signals inconsistent input Chern data.
pub fn euler_characteristic(ch: &ChernData) -> Result<Rational, GeomError> {
    let td = todd_total(ch.variety());
    let chi = ch.total().intersect(&td)?.top_coeff();
    if !chi.denom().is_one() {
        return Err(GeomError::NonIntegralResult(format!("chi = {chi}")));
    }
    Ok(chi)
}

/// Grothendieck-Riemann-Roch pushforward to P¹:
/// `ch(π_! F) = π_*(ch(F) · Td(T_π))`.
///
/// `π_*` drops the cohomological degree by twice the fiber dimension; in the
/// normal-form bases it reads off the `u`-coefficient (Hirzebruch) or the
/// `u²`-coefficient (P²-bundle) as the new rank and keeps the point class.
pub fn grr_pushforward(ch: &ChernData) -> Result<ChernData, GeomError> {
    let variety = ch.variety();
    if !variety.is_fibred() {
        return Err(GeomError::WrongVariety(format!(
            "grr_pushforward needs a fibred variety, got {variety}"
        )));
    }
    let td_pi = relative_todd_total(variety);
    let prod = ch.total().intersect(&td_pi)?;
    let (rank, deg) = match variety {
        // basis 1, u, f, pt: pi_* u = 1, pi_* f = 0, pi_* pt = pt
        Variety::Hirzebruch { .. } => (prod.coeff(1).clone(), prod.coeff(3).clone()),
        // basis 1, u, v, u^2, uv, pt: pi_* u^2 = 1, pi_* uv = 0, pi_* pt = pt
        Variety::P2Bundle { .. } => (prod.coeff(3).clone(), prod.coeff(5).clone()),
        _ => unreachable!(),
    };
    let total = ChowClass::one(Variety::P1)
        .scale(&rank)
        .add(&ChowClass::point(Variety::P1).scale(&deg))?;
    Ok(ChernData::from_total(total))
}
