//! Slopes and stability thresholds for polarizations `L_c = L + c·π*A`.
//!
//! A [`FibrationFrame`] fixes the fibration data: the ample class `A` pulled
//! back from the base, the polarization direction `L`, and the two
//! normalizing intersection numbers
//! `a_num = A^{d_X} L^{d_Y-d_X}` and `al_num = A^{d_X-1} L^{d_Y-d_X+1}`.
//! Every occurrence of "A^{d_X}" in the threshold formulas is evaluated as
//! `a_num`; on the standard frames (`A` the fiber class, `L = O_π(1)`) this
//! number is 1 and the formulas specialize to the familiar `r(r-1)n` and
//! `r(r-1)n(a+b)` bounds.
//!
//! Thresholds are exact rationals; whether "c > threshold" is strict is the
//! caller's business.

use num_traits::Zero;

use crate::geom::{ChernData, ChowClass, GeomError};
use crate::rational::{rat, Rational};
use crate::variety::Variety;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("NotFibred: {0} has no fibration frame")]
    NotFibred(Variety),
    #[error("NonzeroC1: threshold_cF requires c1 = 0 (use threshold_cF_prime)")]
    NonzeroC1,
    #[error("RankOne: bounds require rank >= 2")]
    RankOne,
    #[error("UnsupportedBaseDimension: d_X = {0} (only 1 and 2)")]
    UnsupportedBaseDimension(u32),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Numerical fibration data of `π : Y → P¹`.
#[derive(Debug, Clone)]
pub struct FibrationFrame {
    variety: Variety,
    d_x: u32,
    d_y: u32,
    a_class: ChowClass,
    l_class: ChowClass,
    /// `A^{d_X} L^{d_Y - d_X}`
    a_num: Rational,
    /// `A^{d_X - 1} L^{d_Y - d_X + 1}`
    al_num: Rational,
    /// `A^{d_X - 1} L^{d_Y - d_X - 1}`, the bracket weight
    bracket_class: ChowClass,
    /// `A^{d_X - 1} L^{d_Y - d_X}`, pairing divisors to the c⁰ slope part
    slope_base: ChowClass,
    /// `A^{d_X} L^{d_Y - d_X - 1}`, pairing divisors to the fiber slope
    slope_fiber: ChowClass,
}

impl FibrationFrame {
    /// The standard frame: `A` the pullback of `O_{P¹}(1)`, `L = O_π(1)`.
    pub fn standard(variety: Variety) -> Result<Self, StabilityError> {
        if !variety.is_fibred() {
            return Err(StabilityError::NotFibred(variety));
        }
        Self::new(
            variety,
            ChowClass::divisor(variety, (0, 1)),
            ChowClass::divisor(variety, (1, 0)),
        )
    }

    /// A frame with custom divisor classes; `a_class` must be a pullback
    /// (fiber-class multiple) and `A^{d_X} L^{d_Y-d_X}` must be positive.
    pub fn new(variety: Variety, a_class: ChowClass, l_class: ChowClass) -> Result<Self, StabilityError> {
        if !variety.is_fibred() {
            return Err(StabilityError::NotFibred(variety));
        }
        let d_y = variety.dim() as u32;
        let d_x = 1u32;
        let fiber_power = d_y - d_x; // L-exponent alongside A^{d_X}
        let a_num = a_class
            .intersect(&l_class.power(fiber_power)?)?
            .top_coeff();
        assert!(a_num > Rational::zero(), "frame needs A^dX L^(dY-dX) > 0");
        let al_num = l_class.power(fiber_power + 1)?.top_coeff();
        let bracket_class = l_class.power(fiber_power - 1)?;
        let slope_base = l_class.power(fiber_power)?;
        let slope_fiber = a_class.intersect(&bracket_class)?;
        Ok(Self {
            variety,
            d_x,
            d_y,
            a_class,
            l_class,
            a_num,
            al_num,
            bracket_class,
            slope_base,
            slope_fiber,
        })
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn d_x(&self) -> u32 {
        self.d_x
    }

    pub fn d_y(&self) -> u32 {
        self.d_y
    }

    pub fn a_num(&self) -> &Rational {
        &self.a_num
    }

    pub fn al_num(&self) -> &Rational {
        &self.al_num
    }

    /// `[γ] = γ · A^{d_X-1} L^{d_Y-d_X-1}` for a degree-2 class.
    pub fn bracket(&self, gamma: &ChowClass) -> Result<Rational, StabilityError> {
        Ok(gamma.intersect(&self.bracket_class)?.top_coeff())
    }
}

/// Numerical invariants of a torsion-free sheaf on a model variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafNumData {
    rank: u32,
    c1: ChowClass,
    c2: ChowClass,
    c3: Rational,
}

impl SheafNumData {
    pub fn new(rank: u32, c1: ChowClass, c2: ChowClass, c3: Rational) -> Self {
        assert!(rank >= 1, "rank must be positive");
        assert_eq!(c1.variety(), c2.variety(), "c1 and c2 on different varieties");
        assert!(c1.is_pure_of_degree(1), "c1 must be a divisor class");
        assert!(c2.is_pure_of_degree(2), "c2 must be a degree-2 class");
        Self { rank, c1, c2, c3 }
    }

    /// Rank `r`, `c1 = 0`, `c2 = n·u²` (P²-bundle) or `n·pt` (surface).
    pub fn monad_type(variety: Variety, rank: u32, n: i64) -> Self {
        let c2 = match variety {
            Variety::P2Bundle { .. } => ChowClass::divisor(variety, (1, 0))
                .power(2)
                .unwrap()
                .scale(&rat(n)),
            _ => ChowClass::point(variety).scale(&rat(n)),
        };
        Self::new(rank, ChowClass::zero(variety), c2, Rational::zero())
    }

    pub fn variety(&self) -> Variety {
        self.c1.variety()
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn c1(&self) -> &ChowClass {
        &self.c1
    }

    pub fn c2(&self) -> &ChowClass {
        &self.c2
    }

    pub fn c3(&self) -> &Rational {
        &self.c3
    }

    /// Slope vector `ξ = c1 / rank`.
    pub fn xi(&self) -> ChowClass {
        self.c1.scale(&(Rational::from_integer(1.into()) / rat(self.rank as i64)))
    }

    pub fn to_chern(&self) -> Result<ChernData, GeomError> {
        let v = self.variety();
        let c3 = ChowClass::point(v).scale(&self.c3);
        ChernData::from_chern_classes(v, rat(self.rank as i64), &self.c1, &self.c2, &c3)
    }
}

/// `μ_{L_c}(G) = ξ·(A^{d_X-1}L^{d_Y-d_X} + c·A^{d_X}L^{d_Y-d_X-1})`,
/// affine-linear in `c`.
pub fn slope_lc(frame: &FibrationFrame, sheaf: &SheafNumData, c: &Rational) -> Result<Rational, StabilityError> {
    assert!(*c >= Rational::zero(), "slope_lc wants c >= 0");
    let xi = sheaf.xi();
    let base = xi.intersect(&frame.slope_base)?.top_coeff();
    let fiber = xi.intersect(&frame.slope_fiber)?.top_coeff();
    Ok(base + c * fiber)
}

/// The usual slope `ξ · (L + cA)^{d_Y-1}`, expanded in the Chow ring.
pub fn slope_usual(frame: &FibrationFrame, sheaf: &SheafNumData, c: &Rational) -> Result<Rational, StabilityError> {
    assert!(*c >= Rational::zero(), "slope_usual wants c >= 0");
    let lc = frame.l_class.add(&frame.a_class.scale(c))?;
    let xi = sheaf.xi();
    Ok(xi.intersect(&lc.power(frame.d_y - 1)?)?.top_coeff())
}

/// Discriminant `Δ(G) = 2·rk·c2 - (rk-1)·c1²`.
pub fn discriminant(sheaf: &SheafNumData) -> ChowClass {
    let r = rat(sheaf.rank as i64);
    let c1sq = sheaf.c1.intersect(&sheaf.c1).unwrap();
    sheaf
        .c2
        .scale(&(rat(2) * &r))
        .sub(&c1sq.scale(&(r - rat(1))))
        .unwrap()
}

/// `a_F = r²(M_F - m_F) / A^{d_X}`, with the Harder-Narasimhan first-term
/// slopes `M_F` (absolute) and `m_F` (relative) supplied by the caller.
pub fn threshold_a_f(frame: &FibrationFrame, rank: u32, m_upper: &Rational, m_lower: &Rational) -> Rational {
    let r = rat(rank as i64);
    (&r * &r) * (m_upper - m_lower) / &frame.a_num
}

/// `c_F = r(r-1) · A^{d_X}L^{d_Y-d_X}/(A^{d_X})² · [c2(F)]`, valid for
/// `c1 = 0` only.
pub fn threshold_c_f(frame: &FibrationFrame, sheaf: &SheafNumData) -> Result<Rational, StabilityError> {
    if !sheaf.c1.is_zero() {
        return Err(StabilityError::NonzeroC1);
    }
    let r = rat(sheaf.rank as i64);
    let factor = &frame.a_num / (&frame.a_num * &frame.a_num);
    Ok(&r * (&r - rat(1)) * factor * frame.bracket(&sheaf.c2)?)
}

/// `c'_F = r²(r-1)/2 · A^{d_X}L^{d_Y-d_X}/(A^{d_X})² · [Δ(F)]`, any `c1`.
pub fn threshold_c_f_prime(frame: &FibrationFrame, sheaf: &SheafNumData) -> Result<Rational, StabilityError> {
    let r = rat(sheaf.rank as i64);
    let factor = &frame.a_num / (&frame.a_num * &frame.a_num);
    let delta = discriminant(sheaf);
    Ok(&r * &r * (&r - rat(1)) / rat(2) * factor * frame.bracket(&delta)?)
}

/// Both sides of the Hodge-index inequality
/// `2[ξA][ξL_c] ≥ 2c[ξA]² + A^{d_X}L^{d_Y-d_X}·[ξ²]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeCheck {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

pub fn hodge_inequality_check(
    frame: &FibrationFrame,
    xi: &ChowClass,
    c: &Rational,
) -> Result<HodgeCheck, StabilityError> {
    assert!(*c >= Rational::zero(), "hodge check wants c >= 0");
    assert!(xi.is_pure_of_degree(1), "xi must be a divisor class");
    let lc = frame.l_class.add(&frame.a_class.scale(c))?;
    let xa = frame.bracket(&xi.intersect(&frame.a_class)?)?;
    let xlc = frame.bracket(&xi.intersect(&lc)?)?;
    let xx = frame.bracket(&xi.intersect(xi)?)?;
    let lhs = rat(2) * &xa * xlc;
    let rhs = rat(2) * c * &xa * &xa + &frame.a_num * xx;
    Ok(HodgeCheck { holds: lhs >= rhs, lhs, rhs })
}

/// Cone membership of a divisor class `β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeMembership {
    /// `[β²] > 0` and `[β·D] ≥ 0` for the nef-cone generators `D`.
    pub in_k_plus: bool,
    /// The closure: `[β²] ≥ 0` and `[β·D] ≥ 0`.
    pub in_k_plus_closure: bool,
    /// `β ∈ closure(K⁺)` and `[α·β] > 0`; `None` when no `α` was given.
    pub in_c_alpha: Option<bool>,
}

/// Nef-cone generators: `{f, u}` on `Y_ℓ`, `{v, u}` on `Y_{a,b}`.
pub fn nef_generators(variety: Variety) -> Vec<ChowClass> {
    vec![
        ChowClass::divisor(variety, (0, 1)),
        ChowClass::divisor(variety, (1, 0)),
    ]
}

pub fn cone_membership(
    frame: &FibrationFrame,
    beta: &ChowClass,
    alpha: Option<&ChowClass>,
) -> Result<ConeMembership, StabilityError> {
    let bb = frame.bracket(&beta.intersect(beta)?)?;
    let mut nef_ok = true;
    for d in nef_generators(frame.variety) {
        if frame.bracket(&beta.intersect(&d)?)? < Rational::zero() {
            nef_ok = false;
            break;
        }
    }
    let in_k_plus = bb > Rational::zero() && nef_ok;
    let in_k_plus_closure = bb >= Rational::zero() && nef_ok;
    let in_c_alpha = match alpha {
        None => None,
        Some(a) => Some(in_k_plus_closure && frame.bracket(&a.intersect(beta)?)? > Rational::zero()),
    };
    Ok(ConeMembership { in_k_plus, in_k_plus_closure, in_c_alpha })
}

/// Conversion of a threshold for the bracket slope into one for the usual
/// slope: `k_F/(d_Y-1)` over a curve, `max{2k_F/(d_Y-2), r²s/(d_Y-1)}` over
/// a surface.
pub fn compare_bound(
    d_x: u32,
    d_y: u32,
    k_f: &Rational,
    rank: u32,
    s: &Rational,
) -> Result<Rational, StabilityError> {
    match d_x {
        1 => {
            assert!(d_y >= 2, "d_Y > d_X required");
            Ok(k_f / rat(d_y as i64 - 1))
        }
        2 => {
            assert!(d_y >= 3, "d_Y > d_X required");
            let first = rat(2) * k_f / rat(d_y as i64 - 2);
            let r = rat(rank as i64);
            let second = &r * &r * s / rat(d_y as i64 - 1);
            Ok(first.max(second))
        }
        d => Err(StabilityError::UnsupportedBaseDimension(d)),
    }
}

/// The three numeric bounds of the subsheaf dichotomy:
/// `A^{d_X}/(r-1)`, `A^{d_X}/(r(r-1))`, `-2r/(r-1)·[c2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeBounds {
    pub mu_lower: Rational,
    pub mu_lower_any_c1: Rational,
    pub xi_sq_lower: Rational,
}

pub fn relative_bounds_mu(
    frame: &FibrationFrame,
    rank: u32,
    c2_bracket: &Rational,
) -> Result<RelativeBounds, StabilityError> {
    if rank < 2 {
        return Err(StabilityError::RankOne);
    }
    let r = rat(rank as i64);
    let rm1 = &r - rat(1);
    Ok(RelativeBounds {
        mu_lower: &frame.a_num / &rm1,
        mu_lower_any_c1: &frame.a_num / (&r * &rm1),
        xi_sq_lower: -rat(2) * &r / &rm1 * c2_bracket,
    })
}
