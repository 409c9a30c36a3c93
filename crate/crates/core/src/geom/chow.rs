//! Intersection rings of the model varieties in fixed monomial bases.
//!
//! Bases: P¹ `{1, pt}`; P² `{1, h, h²}`; `Y_ℓ` `{1, u, f, pt}` with
//! `f² = 0`, `u·f = pt`, `u² = ℓ·pt`; `Y_{a,b}` `{1, u, v, u², uv, pt}` with
//! `v² = 0`, `u²v = pt`, `u³ = (a+b)·pt`. Every class is stored in normal
//! form, so representations are unique and comparable.

use std::fmt;

use num_traits::{One, Zero};

use crate::cox::Multidegree;
use crate::rational::{format_rational, rat, to_i64, Rational};
use crate::variety::Variety;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("VarietyMismatch: {0} vs {1}")]
    VarietyMismatch(Variety, Variety),
    #[error("WrongVariety: {0}")]
    WrongVariety(String),
    #[error("NonIntegralResult: {0}")]
    NonIntegralResult(String),
    #[error("DegreeMismatch: {0}")]
    DegreeMismatch(String),
}

pub fn basis_labels(variety: Variety) -> &'static [&'static str] {
    match variety {
        Variety::P1 => &["1", "pt"],
        Variety::P2 => &["1", "h", "h^2"],
        Variety::Hirzebruch { .. } => &["1", "u", "f", "pt"],
        Variety::P2Bundle { .. } => &["1", "u", "v", "u^2", "uv", "pt"],
    }
}

fn basis_degrees(variety: Variety) -> &'static [usize] {
    match variety {
        Variety::P1 => &[0, 1],
        Variety::P2 => &[0, 1, 2],
        Variety::Hirzebruch { .. } => &[0, 1, 1, 2],
        Variety::P2Bundle { .. } => &[0, 1, 1, 2, 2, 3],
    }
}

/// An element of the Chow ring, possibly of mixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    variety: Variety,
    coeffs: Vec<Rational>,
}

impl ChowClass {
    pub fn zero(variety: Variety) -> Self {
        Self {
            variety,
            coeffs: vec![Rational::zero(); basis_labels(variety).len()],
        }
    }

    /// The fundamental class.
    pub fn one(variety: Variety) -> Self {
        let mut c = Self::zero(variety);
        c.coeffs[0] = Rational::one();
        c
    }

    /// The point class.
    pub fn point(variety: Variety) -> Self {
        let mut c = Self::zero(variety);
        let last = c.coeffs.len() - 1;
        c.coeffs[last] = Rational::one();
        c
    }

    pub fn from_coeffs(variety: Variety, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), basis_labels(variety).len(), "basis length mismatch");
        Self { variety, coeffs }
    }

    /// The divisor class `k·u + l·(fiber)` on fibred varieties, `k·h` on P²,
    /// `k·pt` on P¹ (where `l` must be 0).
    pub fn divisor(variety: Variety, degree: Multidegree) -> Self {
        let (k, l) = degree;
        let mut c = Self::zero(variety);
        match variety {
            Variety::P1 => {
                assert_eq!(l, 0, "P1 divisor degree is (d, 0)");
                c.coeffs[1] = rat(k);
            }
            Variety::P2 => {
                assert_eq!(l, 0, "P2 divisor degree is (d, 0)");
                c.coeffs[1] = rat(k);
            }
            Variety::Hirzebruch { .. } | Variety::P2Bundle { .. } => {
                c.coeffs[1] = rat(k);
                c.coeffs[2] = rat(l);
            }
        }
        c
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> &Rational {
        &self.coeffs[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Coefficient of the point class; the degree of a top-dimensional class.
    pub fn top_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap()
    }

    /// The part living in cohomological degree `d` (complex codimension).
    pub fn graded_part(&self, d: usize) -> Self {
        let degs = basis_degrees(self.variety);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if degs[i] == d { c.clone() } else { Rational::zero() })
            .collect();
        Self { variety: self.variety, coeffs }
    }

    pub fn is_pure_of_degree(&self, d: usize) -> bool {
        let degs = basis_degrees(self.variety);
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| degs[i] == d || c.is_zero())
    }

    /// Reads a pure degree-1 class back as a multidegree `(k, l)`; `None` if
    /// the class is not degree 1 or has non-integer coordinates.
    pub fn as_divisor_degree(&self) -> Option<Multidegree> {
        if !self.is_pure_of_degree(1) {
            return None;
        }
        match self.variety {
            Variety::P1 | Variety::P2 => Some((to_i64(&self.coeffs[1])?, 0)),
            _ => Some((to_i64(&self.coeffs[1])?, to_i64(&self.coeffs[2])?)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GeomError> {
        if self.variety != other.variety {
            return Err(GeomError::VarietyMismatch(self.variety, other.variety));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { variety: self.variety, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GeomError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self { variety: self.variety, coeffs }
    }

    /// Product in the intersection ring, relations applied.
    pub fn intersect(&self, other: &Self) -> Result<Self, GeomError> {
        if self.variety != other.variety {
            return Err(GeomError::VarietyMismatch(self.variety, other.variety));
        }
        let mut acc = Self::zero(self.variety);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = basis_product(self.variety, i, j);
                acc = acc.add(&prod.scale(&(a * b)))?;
            }
        }
        Ok(acc)
    }

    /// `self^k`.
    pub fn power(&self, k: u32) -> Result<Self, GeomError> {
        let mut acc = Self::one(self.variety);
        for _ in 0..k {
            acc = acc.intersect(self)?;
        }
        Ok(acc)
    }

    /// Truncated exponential `1 + D + D²/2 + D³/6` of a degree-1 class; the
    /// Chern character of the line bundle `O(D)`.
    pub fn exp_divisor(&self) -> Result<Self, GeomError> {
        if !self.is_pure_of_degree(1) {
            return Err(GeomError::DegreeMismatch(format!(
                "exp of a non-divisor class {self}"
            )));
        }
        let mut acc = Self::one(self.variety);
        let mut power = Self::one(self.variety);
        let mut factorial = Rational::one();
        for k in 1..=self.variety.dim() as u32 {
            power = power.intersect(self)?;
            factorial *= rat(k as i64);
            acc = acc.add(&power.scale(&(Rational::one() / &factorial)))?;
        }
        Ok(acc)
    }
}

/// Product of two basis monomials, in normal form.
fn basis_product(variety: Variety, i: usize, j: usize) -> ChowClass {
    let (i, j) = (i.min(j), i.max(j));
    let mut out = ChowClass::zero(variety);
    let idx: Option<(usize, Rational)> = match variety {
        // 0 = 1, 1 = pt
        Variety::P1 => match (i, j) {
            (0, x) => Some((x, Rational::one())),
            _ => None,
        },
        // powers of h
        Variety::P2 => (i + j <= 2).then(|| (i + j, Rational::one())),
        // 0 = 1, 1 = u, 2 = f, 3 = pt
        Variety::Hirzebruch { ell } => match (i, j) {
            (0, x) => Some((x, Rational::one())),
            (1, 1) => Some((3, rat(ell as i64))),
            (1, 2) => Some((3, Rational::one())),
            _ => None,
        },
        // 0 = 1, 1 = u, 2 = v, 3 = u^2, 4 = uv, 5 = pt
        Variety::P2Bundle { a, b } => match (i, j) {
            (0, x) => Some((x, Rational::one())),
            (1, 1) => Some((3, Rational::one())),
            (1, 2) => Some((4, Rational::one())),
            (1, 3) => Some((5, rat(a as i64 + b as i64))), // u^3 = (a+b) pt
            (1, 4) => Some((5, Rational::one())),          // u^2 v = pt
            (2, 3) => Some((5, Rational::one())),
            _ => None, // v^2 = 0, uv^2 = 0, anything past the point class
        },
    };
    if let Some((k, c)) = idx {
        out.coeffs[k] = c;
    }
    out
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = basis_labels(self.variety);
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut c = c.clone();
            if wrote {
                if c < Rational::zero() {
                    write!(f, " - ")?;
                    c = -c;
                } else {
                    write!(f, " + ")?;
                }
            }
            wrote = true;
            if i == 0 {
                write!(f, "{}", format_rational(&c))?;
            } else {
                write!(f, "{}*{}", format_rational(&c), labels[i])?;
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Canonical class: `-2pt` on P¹, `-3h` on P², `-2u + (ℓ-2)f` on `Y_ℓ`,
/// `-3u + (a+b-2)v` on `Y_{a,b}`.
pub fn canonical_class(variety: Variety) -> ChowClass {
    match variety {
        Variety::P1 => ChowClass::divisor(variety, (-2, 0)),
        Variety::P2 => ChowClass::divisor(variety, (-3, 0)),
        Variety::Hirzebruch { ell } => ChowClass::divisor(variety, (-2, ell as i64 - 2)),
        Variety::P2Bundle { a, b } => ChowClass::divisor(variety, (-3, a as i64 + b as i64 - 2)),
    }
}

/// Relative canonical class of the fibration over P¹; `None` on P¹ and P².
pub fn relative_canonical_class(variety: Variety) -> Option<ChowClass> {
    match variety {
        Variety::Hirzebruch { ell } => Some(ChowClass::divisor(variety, (-2, ell as i64))),
        Variety::P2Bundle { a, b } => Some(ChowClass::divisor(variety, (-3, a as i64 + b as i64))),
        _ => None,
    }
}

/// Chern classes `(c1, c2, c3)` of the tangent bundle, from the Chern roots
/// of the relative Euler sequence plus the base direction.
pub fn tangent_chern(variety: Variety) -> (ChowClass, ChowClass, ChowClass) {
    let roots: Vec<ChowClass> = match variety {
        Variety::P1 => vec![ChowClass::divisor(variety, (2, 0))],
        Variety::P2 => vec![
            ChowClass::divisor(variety, (1, 0)),
            ChowClass::divisor(variety, (1, 0)),
            ChowClass::divisor(variety, (1, 0)),
        ],
        Variety::Hirzebruch { ell } => vec![
            ChowClass::divisor(variety, (1, 0)),
            ChowClass::divisor(variety, (1, -(ell as i64))),
            ChowClass::divisor(variety, (0, 2)),
        ],
        Variety::P2Bundle { a, b } => vec![
            ChowClass::divisor(variety, (1, 0)),
            ChowClass::divisor(variety, (1, -(a as i64))),
            ChowClass::divisor(variety, (1, -(b as i64))),
            ChowClass::divisor(variety, (0, 2)),
        ],
    };
    elementary_symmetric(variety, &roots)
}

/// Chern classes of the relative tangent sheaf `T_π`; zero classes on P¹/P².
pub fn relative_tangent_chern(variety: Variety) -> (ChowClass, ChowClass, ChowClass) {
    let roots: Vec<ChowClass> = match variety {
        Variety::Hirzebruch { ell } => vec![
            ChowClass::divisor(variety, (1, 0)),
            ChowClass::divisor(variety, (1, -(ell as i64))),
        ],
        Variety::P2Bundle { a, b } => vec![
            ChowClass::divisor(variety, (1, 0)),
            ChowClass::divisor(variety, (1, -(a as i64))),
            ChowClass::divisor(variety, (1, -(b as i64))),
        ],
        _ => vec![],
    };
    elementary_symmetric(variety, &roots)
}

fn elementary_symmetric(variety: Variety, roots: &[ChowClass]) -> (ChowClass, ChowClass, ChowClass) {
    let mut e1 = ChowClass::zero(variety);
    let mut e2 = ChowClass::zero(variety);
    let mut e3 = ChowClass::zero(variety);
    for (i, r) in roots.iter().enumerate() {
        e1 = e1.add(r).unwrap();
        for (j, s) in roots.iter().enumerate().skip(i + 1) {
            let rs = r.intersect(s).unwrap();
            e2 = e2.add(&rs).unwrap();
            for t in roots.iter().skip(j + 1) {
                e3 = e3.add(&rs.intersect(t).unwrap()).unwrap();
            }
        }
    }
    (e1, e2, e3)
}

/// Todd class of the tangent bundle, one graded piece per degree `0..=dim`.
pub fn todd_class(variety: Variety) -> Vec<ChowClass> {
    let (c1, c2, _c3) = tangent_chern(variety);
    todd_from_chern(variety, &c1, &c2)
}

/// Todd class of the relative tangent sheaf `T_π`.
pub fn relative_todd_class(variety: Variety) -> Vec<ChowClass> {
    let (c1, c2, _c3) = relative_tangent_chern(variety);
    todd_from_chern(variety, &c1, &c2)
}

/// `Td = 1 + c1/2 + (c1² + c2)/12 + c1c2/24`, truncated at the dimension.
fn todd_from_chern(variety: Variety, c1: &ChowClass, c2: &ChowClass) -> Vec<ChowClass> {
    let dim = variety.dim();
    let mut parts = vec![ChowClass::one(variety)];
    if dim >= 1 {
        parts.push(c1.scale(&crate::rational::ratio(1, 2)));
    }
    if dim >= 2 {
        let c1sq = c1.intersect(c1).unwrap();
        parts.push(c1sq.add(c2).unwrap().scale(&crate::rational::ratio(1, 12)));
    }
    if dim >= 3 {
        let c1c2 = c1.intersect(c2).unwrap();
        parts.push(c1c2.scale(&crate::rational::ratio(1, 24)));
    }
    parts
}

/// Sum of the graded Todd pieces as a single mixed class.
pub fn todd_total(variety: Variety) -> ChowClass {
    todd_class(variety)
        .into_iter()
        .fold(ChowClass::zero(variety), |acc, p| acc.add(&p).unwrap())
}

pub fn relative_todd_total(variety: Variety) -> ChowClass {
    relative_todd_class(variety)
        .into_iter()
        .fold(ChowClass::zero(variety), |acc, p| acc.add(&p).unwrap())
}
