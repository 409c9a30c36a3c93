//! Monads `O_π(-1)ⁿ → O^{r+2n} → O_π(1)ⁿ` on a P²-bundle `Y_{a,b}`.
//!
//! The maps are matrices of degree-`u` Cox polynomials. `B·A = 0` is checked
//! exactly in `Γ(O_π(2))`; fiberwise injectivity/surjectivity over all of
//! `Y` is Zariski-closed degeneracy, so [`pointwise_check`] samples a
//! deterministic adversarial point set (the exceptional line, coordinate
//! fibers, coordinate hyperplanes) plus seeded random points, and is a
//! semi-decision by construction.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::cox::{cox_basis, CoxPolynomial};
use crate::geom::{chern_from_resolution, ChernData, ChowClass, GeomError};
use crate::matrix::RationalMatrix;
use crate::rational::{rat, Rational};
use crate::variety::Variety;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonadError {
    #[error("WrongVariety: monads live on P2-bundles, got {0}")]
    WrongVariety(Variety),
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("BadEntryDegree: entry ({row},{col}) has degree {got:?}, want (1,0)")]
    BadEntryDegree { row: usize, col: usize, got: Option<(i64, i64)> },
    #[error("SingularGroupElement")]
    SingularGroupElement,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Dense matrix of Cox polynomials on one variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    variety: Variety,
    rows: usize,
    cols: usize,
    entries: Vec<CoxPolynomial>,
}

impl PolyMatrix {
    pub fn new(variety: Variety, rows: usize, cols: usize, entries: Vec<CoxPolynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        assert!(entries.iter().all(|p| p.variety() == variety), "mixed varieties");
        Self { variety, rows, cols, entries }
    }

    pub fn zero(variety: Variety, rows: usize, cols: usize) -> Self {
        Self {
            variety,
            rows,
            cols,
            entries: vec![CoxPolynomial::zero(variety); rows * cols],
        }
    }

    pub fn from_fn(
        variety: Variety,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CoxPolynomial,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(variety, rows, cols, entries)
    }

    /// Random matrix of degree-`u` forms with small integer coefficients.
    pub fn seeded_degree_u(variety: Variety, rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        let basis = cox_basis(variety, (1, 0));
        Self::from_fn(variety, rows, cols, |_, _| {
            CoxPolynomial::from_terms(
                variety,
                basis.iter().map(|e| (e.clone(), rat(rng.gen_range(-4..=4)))),
            )
            .unwrap()
        })
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &CoxPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[CoxPolynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CoxPolynomial::is_zero)
    }

    /// Polynomial matrix product (entrywise cox multiply and sum).
    pub fn mul_poly(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        assert_eq!(self.variety, other.variety, "variety mismatch");
        Self::from_fn(self.variety, self.rows, other.cols, |i, j| {
            let mut acc = CoxPolynomial::zero(self.variety);
            for k in 0..self.cols {
                let term = self.entry(i, k).multiply(other.entry(k, j));
                acc = acc.add(&term).expect("homogeneous product");
            }
            acc
        })
    }

    /// Scalar matrix times polynomial matrix.
    pub fn scalar_mul_left(&self, m: &RationalMatrix) -> Self {
        assert_eq!(m.cols(), self.rows, "shape mismatch");
        Self::from_fn(self.variety, m.rows(), self.cols, |i, j| {
            let mut acc = CoxPolynomial::zero(self.variety);
            for k in 0..self.rows {
                acc = acc.add(&self.entry(k, j).scale(&m[(i, k)])).expect("homogeneous sum");
            }
            acc
        })
    }

    /// Polynomial matrix times scalar matrix.
    pub fn scalar_mul_right(&self, m: &RationalMatrix) -> Self {
        assert_eq!(self.cols, m.rows(), "shape mismatch");
        Self::from_fn(self.variety, self.rows, m.cols(), |i, j| {
            let mut acc = CoxPolynomial::zero(self.variety);
            for k in 0..self.cols {
                acc = acc.add(&self.entry(i, k).scale(&m[(k, j)])).expect("homogeneous sum");
            }
            acc
        })
    }

    /// Evaluates every entry at a point.
    pub fn evaluate(&self, point: &[Rational]) -> RationalMatrix {
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).evaluate(point))
    }
}

/// The monad datum: `A` is `(r+2n)×n`, `B` is `n×(r+2n)`, all entries
/// homogeneous of degree `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadData {
    variety: Variety,
    r: u32,
    n: u32,
    a: PolyMatrix,
    b: PolyMatrix,
}

impl MonadData {
    pub fn new(variety: Variety, r: u32, n: u32, a: PolyMatrix, b: PolyMatrix) -> Result<Self, MonadError> {
        if !matches!(variety, Variety::P2Bundle { .. }) {
            return Err(MonadError::WrongVariety(variety));
        }
        let mid = (r + 2 * n) as usize;
        let n_us = n as usize;
        if a.rows() != mid || a.cols() != n_us || b.rows() != n_us || b.cols() != mid {
            return Err(MonadError::ShapeMismatch(format!(
                "want A {mid}x{n_us} and B {n_us}x{mid}, got A {}x{} and B {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        for (m, name) in [(&a, "A"), (&b, "B")] {
            assert_eq!(m.variety(), variety, "{name} on the wrong variety");
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let d = m.entry(i, j).degree();
                    if !(d.is_none() || d == Some((1, 0))) {
                        return Err(MonadError::BadEntryDegree { row: i, col: j, got: d });
                    }
                }
            }
        }
        Ok(Self { variety, r, n, a, b })
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    /// The P² monad `A = (x,y,z,0)ᵀ`, `B = (-y,x,0,z)` pulled back to
    /// `Y_{0,0} = P² × P¹` (r = 2, n = 1).
    pub fn p2_pullback_example() -> Self {
        let v = Variety::p2_bundle(0, 0);
        let zv = |i: usize| CoxPolynomial::variable(v, i);
        let zero = CoxPolynomial::zero(v);
        let a = PolyMatrix::new(v, 4, 1, vec![zv(0), zv(1), zv(2), zero.clone()]);
        let b = PolyMatrix::new(v, 1, 4, vec![zv(1).neg(), zv(0), zero, zv(2)]);
        Self::new(v, 2, 1, a, b).unwrap()
    }
}

/// `B·A` computed exactly in `Γ(O_π(2))`; the residual is the `n×n` matrix
/// of degree-`2u` polynomials left over.
#[derive(Debug, Clone)]
pub struct ComposeCheck {
    pub is_monad: bool,
    pub residual: PolyMatrix,
}

pub fn monad_compose_check(m: &MonadData) -> ComposeCheck {
    let residual = m.b.mul_poly(&m.a);
    ComposeCheck { is_monad: residual.is_zero(), residual }
}

/// Basis of the solution space of `B·A = 0`.
///
/// The condition is linear in `B`'s coefficient vector; rows of the matching
/// matrix are indexed by pairs (target row of `B·A`, degree-`2u` monomial).
/// Each returned candidate corresponds to one kernel basis vector; generic
/// combinations (for the pointwise checks) are the caller's loop.
pub fn monad_complete(variety: Variety, r: u32, n: u32, a: &PolyMatrix) -> Result<Vec<PolyMatrix>, MonadError> {
    if !matches!(variety, Variety::P2Bundle { .. }) {
        return Err(MonadError::WrongVariety(variety));
    }
    let mid = (r + 2 * n) as usize;
    let n_us = n as usize;
    if a.rows() != mid || a.cols() != n_us {
        return Err(MonadError::ShapeMismatch(format!(
            "A must be {mid}x{n_us}, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let basis_u = cox_basis(variety, (1, 0));
    let basis_2u = cox_basis(variety, (2, 0));
    let s1 = basis_u.len();
    let s2 = basis_2u.len();
    // unknowns: B[i][k] coefficient of basis_u[mu]
    let unknowns = n_us * mid * s1;
    let equations = n_us * n_us * s2;
    let unknown_at = |i: usize, k: usize, mu: usize| (i * mid + k) * s1 + mu;
    let mut sys = RationalMatrix::zero(equations, unknowns);
    for i in 0..n_us {
        for j in 0..n_us {
            for k in 0..mid {
                for (mu, mono) in basis_u.iter().enumerate() {
                    let prod = CoxPolynomial::monomial(variety, mono.clone(), Rational::one())
                        .multiply(a.entry(k, j));
                    for (nu, m2) in basis_2u.iter().enumerate() {
                        let c = prod.coefficient(m2);
                        if !c.is_zero() {
                            let row = (i * n_us + j) * s2 + nu;
                            sys[(row, unknown_at(i, k, mu))] = c;
                        }
                    }
                }
            }
        }
    }
    let kernel = sys.kernel();
    let mut out = Vec::with_capacity(kernel.cols());
    for col in 0..kernel.cols() {
        let b = PolyMatrix::from_fn(variety, n_us, mid, |i, k| {
            CoxPolynomial::from_terms(
                variety,
                basis_u
                    .iter()
                    .enumerate()
                    .map(|(mu, mono)| (mono.clone(), kernel[(unknown_at(i, k, mu), col)].clone())),
            )
            .unwrap()
        });
        out.push(b);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct PointFailure {
    pub point: Vec<Rational>,
    pub a_rank: usize,
    pub b_rank: usize,
}

#[derive(Debug, Clone)]
pub struct PointwiseReport {
    pub a_injective: bool,
    pub b_surjective: bool,
    pub points_checked: usize,
    pub failures: Vec<PointFailure>,
}

/// Deterministic adversarial points: all coordinate/diagonal fiber points
/// (including the exceptional line `z = (1,0,0)`) over the coordinate and
/// diagonal base points.
fn adversarial_points() -> Vec<Vec<Rational>> {
    let zs: [[i64; 3]; 7] = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
    ];
    let ws: [[i64; 2]; 3] = [[1, 0], [0, 1], [1, 1]];
    let mut out = Vec::new();
    for z in zs {
        for w in ws {
            out.push(vec![rat(z[0]), rat(z[1]), rat(z[2]), rat(w[0]), rat(w[1])]);
        }
    }
    out
}

/// Samples fiberwise injectivity of `A` and surjectivity of `B` at the
/// adversarial set plus `samples` seeded random points (normalized charts,
/// so the irrelevant locus is avoided by construction).
pub fn pointwise_check(m: &MonadData, samples: usize, seed: u64) -> PointwiseReport {
    assert!(samples >= 1, "at least one sample");
    let n = m.n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = adversarial_points();
    for _ in 0..samples {
        let z_chart = rng.gen_range(0..3usize);
        let w_chart = rng.gen_range(0..2usize);
        let mut p = Vec::with_capacity(5);
        for i in 0..3 {
            p.push(if i == z_chart { Rational::one() } else { rat(rng.gen_range(-6..=6)) });
        }
        for i in 0..2 {
            p.push(if i == w_chart { Rational::one() } else { rat(rng.gen_range(-6..=6)) });
        }
        points.push(p);
    }
    let checks = crate::par::map_collect(points, |p| {
        let a_rank = m.a.evaluate(&p).rank();
        let b_rank = m.b.evaluate(&p).rank();
        (p, a_rank, b_rank)
    });
    let mut failures = Vec::new();
    let (mut a_ok, mut b_ok) = (true, true);
    let total = checks.len();
    for (point, a_rank, b_rank) in checks {
        let bad_a = a_rank < n;
        let bad_b = b_rank < n;
        if bad_a {
            a_ok = false;
        }
        if bad_b {
            b_ok = false;
        }
        if bad_a || bad_b {
            failures.push(PointFailure { point, a_rank, b_rank });
        }
    }
    PointwiseReport {
        a_injective: a_ok,
        b_surjective: b_ok,
        points_checked: total,
        failures,
    }
}

/// Restriction of the monad to the fiber over `x = (w0 : w1)`: matrices of
/// linear forms in the fiber coordinates, as a monad on P².
#[derive(Debug, Clone)]
pub struct FiberMonad {
    pub a: PolyMatrix,
    pub b: PolyMatrix,
}

impl FiberMonad {
    pub fn compose_residual(&self) -> PolyMatrix {
        self.b.mul_poly(&self.a)
    }
}

pub fn restrict_to_fiber(m: &MonadData, w0: &Rational, w1: &Rational) -> FiberMonad {
    assert!(!(w0.is_zero() && w1.is_zero()), "(0:0) is not a point of P1");
    let restrict = |pm: &PolyMatrix| {
        PolyMatrix::from_fn(Variety::P2, pm.rows(), pm.cols(), |i, j| {
            pm.entry(i, j).restrict_fiber(w0, w1)
        })
    };
    FiberMonad { a: restrict(&m.a), b: restrict(&m.b) }
}

/// Restriction to the exceptional line `Λ = {z1 = z2 = 0}`, where `O_π(±1)`
/// trivialize.
///
/// `a_const`/`b_const` are the constant `z0`-coefficient matrices. Triviality
/// of the restricted cohomology bundle additionally samples the (in general
/// `w`-dependent) restrictions at `deg+1` base points and demands full rank
/// `n` with constant kernel dimension throughout; one code path for all
/// `(a, b)`.
#[derive(Debug, Clone)]
pub struct LambdaRestriction {
    pub a_const: RationalMatrix,
    pub b_const: RationalMatrix,
    pub trivial_on_lambda: bool,
}

pub fn restrict_to_lambda(m: &MonadData) -> LambdaRestriction {
    let z0_coeff = |pm: &PolyMatrix| {
        RationalMatrix::from_fn(pm.rows(), pm.cols(), |i, j| {
            pm.entry(i, j).coefficient(&[1, 0, 0, 0, 0])
        })
    };
    let a_const = z0_coeff(&m.a);
    let b_const = z0_coeff(&m.b);

    // entries restricted to Lambda as P1 forms in (w0, w1)
    let on_lambda = |pm: &PolyMatrix| {
        PolyMatrix::from_fn(Variety::P1, pm.rows(), pm.cols(), |i, j| {
            pm.entry(i, j).restrict_lambda()
        })
    };
    let a_lam = on_lambda(&m.a);
    let b_lam = on_lambda(&m.b);
    let max_deg = a_lam
        .entries()
        .iter()
        .chain(b_lam.entries().iter())
        .filter_map(|p| p.degree().map(|d| d.0))
        .max()
        .unwrap_or(0);
    let sample_count = max_deg.max(1) + 1;
    let n = m.n as usize;
    let mut trivial = true;
    let mut kernel_dims: Option<(usize, usize)> = None;
    for s in 0..=sample_count {
        // points (1 : s) plus the point at infinity (0 : 1)
        let (w0, w1) = if s == sample_count {
            (rat(0), rat(1))
        } else {
            (rat(1), rat(s))
        };
        let pa = a_lam.evaluate(&[w0.clone(), w1.clone()]);
        let pb = b_lam.evaluate(&[w0, w1]);
        let ra = pa.rank();
        let rb = pb.rank();
        if ra < n || rb < n {
            trivial = false;
        }
        let dims = (pa.cols() - ra, pb.cols() - rb);
        match kernel_dims {
            None => kernel_dims = Some(dims),
            Some(prev) if prev != dims => trivial = false,
            _ => {}
        }
    }
    LambdaRestriction { a_const, b_const, trivial_on_lambda: trivial }
}

/// Chern bookkeeping of the monad cohomology: always `(0, n·u², 0)`.
pub fn monad_chern(variety: Variety, r: u32, n: u32) -> Result<ChernData, MonadError> {
    if !matches!(variety, Variety::P2Bundle { .. }) {
        return Err(MonadError::WrongVariety(variety));
    }
    let zero = ChowClass::zero(variety);
    let om = ChowClass::divisor(variety, (-1, 0));
    let op = ChowClass::divisor(variety, (1, 0));
    let mut terms = Vec::new();
    for _ in 0..(r + 2 * n) {
        terms.push((1, zero.clone()));
    }
    for _ in 0..n {
        terms.push((-1, om.clone()));
        terms.push((-1, op.clone()));
    }
    Ok(chern_from_resolution(&terms)?)
}

/// `m = 2(1+a+b)nr - r² + 1`, `χ(End F) = 1 - m`, and the explicit parameter
/// count of the monad construction, which must equal `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedDims {
    pub m: i64,
    pub chi_end: i64,
    pub v_dim_lower_bound: i64,
}

pub fn expected_dims(a: u32, b: u32, r: u32, n: u32) -> Result<ExpectedDims, MonadError> {
    if r < 2 || n < r {
        return Err(MonadError::ShapeMismatch(format!("need n >= r >= 2, got r={r}, n={n}")));
    }
    let (a, b, r, n) = (a as i64, b as i64, r as i64, n as i64);
    let s = a + b;
    let m = 2 * (1 + s) * n * r - r * r + 1;
    // sections of A and B, minus the B·A = 0 conditions, minus the group
    let v_dim = 2 * (3 + s) * n * (r + 2 * n) - (6 + 4 * s) * n * n - (2 * n * n + (r + 2 * n).pow(2) - 1);
    debug_assert_eq!(v_dim, m);
    Ok(ExpectedDims { m, chi_end: 1 - m, v_dim_lower_bound: v_dim })
}

/// Chern reports for the two example families.
#[derive(Debug, Clone)]
pub enum FamilyKind {
    /// `O^{r-1} ⊕ O_π(-1) ⊕ O_π(-n)` modulo `O_π(-n-1)` (the `F_0`/`F_t`
    /// deformation family).
    F0Ft { r: u32, n: u32 },
    /// Rank-2 sheaf from a union `Z` of `n` sections: `O_π(-1) ⊂ F ↠ I_Z(1)`.
    SerreRank2 { n: u32 },
}

#[derive(Debug, Clone)]
pub struct FamilyChernReport {
    pub chern: ChernData,
    /// Asserted value of `c2` from the source construction, when it differs
    /// from the mechanical Whitney computation.
    pub asserted_c2: Option<ChowClass>,
}

pub fn family_chern(variety: Variety, kind: &FamilyKind) -> Result<FamilyChernReport, MonadError> {
    if !matches!(variety, Variety::P2Bundle { .. }) {
        return Err(MonadError::WrongVariety(variety));
    }
    match *kind {
        FamilyKind::F0Ft { r, n } => {
            let mut terms = vec![(1, ChowClass::zero(variety)); (r - 1) as usize];
            terms.push((1, ChowClass::divisor(variety, (-1, 0))));
            terms.push((1, ChowClass::divisor(variety, (-(n as i64), 0))));
            terms.push((-1, ChowClass::divisor(variety, (-(n as i64) - 1, 0))));
            Ok(FamilyChernReport { chern: chern_from_resolution(&terms)?, asserted_c2: None })
        }
        FamilyKind::SerreRank2 { n } => {
            // ch(F) = ch(O_pi(-1)) + ch(O_pi(1))·ch(I_Z), with the curve Z of
            // class n·u² entering as ch(I_Z) = 1 - n·u²
            let u2 = ChowClass::divisor(variety, (1, 0)).power(2)?;
            let e_minus = ChernData::line_bundle(&ChowClass::divisor(variety, (-1, 0)))?;
            let e_plus = ChernData::line_bundle(&ChowClass::divisor(variety, (1, 0)))?;
            let iz = ChernData::from_total(
                ChowClass::one(variety).sub(&u2.scale(&rat(n as i64)))?,
            );
            let twisted = ChernData::from_total(
                e_plus.total().intersect(iz.total())?,
            );
            let chern = e_minus.add(&twisted)?;
            Ok(FamilyChernReport {
                chern,
                asserted_c2: Some(u2.scale(&rat(n as i64))),
            })
        }
    }
}

/// `(g1, g, g2) × (A, B) = (g·A·g1⁻¹, g2·B·g⁻¹)`.
#[derive(Debug, Clone)]
pub struct GroupElementG {
    pub g1: RationalMatrix,
    pub g: RationalMatrix,
    pub g2: RationalMatrix,
}

impl GroupElementG {
    pub fn identity(r: u32, n: u32) -> Self {
        Self {
            g1: RationalMatrix::identity(n as usize),
            g: RationalMatrix::identity((r + 2 * n) as usize),
            g2: RationalMatrix::identity(n as usize),
        }
    }

    pub fn seeded(r: u32, n: u32, rng: &mut impl Rng) -> Self {
        let mid = (r + 2 * n) as usize;
        let n = n as usize;
        let rand_invertible = |size: usize, rng: &mut dyn rand::RngCore| loop {
            let m = RationalMatrix::from_fn(size, size, |_, _| rat(rng.gen_range(-3..=3)));
            if m.rank() == size {
                return m;
            }
        };
        Self {
            g1: rand_invertible(n, rng),
            g: rand_invertible(mid, rng),
            g2: rand_invertible(n, rng),
        }
    }
}

pub fn group_act(g: &GroupElementG, m: &MonadData) -> Result<MonadData, MonadError> {
    let g1_inv = g.g1.inverse().map_err(|_| MonadError::SingularGroupElement)?;
    let g_inv = g.g.inverse().map_err(|_| MonadError::SingularGroupElement)?;
    let new_a = m.a.scalar_mul_left(&g.g).scalar_mul_right(&g1_inv);
    let new_b = m.b.scalar_mul_left(&g.g2).scalar_mul_right(&g_inv);
    MonadData::new(m.variety, m.r, m.n, new_a, new_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::euler_characteristic;

    #[test]
    fn p2_pullback_is_a_monad() {
        let m = MonadData::p2_pullback_example();
        let chk = monad_compose_check(&m);
        assert!(chk.is_monad, "residual: {:?}", chk.residual.entries());
    }

    #[test]
    fn perturbed_pullback_fails_with_the_expected_residual() {
        let m = MonadData::p2_pullback_example();
        let v = m.variety();
        // add z0 to the third entry of B (which is 0)
        let mut entries: Vec<CoxPolynomial> = m.b().entries().to_vec();
        entries[2] = entries[2].add(&CoxPolynomial::variable(v, 0)).unwrap();
        let b = PolyMatrix::new(v, 1, 4, entries);
        let bad = MonadData::new(v, 2, 1, m.a().clone(), b).unwrap();
        let chk = monad_compose_check(&bad);
        assert!(!chk.is_monad);
        // residual = z0 * z2 (third entry of A is z2)
        let expect = CoxPolynomial::variable(v, 0).multiply(&CoxPolynomial::variable(v, 2));
        assert_eq!(chk.residual.entry(0, 0), &expect);
    }

    #[test]
    fn complete_finds_the_koszul_relations() {
        let v = Variety::p2_bundle(0, 0);
        let m = MonadData::p2_pullback_example();
        let basis = monad_complete(v, 2, 1, m.a()).unwrap();
        assert!(!basis.is_empty());
        for b in &basis {
            let cand = MonadData::new(v, 2, 1, m.a().clone(), b.clone()).unwrap();
            assert!(monad_compose_check(&cand).is_monad);
        }
        // the hand-written B lies in the span: appending it cannot raise the
        // coefficient rank
        let s1 = cox_basis(v, (1, 0)).len();
        let to_vec = |pm: &PolyMatrix| {
            let mut out = Vec::new();
            for i in 0..pm.rows() {
                for j in 0..pm.cols() {
                    for mono in cox_basis(v, (1, 0)) {
                        out.push(pm.entry(i, j).coefficient(&mono));
                    }
                }
            }
            out
        };
        let dim = 4 * s1;
        let mut rows: Vec<Rational> = Vec::new();
        for b in &basis {
            rows.extend(to_vec(b));
        }
        let span = RationalMatrix::new(basis.len(), dim, rows.clone());
        rows.extend(to_vec(m.b()));
        let extended = RationalMatrix::new(basis.len() + 1, dim, rows);
        assert_eq!(span.rank(), extended.rank());
    }

    #[test]
    fn complete_with_zero_a_is_everything() {
        let v = Variety::p2_bundle(0, 1);
        let a = PolyMatrix::zero(v, 4, 1);
        let basis = monad_complete(v, 2, 1, &a).unwrap();
        let s1 = cox_basis(v, (1, 0)).len();
        assert_eq!(basis.len(), 4 * s1);
    }

    #[test]
    fn pointwise_check_on_the_pullback_monad() {
        let m = MonadData::p2_pullback_example();
        let rep = pointwise_check(&m, 50, 1);
        assert!(rep.a_injective && rep.b_surjective, "failures: {:?}", rep.failures);
    }

    #[test]
    fn pointwise_check_catches_zero_a() {
        let v = Variety::p2_bundle(0, 0);
        let m = MonadData::p2_pullback_example();
        let bad = MonadData::new(v, 2, 1, PolyMatrix::zero(v, 4, 1), m.b().clone()).unwrap();
        let rep = pointwise_check(&bad, 5, 1);
        assert!(!rep.a_injective);
        assert_eq!(rep.failures.len(), rep.points_checked);
    }

    #[test]
    fn pointwise_check_finds_the_hand_built_degeneracy() {
        // A = (z0, w0 z1, w1 z1, w0 z2) on Y_{1,1} drops rank at
        // z0 = z1 = 0, w0 = 0
        let v = Variety::p2_bundle(1, 1);
        let a = PolyMatrix::new(
            v,
            4,
            1,
            vec![
                CoxPolynomial::variable(v, 0),
                CoxPolynomial::monomial(v, vec![0, 1, 0, 1, 0], rat(1)),
                CoxPolynomial::monomial(v, vec![0, 1, 0, 0, 1], rat(1)),
                CoxPolynomial::monomial(v, vec![0, 0, 1, 1, 0], rat(1)),
            ],
        );
        let b = PolyMatrix::zero(v, 1, 4);
        let m = MonadData::new(v, 2, 1, a, b).unwrap();
        let rep = pointwise_check(&m, 5, 3);
        assert!(!rep.a_injective);
        let witness = vec![rat(0), rat(0), rat(1), rat(0), rat(1)];
        assert!(rep.failures.iter().any(|f| f.point == witness));
    }

    #[test]
    fn fiber_restriction_of_the_pullback_is_constant() {
        let m = MonadData::p2_pullback_example();
        let f1 = restrict_to_fiber(&m, &rat(1), &rat(0));
        let f2 = restrict_to_fiber(&m, &rat(3), &rat(5));
        assert_eq!(f1.a, f2.a);
        assert_eq!(f1.b, f2.b);
        assert!(f1.compose_residual().is_zero());
    }

    #[test]
    fn fiber_restriction_commutes_with_composition() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let v = Variety::p2_bundle(0, 1);
        let (r, n) = (2u32, 1u32);
        let a = PolyMatrix::seeded_degree_u(v, 4, 1, &mut rng);
        let b = PolyMatrix::seeded_degree_u(v, 1, 4, &mut rng);
        let m = MonadData::new(v, r, n, a, b).unwrap();
        let w = (rat(1), rat(1));
        let fib = restrict_to_fiber(&m, &w.0, &w.1);
        let direct = fib.compose_residual();
        let restricted_product = PolyMatrix::from_fn(Variety::P2, n as usize, n as usize, |i, j| {
            m.b().mul_poly(m.a()).entry(i, j).restrict_fiber(&w.0, &w.1)
        });
        assert_eq!(direct, restricted_product);
        // a w1 z2 entry vanishes at (1:0)
        let p = CoxPolynomial::monomial(v, vec![0, 0, 1, 0, 1], rat(1));
        assert!(p.restrict_fiber(&rat(1), &rat(0)).is_zero());
    }

    #[test]
    fn lambda_restriction_ranks() {
        let m = MonadData::p2_pullback_example();
        let lam = restrict_to_lambda(&m);
        // A|_Lambda = (1,0,0,0)^T (the z0 entry), rank 1 = n
        assert_eq!(lam.a_const.rank(), 1);
        // B|_Lambda = (0,1,0,0): the z0 coefficient of the second entry
        assert_eq!(lam.b_const.rank(), 1);
        assert!(lam.trivial_on_lambda);
    }

    #[test]
    fn lambda_restriction_detects_degenerate_a() {
        let v = Variety::p2_bundle(1, 2);
        // every entry proportional to z1 or z2: constants vanish
        let a = PolyMatrix::from_fn(v, 4, 1, |i, _| {
            if i % 2 == 0 {
                CoxPolynomial::monomial(v, vec![0, 1, 0, 1, 0], rat(1))
            } else {
                CoxPolynomial::monomial(v, vec![0, 0, 1, 2, 0], rat(1))
            }
        });
        let b = PolyMatrix::zero(v, 1, 4);
        let m = MonadData::new(v, 2, 1, a, b).unwrap();
        let lam = restrict_to_lambda(&m);
        assert!(lam.a_const.is_zero());
        assert!(!lam.trivial_on_lambda);
    }

    #[test]
    fn lambda_restriction_matches_direct_rank_on_seeded_monads() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let v = Variety::p2_bundle(1, 2);
        for _ in 0..5 {
            let a = PolyMatrix::seeded_degree_u(v, 7, 2, &mut rng);
            let b = PolyMatrix::seeded_degree_u(v, 2, 7, &mut rng);
            let m = MonadData::new(v, 3, 2, a, b).unwrap();
            let lam = restrict_to_lambda(&m);
            // on Y_{1,2} the z0 coefficient is the whole restriction
            let direct_a = m.a().evaluate(&[rat(1), rat(0), rat(0), rat(1), rat(1)]);
            assert_eq!(lam.a_const.rank(), direct_a.rank());
            assert_eq!(
                lam.trivial_on_lambda,
                lam.a_const.rank() == 2 && lam.b_const.rank() == 2
            );
        }
    }

    #[test]
    fn chern_of_the_monad_cohomology() {
        for (a, b, r, n) in [(0u32, 0u32, 2u32, 3u32), (2, 3, 4, 5), (0, 1, 2, 0)] {
            let v = Variety::p2_bundle(a, b);
            let ch = monad_chern(v, r, n).unwrap();
            assert_eq!(ch.rank(), rat(r as i64));
            assert!(ch.c1().is_zero());
            let u2 = ChowClass::divisor(v, (1, 0)).power(2).unwrap();
            assert_eq!(ch.c2(), u2.scale(&rat(n as i64)));
            assert!(ch.c3().is_zero());
        }
    }

    #[test]
    fn expected_dims_match_the_formula_and_identity() {
        let d = expected_dims(0, 1, 2, 2).unwrap();
        assert_eq!(d.m, 13);
        assert_eq!(d.chi_end, -12);
        assert_eq!(d.v_dim_lower_bound, 13);
        let d = expected_dims(0, 0, 2, 2).unwrap();
        assert_eq!(d.m, 5);
        let d = expected_dims(1, 1, 3, 3).unwrap();
        assert_eq!(d.m, 46);
        for a in 0..=3u32 {
            for b in a..=3 {
                for r in 2..=5u32 {
                    for n in r..=5 {
                        let d = expected_dims(a, b, r, n).unwrap();
                        assert_eq!(d.v_dim_lower_bound, d.m, "({a},{b},{r},{n})");
                    }
                }
            }
        }
        assert!(expected_dims(0, 1, 2, 1).is_err());
    }

    #[test]
    fn chi_end_agrees_with_riemann_roch() {
        for (a, b, r, n) in [(0u32, 1u32, 2u32, 2u32), (1, 2, 3, 4)] {
            let v = Variety::p2_bundle(a, b);
            let d = expected_dims(a, b, r, n).unwrap();
            // End(F) has rank r^2, c1 = 0, c2 = 2 r n u^2, c3 = 0
            let u2 = ChowClass::divisor(v, (1, 0)).power(2).unwrap();
            let ch = ChernData::from_chern_classes(
                v,
                rat((r * r) as i64),
                &ChowClass::zero(v),
                &u2.scale(&rat(2 * (r as i64) * (n as i64))),
                &ChowClass::zero(v),
            )
            .unwrap();
            assert_eq!(euler_characteristic(&ch).unwrap(), rat(d.chi_end));
        }
    }

    #[test]
    fn family_chern_reports() {
        let v = Variety::p2_bundle(1, 2);
        let u2 = ChowClass::divisor(v, (1, 0)).power(2).unwrap();
        let rep = family_chern(v, &FamilyKind::F0Ft { r: 3, n: 2 }).unwrap();
        assert!(rep.chern.c1().is_zero());
        assert_eq!(rep.chern.c2(), u2.scale(&rat(2)));
        assert!(rep.asserted_c2.is_none());
        let rep = family_chern(v, &FamilyKind::F0Ft { r: 3, n: 0 }).unwrap();
        assert!(rep.chern.c2().is_zero());
        // the Serre family: mechanical c2 = (n-1) u^2 vs asserted n u^2
        let rep = family_chern(v, &FamilyKind::SerreRank2 { n: 3 }).unwrap();
        assert_eq!(rep.chern.rank(), rat(2));
        assert!(rep.chern.c1().is_zero());
        assert_eq!(rep.chern.c2(), u2.scale(&rat(2)));
        assert_eq!(rep.asserted_c2.unwrap(), u2.scale(&rat(3)));
    }

    #[test]
    fn group_action_preserves_the_monad_condition() {
        use rand::SeedableRng;
        let m = MonadData::p2_pullback_example();
        // identity fixes the datum
        let id = GroupElementG::identity(2, 1);
        assert_eq!(group_act(&id, &m).unwrap(), m);
        // scalars preserve B·A = 0 and the pointwise ranks
        let eps = GroupElementG {
            g1: RationalMatrix::identity(1).scale(&rat(3)),
            g: RationalMatrix::identity(4).scale(&rat(3)),
            g2: RationalMatrix::identity(1).scale(&rat(3)),
        };
        let acted = group_act(&eps, &m).unwrap();
        assert!(monad_compose_check(&acted).is_monad);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let g = GroupElementG::seeded(2, 1, &mut rng);
            let acted = group_act(&g, &m).unwrap();
            assert!(monad_compose_check(&acted).is_monad);
            let rep = pointwise_check(&acted, 20, 5);
            assert!(rep.a_injective && rep.b_surjective);
        }
    }

    #[test]
    fn singular_group_element_is_rejected() {
        let m = MonadData::p2_pullback_example();
        let g = GroupElementG {
            g1: RationalMatrix::zero(1, 1),
            g: RationalMatrix::identity(4),
            g2: RationalMatrix::identity(1),
        };
        assert_eq!(group_act(&g, &m).unwrap_err(), MonadError::SingularGroupElement);
    }
}
