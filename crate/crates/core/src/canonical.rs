//! Canonical forms for the extension data attached to a point configuration.
//!
//! A [`MatrixPairE`] is a pair of `r×n` rational matrices (the "left" and
//! "right" halves) whose columns are coefficients in the basis
//! `1, ẑ, …, ẑ^{n-1}` of `C[z]/∏(z - x_i)`, together with the configuration
//! `x` of `n` distinct points. Rows are split `r = r₁ + r₂` by the generic
//! splitting for `n_F = n`.
//!
//! Two group actions matter:
//!
//! * the block upper-triangular [`AutLElement`] `(A, B, H(z) = H₀ + z·H₁)`,
//!   where the `z·H₁` term acts through multiplication by `z` in
//!   `C[z]/∏(z - x_i)` (the companion-matrix shift of coefficient columns);
//! * the torus `(Q*)ⁿ` scaling the point-evaluation coordinates.
//!
//! [`autl_reduce`] brings the left half to the slice form
//! `[I] = 1, [III] = 0, [IV] = 1, [V] = 0`; [`t_reduce`] normalizes the top
//! evaluation row of the right half to all ones. The two reductions are
//! verified separately (they act on both halves and do not commute); the
//! codimension bookkeeping lives in [`slice_report`].

use num_traits::{One, Zero};
use rand::Rng;

use crate::matrix::RationalMatrix;
use crate::rational::{rat, Rational};
use crate::strata::generic_split;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockName {
    /// `[IV]` failed to invert.
    IV,
    /// `W = [IV'][IV]⁻¹[VI] - [VI']` failed to invert.
    W,
    /// `[I]` (after the H-steps) failed to invert.
    I,
}

impl std::fmt::Display for BlockName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BlockName::IV => write!(f, "IV"),
            BlockName::W => write!(f, "W"),
            BlockName::I => write!(f, "I"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonicalError {
    #[error("DuplicatePoints: x[{i}] = x[{j}]")]
    DuplicatePoints { i: usize, j: usize },
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("TooFewColumns: need n >= r + r2 = {need}, got n = {n}")]
    TooFewColumns { need: usize, n: usize },
    #[error("GenericityFailure: block {block} not invertible")]
    GenericityFailure { block: BlockName },
    #[error("ZeroEvaluationEntry: top right row evaluates to 0 at x[{i}]")]
    ZeroEvaluationEntry { i: usize },
}

/// `n` distinct rational points with their elementary symmetric functions,
/// multiplication-by-z (companion shift) matrix, and Vandermonde matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    points: Vec<Rational>,
    /// `s_1 … s_n`
    sym: Vec<Rational>,
    /// coefficient columns: `shift(V) = V · S`
    shift: RationalMatrix,
    /// `W[k][i] = x_i^k`; row vector of coefficients times `W` = evaluations
    vandermonde: RationalMatrix,
    vandermonde_inv: RationalMatrix,
}

impl PointConfig {
    pub fn new(points: Vec<Rational>) -> Result<Self, CanonicalError> {
        let n = points.len();
        assert!(n >= 1, "empty point configuration");
        for i in 0..n {
            for j in (i + 1)..n {
                if points[i] == points[j] {
                    return Err(CanonicalError::DuplicatePoints { i, j });
                }
            }
        }
        // expand prod (z - x_i); coeffs[k] multiplies z^k
        let mut coeffs = vec![Rational::one()];
        for x in &points {
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * x;
            }
            coeffs = next;
        }
        // s_k = (-1)^k * coeff of z^{n-k}
        let sym: Vec<Rational> = (1..=n)
            .map(|k| {
                let c = coeffs[n - k].clone();
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        // column j of S is e_{j-1} + (-1)^{n-1-j} s_{n-j} e_{n-1}
        let mut shift = RationalMatrix::zero(n, n);
        for j in 0..n {
            if j >= 1 {
                shift[(j - 1, j)] = Rational::one();
            }
            let s = sym[n - j - 1].clone(); // s_{n-j}
            let signed = if (n - j - 1).is_multiple_of(2) { s } else { -s };
            shift[(n - 1, j)] = &shift[(n - 1, j)] + signed;
        }
        let vandermonde = RationalMatrix::from_fn(n, n, |k, i| crate::rational::pow(&points[i], k as u32));
        let vandermonde_inv = vandermonde
            .inverse()
            .expect("Vandermonde of distinct points is invertible");
        Ok(Self { points, sym, shift, vandermonde, vandermonde_inv })
    }

    /// The configuration `x = (0, 1, …, n-1)` used by the seeded suites.
    pub fn integers(n: usize) -> Self {
        Self::new((0..n as i64).map(rat).collect()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// `s_k`, 1-indexed.
    pub fn elementary_symmetric(&self, k: usize) -> &Rational {
        &self.sym[k - 1]
    }

    pub fn shift_matrix(&self) -> &RationalMatrix {
        &self.shift
    }

    pub fn vandermonde(&self) -> &RationalMatrix {
        &self.vandermonde
    }
}

/// Which half (or both) a group element acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    Left,
    Right,
    Both,
}

/// The extension datum: two `r×n` coefficient matrices over a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPairE {
    r1: usize,
    r2: usize,
    left: RationalMatrix,
    right: RationalMatrix,
    config: PointConfig,
}

impl MatrixPairE {
    /// `r1, r2` are taken from the generic splitting of `(r, n_F = n)`.
    pub fn new(
        r: usize,
        left: RationalMatrix,
        right: RationalMatrix,
        config: PointConfig,
    ) -> Result<Self, CanonicalError> {
        let n = config.n();
        if left.rows() != r || right.rows() != r || left.cols() != n || right.cols() != n {
            return Err(CanonicalError::ShapeMismatch(format!(
                "want two {r}x{n} halves, got {}x{} and {}x{}",
                left.rows(),
                left.cols(),
                right.rows(),
                right.cols()
            )));
        }
        let split = generic_split(r as u32, n as u32);
        let (r1, r2) = match split.parts() {
            [(_, r1)] => (*r1 as usize, 0usize),
            [(_, r1), (_, r2)] => (*r1 as usize, *r2 as usize),
            _ => unreachable!("generic split has at most two parts"),
        };
        Ok(Self { r1, r2, left, right, config })
    }

    pub fn seeded(r: usize, config: PointConfig, rng: &mut impl Rng) -> Self {
        let n = config.n();
        let left = RationalMatrix::from_fn(r, n, |_, _| rat(rng.gen_range(-9..=9)));
        let right = RationalMatrix::from_fn(r, n, |_, _| rat(rng.gen_range(-9..=9)));
        Self::new(r, left, right, config).unwrap()
    }

    /// A seeded datum from the genericity locus: both reductions succeed.
    /// Integer draws land on the degeneracy divisors with small positive
    /// probability, so rejection-sample a bounded number of times.
    pub fn seeded_generic(r: usize, config: &PointConfig, rng: &mut impl Rng) -> Self {
        for _ in 0..100 {
            let e = Self::seeded(r, config.clone(), rng);
            if autl_reduce(&e).is_ok() && t_reduce(&e).is_ok() {
                return e;
            }
        }
        panic!("no generic datum in 100 draws; the locus should be dense");
    }

    pub fn r(&self) -> usize {
        self.r1 + self.r2
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn r2(&self) -> usize {
        self.r2
    }

    pub fn n(&self) -> usize {
        self.config.n()
    }

    pub fn left(&self) -> &RationalMatrix {
        &self.left
    }

    pub fn right(&self) -> &RationalMatrix {
        &self.right
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    fn half(&self, which: Half) -> &RationalMatrix {
        match which {
            Half::Left => &self.left,
            Half::Right => &self.right,
            Half::Both => panic!("pick one half"),
        }
    }
}

/// An automorphism `(A, B, H(z) = H₀ + z·H₁)` of `O(-a₁)^{r₁} ⊕ O(-a₁-1)^{r₂}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutLElement {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
    pub h0: RationalMatrix,
    pub h1: RationalMatrix,
}

impl AutLElement {
    pub fn new(a: RationalMatrix, b: RationalMatrix, h0: RationalMatrix, h1: RationalMatrix) -> Self {
        assert!(a.is_square() && b.is_square(), "A and B must be square");
        assert_eq!(h0.rows(), a.rows(), "H0 height");
        assert_eq!(h0.cols(), b.rows(), "H0 width");
        assert_eq!(h1.rows(), a.rows(), "H1 height");
        assert_eq!(h1.cols(), b.rows(), "H1 width");
        Self { a, b, h0, h1 }
    }

    pub fn identity(r1: usize, r2: usize) -> Self {
        Self {
            a: RationalMatrix::identity(r1),
            b: RationalMatrix::identity(r2),
            h0: RationalMatrix::zero(r1, r2),
            h1: RationalMatrix::zero(r1, r2),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a == RationalMatrix::identity(self.a.rows())
            && self.b == RationalMatrix::identity(self.b.rows())
            && self.h0.is_zero()
            && self.h1.is_zero()
    }

    /// Group law: `(g · h)` acts as `g` after `h`;
    /// `H_{gh}(z) = A_g H_h(z) + H_g(z) B_h`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a.mul(&other.a),
            b: self.b.mul(&other.b),
            h0: self.a.mul(&other.h0).add(&self.h0.mul(&other.b)),
            h1: self.a.mul(&other.h1).add(&self.h1.mul(&other.b)),
        }
    }

    pub fn seeded(r1: usize, r2: usize, rng: &mut impl Rng) -> Self {
        loop {
            let a = RationalMatrix::from_fn(r1, r1, |_, _| rat(rng.gen_range(-4..=4)));
            let b = RationalMatrix::from_fn(r2, r2, |_, _| rat(rng.gen_range(-4..=4)));
            if a.rank() < r1 || b.rank() < r2 {
                continue;
            }
            let h0 = RationalMatrix::from_fn(r1, r2, |_, _| rat(rng.gen_range(-4..=4)));
            let h1 = RationalMatrix::from_fn(r1, r2, |_, _| rat(rng.gen_range(-4..=4)));
            return Self::new(a, b, h0, h1);
        }
    }
}

/// Applies a group element to the selected half (or both):
/// `U' = A·U + H₀·V + H₁·shift(V)`, `V' = B·V`.
pub fn act_autl(g: &AutLElement, e: &MatrixPairE, which: Half) -> Result<MatrixPairE, CanonicalError> {
    if g.a.rows() != e.r1 || g.b.rows() != e.r2 {
        return Err(CanonicalError::ShapeMismatch(format!(
            "group element for split ({},{}), datum has ({},{})",
            g.a.rows(),
            g.b.rows(),
            e.r1,
            e.r2
        )));
    }
    let apply = |m: &RationalMatrix| -> RationalMatrix {
        let u = m.row_slice(0, e.r1);
        let v = m.row_slice(e.r1, e.r1 + e.r2);
        let shifted = v.mul(e.config.shift_matrix());
        let new_u = g.a.mul(&u).add(&g.h0.mul(&v)).add(&g.h1.mul(&shifted));
        let new_v = g.b.mul(&v);
        new_u.vstack(&new_v)
    };
    let (left, right) = match which {
        Half::Left => (apply(&e.left), e.right.clone()),
        Half::Right => (e.left.clone(), apply(&e.right)),
        Half::Both => (apply(&e.left), apply(&e.right)),
    };
    Ok(MatrixPairE { r1: e.r1, r2: e.r2, left, right, config: e.config.clone() })
}

/// The nine leading blocks of one half, consuming columns `0 .. r + r₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub i: RationalMatrix,
    pub ii: RationalMatrix,
    pub ii_shift: RationalMatrix,
    pub iii: RationalMatrix,
    pub iv: RationalMatrix,
    pub iv_shift: RationalMatrix,
    pub v: RationalMatrix,
    pub vi: RationalMatrix,
    pub vi_shift: RationalMatrix,
}

pub fn extract_blocks(e: &MatrixPairE, which: Half) -> Result<Blocks, CanonicalError> {
    let (r1, r2) = (e.r1, e.r2);
    let r = r1 + r2;
    let n = e.n();
    if n < r + r2 {
        return Err(CanonicalError::TooFewColumns { need: r + r2, n });
    }
    let m = e.half(which);
    let u = m.row_slice(0, r1);
    let v = m.row_slice(r1, r);
    let shifted = v.mul(e.config.shift_matrix());
    Ok(Blocks {
        i: u.column_slice(0, r1),
        ii: v.column_slice(0, r1),
        ii_shift: shifted.column_slice(0, r1),
        iii: u.column_slice(r1, r),
        iv: v.column_slice(r1, r),
        iv_shift: shifted.column_slice(r1, r),
        v: u.column_slice(r, r + r2),
        vi: v.column_slice(r, r + r2),
        vi_shift: shifted.column_slice(r, r + r2),
    })
}

/// Is the left half in slice form `[I] = 1, [III] = 0, [IV] = 1, [V] = 0`?
pub fn is_autl_canonical(e: &MatrixPairE) -> Result<bool, CanonicalError> {
    let b = extract_blocks(e, Half::Left)?;
    Ok(b.i == RationalMatrix::identity(e.r1)
        && b.iii.is_zero()
        && b.iv == RationalMatrix::identity(e.r2)
        && b.v.is_zero())
}

#[derive(Debug, Clone)]
pub struct AutLReduction {
    pub canonical: MatrixPairE,
    pub g_used: AutLElement,
}

/// Reduction to the slice form, following the four-step normalization.
///
/// Genericity is checked in order: `[IV]` invertible, then
/// `W = [IV'][IV]⁻¹[VI] - [VI']` invertible, then (after the `H`-steps)
/// `[I]` invertible. The composed group element is returned;
/// `act_autl(g_used, input, Both) == canonical`.
pub fn autl_reduce(e: &MatrixPairE) -> Result<AutLReduction, CanonicalError> {
    let (r1, r2) = (e.r1, e.r2);
    let mut g = AutLElement::identity(r1, r2);
    let mut cur = e.clone();

    if r2 > 0 {
        // step 1: [IV] -> 1
        let blocks = extract_blocks(&cur, Half::Left)?;
        let iv_inv = blocks
            .iv
            .inverse()
            .map_err(|_| CanonicalError::GenericityFailure { block: BlockName::IV })?;
        let g1 = AutLElement::new(
            RationalMatrix::identity(r1),
            iv_inv,
            RationalMatrix::zero(r1, r2),
            RationalMatrix::zero(r1, r2),
        );
        cur = act_autl(&g1, &cur, Half::Both)?;
        g = g1.compose(&g);

        // step 2: cancel [III] with H0 = -[III] (now [IV] = 1, H1 = 0)
        let blocks = extract_blocks(&cur, Half::Left)?;
        let g2 = AutLElement::new(
            RationalMatrix::identity(r1),
            RationalMatrix::identity(r2),
            blocks.iii.scale(&-Rational::one()),
            RationalMatrix::zero(r1, r2),
        );
        cur = act_autl(&g2, &cur, Half::Both)?;
        g = g2.compose(&g);

        // step 3: cancel [V] while keeping [III] = 0 and [IV] = 1:
        // H1 = [V]·W⁻¹ with W = [IV'][VI] - [VI'], H0 = -H1·[IV']
        let blocks = extract_blocks(&cur, Half::Left)?;
        let w = blocks.iv_shift.mul(&blocks.vi).sub(&blocks.vi_shift);
        let w_inv = w
            .inverse()
            .map_err(|_| CanonicalError::GenericityFailure { block: BlockName::W })?;
        let h1 = blocks.v.mul(&w_inv);
        let h0 = h1.mul(&blocks.iv_shift).scale(&-Rational::one());
        let g3 = AutLElement::new(
            RationalMatrix::identity(r1),
            RationalMatrix::identity(r2),
            h0,
            h1,
        );
        cur = act_autl(&g3, &cur, Half::Both)?;
        g = g3.compose(&g);
    }

    // final step: [I] -> 1
    let blocks = extract_blocks(&cur, Half::Left)?;
    let i_inv = blocks
        .i
        .inverse()
        .map_err(|_| CanonicalError::GenericityFailure { block: BlockName::I })?;
    let g4 = AutLElement::new(
        i_inv,
        RationalMatrix::identity(r2),
        RationalMatrix::zero(r1, r2),
        RationalMatrix::zero(r1, r2),
    );
    cur = act_autl(&g4, &cur, Half::Both)?;
    g = g4.compose(&g);

    debug_assert!(is_autl_canonical(&cur).unwrap());
    Ok(AutLReduction { canonical: cur, g_used: g })
}

/// Solves `g × e = e` on the left half as a linear system in
/// `(A - 1, H₀, H₁, B - 1)` and returns the affine stabilizer basis: the
/// identity first, then `identity + k` for each kernel direction. A trivial
/// stabilizer is exactly a one-element answer.
pub fn stabilizer_solve(e: &MatrixPairE) -> Result<Vec<AutLElement>, CanonicalError> {
    let (r1, r2) = (e.r1, e.r2);
    let n = e.n();
    let m = &e.left;
    let u = m.row_slice(0, r1);
    let v = m.row_slice(r1, r1 + r2);
    let shifted = v.mul(e.config.shift_matrix());
    let unknowns = r1 * r1 + 2 * r1 * r2 + r2 * r2;
    let equations = (r1 + r2) * n;
    let mut sys = RationalMatrix::zero(equations, unknowns);
    // unknown layout: A'[p][q] | H0[p][q] | H1[p][q] | B'[p][q]
    let a_at = |p: usize, q: usize| p * r1 + q;
    let h0_at = |p: usize, q: usize| r1 * r1 + p * r2 + q;
    let h1_at = |p: usize, q: usize| r1 * r1 + r1 * r2 + p * r2 + q;
    let b_at = |p: usize, q: usize| r1 * r1 + 2 * r1 * r2 + p * r2 + q;
    for i in 0..r1 {
        for j in 0..n {
            let row = i * n + j;
            for q in 0..r1 {
                sys[(row, a_at(i, q))] = u[(q, j)].clone();
            }
            for q in 0..r2 {
                sys[(row, h0_at(i, q))] = v[(q, j)].clone();
                sys[(row, h1_at(i, q))] = shifted[(q, j)].clone();
            }
        }
    }
    for i in 0..r2 {
        for j in 0..n {
            let row = (r1 + i) * n + j;
            for q in 0..r2 {
                sys[(row, b_at(i, q))] = v[(q, j)].clone();
            }
        }
    }
    let kernel = sys.kernel();
    let mut out = vec![AutLElement::identity(r1, r2)];
    for k in 0..kernel.cols() {
        let mut g = AutLElement::identity(r1, r2);
        for p in 0..r1 {
            for q in 0..r1 {
                g.a[(p, q)] = &g.a[(p, q)] + &kernel[(a_at(p, q), k)];
            }
        }
        for p in 0..r1 {
            for q in 0..r2 {
                g.h0[(p, q)] = kernel[(h0_at(p, q), k)].clone();
                g.h1[(p, q)] = kernel[(h1_at(p, q), k)].clone();
            }
        }
        for p in 0..r2 {
            for q in 0..r2 {
                g.b[(p, q)] = &g.b[(p, q)] + &kernel[(b_at(p, q), k)];
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Torus action: scales evaluation coordinate `i` of both halves by `t_i`.
pub fn act_torus(e: &MatrixPairE, t: &[Rational]) -> MatrixPairE {
    assert_eq!(t.len(), e.n(), "one scalar per point");
    assert!(t.iter().all(|x| !x.is_zero()), "torus elements are nonzero");
    let w = e.config.vandermonde();
    let w_inv = &e.config.vandermonde_inv;
    let scale = RationalMatrix::from_fn(e.n(), e.n(), |i, j| {
        if i == j {
            t[i].clone()
        } else {
            Rational::zero()
        }
    });
    let conj = w.mul(&scale).mul(w_inv);
    MatrixPairE {
        r1: e.r1,
        r2: e.r2,
        left: e.left.mul(&conj),
        right: e.right.mul(&conj),
        config: e.config.clone(),
    }
}

#[derive(Debug, Clone)]
pub struct TorusReduction {
    pub scaled: MatrixPairE,
    pub t: Vec<Rational>,
    pub c: Rational,
}

/// Normalizes the top evaluation row of the right half to all ones by the
/// torus action (so `c = 1`), returning the coefficient-basis result.
/// Unique up to one global scalar, which the normalization spends.
pub fn t_reduce(e: &MatrixPairE) -> Result<TorusReduction, CanonicalError> {
    let n = e.n();
    let w = e.config.vandermonde();
    let top = e.right.row_slice(0, 1);
    let evals = top.mul(w);
    let mut t = Vec::with_capacity(n);
    for i in 0..n {
        let ev = &evals[(0, i)];
        if ev.is_zero() {
            return Err(CanonicalError::ZeroEvaluationEntry { i });
        }
        t.push(Rational::one() / ev);
    }
    let scaled = act_torus(e, &t);
    Ok(TorusReduction { scaled, t, c: Rational::one() })
}

/// Codimension bookkeeping of the combined slice inside the `2nr`-dimensional
/// extension space: `n + r² - 1` total, split into `r²` group constraints
/// (`r₁² + 2r₁r₂ + r₂²`) and `n - 1` torus constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceReport {
    pub codim: i64,
    pub autl_constraints: i64,
    pub torus_constraints: i64,
}

pub fn slice_report(r: u32, n: u32) -> SliceReport {
    assert!(n >= r && r >= 2, "need n >= r >= 2");
    let split = generic_split(r, n);
    let (r1, r2) = match split.parts() {
        [(_, r1)] => (*r1 as i64, 0i64),
        [(_, r1), (_, r2)] => (*r1 as i64, *r2 as i64),
        _ => unreachable!(),
    };
    let autl = r1 * r1 + 2 * r1 * r2 + r2 * r2;
    let torus = n as i64 - 1;
    let report = SliceReport {
        codim: n as i64 + (r as i64) * (r as i64) - 1,
        autl_constraints: autl,
        torus_constraints: torus,
    };
    debug_assert_eq!(report.autl_constraints + report.torus_constraints, report.codim);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pair(r: usize, n: usize, seed: u64) -> MatrixPairE {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        MatrixPairE::seeded_generic(r, &PointConfig::integers(n), &mut rng)
    }

    #[test]
    fn symmetric_functions_and_shift_for_two_points() {
        let cfg = PointConfig::new(vec![rat(1), rat(2)]).unwrap();
        assert_eq!(*cfg.elementary_symmetric(1), rat(3));
        assert_eq!(*cfg.elementary_symmetric(2), rat(2));
        // shift of [v0 v1] has columns (-2 v1, v0 + 3 v1)
        let v = RationalMatrix::from_i64(&[&[5, 7]]);
        let shifted = v.mul(cfg.shift_matrix());
        assert_eq!(shifted, RationalMatrix::from_i64(&[&[-14, 26]]));
    }

    #[test]
    fn shift_matrix_is_multiplication_by_z() {
        // S W = W diag(x): multiplication by z in coefficients matches
        // pointwise multiplication of evaluations
        for pts in [vec![rat(0), rat(1), rat(2)], vec![ratio(1, 2), rat(-1), rat(3), rat(7)]] {
            let cfg = PointConfig::new(pts.clone()).unwrap();
            let w = cfg.vandermonde();
            let sw = cfg.shift_matrix().mul(w);
            let wd = RationalMatrix::from_fn(cfg.n(), cfg.n(), |k, i| &w[(k, i)] * &pts[i]);
            assert_eq!(sw, wd);
        }
    }

    #[test]
    fn first_shift_column_is_the_s_n_term() {
        let cfg = PointConfig::integers(4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = RationalMatrix::from_fn(2, 4, |_, _| rat(rng.gen_range(-5..=5)));
        let shifted = v.mul(cfg.shift_matrix());
        let n = 4usize;
        let sn = cfg.elementary_symmetric(n).clone();
        let sign = if (n - 1).is_multiple_of(2) { rat(1) } else { rat(-1) };
        for row in 0..2 {
            assert_eq!(shifted[(row, 0)], &sign * &sn * &v[(row, n - 1)]);
        }
    }

    #[test]
    fn duplicate_points_are_rejected() {
        assert!(matches!(
            PointConfig::new(vec![rat(1), rat(1)]),
            Err(CanonicalError::DuplicatePoints { .. })
        ));
    }

    #[test]
    fn identity_acts_trivially() {
        let e = pair(2, 3, 42);
        let id = AutLElement::identity(e.r1(), e.r2());
        let acted = act_autl(&id, &e, Half::Both).unwrap();
        assert_eq!(acted, e);
    }

    #[test]
    fn group_law_matches_composed_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (r, n) in [(2usize, 3usize), (3, 5), (3, 7)] {
            let e = pair(r, n, 1000 + n as u64);
            for _ in 0..10 {
                let g = AutLElement::seeded(e.r1(), e.r2(), &mut rng);
                let h = AutLElement::seeded(e.r1(), e.r2(), &mut rng);
                let two_steps = act_autl(&g, &act_autl(&h, &e, Half::Both).unwrap(), Half::Both).unwrap();
                let one_step = act_autl(&g.compose(&h), &e, Half::Both).unwrap();
                assert_eq!(two_steps, one_step);
            }
        }
    }

    #[test]
    fn blocks_consume_the_right_columns() {
        let e = pair(3, 7, 9);
        assert_eq!((e.r1(), e.r2()), (2, 1));
        let b = extract_blocks(&e, Half::Left).unwrap();
        assert_eq!((b.i.rows(), b.i.cols()), (2, 2));
        assert_eq!((b.iii.rows(), b.iii.cols()), (2, 1));
        assert_eq!((b.v.rows(), b.v.cols()), (2, 1));
        assert_eq!((b.iv.rows(), b.iv.cols()), (1, 1));
        // block I is the first r1 columns of the U rows
        assert_eq!(b.i, e.left().row_slice(0, 2).column_slice(0, 2));
    }

    #[test]
    fn too_few_columns_is_reported() {
        // n < r forces r2 = n, so n >= r + r2 fails
        let cfg = PointConfig::integers(2);
        let e = MatrixPairE::new(3, RationalMatrix::zero(3, 2), RationalMatrix::zero(3, 2), cfg).unwrap();
        assert_eq!(
            extract_blocks(&e, Half::Left).unwrap_err(),
            CanonicalError::TooFewColumns { need: 5, n: 2 }
        );
        // for n >= r the generic split always satisfies the invariant
        for r in 2..=6usize {
            for n in r..=14usize {
                let split = generic_split(r as u32, n as u32);
                let r2 = match split.parts() {
                    [_] => 0usize,
                    [_, (_, r2)] => *r2 as usize,
                    _ => unreachable!(),
                };
                assert!(n >= r + r2, "r={r} n={n} r2={r2}");
            }
        }
    }

    #[test]
    fn acting_then_extracting_matches_the_block_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (r, n) in [(2usize, 3usize), (3, 5), (3, 7)] {
            let e = pair(r, n, 77 + n as u64);
            let before = extract_blocks(&e, Half::Left).unwrap();
            for _ in 0..5 {
                let g = AutLElement::seeded(e.r1(), e.r2(), &mut rng);
                let after = extract_blocks(&act_autl(&g, &e, Half::Left).unwrap(), Half::Left).unwrap();
                // g x [I] = A[I] + H0[II] + H1[II']
                let expect_i = g.a.mul(&before.i).add(&g.h0.mul(&before.ii)).add(&g.h1.mul(&before.ii_shift));
                assert_eq!(after.i, expect_i);
                // g x [III] = A[III] + H0[IV] + H1[IV']
                let expect_iii = g.a.mul(&before.iii).add(&g.h0.mul(&before.iv)).add(&g.h1.mul(&before.iv_shift));
                assert_eq!(after.iii, expect_iii);
                // g x [IV] = B[IV]
                assert_eq!(after.iv, g.b.mul(&before.iv));
                // g x [V] = A[V] + H0[VI] + H1[VI']
                let expect_v = g.a.mul(&before.v).add(&g.h0.mul(&before.vi)).add(&g.h1.mul(&before.vi_shift));
                assert_eq!(after.v, expect_v);
            }
        }
    }

    #[test]
    fn reduce_reaches_the_slice_and_is_idempotent() {
        for (r, n) in [(2usize, 3usize), (2, 4), (3, 5), (3, 7)] {
            let e = pair(r, n, 5 + r as u64 * 100 + n as u64);
            let red = autl_reduce(&e).unwrap();
            assert!(is_autl_canonical(&red.canonical).unwrap());
            assert_eq!(act_autl(&red.g_used, &e, Half::Both).unwrap(), red.canonical);
            let again = autl_reduce(&red.canonical).unwrap();
            assert_eq!(again.canonical, red.canonical);
            assert!(again.g_used.is_identity());
        }
    }

    #[test]
    fn reduce_is_orbit_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (r, n) in [(2usize, 3usize), (3, 5)] {
            let e = pair(r, n, 900 + n as u64);
            let base = autl_reduce(&e).unwrap().canonical;
            for _ in 0..10 {
                let g = AutLElement::seeded(e.r1(), e.r2(), &mut rng);
                let moved = act_autl(&g, &e, Half::Both).unwrap();
                let red = autl_reduce(&moved).unwrap();
                assert_eq!(red.canonical, base);
            }
        }
    }

    #[test]
    fn degenerate_iv_is_reported() {
        let cfg = PointConfig::integers(3);
        // r = 2, n = 3: r1 = r2 = 1; column 1 of the V row is the IV block;
        // make it zero
        let left = RationalMatrix::from_i64(&[&[1, 2, 3], &[4, 0, 6]]);
        let right = RationalMatrix::from_i64(&[&[1, 1, 1], &[1, 1, 1]]);
        let e = MatrixPairE::new(2, left, right, cfg).unwrap();
        assert_eq!(
            autl_reduce(&e).unwrap_err(),
            CanonicalError::GenericityFailure { block: BlockName::IV }
        );
    }

    #[test]
    fn stabilizer_of_generic_canonical_point_is_trivial() {
        for (r, n, seed) in [(2usize, 3usize, 1u64), (2, 4, 2), (3, 5, 3), (3, 7, 4)] {
            let e = pair(r, n, seed);
            let canonical = autl_reduce(&e).unwrap().canonical;
            let stab = stabilizer_solve(&canonical).unwrap();
            assert_eq!(stab.len(), 1, "(r,n)=({r},{n})");
            assert!(stab[0].is_identity());
        }
    }

    #[test]
    fn degenerate_datum_has_larger_stabilizer() {
        // V = 0 leaves H0, H1 and B unconstrained: stabilizer dimension 3
        let cfg = PointConfig::integers(3);
        let left = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 0]]);
        let right = RationalMatrix::zero(2, 3);
        let e = MatrixPairE::new(2, left, right, cfg).unwrap();
        let stab = stabilizer_solve(&e).unwrap();
        assert_eq!(stab.len(), 4);
    }

    #[test]
    fn t_reduce_examples() {
        // top coefficient row (1,1) over x = (1,2): evaluations (2,3)
        let cfg = PointConfig::new(vec![rat(1), rat(2)]).unwrap();
        let right = RationalMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let left = RationalMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let e = MatrixPairE::new(2, left, right, cfg).unwrap();
        let red = t_reduce(&e).unwrap();
        assert_eq!(red.t, vec![ratio(1, 2), ratio(1, 3)]);
        assert_eq!(red.c, rat(1));
        // idempotence: next reduction scales by all ones
        let again = t_reduce(&red.scaled).unwrap();
        assert!(again.t.iter().all(|x| *x == rat(1)));
        assert_eq!(again.scaled, red.scaled);
    }

    #[test]
    fn t_reduce_detects_zero_evaluation() {
        let cfg = PointConfig::new(vec![rat(0), rat(1)]).unwrap();
        // top row is the polynomial z, which vanishes at x = 0
        let right = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let left = RationalMatrix::identity(2);
        let e = MatrixPairE::new(2, left, right, cfg).unwrap();
        assert_eq!(
            t_reduce(&e).unwrap_err(),
            CanonicalError::ZeroEvaluationEntry { i: 0 }
        );
    }

    #[test]
    fn t_reduce_is_orbit_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (r, n) in [(2usize, 3usize), (3, 5)] {
            let e = pair(r, n, 400 + n as u64);
            let base = t_reduce(&e).unwrap();
            for _ in 0..10 {
                let t: Vec<Rational> = (0..n)
                    .map(|_| {
                        let num = loop {
                            let x = rng.gen_range(-5..=5i64);
                            if x != 0 {
                                break x;
                            }
                        };
                        ratio(num, rng.gen_range(1..=3))
                    })
                    .collect();
                let moved = act_torus(&e, &t);
                let red = t_reduce(&moved).unwrap();
                assert_eq!(red.scaled, base.scaled);
            }
        }
    }

    #[test]
    fn slice_reports() {
        let s = slice_report(2, 3);
        assert_eq!((s.codim, s.autl_constraints, s.torus_constraints), (6, 4, 2));
        let s = slice_report(3, 7);
        assert_eq!((s.codim, s.autl_constraints, s.torus_constraints), (15, 9, 6));
        // r | n: only the A block, still r^2 constraints
        let s = slice_report(2, 4);
        assert_eq!((s.codim, s.autl_constraints, s.torus_constraints), (7, 4, 3));
    }
}
