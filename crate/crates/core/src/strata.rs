//! Combinatorics of the moduli stratification on Hirzebruch surfaces:
//! splitting types of the direct image, the generic splitting, endomorphism
//! and ext dimensions, stratum/moduli/fiber dimensions, and the b-vectors of
//! the torsion quotients.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error("RankOutOfRange: need n >= r >= 2, got r = {r}, n = {n}")]
    RankOutOfRange { r: u32, n: u32 },
}

/// A splitting type `⊕_j O(-a_j)^{r_j}` with `0 ≤ a_1 < a_2 < …` and all
/// `r_j ≥ 1`. Derived data: `r = Σ r_j` and `n_F = Σ a_j r_j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplitType {
    parts: Vec<(u32, u32)>,
}

impl SplitType {
    pub fn new(parts: Vec<(u32, u32)>) -> Self {
        assert!(!parts.is_empty(), "empty splitting type");
        assert!(parts.windows(2).all(|w| w[0].0 < w[1].0), "a_j must strictly increase");
        assert!(parts.iter().all(|&(_, r)| r >= 1), "multiplicities must be positive");
        Self { parts }
    }

    pub fn parts(&self) -> &[(u32, u32)] {
        &self.parts
    }

    pub fn rank(&self) -> u32 {
        self.parts.iter().map(|&(_, r)| r).sum()
    }

    pub fn n_f(&self) -> u32 {
        self.parts.iter().map(|&(a, r)| a * r).sum()
    }
}

impl std::fmt::Display for SplitType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let summands: Vec<String> = self
            .parts
            .iter()
            .map(|&(a, r)| if a == 0 { format!("O^{r}") } else { format!("O(-{a})^{r}") })
            .collect();
        write!(f, "{}", summands.join(" + "))
    }
}

/// All splitting types with total rank `r` and degree sum `n_F`, in
/// lexicographic order of the `(a_j, r_j)` sequence.
pub fn enumerate_split_types(r: u32, n_f: u32) -> Vec<SplitType> {
    fn go(min_a: u32, r_left: u32, n_left: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<SplitType>) {
        if r_left == 0 {
            if n_left == 0 {
                out.push(SplitType::new(acc.clone()));
            }
            return;
        }
        for a in min_a..=n_left.max(min_a) {
            if a > n_left && a > 0 {
                break;
            }
            for q in 1..=r_left {
                if a * q > n_left {
                    break;
                }
                acc.push((a, q));
                go(a + 1, r_left - q, n_left - a * q, acc, out);
                acc.pop();
            }
        }
    }
    assert!(r >= 1, "rank must be positive");
    let mut out = Vec::new();
    go(0, r, n_f, &mut Vec::new(), &mut out);
    out
}

/// The generic (minimal) splitting: `a_1 = ⌊n_F/r⌋` with
/// `r_1 = r + r·a_1 - n_F`, and when `r ∤ n_F` a second summand
/// `a_2 = a_1 + 1` with `r_2 = n_F - r·a_1`.
pub fn generic_split(r: u32, n_f: u32) -> SplitType {
    assert!(r >= 1, "rank must be positive");
    let a1 = n_f / r;
    let r2 = n_f - r * a1;
    if r2 == 0 {
        SplitType::new(vec![(a1, r)])
    } else {
        SplitType::new(vec![(a1, r - r2), (a1 + 1, r2)])
    }
}

/// `dim End(⊕ O(-a_j)^{r_j}) = Σ_{i' ≥ i} r_{i'} r_i (a_{i'} - a_i + 1)`.
///
/// Always `≥ r²`, with equality exactly at the generic splitting.
pub fn dim_end(t: &SplitType) -> i64 {
    let p = t.parts();
    let mut acc = 0i64;
    for (i, &(ai, ri)) in p.iter().enumerate() {
        for &(aj, rj) in &p[i..] {
            acc += rj as i64 * ri as i64 * (aj as i64 - ai as i64 + 1);
        }
    }
    acc
}

/// `ext¹(Q_F, F) = r(n + n_F)`.
pub fn ext1_q_pil(r: u32, n: u32, n_f: u32) -> i64 {
    assert!(n >= n_f, "need n >= n_F");
    r as i64 * (n as i64 + n_f as i64)
}

/// The dimension table of the moduli space and its Hilbert map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuliDims {
    /// `2rn - r² + 1`
    pub moduli_dim: i64,
    /// `2rn - r² - n + 1`
    pub hilb_fiber_dim: i64,
    /// `r² + n - 1`
    pub group_dim: i64,
    /// `2nr`
    pub extension_space_dim: i64,
}

pub fn moduli_dims(r: u32, n: u32) -> Result<ModuliDims, StrataError> {
    if r < 2 || n < r {
        return Err(StrataError::RankOutOfRange { r, n });
    }
    let (r, n) = (r as i64, n as i64);
    let dims = ModuliDims {
        moduli_dim: 2 * r * n - r * r + 1,
        hilb_fiber_dim: 2 * r * n - r * r - n + 1,
        group_dim: r * r + n - 1,
        extension_space_dim: 2 * n * r,
    };
    debug_assert_eq!(dims.extension_space_dim - dims.group_dim, dims.hilb_fiber_dim);
    Ok(dims)
}

/// Upper bound for a stratum: `ext¹(F,F) - r(n - n_F)` with
/// `ext¹(F,F) = 2rn - r² + 1` at stable points.
pub fn stratum_dim_bound(r: u32, n: u32, n_f: u32) -> i64 {
    let (r, n, n_f) = (r as i64, n as i64, n_f as i64);
    2 * r * n - r * r + 1 - r * (n - n_f)
}

/// The strict dimension drop `2rn - r² + 1 > 2r'n' - r'² + 1` for proper
/// subsheaf data `1 ≤ r' < r`, `r' ≤ n' ≤ n`.
pub fn check_ineq_fg(r: u32, n: u32, r_prime: u32, n_prime: u32) -> bool {
    debug_assert!(1 <= r_prime && r_prime < r);
    debug_assert!(n_prime <= n && n_prime >= r_prime);
    let lhs = 2 * (r as i64) * (n as i64) - (r as i64).pow(2) + 1;
    let rhs = 2 * (r_prime as i64) * (n_prime as i64) - (r_prime as i64).pow(2) + 1;
    lhs > rhs
}

/// All compositions of `n` into `n_F` positive parts, lexicographic.
pub fn enumerate_bvectors(n: u32, n_f: u32) -> Vec<Vec<u32>> {
    assert!((1..=n).contains(&n_f), "need 1 <= n_F <= n");
    fn go(n_left: u32, parts_left: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts_left == 1 {
            acc.push(n_left);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        for first in 1..=(n_left - (parts_left - 1)) {
            acc.push(first);
            go(n_left - first, parts_left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n_f, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
