//! Closed-form cohomology of line bundles on the model varieties.
//!
//! Everything is assembled from the splitting of `π_*O_π(k)` over P¹ and
//! relative duality for the top direct image; no Čech complexes are built.
//! On a P²-bundle the middle direct image `R¹π_*` of a line bundle vanishes
//! for every fiber degree, so the band `-2 ≤ k ≤ -1` has all-zero direct
//! images and the Leray description has at most one nonzero row.

use crate::cox::Multidegree;
use crate::variety::Variety;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomError {
    #[error("NegativeTwist: pi_* vanishes for k = {k} < 0")]
    NegativeTwist { k: i64 },
    #[error("WrongVariety: {0}")]
    WrongVariety(String),
}

/// Degrees (with multiplicity, ascending) of the line-bundle summands of
/// `π_*O_π(k)` on P¹.
///
/// `Y_ℓ`: `{iℓ : 0 ≤ i ≤ k}`. `Y_{a,b}`: `{ia + jb : i, j ≥ 0, i + j ≤ k}`.
pub fn pushforward_split(variety: Variety, k: i64) -> Result<Vec<i64>, CohomError> {
    if k < 0 {
        return Err(CohomError::NegativeTwist { k });
    }
    let mut out = Vec::new();
    match variety {
        Variety::Hirzebruch { ell } => {
            for i in 0..=k {
                out.push(ell as i64 * i);
            }
        }
        Variety::P2Bundle { a, b } => {
            for i in 0..=k {
                for j in 0..=(k - i) {
                    out.push(a as i64 * i + b as i64 * j);
                }
            }
        }
        v => {
            return Err(CohomError::WrongVariety(format!(
                "pushforward_split needs a fibred variety, got {v}"
            )))
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn h0_p1(d: i64) -> i64 {
    (d + 1).max(0)
}

fn h1_p1(d: i64) -> i64 {
    (-d - 1).max(0)
}

/// All cohomology dimensions `h⁰..h^dim` of the line bundle `O(k, l)`
/// (`k·u + l·fiber` on fibred varieties, `O(k)` on P¹ and P² with `l = 0`).
pub fn h_line_bundle(variety: Variety, degree: Multidegree) -> Vec<i64> {
    let (k, l) = degree;
    match variety {
        Variety::P1 => {
            assert_eq!(l, 0, "P1 degree is (d, 0)");
            vec![h0_p1(k), h1_p1(k)]
        }
        Variety::P2 => {
            assert_eq!(l, 0, "P2 degree is (d, 0)");
            let h0 = if k >= 0 { (k + 1) * (k + 2) / 2 } else { 0 };
            let kd = -k - 3;
            let h2 = if kd >= 0 { (kd + 1) * (kd + 2) / 2 } else { 0 };
            vec![h0, 0, h2]
        }
        Variety::Hirzebruch { ell } => {
            let ell = ell as i64;
            let (mut h0, mut h1, mut h2) = (0, 0, 0);
            if k >= 0 {
                // pi_* O(ku + lf) = sum_{i=0..k} O(l + i ell); R^1 pi_* = 0
                for i in 0..=k {
                    h0 += h0_p1(l + i * ell);
                    h1 += h1_p1(l + i * ell);
                }
            } else if k <= -2 {
                // relative duality: R^1 pi_* O(ku+lf) = [pi_* O((-k-2)u + (ell-l)f)]^dual
                for i in 0..=(-k - 2) {
                    let d = l - (i + 1) * ell;
                    h1 += h0_p1(d);
                    h2 += h1_p1(d);
                }
            }
            vec![h0, h1, h2]
        }
        Variety::P2Bundle { a, b } => {
            let (a, b) = (a as i64, b as i64);
            let (mut h0, mut h1, mut h2, mut h3) = (0, 0, 0, 0);
            if k >= 0 {
                for i in 0..=k {
                    for j in 0..=(k - i) {
                        h0 += h0_p1(l + i * a + j * b);
                        h1 += h1_p1(l + i * a + j * b);
                    }
                }
            } else if k <= -3 {
                // R^2 pi_* O(ku+lv) = [pi_* O((-k-3)u + (a+b-l)v)]^dual
                for i in 0..=(-k - 3) {
                    for j in 0..=(-k - 3 - i) {
                        let d = l - a - b - i * a - j * b;
                        h2 += h0_p1(d);
                        h3 += h1_p1(d);
                    }
                }
            }
            vec![h0, h1, h2, h3]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cox::cox_basis;
    use crate::geom::{canonical_class, euler_characteristic, ChernData, ChowClass};
    use crate::rational::rat;

    const ALL: [Variety; 6] = [
        Variety::P1,
        Variety::P2,
        Variety::Hirzebruch { ell: 0 },
        Variety::Hirzebruch { ell: 1 },
        Variety::P2Bundle { a: 0, b: 1 },
        Variety::P2Bundle { a: 1, b: 2 },
    ];

    #[test]
    fn split_on_hirzebruch() {
        assert_eq!(pushforward_split(Variety::hirzebruch(1), 1).unwrap(), vec![0, 1]);
        assert_eq!(pushforward_split(Variety::hirzebruch(2), 3).unwrap(), vec![0, 2, 4, 6]);
    }

    #[test]
    fn split_on_p2_bundle() {
        let mut got = pushforward_split(Variety::p2_bundle(1, 2), 1).unwrap();
        got.sort_unstable();
        assert_eq!(got, vec![0, 1, 2]);
        // section space of O_pi(1) has dimension 3 + a + b
        assert_eq!(
            pushforward_split(Variety::p2_bundle(1, 2), 1)
                .unwrap()
                .iter()
                .map(|d| d + 1)
                .sum::<i64>(),
            6
        );
    }

    #[test]
    fn split_at_zero_is_the_trivial_bundle() {
        for v in [Variety::hirzebruch(3), Variety::p2_bundle(2, 3)] {
            assert_eq!(pushforward_split(v, 0).unwrap(), vec![0]);
        }
    }

    #[test]
    fn split_rejects_negative_twist() {
        assert_eq!(
            pushforward_split(Variety::hirzebruch(1), -1),
            Err(CohomError::NegativeTwist { k: -1 })
        );
    }

    #[test]
    fn h0_matches_monomial_count() {
        for v in ALL {
            for k in -4..=4i64 {
                let ls: Vec<i64> = if v.is_fibred() { (-5..=5).collect() } else { vec![0] };
                for l in ls {
                    let h = h_line_bundle(v, (k, l));
                    assert_eq!(h[0] as usize, cox_basis(v, (k, l)).len(), "{v} ({k},{l})");
                }
            }
        }
    }

    #[test]
    fn structure_sheaf_has_only_h0() {
        for v in ALL {
            let mut expect = vec![0; v.dim() + 1];
            expect[0] = 1;
            assert_eq!(h_line_bundle(v, (0, 0)), expect, "{v}");
        }
    }

    #[test]
    fn ample_example_on_hirzebruch() {
        assert_eq!(h_line_bundle(Variety::hirzebruch(1), (2, 3)), vec![15, 0, 0]);
    }

    #[test]
    fn minus_one_minus_one_has_no_cohomology() {
        for (a, b) in [(0, 0), (0, 1), (1, 2), (2, 3)] {
            let v = Variety::p2_bundle(a, b);
            assert_eq!(h_line_bundle(v, (-1, -1)), vec![0, 0, 0, 0]);
        }
    }

    #[test]
    fn euler_sum_matches_riemann_roch() {
        for v in ALL {
            for k in -6..=6i64 {
                let ls: Vec<i64> = if v.is_fibred() { (-6..=6).collect() } else { vec![0] };
                for l in ls {
                    let h = h_line_bundle(v, (k, l));
                    let alt: i64 = h.iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x } else { -*x }).sum();
                    let ch = ChernData::line_bundle(&ChowClass::divisor(v, (k, l))).unwrap();
                    assert_eq!(rat(alt), euler_characteristic(&ch).unwrap(), "{v} ({k},{l})");
                }
            }
        }
    }

    #[test]
    fn serre_duality_on_the_sweep() {
        for v in ALL {
            let kappa = canonical_class(v).as_divisor_degree().unwrap();
            for k in -6..=6i64 {
                let ls: Vec<i64> = if v.is_fibred() { (-6..=6).collect() } else { vec![0] };
                for l in ls {
                    let h = h_line_bundle(v, (k, l));
                    let dual = h_line_bundle(v, (kappa.0 - k, kappa.1 - l));
                    let flipped: Vec<i64> = dual.iter().rev().copied().collect();
                    assert_eq!(h, flipped, "{v} ({k},{l})");
                }
            }
        }
    }
}
