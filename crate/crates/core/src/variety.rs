//! The four model varieties everything in this crate lives on.

use std::fmt;

/// P¹, P², the Hirzebruch surface `Y_ℓ = P(O ⊕ O(-ℓ))`, or the P²-bundle
/// `Y_{a,b} = P(O ⊕ O(-a) ⊕ O(-b))` over P¹ with `0 ≤ a ≤ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variety {
    P1,
    P2,
    Hirzebruch { ell: u32 },
    P2Bundle { a: u32, b: u32 },
}

impl Variety {
    pub fn hirzebruch(ell: u32) -> Self {
        Variety::Hirzebruch { ell }
    }

    /// Panics unless `a <= b`.
    pub fn p2_bundle(a: u32, b: u32) -> Self {
        assert!(a <= b, "P2-bundle requires 0 <= a <= b, got ({a},{b})");
        Variety::P2Bundle { a, b }
    }

    pub fn dim(&self) -> usize {
        match self {
            Variety::P1 => 1,
            Variety::P2 | Variety::Hirzebruch { .. } => 2,
            Variety::P2Bundle { .. } => 3,
        }
    }

    /// Fibration over P¹? (P¹ and P² are not fibred here.)
    pub fn is_fibred(&self) -> bool {
        matches!(self, Variety::Hirzebruch { .. } | Variety::P2Bundle { .. })
    }

    pub fn fiber_dim(&self) -> usize {
        match self {
            Variety::Hirzebruch { .. } => 1,
            Variety::P2Bundle { .. } => 2,
            _ => 0,
        }
    }

    /// Number of Cox variables: P¹ 2, P² 3, Y_ℓ 4 (y0,y1,w0,w1),
    /// Y_{a,b} 5 (z0,z1,z2,w0,w1).
    pub fn cox_vars(&self) -> usize {
        match self {
            Variety::P1 => 2,
            Variety::P2 => 3,
            Variety::Hirzebruch { .. } => 4,
            Variety::P2Bundle { .. } => 5,
        }
    }

    pub fn cox_var_names(&self) -> &'static [&'static str] {
        match self {
            Variety::P1 => &["s", "t"],
            Variety::P2 => &["x", "y", "z"],
            Variety::Hirzebruch { .. } => &["y0", "y1", "w0", "w1"],
            Variety::P2Bundle { .. } => &["z0", "z1", "z2", "w0", "w1"],
        }
    }

    /// Parses `p1`, `p2`, `hirzebruch:L`, `p2bundle:A,B`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "p1" => return Ok(Variety::P1),
            "p2" => return Ok(Variety::P2),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("hirzebruch:") {
            let ell: u32 = rest.parse().map_err(|_| format!("bad Hirzebruch parameter {rest:?}"))?;
            return Ok(Variety::hirzebruch(ell));
        }
        if let Some(rest) = s.strip_prefix("p2bundle:") {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| format!("p2bundle wants a,b, got {rest:?}"))?;
            let a: u32 = a.trim().parse().map_err(|_| format!("bad parameter {a:?}"))?;
            let b: u32 = b.trim().parse().map_err(|_| format!("bad parameter {b:?}"))?;
            if a > b {
                return Err(format!("p2bundle requires a <= b, got ({a},{b})"));
            }
            return Ok(Variety::p2_bundle(a, b));
        }
        Err(format!("unknown variety {s:?} (try p1, p2, hirzebruch:L, p2bundle:A,B)"))
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::P1 => write!(f, "p1"),
            Variety::P2 => write!(f, "p2"),
            Variety::Hirzebruch { ell } => write!(f, "hirzebruch:{ell}"),
            Variety::P2Bundle { a, b } => write!(f, "p2bundle:{a},{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for v in [
            Variety::P1,
            Variety::P2,
            Variety::hirzebruch(0),
            Variety::hirzebruch(3),
            Variety::p2_bundle(0, 1),
            Variety::p2_bundle(2, 3),
        ] {
            assert_eq!(Variety::parse(&v.to_string()).unwrap(), v);
        }
    }

    #[test]
    fn parse_rejects_bad_bundle_order() {
        assert!(Variety::parse("p2bundle:2,1").is_err());
    }
}
