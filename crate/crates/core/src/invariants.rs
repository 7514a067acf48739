//! Bookkeeping identities between chain data and surface invariants.
//!
//! Notation: `π: X → S` is a composition of `m` blow-ups onto a surface
//! without (−1)-curves and `φ: X → W` contracts the chain. `λ = K_S·π(C)`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::hj::{Chain, Rational};
use crate::tchain::{classify, ChainClass};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub ks2: i64,
    pub kw2: i64,
    pub chi: i64,
    pub chi_top: i64,
    pub num_blowups: u64,
    pub lambda: i64,
}

/// `K_W² = K_S² − m + r − d + 1`.
pub fn kw2_from(ks2: i64, m: u64, r: u64, d: u64) -> i64 {
    ks2 - m as i64 + r as i64 - d as i64 + 1
}

/// `K_X·ΣC_j = Σ (b_i − 2)`, which equals `r − d + 2` on a T-chain.
pub fn chain_canonical_degree(c: &Chain) -> Result<i64> {
    match classify(c) {
        ChainClass::TChain(_) => Ok(c.excess() as i64),
        _ => Err(Error::domain(format!("{c} is not a T-chain"))),
    }
}

/// `(ΣE_i)·(ΣC_j) = r − d + 2 − λ`.
pub fn exceptional_sum_value(r: i64, d: i64, lambda: i64) -> i64 {
    r - d + 2 - lambda
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StructuralCheck {
    Pass {
        s: usize,
        middle_excess: u64,
        expected: i64,
    },
    Fail {
        s: usize,
        middle_excess: u64,
        expected: i64,
    },
    NotApplicable,
}

/// For a T-chain `[2×s, x_1, …, x_{r−s−1}, s+2]` with `s ≥ 1` checks
/// `Σ (x_i − 2) = r − s − d + 2`.
pub fn structural_identity_check(c: &Chain) -> StructuralCheck {
    let e = c.entries();
    let s = e.iter().take_while(|&&b| b == 2).count();
    if s == 0 || s >= e.len() || c.last() != s as u64 + 2 {
        return StructuralCheck::NotApplicable;
    }
    let ChainClass::TChain(p) = classify(c) else {
        return StructuralCheck::NotApplicable;
    };
    let middle = &e[s..e.len() - 1];
    let middle_excess: u64 = middle.iter().map(|x| x - 2).sum();
    let expected = c.len() as i64 - s as i64 - p.d() as i64 + 2;
    if middle_excess as i64 == expected {
        StructuralCheck::Pass {
            s,
            middle_excess,
            expected,
        }
    } else {
        StructuralCheck::Fail {
            s,
            middle_excess,
            expected,
        }
    }
}

/// `(K_W² + χ_top + d − 1) / 12`, which must equal `χ(O_W)`. Callers decide
/// what to do with a non-integral value.
pub fn chi_relation(kw2: i64, chi_top: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(kw2 + chi_top + d - 1), BigInt::from(12))
}

/// `d − 1/(d·n²) ≤ 12·χ(O_W) − (4/3)·K_W²`, evaluated exactly.
pub fn log_bmy_check(d: i64, n: i64, chi: i64, kw2: i64) -> bool {
    let lhs = Rational::from_integer(BigInt::from(d))
        - Rational::new(BigInt::from(1), BigInt::from(d * n * n));
    let rhs = Rational::from_integer(BigInt::from(12 * chi))
        - Rational::new(BigInt::from(4 * kw2), BigInt::from(3));
    lhs <= rhs
}
