//! Length bounds for a single T-singularity and a scenario checker.
//!
//! All bounds are upper bounds on `r − d` in terms of `K_W²`, `K_S²`, the
//! long-diagram contribution `δ` and `λ = K_S·π(C)`.

mod fixtures;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hj::Chain;
use crate::invariants::kw2_from;
use crate::tchain::{classify, ChainClass};
use crate::{Error, Result};

pub use fixtures::{
    classification_fixtures, parse_fixtures, verify_fixture_cases, Block, ChainTemplate,
    DiagramSpec, FixtureCase, FixtureInstance, FixtureLedger, FixtureVerdict, Lin, ParamSpec,
    Stated, DEFAULT_SCENARIOS,
};

/// Incidence of the (−1)-curve with the leading (−2)-block of the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DiagramKind {
    NoLong,
    TypeI,
    /// `s` leading (−2)-curves; the curve met by the (−1)-curve has
    /// self-intersection `gamma_self_int = −α`.
    TypeII { s: u64, gamma_self_int: i64 },
}

impl DiagramKind {
    pub fn type_ii(s: u64, gamma_self_int: i64) -> Result<Self> {
        if s < 1 {
            return Err(Error::input("a type II diagram needs s >= 1"));
        }
        if gamma_self_int > -3 {
            return Err(Error::input(format!(
                "a type II diagram needs Γ² <= -3, got {gamma_self_int}"
            )));
        }
        Ok(DiagramKind::TypeII { s, gamma_self_int })
    }

    fn validate(&self) -> Result<()> {
        if let DiagramKind::TypeII { s, gamma_self_int } = *self {
            DiagramKind::type_ii(s, gamma_self_int)?;
        }
        Ok(())
    }
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramKind::NoLong => f.write_str("no long diagram"),
            DiagramKind::TypeI => f.write_str("type I"),
            DiagramKind::TypeII { s, gamma_self_int } => {
                write!(f, "type II (s={s}, Γ²={gamma_self_int})")
            }
        }
    }
}

/// Kodaira dimension of the minimal model `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kappa {
    Zero,
    One,
    Two,
}

impl Kappa {
    pub fn from_int(k: i64) -> Result<Kappa> {
        match k {
            0 => Ok(Kappa::Zero),
            1 => Ok(Kappa::One),
            2 => Ok(Kappa::Two),
            _ => Err(Error::input(format!("kappa must be 0, 1 or 2, got {k}"))),
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Kappa::Zero => 0,
            Kappa::One => 1,
            Kappa::Two => 2,
        }
    }
}

pub fn delta_of(k: &DiagramKind) -> u64 {
    match k {
        DiagramKind::NoLong => 0,
        DiagramKind::TypeI => 1,
        DiagramKind::TypeII { s, .. } => *s,
    }
}

/// `2·ΔK² + δ − λ` where `ΔK² = K_W² − K_S²`.
pub fn bound_general(delta_k2: i64, delta: u64, lambda: i64) -> i64 {
    2 * delta_k2 + delta as i64 - lambda
}

/// The optimal bound for `K_S` nef.
pub fn bound_optimal_nef(k: Kappa, kw2: i64, ks2: i64) -> i64 {
    match k {
        Kappa::Zero => 4 * kw2,
        Kappa::One => 4 * kw2 - 2,
        Kappa::Two if kw2 - ks2 > 1 => 4 * (kw2 - ks2) - 4,
        Kappa::Two => 1,
    }
}

/// `K_S` nef and no long diagram.
pub fn bound_no_long(k: Kappa, kw2: i64, ks2: i64) -> i64 {
    match k {
        Kappa::Zero => 2 * kw2,
        Kappa::One => 2 * kw2 - 1,
        Kappa::Two => 2 * (kw2 - ks2) - 1,
    }
}

/// `K_S` nef and a long diagram of type I.
pub fn bound_type_i(k: Kappa, kw2: i64, ks2: i64) -> i64 {
    match k {
        Kappa::Zero => 2 * kw2 + 1,
        Kappa::One => 2 * kw2,
        Kappa::Two => 2 * (kw2 - ks2),
    }
}

/// `K_S` not nef (so `S` is rational); `λ` is usually negative here.
pub fn bound_not_nef(delta_k2: i64, lambda: i64, k: &DiagramKind) -> i64 {
    match k {
        DiagramKind::NoLong => 2 * delta_k2 - lambda,
        DiagramKind::TypeI => 2 * delta_k2 + 1 - lambda,
        DiagramKind::TypeII { .. } => 4 * delta_k2 - 2 * lambda,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "==")]
    Equal,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equal => "==",
        })
    }
}

/// One evaluated inequality `lhs REL rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs_label: String,
    pub lhs: i64,
    pub relation: Relation,
    pub rhs: i64,
    /// Slack in the direction of the inequality; negative means violated.
    pub margin: i64,
    pub pass: bool,
    pub tight: bool,
}

impl InequalityCheck {
    pub fn new(
        name: impl Into<String>,
        lhs_label: impl Into<String>,
        lhs: i64,
        relation: Relation,
        rhs: i64,
    ) -> Self {
        let margin = match relation {
            Relation::AtMost => rhs - lhs,
            Relation::AtLeast => lhs - rhs,
            Relation::Equal => -(lhs - rhs).abs(),
        };
        let pass = margin >= 0;
        InequalityCheck {
            name: name.into(),
            lhs_label: lhs_label.into(),
            lhs,
            relation,
            rhs,
            margin,
            pass,
            tight: lhs == rhs,
        }
    }
}

impl fmt::Display for InequalityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<22} {}={} {} {} margin {}{}{}",
            self.name,
            self.lhs_label,
            self.lhs,
            self.relation,
            self.rhs,
            self.margin,
            if self.tight && self.relation != Relation::Equal { " TIGHT" } else { "" },
            if self.pass { "" } else { " FAIL" }
        )
    }
}

/// Lower bound on `r − d` for a type II diagram with `K_S` nef.
///
/// For κ = 2 only `r − d ≥ 2s + 1` is checked; the sharper alternative
/// `r − d ≥ 2s + 2` holds unless `λ ≥ 2`, which depends on geometry not
/// modelled here.
pub fn type_ii_length_lower(k: Kappa, chain: &Chain, diagram: &DiagramKind) -> Result<InequalityCheck> {
    let DiagramKind::TypeII { s, .. } = *diagram else {
        return Err(Error::input("the length estimate applies to type II diagrams only"));
    };
    let p = match classify(chain) {
        ChainClass::TChain(p) => p,
        _ => return Err(Error::domain(format!("{chain} is not a T-chain"))),
    };
    let rd = chain.len() as i64 - p.d() as i64;
    let s = s as i64;
    let rhs = match k {
        Kappa::Zero | Kappa::One => 2 * s,
        Kappa::Two => 2 * s + 1,
    };
    Ok(InequalityCheck::new("type_ii_length", "r-d", rd, Relation::AtLeast, rhs))
}

/// Surface bookkeeping for one singular surface `W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioRecord {
    /// `None` for a rational `S` (only meaningful when `K_S` is not nef).
    pub kappa: Option<Kappa>,
    pub ks_nef: bool,
    pub ks2: i64,
    pub kw2: i64,
    pub lambda: i64,
    pub diagram: DiagramKind,
    pub chain: Chain,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ledger {
    pub r: u64,
    pub d: u64,
    pub entries: Vec<InequalityCheck>,
}

impl Ledger {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn entry(&self, name: &str) -> Option<&InequalityCheck> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Evaluates every inequality that applies to the scenario.
pub fn check_scenario(s: &ScenarioRecord) -> Result<Ledger> {
    s.diagram.validate()?;
    let p = match classify(&s.chain) {
        ChainClass::TChain(p) => p,
        _ => return Err(Error::input(format!("{} is not a T-chain", s.chain))),
    };
    let r = s.chain.len() as u64;
    let d = p.d();
    let expected_kw2 = kw2_from(s.ks2, s.m, r, d);
    if expected_kw2 != s.kw2 {
        return Err(Error::input(format!(
            "K_W² = {} is inconsistent with K_S² - m + r - d + 1 = {expected_kw2}",
            s.kw2
        )));
    }
    let rd = r as i64 - d as i64;
    let dk2 = s.kw2 - s.ks2;
    let delta = delta_of(&s.diagram);
    let mut entries = vec![
        InequalityCheck::new("weak_inequality", "K_W²-K_S²", dk2, Relation::AtLeast, s.lambda),
        InequalityCheck::new("general", "r-d", rd, Relation::AtMost, bound_general(dk2, delta, s.lambda)),
    ];
    if s.ks_nef {
        let k = s
            .kappa
            .ok_or_else(|| Error::input("a scenario with K_S nef needs κ(S)"))?;
        let lambda_floor = if k == Kappa::Zero {
            InequalityCheck::new("lambda_kappa", "λ", s.lambda, Relation::Equal, 0)
        } else {
            InequalityCheck::new("lambda_kappa", "λ", s.lambda, Relation::AtLeast, 1)
        };
        entries.push(lambda_floor);
        entries.push(InequalityCheck::new(
            "optimal",
            "r-d",
            rd,
            Relation::AtMost,
            bound_optimal_nef(k, s.kw2, s.ks2),
        ));
        match s.diagram {
            DiagramKind::NoLong => entries.push(InequalityCheck::new(
                "no_long",
                "r-d",
                rd,
                Relation::AtMost,
                bound_no_long(k, s.kw2, s.ks2),
            )),
            DiagramKind::TypeI => entries.push(InequalityCheck::new(
                "type_i",
                "r-d",
                rd,
                Relation::AtMost,
                bound_type_i(k, s.kw2, s.ks2),
            )),
            DiagramKind::TypeII { .. } => entries.push(type_ii_length_lower(k, &s.chain, &s.diagram)?),
        }
    } else {
        entries.push(InequalityCheck::new(
            "not_nef",
            "r-d",
            rd,
            Relation::AtMost,
            bound_not_nef(dk2, s.lambda, &s.diagram),
        ));
        if let DiagramKind::TypeII { s: len, .. } = s.diagram {
            entries.push(InequalityCheck::new(
                "type_ii_length",
                "r-d",
                rd,
                Relation::AtLeast,
                2 * len as i64,
            ));
        }
    }
    Ok(Ledger { r, d, entries })
}

/// A bound evaluated without a chain: `r − d ≤ value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub name: String,
    pub value: i64,
}

/// All upper bounds on `r − d` that apply to the given data.
pub fn applicable_bounds(
    kappa: Option<Kappa>,
    ks_nef: bool,
    kw2: i64,
    ks2: i64,
    lambda: i64,
    diagram: &DiagramKind,
) -> Result<Vec<BoundValue>> {
    diagram.validate()?;
    let dk2 = kw2 - ks2;
    let mut out = vec![BoundValue {
        name: "general".into(),
        value: bound_general(dk2, delta_of(diagram), lambda),
    }];
    let mut push = |name: &str, value| {
        out.push(BoundValue {
            name: name.into(),
            value,
        })
    };
    if ks_nef {
        let k = kappa.ok_or_else(|| Error::input("K_S nef needs κ(S)"))?;
        push("optimal", bound_optimal_nef(k, kw2, ks2));
        push("no_long", bound_no_long(k, kw2, ks2));
        push("type_i", bound_type_i(k, kw2, ks2));
    } else {
        push("not_nef", bound_not_nef(dk2, lambda, diagram));
    }
    Ok(out)
}
