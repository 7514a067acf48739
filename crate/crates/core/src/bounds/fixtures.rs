//! Classified optimal cases and realizations, stored as parametrised chain
//! templates in `fixtures/scenarios.json`.
//!
//! A template is a list of blocks; each block is either a literal entry or
//! `{"value": …, "repeat": …}`. Values, repeat counts and the stated
//! invariants are affine expressions `c + k·t` in the case's single
//! parameter `t`, written either as an integer or as `{"c": …, "k": …}`.

use serde::{Deserialize, Serialize};

use super::{
    bound_not_nef, bound_optimal_nef, check_scenario, DiagramKind, Kappa, Ledger, ScenarioRecord,
};
use crate::hj::Chain;
use crate::invariants::kw2_from;
use crate::tchain::{classify, ChainClass};
use crate::{Error, Result};

pub const DEFAULT_SCENARIOS: &str = include_str!("../../fixtures/scenarios.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lin {
    Const(i64),
    Affine { c: i64, k: i64 },
}

impl Lin {
    pub fn eval(&self, t: i64) -> i64 {
        match *self {
            Lin::Const(c) => c,
            Lin::Affine { c, k } => c + k * t,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Block {
    Entry(Lin),
    Repeat { value: Lin, repeat: Lin },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChainTemplate(pub Vec<Block>);

impl ChainTemplate {
    pub fn instantiate(&self, t: i64) -> Result<Chain> {
        let mut entries = Vec::new();
        for block in &self.0 {
            let (value, count) = match block {
                Block::Entry(v) => (v.eval(t), 1),
                Block::Repeat { value, repeat } => (value.eval(t), repeat.eval(t)),
            };
            if count < 0 {
                return Err(Error::input(format!("negative repeat count {count} at t={t}")));
            }
            let value = u64::try_from(value)
                .map_err(|_| Error::input(format!("negative chain entry {value} at t={t}")))?;
            entries.extend(std::iter::repeat_n(value, count as usize));
        }
        Chain::new(entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSpec {
    pub name: String,
    pub values: Vec<i64>,
}

/// Invariants as stated for the case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stated {
    pub r: Lin,
    pub d: Lin,
    #[serde(default)]
    pub m: Option<Lin>,
    #[serde(default)]
    pub ks2: Option<Lin>,
    #[serde(default)]
    pub kw2: Option<Lin>,
    #[serde(default)]
    pub n: Option<Lin>,
    /// Compared up to orientation, i.e. against `a` and `n − a`.
    #[serde(default)]
    pub a: Option<Lin>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    /// `none`, `I` or `II`.
    pub kind: String,
    #[serde(default)]
    pub s: Option<Lin>,
    /// `α` with `Γ² = −α`.
    #[serde(default)]
    pub alpha: Option<Lin>,
}

impl DiagramSpec {
    fn resolve(&self, t: i64) -> Result<DiagramKind> {
        match self.kind.as_str() {
            "none" => Ok(DiagramKind::NoLong),
            "I" => Ok(DiagramKind::TypeI),
            "II" => {
                let s = self
                    .s
                    .ok_or_else(|| Error::input("type II diagram needs s"))?
                    .eval(t);
                let alpha = self
                    .alpha
                    .ok_or_else(|| Error::input("type II diagram needs alpha"))?
                    .eval(t);
                let s = u64::try_from(s).map_err(|_| Error::input("s must be >= 1"))?;
                DiagramKind::type_ii(s, -alpha)
            }
            other => Err(Error::input(format!("unknown diagram kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureCase {
    pub name: String,
    /// `classified` for a classified equality case, `realization` for a
    /// constructed example.
    pub source: String,
    #[serde(default)]
    pub kappa: Option<i64>,
    #[serde(default = "yes")]
    pub ks_nef: bool,
    #[serde(default)]
    pub param: Option<ParamSpec>,
    pub chain: ChainTemplate,
    pub stated: Stated,
    #[serde(default)]
    pub lambda: Option<Lin>,
    #[serde(default)]
    pub diagram: Option<DiagramSpec>,
    /// Whether `r − d` attains the optimal bound.
    pub tight: bool,
    #[serde(default)]
    pub note: Option<String>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureInstance {
    pub label: String,
    pub case: FixtureCase,
    pub t: i64,
}

impl FixtureCase {
    pub fn instances(&self) -> Vec<FixtureInstance> {
        match &self.param {
            None => vec![FixtureInstance {
                label: self.name.clone(),
                case: self.clone(),
                t: 0,
            }],
            Some(p) => p
                .values
                .iter()
                .map(|&t| FixtureInstance {
                    label: format!("{}[{}={}]", self.name, p.name, t),
                    case: self.clone(),
                    t,
                })
                .collect(),
        }
    }
}

impl FixtureInstance {
    pub fn chain(&self) -> Result<Chain> {
        self.case.chain.instantiate(self.t)
    }

    pub fn kappa(&self) -> Result<Option<Kappa>> {
        self.case.kappa.map(Kappa::from_int).transpose()
    }

    /// The scenario, when the case carries enough surface data.
    pub fn scenario(&self) -> Result<Option<ScenarioRecord>> {
        let c = &self.case;
        let t = self.t;
        let (Some(ks2), Some(kw2), Some(m), Some(lambda), Some(diagram)) =
            (c.stated.ks2, c.stated.kw2, c.stated.m, c.lambda, c.diagram.as_ref())
        else {
            return Ok(None);
        };
        let m = u64::try_from(m.eval(t)).map_err(|_| Error::input("m must be >= 0"))?;
        Ok(Some(ScenarioRecord {
            kappa: self.kappa()?,
            ks_nef: c.ks_nef,
            ks2: ks2.eval(t),
            kw2: kw2.eval(t),
            lambda: lambda.eval(t),
            diagram: diagram.resolve(t)?,
            chain: self.chain()?,
            m,
        }))
    }
}

pub fn parse_fixtures(json: &str) -> Result<Vec<FixtureCase>> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct File {
        fixtures: Vec<FixtureCase>,
    }
    serde_json::from_str::<File>(json)
        .map(|f| f.fixtures)
        .map_err(|e| Error::input(format!("bad fixture file: {e}")))
}

/// The built-in classification fixtures.
pub fn classification_fixtures() -> Vec<FixtureCase> {
    parse_fixtures(DEFAULT_SCENARIOS).expect("built-in fixtures parse")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureVerdict {
    pub label: String,
    pub chain: Option<String>,
    pub pass: bool,
    pub summary: String,
    pub checks: Vec<NamedCheck>,
    pub ledger: Option<Ledger>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureLedger {
    pub verdicts: Vec<FixtureVerdict>,
}

impl FixtureLedger {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

fn check(checks: &mut Vec<NamedCheck>, name: &str, pass: bool, detail: String) {
    checks.push(NamedCheck {
        name: name.into(),
        pass,
        detail,
    });
}

/// The optimal bound that applies to a scenario and how to print it.
pub(crate) fn optimal_bound(s: &ScenarioRecord) -> Option<(i64, String)> {
    let dk2 = s.kw2 - s.ks2;
    if !s.ks_nef {
        return Some((
            bound_not_nef(dk2, s.lambda, &s.diagram),
            match s.diagram {
                DiagramKind::NoLong => "2·(K_W²−K_S²)−λ",
                DiagramKind::TypeI => "2·(K_W²−K_S²)+1−λ",
                DiagramKind::TypeII { .. } => "4·(K_W²−K_S²)−2λ",
            }
            .to_string(),
        ));
    }
    let k = s.kappa?;
    let label = match k {
        Kappa::Zero => "4·K_W²",
        Kappa::One => "4·K_W²−2",
        Kappa::Two if dk2 > 1 => "4·(K_W²−K_S²)−4",
        Kappa::Two => "1 (K_W²−K_S²=1)",
    };
    Some((bound_optimal_nef(k, s.kw2, s.ks2), label.to_string()))
}

fn verify_instance(inst: &FixtureInstance) -> FixtureVerdict {
    let mut checks = Vec::new();
    let fail = |label: &str, checks: Vec<NamedCheck>, msg: String| FixtureVerdict {
        label: label.to_string(),
        chain: None,
        pass: false,
        summary: format!("{label}: {msg} FAIL"),
        checks,
        ledger: None,
    };
    let chain = match inst.chain() {
        Ok(c) => c,
        Err(e) => return fail(&inst.label, checks, e.to_string()),
    };
    let t = inst.t;
    let stated = &inst.case.stated;
    let r = chain.len() as i64;
    let p = match classify(&chain) {
        ChainClass::TChain(p) => {
            check(&mut checks, "t_chain", true, format!("{chain}: {p}"));
            p
        }
        other => {
            check(&mut checks, "t_chain", false, format!("{chain} classifies as {other:?}"));
            let mut v = fail(&inst.label, checks, format!("{chain} is not a T-chain"));
            v.chain = Some(chain.to_string());
            return v;
        }
    };
    let d = p.d() as i64;
    check(&mut checks, "r", r == stated.r.eval(t), format!("r={r}, stated {}", stated.r.eval(t)));
    check(&mut checks, "d", d == stated.d.eval(t), format!("d={d}, stated {}", stated.d.eval(t)));
    if let Some(n) = stated.n {
        let n = n.eval(t);
        check(&mut checks, "n", p.n() == &n.into(), format!("n={}, stated {n}", p.n()));
    }
    if let Some(a) = stated.a {
        let a = a.eval(t);
        let other = p.n() - p.a();
        let ok = p.a() == &a.into() || other == a.into();
        check(&mut checks, "a", ok, format!("a={} (or {other}), stated {a}", p.a()));
    }
    if let (Some(ks2), Some(m), Some(kw2)) = (stated.ks2, stated.m, stated.kw2) {
        let (ks2, m, kw2) = (ks2.eval(t), m.eval(t), kw2.eval(t));
        let computed = kw2_from(ks2, m.max(0) as u64, r as u64, d as u64);
        check(
            &mut checks,
            "kw2",
            m >= 0 && computed == kw2,
            format!("K_S²−m+r−d+1 = {computed}, stated K_W² = {kw2}"),
        );
    }

    let mut summary = format!("{}: {} r={r} d={d} r−d={}", inst.label, chain, r - d);
    let mut ledger = None;
    match inst.scenario() {
        Ok(Some(s)) => match check_scenario(&s) {
            Ok(l) => {
                let failed: Vec<_> = l.entries.iter().filter(|e| !e.pass).map(|e| e.name.clone()).collect();
                check(
                    &mut checks,
                    "scenario",
                    failed.is_empty(),
                    if failed.is_empty() {
                        "all inequalities hold".into()
                    } else {
                        format!("violated: {}", failed.join(", "))
                    },
                );
                if let Some((bound, formula)) = optimal_bound(&s) {
                    let rd = r - d;
                    let tight = rd == bound;
                    if inst.case.tight {
                        check(&mut checks, "tight", tight, format!("r−d={rd}, bound {bound}"));
                    }
                    summary = if tight {
                        format!("{}: r−d={rd}={formula} TIGHT", inst.label)
                    } else {
                        format!("{}: r−d={rd}<{bound}={formula}", inst.label)
                    };
                }
                ledger = Some(l);
            }
            Err(e) => check(&mut checks, "scenario", false, e.to_string()),
        },
        Ok(None) => {
            if inst.case.tight {
                check(&mut checks, "tight", false, "tight case without scenario data".into());
            }
        }
        Err(e) => check(&mut checks, "scenario", false, e.to_string()),
    }
    let pass = checks.iter().all(|c| c.pass);
    if !pass {
        summary.push_str(" FAIL");
    }
    FixtureVerdict {
        label: inst.label.clone(),
        chain: Some(chain.to_string()),
        pass,
        summary,
        checks,
        ledger,
    }
}

/// Instantiates and verifies every case.
pub fn verify_fixture_cases(cases: &[FixtureCase]) -> FixtureLedger {
    FixtureLedger {
        verdicts: cases
            .iter()
            .flat_map(FixtureCase::instances)
            .map(|i| verify_instance(&i))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(v: &[u64]) -> Chain {
        Chain::new(v.to_vec()).unwrap()
    }

    fn find<'a>(cases: &'a [FixtureCase], name: &str) -> &'a FixtureCase {
        cases.iter().find(|c| c.name == name).unwrap()
    }

    #[test]
    fn templates_instantiate() {
        let cases = classification_fixtures();
        let k0c = find(&cases, "κ=0(C)");
        assert_eq!(k0c.chain.instantiate(1).unwrap(), ch(&[2, 2, 3, 5, 4]));
        assert_eq!(k0c.chain.instantiate(2).unwrap(), ch(&[2, 2, 2, 2, 3, 2, 2, 7, 6]));
        let k2b = find(&cases, "κ=2(B)");
        assert_eq!(k2b.chain.instantiate(4).unwrap(), ch(&[2, 3, 2, 2, 4]));
        let k1b = find(&cases, "κ=1(B)");
        assert_eq!(k1b.chain.instantiate(1).unwrap(), ch(&[2, 2, 2, 3, 2, 6, 5]));
    }

    #[test]
    fn figure_chain() {
        let cases = classification_fixtures();
        let inst = &find(&cases, "λ-unbounded example").instances()[0];
        let p = classify(&inst.chain().unwrap());
        assert_eq!(p.tparams().unwrap().to_string(), "d=1 n=100 a=29");
    }

    #[test]
    fn bad_templates_fail_softly() {
        let t = ChainTemplate(vec![Block::Repeat {
            value: Lin::Const(2),
            repeat: Lin::Affine { c: -2, k: 1 },
        }]);
        assert!(t.instantiate(0).is_err());
        assert!(ChainTemplate(vec![Block::Entry(Lin::Const(-3))]).instantiate(0).is_err());
    }

    #[test]
    fn lin_syntax() {
        let v: Vec<Lin> = serde_json::from_str(r#"[3, {"c": 1, "k": 2}]"#).unwrap();
        assert_eq!(v[0].eval(5), 3);
        assert_eq!(v[1].eval(5), 11);
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(parse_fixtures(r#"{"fixtures": [], "extra": 1}"#).is_err());
        assert!(parse_fixtures("not json").is_err());
    }

    #[test]
    fn corrupted_fixture_fails() {
        let json = r#"{"fixtures": [{"name": "bogus", "source": "classified", "kappa": 1,
            "chain": [2, 4], "stated": {"r": 2, "d": 1, "m": 0, "ks2": 0, "kw2": 2},
            "lambda": 1, "diagram": {"kind": "none"}, "tight": true}]}"#;
        let ledger = verify_fixture_cases(&parse_fixtures(json).unwrap());
        assert!(!ledger.passed());
        assert!(ledger.verdicts[0].summary.ends_with("FAIL"));
    }

    #[test]
    fn built_in_fixtures_verify() {
        let ledger = verify_fixture_cases(&classification_fixtures());
        for v in &ledger.verdicts {
            assert!(v.pass, "{}: {:?}", v.summary, v.checks);
        }
        assert!(ledger.verdicts.len() > 40);
    }
}
