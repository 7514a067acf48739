//! Blow-up calculus on a Picard lattice.
//!
//! Curves are integer classes in the lattice spanned by a handful of initial
//! curve symbols on the minimal surface `S` together with the total
//! transforms `e_1, …, e_m` of the points blown up. The exceptional symbols
//! satisfy `e_i·e_j = −δ_ij` and are orthogonal to the initial symbols, and
//! the canonical class of the blow-up is `K_X = K_S + Σ e_i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::discrepancy::{contracted_degree, IncidenceProfile};
use crate::hj::{Chain, Rational};
use crate::invariants::{kw2_from, exceptional_sum_value};
use crate::tchain::{classify, ChainClass};
use crate::{Error, Result};

/// The built-in replay scripts as `(file name, document)`.
pub const DEFAULT_REPLAYS: &[(&str, &str)] = &[
    ("k0a.json", include_str!("../fixtures/replays/k0a.json")),
    ("k1a.json", include_str!("../fixtures/replays/k1a.json")),
    ("k2a.json", include_str!("../fixtures/replays/k2a.json")),
    ("k2c.json", include_str!("../fixtures/replays/k2c.json")),
    ("k2d.json", include_str!("../fixtures/replays/k2d.json")),
];

/// An integer combination of initial and exceptional symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Class {
    pub initial: Vec<i64>,
    pub exceptional: Vec<i64>,
}

impl Class {
    fn exc(&self, i: usize) -> i64 {
        self.exceptional.get(i).copied().unwrap_or(0)
    }

    fn grow(&mut self, m: usize) {
        self.exceptional.resize(m, 0);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub label: String,
    pub class: Class,
    /// Simple nodes not yet resolved.
    pub nodes: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSpec {
    FreePoint(String),
    Intersection(String, String),
    Node(String),
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::FreePoint(c) => write!(f, "free point on {c}"),
            PointSpec::Intersection(a, b) => write!(f, "intersection of {a} and {b}"),
            PointSpec::Node(c) => write!(f, "node of {c}"),
        }
    }
}

/// The blown-up surface as lattice data. Operations return new states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigState {
    curves: Vec<CurveRecord>,
    symbols: Vec<String>,
    initial_pairing: Vec<Vec<i64>>,
    k_initial_dots: Vec<i64>,
    ks2: i64,
    num_blowups: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub label: String,
    #[serde(rename = "self")]
    pub self_int: i64,
    #[serde(default)]
    pub k_dot: i64,
    #[serde(default)]
    pub nodes: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionSpec {
    pub a: String,
    pub b: String,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepSpec {
    /// `free`, `intersection` or `node`.
    pub op: String,
    pub args: Vec<String>,
    /// Label of the new exceptional curve, `E<i>` by default.
    #[serde(default)]
    pub label: Option<String>,
}

impl StepSpec {
    pub fn point(&self) -> Result<PointSpec> {
        let arity = |n: usize| {
            if self.args.len() == n {
                Ok(())
            } else {
                Err(Error::input(format!(
                    "step {:?} takes {n} argument(s), got {}",
                    self.op,
                    self.args.len()
                )))
            }
        };
        match self.op.as_str() {
            "free" => arity(1).map(|_| PointSpec::FreePoint(self.args[0].clone())),
            "node" => arity(1).map(|_| PointSpec::Node(self.args[0].clone())),
            "intersection" => arity(2)
                .map(|_| PointSpec::Intersection(self.args[0].clone(), self.args[1].clone())),
            other => Err(Error::input(format!("unknown step op {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(default)]
    pub m: Option<usize>,
    /// Compared up to reversal.
    #[serde(default)]
    pub chain: Option<Vec<u64>>,
}

/// A construction document: initial configuration, blow-up script and the
/// curves forming the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Construction {
    #[serde(default)]
    pub name: Option<String>,
    pub ks2: i64,
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub intersections: Vec<IntersectionSpec>,
    pub pi_c: Vec<String>,
    pub steps: Vec<StepSpec>,
    pub chain_order: Vec<String>,
    #[serde(default)]
    pub designated_f: Option<String>,
    #[serde(default)]
    pub expect: Option<Expectation>,
}

impl Construction {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::input(format!("bad construction document: {e}")))
    }
}

pub fn init_config(doc: &Construction) -> Result<ConfigState> {
    let n = doc.curves.len();
    let mut index = BTreeMap::new();
    for (i, c) in doc.curves.iter().enumerate() {
        if index.insert(c.label.clone(), i).is_some() {
            return Err(Error::input(format!("duplicate curve label {:?}", c.label)));
        }
    }
    let mut pairing = vec![vec![0i64; n]; n];
    for (i, c) in doc.curves.iter().enumerate() {
        pairing[i][i] = c.self_int;
    }
    let mut seen = BTreeMap::new();
    for x in &doc.intersections {
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::input(format!("intersection names unknown curve {l:?}")))
        };
        let (a, b) = (lookup(&x.a)?, lookup(&x.b)?);
        if a == b {
            return Err(Error::input(format!("intersection of {:?} with itself; use \"self\"", x.a)));
        }
        if x.mult < 0 {
            return Err(Error::input(format!("negative intersection {}·{}", x.a, x.b)));
        }
        let key = (a.min(b), a.max(b));
        if let Some(&prev) = seen.get(&key) {
            if prev != x.mult {
                return Err(Error::input(format!(
                    "asymmetric pairing: {}·{} given as {prev} and {}",
                    x.a, x.b, x.mult
                )));
            }
        }
        seen.insert(key, x.mult);
        pairing[a][b] = x.mult;
        pairing[b][a] = x.mult;
    }
    let curves = doc
        .curves
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut initial = vec![0; n];
            initial[i] = 1;
            CurveRecord {
                label: c.label.clone(),
                class: Class { initial, exceptional: vec![] },
                nodes: c.nodes,
            }
        })
        .collect();
    Ok(ConfigState {
        curves,
        symbols: doc.curves.iter().map(|c| c.label.clone()).collect(),
        initial_pairing: pairing,
        k_initial_dots: doc.curves.iter().map(|c| c.k_dot).collect(),
        ks2: doc.ks2,
        num_blowups: 0,
    })
}

impl ConfigState {
    pub fn num_blowups(&self) -> usize {
        self.num_blowups
    }

    pub fn ks2(&self) -> i64 {
        self.ks2
    }

    pub fn curves(&self) -> &[CurveRecord] {
        &self.curves
    }

    pub fn curve(&self, label: &str) -> Result<&CurveRecord> {
        self.curves
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::input(format!("unknown curve {label:?}")))
    }

    fn curve_mut(&mut self, label: &str) -> &mut CurveRecord {
        self.curves.iter_mut().find(|c| c.label == label).expect("label checked")
    }

    pub fn class_pairing(&self, x: &Class, y: &Class) -> i64 {
        let mut s = 0;
        for (i, a) in x.initial.iter().enumerate() {
            for (j, b) in y.initial.iter().enumerate() {
                s += a * b * self.initial_pairing[i][j];
            }
        }
        for i in 0..self.num_blowups {
            s -= x.exc(i) * y.exc(i);
        }
        s
    }

    pub fn class_k_degree(&self, x: &Class) -> i64 {
        let k: i64 = x.initial.iter().zip(&self.k_initial_dots).map(|(a, k)| a * k).sum();
        k - (0..self.num_blowups).map(|i| x.exc(i)).sum::<i64>()
    }

    /// `K_X² = K_S² + Σ e_i²`, evaluated on the lattice.
    pub fn k_squared(&self) -> i64 {
        let e2: i64 = (0..self.num_blowups)
            .map(|i| {
                let mut v = vec![0; self.num_blowups];
                v[i] = 1;
                let e = Class { initial: vec![0; self.symbols.len()], exceptional: v };
                self.class_pairing(&e, &e)
            })
            .sum();
        self.ks2 + e2
    }

    pub fn exceptional_symbols(&self) -> Vec<String> {
        (1..=self.num_blowups).map(|i| format!("e{i}")).collect()
    }

    pub fn initial_symbols(&self) -> &[String] {
        &self.symbols
    }
}

pub fn pairing(state: &ConfigState, a: &str, b: &str) -> Result<i64> {
    Ok(state.class_pairing(&state.curve(a)?.class, &state.curve(b)?.class))
}

pub fn k_degree(state: &ConfigState, a: &str) -> Result<i64> {
    Ok(state.class_k_degree(&state.curve(a)?.class))
}

/// Blows up `p`, subtracting the new exceptional symbol from the curves
/// through it (twice from a curve at its node) and adding the new
/// (−1)-curve `E<m+1>` (or `label`).
pub fn blow_up(state: &ConfigState, p: &PointSpec, label: Option<&str>) -> Result<ConfigState> {
    let mut next = state.clone();
    let idx = next.num_blowups;
    let label = label.map(str::to_string).unwrap_or_else(|| format!("E{}", idx + 1));
    if next.curves.iter().any(|c| c.label == label) {
        return Err(Error::domain(format!("cannot blow up {p}: label {label:?} already in use")));
    }
    let through: Vec<(String, i64)> = match p {
        PointSpec::FreePoint(c) => {
            state.curve(c)?;
            vec![(c.clone(), 1)]
        }
        PointSpec::Intersection(a, b) => {
            if a == b {
                return Err(Error::domain(format!("cannot blow up {p}: use a node for self-intersection points")));
            }
            if pairing(state, a, b)? < 1 {
                return Err(Error::domain(format!("cannot blow up {p}: {a} and {b} do not meet")));
            }
            vec![(a.clone(), 1), (b.clone(), 1)]
        }
        PointSpec::Node(c) => {
            if state.curve(c)?.nodes == 0 {
                return Err(Error::domain(format!("cannot blow up {p}: {c} has no unresolved node")));
            }
            vec![(c.clone(), 2)]
        }
    };
    next.num_blowups += 1;
    for c in &mut next.curves {
        c.class.grow(next.num_blowups);
    }
    for (l, mult) in through {
        let c = next.curve_mut(&l);
        c.class.exceptional[idx] -= mult;
        if mult == 2 {
            c.nodes -= 1;
        }
    }
    let mut exceptional = vec![0; next.num_blowups];
    exceptional[idx] = 1;
    next.curves.push(CurveRecord {
        label,
        class: Class {
            initial: vec![0; next.symbols.len()],
            exceptional,
        },
        nodes: 0,
    });
    Ok(next)
}

/// Reads the chain `[−C_1², …, −C_r²]` off the named curves, checking that
/// they form a chain of smooth rational curves with `C_j² ≤ −2`.
pub fn extract_chain(state: &ConfigState, labels: &[String]) -> Result<Chain> {
    if labels.is_empty() {
        return Err(Error::domain("empty chain"));
    }
    let mut entries = Vec::with_capacity(labels.len());
    for (i, a) in labels.iter().enumerate() {
        let c = state.curve(a)?;
        if c.nodes > 0 {
            return Err(Error::domain(format!("{a} still has {} unresolved node(s)", c.nodes)));
        }
        let s = pairing(state, a, a)?;
        if s > -2 {
            return Err(Error::domain(format!("{a} has self-intersection {s} > -2")));
        }
        for (j, b) in labels.iter().enumerate().skip(i + 1) {
            if a == b {
                return Err(Error::domain(format!("{a} listed twice")));
            }
            let p = pairing(state, a, b)?;
            let want = if j == i + 1 { 1 } else { 0 };
            if p != want {
                return Err(Error::domain(format!("{a}·{b} = {p}, chain needs {want}")));
            }
        }
        entries.push((-s) as u64);
    }
    Chain::new(entries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignatedCurve {
    pub label: String,
    pub k_degree: i64,
    pub incidences: Vec<(usize, u64)>,
    /// `φ(F)·K_W`, as a reduced fraction.
    pub contracted_degree: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub name: Option<String>,
    pub chain: Vec<u64>,
    pub classification: String,
    pub m: usize,
    pub r: usize,
    pub d: Option<u64>,
    pub kw2: Option<i64>,
    pub lambda: i64,
    /// `e_i·ΣC_j` for each exceptional symbol.
    pub exceptional_dots: Vec<i64>,
    pub exceptional_sum: i64,
    pub designated: Option<DesignatedCurve>,
    pub checks: Vec<ReplayCheck>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn push(checks: &mut Vec<ReplayCheck>, name: &str, pass: bool, detail: String) {
    checks.push(ReplayCheck { name: name.into(), pass, detail });
}

/// Runs the script and verifies the resulting chain against the intersection
/// identities. Malformed documents and invalid steps are errors; everything
/// else lands in the report.
pub fn replay(doc: &Construction) -> Result<ReplayReport> {
    let mut state = init_config(doc)?;
    for step in &doc.steps {
        state = blow_up(&state, &step.point()?, step.label.as_deref())?;
    }
    for l in &doc.pi_c {
        if !state.symbols.contains(l) {
            return Err(Error::input(format!("pi_c names {l:?}, which is not an initial curve")));
        }
    }
    let lambda: i64 = doc
        .pi_c
        .iter()
        .map(|l| {
            let i = state.symbols.iter().position(|s| s == l).unwrap();
            state.k_initial_dots[i]
        })
        .sum();
    let chain = extract_chain(&state, &doc.chain_order)?;
    let class = classify(&chain);
    let r = chain.len();
    let m = state.num_blowups;
    let mut checks = Vec::new();

    let d = class.tparams().map(|p| p.d());
    push(&mut checks, "t_chain", d.is_some(), format!("{chain}: {}", describe(&class)));

    let mut sum_c = Class {
        initial: vec![0; state.symbols.len()],
        exceptional: vec![0; m],
    };
    for l in &doc.chain_order {
        let c = &state.curve(l)?.class;
        for (x, y) in sum_c.initial.iter_mut().zip(&c.initial) {
            *x += y;
        }
        for (i, x) in sum_c.exceptional.iter_mut().enumerate() {
            *x += c.exc(i);
        }
    }
    let dots: Vec<i64> = sum_c.exceptional.iter().map(|c| -c).collect();
    let sum: i64 = dots.iter().sum();
    let kw2 = d.map(|d| kw2_from(state.ks2, m as u64, r as u64, d));
    if let Some(d) = d {
        let want = exceptional_sum_value(r as i64, d as i64, lambda);
        push(
            &mut checks,
            "exceptional_sum",
            sum == want,
            format!("Σ e_i·ΣC_j = {sum}, r−d+2−λ = {want}"),
        );
    }
    let weak: Vec<String> = dots
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < 1)
        .map(|(i, v)| format!("e{}·ΣC = {v}", i + 1))
        .collect();
    push(
        &mut checks,
        "each_exceptional_meets",
        weak.is_empty(),
        if weak.is_empty() {
            format!("e_i·ΣC = {dots:?}, all ≥ 1")
        } else {
            weak.join(", ")
        },
    );

    let k2 = state.k_squared();
    push(
        &mut checks,
        "k_squared",
        k2 == state.ks2 - m as i64,
        format!("K_X² = {k2}, K_S² − m = {}", state.ks2 - m as i64),
    );
    let bad: Vec<String> = state
        .curves
        .iter()
        .filter_map(|c| {
            let s = state.class_pairing(&c.class, &c.class);
            let k = state.class_k_degree(&c.class);
            let want = -2 + 2 * c.nodes as i64;
            (s + k != want).then(|| format!("{}: C²+K·C = {}, expected {want}", c.label, s + k))
        })
        .collect();
    push(
        &mut checks,
        "adjunction",
        bad.is_empty(),
        if bad.is_empty() { "every tracked curve".into() } else { bad.join("; ") },
    );

    let designated = match &doc.designated_f {
        None => None,
        Some(f) => {
            if doc.chain_order.contains(f) {
                return Err(Error::input(format!("designated curve {f:?} lies in the chain")));
            }
            let kf = k_degree(&state, f)?;
            let mut incidences = Vec::new();
            for (j, l) in doc.chain_order.iter().enumerate() {
                let p = pairing(&state, f, l)?;
                if p < 0 {
                    return Err(Error::domain(format!("{f}·{l} = {p} < 0")));
                }
                if p > 0 {
                    incidences.push((j + 1, p as u64));
                }
            }
            match contracted_degree(&chain, &IncidenceProfile::new(incidences.clone(), kf)) {
                Ok(deg) => {
                    push(&mut checks, "designated_positive", deg > Rational::from_integer(0.into()), format!("φ({f})·K_W = {deg}"));
                    Some(DesignatedCurve {
                        label: f.clone(),
                        k_degree: kf,
                        incidences,
                        contracted_degree: deg.to_string(),
                    })
                }
                Err(e) => {
                    push(&mut checks, "designated_positive", false, e.to_string());
                    None
                }
            }
        }
    };

    if let Some(exp) = &doc.expect {
        if let Some(em) = exp.m {
            push(&mut checks, "expected_m", em == m, format!("m = {m}, expected {em}"));
        }
        if let Some(ec) = &exp.chain {
            let rev: Vec<u64> = ec.iter().rev().copied().collect();
            let ok = chain.entries() == ec.as_slice() || chain.entries() == rev.as_slice();
            push(&mut checks, "expected_chain", ok, format!("{chain}, expected {ec:?} up to reversal"));
        }
    }

    Ok(ReplayReport {
        name: doc.name.clone(),
        chain: chain.entries().to_vec(),
        classification: describe(&class),
        m,
        r,
        d,
        kw2,
        lambda,
        exceptional_dots: dots,
        exceptional_sum: sum,
        designated,
        checks,
    })
}

fn describe(c: &ChainClass) -> String {
    match c {
        ChainClass::TChain(p) => format!("T-chain {p}"),
        ChainClass::DuVal(r) => format!("du Val A_{r}"),
        ChainClass::NotT => "not a T-chain".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn doc(json: &str) -> Construction {
        Construction::parse(json).unwrap()
    }

    const K1A: &str = r#"{
        "ks2": 0,
        "curves": [
            {"label": "A", "self": -3, "k_dot": 1},
            {"label": "B", "self": 0, "nodes": 1}
        ],
        "intersections": [{"a": "A", "b": "B", "mult": 1}],
        "pi_c": ["A", "B"],
        "steps": [
            {"op": "node", "args": ["B"]},
            {"op": "intersection", "args": ["E1", "B"], "label": "F"}
        ],
        "chain_order": ["A", "B", "E1"],
        "designated_f": "F"
    }"#;

    fn s(l: &str) -> String {
        l.to_string()
    }

    #[test]
    fn init_reproduces_input() {
        let st = init_config(&doc(K1A)).unwrap();
        assert_eq!(pairing(&st, "A", "A").unwrap(), -3);
        assert_eq!(pairing(&st, "A", "B").unwrap(), 1);
        assert_eq!(k_degree(&st, "A").unwrap(), 1);
        assert_eq!(k_degree(&st, "B").unwrap(), 0);
        assert_eq!(st.num_blowups(), 0);
    }

    #[test]
    fn asymmetric_pairing_rejected() {
        let mut d = doc(K1A);
        d.intersections.push(IntersectionSpec { a: s("B"), b: s("A"), mult: 2 });
        assert!(matches!(init_config(&d), Err(Error::Input(_))));
    }

    #[test]
    fn node_then_intersection() {
        let st = init_config(&doc(K1A)).unwrap();
        let st = blow_up(&st, &PointSpec::Node(s("B")), None).unwrap();
        assert_eq!(pairing(&st, "B", "B").unwrap(), -4);
        assert_eq!(pairing(&st, "E1", "B").unwrap(), 2);
        let st = blow_up(&st, &PointSpec::Intersection(s("E1"), s("B")), Some("F")).unwrap();
        let selfs: Vec<i64> = ["A", "B", "E1"].iter().map(|l| pairing(&st, l, l).unwrap()).collect();
        assert_eq!(selfs, vec![-3, -5, -2]);
        assert_eq!(pairing(&st, "F", "B").unwrap(), 1);
        assert_eq!(pairing(&st, "F", "E1").unwrap(), 1);
        assert_eq!(pairing(&st, "F", "A").unwrap(), 0);
        assert_eq!(k_degree(&st, "F").unwrap(), -1);
        let c = extract_chain(&st, &[s("A"), s("B"), s("E1")]).unwrap();
        assert_eq!(c.entries(), &[3, 5, 2]);
    }

    #[test]
    fn free_point() {
        let d = doc(r#"{"ks2": 0, "curves": [{"label": "G", "self": -2}], "pi_c": [], "steps": [], "chain_order": ["G"]}"#);
        let st = blow_up(&init_config(&d).unwrap(), &PointSpec::FreePoint(s("G")), None).unwrap();
        assert_eq!(pairing(&st, "G", "G").unwrap(), -3);
    }

    #[test]
    fn precondition_errors() {
        let st = init_config(&doc(K1A)).unwrap();
        assert!(matches!(blow_up(&st, &PointSpec::Node(s("A")), None), Err(Error::Domain(_))));
        assert!(blow_up(&st, &PointSpec::FreePoint(s("Z")), None).is_err());
        let st2 = blow_up(&st, &PointSpec::FreePoint(s("A")), None).unwrap();
        assert!(matches!(
            blow_up(&st2, &PointSpec::Intersection(s("E1"), s("B")), None),
            Err(Error::Domain(_))
        ));
        // B still has its node, so the chain cannot be read yet.
        assert!(extract_chain(&st, &[s("A"), s("B")]).is_err());
    }

    #[test]
    fn k1a_replay() {
        let rep = replay(&doc(K1A)).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
        assert_eq!(rep.chain, vec![3, 5, 2]);
        assert_eq!(rep.m, 2);
        assert_eq!(rep.kw2, Some(1));
        assert_eq!(rep.lambda, 1);
        assert_eq!(rep.exceptional_sum, 3);
        assert_eq!(rep.exceptional_dots, vec![1, 2]);
        assert_eq!(rep.designated.unwrap().contracted_degree, "1/5");
    }

    #[test]
    fn failed_expectation_is_reported() {
        let mut d = doc(K1A);
        d.expect = Some(Expectation { m: Some(3), chain: Some(vec![2, 5, 3]) });
        let rep = replay(&d).unwrap();
        assert!(!rep.passed());
        let failed: Vec<_> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["expected_m"]);
    }

    #[test]
    fn built_in_replays() {
        let want = [
            ("k0a.json", vec![2, 2, 6, 2, 4], 4, Some(1), 6),
            ("k1a.json", vec![3, 5, 2], 2, Some(1), 3),
            ("k2a.json", vec![2, 5], 1, Some(5), 2),
            ("k2c.json", vec![2, 7, 2, 2, 3], 3, Some(3), 5),
            ("k2d.json", vec![2, 3, 2, 6, 3], 3, Some(3), 5),
        ];
        for ((name, text), (wname, chain, m, kw2, sum)) in DEFAULT_REPLAYS.iter().zip(want) {
            assert_eq!(*name, wname);
            let rep = replay(&doc(text)).unwrap();
            assert!(rep.passed(), "{name}: {:?}", rep.checks);
            assert_eq!((rep.chain, rep.m, rep.kw2, rep.exceptional_sum), (chain, m, kw2, sum), "{name}");
        }
    }

    #[derive(Clone, Debug)]
    enum Op {
        Free(usize),
        Meet(usize, usize),
        Node(usize),
    }

    fn op() -> impl Strategy<Value = Op> {
        prop_oneof![
            (0usize..8).prop_map(Op::Free),
            (0usize..8, 0usize..8).prop_map(|(a, b)| Op::Meet(a, b)),
            (0usize..8).prop_map(Op::Node),
        ]
    }

    proptest! {
        #[test]
        fn lattice_laws(ops in proptest::collection::vec(op(), 0..12)) {
            let d = doc(r#"{"ks2": 3, "curves": [
                {"label": "L", "self": 1, "k_dot": -3},
                {"label": "Q", "self": 4, "k_dot": -6, "nodes": 0},
                {"label": "N", "self": 9, "k_dot": -9, "nodes": 1}
            ], "intersections": [{"a": "L", "b": "Q", "mult": 2}, {"a": "L", "b": "N", "mult": 3}, {"a": "Q", "b": "N", "mult": 6}],
            "pi_c": [], "steps": [], "chain_order": ["L"]}"#);
            let mut st = init_config(&d).unwrap();
            for o in ops {
                let labels: Vec<String> = st.curves().iter().map(|c| c.label.clone()).collect();
                let pick = |i: usize| labels[i % labels.len()].clone();
                let p = match o {
                    Op::Free(i) => PointSpec::FreePoint(pick(i)),
                    Op::Meet(a, b) => PointSpec::Intersection(pick(a), pick(b)),
                    Op::Node(i) => PointSpec::Node(pick(i)),
                };
                let before = st.clone();
                let Ok(next) = blow_up(&st, &p, None) else { continue };
                st = next;
                let e = format!("E{}", st.num_blowups());
                prop_assert_eq!(pairing(&st, &e, &e).unwrap(), -1);
                prop_assert_eq!(k_degree(&st, &e).unwrap(), -1);
                prop_assert_eq!(st.k_squared(), 3 - st.num_blowups() as i64);
                for c in before.curves() {
                    let drop = pairing(&before, &c.label, &c.label).unwrap()
                        - pairing(&st, &c.label, &c.label).unwrap();
                    let expected = match &p {
                        PointSpec::Node(l) if *l == c.label => 4,
                        PointSpec::FreePoint(l) if *l == c.label => 1,
                        PointSpec::Intersection(a, b) if *a == c.label || *b == c.label => 1,
                        _ => 0,
                    };
                    prop_assert_eq!(drop, expected);
                }
                if let PointSpec::Node(l) = &p {
                    prop_assert_eq!(pairing(&st, l, &e).unwrap(), 2);
                }
                for c in st.curves() {
                    let s = pairing(&st, &c.label, &c.label).unwrap();
                    let k = k_degree(&st, &c.label).unwrap();
                    prop_assert_eq!(s + k, -2 + 2 * c.nodes as i64, "{}", c.label);
                }
                for i in 1..=st.num_blowups() {
                    for j in 1..=st.num_blowups() {
                        let unit = |k: usize| {
                            let mut v = vec![0; st.num_blowups()];
                            v[k - 1] = 1;
                            Class { initial: vec![0; 3], exceptional: v }
                        };
                        prop_assert_eq!(st.class_pairing(&unit(i), &unit(j)), if i == j { -1 } else { 0 });
                    }
                }
            }
        }
    }
}
