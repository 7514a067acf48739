//! T-chains: recognition, generation and exhaustive enumeration.
//!
//! Every non du Val T-chain is obtained from `[4]` (d = 1) or
//! `[3, 2, …, 2, 3]` (d ≥ 2, with d − 2 middle 2's) by repeatedly applying
//! `[b_1, …, b_r] ↦ [2, b_1, …, b_r + 1]` or `[b_1 + 1, …, b_r, 2]`. Each step
//! raises `r` by one and keeps `d`, so `k = r − d` counts the steps.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::hj::{hj_eval, hj_expand, Chain, CyclicQuotient};
use crate::{Error, Result};

/// Parameters of the T-singularity `1/(d·n²)(1, d·n·a − 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TParams {
    d: u64,
    n: BigInt,
    a: BigInt,
}

impl TParams {
    pub fn new(d: u64, n: impl Into<BigInt>, a: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        let a = a.into();
        if d < 1 {
            return Err(Error::input("d must be positive"));
        }
        if n < BigInt::from(2) {
            return Err(Error::input(format!("index n must be >= 2, got {n}")));
        }
        if a < BigInt::one() || a >= n {
            return Err(Error::input(format!("need 0 < a < n, got a={a}, n={n}")));
        }
        if !n.gcd(&a).is_one() {
            return Err(Error::input(format!("need gcd(n, a) = 1, got n={n}, a={a}")));
        }
        Ok(TParams { d, n, a })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// The index `n`.
    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// `(d·n², d·n·a − 1)`.
    pub fn quotient(&self) -> CyclicQuotient {
        let dn = BigInt::from(self.d) * &self.n;
        CyclicQuotient::new(&dn * &self.n, &dn * &self.a - 1)
            .expect("valid TParams give a valid quotient")
    }
}

impl fmt::Display for TParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} n={} a={}", self.d, self.n, self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainClass {
    /// An `A_r` chain of (−2)-curves.
    DuVal(usize),
    TChain(TParams),
    NotT,
}

impl ChainClass {
    pub fn tparams(&self) -> Option<&TParams> {
        match self {
            ChainClass::TChain(p) => Some(p),
            _ => None,
        }
    }
}

pub fn chain_of(p: &TParams) -> Chain {
    hj_expand(&p.quotient())
}

/// `d` of a chain that strips down to `[4]` or `[3, 2, …, 2, 3]`, if it does.
fn strip_to_initial(c: &Chain) -> Option<u64> {
    let mut v: Vec<u64> = c.entries().to_vec();
    loop {
        if v == [4] {
            return Some(1);
        }
        let len = v.len();
        if len >= 2 && v[0] == 3 && v[len - 1] == 3 && v[1..len - 1].iter().all(|&b| b == 2) {
            return Some(len as u64);
        }
        if len < 2 {
            return None;
        }
        if v[0] == 2 {
            v.remove(0);
            let last = v.last_mut().unwrap();
            *last -= 1;
            if *last < 2 {
                return None;
            }
        } else if v[len - 1] == 2 {
            v.pop();
            v[0] -= 1;
            if v[0] < 2 {
                return None;
            }
        } else {
            return None;
        }
    }
}

/// Recovers `(d, n, a)` from `(m, q) = (d·n², d·n·a − 1)`. Since
/// `gcd(d·n², d·n·a) = d·n` we get `n = m / gcd(m, q+1)`.
fn recover_params(x: &CyclicQuotient) -> Option<TParams> {
    let m = x.order();
    let q1 = x.weight() + 1;
    let g = m.gcd(&q1);
    let n = m / &g;
    if n < BigInt::from(2) {
        return None;
    }
    let (d, rem) = m.div_rem(&(&n * &n));
    if rem != BigInt::from(0) {
        return None;
    }
    let dn = &d * &n;
    if g != dn {
        return None;
    }
    let a = &q1 / &dn;
    TParams::new(d.to_u64()?, n, a).ok()
}

/// Classifies a chain as du Val, T-chain or neither.
///
/// The strip path decides membership; `(d, n, a)` are then recovered from
/// the fraction and must agree with the stripped `d`.
pub fn classify(c: &Chain) -> ChainClass {
    if c.is_du_val() {
        return ChainClass::DuVal(c.len());
    }
    let Some(d) = strip_to_initial(c) else {
        return ChainClass::NotT;
    };
    let p = recover_params(&hj_eval(c))
        .expect("a chain that strips to an initial T-chain has T-singularity parameters");
    assert_eq!(p.d(), d, "strip path and arithmetic disagree on d for {c}");
    ChainClass::TChain(p)
}

fn require_t(c: &Chain) -> Result<TParams> {
    match classify(c) {
        ChainClass::TChain(p) => Ok(p),
        _ => Err(Error::domain(format!("{c} is not a T-chain"))),
    }
}

/// `[b_1, …, b_r] ↦ [2, b_1, …, b_r + 1]`.
pub fn expand_left(c: &Chain) -> Result<Chain> {
    require_t(c)?;
    Ok(step_left(c))
}

/// `[b_1, …, b_r] ↦ [b_1 + 1, …, b_r, 2]`.
pub fn expand_right(c: &Chain) -> Result<Chain> {
    require_t(c)?;
    Ok(step_right(c))
}

fn step_left(c: &Chain) -> Chain {
    let mut v = Vec::with_capacity(c.len() + 1);
    v.push(2);
    v.extend_from_slice(c.entries());
    *v.last_mut().unwrap() += 1;
    Chain::from_vec_unchecked(v)
}

fn step_right(c: &Chain) -> Chain {
    let mut v = c.entries().to_vec();
    v[0] += 1;
    v.push(2);
    Chain::from_vec_unchecked(v)
}

/// `[4]` for `d = 1`, `[3, 2×(d−2), 3]` otherwise.
pub fn initial_chain(d: u64) -> Result<Chain> {
    match d {
        0 => Err(Error::input("d must be >= 1")),
        1 => Ok(Chain::from_vec_unchecked(vec![4])),
        _ => {
            let mut v = vec![2; d as usize];
            v[0] = 3;
            v[d as usize - 1] = 3;
            Ok(Chain::from_vec_unchecked(v))
        }
    }
}

/// All T-chains reachable from `initial_chain(d)` in exactly `k` expansion
/// steps. Reversal duplicates are kept; there are exactly `2^k` of them.
pub fn enumerate_tchains(d: u64, k: u32) -> Result<BTreeSet<Chain>> {
    let mut layer = vec![initial_chain(d)?];
    for _ in 0..k {
        layer = layer
            .iter()
            .flat_map(|c| [step_left(c), step_right(c)])
            .collect();
    }
    Ok(layer.into_iter().collect())
}

/// The orientation of `c` that is lexicographically smaller.
pub fn canonical_orientation(c: &Chain) -> Chain {
    let r = c.reverse();
    if r < *c {
        r
    } else {
        c.clone()
    }
}

/// Collapses each chain and its reversal to one representative.
pub fn dedupe_reversals(chains: &BTreeSet<Chain>) -> BTreeSet<Chain> {
    chains.iter().map(canonical_orientation).collect()
}

/// `F_{−2} = F_{−1} = 1`, `F_i = F_{i−1} + F_{i−2}`.
pub fn fibonacci(i: i64) -> Result<BigInt> {
    if i < -2 {
        return Err(Error::input(format!("Fibonacci index must be >= -2, got {i}")));
    }
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for _ in -1..i {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(if i == -2 { a } else { b })
}

/// Whether `c` is `[3, …, 3, 5, 3, …, 3, 2]` in one of its orientations.
pub fn is_extremal_wahl_form(c: &Chain) -> bool {
    let matches = |v: &[u64]| {
        let (last, rest) = v.split_last().unwrap();
        *last == 2
            && rest.iter().filter(|&&b| b == 5).count() == 1
            && rest.iter().all(|&b| b == 3 || b == 5)
    };
    let v = c.entries();
    let mut r = v.to_vec();
    r.reverse();
    matches(v) || matches(&r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibonacciReport {
    pub d: u64,
    pub k: u32,
    pub chains: usize,
    pub max_index: String,
    pub fibonacci: String,
    /// `max n ≤ F_k`.
    pub bound_holds: bool,
    pub attained: bool,
    pub maximizers: Vec<String>,
    /// For `d = 1, k ≥ 1`: whether every maximizer has the extremal form.
    pub extremal_form: Option<bool>,
}

impl FibonacciReport {
    pub fn passed(&self) -> bool {
        self.bound_holds && self.extremal_form != Some(false) && (self.d != 1 || self.attained)
    }
}

/// Checks `n ≤ F_{r−d}` over every T-chain with parameters `(d, k = r − d)`.
pub fn verify_fibonacci_bound(d: u64, k: u32) -> Result<FibonacciReport> {
    let chains = enumerate_tchains(d, k)?;
    let fib = fibonacci(i64::from(k))?;
    let mut max = BigInt::from(0);
    let mut maximizers = Vec::new();
    for c in &chains {
        let p = classify(c);
        let n = p
            .tparams()
            .expect("enumerated chains are T-chains")
            .n()
            .clone();
        if n > max {
            max = n;
            maximizers.clear();
        }
        if *p.tparams().unwrap().n() == max {
            maximizers.push(c.clone());
        }
    }
    let extremal_form = (d == 1 && k >= 1).then(|| maximizers.iter().all(is_extremal_wahl_form));
    Ok(FibonacciReport {
        d,
        k,
        chains: chains.len(),
        bound_holds: max <= fib,
        attained: max == fib,
        max_index: max.to_string(),
        fibonacci: fib.to_string(),
        maximizers: maximizers.iter().map(ToString::to_string).collect(),
        extremal_form,
    })
}

/// One line of the JSONL catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub chain: Vec<u64>,
    pub d: u64,
    pub n: u128,
    pub a: u128,
    pub order: u128,
    pub weight: u128,
    pub r: usize,
    pub k: u64,
}

impl CatalogRecord {
    pub fn from_chain(c: &Chain) -> Result<Self> {
        let p = require_t(c)?;
        let x = p.quotient();
        let big = |v: &BigInt| {
            v.to_u128()
                .ok_or_else(|| Error::input(format!("{v} does not fit the catalog schema")))
        };
        Ok(CatalogRecord {
            chain: c.entries().to_vec(),
            d: p.d(),
            n: big(p.n())?,
            a: big(p.a())?,
            order: big(x.order())?,
            weight: big(x.weight())?,
            r: c.len(),
            k: c.len() as u64 - p.d(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hj::hj_eval;
    use proptest::prelude::*;

    fn ch(v: &[u64]) -> Chain {
        Chain::new(v.to_vec()).unwrap()
    }

    fn tp(d: u64, n: u64, a: u64) -> TParams {
        TParams::new(d, n, a).unwrap()
    }

    #[test]
    fn chain_of_examples() {
        assert_eq!(chain_of(&tp(1, 2, 1)), ch(&[4]));
        assert_eq!(chain_of(&tp(1, 3, 2)), ch(&[2, 5]));
        assert_eq!(chain_of(&tp(2, 2, 1)), ch(&[3, 3]));
    }

    #[test]
    fn invalid_params() {
        assert!(TParams::new(0, 3, 1).is_err());
        assert!(TParams::new(1, 1, 1).is_err());
        assert!(TParams::new(1, 4, 2).is_err());
        assert!(TParams::new(1, 4, 4).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&ch(&[2, 2, 2])), ChainClass::DuVal(3));
        assert_eq!(classify(&ch(&[2, 5, 3])), ChainClass::TChain(tp(1, 5, 3)));
        assert_eq!(classify(&ch(&[2, 4])), ChainClass::NotT);
        assert_eq!(classify(&ch(&[3, 5, 2])), ChainClass::TChain(tp(1, 5, 2)));
        assert_eq!(classify(&ch(&[5])), ChainClass::NotT);
        assert_eq!(classify(&ch(&[2, 3, 2])), ChainClass::NotT);
        assert_eq!(
            classify(&ch(&[4, 2, 6, 2, 6, 2, 2, 2, 4, 2, 2])),
            ChainClass::TChain(tp(1, 100, 29))
        );
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_left(&ch(&[4])).unwrap(), ch(&[2, 5]));
        assert_eq!(expand_right(&ch(&[4])).unwrap(), ch(&[5, 2]));
        assert_eq!(expand_right(&ch(&[2, 5])).unwrap(), ch(&[3, 5, 2]));
        assert!(matches!(expand_left(&ch(&[2, 4])), Err(Error::Domain(_))));
        assert!(matches!(expand_right(&ch(&[2, 2])), Err(Error::Domain(_))));
    }

    #[test]
    fn initial_chains() {
        assert_eq!(initial_chain(1).unwrap(), ch(&[4]));
        assert_eq!(initial_chain(2).unwrap(), ch(&[3, 3]));
        assert_eq!(initial_chain(3).unwrap(), ch(&[3, 2, 3]));
        assert!(initial_chain(0).is_err());
        assert_eq!(hj_eval(&ch(&[3, 2, 3])), CyclicQuotient::new(12, 5).unwrap());
        for d in 1..=6 {
            let p = classify(&initial_chain(d).unwrap());
            assert_eq!(p, ChainClass::TChain(tp(d, 2, 1)));
        }
    }

    #[test]
    fn enumeration_examples() {
        let set = |v: &[&[u64]]| v.iter().map(|c| ch(c)).collect::<BTreeSet<_>>();
        assert_eq!(enumerate_tchains(1, 0).unwrap(), set(&[&[4]]));
        assert_eq!(enumerate_tchains(1, 1).unwrap(), set(&[&[2, 5], &[5, 2]]));
        assert_eq!(
            enumerate_tchains(1, 2).unwrap(),
            set(&[&[2, 2, 6], &[3, 5, 2], &[2, 5, 3], &[6, 2, 2]])
        );
        assert_eq!(dedupe_reversals(&enumerate_tchains(1, 2).unwrap()).len(), 2);
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(-2).unwrap(), BigInt::from(1));
        assert_eq!(fibonacci(-1).unwrap(), BigInt::from(1));
        assert_eq!(fibonacci(0).unwrap(), BigInt::from(2));
        assert_eq!(fibonacci(1).unwrap(), BigInt::from(3));
        assert_eq!(fibonacci(4).unwrap(), BigInt::from(13));
        assert!(fibonacci(-3).is_err());
    }

    #[test]
    fn fibonacci_report_examples() {
        let r = verify_fibonacci_bound(1, 1).unwrap();
        assert_eq!((r.max_index.as_str(), r.fibonacci.as_str()), ("3", "3"));
        assert_eq!(r.maximizers, vec!["[2,5]", "[5,2]"]);
        let r = verify_fibonacci_bound(1, 2).unwrap();
        assert_eq!(r.max_index, "5");
        assert_eq!(r.maximizers, vec!["[2,5,3]", "[3,5,2]"]);
        assert!(r.passed());
        let r = verify_fibonacci_bound(1, 4).unwrap();
        assert_eq!(r.max_index, "13");
        assert!(r.maximizers.contains(&"[3,3,5,3,2]".to_string()));
        assert_eq!(r.extremal_form, Some(true));
    }

    #[test]
    fn extremal_form() {
        assert!(is_extremal_wahl_form(&ch(&[3, 3, 5, 3, 2])));
        assert!(is_extremal_wahl_form(&ch(&[2, 3, 5, 3, 3])));
        assert!(is_extremal_wahl_form(&ch(&[5, 2])));
        assert!(!is_extremal_wahl_form(&ch(&[2, 2, 6])));
        assert!(!is_extremal_wahl_form(&ch(&[4])));
    }

    #[test]
    fn catalog_record() {
        let rec = CatalogRecord::from_chain(&ch(&[2, 5, 3])).unwrap();
        assert_eq!((rec.d, rec.n, rec.a, rec.order, rec.weight), (1, 5, 3, 25, 14));
        assert_eq!((rec.r, rec.k), (3, 2));
        let line = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            line,
            r#"{"chain":[2,5,3],"d":1,"n":5,"a":3,"order":25,"weight":14,"r":3,"k":2}"#
        );
        assert!(CatalogRecord::from_chain(&ch(&[2, 4])).is_err());
    }

    #[test]
    fn no_enumerated_chain_has_two_at_both_ends() {
        for d in 1..=4 {
            for k in 0..=10 {
                for c in enumerate_tchains(d, k).unwrap() {
                    assert!(!(c.first() == 2 && c.last() == 2), "{c}");
                }
            }
        }
    }

    #[test]
    fn cardinality_and_closure() {
        for d in 1..=4u64 {
            for k in 0..=12u32 {
                let set = enumerate_tchains(d, k).unwrap();
                assert_eq!(set.len(), 1usize << k);
                for c in &set {
                    assert!(set.contains(&c.reverse()));
                    let p = classify(c);
                    let p = p.tparams().expect("T-chain");
                    assert_eq!(p.d(), d);
                    assert_eq!(c.len() as u64, d + u64::from(k));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn expansions_preserve_d(d in 1u64..=5, steps in prop::collection::vec(any::<bool>(), 0..10)) {
            let mut c = initial_chain(d).unwrap();
            for left in steps {
                let next = if left { expand_left(&c).unwrap() } else { expand_right(&c).unwrap() };
                prop_assert_eq!(next.len(), c.len() + 1);
                prop_assert_eq!(classify(&next).tparams().unwrap().d(), d);
                c = next;
            }
        }
    }
}
