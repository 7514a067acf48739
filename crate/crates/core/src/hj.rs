//! Hirzebruch–Jung continued fractions.
//!
//! A cyclic quotient singularity `1/m(1,q)` is resolved by a chain of smooth
//! rational curves with self-intersections `-b_1, …, -b_r`, where
//! `m/q = b_1 - 1/(b_2 - 1/(… - 1/b_r))`. This module converts between the
//! two descriptions in exact arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational numbers, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// The singularity `1/order(1, weight)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicQuotient {
    order: BigInt,
    weight: BigInt,
}

impl CyclicQuotient {
    pub fn new(order: impl Into<BigInt>, weight: impl Into<BigInt>) -> Result<Self> {
        let order = order.into();
        let weight = weight.into();
        if !weight.is_positive() || weight >= order {
            return Err(Error::input(format!(
                "weight must satisfy 0 < q < m, got {order}/{weight}"
            )));
        }
        if !order.gcd(&weight).is_one() {
            return Err(Error::input(format!(
                "order and weight must be coprime, got {order}/{weight}"
            )));
        }
        Ok(CyclicQuotient { order, weight })
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn weight(&self) -> &BigInt {
        &self.weight
    }

    /// The same singularity with the coordinates swapped: `(m, q')` with
    /// `q·q' ≡ 1 (mod m)`.
    pub fn inverse_weight(&self) -> CyclicQuotient {
        let inv = mod_inverse(&self.weight, &self.order);
        CyclicQuotient {
            order: self.order.clone(),
            weight: inv,
        }
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.order, self.weight)
    }
}

impl FromStr for CyclicQuotient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (m, q) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::input(format!("expected m/q, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::input(format!("not an integer: {t:?}")))
        };
        CyclicQuotient::new(parse(m)?, parse(q)?)
    }
}

/// `q⁻¹ mod m` for coprime `q`, `m` (extended Euclid).
fn mod_inverse(q: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let ext = q.extended_gcd(m);
    debug_assert!(ext.gcd.is_one());
    ext.x.mod_floor(m)
}

/// A Hirzebruch–Jung chain `[b_1, …, b_r]` with every `b_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct Chain(Vec<u64>);

impl Chain {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::input("a chain needs at least one entry"));
        }
        if let Some(b) = entries.iter().find(|&&b| b < 2) {
            return Err(Error::input(format!("chain entries must be >= 2, found {b}")));
        }
        Ok(Chain(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// The length `r`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> u64 {
        self.0[0]
    }

    pub fn last(&self) -> u64 {
        self.0[self.0.len() - 1]
    }

    pub fn reverse(&self) -> Chain {
        let mut v = self.0.clone();
        v.reverse();
        Chain(v)
    }

    pub fn is_du_val(&self) -> bool {
        self.0.iter().all(|&b| b == 2)
    }

    /// `Σ (b_i − 2)`.
    pub fn excess(&self) -> u64 {
        self.0.iter().map(|b| b - 2).sum()
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u64>) -> Chain {
        debug_assert!(!entries.is_empty() && entries.iter().all(|&b| b >= 2));
        Chain(entries)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Chain {
    type Err = Error;

    /// Parses the bracket syntax `[2,5,3]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::input(format!("expected a chain like [2,5,3], got {s:?}")))?;
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::input(format!("bad chain entry {:?} in {s:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Chain::new(entries)
    }
}

/// Expands `m/q` by the ceiling-division recursion `b = ⌈m/q⌉`,
/// `(m, q) ↦ (q, b·q − m)`.
pub fn hj_expand(x: &CyclicQuotient) -> Chain {
    if let Some(c) = expand_u64(x) {
        return c;
    }
    expand_big(x)
}

fn expand_u64(x: &CyclicQuotient) -> Option<Chain> {
    if let (Some(mut num), Some(mut den)) = (x.order.to_u64(), x.weight.to_u64()) {
        let mut entries = Vec::new();
        while den != 0 {
            let b = num.div_ceil(den);
            let next = b * den - num;
            entries.push(b);
            num = den;
            den = next;
        }
        return Some(Chain::from_vec_unchecked(entries));
    }
    None
}

fn expand_big(x: &CyclicQuotient) -> Chain {
    let mut num = x.order.clone();
    let mut den = x.weight.clone();
    let mut entries = Vec::new();
    while !den.is_zero() {
        let b = num.div_ceil(&den);
        let next = &b * &den - &num;
        entries.push(b.to_u64().expect("continued fraction entry exceeds u64"));
        num = den;
        den = next;
    }
    Chain::from_vec_unchecked(entries)
}

/// Numerators `P_0 = 1, P_1 = b_1, P_i = b_i·P_{i−1} − P_{i−2}` of the partial chains.
pub fn numerators(c: &Chain) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(c.len() + 1);
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    out.push(cur.clone());
    for &b in c.entries() {
        let next = BigInt::from(b) * &cur - &prev;
        prev = cur;
        cur = next;
        out.push(cur.clone());
    }
    out
}

/// Evaluates a chain to its reduced fraction `(m, q)`.
pub fn hj_eval(c: &Chain) -> CyclicQuotient {
    if let Some((p, q)) = eval_u128(c) {
        return CyclicQuotient {
            order: p.into(),
            weight: q.into(),
        };
    }
    eval_big(c)
}

fn eval_big(c: &Chain) -> CyclicQuotient {
    // Same recurrence for numerators from (P_{-1}, P_0) = (0, 1) and for
    // denominators from (Q_{-1}, Q_0) = (-1, 0).
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (-BigInt::one(), BigInt::zero());
    for &b in c.entries() {
        let b = BigInt::from(b);
        let p_next = &b * &p - &p_prev;
        let q_next = &b * &q - &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    // 0 < q < m, and P_i·Q_{i−1} − P_{i−1}·Q_i = −1 makes them coprime.
    CyclicQuotient { order: p, weight: q }
}

/// The same recurrence in `u128`, `None` on overflow. Numerators and
/// denominators stay nonnegative, with `Q_{-1} = −1` handled by starting one
/// step in.
fn eval_u128(c: &Chain) -> Option<(u128, u128)> {
    let e = c.entries();
    let (mut p_prev, mut p) = (1u128, u128::from(e[0]));
    let (mut q_prev, mut q) = (0u128, 1u128);
    for &b in &e[1..] {
        let b = u128::from(b);
        let p_next = b.checked_mul(p)?.checked_sub(p_prev)?;
        let q_next = b.checked_mul(q)?.checked_sub(q_prev)?;
        (p_prev, p) = (p, p_next);
        (q_prev, q) = (q, q_next);
    }
    Some((p, q))
}

pub fn reverse(c: &Chain) -> Chain {
    c.reverse()
}

pub fn inverse_weight(x: &CyclicQuotient) -> CyclicQuotient {
    x.inverse_weight()
}
