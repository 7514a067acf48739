//! Discrepancies of a contracted chain.
//!
//! For the contraction `φ: X → W` of a chain `C_1 + … + C_r` we write
//! `K_X = φ*K_W + Σ μ_j C_j`. Intersecting with `C_i` gives the tridiagonal
//! system `Σ_j μ_j (C_j·C_i) = b_i − 2`, with `C_i² = −b_i` and
//! `C_i·C_{i±1} = 1`.
//!
//! Orientation: for the chain `hj_expand(d·n², d·n·a − 1)` the first entry
//! carries `−1 + a/n` and the last `−1 + (n − a)/n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::hj::{Chain, Rational};
use crate::tchain::{classify, ChainClass};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyVector(Vec<Rational>);

impl DiscrepancyVector {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> DiscrepancyVector {
        DiscrepancyVector(self.0.iter().rev().cloned().collect())
    }
}

impl fmt::Display for DiscrepancyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// How a curve `F` on the resolution meets the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceProfile {
    /// `(position, multiplicity)`; positions are 1-based.
    pub incidences: Vec<(usize, u64)>,
    /// `F·K_X`; −1 for a (−1)-curve.
    pub canonical_degree: i64,
}

impl IncidenceProfile {
    pub fn new(incidences: Vec<(usize, u64)>, canonical_degree: i64) -> Self {
        IncidenceProfile {
            incidences,
            canonical_degree,
        }
    }

    /// A (−1)-curve meeting both ends of a chain of length `r` once
    /// (or the single curve twice when `r = 1`).
    pub fn minus_one_through_ends(r: usize) -> Self {
        if r == 1 {
            IncidenceProfile::new(vec![(1, 2)], -1)
        } else {
            IncidenceProfile::new(vec![(1, 1), (r, 1)], -1)
        }
    }
}

/// Solves the discrepancy system by forward elimination and back
/// substitution.
pub fn discrepancies(c: &Chain) -> DiscrepancyVector {
    let b: Vec<Rational> = c
        .entries()
        .iter()
        .map(|&x| Rational::from_integer(BigInt::from(x)))
        .collect();
    let two = Rational::from_integer(BigInt::from(2));
    let one = Rational::one();
    let r = b.len();

    // Row i: μ_{i−1} − b_i μ_i + μ_{i+1} = b_i − 2.
    // After elimination row i reads diag_i μ_i + μ_{i+1} = rhs_i.
    let mut diag = Vec::with_capacity(r);
    let mut rhs = Vec::with_capacity(r);
    for i in 0..r {
        let mut d = -b[i].clone();
        let mut y = &b[i] - &two;
        if i > 0 {
            let factor = &one / &diag[i - 1];
            d -= &factor;
            y -= &factor * &rhs[i - 1];
        }
        assert!(!d.is_zero(), "negative definite chains have nonzero pivots");
        diag.push(d);
        rhs.push(y);
    }
    let mut mu = vec![Rational::zero(); r];
    for i in (0..r).rev() {
        let mut y = rhs[i].clone();
        if i + 1 < r {
            y -= &mu[i + 1];
        }
        mu[i] = y / &diag[i];
    }
    debug_assert!(mu
        .iter()
        .all(|m| *m > -Rational::one() && *m <= Rational::zero()));
    DiscrepancyVector(mu)
}

/// `φ(F)·K_W = F·K_X − Σ_i μ_i·mult_i`.
pub fn contracted_degree(c: &Chain, f: &IncidenceProfile) -> Result<Rational> {
    match classify(c) {
        ChainClass::TChain(_) | ChainClass::DuVal(_) => {}
        ChainClass::NotT => {
            return Err(Error::domain(format!("{c} is neither a T-chain nor du Val")))
        }
    }
    for &(pos, mult) in &f.incidences {
        if pos == 0 || pos > c.len() {
            return Err(Error::input(format!(
                "incidence position {pos} outside the chain 1..={}",
                c.len()
            )));
        }
        if mult == 0 {
            return Err(Error::input("incidence multiplicities must be >= 1"));
        }
    }
    let mu = discrepancies(c);
    let mut total = Rational::from_integer(BigInt::from(f.canonical_degree));
    for &(pos, mult) in &f.incidences {
        total -= &mu.values()[pos - 1] * Rational::from_integer(BigInt::from(mult));
    }
    Ok(total)
}

/// Computed end discrepancies of a T-chain against the closed forms
/// `−1 + a/n` (first) and `−1 + (n − a)/n` (last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndDiscrepancies {
    pub first: Rational,
    pub last: Rational,
    pub expected_first: Rational,
    pub expected_last: Rational,
}

impl EndDiscrepancies {
    pub fn holds(&self) -> bool {
        self.first == self.expected_first && self.last == self.expected_last
    }
}

/// `None` unless the chain is a T-chain.
pub fn end_discrepancies(c: &Chain) -> Option<EndDiscrepancies> {
    let ChainClass::TChain(p) = classify(c) else {
        return None;
    };
    let mu = discrepancies(c);
    let n = p.n().clone();
    let a = p.a().clone();
    let minus_one = -Rational::one();
    Some(EndDiscrepancies {
        first: mu.values()[0].clone(),
        last: mu.values()[mu.len() - 1].clone(),
        expected_first: &minus_one + Rational::new(a.clone(), n.clone()),
        expected_last: minus_one + Rational::new(&n - a, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(v: &[u64]) -> Chain {
        Chain::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Dense Gaussian elimination, independent of the tridiagonal path.
    fn dense_solve(c: &Chain) -> Vec<Rational> {
        let b = c.entries();
        let r = b.len();
        let mut a: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                let mut row = vec![Rational::zero(); r + 1];
                row[i] = q(-(b[i] as i64), 1);
                if i > 0 {
                    row[i - 1] = q(1, 1);
                }
                if i + 1 < r {
                    row[i + 1] = q(1, 1);
                }
                row[r] = q(b[i] as i64 - 2, 1);
                row
            })
            .collect();
        for col in 0..r {
            let piv = (col..r).find(|&i| !a[i][col].is_zero()).unwrap();
            a.swap(col, piv);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v = &*v / &p;
            }
            let pivot_row = a[col].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        a.into_iter().map(|row| row[r].clone()).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(discrepancies(&ch(&[4])).values(), &[q(-1, 2)]);
        assert_eq!(discrepancies(&ch(&[2, 5])).values(), &[q(-1, 3), q(-2, 3)]);
        assert_eq!(
            discrepancies(&ch(&[3, 5, 2])).values(),
            &[q(-3, 5), q(-4, 5), q(-2, 5)]
        );
        assert_eq!(discrepancies(&ch(&[3, 5, 2])).to_string(), "[-3/5,-4/5,-2/5]");
    }

    #[test]
    fn matches_dense_solver() {
        for c in [
            ch(&[2, 2, 6, 2, 4]),
            ch(&[4, 2, 6, 2, 6, 2, 2, 2, 4, 2, 2]),
            ch(&[2, 2, 2]),
            ch(&[7, 3, 2, 9]),
        ] {
            assert_eq!(discrepancies(&c).values(), dense_solve(&c).as_slice(), "{c}");
        }
    }

    #[test]
    fn end_formula() {
        for c in [ch(&[4]), ch(&[2, 5]), ch(&[3, 5, 2]), ch(&[2, 2, 6, 2, 4]), ch(&[3, 2, 2, 3])] {
            let e = end_discrepancies(&c).unwrap();
            assert!(e.holds(), "{c}: {e:?}");
        }
        assert_eq!(end_discrepancies(&ch(&[3, 5, 2])).unwrap().first, q(-3, 5));
        assert!(end_discrepancies(&ch(&[2, 4])).is_none());
    }

    #[test]
    fn du_val_chains_are_crepant() {
        assert!(discrepancies(&ch(&[2, 2, 2, 2])).values().iter().all(Zero::is_zero));
    }

    #[test]
    fn contracted_degree_examples() {
        let both = IncidenceProfile::new(vec![(1, 1), (2, 1)], -1);
        assert_eq!(contracted_degree(&ch(&[2, 5]), &both).unwrap(), q(0, 1));
        let double = IncidenceProfile::new(vec![(1, 2)], -1);
        assert_eq!(contracted_degree(&ch(&[4]), &double).unwrap(), q(0, 1));
        let f = IncidenceProfile::new(vec![(2, 1), (3, 1)], -1);
        assert_eq!(contracted_degree(&ch(&[3, 5, 2]), &f).unwrap(), q(1, 5));
    }

    #[test]
    fn contracted_degree_errors() {
        let bad = IncidenceProfile::new(vec![(4, 1)], -1);
        assert!(matches!(contracted_degree(&ch(&[3, 5, 2]), &bad), Err(Error::Input(_))));
        let zero = IncidenceProfile::new(vec![(0, 1)], -1);
        assert!(matches!(contracted_degree(&ch(&[3, 5, 2]), &zero), Err(Error::Input(_))));
        let nomult = IncidenceProfile::new(vec![(1, 0)], -1);
        assert!(contracted_degree(&ch(&[3, 5, 2]), &nomult).is_err());
        let ok = IncidenceProfile::new(vec![(1, 1)], -1);
        assert!(matches!(contracted_degree(&ch(&[2, 4]), &ok), Err(Error::Domain(_))));
    }

    #[test]
    fn non_minus_one_curves() {
        // A curve with F·K_X = 0 meeting the middle of [3,5,2] once.
        let f = IncidenceProfile::new(vec![(2, 1)], 0);
        assert_eq!(contracted_degree(&ch(&[3, 5, 2]), &f).unwrap(), q(4, 5));
    }
}
