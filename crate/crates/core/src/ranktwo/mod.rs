//! The rank-two algebra: exchange polynomials, the bidirectional cluster
//! recurrence over the based torus, hatted relations, bar invariance, and
//! the standard-monomial basis.
//!
//! Variables live over the rank-two torus with `X_1 = X(1,0)`,
//! `X_2 = X(0,1)` and `X_1 X_2 = q X_2 X_1`. The recurrence
//! `X_{k-1} X_{k+1} = P(X_k)` uses `p1` when the pivot `k` is even and `p2`
//! when it is odd; solving it forward is a left division by `X_{k-2}` and
//! backward a right division by `X_{k+2}`. Division success *is* the
//! Laurent phenomenon.

mod standard;

pub use standard::{
    enumerate_standard_monomials, reduce_to_standard, standard_independence_check,
    standard_roundtrip_check, Gen, StandardMonomial, Word, WordSum,
};

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::de;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qcoeff::QLaurent;
use crate::qtorus::{SkewMatrix, TorusElement};
use crate::report::Report;

/// A palindromic exchange polynomial of positive degree `d`, stored through
/// its coefficient string `(h_0, ..., h_d)` with `h_0 = h_d = 1` and
/// `h_i = h_{d-i}`. The polynomial itself is `sum_i q^(i/2) h_i x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangePolynomial {
    h: Vec<QLaurent>,
}

impl ExchangePolynomial {
    pub fn new(h: Vec<QLaurent>) -> Result<Self> {
        if h.len() < 2 {
            return Err(Error::InvalidInput(
                "exchange polynomial needs positive degree".into(),
            ));
        }
        let d = h.len() - 1;
        if !h[0].is_one() || !h[d].is_one() {
            return Err(Error::InvalidInput(
                "exchange polynomial must start and end with 1".into(),
            ));
        }
        for i in 0..=d {
            if h[i] != h[d - i] {
                return Err(Error::InvalidInput(format!(
                    "coefficient string is not palindromic at position {i}"
                )));
            }
        }
        Ok(ExchangePolynomial { h })
    }

    /// Degree-`d` polynomial with every string coefficient equal to 1.
    pub fn trivial(d: usize) -> Self {
        ExchangePolynomial {
            h: vec![QLaurent::one(); d + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.h.len() - 1
    }

    pub fn h(&self) -> &[QLaurent] {
        &self.h
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.h.iter().all(QLaurent::is_bar_invariant)
    }

    /// Coefficients of `P`: `q^(i/2) h_i`.
    pub fn expanded(&self) -> TorusPolynomial {
        TorusPolynomial {
            coeffs: self
                .h
                .iter()
                .enumerate()
                .map(|(i, hi)| hi.shift(i as i64))
                .collect(),
        }
    }

    /// Coefficients of the hatted polynomial: `q^(-i/2) h_i`. It governs the
    /// reversed-order product `X_{k+1} X_{k-1}`.
    pub fn hatted(&self) -> TorusPolynomial {
        TorusPolynomial {
            coeffs: self
                .h
                .iter()
                .enumerate()
                .map(|(i, hi)| hi.shift(-(i as i64)))
                .collect(),
        }
    }

    /// Evaluates `P` at a torus element.
    pub fn eval(&self, a: &TorusElement) -> Result<TorusElement> {
        self.expanded().eval(a)
    }
}

impl Serialize for ExchangePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ExchangePolynomial", 2)?;
        st.serialize_field("d", &self.degree())?;
        st.serialize_field("h", &self.h)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ExchangePolynomial {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            d: usize,
            h: Vec<QLaurent>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.h.len() != raw.d + 1 {
            return Err(de::Error::custom(format!(
                "h has {} entries, expected d+1 = {}",
                raw.h.len(),
                raw.d + 1
            )));
        }
        ExchangePolynomial::new(raw.h).map_err(de::Error::custom)
    }
}

/// A plain polynomial with coefficient-ring coefficients, evaluated by
/// torus powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPolynomial {
    coeffs: Vec<QLaurent>,
}

impl TorusPolynomial {
    pub fn coeffs(&self) -> &[QLaurent] {
        &self.coeffs
    }

    pub fn eval(&self, a: &TorusElement) -> Result<TorusElement> {
        let mut acc = TorusElement::zero(a.lambda().clone());
        let mut power = TorusElement::one(a.lambda().clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.mul(a)?;
            }
            acc = acc.add(&power.scale(c))?;
        }
        Ok(acc)
    }
}

/// The two-sided sequence of cluster variables, memoized by index.
#[derive(Debug, Clone)]
pub struct ClusterSequence {
    p1: ExchangePolynomial,
    p2: ExchangePolynomial,
    cache: BTreeMap<i64, TorusElement>,
}

impl ClusterSequence {
    pub fn new(p1: ExchangePolynomial, p2: ExchangePolynomial) -> Self {
        let lambda = SkewMatrix::rank_two();
        let mut cache = BTreeMap::new();
        cache.insert(
            1,
            TorusElement::basis_vec(lambda.clone(), vec![1, 0]).expect("X1"),
        );
        cache.insert(2, TorusElement::basis_vec(lambda, vec![0, 1]).expect("X2"));
        ClusterSequence { p1, p2, cache }
    }

    pub fn lambda(&self) -> SkewMatrix {
        SkewMatrix::rank_two()
    }

    pub fn p1(&self) -> &ExchangePolynomial {
        &self.p1
    }

    pub fn p2(&self) -> &ExchangePolynomial {
        &self.p2
    }

    /// Exchange polynomial attached to pivot `k`.
    pub fn poly_for_pivot(&self, k: i64) -> &ExchangePolynomial {
        if k.rem_euclid(2) == 0 {
            &self.p1
        } else {
            &self.p2
        }
    }

    /// The cluster variable `X_k`, for any integer `k`.
    ///
    /// Forward: `X_k = X_{k-2} \ P(X_{k-1})`; backward:
    /// `X_k = P(X_{k+1}) / X_{k+2}`. A `NotDivisible` error here is a
    /// counterexample to the Laurent phenomenon.
    pub fn var(&mut self, k: i64) -> Result<TorusElement> {
        if let Some(el) = self.cache.get(&k) {
            return Ok(el.clone());
        }
        if k >= 3 {
            let mut next = *self.cache.keys().next_back().expect("seeded") + 1;
            next = next.max(3);
            for j in next..=k {
                let rhs = self.poly_for_pivot(j - 1).eval(&self.cache[&(j - 1)])?;
                let el = rhs.left_divide_exact(&self.cache[&(j - 2)])?;
                self.cache.insert(j, el);
            }
        } else {
            let mut next = *self.cache.keys().next().expect("seeded") - 1;
            next = next.min(0);
            for j in (k..=next).rev() {
                let rhs = self.poly_for_pivot(j + 1).eval(&self.cache[&(j + 1)])?;
                let el = rhs.right_divide_exact(&self.cache[&(j + 2)])?;
                self.cache.insert(j, el);
            }
        }
        Ok(self.cache[&k].clone())
    }

    /// Expresses `X_j` as a Laurent polynomial in the cluster
    /// `(X_m, X_{m+1})` by rerunning the recurrence with that cluster as the
    /// fresh torus generators and parity-aligned exchange polynomials.
    pub fn expand_in_cluster(&self, j: i64, m: i64) -> Result<TorusElement> {
        let mut shifted = if m.rem_euclid(2) == 1 {
            ClusterSequence::new(self.p1.clone(), self.p2.clone())
        } else {
            ClusterSequence::new(self.p2.clone(), self.p1.clone())
        };
        shifted.var(j - m + 1)
    }

    /// Checks `X_k X_{k+1} = q X_{k+1} X_k` for every `k` with both indices
    /// in range.
    pub fn check_quasi_commutation(&mut self, range: RangeInclusive<i64>) -> Result<Report> {
        let mut report = Report::new();
        let (lo, hi) = (*range.start(), *range.end());
        for k in lo..hi {
            let a = self.var(k)?;
            let b = self.var(k + 1)?;
            let ok = a.mul(&b)? == b.mul(&a)?.shift_q(2);
            report.push(
                format!("quasi-commutation X_{k} X_{}", k + 1),
                ok,
                "",
            );
        }
        Ok(report)
    }

    /// Checks the reversed-order products `X_{k+1} X_{k-1} = Phat(X_k)`.
    pub fn check_hatted_relation(&mut self, range: RangeInclusive<i64>) -> Result<Report> {
        let mut report = Report::new();
        let (lo, hi) = (*range.start(), *range.end());
        for k in (lo + 1)..hi {
            let prev = self.var(k - 1)?;
            let mid = self.var(k)?;
            let next = self.var(k + 1)?;
            let lhs = next.mul(&prev)?;
            let rhs = self.poly_for_pivot(k).hatted().eval(&mid)?;
            report.push(format!("hatted relation at pivot {k}"), lhs == rhs, "");
        }
        Ok(report)
    }

    /// Checks `bar(X_k) = X_k` on the range. Requires every string
    /// coefficient of both polynomials to be bar-invariant.
    pub fn check_bar_invariance(&mut self, range: RangeInclusive<i64>) -> Result<Report> {
        if !self.p1.is_bar_invariant() || !self.p2.is_bar_invariant() {
            return Err(Error::PreconditionFailed(
                "exchange-polynomial coefficients are not bar-invariant".into(),
            ));
        }
        let mut report = Report::new();
        for k in range {
            let el = self.var(k)?;
            report.push(format!("bar-invariance X_{k}"), el.bar() == el, "");
        }
        Ok(report)
    }

    /// Torus expansion of a standard monomial.
    pub fn expand_standard(&mut self, sm: &StandardMonomial) -> Result<TorusElement> {
        let mut acc = TorusElement::one(self.lambda());
        for (idx, pow) in [
            (1i64, sm.a1),
            (2, sm.a2),
            (3, sm.a1p),
            (0, sm.a2p),
        ] {
            if pow > 0 {
                acc = acc.mul(&self.var(idx)?.pow(pow)?)?;
            }
        }
        Ok(acc)
    }

    /// Torus expansion of a formal word in `X_0..X_3`.
    pub fn expand_word(&mut self, word: &Word) -> Result<TorusElement> {
        let mut acc = TorusElement::one(self.lambda());
        for g in word {
            acc = acc.mul(&self.var(g.index())?)?;
        }
        Ok(acc)
    }

    /// Rewrites a formal sum of words into the standard-monomial basis.
    pub fn reduce_to_standard(&self, sum: &[(QLaurent, Word)]) -> Vec<(StandardMonomial, QLaurent)> {
        reduce_to_standard(&self.p1, &self.p2, sum)
    }

    /// Runs the standard-monomial checks at the given degree bound:
    /// reduction round-trips against torus multiplication on products of two
    /// standard monomials, and the monomials of total degree `<= bound` are
    /// linearly independent over the fraction field (full fraction-free
    /// rank).
    pub fn standard_basis_check(&mut self, bound: u32) -> Result<Report> {
        standard::standard_basis_check(self, bound)
    }
}

/// On-disk description of a rank-two run: the two exchange polynomials and
/// the index range of interest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub p1: ExchangePolynomial,
    pub p2: ExchangePolynomial,
    pub range: [i64; 2],
}

/// The two B2 exchange polynomials with the given middle coefficient:
/// degree two at even pivots, degree one at odd pivots.
pub fn b2_polynomials(h: QLaurent) -> (ExchangePolynomial, ExchangePolynomial) {
    let p1 = ExchangePolynomial::new(vec![QLaurent::one(), h, QLaurent::one()])
        .expect("palindromic");
    let p2 = ExchangePolynomial::trivial(1);
    (p1, p2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(c: &[i64]) -> TorusElement {
        TorusElement::basis_vec(SkewMatrix::rank_two(), c.to_vec()).unwrap()
    }

    fn ql(pairs: &[(i64, i64)]) -> QLaurent {
        QLaurent::from_pairs(pairs.iter().copied())
    }

    fn b2_sequence(h: QLaurent) -> ClusterSequence {
        let (p1, p2) = b2_polynomials(h);
        ClusterSequence::new(p1, p2)
    }

    #[test]
    fn eval_exchange_degree_one() {
        let p = ExchangePolynomial::trivial(1);
        let v = p.eval(&x(&[0, 1])).unwrap();
        let expect = TorusElement::one(SkewMatrix::rank_two())
            .add(&x(&[0, 1]).shift_q(1))
            .unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn eval_exchange_degree_two() {
        let h = ql(&[(1, 1), (-1, 1)]);
        let p = ExchangePolynomial::new(vec![QLaurent::one(), h.clone(), QLaurent::one()])
            .unwrap();
        let v = p.eval(&x(&[0, 1])).unwrap();
        let expect = TorusElement::one(SkewMatrix::rank_two())
            .add(&x(&[0, 1]).scale(&h.shift(1)))
            .unwrap()
            .add(&x(&[0, 2]).shift_q(2))
            .unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn eval_exchange_at_zero_is_one() {
        let p = ExchangePolynomial::trivial(3);
        let z = TorusElement::zero(SkewMatrix::rank_two());
        assert_eq!(p.eval(&z).unwrap(), TorusElement::one(SkewMatrix::rank_two()));
    }

    #[test]
    fn hatted_negates_prefixes() {
        let p = ExchangePolynomial::trivial(1);
        assert_eq!(
            p.hatted().coeffs(),
            &[QLaurent::one(), QLaurent::qpow(-1)]
        );
        let h = ql(&[(0, 2)]);
        let p2 = ExchangePolynomial::new(vec![QLaurent::one(), h.clone(), QLaurent::one()])
            .unwrap();
        assert_eq!(
            p2.hatted().coeffs(),
            &[QLaurent::one(), h.shift(-1), QLaurent::qpow(-2)]
        );
        // bar of each expanded coefficient gives the hatted one when the
        // string is bar-invariant
        for (a, b) in p2.expanded().coeffs().iter().zip(p2.hatted().coeffs()) {
            assert_eq!(&a.bar(), b);
        }
    }

    #[test]
    fn b2_cluster_variables_match_golden_values() {
        for h in [QLaurent::zero(), QLaurent::one(), ql(&[(1, 1), (-1, 1)])] {
            let mut seq = b2_sequence(h.clone());
            let x3 = x(&[-1, 0])
                .add(&x(&[-1, 1]).scale(&h))
                .unwrap()
                .add(&x(&[-1, 2]))
                .unwrap();
            assert_eq!(seq.var(3).unwrap(), x3);
            let x4 = x(&[0, -1])
                .add(&x(&[-1, 1]))
                .unwrap()
                .add(&x(&[-1, 0]).scale(&h))
                .unwrap()
                .add(&x(&[-1, -1]))
                .unwrap();
            assert_eq!(seq.var(4).unwrap(), x4);
            let x6 = x(&[0, -1]).add(&x(&[1, -1])).unwrap();
            assert_eq!(seq.var(6).unwrap(), x6);
            assert_eq!(seq.var(7).unwrap(), x(&[1, 0]));
            assert_eq!(seq.var(8).unwrap(), x(&[0, 1]));
        }
    }

    #[test]
    fn b2_backward_matches_periodicity() {
        let mut seq = b2_sequence(QLaurent::one());
        // period six: X_0 = X_6, X_-1 = X_5
        assert_eq!(seq.var(0).unwrap(), seq.var(6).unwrap());
        assert_eq!(seq.var(-1).unwrap(), seq.var(5).unwrap());
        assert_eq!(seq.var(-4).unwrap(), seq.var(2).unwrap());
    }

    #[test]
    fn quasi_commutation_and_hatted_hold_on_b2() {
        let mut seq = b2_sequence(ql(&[(1, 1), (-1, 1)]));
        assert!(seq.check_quasi_commutation(-4..=9).unwrap().all_pass());
        assert!(seq.check_hatted_relation(-4..=9).unwrap().all_pass());
    }

    #[test]
    fn bar_invariance_on_b2() {
        let mut seq = b2_sequence(QLaurent::one());
        assert!(seq.check_bar_invariance(-4..=9).unwrap().all_pass());
        // basis variables are trivially invariant
        assert_eq!(seq.var(1).unwrap().bar(), seq.var(1).unwrap());
        assert_eq!(seq.var(2).unwrap().bar(), seq.var(2).unwrap());
        // non-bar-invariant middle coefficient violates the precondition
        let mut bad = b2_sequence(QLaurent::qpow(1));
        assert!(matches!(
            bad.check_bar_invariance(1..=2),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn expand_in_cluster_identities() {
        let mut seq = b2_sequence(QLaurent::one());
        for m in [-2i64, -1, 0, 1, 2, 3] {
            assert_eq!(seq.expand_in_cluster(m, m).unwrap(), x(&[1, 0]));
            assert_eq!(seq.expand_in_cluster(m + 1, m).unwrap(), x(&[0, 1]));
        }
        assert_eq!(
            seq.expand_in_cluster(3, 1).unwrap(),
            seq.var(3).unwrap()
        );
    }

    #[test]
    fn expand_in_cluster_round_trip() {
        use crate::qtorus::ToricFrame;
        // X_1 in the cluster (X_5, X_6), then substituted back.
        let mut seq = b2_sequence(QLaurent::one());
        let e = seq.expand_in_cluster(1, 5).unwrap();
        let frame = ToricFrame::new(
            SkewMatrix::rank_two(),
            vec![seq.var(5).unwrap(), seq.var(6).unwrap()],
        )
        .unwrap();
        assert_eq!(frame.evaluate(&e).unwrap(), x(&[1, 0]));
    }

    #[test]
    fn problem_file_round_trip() {
        let (p1, p2) = b2_polynomials(ql(&[(1, 1), (-1, 1)]));
        let file = ProblemFile {
            p1,
            p2,
            range: [-2, 8],
        };
        let json = serde_json::to_string(&file).unwrap();
        let back: ProblemFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.p1, file.p1);
        assert_eq!(back.p2, file.p2);
        assert_eq!(back.range, file.range);
        // malformed: non-palindromic string rejected at parse time
        let bad = r#"{"p1":{"d":3,"h":[[[0,1]],[[1,1]],[[-1,1]],[[0,1]]]},"p2":{"d":1,"h":[[[0,1]],[[0,1]]]},"range":[0,1]}"#;
        assert!(serde_json::from_str::<ProblemFile>(bad).is_err());
        // length mismatch with the declared degree is also rejected
        let short = r#"{"p1":{"d":2,"h":[[[0,1]],[[0,1]]]},"p2":{"d":1,"h":[[[0,1]],[[0,1]]]},"range":[0,1]}"#;
        assert!(serde_json::from_str::<ProblemFile>(short).is_err());
    }
}
