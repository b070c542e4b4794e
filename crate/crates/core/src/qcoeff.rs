//! Exact arithmetic in the coefficient ring of integer Laurent polynomials
//! in a formal square root of `q`.
//!
//! A [`QLaurent`] is a finite sum of terms `c * q^(e/2)` with `c` a nonzero
//! arbitrary-precision integer and `e` an integer half-exponent. Storing the
//! exponent in units of 1/2 keeps every computation in integer arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// An integer Laurent polynomial in `q^(1/2)`.
///
/// The map sends half-exponent `e` (representing `q^(e/2)`) to its nonzero
/// coefficient; zero coefficients are never stored, so structural equality
/// is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::qpow(0)
    }

    /// The monomial `q^(e/2)`.
    pub fn qpow(half_exp: i64) -> Self {
        Self::term(half_exp, BigInt::one())
    }

    /// The single term `c * q^(e/2)`.
    pub fn term(half_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(half_exp, coeff);
        }
        QLaurent { terms }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::term(0, n)
    }

    /// Builds from `(half_exp, coeff)` pairs, merging duplicates and
    /// dropping zeros.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = QLaurent::zero();
        for (e, c) in pairs {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, half_exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(half_exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&half_exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms as `(half_exp, coeff)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Multiplication by `q^(shift/2)`: translates every half-exponent.
    pub fn shift(&self, shift: i64) -> Self {
        QLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    /// The bar involution `q^(1/2) -> q^(-1/2)`: negates every exponent.
    pub fn bar(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Specialization at `q^(1/2) = 1`: the sum of all coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact division in the Laurent ring: returns `s` with
    /// `self = d * s`, or `None` when no such Laurent polynomial exists.
    ///
    /// Long division in `q^(1/2)` after clearing denominators; every
    /// coefficient step must divide exactly over the integers.
    pub fn div_exact(&self, d: &QLaurent) -> Option<QLaurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QLaurent::zero());
        }
        // Single-term divisors are units up to the integer coefficient.
        if d.terms.len() == 1 {
            let (de, dc) = d.terms.iter().next().unwrap();
            let mut out = BTreeMap::new();
            for (e, c) in &self.terms {
                let (qt, rm) = num_integer::div_rem(c.clone(), dc.clone());
                if !rm.is_zero() {
                    return None;
                }
                out.insert(e - de, qt);
            }
            return Some(QLaurent { terms: out });
        }
        // Shift both operands so the divisor becomes an ordinary polynomial
        // with nonzero constant term; the quotient shifts back accordingly.
        let self_min = *self.terms.keys().next().unwrap();
        let d_min = *d.terms.keys().next().unwrap();
        let d_max = *d.terms.keys().next_back().unwrap();
        let d_lead = &d.terms[&d_max];
        let mut rem = self.clone();
        let mut quot = QLaurent::zero();
        while !rem.is_zero() {
            let (&r_max, r_lead) = rem.terms.iter().next_back().unwrap();
            let q_exp = r_max - d_max;
            // The quotient cannot reach below self_min - d_min.
            if q_exp < self_min - d_min {
                return None;
            }
            let (qt, rm) = num_integer::div_rem(r_lead.clone(), d_lead.clone());
            if rm.is_zero() && !qt.is_zero() {
                let piece = QLaurent::term(q_exp, qt);
                rem = &rem - &(&piece * d);
                quot = &quot + &piece;
            } else {
                return None;
            }
        }
        Some(quot)
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *e == 2 {
                    write!(f, "q")?;
                } else if e % 2 == 0 {
                    write!(f, "q^{}", e / 2)?;
                } else {
                    write!(f, "q^({e}/2)")?;
                }
            }
        }
        Ok(())
    }
}

// JSON encoding: a sorted list of pairs [e, c] meaning c * q^(e/2).
// Coefficients round-trip at arbitrary precision as JSON integers.

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let n = serde_json::Number::from_str(&c.to_string())
                .map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&(e, n))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = QLaurent;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a list of [half_exponent, coefficient] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<QLaurent, A::Error> {
                let mut out = QLaurent::zero();
                while let Some((e, n)) = seq.next_element::<(i64, serde_json::Number)>()? {
                    let c = BigInt::from_str(&n.to_string()).map_err(|_| {
                        de::Error::custom(format!("coefficient {n} is not an integer"))
                    })?;
                    out.add_term(e, c);
                }
                Ok(out)
            }
        }
        deserializer.deserialize_seq(V)
    }
}
