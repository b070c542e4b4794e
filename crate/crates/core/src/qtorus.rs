//! The quantum torus: a free module over the coefficient ring with basis
//! `X(c)` indexed by integer exponent vectors, multiplication twisted by a
//! skew-symmetric bilinear form, and exact one-sided division.
//!
//! `X(c) X(d) = q^(L(c,d)/2) X(c+d)` where `L` is the form attached to the
//! torus. Every basis element is invertible, which makes single-divisor
//! elimination a decision procedure for membership in `D * T` (resp. `T * D`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcoeff::QLaurent;

/// Exponent vector of a torus basis element; length is the torus dimension.
/// `Vec` ordering is the total lexicographic term order used everywhere.
pub type ExpVec = Vec<i64>;

/// A skew-symmetric integer matrix together with the bilinear form it
/// defines on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SkewMatrix {
    rows: Vec<Vec<i64>>,
}

impl SkewMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: row.len(),
                });
            }
            for j in 0..m {
                if rows[i][j] != -rows[j][i] {
                    return Err(Error::NotSkewSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SkewMatrix { rows })
    }

    pub fn zero(m: usize) -> Self {
        SkewMatrix {
            rows: vec![vec![0; m]; m],
        }
    }

    /// The standard rank-two form: `L(e1,e2) = 1`.
    pub fn rank_two() -> Self {
        SkewMatrix {
            rows: vec![vec![0, 1], vec![-1, 0]],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &Vec<Vec<i64>> {
        &self.rows
    }

    fn check_len(&self, c: &[i64]) -> Result<()> {
        if c.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: c.len(),
            });
        }
        Ok(())
    }

    /// The bilinear form `L(c,d) = c^T L d`.
    pub fn form(&self, c: &[i64], d: &[i64]) -> Result<i64> {
        self.check_len(c)?;
        self.check_len(d)?;
        let mut acc = 0i64;
        for i in 0..c.len() {
            if c[i] == 0 {
                continue;
            }
            for j in 0..d.len() {
                acc += c[i] * self.rows[i][j] * d[j];
            }
        }
        Ok(acc)
    }

    /// Product of two basis elements: `X(c) X(d) = q^(halfpow/2) X(sum)`
    /// with `halfpow = L(c,d)` and `sum = c + d`.
    pub fn basis_mul(&self, c: &[i64], d: &[i64]) -> Result<(i64, ExpVec)> {
        let halfpow = self.form(c, d)?;
        let sum = c.iter().zip(d).map(|(a, b)| a + b).collect();
        Ok((halfpow, sum))
    }

    /// Half-power relating `X(c)` to the ordered monomial:
    /// `X(c) = q^(halfpow/2) X_1^{c_1} ... X_m^{c_m}` with
    /// `halfpow = sum_{l<k} c_k c_l lambda_{kl}`.
    pub fn normal_order(&self, c: &[i64]) -> Result<i64> {
        self.check_len(c)?;
        let mut acc = 0i64;
        for k in 0..c.len() {
            for l in 0..k {
                acc += c[k] * c[l] * self.rows[k][l];
            }
        }
        Ok(acc)
    }
}

impl<'de> Deserialize<'de> for SkewMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(deserializer)?;
        SkewMatrix::new(rows).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: ExpVec,
    coeff: QLaurent,
}

/// A finite linear combination of torus basis elements with [`QLaurent`]
/// coefficients. Canonical form: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    lambda: SkewMatrix,
    terms: BTreeMap<ExpVec, QLaurent>,
}

impl TorusElement {
    pub fn zero(lambda: SkewMatrix) -> Self {
        TorusElement {
            lambda,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(lambda: SkewMatrix) -> Self {
        let c = vec![0; lambda.dim()];
        Self::basis_vec(lambda, c).expect("zero vector matches the dimension")
    }

    /// The basis element `X(c)`.
    pub fn basis_vec(lambda: SkewMatrix, c: ExpVec) -> Result<Self> {
        Self::monomial(lambda, c, QLaurent::one())
    }

    /// A single term `coeff * X(c)`.
    pub fn monomial(lambda: SkewMatrix, c: ExpVec, coeff: QLaurent) -> Result<Self> {
        lambda.check_len(&c)?;
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(c, coeff);
        }
        Ok(TorusElement { lambda, terms })
    }

    /// Builds from `(exponent, coefficient)` pairs, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(lambda: SkewMatrix, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExpVec, QLaurent)>,
    {
        let mut out = TorusElement::zero(lambda);
        for (c, f) in terms {
            out.lambda.check_len(&c)?;
            out.add_term(c, f);
        }
        Ok(out)
    }

    pub fn lambda(&self) -> &SkewMatrix {
        &self.lambda
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &QLaurent)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, c: &[i64]) -> QLaurent {
        self.terms.get(c).cloned().unwrap_or_else(QLaurent::zero)
    }

    fn check_torus(&self, other: &Self) -> Result<()> {
        if self.lambda != other.lambda {
            return Err(Error::TorusMismatch);
        }
        Ok(())
    }

    fn add_term(&mut self, c: ExpVec, coeff: QLaurent) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(c) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_torus(other)?;
        let mut out = self.clone();
        for (c, f) in &other.terms {
            out.add_term(c.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_torus(other)?;
        let mut out = self.clone();
        for (c, f) in &other.terms {
            out.add_term(c.clone(), -f);
        }
        Ok(out)
    }

    /// Multiplication by a scalar from the coefficient ring.
    pub fn scale(&self, s: &QLaurent) -> Self {
        let mut out = TorusElement::zero(self.lambda.clone());
        for (c, f) in &self.terms {
            out.add_term(c.clone(), f * s);
        }
        out
    }

    /// Multiplication by `q^(halfpow/2)`.
    pub fn shift_q(&self, halfpow: i64) -> Self {
        TorusElement {
            lambda: self.lambda.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, f)| (c.clone(), f.shift(halfpow)))
                .collect(),
        }
    }

    /// The distributive product extending `X(c) X(d) = q^(L(c,d)/2) X(c+d)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_torus(other)?;
        let mut out = TorusElement::zero(self.lambda.clone());
        for (c, f) in &self.terms {
            for (d, g) in &other.terms {
                let (halfpow, sum) = self.lambda.basis_mul(c, d)?;
                out.add_term(sum, (f * g).shift(halfpow));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = TorusElement::one(self.lambda.clone());
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// The bar involution: conjugates every coefficient, fixes every `X(c)`.
    /// Anti-compatible with multiplication: `bar(AB) = bar(B) bar(A)`.
    pub fn bar(&self) -> Self {
        TorusElement {
            lambda: self.lambda.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, f)| (c.clone(), f.bar()))
                .collect(),
        }
    }

    /// Specialization `q^(1/2) = 1`: a commutative Laurent polynomial given
    /// as exponent-vector -> integer coefficient (zeros dropped).
    pub fn eval_q1(&self) -> BTreeMap<ExpVec, BigInt> {
        use num_traits::Zero;
        let mut out = BTreeMap::new();
        for (c, f) in &self.terms {
            let v = f.eval_one();
            if !v.is_zero() {
                out.insert(c.clone(), v);
            }
        }
        out
    }

    fn leading(&self) -> (&ExpVec, &QLaurent) {
        self.terms.iter().next_back().expect("nonzero element")
    }

    /// Componentwise min and max of the support.
    fn support_box(&self) -> (Vec<i64>, Vec<i64>) {
        let m = self.lambda.dim();
        let mut lo = vec![i64::MAX; m];
        let mut hi = vec![i64::MIN; m];
        for c in self.terms.keys() {
            for i in 0..m {
                lo[i] = lo[i].min(c[i]);
                hi[i] = hi[i].max(c[i]);
            }
        }
        (lo, hi)
    }

    /// Solves `D * S = self` exactly; errors with `NotDivisible` when no
    /// Laurent solution exists.
    pub fn left_divide_exact(&self, d: &Self) -> Result<Self> {
        self.divide_exact(d, Side::Left)
    }

    /// Solves `S * D = self` exactly.
    pub fn right_divide_exact(&self, d: &Self) -> Result<Self> {
        self.divide_exact(d, Side::Right)
    }

    fn divide_exact(&self, d: &Self, side: Side) -> Result<Self> {
        self.check_torus(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(TorusElement::zero(self.lambda.clone()));
        }
        // The quotient support is confined per coordinate: in the graded
        // domain both extreme degrees of a product are additive, so
        // S must fit in [min(T)-min(D), max(T)-max(D)] componentwise.
        let m = self.lambda.dim();
        let (tlo, thi) = self.support_box();
        let (dlo, dhi) = d.support_box();
        let slo: Vec<i64> = (0..m).map(|i| tlo[i] - dlo[i]).collect();
        let shi: Vec<i64> = (0..m).map(|i| thi[i] - dhi[i]).collect();
        if (0..m).any(|i| slo[i] > shi[i]) {
            return Err(Error::NotDivisible {
                context: "quotient support box is empty".into(),
            });
        }
        let (dlead_c, dlead_f) = d.leading();
        let dlead_c = dlead_c.clone();
        let dlead_f = dlead_f.clone();
        let mut rem = self.clone();
        let mut quot = TorusElement::zero(self.lambda.clone());
        while !rem.is_zero() {
            let (rlead_c, rlead_f) = rem.leading();
            let s: ExpVec = rlead_c.iter().zip(&dlead_c).map(|(a, b)| a - b).collect();
            if (0..m).any(|i| s[i] < slo[i] || s[i] > shi[i]) {
                return Err(Error::NotDivisible {
                    context: "remainder leading term falls outside the quotient support box"
                        .into(),
                });
            }
            let halfpow = match side {
                Side::Left => self.lambda.form(&dlead_c, &s)?,
                Side::Right => self.lambda.form(&s, &dlead_c)?,
            };
            let g = rlead_f.shift(-halfpow).div_exact(&dlead_f).ok_or_else(|| {
                Error::NotDivisible {
                    context: "leading coefficient is not divisible in the coefficient ring"
                        .into(),
                }
            })?;
            let piece = TorusElement::monomial(self.lambda.clone(), s, g)?;
            let prod = match side {
                Side::Left => d.mul(&piece)?,
                Side::Right => piece.mul(d)?,
            };
            rem = rem.sub(&prod)?;
            quot = quot.add(&piece)?;
        }
        Ok(quot)
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_const = c.iter().all(|&x| x == 0);
            let coeff_str = coeff.to_string();
            let simple = coeff.num_terms() == 1 && !coeff_str.contains(' ');
            if is_const {
                if coeff.num_terms() > 1 {
                    write!(f, "({coeff_str})")?;
                } else {
                    write!(f, "{coeff_str}")?;
                }
                continue;
            }
            if coeff.is_one() {
                // bare basis element
            } else if simple {
                write!(f, "{coeff_str}*")?;
            } else {
                write!(f, "({coeff_str})*")?;
            }
            let coords: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "X({})", coords.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for TorusElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("TorusElement", 2)?;
        st.serialize_field("lambda", &self.lambda)?;
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(c, f)| TermJson {
                exp: c.clone(),
                coeff: f.clone(),
            })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lambda: SkewMatrix,
            terms: Vec<TermJson>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut out = TorusElement::zero(raw.lambda);
        for t in raw.terms {
            out.lambda
                .check_len(&t.exp)
                .map_err(serde::de::Error::custom)?;
            out.add_term(t.exp, t.coeff);
        }
        Ok(out)
    }
}

/// A toric frame: `m` pairwise quasi-commuting elements of an ambient torus,
/// with `G_i G_j = q^(L(e_i,e_j)) G_j G_i` for the frame's own form `L`.
///
/// [`ToricFrame::evaluate`] extends the assignment `X(e_i) -> G_i` to all
/// exponent vectors by normal ordering, realizing negative powers through
/// exact division. Division of the fully assembled sum is deferred to the
/// end so that an evaluation succeeds whenever the image is Laurent, even
/// when individual monomial images are not.
#[derive(Debug, Clone)]
pub struct ToricFrame {
    lambda: SkewMatrix,
    gens: Vec<TorusElement>,
}

impl ToricFrame {
    pub fn new(lambda: SkewMatrix, gens: Vec<TorusElement>) -> Result<Self> {
        if gens.len() != lambda.dim() {
            return Err(Error::DimensionMismatch {
                expected: lambda.dim(),
                got: gens.len(),
            });
        }
        if let Some(first) = gens.first() {
            for g in &gens[1..] {
                first.check_torus(g)?;
            }
        }
        Ok(ToricFrame { lambda, gens })
    }

    /// The standard frame of a torus: `G_i = X(e_i)`.
    pub fn standard(lambda: SkewMatrix) -> Self {
        let m = lambda.dim();
        let gens = (0..m)
            .map(|i| {
                let mut c = vec![0; m];
                c[i] = 1;
                TorusElement::basis_vec(lambda.clone(), c).expect("unit vector")
            })
            .collect();
        ToricFrame { lambda, gens }
    }

    pub fn lambda(&self) -> &SkewMatrix {
        &self.lambda
    }

    pub fn gens(&self) -> &[TorusElement] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &TorusElement {
        &self.gens[i]
    }

    fn ambient(&self) -> SkewMatrix {
        self.gens
            .first()
            .map(|g| g.lambda.clone())
            .unwrap_or_else(|| self.lambda.clone())
    }

    /// Checks `G_i G_j = q^(L(e_i,e_j)) G_j G_i` for all pairs.
    pub fn quasi_commutes(&self) -> Result<bool> {
        let m = self.gens.len();
        for i in 0..m {
            for j in (i + 1)..m {
                let lhs = self.gens[i].mul(&self.gens[j])?;
                let rhs = self.gens[j]
                    .mul(&self.gens[i])?
                    .shift_q(2 * self.lambda.entry(i, j));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Maps an element written in frame coordinates (a torus element over
    /// this frame's form) to the ambient torus.
    ///
    /// Each frame-coordinate term `f * X(c)` stands for
    /// `f q^(no(c)/2) G_1^{c_1} ... G_m^{c_m}`. Negative powers are cleared
    /// by right-multiplying the whole sum with uniform positive powers
    /// (collecting the quasi-commutation q-shifts per term), evaluating the
    /// now-nonnegative ordered products, and peeling the appended powers off
    /// with exact right division.
    pub fn evaluate(&self, a: &TorusElement) -> Result<TorusElement> {
        if a.lambda != self.lambda {
            return Err(Error::TorusMismatch);
        }
        let ambient = self.ambient();
        if a.is_zero() {
            return Ok(TorusElement::zero(ambient));
        }
        let m = self.lambda.dim();
        let mut work: Vec<(ExpVec, QLaurent)> = Vec::with_capacity(a.terms.len());
        for (c, f) in &a.terms {
            let no = self.lambda.normal_order(c)?;
            work.push((c.clone(), f.shift(no)));
        }
        // Clear negative exponents from right to left.
        let mut appended: Vec<(usize, i64)> = Vec::new();
        for i in (0..m).rev() {
            let p = work.iter().map(|(c, _)| (-c[i]).max(0)).max().unwrap_or(0);
            if p == 0 {
                continue;
            }
            for (c, f) in &mut work {
                let cross: i64 = (i + 1..m).map(|j| c[j] * self.lambda.entry(i, j)).sum();
                *f = f.shift(-2 * p * cross);
                c[i] += p;
            }
            appended.push((i, p));
        }
        // Ordered products of nonnegative powers, with cached generator powers.
        let mut pow_cache: Vec<Vec<TorusElement>> = (0..m)
            .map(|_| vec![TorusElement::one(ambient.clone())])
            .collect();
        let mut gen_pow = |i: usize, k: usize, gens: &[TorusElement]| -> Result<TorusElement> {
            while pow_cache[i].len() <= k {
                let last = pow_cache[i].last().unwrap().mul(&gens[i])?;
                pow_cache[i].push(last);
            }
            Ok(pow_cache[i][k].clone())
        };
        let mut acc = TorusElement::zero(ambient.clone());
        for (c, f) in work {
            let mut prod = TorusElement::one(ambient.clone());
            for i in 0..m {
                if c[i] != 0 {
                    prod = prod.mul(&gen_pow(i, c[i] as usize, &self.gens)?)?;
                }
            }
            acc = acc.add(&prod.scale(&f))?;
        }
        // Peel appended powers (LIFO) with exact right division.
        let mut out = acc;
        while let Some((i, p)) = appended.pop() {
            let divisor = self.gens[i].pow(p as u32)?;
            out = out.right_divide_exact(&divisor)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l0() -> SkewMatrix {
        SkewMatrix::rank_two()
    }

    fn x(c: &[i64]) -> TorusElement {
        TorusElement::basis_vec(l0(), c.to_vec()).unwrap()
    }

    fn ql(pairs: &[(i64, i64)]) -> QLaurent {
        QLaurent::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn skew_validation() {
        assert!(SkewMatrix::new(vec![vec![0, 1], vec![-1, 0]]).is_ok());
        assert_eq!(
            SkewMatrix::new(vec![vec![0, 1], vec![1, 0]]),
            Err(Error::NotSkewSymmetric { row: 0, col: 1 })
        );
        assert_eq!(
            SkewMatrix::new(vec![vec![1, 1], vec![-1, 0]]),
            Err(Error::NotSkewSymmetric { row: 0, col: 0 })
        );
    }

    #[test]
    fn basis_mul_examples() {
        let l = l0();
        assert_eq!(l.basis_mul(&[1, 0], &[0, 1]).unwrap(), (1, vec![1, 1]));
        assert_eq!(l.basis_mul(&[3, -2], &[0, 0]).unwrap(), (0, vec![3, -2]));
        assert_eq!(l.basis_mul(&[3, -2], &[-3, 2]).unwrap(), (0, vec![0, 0]));
        assert!(matches!(
            l.basis_mul(&[1], &[0, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn el_mul_examples() {
        // X(1,0) X(0,1) = q^(1/2) X(1,1); opposite order picks q^(-1/2).
        let a = x(&[1, 0]).mul(&x(&[0, 1])).unwrap();
        assert_eq!(a, x(&[1, 1]).shift_q(1));
        let b = x(&[0, 1]).mul(&x(&[1, 0])).unwrap();
        assert_eq!(b, x(&[1, 1]).shift_q(-1));

        let e = x(&[1, 0]).add(&x(&[0, 1])).unwrap();
        assert_eq!(e.mul(&TorusElement::one(l0())).unwrap(), e);

        let prod = e.mul(&x(&[0, 1])).unwrap();
        let expect = x(&[1, 1]).shift_q(1).add(&x(&[0, 2])).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn normal_order_examples() {
        let l = l0();
        for (a1, a2) in [(2i64, 3i64), (-1, 4), (0, 0), (5, -2)] {
            assert_eq!(l.normal_order(&[a1, a2]).unwrap(), -a1 * a2);
        }
        assert_eq!(l.normal_order(&[1, 0]).unwrap(), 0);
        assert_eq!(l.normal_order(&[0, 1]).unwrap(), 0);
        assert_eq!(l.normal_order(&[1, 1]).unwrap(), -1);
    }

    #[test]
    fn bar_examples() {
        let a = x(&[1, 1]).shift_q(1);
        assert_eq!(a.bar(), x(&[1, 1]).shift_q(-1));
        assert_eq!(x(&[2, -1]).bar(), x(&[2, -1]));
        let b = x(&[1, 0]).shift_q(2).add(&x(&[0, 1]).shift_q(-2)).unwrap();
        assert_eq!(
            b.bar(),
            x(&[1, 0]).shift_q(-2).add(&x(&[0, 1]).shift_q(2)).unwrap()
        );
    }

    #[test]
    fn left_divide_basis() {
        // D = X(c), T = q^(L(c,d)/2) X(c+d)  =>  S = X(d)
        let l = l0();
        let c = vec![2i64, -1];
        let d = vec![-1i64, 3];
        let halfpow = l.form(&c, &d).unwrap();
        let t = x(&[1, 2]).shift_q(halfpow);
        assert_eq!(t.left_divide_exact(&x(&c)).unwrap(), x(&d));
    }

    #[test]
    fn left_divide_not_divisible() {
        let d = TorusElement::one(l0()).add(&x(&[1, 0])).unwrap();
        let t = x(&[1, 0]);
        assert!(matches!(
            t.left_divide_exact(&d),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn left_divide_exchange_element() {
        // T = 1 + q^(1/2) X(0,1) + q X(0,1)^2, D = X(1,0).
        // Multiply the claimed quotient back first, then pin it.
        let quotient = x(&[-1, 0])
            .add(&x(&[-1, 1]))
            .unwrap()
            .add(&x(&[-1, 2]))
            .unwrap();
        let x2 = x(&[0, 1]);
        let t = TorusElement::one(l0())
            .add(&x2.shift_q(1))
            .unwrap()
            .add(&x2.pow(2).unwrap().shift_q(2))
            .unwrap();
        assert_eq!(x(&[1, 0]).mul(&quotient).unwrap(), t);
        assert_eq!(t.left_divide_exact(&x(&[1, 0])).unwrap(), quotient);
    }

    #[test]
    fn right_divide_examples() {
        let l = l0();
        let c = vec![1i64, 1];
        let d = vec![0i64, -2];
        let halfpow = l.form(&d, &c).unwrap();
        let t = x(&[1, -1]).shift_q(halfpow);
        assert_eq!(t.right_divide_exact(&x(&c)).unwrap(), x(&d));

        let bad = TorusElement::one(l0()).add(&x(&[0, 1])).unwrap();
        assert!(matches!(
            TorusElement::one(l0()).right_divide_exact(&bad),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn divide_by_zero_is_an_error() {
        let z = TorusElement::zero(l0());
        assert_eq!(
            x(&[1, 0]).left_divide_exact(&z),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            x(&[1, 0]).right_divide_exact(&z),
            Err(Error::DivisionByZero)
        );
        // 0 / D = 0 stays fine.
        assert!(z.left_divide_exact(&x(&[1, 0])).unwrap().is_zero());
    }

    #[test]
    fn standard_frame_evaluates_to_identity() {
        let frame = ToricFrame::standard(l0());
        for c in [[0i64, 0], [1, 0], [-1, 1], [2, -3], [-2, -2]] {
            let a = x(&c);
            assert_eq!(frame.evaluate(&a).unwrap(), a, "c = {c:?}");
        }
        let mixed = x(&[1, -1])
            .scale(&ql(&[(1, 2)]))
            .add(&x(&[-2, 0]))
            .unwrap();
        assert_eq!(frame.evaluate(&mixed).unwrap(), mixed);
    }

    fn arb_exp() -> impl Strategy<Value = ExpVec> {
        proptest::collection::vec(-2i64..=2, 2)
    }

    fn arb_el() -> impl Strategy<Value = TorusElement> {
        proptest::collection::vec((arb_exp(), (-3i64..=3, -2i64..=2)), 0..4).prop_map(|v| {
            let mut out = TorusElement::zero(SkewMatrix::rank_two());
            for (c, (coeff, e)) in v {
                out.add_term(c, QLaurent::term(e, coeff));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn q_commutation(c in arb_exp(), d in arb_exp()) {
            let l = l0();
            let lhs = x(&c).mul(&x(&d)).unwrap();
            let rhs = x(&d).mul(&x(&c)).unwrap().shift_q(2 * l.form(&c, &d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mul_associative(a in arb_el(), b in arb_el(), c in arb_el()) {
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bar_is_involution_and_antihomomorphism(a in arb_el(), b in arb_el()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!(a.mul(&b).unwrap().bar(), b.bar().mul(&a.bar()).unwrap());
        }

        #[test]
        fn division_round_trips(s in arb_el(), d in arb_el()) {
            prop_assume!(!d.is_zero());
            let t_left = d.mul(&s).unwrap();
            prop_assert_eq!(t_left.left_divide_exact(&d).unwrap(), s.clone());
            let t_right = s.mul(&d).unwrap();
            prop_assert_eq!(t_right.right_divide_exact(&d).unwrap(), s);
        }

        #[test]
        fn normal_order_consistency(c in arb_exp()) {
            // Reassemble X(c) from ordered generator powers.
            let l = l0();
            let frame = ToricFrame::standard(l.clone());
            let mut prod = TorusElement::one(l.clone());
            for i in 0..2 {
                let k = c[i].unsigned_abs() as u32;
                let g = frame.gen(i).pow(k).unwrap();
                if c[i] >= 0 {
                    prod = prod.mul(&g).unwrap();
                } else {
                    prod = prod.right_divide_exact(&g).unwrap();
                }
            }
            let no = l.normal_order(&c).unwrap();
            prop_assert_eq!(prod.shift_q(no), x(&c));
        }

        #[test]
        fn frame_evaluate_is_identity_on_standard_frame(a in arb_el()) {
            let frame = ToricFrame::standard(l0());
            prop_assert_eq!(frame.evaluate(&a).unwrap(), a);
        }
    }
}
