//! Standard monomials in the four consecutive cluster variables
//! `X_0, X_1, X_2, X_3` and the straightening rewriter onto them.
//!
//! Rewrite rules, all identities in the algebra:
//!
//! - quasi-commutation `X_k X_{k+1} = q X_{k+1} X_k` for adjacent indices,
//!   used to sort letters toward the order `X_1 X_2 X_3 X_0`;
//! - exchange eliminations `X_1 X_3 = P_1(X_2)`, `X_3 X_1 = Phat_1(X_2)`,
//!   `X_0 X_2 = P_2(X_1)`, `X_2 X_0 = Phat_2(X_1)` removing the forbidden
//!   co-occurrences;
//! - the straightening of the non-adjacent out-of-order pair,
//!   `X_0 X_3 = q^{-1} X_3 X_0
//!      + sum_{i,j >= 1} a_i b_j (q^{-1} - q^{-ij-1}) X_1^{j-1} X_2^{i-1}`
//!   with `a_i = q^{i/2} h_i` from `P_1` and `b_j = q^{j/2} h'_j` from
//!   `P_2`. It follows from `X_3 = X_1^{-1} P_1(X_2)`,
//!   `X_0 = P_2(X_1) X_2^{-1}` and the torus commutations; the `ij = 0`
//!   terms cancel, so the correction is polynomial.
//!
//! Eliminations and straightening corrections strictly reduce the number of
//! `X_3`/`X_0` letters in a term and commutations strictly reduce a sorting
//! measure, so rewriting terminates in the canonical normal form.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcoeff::QLaurent;
use crate::qtorus::TorusElement;
use crate::report::Report;

use super::{ClusterSequence, ExchangePolynomial};

/// A letter of the free word algebra on the four generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    X0,
    X1,
    X2,
    X3,
}

impl Gen {
    pub fn index(self) -> i64 {
        match self {
            Gen::X0 => 0,
            Gen::X1 => 1,
            Gen::X2 => 2,
            Gen::X3 => 3,
        }
    }

    fn idx(self) -> u8 {
        self.index() as u8
    }
}

/// A product of generators, leftmost factor first.
pub type Word = Vec<Gen>;

/// A formal linear combination of words.
pub type WordSum = Vec<(QLaurent, Word)>;

/// `X_1^{a1} X_2^{a2} X_3^{a1p} X_0^{a2p}` with `a1 * a1p = 0` and
/// `a2 * a2p = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StandardMonomial {
    pub a1: u32,
    pub a2: u32,
    pub a1p: u32,
    pub a2p: u32,
}

impl StandardMonomial {
    pub fn new(a1: u32, a2: u32, a1p: u32, a2p: u32) -> Result<Self> {
        if a1 * a1p != 0 || a2 * a2p != 0 {
            return Err(Error::InvalidInput(format!(
                "exponents ({a1},{a2},{a1p},{a2p}) violate the orthogonality constraints"
            )));
        }
        Ok(StandardMonomial { a1, a2, a1p, a2p })
    }

    pub fn unit() -> Self {
        StandardMonomial {
            a1: 0,
            a2: 0,
            a1p: 0,
            a2p: 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.a1 + self.a2 + self.a1p + self.a2p
    }

    /// The monomial as a word, in standard order.
    pub fn word(&self) -> Word {
        let mut w = Vec::with_capacity(self.total_degree() as usize);
        w.extend(std::iter::repeat(Gen::X1).take(self.a1 as usize));
        w.extend(std::iter::repeat(Gen::X2).take(self.a2 as usize));
        w.extend(std::iter::repeat(Gen::X3).take(self.a1p as usize));
        w.extend(std::iter::repeat(Gen::X0).take(self.a2p as usize));
        w
    }
}

impl fmt::Display for StandardMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total_degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, pow) in [
            ("X1", self.a1),
            ("X2", self.a2),
            ("X3", self.a1p),
            ("X0", self.a2p),
        ] {
            if pow == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if pow == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{pow}")?;
            }
        }
        Ok(())
    }
}

/// All standard monomials of total degree at most `bound`, sorted.
pub fn enumerate_standard_monomials(bound: u32) -> Vec<StandardMonomial> {
    let mut out = Vec::new();
    for a1 in 0..=bound {
        for a2 in 0..=(bound - a1) {
            for a1p in 0..=(bound - a1 - a2) {
                for a2p in 0..=(bound - a1 - a2 - a1p) {
                    if a1 * a1p == 0 && a2 * a2p == 0 {
                        out.push(StandardMonomial { a1, a2, a1p, a2p });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Precomputed right-hand sides of the rewrite rules.
struct Rules {
    /// `X_1 X_3 -> sum_i elim13[i] X_2^i`
    elim13: Vec<QLaurent>,
    /// `X_3 X_1 -> sum_i elim31[i] X_2^i`
    elim31: Vec<QLaurent>,
    /// `X_0 X_2 -> sum_j elim02[j] X_1^j`
    elim02: Vec<QLaurent>,
    /// `X_2 X_0 -> sum_j elim20[j] X_1^j`
    elim20: Vec<QLaurent>,
    /// correction terms of the `X_0 X_3` straightening:
    /// `(coefficient, #X_1, #X_2)`
    straighten03: Vec<(QLaurent, usize, usize)>,
}

impl Rules {
    fn build(p1: &ExchangePolynomial, p2: &ExchangePolynomial) -> Rules {
        let a = p1.expanded().coeffs().to_vec();
        let b = p2.expanded().coeffs().to_vec();
        let mut straighten03 = Vec::new();
        for (i, ai) in a.iter().enumerate().skip(1) {
            for (j, bj) in b.iter().enumerate().skip(1) {
                let ij = (i as i64) * (j as i64);
                let factor = &QLaurent::qpow(-2) - &QLaurent::qpow(-2 * ij - 2);
                let coeff = &(ai * bj) * &factor;
                if !coeff.is_zero() {
                    straighten03.push((coeff, j - 1, i - 1));
                }
            }
        }
        Rules {
            elim13: a,
            elim31: p1.hatted().coeffs().to_vec(),
            elim02: b,
            elim20: p2.hatted().coeffs().to_vec(),
            straighten03,
        }
    }
}

/// position of a letter in the target order `X_1 < X_2 < X_3 < X_0`
fn sort_rank(letter: u8) -> u8 {
    (letter + 3) % 4
}

/// Rewriting the adjacent subword `(a, b) -> (b, a)` for index-consecutive
/// letters multiplies the coefficient by `q^(halfpow/2)`.
fn swap_halfpow(a: u8, b: u8) -> i64 {
    if b == a + 1 {
        2
    } else if a == b + 1 {
        -2
    } else {
        unreachable!("swap only applies to index-consecutive letters")
    }
}

type RawTerm = (QLaurent, Vec<u8>);

fn swapped(coeff: &QLaurent, w: &[u8], p: usize) -> RawTerm {
    let mut nw = w.to_vec();
    nw.swap(p, p + 1);
    (coeff.shift(swap_halfpow(w[p], w[p + 1])), nw)
}

fn eliminated(coeff: &QLaurent, w: &[u8], p: usize, expansion: &[QLaurent], filler: u8) -> Vec<RawTerm> {
    let mut out = Vec::new();
    for (i, c) in expansion.iter().enumerate() {
        let c = c * coeff;
        if c.is_zero() {
            continue;
        }
        let mut nw = Vec::with_capacity(w.len() - 2 + i);
        nw.extend_from_slice(&w[..p]);
        nw.extend(std::iter::repeat(filler).take(i));
        nw.extend_from_slice(&w[p + 2..]);
        out.push((c, nw));
    }
    out
}

/// One rewrite step; `None` when the word is in normal form.
fn rewrite_step(rules: &Rules, coeff: &QLaurent, w: &[u8]) -> Option<Vec<RawTerm>> {
    // Forbidden co-occurrence of X_1 and X_3: walk the mutable letter
    // (X_1, which q-commutes with everything between) next to the X_3,
    // then eliminate.
    if let Some(step) = cooccurrence_step(rules, coeff, w, (1, 3), 1, 2) {
        return Some(step);
    }
    // Forbidden co-occurrence of X_0 and X_2; the mover is X_2.
    if let Some(step) = cooccurrence_step(rules, coeff, w, (0, 2), 2, 1) {
        return Some(step);
    }
    // Sorting. Adjacent inversions are either index-consecutive swaps or
    // the straightened (X_0, X_3) pair.
    for p in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[p], w[p + 1]);
        if sort_rank(a) <= sort_rank(b) {
            continue;
        }
        if (a, b) == (0, 3) {
            let mut out = Vec::new();
            let mut main = w.to_vec();
            main[p] = 3;
            main[p + 1] = 0;
            out.push((coeff.shift(-2), main));
            for (c, n1, n2) in &rules.straighten03 {
                let c = c * coeff;
                if c.is_zero() {
                    continue;
                }
                let mut nw = Vec::with_capacity(w.len() - 2 + n1 + n2);
                nw.extend_from_slice(&w[..p]);
                nw.extend(std::iter::repeat(1).take(*n1));
                nw.extend(std::iter::repeat(2).take(*n2));
                nw.extend_from_slice(&w[p + 2..]);
                out.push((c, nw));
            }
            return Some(out);
        }
        return Some(vec![swapped(coeff, w, p)]);
    }
    None
}

fn cooccurrence_step(
    rules: &Rules,
    coeff: &QLaurent,
    w: &[u8],
    pair: (u8, u8),
    mover: u8,
    filler: u8,
) -> Option<Vec<RawTerm>> {
    let (lo, hi) = pair;
    let positions: Vec<usize> = (0..w.len()).filter(|&p| w[p] == lo || w[p] == hi).collect();
    for win in positions.windows(2) {
        let (p, r) = (win[0], win[1]);
        if w[p] == w[r] {
            continue;
        }
        // innermost occurrence pair: nothing from {lo, hi} strictly between
        if r == p + 1 {
            let expansion = match (w[p], w[r]) {
                (1, 3) => &rules.elim13,
                (3, 1) => &rules.elim31,
                (0, 2) => &rules.elim02,
                (2, 0) => &rules.elim20,
                _ => unreachable!("co-occurrence pair"),
            };
            return Some(eliminated(coeff, w, p, expansion, filler));
        }
        // walk the mover one position toward its partner
        let at = if w[p] == mover { p } else { r - 1 };
        return Some(vec![swapped(coeff, w, at)]);
    }
    None
}

/// Rewrites a formal sum of words in `X_0..X_3` into the standard-monomial
/// basis. The output is canonical: sorted by exponent quadruple, zero
/// coefficients dropped.
pub fn reduce_to_standard(
    p1: &ExchangePolynomial,
    p2: &ExchangePolynomial,
    sum: &[(QLaurent, Word)],
) -> Vec<(StandardMonomial, QLaurent)> {
    let rules = Rules::build(p1, p2);
    let mut work: Vec<RawTerm> = sum
        .iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, w)| (c.clone(), w.iter().map(|g| g.idx()).collect()))
        .collect();
    let mut out: BTreeMap<StandardMonomial, QLaurent> = BTreeMap::new();
    while let Some((coeff, w)) = work.pop() {
        match rewrite_step(&rules, &coeff, &w) {
            Some(replacements) => work.extend(replacements),
            None => {
                let count = |letter: u8| w.iter().filter(|&&x| x == letter).count() as u32;
                let sm = StandardMonomial::new(count(1), count(2), count(3), count(0))
                    .expect("normal form satisfies the orthogonality constraints");
                let entry = out.entry(sm).or_insert_with(QLaurent::zero);
                *entry = &*entry + &coeff;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out.into_iter().collect()
}

/// Fraction-free Gaussian elimination rank of a matrix over the coefficient
/// ring, i.e. the rank over its fraction field.
pub(super) fn rank_fraction_free(mut m: Vec<Vec<QLaurent>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    let mut prev = QLaurent::one();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(pivot) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        for r in (row + 1)..nrows {
            for c in (col + 1)..ncols {
                let num = &(&m[r][c] * &m[row][col]) - &(&m[r][col] * &m[row][c]);
                m[r][c] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[r][col] = QLaurent::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Linear independence of the torus expansions of all standard monomials of
/// total degree `<= bound`: full rank of the coefficient matrix.
pub fn standard_independence_check(seq: &mut ClusterSequence, bound: u32) -> Result<Report> {
    let monos = enumerate_standard_monomials(bound);
    let expansions: Vec<TorusElement> = monos
        .iter()
        .map(|sm| seq.expand_standard(sm))
        .collect::<Result<_>>()?;
    let mut columns: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for e in &expansions {
        for (c, _) in e.terms() {
            let next = columns.len();
            columns.entry(c.clone()).or_insert(next);
        }
    }
    let matrix: Vec<Vec<QLaurent>> = expansions
        .iter()
        .map(|e| {
            let mut row = vec![QLaurent::zero(); columns.len()];
            for (c, f) in e.terms() {
                row[columns[c]] = f.clone();
            }
            row
        })
        .collect();
    let rank = rank_fraction_free(matrix);
    let mut report = Report::new();
    report.push(
        format!("standard-monomial independence (degree <= {bound})"),
        rank == monos.len(),
        format!("count {}, rank {rank}", monos.len()),
    );
    Ok(report)
}

/// Round-trips the rewriter against torus multiplication on every product of
/// two standard monomials of total degree `<= bound` each.
pub fn standard_roundtrip_check(seq: &mut ClusterSequence, bound: u32) -> Result<Report> {
    let monos = enumerate_standard_monomials(bound);
    let mut failures = 0usize;
    let mut total = 0usize;
    for m1 in &monos {
        for m2 in &monos {
            let mut word = m1.word();
            word.extend(m2.word());
            let direct = seq.expand_word(&word)?;
            let reduced = seq.reduce_to_standard(&[(QLaurent::one(), word)]);
            let mut recomposed = TorusElement::zero(seq.lambda());
            for (sm, c) in &reduced {
                recomposed = recomposed.add(&seq.expand_standard(sm)?.scale(c))?;
            }
            if recomposed != direct {
                failures += 1;
            }
            total += 1;
        }
    }
    let mut report = Report::new();
    report.push(
        format!("standard-reduction round-trip (degree <= {bound})"),
        failures == 0,
        format!("{total} products, {failures} failures"),
    );
    Ok(report)
}

pub(super) fn standard_basis_check(seq: &mut ClusterSequence, bound: u32) -> Result<Report> {
    let mut report = standard_roundtrip_check(seq, bound)?;
    report.merge(standard_independence_check(seq, bound)?);
    Ok(report)
}
