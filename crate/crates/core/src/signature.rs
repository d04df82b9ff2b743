//! Signatures (highest weights of U(N)), interlacing, dominance, Weyl dimensions
//! and the rectangle complement with its Maya coordinates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};
use crate::scalar::{int, Rational};

/// Weakly decreasing integer vector. The zero-length vector is the empty signature.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Signature(Vec<i64>);

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("{parts:?} is not weakly decreasing"));
        }
        Ok(Self(parts))
    }

    /// Sorts the entries into weakly decreasing order; used for monomial keys.
    pub fn from_unsorted(mut parts: Vec<i64>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<i64> {
        self.0.last().copied()
    }

    /// All parts lie in `[lo, hi]` (vacuous for the empty signature).
    pub fn within(&self, lo: i64, hi: i64) -> bool {
        self.0.iter().all(|&x| lo <= x && x <= hi)
    }

    /// `λ* = (−λ_N, …, −λ_1)`.
    pub fn dual(&self) -> Self {
        Self(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn shifted(&self, c: i64) -> Self {
        Self(self.0.iter().map(|x| x + c).collect())
    }

    /// `λ + s·ε_i` (0-based `i`), or `None` when the result is not weakly decreasing.
    pub fn step(&self, i: usize, s: i64) -> Option<Self> {
        let mut v = self.0.clone();
        v[i] += s;
        let ok = (i == 0 || v[i - 1] >= v[i]) && (i + 1 == v.len() || v[i] >= v[i + 1]);
        ok.then_some(Self(v))
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

impl TryFrom<Vec<i64>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Signature> for Vec<i64> {
    fn from(s: Signature) -> Vec<i64> {
        s.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Signature {
    type Err = Error;
    /// Accepts `2,1,0`, `(2,1,0)`, `[2,1,0]`; an empty string is ∅.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        if t.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().replace('−', "-").parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad signature {s:?}")))?;
        Self::new(parts)
    }
}

/// `μ ≺ λ`: `λ_i ≥ μ_i ≥ λ_{i+1}`.
pub fn interlaces(mu: &Signature, lambda: &Signature) -> Result<bool> {
    if lambda.len() != mu.len() + 1 {
        return usage(format!(
            "interlacing needs length(lambda) = length(mu) + 1, got {} and {}",
            lambda.len(),
            mu.len()
        ));
    }
    let (m, l) = (mu.parts(), lambda.parts());
    Ok((0..m.len()).all(|i| l[i] >= m[i] && m[i] >= l[i + 1]))
}

/// Dominance `μ ≤ λ`: equal sums and every partial sum of `λ` at least that of `μ`.
pub fn dominance_leq(mu: &Signature, lambda: &Signature) -> Result<bool> {
    if mu.len() != lambda.len() {
        return usage("dominance order compares signatures of equal length");
    }
    if mu.sum() != lambda.sum() {
        return Ok(false);
    }
    let mut diff = 0i64;
    for (a, b) in lambda.parts().iter().zip(mu.parts()) {
        diff += a - b;
        if diff < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `∏_{i<j} (x_i − x_j − i + j)/(j − i)` for an arbitrary integer pattern.
/// Vanishes on patterns that are one step away from a signature but not themselves one.
pub fn weyl_dimension_of(parts: &[i64]) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let n = parts.len();
    for i in 0..n {
        for j in i + 1..n {
            num *= parts[i] - parts[j] + (j as i64 - i as i64);
            den *= j as i64 - i as i64;
        }
    }
    Rational::new(num, den)
}

/// Dimension of the irreducible U(N) representation with highest weight `λ`.
pub fn weyl_dimension(lambda: &Signature) -> BigInt {
    weyl_dimension_of(lambda.parts()).to_integer()
}

/// Every signature of length `n` with parts in `[lo, hi]`, lexicographically increasing.
pub fn signatures_in_box(n: usize, lo: i64, hi: i64) -> Vec<Signature> {
    fn rec(n: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        if cur.len() == n {
            out.push(Signature(cur.clone()));
            return;
        }
        let top = cur.last().copied().unwrap_or(hi);
        for x in lo..=top {
            cur.push(x);
            rec(n, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi || n == 0 {
        rec(n, lo, hi, &mut Vec::with_capacity(n), &mut out);
    }
    out.sort();
    out
}

/// All `μ ≺ λ`.
pub fn interlacing_below(lambda: &Signature) -> Vec<Signature> {
    let l = lambda.parts();
    if l.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for i in 0..l.len() - 1 {
        let mut next = Vec::new();
        for v in &out {
            for x in l[i + 1]..=l[i] {
                let mut w: Vec<i64> = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(Signature).collect()
}

/// All `λ ≻ μ` with every part of `λ` in `[lo, hi]`.
pub fn interlacing_above(mu: &Signature, lo: i64, hi: i64) -> Vec<Signature> {
    let m = mu.parts();
    let n = m.len() + 1;
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for i in 0..n {
        let upper = if i == 0 { hi } else { m[i - 1].min(hi) };
        let lower = if i == n - 1 { lo } else { m[i].max(lo) };
        let mut next = Vec::new();
        for v in &out {
            for x in lower..=upper {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(Signature).collect()
}

/// Conjugate of a partition with at most `m` columns: `λ′_j = #{i : λ_i ≥ j}`, `j = 1..m`.
pub fn conjugate(lambda: &[i64], m: usize) -> Vec<i64> {
    (1..=m as i64).map(|j| lambda.iter().filter(|&&x| x >= j).count() as i64).collect()
}

/// Strictly decreasing nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct MayaCoordinates(Vec<i64>);

impl MayaCoordinates {
    /// `l_i = λ_i + N − i`.
    pub fn of(sig: &Signature) -> Self {
        let n = sig.len() as i64;
        Self(sig.parts().iter().enumerate().map(|(i, x)| x + n - 1 - i as i64).collect())
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

/// Output of [`complement_in_rectangle`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complement {
    pub kappa: Signature,
    pub l: MayaCoordinates,
    pub k: MayaCoordinates,
}

/// Complement of the diagram `λ ⊆ (m^N)`: `κ = (N − λ′_m, …, N − λ′_1)`.
pub fn complement_in_rectangle(lambda: &Signature, m: usize, n: usize) -> Result<Complement> {
    if lambda.len() != n {
        return usage(format!("expected a signature of length {n}"));
    }
    if !lambda.within(0, m as i64) {
        return domain(format!("{lambda} does not fit in the {m}x{n} rectangle"));
    }
    let conj = conjugate(lambda.parts(), m);
    let kappa = Signature(conj.iter().rev().map(|c| n as i64 - c).collect());
    Ok(Complement { l: MayaCoordinates::of(lambda), k: MayaCoordinates::of(&kappa), kappa })
}

/// `∏_{i<j} (x_i − x_j)`.
pub fn vandermonde(xs: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            v *= &xs[i] - &xs[j];
            if v.is_zero() {
                return v;
            }
        }
    }
    v
}

pub fn vandermonde_int(xs: &[i64]) -> Rational {
    vandermonde(&xs.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(v: &[i64]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&sig(&[1, 0]), &sig(&[2, 1, 0])).unwrap());
        assert!(!interlaces(&sig(&[3]), &sig(&[2, 1])).unwrap());
        assert!(interlaces(&Signature::empty(), &sig(&[-5])).unwrap());
        assert!(interlaces(&sig(&[1]), &sig(&[1])).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&sig(&[1, 1]), &sig(&[2, 0])).unwrap());
        assert!(!dominance_leq(&sig(&[1, 0]), &sig(&[2, 0])).unwrap());
        assert!(dominance_leq(&sig(&[3, -1]), &sig(&[3, -1])).unwrap());
        assert!(!dominance_leq(&sig(&[2, 0]), &sig(&[1, 1])).unwrap());
        assert!(dominance_leq(&sig(&[1]), &sig(&[1, 0])).is_err());
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(weyl_dimension(&sig(&[0, 0, 0])), BigInt::from(1));
        assert_eq!(weyl_dimension(&sig(&[1, 0])), BigInt::from(2));
        assert_eq!(weyl_dimension(&sig(&[2, 1, 0])), BigInt::from(8));
        assert_eq!(weyl_dimension(&Signature::empty()), BigInt::from(1));
        assert_eq!(weyl_dimension(&sig(&[-4])), BigInt::from(1));
        // (1,2) is one step from (1,1): the pattern dimension vanishes
        assert!(weyl_dimension_of(&[1, 2]).is_zero());
    }

    #[test]
    fn weyl_dimension_matches_gt_pattern_count() {
        // independent count: Dim λ = number of Gelfand–Tsetlin patterns with top row λ
        fn patterns(l: &Signature) -> u64 {
            if l.len() <= 1 {
                return 1;
            }
            interlacing_below(l).iter().map(patterns).sum()
        }
        for n in 1..=4 {
            for l in signatures_in_box(n, -2, 2) {
                assert_eq!(weyl_dimension(&l), BigInt::from(patterns(&l)), "{l}");
            }
        }
    }

    #[test]
    fn complement_examples() {
        let c = complement_in_rectangle(&sig(&[2, 0]), 2, 2).unwrap();
        assert_eq!(c.kappa, sig(&[1, 1]));
        assert_eq!(c.l.values(), &[3, 0]);
        assert_eq!(c.k.values(), &[2, 1]);
        let c = complement_in_rectangle(&sig(&[0, 0, 0]), 2, 3).unwrap();
        assert_eq!(c.kappa, sig(&[3, 3]));
        let c = complement_in_rectangle(&sig(&[2, 2, 2]), 2, 3).unwrap();
        assert_eq!(c.kappa, sig(&[0, 0]));
        assert!(complement_in_rectangle(&sig(&[3, 0]), 2, 2).is_err());
        assert!(complement_in_rectangle(&sig(&[1, -1]), 2, 2).is_err());
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_int(&[3, 0]), int(3));
        assert_eq!(vandermonde_int(&[2, 1, 0]), int(2));
        assert_eq!(vandermonde_int(&[5]), int(1));
        assert_eq!(vandermonde_int(&[2, 2, 0]), int(0));
    }

    #[test]
    fn enumeration_sizes() {
        // C(n + width, n)
        assert_eq!(signatures_in_box(2, -2, 2).len(), 15);
        assert_eq!(signatures_in_box(3, -2, 2).len(), 35);
        assert_eq!(signatures_in_box(0, -2, 2), vec![Signature::empty()]);
        assert_eq!(interlacing_above(&Signature::empty(), -1, 1).len(), 3);
        assert_eq!(interlacing_above(&sig(&[0]), -1, 1).len(), 4);
        assert_eq!(interlacing_below(&sig(&[2, 0])).len(), 3);
    }

    #[test]
    fn parse_and_serde() {
        assert_eq!("2,1,0".parse::<Signature>().unwrap(), sig(&[2, 1, 0]));
        assert_eq!("[]".parse::<Signature>().unwrap(), Signature::empty());
        assert!("0,1".parse::<Signature>().is_err());
        assert_eq!(serde_json::to_string(&sig(&[2, 1, 0])).unwrap(), "[2,1,0]");
        assert_eq!(serde_json::to_string(&Signature::empty()).unwrap(), "[]");
        assert!(serde_json::from_str::<Signature>("[0,1]").is_err());
    }
}
