//! Points of the boundary `Ω`, the generating function `Φ(u; ω)`, its Laurent
//! coefficients `φ̂_n`, the determinants `σ̂_λ` and the link `Λ^∞_N`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};
use crate::ring::dim_rational;
use crate::scalar::{parse_rational, rational_to_f64, Rational};
use crate::signature::Signature;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryPoint {
    pub alpha_plus: Vec<Rational>,
    pub beta_plus: Vec<Rational>,
    pub alpha_minus: Vec<Rational>,
    pub beta_minus: Vec<Rational>,
    pub delta_plus: Rational,
    pub delta_minus: Rational,
}

fn check_list(name: &str, v: &[Rational]) -> Result<()> {
    if v.iter().any(|x| x.is_negative()) {
        return domain(format!("{name} has a negative entry"));
    }
    if v.windows(2).any(|w| w[0] < w[1]) {
        return domain(format!("{name} is not weakly decreasing"));
    }
    Ok(())
}

impl BoundaryPoint {
    pub fn new(
        alpha_plus: Vec<Rational>,
        beta_plus: Vec<Rational>,
        alpha_minus: Vec<Rational>,
        beta_minus: Vec<Rational>,
        delta_plus: Rational,
        delta_minus: Rational,
    ) -> Result<Self> {
        let p = Self { alpha_plus, beta_plus, alpha_minus, beta_minus, delta_plus, delta_minus };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_list("alpha_plus", &self.alpha_plus)?;
        check_list("beta_plus", &self.beta_plus)?;
        check_list("alpha_minus", &self.alpha_minus)?;
        check_list("beta_minus", &self.beta_minus)?;
        let b1 =
            self.beta_plus.first().cloned().unwrap_or_default() + self.beta_minus.first().cloned().unwrap_or_default();
        if b1 > Rational::one() {
            return domain("beta_plus_1 + beta_minus_1 exceeds 1");
        }
        if self.gamma_plus().is_negative() || self.gamma_minus().is_negative() {
            return domain("delta is smaller than the sum of the alpha and beta coordinates");
        }
        Ok(())
    }

    pub fn gamma_plus(&self) -> Rational {
        let s: Rational = self.alpha_plus.iter().chain(&self.beta_plus).sum();
        &self.delta_plus - s
    }

    pub fn gamma_minus(&self) -> Rational {
        let s: Rational = self.alpha_minus.iter().chain(&self.beta_minus).sum();
        &self.delta_minus - s
    }

    /// The point of `Ω(n₊, n₋)` with the given β-lists and every other coordinate minimal.
    pub fn simplex(beta_plus: Vec<Rational>, beta_minus: Vec<Rational>) -> Result<Self> {
        if beta_plus.iter().chain(&beta_minus).any(|b| *b > Rational::one()) {
            return domain("beta coordinates must lie in [0, 1]");
        }
        let dp = beta_plus.iter().sum();
        let dm = beta_minus.iter().sum();
        Self::new(vec![], beta_plus, vec![], beta_minus, dp, dm)
    }

    /// Only β-coordinates: `Φ` is a Laurent polynomial.
    pub fn is_finite(&self) -> bool {
        self.alpha_plus.iter().chain(&self.alpha_minus).all(Zero::is_zero)
            && self.gamma_plus().is_zero()
            && self.gamma_minus().is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self {
            alpha_plus: self.alpha_minus.clone(),
            beta_plus: self.beta_minus.clone(),
            alpha_minus: self.alpha_plus.clone(),
            beta_minus: self.beta_plus.clone(),
            delta_plus: self.delta_minus.clone(),
            delta_minus: self.delta_plus.clone(),
        }
    }

    /// `β⁺ ↦ (1 − β⁻_1, β⁺)`, `β⁻ ↦ (β⁻_2, …)`, so that `Φ(u; τω) = u Φ(u; ω)`.
    pub fn twist(&self) -> Self {
        let b = self.beta_minus.first().cloned().unwrap_or_default();
        let mut beta_plus = vec![Rational::one() - &b];
        beta_plus.extend(self.beta_plus.iter().cloned());
        Self {
            alpha_plus: self.alpha_plus.clone(),
            beta_plus,
            alpha_minus: self.alpha_minus.clone(),
            beta_minus: self.beta_minus.iter().skip(1).cloned().collect(),
            delta_plus: &self.delta_plus + Rational::one() - &b,
            delta_minus: &self.delta_minus - &b,
        }
    }

    pub fn symmetry(&self, which: Symmetry) -> Self {
        match which {
            Symmetry::Conjugate => self.conjugate(),
            Symmetry::Twist => self.twist(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Conjugate,
    Twist,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPointJson {
    #[serde(default)]
    pub alpha_plus: Vec<String>,
    #[serde(default)]
    pub beta_plus: Vec<String>,
    #[serde(default)]
    pub alpha_minus: Vec<String>,
    #[serde(default)]
    pub beta_minus: Vec<String>,
    #[serde(default)]
    pub delta_plus: Option<String>,
    #[serde(default)]
    pub delta_minus: Option<String>,
}

impl From<&BoundaryPoint> for BoundaryPointJson {
    fn from(p: &BoundaryPoint) -> Self {
        let s = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect();
        Self {
            alpha_plus: s(&p.alpha_plus),
            beta_plus: s(&p.beta_plus),
            alpha_minus: s(&p.alpha_minus),
            beta_minus: s(&p.beta_minus),
            delta_plus: Some(p.delta_plus.to_string()),
            delta_minus: Some(p.delta_minus.to_string()),
        }
    }
}

impl TryFrom<&BoundaryPointJson> for BoundaryPoint {
    type Error = Error;
    /// Missing deltas default to the sum of the listed α and β entries (γ = 0).
    fn try_from(j: &BoundaryPointJson) -> Result<Self> {
        let v = |xs: &[String]| xs.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>();
        let (ap, bp, am, bm) = (v(&j.alpha_plus)?, v(&j.beta_plus)?, v(&j.alpha_minus)?, v(&j.beta_minus)?);
        let dp = match &j.delta_plus {
            Some(d) => parse_rational(d)?,
            None => ap.iter().chain(&bp).sum(),
        };
        let dm = match &j.delta_minus {
            Some(d) => parse_rational(d)?,
            None => am.iter().chain(&bm).sum(),
        };
        BoundaryPoint::new(ap, bp, am, bm, dp, dm)
    }
}

/// How values are produced: exact rationals where the data allow it, or floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    /// Exact rationals. `tol` is only used when an infinite double sum must be cut,
    /// and the result is then tagged with it.
    Exact {
        tol: f64,
    },
    Float {
        tol: f64,
    },
}

impl Mode {
    pub fn exact() -> Self {
        Mode::Exact { tol: 1e-12 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Exact(#[serde(serialize_with = "ser_rat")] Rational),
    Approx { value: f64, tol: f64 },
}

fn ser_rat<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => rational_to_f64(q),
            Value::Approx { value, .. } => *value,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx { .. } => None,
        }
    }

    pub fn tol(&self) -> f64 {
        match self {
            Value::Exact(_) => 0.0,
            Value::Approx { tol, .. } => *tol,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Approx { value, tol } => write!(f, "{value:e} (±{tol:e})"),
        }
    }
}

fn convolve<T: Clone + Zero + for<'a> std::ops::Mul<&'a T, Output = T>>(a: &[T], b: &[T], cap: usize) -> Vec<T> {
    let len = (a.len() + b.len()).saturating_sub(1).min(cap);
    let mut out = vec![T::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] = out[i + j].clone() + x.clone() * y;
            }
        }
    }
    out
}

/// Exact coefficients `0..cap` of one side: Bernoulli factors `(1−β) + βx` times
/// geometric factors `Σ (1/(1+α)) (α/(1+α))^k x^k`.
fn exact_side(betas: &[Rational], alphas: &[Rational], cap: usize) -> Vec<Rational> {
    let mut poly = vec![Rational::one()];
    for b in betas {
        poly = convolve(&poly, &[Rational::one() - b, b.clone()], usize::MAX);
    }
    for a in alphas.iter().filter(|a| !a.is_zero()) {
        let first = Rational::one() / (Rational::one() + a);
        let r = a / (Rational::one() + a);
        let mut g = Vec::with_capacity(cap);
        let mut c = first;
        for _ in 0..cap {
            g.push(c.clone());
            c *= &r;
        }
        poly = convolve(&poly, &g, cap);
    }
    poly.truncate(cap.max(1));
    poly
}

fn has_alpha(v: &[Rational]) -> bool {
    v.iter().any(|a| !a.is_zero())
}

/// Smallest `K` with `Σ_i r_i^K ≤ tol`, `r_i = α_i/(1+α_i)`.
fn geometric_depth(alphas: &[f64], extra: &[f64], tol: f64) -> usize {
    let rs: Vec<f64> = alphas.iter().filter(|a| **a > 0.0).map(|a| a / (1.0 + a)).collect();
    let mut k = 1usize;
    loop {
        let tail: f64 =
            rs.iter().map(|r| r.powi(k as i32)).sum::<f64>() + extra.iter().map(|g| poisson_tail(*g, k)).sum::<f64>();
        if tail <= tol || k > 100_000 {
            return k;
        }
        k += 1;
    }
}

/// Upper bound for `P(Poisson(g) ≥ k)`.
fn poisson_tail(g: f64, k: usize) -> f64 {
    if g == 0.0 {
        return 0.0;
    }
    let kf = k as f64;
    if kf <= g + 1.0 {
        return 1.0;
    }
    let mut pmf = (-g).exp();
    for j in 1..=k {
        pmf *= g / j as f64;
    }
    pmf / (1.0 - g / (kf + 1.0))
}

fn float_side(betas: &[f64], alphas: &[f64], gamma: f64, cap: usize) -> Vec<f64> {
    let mut poly = vec![1.0];
    for b in betas {
        poly = convolve(&poly, &[1.0 - b, *b], usize::MAX);
    }
    for a in alphas.iter().filter(|a| **a > 0.0) {
        let r = a / (1.0 + a);
        let g: Vec<f64> = (0..cap).map(|k| r.powi(k as i32) / (1.0 + a)).collect();
        poly = convolve(&poly, &g, cap);
    }
    if gamma > 0.0 {
        let mut g = Vec::with_capacity(cap);
        let mut c = (-gamma).exp();
        for k in 0..cap {
            g.push(c);
            c *= gamma / (k + 1) as f64;
        }
        poly = convolve(&poly, &g, usize::MAX);
    }
    poly
}

fn to_f64s(v: &[Rational]) -> Vec<f64> {
    v.iter().map(rational_to_f64).collect()
}

fn pair_sum<T: Clone + Zero + for<'a> std::ops::Mul<&'a T, Output = T>>(plus: &[T], minus: &[T], n: i64) -> T {
    let mut s = T::zero();
    for (j, m) in minus.iter().enumerate() {
        let i = n + j as i64;
        if i >= 0 && (i as usize) < plus.len() {
            s = s + plus[i as usize].clone() * m;
        }
    }
    s
}

/// `φ̂_n(ω)` for every `n` in `[lo, hi]`.
pub fn phi_hat_table(omega: &BoundaryPoint, lo: i64, hi: i64, mode: Mode) -> Result<BTreeMap<i64, Value>> {
    if lo > hi {
        return usage("empty index range");
    }
    let span = (hi.unsigned_abs().max(lo.unsigned_abs())) as usize;
    match mode {
        Mode::Exact { tol } => {
            if !omega.gamma_plus().is_zero() || !omega.gamma_minus().is_zero() {
                return Err(Error::Unsupported(
                    "exact mode needs gamma = 0; the exponential factor is transcendental".into(),
                ));
            }
            let ap = has_alpha(&omega.alpha_plus);
            let am = has_alpha(&omega.alpha_minus);
            let (dp, dm) = (omega.beta_plus.len(), omega.beta_minus.len());
            let (cap_p, cap_m, tagged) = match (ap, am) {
                (false, false) => (dp + 1, dm + 1, false),
                (true, false) => (span + dm + 1, dm + 1, false),
                (false, true) => (dp + 1, span + dp + 1, false),
                (true, true) => {
                    let alphas: Vec<f64> =
                        to_f64s(&omega.alpha_plus).into_iter().chain(to_f64s(&omega.alpha_minus)).collect();
                    let k = certified_depth(omega, tol, &alphas);
                    (k + dp, k + dm, true)
                }
            };
            let plus = exact_side(&omega.beta_plus, &omega.alpha_plus, cap_p);
            let minus = exact_side(&omega.beta_minus, &omega.alpha_minus, cap_m);
            Ok((lo..=hi)
                .map(|n| {
                    let v = pair_sum(&plus, &minus, n);
                    let v = if tagged { Value::Approx { value: rational_to_f64(&v), tol } } else { Value::Exact(v) };
                    (n, v)
                })
                .collect())
        }
        Mode::Float { tol } => {
            let (gp, gm) = (rational_to_f64(&omega.gamma_plus()), rational_to_f64(&omega.gamma_minus()));
            let alphas: Vec<f64> = to_f64s(&omega.alpha_plus).into_iter().chain(to_f64s(&omega.alpha_minus)).collect();
            let k = geometric_depth(&alphas, &[gp, gm], tol).max(span + 1);
            let plus =
                float_side(&to_f64s(&omega.beta_plus), &to_f64s(&omega.alpha_plus), gp, k + omega.beta_plus.len());
            let minus =
                float_side(&to_f64s(&omega.beta_minus), &to_f64s(&omega.alpha_minus), gm, k + omega.beta_minus.len());
            Ok((lo..=hi).map(|n| (n, Value::Approx { value: pair_sum(&plus, &minus, n), tol })).collect())
        }
    }
}

/// Depth `K` per geometric factor, certified exactly: `Σ_i (α_i/(1+α_i))^K ≤ tol`.
fn certified_depth(omega: &BoundaryPoint, tol: f64, alphas_f: &[f64]) -> usize {
    let mut k = geometric_depth(alphas_f, &[], tol);
    let tol_q = Rational::from_float(tol).unwrap_or_else(|| Rational::new(1.into(), 1_000_000_000_000i64.into()));
    loop {
        let tail: Rational = omega
            .alpha_plus
            .iter()
            .chain(&omega.alpha_minus)
            .filter(|a| !a.is_zero())
            .map(|a| num_traits::pow(a / (Rational::one() + a), k))
            .sum();
        if tail <= tol_q {
            return k;
        }
        k += 1;
    }
}

pub fn phi_hat(omega: &BoundaryPoint, n: i64, mode: Mode) -> Result<Value> {
    Ok(phi_hat_table(omega, n, n, mode)?.remove(&n).expect("requested index"))
}

pub(crate) fn det_exact(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            let (top, rest) = m.split_at_mut(r);
            for (x, y) in rest[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

fn det_float(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        if m[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            let (top, rest) = m.split_at_mut(r);
            for (x, y) in rest[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= f * y;
            }
        }
    }
    det
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `σ̂_λ(ω) = det[φ̂_{λ_i − i + j}]`; `[lo, hi]` must cover every index that occurs.
pub fn sigma_hat(omega: &BoundaryPoint, lambda: &Signature, lo: i64, hi: i64, mode: Mode) -> Result<Value> {
    let n = lambda.len();
    if n == 0 {
        return Ok(Value::Exact(Rational::one()));
    }
    let l = lambda.parts();
    let (need_lo, need_hi) = (l[n - 1] - (n as i64 - 1), l[0] + (n as i64 - 1));
    if need_lo < lo || need_hi > hi {
        return usage(format!("index range [{lo},{hi}] does not cover [{need_lo},{need_hi}] needed for {lambda}"));
    }
    let table = phi_hat_table(omega, need_lo, need_hi, mode)?;
    let entry = |i: usize, j: usize| &table[&(l[i] - i as i64 + j as i64)];
    if table.values().all(|v| v.exact().is_some()) {
        let m = (0..n).map(|i| (0..n).map(|j| entry(i, j).exact().unwrap().clone()).collect()).collect();
        return Ok(Value::Exact(det_exact(m)));
    }
    let tol = table.values().map(Value::tol).fold(0.0, f64::max);
    let m = (0..n).map(|i| (0..n).map(|j| entry(i, j).to_f64()).collect()).collect();
    Ok(Value::Approx { value: det_float(m), tol: tol * n as f64 * factorial(n) })
}

/// `Λ^∞_N(ω, λ) = Dim_N λ · σ̂_λ(ω)`.
pub fn link_infinity(omega: &BoundaryPoint, lambda: &Signature, lo: i64, hi: i64, mode: Mode) -> Result<Value> {
    let d = dim_rational(lambda);
    Ok(match sigma_hat(omega, lambda, lo, hi, mode)? {
        Value::Exact(q) => Value::Exact(q * d),
        Value::Approx { value, tol } => {
            let df = rational_to_f64(&d);
            Value::Approx { value: value * df, tol: tol * df }
        }
    })
}

/// Laurent coefficients of `Φ(u; ω)` for a β-only point.
pub fn laurent_polynomial(omega: &BoundaryPoint) -> Result<BTreeMap<i64, Rational>> {
    if !omega.is_finite() {
        return domain("Phi is a Laurent polynomial only for beta-only points");
    }
    let lo = -(omega.beta_minus.len() as i64);
    let hi = omega.beta_plus.len() as i64;
    Ok(phi_hat_table(omega, lo, hi, Mode::exact())?
        .into_iter()
        .map(|(n, v)| (n, v.exact().cloned().expect("finite point")))
        .collect())
}

/// The coordinates `t = (1 − β⁺_m, …, 1 − β⁺_1)` of an `Ω(m, 0)` point.
pub fn t_coordinates(omega: &BoundaryPoint) -> Vec<Rational> {
    omega.beta_plus.iter().rev().map(|b| Rational::one() - b).collect()
}

/// The `Ω(m, 0)` point with coordinates `t` (weakly decreasing).
pub fn point_from_t(t: &[Rational]) -> Result<BoundaryPoint> {
    BoundaryPoint::simplex(t.iter().rev().map(|x| Rational::one() - x).collect(), vec![])
}
