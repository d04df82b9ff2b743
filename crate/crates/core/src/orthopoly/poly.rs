//! Exact polynomials: one variable, several variables, and the symmetric ones.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::{int, parse_rational, Rational};

/// Dense coefficients `c_0, c_1, …`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly1(Vec<Rational>);

impl Poly1 {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(vec![])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = Rational::one();
        Self(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.0.get(n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(n, c)| c * int(n as i64)).collect())
    }

    /// `p(x + s)`.
    pub fn shift(&self, s: &Rational) -> Self {
        let lin = Poly1::new(vec![s.clone(), Rational::one()]);
        self.0.iter().rev().fold(Poly1::zero(), |acc, c| &(&acc * &lin) + &Poly1::constant(c.clone()))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Poly1::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Renders with the given variable name, lowest degree first: `1 - 2t + t^2`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, c) in self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = match n {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{n}"),
            };
            if n == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&body);
            } else if a.is_integer() {
                out.push_str(&format!("{a}{body}"));
            } else {
                out.push_str(&format!("({a}){body}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, o: &Poly1) -> Poly1 {
        let n = self.0.len().max(o.0.len());
        Poly1::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, o: &Poly1) -> Poly1 {
        let n = self.0.len().max(o.0.len());
        Poly1::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, o: &Poly1) -> Poly1 {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly1::new(v)
    }
}

impl Serialize for Poly1 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for Poly1 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let c = v.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        Ok(Poly1::new(c))
    }
}

/// Sparse polynomial in `nvars` variables, keyed by exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// `p(x_i)` as a polynomial in `nvars` variables.
    pub fn from_poly1(nvars: usize, i: usize, p: &Poly1) -> Self {
        let mut out = Self::zero(nvars);
        for (n, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = n as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(c.clone(), |acc, (k, xi)| acc * num_traits::pow(xi.clone(), *k as usize))
            })
            .sum()
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * int(e[i] as i64));
            }
        }
        out
    }

    /// Substitutes `x_i ↦ a x_i + s`.
    pub fn affine(&self, i: usize, a: &Rational, s: &Rational) -> Self {
        let lin = Poly1::new(vec![s.clone(), a.clone()]);
        let mut powers = vec![Poly1::constant(Rational::one())];
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            while powers.len() <= e[i] as usize {
                let next = powers.last().unwrap() * &lin;
                powers.push(next);
            }
            for (r, d) in powers[e[i] as usize].coeffs().iter().enumerate() {
                let mut f = e.clone();
                f[i] = r as u32;
                out.add_term(f, c * d);
            }
        }
        out
    }

    /// `p(x + s e_i)`.
    pub fn shift(&self, i: usize, s: &Rational) -> Self {
        self.affine(i, &Rational::one(), s)
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.swap(i, j);
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| self.swap_vars(i, i + 1) == *self)
    }

    /// Exact quotient by `x_i − x_j`; fails when the remainder is nonzero.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        loop {
            let Some((e, c)) = rem.terms.iter().max_by_key(|(e, _)| e[i]).map(|(e, c)| (e.clone(), c.clone())) else {
                return Ok(q);
            };
            if e[i] == 0 {
                return domain(format!("not divisible by x{} - x{}", i + 1, j + 1));
            }
            let mut f = e.clone();
            f[i] -= 1;
            q.add_term(f.clone(), c.clone());
            rem.add_term(e, -c.clone());
            let mut g = f;
            g[j] += 1;
            rem.add_term(g, c);
        }
    }

    /// `V(x) = ∏_{i<j} (x_i − x_j)`.
    pub fn vandermonde(nvars: usize) -> Self {
        let mut v = Self::one(nvars);
        for i in 0..nvars {
            for j in i + 1..nvars {
                v = &v * &(&Self::var(nvars, i) - &Self::var(nvars, j));
            }
        }
        v
    }

    pub fn div_vandermonde(&self) -> Result<Self> {
        let mut q = self.clone();
        for i in 0..self.nvars {
            for j in i + 1..self.nvars {
                q = q.div_by_difference(i, j)?;
            }
        }
        Ok(q)
    }

    /// `det[entries[i][j]]` by permutation expansion.
    pub fn det(entries: &[Vec<MPoly>], nvars: usize) -> Self {
        let m = entries.len();
        let mut out = Self::zero(nvars);
        for perm in (0..m).permutations(m) {
            let inversions =
                (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            let mut t = Self::one(nvars);
            for (i, &j) in perm.iter().enumerate() {
                t = &t * &entries[i][j];
                if t.is_zero() {
                    break;
                }
            }
            out = if inversions % 2 == 0 { &out + &t } else { &out - &t };
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                out.add_term(e.iter().zip(f).map(|(a, b)| a + b).collect(), c * d);
            }
        }
        out
    }
}

/// A symmetric polynomial in `m` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymPolyM(MPoly);

impl SymPolyM {
    pub fn new(p: MPoly) -> Result<Self> {
        if !p.is_symmetric() {
            return domain("polynomial is not symmetric");
        }
        Ok(Self(p))
    }

    pub fn zero(m: usize) -> Self {
        Self(MPoly::zero(m))
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        Self(MPoly::constant(m, c))
    }

    /// The monomial symmetric polynomial `m_κ`.
    pub fn monomial(m: usize, kappa: &[u32]) -> Result<Self> {
        if kappa.len() > m || kappa.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("{kappa:?} is not a partition with at most {m} parts"));
        }
        let mut e = kappa.to_vec();
        e.resize(m, 0);
        let mut p = MPoly::zero(m);
        for perm in e.iter().copied().permutations(m).unique() {
            p.add_term(perm, Rational::one());
        }
        Ok(Self(p))
    }

    /// The elementary symmetric polynomial `e_j`.
    pub fn elementary(m: usize, j: usize) -> Self {
        if j > m {
            return Self::zero(m);
        }
        let mut kappa = vec![1; j];
        kappa.resize(m, 0);
        Self::monomial(m, &kappa).expect("partition")
    }

    pub fn from_monomial_basis(m: usize, coeffs: &BTreeMap<Vec<u32>, Rational>) -> Result<Self> {
        let mut p = MPoly::zero(m);
        for (k, c) in coeffs {
            p = &p + &Self::monomial(m, k)?.0.scale(c);
        }
        Ok(Self(p))
    }

    /// Coefficients in the monomial symmetric basis, keyed by partitions padded to length `m`.
    pub fn monomial_basis(&self) -> BTreeMap<Vec<u32>, Rational> {
        self.0
            .terms
            .iter()
            .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    pub fn poly(&self) -> &MPoly {
        &self.0
    }

    pub fn into_poly(self) -> MPoly {
        self.0
    }

    pub fn m(&self) -> usize {
        self.0.nvars
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.0.eval(x)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.scale(c))
    }

    /// Exponent vectors `(d_1, …, d_m)` with `self = Σ c ∏ e_j^{d_j}`.
    pub fn elementary_expansion(&self) -> BTreeMap<Vec<u32>, Rational> {
        let m = self.m();
        let es: Vec<MPoly> = (1..=m).map(|j| Self::elementary(m, j).0).collect();
        let mut rem = self.0.clone();
        let mut out = BTreeMap::new();
        while let Some((lead, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let d: Vec<u32> = (0..m).map(|j| lead[j] - lead.get(j + 1).copied().unwrap_or(0)).collect();
            let mut prod = MPoly::one(m);
            for (j, &dj) in d.iter().enumerate() {
                prod = &prod * &es[j].pow(dj);
            }
            rem = &rem - &prod.scale(&c);
            out.insert(d, c);
        }
        out
    }
}

impl Add for &SymPolyM {
    type Output = SymPolyM;
    fn add(self, o: &SymPolyM) -> SymPolyM {
        SymPolyM(&self.0 + &o.0)
    }
}

impl Sub for &SymPolyM {
    type Output = SymPolyM;
    fn sub(self, o: &SymPolyM) -> SymPolyM {
        SymPolyM(&self.0 - &o.0)
    }
}

impl Mul for &SymPolyM {
    type Output = SymPolyM;
    fn mul(self, o: &SymPolyM) -> SymPolyM {
        SymPolyM(&self.0 * &o.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymTermJson {
    pub partition: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPolyJson {
    pub m: usize,
    pub terms: Vec<SymTermJson>,
}

impl From<&SymPolyM> for SymPolyJson {
    fn from(p: &SymPolyM) -> Self {
        Self {
            m: p.m(),
            terms: p
                .monomial_basis()
                .into_iter()
                .map(|(k, c)| SymTermJson {
                    partition: k.into_iter().filter(|&x| x > 0).collect(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&SymPolyJson> for SymPolyM {
    type Error = Error;
    fn try_from(j: &SymPolyJson) -> Result<Self> {
        let mut map = BTreeMap::new();
        for t in &j.terms {
            let mut k = t.partition.clone();
            k.resize(j.m.max(k.len()), 0);
            *map.entry(k).or_insert_with(Rational::zero) += parse_rational(&t.coeff)?;
        }
        Self::from_monomial_basis(j.m, &map)
    }
}
