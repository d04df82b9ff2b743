//! The second-order operator `D` on the φ-variables, the jump-rate operator `A`
//! on the σ-basis, and the checks that tie them together.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, usage, Result};
use crate::params::Params;
use crate::ring::{
    multiply, phi_sum, phi_times_sigma_element, phi_to_sigma_window, sigma_to_phi, Basis, RingElement, Window,
};
use crate::scalar::{Scalar, ScalarJson};
use crate::signature::{weyl_dimension_of, Signature};

/// `(a, b, c)` stands for `c · φ_a φ_b`, `a ≥ b`.
type QuadTerms = Vec<(i64, i64, i64)>;

fn a_terms(n1: i64, n2: i64, w: &Window) -> QuadTerms {
    let mut out = Vec::new();
    let mut push = |a: i64, b: i64, c: i64| {
        if c != 0 && w.contains(a) && w.contains(b) {
            out.push((a, b, c));
        }
    };
    let d = n1 - n2;
    let mut p = 0;
    while n1 + p <= w.hi && n2 - p >= w.lo {
        push(n1 + p + 1, n2 - p, d + 2 * p + 1);
        push(n1 + p, n2 - p - 1, d + 2 * p + 1);
        if p >= 1 {
            push(n1 + p, n2 - p, -2 * (d + 2 * p));
        }
        p += 1;
    }
    push(n1, n2, -d);
    out
}

/// Quadratic coefficient `A_{n1 n2}` with only the terms whose indices lie in `w`.
pub fn coefficient_a(n1: i64, n2: i64, w: &Window) -> Result<RingElement> {
    if n1 < n2 {
        return usage(format!("A_{{n1 n2}} needs n1 >= n2, got {n1} < {n2}"));
    }
    Ok(RingElement::from_terms(
        Basis::Phi,
        a_terms(n1, n2, w).into_iter().map(|(a, b, c)| (Signature::from_unsorted(vec![a, b]), Scalar::from_int(c))),
    ))
}

/// Linear coefficient `B_n`.
pub fn coefficient_b(n: i64, p: &Params) -> RingElement {
    let n_ = Scalar::from_int(n);
    let one = Scalar::one();
    let up = (&n_ + &p.w + &one) * (&n_ + &p.w2 + &one);
    let down = (&n_ - &p.z - &one) * (&n_ - &p.z2 - &one);
    let stay = -((&n_ - &p.z) * (&n_ - &p.z2) + (&n_ + &p.w) * (&n_ + &p.w2));
    RingElement::from_terms(
        Basis::Phi,
        [
            (Signature::from_unsorted(vec![n + 1]), up),
            (Signature::from_unsorted(vec![n - 1]), down),
            (Signature::from_unsorted(vec![n]), stay),
        ],
    )
}

fn mono_with(rest: &[i64], extra: &[i64]) -> Signature {
    let mut v = rest.to_vec();
    v.extend_from_slice(extra);
    Signature::from_unsorted(v)
}

/// `truncate(D e, w)` for `e` supported in `w`. Exact in `R(hi, lo)`: a term of `D`
/// survives truncation only if all of its indices lie in `w`.
pub fn apply_d_in_quotient(p: &Params, e: &RingElement, w: &Window) -> Result<RingElement> {
    if e.basis() != Basis::Phi {
        return usage("apply_D expects a phi-basis element");
    }
    if !e.supported_in(w) {
        return domain(format!("support of the argument leaves the window {w}"));
    }
    let mut a_cache: HashMap<(i64, i64), QuadTerms> = HashMap::new();
    let mut b_cache: HashMap<i64, Vec<(i64, Scalar)>> = HashMap::new();
    let mut out = RingElement::zero(Basis::Phi);
    for (mono, c) in e.terms() {
        let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
        for &x in mono.parts() {
            *counts.entry(x).or_default() += 1;
        }
        let idx: Vec<(i64, i64)> = counts.into_iter().collect();
        for (k, &(n, cn)) in idx.iter().enumerate() {
            let rest1 = remove_one(mono.parts(), n);
            let b = b_cache.entry(n).or_insert_with(|| {
                coefficient_b(n, p)
                    .terms()
                    .iter()
                    .filter(|(s, _)| w.contains_sig(s))
                    .map(|(s, c)| (s.parts()[0], c.clone()))
                    .collect()
            });
            let cn_s = Scalar::from_int(cn);
            for (m, bc) in b.iter() {
                out.add_term(mono_with(&rest1, &[*m]), c * &cn_s * bc);
            }
            if cn >= 2 {
                let rest2 = remove_one(&rest1, n);
                let f = Scalar::from_int(cn * (cn - 1));
                for &(a1, a2, ac) in a_cache.entry((n, n)).or_insert_with(|| a_terms(n, n, w)).iter() {
                    out.add_term(mono_with(&rest2, &[a1, a2]), c * &f * &Scalar::from_int(ac));
                }
            }
            for &(n2, cn2) in &idx[..k] {
                // idx is increasing, so n2 < n
                let rest2 = remove_one(&rest1, n2);
                let f = Scalar::from_int(2 * cn * cn2);
                for &(a1, a2, ac) in a_cache.entry((n, n2)).or_insert_with(|| a_terms(n, n2, w)).iter() {
                    out.add_term(mono_with(&rest2, &[a1, a2]), c * &f * &Scalar::from_int(ac));
                }
            }
        }
    }
    Ok(out)
}

fn remove_one(v: &[i64], x: i64) -> Vec<i64> {
    let mut out = v.to_vec();
    let pos = out.iter().position(|&y| y == x).expect("index present in monomial");
    out.remove(pos);
    out
}

/// `truncate(D e, w)` with the margin discipline: every index of `e` in `[lo+1, hi−1]`.
pub fn apply_d(p: &Params, e: &RingElement, w: &Window) -> Result<RingElement> {
    let inner = w.shrink(1).ok_or_else(|| crate::Error::Domain(format!("window {w} too narrow")))?;
    if !e.supported_in(&inner) {
        return domain(format!("argument support touches the edge of {w}"));
    }
    apply_d_in_quotient(p, e, w)
}

/// `r(ν, ν + ε_k)` for 0-based `k`.
pub fn rate_up(p: &Params, nu: &[i64], k: usize) -> Scalar {
    let x = Scalar::from_int(k as i64 - nu[k]);
    (&p.z + &x) * (&p.z2 + &x)
}

/// `r(ν, ν − ε_k)` for 0-based `k`.
pub fn rate_down(p: &Params, nu: &[i64], k: usize) -> Scalar {
    let x = Scalar::from_int(nu[k] - k as i64 - 1 + nu.len() as i64);
    (&p.w + &x) * (&p.w2 + &x)
}

fn neighbour(nu: &[i64], k: usize, s: i64) -> Vec<i64> {
    let mut v = nu.to_vec();
    v[k] += s;
    v
}

/// Off-diagonal generator entry `q(ν, μ) = Dim μ / Dim ν · r(ν, μ)`; zero on invalid patterns.
pub fn off_diagonal_q(p: &Params, nu: &Signature, k: usize, s: i64) -> Scalar {
    let mu = neighbour(nu.parts(), k, s);
    let ratio = weyl_dimension_of(&mu) / weyl_dimension_of(nu.parts());
    if ratio.is_zero() {
        return Scalar::zero();
    }
    let r = if s > 0 { rate_up(p, nu.parts(), k) } else { rate_down(p, nu.parts(), k) };
    r * Scalar::real(ratio)
}

/// `q(ν, ν) = −Σ_{μ≠ν} q(ν, μ)`.
pub fn diagonal_q(p: &Params, nu: &Signature) -> Scalar {
    let mut s = Scalar::zero();
    for k in 0..nu.len() {
        s += off_diagonal_q(p, nu, k, 1);
        s += off_diagonal_q(p, nu, k, -1);
    }
    -s
}

/// Closed form `(z+z′+w+w′)N(N−1)/2 + (2N−1)N(N−1)/3 − Σ r(ν, ν±ε_i)` over all `2N` patterns.
pub fn diagonal_q_closed_form(p: &Params, nu: &Signature) -> Scalar {
    let n = nu.len() as i64;
    let mut s = p.sum() * Scalar::from_int(n * (n - 1) / 2) + Scalar::from_int((2 * n - 1) * n * (n - 1) / 3);
    for k in 0..nu.len() {
        s -= &rate_up(p, nu.parts(), k);
        s -= &rate_down(p, nu.parts(), k);
    }
    s
}

/// `q(ν, μ)` for `μ ∈ {ν, ν ± ε_i}` given as a raw integer pattern.
pub fn jump_rate(p: &Params, n: usize, nu: &Signature, mu: &[i64]) -> Result<Scalar> {
    if nu.len() != n || mu.len() != n {
        return usage(format!("jump_rate expects two length-{n} patterns"));
    }
    if mu == nu.parts() {
        return Ok(diagonal_q(p, nu));
    }
    let diff: Vec<(usize, i64)> =
        mu.iter().zip(nu.parts()).enumerate().filter(|(_, (a, b))| a != b).map(|(k, (a, b))| (k, a - b)).collect();
    match diff.as_slice() {
        [(k, s)] if s.abs() == 1 => Ok(off_diagonal_q(p, nu, *k, *s)),
        _ => usage(format!("{mu:?} is not a neighbour of {nu}")),
    }
}

/// `A σ_μ = q(μ,μ) σ_μ + Σ_ν r(ν, μ) σ_ν`, `ν = μ ∓ ε_i` valid.
pub fn apply_a(p: &Params, e: &RingElement) -> Result<RingElement> {
    apply_a_with_offset(p, e, &Scalar::zero())
}

/// [`apply_a`] with `offset` added to every upward transition weight. Only meant for
/// exercising failure paths of the verification suites.
#[doc(hidden)]
pub fn apply_a_with_offset(p: &Params, e: &RingElement, offset: &Scalar) -> Result<RingElement> {
    if e.basis() != Basis::Sigma {
        return usage("apply_A expects a sigma-basis element");
    }
    let mut out = RingElement::zero(Basis::Sigma);
    for (mu, c) in e.terms() {
        if mu.is_empty() {
            continue;
        }
        out.add_term(mu.clone(), c * &diagonal_q(p, mu));
        for k in 0..mu.len() {
            if let Some(nu) = mu.step(k, 1) {
                out.add_term(nu.clone(), c * &(rate_down(p, nu.parts(), k) + offset));
            }
            if let Some(nu) = mu.step(k, -1) {
                out.add_term(nu.clone(), c * &rate_up(p, nu.parts(), k));
            }
        }
    }
    Ok(out)
}

/// `truncate(A e, w)` for a φ-element supported in `w`, computed through the σ-basis on
/// `w` enlarged by one. Exact: a dropped `σ_λ` has a part outside `w ± 1`, so `A σ_λ`
/// only involves `σ_ν` with a part outside `w`, all of whose monomials die in `R(hi, lo)`.
pub fn apply_a_to_phi(p: &Params, e: &RingElement, w: &Window) -> Result<RingElement> {
    let s = phi_to_sigma_window(e, &w.grow(1))?;
    Ok(apply_a(p, &s)?.to_phi().truncate(w))
}

/// `φ_λ ↦ φ_{λ*}`.
pub fn mirror_element(e: &RingElement) -> RingElement {
    e.map_signatures(Signature::dual)
}

pub fn mirror_window(w: &Window) -> Window {
    Window { lo: -w.hi, hi: -w.lo }
}

fn phi2(a: i64, b: i64) -> Signature {
    Signature::from_unsorted(vec![a, b])
}

/// Component of `A φ_κ` raising `l1 + l2` by one, assembled from the two explicit pieces.
pub fn closed_form_plus(p: &Params, k1: i64, k2: i64, w: &Window) -> RingElement {
    let one = Scalar::one();
    let mut out = RingElement::zero(Basis::Phi);
    let a1 = Scalar::from_int(k1) + &one;
    let a2 = Scalar::from_int(k2) + &one;
    out.add_term(phi2(k1 + 1, k2), (&p.w + &a1) * (&p.w2 + &a1));
    out.add_term(phi2(k1, k2 + 1), (&p.w + &a2) * (&p.w2 + &a2));
    let mut q = 0;
    while k1 + q < w.hi && k2 - q >= w.lo {
        out.add_term(phi2(k1 + q + 1, k2 - q), Scalar::from_int(2 * (2 * q + 1 + k1 - k2)));
        q += 1;
    }
    out.truncate(w)
}

/// Component of `A φ_κ` preserving `l1 + l2`.
pub fn closed_form_zero(p: &Params, k1: i64, k2: i64, w: &Window) -> RingElement {
    let s = |n: i64| Scalar::from_int(n);
    let bracket = -((&p.z - s(k1)) * (&p.z2 - s(k1)))
        - (&p.w + s(k1 + 1)) * (&p.w2 + s(k1 + 1))
        - (&p.z - s(k2 - 1)) * (&p.z2 - s(k2 - 1))
        - (&p.w + s(k2)) * (&p.w2 + s(k2))
        + p.sum()
        + s(2);
    let mut out = RingElement::zero(Basis::Phi);
    out.add_term(phi2(k1, k2), bracket);
    let mut q = 1;
    while k1 + q <= w.hi && k2 - q >= w.lo {
        out.add_term(phi2(k1 + q, k2 - q), s(-4 * (k1 - k2 + 2 * q)));
        q += 1;
    }
    out.truncate(w)
}

/// Component of `A φ_κ` lowering `l1 + l2` by one, generated from the raising component
/// through the involution `(z,z′) ↔ (w,w′)`, `κ ↦ κ*`, `φ_λ ↦ φ_{λ*}`.
pub fn closed_form_minus(p: &Params, k1: i64, k2: i64, w: &Window) -> RingElement {
    mirror_element(&closed_form_plus(&p.mirror(), -k2, -k1, &mirror_window(w)))
}

/// `A φ_{(k1,k2)}` assembled from closed forms, truncated to `w`.
pub fn degree2_closed_form(p: &Params, k1: i64, k2: i64, w: &Window) -> Result<RingElement> {
    if k1 < k2 {
        return usage(format!("degree2_closed_form needs k1 >= k2, got ({k1},{k2})"));
    }
    closed_form_plus(p, k1, k2, w).try_add(&closed_form_zero(p, k1, k2, w))?.try_add(&closed_form_minus(p, k1, k2, w))
}

/// Splits a quadratic φ-element by `l1 + l2 − shift`.
pub fn graded_part(e: &RingElement, center: i64, delta: i64) -> RingElement {
    e.filter(|s| s.sum() - center == delta)
}

/// Outcome of an exact comparison of two φ- or σ-elements.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub holds: bool,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub sig: Signature,
    pub lhs: ScalarJson,
    pub rhs: ScalarJson,
}

impl Comparison {
    pub fn of(lhs: &RingElement, rhs: &RingElement) -> Self {
        let mut discrepancies = Vec::new();
        let keys: std::collections::BTreeSet<&Signature> = lhs.terms().keys().chain(rhs.terms().keys()).collect();
        for k in keys {
            let (a, b) = (lhs.coeff(k), rhs.coeff(k));
            if a != b {
                discrepancies.push(Discrepancy { sig: k.clone(), lhs: (&a).into(), rhs: (&b).into() });
            }
        }
        Self { holds: discrepancies.is_empty(), discrepancies }
    }
}

/// `truncate(D σ_μ, w)` against `truncate(A σ_μ, w)` read in the φ-basis.
pub fn verify_main_identity(p: &Params, mu: &Signature, w: &Window) -> Result<Comparison> {
    verify_main_identity_with(p, mu, w, &Scalar::zero())
}

#[doc(hidden)]
pub fn verify_main_identity_with(p: &Params, mu: &Signature, w: &Window, offset: &Scalar) -> Result<Comparison> {
    let e = sigma_to_phi(mu);
    let lhs = apply_d(p, &e, w)?;
    let rhs = apply_a_with_offset(p, &RingElement::sigma(mu), offset)?.to_phi().truncate(w);
    Ok(Comparison::of(&lhs, &rhs))
}

/// Both halves of the commutation check with multiplication by `φ`.
#[derive(Clone, Debug, Serialize)]
pub struct CommutationCheck {
    pub d: Comparison,
    pub a: Comparison,
}

impl CommutationCheck {
    pub fn holds(&self) -> bool {
        self.d.holds && self.a.holds
    }
}

/// `D(φe) = φD(e)` and `A(φe) = φA(e)`, compared inside `w` shrunk by one.
pub fn verify_phi_commutation(p: &Params, e: &RingElement, w: &Window) -> Result<CommutationCheck> {
    let inner = w.shrink(1).ok_or_else(|| crate::Error::Domain(format!("window {w} too narrow")))?;
    let margin = w.shrink(2).ok_or_else(|| crate::Error::Domain(format!("window {w} too narrow")))?;
    let ephi = e.to_phi();
    if !ephi.supported_in(&margin) {
        return domain(format!("commutation check needs support at distance 2 from the edges of {w}"));
    }
    let phi = phi_sum(w);
    let lhs = apply_d_in_quotient(p, &multiply(&phi, &ephi, Some(w))?, w)?;
    let rhs = multiply(&phi, &apply_d_in_quotient(p, &ephi, w)?, Some(w))?;
    let keep = |s: &Signature| inner.contains_sig(s);
    let d = Comparison::of(&lhs.filter(keep), &rhs.filter(keep));

    let esig = match e.basis() {
        Basis::Sigma => e.clone(),
        Basis::Phi => phi_to_sigma_window(e, w)?,
    };
    let lhs = apply_a(p, &phi_times_sigma_element(&esig, w)?)?;
    let rhs = phi_times_sigma_element(&apply_a(p, &esig)?, w)?;
    let a = Comparison::of(&lhs.filter(keep), &rhs.filter(keep));
    Ok(CommutationCheck { d, a })
}

/// `A_{nn} + Σ_{n1>n} A_{n1 n} + Σ_{n2<n} A_{n n2}` truncated to `w`.
pub fn column_sum_a(n: i64, w: &Window) -> RingElement {
    let mut out = coefficient_a(n, n, w).expect("n >= n");
    for m in w.indices() {
        let term = match m.cmp(&n) {
            std::cmp::Ordering::Greater => coefficient_a(m, n, w),
            std::cmp::Ordering::Less => coefficient_a(n, m, w),
            std::cmp::Ordering::Equal => continue,
        };
        out = out.try_add(&term.expect("ordered indices")).expect("same basis");
    }
    out
}

/// `Σ_{n ∈ w'} B_n` truncated to `w`, where `w'` is `w` enlarged by one so that
/// every `φ_m` with `m ∈ w` collects all three contributions.
pub fn sum_b(p: &Params, w: &Window) -> RingElement {
    let mut out = RingElement::zero(Basis::Phi);
    for n in w.grow(1).indices() {
        out = out.try_add(&coefficient_b(n, p)).expect("same basis");
    }
    out.truncate(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::signatures_in_box;

    fn sig(v: &[i64]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    fn win(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn phi(c: i64, idx: &[i64]) -> RingElement {
        RingElement::phi(idx).scale(&Scalar::from_int(c))
    }

    fn sum(parts: &[RingElement]) -> RingElement {
        parts.iter().fold(RingElement::zero(Basis::Phi), |a, b| a.try_add(b).unwrap())
    }

    fn sample_params() -> Vec<Params> {
        vec![
            Params::ratios([(1, 2), (7, 10), (1, 2), (7, 10)]),
            Params::ratios([(-3, 4), (5, 3), (2, 7), (-1, 9)]),
            Params::ratios([(3, 1), (1, 5), (-2, 1), (4, 3)]),
            Params::parse("1/2+1i", "1/2-1i", "1/3", "-2/5+1/7i").unwrap(),
        ]
    }

    #[test]
    fn coefficient_a_examples() {
        let a00 = coefficient_a(0, 0, &win(-2, 2)).unwrap();
        let expect = sum(&[
            phi(1, &[1, 0]),
            phi(1, &[0, -1]),
            phi(3, &[2, -1]),
            phi(3, &[1, -2]),
            phi(-4, &[1, -1]),
            phi(-8, &[2, -2]),
        ]);
        assert_eq!(a00, expect);
        let a10 = coefficient_a(1, 0, &win(-1, 2)).unwrap();
        let expect = sum(&[phi(2, &[2, 0]), phi(2, &[1, -1]), phi(-1, &[1, 0]), phi(-6, &[2, -1])]);
        assert_eq!(a10, expect);
        assert!(coefficient_a(5, 4, &win(-1, 1)).unwrap().is_zero());
        assert!(coefficient_a(0, 1, &win(-1, 1)).is_err());
    }

    #[test]
    fn coefficient_b_examples() {
        let p = sample_params()[1].clone();
        let b0 = coefficient_b(0, &p);
        let one = Scalar::one();
        assert_eq!(b0.coeff(&sig(&[1])), (&p.w + &one) * (&p.w2 + &one));
        assert_eq!(b0.coeff(&sig(&[-1])), (&p.z + &one) * (&p.z2 + &one));
        assert_eq!(b0.coeff(&sig(&[0])), -(&p.z * &p.z2 + &p.w * &p.w2));
        for m in -2..=2 {
            for n in -3..=3 {
                let shifted = coefficient_b(n + m, &p.shifted(m));
                assert_eq!(shifted, coefficient_b(n, &p).map_signatures(|s| s.shifted(m)));
            }
        }
    }

    #[test]
    fn eq_4a_and_sum_b_vanish() {
        let w = win(-8, 8);
        for n in -2..=2 {
            assert!(column_sum_a(n, &w).truncate(&win(-8, 8)).is_zero(), "n = {n}");
        }
        for p in sample_params() {
            assert!(sum_b(&p, &w).is_zero());
        }
    }

    #[test]
    fn apply_d_on_low_degree() {
        let w = win(-4, 4);
        for p in sample_params() {
            assert!(apply_d(&p, &RingElement::one(Basis::Phi), &w).unwrap().is_zero());
            for n in -3..=3 {
                let d = apply_d(&p, &RingElement::phi(&[n]), &w).unwrap();
                assert_eq!(d, coefficient_b(n, &p).truncate(&w));
            }
        }
        assert!(apply_d(&sample_params()[0], &RingElement::phi(&[4]), &w).is_err());
    }

    #[test]
    fn apply_a_examples() {
        for p in sample_params() {
            assert!(apply_a(&p, &RingElement::one(Basis::Sigma)).unwrap().is_zero());
            let n = 2;
            let a = apply_a(&p, &RingElement::sigma(&sig(&[n]))).unwrap();
            let s = |k: i64| Scalar::from_int(k);
            assert_eq!(a.coeff(&sig(&[n - 1])), (&p.z - s(n - 1)) * (&p.z2 - s(n - 1)));
            assert_eq!(a.coeff(&sig(&[n + 1])), (&p.w + s(n + 1)) * (&p.w2 + s(n + 1)));
            assert_eq!(a.coeff(&sig(&[n])), -((&p.z - s(n)) * (&p.z2 - s(n))) - (&p.w + s(n)) * (&p.w2 + s(n)));
            let a = apply_a(&p, &RingElement::sigma(&sig(&[1, 1]))).unwrap();
            let keys: Vec<_> = a.terms().keys().cloned().collect();
            assert!(keys.iter().all(|k| [sig(&[1, 1]), sig(&[2, 1]), sig(&[1, 0])].contains(k)));
        }
    }

    #[test]
    fn diagonal_closed_form_agrees() {
        for p in sample_params() {
            for n in 1..=3 {
                for nu in signatures_in_box(n, -2, 2) {
                    assert_eq!(diagonal_q(&p, &nu), diagonal_q_closed_form(&p, &nu), "{nu}");
                }
            }
        }
    }

    #[test]
    fn jump_rate_examples() {
        let p = sample_params()[1].clone();
        let s = |k: i64| Scalar::from_int(k);
        let n = 3;
        let nu = sig(&[n]);
        assert_eq!(jump_rate(&p, 1, &nu, &[n + 1]).unwrap(), (&p.z - s(n)) * (&p.z2 - s(n)));
        assert_eq!(jump_rate(&p, 1, &nu, &[n - 1]).unwrap(), (&p.w + s(n)) * (&p.w2 + s(n)));
        assert!(jump_rate(&p, 2, &sig(&[1, 1]), &[1, 2]).unwrap().is_zero());
        assert!(jump_rate(&p, 2, &sig(&[1, 1]), &[3, 1]).is_err());
    }

    #[test]
    fn main_identity_small_cases() {
        for p in sample_params() {
            assert!(verify_main_identity(&p, &sig(&[0]), &win(-3, 3)).unwrap().holds);
            assert!(verify_main_identity(&p, &sig(&[1, 0]), &win(-4, 4)).unwrap().holds);
            assert!(verify_main_identity(&p, &sig(&[1, 0, -1]), &win(-5, 5)).unwrap().holds);
        }
        let bad = verify_main_identity_with(&sample_params()[0], &sig(&[1, 0]), &win(-4, 4), &Scalar::one()).unwrap();
        assert!(!bad.holds && !bad.discrepancies.is_empty());
        assert!(verify_main_identity(&sample_params()[0], &sig(&[1, 0]), &win(-1, 1)).is_err());
    }

    #[test]
    fn closed_form_matches_apply_d() {
        let w = win(-3, 3);
        for p in sample_params() {
            let d = apply_d(&p, &RingElement::phi(&[1, 0]), &w).unwrap();
            assert_eq!(degree2_closed_form(&p, 1, 0, &w).unwrap(), d);
        }
        assert!(degree2_closed_form(&sample_params()[0], 0, 1, &w).is_err());
    }

    #[test]
    fn mirror_component_matches_sigma_route() {
        let w = win(-4, 4);
        for p in sample_params() {
            let a = apply_a_to_phi(&p, &RingElement::phi(&[1, -1]), &w).unwrap();
            assert_eq!(graded_part(&a, 0, -1), closed_form_minus(&p, 1, -1, &w));
            assert_eq!(graded_part(&a, 0, 1), closed_form_plus(&p, 1, -1, &w));
            assert_eq!(graded_part(&a, 0, 0), closed_form_zero(&p, 1, -1, &w));
        }
    }

    #[test]
    fn commutation_examples() {
        let w = win(-4, 4);
        for p in sample_params() {
            assert!(verify_phi_commutation(&p, &RingElement::one(Basis::Phi), &w).unwrap().holds());
            assert!(verify_phi_commutation(&p, &RingElement::phi(&[0]), &w).unwrap().holds());
            assert!(verify_phi_commutation(&p, &RingElement::sigma(&sig(&[1, 0])), &w).unwrap().holds());
        }
        assert!(verify_phi_commutation(&sample_params()[0], &RingElement::phi(&[3]), &w).is_err());
    }
}
