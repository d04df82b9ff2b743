//! Hahn and Jacobi polynomials in one and several variables, their operators, the
//! `φ ↔ t` change of variables and the Hahn form of the link `Λ^∞_N`.

mod link;
mod poly;

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::scalar::{int, Rational};

pub use link::*;
pub use poly::{MPoly, Poly1, SymPolyJson, SymPolyM, SymTermJson};

/// Parameters `a, b > −1`, plus `M` for the Hahn family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HahnJacobiParams {
    pub a: Rational,
    pub b: Rational,
    pub big_m: Option<u64>,
}

impl HahnJacobiParams {
    pub fn jacobi(a: Rational, b: Rational) -> Result<Self> {
        let p = Self { a, b, big_m: None };
        p.validate()?;
        Ok(p)
    }

    pub fn hahn(a: Rational, b: Rational, big_m: u64) -> Result<Self> {
        if big_m == 0 {
            return domain("M must be positive");
        }
        let p = Self { a, b, big_m: Some(big_m) };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let m1 = -Rational::one();
        if self.a <= m1 || self.b <= m1 {
            return domain("a and b must exceed -1");
        }
        Ok(())
    }

    pub fn is_hahn(&self) -> bool {
        self.big_m.is_some()
    }

    /// Eigenvalue `c(n) = −n(n + a + b + 1)` shared by both families.
    pub fn eigenvalue(&self, n: u64) -> Rational {
        let n = int(n as i64);
        -(&n * (&n + &self.a + &self.b + Rational::one()))
    }

    /// `const_{a,b,m} = Σ_{n<m} n(n + a + b + 1)`.
    pub fn vandermonde_constant(&self, m: usize) -> Rational {
        (0..m as u64).map(|n| -self.eigenvalue(n)).sum()
    }

    /// `Σ_i [c(ν_i + m − i) − c(m − i)]`.
    pub fn multivariate_eigenvalue(&self, nu: &[u32], m: usize) -> Rational {
        (0..m)
            .map(|i| {
                let nui = nu.get(i).copied().unwrap_or(0) as u64;
                let base = (m - 1 - i) as u64;
                self.eigenvalue(nui + base) - self.eigenvalue(base)
            })
            .sum()
    }
}

fn pochhammer(x: &Rational, p: usize) -> Rational {
    (0..p).fold(Rational::one(), |acc, i| acc * (x + int(i as i64)))
}

fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// `H_n(y) = ₃F₂(−n, n+a+b+1, −y; b+1, −M; 1)`.
pub fn hahn_poly(n: u64, params: &HahnJacobiParams) -> Result<Poly1> {
    let Some(big_m) = params.big_m else {
        return domain("Hahn polynomials need M");
    };
    if n > big_m {
        return domain(format!("degree {n} exceeds M = {big_m}"));
    }
    let (a, b) = (&params.a, &params.b);
    let top = int(n as i64) + a + b + Rational::one();
    let mut out = Poly1::zero();
    // (−y)_p as a polynomial in y
    let mut falling = Poly1::constant(Rational::one());
    for p in 0..=n as usize {
        let c = pochhammer(&int(-(n as i64)), p) * pochhammer(&top, p)
            / (pochhammer(&(b + Rational::one()), p) * pochhammer(&int(-(big_m as i64)), p) * factorial(p));
        out = &out + &falling.scale(&c);
        falling = &falling * &Poly1::new(vec![int(p as i64), int(-1)]);
    }
    Ok(out)
}

/// `J_n(t) = ₂F₁(−n, n+a+b+1; b+1; t)`, normalized by `J_n(0) = 1`.
pub fn jacobi_poly(n: u64, a: &Rational, b: &Rational) -> Poly1 {
    let top = int(n as i64) + a + b + Rational::one();
    Poly1::new(
        (0..=n as usize)
            .map(|p| {
                pochhammer(&int(-(n as i64)), p) * pochhammer(&top, p)
                    / (pochhammer(&(b + Rational::one()), p) * factorial(p))
            })
            .collect(),
    )
}

/// The Hahn difference operator or the Jacobi differential operator in variable `i` of `f`.
pub fn one_var_operator_in(params: &HahnJacobiParams, f: &MPoly, i: usize) -> MPoly {
    let n = f.nvars();
    let y = MPoly::var(n, i);
    let c = |q: Rational| MPoly::constant(n, q);
    let (a, b) = (&params.a, &params.b);
    match params.big_m {
        Some(big_m) => {
            let m = int(big_m as i64);
            let up = &(&y + &c(b + Rational::one())) * &(&c(m.clone()) - &y);
            let down = &y * &(&c(&m + a + Rational::one()) - &y);
            let fwd = &f.shift(i, &Rational::one()) - f;
            let bwd = &f.shift(i, &-Rational::one()) - f;
            &(&up * &fwd) + &(&down * &bwd)
        }
        None => {
            let d1 = f.derivative(i);
            let d2 = d1.derivative(i);
            let t1mt = &y * &(&c(Rational::one()) - &y);
            let drift = &c(b + Rational::one()) - &y.scale(&(a + b + int(2)));
            &(&t1mt * &d2) + &(&drift * &d1)
        }
    }
}

pub fn apply_one_var_operator(params: &HahnJacobiParams, p: &Poly1) -> Poly1 {
    let f = MPoly::from_poly1(1, 0, p);
    let g = one_var_operator_in(params, &f, 0);
    let mut coeffs = vec![Rational::zero(); g.total_degree() as usize + 1];
    for (e, c) in g.terms() {
        coeffs[e[0] as usize] = c.clone();
    }
    Poly1::new(coeffs)
}

/// `(1/V_m) ∘ Σ_i (operator in variable i) ∘ V_m + const_{a,b,m}`.
pub fn apply_multivariate_operator(params: &HahnJacobiParams, f: &SymPolyM) -> Result<SymPolyM> {
    let m = f.m();
    let v = MPoly::vandermonde(m);
    let g = &v * f.poly();
    let mut h = MPoly::zero(m);
    for i in 0..m {
        h = &h + &one_var_operator_in(params, &g, i);
    }
    let q = h.div_vandermonde().expect("an antisymmetric polynomial is divisible by the Vandermonde");
    SymPolyM::new(&q + &f.poly().scale(&params.vandermonde_constant(m)))
}

/// The Jacobi operator in the explicit form with the `2t_i(1−t_i)/(t_i−t_j)` drift terms,
/// evaluated after clearing the denominators with `V_m`.
pub fn jacobi_explicit_form(a: &Rational, b: &Rational, f: &SymPolyM) -> Result<SymPolyM> {
    let m = f.m();
    let v = MPoly::vandermonde(m);
    let one = MPoly::one(m);
    let mut acc = MPoly::zero(m);
    for i in 0..m {
        let t = MPoly::var(m, i);
        let t1mt = &t * &(&one - &t);
        let d1 = f.poly().derivative(i);
        let d2 = d1.derivative(i);
        let drift = &MPoly::constant(m, b + Rational::one()) - &t.scale(&(a + b + int(2)));
        acc = &acc + &(&v * &(&(&t1mt * &d2) + &(&drift * &d1)));
        for j in (0..m).filter(|&j| j != i) {
            let v_over = if i < j { v.div_by_difference(i, j)? } else { -&v.div_by_difference(j, i)? };
            acc = &acc + &(&(&t1mt * &d1).scale(&int(2)) * &v_over);
        }
    }
    SymPolyM::new(acc.div_vandermonde()?)
}

/// `det[P_{n_j}(x_i)] / V_m` with `n_j = ν_j + m − j`.
pub fn multivariate_poly(params: &HahnJacobiParams, nu: &[u32], m: usize) -> Result<SymPolyM> {
    if nu.len() > m || nu.windows(2).any(|w| w[0] < w[1]) {
        return domain(format!("{nu:?} is not a partition with at most {m} parts"));
    }
    let ns: Vec<u64> = (0..m).map(|j| nu.get(j).copied().unwrap_or(0) as u64 + (m - 1 - j) as u64).collect();
    let polys: Vec<Poly1> = ns
        .iter()
        .map(|&n| match params.big_m {
            Some(_) => hahn_poly(n, params),
            None => Ok(jacobi_poly(n, &params.a, &params.b)),
        })
        .collect::<Result<_>>()?;
    let entries: Vec<Vec<MPoly>> = (0..m).map(|i| polys.iter().map(|p| MPoly::from_poly1(m, i, p)).collect()).collect();
    let det = MPoly::det(&entries, m);
    SymPolyM::new(det.div_vandermonde()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn pairs() -> Vec<(Rational, Rational)> {
        vec![
            (int(0), int(0)),
            (rat(1, 2), rat(-1, 3)),
            (int(2), int(1)),
            (rat(-2, 3), rat(5, 4)),
            (rat(7, 3), rat(-1, 2)),
        ]
    }

    #[test]
    fn first_polynomials() {
        for (a, b) in pairs() {
            let j1 = jacobi_poly(1, &a, &b);
            let want = Poly1::new(vec![int(1), -(&a + &b + int(2)) / (&b + int(1))]);
            assert_eq!(j1, want);
            assert_eq!(jacobi_poly(0, &a, &b), Poly1::constant(int(1)));
            for big_m in 1..5u64 {
                let p = HahnJacobiParams::hahn(a.clone(), b.clone(), big_m).unwrap();
                let h1 = hahn_poly(1, &p).unwrap();
                let want = Poly1::new(vec![int(1), -(&a + &b + int(2)) / ((&b + int(1)) * int(big_m as i64))]);
                assert_eq!(h1, want);
                assert!(hahn_poly(big_m + 1, &p).is_err());
            }
        }
        assert_eq!(jacobi_poly(1, &int(0), &int(0)).display_in("t"), "1 - 2t");
    }

    #[test]
    fn eigenrelations() {
        for (a, b) in pairs() {
            let jp = HahnJacobiParams::jacobi(a.clone(), b.clone()).unwrap();
            for n in 0..=8u64 {
                let j = jacobi_poly(n, &a, &b);
                assert_eq!(apply_one_var_operator(&jp, &j), j.scale(&jp.eigenvalue(n)));
            }
            for big_m in [3u64, 8] {
                let hp = HahnJacobiParams::hahn(a.clone(), b.clone(), big_m).unwrap();
                for n in 0..=big_m {
                    let h = hahn_poly(n, &hp).unwrap();
                    assert_eq!(h.eval(&int(0)), int(1));
                    assert_eq!(apply_one_var_operator(&hp, &h), h.scale(&hp.eigenvalue(n)));
                }
            }
        }
    }

    #[test]
    fn leading_terms_of_operators() {
        let (a, b) = (rat(1, 3), rat(3, 2));
        for params in
            [HahnJacobiParams::jacobi(a.clone(), b.clone()).unwrap(), HahnJacobiParams::hahn(a, b, 6).unwrap()]
        {
            assert!(apply_one_var_operator(&params, &Poly1::constant(rat(5, 2))).is_zero());
            for n in 1..6u64 {
                let r = apply_one_var_operator(&params, &Poly1::monomial(n as usize));
                assert_eq!(r.degree(), Some(n as usize));
                assert_eq!(r.leading_coefficient(), params.eigenvalue(n));
            }
        }
    }

    #[test]
    fn binomial_transform_gives_jacobi() {
        for (a, b) in pairs() {
            for big_m in 1..=8u64 {
                let hp = HahnJacobiParams::hahn(a.clone(), b.clone(), big_m).unwrap();
                for n in 0..=big_m {
                    let h = hahn_poly(n, &hp).unwrap();
                    assert_eq!(binomial_transform(&h, big_m), jacobi_poly(n, &a, &b));
                }
            }
        }
    }

    #[test]
    fn multivariate_basics() {
        let (a, b) = (rat(1, 2), rat(2, 3));
        let jp = HahnJacobiParams::jacobi(a.clone(), b.clone()).unwrap();
        let hp = HahnJacobiParams::hahn(a.clone(), b.clone(), 5).unwrap();
        for params in [&jp, &hp] {
            for m in 1..=3usize {
                let lc: Rational = (0..m as u64)
                    .map(|n| match params.big_m {
                        Some(_) => hahn_poly(n, params).unwrap().leading_coefficient(),
                        None => jacobi_poly(n, &a, &b).leading_coefficient(),
                    })
                    .product();
                assert_eq!(multivariate_poly(params, &[], m).unwrap(), SymPolyM::constant(m, lc));
                assert!(apply_multivariate_operator(params, &SymPolyM::constant(m, int(3))).unwrap().is_zero());
            }
            for nu in [vec![1], vec![2, 1], vec![3, 1]] {
                let m = 2;
                let f = multivariate_poly(params, &nu, m).unwrap();
                let g = apply_multivariate_operator(params, &f).unwrap();
                assert_eq!(g, f.scale(&params.multivariate_eigenvalue(&nu, m)));
            }
        }
        let f = multivariate_poly(&jp, &[2, 1, 1], 3).unwrap();
        assert_eq!(apply_multivariate_operator(&jp, &f).unwrap(), f.scale(&jp.multivariate_eigenvalue(&[2, 1, 1], 3)));
        let single = multivariate_poly(&jp, &[3], 1).unwrap();
        assert_eq!(single.into_poly(), MPoly::from_poly1(1, 0, &jacobi_poly(3, &a, &b)));
        assert!(multivariate_poly(&hp, &[5], 2).is_err());
    }

    #[test]
    fn explicit_jacobi_form_agrees() {
        let (a, b) = (rat(-1, 2), rat(4, 3));
        let jp = HahnJacobiParams::jacobi(a.clone(), b.clone()).unwrap();
        for m in 2..=3usize {
            for kappa in [vec![1], vec![2, 1], vec![3], vec![2, 2, 1]] {
                if kappa.len() > m {
                    continue;
                }
                let f = SymPolyM::monomial(m, &kappa).unwrap();
                assert_eq!(jacobi_explicit_form(&a, &b, &f).unwrap(), apply_multivariate_operator(&jp, &f).unwrap());
            }
        }
    }
}
