//! Identity sweeps behind `urep verify`. Each suite expands into independent instances that
//! run on the rayon pool and are collected into a [`Report`].

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::boundary::{link_infinity, phi_hat_table, point_from_t, BoundaryPoint, Mode, Value};
use crate::error::{usage, Error, Result};
use crate::markov::{intertwining_row, link_row};
use crate::operators::{
    apply_a_to_phi, apply_d, closed_form_minus, column_sum_a, degree2_closed_form, diagonal_q, diagonal_q_closed_form,
    graded_part, sum_b, verify_main_identity_with, Comparison,
};
use crate::orthopoly::{
    apply_multivariate_operator, apply_one_var_operator, binomial_transform, hahn_link_row, hahn_poly,
    hahn_rate_mismatches, jacobi_explicit_form, jacobi_poly, link_constant, link_ratios, multivariate_poly,
    transported_a, triple_commutator, verify_hahn_intertwining, verify_jacobi_operator, verify_link_hahn_operator,
    verify_quotient_operator, HahnJacobiParams, PolyComparison, SymPolyJson, SymPolyM,
};
use crate::params::Params;
use crate::report::{Outcome, Report};
use crate::ring::{lr_coefficient, multiply, norm, phi_to_sigma_window, sigma_to_phi, Basis, RingElement, Window};
use crate::scalar::{int, rat, Rational, Scalar};
use crate::signature::{complement_in_rectangle, signatures_in_box, vandermonde_int, weyl_dimension, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    MainTheorem,
    Intertwine,
    ClosedForms,
    Orthopoly,
    Ring,
    Boundary,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::MainTheorem, Suite::Intertwine, Suite::ClosedForms, Suite::Orthopoly, Suite::Ring, Suite::Boundary];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainTheorem => "main-theorem",
            Suite::Intertwine => "intertwine",
            Suite::ClosedForms => "section8",
            Suite::Orthopoly => "section9",
            Suite::Ring => "ring",
            Suite::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Usage(format!("unknown suite {s:?}")))
    }
}

/// Overrides for a suite run; `None` keeps the suite's defaults.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub params: Option<Vec<Params>>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub window: Option<Window>,
    pub mode: Mode,
    pub seed: u64,
    /// Added to every upward weight of `A` in the main-theorem suite.
    pub fault: Option<Scalar>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { params: None, n: None, m: None, window: None, mode: Mode::exact(), seed: 0, fault: None }
    }
}

/// Five real quadruples, admissible and not.
pub fn rational_quadruples() -> Vec<Params> {
    vec![
        Params::ratios([(1, 2), (7, 10), (1, 2), (7, 10)]),
        Params::ratios([(1, 3), (-2, 5), (3, 4), (1, 6)]),
        Params::ratios([(2, 1), (5, 2), (1, 1), (3, 2)]),
        Params::ratios([(-1, 2), (3, 7), (2, 3), (-5, 4)]),
        Params::ratios([(0, 1), (0, 1), (0, 1), (0, 1)]),
    ]
}

/// Two quadruples with Gaussian-rational entries.
pub fn gaussian_quadruples() -> Vec<Params> {
    vec![
        Params::parse("1/2+i", "1/2-i", "1/3+2/3 i", "1/3-2/3 i").expect("literal"),
        Params::parse("1+1/2 i", "2/3", "-i", "1/5").expect("literal"),
    ]
}

/// `(a, b)` pairs used by the orthogonal-polynomial checks.
pub fn ab_pairs() -> Vec<(Rational, Rational)> {
    vec![(int(0), int(0)), (rat(1, 2), rat(-1, 3)), (int(2), int(1)), (rat(-2, 3), rat(5, 4)), (rat(7, 3), rat(-1, 2))]
}

pub fn params_json(p: &Params) -> Json {
    json!({"z": p.z.to_string(), "z_prime": p.z2.to_string(), "w": p.w.to_string(), "w_prime": p.w2.to_string()})
}

type Check = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Task {
    id: String,
    identity: &'static str,
    params: Json,
    check: Check,
}

fn task(
    id: String,
    identity: &'static str,
    params: Json,
    check: impl Fn() -> Result<Outcome> + Send + Sync + 'static,
) -> Task {
    Task { id, identity, params, check: Box::new(check) }
}

fn run(name: &str, tasks: Vec<Task>) -> Report {
    let instances =
        tasks.into_par_iter().map(|t| Outcome::from((t.check)()).into_instance(t.id, t.identity, t.params)).collect();
    Report::new(name, instances)
}

fn comparison_outcome(c: Comparison) -> Outcome {
    match c.discrepancies.first() {
        None => Outcome::Pass(None),
        Some(d) => Outcome::Fail {
            detail: format!("{} differing coefficients", c.discrepancies.len()),
            first_discrepancy: serde_json::to_value(d).ok(),
        },
    }
}

fn poly_outcome(c: PolyComparison) -> Outcome {
    if c.holds() {
        Outcome::Pass(None)
    } else {
        Outcome::Fail {
            detail: "polynomials differ".into(),
            first_discrepancy: Some(json!({"lhs": SymPolyJson::from(&c.lhs), "rhs": SymPolyJson::from(&c.rhs)})),
        }
    }
}

fn sig_json(s: &Signature) -> Json {
    json!(s.parts())
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Report> {
    if cfg.fault.is_some() && suite != Suite::MainTheorem {
        return usage("fault injection is only wired into the main-theorem suite");
    }
    let tasks = match suite {
        Suite::MainTheorem => main_theorem_tasks(cfg)?,
        Suite::Intertwine => intertwine_tasks(cfg)?,
        Suite::ClosedForms => closed_form_tasks(cfg)?,
        Suite::Orthopoly => orthopoly_tasks(cfg)?,
        Suite::Ring => ring_tasks(cfg)?,
        Suite::Boundary => boundary_tasks(cfg)?,
    };
    Ok(run(suite.name(), tasks))
}

fn main_theorem_tasks(cfg: &SuiteConfig) -> Result<Vec<Task>> {
    let params = cfg.params.clone().unwrap_or_else(|| [rational_quadruples(), gaussian_quadruples()].concat());
    let n_max = cfg.n.unwrap_or(3);
    let w = cfg.window.unwrap_or(Window { lo: -5, hi: 5 });
    let (lo, hi) = (-2, 2);
    let need = n_max as i64;
    if w.lo > lo - need || w.hi < hi + need {
        return usage(format!("window {w} must contain [{},{}] for N = {n_max}", lo - need, hi + need));
    }
    let offset = cfg.fault.clone().unwrap_or_else(Scalar::zero);
    let mut tasks = vec![];
    for (i, p) in params.iter().enumerate() {
        for n in 1..=n_max {
            for mu in signatures_in_box(n, lo, hi) {
                let (p, off) = (p.clone(), offset.clone());
                let id = format!("p{i}/N{n}/{mu}");
                tasks.push(task(id, "D sigma_mu = A sigma_mu", params_json(&p), move || {
                    Ok(comparison_outcome(verify_main_identity_with(&p, &mu, &w, &off)?))
                }));
            }
        }
    }
    Ok(tasks)
}

fn intertwine_tasks(cfg: &SuiteConfig) -> Result<Vec<Task>> {
    let params = cfg.params.clone().unwrap_or_else(rational_quadruples);
    let n_max = cfg.n.unwrap_or(3);
    let w = cfg.window.unwrap_or(Window { lo: -3, hi: 3 });
    let mut tasks = vec![];
    for (i, p) in params.iter().enumerate() {
        for n in 1..=n_max {
            for lambda in signatures_in_box(n + 1, w.lo, w.hi) {
                let p = p.clone();
                let id = format!("p{i}/N{n}/{lambda}");
                tasks.push(task(id, "Q_{N+1} Lambda = Lambda Q_N", params_json(&p), move || {
                    let (lhs, rhs) = intertwining_row(&p, n, &lambda)?;
                    let keys: std::collections::BTreeSet<&Signature> = lhs.keys().chain(rhs.keys()).collect();
                    for mu in keys {
                        let (a, b) =
                            (lhs.get(mu).cloned().unwrap_or_default(), rhs.get(mu).cloned().unwrap_or_default());
                        if a != b {
                            return Ok(Outcome::Fail {
                                detail: format!("entry ({lambda}, {mu}) differs"),
                                first_discrepancy: Some(
                                    json!({"mu": sig_json(mu), "lhs": a.to_string(), "rhs": b.to_string()}),
                                ),
                            });
                        }
                    }
                    Ok(Outcome::Pass(None))
                }));
            }
        }
        for n in 1..=n_max {
            let p = p.clone();
            tasks.push(task(format!("p{i}/N{n}/diagonal"), "q(nu,nu) closed form", params_json(&p), move || {
                for nu in signatures_in_box(n, w.lo, w.hi) {
                    if diagonal_q(&p, &nu) != diagonal_q_closed_form(&p, &nu) {
                        return Ok(Outcome::Fail {
                            detail: format!("diagonal differs at {nu}"),
                            first_discrepancy: Some(sig_json(&nu)),
                        });
                    }
                }
                Ok(Outcome::Pass(None))
            }));
        }
    }
    Ok(tasks)
}

fn closed_form_tasks(cfg: &SuiteConfig) -> Result<Vec<Task>> {
    let params = cfg.params.clone().unwrap_or_else(rational_quadruples);
    let w = cfg.window.unwrap_or(Window { lo: -6, hi: 6 });
    if w.lo > -3 || w.hi < 3 {
        return usage(format!("window {w} must contain [-3,3]"));
    }
    let mut tasks = vec![];
    for (i, p) in params.iter().enumerate() {
        for k1 in -2..=2i64 {
            for k2 in -2..=k1 {
                let p1 = p.clone();
                tasks.push(task(
                    format!("p{i}/phi({k1},{k2})"),
                    "degree-2 closed form = D",
                    params_json(p),
                    move || {
                        let lhs = degree2_closed_form(&p1, k1, k2, &w)?;
                        let rhs = apply_d(&p1, &RingElement::phi(&[k1, k2]), &w)?;
                        Ok(comparison_outcome(Comparison::of(&lhs, &rhs)))
                    },
                ));
                let p2 = p.clone();
                tasks.push(task(
                    format!("p{i}/phi({k1},{k2})/mirror"),
                    "mirrored lowering component",
                    params_json(p),
                    move || {
                        let lhs = closed_form_minus(&p2, k1, k2, &w);
                        let e = RingElement::phi(&[k1, k2]);
                        let rhs = graded_part(&apply_d(&p2, &e, &w)?, k1 + k2, -1);
                        let c = Comparison::of(&lhs, &rhs);
                        if !c.holds {
                            return Ok(comparison_outcome(c));
                        }
                        let sigma_route = graded_part(&apply_a_to_phi(&p2, &e, &w)?, k1 + k2, -1);
                        Ok(comparison_outcome(Comparison::of(&lhs, &sigma_route)))
                    },
                ));
            }
        }
        let p3 = p.clone();
        tasks.push(task(format!("p{i}/sum_B"), "sum_n B_n = 0", params_json(p), move || {
            let s = sum_b(&p3, &Window { lo: -8, hi: 8 });
            Ok(Outcome::from_bool(s.is_zero(), format!("{} surviving terms", s.len())))
        }));
    }
    for n in -2..=2i64 {
        tasks.push(task(format!("column/{n}"), "column sums of A vanish", Json::Null, move || {
            let s = column_sum_a(n, &Window { lo: -8, hi: 8 });
            Ok(Outcome::from_bool(s.is_zero(), format!("{} surviving terms", s.len())))
        }));
    }
    Ok(tasks)
}

fn vandermonde_complement_holds(m: usize, n: usize) -> Result<bool> {
    let big_m = (n + m - 1) as i64;
    let fact = |x: i64| (1..=x).fold(Rational::one(), |acc, i| acc * int(i));
    let superfactorial: Rational = (0..=big_m).map(fact).product();
    for lambda in signatures_in_box(n, 0, m as i64) {
        let c = complement_in_rectangle(&lambda, m, n)?;
        let ks = c.k.values();
        let lhs = vandermonde_int(c.l.values()) * ks.iter().map(|&k| fact(k) * fact(big_m - k)).product::<Rational>();
        if lhs != &superfactorial * vandermonde_int(ks) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn partitions_up_to(total: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn go(rem: u32, max_part: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if parts == 0 {
            return;
        }
        for p in (1..=max_part.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(total, total, max_parts, &mut vec![], &mut out);
    out
}

fn ab_json(a: &Rational, b: &Rational) -> Json {
    json!({"a": a.to_string(), "b": b.to_string()})
}

fn t_points(m: usize) -> Vec<Vec<Rational>> {
    match m {
        1 => vec![vec![rat(3, 4)], vec![rat(1, 3)], vec![rat(1, 7)]],
        _ => vec![vec![rat(3, 4), rat(1, 5)], vec![rat(1, 2), rat(1, 3)], vec![rat(9, 10), rat(1, 10)]],
    }
}

fn orthopoly_tasks(_cfg: &SuiteConfig) -> Result<Vec<Task>> {
    let mut tasks = vec![];
    for m in 1..=4usize {
        for n in 1..=4usize {
            tasks.push(task(
                format!("vandermonde-complement/m{m}/N{n}"),
                "V(L) prod k!(M-k)! = 0!...M! V(K)",
                json!({"m": m, "N": n}),
                move || Ok(Outcome::from_bool(vandermonde_complement_holds(m, n)?, "Vandermonde identity fails")),
            ));
        }
    }
    for (a, b) in ab_pairs() {
        for big_m in 1..=8u64 {
            let (a, b) = (a.clone(), b.clone());
            tasks.push(task(
                format!("binomial-transform/M{big_m}"),
                "binomial transform of H_n is J_n",
                ab_json(&a, &b),
                move || {
                    let hp = HahnJacobiParams::hahn(a.clone(), b.clone(), big_m)?;
                    for n in 0..=big_m {
                        if binomial_transform(&hahn_poly(n, &hp)?, big_m) != jacobi_poly(n, &a, &b) {
                            return Ok(Outcome::from_bool(false, format!("n = {n}")));
                        }
                    }
                    Ok(Outcome::Pass(None))
                },
            ));
        }
        let (a1, b1) = (a.clone(), b.clone());
        tasks.push(task("eigenrelations".into(), "Hahn and Jacobi eigenrelations", ab_json(&a, &b), move || {
            let jp = HahnJacobiParams::jacobi(a1.clone(), b1.clone())?;
            let hp = HahnJacobiParams::hahn(a1.clone(), b1.clone(), 8)?;
            for n in 0..=8u64 {
                let j = jacobi_poly(n, &a1, &b1);
                let h = hahn_poly(n, &hp)?;
                if apply_one_var_operator(&jp, &j) != j.scale(&jp.eigenvalue(n))
                    || apply_one_var_operator(&hp, &h) != h.scale(&hp.eigenvalue(n))
                {
                    return Ok(Outcome::from_bool(false, format!("n = {n}")));
                }
            }
            Ok(Outcome::Pass(None))
        }));
        for m in 1..=3usize {
            for n in 1..=3usize {
                let (a2, b2) = (a.clone(), b.clone());
                tasks.push(task(
                    format!("hahn-rates/m{m}/N{n}"),
                    "generator rates = Hahn rates on K",
                    ab_json(&a, &b),
                    move || {
                        let bad = hahn_rate_mismatches(m, n, &a2, &b2)?;
                        if let Some((l, mu)) = bad.first() {
                            return Ok(Outcome::Fail {
                                detail: format!("{} mismatching entries", bad.len()),
                                first_discrepancy: Some(json!({"lambda": sig_json(l), "mu": sig_json(mu)})),
                            });
                        }
                        for kappa in partitions_up_to(3, m) {
                            let f = SymPolyM::monomial(m, &kappa)?;
                            if !verify_link_hahn_operator(m, n, &a2, &b2, &f)? {
                                return Ok(Outcome::from_bool(false, format!("operator mismatch on m_{kappa:?}")));
                            }
                        }
                        Ok(Outcome::Pass(None))
                    },
                ));
            }
        }
    }
    let (a, b) = (rat(1, 2), rat(2, 3));
    for m in 1..=2usize {
        for n in 1..=4usize {
            for nu in
                partitions_up_to((n * m) as u32, m).into_iter().filter(|nu| nu.first().is_none_or(|&x| x as usize <= n))
            {
                let (a1, b1, nu1) = (a.clone(), b.clone(), nu.clone());
                let id = format!("link-constant/m{m}/N{n}/{nu:?}");
                tasks.push(task(id, "Lambda H_nu = c J_nu, c independent of t", ab_json(&a, &b), move || {
                    let r = link_ratios(&a1, &b1, &nu1, m, n, &t_points(m))?;
                    let r: Vec<Rational> = r.into_iter().flatten().collect();
                    if r.len() < 3 {
                        return Ok(Outcome::from_bool(false, "J_nu vanished at a test point"));
                    }
                    let ok = r.iter().all(|x| *x == r[0]) && !r[0].is_zero();
                    let note = format!("constant {} (const_m,M = {})", r[0], link_constant(m, n));
                    Ok(if ok { Outcome::Pass(Some(note)) } else { Outcome::from_bool(false, note) })
                }));
                let (a2, b2) = (a.clone(), b.clone());
                tasks.push(task(
                    format!("jacobi-link/m{m}/N{n}/{nu:?}"),
                    "Jacobi Lambda = Lambda Hahn",
                    ab_json(&a, &b),
                    move || {
                        let hp = HahnJacobiParams::hahn(a2.clone(), b2.clone(), (n + m - 1) as u64)?;
                        let f = multivariate_poly(&hp, &nu, m)?;
                        Ok(poly_outcome(verify_hahn_intertwining(m, n, &a2, &b2, &f)?))
                    },
                ));
            }
        }
    }
    for (a, b) in ab_pairs().into_iter().take(3) {
        for m in 1..=2usize {
            for kappa in partitions_up_to(4, m) {
                let (a1, b1) = (a.clone(), b.clone());
                tasks.push(task(
                    format!("jacobi-operator/m{m}/{kappa:?}"),
                    "A on R(m,0) = m-variate Jacobi",
                    ab_json(&a, &b),
                    move || {
                        let f = SymPolyM::monomial(m, &kappa)?;
                        Ok(poly_outcome(verify_jacobi_operator(m, &a1, &b1, &f)?))
                    },
                ));
            }
        }
        for (k, l) in [(0usize, 1usize), (1, 1), (0, 2), (2, 1), (1, 2)] {
            for kappa in partitions_up_to(2, k + l) {
                let (a1, b1) = (a.clone(), b.clone());
                tasks.push(task(
                    format!("quotient-operator/k{k}/l{l}/{kappa:?}"),
                    "D on R(k,-l) = (k+l)-variate Jacobi",
                    ab_json(&a, &b),
                    move || {
                        let f = SymPolyM::monomial(k + l, &kappa)?;
                        Ok(poly_outcome(verify_quotient_operator(k, l, &a1, &b1, &f)?))
                    },
                ));
            }
        }
    }
    for m in 2..=3usize {
        let (a, b) = (rat(-1, 2), rat(4, 3));
        tasks.push(task(
            format!("explicit-form/m{m}"),
            "conjugated form = explicit form",
            ab_json(&a, &b),
            move || {
                let jp = HahnJacobiParams::jacobi(a.clone(), b.clone())?;
                for kappa in partitions_up_to(3, m) {
                    let f = SymPolyM::monomial(m, &kappa)?;
                    let c = PolyComparison {
                        lhs: apply_multivariate_operator(&jp, &f)?,
                        rhs: jacobi_explicit_form(&a, &b, &f)?,
                    };
                    if !c.holds() {
                        return Ok(poly_outcome(c));
                    }
                }
                Ok(Outcome::Pass(None))
            },
        ));
    }
    for (k, l) in [(2usize, 0usize), (1, 1)] {
        let (a, b) = (rat(2, 3), rat(-1, 4));
        tasks.push(task(
            format!("order-2/k{k}/l{l}"),
            "triple commutator with multiplications vanishes",
            ab_json(&a, &b),
            move || {
                let op = transported_a(k, l, &a, &b)?;
                let m = k + l;
                let x1 = SymPolyM::elementary(m, 1);
                let x2 = SymPolyM::elementary(m, 2);
                let x3 = &SymPolyM::monomial(m, &[2])? + &SymPolyM::constant(m, rat(1, 2));
                for kappa in partitions_up_to(2, m) {
                    let f = SymPolyM::monomial(m, &kappa)?;
                    if !triple_commutator(&op, [&x1, &x2, &x3], &f)?.is_zero() {
                        return Ok(Outcome::from_bool(false, format!("nonzero on m_{kappa:?}")));
                    }
                }
                Ok(Outcome::Pass(None))
            },
        ));
    }
    Ok(tasks)
}

fn ring_tasks(cfg: &SuiteConfig) -> Result<Vec<Task>> {
    let n_max = cfg.n.unwrap_or(3);
    let w = cfg.window.unwrap_or(Window { lo: -5, hi: 5 });
    let need = n_max as i64;
    if w.lo > -2 - need || w.hi < 2 + need {
        return usage(format!("window {w} must contain [{},{}]", -2 - need, 2 + need));
    }
    let mut tasks = vec![];
    for n in 1..=n_max {
        for lam in signatures_in_box(n, -2, 2) {
            let id = format!("round-trip/{lam}");
            tasks.push(task(id, "sigma -> phi -> sigma and phi -> sigma -> phi", Json::Null, move || {
                let s = RingElement::sigma(&lam);
                let back = phi_to_sigma_window(&sigma_to_phi(&lam), &w)?;
                if back != s {
                    return Ok(comparison_outcome(Comparison::of(&back, &s)));
                }
                let f = RingElement::phi(lam.parts());
                let back = phi_to_sigma_window(&f, &w)?.to_phi().truncate(&w);
                Ok(comparison_outcome(Comparison::of(&back, &f)))
            }));
        }
    }
    for total in 2..=4usize {
        for m in 1..total {
            let n = total - m;
            tasks.push(task(
                format!("dimension/M{m}/N{n}"),
                "sum c Dim Dim = Dim",
                json!({"M": m, "N": n}),
                move || {
                    let mus = signatures_in_box(m, -2, 2);
                    let nus = signatures_in_box(n, -2, 2);
                    for lam in signatures_in_box(m + n, -2, 2) {
                        let mut s = num_bigint::BigInt::zero();
                        for mu in &mus {
                            for nu in nus.iter().filter(|nu| nu.sum() + mu.sum() == lam.sum()) {
                                let c = lr_coefficient(&lam, mu, nu)?;
                                if c > 0 {
                                    s += num_bigint::BigInt::from(c) * weyl_dimension(mu) * weyl_dimension(nu);
                                }
                            }
                        }
                        if s != weyl_dimension(&lam) {
                            return Ok(Outcome::Fail {
                                detail: format!("fails at {lam}"),
                                first_discrepancy: Some(sig_json(&lam)),
                            });
                        }
                    }
                    Ok(Outcome::Pass(None))
                },
            ));
        }
    }
    let seed = cfg.seed;
    for k in 0..100u64 {
        tasks.push(task(format!("norm/{k}"), "|ab| <= |a||b|", json!({"seed": seed, "pair": k}), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let a = random_sigma_element(&mut rng);
            let b = random_sigma_element(&mut rng);
            let w = Window { lo: -4, hi: 4 };
            let ab = multiply(&a, &b, Some(&w))?;
            let (na, nb, nab) = (norm(&a)?, norm(&b)?, norm(&ab)?);
            Ok(Outcome::from_bool(nab <= &na * &nb, format!("|ab| = {nab} > {na} * {nb}")))
        }));
    }
    Ok(tasks)
}

pub fn random_sigma_element(rng: &mut impl Rng) -> RingElement {
    let terms = rng.random_range(1..=3);
    let mut e = RingElement::zero(Basis::Sigma);
    for _ in 0..terms {
        let len = rng.random_range(1..=2);
        let parts: Vec<i64> = (0..len).map(|_| rng.random_range(-2..=2)).collect();
        let c = rat(rng.random_range(-5..=5), rng.random_range(1..=4));
        e.add_term(Signature::from_unsorted(parts), Scalar::real(c));
    }
    e
}

/// β-only points of `Ω(n₊, n₋)` for `n₊, n₋ ≤ 2`.
pub fn simplex_points() -> Vec<BoundaryPoint> {
    let sets = [
        (vec![rat(2, 5), rat(1, 7)], vec![rat(1, 3), rat(1, 4)]),
        (vec![rat(3, 4), rat(3, 4)], vec![rat(1, 4), rat(1, 8)]),
    ];
    let mut out = vec![];
    for (bp, bm) in sets {
        for np in 0..=2 {
            for nm in 0..=2 {
                out.push(BoundaryPoint::simplex(bp[..np].to_vec(), bm[..nm].to_vec()).expect("valid simplex point"));
            }
        }
    }
    out
}

fn close(a: &Value, b: &Value, extra_tol: f64) -> bool {
    match (a.exact(), b.exact()) {
        (Some(x), Some(y)) => x == y,
        _ => (a.to_f64() - b.to_f64()).abs() <= a.tol() + b.tol() + extra_tol,
    }
}

fn sum_values(vs: impl IntoIterator<Item = Value>) -> Value {
    let mut exact = Some(Rational::zero());
    let (mut f, mut tol) = (0.0, 0.0);
    for v in vs {
        f += v.to_f64();
        tol += v.tol();
        exact = match (exact, v.exact()) {
            (Some(s), Some(x)) => Some(s + x),
            _ => None,
        };
    }
    match exact {
        Some(s) => Value::Exact(s),
        None => Value::Approx { value: f, tol },
    }
}

fn point_json(p: &BoundaryPoint) -> Json {
    serde_json::to_value(crate::boundary::BoundaryPointJson::from(p)).unwrap_or(Json::Null)
}

fn boundary_tasks(cfg: &SuiteConfig) -> Result<Vec<Task>> {
    let n_max = cfg.n.unwrap_or(3);
    let mode = cfg.mode;
    let slack = match mode {
        Mode::Exact { .. } => 0.0,
        Mode::Float { .. } => 1e-12,
    };
    let mut tasks = vec![];
    for (i, omega) in simplex_points().into_iter().enumerate() {
        let (np, nm) = (omega.beta_plus.len() as i64, omega.beta_minus.len() as i64);
        let o1 = omega.clone();
        tasks.push(task(format!("omega{i}/sum-phi"), "sum_n phi_hat_n = 1", point_json(&omega), move || {
            let tab = phi_hat_table(&o1, -nm - 2, np + 2, mode)?;
            let outside_zero =
                tab.iter().filter(|(n, _)| **n < -nm || **n > np).all(|(_, v)| v.to_f64().abs() <= v.tol() + slack);
            let s = sum_values(tab.into_values());
            Ok(Outcome::from_bool(
                outside_zero && close(&s, &Value::Exact(Rational::one()), slack),
                format!("sum = {s}"),
            ))
        }));
        for n in 1..=n_max {
            let o2 = omega.clone();
            let (lo, hi) = (-nm - n as i64 - 2, np + n as i64 + 2);
            tasks.push(task(
                format!("omega{i}/N{n}/normalization"),
                "sum_lambda Lambda^inf_N = 1",
                point_json(&omega),
                move || {
                    let vals: Vec<Value> = signatures_in_box(n, -nm, np)
                        .iter()
                        .map(|l| link_infinity(&o2, l, lo, hi, mode))
                        .collect::<Result<_>>()?;
                    let nonneg = vals.iter().all(|v| v.to_f64() >= -(v.tol() + slack));
                    let s = sum_values(vals);
                    Ok(Outcome::from_bool(
                        nonneg && close(&s, &Value::Exact(Rational::one()), slack),
                        format!("sum = {s}"),
                    ))
                },
            ));
            let o3 = omega.clone();
            tasks.push(task(
                format!("omega{i}/N{n}/composition"),
                "Lambda^inf_N = Lambda^inf_{N+1} Lambda^{N+1}_N",
                point_json(&omega),
                move || {
                    let uppers: Vec<(Signature, Value)> = signatures_in_box(n + 1, -nm, np)
                        .into_iter()
                        .map(|l| link_infinity(&o3, &l, lo, hi, mode).map(|v| (l, v)))
                        .collect::<Result<_>>()?;
                    for mu in signatures_in_box(n, -nm, np) {
                        let direct = link_infinity(&o3, &mu, lo, hi, mode)?;
                        let mut terms = vec![];
                        for (l, v) in &uppers {
                            if let Some(x) = link_row(n, l)?.entries.get(&mu) {
                                terms.push(match v {
                                    Value::Exact(q) => Value::Exact(q * x),
                                    Value::Approx { value, tol } => {
                                        let xf = crate::scalar::rational_to_f64(x);
                                        Value::Approx { value: value * xf, tol: tol * xf }
                                    }
                                });
                            }
                        }
                        let composed = sum_values(terms);
                        if !close(&direct, &composed, slack) {
                            return Ok(Outcome::Fail {
                                detail: format!("{direct} vs {composed}"),
                                first_discrepancy: Some(sig_json(&mu)),
                            });
                        }
                    }
                    Ok(Outcome::Pass(None))
                },
            ));
        }
    }
    for ts in [vec![rat(5, 6)], vec![rat(3, 4), rat(1, 5)], vec![rat(2, 3), rat(1, 7)], vec![rat(1, 2), rat(1, 2)]] {
        let m = ts.len();
        for n in 1..=n_max.max(4) {
            let ts = ts.clone();
            let pj = json!({"t": ts.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "N": n});
            tasks.push(task(
                format!("hahn-link-form/m{m}/N{n}/{}", pj["t"]),
                "Hahn form of Lambda^inf = boundary route",
                pj,
                move || {
                    let omega = point_from_t(&ts)?;
                    let (lo, hi) = (-(n as i64) - 2, (m + n + 2) as i64);
                    for lam in signatures_in_box(n, 0, m as i64) {
                        let a = hahn_link_row(&ts, n, &lam)?;
                        let b = link_infinity(&omega, &lam, lo, hi, Mode::exact())?;
                        if b.exact() != Some(&a) {
                            return Ok(Outcome::Fail {
                                detail: format!("{a} vs {b}"),
                                first_discrepancy: Some(sig_json(&lam)),
                            });
                        }
                    }
                    Ok(Outcome::Pass(None))
                },
            ));
        }
    }
    Ok(tasks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn partitions_enumerated() {
        assert_eq!(partitions_up_to(2, 2), vec![vec![], vec![2], vec![1], vec![1, 1]]);
        assert_eq!(partitions_up_to(4, 1).len(), 5);
    }

    #[test]
    fn fault_is_detected() {
        let cfg = SuiteConfig {
            params: Some(vec![rational_quadruples()[0].clone()]),
            n: Some(1),
            fault: Some(Scalar::from_ratio(1, 100)),
            ..SuiteConfig::default()
        };
        let r = run_suite(Suite::MainTheorem, &cfg).unwrap();
        assert!(!r.ok());
        assert!(r.first_failure().unwrap().first_discrepancy.is_some());
        assert!(run_suite(Suite::Ring, &cfg).is_err());
    }
}
