//! Generator matrices on `GT_N`, the canonical links `Λ^{N+1}_N`, their intertwining,
//! and exact jump-chain simulation.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, usage, Error, Result};
use crate::operators::{diagonal_q, off_diagonal_q};
use crate::params::Params;
use crate::ring::dim_rational;
use crate::scalar::{rational_to_f64, Rational, Scalar};
use crate::signature::{interlaces, interlacing_below, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Admissibility {
    Admissible,
    NotAdmissible(String),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

fn pair_in_z(a: &Scalar, b: &Scalar, names: &str) -> std::result::Result<(), String> {
    if !a.is_real() || !b.is_real() {
        if *b == a.conj() {
            return Ok(());
        }
        return Err(format!("{names}: non-real pair must be complex conjugate"));
    }
    if a.re.is_integer() || b.re.is_integer() {
        return Err(format!("{names}: integer values are excluded"));
    }
    if a.re.floor() != b.re.floor() {
        return Err(format!("{names}: real pair must lie in a common interval (m, m+1)"));
    }
    Ok(())
}

/// Both pairs in `𝒵` and `z + z′ + w + w′ > −1`.
pub fn classify_admissible(p: &Params) -> Admissibility {
    if let Err(r) = pair_in_z(&p.z, &p.z2, "(z, z')") {
        return Admissibility::NotAdmissible(r);
    }
    if let Err(r) = pair_in_z(&p.w, &p.w2, "(w, w')") {
        return Admissibility::NotAdmissible(r);
    }
    let s = p.sum();
    if !s.is_real() || s.re <= -Rational::one() {
        return Admissibility::NotAdmissible("z + z' + w + w' > -1 fails".into());
    }
    Admissibility::Admissible
}

/// Integer `z = k`, `w = l` with `k + l ≥ 0` and real `z′ − k > −1`, `w′ − l > −1`.
/// The chain then lives on signatures with parts in `[−l, k]`.
pub fn degenerate_class(p: &Params) -> Option<(i64, i64)> {
    if !p.is_real() || !p.z.is_integer() || !p.w.is_integer() {
        return None;
    }
    let k: i64 = p.z.re.to_integer().try_into().ok()?;
    let l: i64 = p.w.re.to_integer().try_into().ok()?;
    let m1 = -Rational::one();
    (k + l >= 0 && (&p.z2.re - &p.z.re) > m1 && (&p.w2.re - &p.w.re) > m1).then_some((k, l))
}

/// Row `ν` of the generator `Q` on `GT_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRow {
    pub state: Signature,
    pub entries: BTreeMap<Signature, Scalar>,
}

impl GeneratorRow {
    pub fn get(&self, mu: &Signature) -> Scalar {
        self.entries.get(mu).cloned().unwrap_or_default()
    }

    pub fn sum(&self) -> Scalar {
        self.entries.values().cloned().sum()
    }
}

pub fn generator_row(p: &Params, n: usize, nu: &Signature) -> Result<GeneratorRow> {
    if nu.len() != n {
        return usage(format!("state {nu} does not have length {n}"));
    }
    let mut entries = BTreeMap::new();
    for k in 0..n {
        for s in [1, -1] {
            if let Some(mu) = nu.step(k, s) {
                let q = off_diagonal_q(p, nu, k, s);
                if !q.is_zero() {
                    entries.insert(mu, q);
                }
            }
        }
    }
    if n > 0 {
        entries.insert(nu.clone(), diagonal_q(p, nu));
    }
    Ok(GeneratorRow { state: nu.clone(), entries })
}

/// `(Q f)(ν)`.
pub fn apply_generator(p: &Params, nu: &Signature, f: impl Fn(&Signature) -> Scalar) -> Result<Scalar> {
    let row = generator_row(p, nu.len(), nu)?;
    Ok(row.entries.iter().map(|(mu, q)| q * &f(mu)).sum())
}

/// Row `λ ∈ GT_{N+1}` of `Λ^{N+1}_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkRow {
    pub state: Signature,
    pub entries: BTreeMap<Signature, Rational>,
}

pub fn link_row(n: usize, lambda: &Signature) -> Result<LinkRow> {
    if lambda.len() != n + 1 {
        return usage(format!("link_row({n}, ·) needs a signature of length {}", n + 1));
    }
    let d = dim_rational(lambda);
    let entries = interlacing_below(lambda).into_iter().map(|mu| {
        let v = dim_rational(&mu) / &d;
        (mu, v)
    });
    Ok(LinkRow { state: lambda.clone(), entries: entries.collect() })
}

/// Row of `Λ^M_N = Λ^M_{M−1} ⋯ Λ^{N+1}_N` for `λ ∈ GT_M`.
pub fn link_row_chain(n: usize, lambda: &Signature) -> Result<BTreeMap<Signature, Rational>> {
    if lambda.len() < n {
        return usage("link_row_chain needs length(lambda) >= N");
    }
    let mut cur: BTreeMap<Signature, Rational> = BTreeMap::from([(lambda.clone(), Rational::one())]);
    for level in (n..lambda.len()).rev() {
        let mut next: BTreeMap<Signature, Rational> = BTreeMap::new();
        for (l, c) in &cur {
            for (mu, v) in link_row(level, l)?.entries {
                *next.entry(mu).or_insert_with(Rational::zero) += c * v;
            }
        }
        cur = next;
    }
    Ok(cur)
}

fn link_entry(lambda: &Signature, mu: &Signature) -> Rational {
    if interlaces(mu, lambda).unwrap_or(false) {
        dim_rational(mu) / dim_rational(lambda)
    } else {
        Rational::zero()
    }
}

/// The `(λ, μ)` entries of `Q_{N+1} Λ^{N+1}_N` and `Λ^{N+1}_N Q_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwiningEntry {
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl IntertwiningEntry {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of the intertwining relation at `(λ, μ)`. With `restrict`, intermediate
/// states are limited to signatures with parts in `[lo, hi]` (the truncated matrices).
pub fn intertwining_entry(
    p: &Params,
    n: usize,
    lambda: &Signature,
    mu: &Signature,
    restrict: Option<(i64, i64)>,
) -> Result<IntertwiningEntry> {
    if lambda.len() != n + 1 || mu.len() != n {
        return usage(format!("intertwining needs length(lambda) = {} and length(mu) = {n}", n + 1));
    }
    let inside = |s: &Signature| restrict.is_none_or(|(lo, hi)| s.within(lo, hi));
    let mut lhs = Scalar::zero();
    for (l2, q) in generator_row(p, n + 1, lambda)?.entries {
        if inside(&l2) {
            lhs += q * Scalar::real(link_entry(&l2, mu));
        }
    }
    let mut rhs = Scalar::zero();
    let mut sources = vec![mu.clone()];
    for k in 0..n {
        sources.extend(mu.step(k, 1));
        sources.extend(mu.step(k, -1));
    }
    for m2 in sources {
        if !inside(&m2) {
            continue;
        }
        let l = link_entry(lambda, &m2);
        if l.is_zero() {
            continue;
        }
        rhs += Scalar::real(l) * generator_row(p, n, &m2)?.get(mu);
    }
    Ok(IntertwiningEntry { lhs, rhs })
}

pub fn check_intertwining(p: &Params, n: usize, lambda: &Signature, mu: &Signature) -> Result<bool> {
    Ok(intertwining_entry(p, n, lambda, mu, None)?.holds())
}

/// Row `λ` of `Q_{N+1} Λ^{N+1}_N` and of `Λ^{N+1}_N Q_N`, over every `μ` where either is nonzero.
pub fn intertwining_row(
    p: &Params,
    n: usize,
    lambda: &Signature,
) -> Result<(BTreeMap<Signature, Scalar>, BTreeMap<Signature, Scalar>)> {
    if lambda.len() != n + 1 {
        return usage(format!("intertwining needs a signature of length {}", n + 1));
    }
    let mut lhs: BTreeMap<Signature, Scalar> = BTreeMap::new();
    for (l2, q) in generator_row(p, n + 1, lambda)?.entries {
        let d = dim_rational(&l2);
        for mu in interlacing_below(&l2) {
            let v = &q * &Scalar::real(dim_rational(&mu) / &d);
            *lhs.entry(mu).or_default() += v;
        }
    }
    let mut rhs: BTreeMap<Signature, Scalar> = BTreeMap::new();
    let d = dim_rational(lambda);
    for m2 in interlacing_below(lambda) {
        let l = Scalar::real(dim_rational(&m2) / &d);
        for (mu, q) in generator_row(p, n, &m2)?.entries {
            *rhs.entry(mu).or_default() += &l * &q;
        }
    }
    lhs.retain(|_, v| !v.is_zero());
    rhs.retain(|_, v| !v.is_zero());
    Ok((lhs, rhs))
}

/// Where a simulation is allowed to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimulationDomain {
    Admissible,
    /// Parts confined to `[−l, k]`.
    Degenerate {
        k: i64,
        l: i64,
    },
}

pub fn simulation_domain(p: &Params, n: usize, nu0: &Signature) -> Result<SimulationDomain> {
    if nu0.len() != n {
        return usage(format!("initial state {nu0} does not have length {n}"));
    }
    if !p.is_real() {
        return domain("simulation needs real parameters");
    }
    if let Some((k, l)) = degenerate_class(p) {
        if !nu0.within(-l, k) {
            return domain(format!("degenerate parameters need the start state inside GT_{n}({k},{})", -l));
        }
        return Ok(SimulationDomain::Degenerate { k, l });
    }
    match classify_admissible(p) {
        Admissibility::Admissible => Ok(SimulationDomain::Admissible),
        Admissibility::NotAdmissible(r) => domain(format!("parameters not admissible: {r}")),
    }
}

pub const MAX_JUMPS: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Signature>,
    /// The jump cap was hit before the horizon.
    pub truncated: bool,
}

impl Trajectory {
    pub fn jumps(&self) -> usize {
        self.times.len().saturating_sub(1)
    }

    /// State occupied at time `t`.
    pub fn state_at(&self, t: f64) -> &Signature {
        let k = self.times.partition_point(|&s| s <= t);
        &self.states[k.saturating_sub(1)]
    }

    pub fn final_state(&self) -> &Signature {
        self.states.last().expect("trajectory has an initial state")
    }
}

struct Sampler<'a> {
    p: &'a Params,
    n: usize,
    rows: HashMap<Signature, (f64, Vec<(Signature, f64)>)>,
}

impl Sampler<'_> {
    fn row(&mut self, nu: &Signature) -> Result<&(f64, Vec<(Signature, f64)>)> {
        if !self.rows.contains_key(nu) {
            let mut out = Vec::new();
            let mut total = 0.0;
            for (mu, q) in generator_row(self.p, self.n, nu)?.entries {
                if mu == *nu {
                    continue;
                }
                if !q.is_real() || q.re.is_negative() {
                    return Err(Error::Domain(format!("negative or complex rate {q} from {nu} to {mu}")));
                }
                let r = rational_to_f64(&q.re);
                total += r;
                out.push((mu, r));
            }
            self.rows.insert(nu.clone(), (total, out));
        }
        Ok(&self.rows[nu])
    }
}

/// One trajectory on `[0, horizon]` drawn from stream `stream` of the seed.
pub fn simulate_stream(
    p: &Params,
    n: usize,
    nu0: &Signature,
    horizon: f64,
    seed: u64,
    stream: u64,
    max_jumps: u64,
) -> Result<Trajectory> {
    simulation_domain(p, n, nu0)?;
    if !horizon.is_finite() || horizon < 0.0 {
        return usage("horizon must be a finite nonnegative number");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut sampler = Sampler { p, n, rows: HashMap::new() };
    let mut times = vec![0.0];
    let mut states = vec![nu0.clone()];
    let mut t = 0.0;
    let mut cur = nu0.clone();
    let mut truncated = false;
    loop {
        let (total, row) = sampler.row(&cur)?;
        if *total <= 0.0 {
            break;
        }
        let u: f64 = loop {
            let u = rng.random::<f64>();
            if u > 0.0 {
                break u;
            }
        };
        t += -u.ln() / total;
        if t > horizon {
            break;
        }
        if times.len() as u64 > max_jumps {
            truncated = true;
            break;
        }
        let target = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut next = &row[row.len() - 1].0;
        for (mu, r) in row {
            acc += r;
            if target < acc {
                next = mu;
                break;
            }
        }
        cur = next.clone();
        times.push(t);
        states.push(cur.clone());
    }
    Ok(Trajectory { times, states, truncated })
}

pub fn simulate(p: &Params, n: usize, nu0: &Signature, horizon: f64, seed: u64) -> Result<Trajectory> {
    simulate_stream(p, n, nu0, horizon, seed, 0, MAX_JUMPS)
}

/// `count` independent trajectories; trajectory `i` uses stream `i` of `seed`.
pub fn simulate_many(
    p: &Params,
    n: usize,
    nu0: &Signature,
    horizon: f64,
    seed: u64,
    count: usize,
) -> Result<Vec<Trajectory>> {
    simulation_domain(p, n, nu0)?;
    (0..count as u64).into_par_iter().map(|i| simulate_stream(p, n, nu0, horizon, seed, i, MAX_JUMPS)).collect()
}

/// Monte-Carlo estimate of `(E f(X_t) − f(X_0)) / t` with its standard error.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GeneratorEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

pub fn empirical_generator(trajs: &[Trajectory], t: f64, f: impl Fn(&Signature) -> f64) -> GeneratorEstimate {
    let n = trajs.len() as f64;
    let xs: Vec<f64> = trajs.iter().map(|tr| (f(tr.state_at(t)) - f(&tr.states[0])) / t).collect();
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    GeneratorEstimate { estimate: mean, std_error: (var / n).sqrt() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::signatures_in_box;

    fn sig(v: &[i64]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    fn p0() -> Params {
        Params::ratios([(1, 2), (7, 10), (1, 2), (7, 10)])
    }

    #[test]
    fn admissibility_examples() {
        assert!(classify_admissible(&p0()).is_admissible());
        let p = Params::ratios([(1, 1), (7, 10), (1, 2), (7, 10)]);
        match classify_admissible(&p) {
            Admissibility::NotAdmissible(r) => assert!(r.contains("integer")),
            _ => panic!(),
        }
        let p = Params::parse("1/2+1i", "1/2-1i", "1/2", "1/2").unwrap();
        assert!(classify_admissible(&p).is_admissible());
        let p = Params::parse("1/2+1i", "1/2+1i", "1/2", "1/2").unwrap();
        assert!(!classify_admissible(&p).is_admissible());
        let p = Params::ratios([(1, 2), (3, 2), (1, 2), (7, 10)]);
        assert!(!classify_admissible(&p).is_admissible());
        let p = Params::ratios([(-9, 10), (-8, 10), (-9, 10), (-8, 10)]);
        assert!(!classify_admissible(&p).is_admissible());
    }

    #[test]
    fn generator_row_examples() {
        let p = Params::ratios([(-3, 4), (5, 3), (2, 7), (-1, 9)]);
        let s = |k: i64| Scalar::from_int(k);
        let n = 2;
        let row = generator_row(&p, 1, &sig(&[n])).unwrap();
        assert_eq!(row.get(&sig(&[n + 1])), (&p.z - s(n)) * (&p.z2 - s(n)));
        assert_eq!(row.get(&sig(&[n - 1])), (&p.w + s(n)) * (&p.w2 + s(n)));
        assert!(row.sum().is_zero());
        let row = generator_row(&p, 2, &sig(&[1, 1])).unwrap();
        assert_eq!(row.entries.len(), 3);
        assert_eq!(row.get(&sig(&[2, 1])), s(2) * (&p.z - s(1)) * (&p.z2 - s(1)));
        assert_eq!(row.get(&sig(&[1, 0])), s(2) * (&p.w + s(1)) * (&p.w2 + s(1)));
        for nu in signatures_in_box(3, -2, 2) {
            assert!(generator_row(&p, 3, &nu).unwrap().sum().is_zero());
        }
    }

    #[test]
    fn positivity_for_admissible() {
        for p in [p0(), Params::parse("1/2+1i", "1/2-1i", "3/2", "7/4").unwrap()] {
            for n in 1..=3 {
                for nu in signatures_in_box(n, -3, 3) {
                    for (mu, q) in generator_row(&p, n, &nu).unwrap().entries {
                        if mu != nu {
                            assert!(q.is_real() && q.re > Rational::zero(), "{nu}->{mu}: {q}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn involution_symmetry() {
        let p = Params::parse("-3/4", "5/3+1/2i", "2/7", "-1/9").unwrap();
        for n in 1..=3 {
            for nu in signatures_in_box(n, -2, 2) {
                let a = generator_row(&p, n, &nu).unwrap();
                let b = generator_row(&p.mirror(), n, &nu.dual()).unwrap();
                for (mu, q) in &a.entries {
                    assert_eq!(*q, b.get(&mu.dual()));
                }
                assert_eq!(a.entries.len(), b.entries.len());
            }
        }
    }

    #[test]
    fn link_row_examples() {
        let r = link_row(1, &sig(&[1, 0])).unwrap();
        assert_eq!(r.entries.len(), 2);
        assert!(r.entries.values().all(|v| *v == crate::scalar::rat(1, 2)));
        let r = link_row(1, &sig(&[1, 1])).unwrap();
        assert_eq!(r.entries, BTreeMap::from([(sig(&[1]), Rational::one())]));
        for lam in signatures_in_box(3, -2, 2) {
            let s: Rational = link_row(2, &lam).unwrap().entries.values().sum();
            assert!(s.is_one());
            let s: Rational = link_row_chain(1, &lam).unwrap().values().sum();
            assert!(s.is_one());
        }
        assert!(link_row(2, &sig(&[1, 0])).is_err());
    }

    #[test]
    fn intertwining_small() {
        let p = Params::ratios([(-3, 4), (5, 3), (2, 7), (-1, 9)]);
        for lam in signatures_in_box(2, -2, 2) {
            for mu in signatures_in_box(1, -3, 3) {
                assert!(check_intertwining(&p, 1, &lam, &mu).unwrap(), "{lam} {mu}");
            }
        }
        let e = intertwining_entry(&p, 1, &sig(&[2, 2]), &sig(&[-3]), None).unwrap();
        assert!(e.lhs.is_zero() && e.rhs.is_zero());
        // degenerate: truncated matrices on the rectangle
        let p = Params::ratios([(2, 1), (5, 2), (1, 1), (3, 2)]);
        for lam in signatures_in_box(3, -1, 2) {
            for mu in signatures_in_box(2, -1, 2) {
                assert!(intertwining_entry(&p, 2, &lam, &mu, Some((-1, 2))).unwrap().holds());
            }
        }
    }

    #[test]
    fn simulation_contracts() {
        let t = simulate(&p0(), 1, &sig(&[0]), 0.0, 3).unwrap();
        assert_eq!(t.times, vec![0.0]);
        assert_eq!(t.states, vec![sig(&[0])]);
        let a = simulate(&p0(), 2, &sig(&[1, 0]), 2.0, 11).unwrap();
        let b = simulate(&p0(), 2, &sig(&[1, 0]), 2.0, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.times.windows(2).all(|w| w[0] < w[1]));
        let p = Params::ratios([(1, 1), (7, 10), (1, 2), (7, 10)]);
        assert!(matches!(simulate(&p, 1, &sig(&[0]), 1.0, 1), Err(Error::Domain(_))));
        let deg = Params::ratios([(2, 1), (5, 2), (1, 1), (3, 2)]);
        assert_eq!(simulation_domain(&deg, 2, &sig(&[0, 0])).unwrap(), SimulationDomain::Degenerate { k: 2, l: 1 });
        assert!(simulation_domain(&deg, 2, &sig(&[3, 0])).is_err());
        let tr = simulate(&deg, 2, &sig(&[0, 0]), 5.0, 5).unwrap();
        assert!(tr.states.iter().all(|s| s.within(-1, 2)));
    }
}
