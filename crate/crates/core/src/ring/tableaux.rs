//! Kostka numbers via Gelfand–Tsetlin patterns and Littlewood–Richardson
//! coefficients via LR skew-tableau enumeration.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{usage, Result};
use crate::signature::{interlacing_above, Signature};

/// `K_{λμ}` for every `λ` with parts in `[lo, hi]`: the number of GT patterns
/// with top row `λ` whose row sums increase by `μ_1, μ_2, …`.
pub fn kostka_column(mu: &Signature, lo: i64, hi: i64) -> BTreeMap<Signature, BigInt> {
    let mut level: BTreeMap<Signature, BigInt> = BTreeMap::new();
    level.insert(Signature::empty(), BigInt::from(1));
    for &m in mu.parts() {
        let mut next: BTreeMap<Signature, BigInt> = BTreeMap::new();
        for (nu, c) in &level {
            let target = nu.sum() + m;
            for lam in interlacing_above(nu, lo, hi) {
                if lam.sum() == target {
                    *next.entry(lam).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        level = next;
    }
    level
}

/// Single Kostka number `K_{λμ}` for signatures of equal length.
pub fn kostka(lambda: &Signature, mu: &Signature) -> Result<BigInt> {
    if lambda.len() != mu.len() {
        return usage("Kostka numbers need signatures of equal length");
    }
    let (Some(hi), Some(lo)) = (lambda.first(), lambda.last()) else {
        return Ok(BigInt::from(1));
    };
    Ok(kostka_column(mu, lo, hi).remove(lambda).unwrap_or_default())
}

/// `c(λ | μ, ν)`: coefficient of `s_μ(u_1..u_M) s_ν(u_{M+1}..u_{M+N})` in `s_λ(u_1..u_{M+N})`.
pub fn lr_coefficient(lambda: &Signature, mu: &Signature, nu: &Signature) -> Result<u64> {
    if lambda.len() != mu.len() + nu.len() {
        return usage(format!(
            "lr_coefficient needs length(lambda) = length(mu) + length(nu), got {}, {}, {}",
            lambda.len(),
            mu.len(),
            nu.len()
        ));
    }
    if lambda.sum() != mu.sum() + nu.sum() {
        return Ok(0);
    }
    let low = [lambda.last(), mu.last(), nu.last()].into_iter().flatten().min().unwrap_or(0);
    let d = (-low).max(0);
    let l: Vec<usize> = lambda.parts().iter().map(|x| (x + d) as usize).collect();
    let mut m: Vec<usize> = mu.parts().iter().map(|x| (x + d) as usize).collect();
    let n: Vec<usize> = nu.parts().iter().map(|x| (x + d) as usize).collect();
    m.resize(l.len(), 0);
    if m.iter().zip(&l).any(|(a, b)| a > b) {
        return Ok(0);
    }
    Ok(count_lr_tableaux(&l, &m, &n))
}

/// LR tableaux of shape `λ/μ` and content `ν` (all partitions, `μ` padded to `len λ`).
fn count_lr_tableaux(l: &[usize], m: &[usize], content: &[usize]) -> u64 {
    let cells: Vec<(usize, usize)> = (0..l.len()).flat_map(|r| (m[r]..l[r]).rev().map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = l.iter().map(|&len| vec![0; len]).collect();
    let mut counts = vec![0usize; content.len() + 1];
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        l: &[usize],
        m: &[usize],
        content: &[usize],
        grid: &mut Vec<Vec<usize>>,
        counts: &mut Vec<usize>,
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let mut total = 0;
        let upper = if c + 1 < l[r] { grid[r][c + 1] } else { content.len() };
        let lower = if r > 0 && c >= m[r - 1] { grid[r - 1][c] + 1 } else { 1 };
        for v in lower..=upper {
            if counts[v] >= content[v - 1] || (v > 1 && counts[v] + 1 > counts[v - 1]) {
                continue;
            }
            counts[v] += 1;
            grid[r][c] = v;
            total += go(k + 1, cells, l, m, content, grid, counts);
            counts[v] -= 1;
        }
        grid[r][c] = 0;
        total
    }
    go(0, &cells, l, m, content, &mut grid, &mut counts)
}
