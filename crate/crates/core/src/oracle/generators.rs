use crate::bigreal::{rational_from_f64, BigReal};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `1/n!` for `n = 0..=degree`.
pub fn exp_series(degree: usize) -> Vec<BigReal> {
    let mut out = Vec::with_capacity(degree + 1);
    let mut f = BigInt::one();
    for n in 0..=degree {
        if n > 0 {
            f *= n;
        }
        out.push(BigReal::new(BigInt::one(), f.clone()));
    }
    out
}

/// Taylor coefficients at 0 of `e^x / prod (x - a_i)`, up to `x^degree`.
pub fn gen_taylor_exp_rational(poles: &[BigReal], degree: usize) -> Result<Vec<BigReal>> {
    let mut acc = exp_series(degree);
    for a in poles {
        if a.is_zero() {
            return Err(Error::InvalidFactor);
        }
        // 1/(x - a) = -sum x^n / a^(n+1)
        let inv = a.recip();
        let mut g = Vec::with_capacity(degree + 1);
        let mut p = -inv.clone();
        for _ in 0..=degree {
            g.push(p.clone());
            p *= &inv;
        }
        acc = (0..=degree)
            .map(|n| (0..=n).fold(BigReal::zero(), |s, k| s + &acc[k] * &g[n - k]))
            .collect();
    }
    Ok(acc)
}

/// Coefficients of the Laguerre polynomial `L_k`, constant term first.
pub fn gen_laguerre(k: usize) -> Vec<BigReal> {
    let mut prev: Vec<BigReal> = vec![BigReal::one()];
    if k == 0 {
        return prev;
    }
    let mut cur: Vec<BigReal> = vec![BigReal::one(), -BigReal::one()];
    for j in 1..k {
        // L_{j+1} = ((2j+1 - x) L_j - j L_{j-1}) / (j+1)
        let jj = BigReal::from_integer(j.into());
        let two_j1 = BigReal::from_integer((2 * j + 1).into());
        let den = BigReal::from_integer((j + 1).into());
        let mut next = vec![BigReal::zero(); j + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i] += &two_j1 * c;
            next[i + 1] -= c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &jj * c;
        }
        for c in next.iter_mut() {
            *c /= &den;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `degree + 1` binary64 values uniform in the open interval (-1, 1).
pub fn random_coefficients(degree: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..=degree)
        .map(|_| loop {
            let x: f64 = rng.gen_range(-1.0..1.0);
            if x != -1.0 && x != 0.0 {
                break x;
            }
        })
        .collect()
}

/// [`random_coefficients`] as exact rationals.
pub fn gen_random_poly(degree: usize, seed: u64) -> Vec<BigReal> {
    random_coefficients(degree, seed).into_iter().map(rational_from_f64).collect()
}
