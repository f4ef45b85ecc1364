use crate::bigreal::{round_up_to_f64, unit_roundoff, BigReal};
use num_traits::One;

/// `gamma_n = n u / (1 - n u)` exactly. Panics unless `n u < 1`.
pub fn gamma_exact(n: u64) -> BigReal {
    let nu = unit_roundoff() * BigReal::from_integer(n.into());
    assert!(nu < BigReal::one(), "gamma_{n} needs n*u < 1");
    &nu / (BigReal::one() - &nu)
}

/// `gamma_n` rounded toward +infinity.
pub fn gamma(n: u64) -> f64 {
    round_up_to_f64(&gamma_exact(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::rational_from_f64;
    use num_traits::Zero;

    #[test]
    fn small_values() {
        assert_eq!(gamma(0), 0.0);
        let u = unit_roundoff();
        assert_eq!(gamma_exact(1), &u / (BigReal::one() - &u));
        assert!(rational_from_f64(gamma(3)) >= gamma_exact(3));
        assert!(gamma_exact(0).is_zero());
    }

    #[test]
    fn textbook_properties() {
        let u = unit_roundoff();
        let g: Vec<BigReal> = (0..=201).map(gamma_exact).collect();
        for k in 0..=100usize {
            assert!(&u + &g[k] <= g[k + 1]);
        }
        for k in 1..=100usize {
            for i in 2..=(200 / k).min(5) {
                assert!(BigReal::from_integer(i.into()) * &g[k] < g[i * k]);
            }
            for j in (1..=100usize).step_by(7) {
                assert!(&g[k] + &g[j] + &g[k] * &g[j] <= g[k + j]);
            }
        }
    }
}
