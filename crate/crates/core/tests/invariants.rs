use compqd::analysis::{bound_check, condition_table, stability_factors, Variant};
use compqd::bigreal::{format_hex_float, parse_hex_float, rational_from_f64, BigReal};
use compqd::dd::{dd_add_d, dd_add_dd, dd_div_dd, dd_mul_d, dd_mul_dd};
use compqd::eft::{fast_two_sum, two_prod, two_sum};
use compqd::io::{format_coefficients, parse_coefficients};
use compqd::oracle::{exact_qd, exact_qd_hankel, gen_random_poly};
use compqd::progressive::ProgressiveState;
use compqd::qdtable::{build, q_len, e_len, Algorithm, Init};
use compqd::{PolyInput, SeriesInput, DD};
use proptest::prelude::*;

fn r(x: f64) -> BigReal {
    rational_from_f64(x)
}

/// Finite doubles in a range where products neither overflow nor underflow.
fn moderate() -> impl Strategy<Value = f64> {
    (-1.0f64..1.0, -200i32..200).prop_map(|(m, e)| m * 2f64.powi(e))
}

fn normalized_dd() -> impl Strategy<Value = DD> {
    (moderate(), -1.0f64..1.0).prop_map(|(hi, t)| {
        let s = two_sum(hi, t * hi * f64::EPSILON * 0.25);
        DD::new(s.hi, s.lo)
    })
}

fn dd_value(d: DD) -> BigReal {
    r(d.hi) + r(d.lo)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn two_sum_is_exact(a in moderate(), b in moderate()) {
        let s = two_sum(a, b);
        prop_assert_eq!(s.hi, a + b);
        prop_assert_eq!(r(s.hi) + r(s.lo), r(a) + r(b));
    }

    #[test]
    fn fast_two_sum_is_exact_when_ordered(a in moderate(), b in moderate()) {
        let (a, b) = if a.abs() >= b.abs() { (a, b) } else { (b, a) };
        let s = fast_two_sum(a, b);
        prop_assert_eq!(r(s.hi) + r(s.lo), r(a) + r(b));
    }

    #[test]
    fn two_prod_is_exact(a in moderate(), b in moderate()) {
        let p = two_prod(a, b);
        prop_assert_eq!(p.hi, a * b);
        prop_assert_eq!(r(p.hi) + r(p.lo), r(a) * r(b));
    }

    #[test]
    fn dd_results_are_normalized(a in normalized_dd(), b in normalized_dd(), c in moderate()) {
        prop_assert!(a.is_normalized() && b.is_normalized());
        for d in [dd_add_d(a, c), dd_add_dd(a, b), dd_mul_d(a, c), dd_mul_dd(a, b)] {
            prop_assert!(d.is_normalized(), "{:?}", d);
        }
        if b.hi != 0.0 {
            let q = dd_div_dd(a, b);
            prop_assert!(q.is_normalized(), "{:?}", q);
        }
    }

    #[test]
    fn dd_products_are_accurate(a in normalized_dd(), b in normalized_dd()) {
        prop_assume!(a.hi != 0.0 && b.hi != 0.0);
        let exact = dd_value(a) * dd_value(b);
        let err = (dd_value(dd_mul_dd(a, b)) - &exact) / &exact;
        let u2 = r(f64::EPSILON * f64::EPSILON / 4.0);
        prop_assert!(num_traits::Signed::abs(&err) <= r(8.0) * u2);
    }

    #[test]
    fn hex_float_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(parse_hex_float(&format_hex_float(x)).unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn coefficient_files_round_trip(v in prop::collection::vec((-1000i64..1000, 1i64..1000), 1..20)) {
        let c: Vec<BigReal> = v.iter().map(|&(p, q)| BigReal::new(p.into(), q.into())).collect();
        prop_assert_eq!(parse_coefficients(&format_coefficients(&c)).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exact_tables_agree(degree in 2usize..14, seed in 0u64..1000) {
        let c = gen_random_poly(degree, seed);
        let (a, b) = (exact_qd(&c).unwrap(), exact_qd_hankel(&c).unwrap());
        for m in 1..=a.columns() {
            for n in 0..q_len(degree, m) {
                prop_assert_eq!(a.q(m, n), b.q(m, n), "q_{}^({})", m, n);
            }
            for n in 0..e_len(degree, m) {
                prop_assert_eq!(a.e(m, n), b.e(m, n), "e_{}^({})", m, n);
            }
        }
    }

    #[test]
    fn tables_have_the_documented_shape(degree in 1usize..30, seed in 0u64..1000) {
        let s = SeriesInput::from_exact(gen_random_poly(degree, seed)).unwrap();
        for alg in [Algorithm::Qd, Algorithm::Compqd, Algorithm::Ddqd] {
            let t = build(&s, alg, Init::Real).unwrap();
            for m in 1..=t.columns() {
                prop_assert_eq!(t.q[m - 1].len(), q_len(degree, m));
                prop_assert_eq!(t.e[m - 1].len(), e_len(degree, m));
            }
            for m in 1..=t.columns() {
                for n in 0..q_len(degree, m) {
                    let valid = t.q_cell(m, n).unwrap().is_valid();
                    prop_assert_eq!(valid, t.q(m, n).is_some_and(|v| !v.is_nan()));
                }
            }
        }
    }

    #[test]
    fn compqd_respects_its_bound(degree in 2usize..16, seed in 0u64..1000) {
        let s = SeriesInput::from_exact(gen_random_poly(degree, seed)).unwrap();
        let x = exact_qd(&s.exact).unwrap();
        let t = build(&s, Algorithm::Compqd, Init::Real).unwrap();
        let f = stability_factors(&t, &x, true).unwrap();
        let report = bound_check(&t, &x, &f, &condition_table(&x), Variant::Compqd).unwrap();
        prop_assert_eq!(report.violations(), 0);
    }

    #[test]
    fn progressive_borders_stay_zero(
        roots in prop::collection::btree_set(1i64..60, 2..7),
        sweeps in 1usize..80,
    ) {
        // Ascending coefficients of prod (x - r_i).
        let mut c = vec![BigReal::from_integer(1.into())];
        for &root in &roots {
            let mut next = vec![BigReal::from_integer(0.into()); c.len() + 1];
            for (i, v) in c.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= v * BigReal::from_integer(root.into());
            }
            c = next;
        }
        let p = PolyInput::from_ascending(c).unwrap();
        for mut st in [ProgressiveState::plain(&p, 1e-16).unwrap(), ProgressiveState::compensated(&p, 1e-16).unwrap()] {
            for _ in 0..sweeps {
                st.sweep().unwrap();
                prop_assert_eq!(st.e[0], 0.0);
                prop_assert_eq!(*st.e.last().unwrap(), 0.0);
                prop_assert_eq!(st.e.len(), roots.len() + 1);
            }
        }
    }
}
