//! Exact scalars for the oracle: arbitrary-precision rationals and dyadics,
//! correctly rounded conversion to binary64, and exact text formats.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Exact rational scalar (canonical: reduced, positive denominator).
pub type BigReal = BigRational;

/// `2^e` as a binary64 value, exact for `-1074 <= e <= 1023`.
pub fn pow2(e: i32) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else if e >= -1074 {
        f64::from_bits(1u64 << (e + 1074))
    } else {
        0.0
    }
}

/// `mantissa * 2^exp`, an exact binary fraction. Used where the oracle only
/// needs sums and products of binary64 values and gcd reductions are waste.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub mantissa: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exp: 0 }
    }

    /// Exact value of a finite binary64 number, normalized to an odd mantissa.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "Dyadic::from_f64 on non-finite value");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mut m, mut e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let tz = m.trailing_zeros();
        m >>= tz;
        e += tz as i64;
        let mut mantissa = BigInt::from(m);
        if x < 0.0 {
            mantissa = -mantissa;
        }
        Dyadic { mantissa, exp: e }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        let a = &self.mantissa << ((self.exp - e) as usize);
        let b = &other.mantissa << ((other.exp - e) as usize);
        (a, b, e)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic { mantissa: a + b, exp: e }.normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic { mantissa: a - b, exp: e }.normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic {
            mantissa: &self.mantissa * &other.mantissa,
            exp: self.exp + other.exp,
        }
        .normalized()
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exp: self.exp }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    fn normalized(mut self) -> Self {
        if self.mantissa.is_zero() {
            return Self::zero();
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz as usize;
            self.exp += tz as i64;
        }
        self
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mantissa << (self.exp as usize))
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.abs().cmp(&b.abs())
    }
}

/// Exact rational value of a finite binary64 number.
pub fn rational_from_f64(x: f64) -> BigRational {
    Dyadic::from_f64(x).to_rational()
}

/// `2^k` as an exact rational.
pub fn rational_pow2(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from_integer(BigInt::one() << (k as usize))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-k) as usize))
    }
}

/// The rounding unit `u = 2^-53` as an exact rational.
pub fn unit_roundoff() -> BigRational {
    rational_pow2(-53)
}

/// Round `num/den` to the nearest binary64 value, ties to even.
///
/// Works on unreduced fractions; `den` must be nonzero. Magnitudes beyond
/// the binary64 range round to infinity, tiny ones to (signed) zero or a
/// subnormal.
pub fn round_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    assert!(!den.is_zero(), "round_ratio_to_f64 with zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let negative = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
    let n = num.magnitude();
    let d = den.magnitude();

    // floor(log2(n/d)): start from the bit-length difference and correct.
    let mut e = n.bits() as i64 - d.bits() as i64;
    let ge_pow2 = |e: i64| -> bool {
        if e >= 0 {
            *n >= d << (e as usize)
        } else {
            (n << ((-e) as usize)) >= *d
        }
    };
    if !ge_pow2(e) {
        e -= 1;
    }
    if e > 1023 {
        return if negative { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    let ulp = (e - 52).max(-1074);
    let (ns, ds) = if ulp >= 0 {
        (n.clone(), d << (ulp as usize))
    } else {
        (n << ((-ulp) as usize), d.clone())
    };
    let (mut q, r) = ns.div_rem(&ds);
    let twice = &r << 1usize;
    match twice.cmp(&ds) {
        Ordering::Greater => q += 1u32,
        Ordering::Equal if q.bit(0) => q += 1u32,
        _ => {}
    }
    let qf = q.to_u64().expect("rounded significand fits in 54 bits") as f64;
    // q <= 2^53, so the product is exact unless it overflows.
    let mag = qf * pow2(ulp as i32);
    if negative {
        -mag
    } else {
        mag
    }
}

pub fn round_to_f64(x: &BigRational) -> f64 {
    round_ratio_to_f64(x.numer(), x.denom())
}

/// Round toward +infinity (used where a report must never under-state).
pub fn round_up_to_f64(x: &BigRational) -> f64 {
    let r = round_to_f64(x);
    if !r.is_finite() {
        return r;
    }
    match rational_from_f64(r).cmp(x) {
        Ordering::Less => next_up(r),
        _ => r,
    }
}

pub fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return pow2(-1074);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

/// `(fl(x), fl(x - fl(x)))` together with the dropped remainder.
pub fn split_rational(x: &BigRational) -> (f64, f64, BigRational) {
    let hi = round_to_f64(x);
    let rest = x - rational_from_f64(hi);
    let lo = round_to_f64(&rest);
    let dropped = rest - rational_from_f64(lo);
    (hi, lo, dropped)
}

/// Parse an exact rational from `p/q`, a decimal literal (`-1.25e-3`), or a
/// C99 hex-float literal (`0x1.8p-2`).
pub fn parse_rational(text: &str) -> std::result::Result<BigRational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty value".into());
    }
    let lower = s.to_ascii_lowercase();
    let unsigned = lower.trim_start_matches(['+', '-']);
    if unsigned.starts_with("0x") {
        return parse_hex_float(s).and_then(rational_from_f64_checked);
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator `{p}`"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator `{q}`"))?;
        if q.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(p, q));
    }
    parse_decimal(s)
}

fn rational_from_f64_checked(x: f64) -> std::result::Result<BigRational, String> {
    if x.is_finite() {
        Ok(rational_from_f64(x))
    } else {
        Err("non-finite hex-float".into())
    }
}

fn parse_decimal(s: &str) -> std::result::Result<BigRational, String> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => (s, ""),
    };
    let exp10: i64 = if exponent.is_empty() {
        0
    } else {
        exponent.parse().map_err(|_| format!("bad exponent in `{s}`"))?
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("no digits in `{s}`"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(format!("not a number: `{s}`"));
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut n: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().unwrap() };
    if negative {
        n = -n;
    }
    let scale = exp10 - frac_part.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return Err(format!("exponent out of range in `{s}`"));
    }
    let ten = BigInt::from(10u32);
    let p = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        BigRational::from_integer(n * p)
    } else {
        BigRational::new(n, p)
    })
}

/// Parse a hex-float literal such as `-0x1.fffp+3` (or `0x0p+0`).
pub fn parse_hex_float(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim();
    let (negative, rest) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let rest = rest
        .strip_prefix("0x")
        .or_else(|| rest.strip_prefix("0X"))
        .ok_or_else(|| format!("not a hex-float: `{s}`"))?;
    let (body, exp) = match rest.find(['p', 'P']) {
        Some(i) => (&rest[..i], &rest[i + 1..]),
        None => (rest, "0"),
    };
    let exp2: i64 = exp.parse().map_err(|_| format!("bad binary exponent in `{s}`"))?;
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(format!("no digits in `{s}`"));
    }
    let mut m = BigInt::zero();
    for c in ip.chars().chain(fp.chars()) {
        let v = c.to_digit(16).ok_or_else(|| format!("bad hex digit in `{s}`"))?;
        m = m * 16u32 + v;
    }
    let e = exp2 - 4 * fp.len() as i64;
    let (num, den) = if e >= 0 {
        (m << (e as usize), BigInt::one())
    } else {
        (m, BigInt::one() << ((-e) as usize))
    };
    let v = round_ratio_to_f64(&num, &den);
    Ok(if negative { -v } else { v })
}

/// Exact hex-float rendering (`0x1.8p-1`), the inverse of [`parse_hex_float`].
pub fn format_hex_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x == 0.0 {
        return format!("{sign}0x0p+0");
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (lead, exp) = if biased == 0 { (0, -1022) } else { (1, biased - 1023) };
    let mut digits = format!("{frac:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    let e_sign = if exp >= 0 { "+" } else { "-" };
    if digits.is_empty() {
        format!("{sign}0x{lead}p{e_sign}{}", exp.abs())
    } else {
        format!("{sign}0x{lead}.{digits}p{e_sign}{}", exp.abs())
    }
}

/// |approx - exact| / |exact| rounded once; `None` when `exact` is zero.
///
/// Works directly on the numerator and denominator, so unreduced fractions
/// cost no gcd.
pub fn relative_error(approx: f64, exact: &BigRational) -> Option<f64> {
    let (n, d) = (exact.numer(), exact.denom());
    if n.is_zero() {
        return None;
    }
    if approx == 0.0 {
        return Some(1.0);
    }
    // approx = a * 2^k, so |a d 2^k - n| / |n| with the power moved across.
    let a = Dyadic::from_f64(approx);
    let (num, den) = if a.exp >= 0 {
        ((&a.mantissa * d) << (a.exp as usize), n.clone())
    } else {
        let s = (-a.exp) as usize;
        (&a.mantissa * d, n << s)
    };
    let diff = (num - &den).abs();
    Some(round_ratio_to_f64(&diff, &den.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn rounding_matches_hardware_division() {
        for (p, q) in [(1, 3), (2, 3), (-7, 10), (1, 10), (22, 7), (1, 1 << 40)] {
            assert_eq!(round_to_f64(&rat(p, q)), p as f64 / q as f64, "{p}/{q}");
        }
    }

    #[test]
    fn rounding_ties_to_even() {
        // 1 + 2^-53 is a tie between 1 and 1 + 2^-52.
        let tie = BigRational::one() + rational_pow2(-53);
        assert_eq!(round_to_f64(&tie), 1.0);
        let tie_up = BigRational::one() + rational_pow2(-52) + rational_pow2(-53);
        assert_eq!(round_to_f64(&tie_up), 1.0 + pow2(-51));
    }

    #[test]
    fn rounding_extremes() {
        assert_eq!(round_to_f64(&rational_pow2(-1074)), pow2(-1074));
        assert_eq!(round_to_f64(&rational_pow2(-1076)), 0.0);
        assert_eq!(round_to_f64(&rational_pow2(1024)), f64::INFINITY);
        assert_eq!(round_to_f64(&rational_from_f64(f64::MAX)), f64::MAX);
    }

    #[test]
    fn split_of_one_third_and_exact_pairs() {
        let third = rat(1, 3);
        let (hi, lo, dropped) = split_rational(&third);
        assert_eq!(hi, 1.0 / 3.0);
        assert_eq!(lo, round_to_f64(&(&third - rational_from_f64(hi))));
        assert!(dropped.abs() <= unit_roundoff() * unit_roundoff() * third.abs());

        let x = BigRational::one() + rational_pow2(-60);
        assert_eq!(split_rational(&x), (1.0, pow2(-60), BigRational::zero()));
        assert_eq!(split_rational(&BigRational::one()), (1.0, 0.0, BigRational::zero()));
    }

    #[test]
    fn parses_all_coefficient_syntaxes() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("1.5e2").unwrap(), rat(150, 1));
        assert_eq!(parse_rational("2E-3").unwrap(), rat(1, 500));
        assert_eq!(parse_rational("0x1.8p-1").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-0x1p+2").unwrap(), rat(-4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn relative_error_cases() {
        assert_eq!(relative_error(1.0, &BigRational::one()), Some(0.0));
        assert_eq!(relative_error(1.0 + pow2(-52), &BigRational::one()), Some(pow2(-52)));
        assert_eq!(relative_error(1.0, &BigRational::zero()), None);
    }

    #[test]
    fn round_up_never_understates() {
        let third = rat(1, 3);
        let up = round_up_to_f64(&third);
        assert!(rational_from_f64(up) >= third);
        assert_eq!(round_up_to_f64(&rat(1, 2)), 0.5);
    }

    proptest! {
        #[test]
        fn hex_float_round_trips(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let back = parse_hex_float(&format_hex_float(x)).unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
        }

        #[test]
        fn exact_conversion_round_trips(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let r = rational_from_f64(x);
            prop_assert_eq!(round_to_f64(&r), if x == 0.0 { 0.0 } else { x });
            prop_assert_eq!(Dyadic::from_f64(x).to_rational(), r);
        }

        #[test]
        fn rounding_is_nearest(p in -1_000_000_000i64..1_000_000_000, q in 1i64..1_000_000_000) {
            let r = rat(p, q);
            let f = round_to_f64(&r);
            // Hardware division of exactly representable integers is correctly rounded.
            prop_assert_eq!(f, p as f64 / q as f64);
        }
    }
}
