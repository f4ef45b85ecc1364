//! Real zeros of rational polynomials by Sturm sequences and bisection.

use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::series::PolyInput;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Primitive integer polynomial, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub c: Vec<BigInt>,
}

impl IntPoly {
    /// Positive multiple of the rational polynomial `coeffs` (ascending).
    pub fn from_rationals(coeffs: &[BigReal]) -> Self {
        let l = coeffs.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let c = coeffs.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        IntPoly { c }.primitive()
    }

    fn trimmed(mut self) -> Self {
        while self.c.len() > 1 && self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        self
    }

    fn primitive(self) -> Self {
        let mut p = self.trimmed();
        let g = p.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in p.c.iter_mut() {
                *x /= &g;
            }
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn lead(&self) -> &BigInt {
        self.c.last().unwrap()
    }

    pub fn derivative(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(i, x)| x * i).collect::<Vec<_>>();
        IntPoly { c: if c.is_empty() { vec![BigInt::zero()] } else { c } }.primitive()
    }

    /// Sign of `p(num / 2^k)`.
    pub fn sign_at(&self, num: &BigInt, k: u32) -> Sign {
        let d = self.degree();
        let mut acc = self.lead().clone();
        for i in (0..d).rev() {
            acc = acc * num + (&self.c[i] << (k as usize * (d - i)));
        }
        acc.sign()
    }

    /// Positive multiple of `-(self mod b)`.
    fn neg_rem(&self, b: &IntPoly) -> IntPoly {
        let mut r = self.c.clone();
        let db = b.degree();
        let lb = b.lead();
        let mut steps = 0u32;
        while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for x in r.iter_mut() {
                *x *= lb;
            }
            for (j, bj) in b.c.iter().enumerate() {
                r[dr - db + j] -= &lr * bj;
            }
            r.pop();
            steps += 1;
            while r.len() > 1 && r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
            if r.len() == 1 && db == 0 {
                r[0] = BigInt::zero();
                break;
            }
        }
        // lb^steps * self = Q*b + r, so -rem has the sign of -r * sign(lb)^steps.
        let flip = lb.is_negative() && steps % 2 == 1;
        if !flip {
            for x in r.iter_mut() {
                *x = -&*x;
            }
        }
        IntPoly { c: r }.primitive()
    }
}

/// Sturm sequence `p, p', -rem(...)...` up to positive factors.
fn sturm(p: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].degree() == 0 {
            break;
        }
        let r = seq[n - 2].neg_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = Sign::NoSign;
    let mut v = 0;
    for s in signs.filter(|s| *s != Sign::NoSign) {
        if last != Sign::NoSign && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn sign_of(x: &BigInt) -> Sign {
    x.sign()
}

fn var_at(seq: &[IntPoly], num: &BigInt, k: u32) -> usize {
    variations(seq.iter().map(|p| p.sign_at(num, k)))
}

fn var_at_infinity(seq: &[IntPoly], negative: bool) -> usize {
    variations(seq.iter().map(|p| {
        let s = sign_of(p.lead());
        if negative && p.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Dyadic point `num / 2^k`.
#[derive(Clone, Debug)]
struct Pt {
    num: BigInt,
    k: u32,
}

impl Pt {
    fn at(&self, k: u32) -> BigInt {
        &self.num << ((k - self.k) as usize)
    }

    fn mid(a: &Pt, b: &Pt) -> Pt {
        let k = a.k.max(b.k) + 1;
        Pt { num: (a.at(k - 1) + b.at(k - 1)), k }
    }

    fn to_rational(&self) -> BigReal {
        BigReal::new(self.num.clone(), BigInt::one() << self.k as usize)
    }
}

fn width_ok(a: &Pt, b: &Pt, bits: u32) -> bool {
    let k = a.k.max(b.k);
    let w = b.at(k) - a.at(k);
    // w / 2^k <= 2^-bits
    w.bits() as i64 <= k as i64 - bits as i64
}

/// All real zeros of `coeffs` (constant term first), ascending, each within
/// `2^-precision_bits` of the true zero.
pub fn real_zeros(coeffs: &[BigReal], precision_bits: u32) -> Result<Vec<BigReal>> {
    let p = IntPoly::from_rationals(coeffs);
    let d = p.degree();
    if p.is_zero() {
        return Err(Error::InvalidSeries("zero polynomial".into()));
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let seq = sturm(&p);
    let total = var_at_infinity(&seq, true) - var_at_infinity(&seq, false);
    if total < d {
        return Err(Error::NonRealZeros);
    }

    // Cauchy bound 1 + max|c_i / c_d|, rounded up to a power of two.
    let lead = p.lead().abs();
    let max_ratio = p.c[..d].iter().map(|x| x.abs()).max().unwrap_or_default();
    let bound_bits = (max_ratio / &lead + 2u32).bits() as usize;
    let b = BigInt::one() << bound_bits;
    let mut work = vec![(Pt { num: -b.clone(), k: 0 }, Pt { num: b, k: 0 }, total)];
    let mut isolated: Vec<(Pt, Pt)> = Vec::new();
    while let Some((lo, hi, count)) = work.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            isolated.push((lo, hi));
            continue;
        }
        // Split away from zeros of p so every endpoint has a definite sign.
        let mut mid = Pt::mid(&lo, &hi);
        while p.sign_at(&mid.num, mid.k) == Sign::NoSign {
            mid = Pt::mid(&mid, &hi);
        }
        let vl = var_at(&seq, &lo.num, lo.k);
        let vm = var_at(&seq, &mid.num, mid.k);
        let vh = var_at(&seq, &hi.num, hi.k);
        work.push((lo, mid.clone(), vl - vm));
        work.push((mid, hi, vm - vh));
    }

    let mut zeros = Vec::with_capacity(d);
    for (mut lo, mut hi) in isolated {
        let s_hi = p.sign_at(&hi.num, hi.k);
        let root = loop {
            if width_ok(&lo, &hi, precision_bits) {
                break Pt::mid(&lo, &hi).to_rational();
            }
            let mid = Pt::mid(&lo, &hi);
            match p.sign_at(&mid.num, mid.k) {
                Sign::NoSign => break mid.to_rational(),
                s if s == s_hi => hi = mid,
                _ => lo = mid,
            }
        };
        zeros.push(root);
    }
    zeros.sort();
    Ok(zeros)
}

/// Reference zeros of a [`PolyInput`], ascending.
pub fn reference_zeros(poly: &PolyInput, precision_bits: u32) -> Result<Vec<BigReal>> {
    let ascending: Vec<BigReal> = poly.exact.iter().rev().cloned().collect();
    real_zeros(&ascending, precision_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::gen_laguerre;

    fn r(p: i64) -> BigReal {
        BigReal::from_integer(p.into())
    }

    fn close(a: &BigReal, b: i64, bits: u32) -> bool {
        let d = (a - r(b)).abs();
        d <= BigReal::new(1.into(), BigInt::one() << bits as usize)
    }

    #[test]
    fn linear_and_cubic() {
        let p = PolyInput::from_ascending(vec![r(-2), r(1)]).unwrap();
        assert_eq!(reference_zeros(&p, 60).unwrap(), vec![r(2)]);
        // (x-1)(x-2)(x-4) = x^3 - 7x^2 + 14x - 8
        let p = PolyInput::from_exact(vec![r(1), r(-7), r(14), r(-8)]).unwrap();
        let z = reference_zeros(&p, 80).unwrap();
        assert_eq!(z.len(), 3);
        assert!(close(&z[0], 1, 80) && close(&z[1], 2, 80) && close(&z[2], 4, 80));
    }

    #[test]
    fn complex_zeros_are_rejected() {
        let p = PolyInput::from_ascending(vec![r(1), r(0), r(1)]).unwrap();
        assert_eq!(reference_zeros(&p, 60), Err(Error::NonRealZeros));
    }

    #[test]
    fn laguerre_35_has_35_increasing_zeros_in_range() {
        let p = PolyInput::from_ascending(gen_laguerre(35)).unwrap();
        let z = reference_zeros(&p, 120).unwrap();
        assert_eq!(z.len(), 35);
        assert!(z.windows(2).all(|w| w[0] < w[1]));
        assert!(z[0] > r(0) && z[34] < r(140));
    }
}
