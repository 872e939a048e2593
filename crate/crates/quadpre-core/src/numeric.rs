//! High-precision fixed-point reals and the small real-number interface
//! shared by the bisection solvers.
//!
//! The coding solvers only need field operations, square roots and
//! comparisons, so they are generic over [`Real`] with two carriers:
//! plain `f64` for the default binary64 mode, and [`BigFixed`] when the
//! requested mantissa width exceeds 53 bits (deep orbits amplify error
//! by roughly the product of the derivative along the orbit, so the
//! working precision must grow with the depth).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

/// Real-number operations required by the solvers.
///
/// Implementations must be totally ordered on the values the solvers
/// produce (no NaNs enter the bisection loops).
pub trait Real: Clone + PartialOrd + core::fmt::Debug {
    /// Converts `v` exactly where possible, at the precision of `like`.
    fn from_f64(v: f64, like: &Self) -> Self;
    fn to_f64(&self) -> f64;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn half(&self) -> Self;
    fn abs(&self) -> Self;
    /// Square root of `max(self, 0)`; the clamp absorbs harmless
    /// negative rounding residue at interval endpoints.
    fn sqrt_nonneg(&self) -> Self;
}

impl Real for f64 {
    fn from_f64(v: f64, _like: &Self) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn half(&self) -> Self {
        self * 0.5
    }
    fn abs(&self) -> Self {
        Float::abs(*self)
    }
    fn sqrt_nonneg(&self) -> Self {
        if *self <= 0.0 {
            0.0
        } else {
            Float::sqrt(*self)
        }
    }
}

/// Fixed-point real: `mant / 2^bits` with an arbitrary-precision
/// mantissa.
///
/// All binary operations require both operands to carry the same `bits`;
/// values are created from one seed value and inherit its precision.
#[derive(Clone, Debug)]
pub struct BigFixed {
    mant: BigInt,
    bits: u32,
}

impl BigFixed {
    /// Exact conversion from binary64 at `bits` fractional bits
    /// (`bits >= 53` keeps every finite `f64` exact up to scale).
    pub fn from_f64_with_bits(v: f64, bits: u32) -> BigFixed {
        assert!(v.is_finite(), "cannot convert non-finite value");
        let (m, e, s) = Float::integer_decode(v);
        let mant = BigInt::from(m) * BigInt::from(s as i64);
        let shift = e as i64 + bits as i64;
        let mant = if shift >= 0 {
            mant << (shift as usize)
        } else {
            // Round to nearest at the target precision.
            let down = -shift as usize;
            let half = BigInt::one() << (down - 1);
            (mant + half) >> down
        };
        BigFixed { mant, bits }
    }

    /// Nearest fixed-point value to the rational `r`.
    pub fn from_rational(r: &BigRational, bits: u32) -> BigFixed {
        let num = r.numer() << (bits as usize);
        let den = r.denom();
        // Round half away from zero, exactly.
        let twice = BigInt::from(2) * &num + num.signum() * den;
        let mant = twice / (BigInt::from(2) * den);
        BigFixed { mant, bits }
    }

    pub fn from_bigint(v: &BigInt, bits: u32) -> BigFixed {
        BigFixed { mant: v << (bits as usize), bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Exact rational value `mant / 2^bits`.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << (self.bits as usize))
    }

    fn assert_compatible(&self, other: &BigFixed) {
        assert_eq!(self.bits, other.bits, "mixed-precision arithmetic");
    }
}

impl PartialEq for BigFixed {
    fn eq(&self, other: &Self) -> bool {
        self.assert_compatible(other);
        self.mant == other.mant
    }
}

impl PartialOrd for BigFixed {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        self.assert_compatible(other);
        self.mant.partial_cmp(&other.mant)
    }
}

impl Real for BigFixed {
    fn from_f64(v: f64, like: &Self) -> Self {
        BigFixed::from_f64_with_bits(v, like.bits)
    }

    fn to_f64(&self) -> f64 {
        self.mant.to_f64().unwrap_or(f64::NAN) * Float::exp2(-(self.bits as f64))
    }

    fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        BigFixed { mant: &self.mant + &other.mant, bits: self.bits }
    }

    fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        BigFixed { mant: &self.mant - &other.mant, bits: self.bits }
    }

    fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let prod = &self.mant * &other.mant;
        let half = BigInt::one() << (self.bits as usize - 1);
        BigFixed { mant: (prod + half) >> (self.bits as usize), bits: self.bits }
    }

    fn neg(&self) -> Self {
        BigFixed { mant: -&self.mant, bits: self.bits }
    }

    fn half(&self) -> Self {
        BigFixed { mant: &self.mant >> 1, bits: self.bits }
    }

    fn abs(&self) -> Self {
        BigFixed { mant: self.mant.abs(), bits: self.bits }
    }

    fn sqrt_nonneg(&self) -> Self {
        if !self.mant.is_positive() {
            return BigFixed { mant: BigInt::zero(), bits: self.bits };
        }
        // sqrt(m / 2^b) = sqrt(m 2^b) / 2^b, floor square root.
        let scaled = &self.mant << (self.bits as usize);
        BigFixed { mant: num_integer::Roots::sqrt(&scaled), bits: self.bits }
    }
}

/// `pi` at `bits` fractional bits, by Machin's formula
/// `pi = 16 atan(1/5) - 4 atan(1/239)` with exact integer series terms.
pub fn pi(bits: u32) -> BigFixed {
    let guard = bits + 32;
    let mant = atan_inv_mant(5, guard) * 16 - atan_inv_mant(239, guard) * 4;
    BigFixed { mant: (mant + (BigInt::one() << 31)) >> 32, bits }
}

/// Mantissa of `atan(1/q)` at `guard` fractional bits.
fn atan_inv_mant(q: u64, guard: u32) -> BigInt {
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut term_den = BigInt::from(q);
    let mut acc = BigInt::zero();
    let unit = BigInt::one() << (guard as usize);
    let mut j = 0u32;
    loop {
        let term = &unit / (&term_den * BigInt::from(2 * j + 1));
        if term.is_zero() {
            break;
        }
        if j.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        term_den *= &q2;
        j += 1;
    }
    acc
}

/// `cos(pi * t)` at `bits` fractional bits for an exact rational `t`.
///
/// The angle is reduced with the symmetries of the cosine before a
/// Taylor evaluation on a quarter-period argument, so the result is
/// accurate to a few units in the last place at any `t`.
pub fn cos_pi(t: &BigRational, bits: u32) -> BigFixed {
    // Reduce t modulo 2 into [0, 1] using cos(pi(2 - t)) = cos(pi t).
    let two = BigRational::from_integer(BigInt::from(2));
    let mut t = t - (t / &two).floor() * &two;
    debug_assert!(!t.is_negative() && t <= two);
    let mut sign = 1i32;
    if t > BigRational::from_integer(BigInt::one()) {
        t = &two - &t;
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if t > half {
        // cos(pi t) = -cos(pi (1 - t)), moving t into [0, 1/2].
        t = BigRational::from_integer(BigInt::one()) - t;
        sign = -1;
    }
    let guard_bits = bits + 48;
    let pi_g = pi(guard_bits);
    let t_g = BigFixed::from_rational(&t, guard_bits);
    let mut y = pi_g.mul(&t_g);
    // Halve the argument until it is at most 1/8, then rebuild with the
    // double-angle formula; 4 halvings suffice since pi/2 < 2.
    let mut halvings = 0u32;
    let eighth =
        BigFixed::from_rational(&BigRational::new(BigInt::one(), BigInt::from(8)), guard_bits);
    while y > eighth {
        y = y.half();
        halvings += 1;
    }
    let mut c = cos_taylor(&y, guard_bits);
    let one = BigFixed::from_bigint(&BigInt::one(), guard_bits);
    for _ in 0..halvings {
        c = c.mul(&c).add(&c.mul(&c)).sub(&one);
    }
    if sign < 0 {
        c = c.neg();
    }
    let down = (guard_bits - bits) as usize;
    BigFixed { mant: (c.mant + (BigInt::one() << (down - 1))) >> down, bits }
}

/// Taylor series of cosine for `0 <= y <= 1/8` at full working precision.
fn cos_taylor(y: &BigFixed, bits: u32) -> BigFixed {
    let y2 = y.mul(y);
    let mut term = BigFixed::from_bigint(&BigInt::one(), bits);
    let mut acc = term.clone();
    let mut j = 1u64;
    loop {
        term = term.mul(&y2);
        let den = BigInt::from((2 * j - 1) * (2 * j));
        term = BigFixed { mant: term.mant.div_floor(&den), bits };
        if term.mant.is_zero() {
            break;
        }
        if j % 2 == 1 {
            acc = acc.sub(&term);
        } else {
            acc = acc.add(&term);
        }
        j += 1;
    }
    acc
}

/// Collects `n` equally spaced sample points in `[lo, hi]`, endpoints
/// included; `n >= 2`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pi_matches_binary64() {
        let p = pi(96);
        assert!((p.to_f64() - core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn cos_pi_exact_points() {
        assert!((cos_pi(&rational(0, 1), 96).to_f64() - 1.0).abs() < 1e-15);
        assert!(cos_pi(&rational(1, 2), 96).to_f64().abs() < 1e-15);
        assert!((cos_pi(&rational(1, 1), 96).to_f64() + 1.0).abs() < 1e-15);
        assert!((cos_pi(&rational(2, 3), 96).to_f64() + 0.5).abs() < 1e-15);
        assert!((cos_pi(&rational(1, 3), 96).to_f64() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cos_pi_matches_f64_cos_on_a_grid() {
        for num in 0..=40i64 {
            let t = rational(num, 40);
            let expect = (core::f64::consts::PI * (num as f64) / 40.0).cos();
            let got = cos_pi(&t, 80).to_f64();
            assert!((got - expect).abs() < 1e-14, "t = {num}/40: {got} vs {expect}");
        }
    }

    #[test]
    fn bigfixed_sqrt_is_accurate() {
        let two = BigFixed::from_f64_with_bits(2.0, 96);
        let r = two.sqrt_nonneg().to_f64();
        assert!((r - core::f64::consts::SQRT_2).abs() < 1e-15);
        let tiny = BigFixed::from_f64_with_bits(-1e-30, 96);
        assert_eq!(tiny.sqrt_nonneg().to_f64(), 0.0);
    }

    #[test]
    fn bigfixed_roundtrips_f64() {
        for v in [0.0, 1.0, -2.5, 0.1, -123.456, 1e-12] {
            let x = BigFixed::from_f64_with_bits(v, 96);
            assert!((x.to_f64() - v).abs() <= v.abs() * 1e-15);
        }
    }

    #[test]
    fn generic_real_agrees_across_carriers() {
        let cf = -2.5f64;
        let cb = BigFixed::from_f64_with_bits(-2.5, 96);
        // beta_c = (1 + sqrt(1 - 4c)) / 2 computed generically.
        fn beta<R: Real>(c: &R) -> R {
            let one = R::from_f64(1.0, c);
            let four = R::from_f64(4.0, c);
            one.add(&one.sub(&four.mul(c)).sqrt_nonneg()).half()
        }
        assert!((beta(&cf) - beta(&cb).to_f64()).abs() < 1e-14);
    }

    #[test]
    fn linspace_hits_endpoints() {
        let v = linspace(-3.0, 5.0, 9);
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], -3.0);
        assert_eq!(v[8], 5.0);
        assert!((v[4] - 1.0).abs() < 1e-12);
    }
}
