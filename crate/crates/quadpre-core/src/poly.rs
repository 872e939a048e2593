//! Dense univariate polynomial arithmetic over arbitrary-precision
//! integers, and construction of the iteration polynomials of the
//! quadratic family `f_c(z) = z^2 + c`.
//!
//! The iterates are defined by `F_0(c, z) = z` and
//! `F_n(c, z) = F_{n-1}(c, z)^2 + c`. Two univariate specializations of
//! the bivariate family are provided:
//!
//! * the parameter side, `F_n(c, a)` for a fixed integer starting point
//!   `a`, a polynomial in `c` ([`iterate_poly`]); and
//! * the dynamical side, `F_n(c, z)` for a fixed parameter `c`, a
//!   polynomial in `z` ([`point_difference_poly`]).
//!
//! For `n >= 1` the parameter-side iterate is monic in `c` of degree
//! `2^(n-1)`, so the difference `F_{k+p} - F_k` is monic of degree
//! `2^(k+p-1)`; its roots are exactly the parameters for which `a` is
//! preperiodic with preperiod at most `k` and period dividing `p`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default cap on the degree of any constructed polynomial.
///
/// `2^(k+p-1) <= 4096` keeps every supported construction at desk scale;
/// the cap signals a resource limit, never a mathematical impossibility.
pub const DEFAULT_DEGREE_CAP: u64 = 4096;

/// Below this operand degree, multiplication uses the schoolbook loop.
const KARATSUBA_THRESHOLD: usize = 64;

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients, stored in ascending degree order.
///
/// Normal form has no trailing zero coefficient; the zero polynomial is
/// the empty coefficient list. All arithmetic is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending-degree coefficients, dropping
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial `value`.
    pub fn constant(value: BigInt) -> Self {
        Self::from_coeffs(vec![value])
    }

    /// The monomial `coeff * x^degree`.
    pub fn monomial(coeff: BigInt, degree: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        IntPolynomial { coeffs }
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// Ascending-degree coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// Exact evaluation at an integer point by Horner's scheme.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact evaluation at a rational point by Horner's scheme.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact sign of the value at a dyadic point `num / 2^log2_den`.
    ///
    /// Clears the denominator instead of building rationals: the sign of
    /// `P(num / 2^e)` equals the sign of `sum_i a_i num^i 2^(e (d - i))`,
    /// accumulated by a shifted Horner scheme.
    pub fn sign_at_dyadic(&self, num: &BigInt, log2_den: u32) -> i32 {
        let Some(d) = self.degree() else { return 0 };
        let mut acc = self.coeffs[d].clone();
        for i in (0..d).rev() {
            acc = acc * num + (&self.coeffs[i] << (log2_den as usize * (d - i)));
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Lossy evaluation in binary64; coefficients outside the `f64` range
    /// saturate to infinities, so callers must bound them first.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::INFINITY);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Largest integer `g >= 0` dividing every coefficient (0 for the
    /// zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by the content, keeping the leading
    /// coefficient positive. The zero polynomial is returned unchanged.
    pub fn primitive_part(&self) -> IntPolynomial {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let sign = if self.leading_coeff().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let g = g * sign;
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    pub fn mul_scalar(&self, s: &BigInt) -> IntPolynomial {
        if s.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Exact quotient `self / divisor`, or `None` when the division
    /// leaves a remainder. The divisor must be nonzero.
    pub fn divide_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let (dd, dn) = (self.degree()?, divisor.degree()?);
        if dd < dn {
            return None;
        }
        let lc = divisor.leading_coeff()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dd - dn + 1];
        for i in (0..quot.len()).rev() {
            let head = core::mem::take(&mut rem[i + dn]);
            if head.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&head, lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate().take(dn) {
                rem[i + j] -= dc * &q;
            }
            quot[i] = q;
        }
        if rem.iter().take(dn).all(Zero::is_zero) {
            Some(IntPolynomial::from_coeffs(quot))
        } else {
            None
        }
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, exp: u32) -> IntPolynomial {
        let mut result = IntPolynomial::constant(BigInt::one());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Fujiwara's bound on the absolute value of any complex root:
    /// `2 * max_i |a_(d-i) / a_d|^(1/i)`, rounded up to an integer.
    ///
    /// Returns `None` for constants. The bound is computed with exact
    /// integer k-th roots, so it is a true upper bound.
    pub fn root_bound(&self) -> Option<BigInt> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let lc = self.leading_coeff()?.abs();
        let mut best = BigInt::one();
        for i in 1..=d {
            let a = self.coeffs[d - i].abs();
            if a.is_zero() {
                continue;
            }
            // ceil(|a/lc|^(1/i)) <= ceil((ceil(a/lc))^(1/i))
            let q = num_integer::Integer::div_ceil(&a, &lc);
            let mut r = num_integer::Roots::nth_root(&q, i as u32);
            if num_traits::Pow::pow(&r, i as u32) < q {
                r += 1;
            }
            if r > best {
                best = r;
            }
        }
        Some(best * 2)
    }
}

impl core::ops::Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl core::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) =
            if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl core::ops::Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl core::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial::from_coeffs(mul_slices(&self.coeffs, &rhs.coeffs))
    }
}

fn mul_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        return mul_schoolbook(a, b);
    }
    mul_karatsuba(a, b)
}

fn mul_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn mul_karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(a.len().min(m));
    let (b0, b1) = b.split_at(b.len().min(m));
    // a = a0 + a1 x^m, b = b0 + b1 x^m:
    //   a b = a0 b0 + ((a0+a1)(b0+b1) - a0 b0 - a1 b1) x^m + a1 b1 x^2m
    let low = mul_slices(a0, b0);
    let high = if a1.is_empty() || b1.is_empty() { Vec::new() } else { mul_slices(a1, b1) };
    let asum = add_slices(a0, a1);
    let bsum = add_slices(b0, b1);
    let mut mid = mul_slices(&asum, &bsum);
    for (i, c) in low.iter().enumerate() {
        mid[i] -= c;
    }
    for (i, c) in high.iter().enumerate() {
        mid[i] -= c;
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in low.into_iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in mid.into_iter().enumerate() {
        if !c.is_zero() {
            out[i + m] += c;
        }
    }
    for (i, c) in high.into_iter().enumerate() {
        out[i + 2 * m] += c;
    }
    out
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (c, s) in out.iter_mut().zip(short) {
        *c += s;
    }
    out
}

fn check_degree_cap(required: u64, cap: u64) -> Result<()> {
    if required > cap {
        Err(Error::DegreeCapExceeded { required, cap })
    } else {
        Ok(())
    }
}

/// The iterate `F_n(c, a)` as a polynomial in `c`, for an integer
/// starting point `a`, under the default degree cap.
///
/// For `n >= 1` the result is monic of degree `2^(n-1)`; `F_0` is the
/// constant `a`.
///
/// ```
/// use num_bigint::BigInt;
/// use quadpre_core::poly::iterate_poly;
///
/// // F_2(c, 0) = (0^2 + c)^2 + c = c^2 + c
/// let f2 = iterate_poly(0, 2).unwrap();
/// assert_eq!(f2.coeffs(), &[BigInt::from(0), BigInt::from(1), BigInt::from(1)]);
/// ```
pub fn iterate_poly(a: i64, n: u32) -> Result<IntPolynomial> {
    iterate_poly_with_cap(a, n, DEFAULT_DEGREE_CAP)
}

/// [`iterate_poly`] with an explicit degree cap.
pub fn iterate_poly_with_cap(a: i64, n: u32, cap: u64) -> Result<IntPolynomial> {
    if n >= 1 {
        check_degree_cap(
            1u64.checked_shl(n - 1).ok_or(Error::DegreeCapExceeded { required: u64::MAX, cap })?,
            cap,
        )?;
    }
    let mut f = IntPolynomial::constant(BigInt::from(a));
    for _ in 0..n {
        f = &(&f * &f) + &IntPolynomial::x();
    }
    Ok(f)
}

/// The difference polynomial `F_{k+p}(c, a) - F_k(c, a)`, monic of
/// degree `2^(k+p-1)`; its roots form the preperiodic parameter set of
/// `a` at preperiod bound `k` and period divisor `p`.
pub fn difference_poly(a: i64, k: u32, p: u32) -> Result<IntPolynomial> {
    difference_poly_with_cap(a, k, p, DEFAULT_DEGREE_CAP)
}

/// [`difference_poly`] with an explicit degree cap.
pub fn difference_poly_with_cap(a: i64, k: u32, p: u32, cap: u64) -> Result<IntPolynomial> {
    if p == 0 {
        return Err(Error::InvalidInput("period p must be positive".to_string()));
    }
    let n = k.checked_add(p).ok_or_else(|| Error::InvalidInput("k + p overflows".to_string()))?;
    let high = iterate_poly_with_cap(a, n, cap)?;
    let low = iterate_poly_with_cap(a, k, cap)?;
    Ok(&high - &low)
}

/// Checks the telescoping identity
/// `F_{n+2} - F_{n+1} = (F_{n+1} - F_n)(F_{n+1} + F_n)`
/// as an exact polynomial identity.
///
/// A `false` return indicates an arithmetic bug, never a mathematical
/// counterexample.
pub fn telescoping_identity_check(a: i64, n: u32) -> Result<bool> {
    telescoping_identity_check_with_cap(a, n, DEFAULT_DEGREE_CAP)
}

/// [`telescoping_identity_check`] with an explicit degree cap.
pub fn telescoping_identity_check_with_cap(a: i64, n: u32, cap: u64) -> Result<bool> {
    let f_n = iterate_poly_with_cap(a, n, cap)?;
    let f_n1 = iterate_poly_with_cap(a, n + 1, cap)?;
    let f_n2 = iterate_poly_with_cap(a, n + 2, cap)?;
    let lhs = &f_n2 - &f_n1;
    let rhs = &(&f_n1 - &f_n) * &(&f_n1 + &f_n);
    Ok(lhs == rhs)
}

/// The dynamical-side difference `F_{k+p}(c, z) - F_k(c, z)` as a
/// polynomial in `z` for a fixed rational parameter `c`, scaled by
/// `den(c)^(2^(k+p-1))` to clear denominators.
///
/// The scaling leaves the root set unchanged; for integer `c` the result
/// is the monic difference itself, of degree `2^(k+p)`.
pub fn point_difference_poly(c: &BigRational, k: u32, p: u32, cap: u64) -> Result<IntPolynomial> {
    if p == 0 {
        return Err(Error::InvalidInput("period p must be positive".to_string()));
    }
    let n = k.checked_add(p).ok_or_else(|| Error::InvalidInput("k + p overflows".to_string()))?;
    check_degree_cap(
        1u64.checked_shl(n).ok_or(Error::DegreeCapExceeded { required: u64::MAX, cap })?,
        cap,
    )?;
    // With c = u/d, the iterate G_m(z) = F_m(c, z) satisfies
    // G_m = P_m / d^(2^(m-1)) for m >= 1, where P_1 = d z^2 + u and
    // P_m = P_{m-1}^2 + u d^(2^(m-1) - 1); all P_m have integer
    // coefficients and leading coefficient d^(2^(m-1)).
    let u = c.numer().clone();
    let d = c.denom().clone();
    let scaled = |m: u32| -> IntPolynomial {
        if m == 0 {
            return IntPolynomial::x();
        }
        let mut poly = &IntPolynomial::monomial(d.clone(), 2) + &IntPolynomial::constant(u.clone());
        for step in 2..=m {
            let e = 1u64 << (step - 1);
            let add = IntPolynomial::constant(&u * num_traits::Pow::pow(&d, (e - 1) as u32));
            poly = &(&poly * &poly) + &add;
        }
        poly
    };
    let scale_exp = |m: u32| -> u64 {
        if m == 0 {
            0
        } else {
            1 << (m - 1)
        }
    };
    let high = scaled(n);
    let low = scaled(k);
    let diff_exp = scale_exp(n) - scale_exp(k);
    Ok(&high - &low.mul_scalar(&num_traits::Pow::pow(&d, diff_exp as u32)))
}
