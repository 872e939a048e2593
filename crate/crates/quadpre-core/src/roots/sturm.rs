//! Exact real-root counting by Sturm's theorem.
//!
//! The chain is built as a subresultant polynomial remainder sequence:
//! integer coefficients throughout, no rational arithmetic, and no
//! coefficient blowup beyond determinant bounds. Each member is a known
//! nonzero rational multiple of the corresponding member of the
//! classical Sturm chain `T_0 = P`, `T_1 = P'`,
//! `T_{j+1} = -rem(T_{j-1}, T_j)`; only the sign of that multiple
//! matters for counting, and it is tracked exactly. Sign variations at
//! a rational point (or at +-infinity) are then those of the classical
//! chain, and `V(lo) - V(hi)` is the number of distinct real roots in
//! the half-open interval `(lo, hi]` whenever neither endpoint is a
//! root. The input need not be squarefree.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Pseudo-remainder: the unique `R` with
/// `lc(b)^(deg a - deg b + 1) * a = q*b + R` and `deg R < deg b`.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let da = a.degree().expect("a nonzero");
    let db = b.degree().expect("b nonzero");
    debug_assert!(da >= db && db >= 1);
    let lb = b.leading_coeff().expect("b nonzero").clone();
    let bc = b.coeffs();
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    let mut remaining = da - db + 1;
    loop {
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.len() < db + 1 {
            break;
        }
        let lead = r.pop().expect("nonzero length checked");
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, bcoef) in bc[..db].iter().enumerate() {
            r[shift + i] -= &lead * bcoef;
        }
        remaining -= 1;
    }
    // Degree may drop by more than one per step; pad the multiplier so
    // the total factor is exactly lc(b)^(da-db+1).
    if remaining > 0 && !r.is_empty() {
        let scale = Pow::pow(&lb, remaining as u32);
        for c in r.iter_mut() {
            *c *= &scale;
        }
    }
    IntPolynomial::from_coeffs(r)
}

fn divide_coeffs_exact(poly: &IntPolynomial, divisor: &BigInt) -> IntPolynomial {
    let coeffs = poly
        .coeffs()
        .iter()
        .map(|c| {
            let (q, r) = c.div_rem(divisor);
            debug_assert!(r.is_zero(), "subresultant division must be exact");
            q
        })
        .collect();
    IntPolynomial::from_coeffs(coeffs)
}

/// Sign of `p` at the rational point `num/den` (`den > 0`): the sign of
/// `sum a_i num^i den^(d-i)`, avoiding rational arithmetic.
pub(crate) fn sign_at_rational(p: &IntPolynomial, num: &BigInt, den: &BigInt) -> i32 {
    debug_assert!(den.is_positive());
    let Some(d) = p.degree() else { return 0 };
    let coeffs = p.coeffs();
    let mut acc = coeffs[d].clone();
    let mut den_pow = BigInt::one();
    for i in (0..d).rev() {
        den_pow *= den;
        acc = acc * num + &coeffs[i] * &den_pow;
    }
    sign_i32(&acc)
}

fn sign_i32(v: &BigInt) -> i32 {
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Subresultant Sturm chain with per-member sign corrections.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPolynomial>,
    /// Sign of the positive-or-negative rational multiple relating each
    /// member to the classical Sturm chain member.
    sign_fixes: Vec<i32>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Result<SturmChain> {
        let Some(deg) = p.degree() else {
            return Err(Error::InvalidInput(
                "Sturm chain of the zero polynomial is undefined".to_string(),
            ));
        };
        let mut polys = vec![p.clone()];
        let mut sign_fixes = vec![1];
        if deg == 0 {
            return Ok(SturmChain { polys, sign_fixes });
        }
        polys.push(p.derivative());
        sign_fixes.push(1);
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        while polys.last().expect("nonempty").degree().is_some_and(|d| d >= 1) {
            let n = polys.len();
            let (a, b) = (&polys[n - 2], &polys[n - 1]);
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let rem = pseudo_rem(a, b);
            let lc_b = b.leading_coeff().unwrap().clone();
            if rem.is_zero() {
                break;
            }
            let beta = &g * Pow::pow(&h, delta as u32);
            let next = divide_coeffs_exact(&rem, &beta);
            let lc_sign_pow = if delta % 2 == 0 { sign_i32(&lc_b) } else { 1 };
            let next_sign = -sign_fixes[n - 2] * sign_i32(&beta) * lc_sign_pow;
            polys.push(next);
            sign_fixes.push(next_sign);
            g = lc_b;
            h = if delta == 0 {
                h
            } else {
                let num = Pow::pow(&g, delta as u32);
                let den = Pow::pow(&h, (delta - 1) as u32);
                let (q, r) = num.div_rem(&den);
                debug_assert!(r.is_zero(), "h update must be exact");
                q
            };
        }
        Ok(SturmChain { polys, sign_fixes })
    }

    pub fn chain_len(&self) -> usize {
        self.polys.len()
    }

    fn count_variations(signs: impl Iterator<Item = i32>) -> u32 {
        let mut variations = 0;
        let mut last = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
        variations
    }

    /// Sign variations of the classical chain at `x`; errors if `x` is a
    /// root of the polynomial itself.
    pub fn variations_at(&self, x: &BigRational) -> Result<u32> {
        self.variations_at_labeled(x, "endpoint")
    }

    fn variations_at_labeled(&self, x: &BigRational, which: &'static str) -> Result<u32> {
        let (num, den) = (x.numer(), x.denom());
        if sign_at_rational(&self.polys[0], num, den) == 0 {
            return Err(Error::EndpointIsRoot { which });
        }
        Ok(Self::count_variations(
            self.polys
                .iter()
                .zip(&self.sign_fixes)
                .map(|(p, fix)| fix * sign_at_rational(p, num, den)),
        ))
    }

    pub fn variations_at_neg_inf(&self) -> u32 {
        Self::count_variations(self.polys.iter().zip(&self.sign_fixes).map(|(p, fix)| {
            let d = p.degree().expect("chain has no zero members");
            let lc = sign_i32(p.leading_coeff().unwrap());
            let parity = if d % 2 == 0 { 1 } else { -1 };
            fix * lc * parity
        }))
    }

    pub fn variations_at_pos_inf(&self) -> u32 {
        Self::count_variations(
            self.polys
                .iter()
                .zip(&self.sign_fixes)
                .map(|(p, fix)| fix * sign_i32(p.leading_coeff().unwrap())),
        )
    }

    /// Number of distinct real roots in `(lo, hi]`; neither endpoint may
    /// be a root.
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> Result<u32> {
        if lo >= hi {
            return Err(Error::InvalidInput("interval endpoints must satisfy lo < hi".to_string()));
        }
        if self.polys[0].degree() == Some(0) {
            return Ok(0);
        }
        let v_lo = self.variations_at_labeled(lo, "lo")?;
        let v_hi = self.variations_at_labeled(hi, "hi")?;
        debug_assert!(v_lo >= v_hi);
        Ok(v_lo - v_hi)
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_all_real(&self) -> u32 {
        if self.polys[0].degree() == Some(0) {
            return 0;
        }
        let v_lo = self.variations_at_neg_inf();
        let v_hi = self.variations_at_pos_inf();
        debug_assert!(v_lo >= v_hi);
        v_lo - v_hi
    }

    /// Sign of the underlying polynomial at `x`.
    pub fn poly_sign_at(&self, x: &BigRational) -> i32 {
        sign_at_rational(&self.polys[0], x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::difference_poly;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    // Reference chain over exact rationals, the classical construction.
    fn classical_count(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> u32 {
        let to_rat = |p: &IntPolynomial| -> Vec<BigRational> {
            p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let deg = |v: &Vec<BigRational>| v.len().wrapping_sub(1);
        let rem = |a: &Vec<BigRational>, b: &Vec<BigRational>| -> Vec<BigRational> {
            let mut r = a.clone();
            while r.len() >= b.len() && !r.is_empty() {
                let q = r.last().unwrap() / b.last().unwrap();
                let shift = r.len() - b.len();
                for (i, bc) in b.iter().enumerate() {
                    let t = &q * bc;
                    r[shift + i] -= t;
                }
                while r.last().is_some_and(Zero::is_zero) {
                    r.pop();
                }
            }
            r
        };
        let eval = |v: &Vec<BigRational>, x: &BigRational| -> BigRational {
            let mut acc = BigRational::zero();
            for c in v.iter().rev() {
                acc = acc * x + c;
            }
            acc
        };
        let mut chain = vec![to_rat(p), to_rat(&p.derivative())];
        loop {
            let n = chain.len();
            if deg(&chain[n - 1]) == 0 || chain[n - 1].is_empty() {
                break;
            }
            let r = rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.iter().map(|c| -c).collect());
        }
        let variations = |x: &BigRational| -> u32 {
            let mut count = 0;
            let mut last = 0i32;
            for member in &chain {
                let v = eval(member, x);
                let s = if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                };
                if s == 0 {
                    continue;
                }
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
            count
        };
        variations(lo) - variations(hi)
    }

    #[test]
    fn quadratic_counts() {
        let chain = SturmChain::new(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!(chain.count_in(&rat(-2, 1), &rat(2, 1)).unwrap(), 2);
        assert_eq!(chain.count_in(&rat(0, 1), &rat(2, 1)).unwrap(), 1);
        assert_eq!(chain.count_all_real(), 2);
    }

    #[test]
    fn interval_example_from_factorization() {
        // c^2 + 2c has roots 0 and -2.
        let chain = SturmChain::new(&poly(&[0, 2, 1])).unwrap();
        assert_eq!(chain.count_in(&rat(-3, 1), &rat(1, 1)).unwrap(), 2);
        assert_eq!(chain.count_in(&rat(-1, 1), &rat(1, 1)).unwrap(), 1);
    }

    #[test]
    fn no_real_roots() {
        let chain = SturmChain::new(&poly(&[1, 0, 1])).unwrap();
        assert_eq!(chain.count_all_real(), 0);
        assert_eq!(chain.count_in(&rat(-10, 1), &rat(10, 1)).unwrap(), 0);
    }

    #[test]
    fn linear_and_constant_edges() {
        let chain = SturmChain::new(&poly(&[0, 1])).unwrap();
        assert_eq!(chain.count_in(&rat(1, 1), &rat(2, 1)).unwrap(), 0);
        assert_eq!(chain.count_in(&rat(-1, 1), &rat(1, 1)).unwrap(), 1);
        let constant = SturmChain::new(&poly(&[5])).unwrap();
        assert_eq!(constant.count_all_real(), 0);
        assert!(SturmChain::new(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn endpoint_root_is_signaled() {
        let chain = SturmChain::new(&poly(&[-2, 0, 1])).unwrap();
        // sqrt(2) is irrational, so use a polynomial with a rational root.
        let chain2 = SturmChain::new(&poly(&[-1, 0, 1])).unwrap();
        assert!(matches!(
            chain2.count_in(&rat(1, 1), &rat(2, 1)),
            Err(Error::EndpointIsRoot { which: "lo" })
        ));
        assert!(chain.count_in(&rat(1, 1), &rat(2, 1)).is_ok());
    }

    #[test]
    fn repeated_roots_count_once() {
        // (c - 1)^2 (c + 3)
        let p = &(&poly(&[-1, 1]) * &poly(&[-1, 1])) * &poly(&[3, 1]);
        let chain = SturmChain::new(&p).unwrap();
        assert_eq!(chain.count_all_real(), 2);
        assert_eq!(chain.count_in(&rat(0, 1), &rat(2, 1)).unwrap(), 1);
    }

    #[test]
    fn difference_poly_all_roots_real_for_large_base_point() {
        // Distinct-root counts of the parameter difference polynomials
        // at a = 2: every root is real, and the count equals the degree.
        for (k, p) in [(0u32, 1u32), (1, 1), (0, 2), (1, 2), (2, 1), (2, 2)] {
            let d = difference_poly(2, k, p).unwrap();
            let chain = SturmChain::new(&d).unwrap();
            assert_eq!(chain.count_all_real() as usize, d.degree().unwrap(), "cell ({k},{p})");
        }
    }

    #[test]
    fn matches_classical_chain_on_known_poly() {
        let p = &(&poly(&[-1, 1]) * &poly(&[2, 1])) * &poly(&[-5, 1]);
        let chain = SturmChain::new(&p).unwrap();
        for (lo, hi) in [(-3i64, 0i64), (-3, 6), (0, 6), (-10, 10)] {
            let (lo, hi) = (rat(lo * 2 + 1, 2), rat(hi * 2 + 1, 2));
            assert_eq!(chain.count_in(&lo, &hi).unwrap(), classical_count(&p, &lo, &hi));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn agrees_with_classical_rational_chain(
            coeffs in proptest::collection::vec(-8i64..9, 2..7),
            lo_n in -40i64..40,
            width in 1i64..80,
        ) {
            let p = poly(&coeffs);
            prop_assume!(p.degree().is_some_and(|d| d >= 1));
            let lo = rat(2 * lo_n + 1, 6);
            let hi = rat(2 * (lo_n + width) + 1, 6);
            let chain = SturmChain::new(&p).unwrap();
            match chain.count_in(&lo, &hi) {
                Ok(count) => prop_assert_eq!(count, classical_count(&p, &lo, &hi)),
                Err(Error::EndpointIsRoot { .. }) => {}
                Err(other) => return Err(TestCaseError::fail(alloc::format!("{other:?}"))),
            }
        }

        #[test]
        fn total_count_bounded_by_degree(coeffs in proptest::collection::vec(-8i64..9, 2..8)) {
            let p = poly(&coeffs);
            prop_assume!(p.degree().is_some_and(|d| d >= 1));
            let chain = SturmChain::new(&p).unwrap();
            prop_assert!((chain.count_all_real() as usize) <= p.degree().unwrap());
        }
    }
}
