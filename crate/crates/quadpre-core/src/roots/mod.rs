//! Certified root finding for integer polynomials.
//!
//! Every answer in this module is backed by exact arithmetic: integer
//! roots by exact evaluation and deflation, real-root counts by Sturm
//! chains over integers, polynomial gcds by modular images verified
//! through exact trial division, and complex approximations by
//! inclusion discs whose radii hold in exact arithmetic. Floating point
//! appears only inside the complex solver and always under a certified
//! error bound.

mod aberth;
mod modgcd;
mod sturm;

pub use modgcd::certified_gcd;
pub use sturm::SturmChain;

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Default relative tolerance for complex root certification.
pub const DEFAULT_COMPLEX_TOL: f64 = 1e-10;
/// Default denominator exponent for perturbing interval endpoints that
/// land on roots: shift by 1/2^64.
pub const ENDPOINT_PERTURBATION_LOG2: u32 = 64;

/// One isolated real root: a rational interval containing exactly one
/// distinct root of the source polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RealRootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: u32,
}

/// One approximated complex root with a certified inclusion radius.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexRootApprox {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub multiplicity: u32,
    pub certified: bool,
}

/// Certified multiset of polynomial roots.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RootSet {
    pub exact_integer_roots: Vec<(BigInt, u32)>,
    pub isolated_real_roots: Vec<RealRootInterval>,
    pub complex_roots: Vec<ComplexRootApprox>,
    pub source_poly_degree: u64,
}

impl RootSet {
    /// Sum of multiplicities over all three root classes.
    pub fn total_multiplicity(&self) -> u64 {
        let exact: u64 = self.exact_integer_roots.iter().map(|(_, m)| *m as u64).sum();
        let real: u64 = self.isolated_real_roots.iter().map(|r| r.multiplicity as u64).sum();
        let complex: u64 = self.complex_roots.iter().map(|r| r.multiplicity as u64).sum();
        exact + real + complex
    }

    /// Number of complex entries lacking certification.
    pub fn uncertified_count(&self) -> usize {
        self.complex_roots.iter().filter(|r| !r.certified).count()
    }

    /// True when every root of the source polynomial is accounted for.
    pub fn is_complete(&self) -> bool {
        self.total_multiplicity() == self.source_poly_degree
    }
}

/// Squarefree decomposition over the integers: returns the pairwise
/// coprime squarefree factors with their multiplicities, each primitive
/// with positive leading coefficient. The product of `factor^mult`
/// equals the primitive part of the input up to sign.
pub fn squarefree_decomposition(poly: &IntPolynomial) -> Result<Vec<(IntPolynomial, u32)>> {
    let Some(deg) = poly.degree() else {
        return Err(Error::InvalidInput("squarefree decomposition of zero".to_string()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let pp = poly.primitive_part();
    let g = certified_gcd(&pp, &pp.derivative())?;
    if g.degree() == Some(0) {
        return Ok(alloc::vec![(pp, 1)]);
    }
    let mut c = pp.divide_exact(&g).expect("gcd divides");
    let mut d =
        &pp.derivative().divide_exact(&g).expect("gcd divides derivative") - &c.derivative();
    let mut out = Vec::new();
    let mut mult = 1u32;
    while c.degree().is_some_and(|d| d >= 1) {
        let a = certified_gcd(&c, &d)?;
        if a.degree().is_some_and(|d| d >= 1) {
            out.push((a.clone(), mult));
        }
        c = c.divide_exact(&a).expect("factor divides");
        d = &d.divide_exact(&a).expect("factor divides") - &c.derivative();
        mult += 1;
    }
    debug_assert_eq!(
        out.iter().fold(IntPolynomial::constant(BigInt::one()), |acc, (f, m)| &acc * &f.pow(*m)),
        pp,
        "factorization must recombine"
    );
    Ok(out)
}

/// Squarefree part: the product of the distinct irreducible factors,
/// primitive with positive leading coefficient.
pub fn squarefree_part(poly: &IntPolynomial) -> Result<IntPolynomial> {
    let Some(deg) = poly.degree() else {
        return Err(Error::InvalidInput("squarefree part of zero".to_string()));
    };
    let pp = poly.primitive_part();
    if deg == 0 {
        return Ok(pp);
    }
    let g = certified_gcd(&pp, &pp.derivative())?;
    Ok(pp.divide_exact(&g).expect("gcd divides"))
}

/// All integer roots of a nonzero polynomial with exact multiplicities,
/// sorted ascending.
pub fn integer_roots(poly: &IntPolynomial) -> Result<Vec<(BigInt, u32)>> {
    let Some(deg) = poly.degree() else {
        return Err(Error::InvalidInput("integer roots of the zero polynomial".to_string()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    // Root at zero: trailing zero coefficients.
    let zero_mult = poly.coeffs().iter().take_while(|c| c.is_zero()).count() as u32;
    let mut reduced = if zero_mult > 0 {
        IntPolynomial::from_coeffs(poly.coeffs()[zero_mult as usize..].to_vec())
    } else {
        poly.clone()
    };
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if zero_mult > 0 {
        out.push((BigInt::zero(), zero_mult));
    }
    if reduced.degree() == Some(0) {
        return Ok(out);
    }
    for r in candidate_integer_roots(&reduced)? {
        let mut mult = 0u32;
        loop {
            if !reduced.eval_int(&r).is_zero() {
                break;
            }
            let linear = IntPolynomial::from_coeffs(alloc::vec![-&r, BigInt::one()]);
            reduced = reduced.divide_exact(&linear).expect("root divides");
            mult += 1;
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Candidate integer roots of a polynomial with nonzero constant term,
/// sorted ascending and complete (every integer root is listed).
fn candidate_integer_roots(poly: &IntPolynomial) -> Result<Vec<BigInt>> {
    let deg = poly.degree().expect("nonzero") as u64;
    let bound = poly.root_bound().expect("nonconstant polynomial");
    // Strategy 1: scan the root bound with a two-prime modular
    // prefilter; complete because the bound dominates every root.
    let scan_budget: u64 = 1 << 26;
    if let Some(b) = bound.to_u64() {
        if (2 * b + 1).saturating_mul(deg + 1) <= scan_budget {
            return Ok(scan_candidates(poly, b));
        }
    }
    // Strategy 2: enumerate divisors of a small constant term.
    let constant = &poly.coeffs()[0];
    if let Some(c) = constant.abs().to_u64() {
        if c <= 1 << 40 {
            let mut divisors = signed_divisors_up_to(c, &bound);
            divisors.sort();
            return Ok(divisors);
        }
    }
    // Strategy 3: Sturm isolation to width < 1.
    if deg <= 512 {
        return sturm_integer_candidates(poly);
    }
    Err(Error::ResourceLimit(
        "integer root search exceeds scan, divisor, and isolation budgets".to_string(),
    ))
}

fn scan_candidates(poly: &IntPolynomial, bound: u64) -> Vec<BigInt> {
    // Two fixed word-size primes; a candidate passing both filters is
    // confirmed by exact evaluation in the caller.
    let primes: Vec<u64> = modgcd::primes().take(2).collect();
    let reduced: Vec<Vec<u64>> = primes
        .iter()
        .map(|&q| {
            let qb = BigInt::from(q);
            poly.coeffs().iter().map(|c| c.mod_floor(&qb).to_u64().expect("residue fits")).collect()
        })
        .collect();
    let eval_mod = |coeffs: &[u64], x: u64, q: u64| -> u64 {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = ((acc as u128 * x as u128 + c as u128) % q as u128) as u64;
        }
        acc
    };
    let b = bound as i64;
    (-b..=b)
        .filter(|&r| {
            primes.iter().zip(&reduced).all(|(&q, coeffs)| {
                let x = (r as i128).rem_euclid(q as i128) as u64;
                eval_mod(coeffs, x, q) == 0
            })
        })
        .map(BigInt::from)
        .collect()
}

fn signed_divisors_up_to(constant: u64, bound: &BigInt) -> Vec<BigInt> {
    let mut n = constant;
    let mut prime_powers: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        prime_powers.push((n, 1));
    }
    let mut divisors = alloc::vec![1u64];
    for (p, e) in prime_powers {
        let existing = divisors.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk = pk.saturating_mul(p);
            divisors.extend(existing.iter().map(|d| d.saturating_mul(pk)));
        }
    }
    divisors
        .into_iter()
        .flat_map(|d| [BigInt::from(d), -BigInt::from(d)])
        .filter(|d| d.abs() <= *bound)
        .collect()
}

fn sturm_integer_candidates(poly: &IntPolynomial) -> Result<Vec<BigInt>> {
    let sf = squarefree_part(poly)?;
    let bound = sf.root_bound().expect("nonconstant polynomial") + BigInt::one();
    let lo = BigRational::new(-&bound * 2 - 1, BigInt::from(2));
    let hi = BigRational::new(&bound * 2 + 1, BigInt::from(2));
    let width = BigRational::new(BigInt::one(), BigInt::from(2));
    let (_, intervals) = isolate_real_roots(&sf, &lo, &hi, &width)?;
    let mut out = Vec::new();
    for (ilo, ihi) in intervals {
        let first = ilo.ceil().to_integer();
        let last = ihi.floor().to_integer();
        let mut n = first;
        while n <= last {
            out.push(n.clone());
            n += BigInt::one();
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Distinct real roots of `poly` in the half-open interval `(lo, hi]`:
/// the exact count and isolating intervals refined to at most the
/// requested width. Works on the squarefree part, so multiple roots are
/// counted once. Errors if an endpoint is a root of the squarefree part.
pub fn real_roots_in_interval(
    poly: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
    width: &BigRational,
) -> Result<(u32, Vec<(BigRational, BigRational)>)> {
    let sf = squarefree_part(poly)?;
    isolate_real_roots(&sf, lo, hi, width)
}

/// Count of distinct real roots in `(lo, hi]` without isolation.
pub fn count_real_roots_in_interval(
    poly: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<u32> {
    SturmChain::new(poly)?.count_in(lo, hi)
}

fn isolate_real_roots(
    sf: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
    width: &BigRational,
) -> Result<(u32, Vec<(BigRational, BigRational)>)> {
    if lo >= hi {
        return Err(Error::InvalidInput("interval endpoints must satisfy lo < hi".to_string()));
    }
    if width <= &BigRational::zero() {
        return Err(Error::InvalidInput("isolation width must be positive".to_string()));
    }
    let chain = SturmChain::new(sf)?;
    if sf.degree() == Some(0) {
        return Ok((0, Vec::new()));
    }
    let total = chain.count_in(lo, hi)?;
    let mut intervals: Vec<(BigRational, BigRational)> = Vec::new();
    // Work stack of (segment, count); split until single-root segments,
    // then refine those by sign bisection.
    let mut stack = alloc::vec![(lo.clone(), hi.clone(), total)];
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            intervals.push(refine_single_root(&chain, a, b, width));
            continue;
        }
        let mut mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        // Nudge the split point off a root; termination: a polynomial
        // has finitely many roots.
        let mut nudge = (&b - &a) / BigRational::from_integer(BigInt::from(1024));
        while chain.poly_sign_at(&mid) == 0 {
            mid += &nudge;
            nudge /= BigRational::from_integer(BigInt::from(2));
        }
        let left = chain.count_in(&a, &mid)?;
        stack.push((a, mid.clone(), left));
        stack.push((mid, b, count - left));
    }
    intervals.sort_by(|x, y| x.0.cmp(&y.0));
    debug_assert_eq!(intervals.len() as u32, total);
    Ok((total, intervals))
}

/// Shrinks an interval known to hold exactly one distinct root (with
/// nonroot endpoints) to the requested width by sign bisection.
fn refine_single_root(
    chain: &SturmChain,
    mut a: BigRational,
    mut b: BigRational,
    width: &BigRational,
) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut sign_a = chain.poly_sign_at(&a);
    debug_assert_ne!(sign_a, 0);
    while &(&b - &a) > width {
        let mid = (&a + &b) / &two;
        let sign_mid = chain.poly_sign_at(&mid);
        if sign_mid == 0 {
            return (mid.clone(), mid);
        }
        if sign_mid == sign_a {
            a = mid;
            sign_a = sign_mid;
        } else {
            b = mid;
        }
    }
    (a, b)
}

/// All roots of a nonzero polynomial: exact integer roots plus
/// certified complex approximations for the rest. Multiplicities come
/// from the squarefree decomposition. On non-convergence the partial
/// set is returned inside the error, with failing entries flagged.
pub fn complex_roots(poly: &IntPolynomial, tol: f64) -> Result<RootSet> {
    let Some(deg) = poly.degree() else {
        return Err(Error::InvalidInput("complex roots of the zero polynomial".to_string()));
    };
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput("tolerance must be positive".to_string()));
    }
    let mut set = RootSet { source_poly_degree: deg as u64, ..RootSet::default() };
    if deg == 0 {
        return Ok(set);
    }
    for (factor, mult) in squarefree_decomposition(poly)? {
        let ints = integer_roots(&factor)?;
        let mut remaining = factor;
        for (r, m) in ints {
            debug_assert_eq!(m, 1, "squarefree factor has simple roots");
            let linear = IntPolynomial::from_coeffs(alloc::vec![-&r, BigInt::one()]);
            remaining = remaining.divide_exact(&linear).expect("root divides");
            set.exact_integer_roots.push((r, mult));
        }
        if remaining.degree().is_some_and(|d| d >= 1) {
            for disc in aberth::solve(&remaining, tol)? {
                set.complex_roots.push(ComplexRootApprox {
                    re: disc.z.re,
                    im: disc.z.im,
                    radius: disc.radius,
                    multiplicity: mult,
                    certified: disc.certified,
                });
            }
        }
    }
    set.exact_integer_roots.sort_by(|a, b| a.0.cmp(&b.0));
    debug_assert!(set.is_complete());
    if set.uncertified_count() > 0 {
        return Err(Error::UncertifiedRoots(alloc::boxed::Box::new(set)));
    }
    Ok(set)
}

/// Whether every root of a monic integer polynomial lies in the real
/// half-open interval `(m-2, m]`. When true, the only possible roots
/// are the integers `m-1` and `m` (an algebraic integer whose
/// conjugates all lie in an interval of length two is rational), and
/// the claimed factorization is verified exactly before returning.
pub fn conjugates_in_halfopen_interval(poly: &IntPolynomial, m: &BigInt) -> Result<bool> {
    if !poly.is_monic() {
        return Err(Error::InvalidInput(
            "interval confinement test requires a monic polynomial".to_string(),
        ));
    }
    let deg = poly.degree().expect("monic implies nonzero");
    if deg == 0 {
        return Ok(true);
    }
    let mut sf = squarefree_part(poly)?;
    let left = m - 2;
    if sf.eval_int(&left).is_zero() {
        return Ok(false);
    }
    if sf.eval_int(m).is_zero() {
        let linear = IntPolynomial::from_coeffs(alloc::vec![-m, BigInt::one()]);
        sf = sf.divide_exact(&linear).expect("root divides");
    }
    if sf.degree().is_none_or(|d| d == 0) {
        verify_two_point_factorization(poly, m);
        return Ok(true);
    }
    let chain = SturmChain::new(&sf)?;
    let all_real = chain.count_all_real() as usize == sf.degree().expect("nonconstant");
    if !all_real {
        return Ok(false);
    }
    let lo = BigRational::from_integer(left);
    let hi = BigRational::from_integer(m.clone());
    let confined = chain.count_in(&lo, &hi)? as usize == sf.degree().expect("nonconstant");
    if !confined {
        return Ok(false);
    }
    verify_two_point_factorization(poly, m);
    Ok(true)
}

/// Exact check that `poly` is a product of powers of `(c - (m-1))` and
/// `(c - m)`; a failure here would contradict the rationality argument,
/// so it is a hard error.
fn verify_two_point_factorization(poly: &IntPolynomial, m: &BigInt) {
    let mut rest = poly.clone();
    for root in [m - 1, m.clone()] {
        let linear = IntPolynomial::from_coeffs(alloc::vec![-&root, BigInt::one()]);
        while rest.degree().is_some_and(|d| d >= 1) {
            match rest.divide_exact(&linear) {
                Some(q) => rest = q,
                None => break,
            }
        }
    }
    assert_eq!(
        rest,
        IntPolynomial::constant(BigInt::one()),
        "confined roots must factor over the two admissible integers"
    );
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

    fn int_roots(coeffs: &[i64]) -> Vec<(i64, u32)> {
        integer_roots(&poly(coeffs))
            .unwrap()
            .into_iter()
            .map(|(r, m)| (r.to_i64().unwrap(), m))
            .collect()
    }

    #[test]
    fn integer_roots_examples() {
        assert_eq!(int_roots(&[0, 2, 1]), alloc::vec![(-2, 1), (0, 1)]);
        assert_eq!(int_roots(&[0, 1, 1]), alloc::vec![(-1, 1), (0, 1)]);
        assert_eq!(int_roots(&[1, 0, 1]), alloc::vec![]);
    }

    #[test]
    fn integer_roots_with_multiplicities() {
        // c^2 (c+1)^3 (c-4)
        let p = &(&poly(&[0, 1]).pow(2) * &poly(&[1, 1]).pow(3)) * &poly(&[-4, 1]);
        assert_eq!(
            integer_roots(&p).unwrap(),
            alloc::vec![(BigInt::from(-1), 3), (BigInt::from(0), 2), (BigInt::from(4), 1)]
        );
    }

    #[test]
    fn integer_roots_of_difference_polynomials() {
        // Parameter sets for small cells at a = 1: {-2, 0} for (1,1).
        let d = difference_poly(1, 1, 1).unwrap();
        assert_eq!(
            integer_roots(&d).unwrap().iter().map(|(r, _)| r.clone()).collect::<Vec<_>>(),
            alloc::vec![BigInt::from(-2), BigInt::from(0)]
        );
    }

    #[test]
    fn integer_roots_huge_constant_term_uses_bound_scan() {
        // Constant term far beyond divisor enumeration, roots still tiny.
        let d = difference_poly(3, 2, 2).unwrap();
        let roots = integer_roots(&d).unwrap();
        for (r, _) in &roots {
            assert!(d.eval_int(r).is_zero());
        }
        // -a^2 + a = -6 is preperiodic for a = 3.
        assert!(roots.iter().any(|(r, _)| *r == BigInt::from(-6)));
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        let p = &(&poly(&[1, 1]).pow(2) * &poly(&[-3, 1]).pow(5)) * &poly(&[7, 0, 1]);
        let decomposition = squarefree_decomposition(&p).unwrap();
        assert_eq!(
            decomposition,
            alloc::vec![(poly(&[7, 0, 1]), 1), (poly(&[1, 1]), 2), (poly(&[-3, 1]), 5)]
        );
    }

    #[test]
    fn real_root_isolation_basic() {
        let width = rat(1, 1 << 20);
        let (count, intervals) =
            real_roots_in_interval(&poly(&[0, 2, 1]), &rat(-3, 1), &rat(1, 1), &width).unwrap();
        assert_eq!(count, 2);
        assert_eq!(intervals.len(), 2);
        // Roots -2 and 0 each inside their interval.
        assert!(intervals[0].0 <= rat(-2, 1) && rat(-2, 1) <= intervals[0].1);
        assert!(intervals[1].0 <= rat(0, 1) && rat(0, 1) <= intervals[1].1);
        for (lo, hi) in &intervals {
            assert!((hi - lo) <= width);
        }
    }

    #[test]
    fn real_root_count_only() {
        assert_eq!(
            count_real_roots_in_interval(&poly(&[0, 1]), &rat(1, 1), &rat(2, 1)).unwrap(),
            0
        );
        assert_eq!(
            count_real_roots_in_interval(&poly(&[-2, 0, 1]), &rat(-2, 1), &rat(2, 1)).unwrap(),
            2
        );
    }

    #[test]
    fn difference_poly_count_matches_degree_at_a2() {
        // All roots of the (1,1) cell at a = 2 are real and lie in the
        // localization interval: count = 2 = degree. Endpoints avoid
        // the roots -6 and -2, which the half-open count rejects.
        let d = difference_poly(2, 1, 1).unwrap();
        let lo = rat(-13, 2);
        let hi = rat(-1, 1);
        assert_eq!(count_real_roots_in_interval(&d, &lo, &hi).unwrap(), 2);
    }

    #[test]
    fn endpoint_root_error_surfaces() {
        let r = real_roots_in_interval(&poly(&[0, 2, 1]), &rat(-2, 1), &rat(1, 1), &rat(1, 4));
        assert!(matches!(r, Err(Error::EndpointIsRoot { which: "lo" })));
    }

    #[test]
    fn multiple_roots_isolated_once() {
        let p = &poly(&[-1, 1]).pow(3) * &poly(&[5, 1]);
        let (count, intervals) =
            real_roots_in_interval(&p, &rat(-10, 1), &rat(10, 1), &rat(1, 16)).unwrap();
        assert_eq!(count, 2);
        assert_eq!(intervals.len(), 2);
    }

    #[test]
    fn complex_roots_quadratic_pair() {
        let set = complex_roots(&poly(&[1, 1, 1]), 1e-10).unwrap();
        assert!(set.exact_integer_roots.is_empty());
        assert_eq!(set.complex_roots.len(), 2);
        assert!(set.is_complete());
        let expected_im = 3.0f64.sqrt() / 2.0;
        for r in &set.complex_roots {
            assert!((r.re + 0.5).abs() < 1e-10);
            assert!((r.im.abs() - expected_im).abs() < 1e-10);
        }
    }

    #[test]
    fn complex_roots_deflated_integer_path() {
        let set = complex_roots(&poly(&[0, 2, 1]), 1e-10).unwrap();
        assert_eq!(
            set.exact_integer_roots,
            alloc::vec![(BigInt::from(-2), 1), (BigInt::from(0), 1)]
        );
        assert!(set.complex_roots.is_empty());
    }

    #[test]
    fn complex_roots_period_three_centers() {
        let set = complex_roots(&poly(&[1, 1, 2, 1]), 1e-10).unwrap();
        let mut reals: Vec<f64> =
            set.complex_roots.iter().filter(|r| r.im == 0.0).map(|r| r.re).collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(reals.len(), 1);
        assert!((reals[0] + 1.7548776662466927).abs() < 1e-9);
        let pair: Vec<_> = set.complex_roots.iter().filter(|r| r.im != 0.0).collect();
        assert_eq!(pair.len(), 2);
        assert!((pair[0].re + 0.12256116687665).abs() < 1e-8);
        assert!((pair[0].im.abs() - 0.7448617666197442).abs() < 1e-8);
    }

    #[test]
    fn complex_roots_multiplicity_structure() {
        let p = &poly(&[1, 1, 1]).pow(2) * &poly(&[-3, 1]);
        let set = complex_roots(&p, 1e-9).unwrap();
        assert_eq!(set.source_poly_degree, 5);
        assert!(set.is_complete());
        assert_eq!(set.exact_integer_roots, alloc::vec![(BigInt::from(3), 1)]);
        assert!(set.complex_roots.iter().all(|r| r.multiplicity == 2));
    }

    #[test]
    fn conjugates_interval_examples() {
        assert!(conjugates_in_halfopen_interval(&poly(&[0, 1, 1]), &BigInt::zero()).unwrap());
        assert!(!conjugates_in_halfopen_interval(&poly(&[-1, 1, 1]), &BigInt::zero()).unwrap());
        assert!(conjugates_in_halfopen_interval(&poly(&[-5, 1]), &BigInt::from(5)).unwrap());
    }

    #[test]
    fn conjugates_interval_edges() {
        // Root exactly at m-2 is outside the half-open interval.
        assert!(!conjugates_in_halfopen_interval(&poly(&[2, 1]), &BigInt::zero()).unwrap());
        // Roots at both admissible points, with multiplicity.
        let p = &poly(&[1, 1]).pow(2) * &poly(&[0, 1]);
        assert!(conjugates_in_halfopen_interval(&p, &BigInt::zero()).unwrap());
        // Non-monic input is rejected.
        assert!(conjugates_in_halfopen_interval(&poly(&[0, 2]), &BigInt::zero()).is_err());
        // Irrational roots inside the interval are correctly refused:
        // c^2 - 2 has roots +-sqrt(2), not confined in (-2, 0] for m = 0.
        assert!(!conjugates_in_halfopen_interval(&poly(&[-2, 0, 1]), &BigInt::zero()).unwrap());
    }

    #[test]
    fn conjugates_interval_respects_shifted_m() {
        // (c-4)(c-5) confined in (3, 5].
        let p = &poly(&[-4, 1]) * &poly(&[-5, 1]);
        assert!(conjugates_in_halfopen_interval(&p, &BigInt::from(5)).unwrap());
        assert!(!conjugates_in_halfopen_interval(&p, &BigInt::from(4)).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn integer_roots_found_by_construction(
            roots in proptest::collection::vec(-6i64..7, 1..4),
            extra in -4i64..5,
        ) {
            // Build prod (c - r_i) * (c^2 + extra^2 + 1): integer roots known.
            let mut p = poly(&[extra * extra + 1, 0, 1]);
            for &r in &roots {
                p = &p * &poly(&[-r, 1]);
            }
            let found = integer_roots(&p).unwrap();
            let mut expected: Vec<i64> = roots.clone();
            expected.sort();
            expected.dedup();
            let found_values: Vec<i64> =
                found.iter().map(|(r, _)| r.to_i64().unwrap()).collect();
            prop_assert_eq!(found_values, expected);
            let total: u32 = found.iter().map(|(_, m)| m).sum();
            prop_assert_eq!(total as usize, roots.len());
        }

        #[test]
        fn isolation_intervals_disjoint_and_counted(
            coeffs in proptest::collection::vec(-9i64..10, 2..6),
        ) {
            let p = poly(&coeffs);
            prop_assume!(p.degree().is_some_and(|d| d >= 1));
            let lo = rat(-201, 2);
            let hi = rat(201, 2);
            let width = rat(1, 64);
            match real_roots_in_interval(&p, &lo, &hi, &width) {
                Ok((count, intervals)) => {
                    prop_assert_eq!(count as usize, intervals.len());
                    for w in intervals.windows(2) {
                        prop_assert!(w[0].1 < w[1].0 || w[0].1 == w[0].0 || w[1].0 == w[1].1);
                    }
                }
                Err(Error::EndpointIsRoot { .. }) => {}
                Err(other) => return Err(TestCaseError::fail(alloc::format!("{other:?}"))),
            }
        }

        #[test]
        fn conjugates_interval_matches_known_roots(
            roots in proptest::collection::vec(-3i64..4, 1..5),
            m in -3i64..4,
        ) {
            let mut p = poly(&[1]);
            for &r in &roots {
                p = &p * &poly(&[-r, 1]);
            }
            let expected = roots.iter().all(|&r| m - 2 < r && r <= m);
            prop_assert_eq!(
                conjugates_in_halfopen_interval(&p, &BigInt::from(m)).unwrap(),
                expected
            );
        }
    }
}
