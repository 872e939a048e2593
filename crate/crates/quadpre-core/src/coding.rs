//! Real coding solver for `c <= -2`.
//!
//! For such parameters the interval `[-beta_c, beta_c]` is invariant
//! enough for symbolic dynamics: the two inverse branches
//! `g_c^eps(z) = eps sqrt(z - c)` map it into itself, a composition of
//! branches along a cycle word has a unique fixed point, and sending a
//! preperiodic sign sequence to `g^(prefix)` of that fixed point
//! realizes the sequence as an itinerary. Everything here is plain
//! bisection: the underlying results guarantee unique roots and
//! bracketing sign configurations, while derivatives degenerate at
//! `c = -2`, so no Newton steps are attempted. All solvers are generic
//! over the numeric carrier, letting the same code run in binary64 or
//! fixed-point with configurable precision.

use crate::error::{Error, Result};
use crate::numeric::{BigFixed, Real};
use crate::symdyn::{Sign, SignSequence};

use alloc::string::ToString;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Default absolute tolerance for both z- and c-bisections.
pub const DEFAULT_SOLVE_TOL: f64 = 1e-12;

/// Fixed-point data of `z^2 + c` on the real line, for `c <= 1/4`.
#[derive(Clone, Debug)]
pub struct RealMapParams<R: Real> {
    pub c: R,
    /// Smaller fixed point `(1 - sqrt(1-4c))/2`.
    pub alpha: R,
    /// Larger fixed point `(1 + sqrt(1-4c))/2`.
    pub beta: R,
    /// Escape radius `(1 + sqrt(1+4|c|))/2`; beyond it orbits diverge.
    pub rho: R,
}

impl<R: Real> RealMapParams<R> {
    pub fn new(c: R) -> Result<RealMapParams<R>> {
        let quarter = R::from_f64(0.25, &c);
        if c > quarter {
            return Err(Error::DomainViolation("real fixed points require c <= 1/4".to_string()));
        }
        let one = R::from_f64(1.0, &c);
        let four = R::from_f64(4.0, &c);
        let disc = one.sub(&four.mul(&c)).sqrt_nonneg();
        let alpha = one.sub(&disc).half();
        let beta = one.add(&disc).half();
        let rho = one.add(&one.add(&four.mul(&c.abs())).sqrt_nonneg()).half();
        Ok(RealMapParams { c, alpha, beta, rho })
    }
}

/// One application of `z^2 + c`.
pub fn quadratic_step<R: Real>(c: &R, z: &R) -> R {
    z.mul(z).add(c)
}

/// The dynamical interval `[-beta_c, beta_c]` for `c <= -2`, together
/// with the inner radius `sqrt(-beta_c - c)`: the inverse branches map
/// the interval onto `[eps * inner, eps * beta]`.
#[derive(Clone, Debug)]
pub struct CriticalInterval<R: Real> {
    pub params: RealMapParams<R>,
    pub inner_radius: R,
}

impl<R: Real> CriticalInterval<R> {
    pub fn new(c: R) -> Result<CriticalInterval<R>> {
        let minus_two = R::from_f64(-2.0, &c);
        if c > minus_two {
            return Err(Error::DomainViolation("coding requires c <= -2".to_string()));
        }
        let params = RealMapParams::new(c)?;
        let inner_radius = params.beta.neg().sub(&params.c).sqrt_nonneg();
        Ok(CriticalInterval { params, inner_radius })
    }

    pub fn contains(&self, z: &R) -> bool {
        z.abs() <= self.params.beta
    }
}

/// Inverse branch `eps * sqrt(z - c)`; errors when `z < c`, where the
/// square root leaves the real line.
pub fn g_branch<R: Real>(c: &R, eps: Sign, z: &R) -> Result<R> {
    if z < c {
        return Err(Error::DomainViolation("inverse branch requires z >= c".to_string()));
    }
    Ok(g_apply(c, eps, z))
}

/// Clamped inverse branch for internal compositions: rounding dust
/// below `c` is absorbed by the nonnegative square root.
fn g_apply<R: Real>(c: &R, eps: Sign, z: &R) -> R {
    let root = z.sub(c).sqrt_nonneg();
    match eps {
        Sign::Plus => root,
        Sign::Minus => root.neg(),
    }
}

fn apply_word<R: Real>(c: &R, word: &[Sign], z: &R) -> R {
    word.iter().rev().fold(z.clone(), |acc, &eps| g_apply(c, eps, &acc))
}

/// The unique fixed point of `g^(eps_0) o ... o g^(eps_(p-1))` in
/// `[-beta_c, beta_c]`, located by bisection on `h(z) = g^word(z) - z`
/// with the bracket `h(-beta) >= 0 >= h(beta)`.
pub fn fixed_point<R: Real>(c: &R, word: &[Sign], tol: &R) -> Result<R> {
    if word.is_empty() {
        return Err(Error::InvalidInput("cycle word must be nonempty".to_string()));
    }
    let zero = R::from_f64(0.0, c);
    if tol <= &zero {
        return Err(Error::InvalidInput("tolerance must be positive".to_string()));
    }
    let interval = CriticalInterval::new(c.clone())?;
    let beta = interval.params.beta.clone();
    let mut lo = beta.neg();
    let mut hi = beta;
    let h = |z: &R| apply_word(c, word, z).sub(z);
    let h_lo = h(&lo);
    let h_hi = h(&hi);
    // In exact arithmetic h(-beta) >= 0 >= h(beta), since the branches
    // map the interval into itself; endpoint fixed points (for example
    // the all-plus cycle at beta) can flip the sign by rounding, so the
    // bracket allows tolerance-size violations.
    if h_lo < zero.sub(tol) || h_hi > *tol {
        return Err(Error::NumericalBreakdown(alloc::format!(
            "fixed-point bracket failed: h(-beta) = {:?}, h(beta) = {:?}",
            h_lo,
            h_hi
        )));
    }
    while hi.sub(&lo) > *tol {
        let mid = lo.add(&hi).half();
        if h(&mid) >= zero {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo.add(&hi).half())
}

/// Applies a prefix of branch choices outward from a point, innermost
/// symbol first.
pub fn apply_prefix<R: Real>(c: &R, prefix: &[Sign], z: R) -> R {
    prefix.iter().rev().fold(z, |w, &eps| g_apply(c, eps, &w))
}

/// Coding map by construction: the cycle's fixed point pushed through
/// the prefix branches. Pure solver path; works at `c = -2` as well.
pub fn psi_solve<R: Real>(c: &R, seq: &SignSequence, tol: &R) -> Result<R> {
    let cycle_point = fixed_point(c, seq.cycle(), tol)?;
    Ok(apply_prefix(c, seq.prefix(), cycle_point))
}

/// Coding map in binary64. At `c = -2` exactly this delegates to the
/// closed-form cosine evaluation, avoiding the degenerate inner radius.
pub fn psi_f64(c: f64, seq: &SignSequence) -> Result<f64> {
    if c > -2.0 {
        return Err(Error::DomainViolation("coding requires c <= -2".to_string()));
    }
    if c == -2.0 {
        return Ok(seq.psi_minus2().1);
    }
    psi_solve(&c, seq, &DEFAULT_SOLVE_TOL)
}

/// Coding map in fixed point at the precision carried by `c`; delegates
/// to the exact-angle cosine at `c = -2`.
pub fn psi_precise(c: &BigFixed, seq: &SignSequence) -> Result<BigFixed> {
    let minus_two = BigFixed::from_f64(-2.0, c);
    if *c > minus_two {
        return Err(Error::DomainViolation("coding requires c <= -2".to_string()));
    }
    if *c == minus_two {
        return Ok(seq.psi_minus2_with_bits(c.bits()));
    }
    let tol_shift = c.bits().saturating_sub(16).max(8);
    let tol = BigFixed::from_rational(
        &BigRational::new(BigInt::from(1), BigInt::from(1) << tol_shift),
        c.bits(),
    );
    psi_solve(c, seq, &tol)
}

/// Parameter-side view of the coding map: the same value as `psi` with
/// the argument order swapped; the solver `gamma` bisects this in `c`.
pub fn zeta_f64(seq: &SignSequence, c: f64) -> Result<f64> {
    psi_f64(c, seq)
}

/// Left endpoint `c_a^- = -a^2 - sqrt(a^2+1) - 1` of the localization
/// interval.
pub fn c_interval_minus<R: Real>(a: &R) -> R {
    let one = R::from_f64(1.0, a);
    let a_sq = a.mul(a);
    a_sq.neg().sub(&a_sq.add(&one).sqrt_nonneg()).sub(&one)
}

/// Right endpoint `c_a^+ = -a^2 + |a|` of the localization interval.
pub fn c_interval_plus<R: Real>(a: &R) -> R {
    a.abs().sub(&a.mul(a))
}

/// Solves `zeta_seq(c) = a` for `c` in `[c_a^-, c_a^+]` by bisection,
/// using the bracket `sgn(a) zeta(c_a^-) >= |a| >= sgn(a) zeta(c_a^+)`.
/// Requires `|a| >= 2` and a first sign matching the sign of `a`.
pub fn gamma_solve<R: Real>(a: &R, seq: &SignSequence, tol: &R) -> Result<R> {
    let zero = R::from_f64(0.0, a);
    let two = R::from_f64(2.0, a);
    let abs_a = a.abs();
    if abs_a < two {
        return Err(Error::DomainViolation("parameter solver requires |a| >= 2".to_string()));
    }
    let expected = if *a > zero { Sign::Plus } else { Sign::Minus };
    if seq.first_sign() != expected {
        return Err(Error::DomainViolation(
            "first sign of the sequence must match the sign of a".to_string(),
        ));
    }
    if tol <= &zero {
        return Err(Error::InvalidInput("tolerance must be positive".to_string()));
    }
    let positive = expected == Sign::Plus;
    let h = |c: &R| -> Result<R> {
        let z = psi_solve(c, seq, tol)?;
        let signed = if positive { z } else { z.neg() };
        Ok(signed.sub(&abs_a))
    };
    let lo0 = c_interval_minus(a);
    let hi0 = c_interval_plus(a);
    let minus_two = R::from_f64(-2.0, a);
    let mut slack = tol.clone();
    for _ in 0..5 {
        let lo = lo0.sub(&slack);
        let hi_raw = hi0.add(&slack);
        let hi = if hi_raw > minus_two { minus_two.clone() } else { hi_raw };
        let h_lo = h(&lo)?;
        let h_hi = h(&hi)?;
        if h_lo >= zero && h_hi <= zero {
            let (mut lo, mut hi) = (lo, hi);
            while hi.sub(&lo) > *tol {
                let mid = lo.add(&hi).half();
                if h(&mid)? >= zero {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(lo.add(&hi).half());
        }
        let eight = R::from_f64(8.0, a);
        slack = slack.mul(&eight);
    }
    Err(Error::NumericalBreakdown(
        "parameter bisection bracket failed after endpoint widening".to_string(),
    ))
}

/// Binary64 parameter solver at the default tolerance.
pub fn gamma_f64(a: f64, seq: &SignSequence) -> Result<f64> {
    gamma_solve(&a, seq, &DEFAULT_SOLVE_TOL)
}
