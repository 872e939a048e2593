//! Simultaneous complex root refinement with certified inclusion radii.
//!
//! Roots are refined by Aberth-Ehrlich iteration from a deterministic
//! circular start. Certification does not trust the iteration: for
//! pairwise distinct points `z_1..z_n` the discs centered at `z_j` with
//! radius `n |P(z_j)| / (|lc| prod_{k!=j} |z_j - z_k|)` jointly contain
//! every root of `P`, and when the discs are pairwise disjoint each
//! contains exactly one root (partial-fraction bound on
//! `P(z)/prod(z - z_j)`). The residual `|P(z_j)|` is bounded above by a
//! running-error Horner evaluation, so the radii hold in exact
//! arithmetic despite the binary64 computation.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

const MAX_ITERATIONS: usize = 400;
const EPS: f64 = 2.220446049250313e-16;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SolvedDisc {
    pub z: Complex64,
    pub radius: f64,
    pub certified: bool,
}

/// Horner value of `p` at `z` plus an upper bound on the rounding error
/// of that evaluation (conservative constant times the absolute-value
/// Horner sum).
fn horner_with_error(coeffs: &[f64], z: Complex64) -> (Complex64, f64) {
    let n = coeffs.len();
    let mut acc = Complex64::new(coeffs[n - 1], 0.0);
    let mut abs_acc = coeffs[n - 1].abs();
    let zn = z.norm();
    for &c in coeffs[..n - 1].iter().rev() {
        acc = acc * z + c;
        abs_acc = abs_acc * zn + c.abs();
    }
    (acc, abs_acc * 8.0 * n as f64 * EPS + f64::MIN_POSITIVE)
}

fn horner_derivative(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for (i, &c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * i as f64;
    }
    acc
}

fn to_f64_coeffs(poly: &IntPolynomial) -> Result<Vec<f64>> {
    poly.coeffs()
        .iter()
        .map(|c| {
            let v = c.to_f64().unwrap_or(f64::INFINITY);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::ResourceLimit(
                    "coefficient magnitude exceeds binary64 range in the complex solver"
                        .to_string(),
                ))
            }
        })
        .collect()
}

/// Solves a squarefree polynomial; returns one disc per root and a flag
/// for whether every disc is certified (disjoint and within `tol`).
pub(crate) fn solve(poly: &IntPolynomial, tol: f64) -> Result<Vec<SolvedDisc>> {
    let n = poly.degree().ok_or_else(|| {
        Error::InvalidInput("complex solver requires a nonzero polynomial".to_string())
    })?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let coeffs = to_f64_coeffs(poly)?;
    let lc = coeffs[n];
    if n == 1 {
        let z = Complex64::new(-coeffs[0] / coeffs[1], 0.0);
        let (_, err) = horner_with_error(&coeffs, z);
        return Ok(alloc::vec![SolvedDisc {
            z,
            radius: (err / lc.abs()).max(f64::MIN_POSITIVE),
            certified: true,
        }]);
    }

    // Deterministic start: circle of Cauchy-bound radius around the
    // root centroid, with a fixed angular offset breaking symmetry.
    let centroid = -coeffs[n - 1] / (n as f64 * lc);
    let cauchy = 1.0 + coeffs[..n].iter().map(|c| (c / lc).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let angle = core::f64::consts::TAU * j as f64 / n as f64 + 0.4;
            Complex64::new(centroid, 0.0) + Complex64::from_polar(cauchy, angle)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let (val, _) = horner_with_error(&coeffs, z[j]);
            if val.norm() == 0.0 {
                continue;
            }
            let deriv = horner_derivative(&coeffs, z[j]);
            let newton = if deriv.norm() == 0.0 { Complex64::new(EPS, EPS) } else { val / deriv };
            let mut repulsion = Complex64::zero();
            for k in 0..n {
                if k != j {
                    let d = z[j] - z[k];
                    if d.norm() > 0.0 {
                        repulsion += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            z[j] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[j].norm()));
        }
        if max_step < 4.0 * EPS {
            break;
        }
    }

    // Certified inclusion radii, independent of how the points were
    // produced.
    let mut discs: Vec<SolvedDisc> =
        z.iter().map(|&zj| SolvedDisc { z: zj, radius: f64::INFINITY, certified: false }).collect();
    compute_radii(poly, &coeffs, lc, &mut discs);

    pair_conjugates(&mut discs);

    // Snapping moved centers; the inclusion bound only needs pairwise
    // distinct centers, so radii are recomputed from scratch there.
    compute_radii(poly, &coeffs, lc, &mut discs);

    for j in 0..n {
        if !discs[j].radius.is_finite() || discs[j].radius > tol * (1.0 + discs[j].z.norm()) {
            discs[j].certified = false;
        }
        for k in 0..j {
            let dist = (discs[j].z - discs[k].z).norm();
            if dist <= (discs[j].radius + discs[k].radius) * (1.0 + 16.0 * EPS) {
                discs[j].certified = false;
                discs[k].certified = false;
            }
        }
    }
    discs.sort_by(|a, b| {
        (a.z.re, a.z.im).partial_cmp(&(b.z.re, b.z.im)).expect("finite coordinates")
    });
    Ok(discs)
}

/// Refreshes every disc radius from the inclusion bound
/// `n |P(z_j)| / (|lc| prod |z_j - z_k|)` at the current centers.
/// The residual uses exact integer evaluation at the dyadic center when
/// feasible, falling back to the running-error Horner bound.
fn compute_radii(poly: &IntPolynomial, coeffs: &[f64], lc: f64, discs: &mut [SolvedDisc]) {
    let n = discs.len();
    for j in 0..n {
        let residual = exact_residual_upper(poly, discs[j].z).unwrap_or_else(|| {
            let (val, err) = horner_with_error(coeffs, discs[j].z);
            val.norm() + err
        });
        let mut product = 1.0f64;
        for k in 0..n {
            if k != j {
                product *= (discs[j].z - discs[k].z).norm();
            }
        }
        let radius = if product == 0.0 {
            f64::INFINITY
        } else {
            (n as f64 * residual / (lc.abs() * product)) * (1.0 + 64.0 * n as f64 * EPS)
        };
        discs[j].radius = radius;
        discs[j].certified = radius.is_finite();
    }
}

/// Upper bound on `|P(z)|` from exact evaluation: the binary64 center
/// is decomposed into dyadic rationals and the complex Horner recursion
/// runs on scaled integers, so the only rounding is the final
/// conversion, inflated to stay an upper bound.
fn exact_residual_upper(poly: &IntPolynomial, z: Complex64) -> Option<f64> {
    let (nr, sr) = dyadic_parts(z.re)?;
    let (ni, si) = dyadic_parts(z.im)?;
    let s = sr.max(si);
    if s > 512 {
        return None;
    }
    let nr = nr << (s - sr) as usize;
    let ni = ni << (s - si) as usize;
    let s = s as usize;
    let mut rev = poly.coeffs().iter().rev();
    let mut acc_re = rev.next()?.clone();
    let mut acc_im = BigInt::zero();
    // Invariant: the accumulator value is (acc_re + i acc_im) / 2^t.
    let mut t = 0usize;
    for c in rev {
        let next_re = &acc_re * &nr - &acc_im * &ni + (c << (t + s));
        let next_im = acc_re * &ni + acc_im * &nr;
        acc_re = next_re;
        acc_im = next_im;
        t += s;
    }
    let norm_sq = &acc_re * &acc_re + &acc_im * &acc_im;
    if norm_sq.is_zero() {
        return Some(f64::MIN_POSITIVE);
    }
    // Upper bound on sqrt(norm_sq) / 2^t without building 2^t.
    let bits = norm_sq.bits();
    let drop = bits.saturating_sub(96);
    let mantissa = (norm_sq >> drop) + 1u32;
    let m = mantissa.to_f64()?;
    let root = Float::sqrt(m * (1.0 + 4.0 * EPS)) * (1.0 + 4.0 * EPS);
    let e = drop as i64 - 2 * t as i64;
    let half = e.div_euclid(2);
    let sqrt_two = if e.rem_euclid(2) == 1 { core::f64::consts::SQRT_2 * (1.0 + EPS) } else { 1.0 };
    let scaled = root * sqrt_two * pow2_clamped(half);
    Some(scaled.max(f64::MIN_POSITIVE))
}

fn dyadic_parts(x: f64) -> Option<(BigInt, u32)> {
    let r = BigRational::from_float(x)?;
    let s = (r.denom().bits() - 1) as u32;
    Some((r.numer().clone(), s))
}

fn pow2_clamped(e: i64) -> f64 {
    if e < -1070 {
        0.0
    } else if e > 1020 {
        f64::INFINITY
    } else {
        Float::powi(2.0f64, e as i32)
    }
}

/// Snaps near-real roots onto the axis and makes conjugate pairs
/// numerically exact, enlarging radii so the certified inclusions stay
/// valid.
fn pair_conjugates(discs: &mut [SolvedDisc]) {
    let n = discs.len();
    let mut used = alloc::vec![false; n];
    for j in 0..n {
        if used[j] || discs[j].z.im == 0.0 {
            used[j] = true;
            continue;
        }
        if discs[j].z.im.abs() <= discs[j].radius {
            // A disc meeting the real axis whose partner is itself holds
            // a real root; re-center and keep the inclusion valid.
            discs[j].radius += discs[j].z.im.abs();
            discs[j].z.im = 0.0;
            used[j] = true;
            continue;
        }
        let mut best: Option<(usize, f64)> = None;
        for k in j + 1..n {
            if used[k] {
                continue;
            }
            let d = (discs[j].z.conj() - discs[k].z).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((k, d));
            }
        }
        if let Some((k, d)) = best {
            if d <= discs[j].radius + discs[k].radius {
                let (lo, hi) = if discs[j].z.im < discs[k].z.im { (j, k) } else { (k, j) };
                let center = 0.5 * (discs[hi].z + discs[lo].z.conj());
                let grow = d;
                discs[hi].z = center;
                discs[lo].z = center.conj();
                discs[hi].radius += grow;
                discs[lo].radius += grow;
                used[j] = true;
                used[k] = true;
                continue;
            }
        }
        // No conjugate partner within reach: leave it, the disjointness
        // pass will mark it uncertified if this breaks closure.
        used[j] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn solve_ok(p: &IntPolynomial, tol: f64) -> Vec<SolvedDisc> {
        let discs = solve(p, tol).unwrap();
        assert!(discs.iter().all(|d| d.certified), "{discs:?}");
        discs
    }

    #[test]
    fn quadratic_with_conjugate_pair() {
        // c^2 + c + 1: roots -1/2 +- i sqrt(3)/2.
        let discs = solve_ok(&poly(&[1, 1, 1]), 1e-10);
        assert_eq!(discs.len(), 2);
        let expected_im = 3.0f64.sqrt() / 2.0;
        for d in &discs {
            assert!((d.z.re + 0.5).abs() < 1e-10);
            assert!((d.z.im.abs() - expected_im).abs() < 1e-10);
            assert!(d.radius <= 1e-10 * (1.0 + d.z.norm()));
        }
        assert_eq!(discs[0].z, discs[1].z.conj());
    }

    #[test]
    fn cubic_with_one_real_root() {
        // c^3 + 2c^2 + c + 1, the period-3 core factor.
        let discs = solve_ok(&poly(&[1, 1, 2, 1]), 1e-10);
        let real: Vec<_> = discs.iter().filter(|d| d.z.im == 0.0).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].z.re + 1.7548776662466927).abs() < 1e-9);
        let complex: Vec<_> = discs.iter().filter(|d| d.z.im != 0.0).collect();
        assert!((complex[0].z.re + 0.12256116687665).abs() < 1e-9);
        assert!((complex[0].z.im.abs() - 0.7448617666197442).abs() < 1e-9);
    }

    #[test]
    fn distinct_integer_grid_roots() {
        // prod (c - j), j = 1..8: well separated integers.
        let mut p = poly(&[1]);
        for j in 1..=8i64 {
            p = &p * &poly(&[-j, 1]);
        }
        let discs = solve_ok(&p, 1e-9);
        for (j, d) in discs.iter().enumerate() {
            assert!((d.z.re - (j as f64 + 1.0)).abs() < 1e-9);
            assert_eq!(d.z.im, 0.0);
        }
    }

    #[test]
    fn repeated_root_is_not_certified() {
        // (c - 1)^2 fed directly: overlapping discs must not certify.
        let discs = solve(&poly(&[1, -2, 1]), 1e-10).unwrap();
        assert!(discs.iter().any(|d| !d.certified));
    }

    #[test]
    fn linear_fast_path() {
        let discs = solve_ok(&poly(&[-7, 2]), 1e-12);
        assert_eq!(discs.len(), 1);
        assert!((discs[0].z.re - 3.5).abs() < 1e-14);
    }

    #[test]
    fn oversized_coefficients_are_rejected() {
        let huge =
            IntPolynomial::from_coeffs(alloc::vec![BigInt::from(1) << 1100, BigInt::from(1),]);
        assert!(matches!(solve(&huge, 1e-10), Err(Error::ResourceLimit(_))));
    }
}
