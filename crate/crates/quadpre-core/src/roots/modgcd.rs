//! Certified polynomial gcd over the integers via modular images.
//!
//! Gcd images are computed modulo word-size primes and lifted by the
//! Chinese remainder theorem. The lifted candidate is only accepted
//! after exact trial division into both inputs, which upgrades the
//! modular computation to a proof: for a prime `q` not dividing either
//! leading coefficient, the degree of the gcd image mod `q` is at least
//! the degree of the true gcd, so a candidate of the image degree that
//! divides both inputs must equal the primitive gcd up to sign.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

const MAX_PRIMES: usize = 1024;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin; the fixed base set is exact for all u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in MR_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending stream of primes starting just below 2^62.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    let start = (1u64 << 62) - 1;
    (0u64..).map(move |i| start - 2 * i).filter(|&n| is_prime_u64(n))
}

fn reduce_mod(poly: &IntPolynomial, q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    let mut out: Vec<u64> = poly
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&qb).to_u64().expect("residue fits u64"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Remainder of `a` by monic `b` in the field of `q` elements.
fn rem_by_monic_mod(mut a: Vec<u64>, b: &[u64], q: u64) -> Vec<u64> {
    debug_assert_eq!(*b.last().unwrap(), 1);
    while a.len() >= b.len() {
        let lead = *a.last().unwrap();
        let shift = a.len() - b.len();
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let sub = mulmod(lead, bc, q);
                let slot = &mut a[shift + i];
                *slot = if *slot >= sub { *slot - sub } else { *slot + q - sub };
            }
        }
        debug_assert_eq!(*a.last().unwrap(), 0);
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

fn make_monic_mod(mut v: Vec<u64>, q: u64) -> Vec<u64> {
    if let Some(&lc) = v.last() {
        if lc != 1 {
            let inv = powmod(lc, q - 2, q);
            for c in v.iter_mut() {
                *c = mulmod(*c, inv, q);
            }
        }
    }
    v
}

/// Monic gcd of two residue polynomials mod `q`.
fn gcd_mod(a: Vec<u64>, b: Vec<u64>, q: u64) -> Vec<u64> {
    let (mut x, mut y) = (a, b);
    while !y.is_empty() {
        y = make_monic_mod(y, q);
        let r = rem_by_monic_mod(x, &y, q);
        x = y;
        y = r;
    }
    make_monic_mod(x, q)
}

/// Garner step: extends `acc` (symmetric residues mod `modulus`) by the
/// residues `res` mod the fresh prime `q`.
fn crt_step(acc: &mut [BigInt], modulus: &mut BigInt, res: &[u64], q: u64) {
    let qb = BigInt::from(q);
    let m_mod_q = modulus.mod_floor(&qb).to_u64().expect("residue fits u64");
    let m_inv = powmod(m_mod_q, q - 2, q);
    for (slot, &r) in acc.iter_mut().zip(res) {
        let a_mod_q = slot.mod_floor(&qb).to_u64().expect("residue fits u64");
        let diff = if r >= a_mod_q { r - a_mod_q } else { r + q - a_mod_q };
        let t = mulmod(diff, m_inv, q);
        *slot += &*modulus * BigInt::from(t);
    }
    *modulus *= &qb;
    let half = &*modulus >> 1;
    for slot in acc.iter_mut() {
        if *slot > half {
            *slot -= &*modulus;
        }
    }
}

/// Primitive gcd of two integer polynomials, normalized to a positive
/// leading coefficient; contents of the inputs are ignored. The result
/// is certified: it is accepted only after exact division into both
/// primitive parts, together with the modular degree bound.
pub fn certified_gcd(a: &IntPolynomial, b: &IntPolynomial) -> Result<IntPolynomial> {
    if a.is_zero() {
        return Ok(if b.is_zero() { IntPolynomial::zero() } else { b.primitive_part() });
    }
    if b.is_zero() {
        return Ok(a.primitive_part());
    }
    let pa = a.primitive_part();
    let pb = b.primitive_part();
    if pa.degree() == Some(0) || pb.degree() == Some(0) {
        return Ok(IntPolynomial::constant(BigInt::one()));
    }
    let lc_a = pa.leading_coeff().expect("nonzero").clone();
    let lc_b = pb.leading_coeff().expect("nonzero").clone();
    // The true gcd's leading coefficient divides this, so scaling the
    // monic images by it makes the lift an integer polynomial.
    let lead_scale = lc_a.gcd(&lc_b);

    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_lift: Option<Vec<BigInt>> = None;
    let mut used = 0usize;

    for q in primes() {
        if used >= MAX_PRIMES {
            break;
        }
        let qb = BigInt::from(q);
        if lc_a.mod_floor(&qb).is_zero() || lc_b.mod_floor(&qb).is_zero() {
            continue;
        }
        used += 1;
        let g = gcd_mod(reduce_mod(&pa, q), reduce_mod(&pb, q), q);
        let d = g.len() - 1;
        if d == 0 {
            // Coprime image certifies coprime inputs.
            return Ok(IntPolynomial::constant(BigInt::one()));
        }
        if d > best_deg {
            continue; // unlucky prime
        }
        if d < best_deg {
            best_deg = d;
            acc = vec![BigInt::zero(); d + 1];
            modulus = BigInt::one();
            last_lift = None;
        }
        let lq = lead_scale.mod_floor(&qb).to_u64().expect("residue fits u64");
        let scaled: Vec<u64> = g.iter().map(|&c| mulmod(c, lq, q)).collect();
        crt_step(&mut acc, &mut modulus, &scaled, q);
        let stabilized = last_lift.as_deref() == Some(acc.as_slice());
        last_lift = Some(acc.clone());
        if !stabilized && used > 1 {
            continue;
        }
        let candidate = IntPolynomial::from_coeffs(acc.clone());
        if candidate.degree() != Some(best_deg) {
            continue;
        }
        let h = candidate.primitive_part();
        if pa.divide_exact(&h).is_some() && pb.divide_exact(&h).is_some() {
            return Ok(h);
        }
    }
    Err(Error::NumericalBreakdown(alloc::format!(
        "gcd lift did not certify within {MAX_PRIMES} primes"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn primality_known_values() {
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64((1 << 62) - 1));
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(3825123056546413051));
        let first = primes().next().unwrap();
        assert!(first < 1 << 62 && is_prime_u64(first));
    }

    #[test]
    fn shared_quadratic_factor() {
        let common = poly(&[-1, 0, 1]);
        let a = &common * &poly(&[2, 1]);
        let b = &common * &poly(&[-5, 1]);
        assert_eq!(certified_gcd(&a, &b).unwrap(), common);
    }

    #[test]
    fn coprime_inputs() {
        let g = certified_gcd(&poly(&[1, 0, 1]), &poly(&[-3, 1])).unwrap();
        assert_eq!(g, poly(&[1]));
    }

    #[test]
    fn gcd_with_derivative_extracts_repeated_factor() {
        let p = &(&poly(&[1, 1]) * &poly(&[1, 1])) * &poly(&[-2, 1]);
        let g = certified_gcd(&p, &p.derivative()).unwrap();
        assert_eq!(g, poly(&[1, 1]));
    }

    #[test]
    fn large_coefficients_force_multiple_primes() {
        let big = BigInt::one() << 200;
        let shared = IntPolynomial::from_coeffs(vec![-&big, BigInt::one()]);
        let a = &shared * &poly(&[1, 1]);
        let b = &shared * &poly(&[-1, 1]);
        assert_eq!(certified_gcd(&a, &b).unwrap(), shared);
    }

    #[test]
    fn zero_and_constant_edges() {
        let p = poly(&[0, 2, 4]);
        assert_eq!(certified_gcd(&p, &IntPolynomial::zero()).unwrap(), poly(&[0, 1, 2]));
        assert_eq!(
            certified_gcd(&IntPolynomial::zero(), &IntPolynomial::zero()).unwrap(),
            IntPolynomial::zero()
        );
        assert_eq!(certified_gcd(&p, &poly(&[7])).unwrap(), poly(&[1]));
    }

    #[test]
    fn result_sign_is_normalized() {
        let a = poly(&[2, -2]);
        let b = poly(&[4, -4]);
        assert_eq!(certified_gcd(&a, &b).unwrap(), poly(&[-1, 1]));
    }

    proptest! {
        #[test]
        fn divides_both_inputs_and_contains_planted_factor(
            f in proptest::collection::vec(-9i64..10, 1..5),
            g in proptest::collection::vec(-9i64..10, 1..5),
            h in proptest::collection::vec(-9i64..10, 2..5),
        ) {
            let (f, g, h) = (poly(&f), poly(&g), poly(&h));
            prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
            let a = &f * &h;
            let b = &g * &h;
            let d = certified_gcd(&a, &b).unwrap();
            prop_assert!(a.primitive_part().divide_exact(&d).is_some());
            prop_assert!(b.primitive_part().divide_exact(&d).is_some());
            prop_assert!(d.divide_exact(&h.primitive_part()).is_some());
        }
    }
}
