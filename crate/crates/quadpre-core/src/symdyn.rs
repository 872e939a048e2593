//! Preperiodic sign sequences: canonical forms, the shift map,
//! enumeration, and the exact closed-form evaluation of the coding map
//! at `c = -2`.
//!
//! A preperiodic sign sequence is an eventually periodic sequence over
//! `{+1, -1}`. At the boundary parameter `c = -2` the coding map has the
//! trigonometric closed form `2 cos(pi t)` where `t` is the exact
//! rational number with binary digits `delta_n` produced by the flip
//! recursion `delta_n = delta_{n-1}` when `eps_n = +1` and
//! `1 - delta_{n-1}` otherwise. Since the cosine is injective on
//! `[0, pi]` and `t` lands in `[0, 1]`, equality of coding values at
//! `-2` is decidable by exact rational comparison of angles; that is
//! what makes the collision classification a finite exact test.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{cos_pi, BigFixed, Real};

/// Default cap on `k + p` for enumeration.
pub const DEFAULT_ENUMERATION_CAP: u32 = 20;

/// One symbol of a sign sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i32) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidInput("sign symbols must be +1 or -1".to_string())),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Canonical preperiodic sign sequence: a finite prefix word and a
/// nonempty cycle word over `{+1, -1}`.
///
/// The constructors canonicalize, so every held value has minimal
/// period (the cycle is not a repetition of a shorter word) and minimal
/// preperiod (the last prefix symbol differs from the cycle symbol it
/// would otherwise merge with). The represented infinite sequence is
/// `eps_n = prefix[n]` for `n < k` and `cycle[(n - k) mod p]` beyond.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSequence {
    prefix: Vec<Sign>,
    cycle: Vec<Sign>,
}

impl SignSequence {
    /// Builds the canonical representation of `prefix` followed by the
    /// repetition of `cycle`; the cycle must be nonempty.
    pub fn new(mut prefix: Vec<Sign>, mut cycle: Vec<Sign>) -> Result<SignSequence> {
        if cycle.is_empty() {
            return Err(Error::InvalidInput("cycle word must be nonempty".to_string()));
        }
        // Minimal period: the shortest divisor-length pattern repeating
        // through the cycle word.
        let p = (1..=cycle.len())
            .find(|&d| {
                cycle.len().is_multiple_of(d)
                    && cycle.iter().enumerate().all(|(i, &s)| s == cycle[i % d])
            })
            .expect("full length always repeats");
        cycle.truncate(p);
        // Minimal preperiod: fold prefix symbols into the cycle while the
        // last prefix symbol equals the last cycle symbol (rotating the
        // cycle right keeps the same infinite sequence).
        while prefix.last() == cycle.last() && !prefix.is_empty() {
            prefix.pop();
            cycle.rotate_right(1);
        }
        Ok(SignSequence { prefix, cycle })
    }

    /// A purely periodic sequence with the given cycle.
    pub fn periodic(cycle: Vec<Sign>) -> Result<SignSequence> {
        SignSequence::new(Vec::new(), cycle)
    }

    pub fn prefix(&self) -> &[Sign] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Sign] {
        &self.cycle
    }

    /// Minimal preperiod `k`.
    pub fn preperiod(&self) -> usize {
        self.prefix.len()
    }

    /// Minimal period `p`.
    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    /// The symbol `eps_n` of the represented infinite sequence.
    pub fn symbol(&self, n: usize) -> Sign {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The first symbol `eps_0`.
    pub fn first_sign(&self) -> Sign {
        self.symbol(0)
    }

    /// Shift map: drops the first symbol and re-canonicalizes. For a
    /// purely periodic sequence this rotates the cycle.
    pub fn shift(&self) -> SignSequence {
        if self.prefix.is_empty() {
            let mut cycle = self.cycle.clone();
            cycle.rotate_left(1);
            SignSequence { prefix: Vec::new(), cycle }
        } else {
            // Dropping the head cannot create a mergeable tail or a
            // shorter period, so the result is already canonical.
            SignSequence { prefix: self.prefix[1..].to_vec(), cycle: self.cycle.clone() }
        }
    }

    /// The sequence with the first symbol flipped, canonicalized.
    pub fn flip_first(&self) -> SignSequence {
        let mut prefix = self.prefix.clone();
        let mut cycle = self.cycle.clone();
        if prefix.is_empty() {
            prefix.push(cycle[0].flip());
            cycle.rotate_left(1);
        } else {
            prefix[0] = prefix[0].flip();
        }
        SignSequence::new(prefix, cycle).expect("cycle stays nonempty")
    }

    /// Membership in the family of sequences with preperiod at most `k`
    /// and period dividing `p`.
    pub fn fits_cell(&self, k: usize, p: usize) -> bool {
        self.preperiod() <= k && p.is_multiple_of(self.period())
    }

    /// The flip word `delta_0 .. delta_{n_terms - 1}`: running parity
    /// of minus signs, with `delta_{-1} = 0`.
    pub fn delta_sequence(&self, n_terms: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(n_terms);
        let mut delta = 0u8;
        for n in 0..n_terms {
            if self.symbol(n) == Sign::Minus {
                delta = 1 - delta;
            }
            out.push(delta);
        }
        out
    }

    /// The exact angle `t` in `[0, 1]` with `psi_{-2} = 2 cos(pi t)`.
    ///
    /// The flip word is eventually periodic: its tail period is the
    /// sequence period `p` when the cycle contains an even number of
    /// `-1` symbols and `2p` otherwise. Summing the binary expansion in
    /// closed form gives `t` as an exact rational.
    pub fn psi_minus2_angle(&self) -> BigRational {
        let k = self.preperiod();
        let p = self.period();
        let minus_in_cycle = self.cycle.iter().filter(|&&s| s == Sign::Minus).count();
        let q = if minus_in_cycle % 2 == 0 { p } else { 2 * p };
        let delta = self.delta_sequence(k + q);
        // t = P / 2^k + D / (2^k (2^q - 1)) with P the prefix digits and
        // D the tail digits read as binary integers.
        let mut prefix_part = BigInt::zero();
        for &d in &delta[..k] {
            prefix_part = (prefix_part << 1) + BigInt::from(d);
        }
        let mut tail_part = BigInt::zero();
        for &d in &delta[k..] {
            tail_part = (tail_part << 1) + BigInt::from(d);
        }
        let tail_den = (BigInt::one() << q) - BigInt::one();
        let num = prefix_part * &tail_den + tail_part;
        let den = &tail_den << k;
        let t = BigRational::new(num, den);
        debug_assert!(t >= BigRational::zero() && t <= BigRational::one());
        t
    }

    /// The value `psi_{-2} = 2 cos(pi t)` in binary64, together with the
    /// exact angle.
    pub fn psi_minus2(&self) -> (BigRational, f64) {
        let t = self.psi_minus2_angle();
        let v = 2.0 * Float::cos(core::f64::consts::PI * rational_to_f64(&t));
        (t, v)
    }

    /// The value `psi_{-2}` at `bits` fractional bits.
    pub fn psi_minus2_with_bits(&self, bits: u32) -> BigFixed {
        let t = self.psi_minus2_angle();
        let c = cos_pi(&t, bits);
        c.add(&c)
    }
}

impl core::fmt::Display for SignSequence {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for s in &self.prefix {
            write!(f, "{}", s.as_char())?;
        }
        write!(f, "|")?;
        for s in &self.cycle {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl core::str::FromStr for SignSequence {
    type Err = Error;

    /// Parses the text form `"<prefix>|<cycle>"`, e.g. `"+-|+"`; an
    /// empty prefix is written `"|+"`. Input is canonicalized.
    fn from_str(s: &str) -> Result<SignSequence> {
        let (prefix, cycle) = s
            .split_once('|')
            .ok_or_else(|| Error::InvalidInput("sequence text must contain '|'".to_string()))?;
        let word = |w: &str| -> Result<Vec<Sign>> {
            w.chars()
                .map(|ch| match ch {
                    '+' => Ok(Sign::Plus),
                    '-' => Ok(Sign::Minus),
                    other => Err(Error::InvalidInput(alloc::format!(
                        "unexpected character {other:?} in sequence text"
                    ))),
                })
                .collect()
        };
        SignSequence::new(word(prefix)?, word(cycle)?)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Enumerates the family of sequences with preperiod at most `k` and
/// period dividing `p`: all `2^(k+p)` choices of the first `k + p`
/// symbols, optionally filtered to a fixed first sign (half as many).
///
/// Output is in lexicographic order of the symbol words with `+` before
/// `-`. Distinct words represent distinct infinite sequences, so the
/// canonicalized entries are pairwise distinct.
pub fn enumerate(k: u32, p: u32, first_sign: Option<Sign>) -> Result<Vec<SignSequence>> {
    enumerate_with_cap(k, p, first_sign, DEFAULT_ENUMERATION_CAP)
}

/// [`enumerate`] with an explicit cap on `k + p`.
pub fn enumerate_with_cap(
    k: u32,
    p: u32,
    first_sign: Option<Sign>,
    cap: u32,
) -> Result<Vec<SignSequence>> {
    if p == 0 {
        return Err(Error::InvalidInput("period p must be positive".to_string()));
    }
    let n = k + p;
    if n > cap {
        return Err(Error::DepthCapExceeded { requested: n, cap });
    }
    let mut out = Vec::with_capacity(1usize << n);
    for mask in 0u64..(1u64 << n) {
        // Bit i of the mask chooses eps_i; 0 is Plus so that counting
        // order equals lexicographic order with '+' < '-'.
        let sym = |i: u32| -> Sign {
            if mask >> (n - 1 - i) & 1 == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        };
        if let Some(want) = first_sign {
            if sym(0) != want {
                continue;
            }
        }
        let prefix: Vec<Sign> = (0..k).map(sym).collect();
        let cycle: Vec<Sign> = (k..n).map(sym).collect();
        out.push(SignSequence::new(prefix, cycle)?);
    }
    Ok(out)
}

/// Decides the collision pattern of the coding map at `c = -2`: two
/// distinct canonical sequences share a coding value there exactly when
/// both are preperiodic into the fixed cycle `(+1)` with the same
/// preperiod `k >= 2`, their prefixes agree except at position `k - 2`
/// where they are opposite, and both end the prefix with `-1`.
pub fn collides_at_minus2(s1: &SignSequence, s2: &SignSequence) -> bool {
    let k = s1.preperiod();
    if k < 2 || s2.preperiod() != k {
        return false;
    }
    if s1.period() != 1 || s2.period() != 1 {
        return false;
    }
    if s1.cycle()[0] != Sign::Plus || s2.cycle()[0] != Sign::Plus {
        return false;
    }
    if s1.prefix()[k - 1] != Sign::Minus || s2.prefix()[k - 1] != Sign::Minus {
        return false;
    }
    if s1.prefix()[k - 2] != s2.prefix()[k - 2].flip() {
        return false;
    }
    s1.prefix()[..k.saturating_sub(2)] == s2.prefix()[..k.saturating_sub(2)]
}

/// The number of distinct coding values at `c = -2` over the family
/// with preperiod at most `k` and period dividing `p`: `2^p` for
/// `k = 0` and `2^(k+p) - 2^(k-1) + 1` for `k >= 1`.
pub fn count_x_minus2(k: u32, p: u32) -> BigInt {
    if k == 0 {
        BigInt::one() << p
    } else {
        (BigInt::one() << (k + p)) - (BigInt::one() << (k - 1)) + BigInt::one()
    }
}
