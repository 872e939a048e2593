//! Serializable views of core results. Big integers and rationals are
//! carried as decimal / `n/d` strings so JSON output is exact at any
//! magnitude; binary64 fields serialize with shortest round-trip text.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use quadpre_core::paramsets::{
    CommonElement, ElementProvenance, IntersectionReport, Localization, ParamSetReport,
};
use quadpre_core::poly::IntPolynomial;
use quadpre_core::roots::{ComplexRootApprox, RealRootInterval, RootSet};

/// Renders a rational as `n` or `n/d` text.
pub fn rational_str(r: &BigRational) -> String {
    r.to_string()
}

/// Nearest binary64 to a rational; NaN when out of range.
pub fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Fixed-point decimal expansion of a rational, rounded half away from
/// zero at `digits` fractional digits. Deterministic at every input.
pub fn decimal_str(r: &BigRational, digits: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let doubled = abs.numer() * &scale * 2u32;
    let den = abs.denom();
    // Round half away from zero: floor((2 n 10^d / den + 1) / 2).
    let scaled = (doubled / den + 1u32) / 2u32;
    let text = scaled.to_string();
    let width = digits as usize + 1;
    let padded = if text.len() < width {
        let mut s = String::new();
        for _ in 0..width - text.len() {
            s.push('0');
        }
        s + &text
    } else {
        text
    };
    let split = padded.len() - digits as usize;
    format!("{sign}{}.{}", &padded[..split], &padded[split..])
}

/// Fractional decimal digits faithful to `bits` of binary precision.
pub fn digits_for_bits(bits: u32) -> u32 {
    // floor(bits * log10(2)) with integer arithmetic.
    ((bits as u64 * 30103) / 100_000) as u32
}

#[derive(Serialize, Debug)]
pub struct PolynomialDto {
    pub degree: u64,
    /// Ascending powers, exact decimal text.
    pub coefficients: Vec<String>,
    /// Human-readable form in the source variable.
    pub display: String,
}

impl PolynomialDto {
    pub fn new(p: &IntPolynomial, var: &str) -> PolynomialDto {
        PolynomialDto {
            degree: p.degree().unwrap_or(0) as u64,
            coefficients: p.coeffs().iter().map(|c| c.to_string()).collect(),
            display: poly_text(p, var),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct IterateDto {
    pub a: i64,
    pub n: u32,
    pub polynomial: PolynomialDto,
}

#[derive(Serialize, Debug)]
pub struct IntegerRootDto {
    pub value: String,
    pub multiplicity: u32,
}

#[derive(Serialize, Debug)]
pub struct RealIntervalDto {
    /// Exact rational bracket endpoints.
    pub lo: String,
    pub hi: String,
    pub approx: f64,
    pub multiplicity: u32,
}

impl From<&RealRootInterval> for RealIntervalDto {
    fn from(r: &RealRootInterval) -> RealIntervalDto {
        let mid = (&r.lo + &r.hi) / BigRational::from_integer(BigInt::from(2));
        RealIntervalDto {
            lo: rational_str(&r.lo),
            hi: rational_str(&r.hi),
            approx: rational_f64(&mid),
            multiplicity: r.multiplicity,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct ComplexRootDto {
    pub re: f64,
    pub im: f64,
    /// Certified inclusion radius around (re, im).
    pub radius: f64,
    pub multiplicity: u32,
    pub certified: bool,
}

impl From<&ComplexRootApprox> for ComplexRootDto {
    fn from(r: &ComplexRootApprox) -> ComplexRootDto {
        ComplexRootDto {
            re: r.re,
            im: r.im,
            radius: r.radius,
            multiplicity: r.multiplicity,
            certified: r.certified,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct RootSetDto {
    pub degree: u64,
    pub integer_roots: Vec<IntegerRootDto>,
    pub real_intervals: Vec<RealIntervalDto>,
    pub complex_roots: Vec<ComplexRootDto>,
    /// True when multiplicities sum to the source degree.
    pub complete: bool,
}

impl From<&RootSet> for RootSetDto {
    fn from(set: &RootSet) -> RootSetDto {
        RootSetDto {
            degree: set.source_poly_degree,
            integer_roots: set
                .exact_integer_roots
                .iter()
                .map(|(v, m)| IntegerRootDto { value: v.to_string(), multiplicity: *m })
                .collect(),
            real_intervals: set.isolated_real_roots.iter().map(RealIntervalDto::from).collect(),
            complex_roots: set.complex_roots.iter().map(ComplexRootDto::from).collect(),
            complete: set.is_complete(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct LocalizationDto {
    pub disk_radius: f64,
    pub interval_lo: Option<f64>,
    pub interval_hi: Option<f64>,
}

impl From<&Localization> for LocalizationDto {
    fn from(loc: &Localization) -> LocalizationDto {
        LocalizationDto {
            disk_radius: loc.disk_radius,
            interval_lo: loc.interval.map(|(lo, _)| lo),
            interval_hi: loc.interval.map(|(_, hi)| hi),
        }
    }
}

pub fn provenance_str(p: ElementProvenance) -> &'static str {
    match p {
        ElementProvenance::ExactInteger => "exact-integer",
        ElementProvenance::SturmIsolated => "sturm-isolated",
        ElementProvenance::ComplexCertified => "complex-certified",
        ElementProvenance::CodingConfirmed => "coding-confirmed",
    }
}

#[derive(Serialize, Debug)]
pub struct ParamSetDto {
    pub a: i64,
    pub k: u32,
    pub p: u32,
    pub roots: RootSetDto,
    pub certified_real_count: Option<u64>,
    pub localization: LocalizationDto,
    /// One entry per element, same order as the root listing.
    pub provenance: Vec<String>,
    pub notes: Vec<String>,
    /// Present when cross-validation against the coding solver ran.
    pub coding_confirmed: Option<bool>,
}

impl From<&ParamSetReport> for ParamSetDto {
    fn from(r: &ParamSetReport) -> ParamSetDto {
        ParamSetDto {
            a: r.a,
            k: r.k,
            p: r.p,
            roots: RootSetDto::from(&r.roots),
            certified_real_count: r.certified_real_count,
            localization: LocalizationDto::from(&r.localization),
            provenance: r.provenance.iter().map(|&p| provenance_str(p).to_string()).collect(),
            notes: r.notes.clone(),
            coding_confirmed: None,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct PointSetDto {
    pub c: String,
    pub k: u32,
    pub p: u32,
    pub roots: RootSetDto,
}

#[derive(Serialize, Debug)]
pub struct CommonElementDto {
    pub value: String,
    pub a_preperiod: u32,
    pub a_period: u32,
    pub b_preperiod: u32,
    pub b_period: u32,
}

impl From<&CommonElement> for CommonElementDto {
    fn from(e: &CommonElement) -> CommonElementDto {
        CommonElementDto {
            value: e.value.to_string(),
            a_preperiod: e.a_cell.0,
            a_period: e.a_cell.1,
            b_preperiod: e.b_cell.0,
            b_period: e.b_cell.1,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct IntersectionDto {
    pub a: i64,
    pub b: i64,
    pub k_max: u32,
    pub p_max: u32,
    pub common: Vec<CommonElementDto>,
    /// Classified set for the covered pair shapes, exact decimal text.
    pub expected: Option<Vec<String>>,
    pub matches_classification: Option<bool>,
    /// True when geometry certifies the result at unbounded depth.
    pub complete: bool,
    pub residual_notes: Vec<String>,
}

impl From<&IntersectionReport> for IntersectionDto {
    fn from(r: &IntersectionReport) -> IntersectionDto {
        IntersectionDto {
            a: r.a,
            b: r.b,
            k_max: r.k_max,
            p_max: r.p_max,
            common: r.common.iter().map(CommonElementDto::from).collect(),
            expected: r
                .expected_verdict
                .as_ref()
                .map(|v| v.iter().map(|x| x.to_string()).collect()),
            matches_classification: r.verdict_matches,
            complete: r.complete,
            residual_notes: r.residual_notes.clone(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct CodeDto {
    pub c: f64,
    pub sequence: String,
    pub preperiod: u64,
    pub period: u64,
    /// Coding-map value of the sequence at `c`.
    pub value: f64,
    /// Decimal expansion at the working precision, when above binary64.
    pub high_precision: Option<String>,
    /// `|f_c(psi(eps)) - psi(shift eps)|`.
    pub conjugacy_residual: f64,
    /// Signs of the forward orbit of the returned value.
    pub itinerary: String,
}

#[derive(Serialize, Debug)]
pub struct GammaDto {
    pub a: f64,
    pub sequence: String,
    /// Parameter where the coding value of the sequence equals `a`.
    pub value: f64,
    pub high_precision: Option<String>,
    /// `|zeta_seq(value) - a|`.
    pub residual: f64,
}

#[derive(Serialize, Debug)]
pub struct CheckItemDto {
    pub name: String,
    pub ok: bool,
    /// Failure detail, empty when ok.
    pub detail: String,
}

#[derive(Serialize, Debug)]
pub struct CheckDto {
    pub checks: Vec<CheckItemDto>,
    pub all_ok: bool,
}

/// Pretty one-line polynomial in the named variable, descending powers.
pub fn poly_text(p: &IntPolynomial, var: &str) -> String {
    let Some(deg) = p.degree() else {
        return "0".to_string();
    };
    let mut out = String::new();
    for (i, coeff) in p.coeffs().iter().enumerate().rev() {
        if coeff.is_zero() {
            continue;
        }
        let abs = coeff.abs();
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let unit = abs == BigInt::from(1u32);
        match i {
            0 => out.push_str(&abs.to_string()),
            1 => {
                if !unit {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(var);
            }
            _ => {
                if !unit {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&format!("{var}^{i}"));
            }
        }
    }
    debug_assert!(deg > 0 || !out.is_empty());
    out
}
