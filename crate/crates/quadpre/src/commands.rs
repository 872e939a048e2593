//! Command implementations: each builds a serializable view from core
//! results and renders it in the configured format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use quadpre_core::coding;
use quadpre_core::numeric::{self, BigFixed};
use quadpre_core::paramsets;
use quadpre_core::poly;
use quadpre_core::symdyn::{self, Sign, SignSequence};

use crate::config::{Cli, CliError, Command, Format, PlotKind, RunConfig};
use crate::dto::{
    decimal_str, digits_for_bits, rational_str, CheckDto, CheckItemDto, CodeDto, GammaDto,
    IntersectionDto, IterateDto, ParamSetDto, PointSetDto, PolynomialDto, RootSetDto,
};
use crate::render;

/// Runs the selected command and returns the rendered output.
pub fn dispatch(cli: &Cli) -> Result<String, CliError> {
    let config = RunConfig::resolve(cli)?;
    match &cli.command {
        Command::Iterate { a, n } => iterate_cmd(*a, *n, &config),
        Command::Params { a, k, p, confirm } => params_cmd(*a, *k, *p, *confirm, &config),
        Command::Points { c, k, p } => points_cmd(c, *k, *p, &config),
        Command::Intersect { a, b, depth } => intersect_cmd(*a, *b, *depth, &config),
        Command::Code { c, seq } => code_cmd(*c, seq, &config),
        Command::Gamma { a, seq } => gamma_cmd(*a, seq, &config),
        Command::VerifyTheorem { a, b, depth } => verify_theorem_cmd(*a, *b, *depth, &config),
        Command::PlotData { kind, a, c, lo, hi, samples } => {
            plot_data_cmd(cli, *kind, *a, *c, *lo, *hi, *samples)
        }
        Command::Check => check_cmd(&config),
    }
}

fn iterate_cmd(a: i64, n: u32, config: &RunConfig) -> Result<String, CliError> {
    let poly = poly::iterate_poly_with_cap(a, n, config.degree_cap)?;
    let dto = IterateDto { a, n, polynomial: PolynomialDto::new(&poly, "c") };
    Ok(render::iterate(&dto, config.format))
}

fn params_cmd(
    a: i64,
    k: u32,
    p: u32,
    confirm: bool,
    config: &RunConfig,
) -> Result<String, CliError> {
    let mut report = paramsets::param_set_with_cap(a, k, p, config.degree_cap)?;
    let coding_confirmed =
        if confirm { Some(paramsets::confirm_with_coding(&mut report)?) } else { None };
    let mut dto = ParamSetDto::from(&report);
    dto.coding_confirmed = coding_confirmed;
    Ok(render::params(&dto, config.format))
}

fn points_cmd(c_text: &str, k: u32, p: u32, config: &RunConfig) -> Result<String, CliError> {
    let c = parse_rational(c_text)?;
    let roots = paramsets::point_set_with_cap(&c, k, p, config.degree_cap)?;
    let dto = PointSetDto { c: rational_str(&c), k, p, roots: RootSetDto::from(&roots) };
    Ok(render::points(&dto, config.format))
}

fn intersect_cmd(a: i64, b: i64, depth: u32, config: &RunConfig) -> Result<String, CliError> {
    let report = paramsets::intersect_with_cap(a, b, depth, depth, config.degree_cap)?;
    let dto = IntersectionDto::from(&report);
    Ok(render::intersect(&dto, config.format))
}

fn code_cmd(c: f64, seq_text: &str, config: &RunConfig) -> Result<String, CliError> {
    let seq: SignSequence = seq_text.parse()?;
    let value = coding::psi_f64(c, &seq)?;
    let shifted = coding::psi_f64(c, &seq.shift())?;
    let conjugacy_residual = (value * value + c - shifted).abs();
    let steps = seq.preperiod() + 2 * seq.period();
    let mut itinerary = String::with_capacity(steps);
    let mut z = value;
    for _ in 0..steps {
        itinerary.push(if z > 0.0 {
            '+'
        } else if z < 0.0 {
            '-'
        } else {
            '0'
        });
        z = z * z + c;
    }
    let high_precision = if config.precision_bits > 53 {
        let bits = config.precision_bits;
        let c_fix = BigFixed::from_f64_with_bits(c, bits);
        let v = coding::psi_precise(&c_fix, &seq)?;
        Some(decimal_str(&v.to_rational(), digits_for_bits(bits)))
    } else {
        None
    };
    let dto = CodeDto {
        c,
        sequence: seq.to_string(),
        preperiod: seq.preperiod() as u64,
        period: seq.period() as u64,
        value,
        high_precision,
        conjugacy_residual,
        itinerary,
    };
    Ok(render::code(&dto, config.format))
}

fn gamma_cmd(a: f64, seq_text: &str, config: &RunConfig) -> Result<String, CliError> {
    let seq: SignSequence = seq_text.parse()?;
    let value = coding::gamma_f64(a, &seq)?;
    let residual = (coding::zeta_f64(&seq, value)? - a).abs();
    let high_precision = if config.precision_bits > 53 {
        let bits = config.precision_bits;
        let a_fix = BigFixed::from_f64_with_bits(a, bits);
        let tol = BigFixed::from_rational(
            &BigRational::new(BigInt::from(1), BigInt::from(1) << (bits - 16)),
            bits,
        );
        let g = coding::gamma_solve(&a_fix, &seq, &tol)?;
        Some(decimal_str(&g.to_rational(), digits_for_bits(bits)))
    } else {
        None
    };
    let dto = GammaDto { a, sequence: seq.to_string(), value, high_precision, residual };
    Ok(render::gamma(&dto, config.format))
}

fn verify_theorem_cmd(a: i64, b: i64, depth: u32, config: &RunConfig) -> Result<String, CliError> {
    let report = paramsets::intersect_with_cap(a, b, depth, depth, config.degree_cap)?;
    let dto = IntersectionDto::from(&report);
    match report.verdict_matches {
        None => Err(CliError::Usage(
            "the classified intersection covers pairs with |b| > |a|; swap --a and --b".to_string(),
        )),
        Some(true) => Ok(render::verify(&dto, config.format)),
        Some(false) => Err(CliError::Certification(render::verify_failure_text(&dto))),
    }
}

#[allow(clippy::too_many_arguments)]
fn plot_data_cmd(
    cli: &Cli,
    kind: PlotKind,
    a: Option<f64>,
    c: Option<f64>,
    lo: Option<f64>,
    hi: Option<f64>,
    samples: usize,
) -> Result<String, CliError> {
    if !matches!(cli.format, None | Some(Format::Csv)) {
        return Err(CliError::Usage(
            "plot-data emits CSV; pass --format csv or omit --format".to_string(),
        ));
    }
    if samples < 2 {
        return Err(CliError::Usage(format!("samples must be at least 2, got {samples}")));
    }
    let range = |dlo: f64, dhi: f64| -> Result<(f64, f64), CliError> {
        let lo = lo.unwrap_or(dlo);
        let hi = hi.unwrap_or(dhi);
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(CliError::Usage(format!("invalid sample range [{lo}, {hi}]")));
        }
        Ok((lo, hi))
    };
    // First four iterates suffice to show the cell structure at small
    // depths without flooding the table.
    let orbit_row = |first: f64, x0: f64, step_c: f64| -> Vec<String> {
        let mut row = vec![render::f64_str(x0)];
        let mut f = first;
        row.push(render::f64_str(f));
        for _ in 0..3 {
            f = f * f + step_c;
            row.push(render::f64_str(f));
        }
        row
    };
    match kind {
        PlotKind::ParamCurves => {
            let a = a.ok_or_else(|| CliError::Usage("param-curves requires --a".to_string()))?;
            let (lo, hi) =
                range(coding::c_interval_minus(&a) - 1.0, coding::c_interval_plus(&a) + 1.0)?;
            let rows: Vec<Vec<String>> = numeric::linspace(lo, hi, samples)
                .into_iter()
                .map(|x| orbit_row(a, x, x))
                .collect();
            Ok(render::csv_table(&["c", "F0", "F1", "F2", "F3"], &rows))
        }
        PlotKind::DynCurves => {
            let c = c.ok_or_else(|| CliError::Usage("dyn-curves requires --c".to_string()))?;
            let rho = 0.5 * (1.0 + (1.0 + 4.0 * c.abs()).sqrt());
            let (lo, hi) = range(-rho, rho)?;
            let rows: Vec<Vec<String>> = numeric::linspace(lo, hi, samples)
                .into_iter()
                .map(|z| orbit_row(z, z, c))
                .collect();
            Ok(render::csv_table(&["z", "F0", "F1", "F2", "F3"], &rows))
        }
        PlotKind::ZetaCurves => {
            let a = a.ok_or_else(|| CliError::Usage("zeta-curves requires --a".to_string()))?;
            let dlo = coding::c_interval_minus(&a);
            let dhi = coding::c_interval_plus(&a).min(-2.0);
            let (lo, hi) = range(dlo, dhi.max(dlo))?;
            if hi > -2.0 {
                return Err(CliError::Usage(format!(
                    "coding curves require c <= -2, got upper end {hi}"
                )));
            }
            let seqs = symdyn::enumerate(2, 1, Some(Sign::Plus))?;
            let mut header: Vec<String> = vec!["c".to_string()];
            header.extend(seqs.iter().map(|s| s.to_string()));
            let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
            let mut rows = Vec::with_capacity(samples);
            for x in numeric::linspace(lo, hi, samples) {
                let mut row = vec![render::f64_str(x)];
                for s in &seqs {
                    row.push(render::f64_str(coding::zeta_f64(s, x)?));
                }
                rows.push(row);
            }
            Ok(render::csv_table(&header_refs, &rows))
        }
    }
}

fn run_check<F>(name: &str, f: F) -> CheckItemDto
where
    F: FnOnce() -> quadpre_core::Result<bool>,
{
    match f() {
        Ok(true) => CheckItemDto { name: name.to_string(), ok: true, detail: String::new() },
        Ok(false) => CheckItemDto {
            name: name.to_string(),
            ok: false,
            detail: "invariant violated".to_string(),
        },
        Err(e) => CheckItemDto { name: name.to_string(), ok: false, detail: e.to_string() },
    }
}

fn check_cmd(config: &RunConfig) -> Result<String, CliError> {
    let mut checks = Vec::new();
    checks.push(run_check("telescoping identity through depth 6", || {
        poly::telescoping_identity_check(1, 6)
    }));
    checks.push(run_check("iterate degree and monicity", || {
        let f = poly::iterate_poly(2, 5)?;
        Ok(f.degree() == Some(16) && f.is_monic())
    }));
    checks.push(run_check("closed-form parameter cell (1, 1, 1)", || {
        let report = paramsets::param_set(1, 1, 1)?;
        let values: Vec<BigInt> =
            report.roots.exact_integer_roots.iter().map(|(v, _)| v.clone()).collect();
        Ok(values == vec![BigInt::from(-2), BigInt::from(0)] && report.roots.is_complete())
    }));
    checks.push(run_check("coding closed form at depth (0, 1)", || {
        let seq: SignSequence = "|+".parse()?;
        let z = coding::zeta_f64(&seq, -3.0)?;
        let beta = 0.5 * (1.0 + 13f64.sqrt());
        Ok((z - beta).abs() < 1e-9)
    }));
    checks.push(run_check("disk radius equals interval endpoint", || {
        Ok((paramsets::localization_radius(3) + coding::c_interval_minus(&3.0)).abs() < 1e-12)
    }));
    checks.push(run_check("exact coding counts at c = -2", || {
        Ok(symdyn::count_x_minus2(3, 2) == BigInt::from(29)
            && symdyn::count_x_minus2(0, 3) == BigInt::from(8))
    }));
    checks.push(run_check("bounded intersection for base points 0 and 1", || {
        let report = paramsets::intersect(0, 1, 2, 2)?;
        let expected: Vec<BigInt> = [-2, -1, 0].iter().map(|&v| BigInt::from(v)).collect();
        Ok(report.common_values() == expected && report.verdict_matches == Some(true))
    }));
    checks.push(run_check("parameter sets are sign-symmetric in a", || {
        Ok(poly::difference_poly(2, 1, 1)? == poly::difference_poly(-2, 1, 1)?)
    }));
    let all_ok = checks.iter().all(|c| c.ok);
    let dto = CheckDto { checks, all_ok };
    let text = render::check(&dto, config.format);
    if all_ok {
        Ok(text)
    } else {
        Err(CliError::Certification(text))
    }
}

/// Parses `p/q`, integer, or decimal text into an exact rational.
fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let t = text.trim();
    let usage = || CliError::Usage(format!("cannot parse {text:?} as a rational parameter"));
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| usage())?;
        let den: BigInt = d.trim().parse().map_err(|_| usage())?;
        if den.is_zero() {
            return Err(usage());
        }
        Ok(BigRational::new(num, den))
    } else if let Some((int_text, frac_text)) = t.split_once('.') {
        let (negative, int_text) = match int_text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_text.strip_prefix('+').unwrap_or(int_text)),
        };
        if int_text.is_empty() && frac_text.is_empty() {
            return Err(usage());
        }
        if !int_text.chars().all(|ch| ch.is_ascii_digit())
            || !frac_text.chars().all(|ch| ch.is_ascii_digit())
        {
            return Err(usage());
        }
        let int_val: BigInt = if int_text.is_empty() {
            BigInt::zero()
        } else {
            int_text.parse().map_err(|_| usage())?
        };
        let frac_val: BigInt = if frac_text.is_empty() {
            BigInt::zero()
        } else {
            frac_text.parse().map_err(|_| usage())?
        };
        let den = BigInt::from(10u32).pow(frac_text.len() as u32);
        let mut num = &int_val * &den + frac_val;
        if negative {
            num = -num;
        }
        Ok(BigRational::new(num, den))
    } else {
        let v: BigInt = t.parse().map_err(|_| usage())?;
        Ok(BigRational::from_integer(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn run(args: &[&str]) -> Result<String, CliError> {
        let cli = Cli::try_parse_from(args).expect("valid argument grammar");
        dispatch(&cli)
    }

    fn run_ok(args: &[&str]) -> String {
        run(args).expect("command succeeds")
    }

    #[test]
    fn parse_rational_accepts_three_shapes() {
        assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-2.5").unwrap(), BigRational::new((-5).into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert_eq!(parse_rational(".25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert!(parse_rational("3/0").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn iterate_text_shows_polynomial() {
        let out = run_ok(&["quadpre", "iterate", "--a", "1", "--n", "2"]);
        assert!(out.contains("F_2(c, 1) = c^2 + 3*c + 1"), "{out}");
        assert!(out.contains("degree 2"), "{out}");
    }

    #[test]
    fn iterate_csv_lists_ascending_coefficients() {
        let out = run_ok(&["quadpre", "iterate", "--a", "1", "--n", "2", "--format", "csv"]);
        assert_eq!(out, "power,coefficient\n0,1\n1,3\n2,1\n");
    }

    #[test]
    fn params_json_reports_roots_and_multiplicity() {
        let out =
            run_ok(&["quadpre", "params", "--a", "0", "--k", "2", "--p", "1", "--format", "json"]);
        assert!(out.contains("\"value\": \"-2\""), "{out}");
        assert!(out.contains("\"multiplicity\": 3"), "{out}");
        assert!(out.contains("\"complete\": true"), "{out}");
    }

    #[test]
    fn params_confirm_upgrades_provenance() {
        let out = run_ok(&["quadpre", "params", "--a", "2", "--k", "1", "--p", "1", "--confirm"]);
        assert!(out.contains("coding cross-check: confirmed"), "{out}");
        assert!(out.contains("[coding-confirmed]"), "{out}");
    }

    #[test]
    fn points_accepts_rational_parameter() {
        let out = run_ok(&["quadpre", "points", "--c", "-2", "--k", "0", "--p", "1"]);
        assert!(out.contains("z = -1"), "{out}");
        assert!(out.contains("z = 2"), "{out}");
    }

    #[test]
    fn intersect_text_reports_verdict() {
        let out = run_ok(&["quadpre", "intersect", "--a", "1", "--b", "2", "--depth", "3"]);
        assert!(out.contains("c = -3"), "{out}");
        assert!(out.contains("c = -2"), "{out}");
        assert!(out.contains("matches classification: yes"), "{out}");
        assert!(out.contains("certified complete at unbounded depth: yes"), "{out}");
    }

    #[test]
    fn verify_theorem_requires_ordered_pair() {
        let err = run(&["quadpre", "verify-theorem", "--a", "2", "--b", "1"]).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn verify_theorem_passes_on_adjacent_pair() {
        let out = run_ok(&["quadpre", "verify-theorem", "--a", "1", "--b", "2", "--depth", "4"]);
        assert!(out.contains("verdict: classification verified at depth 4"), "{out}");
    }

    #[test]
    fn code_at_minus_two_uses_exact_form() {
        let out = run_ok(&["quadpre", "code", "--c", "-2", "--seq", "|+"]);
        assert!(out.contains("value = 2\n"), "{out}");
        assert!(out.contains("conjugacy residual = 0\n"), "{out}");
        assert!(out.contains("itinerary ++"), "{out}");
    }

    #[test]
    fn gamma_matches_closed_form() {
        let out = run_ok(&["quadpre", "gamma", "--a", "2", "--seq", "++|-"]);
        let line = out.lines().find(|l| l.starts_with("gamma = ")).expect("gamma line");
        let value: f64 = line.trim_start_matches("gamma = ").parse().unwrap();
        let expected = -5.0 + 5f64.sqrt();
        assert!((value - expected).abs() < 1e-8, "{value} vs {expected}");
    }

    #[test]
    fn high_precision_requested_via_flag() {
        let out = run_ok(&["quadpre", "code", "--c", "-2", "--seq", "+|-", "--precision", "128"]);
        assert!(out.contains("high precision = 1.0000000000"), "{out}");
    }

    #[test]
    fn plot_data_zeta_curves_header_names_sequences() {
        let out = run_ok(&[
            "quadpre",
            "plot-data",
            "--kind",
            "zeta-curves",
            "--a",
            "2",
            "--samples",
            "3",
        ]);
        let header = out.lines().next().unwrap();
        assert_eq!(header, "c,|+,++|-,+-|+,+|-");
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn plot_data_param_curves_iterates_pointwise() {
        let out = run_ok(&[
            "quadpre",
            "plot-data",
            "--kind",
            "param-curves",
            "--a",
            "1",
            "--lo",
            "-2",
            "--hi",
            "0",
            "--samples",
            "3",
        ]);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), "c,F0,F1,F2,F3");
        // c = -2: F0 = 1, F1 = -1, F2 = -1, F3 = -1.
        assert_eq!(lines.next().unwrap(), "-2,1,-1,-1,-1");
    }

    #[test]
    fn plot_data_rejects_text_format() {
        let err =
            run(&["quadpre", "plot-data", "--kind", "dyn-curves", "--c", "-2", "--format", "text"])
                .unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn plot_data_rejects_single_sample() {
        let err =
            run(&["quadpre", "plot-data", "--kind", "dyn-curves", "--c", "-2", "--samples", "1"])
                .unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn check_suite_passes() {
        let out = run_ok(&["quadpre", "check"]);
        assert!(out.ends_with("8/8 checks passed\n"), "{out}");
    }

    #[test]
    fn degree_cap_maps_to_resource_exit() {
        let err = run(&["quadpre", "iterate", "--a", "1", "--n", "14"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn outputs_are_deterministic() {
        let args = ["quadpre", "params", "--a", "2", "--k", "2", "--p", "1", "--format", "json"];
        assert_eq!(run_ok(&args), run_ok(&args));
    }

    // Printed values must be usable as command arguments again.
    proptest! {
        #[test]
        fn rational_text_round_trips(num in -100_000i64..100_000, den in 1i64..10_000) {
            let r = BigRational::new(num.into(), den.into());
            let text = crate::dto::rational_str(&r);
            prop_assert_eq!(parse_rational(&text).unwrap(), r);
        }

        #[test]
        fn decimal_text_parses_back_within_half_ulp(
            num in -100_000i64..100_000,
            den in 1i64..10_000,
            digits in 1u32..15,
        ) {
            let r = BigRational::new(num.into(), den.into());
            let text = crate::dto::decimal_str(&r, digits);
            let parsed = parse_rational(&text).unwrap();
            let bound = BigRational::new(1.into(), BigInt::from(2) * BigInt::from(10).pow(digits));
            prop_assert!((parsed - r).abs() <= bound);
        }
    }
}
