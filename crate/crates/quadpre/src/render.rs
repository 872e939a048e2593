//! Deterministic rendering of result views in the three output
//! formats. Every function maps the same input to identical bytes on
//! every run and platform.

use serde::Serialize;

use crate::config::Format;
use crate::dto::{
    CheckDto, CodeDto, GammaDto, IntersectionDto, IterateDto, ParamSetDto, PointSetDto, RootSetDto,
};

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

/// CSV with a header row; cells are quoted only when necessary.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("csv header");
    for row in rows {
        writer.write_record(row).expect("csv row");
    }
    String::from_utf8(writer.into_inner().expect("csv buffer")).expect("csv is utf-8")
}

/// Shortest round-trip decimal form of a binary64 value.
pub fn f64_str(x: f64) -> String {
    format!("{x}")
}

fn opt_str<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn iterate(dto: &IterateDto, format: Format) -> String {
    match format {
        Format::Json => json(dto),
        Format::Csv => {
            let rows: Vec<Vec<String>> = dto
                .polynomial
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), c.clone()])
                .collect();
            csv_table(&["power", "coefficient"], &rows)
        }
        Format::Text => format!(
            "F_{}(c, {}) = {}\ndegree {}\n",
            dto.n, dto.a, dto.polynomial.display, dto.polynomial.degree
        ),
    }
}

/// Element rows shared by the parameter-set and point-set tables:
/// kind, value, lo, hi, re, im, radius, multiplicity.
fn root_rows(set: &RootSetDto, provenance: Option<&[String]>) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    let mut slot = 0usize;
    let tag = |prov: Option<&[String]>, i: usize| -> String {
        prov.and_then(|p| p.get(i)).cloned().unwrap_or_default()
    };
    for r in &set.integer_roots {
        rows.push(vec![
            "integer".to_string(),
            r.value.clone(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            r.multiplicity.to_string(),
            tag(provenance, slot),
        ]);
        slot += 1;
    }
    for r in &set.real_intervals {
        rows.push(vec![
            "real-interval".to_string(),
            f64_str(r.approx),
            r.lo.clone(),
            r.hi.clone(),
            String::new(),
            String::new(),
            String::new(),
            r.multiplicity.to_string(),
            tag(provenance, slot),
        ]);
        slot += 1;
    }
    for r in &set.complex_roots {
        rows.push(vec![
            "complex".to_string(),
            String::new(),
            String::new(),
            String::new(),
            f64_str(r.re),
            f64_str(r.im),
            f64_str(r.radius),
            r.multiplicity.to_string(),
            tag(provenance, slot),
        ]);
        slot += 1;
    }
    rows
}

const ROOT_HEADER: [&str; 9] =
    ["kind", "value", "lo", "hi", "re", "im", "radius", "multiplicity", "provenance"];

fn root_lines(set: &RootSetDto, provenance: Option<&[String]>, var: &str, out: &mut String) {
    let mut slot = 0usize;
    let tag = |i: usize| -> String {
        provenance.and_then(|p| p.get(i)).map(|t| format!("    [{t}]")).unwrap_or_default()
    };
    for r in &set.integer_roots {
        out.push_str(&format!(
            "  {var} = {}    multiplicity {}{}\n",
            r.value,
            r.multiplicity,
            tag(slot)
        ));
        slot += 1;
    }
    for r in &set.real_intervals {
        out.push_str(&format!(
            "  {var} in [{}, {}] ~ {}    multiplicity {}{}\n",
            r.lo,
            r.hi,
            f64_str(r.approx),
            r.multiplicity,
            tag(slot)
        ));
        slot += 1;
    }
    for r in &set.complex_roots {
        let mark = if r.certified { "" } else { "    UNCERTIFIED" };
        out.push_str(&format!(
            "  {var} ~ {} + {}i    radius {}    multiplicity {}{}{}\n",
            f64_str(r.re),
            f64_str(r.im),
            f64_str(r.radius),
            r.multiplicity,
            tag(slot),
            mark
        ));
        slot += 1;
    }
}

pub fn params(dto: &ParamSetDto, format: Format) -> String {
    match format {
        Format::Json => json(dto),
        Format::Csv => csv_table(&ROOT_HEADER, &root_rows(&dto.roots, Some(&dto.provenance))),
        Format::Text => {
            let mut out = format!(
                "parameter set for a = {}, preperiod <= {}, period dividing {}\n",
                dto.a, dto.k, dto.p
            );
            let count = match dto.certified_real_count {
                Some(n) => format!("certified distinct real roots: {n}"),
                None => "distinct real count not certified".to_string(),
            };
            let complete =
                if dto.roots.complete { "all roots accounted for" } else { "INCOMPLETE listing" };
            out.push_str(&format!("source degree {}, {count}, {complete}\n", dto.roots.degree));
            root_lines(&dto.roots, Some(&dto.provenance), "c", &mut out);
            out.push_str(&format!(
                "localization: |c| <= {}",
                f64_str(dto.localization.disk_radius)
            ));
            if let (Some(lo), Some(hi)) =
                (dto.localization.interval_lo, dto.localization.interval_hi)
            {
                out.push_str(&format!(", real window [{}, {}]", f64_str(lo), f64_str(hi)));
            }
            out.push('\n');
            if let Some(ok) = dto.coding_confirmed {
                out.push_str(&format!(
                    "coding cross-check: {}\n",
                    if ok { "confirmed" } else { "MISMATCH" }
                ));
            }
            for note in &dto.notes {
                out.push_str(&format!("note: {note}\n"));
            }
            out
        }
    }
}

pub fn points(dto: &PointSetDto, format: Format) -> String {
    match format {
        Format::Json => json(dto),
        Format::Csv => csv_table(&ROOT_HEADER, &root_rows(&dto.roots, None)),
        Format::Text => {
            let mut out = format!(
                "point set for c = {}, preperiod <= {}, period dividing {}\n",
                dto.c, dto.k, dto.p
            );
            let complete =
                if dto.roots.complete { "all roots accounted for" } else { "INCOMPLETE listing" };
            out.push_str(&format!("source degree {}, {complete}\n", dto.roots.degree));
            root_lines(&dto.roots, None, "z", &mut out);
            out
        }
    }
}

fn set_text(values: &[String]) -> String {
    format!("{{{}}}", values.join(", "))
}

pub fn intersect(dto: &IntersectionDto, format: Format) -> String {
    match format {
        Format::Json => json(dto),
        Format::Csv => {
            let rows: Vec<Vec<String>> = dto
                .common
                .iter()
                .map(|e| {
                    vec![
                        e.value.clone(),
                        e.a_preperiod.to_string(),
                        e.a_period.to_string(),
                        e.b_preperiod.to_string(),
                        e.b_period.to_string(),
                    ]
                })
                .collect();
            csv_table(&["value", "a_preperiod", "a_period", "b_preperiod", "b_period"], &rows)
        }
        Format::Text => {
            let mut out = format!(
                "common preperiodic parameters of a = {} and b = {} (preperiod <= {}, period <= {})\n",
                dto.a, dto.b, dto.k_max, dto.p_max
            );
            if dto.common.is_empty() {
                out.push_str("  (none)\n");
            }
            for e in &dto.common {
                out.push_str(&format!(
                    "  c = {}    orbit of a: preperiod {}, period {}    orbit of b: preperiod {}, period {}\n",
                    e.value, e.a_preperiod, e.a_period, e.b_preperiod, e.b_period
                ));
            }
            if let Some(expected) = &dto.expected {
                out.push_str(&format!("classified set: {}\n", set_text(expected)));
            }
            if let Some(matches) = dto.matches_classification {
                out.push_str(&format!(
                    "matches classification: {}\n",
                    if matches { "yes" } else { "NO" }
                ));
            }
            out.push_str(&format!(
                "certified complete at unbounded depth: {}\n",
                if dto.complete { "yes" } else { "no (bounded depths only)" }
            ));
            for note in &dto.residual_notes {
                out.push_str(&format!("note: {note}\n"));
            }
            out
        }
    }
}

pub fn verify(dto: &IntersectionDto, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = intersect(dto, Format::Text);
            out.push_str(&format!("verdict: classification verified at depth {}\n", dto.k_max));
            out
        }
        other => intersect(dto, other),
    }
}

/// Failure report carried inside the certification error.
pub fn verify_failure_text(dto: &IntersectionDto) -> String {
    let mut out = String::from("classification MISMATCH\n");
    out.push_str(&intersect(dto, Format::Text));
    out
}

pub fn code(dto: &CodeDto, format: Format) -> String {
    match format {
        Format::Json => json(dto),
        Format::Csv => {
            let rows = vec![vec![
                f64_str(dto.c),
                dto.sequence.clone(),
                dto.preperiod.to_string(),
                dto.period.to_string(),
                f64_str(dto.value),
                opt_str(&dto.high_precision),
                f64_str(dto.conjugacy_residual),
                dto.itinerary.clone(),
            ]];
            csv_table(
                &[
                    "c",
                    "sequence",
                    "preperiod",
                    "period",
                    "value",
                    "high_precision",
                    "conjugacy_residual",
                    "itinerary",
                ],
                &rows,
            )
        }
        Format::Text => {
            let mut out = format!(
                "c = {}\nsequence {}    (preperiod {}, period {})\nvalue = {}\n",
                f64_str(dto.c),
                dto.sequence,
                dto.preperiod,
                dto.period,
                f64_str(dto.value)
            );
            if let Some(hp) = &dto.high_precision {
                out.push_str(&format!("high precision = {hp}\n"));
            }
            out.push_str(&format!(
                "conjugacy residual = {}\nitinerary {}\n",
                f64_str(dto.conjugacy_residual),
                dto.itinerary
            ));
            out
        }
    }
}

pub fn gamma(dto: &GammaDto, format: Format) -> String {
    match format {
        Format::Json => json(dto),
        Format::Csv => {
            let rows = vec![vec![
                f64_str(dto.a),
                dto.sequence.clone(),
                f64_str(dto.value),
                opt_str(&dto.high_precision),
                f64_str(dto.residual),
            ]];
            csv_table(&["a", "sequence", "value", "high_precision", "residual"], &rows)
        }
        Format::Text => {
            let mut out = format!(
                "a = {}\nsequence {}\ngamma = {}\n",
                f64_str(dto.a),
                dto.sequence,
                f64_str(dto.value)
            );
            if let Some(hp) = &dto.high_precision {
                out.push_str(&format!("high precision = {hp}\n"));
            }
            out.push_str(&format!("residual = {}\n", f64_str(dto.residual)));
            out
        }
    }
}

pub fn check(dto: &CheckDto, format: Format) -> String {
    match format {
        Format::Json => json(dto),
        Format::Csv => {
            let rows: Vec<Vec<String>> = dto
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.ok.to_string(), c.detail.clone()])
                .collect();
            csv_table(&["name", "ok", "detail"], &rows)
        }
        Format::Text => {
            let mut out = String::new();
            for c in &dto.checks {
                if c.ok {
                    out.push_str(&format!("ok   {}\n", c.name));
                } else if c.detail.is_empty() {
                    out.push_str(&format!("FAIL {}\n", c.name));
                } else {
                    out.push_str(&format!("FAIL {}    {}\n", c.name, c.detail));
                }
            }
            let passed = dto.checks.iter().filter(|c| c.ok).count();
            out.push_str(&format!("{passed}/{} checks passed\n", dto.checks.len()));
            out
        }
    }
}
