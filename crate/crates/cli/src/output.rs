use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use torsionlab::algebra::{Complex, LaurentPolynomial, Rational};
use torsionlab::explorer::ScanRow;
use torsionlab::io::ComplexPair;

use crate::error::CliError;

/// Writes `text` to `path`, or to stdout.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::input("IoError", format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
pub struct ComputeOutput {
    pub knot: String,
    pub s: ComplexPair,
    pub u: ComplexPair,
    pub coeffs: BTreeMap<i64, ComplexPair>,
    pub c: ComplexPair,
    pub genus: u32,
    pub span: Option<i64>,
    pub precision: u32,
}

#[derive(Serialize)]
pub struct TrivialOutput {
    pub knot: String,
    pub rep: &'static str,
    pub numerator: BTreeMap<i64, String>,
    pub denominator: BTreeMap<i64, String>,
    pub value: String,
}

pub fn complex_terms(p: &LaurentPolynomial<Complex>) -> BTreeMap<i64, ComplexPair> {
    p.terms().map(|(k, c)| (k, c.into())).collect()
}

pub fn rational_terms(p: &LaurentPolynomial<Rational>) -> BTreeMap<i64, String> {
    p.terms().map(|(k, c)| (k, c.to_string())).collect()
}

/// Representative modulo `+-t^k`: lowest degree 0, positive top coefficient.
pub fn unit_normalized(p: &LaurentPolynomial<Rational>) -> LaurentPolynomial<Rational> {
    let Some(low) = p.low_degree() else { return p.clone() };
    let shifted = p.shift(-low);
    match shifted.leading() {
        Some(c) if c.is_negative() => -shifted,
        _ => shifted,
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

/// Shortest round-trip form, in scientific notation outside `[1e-4, 1e15)`.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn cell(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub const SCAN_HEADER: &str = "index,s_re,s_im,u_re,u_im,I_mer_re,I_mer_im,I_ab_re,I_ab_im,span,c_re,c_im,status";

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::new();
    out.push_str(SCAN_HEADER);
    out.push('\n');
    for r in rows {
        let u = r.u.as_ref();
        let t = r.traces.as_ref();
        let poly = r.output.as_ref().map(|o| &o.polynomial);
        let cells = [
            r.index.to_string(),
            num(r.s.re_f64()),
            num(r.s.im_f64()),
            cell(u.map(|z| z.re_f64())),
            cell(u.map(|z| z.im_f64())),
            cell(t.map(|t| t.meridian.re_f64())),
            cell(t.map(|t| t.meridian.im_f64())),
            cell(t.map(|t| t.ab.re_f64())),
            cell(t.map(|t| t.ab.im_f64())),
            poly.and_then(|p| p.span()).map(|s| s.to_string()).unwrap_or_default(),
            cell(poly.map(|p| p.leading.re_f64())),
            cell(poly.map(|p| p.leading.im_f64())),
            r.status.clone(),
        ];
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn scan_plot(rows: &[ScanRow]) -> String {
    let mut out = String::from("# arg_s abs_c\n");
    for r in rows {
        if let Some(o) = &r.output {
            let _ = writeln!(out, "{} {}", num(r.s.arg_f64()), num(o.polynomial.leading.abs_f64()));
        }
    }
    out
}
