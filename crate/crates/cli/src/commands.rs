use std::path::{Path, PathBuf};

use torsionlab::algebra::{Complex, Scalar};
use torsionlab::dfj::{fiberedness_evidence, genus_lower_bound, torsion_polynomial_at, DfjError};
use torsionlab::explorer::{curve_scan, ideal_limit_probe, sample_torsion_polynomials, unit_circle_grid, IdealLimitRun};
use torsionlab::io::SeedFile;
use torsionlab::knots::{load_knot, KnotRecord};
use torsionlab::reps::{polish, riley_candidate, solve_u, LinearRep, RepresentationPoint, Variable};
use torsionlab::torsion::{wada_invariant, RawComplexFile, TorsionValue};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{self, emit};

fn parse_complex(flag: &str, text: &str, config: &RunConfig) -> Result<Complex, CliError> {
    Complex::parse_flag(text, config.precision)
        .map_err(|e| CliError::input("ParseError", format!("--{flag}: {e}")))
}

/// The Riley point at `(s, u)`, or at the `branch`-th root over `s`.
///
/// A supplied `u` is polished in `u` when it misses the residual tolerance;
/// it is rejected when polishing moves it noticeably.
fn riley_point(
    knot: &KnotRecord,
    s: &Complex,
    u: Option<&Complex>,
    branch: usize,
    config: &RunConfig,
) -> Result<RepresentationPoint, CliError> {
    let tol = config.tolerances.residual;
    if s.is_zero() {
        return Err(torsionlab::reps::RepsError::DegenerateParameter("s = 0".into()).into());
    }
    let Some(u) = u else {
        let roots = solve_u(s, &knot.presentation, tol)?;
        let Some(u) = roots.get(branch) else {
            return Err(CliError::input("NoSuchBranch", format!("branch {branch} requested, {} available", roots.len())));
        };
        return Ok(riley_candidate(s, u, &knot.presentation)?);
    };
    let point = riley_candidate(s, u, &knot.presentation)?;
    if point.is_valid(tol) {
        return Ok(point);
    }
    let off = || CliError::input("OffCurve", format!("(s, u) misses the relator (residual {:e})", point.residual()));
    let polished = polish(s, u, Variable::U, &knot.presentation).map_err(|_| off())?;
    let moved = (polished.riley().expect("Riley point").1.clone() - u).abs_f64();
    if !polished.is_valid(tol) || moved > 1e-6 * (1.0 + u.abs_f64()) {
        return Err(off());
    }
    Ok(polished)
}

pub fn compute(config: &RunConfig, knot: &str, s: &Option<String>, u: &Option<String>, branch: usize) -> Result<(), CliError> {
    let knot = load_knot(knot)?;
    let s = parse_complex("s", s.as_deref().ok_or_else(|| CliError::input("MissingArgument", "--s is required"))?, config)?;
    let u = u.as_deref().map(|t| parse_complex("u", t, config)).transpose()?;
    let point = riley_point(&knot, &s, u.as_ref(), branch, config)?;
    let out = torsion_polynomial_at(&knot.presentation, &point, knot.genus, &config.pipeline())?;
    let (s, u) = point.riley().expect("Riley point");
    let t = &out.polynomial;
    let doc = output::ComputeOutput {
        knot: knot.name.clone(),
        s: s.into(),
        u: u.into(),
        coeffs: output::complex_terms(&t.poly),
        c: (&t.leading).into(),
        genus: knot.genus,
        span: t.span(),
        precision: out.precision.bits(),
    };
    emit(config.out.as_deref(), &output::to_json(&doc))
}

pub fn compute_trivial(config: &RunConfig, knot: &str) -> Result<(), CliError> {
    let knot = load_knot(knot)?;
    let rep = LinearRep::trivial_rational(knot.presentation.generator_count());
    let raw = wada_invariant(&knot.presentation, &rep, None)?;
    let value = TorsionValue::new(output::unit_normalized(&raw.numerator), output::unit_normalized(&raw.denominator))
        .expect("denominator stays nonzero");
    let doc = output::TrivialOutput {
        knot: knot.name.clone(),
        rep: "trivial",
        numerator: output::rational_terms(&value.numerator),
        denominator: output::rational_terms(&value.denominator),
        value: value.to_string(),
    };
    emit(config.out.as_deref(), &output::to_json(&doc))
}

pub fn scan(config: &RunConfig, knot: &str, grid: &[String], samples: usize, plot: Option<&Path>) -> Result<(), CliError> {
    let knot = load_knot(knot)?;
    let grid: Vec<Complex> = if grid.is_empty() {
        unit_circle_grid(samples, config.precision)
    } else {
        grid.iter().map(|t| parse_complex("s", t, config)).collect::<Result<_, _>>()?
    };
    if grid.is_empty() {
        return Err(CliError::input("EmptyGrid", "scan needs at least one grid point"));
    }
    let rows = curve_scan(&knot, &grid, &config.pipeline(), config.tolerances.residual);
    if let Some(p) = plot {
        emit(Some(p), &output::scan_plot(&rows))?;
    }
    emit(config.out.as_deref(), &output::scan_csv(&rows))
}

pub enum Seed {
    File(PathBuf),
    Flags { s: Option<String>, u: Option<String>, branch: usize },
}

fn write_run(run: &IdealLimitRun, config: &RunConfig, csv: Option<&Path>, plot: Option<&Path>) -> Result<(), CliError> {
    if let Some(p) = csv {
        let mut buf = Vec::new();
        run.write_csv(&mut buf)?;
        emit(Some(p), &String::from_utf8(buf).expect("CSV is UTF-8"))?;
    }
    if let Some(p) = plot {
        let mut text = String::from("# step abs_c\n");
        for r in &run.steps {
            if let Some(c) = r.abs_c {
                text.push_str(&format!("{} {}\n", r.index, output::num(c)));
            }
        }
        emit(Some(p), &text)?;
    }
    emit(config.out.as_deref(), &output::to_json(run))
}

pub fn ideal_limit(config: &RunConfig, knot: &str, seed: Seed, csv: Option<&Path>, plot: Option<&Path>) -> Result<(), CliError> {
    let knot = load_knot(knot)?;
    let point = match seed {
        Seed::File(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::input("IoError", format!("{}: {e}", path.display())))?;
            let (s, u) = SeedFile::parse(&text, config.precision)?;
            riley_point(&knot, &s, Some(&u), 0, config)?
        }
        Seed::Flags { s, u, branch } => {
            let s = parse_complex("s", s.as_deref().ok_or_else(|| CliError::input("MissingArgument", "--s is required"))?, config)?;
            let u = u.as_deref().map(|t| parse_complex("u", t, config)).transpose()?;
            riley_point(&knot, &s, u.as_ref(), branch, config)?
        }
    };
    let (s, u) = point.riley().expect("Riley point");
    match ideal_limit_probe(&knot, (s, u), config.schedule, &config.probe()) {
        Ok(run) => write_run(&run, config, csv, plot),
        Err(failure) => {
            if let Some(run) = &failure.partial {
                write_run(run, config, csv, plot)?;
            }
            Err(failure.error.into())
        }
    }
}

fn sampled(config: &RunConfig, knot: &KnotRecord, samples: usize) -> Result<Vec<torsionlab::dfj::TorsionPolynomial>, CliError> {
    if samples == 0 {
        return Err(CliError::input("InvalidSampleCount", "--samples must be positive"));
    }
    let results = sample_torsion_polynomials(
        knot,
        samples,
        config.seed,
        config.precision,
        &config.pipeline(),
        config.tolerances.residual,
    )?;
    let ok: Vec<_> = results.into_iter().filter_map(Result::ok).map(|o| o.polynomial).collect();
    if ok.is_empty() {
        return Err(DfjError::NoSamples.into());
    }
    Ok(ok)
}

pub fn fibered_test(config: &RunConfig, knot: &str, samples: usize) -> Result<(), CliError> {
    let knot = load_knot(knot)?;
    let polys = sampled(config, &knot, samples)?;
    let report = fiberedness_evidence(&polys)?;
    let text = format!(
        "knot: {}\nconsistent_with_fibered: {}\nmax_abs_c_minus_1: {:e}\nspan_range: {} {}\nsamples: {}/{}\n",
        knot.name,
        report.consistent_with_fibered,
        report.max_abs_c_minus_1,
        report.min_span,
        report.max_span,
        report.samples,
        samples
    );
    emit(config.out.as_deref(), &text)
}

pub fn genus_bound(config: &RunConfig, knot: &str, samples: usize) -> Result<(), CliError> {
    let knot = load_knot(knot)?;
    let polys = sampled(config, &knot, samples)?;
    let mut bound = None;
    let mut max_span = 0;
    for t in polys.iter().filter(|t| !t.zero) {
        bound = bound.max(Some(genus_lower_bound(t)?));
        max_span = max_span.max(t.span().unwrap_or(0));
    }
    let bound = bound.ok_or(DfjError::NoSamples)?;
    let text = format!("knot: {}\ngenus_bound: {bound}\nmax_span: {max_span}\n", knot.name);
    emit(config.out.as_deref(), &text)
}

pub fn torsion(config: &RunConfig, path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input("IoError", format!("{}: {e}", path.display())))?;
    let value = RawComplexFile::parse(&text)?.torsion()?;
    emit(config.out.as_deref(), &format!("{value}\n"))
}
