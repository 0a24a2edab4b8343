//! One report builder per subcommand.
//!
//! Every builder returns both renderings; the JSON form carries
//! `schema_version` and `command` first and otherwise keeps struct field
//! order, so identical inputs give byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use nilcx::catalog;
use nilcx::cxs::{self, AlmostComplexStructure, ComplexFrame};
use nilcx::dolbeault::DolbeaultComplex;
use nilcx::exalg::fmt_rational;
use nilcx::kuranishi::{self, DeformationClass};
use nilcx::lie::{self, LieAlgebra};
use nilcx::GaussianRational as C;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::alg::{self, AlgebraFile};
use crate::error::{CliError, ExitCode};
use crate::format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub json: String,
    pub code: ExitCode,
}

impl Report {
    fn new<T: Serialize>(text: String, body: &T, code: ExitCode) -> Self {
        let json = serde_json::to_string_pretty(body).expect("reports serialize") + "\n";
        Report { text, json, code }
    }

    pub fn render(&self, json: bool) -> &str {
        if json {
            &self.json
        } else {
            &self.text
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn select<'a>(
    file: &'a AlgebraFile,
    name: Option<&str>,
) -> Result<(&'a str, &'a AlmostComplexStructure)> {
    match file.structure(name) {
        Some((n, j)) => Ok((n, j)),
        None => Err(CliError::Precondition(match name {
            Some(n) => format!("no structure named `{n}`"),
            None => "file defines no complex structure".to_string(),
        })),
    }
}

/// Adapted frame when `J` preserves the ascending series, standard otherwise.
fn frame(a: &LieAlgebra, j: &AlmostComplexStructure) -> Result<ComplexFrame> {
    match ComplexFrame::adapted(a, j) {
        Ok(f) => Ok(f),
        Err(_) => Ok(ComplexFrame::standard(a, j)?),
    }
}

fn complex_for(file: &AlgebraFile, name: Option<&str>) -> Result<(String, DolbeaultComplex)> {
    lie::validate_lie(&file.algebra)?;
    let (sname, j) = select(file, name)?;
    if !cxs::is_abelian(&file.algebra, j)? {
        return Err(CliError::Precondition(format!(
            "structure `{sname}` is not abelian"
        )));
    }
    let complex = DolbeaultComplex::new(&frame(&file.algebra, j)?)?;
    Ok((sname.to_string(), complex))
}

fn frame_lines(f: &ComplexFrame) -> Vec<String> {
    (0..f.n())
        .map(|a| format!("X{} = {}", a + 1, format::combination(&f.x(a), "e")))
        .collect()
}

fn push_frame(text: &mut String, f: &ComplexFrame) {
    text.push_str("frame:\n");
    for l in frame_lines(f) {
        writeln!(text, "  {l}").unwrap();
    }
}

#[derive(Serialize)]
struct StructureCheck {
    name: String,
    j_squared_is_minus_identity: bool,
    integrable: bool,
    integrability_witness: Option<String>,
    abelian: bool,
    j_nilpotent: bool,
    j_series_dims: Vec<usize>,
}

#[derive(Serialize)]
struct ValidateJson {
    schema_version: u32,
    command: &'static str,
    algebra: String,
    dim: usize,
    valid: bool,
    error: Option<String>,
    step: Option<usize>,
    series_dims: Vec<usize>,
    structures: Vec<StructureCheck>,
}

pub fn validate(file: &AlgebraFile) -> Result<Report> {
    let a = &file.algebra;
    let mut text = format!("algebra {}: dim {}\n", a.name(), a.dim());
    let mut body = ValidateJson {
        schema_version: SCHEMA_VERSION,
        command: "validate",
        algebra: a.name().to_string(),
        dim: a.dim(),
        valid: true,
        error: None,
        step: None,
        series_dims: Vec::new(),
        structures: Vec::new(),
    };
    match lie::validate_lie(a) {
        Err(e) => {
            writeln!(text, "  invalid: {e}").unwrap();
            body.valid = false;
            body.error = Some(e.to_string());
            return Ok(Report::new(text, &body, ExitCode::ValidationFailure));
        }
        Ok(report) => {
            let dims = lie::ascending_series(a)?.dims();
            writeln!(text, "  jacobi: ok").unwrap();
            writeln!(
                text,
                "  nilpotent: step {}, ascending series {}",
                report.step,
                format::dims(&dims)
            )
            .unwrap();
            body.step = Some(report.step);
            body.series_dims = dims;
        }
    }
    for (name, j) in &file.structures {
        let integ = cxs::is_integrable(a, j)?;
        let abelian = integ.integrable && cxs::is_abelian(a, j)?;
        let series = cxs::j_ascending_series(a, j);
        let witness = integ
            .witness
            .map(|(k, part)| format!("(0,2)-part of dw{}: {part}", k + 1));
        writeln!(text, "structure {name}:").unwrap();
        writeln!(text, "  J^2 = -I: ok").unwrap();
        match &witness {
            None => writeln!(text, "  integrable: yes").unwrap(),
            Some(w) => writeln!(text, "  integrable: no, {w}").unwrap(),
        }
        writeln!(text, "  abelian: {}", yes_no(abelian)).unwrap();
        writeln!(
            text,
            "  J-nilpotent: {}, J-series {}",
            yes_no(series.nilpotent),
            format::dims(&series.flag.dims())
        )
        .unwrap();
        body.valid &= integ.integrable;
        body.structures.push(StructureCheck {
            name: name.clone(),
            j_squared_is_minus_identity: true,
            integrable: integ.integrable,
            integrability_witness: witness,
            abelian,
            j_nilpotent: series.nilpotent,
            j_series_dims: series.flag.dims(),
        });
    }
    let code = if body.valid {
        ExitCode::Success
    } else {
        ExitCode::ValidationFailure
    };
    Ok(Report::new(text, &body, code))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct SeriesStructure {
    name: String,
    j_series_dims: Vec<usize>,
    j_nilpotent: bool,
    adapted_frame: Option<Vec<String>>,
    note: Option<String>,
}

#[derive(Serialize)]
struct SeriesJson {
    schema_version: u32,
    command: &'static str,
    algebra: String,
    series_dims: Vec<usize>,
    levels: Vec<Vec<String>>,
    structure: Option<SeriesStructure>,
}

pub fn series(file: &AlgebraFile, structure: Option<&str>) -> Result<Report> {
    let a = &file.algebra;
    lie::validate_lie(a)?;
    let flag = lie::ascending_series(a)?;
    let levels: Vec<Vec<String>> = (1..=flag.len())
        .map(|l| {
            flag.level(l)
                .iter()
                .map(|v| format::combination(v, "e"))
                .collect()
        })
        .collect();
    let mut text = format!(
        "algebra {}: ascending series dims {}\n",
        a.name(),
        format::dims(&flag.dims())
    );
    for (l, vs) in levels.iter().enumerate() {
        writeln!(text, "  g_{} = span{{{}}}", l + 1, vs.join(", ")).unwrap();
    }
    let picked = match (structure, file.structures.is_empty()) {
        (None, true) => None,
        _ => Some(select(file, structure)?),
    };
    let structure = picked.map(|(name, j)| {
        let js = cxs::j_ascending_series(a, j);
        let (frame, note) = match ComplexFrame::adapted(a, j) {
            Ok(f) => (Some(frame_lines(&f)), None),
            Err(e) => (None, Some(format!("adapted frame unavailable: {e}"))),
        };
        writeln!(
            text,
            "structure {name}: J-series dims {}, {}",
            format::dims(&js.flag.dims()),
            if js.nilpotent {
                "J-nilpotent"
            } else {
                "not J-nilpotent"
            }
        )
        .unwrap();
        match (&frame, &note) {
            (Some(lines), _) => {
                text.push_str("adapted frame:\n");
                for l in lines {
                    writeln!(text, "  {l}").unwrap();
                }
            }
            (None, Some(n)) => writeln!(text, "{n}").unwrap(),
            (None, None) => {}
        }
        SeriesStructure {
            name: name.to_string(),
            j_series_dims: js.flag.dims(),
            j_nilpotent: js.nilpotent,
            adapted_frame: frame,
            note,
        }
    });
    let body = SeriesJson {
        schema_version: SCHEMA_VERSION,
        command: "series",
        algebra: a.name().to_string(),
        series_dims: flag.dims(),
        levels,
        structure,
    };
    Ok(Report::new(text, &body, ExitCode::Success))
}

#[derive(Serialize)]
struct CohomologyJson {
    schema_version: u32,
    command: &'static str,
    algebra: String,
    structure: String,
    frame: Vec<String>,
    degree: usize,
    dim: usize,
    harmonic_basis: Vec<String>,
    gram: Vec<Vec<String>>,
}

pub fn cohomology(file: &AlgebraFile, structure: Option<&str>, degree: usize) -> Result<Report> {
    let (sname, complex) = complex_for(file, structure)?;
    if degree > complex.n() {
        return Err(CliError::Argument(format!(
            "degree must be between 0 and {}",
            complex.n()
        )));
    }
    let h = complex.cohomology(degree)?;
    let mut text = String::new();
    push_frame(&mut text, complex.frame());
    writeln!(text, "dim = {}", h.dimension).unwrap();
    let basis: Vec<String> = h.harmonic_basis.iter().map(ToString::to_string).collect();
    if !basis.is_empty() {
        text.push_str("harmonic basis:\n");
        for (i, b) in basis.iter().enumerate() {
            writeln!(text, "  b{} = {b}", i + 1).unwrap();
        }
        text.push_str("gram:\n");
    }
    let gram = format::matrix_rows(&h.gram);
    for row in &gram {
        writeln!(text, "  {}", format::bracketed(row)).unwrap();
    }
    let body = CohomologyJson {
        schema_version: SCHEMA_VERSION,
        command: "cohomology",
        algebra: file.algebra.name().to_string(),
        structure: sname,
        frame: frame_lines(complex.frame()),
        degree,
        dim: h.dimension,
        harmonic_basis: basis,
        gram,
    };
    Ok(Report::new(text, &body, ExitCode::Success))
}

/// Parses `t1,…,tN` with each entry an integer, `p/q` or a Gaussian literal.
pub fn parse_point(s: &str) -> Result<Vec<C>> {
    s.split(',')
        .map(|p| C::from_str(p.trim()).map_err(|e| CliError::Argument(e.to_string())))
        .collect()
}

#[derive(Serialize)]
struct Term {
    monomial: String,
    form: String,
}

#[derive(Serialize)]
struct PhiJson {
    degree: u32,
    terms: Vec<Term>,
}

#[derive(Serialize)]
struct Classification {
    integrable: bool,
    abelian: bool,
    nilpotent: bool,
}

#[derive(Serialize)]
struct PointJson {
    t: Vec<String>,
    residual_vanishes: bool,
    obstructions_vanish: bool,
    j: Vec<Vec<String>>,
    classification: Classification,
    summary: String,
}

#[derive(Serialize)]
struct KuranishiJson {
    schema_version: u32,
    command: &'static str,
    algebra: String,
    structure: String,
    order: u32,
    frame: Vec<String>,
    parameters: Vec<String>,
    phi: Vec<PhiJson>,
    obstructions: Vec<String>,
    stable: bool,
    at: Option<PointJson>,
}

pub fn summary(c: &DeformationClass) -> String {
    let word = |b: bool, s: &str| if b { s.to_string() } else { format!("not {s}") };
    format!(
        "{}, {}, {}",
        word(c.integrable, "integrable"),
        word(c.nilpotent, "nilpotent"),
        word(c.abelian, "abelian")
    )
}

pub fn kuranishi(
    file: &AlgebraFile,
    structure: Option<&str>,
    order: u32,
    at: Option<&str>,
) -> Result<Report> {
    if order == 0 {
        return Err(CliError::Argument("order must be at least 1".to_string()));
    }
    let (sname, complex) = complex_for(file, structure)?;
    let point = at.map(parse_point).transpose()?;
    let series = kuranishi::kuranishi_series(&complex, order)?;
    if let Some(t) = &point {
        if t.len() != series.params {
            return Err(CliError::Argument(format!(
                "--at needs {} values, got {}",
                series.params,
                t.len()
            )));
        }
    }
    let obstructions = kuranishi::obstructions(&complex, &series)?;
    let mut text = String::new();
    push_frame(&mut text, complex.frame());
    let parameters: Vec<String> = series.basis.iter().map(ToString::to_string).collect();
    text.push_str("parameters:\n");
    for (i, b) in parameters.iter().enumerate() {
        writeln!(text, "  t{} -> {b}", i + 1).unwrap();
    }
    let mut phi = Vec::new();
    for r in 1..=order {
        let terms: Vec<Term> = series
            .phi(r)
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| Term {
                monomial: m.to_string(),
                form: v.to_string(),
            })
            .collect();
        if r >= 2 && !terms.is_empty() {
            writeln!(text, "phi_{r}:").unwrap();
            for t in &terms {
                writeln!(text, "  {}: {}", t.monomial, t.form).unwrap();
            }
        }
        phi.push(PhiJson { degree: r, terms });
    }
    let higher_vanish = phi.iter().skip(1).all(|p| p.terms.is_empty());
    let polys: Vec<String> = obstructions.polys.iter().map(ToString::to_string).collect();
    let stable = higher_vanish && obstructions.is_zero();
    if stable {
        text.push_str("φ_r = 0 for r ≥ 2; no obstructions\n");
    } else {
        if higher_vanish {
            text.push_str("φ_r = 0 for r ≥ 2\n");
        }
        if obstructions.is_zero() {
            text.push_str("no obstructions\n");
        } else {
            text.push_str("obstructions:\n");
            for (k, p) in polys.iter().enumerate() {
                writeln!(text, "  f{} = {p}", k + 1).unwrap();
            }
        }
    }
    let at_json = match point {
        None => None,
        Some(t) => {
            let residual = kuranishi::mc_residual(&complex, &series, &t)?;
            let deformed = kuranishi::deform_structure(complex.frame(), &series, &t)?;
            let class = kuranishi::classify_deformation(&file.algebra, &deformed)?;
            let j = format::matrix_rows(deformed.j.matrix());
            let point = PointJson {
                t: format::gaussians(&t),
                residual_vanishes: residual.is_zero(),
                obstructions_vanish: obstructions.vanish_along_ray(&t),
                j,
                summary: summary(&class),
                classification: Classification {
                    integrable: class.integrable,
                    abelian: class.abelian,
                    nilpotent: class.nilpotent,
                },
            };
            writeln!(text, "at t = {}:", format::bracketed(&point.t)).unwrap();
            writeln!(
                text,
                "  Maurer-Cartan residual: {}",
                if point.residual_vanishes {
                    "0"
                } else {
                    "nonzero"
                }
            )
            .unwrap();
            writeln!(
                text,
                "  obstructions along the ray: {}",
                if point.obstructions_vanish {
                    "vanish"
                } else {
                    "nonzero"
                }
            )
            .unwrap();
            text.push_str("  J =\n");
            for row in &point.j {
                writeln!(text, "    {}", format::bracketed(row)).unwrap();
            }
            writeln!(text, "  classification: {}", point.summary).unwrap();
            Some(point)
        }
    };
    let body = KuranishiJson {
        schema_version: SCHEMA_VERSION,
        command: "kuranishi",
        algebra: file.algebra.name().to_string(),
        structure: sname,
        order,
        frame: frame_lines(complex.frame()),
        parameters,
        phi,
        obstructions: polys,
        stable,
        at: at_json,
    };
    Ok(Report::new(text, &body, ExitCode::Success))
}

#[derive(Serialize)]
struct LocusJson {
    schema_version: u32,
    command: &'static str,
    algebra: String,
    structure: String,
    frame: Vec<String>,
    h1_dim: usize,
    h1_basis: Vec<String>,
    dim: usize,
    basis: Vec<Vec<String>>,
    directions: Vec<String>,
}

pub fn abelian_locus(file: &AlgebraFile, structure: Option<&str>) -> Result<Report> {
    let (sname, complex) = complex_for(file, structure)?;
    let h1 = complex.cohomology(1)?;
    let locus = kuranishi::infinitesimal_abelian_locus(&complex)?;
    let h1_basis: Vec<String> = h1.harmonic_basis.iter().map(ToString::to_string).collect();
    let basis: Vec<Vec<String>> = locus.basis.iter().map(|v| format::gaussians(v)).collect();
    let directions: Vec<String> = locus.directions.iter().map(ToString::to_string).collect();
    let mut text = String::new();
    push_frame(&mut text, complex.frame());
    writeln!(text, "dim H^1 = {}", h1.dimension).unwrap();
    for (i, b) in h1_basis.iter().enumerate() {
        writeln!(text, "  b{} = {b}", i + 1).unwrap();
    }
    writeln!(text, "abelian locus: dim = {}", locus.dimension).unwrap();
    for (c, d) in basis.iter().zip(&directions) {
        writeln!(text, "  {} -> {d}", format::bracketed(c)).unwrap();
    }
    let body = LocusJson {
        schema_version: SCHEMA_VERSION,
        command: "abelian-locus",
        algebra: file.algebra.name().to_string(),
        structure: sname,
        frame: frame_lines(complex.frame()),
        h1_dim: h1.dimension,
        h1_basis,
        dim: locus.dimension,
        basis,
        directions,
    };
    Ok(Report::new(text, &body, ExitCode::Success))
}

#[derive(Serialize)]
struct EntrySummary {
    name: String,
    dim: usize,
    step: usize,
    series_dims: Vec<usize>,
    structures: Vec<String>,
}

#[derive(Serialize)]
struct CatalogListJson {
    schema_version: u32,
    command: &'static str,
    entries: Vec<EntrySummary>,
}

#[derive(Serialize)]
struct CatalogEntryJson {
    schema_version: u32,
    command: &'static str,
    name: String,
    file: String,
}

/// The `.alg` text of a catalog entry, with its structure equations as a
/// leading comment when the entry has them.
pub fn catalog_file(spec: &str) -> Result<String> {
    let entry = catalog::get(spec)?;
    let mut out = format!("# catalog entry {}\n", entry.name);
    if let Some(ds) = &entry.differentials {
        for d in ds {
            let mut rhs = String::new();
            for (i, j, c) in &d.terms {
                let m = c.abs();
                let coeff = if m.is_one() {
                    String::new()
                } else {
                    format!("{}*", fmt_rational(&m))
                };
                let sign = match (rhs.is_empty(), c.is_negative()) {
                    (true, false) => "",
                    (true, true) => "-",
                    (false, false) => " + ",
                    (false, true) => " - ",
                };
                write!(rhs, "{sign}{coeff}e{}^e{}", i + 1, j + 1).unwrap();
            }
            if rhs.is_empty() {
                rhs.push('0');
            }
            writeln!(out, "# de{} = {rhs}", d.k + 1).unwrap();
        }
    }
    out.push_str(&alg::emit(&entry.algebra, &entry.structures));
    Ok(out)
}

pub fn catalog(name: Option<&str>) -> Result<Report> {
    match name {
        Some(spec) => {
            let file = catalog_file(spec)?;
            let body = CatalogEntryJson {
                schema_version: SCHEMA_VERSION,
                command: "catalog",
                name: spec.trim().to_string(),
                file: file.clone(),
            };
            Ok(Report::new(file, &body, ExitCode::Success))
        }
        None => {
            let mut text = String::new();
            let mut entries = Vec::new();
            for n in catalog::NAMES {
                let e = catalog::get(n)?;
                let names: Vec<String> = e.structures.iter().map(|(s, _)| s.clone()).collect();
                writeln!(
                    text,
                    "{:<6} dim {:<3} step {}  series {}  structures {}",
                    e.name,
                    e.facts.dim,
                    e.facts.step,
                    format::dims(&e.facts.series_dims),
                    names.join(", ")
                )
                .unwrap();
                entries.push(EntrySummary {
                    name: e.name,
                    dim: e.facts.dim,
                    step: e.facts.step,
                    series_dims: e.facts.series_dims,
                    structures: names,
                });
            }
            let body = CatalogListJson {
                schema_version: SCHEMA_VERSION,
                command: "catalog",
                entries,
            };
            Ok(Report::new(text, &body, ExitCode::Success))
        }
    }
}
