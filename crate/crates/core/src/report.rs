//! The invariant report and its JSON, CSV and markdown renderings.
//!
//! Every field is plain data so that `parse(emit(r)) == r` for JSON.
//! Approximate values always sit next to their exact counterpart
//! (`spectral_radius`, closed-form entropy lines) or carry an explicit
//! tolerance (`Verification::tolerance`).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::linalg::{AlgebraicReal, ExactMatrix, IntPolynomial};
use crate::Result;

pub const SCHEMA: &str = "serre-scope.report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraIdentity {
    pub name: String,
    /// SHA-256 of `source`.
    pub sha256: String,
    /// Canonical `.alg` source.
    pub source: String,
    pub vertices: usize,
    pub arrows: usize,
    pub dimension: usize,
}

impl AlgebraIdentity {
    pub fn new(name: &str, source: String, vertices: usize, arrows: usize, dimension: usize) -> Self {
        Self {
            name: name.to_string(),
            sha256: sha256_hex(&source),
            source,
            vertices,
            arrows,
            dimension,
        }
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactReal {
    pub exact: AlgebraicReal,
    pub approx: f64,
    /// `ln` of the value; `None` for zero.
    pub log: Option<f64>,
}

impl From<AlgebraicReal> for ExactReal {
    fn from(exact: AlgebraicReal) -> Self {
        let approx = exact.to_f64();
        let log = (!exact.is_zero()).then(|| if exact.is_one() { 0.0 } else { exact.ln() });
        Self { exact, approx, log }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoxeterReport {
    pub matrix: ExactMatrix,
    pub char_poly: IntPolynomial,
    pub spectral_radius: ExactReal,
    /// `ρ(Φ⁻¹)`, equal to `spectral_radius` by the reversed characteristic polynomial.
    pub inverse_spectral_radius: ExactReal,
    /// Polynomial growth rate `s(Φ)`.
    pub growth_rate: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyReport {
    pub p: usize,
    pub sign: i8,
    pub permutation: Vec<usize>,
    /// Set once `ν^p(A) ≅ A[q]` is confirmed on the derived level.
    pub q: Option<i64>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    TwistedCy,
    RepInfinite,
    Undetermined,
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub kind: ClassKind,
    pub label: String,
}

/// Window parameters and the verdicts obtained with them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub d: usize,
    pub n_max: usize,
    pub k_n_max: usize,
    pub p_max: usize,
    pub budget: usize,
    pub hh_n_max: usize,
    pub t_grid: Vec<String>,
    pub k_level: String,
    /// `None` when the homological window was not run.
    pub homological: Option<String>,
    /// Last power reached by the homological window.
    pub homological_reached: Option<usize>,
    pub semantics: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineReport {
    /// Exact slope of `h_t = slope·t + log ρ`.
    pub slope: String,
    pub rho: ExactReal,
}

impl LineReport {
    pub fn eval(&self, t: f64) -> f64 {
        parse_f64(&self.slope) * t + self.rho.log.unwrap_or(0.0)
    }
}

fn parse_f64(q: &str) -> f64 {
    match q.split_once('/') {
        Some((n, d)) => n.parse::<f64>().unwrap_or(f64::NAN) / d.parse::<f64>().unwrap_or(f64::NAN),
        None => q.parse().unwrap_or(f64::NAN),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub serre: LineReport,
    pub inverse: LineReport,
    /// Exact polynomial entropy `h^pol_t(S)`.
    pub polynomial: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    /// Number of powers `S^n(A)` available.
    pub terms: usize,
    pub homological_terms: usize,
    pub requested: usize,
    pub budget_needed: Option<usize>,
    /// Exact `−inf S^n(A)/n` and `−sup S^n(A)/n` at the last `n`.
    pub upper_serre_dimension: Option<String>,
    pub lower_serre_dimension: Option<String>,
    pub t: Vec<String>,
    /// `(1/n) log ε_t(n)` at the last `n`, per `t`.
    pub entropy_tail: Vec<Option<f64>>,
    /// Full table: `entropy_table[i][n − 1]`.
    pub entropy_table: Vec<Vec<Option<f64>>>,
    pub polynomial_estimate: Option<f64>,
    pub polynomial_window: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HhRowReport {
    pub n: usize,
    /// `(degree, dimension)` of Hochschild homology of `(A*)^{⊗n}`.
    pub homology: Option<Vec<(i64, usize)>>,
    pub cohomology: Option<Vec<(i64, usize)>>,
    /// Exact `tr(C⁻¹(CᵀC⁻¹)^{n+offset}Cᵀ)`.
    pub supertrace: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HochschildReport {
    pub rows: Vec<HhRowReport>,
    pub requested: usize,
    pub budget_needed: Option<usize>,
    /// Row `n` is compared with `hh_superdimension_trace(n + offset)`.
    pub trace_index_offset: i64,
    /// `(1/n) log tdim` at the last computed row.
    pub homology_slope: Option<f64>,
    pub cohomology_slope: Option<f64>,
    /// `log ρ(Ψ)` lower bound.
    pub lower_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub id: String,
    pub statement: String,
    pub passed: bool,
    pub residual: String,
    pub tolerance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub schema: String,
    pub algebra: AlgebraIdentity,
    pub cartan: ExactMatrix,
    pub cartan_det: String,
    pub gl_dim: Option<usize>,
    pub coxeter: Option<CoxeterReport>,
    pub cy: Option<CyReport>,
    pub classification: ClassificationReport,
    pub window: Option<WindowReport>,
    pub entropy: Option<EntropyReport>,
    pub series: Option<SeriesReport>,
    pub hochschild: Option<HochschildReport>,
    pub verifications: Vec<Verification>,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.verifications.iter().all(|v| v.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(format!("unknown format `{s}` (json, csv, md)")),
        }
    }
}

pub fn emit_report(report: &InvariantReport, format: Format) -> String {
    match format {
        Format::Json => emit_json(report),
        Format::Csv => emit_csv(std::slice::from_ref(report)),
        Format::Markdown => emit_markdown(report),
    }
}

pub fn emit_json(report: &InvariantReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports are plain data");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<InvariantReport> {
    serde_json::from_str(text).map_err(|e| crate::Error::Io(format!("report JSON: {e}")))
}

/// Columns of the CSV rendering, one row per algebra.
pub const CSV_HEADER: [&str; 20] = [
    "name",
    "sha256",
    "vertices",
    "dimension",
    "gl_dim",
    "cartan_det",
    "char_poly",
    "rho",
    "rho_approx",
    "growth_rate",
    "classification",
    "cy_p",
    "cy_q",
    "entropy_slope",
    "entropy_constant",
    "polynomial_entropy",
    "upper_serre_dimension",
    "lower_serre_dimension",
    "hh_homology_slope",
    "verifications_passed",
];

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn emit_csv(reports: &[InvariantReport]) -> String {
    let mut out = CSV_HEADER.join(",");
    out.push('\n');
    for r in reports {
        let cox = r.coxeter.as_ref();
        let series = r.series.as_ref();
        let passed = r.verifications.iter().filter(|v| v.passed).count();
        let row = [
            r.algebra.name.clone(),
            r.algebra.sha256.clone(),
            r.algebra.vertices.to_string(),
            r.algebra.dimension.to_string(),
            opt(&r.gl_dim),
            r.cartan_det.clone(),
            opt(&cox.map(|c| c.char_poly.to_string())),
            opt(&cox.map(|c| c.spectral_radius.exact.to_string())),
            opt(&cox.map(|c| c.spectral_radius.approx)),
            opt(&cox.map(|c| c.growth_rate)),
            r.classification.label.clone(),
            opt(&r.cy.as_ref().map(|c| c.p)),
            opt(&r.cy.as_ref().and_then(|c| c.q)),
            opt(&r.entropy.as_ref().map(|e| e.serre.slope.clone())),
            opt(&r.entropy.as_ref().and_then(|e| e.serre.rho.log)),
            opt(&r.entropy.as_ref().map(|e| e.polynomial)),
            opt(&series.and_then(|s| s.upper_serre_dimension.clone())),
            opt(&series.and_then(|s| s.lower_serre_dimension.clone())),
            opt(&r.hochschild.as_ref().and_then(|h| h.homology_slope)),
            format!("{passed}/{}", r.verifications.len()),
        ];
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn emit_markdown(r: &InvariantReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {}\n", r.algebra.name);
    let _ = writeln!(s, "- schema: `{}`", r.schema);
    let _ = writeln!(s, "- sha256: `{}`", r.algebra.sha256);
    let _ = writeln!(
        s,
        "- vertices: {}, arrows: {}, dimension: {}",
        r.algebra.vertices, r.algebra.arrows, r.algebra.dimension
    );
    let _ = writeln!(s, "- classification: **{}**", r.classification.label);
    let _ = writeln!(s, "- global dimension: {}", r.gl_dim.map_or("> bound".into(), |g| g.to_string()));
    let _ = writeln!(s, "- det C: {}\n", r.cartan_det);
    let _ = writeln!(s, "## Cartan matrix\n\n```\n{}\n```\n", r.cartan);
    if let Some(c) = &r.coxeter {
        let _ = writeln!(s, "## Coxeter matrix\n\n```\n{}\n```\n", c.matrix);
        let _ = writeln!(s, "- char poly: `{}`", c.char_poly);
        let _ = writeln!(s, "- ρ(Φ) = {} ≈ {:.6}", c.spectral_radius.exact, c.spectral_radius.approx);
        let _ = writeln!(s, "- s(Φ) = {}\n", c.growth_rate);
    }
    if let Some(cy) = &r.cy {
        let _ = writeln!(s, "## Calabi-Yau candidate\n\n- p = {}, sign = {}, q = {}, {}\n", cy.p, cy.sign, opt(&cy.q), cy.verdict);
    }
    if let Some(w) = &r.window {
        let _ = writeln!(s, "## Window\n");
        let _ = writeln!(s, "- d = {}, n_max = {}, k_n_max = {}, p_max = {}, budget = {}", w.d, w.n_max, w.k_n_max, w.p_max, w.budget);
        let _ = writeln!(s, "- K-level: {}", w.k_level);
        if let Some(h) = &w.homological {
            let _ = writeln!(s, "- homological: {h}");
        }
        let _ = writeln!(s, "- {}\n", w.semantics);
    }
    if let Some(e) = &r.entropy {
        let _ = writeln!(s, "## Entropy\n");
        let _ = writeln!(s, "- h_t(S) = {}·t + {:.6}", e.serre.slope, e.serre.rho.log.unwrap_or(0.0));
        let _ = writeln!(s, "- h_t(S⁻¹) = {}·t + {:.6}", e.inverse.slope, e.inverse.rho.log.unwrap_or(0.0));
        let _ = writeln!(s, "- h^pol_t(S) = {}\n", e.polynomial);
    }
    if let Some(se) = &r.series {
        let _ = writeln!(s, "## Serre powers ({} terms, {} homological)\n", se.terms, se.homological_terms);
        let _ = writeln!(s, "| t | (1/n) log ε_t(n) at n = {} |\n|---|---|", se.terms);
        for (t, v) in se.t.iter().zip(&se.entropy_tail) {
            let _ = writeln!(s, "| {t} | {} |", v.map_or("—".into(), |x| format!("{x:.6}")));
        }
        let _ = writeln!(
            s,
            "\n- Serre dimensions: upper {}, lower {}",
            opt(&se.upper_serre_dimension),
            opt(&se.lower_serre_dimension)
        );
        if let Some(p) = se.polynomial_estimate {
            let _ = writeln!(s, "- polynomial entropy estimate (t = 0): {p:.4}");
        }
        s.push('\n');
    }
    if let Some(h) = &r.hochschild {
        let _ = writeln!(s, "## Hochschild table\n\n| n | tdim HH_* | tdim HH^* | supertrace |\n|---|---|---|---|");
        let tdim = |v: &Option<Vec<(i64, usize)>>| v.as_ref().map_or("—".into(), |d| d.iter().map(|x| x.1).sum::<usize>().to_string());
        for row in &h.rows {
            let _ = writeln!(s, "| {} | {} | {} | {} |", row.n, tdim(&row.homology), tdim(&row.cohomology), row.supertrace);
        }
        let _ = writeln!(s, "\n- homology slope: {}\n", opt(&h.homology_slope.map(|x| format!("{x:.4}"))));
    }
    let _ = writeln!(s, "## Verifications\n");
    for v in &r.verifications {
        let mark = if v.passed { '✓' } else { '✗' };
        let _ = writeln!(s, "- {mark} `{}`: {} (residual {}, tolerance {})", v.id, v.statement, v.residual, v.tolerance);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample() -> InvariantReport {
        let cartan = ExactMatrix::from_i64_rows(&[[1, 0], [1, 1]]).unwrap();
        InvariantReport {
            schema: SCHEMA.into(),
            algebra: AlgebraIdentity::new("A2", "algebra A2 {}".into(), 2, 1, 3),
            cartan: cartan.clone(),
            cartan_det: "1".into(),
            gl_dim: Some(1),
            coxeter: None,
            cy: Some(CyReport {
                p: 3,
                sign: -1,
                permutation: vec![0, 1],
                q: Some(1),
                verdict: "confirmed".into(),
            }),
            classification: ClassificationReport {
                kind: ClassKind::TwistedCy,
                label: "twisted CY (3,1)".into(),
            },
            window: None,
            entropy: Some(EntropyReport {
                serre: LineReport {
                    slope: "1/3".into(),
                    rho: AlgebraicReal::one().into(),
                },
                inverse: LineReport {
                    slope: "-1/3".into(),
                    rho: AlgebraicReal::one().into(),
                },
                polynomial: 0,
            }),
            series: None,
            hochschild: None,
            verifications: vec![
                Verification {
                    id: "a".into(),
                    statement: "x = x".into(),
                    passed: true,
                    residual: "0".into(),
                    tolerance: "0".into(),
                },
                Verification {
                    id: "b".into(),
                    statement: "0.1 + 0.2".into(),
                    passed: false,
                    residual: "0.30000000000000004".into(),
                    tolerance: "0".into(),
                },
            ],
        }
    }

    #[test]
    fn json_round_trips() {
        let r = sample();
        assert_eq!(parse_json(&emit_json(&r)).unwrap(), r);
        assert!(emit_json(&r).contains(SCHEMA));
    }

    #[test]
    fn csv_header_is_fixed() {
        let csv = emit_csv(&[sample()]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        let row = lines.next().unwrap();
        assert!(row.starts_with("A2,"));
        assert!(row.ends_with(",1/2"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn markdown_has_one_mark_per_verification() {
        let md = emit_markdown(&sample());
        assert_eq!(md.lines().filter(|l| l.starts_with("- ✓") || l.starts_with("- ✗")).count(), 2);
        assert!(md.contains("twisted CY (3,1)"));
    }

    #[test]
    fn line_eval() {
        let e = sample().entropy.unwrap();
        assert!((e.serre.eval(3.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sha_is_stable() {
        assert_eq!(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
