//! classify → compute invariants → verify identities.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{global_dimension, BoundQuiverAlgebra, Representation, DEFAULT_GL_DIM_BOUND};
use crate::derived::{
    budget_from_env, confirm_cy, entropy_estimate, hh_entropy_estimate, hochschild_table_dual, is_d_rep_infinite_window,
    k_rep_infinite_window, polynomial_entropy_estimate, serre_series, CyVerdict, DerivedCategory, HhVariant, HochschildTable,
    ProjComplex, WindowVerdict,
};
use crate::derived::entropy::q_to_f64;
use crate::dsl::AlgebraSpec;
use crate::ktheory::{
    coxeter_matrix, detect_twisted_cy, entropy_closed_form, hh_superdimension_trace, hrr_sides, polynomial_entropy_closed_form,
    unimodular_inverse, wimmer_best, yomdin_bound, Classification, EntropyLine, DEFAULT_P_MAX,
};
use crate::linalg::{char_poly, jordan_growth_rate, spectral_radius, ExactMatrix};
use crate::par::{IntoParallelRefIterator, ParallelIterator};
use crate::report::*;
use crate::{Result, Q};

pub const ENTROPY_TOLERANCE: f64 = 0.2;
pub const POLY_TOLERANCE: f64 = 0.3;
pub const SERRE_DIM_TOLERANCE: f64 = 0.06;
pub const HH_SLOPE_TOLERANCE: f64 = 0.35;
pub const WIMMER_TOLERANCE: f64 = 0.05;
pub const WIMMER_N: usize = 40;
const HRR_SEED: u64 = 0x4882;
/// Rows needed before the Hochschild identities count as checked.
pub const MIN_HH_ROWS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOptions {
    /// Window dimension; defaults to the global dimension (at least 1).
    pub d: Option<usize>,
    /// Homological window and Serre-power count for twisted CY algebras.
    pub n_max: usize,
    /// K-level window and Serre-power count for d-representation-infinite algebras.
    pub k_n_max: usize,
    pub p_max: usize,
    pub t_grid: Vec<Q>,
    pub budget: usize,
    /// Hochschild rows requested; rows stop early at the budget.
    pub hh_n_max: usize,
    pub hrr_pairs: usize,
    pub gl_bound: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            d: None,
            n_max: 30,
            k_n_max: 50,
            p_max: DEFAULT_P_MAX,
            t_grid: default_t_grid(),
            budget: budget_from_env(),
            hh_n_max: 12,
            hrr_pairs: 10,
            gl_bound: DEFAULT_GL_DIM_BOUND,
        }
    }
}

/// `{−1, 0, 1/2, 1}`.
pub fn default_t_grid() -> Vec<Q> {
    vec![-Q::one(), Q::zero(), Q::new(1.into(), 2.into()), Q::one()]
}

fn check(id: &str, statement: String, passed: bool, residual: impl ToString, tolerance: impl ToString) -> Verification {
    Verification {
        id: id.into(),
        statement,
        passed,
        residual: residual.to_string(),
        tolerance: tolerance.to_string(),
    }
}

fn fmt_f(x: f64) -> String {
    format!("{x:.6}")
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn run_pipeline(spec: &AlgebraSpec, opts: &PipelineOptions) -> Result<InvariantReport> {
    let a = spec.build()?;
    analyze_algebra(&a, &spec.to_source(), opts)
}

pub fn analyze_algebra(a: &BoundQuiverAlgebra, source: &str, opts: &PipelineOptions) -> Result<InvariantReport> {
    let c = a.cartan_matrix();
    let mut report = InvariantReport {
        schema: SCHEMA.into(),
        algebra: AlgebraIdentity::new(a.name(), source.to_string(), a.num_vertices(), a.quiver().arrows().len(), a.dim()),
        cartan: c.clone(),
        cartan_det: c.det()?.to_string(),
        gl_dim: None,
        coxeter: None,
        cy: None,
        classification: ClassificationReport {
            kind: ClassKind::OutOfScope,
            label: "infinite global dimension — out of scope".into(),
        },
        window: None,
        entropy: None,
        series: None,
        hochschild: None,
        verifications: Vec::new(),
    };
    let Some(gl) = global_dimension(a, opts.gl_bound) else {
        return Ok(report);
    };
    report.gl_dim = Some(gl);
    let d = opts.d.unwrap_or(gl.max(1));
    let checks = &mut report.verifications;

    let det = c.det()?;
    checks.push(check("cartan-unimodular", "det C = ±1".into(), det.abs().is_one(), &det, 0));

    let phi = coxeter_matrix(&c)?;
    let phi_inv = unimodular_inverse(&phi)?;
    let (f, g) = (char_poly(&phi)?, char_poly(&phi_inv)?);
    checks.push(check(
        "reciprocal-char-poly",
        "char poly of Φ⁻¹ is ± the reversal of char poly of Φ".into(),
        f.reversed().primitive() == g.primitive(),
        format!("{} vs {}", f.reversed(), g),
        0,
    ));
    let (rho, rho_inv) = (spectral_radius(&phi)?, spectral_radius(&phi_inv)?);
    checks.push(check("spectral-radius-symmetric", "ρ(Φ) = ρ(Φ⁻¹)".into(), rho == rho_inv, format!("{rho} vs {rho_inv}"), 0));
    let (s, s_inv) = (jordan_growth_rate(&phi)?, jordan_growth_rate(&phi_inv)?);
    checks.push(check("growth-rate-symmetric", "s(Φ) = s(Φ⁻¹)".into(), s == s_inv, format!("{s} vs {s_inv}"), 0));
    checks.push(hrr_check(a, opts.hrr_pairs, gl)?);
    report.coxeter = Some(CoxeterReport {
        matrix: phi.clone(),
        char_poly: f,
        spectral_radius: rho.clone().into(),
        inverse_spectral_radius: rho_inv.into(),
        growth_rate: s,
    });

    let candidate = detect_twisted_cy(&c, opts.p_max)?;
    let k_window = k_rep_infinite_window(&c, d, opts.k_n_max)?;
    checks.push(check(
        "dichotomy",
        "never both a CY candidate and inside the d-RI window".into(),
        !(candidate.is_some() && k_window.passes()),
        format!("candidate: {}, K-window passes: {}", candidate.is_some(), k_window.passes()),
        0,
    ));
    let dc = DerivedCategory::new(a, opts.budget)?;
    let mut window = WindowReport {
        d,
        n_max: opts.n_max,
        k_n_max: opts.k_n_max,
        p_max: opts.p_max,
        budget: opts.budget,
        hh_n_max: opts.hh_n_max,
        t_grid: opts.t_grid.iter().map(ToString::to_string).collect(),
        k_level: verdict_text(&k_window),
        homological: None,
        homological_reached: None,
        semantics: "window semantics: passing a finite window is evidence, not proof".into(),
    };

    let classification = if let Some(cand) = &candidate {
        let verdict = confirm_cy(&dc, cand);
        let confirmed = verdict.confirmed().cloned();
        checks.push(check(
            "cy-derived",
            format!("ν^{}(A) ≅ A[q] with the sign {}", cand.p, cand.sign),
            confirmed.is_some(),
            cy_verdict_text(&verdict),
            0,
        ));
        report.cy = Some(CyReport {
            p: cand.p,
            sign: cand.sign,
            permutation: cand.permutation.clone(),
            q: confirmed.as_ref().and_then(|c| c.q),
            verdict: cy_verdict_text(&verdict),
        });
        confirmed.map(Classification::TwistedCy)
    } else if k_window.passes() {
        let hom = is_d_rep_infinite_window(&dc, d, opts.n_max);
        window.homological = Some(verdict_text(&hom));
        window.homological_reached = Some(match &hom {
            WindowVerdict::Passes { n_max } => *n_max,
            WindowVerdict::Truncated { reached, .. } => reached - 1,
            WindowVerdict::FailsAt { n, .. } => n.unsigned_abs() as usize,
        });
        (!hom.fails()).then(|| Classification::RepInfinite {
            d,
            coxeter: phi.clone(),
            window: Some(opts.k_n_max),
        })
    } else {
        None
    };
    report.window = Some(window);

    let Some(cl) = classification else {
        report.classification = ClassificationReport {
            kind: ClassKind::Undetermined,
            label: "undetermined-in-window".into(),
        };
        return Ok(report);
    };
    let (line, line_inv) = entropy_closed_form(&cl)?;
    let poly = polynomial_entropy_closed_form(&cl)?;
    report.classification = match &cl {
        Classification::TwistedCy(c) => ClassificationReport {
            kind: ClassKind::TwistedCy,
            label: format!("twisted CY ({},{})", c.p, c.q.unwrap_or_default()),
        },
        Classification::RepInfinite { d, window, .. } => ClassificationReport {
            kind: ClassKind::RepInfinite,
            label: format!("{d}-rep-infinite (window {})", window.unwrap_or_default()),
        },
    };
    let checks = &mut report.verifications;

    let (wn, gap) = wimmer_best(&phi, WIMMER_N)?;
    checks.push(check(
        "wimmer",
        format!("|tr Φⁿ|^(1/n) approaches ρ(Φ) for some n ≤ {WIMMER_N} (best n = {wn})"),
        gap <= WIMMER_TOLERANCE,
        fmt_f(gap),
        WIMMER_TOLERANCE,
    ));
    checks.push(serre_inverse_check(&dc)?);

    // Serre powers: entropy, polynomial entropy, Serre dimensions
    let (n_series, shortcut) = match &cl {
        Classification::TwistedCy(_) => (opts.n_max, None),
        Classification::RepInfinite { .. } => (opts.k_n_max, Some(d)),
    };
    let series = serre_series(&dc, n_series, shortcut)?;
    let est = entropy_estimate(&series, &opts.t_grid);
    let h0 = line.eval(0.0);
    let poly_est = polynomial_entropy_estimate(&series, 0.0, h0).ok();
    let dims = series.dimensions();
    for (i, t) in opts.t_grid.iter().enumerate() {
        let tf = q_to_f64(t);
        let want = line.eval(tf);
        let got = est.last(i).unwrap_or(f64::NAN);
        let res = (got - want).abs();
        checks.push(check(
            &format!("entropy-line[t={t}]"),
            format!("(1/n) log ε_t(n) at n = {} matches h_t(S) = {}", series.terms.len(), line_text(&line)),
            res <= ENTROPY_TOLERANCE,
            fmt_f(res),
            ENTROPY_TOLERANCE,
        ));
    }
    if let Some(p) = &poly_est {
        let res = (p.estimate - poly as f64).abs();
        checks.push(check(
            "polynomial-entropy",
            format!("envelope slope between n = {} and n = {} matches h^pol_0(S) = {poly}", p.window.0, p.window.1),
            res <= POLY_TOLERANCE,
            fmt_f(res),
            POLY_TOLERANCE,
        ));
    }
    if let (Some(up), Some(lo)) = (dims.upper.last(), dims.lower.last()) {
        let want = q_to_f64(&line.slope);
        let res = (q_to_f64(up) - want).abs().max((q_to_f64(lo) - want).abs());
        checks.push(check(
            "serre-dimensions",
            format!("upper and lower Serre dimensions at n = {} match {}", dims.upper.len(), line.slope),
            res <= SERRE_DIM_TOLERANCE && series.is_complete(),
            fmt_f(res),
            SERRE_DIM_TOLERANCE,
        ));
    }
    report.series = Some(SeriesReport {
        terms: series.terms.len(),
        homological_terms: series.homological_len(),
        requested: series.requested,
        budget_needed: series.budget_needed,
        upper_serre_dimension: dims.upper.last().map(ToString::to_string),
        lower_serre_dimension: dims.lower.last().map(ToString::to_string),
        t: opts.t_grid.iter().map(ToString::to_string).collect(),
        entropy_tail: (0..opts.t_grid.len()).map(|i| est.last(i).and_then(finite)).collect(),
        entropy_table: est.values.iter().map(|row| row.iter().map(|&x| finite(x)).collect()).collect(),
        polynomial_estimate: poly_est.as_ref().and_then(|p| finite(p.estimate)),
        polynomial_window: poly_est.as_ref().map(|p| p.window),
    });
    report.entropy = Some(EntropyReport {
        serre: line_report(&line),
        inverse: line_report(&line_inv),
        polynomial: poly,
    });

    // Hochschild rows for M = A*
    let table = hochschild_table_dual(&dc, opts.hh_n_max, HhVariant::Both);
    let hh = hochschild_report(&table, &c)?;
    let checks = &mut report.verifications;
    checks.extend(hochschild_checks(&table, &hh, opts.hh_n_max));
    if let Some(slope) = hh.homology_slope {
        let res = (slope - h0).abs();
        checks.push(check(
            "kikuta-ouchi",
            format!("Hochschild homology growth over {} rows matches h_0(S)", table.rows.len()),
            res <= HH_SLOPE_TOLERANCE,
            fmt_f(res),
            HH_SLOPE_TOLERANCE,
        ));
    }
    report.hochschild = Some(hh);
    Ok(report)
}

fn line_text(l: &EntropyLine) -> String {
    format!("{}·t + {}", l.slope, fmt_f(l.constant()))
}

fn line_report(l: &EntropyLine) -> LineReport {
    LineReport {
        slope: l.slope.to_string(),
        rho: l.rho.clone().into(),
    }
}

fn verdict_text(v: &WindowVerdict) -> String {
    match v {
        WindowVerdict::Passes { n_max } => format!("passes to n = {n_max}"),
        WindowVerdict::FailsAt { n, reason, .. } => format!("fails at n = {n}: {reason}"),
        WindowVerdict::Truncated { reached, needed } => format!("truncated at n = {reached} ({needed} cells needed)"),
    }
}

fn cy_verdict_text(v: &CyVerdict) -> String {
    match v {
        CyVerdict::Confirmed { candidate } => format!("confirmed with q = {}", candidate.q.unwrap_or_default()),
        CyVerdict::Refuted { reason } => format!("refuted: {reason}"),
        CyVerdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
        CyVerdict::Truncated { needed } => format!("truncated: {needed} cells needed"),
    }
}

/// `Σ (−1)^l dim Ext^l(X, Y) = ⟨dim X, dim Y⟩` on seeded random modules.
pub fn hrr_check(a: &BoundQuiverAlgebra, pairs: usize, gl: usize) -> Result<Verification> {
    let mut rng = ChaCha8Rng::seed_from_u64(HRR_SEED);
    let mut worst = BigInt::zero();
    let mut all = true;
    for _ in 0..pairs {
        let x = Representation::random(a, &mut rng, 3);
        let y = Representation::random(a, &mut rng, 3);
        match hrr_sides(a, &x, &y, gl)? {
            Some((l, r)) => {
                let diff = (l - r).abs();
                all &= diff.is_zero();
                worst = worst.max(diff);
            }
            None => all = false,
        }
    }
    Ok(check(
        "hrr",
        format!("Σ(−1)^l dim Ext^l(X,Y) = ⟨dim X, dim Y⟩ on {pairs} random pairs"),
        all,
        worst,
        0,
    ))
}

/// `S(S⁻¹(P_i))` has the cohomology of `P_i` for every vertex.
pub fn serre_inverse_check(dc: &DerivedCategory) -> Result<Verification> {
    let a = dc.algebra();
    let mut bad = Vec::new();
    for i in 0..a.num_vertices() {
        let p = ProjComplex::stalk(vec![i], 0);
        let back = dc.nakayama(&dc.nakayama_inverse(&p)?)?;
        if back.cohomology(a) != p.cohomology(a) {
            bad.push(i);
        }
    }
    Ok(check(
        "serre-inverse",
        "S(S⁻¹(P_i)) ≅ P_i on cohomology for every vertex".into(),
        bad.is_empty(),
        format!("{} mismatches", bad.len()),
        0,
    ))
}

fn hochschild_report(table: &HochschildTable, c: &ExactMatrix) -> Result<HochschildReport> {
    let ct = c.transpose();
    let rows = table
        .rows
        .iter()
        .map(|r| {
            let k = r.n as i64 + table.trace_index_offset;
            Ok(HhRowReport {
                n: r.n,
                homology: r.homology.clone(),
                cohomology: r.cohomology.clone(),
                supertrace: hh_superdimension_trace(&ct, c, k as u32)?.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let growth = hh_entropy_estimate(table).ok();
    Ok(HochschildReport {
        rows,
        requested: table.requested,
        budget_needed: table.budget_needed,
        trace_index_offset: table.trace_index_offset,
        homology_slope: growth.as_ref().and_then(|g| g.homology.as_ref()).and_then(|g| g.per_n.last().map(|x| x.1)),
        cohomology_slope: growth.as_ref().and_then(|g| g.cohomology.as_ref()).and_then(|g| g.per_n.last().map(|x| x.1)),
        lower_bound: yomdin_bound(&ct, c).ok().and_then(|b| finite(b.log)),
    })
}

fn hochschild_checks(table: &HochschildTable, hh: &HochschildReport, requested: usize) -> Vec<Verification> {
    let rows = table.rows.len();
    let enough = rows >= MIN_HH_ROWS.min(requested);
    let mismatched = table
        .rows
        .iter()
        .zip(&hh.rows)
        .filter(|(r, h)| r.sdim_homology().map(|s| s.to_string()) != Some(h.supertrace.clone()))
        .count();
    let duality_bad = table
        .rows
        .windows(2)
        .filter(|w| w[1].tdim_cohomology() != w[0].tdim_homology())
        .count();
    vec![
        check(
            "hh-supertrace",
            format!("sdim HH_*(A, (A*)^⊗n) = tr(C⁻¹(CᵀC⁻¹)^(n−1)Cᵀ) for n ≤ {rows}"),
            enough && mismatched == 0,
            format!("{mismatched} mismatched rows; {rows} of {requested} rows within the budget"),
            0,
        ),
        check(
            "hh-duality",
            format!("tdim HH^*(A, (A*)^⊗n) = tdim HH_*(A, (A*)^⊗(n−1)) for 2 ≤ n ≤ {rows}"),
            enough && duality_bad == 0,
            format!("{duality_bad} mismatched rows; {rows} of {requested} rows within the budget"),
            0,
        ),
    ]
}

/// Runs the pipeline on several specs on the worker pool; order is kept.
pub fn run_many(specs: &[AlgebraSpec], opts: &PipelineOptions) -> Vec<Result<InvariantReport>> {
    specs.par_iter().map(|s| run_pipeline(s, opts)).collect()
}

/// The candidate's `p` when `ν^p(A) ≅ A[q]` is confirmed.
pub fn confirmed_cy(report: &InvariantReport) -> Option<(usize, i64)> {
    report.cy.as_ref().and_then(|c| c.q.map(|q| (c.p, q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_get;

    #[test]
    fn a2_is_twisted_cy() {
        let r = run_pipeline(&corpus_get("A2").unwrap().spec, &PipelineOptions::default()).unwrap();
        assert_eq!(r.classification.label, "twisted CY (3,1)");
        assert_eq!(r.entropy.as_ref().unwrap().serre.slope, "1/3");
        assert!(r.all_pass(), "{:#?}", r.verifications.iter().filter(|v| !v.passed).collect::<Vec<_>>());
    }

    #[test]
    fn loop_is_out_of_scope() {
        let r = run_pipeline(&corpus_get("dual_numbers").unwrap().spec, &PipelineOptions::default()).unwrap();
        assert_eq!(r.classification.kind, ClassKind::OutOfScope);
        assert_eq!(r.cartan_det, "2");
        assert!(r.coxeter.is_none());
    }

    #[test]
    fn json_is_deterministic() {
        let spec = corpus_get("kronecker2").unwrap().spec;
        let opts = PipelineOptions {
            k_n_max: 20,
            ..Default::default()
        };
        let a = emit_json(&run_pipeline(&spec, &opts).unwrap());
        let b = emit_json(&run_pipeline(&spec, &opts).unwrap());
        assert_eq!(a, b);
        assert_eq!(parse_json(&a).unwrap(), run_pipeline(&spec, &opts).unwrap());
    }
}
