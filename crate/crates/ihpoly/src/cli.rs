//! Command implementations and report types for the `ihpoly` binary.
//!
//! Each command builds a [`RunReport`]: an echo of the input, the computed
//! polynomials, every consistency check with its pass/fail status, the
//! hypotheses that are assumed rather than checked, and timing. Reports
//! render as human-readable text or as JSON (`--format structured`).
//! The process exit code is 0 iff every check passed; argument and
//! document parse errors exit with 2 instead.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blowup5::{self, HypersurfaceDatum};
use crate::laurent::LaurentPoly;
use crate::schubert::{self, SchubertDatum};
use crate::twostrata::{self, BettiVector, DecompositionSummand, TwoStrataData};

/// Exit code for failed checks (the mathematics disagrees with the input).
pub const EXIT_CHECK_FAILURE: u8 = 1;
/// Exit code for usage and parse errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Error, Debug)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot parse input document: {0}")]
    Parse(#[from] serde_json::Error),
}

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Structured,
}

/// Structured input document for the generic engine; also embedded in
/// structured Schubert reports so results round-trip through `generic`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TwoStrataDocument {
    pub n: i64,
    pub m: i64,
    pub p: i64,
    pub q: i64,
    /// Fiber Betti numbers `a^0 ..= a^{2p}`.
    pub fiber: Vec<u64>,
    /// Coefficients of the resolution's Poincaré polynomial from degree 0.
    pub h_resolution: Vec<i64>,
    /// Coefficients of the singular locus's Poincaré polynomial from degree 0.
    pub h_delta: Vec<i64>,
    #[serde(default = "default_true")]
    pub resolution_is_projective: bool,
    #[serde(default = "default_true")]
    pub delta_is_projective: bool,
}

fn default_true() -> bool {
    true
}

impl TwoStrataDocument {
    pub fn to_data(&self) -> TwoStrataData {
        TwoStrataData {
            n: self.n,
            m: self.m,
            p: self.p,
            q: self.q,
            fiber: BettiVector::new(self.fiber.clone()),
            h_resolution: LaurentPoly::from_int_coeffs(0, &self.h_resolution),
            h_delta: LaurentPoly::from_int_coeffs(0, &self.h_delta),
            resolution_is_projective: self.resolution_is_projective,
            delta_is_projective: self.delta_is_projective,
        }
    }

    pub fn from_data(data: &TwoStrataData) -> Option<Self> {
        Some(Self {
            n: data.n,
            m: data.m,
            p: data.p,
            q: data.q,
            fiber: data.fiber.dims().to_vec(),
            h_resolution: dense_i64_coeffs(&data.h_resolution)?,
            h_delta: dense_i64_coeffs(&data.h_delta)?,
            resolution_is_projective: data.resolution_is_projective,
            delta_is_projective: data.delta_is_projective,
        })
    }
}

fn dense_i64_coeffs(poly: &LaurentPoly) -> Option<Vec<i64>> {
    if poly.is_zero() {
        return Some(Vec::new());
    }
    if poly.min_degree()? < 0 {
        return None;
    }
    let max = poly.max_degree()?;
    let mut out = vec![0i64; max as usize + 1];
    for (d, c) in poly.terms() {
        if !c.is_integer() {
            return None;
        }
        out[d as usize] = c.to_integer().to_i64()?;
    }
    Some(out)
}

/// A polynomial in a report: dense coefficient array plus minimum-degree
/// offset, alongside the human-readable term string.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PolyRepr {
    pub min_degree: i64,
    pub coeffs: Vec<String>,
    pub text: String,
}

impl PolyRepr {
    pub fn from_poly(poly: &LaurentPoly) -> Self {
        let min_degree = poly.min_degree().unwrap_or(0);
        let max_degree = poly.max_degree().unwrap_or(-1);
        let coeffs = (min_degree..=max_degree)
            .map(|d| poly.coeff(d).to_string())
            .collect();
        Self { min_degree, coeffs, text: poly.to_string() }
    }
}

/// One named consistency check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One summand of the decomposition, serialized.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SummandRepr {
    IntersectionComplex,
    ShiftedConstant { shift: i64, multiplicity: u64 },
}

/// Sweep statistics for `verify`.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRepr {
    pub name: String,
    pub size: u64,
    pub mismatches: u64,
    pub skipped: Vec<String>,
}

/// The result of one command invocation.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<serde_json::Value>,
    pub routes: Vec<String>,
    pub polynomials: BTreeMap<String, PolyRepr>,
    pub scalars: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<SummandRepr>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_strata_data: Option<TwoStrataDocument>,
    pub checks: Vec<CheckResult>,
    pub assumed_hypotheses: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sweeps: Vec<SweepRepr>,
    pub elapsed_ms: f64,
}

impl RunReport {
    fn new(command: &str, input: serde_json::Value) -> Self {
        Self {
            command: command.to_string(),
            input,
            invariants: None,
            routes: Vec::new(),
            polynomials: BTreeMap::new(),
            scalars: BTreeMap::new(),
            decomposition: None,
            two_strata_data: None,
            checks: Vec::new(),
            assumed_hypotheses: Vec::new(),
            sweeps: Vec::new(),
            elapsed_ms: 0.0,
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.checks.push(CheckResult { name: name.to_string(), passed, detail });
    }

    fn poly(&mut self, name: &str, poly: &LaurentPoly) {
        self.polynomials.insert(name.to_string(), PolyRepr::from_poly(poly));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> u8 {
        if self.all_passed() {
            0
        } else {
            EXIT_CHECK_FAILURE
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Structured => {
                serde_json::to_string_pretty(self).expect("report serializes")
            }
            OutputFormat::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "input: {}", self.input);
        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "invariants: {inv}");
        }
        if !self.routes.is_empty() {
            let _ = writeln!(out, "routes: {}", self.routes.join(", "));
        }
        for (name, poly) in &self.polynomials {
            let _ = writeln!(out, "{name}(t) = {}", poly.text);
        }
        for (name, value) in &self.scalars {
            let _ = writeln!(out, "{name} = {value}");
        }
        if let Some(summands) = &self.decomposition {
            let rendered: Vec<String> = summands
                .iter()
                .map(|s| match s {
                    SummandRepr::IntersectionComplex => "IC".to_string(),
                    SummandRepr::ShiftedConstant { shift, multiplicity } => {
                        format!("{multiplicity} x Q_delta[{shift}]")
                    }
                })
                .collect();
            let _ = writeln!(out, "decomposition: {}", rendered.join(" (+) "));
        }
        for sweep in &self.sweeps {
            let _ = writeln!(
                out,
                "sweep {}: size {}, mismatches {}, skipped {}",
                sweep.name,
                sweep.size,
                sweep.mismatches,
                sweep.skipped.len()
            );
            for skip in &sweep.skipped {
                let _ = writeln!(out, "  skipped: {skip}");
            }
        }
        let _ = writeln!(out, "checks:");
        for check in &self.checks {
            let status = if check.passed { "pass" } else { "FAIL" };
            match &check.detail {
                Some(detail) => {
                    let _ = writeln!(out, "  [{status}] {}: {detail}", check.name);
                }
                None => {
                    let _ = writeln!(out, "  [{status}] {}", check.name);
                }
            }
        }
        if !self.assumed_hypotheses.is_empty() {
            let _ = writeln!(out, "assumed hypotheses:");
            for hyp in &self.assumed_hypotheses {
                let _ = writeln!(out, "  - {hyp}");
            }
        }
        let _ = writeln!(out, "elapsed: {:.3} ms", self.elapsed_ms);
        let verdict = if self.all_passed() { "all checks passed" } else { "CHECKS FAILED" };
        let _ = writeln!(out, "status: {verdict}");
        out
    }
}

fn model_hypotheses() -> Vec<String> {
    vec![
        "the singular locus is smooth and the map is an isomorphism away from it".to_string(),
        "the resolution restricted over the singular locus is a smooth fibration \
         admitting a cohomology extension of the fiber"
            .to_string(),
        "cup product with the top Chern class of the exceptional normal bundle is \
         surjective in degrees >= p - q (not decidable from Betti data)"
            .to_string(),
    ]
}

fn decomposition_repr(report: &twostrata::DecompositionReport) -> Vec<SummandRepr> {
    report
        .summands
        .iter()
        .map(|s| match s {
            DecompositionSummand::IntersectionComplex => SummandRepr::IntersectionComplex,
            DecompositionSummand::ShiftedConstant { shift, multiplicity } => {
                SummandRepr::ShiftedConstant { shift: *shift, multiplicity: *multiplicity }
            }
        })
        .collect()
}

/// Run the generic engine on a parsed input document.
pub fn cmd_generic(doc: &TwoStrataDocument) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(
        "generic",
        serde_json::to_value(doc).expect("document serializes"),
    );
    report.assumed_hypotheses = model_hypotheses();

    let data = doc.to_data();
    let violations = twostrata::validate(&data);
    report.check(
        "data_invariants_hold",
        violations.is_empty(),
        (!violations.is_empty()).then(|| {
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        }),
    );
    if violations.is_empty() {
        run_engine_checks(&data, &mut report);
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

/// Engine computations plus the named module invariants, shared by
/// `generic` and used with packaged data by the model commands.
fn run_engine_checks(data: &TwoStrataData, report: &mut RunReport) {
    report.poly("h_resolution", &data.h_resolution);
    report.poly("h_delta", &data.h_delta);

    let g = match twostrata::g_poly(data) {
        Ok(g) => g,
        Err(err) => {
            report.check("g_has_integer_coefficients", false, Some(err.to_string()));
            return;
        }
    };
    report.check("g_has_integer_coefficients", true, None);
    report.poly("g", &g);

    let symmetric = g.is_zero()
        || (g.min_degree() == Some(2 * data.q)
            && g.max_degree() == Some(2 * data.p)
            && g.is_palindromic(2 * (data.p + data.q)));
    report.check("g_supported_in_2q_2p_and_symmetric", symmetric, None);

    let f = twostrata::f_poly(data);
    report.poly("f", &f);
    let f_matches = f == &data.h_delta * &g;
    report.check(
        "f_equals_h_delta_times_g",
        f_matches,
        (!f_matches).then(|| format!("f = {f}, h_delta * g = {}", &data.h_delta * &g)),
    );

    let decomposition = twostrata::decomposition_report(data);
    report.check(
        "decomposition_symmetric_about_m",
        decomposition.is_symmetric_about(data.m),
        None,
    );
    let bookkeeping = &decomposition.support_poly(data.n) * &data.h_delta;
    report.check("decomposition_reproduces_f", bookkeeping == f, None);
    report.decomposition = Some(decomposition_repr(&decomposition));

    match twostrata::ih_poly(data) {
        Ok(ih) => {
            report.check("ih_nonnegative_integer_coefficients", true, None);
            if data.resolution_is_projective && data.delta_is_projective {
                report.check("ih_palindromic_degree_2n", ih.is_palindromic(2 * data.n), None);
            }
            let reassembled = &ih + &(&data.h_delta * &g);
            report.check(
                "ih_plus_h_delta_g_equals_h_resolution",
                reassembled == data.h_resolution,
                None,
            );
            report.poly("ih", &ih);
        }
        Err(err) => {
            report.check("ih_nonnegative_integer_coefficients", false, Some(err.to_string()));
        }
    }
}

/// Run the Schubert model on a datum.
pub fn cmd_schubert(i: i64, j: i64, k: i64, l: i64) -> RunReport {
    let start = Instant::now();
    let datum = SchubertDatum::new(i, j, k, l);
    let mut report =
        RunReport::new("schubert", serde_json::json!({ "i": i, "j": j, "k": k, "l": l }));
    report.assumed_hypotheses = model_hypotheses();

    let violations = schubert::validate(&datum);
    report.check(
        "datum_constraints_hold",
        violations.is_empty(),
        (!violations.is_empty()).then(|| {
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        }),
    );
    if !violations.is_empty() {
        report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        return report;
    }

    let inv = schubert::invariants(&datum).expect("datum validated");
    let pi_small = schubert::is_small_pi(&datum).expect("datum validated");
    let pi1_small = schubert::is_small_pi1(&datum).expect("datum validated");
    report.invariants = Some(serde_json::json!({
        "case": inv.case_tag.to_string(),
        "n": inv.n,
        "m": inv.m,
        "p": inv.p,
        "q": inv.q,
        "sing_locus": inv.sing_locus.to_string(),
        "fiber": format!("P^{}", inv.fiber_dim),
        "pi_small": pi_small,
        "pi1_small": pi1_small,
    }));

    match schubert::ih(&datum) {
        Ok(result) => {
            report.routes = result.routes.iter().map(|r| r.to_string()).collect();
            report.check("routes_agree", true, None);
            let h_res = schubert::h_resolution(&datum).expect("datum validated");
            structural_ih_checks(&result.poly, 2 * inv.n, &mut report);
            if pi_small {
                report.check(
                    "small_pi_implies_ih_equals_h_resolution",
                    result.poly == h_res,
                    None,
                );
            } else {
                let bounded = (0..=2 * inv.n)
                    .all(|d| result.poly.coeff(d) <= h_res.coeff(d));
                report.check("ih_coefficientwise_at_most_h_resolution", bounded, None);
            }
            report.poly("ih", &result.poly);
            report.poly("h_resolution", &h_res);

            let data = schubert::to_two_strata(&datum).expect("nondegenerate datum");
            report.poly("h_delta", &data.h_delta);
            if let Ok(g) = twostrata::g_poly(&data) {
                report.poly("g", &g);
            }
            report.decomposition =
                Some(decomposition_repr(&twostrata::decomposition_report(&data)));
            report.two_strata_data = TwoStrataDocument::from_data(&data);
        }
        Err(err) => {
            let name = match &err {
                schubert::SchubertError::Degenerate => "two_strata_nondegenerate",
                schubert::SchubertError::RouteDisagreement(_) => "routes_agree",
                _ => "ih_computed",
            };
            report.check(name, false, Some(err.to_string()));
        }
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

fn structural_ih_checks(ih: &LaurentPoly, degree: i64, report: &mut RunReport) {
    report.check("ih_constant_term_one", ih.coeff(0).is_one(), None);
    report.check("ih_nonnegative_coefficients", ih.has_nonnegative_coeffs(), None);
    report.check("ih_palindromic_degree_2n", ih.is_palindromic(degree), None);
}

/// Run the hypersurface model on a degree vector.
pub fn cmd_hypersurface(d1: u32, d2: u32, d3: u32, d4: u32) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(
        "hypersurface",
        serde_json::json!({ "d1": d1, "d2": d2, "d3": d3, "d4": d4 }),
    );
    report.assumed_hypotheses = model_hypotheses();
    report.assumed_hypotheses.push(
        "the hypersurface is general among those containing the center threefold"
            .to_string(),
    );

    let datum = match HypersurfaceDatum::new(d1, d2, d3, d4) {
        Ok(datum) => {
            report.check("degree_vector_balanced", true, None);
            datum
        }
        Err(err) => {
            report.check("degree_vector_balanced", false, Some(err.to_string()));
            report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            return report;
        }
    };
    report.scalars.insert("x".into(), datum.x().to_string());
    report.scalars.insert("delta".into(), datum.delta().to_string());
    report.scalars.insert("genus".into(), datum.genus().to_string());
    report.invariants = Some(serde_json::json!({
        "n": 4, "m": 1, "p": 2, "q": 1,
        "fiber": "smooth quadric surface",
    }));

    let ring = blowup5::c4_via_intersection_ring(&datum);
    let closed = blowup5::c4_closed_form(&datum);
    report.scalars.insert("c4_intersection_ring".into(), ring.to_string());
    report.scalars.insert("c4_closed_form".into(), closed.to_string());
    report.check(
        "c4_intersection_ring_equals_closed_form",
        ring == closed,
        (ring != closed).then(|| format!("ring {ring} vs closed {closed}")),
    );

    let betti = match blowup5::betti_resolution(&datum) {
        Ok(betti) => {
            report.check("betti_gauss_bonnet_consistency", true, None);
            betti
        }
        Err(err) => {
            report.check("betti_gauss_bonnet_consistency", false, Some(err.to_string()));
            report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            return report;
        }
    };
    let h_res = LaurentPoly::from_bigint_coeffs(0, &betti);
    report.poly("h_resolution", &h_res);
    report.check("betti_palindromic", h_res.is_palindromic(8), None);

    let closed_ih = blowup5::ih_closed_form(&datum);
    match blowup5::to_two_strata(&datum) {
        Ok(data) => {
            report.poly("h_delta", &data.h_delta);
            if let Ok(g) = twostrata::g_poly(&data) {
                report.poly("g", &g);
            }
            match twostrata::ih_poly(&data) {
                Ok(engine_ih) => {
                    report.routes = vec!["closed_form".into(), "generic".into()];
                    report.check(
                        "ih_closed_form_matches_generic_engine",
                        closed_ih == engine_ih,
                        (closed_ih != engine_ih)
                            .then(|| format!("closed {closed_ih} vs engine {engine_ih}")),
                    );
                }
                Err(err) => {
                    report.check("ih_closed_form_matches_generic_engine", false, Some(err.to_string()));
                }
            }
            report.decomposition =
                Some(decomposition_repr(&twostrata::decomposition_report(&data)));
        }
        Err(err) => {
            report.check("ih_closed_form_matches_generic_engine", false, Some(err.to_string()));
        }
    }
    structural_ih_checks(&closed_ih, 8, &mut report);
    report.poly("ih", &closed_ih);

    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

/// Which verification sweeps to run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyScope {
    pub schubert: bool,
    pub hypersurface: bool,
}

/// Run the verification sweeps: the Schubert polynomial identities up to
/// `max_l`, and the hypersurface closed-form/engine cross-checks up to
/// degree `max_d`.
pub fn cmd_verify(scope: VerifyScope, max_l: i64, max_d: u32) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(
        "verify",
        serde_json::json!({
            "schubert": scope.schubert,
            "hypersurface": scope.hypersurface,
            "max_l": max_l,
            "max_d": max_d,
        }),
    );

    if scope.schubert {
        let identities = schubert::verify_identities(max_l);
        report.sweeps.push(SweepRepr {
            name: "schubert_identities".into(),
            size: identities.checked,
            mismatches: identities.mismatches.len() as u64,
            skipped: identities
                .skipped
                .iter()
                .map(|s| format!("{} [{:?}]: {}", s.datum, s.identity, s.reason))
                .collect(),
        });
        report.check(
            "schubert_identity_mismatch_count_zero",
            identities.mismatches.is_empty(),
            (!identities.mismatches.is_empty()).then(|| {
                identities
                    .mismatches
                    .iter()
                    .map(|m| format!("{}: lhs {} vs rhs {}", m.datum, m.lhs, m.rhs))
                    .collect::<Vec<_>>()
                    .join("; ")
            }),
        );
    }

    if scope.hypersurface {
        let vectors = blowup5::degree_vectors(max_d);
        let mut c4_mismatches = Vec::new();
        let mut engine_mismatches = Vec::new();
        for datum in &vectors {
            if blowup5::c4_tangent_resolution(datum).is_err() {
                c4_mismatches.push(datum.to_string());
            }
            if blowup5::ih_hypersurface(datum).is_err() {
                engine_mismatches.push(datum.to_string());
            }
        }
        report.sweeps.push(SweepRepr {
            name: "hypersurface_cross_checks".into(),
            size: vectors.len() as u64,
            mismatches: (c4_mismatches.len() + engine_mismatches.len()) as u64,
            skipped: Vec::new(),
        });
        report.check(
            "hypersurface_c4_mismatch_count_zero",
            c4_mismatches.is_empty(),
            (!c4_mismatches.is_empty()).then(|| c4_mismatches.join(", ")),
        );
        report.check(
            "hypersurface_engine_mismatch_count_zero",
            engine_mismatches.is_empty(),
            (!engine_mismatches.is_empty()).then(|| engine_mismatches.join(", ")),
        );
    }

    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}
