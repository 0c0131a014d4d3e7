//! Threshold checks and certification reports for the pretzel family.

use serde::Serialize;

use super::orbit::{enumerate_mutants, mutant_count_formula, MutationGenerators, MutationKind};
use super::tuple::{validate, PretzelTuple, Violation};
use crate::commens::{commensurability_checklist, ChecklistReport, Incommensurability};
use crate::dehn::{filling_verdict, min_l_for_total_length, FillingMode, SlopeSpec, PUBLISHED_LENGTH_THRESHOLD};
use crate::error::{domain, Error, Result};
use crate::hypcore::PUBLISHED_LENGTH_CUTOFF;
use crate::packing::{normalized_length_lower_bound, normalized_slope_length, solve_crossing_rectangle};

/// Volume of the regular ideal octahedron.
pub const V_OCT: f64 = 3.663_862_376_708_87;

/// `|chi|` of the Conway spheres, four-punctured spheres.
const SPHERE_CHI: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificationMode {
    /// The knot complements themselves.
    Cusped,
    /// Closed manifolds from a further filling of the knot cusp, mutated
    /// only along the spheres away from the first twist region.
    Closed,
}

/// `sqrt(c^2 (2n+1)(4n)/(2n-1) - 1)` for a per-cusp constant `c`.
pub fn q_threshold_with(n: usize, c: f64) -> Result<f64> {
    if n < 2 {
        return domain("n", n as f64, "n >= 2");
    }
    let n = n as f64;
    Ok((c * c * (2.0 * n + 1.0) * (4.0 * n) / (2.0 * n - 1.0) - 1.0).sqrt())
}

/// Smallest twist count `Q(n)` guaranteeing every normalized length clears
/// the length-mode threshold, using the published constant 20.76.
pub fn q_threshold(n: usize) -> Result<f64> {
    q_threshold_with(n, PUBLISHED_LENGTH_THRESHOLD)
}

/// `[(2n-1)/2 v_oct, (4n+2) v_oct]`.
pub fn volume_bounds(n: usize) -> Result<[f64; 2]> {
    if n < 2 {
        return domain("n", n as f64, "n >= 2");
    }
    let n = n as f64;
    Ok([(2.0 * n - 1.0) / 2.0 * V_OCT, (4.0 * n + 2.0) * V_OCT])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub n: usize,
    pub mode: CertificationMode,
    pub tuple: PretzelTuple,
    pub violations: Vec<Violation>,
    /// `Q(n)` with the published constant.
    pub q_threshold: f64,
    /// `Q(n)` with the recomputed length-mode constant.
    pub q_threshold_derived: f64,
    pub thresholds_met: bool,
    /// Entries below `Q(n)` or with normalized length below the per-slope
    /// threshold.
    pub failing_entries: Vec<i64>,
    pub ell_w: f64,
    pub normalized_lengths: Vec<f64>,
    pub normalized_length_lower_bounds: Vec<f64>,
    pub per_slope_threshold: f64,
    pub preserved_lengths: Option<usize>,
    pub mutant_count_enumerated: Option<u128>,
    pub mutant_count_formula: u128,
    pub mutant_count_agrees: Option<bool>,
    pub volume_bounds: [f64; 2],
    pub incommensurability: Incommensurability,
    pub checklist: ChecklistReport,
    pub notes: Vec<String>,
}

/// Certifies which conclusions hold for the pretzel knot with tuple `t`.
/// Failed hypotheses are reported, not raised.
///
/// # Errors
/// [`Error::Usage`] unless the tuple has odd length at least 5; numerical
/// failures from the packing solve.
pub fn certify(t: &PretzelTuple, mode: CertificationMode) -> Result<CertificationReport> {
    let m = t.len();
    if m < 5 || m.is_multiple_of(2) {
        return Err(Error::Usage(format!(
            "certification needs an odd number of at least 5 entries, got {m}"
        )));
    }
    let n = (m - 1) / 2;
    let violations = validate(t);
    let mut notes = Vec::new();
    let q_thr = q_threshold(n)?;
    let derived_c = min_l_for_total_length(PUBLISHED_LENGTH_CUTOFF)?;
    let q_thr_derived = q_threshold_with(n, derived_c)?;

    let rect = solve_crossing_rectangle::<f64>(n)?;
    let mut normalized_lengths = Vec::with_capacity(m);
    let mut lower_bounds = Vec::with_capacity(m);
    let mut slopes = Vec::with_capacity(m);
    for &q in t.entries() {
        let q_abs = q.abs().max(1);
        let l = normalized_slope_length(&rect, q_abs, q_abs % 2 == 1)?;
        normalized_lengths.push(l);
        lower_bounds.push(normalized_length_lower_bound::<f64>(n, q_abs));
        slopes.push(SlopeSpec::new(1, q_abs, l)?);
    }
    let verdict = filling_verdict(&slopes, SPHERE_CHI, FillingMode::Length)?;
    let per_slope = verdict.threshold_used;
    let failing_entries: Vec<i64> = t
        .entries()
        .iter()
        .zip(&normalized_lengths)
        .filter(|&(&q, &l)| (q as f64) < q_thr || l < per_slope)
        .map(|(&q, _)| q)
        .collect();
    let thresholds_met = violations.is_empty() && failing_entries.is_empty() && verdict.certified;

    let (kind, preserved) = match mode {
        CertificationMode::Cusped => (MutationKind::All, 2 * n + 1),
        CertificationMode::Closed => (MutationKind::UnlinkedOnly, 2 * n + 2),
    };
    let formula = mutant_count_formula(n, kind);
    let enumerated = if violations.is_empty() {
        match enumerate_mutants(t, &MutationGenerators::for_length(kind, m), false) {
            Ok(forms) => Some(forms.len() as u128),
            Err(Error::SizeGuard { states, .. }) => {
                notes.push(format!(
                    "mutant enumeration skipped: {states} arrangements exceed the size guard"
                ));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        notes.push("tuple violates the family constraints; mutants not enumerated".into());
        None
    };
    let agrees = enumerated.map(|c| c == formula);
    if agrees == Some(false) {
        notes.push(format!(
            "enumerated {} dihedral classes but the count formula gives {formula}; both are reported",
            enumerated.unwrap_or_default()
        ));
    }
    if mode == CertificationMode::Closed {
        notes.push(
            "closed fillings require the knot-cusp slope to be sufficiently large, with no explicit bound".into(),
        );
    }
    if !failing_entries.is_empty() {
        notes.push(format!(
            "entries below Q({n}) = {q_thr:.4} or the per-slope threshold {per_slope:.4}: {failing_entries:?}"
        ));
    }

    let checklist = commensurability_checklist(t)?;
    if checklist.conclusion == Incommensurability::CertifiedConditional {
        notes.push(
            "incommensurability holds once every twist count is sufficiently large; no explicit constant is known"
                .into(),
        );
    }

    Ok(CertificationReport {
        n,
        mode,
        tuple: t.clone(),
        violations,
        q_threshold: q_thr,
        q_threshold_derived: q_thr_derived,
        thresholds_met,
        failing_entries,
        ell_w: rect.ell_w,
        normalized_lengths,
        normalized_length_lower_bounds: lower_bounds,
        per_slope_threshold: per_slope,
        preserved_lengths: thresholds_met.then_some(preserved),
        mutant_count_enumerated: enumerated,
        mutant_count_formula: formula,
        mutant_count_agrees: agrees,
        volume_bounds: volume_bounds(n)?,
        incommensurability: checklist.conclusion,
        checklist,
        notes,
    })
}
