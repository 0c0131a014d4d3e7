//! Command implementations behind the `hypmut` binary. Each command returns
//! a [`ReportDocument`] for stdout, a human-readable summary for stderr and
//! an exit code.

pub mod report;
pub mod svg;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use hypmut::dehn::{
    filling_threshold, min_l_for_radius, min_l_for_total_length, FillingMode, PUBLISHED_I_BOUND,
    PUBLISHED_LENGTH_THRESHOLD, PUBLISHED_RADIUS_THRESHOLD,
};
use hypmut::hypcore::{certification_length_cutoff, g_threshold, h_threshold, max_length_for_chi};
use hypmut::packing::{bound_checks, knot_cusp_tiling, solve_crossing_rectangle, solve_knot_rectangle, RectKind};
use hypmut::pretzel::{
    certify, enumerate_mutants, mutant_count_formula, orbit_state_count, CertificationMode, MutationGenerators,
    MutationKind, PretzelTuple,
};
use serde_json::Value;
use thiserror::Error;

pub use report::ReportDocument;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_CERTIFIED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_SIZE_GUARD: u8 = 4;

/// Largest orbit whose members are listed in full.
pub const LIST_LIMIT: usize = 200;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hypmut::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use hypmut::Error as E;
        match self {
            Self::Usage(_) | Self::Io { .. } => EXIT_USAGE,
            Self::Core(e) => match e {
                E::Usage(_) | E::Domain { .. } | E::IndexOutOfRange { .. } | E::InvalidTuple(_) => EXIT_USAGE,
                E::SizeGuard { .. } => EXIT_SIZE_GUARD,
                E::CollarParameter { .. } | E::Validity { .. } | E::Numerical { .. } | E::Consistency { .. } => {
                    EXIT_NUMERICAL
                }
            },
        }
    }

    /// Extra diagnostic lines, such as a solver's residual history.
    pub fn details(&self) -> Vec<String> {
        match self {
            Self::Core(hypmut::Error::Numerical { trace, .. }) if !trace.is_empty() => trace
                .iter()
                .enumerate()
                .map(|(i, r)| format!("iteration {i:>3}: residual {r:.6e}"))
                .collect(),
            _ => Vec::new(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A finished command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub document: ReportDocument,
    pub summary: String,
    pub exit_code: u8,
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_tuple(q: &str) -> CliResult<PretzelTuple> {
    q.parse::<PretzelTuple>().map_err(|e| CliError::Usage(e.to_string()))
}

// ---------------------------------------------------------------------------
// thresholds
// ---------------------------------------------------------------------------

pub fn cmd_thresholds(chi: f64) -> CliResult<Outcome> {
    if !(chi.is_finite() && chi > 0.0) {
        return Err(CliError::Usage(format!("--chi must be a positive number, got {chi}")));
    }
    let mut doc = ReportDocument::new("thresholds");
    doc.input("chi", chi);
    let h = h_threshold(chi)?;
    let cutoff = certification_length_cutoff(chi)?;
    doc.result("h", h)
        .result("g", g_threshold(chi)?)
        .result("max_length_for_chi", max_length_for_chi(chi)?)
        .result("length_cutoff", cutoff)
        .result("published_radius_threshold", PUBLISHED_RADIUS_THRESHOLD)
        .result("published_length_threshold", PUBLISHED_LENGTH_THRESHOLD)
        .result("published_i_bound", PUBLISHED_I_BOUND);

    // Small |chi| can push a threshold below the validity gate; report it
    // as missing rather than failing the whole query.
    let optional = |doc: &mut ReportDocument, key: &str, v: hypmut::Result<f64>| match v {
        Ok(x) => {
            doc.result(key, x);
        }
        Err(e) => {
            doc.result(key, Value::Null).warn(format!("{key}: {e}"));
        }
    };
    optional(&mut doc, "min_l_for_radius", min_l_for_radius(h));
    optional(&mut doc, "min_l_for_total_length", min_l_for_total_length(cutoff));
    optional(
        &mut doc,
        "radius_threshold",
        filling_threshold(chi, FillingMode::Radius),
    );
    optional(
        &mut doc,
        "length_threshold",
        filling_threshold(chi, FillingMode::Length),
    );

    let mut summary = String::new();
    for key in [
        "h",
        "g",
        "max_length_for_chi",
        "length_cutoff",
        "min_l_for_radius",
        "min_l_for_total_length",
    ] {
        let _ = writeln!(summary, "{key:<24} {}", fmt_value(&doc.results[key]));
    }
    Ok(Outcome {
        document: doc,
        summary,
        exit_code: EXIT_OK,
    })
}

fn fmt_value(v: &Value) -> String {
    match v {
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), |x| format!("{x:.10}")),
        Value::Null => "n/a".into(),
        other => other.to_string(),
    }
}

// ---------------------------------------------------------------------------
// pack
// ---------------------------------------------------------------------------

pub fn cmd_pack(kind: RectKind, n: usize, svg_path: Option<&Path>) -> CliResult<Outcome> {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    let rect = match kind {
        RectKind::CrossingCircle => solve_crossing_rectangle::<f64>(n)?,
        RectKind::KnotCusp => solve_knot_rectangle::<f64>(n)?,
    };
    let label = match kind {
        RectKind::CrossingCircle => "crossing",
        RectKind::KnotCusp => "knot",
    };
    let checks = bound_checks(&rect);
    let mut doc = ReportDocument::new("pack");
    doc.input("kind", label).input("n", n);
    doc.result("ell_w", rect.ell_w)
        .result("ell_s", rect.ell_s)
        .result("residual", rect.residual)
        .result("d_star", rect.d_star())
        .result("diameters", &rect.circle_diameters)
        .result("bound_checks", &checks)
        .result("circles", &rect.circles);
    if kind == RectKind::KnotCusp {
        let tiling = knot_cusp_tiling(n, &rect)?;
        let (a, b) = tiling.side_lengths();
        doc.result("tiling", &tiling).result("tiling_sides", [a, b]);
    }
    if let Some(path) = svg_path {
        write_file(path, &svg::render(&rect))?;
        doc.input("svg", path.display().to_string());
    }

    let mut summary = format!(
        "{label} rectangle, n = {n}: ell_w = {:.12}, residual {:.2e}\n",
        rect.ell_w, rect.residual
    );
    for c in &checks {
        let _ = writeln!(
            summary,
            "{}  {:<28} value {:.10}  margin {:+.3e}",
            if c.pass { "PASS" } else { "FAIL" },
            numeric_label(&c.label, n),
            c.value,
            c.margin
        );
    }
    if checks.iter().any(|c| !c.pass) {
        doc.warn("some bound checks failed");
    }
    Ok(Outcome {
        document: doc,
        summary,
        exit_code: EXIT_OK,
    })
}

/// Replaces the `(n-2)/(n-1)` style bounds by their value for this `n`.
fn numeric_label(label: &str, n: usize) -> String {
    let (a, b) = (n.saturating_sub(2), n - 1);
    let ratio = if a == 0 { "0".to_string() } else { format!("{a}/{b}") };
    label
        .replace("(n-2)/(n-1)", &ratio)
        .replace("1/(n-1)", &format!("1/{b}"))
        .replace("2n/(2n-1)", &format!("{}/{}", 2 * n, 2 * n - 1))
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

pub fn cmd_certify(q: &str, mode: CertificationMode) -> CliResult<Outcome> {
    let t = parse_tuple(q)?;
    let report = certify(&t, mode)?;
    let mut doc = ReportDocument::new("certify");
    doc.input("q", t.entries()).input("mode", mode);
    if let Value::Object(fields) = serde_json::to_value(&report).expect("report serializes") {
        for (k, v) in fields {
            doc.result(&k, v);
        }
    }
    for v in &report.violations {
        doc.warn(format!("family constraint: {v}"));
    }
    if report.mutant_count_agrees == Some(false) {
        doc.warn("enumerated mutant count differs from the count formula");
    }

    let mut summary = format!(
        "{t}: Q({}) = {:.4}, thresholds {}\n",
        report.n,
        report.q_threshold,
        if report.thresholds_met { "met" } else { "not met" }
    );
    if !report.failing_entries.is_empty() {
        let _ = writeln!(summary, "failing entries: {:?}", report.failing_entries);
    }
    if let Some(p) = report.preserved_lengths {
        let _ = writeln!(summary, "preserved shortest lengths: {p}");
    }
    let _ = writeln!(
        summary,
        "mutants: enumerated {}, formula {}",
        report.mutant_count_enumerated.map_or("n/a".into(), |c| c.to_string()),
        report.mutant_count_formula
    );
    let _ = writeln!(
        summary,
        "volume in [{:.4}, {:.4}], incommensurability {:?}",
        report.volume_bounds[0], report.volume_bounds[1], report.incommensurability
    );
    Ok(Outcome {
        document: doc,
        summary,
        exit_code: if report.thresholds_met {
            EXIT_OK
        } else {
            EXIT_NOT_CERTIFIED
        },
    })
}

// ---------------------------------------------------------------------------
// mutants
// ---------------------------------------------------------------------------

pub fn cmd_mutants(q: &str, kind: MutationKind, force: bool) -> CliResult<Outcome> {
    let t = parse_tuple(q)?;
    let g = MutationGenerators::for_length(kind, t.len());
    let forms = enumerate_mutants(&t, &g, force)?;
    let n = (t.len() - 1) / 2;
    let formula = mutant_count_formula(n, kind);
    let count = forms.len() as u128;
    let mut doc = ReportDocument::new("mutants");
    doc.input("q", t.entries())
        .input("generators", kind)
        .input("force", force)
        .result("generator_indices", &g.indices)
        .result("arrangements_visited", orbit_state_count(&g))
        .result("count", count)
        .result("formula", formula)
        .result("discrepancy", count != formula);
    if forms.len() <= LIST_LIMIT {
        doc.result("forms", forms.iter().map(|f| f.entries().to_vec()).collect::<Vec<_>>());
    } else {
        doc.result("forms", Value::Null).warn(format!(
            "{} forms exceed the listing limit of {LIST_LIMIT}",
            forms.len()
        ));
    }
    if count != formula {
        doc.warn(format!("enumerated {count} classes, formula gives {formula}"));
    }

    let mut summary = format!("{t}: {count} canonical forms (formula {formula})\n");
    if forms.len() <= LIST_LIMIT {
        for f in &forms {
            let _ = writeln!(summary, "  {f}");
        }
    }
    Ok(Outcome {
        document: doc,
        summary,
        exit_code: EXIT_OK,
    })
}
