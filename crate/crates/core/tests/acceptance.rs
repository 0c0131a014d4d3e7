//! Acceptance run: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use hypmut::commens::{crossing_pattern, rotation_orders, HoroballPattern, DEFAULT_TOL};
use hypmut::dehn::{i_value, min_l_for_radius, min_l_for_total_length, PUBLISHED_I_BOUND};
use hypmut::hypcore::{collar_radius, cone_area, geodesic_disk_area, h_threshold, max_length_for_chi};
use hypmut::numeric::integrate;
use hypmut::packing::{
    bound_checks, normalized_length_lower_bound, normalized_slope_length, solve_crossing_rectangle,
    solve_knot_rectangle, steiner_cross_check, Point,
};
use hypmut::pretzel::{
    certify, enumerate_mutants, mutate, q_threshold, CertificationMode, MutationGenerators, MutationKind, PretzelTuple,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Integrand = (&'static str, fn(f64) -> f64, f64, f64);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("{what} took {took:?}, limit {limit:?}"))
}

fn e(err: hypmut::Error) -> String {
    err.to_string()
}

fn threshold_constants() -> Outcome {
    let start = Instant::now();
    let radius = min_l_for_radius(h_threshold(2.0f64).map_err(e)?).map_err(e)?;
    let length = min_l_for_total_length(0.015f64).map_err(e)?;
    within(start, Duration::from_secs(1), "threshold solves")?;
    ensure((14.80..=14.90).contains(&radius), format!("radius threshold {radius}"))?;
    ensure((20.66..=20.81).contains(&length), format!("length threshold {length}"))?;
    Ok(format!("radius {radius:.6}, length {length:.6}"))
}

fn collar_cutoff() -> Outcome {
    let ell = max_length_for_chi(2.0f64).map_err(e)?;
    ensure((ell - 0.01516).abs() <= 5e-4, format!("cutoff {ell}"))?;
    let r = collar_radius(0.015f64).map_err(e)?;
    let h = 2.0 * (1.0 + 2f64.sqrt()).ln();
    ensure(r > h, format!("collar radius {r} not above {h}"))?;
    Ok(format!("cutoff {ell:.8}, collar_radius(0.015) = {r:.6} > {h:.6}"))
}

fn i_value_check() -> Outcome {
    let z = (2.0 * (1.0 + 2f64.sqrt()).ln()).tanh();
    let i = i_value(z).map_err(e)?;
    ensure(i <= PUBLISHED_I_BOUND, format!("I = {i}"))?;
    Ok(format!("I = {i:.6} <= {PUBLISHED_I_BOUND}"))
}

fn packing_exactness() -> Outcome {
    let start = Instant::now();
    // ell_w = 1 + D(P*) with D(P*)^2 + 4 D(P*) - 1 = 0 for n = 2.
    let quadratic = 1.0 + (-4.0 + (16.0f64 + 4.0).sqrt()) / 2.0;
    let newton = solve_crossing_rectangle::<f64>(2).map_err(e)?.ell_w;
    let mobius = steiner_cross_check::<f64>(2).map_err(e)?.ell_w;
    let exact = 5f64.sqrt() - 1.0;
    for (what, v) in [("quadratic", quadratic), ("newton", newton), ("steiner", mobius)] {
        ensure((v - exact).abs() <= 1e-9, format!("{what} route gives {v}"))?;
    }
    let mut worst: f64 = 0.0;
    for n in 2..=12 {
        let a = solve_crossing_rectangle::<f64>(n).map_err(e)?;
        let b = steiner_cross_check::<f64>(n).map_err(e)?;
        let gap = (a.ell_w - b.ell_w).abs();
        worst = worst.max(gap);
        ensure(gap <= 1e-9, format!("n = {n}: routes differ by {gap:e}"))?;
    }
    within(start, Duration::from_secs(5), "packing solves")?;
    Ok(format!("ell_w(2) = {newton:.12}, worst cross-check gap {worst:.1e}"))
}

fn bound_suites() -> Outcome {
    for n in 2..=20 {
        let rect = solve_knot_rectangle::<f64>(n).map_err(e)?;
        if let Some(b) = bound_checks(&rect).iter().find(|b| !b.pass) {
            return Err(format!("n = {n}: {} fails with value {}", b.label, b.value));
        }
    }
    let mut count = 0;
    for n in 2..=10 {
        let rect = solve_crossing_rectangle::<f64>(n).map_err(e)?;
        for q in [7, 9, 101, 1001] {
            let l = normalized_slope_length(&rect, q, true).map_err(e)?;
            let bound = normalized_length_lower_bound::<f64>(n, q);
            ensure(l >= bound, format!("n = {n}, q = {q}: {l} < {bound}"))?;
            count += 1;
        }
    }
    Ok(format!(
        "knot rectangle bounds for n = 2..20, {count} normalized length bounds"
    ))
}

fn combinatorics() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for (q, want) in [(vec![8, 9, 11, 13, 15], 12usize), (vec![8, 9, 11, 13, 15, 17, 19], 360)] {
        let t = PretzelTuple::new(q);
        let g = MutationGenerators::for_length(MutationKind::All, t.len());
        let forms = enumerate_mutants(&t, &g, false).map_err(e)?;
        ensure(
            forms.len() == want,
            format!("{t}: {} forms, expected {want}", forms.len()),
        )?;
        for (i, a) in forms.iter().enumerate() {
            for b in &forms[i + 1..] {
                ensure(!a.is_dihedral_equivalent(b), format!("{a} and {b} are dihedral images"))?;
            }
        }
        counts.push(forms.len());
    }
    within(start, Duration::from_secs(30), "enumeration")?;
    Ok(format!("counts {counts:?}, pairwise distinct"))
}

fn symmetry_core() -> Outcome {
    let mut patterns = 0;
    for n in 2..=20 {
        for rect in [
            solve_crossing_rectangle::<f64>(n).map_err(e)?,
            solve_knot_rectangle::<f64>(n).map_err(e)?,
        ] {
            if !(rect.ell_w > 1.0 && rect.ell_w < 2.0) {
                continue;
            }
            let p = crossing_pattern(n, &rect).map_err(e)?;
            let orders: Vec<u32> = rotation_orders(&p, DEFAULT_TOL).map_err(e)?.into_iter().collect();
            ensure(
                orders == [2],
                format!("n = {n}, ell_w = {}: orders {orders:?}", rect.ell_w),
            )?;
            patterns += 1;
        }
    }
    let square = HoroballPattern::single_mark([Point::new(1.0, 0.0), Point::new(0.0, 1.0)]).map_err(e)?;
    let hex = HoroballPattern::single_mark([Point::new(1.0, 0.0), Point::new(0.5, 3f64.sqrt() / 2.0)]).map_err(e)?;
    let sq: Vec<u32> = rotation_orders(&square, DEFAULT_TOL).map_err(e)?.into_iter().collect();
    let hx: Vec<u32> = rotation_orders(&hex, DEFAULT_TOL).map_err(e)?.into_iter().collect();
    ensure(sq == [2, 4], format!("square control {sq:?}"))?;
    ensure(hx == [2, 3, 6], format!("hexagonal control {hx:?}"))?;
    Ok(format!(
        "{patterns} solved patterns give {{2}}, controls {sq:?} and {hx:?}"
    ))
}

fn property_suites() -> Outcome {
    // Golden-ratio sequence: deterministic, equidistributed in (0, 10).
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut worst: f64 = 0.0;
    for i in 1..=1000 {
        let r = 10.0 * ((i as f64 * phi).fract()).max(1e-9);
        worst = worst.max(((r.cosh() - 1.0) / r.sinh() - (r / 2.0).tanh()).abs());
    }
    ensure(worst < 1e-12, format!("half-angle identity gap {worst:e}"))?;

    for r in [0.1f64, 1.0, 3.0] {
        let cone = cone_area(std::f64::consts::TAU * r.sinh(), r).map_err(e)?;
        let disk = geodesic_disk_area(r).map_err(e)?;
        ensure(
            (cone - disk).abs() <= 1e-12 * disk.max(1.0),
            format!("r = {r}: cone {cone}, disk {disk}"),
        )?;
    }

    let t = PretzelTuple::new(vec![76, 77, 79, 81, 83]);
    let base = certify(&t, CertificationMode::Cusped).map_err(e)?;
    for a in 1..5 {
        let m = certify(&mutate(&t, a).map_err(e)?, CertificationMode::Cusped).map_err(e)?;
        ensure(
            m.thresholds_met == base.thresholds_met
                && m.mutant_count_enumerated == base.mutant_count_enumerated
                && m.mutant_count_formula == base.mutant_count_formula
                && m.volume_bounds == base.volume_bounds
                && m.preserved_lengths == base.preserved_lengths,
            format!("certify changes under mutation {a}"),
        )?;
    }

    let funcs: [Integrand; 3] = [
        ("exp", f64::exp, 0.0, 2.0),
        ("1/(1+x^2)", |x| 1.0 / (1.0 + x * x), -3.0, 5.0),
        ("sin^2 cosh", |x| x.sin().powi(2) * x.cosh(), 0.0, 4.0),
    ];
    for (name, f, a, b) in funcs {
        let whole = integrate(f, a, b, 1e-13).map_err(e)?;
        let m = 0.5 * (a + b);
        let halves = integrate(f, a, m, 1e-13).map_err(e)? + integrate(f, m, b, 1e-13).map_err(e)?;
        ensure(
            (whole - halves).abs() < 1e-10,
            format!("{name}: halving gap {:e}", whole - halves),
        )?;
    }
    Ok(format!(
        "identity gap {worst:.1e} over 1000 samples, cone/disk, mutation invariance, quadrature halving"
    ))
}

fn q_threshold_check() -> Outcome {
    let q = q_threshold(2).map_err(e)?;
    ensure((q - 75.80).abs() <= 0.01, format!("Q(2) = {q}"))?;
    let r = certify(&PretzelTuple::new(vec![76, 77, 79, 81, 83]), CertificationMode::Cusped).map_err(e)?;
    ensure(r.thresholds_met, "thresholds not met for (76, 77, 79, 81, 83)")?;
    ensure(
        r.preserved_lengths == Some(5),
        format!("preserved lengths {:?}", r.preserved_lengths),
    )?;
    Ok(format!("Q(2) = {q:.6}, preserved lengths 5"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("threshold constants", threshold_constants),
        ("collar cutoff", collar_cutoff),
        ("I-value check", i_value_check),
        ("packing exactness", packing_exactness),
        ("bound suites", bound_suites),
        ("combinatorics", combinatorics),
        ("symmetry core", symmetry_core),
        ("property suites", property_suites),
        ("Q(n) threshold", q_threshold_check),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
