use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use simplex_fekete::certify::{certify_deg4_partial_sum, certify_fejer_with_precision, FejerCertificate, Status};
use simplex_fekete::interp::{g_optimality_check, lagrange_closed_form, lagrange_solve, vdm_det_interval, vdm_det_sparse};
use simplex_fekete::pointsets::{
    deg5_w_plus, edge_midpoints, fekete_candidate_deg5, fekete_candidate_exact, to_csv, to_json_value, vertices, Deg5Params, PointSet,
};
use simplex_fekete::scalar::{AlgebraicScalar, Interval, RealScalar, Sign};
use simplex_fekete::search::{
    brute_force_fekete_deg1, fejer_exponent, interior_triangle_diagnostic, kernel_max, optimize_deg5_2face, optimize_deg5_3face,
    rederive_q_by_resultant, vdm_decoupling_check_deg5, ExponentConfig, MaxConfig,
};
use simplex_fekete::Error;

use crate::{Command, DegDim, Global, PointsKind, SearchOpts, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_REFUTED, EXIT_USAGE};

pub struct Outcome {
    pub json: Value,
    pub csv: Option<String>,
    pub text: String,
    pub exit: u8,
}

pub struct CliError {
    pub message: String,
    pub code: u8,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { message: msg.into(), code: EXIT_USAGE }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedDegree(_) | Error::InvalidDimension(_) | Error::Parse(_) => EXIT_USAGE,
            _ => EXIT_INCONCLUSIVE,
        };
        CliError { message: e.to_string(), code }
    }
}

type CmdResult = Result<Outcome, CliError>;

/// A point set in whichever scalar type its coordinates need.
enum Set {
    Exact(PointSet<AlgebraicScalar>),
    Numeric(PointSet<Interval>),
}

macro_rules! with_set {
    ($set:expr, $p:ident => $body:expr) => {
        match $set {
            Set::Exact($p) => $body,
            Set::Numeric($p) => $body,
        }
    };
}

fn candidate(n: u32, d: usize, prec: u32, w_plus: bool) -> Result<Set, CliError> {
    if n <= 4 {
        return Ok(Set::Exact(fekete_candidate_exact(n, d)?));
    }
    let mut params = Deg5Params::canonical(prec);
    if w_plus {
        params = params.with_w(deg5_w_plus());
    }
    Ok(Set::Numeric(fekete_candidate_deg5(d, &params, prec)?))
}

fn envelope(command: &str, config: Value, prec: u32, result: impl Serialize) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "precision_bits": prec,
        "result": result,
    })
}

fn dd_config(dd: &DegDim) -> Value {
    json!({ "n": dd.n, "d": dd.d })
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

/// Rounds an f64 to 17 significant digits for CSV and text output.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn run(cmd: &Command, g: &Global) -> CmdResult {
    match cmd {
        Command::Points { dd, digits } => points(dd, *digits, g),
        Command::Lagrange { dd } => lagrange(dd, g),
        Command::Vdm { dd, points, brute_grid } => vdm(dd, *points, *brute_grid, g),
        Command::Certify { dd, r_max, full_kernel, numeric } => certify(dd, *r_max, *full_kernel, *numeric, g),
        Command::Exponent { dd, search, tol } => exponent(dd, search, *tol, g),
        Command::Maxk { dd, search } => maxk(dd, search, g),
        Command::DesignCheck { dd, seed, samples } => design_check(dd, *seed, *samples, g),
        Command::SearchDeg5 => search_deg5(g),
    }
}

fn points(dd: &DegDim, digits: usize, g: &Global) -> CmdResult {
    let set = candidate(dd.n, dd.d as usize, g.prec_bits, false)?;
    let (report, csv) = with_set!(&set, p => (to_json_value(p, digits, g.prec_bits), to_csv(p, digits, g.prec_bits)?));
    let mut text = String::new();
    if let Some(pts) = report["points"].as_array() {
        writeln!(text, "F_{} on S_{}: {} points", dd.n, dd.d, pts.len()).ok();
        for p in pts {
            let coords: Vec<&str> = p["decimal"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
            writeln!(text, "{:>4}  ({})", p["index"], coords.join(", ")).ok();
        }
    }
    let config = json!({ "n": dd.n, "d": dd.d, "digits": digits });
    Ok(Outcome { json: envelope("points", config, g.prec_bits, report), csv: Some(csv), text, exit: EXIT_OK })
}

fn lagrange(dd: &DegDim, g: &Global) -> CmdResult {
    let d = dd.d as usize;
    let set = candidate(dd.n, d, g.prec_bits, false)?;
    let export = with_set!(&set, p => lagrange_solve(p, dd.n)?.export());
    let discrepancies = if dd.n <= 4 { Some(lagrange_closed_form(dd.n, d)?.discrepancies) } else { None };
    let rows = export.polys.iter().enumerate().flat_map(|(i, terms)| {
        terms.iter().map(move |(e, c)| vec![i.to_string(), e.iter().map(u32::to_string).collect::<Vec<_>>().join(" "), c.clone()])
    });
    let csv = csv_string(&["index", "exponents", "coefficient"], rows);
    let mut text = format!("Lagrange basis of F_{} on S_{}: {} polynomials\n", dd.n, dd.d, export.polys.len());
    if let Some(ds) = &discrepancies {
        writeln!(text, "printed closed forms differing from the solved basis: {}", ds.len()).ok();
    }
    let result = json!({ "basis": export, "closed_form_discrepancies": discrepancies });
    Ok(Outcome { json: envelope("lagrange", dd_config(dd), g.prec_bits, result), csv: Some(csv), text, exit: EXIT_OK })
}

fn abs_alg(x: AlgebraicScalar) -> AlgebraicScalar {
    if x.sign() == Sign::Negative {
        -x
    } else {
        x
    }
}

fn vdm(dd: &DegDim, kind: PointsKind, brute_grid: Option<u32>, g: &Global) -> CmdResult {
    let d = dd.d as usize;
    if kind != PointsKind::Fekete && dd.n != 1 {
        return Err(usage("--points vertices|midpoints needs -n 1"));
    }
    if brute_grid.is_some() && (dd.n != 1 || d != 2) {
        return Err(usage("--brute-grid needs -n 1 -d 2"));
    }
    let set = match kind {
        PointsKind::Fekete => candidate(dd.n, d, g.prec_bits, false)?,
        PointsKind::Vertices => Set::Exact(vertices(d)),
        PointsKind::Midpoints => {
            if d < 2 {
                return Err(usage("midpoints need d >= 2 to give d+1 points"));
            }
            let m = edge_midpoints(d);
            if m.len() != d + 1 {
                return Err(usage(format!("S_{d} has {} edge midpoints, not the {} points needed for degree one", m.len(), d + 1)));
            }
            Set::Exact(m)
        }
    };
    let mut result = serde_json::Map::new();
    result.insert("points".into(), json!(format!("{kind:?}").to_lowercase()));
    result.insert("count".into(), json!(with_set!(&set, p => p.len())));
    let text;
    match &set {
        Set::Exact(p) => {
            let det = vdm_det_sparse(p, dd.n)?;
            let vert = vdm_det_sparse(&vertices(d), 1).ok().filter(|_| dd.n == 1);
            result.insert("determinant".into(), json!(det.canonical_string()));
            result.insert("decimal".into(), json!(det.to_interval(g.prec_bits).render_mid(17)));
            if let Some(v) = vert {
                let ratio = abs_alg(det.clone()) * abs_alg(v).checked_inv()?;
                result.insert("ratio_to_vertices".into(), json!(ratio.canonical_string()));
            }
            text = match result.get("ratio_to_vertices") {
                Some(r) => format!("vdm = {}, |vdm| / |vdm(vertices)| = {}\n", det.canonical_string(), r.as_str().unwrap_or("")),
                None => format!("vdm = {}\n", det.canonical_string()),
            };
        }
        Set::Numeric(p) => {
            let det = vdm_det_interval(p, dd.n)?;
            result.insert("determinant".into(), json!(det.render_decimal()));
            result.insert("decimal".into(), json!(det.render_mid(17)));
            text = format!("vdm in {}\n", det.render_decimal());
        }
    }
    if let Some(grid) = brute_grid {
        if grid < 2 {
            return Err(usage("--brute-grid needs at least 2 points per edge"));
        }
        result.insert("brute_force".into(), serde_json::to_value(brute_force_fekete_deg1(grid)).expect("serializes"));
    }
    let config = json!({ "n": dd.n, "d": dd.d, "points": format!("{kind:?}").to_lowercase(), "brute_grid": brute_grid });
    Ok(Outcome { json: envelope("vdm", config, g.prec_bits, Value::Object(result)), csv: None, text, exit: EXIT_OK })
}

fn severity(c: &FejerCertificate) -> u8 {
    match c.status {
        Status::Certified => EXIT_OK,
        Status::Refuted { .. } => EXIT_REFUTED,
        Status::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

/// Refuted dominates inconclusive, which dominates certified.
fn combined_exit(certs: &[&FejerCertificate]) -> u8 {
    if certs.iter().any(|c| c.is_refuted()) {
        EXIT_REFUTED
    } else {
        certs.iter().map(|c| severity(c)).max().unwrap_or(EXIT_OK)
    }
}

fn status_word(code: u8) -> &'static str {
    match code {
        EXIT_OK => "certified",
        EXIT_REFUTED => "refuted",
        _ => "inconclusive",
    }
}

fn r_text(r: Option<u32>) -> String {
    r.map_or_else(|| "-".into(), |r| r.to_string())
}

fn certify(dd: &DegDim, r_max: u32, full_kernel: bool, numeric: bool, g: &Global) -> CmdResult {
    let d = dd.d as usize;
    if dd.n == 5 && !numeric {
        return Err(usage("degree 5 coordinates are not exact; pass --numeric"));
    }
    let config = json!({ "n": dd.n, "d": dd.d, "r_max": r_max, "full_kernel": full_kernel, "numeric": numeric });
    if dd.n == 4 && !full_kernel && d >= 3 {
        let (partial, product) = certify_deg4_partial_sum(d, r_max)?;
        let exit = combined_exit(&[&partial, &product]);
        let text = format!(
            "F_4 on S_{d}, partial sum without 3-face centroids: {} (r = {}); product bound: {} (r = {})\n",
            status_word(severity(&partial)),
            r_text(partial.r),
            status_word(severity(&product)),
            r_text(product.r)
        );
        let result = json!({
            "mode": "partial-sum",
            "status": status_word(exit),
            "r": partial.r,
            "certificates": [partial, product],
        });
        return Ok(Outcome { json: envelope("certify", config, g.prec_bits, result), csv: None, text, exit });
    }
    let chain = certify_fejer_with_precision(dd.n, d, r_max, g.prec_bits)?;
    let last = chain.last().expect("at least one dimension");
    let exit = severity(last);
    let mut text = String::new();
    for c in &chain {
        let method = serde_json::to_value(c.method).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        writeln!(text, "d = {}: {} via {method}, r = {}", c.dim, status_word(severity(c)), r_text(c.r)).ok();
    }
    if let Status::Refuted { point, value } = &last.status {
        writeln!(text, "witness ({}) with sum l^2 = {}", point.join(", "), value).ok();
    }
    let result = json!({
        "mode": if dd.n == 4 { "full-kernel" } else { "kernel" },
        "status": status_word(exit),
        "r": last.r,
        "certificates": chain,
    });
    Ok(Outcome { json: envelope("certify", config, g.prec_bits, result), csv: None, text, exit })
}

fn max_config(s: &SearchOpts) -> MaxConfig {
    MaxConfig { random_starts: s.starts, seed: s.seed, ..MaxConfig::default() }
}

fn search_config(dd: &DegDim, s: &SearchOpts) -> Value {
    json!({ "n": dd.n, "d": dd.d, "seed": s.seed, "starts": s.starts, "w_plus": s.w_plus })
}

fn exponent(dd: &DegDim, s: &SearchOpts, tol: f64, g: &Global) -> CmdResult {
    if !(tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let set = candidate(dd.n, dd.d as usize, g.prec_bits, s.w_plus)?;
    let cfg = ExponentConfig { tol, search: max_config(s), ..ExponentConfig::default() };
    let mut config = search_config(dd, s);
    config["tol"] = json!(tol);
    let res = with_set!(&set, p => fejer_exponent(p, dd.n, &cfg));
    match res {
        Ok(e) => {
            let csv = csv_string(&["r", "max", "full_search"], e.samples.iter().map(|x| vec![num(x.r), num(x.max), x.full_search.to_string()]));
            let text = match e.r {
                Some(r) => format!("Fejér exponent of F_{} on S_{}: r = {:.8} (bracket [{:.8}, {:.8}])\n", dd.n, dd.d, r, e.r_lo, r),
                None => format!("Fejér exponent of F_{} on S_{}: above {}\n", dd.n, dd.d, e.r_lo),
            };
            Ok(Outcome { json: envelope("exponent", config, g.prec_bits, e), csv: Some(csv), text, exit: EXIT_OK })
        }
        Err(Error::UndefinedExponent(sup)) => {
            let result = json!({ "degree": dd.n, "dim": dd.d, "r": null, "undefined": true, "sup_norm": sup });
            let text = format!("Fejér exponent undefined: max |l_i| = {sup} > 1\n");
            Ok(Outcome { json: envelope("exponent", config, g.prec_bits, result), csv: None, text, exit: EXIT_REFUTED })
        }
        Err(e) => Err(e.into()),
    }
}

fn maxk(dd: &DegDim, s: &SearchOpts, g: &Global) -> CmdResult {
    let set = candidate(dd.n, dd.d as usize, g.prec_bits, s.w_plus)?;
    let rep = with_set!(&set, p => kernel_max(p, dd.n, &max_config(s), g.prec_bits)?);
    let csv = csv_string(
        &["value", "point"],
        rep.search.local_maxima.iter().map(|l| vec![num(l.value), l.point.iter().map(|x| num(*x)).collect::<Vec<_>>().join(" ")]),
    );
    let text = format!(
        "max sum l^2 on S_{} for F_{}: {:.10} at ({})\n",
        dd.d,
        dd.n,
        rep.search.value,
        rep.search.argmax.iter().map(|x| format!("{x:.8}")).collect::<Vec<_>>().join(", ")
    );
    Ok(Outcome { json: envelope("maxk", search_config(dd, s), g.prec_bits, rep), csv: Some(csv), text, exit: EXIT_OK })
}

fn design_check(dd: &DegDim, seed: u64, samples: usize, g: &Global) -> CmdResult {
    let set = candidate(dd.n, dd.d as usize, g.prec_bits, false)?;
    let rep = with_set!(&set, p => g_optimality_check(p, dd.n, samples, seed)?);
    let exit = if rep.passes() { EXIT_OK } else { EXIT_REFUTED };
    let text = format!(
        "F_{} on S_{}: N = {}, max d(x)/N over {} samples = {:.10}, {}\n",
        dd.n,
        dd.d,
        rep.count,
        rep.samples,
        rep.max_kernel,
        if rep.passes() { "G-optimal on the samples" } else { "not G-optimal" }
    );
    let config = json!({ "n": dd.n, "d": dd.d, "seed": seed, "samples": samples });
    Ok(Outcome { json: envelope("design-check", config, g.prec_bits, rep), csv: None, text, exit })
}

fn search_deg5(g: &Global) -> CmdResult {
    let start = Instant::now();
    let two = optimize_deg5_2face(g.prec_bits)?;
    let triangle = interior_triangle_diagnostic(&two.u_interval, &two.v_interval);
    let resultant = rederive_q_by_resultant();
    let three = optimize_deg5_3face();
    let dec2 = vdm_decoupling_check_deg5(2)?;
    let dec3 = vdm_decoupling_check_deg5(3)?;
    let ok = two.derivative_factorizations_hold
        && two.u_digits.matches()
        && two.v_digits.matches()
        && two.grid_agrees
        && resultant.q_divides
        && three.derivative_identity
        && three.roots_exact
        && three.minus_is_global
        && dec2.matches
        && dec3.matches;
    let text = format!(
        "u = {}\nv = {}\nw = {}\nq divides the resultant: {}\ninterior triangle defect 1-2v-u = {:.6e}\nall checks: {}\n",
        two.u,
        two.v,
        three.w,
        resultant.q_divides,
        triangle.defect,
        if ok { "pass" } else { "FAIL" }
    );
    let result = json!({
        "all_checks_pass": ok,
        "two_face": two,
        "interior_triangle": triangle,
        "resultant": resultant,
        "three_face": three,
        "decoupling": [dec2, dec3],
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
    });
    let exit = if ok { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Ok(Outcome { json: envelope("search-deg5", json!({}), g.prec_bits, result), csv: None, text, exit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exits_combine() {
        let c = simplex_fekete::certify::certify_fejer(1, 2, 4).unwrap();
        assert_eq!(combined_exit(&[&c[0], &c[1]]), EXIT_OK);
        assert_eq!(status_word(EXIT_INCONCLUSIVE), "inconclusive");
    }

    #[test]
    fn csv_helper_quotes() {
        let s = csv_string(&["a", "b"], vec![vec!["1".into(), "x,y".into()]]);
        assert_eq!(s, "a,b\n1,\"x,y\"\n");
    }
}
