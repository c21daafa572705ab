use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use homogeo::algebra::{
    classify, closed_form_report, independent_geodesic_family, is_geodesic_vector,
    max_orthogonal_geodesic_set, membership, AlgebraVector, ClassificationReport, ClassifyOptions,
    GeodesicClass, ParityCase,
};
use homogeo::combinatorics::{
    construction_for_order, format_matrix, is_hadamard, kronecker_construction, parse_matrix,
    reachable_orders, Budget, Construction, Maximality, SearchOptions, SquareSignMatrix,
};
use homogeo::riemann::{
    curve_csv_header, curve_csv_rows, energy_drift, geodesic_residual, integrate_geodesic,
    max_off_diagonal, orbit_curve, tangent_gram, uniform_grid, write_curve_csv, CurveSample,
    GroupPoint,
};
use homogeo::ModelParams;
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::*;
use crate::report::{Certificate, CertificateStatus, Outcome, Report};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad invocation that clap could not catch on its own.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] homogeo::Error),
    #[error("{0}")]
    Io(String),
}

type Result<T> = std::result::Result<T, CliError>;

/// Ray generators whose predicate check is echoed in full; larger `n` only
/// report the aggregate flag.
const MAX_LISTED_RAYS: usize = 1 << 10;

fn params(m: &ModelArgs) -> Result<ModelParams> {
    Ok(ModelParams::new(m.n, m.lambda)?)
}

fn config<T: serde::Serialize>(args: &T) -> Value {
    serde_json::to_value(args).expect("arguments serialise")
}

fn parse_vector(values: &[f64], p: &ModelParams) -> Result<AlgebraVector> {
    if values.len() != p.dim() {
        return Err(CliError::Usage(format!(
            "expected {} components x_0..x_{n} z_1..z_{n} for n = {n}, got {}",
            p.dim(),
            values.len(),
            n = p.n()
        )));
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Usage("vector components must be finite".into()));
    }
    Ok(AlgebraVector::from_components(values, p)?)
}

fn search_options(s: &SearchArgs) -> SearchOptions {
    SearchOptions {
        budget: Budget {
            max_nodes: s.budget_nodes,
            max_time: Some(Duration::from_secs_f64(s.budget_secs)),
        },
        jobs: s.jobs,
        ..SearchOptions::default()
    }
}

fn maximality_name(m: Maximality) -> &'static str {
    match m {
        Maximality::Certified => "certified",
        Maximality::LowerBoundOnly => "lower_bound_only",
    }
}

fn maximality_status(m: Maximality) -> CertificateStatus {
    match m {
        Maximality::Certified => CertificateStatus::Certified,
        Maximality::LowerBoundOnly => CertificateStatus::LowerBoundOnly,
    }
}

fn fmt_num(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

fn fmt_components(v: &AlgebraVector) -> String {
    let parts: Vec<String> = v.components().iter().map(|&x| fmt_num(x)).collect();
    format!("({})", parts.join(", "))
}

/// `X_0 + X_1 - X_2` style name of a type-B generator.
fn ray_name(signs: &[i8]) -> String {
    let mut s = String::from("X_0");
    for (i, &e) in signs.iter().enumerate() {
        let op = if e > 0 { '+' } else { '-' };
        let _ = write!(s, " {op} X_{}", i + 1);
    }
    s
}

fn class_json(c: &Option<GeodesicClass>) -> Value {
    match c {
        None => json!({ "class": "none" }),
        Some(c) => serde_json::to_value(c).expect("class serialises"),
    }
}

fn class_text(c: &Option<GeodesicClass>) -> String {
    match c {
        None => "none".into(),
        Some(GeodesicClass::Zero) => "zero vector".into(),
        Some(GeodesicClass::Subspace) => "subspace W".into(),
        Some(GeodesicClass::Ray(t)) => format!("ray through {}", ray_name(&t.signs())),
    }
}

fn csv_line<I: IntoIterator<Item = String>>(cells: I) -> String {
    let mut s = cells.into_iter().collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<Outcome> {
    let p = params(&args.model)?;
    let options = ClassifyOptions {
        tol: args.model.tol,
        samples: args.samples,
        seed: args.seed,
        ..ClassifyOptions::default()
    };
    let rep = classify(&p, &options)?;
    let n = p.n();

    let listed = rep.sign_rays.len() <= MAX_LISTED_RAYS;
    let rays: Vec<Value> = if listed {
        rep.sign_rays
            .iter()
            .map(|s| {
                let g = ClassificationReport::ray_generator(s);
                let ok = is_geodesic_vector(&g, &p, args.model.tol).unwrap_or(false);
                json!({ "signs": s, "generator": g.components(), "geodesic": ok })
            })
            .collect()
    } else {
        Vec::new()
    };
    let results = json!({
        "n": n,
        "dimension": p.dim(),
        "subspaces": 1,
        "w_dim": rep.w_dim(),
        "w_basis": rep.w_basis.iter().map(|v| v.components()).collect::<Vec<_>>(),
        "ray_count": rep.sign_rays.len(),
        "rays_listed": listed,
        "rays": rays,
        "generators_verified": rep.generators_verified,
        "sample": rep.sample,
    });

    let mut report = Report::new("classify", config(args), results);
    report.certify(Certificate::check(
        "generators",
        rep.generators_verified,
        format!("{} generators checked against the predicate", n + rep.sign_rays.len()),
    ));
    match &rep.sample {
        Some(s) => report.certify(Certificate::check(
            "sampling",
            s.passed(),
            format!(
                "seed {}: {}/{} outside vectors rejected, {}/{} class members accepted",
                s.seed, s.outside_rejected, s.samples, s.inside_accepted, s.samples
            ),
        )),
        None => report
            .warnings
            .push(format!("random probing skipped for n = {n} > {}", options.sample_bound)),
    }

    let mut text = String::new();
    let _ = writeln!(text, "n = {n}, group dimension {}", p.dim());
    let _ = writeln!(
        text,
        "subspace W = span(Z_1..Z_{n}), dim {}: every vector geodesic",
        rep.w_dim()
    );
    let _ = writeln!(text, "sign rays: {}", rep.sign_rays.len());
    if listed {
        for (s, r) in rep.sign_rays.iter().zip(&rays) {
            let mark = if r["geodesic"] == true { "geodesic" } else { "FAILED" };
            let _ = writeln!(text, "  {:<width$}  {mark}", ray_name(&s.signs()), width = 8 * n);
        }
    }
    if let Some(s) = &rep.sample {
        let _ = writeln!(
            text,
            "sampling (seed {}): {}/{} rejected outside, {}/{} accepted inside",
            s.seed, s.outside_rejected, s.samples, s.inside_accepted, s.samples
        );
    }
    let _ = writeln!(text, "verified: {}", report.verified);

    let mut csv = csv_line(
        std::iter::once("kind".to_string())
            .chain((0..=n).map(|i| format!("x_{i}")))
            .chain((1..=n).map(|k| format!("z_{k}")))
            .chain(std::iter::once("geodesic".to_string())),
    );
    for v in &rep.w_basis {
        csv += &csv_line(
            std::iter::once("w".to_string())
                .chain(v.components().iter().map(|&x| fmt_num(x)))
                .chain(std::iter::once("true".to_string())),
        );
    }
    for r in &rays {
        let comps = r["generator"].as_array().expect("generator");
        csv += &csv_line(
            std::iter::once("ray".to_string())
                .chain(comps.iter().map(|x| fmt_num(x.as_f64().unwrap_or(f64::NAN))))
                .chain(std::iter::once(r["geodesic"].to_string())),
        );
    }
    Ok(Outcome { report, text, csv })
}

pub fn cmd_check_vector(args: &CheckVectorArgs) -> Result<Outcome> {
    let p = params(&args.model)?;
    let v = parse_vector(&args.vector, &p)?;
    let tol = args.model.tol;
    let predicate = is_geodesic_vector(&v, &p, tol)?;
    let conditions = closed_form_report(&v, &p, tol)?;
    let closed_form = conditions.iter().all(|c| c.holds);
    let failing: Vec<&str> = conditions
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.label.as_str())
        .collect();
    let agree = predicate == closed_form;
    let class = membership(&v, tol);

    let results = json!({
        "vector": v.components(),
        "geodesic": predicate,
        "closed_form": closed_form,
        "agree": agree,
        "conditions": conditions,
        "failing": failing,
        "class": class_json(&class),
    });
    let mut report = Report::new("check-vector", config(args), results);
    report.certify(Certificate::check(
        "criterion_vs_closed_form",
        agree,
        format!("predicate {predicate}, closed form {closed_form}"),
    ));
    if v.is_zero() {
        report
            .warnings
            .push("zero vector: geodesic by convention, excluded from the classification".into());
    }

    let mut text = String::new();
    let _ = writeln!(text, "vector {}", fmt_components(&v));
    let _ = writeln!(text, "geodesic: {predicate}");
    let _ = writeln!(text, "conditions:");
    for c in &conditions {
        let mark = if c.holds { "ok" } else { "FAIL" };
        let _ = writeln!(text, "  {:<24} value {:<12} {mark}", c.label, fmt_num(c.value));
    }
    if !failing.is_empty() {
        let _ = writeln!(text, "failing: {}", failing.join("; "));
    }
    let _ = writeln!(text, "class: {}", class_text(&class));
    let _ = writeln!(text, "criterion and closed form agree: {agree}");

    let mut csv = csv_line(["condition", "value", "holds"].map(String::from));
    for c in &conditions {
        csv += &csv_line([c.label.clone(), fmt_num(c.value), c.holds.to_string()]);
    }
    Ok(Outcome { report, text, csv })
}

pub fn cmd_max_orthogonal(args: &MaxOrthogonalArgs) -> Result<Outcome> {
    let p = params(&args.model)?;
    let set = max_orthogonal_geodesic_set(&p, &search_options(&args.search))?;
    let vectors = set.vectors();
    let gram = tangent_gram(&vectors, &p)?;
    let off = max_off_diagonal(&gram);
    let all_geodesic = vectors
        .iter()
        .all(|v| is_geodesic_vector(v, &p, args.model.tol).unwrap_or(false));
    let maximality = set.maximality();
    let expected = set.case.expected_max(p.n());

    let gram_rows: Vec<Vec<f64>> = (0..gram.nrows())
        .map(|i| gram.row(i).iter().copied().collect())
        .collect();
    let results = json!({
        "n": p.n(),
        "k": p.tuple_len(),
        "case": set.case.label(),
        "total": set.total(),
        "expected_total": expected,
        "maximality": maximality_name(maximality),
        "proof": set.family.proof(),
        "w_vectors": set.w_vectors.iter().map(|v| v.components()).collect::<Vec<_>>(),
        "type_b": set.type_b.iter().map(|v| v.components()).collect::<Vec<_>>(),
        "family": set.family.members(),
        "gram": gram_rows,
        "max_off_diagonal": off,
        "search": { "vertices": set.search_vertices, "nodes": set.search_nodes },
    });

    let mut report = Report::new("max-orthogonal", config(args), results);
    report.certificates.push(Certificate {
        name: "maximality".into(),
        status: maximality_status(maximality),
        detail: match set.family.proof() {
            Some(proof) => format!("{} type-B vectors, proof: {proof:?}", set.type_b.len()),
            None => format!("{} type-B vectors, search budget exhausted", set.type_b.len()),
        },
    });
    report.certify(Certificate::check(
        "gram_diagonal",
        off <= 1e-12,
        format!("largest off-diagonal Gram entry {off:e}"),
    ));
    report.certify(Certificate::check(
        "members_geodesic",
        all_geodesic,
        format!("{} vectors checked against the predicate", vectors.len()),
    ));
    if maximality == Maximality::LowerBoundOnly {
        report
            .warnings
            .push("search budget exhausted: total is a lower bound only".into());
    }

    let mut text = String::new();
    let _ = writeln!(
        text,
        "n = {}, k = n + 1 = {} ({})",
        p.n(),
        p.tuple_len(),
        set.case.label()
    );
    let _ = writeln!(
        text,
        "{} mutually orthogonal geodesic vectors, {}",
        set.total(),
        maximality_name(maximality)
    );
    for v in &set.w_vectors {
        let _ = writeln!(text, "  W  {}", fmt_components(v));
    }
    for v in &set.type_b {
        let _ = writeln!(text, "  B  {}", fmt_components(v));
    }
    let _ = writeln!(text, "max off-diagonal Gram entry: {off:e}");
    let _ = writeln!(text, "verified: {}", report.verified);

    let n = p.n();
    let mut csv = csv_line(
        std::iter::once("kind".to_string())
            .chain((0..=n).map(|i| format!("x_{i}")))
            .chain((1..=n).map(|k| format!("z_{k}"))),
    );
    for (kind, vs) in [("w", &set.w_vectors), ("b", &set.type_b)] {
        for v in vs {
            csv += &csv_line(
                std::iter::once(kind.to_string()).chain(v.components().iter().map(|&x| fmt_num(x))),
            );
        }
    }
    Ok(Outcome { report, text, csv })
}

fn method_construction(method: HadamardMethod, order: usize, cap: usize) -> Result<Construction> {
    let found = match method {
        HadamardMethod::Sylvester => {
            (order.is_power_of_two() && order <= cap).then(|| Construction::Sylvester {
                m: order.trailing_zeros(),
            })
        }
        HadamardMethod::Paley => {
            let q = order.saturating_sub(1) as u64;
            (order <= cap && homogeo::combinatorics::is_prime(q) && q % 4 == 3)
                .then_some(Construction::Paley { q })
        }
        HadamardMethod::Kronecker => kronecker_construction(order, cap),
    };
    found.ok_or_else(|| {
        let why = match method {
            HadamardMethod::Sylvester => "order must be a power of 2",
            HadamardMethod::Paley => "order must be q + 1 for a prime q = 3 mod 4",
            HadamardMethod::Kronecker => "order must be a product of two constructible orders",
        };
        let reachable = reachable_orders(method.name(), cap);
        let listed: Vec<String> = reachable.iter().map(|k| k.to_string()).collect();
        CliError::Usage(format!(
            "order {order} is not reachable by {}: {why}; reachable orders up to {cap}: {}",
            method.name(),
            listed.join(", ")
        ))
    })
}

fn matrix_json(m: &SquareSignMatrix) -> Value {
    json!(m.rows())
}

pub fn cmd_hadamard(args: &HadamardArgs) -> Result<Outcome> {
    match args.action {
        HadamardAction::Construct => hadamard_construct(args),
        HadamardAction::Verify => hadamard_verify(args),
    }
}

fn hadamard_construct(args: &HadamardArgs) -> Result<Outcome> {
    let (Some(method), Some(order)) = (args.method, args.order) else {
        return Err(CliError::Usage("construct needs --method and --order".into()));
    };
    let construction = method_construction(method, order, args.cap)?;
    let m = construction.build(args.cap)?;
    let ok = is_hadamard(&m);
    let body = format_matrix(&m);
    if let Some(path) = &args.file {
        write_file(path, body.as_bytes())?;
    }
    let results = json!({
        "action": "construct",
        "method": method.name(),
        "order": m.order(),
        "construction": construction,
        "description": construction.to_string(),
        "verified": ok,
        "file": args.file,
        "matrix": matrix_json(&m),
    });
    let mut report = Report::new("hadamard", config(args), results);
    report.certify(Certificate::check(
        "hadamard",
        ok,
        format!("H H^T = {} I checked exactly", m.order()),
    ));

    let mut text = String::new();
    let _ = writeln!(text, "{construction}");
    match &args.file {
        Some(path) => {
            let _ = writeln!(text, "written to {}", path.display());
        }
        None => text.push_str(&body),
    }
    let _ = writeln!(text, "verified: {ok}");
    Ok(Outcome {
        report,
        text,
        csv: matrix_csv(&m),
    })
}

fn matrix_csv(m: &SquareSignMatrix) -> String {
    m.rows()
        .iter()
        .map(|r| csv_line(r.signs().iter().map(|s| s.to_string())))
        .collect()
}

fn hadamard_verify(args: &HadamardArgs) -> Result<Outcome> {
    let Some(path) = &args.file else {
        return Err(CliError::Usage("verify needs --file".into()));
    };
    let text_in = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let m = parse_matrix(&text_in)?;
    let violation = m.first_violation();
    let ok = violation.is_none();
    let results = json!({
        "action": "verify",
        "file": path,
        "order": m.order(),
        "verified": ok,
        "violation": violation.map(|(a, b, v)| json!({ "row_a": a, "row_b": b, "inner_product": v })),
    });
    let mut report = Report::new("hadamard", config(args), results);
    let detail = match violation {
        None => format!("all {} row pairs orthogonal", m.order() * m.order().saturating_sub(1) / 2),
        Some((a, b, v)) => format!("rows {a} and {b} have inner product {v}"),
    };
    report.certify(Certificate::check("hadamard", ok, detail.clone()));

    let text = format!("order {}\nverified: {ok}\n{detail}\n", m.order());
    let csv = csv_line(["order", "verified", "row_a", "row_b", "inner_product"].map(String::from))
        + &match violation {
            None => csv_line([m.order().to_string(), "true".into(), "".into(), "".into(), "".into()]),
            Some((a, b, v)) => csv_line([
                m.order().to_string(),
                "false".into(),
                a.to_string(),
                b.to_string(),
                v.to_string(),
            ]),
        };
    Ok(Outcome { report, text, csv })
}

fn write_curve_file(path: &Path, curve: &CurveSample) -> Result<()> {
    let mut buf = Vec::new();
    write_curve_csv(curve, &mut buf).map_err(|e| CliError::Io(e.to_string()))?;
    write_file(path, &buf)
}

pub fn cmd_geodesic(args: &GeodesicArgs) -> Result<Outcome> {
    let p = params(&args.model)?;
    let v = parse_vector(&args.vector, &p)?;
    let grid = uniform_grid(args.numeric.t_max, args.numeric.step)?;
    let orbit = orbit_curve(&v, &grid, &p)?;
    let residual = geodesic_residual(&orbit, &p)?;
    let predicate = is_geodesic_vector(&v, &p, args.model.tol)?;
    let verdict_geodesic = residual < args.residual_tol;
    let verdict = if verdict_geodesic { "geodesic" } else { "not geodesic" };
    if let Some(path) = &args.orbit_csv {
        write_curve_file(path, &orbit)?;
    }

    match args.action {
        GeodesicAction::Residual => {
            let results = json!({
                "action": "residual",
                "vector": v.components(),
                "nodes": grid.len(),
                "residual": residual,
                "residual_tol": args.residual_tol,
                "verdict": verdict,
                "predicate": predicate,
                "consistent": predicate == verdict_geodesic,
            });
            let mut report = Report::new("geodesic", config(args), results);
            report.certify(Certificate::check(
                "residual_finite",
                residual.is_finite(),
                format!("residual {residual:e} over {} nodes", grid.len()),
            ));
            if predicate != verdict_geodesic {
                report.warnings.push(format!(
                    "residual verdict ({verdict}) disagrees with the algebraic predicate ({predicate}); \
                     consider a smaller --step or a different --residual-tol"
                ));
            }
            let text = format!(
                "vector {}\nresidual: {residual:e}\nverdict: {verdict} (tol {:e})\npredicate: {predicate}\n",
                fmt_components(&v),
                args.residual_tol
            );
            let csv = csv_line(["residual", "residual_tol", "verdict", "predicate"].map(String::from))
                + &csv_line([
                    format!("{residual:e}"),
                    format!("{:e}", args.residual_tol),
                    verdict.to_string(),
                    predicate.to_string(),
                ]);
            Ok(Outcome { report, text, csv })
        }
        GeodesicAction::Trace => {
            let start = GroupPoint::origin(p.n());
            let geo = integrate_geodesic(&start, &v.components(), &grid, args.numeric.step, &p)?;
            if let Some(path) = &args.geodesic_csv {
                write_curve_file(path, &geo)?;
            }
            let sup = orbit.sup_deviation(&geo)?;
            let drift = energy_drift(&geo, &p);
            let results = json!({
                "action": "trace",
                "vector": v.components(),
                "nodes": grid.len(),
                "sup_deviation": sup,
                "energy_drift": drift,
                "orbit_residual": residual,
                "residual_tol": args.residual_tol,
                "verdict": verdict,
                "predicate": predicate,
                "orbit_csv": args.orbit_csv,
                "geodesic_csv": args.geodesic_csv,
            });
            let mut report = Report::new("geodesic", config(args), results);
            report.certify(Certificate::check(
                "integration_finite",
                sup.is_finite() && drift.is_finite(),
                format!("sup deviation {sup:e}, relative energy drift {drift:e}"),
            ));
            let text = format!(
                "vector {}\nnodes: {}\nsup deviation orbit vs geodesic: {sup:e}\n\
                 energy drift: {drift:e}\norbit residual: {residual:e}\nverdict: {verdict}\n",
                fmt_components(&v),
                grid.len()
            );
            Ok(Outcome {
                report,
                text,
                csv: trace_csv(&orbit, &geo),
            })
        }
    }
}

/// Orbit columns, then the integrated geodesic as `geo_*`, then the
/// coordinate deviation between them.
fn trace_csv(orbit: &CurveSample, geo: &CurveSample) -> String {
    let header = curve_csv_header(orbit.n);
    let mut out = csv_line(
        header
            .iter()
            .cloned()
            .chain(header.iter().skip(1).map(|h| format!("geo_{h}")))
            .chain(std::iter::once("deviation".to_string())),
    );
    let dim = 2 * orbit.n + 1;
    for (a, b) in curve_csv_rows(orbit).iter().zip(curve_csv_rows(geo)) {
        let dev = a[1..=dim]
            .iter()
            .zip(&b[1..=dim])
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        out += &csv_line(
            a.iter()
                .chain(&b[1..])
                .chain(std::iter::once(&dev))
                .map(|x| x.to_string()),
        );
    }
    out
}

pub fn cmd_report(args: &ReportArgs) -> Result<Outcome> {
    let p = params(&args.model)?;
    let n = p.n();
    let k = p.tuple_len();
    let case = ParityCase::of(k);

    // Counts only; the classify command does the random probing.
    let classification = classify(
        &p,
        &ClassifyOptions {
            tol: args.model.tol,
            sample_bound: 0,
            ..ClassifyOptions::default()
        },
    );
    let (classification_json, class_ok) = match &classification {
        Ok(c) => (
            json!({
                "subspaces": 1,
                "w_dim": c.w_dim(),
                "ray_count": c.sign_rays.len(),
                "generators_verified": c.generators_verified,
            }),
            c.generators_verified,
        ),
        Err(e) => (
            json!({
                "subspaces": 1,
                "w_dim": n,
                "ray_count": null,
                "generators_verified": null,
                "skipped": e.to_string(),
            }),
            true,
        ),
    };

    let independent = independent_geodesic_family(&p);
    let set = max_orthogonal_geodesic_set(&p, &search_options(&args.search))?;
    let maximality = set.maximality();
    let expected = case.expected_max(n);

    let witness = if case == ParityCase::DivisibleByFour {
        construction_for_order(k, homogeo::combinatorics::DEFAULT_ORDER_CAP).map(|c| {
            let ok = c.build(homogeo::combinatorics::DEFAULT_ORDER_CAP).map(|m| is_hadamard(&m));
            (c, ok.unwrap_or(false))
        })
    } else {
        None
    };

    let results = json!({
        "n": n,
        "k": k,
        "case": case.label(),
        "classification": classification_json,
        "independent_rank": independent.rank,
        "independent_expected": p.dim(),
        "max_orthogonal": {
            "total": set.total(),
            "expected": expected,
            "maximality": maximality_name(maximality),
            "proof": set.family.proof(),
        },
        "witness": witness.as_ref().map(|(c, ok)| json!({
            "construction": c,
            "description": c.to_string(),
            "order": c.order(),
            "verified": ok,
        })),
    });

    let mut report = Report::new("report", config(args), results);
    report.certify(Certificate::check(
        "classification",
        class_ok,
        "W basis and ray generators pass the predicate",
    ));
    report.certify(Certificate::check(
        "independent_rank",
        independent.rank == p.dim(),
        format!("exact rank {} of {} vectors", independent.rank, independent.vectors.len()),
    ));
    report.certificates.push(Certificate {
        name: "maximality".into(),
        status: maximality_status(maximality),
        detail: format!("{} vectors", set.total()),
    });
    if maximality == Maximality::Certified {
        report.certify(Certificate::check(
            "case_total",
            set.total() == expected,
            format!("total {} against {expected} for this case", set.total()),
        ));
    } else {
        report
            .warnings
            .push("search budget exhausted: total is a lower bound only".into());
    }
    if let Some((c, ok)) = &witness {
        report.certify(Certificate::check("witness", *ok, c.to_string()));
    }
    if let Err(e) = &classification {
        report.warnings.push(format!("classification counts not enumerated: {e}"));
    }

    let mut text = String::new();
    let _ = writeln!(text, "n = {n}, k = n + 1 = {k}");
    let _ = writeln!(text, "case: {}", case.label());
    match &classification {
        Ok(c) => {
            let _ = writeln!(
                text,
                "classification: 1 subspace of dim {}, {} sign rays",
                c.w_dim(),
                c.sign_rays.len()
            );
        }
        Err(_) => {
            let _ = writeln!(text, "classification: 1 subspace of dim {n}, 2^{n} sign rays");
        }
    }
    let _ = writeln!(text, "independent geodesic vectors: rank {}", independent.rank);
    let _ = writeln!(
        text,
        "max orthogonal: {} ({})",
        set.total(),
        maximality_name(maximality)
    );
    match &witness {
        Some((c, ok)) => {
            let _ = writeln!(text, "witness: {c}, verified {ok}");
        }
        None => {
            let _ = writeln!(text, "witness: none");
        }
    }
    let _ = writeln!(text, "verified: {}", report.verified);

    let csv = csv_line(["key", "value"].map(String::from))
        + &csv_line(["n".into(), n.to_string()])
        + &csv_line(["case".into(), case.label().into()])
        + &csv_line(["independent_rank".into(), independent.rank.to_string()])
        + &csv_line(["max_orthogonal".into(), set.total().to_string()])
        + &csv_line(["maximality".into(), maximality_name(maximality).into()])
        + &csv_line([
            "witness".into(),
            witness.map(|(c, _)| c.to_string()).unwrap_or_default(),
        ]);
    Ok(Outcome { report, text, csv })
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Classify(a) => cmd_classify(a),
        Command::CheckVector(a) => cmd_check_vector(a),
        Command::MaxOrthogonal(a) => cmd_max_orthogonal(a),
        Command::Hadamard(a) => cmd_hadamard(a),
        Command::Geodesic(a) => cmd_geodesic(a),
        Command::Report(a) => cmd_report(a),
    }
}

impl Command {
    pub fn output(&self) -> OutputFormat {
        match self {
            Command::Classify(a) => a.out.output,
            Command::CheckVector(a) => a.out.output,
            Command::MaxOrthogonal(a) => a.out.output,
            Command::Hadamard(a) => a.out.output,
            Command::Geodesic(a) => a.out.output,
            Command::Report(a) => a.out.output,
        }
    }
}
