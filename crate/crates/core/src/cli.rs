//! The `wflag` command line. `run` parses arguments and returns the exit code
//! together with everything the process should print, so the binary is a thin
//! wrapper and the commands can be tested in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{catalog, entry, make_weighted};
use crate::construct::{
    parse_ops, search, CandidateReport, ConstructedVariety, SearchParams, Target,
};
use crate::error::{Error, Result};
use crate::ideals::{
    appendix_ideal, buchberger, count_variables, ideal_from_text, leading_monomials,
    monomial_quotient_numerator, AppendixIdeal, MonomialOrder, OrderKind, WeightedIdeal,
    WeightedPolynomial,
};
use crate::invariants::summarize;
use crate::lattice::{Coweight, LieType};
use crate::series::{numerator_symmetry_check, HilbertSeries, Q};
use crate::verify::{run_suite, weight_multiset, Suite};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "wflag",
    version,
    about = "Weighted flag varieties and their Hilbert series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the registered flag varieties.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Hilbert series of a weighted flag variety.
    Hilbert {
        #[command(flatten)]
        point: Point,
        /// Also print the first K+1 coefficients of the series.
        #[arg(long, value_name = "K")]
        expand: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Apply cones and sections to a weighted flag variety.
    Construct {
        #[command(flatten)]
        point: Point,
        /// Comma-separated operations: cone:W, section:D (quasilinear), general:D.
        #[arg(long, allow_hyphen_values = true)]
        ops: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for Calabi-Yau or Fano 3-fold candidates.
    Search {
        #[arg(long)]
        variety: String,
        #[arg(long, default_value = "cy3")]
        target: String,
        #[arg(long, default_value_t = 1)]
        mu_bound: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        u_bound: i64,
        #[arg(long, default_value_t = 4)]
        max_sections: usize,
        #[arg(long, default_value_t = 2)]
        max_cones: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Groebner basis and quotient Hilbert series of an ideal.
    Groebner {
        /// lgr36, fl13, or a path to an equation file.
        #[arg(long)]
        ideal: String,
        /// Variable weights; all 1 when omitted.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the golden verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct Point {
    #[arg(long)]
    variety: String,
    /// Comma-separated coweight; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    u: i64,
}

/// What a finished invocation prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Outcome {
        Outcome {
            code: if e.is_input_error() { 1 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// The JSON envelope of every command.
#[derive(Serialize)]
struct Report {
    version: &'static str,
    command: &'static str,
    inputs: Value,
    outputs: Value,
    timing_ms: u64,
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Internal(format!("serialization: {e}")))
}

fn render_json(
    command: &'static str,
    inputs: Value,
    outputs: Value,
    start: Instant,
) -> Result<String> {
    let report = Report {
        version: VERSION,
        command,
        inputs,
        outputs,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    let mut s = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Internal(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    let result = match cli.command {
        Command::Catalog { json } => cmd_catalog(json, start),
        Command::Hilbert {
            point,
            expand,
            json,
        } => cmd_hilbert(&point, expand, json, start),
        Command::Construct { point, ops, json } => cmd_construct(&point, &ops, json, start),
        Command::Search {
            variety,
            target,
            mu_bound,
            u_bound,
            max_sections,
            max_cones,
            jobs,
            json,
        } => {
            let target = target.parse::<Target>();
            target.and_then(|target| {
                let mut params = SearchParams::new(target, mu_bound, u_bound, max_sections);
                params.max_cones = max_cones;
                params.jobs = jobs;
                cmd_search(&variety, &params, json, start)
            })
        }
        Command::Groebner {
            ideal,
            weights,
            order,
            json,
        } => cmd_groebner(&ideal, weights.as_deref(), &order, json, start),
        Command::Verify { suite, json } => {
            return suite
                .parse::<Suite>()
                .and_then(|s| cmd_verify(s, json, start))
                .unwrap_or_else(|e| Outcome::error(&e));
        }
    };
    match result {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::error(&e),
    }
}

fn cmd_catalog(json: bool, start: Instant) -> Result<String> {
    let rows = catalog();
    if json {
        return render_json("catalog", json!({}), to_value(&rows)?, start);
    }
    let mut out = format!(
        "{:<7} {:<10} {:<6} {:<22} {:>5} {:>9} {:>7}\n",
        "id", "name", "group", "lambda", "codim", "equations", "ambient"
    );
    for e in &rows {
        let group = match e.lie_type {
            LieType::G2 | LieType::E6 => e.lie_type.to_string(),
            _ => format!("{}{}", e.lie_type, e.rank),
        };
        let _ = writeln!(
            out,
            "{:<7} {:<10} {:<6} {:<22} {:>5} {:>9} {:>7}",
            e.id,
            e.name,
            group,
            e.lambda.to_string(),
            e.expected_codim,
            e.expected_num_quadrics,
            format!("P^{}", e.ambient_dim)
        );
    }
    Ok(out)
}

fn parse_point(p: &Point) -> Result<(crate::catalog::CatalogEntry, Coweight)> {
    let e = entry(&p.variety)?;
    let mu = match &p.mu {
        Some(s) => s.parse()?,
        None => Coweight::zero(e.coweight_len()),
    };
    Ok((e, mu))
}

fn point_inputs(p: &Point, mu: &Coweight) -> Value {
    json!({ "variety": p.variety, "mu": mu, "u": p.u })
}

fn format_weights(weights: &[i64]) -> String {
    weight_multiset(weights)
        .iter()
        .map(|(w, k)| {
            if *k == 1 {
                w.to_string()
            } else {
                format!("{w}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn series_outputs(series: &HilbertSeries, ambient: &[i64], dim: usize, k: i64) -> Result<Value> {
    let sym = numerator_symmetry_check(series)?;
    Ok(json!({
        "ambient_weights": ambient,
        "dim": dim,
        "numerator": series.numerator,
        "denominator_exponents": series.denom_exponents(),
        "canonical_degree": k,
        "adjunction": sym.adjunction,
        "palindromic": sym.palindromic,
    }))
}

fn series_text(out: &mut String, series: &HilbertSeries, ambient: &[i64], dim: usize, k: i64) {
    let _ = writeln!(out, "ambient weights: {}", format_weights(ambient));
    let _ = writeln!(out, "dimension: {dim}");
    let _ = writeln!(out, "numerator: {}", series.numerator);
    let _ = writeln!(out, "series: {series}");
    let _ = writeln!(out, "canonical class: O({k})");
}

fn cmd_hilbert(p: &Point, expand: Option<usize>, json: bool, start: Instant) -> Result<String> {
    let (e, mu) = parse_point(p)?;
    let v = make_weighted(&e, &mu, p.u)?;
    let coeffs = expand.map(|k| v.series.expand(k)).transpose()?;
    if json {
        let mut outputs = series_outputs(&v.series, &v.ambient_weights, v.dim, v.canonical_degree)?;
        outputs["codim"] = json!(v.codim);
        if let Some(c) = &coeffs {
            outputs["expansion"] = json!(c.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        }
        let mut inputs = point_inputs(p, &mu);
        inputs["expand"] = json!(expand);
        return render_json("hilbert", inputs, outputs, start);
    }
    let mut out = format!("{} mu={} u={}\n", e.id, mu, p.u);
    series_text(
        &mut out,
        &v.series,
        &v.ambient_weights,
        v.dim,
        v.canonical_degree,
    );
    let _ = writeln!(out, "codimension: {}", v.codim);
    if let Some(c) = coeffs {
        let list: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "coefficients: {}", list.join(", "));
    }
    Ok(out)
}

fn cmd_construct(p: &Point, ops: &str, json: bool, start: Instant) -> Result<String> {
    let (e, mu) = parse_point(p)?;
    let ops = parse_ops(ops)?;
    let base: ConstructedVariety = make_weighted(&e, &mu, p.u)?.into();
    let v = base.apply_all(&ops)?;
    let inv = summarize(&v);
    if json {
        let mut inputs = point_inputs(p, &mu);
        inputs["ops"] = to_value(&ops)?;
        let mut outputs = series_outputs(&v.series, &v.ambient_weights, v.dim, v.canonical_degree)?;
        outputs["invariants"] = to_value(&inv)?;
        return render_json("construct", inputs, outputs, start);
    }
    let names: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
    let mut out = format!("{} mu={} u={} ops={}\n", e.id, mu, p.u, names.join(","));
    series_text(
        &mut out,
        &v.series,
        &v.ambient_weights,
        v.dim,
        v.canonical_degree,
    );
    if let Some(d) = &inv.degree {
        let _ = writeln!(out, "degree D^{}: {d}", v.dim);
    }
    if let Some(g) = inv.genus {
        let _ = writeln!(out, "Fano genus: {g}");
    }
    if let Some(c) = &inv.dc2_estimate {
        let _ = writeln!(
            out,
            "D.c2 estimate: {c} (period {})",
            inv.fit_period.unwrap_or_default()
        );
    }
    Ok(out)
}

fn opt_q(q: &Option<Q>) -> String {
    q.as_ref().map_or_else(|| "-".into(), |q| q.to_string())
}

fn candidate_table(rows: &[CandidateReport]) -> String {
    let mut out = format!(
        "{:<12} {:>4} {:<42} {:<28} {:>4} {:>8} {:>9}\n",
        "mu", "u", "ops", "ambient", "K", "D^3", "D.c2 est"
    );
    for c in rows {
        let ops: Vec<String> = c.ops.iter().map(|o| o.to_string()).collect();
        let _ = writeln!(
            out,
            "{:<12} {:>4} {:<42} {:<28} {:>4} {:>8} {:>9}",
            c.mu.to_string(),
            c.u,
            ops.join(","),
            format_weights(&c.ambient_weights),
            c.canonical_degree,
            opt_q(&c.invariants.degree),
            opt_q(&c.invariants.dc2_estimate)
        );
    }
    let _ = writeln!(out, "{} candidates (unverified singularities)", rows.len());
    out
}

fn cmd_search(variety: &str, params: &SearchParams, json: bool, start: Instant) -> Result<String> {
    let e = entry(variety)?;
    let rows = search(&e, params)?;
    if json {
        // jobs does not affect the output, so it is left out of the echo
        let inputs = json!({
            "variety": variety,
            "target": params.target,
            "mu_bound": params.mu_bound,
            "u_bound": params.u_bound,
            "max_sections": params.max_sections,
            "max_cones": params.max_cones,
        });
        return render_json("search", inputs, to_value(&rows)?, start);
    }
    Ok(candidate_table(&rows))
}

fn parse_weights(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("weight {p:?} is not an integer")))
        })
        .collect()
}

fn load_ideal(source: &str, weights: Option<&str>) -> Result<WeightedIdeal> {
    let weights = weights.map(parse_weights).transpose()?;
    if let Ok(id) = source.parse::<AppendixIdeal>() {
        let w = weights.unwrap_or_else(|| vec![1; id.nvars()]);
        return appendix_ideal(id, &w);
    }
    let path = PathBuf::from(source);
    let text = std::fs::read_to_string(&path).map_err(|e| {
        Error::Validation(format!(
            "{source:?} is neither lgr36, fl13 nor a readable equation file: {e}"
        ))
    })?;
    let w = match weights {
        Some(w) => w,
        None => vec![1; count_variables(&text)?],
    };
    ideal_from_text(&text, &w)
}

fn cmd_groebner(
    source: &str,
    weights: Option<&str>,
    order: &str,
    json: bool,
    start: Instant,
) -> Result<String> {
    let ideal = load_ideal(source, weights)?;
    let kind: OrderKind = order.parse()?;
    let order = MonomialOrder::new(kind, &ideal.weights);
    let gb = buchberger(&ideal, &order)?;
    let lms = leading_monomials(&gb, &order);
    let series = HilbertSeries::new(
        monomial_quotient_numerator(&lms, &ideal.weights),
        ideal.weights.clone(),
    );
    let basis: Vec<String> = gb
        .generators
        .iter()
        .map(|g| g.display(&ideal.names, &order).to_string())
        .collect();
    let initial: Vec<String> = lms
        .iter()
        .map(|m| {
            let p = WeightedPolynomial::from_terms(
                &ideal.weights,
                [(m.clone(), Q::from_integer(1.into()))],
            );
            p.display(&ideal.names, &order).to_string()
        })
        .collect();
    if json {
        let inputs = json!({
            "ideal": source,
            "weights": ideal.weights,
            "order": order.kind,
        });
        let outputs = json!({
            "num_generators": ideal.generators.len(),
            "basis": basis,
            "initial_ideal": initial,
            "numerator": series.numerator,
            "denominator_exponents": series.denom_exponents(),
        });
        return render_json("groebner", inputs, outputs, start);
    }
    let mut out = format!(
        "{} generators, weights {}, {:?} order\n",
        ideal.generators.len(),
        format_weights_in_order(&ideal.weights),
        order.kind
    );
    let _ = writeln!(out, "Groebner basis ({} elements):", basis.len());
    for b in &basis {
        let _ = writeln!(out, "  {b}");
    }
    let _ = writeln!(out, "initial ideal: {}", initial.join(", "));
    let _ = writeln!(out, "quotient series: {series}");
    Ok(out)
}

fn format_weights_in_order(w: &[i64]) -> String {
    w.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_verify(suite: Suite, json: bool, start: Instant) -> Result<Outcome> {
    let checks = run_suite(suite);
    let failed = checks.iter().filter(|c| c.failed_hard()).count();
    let stdout = if json {
        let outputs = json!({ "checks": checks, "hard_failures": failed });
        render_json("verify", json!({ "suite": suite }), outputs, start)?
    } else {
        let mut out = String::new();
        for c in &checks {
            let tag = match (c.hard, c.passed) {
                (true, true) => "PASS",
                (true, false) => "FAIL",
                (false, true) => "INFO agree",
                (false, false) => "INFO differ",
            };
            let _ = writeln!(out, "[{tag}] {} ({}): {}", c.name, c.suite, c.detail);
        }
        let hard = checks.iter().filter(|c| c.hard).count();
        let _ = writeln!(out, "{} of {hard} hard checks passed", hard - failed);
        out
    };
    Ok(Outcome {
        code: if failed == 0 { 0 } else { 2 },
        stdout,
        stderr: String::new(),
    })
}
