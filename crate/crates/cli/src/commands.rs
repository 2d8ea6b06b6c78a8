use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use num_rational::BigRational;
use serde_json::json;

use circnet::flows::{
    conservative_flows, conservative_gf, enumerate_alternating_flows, enumerate_flows, plucker, plucker_general,
    plucker_nonplanar_measurement, simple_cycles,
};
use circnet::network::{is_perfectly_oriented, validate as violations, with_edge_variables, NetworkDoc};
use circnet::transform::perfect_orient;
use circnet::walks::{measurement_series, minor_series};
use circnet::{Error, Network, RationalFn};

use crate::{MinorArgs, Status};

fn load(path: &Path) -> anyhow::Result<Network> {
    Network::load(path).with_context(|| format!("loading {}", path.display()))
}

fn sorted(cols: &[usize]) -> Vec<usize> {
    let mut c = cols.to_vec();
    c.sort();
    c
}

fn set(cols: &[usize]) -> String {
    cols.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `var=value,...`, values rational.
fn parse_assignment(s: &str) -> anyhow::Result<HashMap<String, BigRational>> {
    s.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .with_context(|| format!("expected var=value, got {kv:?}"))?;
            let v: BigRational = v.trim().parse().with_context(|| format!("bad value for {k}: {v:?}"))?;
            Ok((k.trim().to_owned(), v))
        })
        .collect()
}

pub fn validate(path: &Path) -> anyhow::Result<Status> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: NetworkDoc = serde_json::from_str(&text).context("malformed network document")?;
    let found = violations(&doc);
    if !found.is_empty() {
        for v in &found {
            println!("violation: {v}");
        }
        bail!("{} has {} violation(s)", path.display(), found.len());
    }
    let n = Network::new(doc)?;
    println!("ok: {}", n.name());
    println!(
        "boundary: {} vertices, sources at {}",
        n.n(),
        set(n.sources().positions())
    );
    println!(
        "interior: {} vertices, {} edges",
        n.vertex_count() - n.n(),
        n.edge_count()
    );
    println!("planar: {}", yes(n.is_planar()));
    println!("perfectly oriented: {}", yes(is_perfectly_oriented(&n)));
    if is_perfectly_oriented(&n) {
        println!("directed cycles: {}", simple_cycles(&n).len());
    }
    Ok(Status::Ok)
}

pub fn minor(a: &MinorArgs) -> anyhow::Result<Status> {
    let n = load(&a.file)?;
    let cols = sorted(&a.cols);
    n.check_columns(&cols)?;
    if !n.is_planar() {
        return minor_nonplanar(&n, &cols, a);
    }
    let (method, value) = if is_perfectly_oriented(&n) {
        ("flows", plucker(&n, &cols)?)
    } else {
        ("alternating-flows", plucker_general(&n, &cols)?)
    };
    let series = a.series_degree.map(|l| value.series(l)).transpose()?;
    let point = match &a.specialize {
        Some(s) => Some(value.specialize(&parse_assignment(s)?)?),
        None => None,
    };
    let check = match &a.reduced_check {
        Some(expr) => {
            let closed: RationalFn = expr.parse().context("parsing --reduced-check")?;
            Some(value.equals(&closed))
        }
        None => None,
    };
    if a.json {
        let out = json!({
            "network": n.name(),
            "cols": cols,
            "method": method,
            "numer": value.numer().to_string(),
            "denom": value.denom().to_string(),
            "series": series.as_ref().map(|s| s.poly().to_string()),
            "series_degree": a.series_degree,
            "value": point.as_ref().map(ToString::to_string),
            "closed_form_matches": check,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("{value}");
        println!("method: {method}");
        if let Some(s) = &series {
            println!("series: {s}");
        }
        if let Some(v) = &point {
            println!("value: {v}");
        }
        if let Some(ok) = check {
            println!("closed form: {}", if ok { "matches" } else { "differs" });
        }
    }
    Ok(if check == Some(false) {
        Status::Mismatch
    } else {
        Status::Ok
    })
}

/// Off the planar case only the determinant of walk series is trusted; the
/// flow formula is reported alongside when it disagrees.
fn minor_nonplanar(n: &Network, cols: &[usize], a: &MinorArgs) -> anyhow::Result<Status> {
    if a.specialize.is_some() {
        bail!("--specialize needs a closed form, which non-planar networks do not have");
    }
    let degree = a.series_degree.unwrap_or(10);
    let truth = minor_series(n, cols, degree)?;
    let by_flows = plucker(n, cols)?;
    let agrees = by_flows.series(degree)? == truth;
    let warning = if agrees {
        format!("network is non-planar; the flow formula agrees through degree {degree} but is not guaranteed")
    } else {
        format!("network is non-planar; the flow formula {by_flows} disagrees with the minor")
    };
    let check = match &a.reduced_check {
        Some(expr) => {
            let closed: RationalFn = expr.parse().context("parsing --reduced-check")?;
            Some(closed.series(degree)? == truth)
        }
        None => None,
    };
    if a.json {
        let out = json!({
            "network": n.name(),
            "cols": cols,
            "method": "determinant",
            "series": truth.poly().to_string(),
            "series_degree": degree,
            "flow_formula": { "numer": by_flows.numer().to_string(), "denom": by_flows.denom().to_string() },
            "flow_formula_agrees": agrees,
            "closed_form_matches": check,
            "warning": warning,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("{truth}");
        println!("method: determinant");
        if let Some(ok) = check {
            println!("closed form: {}", if ok { "matches" } else { "differs" });
        }
        eprintln!("warning: {warning}");
    }
    Ok(if check == Some(false) {
        Status::Mismatch
    } else {
        Status::Ok
    })
}

pub fn measure(path: &Path, i: usize, j: usize, degree: u32, as_json: bool) -> anyhow::Result<Status> {
    let n = load(path)?;
    let closed = plucker_nonplanar_measurement(&n, i, j)?;
    let series = measurement_series(&n, i, j, degree)?;
    if as_json {
        let out = json!({
            "network": n.name(),
            "from": i,
            "to": j,
            "numer": closed.numer().to_string(),
            "denom": closed.denom().to_string(),
            "series": series.poly().to_string(),
            "series_degree": degree,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("M[{i},{j}] = {closed}");
        println!("series: {series}");
    }
    Ok(Status::Ok)
}

fn edge_list(ids: Vec<&str>) -> String {
    if ids.is_empty() {
        "(empty)".to_owned()
    } else {
        ids.join(" ")
    }
}

pub fn flows(path: &Path, cols: &[usize], alternating: bool) -> anyhow::Result<Status> {
    let n = load(path)?;
    let cols = sorted(cols);
    if alternating {
        let found = enumerate_alternating_flows(&n, &cols)?;
        for f in &found {
            let mut ids: Vec<&str> = f.edges.iter().map(|&e| n.edge_id(e)).collect();
            ids.sort();
            println!("{}  weight {}  theta {}", edge_list(ids), f.weight(&n)?, f.stats.theta);
        }
        println!("{} alternating flow(s) to {{{}}}", found.len(), set(&cols));
        println!("total: {}", plucker_general(&n, &cols)?.numer());
    } else {
        let found = enumerate_flows(&n, &cols)?;
        for f in &found {
            println!("{}  weight {}", edge_list(f.edge_ids(&n)), f.weight(&n)?);
        }
        println!("{} flow(s) to {{{}}}", found.len(), set(&cols));
        println!("total: {}", plucker(&n, &cols)?.numer());
    }
    Ok(Status::Ok)
}

pub fn conservative(path: &Path) -> anyhow::Result<Status> {
    let n = load(path)?;
    let found = conservative_flows(&n)?;
    for f in &found {
        println!("{}  weight {}", edge_list(f.edge_ids(&n)), f.weight(&n)?);
    }
    println!("{} conservative flow(s)", found.len());
    println!("generating function: {}", conservative_gf(&n)?);
    Ok(Status::Ok)
}

/// `out.json` gets its trace in `out.trace.json`.
fn trace_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.trace.json"))
}

pub fn reduce(path: &Path, out: &Path) -> anyhow::Result<Status> {
    let n = load(path)?;
    let (reduced, trace) = perfect_orient(&n)?;
    fs::write(out, reduced.to_json() + "\n").with_context(|| format!("writing {}", out.display()))?;
    let sidecar = trace_path(out);
    fs::write(&sidecar, serde_json::to_string_pretty(&trace)? + "\n")
        .with_context(|| format!("writing {}", sidecar.display()))?;
    println!(
        "{}: {} vertices, {} edges -> {} vertices, {} edges",
        n.name(),
        n.vertex_count(),
        n.edge_count(),
        reduced.vertex_count(),
        reduced.edge_count()
    );
    println!(
        "new edges: {}, doubled edges: {}",
        trace.new_edges.len(),
        trace.doubled_edges.len()
    );
    println!("wrote {} and {}", out.display(), sidecar.display());
    Ok(Status::Ok)
}

pub fn verify(path: &Path, cols: &[usize], degree: u32) -> anyhow::Result<Status> {
    let n = load(path)?;
    let cols = sorted(cols);
    n.check_columns(&cols)?;
    let mut ok = true;
    if is_perfectly_oriented(&n) {
        // Constant-weight cycles have no truncation; free variables give them
        // positive degree.
        let n = match minor_series(&n, &cols, degree) {
            Err(Error::DegreeZeroCycle) => {
                println!("note: a cycle has weight degree 0; checking with one variable per edge");
                with_edge_variables(&n)
            }
            _ => n,
        };
        let by_flows = plucker(&n, &cols)?.series(degree)?;
        let by_walks = minor_series(&n, &cols, degree)?;
        ok &= by_flows == by_walks;
        println!("flow formula: {by_flows}");
        println!("walk minor:   {by_walks}");
        if !n.is_planar() && !ok {
            println!("note: the flow formula is only guaranteed for planar networks");
        }
    } else {
        // The rewrite has cycles of weight degree 0, so the series check runs
        // with one free variable per edge.
        let general = plucker_general(&n, &cols)?;
        let (reduced, _) = perfect_orient(&n)?;
        let rewrite_ok = general.equals(&plucker(&reduced, &cols)?);
        println!("alternating flows: {general}");
        println!("rewrite agrees: {}", yes(rewrite_ok));
        let free = with_edge_variables(&reduced);
        let by_flows = plucker(&free, &cols)?.series(degree)?;
        let by_walks = minor_series(&free, &cols, degree)?;
        ok &= rewrite_ok && by_flows == by_walks;
        println!(
            "rewrite series agrees through degree {degree}: {}",
            yes(by_flows == by_walks)
        );
    }
    println!("{}", if ok { "ok" } else { "MISMATCH" });
    Ok(if ok { Status::Ok } else { Status::Mismatch })
}
