//! `layersift` command-line front end.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use layersift::instance::{parse_instance, IpInstance};
use layersift::layers::{
    canonical_neighbor, center, coprime_multiple, layer_parameter, neighbor_set,
};
use layersift::oracle::{brute_force_solve, cross_validate, Box, DEFAULT_ENUMERATION_CAP};
use layersift::rational::{to_fraction_string, Rational};
use layersift::report::{InfeasibleWitness, SolveReport, SolveStatus};
use layersift::solver::{check_applicability, sift_solve, SiftOptions};
use layersift::symmetry::{
    full_symmetry_group, homogeneity_degree, neighbor_orbits, parse_generators,
    transitivity_degree, PermGroup, DEFAULT_DETECTION_CAP, DEFAULT_ELEMENT_CAP,
};
use num_bigint::BigInt;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "layersift",
    version,
    about = "Exact layer sifting for symmetric integer programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Instance file.
    instance: PathBuf,
    /// Generator file in cycle notation; detected automatically for n <= 10 when omitted.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Emit a single JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Enumeration cap for brute force and neighbor listings.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u128,
}

#[derive(Subcommand)]
enum Command {
    /// Solve by layer sifting.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Run the brute-force oracle when sifting is not applicable.
        #[arg(long)]
        fallback_oracle: bool,
        /// Proceed even if the transitivity hypothesis fails.
        #[arg(long)]
        assume_applicable: bool,
        /// Box for the fallback oracle: one upper bound for all coordinates, or a comma-separated list.
        #[arg(long = "box")]
        bounds: Option<String>,
    },
    /// Report generators, order and transitivity of the symmetry group.
    Symmetry {
        #[command(flatten)]
        common: Common,
    },
    /// List layers with parameter, center, utility and neighbor count.
    Layers {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// Enumerate the neighbors of a layer, optionally grouped into orbits.
    Neighbors {
        #[command(flatten)]
        common: Common,
        #[arg(short, long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        orbits: bool,
    },
    /// Cross-validate sifting against the brute-force oracle.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box")]
        bounds: Option<String>,
        #[arg(long)]
        assume_applicable: bool,
    },
    /// Solve by brute-force enumeration.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box")]
        bounds: Option<String>,
    },
}

fn load_instance(path: &Path) -> Result<IpInstance> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_group(common: &Common, inst: &IpInstance) -> Result<PermGroup> {
    match &common.group {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(PermGroup::new(
                inst.n(),
                parse_generators(&text, inst.n())?,
            )?)
        }
        None if inst.n() <= DEFAULT_DETECTION_CAP => {
            Ok(full_symmetry_group(inst, DEFAULT_DETECTION_CAP)?)
        }
        None => bail!(
            "n = {} exceeds the detection cap {DEFAULT_DETECTION_CAP}; pass --group <file>",
            inst.n()
        ),
    }
}

fn parse_box(spec: Option<&str>, inst: &IpInstance) -> Result<Box> {
    let n = inst.n();
    let Some(spec) = spec else {
        return Box::around_fixed_line(inst)
            .context("no default box: the fixed-line LP is not bounded or c is not parallel to (1,...,1); pass --box");
    };
    let uppers: Vec<i64> = spec
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .with_context(|| format!("bad box bound `{t}`"))
        })
        .collect::<Result<_>>()?;
    Ok(match uppers.as_slice() {
        [u] => Box::cube(n, *u)?,
        list if list.len() == n => Box::new(vec![0; n], list.to_vec())?,
        list => bail!("box has {} bounds, expected 1 or {n}", list.len()),
    })
}

fn frac(r: &Rational) -> String {
    to_fraction_string(r)
}

fn print_report(report: &SolveReport, json: bool) {
    if json {
        println!("{}", report.to_json());
        return;
    }
    println!("status: {}", report.status.name());
    match &report.status {
        SolveStatus::Optimal {
            point,
            value,
            layer,
        } => {
            println!("point: {point}");
            println!("value: {value}");
            println!("layer: {layer}");
        }
        SolveStatus::Infeasible(w) => println!("witness: {}", describe_witness(w)),
        SolveStatus::NotApplicable(why) => println!("reason: {why}"),
        SolveStatus::Unbounded => {}
    }
    println!("layers visited: {}", report.stats.layers_visited);
    println!("feasibility checks: {}", report.stats.feasibility_checks);
    println!("applicability: {}", report.applicability);
    for note in &report.notes {
        println!("note: {note}");
    }
}

fn describe_witness(w: &InfeasibleWitness) -> String {
    match w {
        InfeasibleWitness::CenterInfeasible(k) => format!("center of layer {k} is infeasible"),
        InfeasibleWitness::ExhaustedLayers => "every layer in the sift range was tested".into(),
        InfeasibleWitness::LineInfeasible => "fixed line misses the LP region".into(),
        InfeasibleWitness::EmptyBox => "no feasible integer point in the box".into(),
    }
}

fn cmd_solve(common: &Common, fallback: bool, assume: bool, bounds: Option<&str>) -> Result<i32> {
    let inst = load_instance(&common.instance)?;
    let group = load_group(common, &inst)?;
    let mut report = sift_solve(
        &inst,
        &group,
        SiftOptions {
            assume_applicable: assume,
        },
    )?;
    if fallback && matches!(report.status, SolveStatus::NotApplicable(_)) {
        let bx = match bounds {
            Some(_) => parse_box(bounds, &inst)?,
            None => bail!("--fallback-oracle needs --box when sifting is not applicable"),
        };
        let verdict = report.applicability.clone();
        report = brute_force_solve(&inst, &bx, common.cap)?.report;
        report.applicability = format!("{verdict}; solved by brute force");
    }
    print_report(&report, common.json);
    Ok(report.exit_code())
}

fn cmd_symmetry(common: &Common) -> Result<i32> {
    let inst = load_instance(&common.instance)?;
    let group = load_group(common, &inst)?;
    let order = group.order(DEFAULT_ELEMENT_CAP).ok();
    let transitivity = transitivity_degree(&group)?;
    let homogeneity = homogeneity_degree(&group)?;
    let applicability = match check_applicability(&inst, &group, false) {
        Ok(a) => a.verdict(),
        Err(e) => format!("rejected: {e}"),
    };
    let gens: Vec<String> = group.generators().iter().map(ToString::to_string).collect();
    if common.json {
        let doc = json!({
            "generators": gens,
            "order": order,
            "transitivity": transitivity,
            "homogeneity": homogeneity,
            "applicability": applicability,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "generators: {}",
            if gens.is_empty() {
                "(none, trivial group)".to_string()
            } else {
                gens.join(" ")
            }
        );
        match order {
            Some(o) => println!("order: {o}"),
            None => println!("order: above {DEFAULT_ELEMENT_CAP}"),
        }
        println!("transitivity degree: {transitivity}");
        println!("homogeneity degree: {homogeneity}");
        println!("applicability: {applicability}");
    }
    Ok(0)
}

fn cmd_layers(common: &Common, from: i64, to: i64) -> Result<i32> {
    let inst = load_instance(&common.instance)?;
    let cprime = coprime_multiple(inst.c())?;
    let gamma = cprime.scale_of(inst.c());
    let transitive = cprime.is_all_ones();
    let n = inst.n();
    let mut rows = Vec::new();
    for k in from..=to {
        let k = BigInt::from(k);
        let t = layer_parameter(&cprime, &k);
        let utility = &gamma * Rational::from_integer(k.clone());
        let (center_pt, count) = if transitive {
            let m = center(n, &k);
            (
                Some(m.0.iter().map(ToString::to_string).collect::<Vec<_>>()),
                Some(neighbor_set(n, &k).len().to_string()),
            )
        } else {
            (None, None)
        };
        rows.push((k, t, utility, center_pt, count));
    }
    if common.json {
        let doc: Vec<_> = rows
            .iter()
            .map(|(k, t, u, m, c)| json!({"k": k.to_string(), "t": frac(t), "utility": frac(u), "center": m, "neighbors": c}))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(
                &json!({ "cprime": cprime.entries().iter().map(ToString::to_string).collect::<Vec<_>>(), "layers": doc })
            )?
        );
    } else {
        let cp: Vec<String> = cprime.entries().iter().map(ToString::to_string).collect();
        println!(
            "c' = ({}), layers per period = {}",
            cp.join(", "),
            cprime.squared_norm()
        );
        println!(
            "{:>6}  {:>10}  {:>10}  {:<24}  neighbors",
            "k", "t", "utility", "center"
        );
        for (k, t, u, m, c) in &rows {
            let m = m
                .as_ref()
                .map(|v| format!("({})", v.join(", ")))
                .unwrap_or_else(|| "-".into());
            println!(
                "{:>6}  {:>10}  {:>10}  {:<24}  {}",
                k,
                t.to_string(),
                u.to_string(),
                m,
                c.as_deref().unwrap_or("-")
            );
        }
    }
    Ok(0)
}

fn cmd_neighbors(common: &Common, k: i64, orbits: bool) -> Result<i32> {
    let inst = load_instance(&common.instance)?;
    if !coprime_multiple(inst.c())?.is_all_ones() {
        bail!("neighbors are defined only for c parallel to (1,...,1)");
    }
    let n = inst.n();
    let k = BigInt::from(k);
    let set = neighbor_set(n, &k);
    let cap = usize::try_from(common.cap).unwrap_or(usize::MAX);
    if set.len() > BigInt::from(cap) {
        bail!("{} neighbors exceed the cap {cap}", set.len());
    }
    let fmt = |p: &layersift::Point| {
        format!(
            "({})",
            p.0.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )
    };
    let listing: Vec<(String, bool)> = set
        .iter()
        .map(|p| (fmt(&p), inst.is_feasible_point(&p).unwrap_or(false)))
        .collect();
    let orbit_list = if orbits {
        let group = load_group(common, &inst)?;
        Some(neighbor_orbits(&group, n, &k, cap)?)
    } else {
        None
    };
    if common.json {
        let doc = json!({
            "k": k.to_string(),
            "d": set.d.to_string(),
            "r": set.r,
            "count": set.len().to_string(),
            "canonical": fmt(&canonical_neighbor(n, &k)),
            "neighbors": listing.iter().map(|(p, f)| json!({"point": p, "feasible": f})).collect::<Vec<_>>(),
            "orbits": orbit_list.as_ref().map(|o| o.iter().map(|x| json!({"representative": fmt(&x.representative), "size": x.size})).collect::<Vec<_>>()),
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "layer {k}: d = {}, r = {}, {} neighbors",
            set.d,
            set.r,
            set.len()
        );
        for (p, f) in &listing {
            println!("  {p}  {}", if *f { "feasible" } else { "infeasible" });
        }
        if let Some(orbit_list) = &orbit_list {
            println!("{} orbit(s)", orbit_list.len());
            for o in orbit_list {
                println!(
                    "  representative {}  size {}",
                    fmt(&o.representative),
                    o.size
                );
            }
        }
    }
    Ok(0)
}

fn cmd_check(common: &Common, bounds: Option<&str>, assume: bool) -> Result<i32> {
    let inst = load_instance(&common.instance)?;
    let group = load_group(common, &inst)?;
    let bx = parse_box(bounds, &inst)?;
    let cv = cross_validate(
        &inst,
        &group,
        &bx,
        common.cap,
        SiftOptions {
            assume_applicable: assume,
        },
    )?;
    let verdict = if cv.agree() { "AGREE" } else { "DISAGREE" };
    if common.json {
        let layers: Vec<_> = cv
            .layers
            .iter()
            .map(|l| json!({"k": l.k.to_string(), "center": l.center_feasible, "neighbor": l.neighbor_feasible, "brute": l.brute_feasible}))
            .collect();
        let doc = json!({
            "verdict": verdict,
            "sift": cv.sift.to_machine(),
            "oracle": cv.oracle.report.to_machine(),
            "layers": layers,
            "box_upper": bx.upper(),
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        match cv.sift.status.value() {
            Some(v) => println!("{verdict} value {v}"),
            None => println!(
                "{verdict} sift {} / oracle {}",
                cv.sift.status.name(),
                cv.oracle.report.status.name()
            ),
        }
        let upper: Vec<String> = bx.upper().iter().map(ToString::to_string).collect();
        println!(
            "box: 0 <= x <= ({}); optimality is certified relative to this box",
            upper.join(", ")
        );
        println!(
            "{:>6}  {:>8}  {:>8}  {:>8}",
            "k", "center", "neighbor", "brute"
        );
        for l in &cv.layers {
            println!(
                "{:>6}  {:>8}  {:>8}  {:>8}",
                l.k, l.center_feasible, l.neighbor_feasible, l.brute_feasible
            );
        }
    }
    Ok(if cv.agree() { 0 } else { 5 })
}

fn cmd_oracle(common: &Common, bounds: Option<&str>) -> Result<i32> {
    let inst = load_instance(&common.instance)?;
    let bx = parse_box(bounds, &inst)?;
    let result = brute_force_solve(&inst, &bx, common.cap)?;
    print_report(&result.report, common.json);
    if !common.json && result.optimal_points.len() > 1 {
        println!(
            "all maximizers: {}",
            result
                .optimal_points
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    Ok(result.report.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    match &cli.command {
        Command::Solve {
            common,
            fallback_oracle,
            assume_applicable,
            bounds,
        } => cmd_solve(
            common,
            *fallback_oracle,
            *assume_applicable,
            bounds.as_deref(),
        ),
        Command::Symmetry { common } => cmd_symmetry(common),
        Command::Layers { common, from, to } => cmd_layers(common, *from, *to),
        Command::Neighbors { common, k, orbits } => cmd_neighbors(common, *k, *orbits),
        Command::Check {
            common,
            bounds,
            assume_applicable,
        } => cmd_check(common, bounds.as_deref(), *assume_applicable),
        Command::Oracle { common, bounds } => cmd_oracle(common, bounds.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
