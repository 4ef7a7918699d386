//! stabhyp: exact computations on affine hyperplane arrangements over
//! cyclotomic fields.
//!
//! Exit codes: 0 success (and predicate true), 1 predicate false for
//! `closed`, `stable` and `axis-stable`, 2 invalid input with a diagnostic
//! naming line and column.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use stabhyp::classify::{
    classify, make_family, omega_prime_saturation, FamilyDescriptor, FamilyVariant, Verdict,
};
use stabhyp::convolve::{
    axis_closure, convolution, is_axis_stable, is_stable, is_v_closed, valid_directions,
    Closedness, ClosureOutcome, ClosureReport, DirectionFamily, Stability,
};
use stabhyp::cyclo::{CycField, CycScalar};
use stabhyp::geom::{Flat, Subspace, Vector};
use stabhyp::oracle::{
    brute_force_poset_bounded, enumerate_axis_stable, orbit_closure, OrbitOutcome, PoolSpec,
};
use stabhyp::pfaffian::Violation;
use stabhyp::poset::{build_poset, Arrangement, IntersectionPoset};
use stabhyp::structure::{decompose, reduce_fully, specialize, AffineMap, Reduction};
use stabhyp::text;
use std::io::Read;
use std::process::ExitCode;

const DEFAULT_CLOSURE_BUDGET: usize = 200;

#[derive(Parser)]
#[command(name = "stabhyp", version, about = "exact hyperplane arrangement toolkit")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the intersection poset stratified by codimension
    Poset(FileArg),
    /// Apply the convolution by a direction and print the new arrangement
    Convolve(VectorFileArgs),
    /// Test whether the arrangement is closed under a direction (exit 1 if not)
    Closed(VectorFileArgs),
    /// Print the exact set of directions keeping the arrangement closed
    ValidDirs(FileArg),
    /// Test basis-existential stability (exit 1 if unstable)
    Stable(FileArg),
    /// Test stability in the given coordinates (exit 1 if unstable)
    AxisStable(FileArg),
    /// Iterate coordinate convolutions to a fixpoint or a budget
    Closure(ClosureArgs),
    /// Split into independent coordinate blocks
    Decompose(FileArg),
    /// Merge collinear coordinate pairs until none remains
    Reduce(FileArg),
    /// Restrict to a coordinate section x_{m+1..n} = p
    Specialize(SpecializeArgs),
    /// Match the arrangement against the stable normal-form families
    Classify(FileArg),
    /// Emit a normal-form family arrangement
    Family(FamilyArgs),
    /// Check integrability of a logarithmic connection
    PfaffCheck(PfaffArgs),
    /// Brute-force verifiers and enumeration harnesses
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct FileArg {
    /// Arrangement file (`-` for standard input)
    file: String,
}

#[derive(Args)]
struct VectorFileArgs {
    /// Direction vector as comma-separated scalar literals
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    file: String,
}

#[derive(Args)]
struct ClosureArgs {
    /// Hyperplane budget; default from STABHYP_BUDGET or 200
    #[arg(long)]
    budget: Option<usize>,
    file: String,
}

#[derive(Args)]
struct SpecializeArgs {
    /// Assignments for the trailing coordinates, e.g. "x3=0,x4=1"
    #[arg(long, allow_hyphen_values = true)]
    fix: String,
    file: String,
}

#[derive(Args)]
struct FamilyArgs {
    /// Ambient dimension of the family
    #[arg(long)]
    n: usize,
    /// Order of the root-of-unity group
    #[arg(long)]
    m: u64,
    /// Number of alpha parameters (defaults to the length of --alphas)
    #[arg(long)]
    r: Option<usize>,
    /// Alpha parameters as comma-separated scalar literals; defaults to 1..r
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    /// For n = 2: slant subset of the root group, defaults to "1"
    #[arg(long, allow_hyphen_values = true)]
    omega_prime: Option<String>,
    /// Saturate omega' multiplicatively and use the closure
    #[arg(long)]
    saturate: bool,
    /// Emit the slanted members only (requires m = 1 and n > 3)
    #[arg(long)]
    slanted_only: bool,
    /// Field modulus M (defaults to m)
    #[arg(long)]
    field: Option<u64>,
}

#[derive(Args)]
struct PfaffArgs {
    /// Residue matrices file
    #[arg(long)]
    residues: String,
    file: String,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Enumerate subsets of a pool, filter, classify each survivor
    Census(CensusArgs),
    /// Close a point under z -> a1 z and z -> a2 z + a3
    Orbit(OrbitArgs),
    /// All-subsets intersection poset (reference implementation)
    BruteForcePoset(BruteForceArgs),
}

#[derive(Args)]
struct CensusArgs {
    /// Arrangement file holding the candidate pool
    #[arg(long)]
    pool: String,
    /// Comma list among: axis-stable, indecomposable, reduced, nontrivial
    #[arg(long, default_value = "axis-stable,indecomposable,reduced,nontrivial")]
    filters: String,
    #[arg(long, default_value_t = 0)]
    min_size: usize,
    #[arg(long)]
    max_size: Option<usize>,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, allow_hyphen_values = true)]
    a1: String,
    #[arg(long, allow_hyphen_values = true)]
    a2: String,
    #[arg(long, allow_hyphen_values = true)]
    a3: String,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, default_value_t = 512)]
    budget: usize,
    #[arg(long, default_value_t = 1)]
    field: u64,
}

#[derive(Args)]
struct BruteForceArgs {
    /// Subset-enumeration bound on the hyperplane count
    #[arg(long, default_value_t = 12)]
    bound: usize,
    file: String,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<text::ParseError> for Failure {
    fn from(e: text::ParseError) -> Failure {
        Failure::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("reading {path}: {e}")))
    }
}

fn load_arrangement(path: &str) -> Result<Arrangement, Failure> {
    let textual = read_input(path)?;
    let (arr, warnings) = text::parse_arrangement(&textual)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(arr)
}

fn parse_direction(spec: &str, arr: &Arrangement) -> Result<Vector, Failure> {
    text::parse_vector(spec, arr.field(), arr.dim()).map_err(Failure::from)
}

fn closure_budget(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var("STABHYP_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_CLOSURE_BUDGET)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Poset(args) => {
            let arr = load_arrangement(&args.file)?;
            let poset = build_poset(&arr);
            emit(cli.json, poset_json(&arr, &poset), || {
                render_poset(&arr, &poset)
            });
            Ok(0)
        }
        Command::Convolve(args) => {
            let arr = load_arrangement(&args.file)?;
            let v = parse_direction(&args.v, &arr)?;
            let out = convolution(&arr, &v);
            emit(cli.json, arrangement_json(&out), || {
                text::render_arrangement(&out)
            });
            Ok(0)
        }
        Command::Closed(args) => {
            let arr = load_arrangement(&args.file)?;
            let v = parse_direction(&args.v, &arr)?;
            match is_v_closed(&arr, &v) {
                Closedness::Closed => {
                    emit(cli.json, json!({"closed": true}), || "closed\n".to_string());
                    Ok(0)
                }
                Closedness::Open { witness } => {
                    emit(
                        cli.json,
                        json!({"closed": false, "witness": flat_json(arr.field(), &witness)}),
                        || {
                            format!(
                                "not closed; witness flat:\n{}",
                                render_flat(arr.field(), &witness)
                            )
                        },
                    );
                    Ok(1)
                }
            }
        }
        Command::ValidDirs(args) => {
            let arr = load_arrangement(&args.file)?;
            let family = valid_directions(&arr);
            emit(cli.json, direction_family_json(arr.field(), &family), || {
                render_direction_family(arr.field(), &family)
            });
            Ok(0)
        }
        Command::Stable(args) => {
            let arr = load_arrangement(&args.file)?;
            match is_stable(&arr) {
                Stability::Stable { witness } => {
                    emit(
                        cli.json,
                        json!({
                            "stable": true,
                            "witness": witness
                                .iter()
                                .map(|v| text::render_vector(arr.field(), v))
                                .collect::<Vec<_>>(),
                        }),
                        || {
                            let mut out = String::from("stable; witness basis:\n");
                            for v in &witness {
                                out.push_str(&format!(
                                    "  {}\n",
                                    text::render_vector(arr.field(), v)
                                ));
                            }
                            out
                        },
                    );
                    Ok(0)
                }
                Stability::Unstable { span_dim } => {
                    emit(cli.json, json!({"stable": false, "span": span_dim}), || {
                        format!("not stable; valid directions span dimension {span_dim}\n")
                    });
                    Ok(1)
                }
            }
        }
        Command::AxisStable(args) => {
            let arr = load_arrangement(&args.file)?;
            if is_axis_stable(&arr) {
                emit(cli.json, json!({"axis_stable": true}), || {
                    "axis-stable\n".to_string()
                });
                Ok(0)
            } else {
                emit(cli.json, json!({"axis_stable": false}), || {
                    "not axis-stable\n".to_string()
                });
                Ok(1)
            }
        }
        Command::Closure(args) => {
            let arr = load_arrangement(&args.file)?;
            let budget = closure_budget(args.budget);
            if budget < arr.len() {
                return Err(Failure::input(format!(
                    "budget {budget} is below the arrangement size {}",
                    arr.len()
                )));
            }
            let report = axis_closure(&arr, budget);
            emit(cli.json, closure_json(&report), || render_closure(&report));
            Ok(0)
        }
        Command::Decompose(args) => {
            let arr = load_arrangement(&args.file)?;
            let dec = decompose(&arr);
            emit(
                cli.json,
                json!({
                    "blocks": dec.blocks.iter().map(|b| coord_names(b)).collect::<Vec<_>>(),
                    "factors": dec.factors.iter().map(arrangement_json).collect::<Vec<_>>(),
                }),
                || {
                    let mut out = String::new();
                    for (block, factor) in dec.blocks.iter().zip(&dec.factors) {
                        out.push_str(&format!("block {}\n", coord_names(block).join(",")));
                        for line in text::render_arrangement(factor).lines() {
                            out.push_str(&format!("  {line}\n"));
                        }
                    }
                    out
                },
            );
            Ok(0)
        }
        Command::Reduce(args) => {
            let arr = load_arrangement(&args.file)?;
            let (reduced, steps) = reduce_fully(&arr);
            emit(
                cli.json,
                json!({
                    "arrangement": arrangement_json(&reduced),
                    "steps": steps
                        .iter()
                        .map(|s| reduction_json(arr.field(), s))
                        .collect::<Vec<_>>(),
                }),
                || {
                    let mut out = String::new();
                    for s in &steps {
                        out.push_str(&render_reduction(arr.field(), s));
                    }
                    out.push_str(&text::render_arrangement(&reduced));
                    out
                },
            );
            Ok(0)
        }
        Command::Specialize(args) => {
            let arr = load_arrangement(&args.file)?;
            let (keep, point) = parse_fix(&args.fix, &arr)?;
            let out = specialize(&arr, keep, &point);
            emit(cli.json, arrangement_json(&out), || {
                text::render_arrangement(&out)
            });
            Ok(0)
        }
        Command::Classify(args) => {
            let arr = load_arrangement(&args.file)?;
            let report = classify(&arr);
            emit(cli.json, classification_json(arr.field(), &report), || {
                render_classification(arr.field(), &report)
            });
            Ok(0)
        }
        Command::Family(args) => {
            let (field, descriptor) = family_from_args(args)?;
            let arr =
                make_family(&field, &descriptor).map_err(|e| Failure::input(e.to_string()))?;
            emit(cli.json, arrangement_json(&arr), || {
                text::render_arrangement(&arr)
            });
            Ok(0)
        }
        Command::PfaffCheck(args) => {
            let arr = load_arrangement(&args.file)?;
            let residue_text = read_input(&args.residues)?;
            let conn = text::parse_residues(&residue_text, &arr)?;
            let violations = conn.check_integrability();
            let poset = build_poset(&arr);
            emit(
                cli.json,
                json!({
                    "integrable": violations.is_empty(),
                    "violations": violations
                        .iter()
                        .map(|v| violation_json(arr.field(), &poset, v))
                        .collect::<Vec<_>>(),
                }),
                || render_violations(arr.field(), &poset, &violations),
            );
            Ok(0)
        }
        Command::Oracle(OracleCommand::Census(args)) => {
            let pool = load_arrangement(&args.pool)?;
            let mut spec = PoolSpec::new(pool);
            spec.min_size = args.min_size;
            if let Some(max) = args.max_size {
                spec.max_size = max;
            }
            apply_filters(&mut spec, &args.filters)?;
            let entries =
                enumerate_axis_stable(&spec).map_err(|e| Failure::input(e.to_string()))?;
            emit(
                cli.json,
                Value::Array(
                    entries
                        .iter()
                        .map(|e| {
                            json!({
                                "arrangement": arrangement_json(&e.arrangement),
                                "report": classification_json(e.arrangement.field(), &e.report),
                            })
                        })
                        .collect(),
                ),
                || {
                    let mut out = format!("{} arrangements\n", entries.len());
                    for e in &entries {
                        let members: Vec<String> = e
                            .arrangement
                            .hyperplanes()
                            .iter()
                            .map(|h| text::render_hyperplane(e.arrangement.field(), h))
                            .collect();
                        out.push_str(&format!(
                            "[{}] -> {}\n",
                            members.join("; "),
                            summarize_verdicts(&e.report)
                        ));
                    }
                    out
                },
            );
            Ok(0)
        }
        Command::Oracle(OracleCommand::Orbit(args)) => {
            let field = CycField::new(args.field);
            let a1 = text::parse_scalar(&args.a1, &field)?;
            let a2 = text::parse_scalar(&args.a2, &field)?;
            let a3 = text::parse_scalar(&args.a3, &field)?;
            let z = text::parse_scalar(&args.z, &field)?;
            let outcome = orbit_closure(&field, &a1, &a2, &a3, &z, args.budget)
                .map_err(|e| Failure::input(e.to_string()))?;
            emit(cli.json, orbit_json(&field, &outcome), || {
                render_orbit(&field, &outcome)
            });
            Ok(0)
        }
        Command::Oracle(OracleCommand::BruteForcePoset(args)) => {
            let arr = load_arrangement(&args.file)?;
            let poset = brute_force_poset_bounded(&arr, args.bound)
                .map_err(|e| Failure::input(e.to_string()))?;
            emit(cli.json, poset_json(&arr, &poset), || {
                render_poset(&arr, &poset)
            });
            Ok(0)
        }
    }
}

fn emit(json: bool, value: Value, text: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        print!("{}", text());
    }
}

fn coord_names(block: &[usize]) -> Vec<String> {
    block.iter().map(|&i| format!("x{}", i + 1)).collect()
}

fn parse_fix(fix: &str, arr: &Arrangement) -> Result<(usize, Vec<CycScalar>), Failure> {
    let n = arr.dim();
    let field = arr.field();
    let mut assigned: Vec<Option<CycScalar>> = vec![None; n];
    for piece in fix.split(',') {
        let trimmed = piece.trim();
        let (var, value) = trimmed.split_once('=').ok_or_else(|| {
            Failure::input(format!(
                "expected x<k>=<scalar> in --fix, found `{trimmed}`"
            ))
        })?;
        let var = var.trim();
        let idx: usize = var
            .strip_prefix('x')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Failure::input(format!("bad coordinate `{var}` in --fix")))?;
        if idx == 0 || idx > n {
            return Err(Failure::input(format!("coordinate {var} outside x1..x{n}")));
        }
        let scalar = text::parse_scalar(value.trim(), field)?;
        assigned[idx - 1] = Some(scalar);
    }
    let keep = assigned
        .iter()
        .position(|a| a.is_some())
        .ok_or_else(|| Failure::input("--fix assigns no coordinates"))?;
    if keep == 0 {
        return Err(Failure::input("--fix must keep at least x1 free"));
    }
    let mut point = Vec::with_capacity(n - keep);
    for (k, slot) in assigned.iter().enumerate() {
        match (k < keep, slot) {
            (true, None) => {}
            (false, Some(v)) => point.push(v.clone()),
            (true, Some(_)) => unreachable!("keep is the first assigned index"),
            (false, None) => {
                return Err(Failure::input(format!(
                    "--fix must assign a contiguous tail: x{} is missing",
                    k + 1
                )))
            }
        }
    }
    Ok((keep, point))
}

fn family_from_args(args: &FamilyArgs) -> Result<(CycField, FamilyDescriptor), Failure> {
    let modulus = args.field.unwrap_or(args.m.max(1));
    let field = CycField::new(modulus);
    let alphas: Vec<CycScalar> = match &args.alphas {
        Some(spec) => spec
            .split(',')
            .map(|p| text::parse_scalar(p.trim(), &field))
            .collect::<Result<_, _>>()?,
        None => {
            let r = args.r.unwrap_or(0);
            (1..=r as i64).map(|k| field.from_i64(k)).collect()
        }
    };
    if let Some(r) = args.r {
        if r != alphas.len() {
            return Err(Failure::input(format!(
                "--r {} disagrees with {} alpha values",
                r,
                alphas.len()
            )));
        }
    }
    let omega_prime = if args.n == 2 && !args.slanted_only {
        let base: Vec<CycScalar> = match &args.omega_prime {
            Some(spec) => spec
                .split(',')
                .map(|p| text::parse_scalar(p.trim(), &field))
                .collect::<Result<_, _>>()?,
            None => vec![field.one()],
        };
        let set = if args.saturate {
            omega_prime_saturation(&field, &base).map_err(|e| Failure::input(e.to_string()))?
        } else {
            let mut s = base;
            s.sort();
            s.dedup();
            s
        };
        Some(set)
    } else {
        None
    };
    let descriptor = FamilyDescriptor {
        dim: args.n,
        order: args.m,
        alphas,
        omega_prime,
        variant: if args.slanted_only {
            FamilyVariant::SlantedOnly
        } else {
            FamilyVariant::Full
        },
    };
    Ok((field, descriptor))
}

fn apply_filters(spec: &mut PoolSpec, filters: &str) -> Result<(), Failure> {
    spec.require_axis_stable = false;
    spec.require_indecomposable = false;
    spec.require_reduced = false;
    spec.require_nontrivial = false;
    for name in filters.split(',') {
        match name.trim() {
            "" | "none" => {}
            "axis-stable" => spec.require_axis_stable = true,
            "indecomposable" => spec.require_indecomposable = true,
            "reduced" => spec.require_reduced = true,
            "nontrivial" => spec.require_nontrivial = true,
            other => {
                return Err(Failure::input(format!(
                    "unknown filter `{other}` (try axis-stable, indecomposable, reduced, nontrivial)"
                )))
            }
        }
    }
    Ok(())
}

fn render_flat(field: &CycField, flat: &Flat) -> String {
    if flat.is_whole() {
        return format!("  whole space C^{}\n", flat.ambient());
    }
    let mut out = String::new();
    for row in flat.rows() {
        let n = flat.ambient();
        let mut terms = String::new();
        for (i, c) in row[..n].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let lit = field.render(c);
            let (neg, abs) = match lit.strip_prefix('-') {
                Some(rest) if !lit.starts_with("-(") => (true, rest.to_string()),
                _ => (false, lit),
            };
            if terms.is_empty() {
                if neg {
                    terms.push('-');
                }
            } else {
                terms.push_str(if neg { " - " } else { " + " });
            }
            if abs == "1" {
                terms.push_str(&format!("x{}", i + 1));
            } else {
                terms.push_str(&format!("{}*x{}", abs, i + 1));
            }
        }
        out.push_str(&format!("  {} = {}\n", terms, field.render(&row[n])));
    }
    out
}

fn flat_json(field: &CycField, flat: &Flat) -> Value {
    json!({
        "codim": flat.codim(),
        "rows": flat
            .rows()
            .iter()
            .map(|row| row.iter().map(|c| field.render(c)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn render_poset(arr: &Arrangement, poset: &IntersectionPoset) -> String {
    let field = arr.field();
    let mut out = format!(
        "arrangement: {} hyperplanes in C^{} over Q(zeta_{})\n",
        arr.len(),
        arr.dim(),
        field.modulus()
    );
    for k in 0..=poset.max_codim() {
        let level = poset.level(k);
        if level.is_empty() && k > 0 {
            continue;
        }
        out.push_str(&format!("codim {}: {} flat(s)\n", k, level.len()));
        for flat in level {
            let through = poset.through(flat).expect("poset flat");
            let list: Vec<String> = through.iter().map(|i| format!("{}", i + 1)).collect();
            out.push_str(&render_flat(field, flat));
            if !list.is_empty() {
                out.push_str(&format!("    through hyperplanes: {}\n", list.join(",")));
            }
        }
    }
    out
}

fn poset_json(arr: &Arrangement, poset: &IntersectionPoset) -> Value {
    let field = arr.field();
    let mut levels = Vec::new();
    for k in 0..=poset.max_codim() {
        let flats: Vec<Value> = poset
            .level(k)
            .iter()
            .map(|flat| {
                let mut m = Map::new();
                m.insert("flat".into(), flat_json(field, flat));
                m.insert(
                    "through".into(),
                    json!(poset
                        .through(flat)
                        .expect("poset flat")
                        .iter()
                        .map(|i| i + 1)
                        .collect::<Vec<_>>()),
                );
                Value::Object(m)
            })
            .collect();
        levels.push(Value::Array(flats));
    }
    json!({
        "dim": arr.dim(),
        "field": field.modulus(),
        "hyperplanes": arr
            .hyperplanes()
            .iter()
            .map(|h| text::render_hyperplane(field, h))
            .collect::<Vec<_>>(),
        "levels": levels,
    })
}

fn arrangement_json(arr: &Arrangement) -> Value {
    let field = arr.field();
    json!({
        "field": field.modulus(),
        "dim": arr.dim(),
        "hyperplanes": arr
            .hyperplanes()
            .iter()
            .map(|h| text::render_hyperplane(field, h))
            .collect::<Vec<_>>(),
    })
}

fn render_subspace(field: &CycField, s: &Subspace) -> String {
    let rows: Vec<String> = s
        .basis()
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| field.render(c))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("span{{ {} }}", rows.join(" ; "))
}

fn render_direction_family(field: &CycField, family: &DirectionFamily) -> String {
    if family.members().is_empty() {
        return "no valid directions\n".to_string();
    }
    let mut out = format!("{} subspace(s)\n", family.members().len());
    for member in family.members() {
        out.push_str(&format!(
            "  dim {}: {}\n",
            member.dim(),
            render_subspace(field, member)
        ));
    }
    out
}

fn direction_family_json(field: &CycField, family: &DirectionFamily) -> Value {
    Value::Array(
        family
            .members()
            .iter()
            .map(|member| {
                json!({
                    "dim": member.dim(),
                    "basis": member
                        .basis()
                        .iter()
                        .map(|row| row.iter().map(|c| field.render(c)).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn render_closure(report: &ClosureReport) -> String {
    let growth: Vec<String> = report.growth.iter().map(|g| g.to_string()).collect();
    match &report.outcome {
        ClosureOutcome::Fixpoint(arr) => format!(
            "fixpoint after {} sweep(s); growth: {}\n{}",
            report.rounds,
            growth.join(" -> "),
            text::render_arrangement(arr)
        ),
        ClosureOutcome::Diverged => format!(
            "diverged after {} sweep(s); growth: {}\n",
            report.rounds,
            growth.join(" -> ")
        ),
    }
}

fn closure_json(report: &ClosureReport) -> Value {
    match &report.outcome {
        ClosureOutcome::Fixpoint(arr) => json!({
            "outcome": "fixpoint",
            "rounds": report.rounds,
            "growth": report.growth,
            "arrangement": arrangement_json(arr),
        }),
        ClosureOutcome::Diverged => json!({
            "outcome": "diverged",
            "rounds": report.rounds,
            "growth": report.growth,
        }),
    }
}

fn render_reduction(field: &CycField, r: &Reduction) -> String {
    format!(
        "merge x{} and x{} along ({}, {})\n",
        r.i + 1,
        r.j + 1,
        field.render(&r.a),
        field.render(&r.b)
    )
}

fn reduction_json(field: &CycField, r: &Reduction) -> Value {
    json!({
        "i": r.i + 1,
        "j": r.j + 1,
        "a": field.render(&r.a),
        "b": field.render(&r.b),
    })
}

fn affine_json(field: &CycField, map: &AffineMap) -> Value {
    json!({
        "matrix": map
            .matrix
            .iter()
            .map(|row| row.iter().map(|c| field.render(c)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "shift": map.shift.iter().map(|c| field.render(c)).collect::<Vec<_>>(),
    })
}

fn descriptor_json(field: &CycField, d: &FamilyDescriptor) -> Value {
    json!({
        "n": d.dim,
        "m": d.order,
        "r": d.r(),
        "alphas": d.alphas.iter().map(|a| field.render(a)).collect::<Vec<_>>(),
        "omega_prime": d
            .omega_prime
            .as_ref()
            .map(|s| s.iter().map(|w| field.render(w)).collect::<Vec<_>>()),
        "variant": match d.variant {
            FamilyVariant::Full => "full",
            FamilyVariant::SlantedOnly => "slanted-only",
        },
    })
}

fn render_descriptor(field: &CycField, d: &FamilyDescriptor) -> String {
    let alphas: Vec<String> = d.alphas.iter().map(|a| field.render(a)).collect();
    let mut out = format!(
        "family n={} m={} r={} alphas=[{}]",
        d.dim,
        d.order,
        d.r(),
        alphas.join(", ")
    );
    if let Some(op) = &d.omega_prime {
        let set: Vec<String> = op.iter().map(|w| field.render(w)).collect();
        out.push_str(&format!(" omega'=[{}]", set.join(", ")));
    }
    if d.variant == FamilyVariant::SlantedOnly {
        out.push_str(" (slanted members only)");
    }
    out
}

fn summarize_verdicts(report: &stabhyp::classify::ClassificationReport) -> String {
    report
        .factors
        .iter()
        .map(|f| match &f.verdict {
            Verdict::Family { descriptor, .. } => format!(
                "family(n={}, m={}, r={})",
                descriptor.dim,
                descriptor.order,
                descriptor.r()
            ),
            Verdict::Trivial => "trivial".to_string(),
            Verdict::NotStable { span_dim } => format!("not-stable(span={span_dim})"),
            Verdict::Unrecognized { .. } => "unrecognized".to_string(),
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn render_classification(
    field: &CycField,
    report: &stabhyp::classify::ClassificationReport,
) -> String {
    let mut out = String::new();
    if report.coordinates.is_identity(field) {
        out.push_str("coordinates: identity\n");
    } else {
        out.push_str("coordinates: x = M y with M rows\n");
        for row in &report.coordinates.matrix {
            let rendered: Vec<String> = row.iter().map(|c| field.render(c)).collect();
            out.push_str(&format!("  [{}]\n", rendered.join(", ")));
        }
    }
    for factor in &report.factors {
        out.push_str(&format!(
            "block {}:\n",
            coord_names(&factor.block).join(",")
        ));
        for r in &factor.reductions {
            out.push_str(&format!("  {}", render_reduction(field, r)));
        }
        match &factor.verdict {
            Verdict::Family {
                descriptor,
                transform,
            } => {
                out.push_str(&format!("  {}\n", render_descriptor(field, descriptor)));
                let diag: Vec<String> = (0..transform.dim())
                    .map(|k| {
                        format!(
                            "y{} = {}*x{} + {}",
                            k + 1,
                            field.render(&transform.matrix[k][k]),
                            k + 1,
                            field.render(&transform.shift[k])
                        )
                    })
                    .collect();
                out.push_str(&format!("  normal-form coordinates: {}\n", diag.join("; ")));
            }
            Verdict::Trivial => out.push_str("  trivial (at most one codim-2 flat)\n"),
            Verdict::NotStable { span_dim } => out.push_str(&format!(
                "  not stable (valid directions span dimension {span_dim})\n"
            )),
            Verdict::Unrecognized { reason } => {
                out.push_str(&format!("  unrecognized: {reason}\n"))
            }
        }
    }
    out
}

fn classification_json(
    field: &CycField,
    report: &stabhyp::classify::ClassificationReport,
) -> Value {
    json!({
        "coordinates": if report.coordinates.is_identity(field) {
            Value::Null
        } else {
            affine_json(field, &report.coordinates)
        },
        "factors": report
            .factors
            .iter()
            .map(|f| {
                json!({
                    "block": coord_names(&f.block),
                    "reductions": f
                        .reductions
                        .iter()
                        .map(|r| reduction_json(field, r))
                        .collect::<Vec<_>>(),
                    "verdict": match &f.verdict {
                        Verdict::Family { descriptor, transform } => json!({
                            "kind": "family",
                            "descriptor": descriptor_json(field, descriptor),
                            "transform": affine_json(field, transform),
                        }),
                        Verdict::Trivial => json!({"kind": "trivial"}),
                        Verdict::NotStable { span_dim } => json!({
                            "kind": "not-stable",
                            "span": span_dim,
                        }),
                        Verdict::Unrecognized { reason } => json!({
                            "kind": "unrecognized",
                            "reason": reason,
                        }),
                    },
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn render_violations(
    field: &CycField,
    poset: &IntersectionPoset,
    violations: &[Violation],
) -> String {
    if violations.is_empty() {
        return "integrable\n".to_string();
    }
    let mut out = format!("{} violation(s)\n", violations.len());
    for v in violations {
        let flat = &poset.level(2)[v.flat_index];
        let list: Vec<String> = v.hyperplanes.iter().map(|h| format!("{}", h + 1)).collect();
        out.push_str(&format!(
            "at flat #{} (hyperplanes {}):\n{}",
            v.flat_index + 1,
            list.join(","),
            render_flat(field, flat)
        ));
    }
    out
}

fn violation_json(field: &CycField, poset: &IntersectionPoset, v: &Violation) -> Value {
    json!({
        "flat": flat_json(field, &poset.level(2)[v.flat_index]),
        "hyperplanes": v.hyperplanes.iter().map(|h| h + 1).collect::<Vec<_>>(),
    })
}

fn render_orbit(field: &CycField, outcome: &OrbitOutcome) -> String {
    match outcome {
        OrbitOutcome::Finite {
            closure,
            order,
            alpha3_zero,
        } => {
            let values: Vec<String> = closure.iter().map(|v| field.render(v)).collect();
            let mut out = format!(
                "finite orbit with {} element(s): {}\n",
                closure.len(),
                values.join(", ")
            );
            match order {
                Some(m) => out.push_str(&format!("least common multiplier order m = {m}\n")),
                None => out.push_str("multipliers are not both roots of unity\n"),
            }
            out.push_str(&format!("a3 = 0: {alpha3_zero}\n"));
            out
        }
        OrbitOutcome::BudgetExceeded { reached } => {
            format!("budget exceeded: orbit reached {reached} elements\n")
        }
    }
}

fn orbit_json(field: &CycField, outcome: &OrbitOutcome) -> Value {
    match outcome {
        OrbitOutcome::Finite {
            closure,
            order,
            alpha3_zero,
        } => json!({
            "outcome": "finite",
            "closure": closure.iter().map(|v| field.render(v)).collect::<Vec<_>>(),
            "order": order,
            "alpha3_zero": alpha3_zero,
        }),
        OrbitOutcome::BudgetExceeded { reached } => json!({
            "outcome": "budget-exceeded",
            "reached": reached,
        }),
    }
}
