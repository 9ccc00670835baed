//! `fatlab`: batch verification of the claim registry, circle enumeration,
//! the SU(2) subgroup table, Pontryagin numbers and the triple classification.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fatlab_core::liealg::{presets, PresetStore, DEFAULT_SEED};
use fatlab_core::registry::{self, ClaimResult, ClaimStatus, Registry, RunConfig};
use fatlab_core::spin::{self, CirclePattern, Su2Rep};
use fatlab_core::topology;

const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "fatlab", version, about = "Exact checks for b/f invariants, Spin(8) lifts and free actions")]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Overrides the per-claim sample budget.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory of preset JSON files; builders are used for ids it lacks.
    #[arg(long, global = true, env = "FATLAB_PRESETS")]
    presets: Option<PathBuf>,
    /// Append wall-clock timings to text output.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one registered claim, or `all`.
    Verify {
        id: Option<String>,
        /// List claim ids instead of running them.
        #[arg(long)]
        list: bool,
    },
    /// Enumerate primitive circle patterns with max |n_i| <= bound.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// Also list non-free patterns.
        #[arg(long)]
        all: bool,
    },
    /// SU(2) and SO(3) subgroups of Spin(8) by partition of 8.
    Table2,
    /// First Pontryagin number of a free circle quotient.
    P1 {
        /// Comma-separated n1,n2,n3,n4.
        #[arg(long, value_parser = parse_pattern, allow_hyphen_values = true)]
        pattern: [i64; 4],
        /// Quotient of S^6 x S^7 instead of S^7 x S^7.
        #[arg(long)]
        sphere6: bool,
    },
    /// Replay the case analysis of triples with f = 1.
    Classify,
    /// Write every builder-backed preset as JSON.
    ExportPresets {
        #[arg(long, default_value = "presets")]
        out: PathBuf,
    },
}

fn parse_pattern(s: &str) -> Result<[i64; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected 4 comma-separated integers, got {}", parts.len()));
    }
    let mut n = [0i64; 4];
    for (slot, p) in n.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("not an integer: {p:?}"))?;
    }
    Ok(n)
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<registry::RegistryError> for Failure {
    fn from(e: registry::RegistryError) -> Self {
        match e {
            registry::RegistryError::UnknownClaim(_) => Failure::Usage(e.to_string()),
            other => Failure::Failed(other.to_string()),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn tuple(xs: &[i64]) -> String {
    format!("({})", join(xs, ","))
}

fn store(cli: &Cli) -> Result<PresetStore, Failure> {
    match &cli.presets {
        Some(dir) => PresetStore::from_dir(dir).map_err(|e| Failure::Usage(format!("presets: {e}"))),
        None => Ok(PresetStore::builtin()),
    }
}

fn config(cli: &Cli) -> RunConfig {
    RunConfig {
        seed: cli.seed,
        budget: cli.budget.map(|b| b as usize),
    }
}

fn expected_text(e: &registry::Expected) -> String {
    serde_json::to_string(e).unwrap_or_default()
}

fn render_verify(cli: &Cli, results: &[ClaimResult]) -> String {
    let count = |s: ClaimStatus| results.iter().filter(|r| r.status == s).count();
    let (pass, fail, lower, constant) = (
        count(ClaimStatus::Pass),
        count(ClaimStatus::Fail),
        count(ClaimStatus::LowerBoundOnly),
        count(ClaimStatus::Constant),
    );
    let mut out = String::new();
    match cli.format {
        Format::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "seed": cli.seed,
                "results": results,
                "summary": {"pass": pass, "fail": fail, "lower_bound_only": lower, "constant": constant},
            });
            out = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        }
        Format::Csv => {
            out.push_str("id,status,value,expected,detail\n");
            for r in results {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.id,
                    r.status.label(),
                    csv_field(&r.value.to_string()),
                    csv_field(&expected_text(&r.expected)),
                    csv_field(&r.detail)
                );
            }
        }
        Format::Text => {
            let w = results.iter().map(|r| r.id.len()).max().unwrap_or(2);
            for r in results {
                let _ = write!(out, "{:<w$}  {:<11}  {:<8}  {}", r.id, r.status.label(), r.value.to_string(), r.detail);
                if cli.timings {
                    let _ = write!(out, "  [{:.1} ms]", r.elapsed_ms);
                }
                out.push('\n');
            }
            let _ = writeln!(
                out,
                "{pass} passed, {fail} failed, {lower} lower-bound only, {constant} constants"
            );
        }
    }
    out
}

fn cmd_verify(cli: &Cli, id: Option<&str>, list: bool) -> Result<(String, bool), Failure> {
    let reg = Registry::builtin();
    if list {
        return Ok((reg.ids().map(|s| format!("{s}\n")).collect(), true));
    }
    let id = id.ok_or_else(|| Failure::Usage("verify needs a claim id or `all`".into()))?;
    let ids: Vec<&str> = if id == "all" { reg.ids().collect() } else { vec![id] };
    let store = store(cli)?;
    let results = registry::run_claims(&reg, &store, &ids, &config(cli))?;
    let ok = results.iter().all(|r| r.status != ClaimStatus::Fail);
    Ok((render_verify(cli, &results), ok))
}

fn cmd_enumerate(cli: &Cli, bound: u32, all: bool) -> String {
    let e = spin::enumerate_circles(bound, all);
    let header = "n1,n2,n3,n4,l1,l2,l3,l4,r1,r2,r3,r4,free,p1";
    let mut out = String::new();
    match cli.format {
        Format::Json => {
            let mut p1s: Vec<i64> = e.free_patterns().filter_map(|p| p.p1).collect();
            p1s.sort_unstable();
            p1s.dedup();
            let rows: Vec<_> = e
                .patterns
                .iter()
                .map(|p| json!({"n": p.pattern.n, "l": p.pattern.l, "r": p.pattern.r, "free": p.free, "p1": p.p1}))
                .collect();
            let doc = json!({
                "schema": SCHEMA,
                "bound": bound,
                "patterns": rows,
                "free_count": e.free_patterns().count(),
                "distinct_p1": p1s,
                "classes": e.classes,
            });
            out = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        }
        Format::Csv | Format::Text => {
            out.push_str(header);
            out.push('\n');
            for p in &e.patterns {
                let c = &p.pattern;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    join(&c.n, ","),
                    join(&c.l, ","),
                    join(&c.r, ","),
                    p.free,
                    p.p1.map(|v| v.to_string()).unwrap_or_default()
                );
            }
        }
    }
    out
}

fn witness_text(r: &Su2Rep) -> String {
    match r.gcd_witness {
        None => "gcd = 1 always".into(),
        Some(w) => match w.gcd {
            Some(g) => format!("gcd(l{},r{}) = {g}", w.i, w.j),
            None => format!("gcd(l{},r{}) undef.", w.i, w.j),
        },
    }
}

fn cmd_table2(cli: &Cli) -> String {
    let rows = spin::table2();
    let mut out = String::new();
    match cli.format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "partition": r.partition,
                        "torus": r.torus_weights,
                        "a": r.lift_a,
                        "b": r.lift_b,
                        "gcd_witness": r.gcd_witness,
                        "witness": witness_text(r),
                        "free": r.free,
                    })
                })
                .collect();
            out = serde_json::to_string_pretty(&json!({"schema": SCHEMA, "rows": rows})).expect("serializable") + "\n";
        }
        Format::Csv => {
            out.push_str("partition,torus,a,b,witness,free\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    join(&r.partition, "+"),
                    csv_field(&tuple(&r.torus_weights)),
                    csv_field(&tuple(&r.lift_a)),
                    csv_field(&tuple(&r.lift_b)),
                    csv_field(&witness_text(r)),
                    if r.free { "Yes" } else { "No" }
                );
            }
        }
        Format::Text => {
            let _ = writeln!(
                out,
                "{:<12}  {:<11}  {:<13}  {:<13}  {:<20}  Free?",
                "Partition", "Torus", "A", "B", "Witness"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:<12}  {:<11}  {:<13}  {:<13}  {:<20}  {}",
                    join(&r.partition, "+"),
                    tuple(&r.torus_weights),
                    tuple(&r.lift_a),
                    tuple(&r.lift_b),
                    witness_text(r),
                    if r.free { "Yes" } else { "No" }
                );
            }
        }
    }
    out
}

fn cmd_p1(cli: &Cli, n: [i64; 4], sphere6: bool) -> Result<String, Failure> {
    let p = CirclePattern::new(n).map_err(|e| Failure::Usage(e.to_string()))?;
    let v = if sphere6 {
        topology::p1_circle_sphere6(&p)
    } else {
        topology::p1_circle(&p)
    }
    .map_err(|e| Failure::Failed(e.to_string()))?;
    Ok(match cli.format {
        Format::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "pattern": n,
                "l": p.l,
                "r": p.r,
                "sphere6": sphere6,
                "p1": v.value,
                "p1_mod24": v.value.rem_euclid(24),
                "sign_ambiguous": v.sign_ambiguous,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => format!("n1,n2,n3,n4,p1\n{},{}\n", join(&n, ","), v.value),
        Format::Text => format!("{}\n", v.value),
    })
}

fn cmd_classify(cli: &Cli) -> Result<(String, bool), Failure> {
    let reg = Registry::builtin();
    let store = store(cli)?;
    let table = registry::classify_triples(&reg, &store, &config(cli))?;
    let ok = table.all_agree() && table.survivors_match();
    let mut out = String::new();
    let route = |r: registry::Route| match r {
        registry::Route::Dimension => "dimension",
        registry::Route::Witness => "witness",
        registry::Route::IdealSplit => "ideal-split",
    };
    let verdict = |v: registry::FVerdict| match v {
        registry::FVerdict::Eq0 => "f=0",
        registry::FVerdict::Eq1 => "f=1",
        registry::FVerdict::Gt1 => "f>1",
        registry::FVerdict::Eq3 => "f=3",
        registry::FVerdict::Undetermined => "?",
    };
    match cli.format {
        Format::Json => {
            let doc = json!({"schema": SCHEMA, "rows": table.rows, "survivors": table.survivors, "ok": ok});
            out = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        }
        Format::Csv => {
            out.push_str("label,triple,route,dim_m,dim_p,expected,computed,survivor\n");
            for r in &table.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    csv_field(&r.label),
                    csv_field(&r.triple),
                    route(r.route),
                    r.dim_m,
                    r.dim_p,
                    verdict(r.expected),
                    verdict(r.computed),
                    r.survivor
                );
            }
        }
        Format::Text => {
            for r in &table.rows {
                let _ = writeln!(
                    out,
                    "{:<18}  {:<36}  {:<11}  (m,p)=({},{})  {:<4} {}",
                    r.label,
                    r.display,
                    route(r.route),
                    r.dim_m,
                    r.dim_p,
                    verdict(r.computed),
                    if r.agrees() { "ok" } else { "MISMATCH" }
                );
            }
            let _ = writeln!(out, "{} survivors: {}", table.survivors.len(), table.survivors.join(", "));
        }
    }
    Ok((out, ok))
}

fn cmd_export(out: &std::path::Path) -> Result<String, Failure> {
    let files = presets::all_files().map_err(|e| Failure::Failed(e.to_string()))?;
    std::fs::create_dir_all(out).map_err(|e| Failure::Failed(format!("{}: {e}", out.display())))?;
    for f in &files {
        let path = out.join(presets::file_name(&f.id));
        let text = serde_json::to_string_pretty(f).expect("serializable") + "\n";
        std::fs::write(&path, text).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))?;
    }
    Ok(format!("wrote {} presets to {}\n", files.len(), out.display()))
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::Verify { id, list } => cmd_verify(cli, id.as_deref(), *list),
        Command::Enumerate { bound, all } => Ok((cmd_enumerate(cli, *bound, *all), true)),
        Command::Table2 => Ok((cmd_table2(cli), true)),
        Command::P1 { pattern, sphere6 } => cmd_p1(cli, *pattern, *sphere6).map(|s| (s, true)),
        Command::Classify => cmd_classify(cli),
        Command::ExportPresets { out } => cmd_export(out).map(|s| (s, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
