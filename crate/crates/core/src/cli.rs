//! Batch entry points over the library: enumerate, classify, build, check,
//! divides, rlm, augment, hierarchy, verify-catalog, and report.
//!
//! Exit codes: 0 success, 1 verification or classification failure, 2 usage
//! error. Identical invocations produce byte-identical outputs.

use crate::catalog::{self, build_named};
use crate::classify::{all_matches, classify_one, classify_small_orders, CSV_HEADER};
use crate::division::{divides, DivisionConfig, DivisionVerdict};
use crate::enumerate::enumerate_semigroups;
use crate::satisfy::{in_local, satisfies, separation_search, SearchBounds};
use crate::semigroup::{key_to_hex, CanonicalMode, Semigroup};
use crate::term::Pseudoidentity;
use crate::transform::{augment, hierarchy_iterate, rlm, AugmentMode, DEFAULT_HIERARCHY_CAP};
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub artifacts: Vec<PathBuf>,
}

impl CommandOutcome {
    fn ok() -> Self {
        CommandOutcome {
            exit_code: 0,
            artifacts: Vec::new(),
        }
    }
    fn failed() -> Self {
        CommandOutcome {
            exit_code: 1,
            artifacts: Vec::new(),
        }
    }
    fn usage(msg: impl std::fmt::Display) -> Self {
        eprintln!("{msg}");
        CommandOutcome {
            exit_code: 2,
            artifacts: Vec::new(),
        }
    }
    fn with_artifact(mut self, path: PathBuf) -> Self {
        self.artifacts.push(path);
        self
    }
}

#[derive(Parser)]
#[command(
    name = "sgforge",
    about = "Finite semigroup computations: build, check, enumerate, classify",
    version
)]
struct Cli {
    /// Worker threads for enumerate/classify/report (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all semigroups of one order up to the chosen equivalence.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// `iso` or `equiv` (isomorphism and anti-isomorphism).
        #[arg(long, default_value = "equiv")]
        mode: String,
        /// Write JSON lines here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify semigroups as ji / non-ji by the condition tables.
    Classify {
        /// Classify every order from 2 to this one.
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        /// Classify a single semigroup instead (name, inline JSON, or @file).
        #[arg(long)]
        semigroup: Option<String>,
        /// With --semigroup: list every matching condition, not just the first.
        #[arg(long)]
        all_matches: bool,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Build a named semigroup and print it.
    Build {
        #[arg(long)]
        name: String,
        /// Parameter for Z/N/NI families (alternative to embedding it in the name).
        #[arg(long)]
        n: Option<usize>,
        /// Parameter for the O family.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        print_table: bool,
    },
    /// Check an identity or pseudoidentity on a semigroup.
    Check {
        /// Name, inline JSON, or @file.
        #[arg(long)]
        semigroup: Option<String>,
        /// Synonym of --semigroup for catalog names.
        #[arg(long)]
        name: Option<String>,
        /// `lhs = rhs` in the term grammar.
        #[arg(long, visible_alias = "identity")]
        pseudoidentity: String,
        /// Check every local monoid instead of the semigroup itself.
        #[arg(long)]
        local: bool,
    },
    /// Decide whether the first semigroup divides the second.
    Divides {
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 20)]
        exact_bound: usize,
        #[arg(long, default_value_t = 4)]
        max_generators: usize,
    },
    /// The faithful action on the L-classes of the minimal ideal.
    Rlm {
        #[arg(long)]
        semigroup: String,
    },
    /// The right regular representation as a transformation semigroup.
    Action {
        #[arg(long)]
        semigroup: String,
        /// Use the smallest faithful carrier instead of the monoid completion.
        #[arg(long)]
        faithful: bool,
    },
    /// Adjoin constant maps to the right regular action (`bar`/`flat`).
    Augment {
        #[arg(long)]
        semigroup: String,
        #[arg(long, default_value = "bar")]
        mode: String,
    },
    /// Iterate bar/flat operators from a seed.
    Hierarchy {
        #[arg(long)]
        semigroup: String,
        /// Comma-separated pattern, e.g. `bar,flat`.
        #[arg(long, default_value = "bar,flat")]
        pattern: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_HIERARCHY_CAP)]
        cap: usize,
        /// Also search for identities separating consecutive levels.
        #[arg(long)]
        separate: bool,
    },
    /// Re-derive every catalog record and report pass/fail per record.
    VerifyCatalog {
        #[arg(long)]
        json: bool,
    },
    /// Enumerate and classify all orders, writing the CSV and summary.
    Report {
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Search for an identity satisfied by one semigroup and violated by another.
    Separate {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, default_value_t = 3)]
    max_letters: usize,
    #[arg(long, default_value_t = 8)]
    max_length: usize,
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

/// Resolves a semigroup argument: inline JSON, `@path` to a JSON file, or a
/// catalog name.
fn resolve_semigroup(spec: &str) -> Result<Semigroup, String> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        return serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"));
    }
    if spec.starts_with('{') || spec.starts_with('[') {
        if spec.starts_with('[') {
            // bare table: rows only
            let rows: Vec<Vec<usize>> = serde_json::from_str(spec).map_err(|e| e.to_string())?;
            return Semigroup::from_rows(&rows).map_err(|e| e.to_string());
        }
        return serde_json::from_str(spec).map_err(|e| e.to_string());
    }
    build_named(spec).map_err(|e| e.to_string())
}

fn parse_mode(mode: &str) -> Result<CanonicalMode, String> {
    match mode {
        "iso" => Ok(CanonicalMode::Iso),
        "equiv" => Ok(CanonicalMode::IsoAntiIso),
        other => Err(format!("unknown mode '{other}' (expected iso or equiv)")),
    }
}

fn parse_augment_mode(mode: &str) -> Result<AugmentMode, String> {
    match mode {
        "bar" => Ok(AugmentMode::Bar),
        "flat" => Ok(AugmentMode::Flat),
        other => Err(format!("unknown mode '{other}' (expected bar or flat)")),
    }
}

/// Runs the CLI on the given arguments (`argv[0]` included).
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return CommandOutcome {
                exit_code: code,
                artifacts: Vec::new(),
            };
        }
    };
    let run_inner = || dispatch(cli.command);
    match cli.jobs {
        None => run_inner(),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(run_inner),
            Err(e) => CommandOutcome::usage(format!("--jobs: {e}")),
        },
    }
}

fn dispatch(command: Command) -> CommandOutcome {
    match command {
        Command::Enumerate { order, mode, out } => cmd_enumerate(order, &mode, out),
        Command::Classify {
            max_order,
            semigroup,
            all_matches,
            out_csv,
            summary,
        } => cmd_classify(max_order, semigroup, all_matches, out_csv, summary),
        Command::Build {
            name,
            n,
            k,
            print_table,
        } => cmd_build(&name, n, k, print_table),
        Command::Check {
            semigroup,
            name,
            pseudoidentity,
            local,
        } => cmd_check(semigroup.or(name), &pseudoidentity, local),
        Command::Divides {
            s,
            t,
            exact_bound,
            max_generators,
        } => cmd_divides(&s, &t, exact_bound, max_generators),
        Command::Rlm { semigroup } => match resolve_semigroup(&semigroup) {
            Ok(s) => {
                print_semigroup_json(&rlm(&s));
                CommandOutcome::ok()
            }
            Err(e) => CommandOutcome::usage(e),
        },
        Command::Action {
            semigroup,
            faithful,
        } => match resolve_semigroup(&semigroup) {
            Ok(s) => {
                let action = if faithful {
                    crate::transform::faithful_right_action(&s)
                } else {
                    crate::transform::right_regular(&s)
                };
                println!("{}", serde_json::to_string(&action).unwrap());
                CommandOutcome::ok()
            }
            Err(e) => CommandOutcome::usage(e),
        },
        Command::Augment { semigroup, mode } => {
            let m = match parse_augment_mode(&mode) {
                Ok(m) => m,
                Err(e) => return CommandOutcome::usage(e),
            };
            match resolve_semigroup(&semigroup) {
                Ok(s) => {
                    print_semigroup_json(&augment(&s, m));
                    CommandOutcome::ok()
                }
                Err(e) => CommandOutcome::usage(e),
            }
        }
        Command::Hierarchy {
            semigroup,
            pattern,
            depth,
            cap,
            separate,
        } => cmd_hierarchy(&semigroup, &pattern, depth, cap, separate),
        Command::VerifyCatalog { json } => cmd_verify_catalog(json),
        Command::Report { max_order, out_dir } => cmd_report(max_order, &out_dir),
        Command::Separate { a, b, bounds } => cmd_separate(&a, &b, &bounds),
    }
}

fn cmd_enumerate(order: usize, mode: &str, out: Option<PathBuf>) -> CommandOutcome {
    let mode = match parse_mode(mode) {
        Ok(m) => m,
        Err(e) => return CommandOutcome::usage(e),
    };
    let result = match enumerate_semigroups(order, mode) {
        Ok(r) => r,
        Err(e) => return CommandOutcome::usage(e),
    };
    let mut lines = String::new();
    for s in &result.classes {
        let record = serde_json::json!({
            "order": s.order(),
            "table": s.rows(),
            "canonical_key": key_to_hex(&s.canonical_key(mode)),
        });
        lines.push_str(&record.to_string());
        lines.push('\n');
    }
    let outcome = match &out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, lines) {
                return CommandOutcome::usage(format!("{}: {e}", path.display()));
            }
            CommandOutcome::ok().with_artifact(path.clone())
        }
        None => {
            print!("{lines}");
            CommandOutcome::ok()
        }
    };
    eprintln!(
        "order {}: {} labeled, {} up to isomorphism, {} up to equivalence",
        order, result.counts.labeled, result.counts.up_to_iso, result.counts.up_to_equivalence
    );
    outcome
}

fn cmd_classify(
    max_order: usize,
    semigroup: Option<String>,
    list_all: bool,
    out_csv: Option<PathBuf>,
    summary_path: Option<PathBuf>,
) -> CommandOutcome {
    if let Some(spec) = semigroup {
        let s = match resolve_semigroup(&spec) {
            Ok(s) => s,
            Err(e) => return CommandOutcome::usage(e),
        };
        let record = match classify_one(&s) {
            Ok(r) => r,
            Err(e) => return CommandOutcome::usage(e),
        };
        println!("{}", serde_json::to_string_pretty(&record).unwrap());
        if list_all {
            let matches = all_matches(&s);
            println!("{}", serde_json::to_string_pretty(&matches).unwrap());
        }
        return CommandOutcome::ok();
    }
    let summary = match classify_small_orders(max_order) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return CommandOutcome::failed();
        }
    };
    let mut outcome = CommandOutcome::ok();
    if let Some(path) = &out_csv {
        let mut text = String::from(CSV_HEADER);
        text.push('\n');
        for rec in &summary.records {
            text.push_str(&rec.csv_line());
            text.push('\n');
        }
        if let Err(e) = std::fs::write(path, text) {
            return CommandOutcome::usage(format!("{}: {e}", path.display()));
        }
        outcome = outcome.with_artifact(path.clone());
    }
    let summary_json = serde_json::to_string_pretty(&summary).unwrap();
    match &summary_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &summary_json) {
                return CommandOutcome::usage(format!("{}: {e}", path.display()));
            }
            outcome = outcome.with_artifact(path.clone());
        }
        None => println!("{summary_json}"),
    }
    let clean = summary.orders.iter().all(|c| c.unclassified == 0);
    if clean {
        outcome
    } else {
        CommandOutcome {
            exit_code: 1,
            artifacts: outcome.artifacts,
        }
    }
}

fn cmd_build(name: &str, n: Option<usize>, k: Option<usize>, print_table: bool) -> CommandOutcome {
    let full_name = match (n, k) {
        (Some(n), None) => format!("{name}{n}"),
        (None, Some(k)) => format!("{name}{k}"),
        (None, None) => name.to_string(),
        (Some(_), Some(_)) => return CommandOutcome::usage("give at most one of --n and --k"),
    };
    match build_named(&full_name) {
        Ok(s) => {
            if print_table {
                for row in s.rows() {
                    println!(
                        "{}",
                        row.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
            } else {
                print_semigroup_json(&s);
            }
            CommandOutcome::ok()
        }
        Err(e) => CommandOutcome::usage(e),
    }
}

fn cmd_check(spec: Option<String>, pid_text: &str, local: bool) -> CommandOutcome {
    let Some(spec) = spec else {
        return CommandOutcome::usage("--semigroup (or --name) is required");
    };
    let s = match resolve_semigroup(&spec) {
        Ok(s) => s,
        Err(e) => return CommandOutcome::usage(e),
    };
    let pid = match Pseudoidentity::parse(pid_text) {
        Ok(p) => p,
        Err(e) => return CommandOutcome::usage(e),
    };
    if local {
        let holds = in_local(&s, &pid);
        println!("{}", serde_json::json!({ "in_local": holds }));
        return if holds {
            CommandOutcome::ok()
        } else {
            CommandOutcome::failed()
        };
    }
    let report = satisfies(&s, &pid);
    println!("{}", serde_json::to_string(&report).unwrap());
    if report.satisfied {
        CommandOutcome::ok()
    } else {
        CommandOutcome::failed()
    }
}

fn cmd_divides(
    s_spec: &str,
    t_spec: &str,
    exact_bound: usize,
    max_generators: usize,
) -> CommandOutcome {
    let (s, t) = match (resolve_semigroup(s_spec), resolve_semigroup(t_spec)) {
        (Ok(s), Ok(t)) => (s, t),
        (Err(e), _) | (_, Err(e)) => return CommandOutcome::usage(e),
    };
    let cfg = DivisionConfig {
        exact_bound,
        max_generators,
    };
    let verdict = divides(&s, &t, &cfg);
    println!("{}", serde_json::to_string(&verdict).unwrap());
    match verdict {
        DivisionVerdict::Yes { .. } => CommandOutcome::ok(),
        _ => CommandOutcome::failed(),
    }
}

fn cmd_hierarchy(
    spec: &str,
    pattern: &str,
    depth: usize,
    cap: usize,
    separate: bool,
) -> CommandOutcome {
    let s = match resolve_semigroup(spec) {
        Ok(s) => s,
        Err(e) => return CommandOutcome::usage(e),
    };
    let ops: Result<Vec<AugmentMode>, String> = pattern
        .split(',')
        .map(|p| parse_augment_mode(p.trim()))
        .collect();
    let ops = match ops {
        Ok(ops) if !ops.is_empty() => ops,
        Ok(_) => return CommandOutcome::usage("empty pattern"),
        Err(e) => return CommandOutcome::usage(e),
    };
    let chain = match hierarchy_iterate(&s, &ops, depth, cap) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return CommandOutcome::failed();
        }
    };
    for (level, member) in chain.iter().enumerate() {
        let mut record = serde_json::json!({
            "level": level,
            "order": member.order(),
            "table": member.rows(),
        });
        if separate && level + 1 < chain.len() {
            let found = separation_search(member, &chain[level + 1], &SearchBounds::default());
            record["separator_from_next"] = serde_json::json!(found.map(|p| p.to_string()));
        }
        println!("{record}");
    }
    CommandOutcome::ok()
}

fn cmd_verify_catalog(json: bool) -> CommandOutcome {
    let report = catalog::verify_catalog();
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for check in &report.checks {
            println!(
                "{} {} - {}",
                if check.passed { "PASS" } else { "FAIL" },
                check.id,
                check.detail
            );
        }
        let passed = report.checks.iter().filter(|c| c.passed).count();
        println!("{passed}/{} records verified", report.checks.len());
    }
    if report.all_passed() {
        CommandOutcome::ok()
    } else {
        CommandOutcome::failed()
    }
}

fn cmd_report(max_order: usize, out_dir: &PathBuf) -> CommandOutcome {
    if let Err(e) = std::fs::create_dir_all(out_dir) {
        return CommandOutcome::usage(format!("{}: {e}", out_dir.display()));
    }
    let summary = match classify_small_orders(max_order) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return CommandOutcome::failed();
        }
    };
    let csv_path = out_dir.join("classification.csv");
    let summary_path = out_dir.join("summary.json");
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for rec in &summary.records {
        csv.push_str(&rec.csv_line());
        csv.push('\n');
    }
    if let Err(e) = std::fs::write(&csv_path, csv) {
        return CommandOutcome::usage(format!("{}: {e}", csv_path.display()));
    }
    if let Err(e) = std::fs::write(
        &summary_path,
        serde_json::to_string_pretty(&summary).unwrap(),
    ) {
        return CommandOutcome::usage(format!("{}: {e}", summary_path.display()));
    }
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "order  ji  non_ji  unclassified  total");
    for c in &summary.orders {
        let _ = writeln!(
            stdout,
            "{:<5}  {:<3} {:<7} {:<13} {}",
            c.order, c.ji, c.non_ji, c.unclassified, c.total
        );
    }
    let _ = writeln!(stdout, "distinct ji targets: {}", summary.ji_target_count);
    let clean = summary.orders.iter().all(|c| c.unclassified == 0);
    CommandOutcome {
        exit_code: if clean { 0 } else { 1 },
        artifacts: vec![csv_path, summary_path],
    }
}

fn cmd_separate(a_spec: &str, b_spec: &str, bounds: &BoundArgs) -> CommandOutcome {
    let (a, b) = match (resolve_semigroup(a_spec), resolve_semigroup(b_spec)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return CommandOutcome::usage(e),
    };
    let bounds = SearchBounds {
        max_letters: bounds.max_letters,
        max_length: bounds.max_length,
        samples: bounds.samples,
        seed: bounds.seed,
    };
    match separation_search(&a, &b, &bounds) {
        Some(p) => {
            println!("{}", serde_json::json!({ "separator": p.to_string() }));
            CommandOutcome::ok()
        }
        None => {
            println!("{}", serde_json::json!({ "separator": null }));
            CommandOutcome::failed()
        }
    }
}

fn print_semigroup_json(s: &Semigroup) {
    println!("{}", serde_json::to_string(s).unwrap());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandOutcome {
        let mut argv = vec!["sgforge"];
        argv.extend_from_slice(args);
        run(argv)
    }

    #[test]
    fn build_prints_the_l3_table_for_o2() {
        let outcome = run_args(&["build", "--name", "O", "--k", "2", "--print-table"]);
        assert_eq!(outcome.exit_code, 0);
    }

    #[test]
    fn check_exit_codes() {
        let ok = run_args(&["check", "--name", "Z2", "--pseudoidentity", "x^2 y = y"]);
        assert_eq!(ok.exit_code, 0);
        let violated = run_args(&[
            "check",
            "--name",
            "B2",
            "--pseudoidentity",
            "((xy)^w (yx)^w (xy)^w)^w = (xy)^w",
        ]);
        assert_eq!(violated.exit_code, 1);
        let usage = run_args(&["check", "--name", "B2", "--pseudoidentity", "x^ = y"]);
        assert_eq!(usage.exit_code, 2);
    }

    #[test]
    fn divides_exit_codes() {
        assert_eq!(
            run_args(&["divides", "--s", "N2", "--t", "A0"]).exit_code,
            0
        );
        assert_eq!(
            run_args(&["divides", "--s", "Z3", "--t", "Z2"]).exit_code,
            1
        );
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        assert_eq!(run_args(&["frobnicate"]).exit_code, 2);
    }

    #[test]
    fn inline_table_input() {
        let outcome = run_args(&[
            "check",
            "--semigroup",
            "[[0,1],[1,0]]",
            "--pseudoidentity",
            "x y = y x",
        ]);
        assert_eq!(outcome.exit_code, 0);
    }
}
