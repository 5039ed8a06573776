use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use refleig::eigenstab::{self, EigenVectorPoint, FlatScan};
use refleig::error::Error;
use refleig::laurent::{check_rationality_necessary, parse_leading_term};
use refleig::report::{report_doc, to_csv, to_json, to_markdown, ReportDoc};
use refleig::springer::invariant_polynomials;
use refleig::verify::{assert_main_inequality, divisor_b_list, kostant_orders, verify_type};
use refleig::wgroup::{GroupEnumeration, DEFAULT_CAP};
use refleig::{CycloNum, TypeLabel};

const E7_ORDER: u64 = 2_903_040;

#[derive(Parser)]
#[command(name = "refleig-cli", about = "Exact eigenspace and stabilizer checks for finite reflection groups")]
struct Cli {
    /// Worker threads (overrides REFLEIG_WORKERS; default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the degree table and basic facts for each type.
    Info(InfoArgs),
    /// Run the min-N verification over V(b) and check the main inequality.
    Verify(VerifyArgs),
    /// Eigenspace inspection.
    #[command(subcommand)]
    Eigen(EigenCmd),
    /// Stabilizer of an explicit vector.
    Stab(StabArgs),
    /// The Laurent leading-term rationality check.
    #[command(subcommand)]
    Laurent(LaurentCmd),
}

#[derive(Args)]
struct InfoArgs {
    /// Type labels such as A3, B4, I2(7).
    #[arg(long = "type", required = true)]
    types: Vec<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "type", required = true)]
    types: Vec<String>,
    /// Either `all` (every divisor of a degree) or a comma list like `2,3,12`.
    #[arg(long, default_value = "all")]
    b: String,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<String>,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Allow E7 (order 2 903 040) despite the cap.
    #[arg(long)]
    include_e7: bool,
    /// Also check the order-h property of every ζ_h-admitting element.
    #[arg(long)]
    properties: bool,
}

#[derive(Subcommand)]
enum EigenCmd {
    /// List admitting elements and their eigenspaces for one (type, b).
    List(EigenListArgs),
}

#[derive(Args)]
struct EigenListArgs {
    #[arg(long = "type")]
    label: String,
    #[arg(long)]
    b: u32,
    /// Maximum number of elements to print.
    #[arg(long, default_value_t = 20)]
    limit: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

#[derive(Args)]
struct StabArgs {
    #[arg(long = "type")]
    label: String,
    /// The vector, comma separated scalar literals: model-dimension many
    /// entries for model coordinates, or rank many for root-basis
    /// coordinates (type A is the one case where the lengths differ).
    #[arg(long)]
    x: String,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

#[derive(Subcommand)]
enum LaurentCmd {
    /// Check the necessary condition for a leading term (JSON input).
    Check(LaurentCheckArgs),
}

#[derive(Args)]
struct LaurentCheckArgs {
    /// Path to the JSON document; `-` or omitted reads stdin.
    #[arg(long)]
    file: Option<String>,
    /// The JSON document itself.
    #[arg(long)]
    json: Option<String>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

/// Exit codes: 0 pass, 1 theorem assertion failed, 2 usage or input error,
/// 3 resource cap or unsupported type. Theorem failures dominate skips.
fn exit_for(e: &Error) -> u8 {
    match e {
        Error::TheoremViolation(_) => 1,
        Error::GroupTooLarge { .. } | Error::UnsupportedType(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers.or_else(|| {
        std::env::var("REFLEIG_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = workers {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let code = match cli.cmd {
        Cmd::Info(args) => run_info(&args),
        Cmd::Verify(args) => run_verify(&args),
        Cmd::Eigen(EigenCmd::List(args)) => run_eigen_list(&args),
        Cmd::Stab(args) => run_stab(&args),
        Cmd::Laurent(LaurentCmd::Check(args)) => run_laurent_check(&args),
    };
    match code {
        Ok(()) => ExitCode::SUCCESS,
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<(), (String, u8)>;

fn fail(e: Error) -> (String, u8) {
    let code = exit_for(&e);
    (e.to_string(), code)
}

fn parse_label(s: &str) -> Result<TypeLabel, (String, u8)> {
    TypeLabel::parse(s).map_err(|e| (e.to_string(), 2))
}

fn run_info(args: &InfoArgs) -> CmdResult {
    for t in &args.types {
        let label = parse_label(t)?;
        let sys = refleig::rootsys::build_root_system(label).map_err(fail)?;
        let f = sys.facts();
        println!(
            "{}: rank {}, |W| = {}, h = {}, degrees {:?}, {} roots, conductor {}",
            f.label, f.rank, f.order, f.coxeter_number, f.degrees, f.num_roots, f.conductor
        );
    }
    Ok(())
}

fn parse_b_selector(sel: &str, facts: &refleig::GroupFacts) -> Result<Vec<u32>, (String, u8)> {
    if sel == "all" {
        return Ok(divisor_b_list(facts));
    }
    sel.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .ok()
                .filter(|&b| b >= 1)
                .ok_or_else(|| (format!("bad b selector entry {p:?}"), 2u8))
        })
        .collect()
}

fn run_verify(args: &VerifyArgs) -> CmdResult {
    let mut docs: Vec<ReportDoc> = Vec::new();
    let mut violation: Option<Error> = None;
    let mut skipped: Vec<String> = Vec::new();
    for t in &args.types {
        let label = parse_label(t)?;
        let cap = if label == TypeLabel::E7 && args.include_e7 {
            args.cap.max(E7_ORDER)
        } else {
            args.cap
        };
        if label == TypeLabel::E7 && !args.include_e7 {
            eprintln!("skipping E7 (order 2903040): pass --include-e7");
            skipped.push(t.clone());
            continue;
        }
        let g = match GroupEnumeration::build(label, cap) {
            Ok(g) => g,
            Err(e @ (Error::GroupTooLarge { .. } | Error::UnsupportedType(_))) => {
                eprintln!("skipping {label}: {e}");
                skipped.push(t.clone());
                continue;
            }
            Err(e) => return Err(fail(e)),
        };
        let facts = g.system().facts();
        let bs = parse_b_selector(&args.b, &facts)?;
        let run = verify_type(&g, &bs).map_err(fail)?;
        for r in &run.results {
            if let Err(e) = assert_main_inequality(&facts, &r.record) {
                eprintln!("FAILED: {e}");
                violation.get_or_insert(e);
            }
        }
        if args.properties {
            let at_h = eigenstab::admitting_ids(&g, facts.coxeter_number);
            if let Err(e) = kostant_orders(&g, &at_h) {
                eprintln!("FAILED: {e}");
                violation.get_or_insert(e);
            }
        }
        docs.push(report_doc(&run));
    }
    let body = match args.format {
        Format::Json => to_json(&docs),
        Format::Csv => to_csv(&docs),
        Format::Markdown => to_markdown(&docs),
    };
    match &args.output {
        Some(path) => {
            fs::write(path, &body).map_err(|e| (format!("writing {path}: {e}"), 2))?;
            for doc in &docs {
                for r in &doc.results {
                    println!(
                        "{} b={}: min_N={:?} bound={} equality={}",
                        doc.group.label, r.b, r.min_n, r.bound, r.equality
                    );
                }
            }
        }
        None => print!("{body}"),
    }
    if let Some(e) = violation {
        return Err(fail(e));
    }
    if !skipped.is_empty() {
        return Err((format!("skipped: {}", skipped.join(", ")), 3));
    }
    Ok(())
}

fn run_eigen_list(args: &EigenListArgs) -> CmdResult {
    let label = parse_label(&args.label)?;
    let g = GroupEnumeration::build(label, args.cap).map_err(fail)?;
    let ids = eigenstab::admitting_ids(&g, args.b);
    println!(
        "{} admits zeta_{} on {} of {} elements",
        label,
        args.b,
        ids.len(),
        g.len()
    );
    let mut scan = FlatScan::new(g.system());
    for &id in ids.iter().take(args.limit) {
        let e = eigenstab::eigenspace(&g, id, args.b);
        let word: Vec<String> = g.word(id).iter().map(|s| format!("s{s}")).collect();
        let (min_n, _flat, orth) =
            eigenstab::min_n_over_eigenspace(&mut scan, &e).map_err(fail)?;
        println!(
            "  element {id} (order {}, word {}): dim {} eigenspace, min N = {min_n}, |Phi_x| = {}",
            g.order_of(id),
            if word.is_empty() { "e".to_string() } else { word.join(" ") },
            e.dim(),
            orth.count()
        );
    }
    if ids.len() > args.limit {
        println!("  ... {} more (raise --limit)", ids.len() - args.limit);
    }
    Ok(())
}

fn run_stab(args: &StabArgs) -> CmdResult {
    let label = parse_label(&args.label)?;
    let g = GroupEnumeration::build(label, args.cap).map_err(fail)?;
    let entries = refleig::cyclo::parse_vector(&args.x).map_err(fail)?;
    let inv = invariant_polynomials(label).map_err(fail)?;
    let n = g.system().rank();
    // Same convention as the Laurent checker: a model-length vector is model
    // coordinates, a rank-length vector is root-basis coordinates (the two
    // differ only in type A).
    let y: Vec<CycloNum> = if entries.len() == inv.model_dim() {
        inv.to_root_coords(&entries).map_err(fail)?
    } else if entries.len() == n {
        entries
    } else {
        return Err((
            format!(
                "expected {} root coordinates or {} model coordinates, got {}",
                n,
                inv.model_dim(),
                entries.len()
            ),
            2,
        ));
    };
    let point = EigenVectorPoint::new(label, y);
    let report = eigenstab::stabilizer(&g, &point).map_err(fail)?;
    println!(
        "{}: N(x) = {}, |Phi_x| = {} (indices {:?})",
        label,
        report.n_value,
        report.phi_x.count(),
        report.phi_x.iter().collect::<Vec<_>>()
    );
    if let Some(order) = report.group_order {
        println!("  |W_x| = {order}");
    }
    if let Some(gen) = report.reflections_generate {
        println!("  generated by its reflections: {gen}");
    }
    match &report.parabolic_witness {
        Some(w) => println!(
            "  parabolic: conjugate of the standard subset {:?} by element {}",
            w.simple_subset, w.conjugator
        ),
        None => println!("  no parabolic witness found"),
    }
    Ok(())
}

fn run_laurent_check(args: &LaurentCheckArgs) -> CmdResult {
    let text = match (&args.json, &args.file) {
        (Some(j), _) => j.clone(),
        (None, Some(path)) if path != "-" => {
            fs::read_to_string(path).map_err(|e| (format!("reading {path}: {e}"), 2))?
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| (format!("reading stdin: {e}"), 2))?;
            buf
        }
    };
    let ll = parse_leading_term(&text).map_err(fail)?;
    if ll.higher_ignored {
        eprintln!("warning: higher-order terms ignored; the condition depends on the leading term only");
    }
    let g = GroupEnumeration::build(ll.label, args.cap).map_err(fail)?;
    let verdict = check_rationality_necessary(&g, &ll).map_err(fail)?;
    println!("{}", serde_json::to_string_pretty(&verdict).expect("verdict serializes"));
    Ok(())
}
