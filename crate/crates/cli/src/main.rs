//! Command-line front end: validate and classify solution records, build
//! solutions from braces, enumerate braces and solutions, run censuses
//! and audit the class bounds.
//!
//! Exit codes: 0 success, 1 mathematical failure (invalid object or a
//! violated bound, with a witness printed), 2 usage or format error.
//! Reports are deterministic; progress for long runs goes to stderr.
//! When the `YBX_STORE` environment variable names a directory, records
//! produced by the enumeration verbs are also stored there.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ybx_core::brace::{
    cyclic_brace, enumerate_braces, mnc_brace, semidirect_product, trivial_brace, ActionHom,
    Brace,
};
use ybx_core::catalog::{
    self, brace_record, census_record, datum_from_record, parse, serialize, solution_record,
    store_put, CatalogRecord, Payload,
};
use ybx_core::census::{a_n, enumerate_solutions_bounded, g_n, CensusReport, LONG_RUN_CENSUS_BOUND};
use ybx_core::construct::{build_solution, enumerate_indecomposable};
use ybx_core::fixtures;
use ybx_core::permbrace::{dehornoy_class_via_exponent, dehornoy_class_via_lcm, permutation_brace};
use ybx_core::solution::validate_sigma_table;

#[derive(Parser)]
#[command(name = "ybx", version, about = "Involutive Yang-Baxter solutions and left braces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in example record; without --name, list them all.
    Examples {
        #[arg(long)]
        name: Option<String>,
    },
    /// Check a solution or brace record against its defining axioms.
    Validate {
        /// Record file; stdin when omitted or "-".
        input: Option<PathBuf>,
    },
    /// Invariant report for a solution record.
    Invariants {
        input: Option<PathBuf>,
    },
    /// Build the solution described by a datum record.
    Construct {
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// All left braces of the given order, up to isomorphism.
    EnumerateBraces {
        #[arg(long)]
        order: usize,
    },
    /// All indecomposable solutions provided by a brace.
    EnumerateSolutions {
        /// Family string (trivial:2x3, C:3,2,1, sd:triv3,triv2,inv,
        /// mnc:7,3,1,1) or a path to a brace record.
        #[arg(long)]
        brace: String,
    },
    /// All solutions of one size up to isomorphism, with invariants.
    Census {
        #[arg(long)]
        n: usize,
        /// Allow the long-running sizes 7 and 8.
        #[arg(long)]
        long_run: bool,
    },
    /// Audit the Dehornoy class bounds over the censuses of sizes 1..=n.
    CheckConjectures {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        long_run: bool,
    },
}

enum Failure {
    /// Exit 1: the mathematics rejected the input or a bound failed.
    Math(String),
    /// Exit 2: unusable input.
    Usage(String),
}

impl From<ybx_core::Error> for Failure {
    fn from(e: ybx_core::Error) -> Failure {
        match e {
            ybx_core::Error::Parse { .. } | ybx_core::Error::InvalidParameter(_) => {
                Failure::Usage(e.to_string())
            }
            ybx_core::Error::Io(_) | ybx_core::Error::BoundExceeded { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Math(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(message)) => {
            eprintln!("{}", message);
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn read_input(input: &Option<PathBuf>) -> Result<String, Failure> {
    match input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {}", e)))?;
            Ok(text)
        }
    }
}

fn store_dir() -> Option<PathBuf> {
    std::env::var_os("YBX_STORE").map(PathBuf::from)
}

fn maybe_store(record: &CatalogRecord) -> Result<(), Failure> {
    if let Some(dir) = store_dir() {
        store_put(Path::new(&dir), record)?;
    }
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Examples { name } => examples(name),
        Command::Validate { input } => validate(&read_input(&input)?),
        Command::Invariants { input } => invariants(&read_input(&input)?),
        Command::Construct { input, output } => construct(&read_input(&input)?, output),
        Command::EnumerateBraces { order } => enumerate_braces_cmd(order),
        Command::EnumerateSolutions { brace } => enumerate_solutions_cmd(&brace),
        Command::Census { n, long_run } => census_cmd(n, long_run, false),
        Command::CheckConjectures { n, long_run } => check_conjectures(n, long_run),
    }
}

fn examples(name: Option<String>) -> Result<(), Failure> {
    match name {
        None => {
            for f in fixtures::all_fixtures() {
                println!("{:<22} {}", f.name, f.description);
            }
            Ok(())
        }
        Some(name) => match fixtures::fixture(&name) {
            Some(f) => {
                print!("{}", serialize(&f.record));
                Ok(())
            }
            None => Err(Failure::Usage(format!(
                "no example named {:?}; run `ybx examples` for the list",
                name
            ))),
        },
    }
}

fn validate(text: &str) -> Result<(), Failure> {
    let record = parse(text)?;
    match &record.payload {
        Payload::Solution { sigma } => {
            ybx_core::solution::check_table_shape(sigma).map_err(Failure::from)?;
            let report = validate_sigma_table(sigma);
            println!(
                "involutive non-degenerate: {}",
                if report.is_valid() { "yes" } else { "no" }
            );
            if report.is_valid() {
                Ok(())
            } else {
                for witness in report.witnesses() {
                    println!("witness: {}", witness);
                }
                Err(Failure::Math("validation failed".to_string()))
            }
        }
        Payload::Brace { add, mul } => {
            let report = ybx_core::brace::validate_tables(add, mul);
            println!(
                "left brace: {}",
                if report.is_valid() { "yes" } else { "no" }
            );
            if report.is_valid() {
                Ok(())
            } else {
                for witness in report.witnesses() {
                    println!("witness: {}", witness);
                }
                Err(Failure::Math("validation failed".to_string()))
            }
        }
        other => Err(Failure::Usage(format!(
            "validate expects a solution or brace record, found {}",
            other.kind()
        ))),
    }
}

fn invariants(text: &str) -> Result<(), Failure> {
    let record = parse(text)?;
    let s = catalog::solution_from_record(&record).map_err(Failure::from)?;
    let group = s.permutation_group();
    println!("n: {}", s.size());
    println!(
        "indecomposable: {}",
        if s.is_indecomposable() { "yes" } else { "no" }
    );
    println!(
        "uniconnected: {}",
        if s.is_uniconnected() { "yes" } else { "no" }
    );
    println!("multipermutation level: {}", s.multipermutation_level());
    println!("permutation group order: {}", group.order());
    println!("permutation group: {}", group.name());
    println!("dehornoy class (direct): {}", s.dehornoy_class_direct());
    println!(
        "dehornoy class (lcm): {}",
        dehornoy_class_via_lcm(&s).map_err(Failure::from)?
    );
    println!(
        "dehornoy class (exponent): {}",
        dehornoy_class_via_exponent(&s).map_err(Failure::from)?
    );
    let pb = permutation_brace(&s).map_err(Failure::from)?;
    println!(
        "permutation brace additive group: {}",
        pb.brace
            .additive_invariants()
            .iter()
            .map(|d| format!("C{}", d))
            .collect::<Vec<_>>()
            .join("x")
    );
    Ok(())
}

fn construct(text: &str, output: Option<PathBuf>) -> Result<(), Failure> {
    let record = parse(text)?;
    let (brace, datum) = datum_from_record(&record).map_err(Failure::from)?;
    let built = build_solution(&brace, &datum).map_err(Failure::from)?;
    let out = solution_record(&built.solution);
    maybe_store(&out)?;
    let rendered = serialize(&out);
    match output {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {}", path.display(), e)))?,
        None => print!("{}", rendered),
    }
    Ok(())
}

fn enumerate_braces_cmd(order: usize) -> Result<(), Failure> {
    let braces = enumerate_braces(order).map_err(Failure::from)?;
    eprintln!("order {}: {} braces", order, braces.len());
    let records: Vec<CatalogRecord> = braces.iter().map(brace_record).collect();
    for record in &records {
        maybe_store(record)?;
    }
    print!("{}", catalog::serialize_stream(&records));
    Ok(())
}

fn parse_brace_spec(spec: &str) -> Result<Brace, Failure> {
    fn parse_usizes(text: &str, sep: char) -> Result<Vec<usize>, Failure> {
        text.split(sep)
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Failure::Usage(format!("bad integer {:?} in brace spec", t)))
            })
            .collect()
    }
    fn atom(token: &str) -> Result<Brace, Failure> {
        if let Some(rest) = token.strip_prefix("triv") {
            let n: usize = rest
                .parse()
                .map_err(|_| Failure::Usage(format!("bad atom {:?}", token)))?;
            return trivial_brace(&[n]).map_err(Failure::from);
        }
        if let Some(rest) = token.strip_prefix('C') {
            let parts = parse_usizes(rest, '.')?;
            if parts.len() != 3 {
                return Err(Failure::Usage(format!(
                    "expected Cp.n.t, found {:?}",
                    token
                )));
            }
            return cyclic_brace(parts[0], parts[1], parts[2]).map_err(Failure::from);
        }
        Err(Failure::Usage(format!("unknown brace atom {:?}", token)))
    }

    if let Some(rest) = spec.strip_prefix("trivial:") {
        let factors = parse_usizes(rest, 'x')?;
        return trivial_brace(&factors).map_err(Failure::from);
    }
    if let Some(rest) = spec.strip_prefix("C:") {
        let parts = parse_usizes(rest, ',')?;
        if parts.len() != 3 {
            return Err(Failure::Usage("expected C:p,n,t".to_string()));
        }
        return cyclic_brace(parts[0], parts[1], parts[2]).map_err(Failure::from);
    }
    if let Some(rest) = spec.strip_prefix("mnc:") {
        let parts = parse_usizes(rest, ',')?;
        if parts.len() != 4 {
            return Err(Failure::Usage("expected mnc:p,q,n,t".to_string()));
        }
        return mnc_brace(parts[0], parts[1], parts[2], parts[3]).map_err(Failure::from);
    }
    if let Some(rest) = spec.strip_prefix("sd:") {
        let tokens: Vec<&str> = rest.split(',').collect();
        if tokens.len() != 3 {
            return Err(Failure::Usage(
                "expected sd:<left>,<right>,<alpha>".to_string(),
            ));
        }
        let left = atom(tokens[0])?;
        let right = atom(tokens[1])?;
        let alpha = match tokens[2] {
            "inv" => ActionHom::inversion(&left, &right).map_err(Failure::from)?,
            "triv" => ActionHom::trivial(&left, &right),
            other => {
                let Some(rest) = other.strip_prefix("pow.") else {
                    return Err(Failure::Usage(format!(
                        "unknown action {:?}; use inv, triv or pow.r.q",
                        other
                    )));
                };
                let parts = parse_usizes(rest, '.')?;
                if parts.len() != 2 {
                    return Err(Failure::Usage("expected pow.r.q".to_string()));
                }
                ActionHom::by_scalar(&left, &right, parts[0], parts[1]).map_err(Failure::from)?
            }
        };
        return semidirect_product(&left, &right, &alpha).map_err(Failure::from);
    }
    // Fall back to a record file.
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::Usage(format!("cannot read brace spec {:?}: {}", spec, e)))?;
    catalog::brace_from_record(&parse(&text)?).map_err(Failure::from)
}

fn enumerate_solutions_cmd(spec: &str) -> Result<(), Failure> {
    let brace = parse_brace_spec(spec)?;
    let solutions = enumerate_indecomposable(&brace).map_err(Failure::from)?;
    eprintln!(
        "brace of order {}: {} indecomposable solutions",
        brace.order(),
        solutions.len()
    );
    let records: Vec<CatalogRecord> = solutions
        .iter()
        .map(|cs| solution_record(&cs.solution))
        .collect();
    for record in &records {
        maybe_store(record)?;
    }
    print!("{}", catalog::serialize_stream(&records));
    Ok(())
}

fn run_census(n: usize, long_run: bool) -> Result<CensusReport, Failure> {
    let bound = if long_run {
        LONG_RUN_CENSUS_BOUND
    } else {
        ybx_core::census::DEFAULT_CENSUS_BOUND
    };
    eprintln!("census n={} ...", n);
    enumerate_solutions_bounded(n, bound).map_err(Failure::from)
}

fn census_cmd(n: usize, long_run: bool, quiet: bool) -> Result<(), Failure> {
    let report = run_census(n, long_run)?;
    maybe_store(&census_record(&report))?;
    if let Some(dir) = store_dir() {
        for entry in &report.entries {
            store_put(Path::new(&dir), &solution_record(&entry.solution()))?;
        }
    }
    if quiet {
        return Ok(());
    }
    println!(
        "census n={}: total={} indecomposable={} violations={}",
        report.n,
        report.total,
        report.indecomposable,
        report.violations.len()
    );
    println!();
    println!(
        "{:>4}  {:<10} {:>4}  {:<6} {:<6} {:<5} {:>5}",
        "idx", "group", "|G|", "indec", "uni", "mpl", "class"
    );
    for (i, e) in report.entries.iter().enumerate() {
        println!(
            "{:>4}  {:<10} {:>4}  {:<6} {:<6} {:<5} {:>5}",
            i,
            e.group_name,
            e.group_order,
            if e.indecomposable { "yes" } else { "no" },
            if e.uniconnected { "yes" } else { "no" },
            e.multipermutation_level.to_string(),
            e.dehornoy_class
        );
    }
    for violation in &report.violations {
        println!("violation: {}", violation);
    }
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Math("bound violations found".to_string()))
    }
}

fn check_conjectures(n: usize, long_run: bool) -> Result<(), Failure> {
    let mut all_violations = Vec::new();
    for size in 1..=n {
        let report = run_census(size, long_run)?;
        let abelian_max = report
            .entries
            .iter()
            .filter(|e| e.abelian_group)
            .map(|e| e.dehornoy_class)
            .max()
            .unwrap_or(0);
        println!(
            "n={}: classes={} indecomposable={} a_n={} g_n={} abelian_max_class={} violations={}",
            size,
            report.total,
            report.indecomposable,
            a_n(size),
            g_n(size),
            abelian_max,
            report.violations.len()
        );
        all_violations.extend(report.violations);
    }
    if all_violations.is_empty() {
        println!("all classes within bounds");
        Ok(())
    } else {
        for v in &all_violations {
            println!("violation: {}", v);
        }
        Err(Failure::Math(format!(
            "{} bound violations",
            all_violations.len()
        )))
    }
}
