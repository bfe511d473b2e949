//! Command-line front end: parse table and construction files, run
//! analyses, and expose the verification suites.
//!
//! Exit codes: 0 success / all checks passed; 1 a requested check failed or
//! no isomorphism exists; 2 input or format error; 3 a cap or node budget
//! was exhausted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use quandle::congruence::{self, all_congruences};
use quandle::enumerate::{enumerate, EnumerationConstraints, EnumerationTask, DEFAULT_NODE_BUDGET};
use quandle::error::{CongruenceError, EnumError, GroupError, QuandleError};
use quandle::fileio::{self, read_quandle, read_spec};
use quandle::iso;
use quandle::perm;
use quandle::structure::PrincipalStatus;
use quandle::verify::{
    suite_cyclic, suite_extension, suite_principal, suite_simple, SuiteReport, VerifyConfig,
};
use quandle::Quandle;

const USAGE: &str = "usage: quandle <command> [args]

commands:
  check <file.qnd|file.qspec> [--props p1,p2,...]
  congruences <file.qnd|file.qspec>
  decompose <file.qnd|file.qspec>
  aut <file.qnd|file.qspec>
  iso <a.qnd|a.qspec> <b.qnd|b.qspec>
  enumerate --size <n> [--connected] [--cyclic-fixed-points <f>]
            [--cycle-profile <l1,l2,...>] [--budget-nodes <N>] [--jobs <J>]
  verify --suite <principal|simple|cyclic|extension|all>
         [--budget-nodes <N>] [--jobs <J>]
  build <spec.qspec> <out.qnd>

global flags: --cap-group <N> caps materialized group element counts.

properties for `check`: connected, latin, faithful, crossed-set,
semiregular, homogeneous, doubly-homogeneous, principal, simple,
strictly-simple, cyclic.";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl std::fmt::Display) -> Self {
        CliError {
            code: 2,
            message: format!("{message}\n\n{USAGE}"),
        }
    }

    fn format(message: impl std::fmt::Display) -> Self {
        CliError {
            code: 2,
            message: message.to_string(),
        }
    }

    fn budget(message: impl std::fmt::Display) -> Self {
        CliError {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<fileio::ParseError> for CliError {
    fn from(e: fileio::ParseError) -> Self {
        CliError::format(e)
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Overflow { .. } | GroupError::TableTooLarge { .. } => CliError::budget(e),
            _ => CliError::format(e),
        }
    }
}

impl From<QuandleError> for CliError {
    fn from(e: QuandleError) -> Self {
        match e {
            QuandleError::SizeCap { .. } | QuandleError::Overflow { .. } => CliError::budget(e),
            QuandleError::Group(g) => g.into(),
            _ => CliError::format(e),
        }
    }
}

impl From<CongruenceError> for CliError {
    fn from(e: CongruenceError) -> Self {
        match e {
            CongruenceError::SizeCap { .. } | CongruenceError::Overflow { .. } => {
                CliError::budget(e)
            }
            CongruenceError::Quandle(q) => q.into(),
            CongruenceError::Group(g) => g.into(),
            _ => CliError::format(e),
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::BudgetExhausted { .. } | EnumError::SizeUnsupported { .. } => {
                CliError::budget(e)
            }
            EnumError::Quandle(q) => q.into(),
            _ => CliError::format(e),
        }
    }
}

/// Removes `flag <value>` (or `flag=value`) from the arguments.
fn take_value_flag(args: &mut Vec<String>, flag: &str) -> Result<Option<String>, CliError> {
    let mut i = 0;
    while i < args.len() {
        if args[i] == flag {
            if i + 1 >= args.len() {
                return Err(CliError::usage(format!("{flag} expects a value")));
            }
            let value = args[i + 1].clone();
            args.drain(i..=i + 1);
            return Ok(Some(value));
        }
        if let Some(v) = args[i].strip_prefix(&format!("{flag}=")) {
            let value = v.to_string();
            args.remove(i);
            return Ok(Some(value));
        }
        i += 1;
    }
    Ok(None)
}

fn take_bool_flag(args: &mut Vec<String>, flag: &str) -> bool {
    if let Some(pos) = args.iter().position(|a| a == flag) {
        args.remove(pos);
        true
    } else {
        false
    }
}

fn reject_unknown_flags(args: &[String]) -> Result<(), CliError> {
    if let Some(flag) = args.iter().find(|a| a.starts_with("--")) {
        return Err(CliError::usage(format!("unknown flag `{flag}`")));
    }
    Ok(())
}

fn parse_int<T: std::str::FromStr>(value: &str, what: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::usage(format!("{what} expects an integer, got `{value}`")))
}

/// Loads a quandle from either a table file or a construction spec.
fn load_quandle(path: &str) -> Result<Quandle, CliError> {
    let p = Path::new(path);
    match p.extension().and_then(|e| e.to_str()) {
        Some("qnd") => Ok(read_quandle(p)?),
        Some("qspec") => {
            let spec = read_spec(p)?;
            let base = p.parent().unwrap_or(Path::new("."));
            Ok(fileio::build_spec(&spec, base)?)
        }
        _ => Err(CliError::format(format!(
            "{path}: expected a .qnd or .qspec file"
        ))),
    }
}

fn run(args: &[String]) -> Result<ExitCode, CliError> {
    let mut args = args.to_vec();
    if let Some(cap) = take_value_flag(&mut args, "--cap-group")? {
        perm::set_group_cap(parse_int(&cap, "--cap-group")?);
    }
    let Some(command) = args.first().cloned() else {
        return Err(CliError::usage("missing command"));
    };
    let rest = args[1..].to_vec();
    match command.as_str() {
        "check" => cmd_check(rest),
        "congruences" => cmd_congruences(rest),
        "decompose" => cmd_decompose(rest),
        "aut" => cmd_aut(rest),
        "iso" => cmd_iso(rest),
        "enumerate" => cmd_enumerate(rest),
        "verify" => cmd_verify(rest),
        "build" => cmd_build(rest),
        other => Err(CliError::usage(format!("unknown command `{other}`"))),
    }
}

fn eval_prop(q: &Quandle, prop: &str) -> Result<bool, CliError> {
    let value = match prop {
        "connected" => q.is_connected(),
        "latin" => q.predicates()?.latin,
        "faithful" => q.predicates()?.faithful,
        "crossed-set" | "crossed_set" => q.predicates()?.crossed_set,
        "semiregular" => q.predicates()?.semiregular,
        "homogeneous" => q.homogeneity()?.homogeneous,
        "doubly-homogeneous" | "doubly_homogeneous" => q.homogeneity()?.doubly_homogeneous,
        "principal" => match q.principal_analysis()? {
            PrincipalStatus::Principal(_) => true,
            PrincipalStatus::NotPrincipal => false,
            PrincipalStatus::Unsupported => match q.principal_analysis_with_search()? {
                PrincipalStatus::Principal(_) => true,
                _ => false,
            },
        },
        "simple" => congruence::simplicity(q)?.simple,
        "strictly-simple" | "strictly_simple" => congruence::simplicity(q)?.strictly_simple,
        "cyclic" => q.cyclic_profile().is_cyclic,
        other => return Err(CliError::usage(format!("unknown property `{other}`"))),
    };
    Ok(value)
}

fn cmd_check(mut args: Vec<String>) -> Result<ExitCode, CliError> {
    let props = take_value_flag(&mut args, "--props")?;
    reject_unknown_flags(&args)?;
    let [path] = args.as_slice() else {
        return Err(CliError::usage("check expects one input file"));
    };
    let q = load_quandle(path)?;
    match props {
        None => {
            println!("valid quandle of size {}", q.size());
            Ok(ExitCode::SUCCESS)
        }
        Some(list) => {
            let mut all_true = true;
            for prop in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let value = eval_prop(&q, prop)?;
                all_true &= value;
                println!("{prop} {value}");
            }
            Ok(if all_true {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn cmd_congruences(args: Vec<String>) -> Result<ExitCode, CliError> {
    reject_unknown_flags(&args)?;
    let [path] = args.as_slice() else {
        return Err(CliError::usage("congruences expects one input file"));
    };
    let q = load_quandle(path)?;
    let lattice = all_congruences(&q)?;
    let m = lattice.len();
    println!("count {m}");
    for (i, c) in lattice.congruences().iter().enumerate() {
        println!("{i}: {}", c.render());
        let g = congruence::galois(&q, c)?;
        let qd = congruence::quotient(&q, c)?;
        let principal = match qd.quotient.principal_analysis()? {
            PrincipalStatus::Principal(_) => "true",
            PrincipalStatus::NotPrincipal => "false",
            PrincipalStatus::Unsupported => "unsupported",
        };
        println!(
            "  dis_alpha {} dis_kernel {} quotient {} quotient_principal {}",
            g.dis_alpha.order(),
            g.dis_upper.order(),
            qd.quotient.size(),
            principal
        );
    }
    println!("meet");
    for i in 0..m {
        let row: Vec<String> = (0..m).map(|j| lattice.meet_index(i, j).to_string()).collect();
        println!("{}", row.join(" "));
    }
    println!("join");
    for i in 0..m {
        let row: Vec<String> = (0..m).map(|j| lattice.join_index(i, j).to_string()).collect();
        println!("{}", row.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(args: Vec<String>) -> Result<ExitCode, CliError> {
    reject_unknown_flags(&args)?;
    let [path] = args.as_slice() else {
        return Err(CliError::usage("decompose expects one input file"));
    };
    let q = load_quandle(path)?;
    let d = q.semiregular_decomposition()?;
    println!("classes {}", d.classes.len());
    for (i, class) in d.classes.iter().enumerate() {
        let members: Vec<String> = class.iter().map(|x| x.to_string()).collect();
        println!("class {i} : {}", members.join(" "));
    }
    println!("all_semiregular {}", d.all_semiregular);
    match &d.connected_case {
        Some(c) => {
            println!("connected true");
            println!("normalizer_orbit_match {}", c.normalizer_orbit_match);
            println!("pairwise_isomorphic {}", c.pairwise_isomorphic);
            for (i, rep) in c.representations.iter().enumerate() {
                println!("class {i} principal_over_order {}", rep.group.order());
            }
        }
        None => println!("connected false"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_aut(args: Vec<String>) -> Result<ExitCode, CliError> {
    reject_unknown_flags(&args)?;
    let [path] = args.as_slice() else {
        return Err(CliError::usage("aut expects one input file"));
    };
    let q = load_quandle(path)?;
    let aut = q.automorphism_group();
    let elements = aut.elements().map_err(CliError::from)?;
    println!("order {}", elements.len());
    for p in elements {
        println!("{}", fileio::render_perm(p));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_iso(args: Vec<String>) -> Result<ExitCode, CliError> {
    reject_unknown_flags(&args)?;
    let [a, b] = args.as_slice() else {
        return Err(CliError::usage("iso expects two input files"));
    };
    let qa = load_quandle(a)?;
    let qb = load_quandle(b)?;
    match iso::isomorphism(&qa, &qb) {
        Some(witness) => {
            let images: Vec<String> = witness.images().iter().map(|i| i.to_string()).collect();
            println!("perm {} : {}", qa.size(), images.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("no isomorphism");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_enumerate(mut args: Vec<String>) -> Result<ExitCode, CliError> {
    let size = take_value_flag(&mut args, "--size")?
        .ok_or_else(|| CliError::usage("enumerate requires --size"))?;
    let size: usize = parse_int(&size, "--size")?;
    let connected = take_bool_flag(&mut args, "--connected");
    let cyclic_fixed_points = match take_value_flag(&mut args, "--cyclic-fixed-points")? {
        Some(v) => Some(parse_int(&v, "--cyclic-fixed-points")?),
        None => None,
    };
    let cycle_profile = match take_value_flag(&mut args, "--cycle-profile")? {
        Some(v) => {
            let parts: Result<Vec<usize>, _> = v
                .split(',')
                .map(|t| parse_int::<usize>(t.trim(), "--cycle-profile"))
                .collect();
            Some(parts?)
        }
        None => None,
    };
    let budget = match take_value_flag(&mut args, "--budget-nodes")? {
        Some(v) => parse_int(&v, "--budget-nodes")?,
        None => DEFAULT_NODE_BUDGET,
    };
    let jobs = match take_value_flag(&mut args, "--jobs")? {
        Some(v) => parse_int(&v, "--jobs")?,
        None => 1,
    };
    reject_unknown_flags(&args)?;
    if !args.is_empty() {
        return Err(CliError::usage("enumerate takes no positional arguments"));
    }
    let task = EnumerationTask {
        size,
        constraints: EnumerationConstraints {
            connected,
            cyclic_fixed_points,
            cycle_profile,
        },
        cap_nodes: budget,
        jobs: jobs.max(1),
    };
    let found = enumerate(&task)?;
    println!("count {}", found.len());
    for q in &found {
        print!("{}", fileio::render_quandle(q, None));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(mut args: Vec<String>) -> Result<ExitCode, CliError> {
    let suite = take_value_flag(&mut args, "--suite")?
        .ok_or_else(|| CliError::usage("verify requires --suite"))?;
    let budget = match take_value_flag(&mut args, "--budget-nodes")? {
        Some(v) => parse_int(&v, "--budget-nodes")?,
        None => DEFAULT_NODE_BUDGET,
    };
    let jobs = match take_value_flag(&mut args, "--jobs")? {
        Some(v) => parse_int::<usize>(&v, "--jobs")?,
        None => 1,
    };
    reject_unknown_flags(&args)?;
    let cfg = VerifyConfig {
        node_budget: budget,
        jobs: jobs.max(1),
    };
    let reports: Vec<SuiteReport> = match suite.as_str() {
        "principal" => vec![suite_principal(&cfg)],
        "simple" => vec![suite_simple(&cfg)],
        "cyclic" => vec![suite_cyclic(&cfg)],
        "extension" => vec![suite_extension(&cfg)],
        "all" => quandle::verify::all_suites(&cfg),
        other => return Err(CliError::usage(format!("unknown suite `{other}`"))),
    };
    let mut failed = false;
    let mut skipped = false;
    for report in &reports {
        print!("{}", report.render());
        failed |= !report.passed();
        skipped |= report.skipped();
    }
    Ok(if failed {
        ExitCode::from(1)
    } else if skipped {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_build(args: Vec<String>) -> Result<ExitCode, CliError> {
    reject_unknown_flags(&args)?;
    let [spec_path, out_path] = args.as_slice() else {
        return Err(CliError::usage("build expects <spec.qspec> <out.qnd>"));
    };
    let sp = Path::new(spec_path);
    if sp.extension().and_then(|e| e.to_str()) != Some("qspec") {
        return Err(CliError::format(format!(
            "{spec_path}: expected a .qspec file"
        )));
    }
    let spec = read_spec(sp)?;
    let base = sp.parent().unwrap_or(Path::new(".")).to_path_buf();
    let q = fileio::build_spec(&spec, &base)?;
    let comment: Vec<String> = spec
        .lines
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect();
    let text = fileio::render_quandle(&q, Some(&comment.join("\n")));
    let out: PathBuf = PathBuf::from(out_path);
    std::fs::write(&out, text).map_err(|e| CliError::format(format!("{out_path}: {e}")))?;
    println!("wrote {out_path}");
    Ok(ExitCode::SUCCESS)
}
