//! Command-line front end. `run` parses arguments, performs the command and
//! returns the exit code together with the report it printed.
//!
//! Exit codes: 0 every check passed, 1 some check failed, 2 usage or input
//! problem, 3 integrity problem (an inconsistent neighbour oracle).

mod report;
pub mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{ReportEntry, RunReport};

use crate::detect::{check_relaxed_bull_condition, find_induced, Pattern};
use crate::error::{Error, Result};
use crate::families::{instantiate, parse_family, window, LazyGraph};
use crate::graph::{parse_edge_list, FiniteGraph, VertexId};
use crate::hamilton::{
    build_circle_prefix, leaf_tree_with, spanning_ray_or_double_ray, verify_circle_certificate,
    verify_spanning_path, verify_tree_certificate, Certificate, CutProbes, LeafSpec,
    LeafTreeOptions, Verification,
};
use crate::oracle::{
    brute_hamilton_cycle_capped, brute_hamilton_path_capped, brute_tree_with_leaves_capped,
    generate_corpus, Filter, DEFAULT_CAP,
};
use crate::structure::{
    check_shepherd_characterization, default_size_cap, end_bound_suite,
    is_distance_2_complete_centered, separator_clique_check,
};

/// Overrides the largest depth any command accepts.
pub const MAX_DEPTH_ENV: &str = "CLAWNET_MAX_DEPTH";
const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Parser, Debug)]
#[command(
    name = "clawnet",
    version,
    about = "Claw-free, net-free graph constructions and their certificates"
)]
struct Cli {
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find induced claws, nets or bulls.
    Detect(DetectArgs),
    /// Separator and end structure checks.
    Structure(StructureArgs),
    /// Hamilton circles, spanning rays and leaf trees.
    #[command(subcommand)]
    Hamilton(HamiltonCommand),
    /// Brute-force searches on a small graph.
    Oracle(OracleArgs),
    /// Write a filtered corpus of small graphs.
    Corpus(CorpusArgs),
    /// Run a named bundle of checks.
    Suite(SuiteArgs),
}

/// A finite graph file, or a family window.
#[derive(Args, Debug)]
struct Source {
    /// Edge-list file.
    #[arg(long, alias = "input", conflicts_with = "family")]
    graph: Option<PathBuf>,
    /// Family descriptor file; needs --depth.
    #[arg(long)]
    family: Option<PathBuf>,
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Args, Debug)]
struct DetectArgs {
    #[arg(long, value_enum)]
    pattern: PatternArg,
    #[command(flatten)]
    source: Source,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PatternArg {
    Claw,
    Net,
    Bull,
    All,
}

#[derive(Args, Debug)]
struct StructureArgs {
    #[arg(long, value_enum)]
    check: StructureCheck,
    #[command(flatten)]
    source: Source,
    /// Center vertex for the distance-2 check.
    #[arg(long)]
    center: Option<VertexId>,
    /// Largest separator size examined (default: max degree + 1).
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StructureCheck {
    Shepherd,
    Distance2,
    SeparatorClique,
    EndBound,
    RelaxedBull,
}

#[derive(Subcommand, Debug)]
enum HamiltonCommand {
    Circle {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Seed of the random cut probes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 128)]
        probes: usize,
        /// Write the certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    Spanning {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    Leaftree {
        #[arg(long)]
        family: PathBuf,
        /// Comma-separated vertices and end labels, e.g. `0,1,w1`.
        #[arg(long)]
        leaves: String,
        #[arg(long)]
        depth: usize,
        /// Skip the connectivity precondition.
        #[arg(long)]
        relaxed: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    Verify {
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 128)]
        probes: usize,
    },
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_enum)]
    op: OracleOp,
    #[arg(long)]
    graph: PathBuf,
    /// Leaf set for `leaftree`, comma-separated.
    #[arg(long)]
    leaves: Option<String>,
    /// Prescribed endpoints for `hampath`.
    #[arg(long, requires = "to")]
    from: Option<VertexId>,
    #[arg(long, requires = "from")]
    to: Option<VertexId>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OracleOp {
    Hamcycle,
    Hampath,
    Leaftree,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// e.g. `claw-free,net-free,2-connected`
    #[arg(long, default_value = "any")]
    filter: String,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = usize::MAX)]
    count: usize,
    /// Directory for one edge-list file per graph.
    #[arg(long)]
    dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    name: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Runs one command line (without the program name's special meaning:
/// `argv[0]` is skipped like a binary name).
pub fn run<S: AsRef<str>>(argv: &[S]) -> (i32, RunReport) {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let mut report = RunReport {
        command: argv.iter().skip(1).cloned().collect(),
        ..Default::default()
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let info = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            report.output(e.to_string());
            if !info {
                report.check("usage", None, false, e.kind().to_string());
            }
            return (if info { 0 } else { 2 }, report);
        }
    };
    let result = dispatch(&cli.command, &mut report);
    let code = match result {
        Ok(()) if report.all_passed() => 0,
        Ok(())
            if report
                .entries
                .iter()
                .any(|e| !e.passed && e.detail.starts_with("[integrity]")) =>
        {
            3
        }
        Ok(()) => 1,
        Err(e) => {
            report.error("run", None, &e);
            match e {
                Error::Input(_) => 2,
                Error::Integrity(_) | Error::Asymmetric(..) => 3,
                _ => 1,
            }
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, report.to_string()) {
            report.error(
                "write-report",
                None,
                &Error::input(format!("{}: {e}", path.display())),
            );
            return (2, report);
        }
    }
    (code, report)
}

fn max_depth() -> usize {
    std::env::var(MAX_DEPTH_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DEPTH)
}

fn check_depth(depth: usize) -> Result<usize> {
    let max = max_depth();
    if depth == 0 || depth > max {
        return Err(Error::input(format!(
            "depth must lie in 1..={max} (set {MAX_DEPTH_ENV} to raise the limit)"
        )));
    }
    Ok(depth)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn load_family(path: &Path) -> Result<LazyGraph> {
    instantiate(&parse_family(&read(path)?)?)
}

fn load_source(s: &Source) -> Result<(FiniteGraph, Option<usize>, Option<LazyGraph>)> {
    match (&s.graph, &s.family) {
        (Some(p), None) => Ok((parse_edge_list(&read(p)?)?, None, None)),
        (None, Some(p)) => {
            let depth = check_depth(
                s.depth
                    .ok_or_else(|| Error::input("--family needs --depth"))?,
            )?;
            let g = load_family(p)?;
            Ok((window(&g, depth)?.graph, Some(depth), Some(g)))
        }
        _ => Err(Error::input("give either --graph or --family with --depth")),
    }
}

/// Times `f` as phase `name`.
fn timed<T>(r: &mut RunReport, name: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    r.timings
        .push((name.to_string(), t.elapsed().as_millis() as u64));
    out
}

fn record(r: &mut RunReport, v: &Verification, depth: usize) {
    for c in &v.checks {
        r.check(c.name.clone(), Some(depth), c.passed, c.detail.clone());
    }
}

fn dispatch(cmd: &Command, r: &mut RunReport) -> Result<()> {
    match cmd {
        Command::Detect(a) => detect(a, r),
        Command::Structure(a) => structure(a, r),
        Command::Hamilton(h) => hamilton(h, r),
        Command::Oracle(a) => oracle(a, r),
        Command::Corpus(a) => corpus(a, r),
        Command::Suite(a) => {
            r.seed = a.seed;
            let t = Instant::now();
            suites::run_suite(&a.name, a.seed, r)?;
            r.timings
                .push((a.name.clone(), t.elapsed().as_millis() as u64));
            Ok(())
        }
    }
}

fn detect(a: &DetectArgs, r: &mut RunReport) -> Result<()> {
    let (g, depth, _) = load_source(&a.source)?;
    let patterns: Vec<Pattern> = match a.pattern {
        PatternArg::Claw => vec![Pattern::Claw],
        PatternArg::Net => vec![Pattern::Net],
        PatternArg::Bull => vec![Pattern::Bull],
        PatternArg::All => Pattern::ALL.to_vec(),
    };
    for p in patterns {
        let hit = timed(r, p.as_str(), || find_induced(&g, p));
        match hit {
            Some(m) => {
                r.check(
                    format!("detect-{}", p.as_str()),
                    depth,
                    true,
                    format!("found {m}"),
                );
                r.output(format!("match {m}"));
            }
            None => {
                r.check(
                    format!("detect-{}", p.as_str()),
                    depth,
                    true,
                    format!("{}-free", p.as_str()),
                );
                r.output(format!("none {}", p.as_str()));
            }
        }
    }
    Ok(())
}

fn structure(a: &StructureArgs, r: &mut RunReport) -> Result<()> {
    let (g, depth, lazy) = load_source(&a.source)?;
    let cap = a.cap.unwrap_or_else(|| default_size_cap(&g));
    match a.check {
        StructureCheck::Shepherd => {
            let rep = check_shepherd_characterization(&g, cap)?;
            let detail = match &rep.witness {
                Some((s, v)) => format!("S={s:?} v={v}: G-(S-v) is not distance-2-complete at v"),
                None => format!("{} separators up to size {cap}", rep.separators_checked),
            };
            r.check("shepherd", depth, rep.holds, detail);
        }
        StructureCheck::Distance2 => {
            let v = a
                .center
                .ok_or_else(|| Error::input("distance2 needs --center"))?;
            let rep = is_distance_2_complete_centered(&g, v)?;
            let bad: Vec<String> = rep
                .per_class_clique
                .iter()
                .filter(|c| !c.2)
                .map(|(c, i, _)| format!("component {c} class {i}"))
                .collect();
            let detail = format!(
                "{} components; non-clique classes: {}",
                rep.component_count,
                if bad.is_empty() {
                    "none".into()
                } else {
                    bad.join(", ")
                }
            );
            r.check("distance2", depth, rep.verdict, detail);
        }
        StructureCheck::SeparatorClique => {
            let rep = separator_clique_check(&g, cap)?;
            let detail = match &rep.witness {
                Some(s) => format!("separator {s:?} is not a clique"),
                None => format!("{} separators up to size {cap}", rep.separators_checked),
            };
            r.check("separator-clique", depth, rep.holds, detail);
        }
        StructureCheck::EndBound => {
            let (Some(g), Some(d)) = (lazy, depth) else {
                return Err(Error::input("end-bound needs --family and --depth"));
            };
            let rep = end_bound_suite(&g, d)?;
            let dist = rep
                .max_distance_from_ray
                .map_or("-".to_string(), |x| x.to_string());
            r.check(
                "end-bound",
                Some(d),
                rep.ok(),
                format!(
                    "claw-free {} net-free {} ends {} implication {} distance-to-ray {dist}",
                    rep.claw_free,
                    rep.net_free,
                    rep.end_count,
                    rep.implication.as_str()
                ),
            );
        }
        StructureCheck::RelaxedBull => {
            let rep = check_relaxed_bull_condition(&g);
            let detail = match &rep.witness {
                Some(m) => format!(
                    "horns of {m} have no common neighbour off the bull{}",
                    if depth.is_some() {
                        " (within the window)"
                    } else {
                        ""
                    }
                ),
                None => format!("{} bulls checked", rep.bulls_checked),
            };
            r.check("relaxed-bull", depth, rep.holds, detail);
        }
    }
    Ok(())
}

fn hamilton(h: &HamiltonCommand, r: &mut RunReport) -> Result<()> {
    match h {
        HamiltonCommand::Circle {
            family,
            depth,
            seed,
            probes,
            cert,
        } => {
            r.seed = *seed;
            let depth = check_depth(*depth)?;
            let g = load_family(family)?;
            let c = match timed(r, "build", || build_circle_prefix(&g, depth)) {
                Ok(c) => c,
                Err(e) => {
                    r.error("build", Some(depth), &e);
                    return Ok(());
                }
            };
            let v = timed(r, "verify", || {
                verify_circle_certificate(
                    &c,
                    &g,
                    CutProbes {
                        seed: *seed,
                        count: *probes,
                    },
                )
            });
            record(r, &v, depth);
            r.output(format!(
                "prefixes {}..{} stable-edges {}",
                c.base,
                c.depth,
                c.stable_edges.len()
            ));
            if let Some(p) = cert {
                write_cert(p, &Certificate::Circle(c), r)?;
            }
        }
        HamiltonCommand::Spanning { family, depth } => {
            let depth = check_depth(*depth)?;
            let g = load_family(family)?;
            let sp = match timed(r, "build", || spanning_ray_or_double_ray(&g, depth)) {
                Ok(sp) => sp,
                Err(e) => {
                    r.error("build", Some(depth), &e);
                    return Ok(());
                }
            };
            let v = timed(r, "verify", || verify_spanning_path(&sp, &g));
            record(r, &v, depth);
            r.output(format!("kind {} case {}", sp.kind.as_str(), sp.case));
            let path: Vec<String> = sp.path.iter().map(|v| v.to_string()).collect();
            r.output(format!("path {}", path.join(" ")));
        }
        HamiltonCommand::Leaftree {
            family,
            leaves,
            depth,
            relaxed,
            seed,
            cert,
        } => {
            r.seed = *seed;
            let depth = check_depth(*depth)?;
            let g = load_family(family)?;
            let leaves = LeafSpec::parse_list(leaves)?;
            let opts = LeafTreeOptions {
                require_connectivity: !relaxed,
                ..Default::default()
            };
            let t = match timed(r, "build", || leaf_tree_with(&g, &leaves, depth, opts)) {
                Ok(t) => t,
                Err(e) => {
                    r.error("build", Some(depth), &e);
                    return Ok(());
                }
            };
            let v = timed(r, "verify", || {
                verify_tree_certificate(
                    &t,
                    &g,
                    CutProbes {
                        seed: *seed,
                        count: 128,
                    },
                )
            });
            record(r, &v, depth);
            r.output(format!(
                "finite-tree-edges {} rays {} base {}",
                t.finite_tree.len(),
                t.ray_extensions.len(),
                t.base
            ));
            if let Some(p) = cert {
                write_cert(p, &Certificate::Tree(t), r)?;
            }
        }
        HamiltonCommand::Verify {
            certificate,
            seed,
            probes,
        } => {
            r.seed = *seed;
            let c = Certificate::parse(&read(certificate)?)?;
            let v = timed(r, "verify", || {
                c.verify(CutProbes {
                    seed: *seed,
                    count: *probes,
                })
            })?;
            let depth = match &c {
                Certificate::Circle(c) => c.depth,
                Certificate::Tree(t) => t.depth,
            };
            record(r, &v, depth);
        }
    }
    Ok(())
}

fn write_cert(path: &Path, c: &Certificate, r: &mut RunReport) -> Result<()> {
    fs::write(path, c.to_text()).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    r.output(format!("certificate written to {}", path.display()));
    Ok(())
}

fn oracle(a: &OracleArgs, r: &mut RunReport) -> Result<()> {
    let g = parse_edge_list(&read(&a.graph)?)?;
    let list = |xs: Vec<String>| xs.join(" ");
    let found = match a.op {
        OracleOp::Hamcycle => timed(r, "hamcycle", || brute_hamilton_cycle_capped(&g, a.cap))?
            .map(|c| list(c.iter().map(|e| e.to_string()).collect())),
        OracleOp::Hampath => {
            let ends = a.from.zip(a.to);
            timed(r, "hampath", || brute_hamilton_path_capped(&g, ends, a.cap))?
                .map(|p| list(p.iter().map(|v| v.to_string()).collect()))
        }
        OracleOp::Leaftree => {
            let spec = a
                .leaves
                .as_deref()
                .ok_or_else(|| Error::input("leaftree needs --leaves"))?;
            let leaves = spec
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<VertexId>()
                        .map_err(|_| Error::input(format!("bad leaf {t:?}")))
                })
                .collect::<Result<_>>()?;
            timed(r, "leaftree", || {
                brute_tree_with_leaves_capped(&g, &leaves, a.cap)
            })?
            .map(|t| list(t.iter().map(|e| e.to_string()).collect()))
        }
    };
    let name = format!("oracle-{}", format!("{:?}", a.op).to_lowercase());
    match found {
        Some(w) => {
            r.check(name, None, true, "found");
            r.output(format!("witness {w}"));
        }
        None => {
            r.check(name, None, true, "none exists");
            r.output("witness none");
        }
    }
    Ok(())
}

fn corpus(a: &CorpusArgs, r: &mut RunReport) -> Result<()> {
    r.seed = a.seed;
    let filter = Filter::parse(&a.filter)?;
    let c = timed(r, "generate", || {
        generate_corpus(&filter, a.n_max, a.seed, a.count)
    })?;
    r.check(
        "corpus",
        None,
        true,
        format!("{} graphs satisfy {filter}", c.len()),
    );
    if let Some(n) = &c.notice {
        r.output(format!("notice {n}"));
    }
    if let Some(dir) = &a.dir {
        fs::create_dir_all(dir).map_err(|e| Error::input(format!("{}: {e}", dir.display())))?;
        for i in 0..c.len() {
            let path = dir.join(format!("graph-{i:04}.el"));
            fs::write(&path, c.entry_text(i)?)
                .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        }
        r.output(format!("wrote {} files to {}", c.len(), dir.display()));
    }
    Ok(())
}
