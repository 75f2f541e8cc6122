//! Command-line front end.
//!
//! Exit codes: 0 when every verdict is consistent, 1 when a violation is
//! found, 2 on usage, input or size errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use sdtgraph::autsearch::{automorphism_group, brute_force_automorphisms, BRUTE_FORCE_CAP};
use sdtgraph::corpus::{corpus, find, NamedGraphEntry};
use sdtgraph::design::enumerate_small_one_designs;
use sdtgraph::generators::parse_generators;
use sdtgraph::graph::distance_regular;
use sdtgraph::graph6::parse_graph6;
use sdtgraph::harness::{case_order, factorize, tetravalent_order, verify_main_theorem, TheoremVerdict, Verdict};
use sdtgraph::oracle::pair_count_distance_regular;
use sdtgraph::report::{analyze, orbit_analyses, AnalysisOptions, AnalysisReport, GroupChoice};
use sdtgraph::{Error, GeneratedGroup, Graph};

/// `println!` that ignores a closed stdout, so output can be piped to `head`.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "sdtgraph", version, about = "Symmetry analysis of regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Built-in graph name (see `sdtgraph analyze --list`).
    #[arg(long)]
    name: Option<String>,
    /// graph6 file, one graph per line; `-` reads stdin.
    #[arg(long)]
    graph6: Option<PathBuf>,
    /// Generator file in cycle notation, one permutation per line.
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis report.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Write JSON to this path; `-` writes stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include wall-clock timing in the report.
        #[arg(long)]
        timing: bool,
        /// List built-in graph names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Check the distance-regularity and girth statements.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Every built-in graph, under its full group and shipped subgroups.
        #[arg(long)]
        corpus: bool,
    },
    /// Designs carried by stabilizer orbits, matched against the small
    /// 1-design classes.
    Designs {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        corpus: bool,
        /// Print the 1-design classes on 3 and 4 points.
        #[arg(long)]
        enumerate: bool,
    },
    /// Candidate orders for tetravalent graphs.
    Orders {
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive cross-checks for small graphs.
    Oracle {
        #[command(flatten)]
        input: Input,
    },
}

/// Failure of the command itself, as opposed to a finding.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<io::Error> for Usage {
    fn from(e: io::Error) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

struct Subject {
    id: String,
    graph: Graph,
    groups: Vec<(String, Option<GeneratedGroup>)>,
}

fn read_text(path: &PathBuf) -> Result<String, Usage> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
    }
}

fn entry_subject(entry: &NamedGraphEntry, with_subgroups: bool) -> Result<Subject, Usage> {
    let mut groups = vec![("Aut".to_string(), None)];
    if with_subgroups {
        for sub in &entry.subgroups {
            groups.push((sub.name.to_string(), Some(entry.subgroup(sub.name)?)));
        }
    }
    Ok(Subject {
        id: entry.name.to_string(),
        graph: entry.graph(),
        groups,
    })
}

fn subjects(input: &Input) -> Result<Vec<Subject>, Usage> {
    let mut out = Vec::new();
    match (&input.name, &input.graph6) {
        (Some(name), None) => out.push(entry_subject(&find(name)?, false)?),
        (None, Some(path)) => {
            let text = read_text(path)?;
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let graph = parse_graph6(line).map_err(|e| Usage(format!("line {}: {e}", i + 1)))?;
                out.push(Subject {
                    id: format!("{}:{}", path.display(), i + 1),
                    graph,
                    groups: vec![("Aut".into(), None)],
                });
            }
        }
        _ => return Err(Usage("give exactly one of --name or --graph6".into())),
    }
    if let Some(path) = &input.group {
        let text = read_text(path)?;
        for s in &mut out {
            let gens = parse_generators(&text, s.graph.n())?;
            let group = if gens.is_empty() {
                GeneratedGroup::trivial(s.graph.n())
            } else {
                GeneratedGroup::new(gens)?
            };
            s.groups = vec![(path.display().to_string(), Some(group))];
        }
    }
    Ok(out)
}

fn resolve(graph: &Graph, group: &Option<GeneratedGroup>) -> GeneratedGroup {
    match group {
        Some(g) => g.clone(),
        None => automorphism_group(graph).0,
    }
}

fn cmd_analyze(input: &Input, json_out: &Option<PathBuf>, timing: bool, list: bool) -> Outcome {
    if list {
        for e in corpus() {
            say!("{:<14} {}", e.name, e.description);
        }
        return Ok(true);
    }
    let subjects = subjects(input)?;
    let options = AnalysisOptions { timing };
    let reports: Vec<AnalysisReport> = subjects
        .par_iter()
        .map(|s| {
            let (id, group) = s.groups[0].clone();
            analyze(&s.graph, &s.id, GroupChoice { id, group }, &options)
        })
        .collect::<Result<_, Error>>()?;
    let clean = reports.iter().all(|r| r.violations().is_empty());
    match json_out {
        Some(path) => {
            let text = if reports.len() == 1 {
                reports[0].to_json()?
            } else {
                let values: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| serde_json::from_str(&r.to_json()?).map_err(|e| Error::Invariant(e.to_string())))
                    .collect::<Result<_, Error>>()?;
                serde_json::to_string_pretty(&values).map_err(|e| Usage(e.to_string()))?
            };
            if path.as_os_str() == "-" {
                say!("{text}");
            } else {
                fs::write(path, text + "\n")?;
            }
        }
        None => {
            for r in &reports {
                print_summary(r);
            }
        }
    }
    for r in &reports {
        for v in r.violations() {
            eprintln!("{}: violation: {v}", r.graph.id);
        }
    }
    Ok(clean)
}

fn print_summary(r: &AnalysisReport) {
    let dr = match r.intersection.distance_regularity.array() {
        Some(a) => a.to_string(),
        None => "not distance-regular".into(),
    };
    say!(
        "{}: n={} valency={} girth={} |G|={} {}",
        r.graph.id,
        r.graph.order,
        r.graph.valency.map_or("-".into(), |k| k.to_string()),
        r.girth.girth,
        r.group.order,
        dr
    );
    let t = &r.transitivity;
    say!(
        "  distance-transitive to s={} of d={}, arc-transitive to s={}, local homogeneity {}",
        t.max_distance_transitivity.map_or("-".into(), |s| s.to_string()),
        t.diameter,
        t.max_arc_transitivity.map_or("-".into(), |s| s.to_string()),
        t.local_homogeneity
    );
    for radius in &r.radii {
        for o in &radius.orbits {
            let what = match (&o.design, &o.adjacency, &o.skipped, &o.violation) {
                (_, _, _, Some(v)) => format!("VIOLATION {v}"),
                (Some(d), Some(a), _, _) => format!("{d} P={:?} {:?}", a.partition, a.tag),
                (_, _, Some(why), _) => format!("skipped: {why}"),
                _ => String::new(),
            };
            say!(
                "  s={} orbit {} size {}: {what}",
                radius.s, o.orbit_index, radius.profile.orbit_sizes[o.orbit_index]
            );
        }
    }
    say!("  main statement: {}", r.verdict.verdict);
}

fn verdict_line(v: &TheoremVerdict) -> String {
    let checks: Vec<String> = v
        .checks
        .iter()
        .map(|c| format!("{}: {:?}", c.claim, c.status).to_lowercase())
        .collect();
    let t = &v.observed.transitivity;
    format!(
        "{:<14} {:<10} {:<12} {:<8} {:<15} {}",
        v.graph_id,
        v.group_id,
        format!("{:?}", v.clause).to_lowercase(),
        format!(
            "s={}/d={}",
            t.max_distance_transitivity.map_or("-".into(), |s| s.to_string()),
            t.diameter
        ),
        v.verdict.to_string(),
        checks.join("; ")
    )
}

fn cmd_verify(input: &Input, all: bool) -> Outcome {
    let subjects = if all {
        corpus().iter().map(|e| entry_subject(e, true)).collect::<Result<Vec<_>, _>>()?
    } else {
        subjects(input)?
    };
    let jobs: Vec<(&Subject, &(String, Option<GeneratedGroup>))> =
        subjects.iter().flat_map(|s| s.groups.iter().map(move |g| (s, g))).collect();
    let verdicts: Vec<TheoremVerdict> = jobs
        .par_iter()
        .map(|(s, (id, group))| verify_main_theorem(&s.graph, &resolve(&s.graph, group), &s.id, id))
        .collect::<Result<_, Error>>()?;
    for v in &verdicts {
        say!("{}", verdict_line(v));
    }
    Ok(verdicts.iter().all(|v| v.verdict != Verdict::Violation))
}

fn cmd_designs(input: &Input, all: bool, enumerate: bool) -> Outcome {
    let mut classes = Vec::new();
    for k in 3..=4 {
        for c in 1..=k {
            classes.extend(enumerate_small_one_designs(k, c)?);
        }
    }
    if enumerate {
        for cl in &classes {
            let reps: Vec<String> = cl.labelings.iter().map(|f| format!("{f:?}")).collect();
            say!(
                "1-({},{},{}) blocks={} strength {}-({},{},{}) labelings: {}",
                cl.points,
                cl.block_size,
                cl.lambda_1,
                cl.block_count,
                cl.strength,
                cl.points,
                cl.block_size,
                cl.lambda_strength,
                reps.join(" | ")
            );
        }
        if !all && input.name.is_none() && input.graph6.is_none() {
            return Ok(true);
        }
    }
    let subjects = if all {
        corpus().iter().map(|e| entry_subject(e, true)).collect::<Result<Vec<_>, _>>()?
    } else {
        subjects(input)?
    };
    let mut clean = true;
    for s in &subjects {
        for (id, group) in &s.groups {
            if s.graph.valency().is_none() {
                say!("{} [{id}]: not regular", s.id);
                continue;
            }
            let group = resolve(&s.graph, group);
            for radius in orbit_analyses(&s.graph, &group, 0)? {
                for o in &radius.orbits {
                    let line = match (&o.design, &o.violation) {
                        (_, Some(v)) => {
                            clean = false;
                            format!("VIOLATION {v}")
                        }
                        (Some(d), None) => {
                            let class = classes.iter().position(|cl| {
                                cl.points == d.points && cl.block_size == d.block_size && cl.labelings.contains(&d.blocks)
                            });
                            let tag = class.map_or("no small class".into(), |i| {
                                let cl = &classes[i];
                                format!("class 1-({},{},{})", cl.points, cl.block_size, cl.lambda_1)
                            });
                            format!("{d} blocks {:?} e={} [{tag}]", d.blocks, d.block_class_size)
                        }
                        (None, None) => format!("skipped: {}", o.skipped.clone().unwrap_or_default()),
                    };
                    say!("{} [{id}] s={} orbit {}: {line}", s.id, radius.s, o.orbit_index);
                }
            }
        }
    }
    Ok(clean)
}

fn cmd_orders(as_json: bool) -> Outcome {
    let ds = [3usize, 4, 5, 8];
    let case: Vec<(usize, u128)> = ds.iter().map(|&d| Ok((d, case_order(d)?))).collect::<Result<_, Error>>()?;
    let mut tetra = Vec::new();
    for c in 1..=4usize {
        for &d in &ds {
            tetra.push((c, d, tetravalent_order(c, d)?));
        }
    }
    let factors = factorize(case.last().expect("four diameters").1);
    if as_json {
        let value = json!({
            "case_orders": case.iter().map(|(d, n)| json!({"d": d, "order": n.to_string()})).collect::<Vec<_>>(),
            "tetravalent_orders": tetra.iter().map(|(c, d, n)| json!({"c_d": c, "d": d, "order": n.to_string()})).collect::<Vec<_>>(),
            "factorization": {
                "n": case.last().unwrap().1.to_string(),
                "primes": factors.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            },
        });
        say!("{}", serde_json::to_string_pretty(&value).map_err(|e| Usage(e.to_string()))?);
        return Ok(true);
    }
    say!("11*3^(d-2) - 1");
    say!("  d      {}", ds.map(|d| format!("{d:>6}")).join(""));
    say!("  order  {}", case.iter().map(|(_, n)| format!("{n:>6}")).collect::<String>());
    say!("(6 + 12/c_d)*3^(d-2) - 1");
    say!("  c_d\\d  {}", ds.map(|d| format!("{d:>6}")).join(""));
    for c in 1..=4 {
        let row: String = tetra.iter().filter(|t| t.0 == c).map(|t| format!("{:>6}", t.2)).collect();
        say!("  {c:<5}  {row}");
    }
    let primes: Vec<String> = factors.iter().map(|p| p.to_string()).collect();
    say!("{} = {}", case.last().unwrap().1, primes.join("*"));
    Ok(true)
}

fn cmd_oracle(input: &Input) -> Outcome {
    let subjects = subjects(input)?;
    let mut clean = true;
    for s in &subjects {
        if s.graph.n() > BRUTE_FORCE_CAP {
            return Err(Usage(format!(
                "{}: {} vertices exceed the oracle limit of {BRUTE_FORCE_CAP}",
                s.id,
                s.graph.n()
            )));
        }
        let (group, _) = automorphism_group(&s.graph);
        let all = brute_force_automorphisms(&s.graph)?;
        let aut_ok = group.order().to_string() == all.len().to_string() && all.iter().all(|p| group.contains(p));
        let fast = distance_regular(&s.graph)?;
        let slow = pair_count_distance_regular(&s.graph).map_err(|n| Usage(format!("{n} vertices")))?;
        let dr_ok = fast.array().cloned() == slow;
        say!(
            "{}: |Aut| search={} exhaustive={} {}; distance-regular {} {}",
            s.id,
            group.order(),
            all.len(),
            if aut_ok { "agree" } else { "DISAGREE" },
            fast.is_regular(),
            if dr_ok { "agree" } else { "DISAGREE" }
        );
        clean &= aut_ok && dr_ok;
    }
    Ok(clean)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Analyze { input, json, timing, list } => cmd_analyze(input, json, *timing, *list),
        Command::Verify { input, corpus } => cmd_verify(input, *corpus),
        Command::Designs { input, corpus, enumerate } => cmd_designs(input, *corpus, *enumerate),
        Command::Orders { json } => cmd_orders(*json),
        Command::Oracle { input } => cmd_oracle(input),
    };
    let _ = io::stdout().flush();
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("sdtgraph: {msg}");
            ExitCode::from(2)
        }
    }
}
