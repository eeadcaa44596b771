//! `permkit`: exact tooling for permutation codes under the Kendall tau
//! metric and its cyclic variant.

mod codefile;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use permkit_core::{
    ball, basic_nonexistence_check, class_graph, code_anticode_bound,
    construct_diameter3_anticode, cyclic_kendall_distance, cyclic_prime_code,
    distance_regularity_probe, exact_cover_perfect_search, factorial, half_space_anticode,
    kendall_distance, mahonian_row, max_code_search, metric::set_table_capacity,
    optimal_anticode_search, pattern_nonexistence_check, recheck, s5_perfect_cyclic_code,
    verify_perfect, Anticode, Certificate, CodeBook, MaxCodeMethod, Metric, Permutation,
    SearchBudget,
};

#[derive(Parser)]
#[command(
    name = "permkit",
    version,
    about = "Exact combinatorics for permutation codes under the Kendall tau and cyclic Kendall tau metrics"
)]
struct Cli {
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Parse input permutations with 0-based symbols (normalized to 1-based)
    #[arg(long, global = true)]
    zero_based: bool,
    /// Cap the worker threads used by the parallel kernels
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Wall-clock budget in seconds for exhaustive searches
    #[arg(long, global = true)]
    time_budget: Option<f64>,
    /// Seed for sampled invariance spot-checks
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Raise the distance-table capacity (default 10, hard cap 12)
    #[arg(long, global = true)]
    table_capacity: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Kendall,
    Cyclic,
}

impl From<MetricArg> for Metric {
    fn from(arg: MetricArg) -> Metric {
        match arg {
            MetricArg::Kendall => Metric::Kendall,
            MetricArg::Cyclic => Metric::CyclicKendall,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two permutations
    Dist {
        #[arg(long, value_enum, default_value = "kendall")]
        metric: MetricArg,
        perm1: String,
        perm2: String,
    },
    /// All permutations within a radius of a center
    Ball {
        #[arg(long, value_enum, default_value = "kendall")]
        metric: MetricArg,
        #[arg(long)]
        radius: u32,
        perm: String,
    },
    /// The inversion-count distribution of S_n
    Mahonian { n: usize },
    /// Check a code file: minimum distance and, optionally, perfection
    VerifyCode {
        file: PathBuf,
        /// Claimed minimum distance to confirm
        #[arg(long)]
        min_dist: Option<u32>,
        /// Verify the code is a perfect code of this radius
        #[arg(long)]
        perfect: Option<u32>,
        /// Count codewords per (r values, r positions) assignment and
        /// report whether the counts are uniform
        #[arg(long)]
        regularity: Option<usize>,
    },
    /// Emit a known code in the code-file format
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Exhaustive searches
    Search {
        #[command(subcommand)]
        what: SearchCmd,
    },
    /// Perfect-code nonexistence certificates via covering systems
    Nonexist {
        n: usize,
        /// Use the pattern system over position tuples of values 1..=r
        #[arg(long)]
        pattern_r: Option<usize>,
        /// On an inconclusive system verdict, run the exact-cover search
        #[arg(long)]
        escalate_exact_cover: bool,
    },
    /// Anticode constructions and searches
    Anticode {
        #[command(subcommand)]
        what: AnticodeCmd,
    },
    /// Code-anticode upper bound for minimum distance d
    Bound { n: usize, d: u32 },
    /// Structural probes
    Probe {
        #[command(subcommand)]
        what: ProbeCmd,
    },
    /// Rotation classes of S_n
    Classes {
        n: usize,
        /// Also report the class-graph statistics
        #[arg(long)]
        graph_stats: bool,
    },
    /// Re-verify a certificate produced by `nonexist` or `search perfect`
    Recheck { file: PathBuf },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// All rotations of the multiple rows [0, a, 2a, ...] mod n, n prime
    CyclicPrime { n: usize },
    /// The 20-word perfect cyclic code in S_5
    S5Perfect,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Exact-cover search for a perfect code of the given radius
    Perfect {
        n: usize,
        radius: u32,
        #[arg(long, value_enum, default_value = "kendall")]
        metric: MetricArg,
    },
    /// Maximum (or maximal) code of minimum distance d
    Maxcode {
        n: usize,
        d: u32,
        #[arg(long, value_enum, default_value = "kendall")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "greedy-lex")]
        method: MethodArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    ExactClique,
    GreedyLex,
}

#[derive(Subcommand)]
enum AnticodeCmd {
    /// Build a named anticode
    Construct {
        n: usize,
        /// The diameter-3 double ball (radius-1 ball and its (1,2)-translate)
        #[arg(long, conflicts_with = "half_space")]
        diameter3: bool,
        /// One permutation from each reverse pair
        #[arg(long)]
        half_space: bool,
    },
    /// Exact maximum anticode of diameter at most D
    Search {
        n: usize,
        diameter: u32,
        #[arg(long, value_enum, default_value = "kendall")]
        metric: MetricArg,
        /// Enumerate every optimum (n <= 5) and classify them as balls
        #[arg(long)]
        enumerate_optima: bool,
    },
}

#[derive(Subcommand)]
enum ProbeCmd {
    /// Midpoint counts witnessing that the Kendall graph is not distance regular
    DistanceRegularity { n: usize },
}

fn main() {
    // die quietly when piped into `head` and friends
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn budget_from(cli: &Cli) -> SearchBudget {
    match cli.time_budget {
        Some(seconds) => SearchBudget::with_time_limit(seconds),
        None => SearchBudget::unlimited(),
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    if let Some(capacity) = cli.table_capacity {
        set_table_capacity(capacity)?;
        if capacity >= 11 {
            eprintln!(
                "warning: a distance table for n = {capacity} holds {} one-byte entries (~{} MB)",
                factorial(capacity),
                factorial(capacity) / (1 << 20)
            );
        }
    }
    let start = Instant::now();
    match &cli.command {
        Command::Dist {
            metric,
            perm1,
            perm2,
        } => {
            let metric: Metric = (*metric).into();
            let a = Permutation::parse(perm1, cli.zero_based)?;
            let b = Permutation::parse(perm2, cli.zero_based)?;
            let distance = match metric {
                Metric::Kendall => kendall_distance(&a, &b)?,
                Metric::CyclicKendall => cyclic_kendall_distance(&a, &b)?,
            };
            #[derive(Serialize)]
            struct DistReport {
                n: usize,
                metric: Metric,
                perm1: String,
                perm2: String,
                distance: u32,
            }
            if cli.json {
                report::print_json(
                    "dist",
                    json!({"metric": metric, "perm1": perm1, "perm2": perm2, "zero_based": cli.zero_based}),
                    ms(start),
                    DistReport {
                        n: a.n(),
                        metric,
                        perm1: a.to_string(),
                        perm2: b.to_string(),
                        distance,
                    },
                );
            } else {
                println!("{distance}");
            }
        }
        Command::Ball {
            metric,
            radius,
            perm,
        } => {
            let metric: Metric = (*metric).into();
            let center = Permutation::parse(perm, cli.zero_based)?;
            let members = ball(&center, *radius, metric)?;
            #[derive(Serialize)]
            struct BallReport {
                n: usize,
                metric: Metric,
                center: String,
                radius: u32,
                size: usize,
                members: Vec<String>,
            }
            if cli.json {
                report::print_json(
                    "ball",
                    json!({"metric": metric, "radius": radius, "perm": perm, "zero_based": cli.zero_based}),
                    ms(start),
                    BallReport {
                        n: center.n(),
                        metric,
                        center: center.to_string(),
                        radius: *radius,
                        size: members.len(),
                        members: members.iter().map(|m| m.to_string()).collect(),
                    },
                );
            } else {
                println!(
                    "ball of radius {radius} around [{center}] under {metric}: {} members",
                    members.len()
                );
                for member in &members {
                    println!("{member}");
                }
            }
        }
        Command::Mahonian { n } => {
            if *n < 1 || *n > permkit_core::perm::MAX_N {
                bail!("n must be in 1..={}", permkit_core::perm::MAX_N);
            }
            let row = mahonian_row(*n);
            let total: num_bigint::BigUint = row.iter().sum();
            #[derive(Serialize)]
            struct MahonianReport {
                n: usize,
                row: Vec<String>,
                total: String,
            }
            if cli.json {
                report::print_json(
                    "mahonian",
                    json!({"n": n}),
                    ms(start),
                    MahonianReport {
                        n: *n,
                        row: row.iter().map(|v| v.to_string()).collect(),
                        total: total.to_string(),
                    },
                );
            } else {
                let rendered: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("{}", rendered.join(" "));
            }
        }
        Command::VerifyCode {
            file,
            min_dist,
            perfect,
            regularity,
        } => {
            let mut code = codefile::load(file, cli.zero_based)?;
            code.claimed_min_distance = *min_dist;
            let measured = if code.len() >= 2 {
                Some(code.min_distance()?)
            } else {
                None
            };
            let claim_ok = match (min_dist, measured) {
                (Some(claim), Some(measured)) => Some(measured == *claim),
                (Some(_), None) => Some(false),
                (None, _) => None,
            };
            let perfection = match perfect {
                Some(radius) => Some(verify_perfect(&code, *radius)?),
                None => None,
            };
            let regularity_report = match regularity {
                Some(r) => Some(permkit_core::verify_regularity(&code, *r)?),
                None => None,
            };
            #[derive(Serialize)]
            struct PerfectionJson {
                radius: u32,
                perfect: bool,
                ball_size: u64,
                code_size: u64,
                space_size: u64,
                defect_count: u64,
                defects: Vec<(String, u64)>,
            }
            #[derive(Serialize)]
            struct RegularityJson {
                r: usize,
                uniform: bool,
                expected: String,
                min_count: u64,
                max_count: u64,
                assignments: usize,
            }
            #[derive(Serialize)]
            struct VerifyReport {
                n: usize,
                metric: Metric,
                size: usize,
                measured_min_distance: Option<u32>,
                claimed_min_distance: Option<u32>,
                claim_ok: Option<bool>,
                perfection: Option<PerfectionJson>,
                regularity: Option<RegularityJson>,
            }
            let regularity_json = regularity_report.as_ref().map(|r| RegularityJson {
                r: r.r,
                uniform: r.uniform,
                expected: r.expected.to_string(),
                min_count: r.min_count,
                max_count: r.max_count,
                assignments: r.counts.len(),
            });
            let perfection_json = perfection.as_ref().map(|p| PerfectionJson {
                radius: p.radius,
                perfect: p.is_perfect(),
                ball_size: p.ball_size,
                code_size: p.code_size,
                space_size: p.space_size,
                defect_count: p.defect_count,
                defects: p
                    .defects
                    .iter()
                    .map(|(perm, count)| (perm.to_string(), *count))
                    .collect(),
            });
            if cli.json {
                report::print_json(
                    "verify-code",
                    json!({"file": file.display().to_string(), "min_dist": min_dist, "perfect": perfect, "regularity": regularity, "zero_based": cli.zero_based}),
                    ms(start),
                    VerifyReport {
                        n: code.n(),
                        metric: code.metric(),
                        size: code.len(),
                        measured_min_distance: measured,
                        claimed_min_distance: *min_dist,
                        claim_ok,
                        perfection: perfection_json,
                        regularity: regularity_json,
                    },
                );
            } else {
                println!(
                    "code: n = {}, metric = {}, {} words",
                    code.n(),
                    code.metric(),
                    code.len()
                );
                match measured {
                    Some(d) => println!("measured minimum distance: {d}"),
                    None => {
                        println!("measured minimum distance: undefined (fewer than two words)")
                    }
                }
                if let Some(ok) = claim_ok {
                    println!(
                        "claimed minimum distance {}: {}",
                        min_dist.unwrap(),
                        if ok { "confirmed" } else { "REFUTED" }
                    );
                }
                if let Some(r) = &regularity_report {
                    println!(
                        "regularity at r = {}: {} (expected {}, counts {}..{})",
                        r.r,
                        if r.uniform { "uniform" } else { "NOT uniform" },
                        r.expected,
                        r.min_count,
                        r.max_count
                    );
                }
                if let Some(p) = &perfection {
                    if p.is_perfect() {
                        println!(
                            "perfect {}-error-correcting: yes ({} x {} = {})",
                            p.radius, p.code_size, p.ball_size, p.space_size
                        );
                    } else {
                        println!(
                            "perfect {}-error-correcting: no ({} defects; first: {})",
                            p.radius,
                            p.defect_count,
                            p.defects
                                .iter()
                                .map(|(perm, count)| format!("[{perm}] covered {count}x"))
                                .collect::<Vec<_>>()
                                .join(", ")
                        );
                    }
                }
            }
        }
        Command::Construct { what } => {
            let code = match what {
                ConstructCmd::CyclicPrime { n } => cyclic_prime_code(*n)?,
                ConstructCmd::S5Perfect => s5_perfect_cyclic_code(),
            };
            // measuring needs a distance table; skip when over the cap
            let measured = match code.min_distance() {
                Ok(d) => Some(d),
                Err(permkit_core::Error::CapacityExceeded { .. }) => None,
                Err(err) => return Err(err.into()),
            };
            #[derive(Serialize)]
            struct ConstructReport {
                n: usize,
                metric: Metric,
                size: usize,
                measured_min_distance: Option<u32>,
                words: Vec<String>,
            }
            if cli.json {
                let params = match what {
                    ConstructCmd::CyclicPrime { n } => {
                        json!({"construction": "cyclic-prime", "n": n})
                    }
                    ConstructCmd::S5Perfect => json!({"construction": "s5-perfect"}),
                };
                report::print_json(
                    "construct",
                    params,
                    ms(start),
                    ConstructReport {
                        n: code.n(),
                        metric: code.metric(),
                        size: code.len(),
                        measured_min_distance: measured,
                        words: code.words().iter().map(|w| w.to_string()).collect(),
                    },
                );
            } else {
                print!("{}", codefile::render(&code));
                match measured {
                    Some(d) => eprintln!(
                        "constructed {} words in S_{}; measured minimum {} distance: {d}",
                        code.len(),
                        code.n(),
                        code.metric()
                    ),
                    None => eprintln!(
                        "constructed {} words in S_{}; minimum distance not measured (distance table over the capacity limit; raise with --table-capacity)",
                        code.len(),
                        code.n()
                    ),
                }
            }
        }
        Command::Search { what } => match what {
            SearchCmd::Perfect { n, radius, metric } => {
                let metric: Metric = (*metric).into();
                let cert = exact_cover_perfect_search(*n, *radius, metric, &budget_from(&cli))?;
                emit_certificate(
                    &cli,
                    "search-perfect",
                    json!({"n": n, "radius": radius, "metric": metric, "time_budget": cli.time_budget}),
                    ms(start),
                    &cert,
                    None,
                );
            }
            SearchCmd::Maxcode {
                n,
                d,
                metric,
                method,
            } => {
                let metric: Metric = (*metric).into();
                let method_core = match method {
                    MethodArg::ExactClique => MaxCodeMethod::ExactClique,
                    MethodArg::GreedyLex => MaxCodeMethod::GreedyLex,
                };
                let result = max_code_search(*n, *d, metric, method_core, &budget_from(&cli))?;
                let measured = if result.code.len() >= 2 {
                    Some(result.code.min_distance()?)
                } else {
                    None
                };
                #[derive(Serialize)]
                struct MaxCodeReport {
                    n: usize,
                    d: u32,
                    metric: Metric,
                    method: String,
                    size: usize,
                    measured_min_distance: Option<u32>,
                    proven_maximum: bool,
                    nodes: u64,
                    words: Vec<String>,
                }
                let method_name = match method {
                    MethodArg::ExactClique => "exact-clique",
                    MethodArg::GreedyLex => "greedy-lex",
                };
                if cli.json {
                    report::print_json(
                        "search-maxcode",
                        json!({"n": n, "d": d, "metric": metric, "method": method_name, "time_budget": cli.time_budget}),
                        ms(start),
                        MaxCodeReport {
                            n: *n,
                            d: *d,
                            metric,
                            method: method_name.to_string(),
                            size: result.code.len(),
                            measured_min_distance: measured,
                            proven_maximum: result.proven_maximum,
                            nodes: result.nodes,
                            words: result.code.words().iter().map(|w| w.to_string()).collect(),
                        },
                    );
                } else {
                    println!(
                        "{} code of {} words with minimum {} distance >= {d} in S_{n}",
                        if result.proven_maximum {
                            "maximum"
                        } else {
                            "maximal (not proven maximum)"
                        },
                        result.code.len(),
                        metric,
                    );
                    for word in result.code.words() {
                        println!("{word}");
                    }
                }
            }
        },
        Command::Nonexist {
            n,
            pattern_r,
            escalate_exact_cover,
        } => {
            let cert = match pattern_r {
                None => basic_nonexistence_check(*n)?,
                Some(r) => pattern_nonexistence_check(*n, *r, cli.seed)?,
            };
            let escalation = if *escalate_exact_cover
                && cert.verdict == permkit_core::Verdict::Inconclusive
            {
                Some(exact_cover_perfect_search(
                    *n,
                    1,
                    Metric::Kendall,
                    &budget_from(&cli),
                )?)
            } else {
                None
            };
            emit_certificate(
                &cli,
                "nonexist",
                json!({"n": n, "pattern_r": pattern_r, "escalate_exact_cover": escalate_exact_cover, "seed": cli.seed, "time_budget": cli.time_budget}),
                ms(start),
                &cert,
                escalation.as_ref(),
            );
        }
        Command::Anticode { what } => match what {
            AnticodeCmd::Construct {
                n,
                diameter3,
                half_space,
            } => {
                let (kind, anticode): (&str, Anticode) = if *diameter3 {
                    ("diameter3", construct_diameter3_anticode(*n)?)
                } else if *half_space {
                    ("half-space", half_space_anticode(*n)?)
                } else {
                    bail!("choose a construction: --diameter3 or --half-space");
                };
                #[derive(Serialize)]
                struct AnticodeReport {
                    n: usize,
                    metric: Metric,
                    kind: String,
                    size: usize,
                    diameter: u32,
                    members: Vec<String>,
                }
                if cli.json {
                    report::print_json(
                        "anticode-construct",
                        json!({"n": n, "kind": kind}),
                        ms(start),
                        AnticodeReport {
                            n: anticode.n(),
                            metric: anticode.metric(),
                            kind: kind.to_string(),
                            size: anticode.len(),
                            diameter: anticode.diameter(),
                            members: anticode.members().iter().map(|m| m.to_string()).collect(),
                        },
                    );
                } else {
                    println!(
                        "{kind} anticode in S_{}: {} members, diameter {}",
                        anticode.n(),
                        anticode.len(),
                        anticode.diameter()
                    );
                    for member in anticode.members() {
                        println!("{member}");
                    }
                }
            }
            AnticodeCmd::Search {
                n,
                diameter,
                metric,
                enumerate_optima,
            } => {
                let metric: Metric = (*metric).into();
                let outcome = optimal_anticode_search(
                    *n,
                    *diameter,
                    metric,
                    *enumerate_optima,
                    &budget_from(&cli),
                )?;
                #[derive(Serialize)]
                struct AnticodeSearchReport {
                    n: usize,
                    diameter: u32,
                    metric: Metric,
                    max_size: usize,
                    proven: bool,
                    enumerated_all: bool,
                    num_optima: Option<usize>,
                    all_optima_are_balls: Option<bool>,
                    nodes: u64,
                    witness: Vec<String>,
                }
                if cli.json {
                    report::print_json(
                        "anticode-search",
                        json!({"n": n, "diameter": diameter, "metric": metric, "enumerate_optima": enumerate_optima, "time_budget": cli.time_budget}),
                        ms(start),
                        AnticodeSearchReport {
                            n: *n,
                            diameter: *diameter,
                            metric,
                            max_size: outcome.max_size,
                            proven: outcome.proven,
                            enumerated_all: outcome.enumerated_all,
                            num_optima: outcome.enumerated_all.then_some(outcome.witnesses.len()),
                            all_optima_are_balls: outcome.all_optima_are_balls,
                            nodes: outcome.nodes,
                            witness: outcome.witnesses[0]
                                .members()
                                .iter()
                                .map(|m| m.to_string())
                                .collect(),
                        },
                    );
                } else {
                    println!(
                        "{} anticode size for diameter {} in S_{} under {}: {}",
                        if outcome.proven {
                            "maximum"
                        } else {
                            "best-found"
                        },
                        diameter,
                        n,
                        metric,
                        outcome.max_size
                    );
                    if outcome.enumerated_all {
                        println!(
                            "optima: {} in total; all radius-{} balls: {}",
                            outcome.witnesses.len(),
                            diameter / 2,
                            match outcome.all_optima_are_balls {
                                Some(true) => "yes",
                                Some(false) => "no",
                                None => "not checked",
                            }
                        );
                    }
                    println!("witness:");
                    for member in outcome.witnesses[0].members() {
                        println!("{member}");
                    }
                }
            }
        },
        Command::Bound { n, d } => {
            let bound = code_anticode_bound(*n, *d)?;
            #[derive(Serialize)]
            struct BoundJson {
                n: usize,
                d: u32,
                bound: u64,
                anticode_size: u64,
                anticode_diameter: u32,
                anticode_used: String,
                exact_diameter_match: bool,
                achieving_code_size: Option<usize>,
            }
            if cli.json {
                report::print_json(
                    "bound",
                    json!({"n": n, "d": d}),
                    ms(start),
                    BoundJson {
                        n: bound.n,
                        d: bound.d,
                        bound: bound.bound,
                        anticode_size: bound.anticode_size,
                        anticode_diameter: bound.anticode_diameter,
                        anticode_used: bound.anticode_used.clone(),
                        exact_diameter_match: bound.exact_diameter_match,
                        achieving_code_size: bound.achieving_code.as_ref().map(CodeBook::len),
                    },
                );
            } else {
                println!(
                    "|C| <= {} for codes in S_{n} with minimum Kendall distance {d}",
                    bound.bound
                );
                println!(
                    "via the {} (size {}, diameter {}){}",
                    bound.anticode_used,
                    bound.anticode_size,
                    bound.anticode_diameter,
                    if bound.exact_diameter_match {
                        ""
                    } else {
                        " (diameter below d-1, bound not tight)"
                    }
                );
                if let Some(code) = &bound.achieving_code {
                    println!("attained by a known code of size {}", code.len());
                }
            }
        }
        Command::Probe { what } => match what {
            ProbeCmd::DistanceRegularity { n } => {
                let probe = distance_regularity_probe(*n)?;
                #[derive(Serialize)]
                struct ProbeReport {
                    n: usize,
                    distance_to_first: u32,
                    distance_to_second: u32,
                    midpoints_first: u64,
                    midpoints_second: u64,
                    not_distance_regular: bool,
                }
                if cli.json {
                    report::print_json(
                        "probe-distance-regularity",
                        json!({"n": n}),
                        ms(start),
                        ProbeReport {
                            n: probe.n,
                            distance_to_first: probe.distance_to_first,
                            distance_to_second: probe.distance_to_second,
                            midpoints_first: probe.midpoints_first,
                            midpoints_second: probe.midpoints_second,
                            not_distance_regular: probe.not_distance_regular,
                        },
                    );
                } else {
                    println!(
                        "pairs at distances ({}, {}): midpoint counts {} vs {}",
                        probe.distance_to_first,
                        probe.distance_to_second,
                        probe.midpoints_first,
                        probe.midpoints_second
                    );
                    println!(
                        "graph is {}distance regular",
                        if probe.not_distance_regular { "NOT " } else { "" }
                    );
                }
            }
        },
        Command::Classes { n, graph_stats } => {
            let graph = class_graph(*n)?;
            #[derive(Serialize)]
            struct GraphStats {
                edges: usize,
                min_degree: usize,
                max_degree: usize,
                diameter: u32,
            }
            #[derive(Serialize)]
            struct ClassesReport {
                n: usize,
                class_count: usize,
                class_size: usize,
                graph: Option<GraphStats>,
            }
            let stats = graph_stats.then(|| {
                let degrees = graph.degrees();
                GraphStats {
                    edges: graph.edge_count(),
                    min_degree: degrees.iter().copied().min().unwrap_or(0),
                    max_degree: degrees.iter().copied().max().unwrap_or(0),
                    diameter: graph.graph_diameter(),
                }
            });
            if cli.json {
                report::print_json(
                    "classes",
                    json!({"n": n, "graph_stats": graph_stats}),
                    ms(start),
                    ClassesReport {
                        n: *n,
                        class_count: graph.class_count(),
                        class_size: *n,
                        graph: stats,
                    },
                );
            } else {
                println!(
                    "S_{n} has {} rotation classes of size {n}",
                    graph.class_count()
                );
                if let Some(stats) = stats {
                    println!(
                        "class graph: {} edges, degrees {}..{}, diameter {}",
                        stats.edges, stats.min_degree, stats.max_degree, stats.diameter
                    );
                }
                for index in 0..graph.class_count() {
                    println!("{}", graph.representative(index));
                }
            }
        }
        Command::Recheck { file } => {
            let text = std::fs::read_to_string(file)
                .with_context(|| format!("cannot read certificate {}", file.display()))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).context("certificate is not valid JSON")?;
            let cert_value = value.get("certificate").cloned().unwrap_or(value);
            let cert: Certificate = serde_json::from_value(cert_value)
                .context("certificate payload does not match the schema")?;
            let confirmed = recheck(&cert)?;
            #[derive(Serialize)]
            struct RecheckReport {
                n: usize,
                method: permkit_core::Method,
                verdict: permkit_core::Verdict,
                confirmed: bool,
            }
            if cli.json {
                report::print_json(
                    "recheck",
                    json!({"file": file.display().to_string()}),
                    ms(start),
                    RecheckReport {
                        n: cert.n,
                        method: cert.method,
                        verdict: cert.verdict,
                        confirmed,
                    },
                );
            } else {
                println!(
                    "certificate (n = {}, method {:?}, verdict {:?}): {}",
                    cert.n,
                    cert.method,
                    cert.verdict,
                    if confirmed { "confirmed" } else { "REFUTED" }
                );
            }
            if !confirmed {
                bail!("certificate did not re-verify");
            }
        }
    }
    Ok(())
}

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

#[derive(Serialize)]
struct CertificatePayload<'a> {
    certificate: &'a Certificate,
    escalation: Option<&'a Certificate>,
}

fn emit_certificate(
    cli: &Cli,
    command: &str,
    params: serde_json::Value,
    runtime_ms: u64,
    cert: &Certificate,
    escalation: Option<&Certificate>,
) {
    if cli.json {
        report::print_json(
            command,
            params,
            runtime_ms,
            CertificatePayload {
                certificate: cert,
                escalation,
            },
        );
    } else {
        print_certificate(cert);
        if let Some(extra) = escalation {
            println!("escalation:");
            print_certificate(extra);
        }
    }
}

fn print_certificate(cert: &Certificate) {
    println!(
        "verdict: {:?} (method {:?}, n = {}, metric = {}, radius = {})",
        cert.verdict, cert.method, cert.n, cert.metric, cert.radius
    );
    if let Some(r) = cert.pattern_r {
        println!("pattern tuple length: {r}");
    }
    if let Some(hash) = &cert.matrix_hash {
        println!("matrix hash: {hash}");
    }
    if let Some(solution) = &cert.solution {
        // uniform vectors are the common case; compress them
        if solution.windows(2).all(|w| w[0] == w[1]) {
            println!("solution: {} (x{})", solution[0], solution.len());
        } else {
            println!("solution: {}", solution.join(", "));
        }
    }
    if let Some(dim) = cert.kernel_dim {
        println!("kernel dimension: {dim}");
    }
    if let (Some(space), Some(ball)) = (&cert.space_size, cert.ball_size) {
        println!("space size: {space}, ball size: {ball}");
    }
    if let Some(witness) = &cert.witness {
        println!("witness ({} words):", witness.len());
        for word in witness {
            let rendered: Vec<String> = word.iter().map(|v| v.to_string()).collect();
            println!("{}", rendered.join(" "));
        }
    }
    println!("detail: {}", cert.detail);
    println!(
        "stats: {} nodes, {} ms{}",
        cert.stats.nodes,
        cert.stats.elapsed_ms,
        if cert.stats.budget_exhausted {
            " (budget exhausted)"
        } else {
            ""
        }
    );
}
