//! Command-line front-end: recognition, constructive coloring, exact
//! solving, gadget emission and verification over plain text formats.
//!
//! Exit codes: 0 success, 1 negative mathematical answer (UNSAT, not
//! outerplanar, unknown packing chromatic number, failed verification),
//! 2 usage or input error, 3 exhausted time or memory budget.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use outerpack::construct::{color_112_2connected, color_1124, ConstructError};
use outerpack::gadgets::{self, LabeledGraph};
use outerpack::solver::{
    decide_backtracking, decide_dp_outerplanar_with_budget, packing_chromatic_number, PcnResult,
    Pin, SolveResult, SolverError,
};
use outerpack::verify::{verify_feasible_1124, verify_packing, ColorSequence, Coloring};
use outerpack::{block_cut_tree, outer_embedding, subdivide, weak_dual, Graph, Violation};

/// Environment variable holding the default solver budget in seconds.
const BUDGET_ENV: &str = "OUTERPACK_BUDGET_SECS";

#[derive(Parser)]
#[command(name = "outerpack", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Backtrack,
    Dp,
}

#[derive(Subcommand)]
enum Command {
    /// Recognize outerplanarity and report the block/face structure.
    Recognize {
        /// Graph file in the text format; `-` or absent reads stdin.
        input: Option<PathBuf>,
    },
    /// Constructive coloring: --sequence 1,1,2 (2-connected inputs) or
    /// --sequence 1,1,2,4 (any subcubic outerplanar input).
    Color {
        #[arg(long)]
        sequence: String,
        input: Option<PathBuf>,
    },
    /// Exact packing S-colorability decision.
    Solve {
        /// Comma-separated non-decreasing thresholds, e.g. 1,1,2,5.
        #[arg(long)]
        sequence: String,
        /// Pin `v=c` forces vertex v into class c; `v!=c1,c2` forbids
        /// classes. Repeatable.
        #[arg(long = "pin")]
        pins: Vec<String>,
        #[arg(long, value_enum, default_value_t = Engine::Backtrack)]
        engine: Engine,
        /// Time budget in seconds (default from OUTERPACK_BUDGET_SECS).
        #[arg(long)]
        budget: Option<f64>,
        input: Option<PathBuf>,
    },
    /// Smallest k such that a packing (1,2,...,k)-coloring exists.
    Pcn {
        #[arg(long, default_value_t = 8)]
        max: u32,
        #[arg(long)]
        budget: Option<f64>,
        input: Option<PathBuf>,
    },
    /// Check a coloring file against a graph.
    Verify {
        /// Expected sequence; must match the coloring file when given.
        #[arg(long)]
        sequence: Option<String>,
        #[arg(long)]
        coloring: PathBuf,
        /// Additionally check feasibility conditions (A) and (B) for
        /// (1,1,2,4)-colorings.
        #[arg(long)]
        feasible: bool,
        graph: Option<PathBuf>,
    },
    /// Replace every edge by a path of length two.
    Subdivide {
        input: Option<PathBuf>,
    },
    /// Emit a named gadget with its label table.
    Gadget {
        /// One of: g1, g2, bigg, g3, h, ex13, unit, petersen.
        name: String,
        /// Include the pendant vertex (z6 on g1, x1 on g2, v3 on g3).
        #[arg(long)]
        pendant: bool,
    },
    /// Seeded random subcubic outerplanar graph.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        two_connected: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

const NEGATIVE: u8 = 1;
const EXHAUSTED: u8 = 3;

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Recognize { input } => recognize(&read_graph(input.as_deref())?),
        Command::Color { sequence, input } => {
            color(&parse_sequence(&sequence)?, &read_graph(input.as_deref())?)
        }
        Command::Solve { sequence, pins, engine, budget, input } => {
            let g = read_graph(input.as_deref())?;
            let sequence = parse_sequence(&sequence)?;
            let pins = parse_pins(&pins)?;
            solve(&g, &sequence, &pins, engine, effective_budget(budget)?)
        }
        Command::Pcn { max, budget, input } => {
            pcn(&read_graph(input.as_deref())?, max, effective_budget(budget)?)
        }
        Command::Verify { sequence, coloring, feasible, graph } => {
            let g = read_graph(graph.as_deref())?;
            let c = read_coloring(&coloring, g.vertex_count())?;
            if let Some(expected) = sequence {
                let expected = parse_sequence(&expected)?;
                if &expected != c.sequence() {
                    return Err(format!(
                        "sequence {expected} does not match the coloring file's {}",
                        c.sequence()
                    ));
                }
            }
            verify(&g, &c, feasible)
        }
        Command::Subdivide { input } => {
            let g = read_graph(input.as_deref())?;
            let sub = subdivide(&g);
            print!("{}", sub.subdivided.to_text());
            for &(u, v, mid) in &sub.edge_midpoint {
                println!("# midpoint {u} {v} {mid}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gadget { name, pendant } => gadget(&name, pendant),
        Command::Gen { n, seed, two_connected } => {
            let g = gadgets::random_outerplanar_subcubic(n, seed, two_connected)
                .map_err(|e| e.to_string())?;
            print!("{}", g.to_text());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_input(path: Option<&std::path::Path>) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| format!("reading {}: {e}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("reading stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn read_graph(path: Option<&std::path::Path>) -> Result<Graph, String> {
    Graph::parse_text(&read_input(path)?).map_err(|e| e.to_string())
}

fn parse_sequence(text: &str) -> Result<ColorSequence, String> {
    let thresholds: Result<Vec<u32>, _> =
        text.split(',').map(|t| t.trim().parse::<u32>()).collect();
    let thresholds = thresholds.map_err(|_| format!("bad sequence `{text}`"))?;
    ColorSequence::new(thresholds).map_err(|e| e.to_string())
}

fn parse_pins(texts: &[String]) -> Result<Vec<Pin>, String> {
    let mut pins = Vec::new();
    for t in texts {
        let bad = || format!("bad pin `{t}` (use v=c or v!=c1,c2)");
        if let Some((v, classes)) = t.split_once("!=") {
            let vertex = v.trim().parse().map_err(|_| bad())?;
            let classes: Result<Vec<u32>, _> =
                classes.split(',').map(|c| c.trim().parse()).collect();
            pins.push(Pin::Forbid { vertex, classes: classes.map_err(|_| bad())? });
        } else if let Some((v, class)) = t.split_once('=') {
            pins.push(Pin::Force {
                vertex: v.trim().parse().map_err(|_| bad())?,
                class: class.trim().parse().map_err(|_| bad())?,
            });
        } else {
            return Err(bad());
        }
    }
    Ok(pins)
}

fn effective_budget(flag: Option<f64>) -> Result<Option<Duration>, String> {
    let seconds = match flag {
        Some(s) => Some(s),
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => {
                Some(v.parse::<f64>().map_err(|_| format!("bad {BUDGET_ENV} value `{v}`"))?)
            }
            Err(_) => None,
        },
    };
    match seconds {
        None => Ok(None),
        Some(s) if s >= 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(format!("negative budget {s}")),
    }
}

fn recognize(g: &Graph) -> Result<ExitCode, String> {
    println!("vertices {}", g.vertex_count());
    println!("edges {}", g.edge_count());
    println!("subcubic {}", g.is_subcubic());
    let bt = block_cut_tree(g);
    println!("blocks {}", bt.blocks.len());
    println!(
        "nontrivial_blocks {}",
        bt.blocks.iter().filter(|b| !b.is_trivial()).count()
    );
    println!("cut_vertices {}", bt.cut_vertices.len());
    match outer_embedding(g) {
        Ok(emb) => {
            let wd = weak_dual(&emb);
            println!("outerplanar true");
            println!("faces {}", wd.faces.len());
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            println!("outerplanar false");
            let ids: Vec<String> = e.block.iter().map(u32::to_string).collect();
            println!("offending_block {}", ids.join(" "));
            Ok(ExitCode::from(NEGATIVE))
        }
    }
}

fn print_coloring(c: &Coloring) {
    let parts: Vec<String> =
        c.sequence().thresholds().iter().map(u32::to_string).collect();
    println!("sequence {}", parts.join(" "));
    for (v, class) in c.colored_vertices() {
        println!("color {v} {class}");
    }
}

fn color(sequence: &ColorSequence, g: &Graph) -> Result<ExitCode, String> {
    let outcome = match sequence.thresholds() {
        [1, 1, 2] => color_112_2connected(g),
        [1, 1, 2, 4] => color_1124(g),
        _ => {
            return Err(format!(
                "constructive coloring supports sequences 1,1,2 and 1,1,2,4, not {sequence}"
            ))
        }
    };
    match outcome {
        Ok(c) => {
            println!("result colored");
            print_coloring(&c);
            Ok(ExitCode::SUCCESS)
        }
        Err(
            e @ (ConstructError::NotTwoConnected
            | ConstructError::NotSubcubic
            | ConstructError::NotOuterplanar(_)),
        ) => {
            println!("result out-of-class");
            eprintln!("{e}");
            Ok(ExitCode::from(NEGATIVE))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn solve(
    g: &Graph,
    sequence: &ColorSequence,
    pins: &[Pin],
    engine: Engine,
    budget: Option<Duration>,
) -> Result<ExitCode, String> {
    let outcome = match engine {
        Engine::Backtrack => decide_backtracking(g, sequence, pins, budget),
        Engine::Dp => decide_dp_outerplanar_with_budget(g, sequence, pins, budget),
    };
    match outcome {
        Ok(SolveResult::Sat(c)) => {
            println!("result sat");
            print_coloring(&c);
            Ok(ExitCode::SUCCESS)
        }
        Ok(SolveResult::Unsat) => {
            println!("result unsat");
            Ok(ExitCode::from(NEGATIVE))
        }
        Ok(SolveResult::Timeout(b)) => {
            println!("result timeout");
            eprintln!("budget of {b:?} exhausted");
            Ok(ExitCode::from(EXHAUSTED))
        }
        Err(e @ SolverError::MemoryBudgetExceeded { .. }) => {
            println!("result out-of-memory");
            eprintln!("{e}");
            Ok(ExitCode::from(EXHAUSTED))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn pcn(g: &Graph, max: u32, budget: Option<Duration>) -> Result<ExitCode, String> {
    match packing_chromatic_number(g, max, budget) {
        Ok(PcnResult::Found(k, c)) => {
            println!("pcn {k}");
            print_coloring(&c);
            Ok(ExitCode::SUCCESS)
        }
        Ok(PcnResult::Unknown) => {
            println!("pcn unknown");
            Ok(ExitCode::from(NEGATIVE))
        }
        Ok(PcnResult::Timeout(b)) => {
            println!("pcn timeout");
            eprintln!("budget of {b:?} exhausted");
            Ok(ExitCode::from(EXHAUSTED))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn read_coloring(path: &std::path::Path, n: u32) -> Result<Coloring, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let mut sequence: Option<ColorSequence> = None;
    let mut classes: Vec<Option<u32>> = vec![None; n as usize];
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        let mut words = line.split_whitespace();
        let bad = |msg: &str| format!("coloring file line {}: {msg}", no + 1);
        match words.next() {
            Some("sequence") => {
                let thresholds: Result<Vec<u32>, _> = words.map(str::parse).collect();
                let thresholds = thresholds.map_err(|_| bad("bad thresholds"))?;
                sequence =
                    Some(ColorSequence::new(thresholds).map_err(|e| bad(&e.to_string()))?);
            }
            Some("color") => {
                let v: u32 = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| bad("expected `color <vertex> <class>`"))?;
                let class: u32 = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| bad("expected `color <vertex> <class>`"))?;
                if v >= n {
                    return Err(bad(&format!("vertex {v} outside 0..{n}")));
                }
                classes[v as usize] = Some(class);
            }
            // Payload wrappers and echoes are ignored so solver output can
            // be piped straight back in.
            Some("result") | Some("pcn") | Some("label") | None => {}
            Some(word) if word.starts_with('#') => {}
            Some(word) => return Err(bad(&format!("unknown field `{word}`"))),
        }
    }
    let sequence = sequence.ok_or("coloring file has no `sequence` line")?;
    Coloring::from_classes(sequence, classes).map_err(|e| e.to_string())
}

fn verify(g: &Graph, c: &Coloring, feasible: bool) -> Result<ExitCode, String> {
    let violations = if feasible {
        verify_feasible_1124(g, c).map_err(|e| e.to_string())?
    } else {
        verify_packing(g, c).map_err(|e| e.to_string())?
    };
    if violations.is_empty() {
        println!("verify ok");
        return Ok(ExitCode::SUCCESS);
    }
    for v in &violations {
        match v {
            Violation::Packing { class, u, v, distance, required } => println!(
                "violation packing class={class} u={u} v={v} distance={distance} required={required}"
            ),
            Violation::ConditionA { u, v } => println!("violation condition-a u={u} v={v}"),
            Violation::ConditionB { vertex, four_vertex, distance } => println!(
                "violation condition-b vertex={vertex} four={four_vertex} distance={distance}"
            ),
        }
    }
    Ok(ExitCode::from(NEGATIVE))
}

fn gadget(name: &str, pendant: bool) -> Result<ExitCode, String> {
    let lg: LabeledGraph = match name {
        "g1" => gadgets::gadget_g1(pendant),
        "g2" => gadgets::gadget_g2(pendant),
        "g3" => gadgets::gadget_g3(pendant),
        "bigg" => gadgets::gadget_big_g(),
        "h" => gadgets::gadget_h(),
        "ex13" => gadgets::example_c4_two_ears(),
        "unit" => gadgets::double_triangle_unit(),
        "petersen" => gadgets::petersen(),
        other => return Err(format!("unknown gadget `{other}`")),
    };
    if pendant && !matches!(name, "g1" | "g2" | "g3") {
        return Err(format!("gadget `{name}` has no pendant variant"));
    }
    print!("{}", lg.graph.to_text());
    for (label, v) in &lg.labels {
        println!("# label {label} {v}");
    }
    Ok(ExitCode::SUCCESS)
}
