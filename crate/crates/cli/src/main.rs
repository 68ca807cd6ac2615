//! `socd`: experiments on strict outerconfluent drawings.
//!
//! Exit codes: 0 success (or strict), 1 an analysis found a violation,
//! 2 bad input or usage.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use confluent_core::width::{
    cut_rank, cut_rank_lower_bound, eval_clique_width_script, exact_rank_width, min_balanced_cut_rank,
    sampled_min_balanced_cut_rank, CliqueWidthScript, Cut,
};
use confluent_core::twinwidth::{parse_sequence, EXACT_TWIN_WIDTH_LIMIT};
use confluent_core::width::cut::EXHAUSTIVE_CUT_LIMIT;
use confluent_core::width::rank_width::EXACT_RANK_WIDTH_LIMIT;
use confluent_core::{
    check_strict, exact_twin_width, extract_graph, generate_gk, greedy_twin_width, parse_drawing, run_census,
    serialize_drawing, validate, verify_sequence, Drawing, OrderedGraph,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(name = "socd", version, about = "Strict outerconfluent drawing toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the drawing G_k.
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=7))]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the graph represented by a drawing.
    Extract {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report loops, repeated curves and unused tracks; exit 1 when not strict.
    CheckStrict { input: PathBuf },
    /// Rank-width, cut rank, twin-width and the dome lower bound.
    Widths {
        /// Graph file or drawing.
        input: PathBuf,
        /// Largest n for exact rank-width and exact twin-width.
        #[arg(long, default_value_t = EXACT_RANK_WIDTH_LIMIT)]
        max_n: usize,
        /// Certified cut-rank lower bound; needs a G_k drawing.
        #[arg(long)]
        lower_bound: bool,
        /// Cut for the lower bound as a 0/1 string; defaults to half/half.
        #[arg(long, requires = "lower_bound")]
        cut: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random balanced cuts tried when n is too large to enumerate.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Count ordered graphs of induced subdrawings.
    Census {
        /// Seed drawings.
        inputs: Vec<PathBuf>,
        /// Add G_k seeds, e.g. `--gk 1,2,3`.
        #[arg(long, value_delimiter = ',')]
        gk: Vec<u32>,
        #[arg(long, default_value_t = 6)]
        m_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Draw a drawing as SVG.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a clique-width script into a graph.
    EvalScript {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-certify a contraction sequence for a graph.
    VerifySequence { graph: PathBuf, sequence: PathBuf },
}

enum Failure {
    Input(String),
    Violation(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_drawing(path: &Path) -> std::result::Result<Drawing, Failure> {
    let d = parse_drawing(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let report = validate(&d);
    if !report.ok() {
        return Err(Failure::Input(format!("{}: invalid drawing: {report}", path.display())));
    }
    Ok(d)
}

fn is_drawing_text(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("socd"))
}

/// `k` when `d` is exactly `G_k`.
fn gk_order(d: &Drawing) -> Option<u32> {
    let k = (1..=7).find(|&k| 3usize.pow(k) == d.n_vertices)?;
    (generate_gk(k).ok()? == *d).then_some(k)
}

fn check_strict_cmd(input: &Path) -> Outcome {
    let d = load_drawing(input)?;
    let r = check_strict(&d);
    println!("vertices {} junctions {} tracks {}", d.n_vertices, d.n_junctions, d.tracks.len());
    println!("loops {:?}", r.loops);
    let pairs: Vec<String> = r.multi_pairs.iter().map(|(u, v, c)| format!("{u}-{v}:{c:?}")).collect();
    println!("multi-curve pairs {pairs:?}");
    println!("unused tracks {:?}", r.unused_tracks);
    if r.strict {
        println!("strict");
        Ok(())
    } else {
        Err(Failure::Violation("not strict".into()))
    }
}

#[allow(clippy::too_many_arguments)]
fn widths_cmd(input: &Path, max_n: usize, lower_bound: bool, cut: Option<String>, seed: u64, samples: usize) -> Outcome {
    if max_n > EXACT_RANK_WIDTH_LIMIT {
        return Err(Failure::Input(format!("--max-n must be at most {EXACT_RANK_WIDTH_LIMIT}")));
    }
    let text = read(input)?;
    let (g, gk) = if is_drawing_text(&text) {
        let d = load_drawing(input)?;
        (extract_graph(&d), gk_order(&d))
    } else {
        (OrderedGraph::parse(&text)?, None)
    };
    if lower_bound && gk.is_none() {
        return Err(Failure::Input("incompatible flags: --lower-bound needs a G_k drawing".into()));
    }
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    println!("seed {seed} samples {samples}");
    println!("{:<24} {}", "vertices", n);
    println!("{:<24} {}", "edges", g.edge_count());
    if n <= max_n {
        let r = exact_rank_width(&g)?;
        println!("{:<24} {} ({} trees)", "rank-width", r.width, r.trees_examined);
    } else {
        println!("{:<24} skipped (n > {max_n})", "rank-width");
    }
    if n <= EXHAUSTIVE_CUT_LIMIT {
        println!("{:<24} {} (exhaustive)", "min balanced cut rank", min_balanced_cut_rank(&g)?);
    } else if let Some(r) = sampled_min_balanced_cut_rank(&g, samples, &mut rng) {
        println!("{:<24} <= {r} ({samples} sampled cuts)", "min balanced cut rank");
    }
    if n <= max_n.min(EXACT_TWIN_WIDTH_LIMIT) {
        println!("{:<24} {} (exact)", "twin-width", exact_twin_width(&g)?.width);
    }
    let greedy = greedy_twin_width(&g);
    let certified = verify_sequence(&g, &greedy.sequence)?;
    println!("{:<24} <= {certified} (greedy, certified)", "twin-width");
    if let Some(k) = gk.filter(|_| lower_bound) {
        let c = match cut {
            Some(s) => Cut::parse(&s)?,
            None => Cut::prefix(n, n / 2),
        };
        if c.n() != n {
            return Err(Failure::Input(format!("cut has {} entries, graph has {n} vertices", c.n())));
        }
        let w = cut_rank_lower_bound(k, &c)?;
        println!("{:<24} {}", "cut", c);
        println!("{:<24} {}", "cut rank", cut_rank(&g, &c));
        println!(
            "{:<24} {} (gap {}, blocks {}..={} and {}..={}, {} domes, arrow {})",
            "witness rank",
            w.bound,
            w.gap,
            w.blocks.0.start,
            w.blocks.0.end,
            w.blocks.1.start,
            w.blocks.1.end,
            w.domes.len(),
            w.arrow
        );
    }
    Ok(())
}

fn census_cmd(inputs: &[PathBuf], gk: &[u32], m_max: usize, seed: u64, samples: usize) -> Outcome {
    let mut seeds = Vec::new();
    for p in inputs {
        seeds.push(load_drawing(p)?);
    }
    for &k in gk {
        if !(1..=7).contains(&k) {
            return Err(Failure::Input(format!("--gk values must be in 1..=7, got {k}")));
        }
        seeds.push(generate_gk(k)?);
    }
    if seeds.is_empty() {
        return Err(Failure::Input("census needs at least one seed drawing".into()));
    }
    let r = run_census(&seeds, m_max, seed, samples)?;
    print!("{}", r.to_table());
    print!("{}", r.to_lines());
    if r.hereditary() {
        Ok(())
    } else {
        Err(Failure::Violation("observed classes are not hereditary".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Generate { k, out } => emit(&out, &serialize_drawing(&generate_gk(k)?)),
        Command::Extract { input, out } => emit(&out, &extract_graph(&load_drawing(&input)?).to_text()),
        Command::CheckStrict { input } => check_strict_cmd(&input),
        Command::Widths {
            input,
            max_n,
            lower_bound,
            cut,
            seed,
            samples,
        } => widths_cmd(&input, max_n, lower_bound, cut, seed, samples),
        Command::Census {
            inputs,
            gk,
            m_max,
            seed,
            samples,
        } => census_cmd(&inputs, &gk, m_max, seed, samples),
        Command::Render { input, out } => emit(&out, &render::render_svg(&load_drawing(&input)?)),
        Command::EvalScript { input, out } => {
            let script = CliqueWidthScript::parse(&read(&input)?)?;
            let r = eval_clique_width_script(&script)?;
            eprintln!("colors used {}", r.colors_used);
            emit(&out, &r.graph.to_text())
        }
        Command::VerifySequence { graph, sequence } => {
            let g = OrderedGraph::parse(&read(&graph)?)?;
            let seq = parse_sequence(&read(&sequence)?)?;
            println!("max red degree {}", verify_sequence(&g, &seq)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("socd: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("socd: {msg}");
            ExitCode::from(2)
        }
    }
}
