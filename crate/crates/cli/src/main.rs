mod input;
mod verify;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use permdual::bijection::{
    bijection_b, bijection_b_inverse, check_cap, factorization_from_prufer, for_each_factorization,
    prufer_code_at, tree_count, Generator,
};
use permdual::chord::{chord_diagram, gy_dual};
use permdual::dual::DualMethod;
use permdual::mindbody::mb_sequence;
use permdual::trails::{migt, migt_cover, realize, Realization};
use permdual::{Direction, LabeledMultigraph, TrailDoubleCover, TranspositionSequence};
use rayon::prelude::*;

use input::{parse_sequence, write_file, CliError, Source};
use verify::{parse_range, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "permdual", version, about = "Duals of transposition sequences, greedy trails and tree bijections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Mb,
    Trail,
    Algebraic,
    GraphAlg,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    Down,
    Up,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeneratorArg {
    Dfs,
    Prufer,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dual of a sequence (sequence or graph text).
    Dual {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "mb")]
        method: MethodArg,
        /// Write the input graph and its dual as DOT.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Print the mind-body assignments A_0..A_m of a sequence.
    MbTrace {
        #[command(flatten)]
        source: Source,
    },
    /// Print the greedy trails of a labeled graph.
    Migt {
        #[command(flatten)]
        source: Source,
        /// Only the trail starting here.
        #[arg(long)]
        vertex: Option<usize>,
        /// Write the graph as DOT.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Decide whether a trail double cover comes from an edge labeling.
    Realize {
        #[command(flatten)]
        source: Source,
        /// Write the edge digraph as DOT.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Enumerate factorizations of the long cycle.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "down")]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value = "dfs")]
        generator: GeneratorArg,
        #[arg(long, conflicts_with = "emit", required_unless_present = "emit")]
        count_only: bool,
        #[arg(long)]
        emit: bool,
    },
    /// Map a factorization to its tree, or a tree back to its factorization.
    Bijection {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "inverse", required_unless_present = "inverse")]
        forward: bool,
        #[arg(long)]
        inverse: bool,
    },
    /// Circle chord diagram of a tree sequence.
    Chord {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        emit_svg: Option<PathBuf>,
        /// Draw the chord-region dual over the diagram.
        #[arg(long)]
        overlay: bool,
        /// Report the non-crossing and clockwise-decreasing properties.
        #[arg(long)]
        check: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Sizes to check exhaustively, `a..b` inclusive.
        #[arg(long, default_value = "3..6", value_parser = parse_range)]
        n: std::ops::RangeInclusive<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random inputs per sampled check.
        #[arg(long, default_value_t = 1000)]
        sample_size: usize,
        /// Check a bundled cover instead of generated graphs.
        #[arg(long)]
        fixture: Option<String>,
    },
}

/// Text for stdout and whether the command's own checks passed.
type Output = (String, bool);

fn dual_cmd(source: &Source, method: MethodArg, emit_dot: Option<&PathBuf>) -> Result<Output, CliError> {
    let s = source.sequence()?;
    let reference = DualMethod::MindBody.apply(&s);
    if let Some(path) = emit_dot {
        let dot = LabeledMultigraph::from(&s).to_dot("input") + &LabeledMultigraph::from(&reference).to_dot("dual");
        write_file(path, &dot)?;
    }
    let single = |m: DualMethod| (format!("{}\n", m.apply(&s)), true);
    Ok(match method {
        MethodArg::Mb => single(DualMethod::MindBody),
        MethodArg::Trail => single(DualMethod::Trail),
        MethodArg::Algebraic => single(DualMethod::Algebraic),
        MethodArg::GraphAlg => single(DualMethod::GraphAlgorithm),
        MethodArg::All => {
            let mut out = String::new();
            let mut agree = true;
            for (m, d) in verify::all_duals(&s) {
                agree &= d == reference;
                out.push_str(&format!("{m}: {d}\n"));
            }
            out.push_str(if agree { "agree: yes\n" } else { "agree: no\n" });
            (out, agree)
        }
    })
}

fn mb_trace_cmd(source: &Source) -> Result<Output, CliError> {
    let s = source.sequence()?;
    let mut out = String::new();
    for (k, a) in mb_sequence(&s).assignments().iter().enumerate() {
        out.push_str(&format!("A_{k} = {a}\n"));
    }
    Ok((out, true))
}

fn migt_cmd(source: &Source, vertex: Option<usize>, emit_dot: Option<&PathBuf>) -> Result<Output, CliError> {
    let g = LabeledMultigraph::from(&source.sequence()?);
    if let Some(path) = emit_dot {
        write_file(path, &g.to_dot("G"))?;
    }
    let out = match vertex {
        Some(v) => format!("{}\n", migt(&g, v)?),
        None => migt_cover(&g).to_string(),
    };
    Ok((out, true))
}

fn read_cover(source: &Source) -> Result<TrailDoubleCover, CliError> {
    let text = source.text(&["cover", "graph", "seq"])?;
    match text.parse::<TrailDoubleCover>() {
        Ok(c) => Ok(c),
        Err(cover_err) => match parse_sequence(&text) {
            // a bare graph or sequence means its greedy cover
            Ok(s) => Ok(migt_cover(&LabeledMultigraph::from(&s))),
            Err(_) => Err(cover_err.into()),
        },
    }
}

fn realize_cmd(source: &Source, emit_dot: Option<&PathBuf>) -> Result<Output, CliError> {
    let cover = read_cover(source)?;
    if let Some(path) = emit_dot {
        write_file(path, &cover.edge_digraph().to_dot("D"))?;
    }
    let join = |v: &[usize]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
    let out = match realize(&cover)? {
        Realization::Realizable { order, labeling } => {
            let relabeled = permdual::trails::relabel(cover.graph(), &labeling);
            format!("realizable\norder: {}\n{relabeled}", join(&order))
        }
        Realization::NotRealizable { cycle } => format!("not realizable\ncycle: {}\n", join(&cycle)),
    };
    Ok((out, true))
}

fn enumerate_cmd(
    n: usize,
    direction: DirectionArg,
    generator: GeneratorArg,
    emit: bool,
) -> Result<Output, CliError> {
    check_cap(n)?;
    let direction = match direction {
        DirectionArg::Down => Direction::Down,
        DirectionArg::Up => Direction::Up,
    };
    let generator = match generator {
        GeneratorArg::Dfs => Generator::Dfs,
        GeneratorArg::Prufer => Generator::Prufer,
    };
    let mut members: Vec<TranspositionSequence> = match generator {
        Generator::Dfs if !emit => {
            let count = for_each_factorization(n, direction, generator, |_| {})?;
            return Ok((summary(n, direction, generator, count), true));
        }
        Generator::Dfs => {
            let mut members = Vec::new();
            for_each_factorization(n, direction, generator, |s| members.push(s.clone()))?;
            members
        }
        Generator::Prufer => (0..tree_count(n))
            .into_par_iter()
            .map(|i| factorization_from_prufer(n, &prufer_code_at(n, i), direction))
            .collect::<Result<Vec<_>, _>>()?,
    };
    if !emit {
        return Ok((summary(n, direction, generator, members.len()), true));
    }
    members.sort();
    let mut out = String::new();
    for s in &members {
        out.push_str(&format!("{s}\n"));
    }
    Ok((out, true))
}

fn summary(n: usize, direction: Direction, generator: Generator, count: usize) -> String {
    format!("n={n} direction={direction} generator={} count={count}\n", generator.name())
}

fn bijection_cmd(source: &Source, forward: bool) -> Result<Output, CliError> {
    let out = if forward {
        format!("{}\n", bijection_b(&source.sequence()?)?)
    } else {
        format!("{}\n", bijection_b_inverse(&source.tree()?)?)
    };
    Ok((out, true))
}

fn chord_cmd(source: &Source, emit_svg: Option<&PathBuf>, overlay: bool, check: bool) -> Result<Output, CliError> {
    let s = source.sequence()?;
    let d = chord_diagram(&s)?;
    if let Some(path) = emit_svg {
        let dual = if overlay { Some(gy_dual(&s)?) } else { None };
        write_file(path, &d.to_svg(dual.as_ref()))?;
    }
    let mut out = String::new();
    let mut ok = true;
    if check {
        match d.check_noncrossing() {
            Ok(()) => out.push_str("non-crossing: ok\n"),
            Err((a, b)) => {
                ok = false;
                out.push_str(&format!("non-crossing: chords {a} and {b} cross\n"));
            }
        }
        match d.check_clockwise_decreasing() {
            Ok(()) => out.push_str("clockwise-decreasing: ok\n"),
            Err(v) => {
                ok = false;
                out.push_str(&format!("clockwise-decreasing: fails at point {v}\n"));
            }
        }
    }
    if d.check_noncrossing().is_ok() {
        for x in 1..=d.n() {
            out.push_str(&format!("region {x}: {}\n", d.region_walk(x)?.boundary));
        }
    }
    Ok((out, ok))
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Dual { source, method, emit_dot } => dual_cmd(&source, method, emit_dot.as_ref()),
        Command::MbTrace { source } => mb_trace_cmd(&source),
        Command::Migt { source, vertex, emit_dot } => migt_cmd(&source, vertex, emit_dot.as_ref()),
        Command::Realize { source, emit_dot } => realize_cmd(&source, emit_dot.as_ref()),
        Command::Enumerate {
            n,
            direction,
            generator,
            emit,
            ..
        } => enumerate_cmd(n, direction, generator, emit),
        Command::Bijection { source, forward, .. } => bijection_cmd(&source, forward),
        Command::Chord {
            source,
            emit_svg,
            overlay,
            check,
        } => chord_cmd(&source, emit_svg.as_ref(), overlay, check),
        Command::Verify {
            suite,
            n,
            seed,
            sample_size,
            fixture,
        } => {
            let report = verify::run(&VerifyConfig {
                suite,
                n,
                seed,
                sample_size,
                fixture,
            })?;
            Ok((report.render(), report.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
