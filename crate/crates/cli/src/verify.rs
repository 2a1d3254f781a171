use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Instant;

use permdual::bijection::{
    bijection_b, bijection_b_inverse, check_cap, random_fdown, relabel_s, relabel_s_inverse, tree_count,
    verify_structural, FactorizationSet, Generator,
};
use permdual::chord::{chord_diagram, gy_dual};
use permdual::dual::{dual_equivalence_report, trail_dual, DualMethod};
use permdual::trails::{is_realized_by, migt, migt_cover, realize, tdc_validate, Realization};
use permdual::{fixtures, Direction, LabeledMultigraph, Transposition, TranspositionSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::input::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Duals,
    Tdc,
    Structural,
    Chord,
    Bijection,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Duals => "duals",
            Suite::Tdc => "tdc",
            Suite::Structural => "structural",
            Suite::Chord => "chord",
            Suite::Bijection => "bijection",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub n: RangeInclusive<usize>,
    pub seed: u64,
    pub sample_size: usize,
    pub fixture: Option<String>,
}

impl VerifyConfig {
    pub fn echo(&self) -> String {
        let mut out = format!(
            "verify --suite {} --n {}..{} --seed {} --sample-size {}",
            self.suite.name(),
            self.n.start(),
            self.n.end(),
            self.seed,
            self.sample_size
        );
        if let Some(f) = &self.fixture {
            let _ = write!(out, " --fixture {f}");
        }
        out
    }
}

/// Parses `a..b` (inclusive) or a single `n`.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad size {t:?}"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let n = parse(text)?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("empty or invalid range {text:?}"));
    }
    Ok(lo..=hi)
}

/// One named check: how many inputs it covered and the first failure, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub items: usize,
    pub detail: String,
    pub failure: Option<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub reason: String,
    /// Re-parseable text of the offending input.
    pub counterexample: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn render(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for c in &self.checks {
            match &c.failure {
                None => {
                    let _ = writeln!(out, "pass {}: {} {}", c.name, c.items, c.detail);
                }
                Some(f) => {
                    let _ = writeln!(out, "fail {}: {}", c.name, f.reason);
                    out.push_str("  counterexample:\n");
                    for line in f.counterexample.lines() {
                        let _ = writeln!(out, "    {line}");
                    }
                }
            }
        }
        let items: usize = self.checks.iter().map(|c| c.items).sum();
        let _ = writeln!(
            out,
            "summary: {}, {} checks, {} items",
            if self.passed() { "pass" } else { "fail" },
            self.checks.len(),
            items
        );
        out
    }
}

/// Smallest-index failure, so parallel runs report the same counterexample.
fn first_failure<T: Sync>(items: &[T], check: impl Fn(&T) -> Option<Failure> + Sync) -> Option<Failure> {
    items
        .par_iter()
        .enumerate()
        .filter_map(|(i, item)| check(item).map(|f| (i, f)))
        .min_by_key(|(i, _)| *i)
        .map(|(_, f)| f)
}

fn fail(reason: impl Into<String>, counterexample: impl ToString) -> Option<Failure> {
    Some(Failure {
        reason: reason.into(),
        counterexample: counterexample.to_string(),
    })
}

fn check(name: String, items: usize, detail: &str, failure: Option<Failure>) -> Check {
    Check {
        name,
        items,
        detail: detail.to_string(),
        failure,
    }
}

pub fn random_sequence(rng: &mut ChaCha8Rng) -> TranspositionSequence {
    let n = rng.gen_range(2..=9);
    let m = rng.gen_range(0..=12);
    let entries = (0..m)
        .map(|_| {
            let a = rng.gen_range(1..=n);
            let b = (a - 1 + rng.gen_range(1..n)) % n + 1;
            Transposition::new(a, b).expect("distinct labels")
        })
        .collect();
    TranspositionSequence::new(n, entries).expect("labels in range")
}

fn random_sequences(seed: u64, count: usize) -> Vec<TranspositionSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_sequence(&mut rng)).collect()
}

fn random_members(seed: u64, n: usize, count: usize) -> Vec<TranspositionSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_fdown(n, &mut rng).expect("prufer codes decode"))
        .collect()
}

fn fdown(n: usize) -> Result<Vec<TranspositionSequence>, CliError> {
    check_cap(n)?;
    Ok(FactorizationSet::enumerate(n, Direction::Down, Generator::Dfs)?.members().to_vec())
}

fn dual_failure(s: &TranspositionSequence) -> Option<Failure> {
    let report = dual_equivalence_report(s);
    if let Some(d) = report.divergences.first() {
        return fail(
            format!("{} entry {}: expected {} found {}", d.method, d.entry, d.expected, d.found),
            s,
        );
    }
    for (m, d) in &report.results {
        if &m.apply(d) != s {
            return fail(format!("{m} dual is not an involution"), s);
        }
        if d.product() != s.product().inverse() {
            return fail(format!("{m} dual product is not the inverse"), s);
        }
    }
    None
}

fn cover_failure(g: &LabeledMultigraph) -> Option<Failure> {
    let cover = migt_cover(g);
    if let Err(v) = tdc_validate(g, cover.trails()) {
        return fail(format!("invalid cover: {v}"), g);
    }
    match realize(&cover) {
        Err(e) => fail(e.to_string(), g),
        Ok(Realization::NotRealizable { cycle }) => fail(format!("edge digraph cycle {cycle:?}"), g),
        Ok(Realization::Realizable { labeling, .. }) => {
            if is_realized_by(&cover, &labeling) {
                None
            } else {
                fail("labeling does not reproduce the cover", g)
            }
        }
    }
}

fn chord_failure(s: &TranspositionSequence) -> Option<Failure> {
    let d = match chord_diagram(s) {
        Ok(d) => d,
        Err(e) => return fail(e.to_string(), s),
    };
    if let Err((a, b)) = d.check_noncrossing() {
        return fail(format!("chords {a} and {b} cross"), s);
    }
    if let Err(v) = d.check_clockwise_decreasing() {
        return fail(format!("labels at point {v} do not decrease clockwise"), s);
    }
    let g = LabeledMultigraph::from(s);
    for x in 1..=s.n() {
        let walk = match d.region_walk(x) {
            Ok(w) => w,
            Err(e) => return fail(e.to_string(), s),
        };
        let trail: BTreeSet<usize> = migt(&g, x).expect("x in range").edges().iter().copied().collect();
        if walk.chords() != trail {
            return fail(format!("region {x} chords differ from its greedy trail"), s);
        }
    }
    match gy_dual(s) {
        Ok(gy) if gy == trail_dual(&g) => None,
        Ok(_) => fail("chord dual differs from trail dual", s),
        Err(e) => fail(e.to_string(), s),
    }
}

fn structural_failure(s: &TranspositionSequence) -> Option<Failure> {
    match verify_structural(s) {
        Ok(r) => r.violation.and_then(|v| fail(v.to_string(), s)),
        Err(e) => fail(e.to_string(), s),
    }
}

fn duals(cfg: &VerifyConfig, out: &mut Vec<Check>) -> Result<(), CliError> {
    for n in cfg.n.clone() {
        let members = fdown(n)?;
        let f = first_failure(&members, dual_failure);
        out.push(check(format!("duals n={n}"), members.len(), "sequences", f));
    }
    let samples = random_sequences(cfg.seed, cfg.sample_size);
    let f = first_failure(&samples, dual_failure);
    out.push(check("duals random".into(), samples.len(), "sequences", f));
    Ok(())
}

fn tdc(cfg: &VerifyConfig, out: &mut Vec<Check>) -> Result<(), CliError> {
    if let Some(name) = &cfg.fixture {
        let cover = fixtures::cover(name)?;
        let f = match realize(&cover)? {
            Realization::Realizable { labeling, .. } if is_realized_by(&cover, &labeling) => None,
            Realization::Realizable { .. } => fail("labeling does not reproduce the cover", &cover),
            Realization::NotRealizable { cycle } => {
                let cycle: Vec<String> = cycle.iter().map(|e| e.to_string()).collect();
                fail(format!("not realizable; edge digraph cycle {}", cycle.join(" -> ")), &cover)
            }
        };
        out.push(check(format!("tdc fixture {name}"), 1, "cover", f));
        return Ok(());
    }
    for n in cfg.n.clone() {
        let graphs: Vec<LabeledMultigraph> = fdown(n)?.iter().map(LabeledMultigraph::from).collect();
        let f = first_failure(&graphs, cover_failure);
        out.push(check(format!("tdc n={n}"), graphs.len(), "graphs", f));
    }
    let graphs: Vec<LabeledMultigraph> = random_sequences(cfg.seed ^ 1, cfg.sample_size)
        .iter()
        .map(LabeledMultigraph::from)
        .collect();
    let f = first_failure(&graphs, cover_failure);
    out.push(check("tdc random".into(), graphs.len(), "graphs", f));
    Ok(())
}

fn structural(cfg: &VerifyConfig, out: &mut Vec<Check>) -> Result<(), CliError> {
    for n in cfg.n.clone() {
        let members = fdown(n)?;
        let f = first_failure(&members, structural_failure);
        out.push(check(format!("structural n={n}"), members.len(), "sequences", f));
    }
    for n in [7, 8] {
        let samples = random_members(cfg.seed ^ 2 ^ n as u64, n, cfg.sample_size);
        let f = first_failure(&samples, structural_failure);
        out.push(check(format!("structural random n={n}"), samples.len(), "sequences", f));
    }
    Ok(())
}

fn chord(cfg: &VerifyConfig, out: &mut Vec<Check>) -> Result<(), CliError> {
    for n in cfg.n.clone() {
        let members = fdown(n)?;
        let f = first_failure(&members, chord_failure);
        out.push(check(format!("chord n={n}"), members.len(), "sequences", f));
    }
    let samples = random_members(cfg.seed ^ 3, 7, cfg.sample_size);
    let f = first_failure(&samples, chord_failure);
    out.push(check("chord random n=7".into(), samples.len(), "sequences", f));
    Ok(())
}

fn bijection(cfg: &VerifyConfig, out: &mut Vec<Check>) -> Result<(), CliError> {
    for n in cfg.n.clone() {
        let down = fdown(n)?;
        let prufer = FactorizationSet::enumerate(n, Direction::Down, Generator::Prufer)?;
        let count = if down.len() != tree_count(n) {
            fail(format!("{} members, expected {}", down.len(), tree_count(n)), format!("n={n}"))
        } else if prufer.members() != down.as_slice() {
            fail("prufer and dfs generators disagree", format!("n={n}"))
        } else {
            None
        };
        out.push(check(format!("bijection count n={n}"), down.len(), "members", count));

        let f = first_failure(&down, |s| match bijection_b(s).and_then(|t| bijection_b_inverse(&t)) {
            Ok(back) if &back == s => None,
            Ok(back) => fail(format!("round trip gave {back}"), s),
            Err(e) => fail(e.to_string(), s),
        });
        out.push(check(format!("bijection B n={n}"), down.len(), "sequences", f));

        let up = FactorizationSet::enumerate(n, Direction::Up, Generator::Dfs)?;
        let f = first_failure(up.members(), |s| match relabel_s(s).and_then(|t| relabel_s_inverse(&t)) {
            Ok(back) if &back == s => None,
            Ok(back) => fail(format!("round trip gave {back}"), s),
            Err(e) => fail(e.to_string(), s),
        });
        out.push(check(format!("bijection S n={n}"), up.len(), "sequences", f));
    }
    Ok(())
}

type SuiteFn = fn(&VerifyConfig, &mut Vec<Check>) -> Result<(), CliError>;

pub fn run(cfg: &VerifyConfig) -> Result<RunReport, CliError> {
    let all: [(Suite, SuiteFn); 5] = [
        (Suite::Duals, duals),
        (Suite::Tdc, tdc),
        (Suite::Structural, structural),
        (Suite::Chord, chord),
        (Suite::Bijection, bijection),
    ];
    let mut checks = Vec::new();
    for (suite, run_suite) in all {
        if cfg.suite == suite || cfg.suite == Suite::All {
            let start = Instant::now();
            run_suite(cfg, &mut checks)?;
            eprintln!("{}: {:.3}s", suite.name(), start.elapsed().as_secs_f64());
        }
    }
    Ok(RunReport {
        command: cfg.echo(),
        checks,
    })
}

/// Every method applied to `s`, in a fixed order.
pub fn all_duals(s: &TranspositionSequence) -> Vec<(DualMethod, TranspositionSequence)> {
    DualMethod::ALL.iter().map(|&m| (m, m.apply(s))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..6").unwrap(), 3..=6);
        assert_eq!(parse_range("3..=6").unwrap(), 3..=6);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert!(parse_range("6..3").is_err());
        assert!(parse_range("0..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn report_rendering() {
        let report = RunReport {
            command: "verify".into(),
            checks: vec![
                check("a".into(), 3, "sequences", None),
                check("b".into(), 1, "cover", fail("broken", "n=2; (1,2)")),
            ],
        };
        let text = report.render();
        assert!(text.contains("pass a: 3 sequences\n"));
        assert!(text.contains("fail b: broken\n  counterexample:\n    n=2; (1,2)\n"));
        assert!(text.ends_with("summary: fail, 2 checks, 4 items\n"));
        assert!(!report.passed());
    }

    #[test]
    fn first_failure_is_deterministic() {
        let items: Vec<usize> = (0..1000).collect();
        let f = first_failure(&items, |&i| if i % 7 == 3 { fail(i.to_string(), i) } else { None });
        assert_eq!(f.unwrap().reason, "3");
    }
}
