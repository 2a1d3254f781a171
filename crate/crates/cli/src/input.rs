use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};

use permdual::{
    fixtures, Error, LabeledMultigraph, TranspositionSequence, VertexLabeledTree,
};

/// Failure of a command before any verification ran.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Cap(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => CliError::Cap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Where a command reads its input: a file, a bundled fixture, or stdin.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Source {
    /// Input file; stdin when omitted or `-`.
    pub input: Option<PathBuf>,
    /// Read a bundled example by name instead, e.g. `fig1`.
    #[arg(long)]
    pub fixture: Option<String>,
}

impl Source {
    /// Raw text; for fixtures the first of `kinds` that exists is used.
    pub fn text(&self, kinds: &[&str]) -> Result<String, CliError> {
        if let Some(stem) = &self.fixture {
            return kinds
                .iter()
                .find_map(|ext| fixtures::load(&format!("{stem}.{ext}")))
                .map(str::to_owned)
                .ok_or_else(|| CliError::Input(format!("no fixture {stem} of kind {}", kinds.join("/"))));
        }
        match self.input.as_deref() {
            None => read_stdin(),
            Some(p) if p == Path::new("-") => read_stdin(),
            Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        }
    }

    /// A sequence, given either in sequence text or graph text.
    pub fn sequence(&self) -> Result<TranspositionSequence, CliError> {
        parse_sequence(&self.text(&["seq", "graph"])?)
    }

    pub fn tree(&self) -> Result<VertexLabeledTree, CliError> {
        Ok(strip(&self.text(&["tree"])?).parse()?)
    }
}

fn read_stdin() -> Result<String, CliError> {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text)?;
    Ok(text)
}

fn strip(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_sequence(text: &str) -> Result<TranspositionSequence, CliError> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.contains("m=") {
        let g: LabeledMultigraph = text.parse()?;
        Ok(g.to_sequence())
    } else {
        Ok(strip(text).parse()?)
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
