//! Commands behind the `tq` binary. Each command renders to a `String` (or
//! drives reader/writer streams for `play`) so it can be tested without a
//! process boundary.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use twenty_questions::{
    exhaustive_evaluate, simulate_with_threads, Answer, Distribution, DistributionError, GameState, Prompt,
    QuestionTree, Rational, SimulationError, Strategy, StrategyError, StrategyReport, TreeError,
};

/// Tolerance for the "same information content" check in comparisons.
pub const YIELD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: DistributionError },
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Capacity(#[from] StrategyError),
    #[error("input ended before the game was complete")]
    Aborted,
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { source, .. } if source.is_syntax() => 2,
            CliError::Parse { .. } | CliError::Validation(_) => 3,
            CliError::Capacity(_) => 4,
            CliError::Aborted => 5,
            CliError::Io { .. } => 6,
        }
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SimulationError> for CliError {
    fn from(e: SimulationError) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

pub fn load_distribution(path: &Path) -> Result<Distribution, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    Distribution::parse(&text).map_err(|source| CliError::Parse { path: shown, source })
}

/// Writes `contents` to `out`, or returns it for stdout when `out` is `None`.
pub fn emit(contents: String, out: Option<&Path>) -> Result<Option<String>, CliError> {
    match out {
        None => Ok(Some(contents)),
        Some(path) => {
            fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            Ok(None)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeOutput {
    pub strategy: String,
    pub outcomes: usize,
    pub report: StrategyReport,
}

fn text_report(strategy: Strategy, d: &Distribution, report: &StrategyReport) -> String {
    let mut out = String::new();
    writeln!(out, "strategy: {strategy}").unwrap();
    writeln!(out, "outcomes: {}", d.len()).unwrap();
    writeln!(out, "expected questions: {} ({})", report.expected_questions, report.expected_questions.to_decimal(6))
        .unwrap();
    writeln!(out, "entropy: {:.6} bits", report.entropy_bits).unwrap();
    writeln!(out, "information yield: {:.6} bits", report.information_yield_bits).unwrap();
    writeln!(out, "redundancy: {:.6} bits", report.redundancy_bits).unwrap();
    out.push_str("depth histogram:\n");
    for (depth, entry) in &report.depth_histogram {
        let noun = if entry.leaves == 1 { "leaf" } else { "leaves" };
        writeln!(out, "  {depth}: {} {noun}, probability {}", entry.leaves, entry.probability).unwrap();
    }
    out.push_str("codewords:\n");
    let width = report.codewords.iter().map(|c| c.label.chars().count()).max().unwrap_or(0);
    for word in &report.codewords {
        let bits = if word.bits.is_empty() { "(none)" } else { word.bits.as_str() };
        writeln!(out, "  {:<width$}  {bits}", word.label).unwrap();
    }
    out
}

pub fn cmd_analyze(d: &Distribution, strategy: Strategy, format: Format) -> Result<String, CliError> {
    let tree = strategy.build(d)?;
    let report = exhaustive_evaluate(&tree, d)?;
    Ok(match format {
        Format::Text => text_report(strategy, d, &report),
        Format::Machine => {
            let output = AnalyzeOutput { strategy: strategy.to_string(), outcomes: d.len(), report };
            let mut text = serde_json::to_string_pretty(&output).expect("report serializes");
            text.push('\n');
            text
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub strategy: String,
    pub expected_questions: Rational,
    pub expected_questions_decimal: String,
    pub information_yield_bits: f64,
    pub redundancy_bits: f64,
    /// `depth:leaves` pairs, e.g. `4:12 5:8`.
    pub depths: String,
    /// Whether the row reaches the exhaustive optimum; `None` when it was not computed.
    pub optimal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub outcomes: usize,
    pub entropy_bits: f64,
    pub rows: Vec<ComparisonRow>,
    /// Strategies skipped because the distribution exceeds their capacity.
    pub omitted: Vec<String>,
    pub yields_agree: bool,
}

pub fn compare(d: &Distribution) -> Result<Comparison, CliError> {
    let mut built: Vec<(Strategy, QuestionTree)> = Vec::new();
    let mut omitted = Vec::new();
    for strategy in Strategy::ALL {
        match strategy.build(d) {
            Ok(tree) => built.push((strategy, tree)),
            Err(StrategyError::CapacityExceeded { .. }) => omitted.push(strategy.to_string()),
        }
    }
    let mut reports = Vec::with_capacity(built.len());
    for (strategy, tree) in &built {
        reports.push((*strategy, exhaustive_evaluate(tree, d)?));
    }
    let optimum = reports.iter().find(|(s, _)| *s == Strategy::Optimal).map(|(_, r)| r.expected_questions.clone());
    let entropy_bits = d.entropy_bits();
    let yields_agree = reports.iter().all(|(_, r)| (r.information_yield_bits - entropy_bits).abs() < YIELD_TOLERANCE);
    let rows = reports
        .into_iter()
        .map(|(strategy, r)| ComparisonRow {
            strategy: strategy.to_string(),
            expected_questions_decimal: r.expected_questions.to_decimal(6),
            optimal: optimum.as_ref().map(|best| r.expected_questions == *best),
            expected_questions: r.expected_questions,
            information_yield_bits: r.information_yield_bits,
            redundancy_bits: r.redundancy_bits,
            depths: r
                .depth_histogram
                .iter()
                .map(|(depth, entry)| format!("{depth}:{}", entry.leaves))
                .collect::<Vec<_>>()
                .join(" "),
        })
        .collect();
    Ok(Comparison { outcomes: d.len(), entropy_bits, rows, omitted, yields_agree })
}

fn text_comparison(c: &Comparison) -> String {
    let header = ["strategy", "expected", "decimal", "yield", "redundancy", "depths"];
    let cells: Vec<[String; 6]> = c
        .rows
        .iter()
        .map(|row| {
            let marker = if row.optimal == Some(true) { " *" } else { "" };
            [
                format!("{}{marker}", row.strategy),
                row.expected_questions.to_string(),
                row.expected_questions_decimal.clone(),
                format!("{:.6}", row.information_yield_bits),
                format!("{:.6}", row.redundancy_bits),
                row.depths.clone(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |fields: &[&str]| {
        let mut text = String::new();
        for (i, field) in fields.iter().enumerate() {
            if i + 1 == fields.len() {
                text.push_str(field);
            } else {
                write!(text, "{field:<width$}  ", width = widths[i]).unwrap();
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(&header);
    for row in &cells {
        let refs: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&refs);
    }

    writeln!(out).unwrap();
    writeln!(out, "outcomes: {}", c.outcomes).unwrap();
    writeln!(out, "entropy: {:.6} bits", c.entropy_bits).unwrap();
    if c.rows.iter().any(|r| r.optimal.is_some()) {
        out.push_str("* reaches the exhaustive minimum of expected questions\n");
    } else {
        out.push_str("exhaustive minimum not computed for this many outcomes\n");
    }
    for name in &c.omitted {
        writeln!(out, "omitted: {name} (too many outcomes)").unwrap();
    }
    if c.yields_agree {
        writeln!(
            out,
            "every strategy yields the same information ({:.6} bits, within 1e-9); only the questions spent differ",
            c.entropy_bits
        )
        .unwrap();
    } else {
        out.push_str("warning: information yields disagree with the entropy\n");
    }
    out
}

pub fn cmd_compare(d: &Distribution, format: Format) -> Result<String, CliError> {
    let comparison = compare(d)?;
    Ok(match format {
        Format::Text => text_comparison(&comparison),
        Format::Machine => {
            let mut text = serde_json::to_string_pretty(&comparison).expect("comparison serializes");
            text.push('\n');
            text
        }
    })
}

pub fn cmd_export_dot(d: &Distribution, strategy: Strategy) -> Result<String, CliError> {
    let tree = strategy.build(d)?;
    Ok(tree.export_dot(d)?)
}

pub fn cmd_uniform(n: usize, prefix: &str) -> Result<String, CliError> {
    let d = Distribution::uniform(n, prefix).map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(d.render())
}

pub fn cmd_simulate(
    d: &Distribution,
    strategy: Strategy,
    trials: u64,
    seed: u64,
    threads: usize,
    format: Format,
) -> Result<String, CliError> {
    let tree = strategy.build(d)?;
    let result = simulate_with_threads(&tree, d, trials, seed, threads)?;
    let exact = tree.expected_questions(d)?;
    Ok(match format {
        Format::Text => format!(
            "strategy: {strategy}\ntrials: {trials}\nseed: {seed}\nmean questions: {:.6}\nstandard error: {:.6}\nexact expectation: {exact} ({})\n",
            result.mean,
            result.stderr,
            exact.to_decimal(6)
        ),
        Format::Machine => {
            let value = serde_json::json!({
                "strategy": strategy.to_string(),
                "trials": trials,
                "seed": seed,
                "total_questions": result.total_questions,
                "mean": result.mean,
                "stderr": result.stderr,
                "expected_questions": exact,
            });
            let mut text = serde_json::to_string_pretty(&value).expect("json");
            text.push('\n');
            text
        }
    })
}

fn read_answer(input: &mut impl BufRead, output: &mut impl Write) -> Result<Answer, CliError> {
    let io_err = |source| CliError::Io { path: "<terminal>".into(), source };
    loop {
        let mut line = String::new();
        if input.read_line(&mut line).map_err(io_err)? == 0 {
            return Err(CliError::Aborted);
        }
        match line.trim().to_ascii_lowercase().as_str() {
            "y" | "yes" => return Ok(Answer::Yes),
            "n" | "no" => return Ok(Answer::No),
            _ => {
                write!(output, "Please answer y or n: ").map_err(io_err)?;
                output.flush().map_err(io_err)?;
            }
        }
    }
}

/// Interactive loop: ask, read y/n, repeat until a leaf is reached.
pub fn cmd_play(
    d: &Distribution,
    strategy: Strategy,
    mut input: impl BufRead,
    mut output: impl Write,
) -> Result<(), CliError> {
    let tree = strategy.build(d)?;
    let mut game = GameState::new(&tree, d)?;
    let io_err = |source| CliError::Io { path: "<terminal>".into(), source };
    writeln!(output, "Think of one of {} outcomes; answer y or n.", d.len()).map_err(io_err)?;
    loop {
        match game.question() {
            Prompt::Question { text, .. } => {
                write!(output, "Q{}. {text} [y/n] ", game.questions_asked() + 1).map_err(io_err)?;
                output.flush().map_err(io_err)?;
                let answer = read_answer(&mut input, &mut output)?;
                game.answer(answer).expect("question pending");
            }
            Prompt::Complete { label, questions, surprisal_bits, .. } => {
                let noun = if questions == 1 { "question" } else { "questions" };
                writeln!(
                    output,
                    "It is {label}: identified after {questions} {noun}, {surprisal_bits:.6} bits of information."
                )
                .map_err(io_err)?;
                return Ok(());
            }
        }
    }
}
