//! Version-tagged text formats for capacities and functions, plus the
//! machine-readable renderings of reports.
//!
//! Capacity files:
//! ```text
//! capacity v1
//! n 2
//! 0 0
//! 1 7/10
//! 2 7/10
//! 3 1
//! ```
//! Function files use the header `function v1` and one `<index> <value>`
//! line per point. Lines starting with `#` are comments; masks and
//! indices must appear in increasing order with no duplicates or gaps.
//! Serialization is canonical (reduced rationals, no comments), so
//! generate -> parse -> serialize round-trips byte-identically.

use std::fmt::Write as _;

use num_traits::Signed;
use thiserror::Error;

use crate::capacity::{Capacity, CapacityError, ViolationReport, Witness};
use crate::choquet::{IntFunction, PointFunction};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::verifier::ScanReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Content lines (trimmed, comments and blanks skipped) with their
/// 1-based line numbers.
fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    header: &str,
) -> Result<(), ParseError> {
    match lines.next() {
        Some((_, line)) if line == header => Ok(()),
        Some((number, line)) => Err(ParseError::new(
            number,
            format!("expected header `{header}`, got `{line}`"),
        )),
        None => Err(ParseError::new(1, format!("missing header `{header}`"))),
    }
}

fn parse_ground_set_line<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<(usize, usize), ParseError> {
    match lines.next() {
        Some((number, line)) => {
            let rest = line
                .strip_prefix("n ")
                .ok_or_else(|| ParseError::new(number, format!("expected `n <int>`, got `{line}`")))?;
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| ParseError::new(number, format!("invalid ground-set size `{rest}`")))?;
            Ok((number, n))
        }
        None => Err(ParseError::new(2, "missing `n <int>` line")),
    }
}

/// Splits `<index> <value>` and checks the index against the expected
/// sequence position (rejects duplicate, missing, or out-of-order keys).
fn parse_indexed_value(
    entry: Option<(usize, &str)>,
    expected_index: u64,
    what: &str,
) -> Result<(usize, Rational), ParseError> {
    let (number, line) =
        entry.ok_or_else(|| ParseError::new(usize::MAX, format!("missing {what} {expected_index}")))?;
    let (index_text, value_text) = line
        .split_once(char::is_whitespace)
        .ok_or_else(|| ParseError::new(number, format!("expected `<{what}> <value>`, got `{line}`")))?;
    let index: u64 = index_text
        .parse()
        .map_err(|_| ParseError::new(number, format!("invalid {what} `{index_text}`")))?;
    if index != expected_index {
        return Err(ParseError::new(
            number,
            format!("expected {what} {expected_index}, got {index}"),
        ));
    }
    let value =
        parse_rational(value_text).map_err(|message| ParseError::new(number, message))?;
    Ok((number, value))
}

fn reject_trailing<'a>(
    mut lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<(), ParseError> {
    if let Some((number, line)) = lines.next() {
        return Err(ParseError::new(
            number,
            format!("unexpected trailing content `{line}`"),
        ));
    }
    Ok(())
}

/// Parses and fully validates a capacity file.
pub fn parse_capacity(input: &str) -> Result<Capacity, ParseError> {
    let mut lines = content_lines(input);
    expect_header(&mut lines, "capacity v1")?;
    let (n_line, n) = parse_ground_set_line(&mut lines)?;
    if n == 0 || n > crate::capacity::MAX_GROUND_SET {
        return Err(ParseError::new(n_line, format!("ground-set size {n} out of range")));
    }
    let size = 1usize << n;
    let mut values = Vec::with_capacity(size);
    let mut value_lines = Vec::with_capacity(size);
    for mask in 0..size as u64 {
        let (number, value) = parse_indexed_value(lines.next(), mask, "mask").map_err(|e| {
            if e.line == usize::MAX {
                ParseError::new(n_line, format!("missing mask {mask}"))
            } else {
                e
            }
        })?;
        values.push(value);
        value_lines.push(number);
    }
    reject_trailing(lines)?;
    Capacity::new(n, values).map_err(|error| capacity_error_line(error, &value_lines))
}

/// Maps a validation failure to the line of the offending value.
fn capacity_error_line(error: CapacityError, value_lines: &[usize]) -> ParseError {
    let line = match &error {
        CapacityError::NotNormalized { event, .. } => value_lines[event.mask() as usize],
        CapacityError::NotMonotone { above, .. } => value_lines[above.mask() as usize],
        _ => value_lines[0],
    };
    ParseError::new(line, error.to_string())
}

pub fn serialize_capacity(capacity: &Capacity) -> String {
    let mut out = String::new();
    writeln!(out, "capacity v1").unwrap();
    writeln!(out, "n {}", capacity.n()).unwrap();
    for (mask, value) in capacity.values().iter().enumerate() {
        writeln!(out, "{mask} {}", format_rational(value)).unwrap();
    }
    out
}

fn parse_function_values(input: &str) -> Result<Vec<(usize, Rational)>, ParseError> {
    let mut lines = content_lines(input);
    expect_header(&mut lines, "function v1")?;
    let (n_line, n) = parse_ground_set_line(&mut lines)?;
    let mut values = Vec::with_capacity(n);
    for index in 0..n as u64 {
        let entry = parse_indexed_value(lines.next(), index, "index").map_err(|e| {
            if e.line == usize::MAX {
                ParseError::new(n_line, format!("missing index {index}"))
            } else {
                e
            }
        })?;
        values.push(entry);
    }
    reject_trailing(lines)?;
    Ok(values)
}

pub fn parse_point_function(input: &str) -> Result<PointFunction, ParseError> {
    Ok(PointFunction::new(
        parse_function_values(input)?
            .into_iter()
            .map(|(_, value)| value)
            .collect(),
    ))
}

/// Parses a function file whose entries must be nonnegative integers.
pub fn parse_int_function(input: &str) -> Result<IntFunction, ParseError> {
    let values = parse_function_values(input)?;
    let mut integers = Vec::with_capacity(values.len());
    for (line, value) in &values {
        if !value.is_integer() || value.is_negative() {
            return Err(ParseError::new(
                *line,
                format!("entry {value} is not a nonnegative integer"),
            ));
        }
        let int: u64 = value
            .to_integer()
            .try_into()
            .map_err(|_| ParseError::new(*line, format!("entry {value} too large")))?;
        integers.push(int);
    }
    Ok(IntFunction::new(integers))
}

pub fn serialize_point_function(function: &PointFunction) -> String {
    let mut out = String::new();
    writeln!(out, "function v1").unwrap();
    writeln!(out, "n {}", function.len()).unwrap();
    for (index, value) in function.values().iter().enumerate() {
        writeln!(out, "{index} {}", format_rational(value)).unwrap();
    }
    out
}

pub fn serialize_int_function(function: &IntFunction) -> String {
    let mut out = String::new();
    writeln!(out, "function v1").unwrap();
    writeln!(out, "n {}", function.len()).unwrap();
    for (index, value) in function.values().iter().enumerate() {
        writeln!(out, "{index} {value}").unwrap();
    }
    out
}

/// Machine rendering of a violation: key-value lines, with function
/// witnesses embedded in the function file format.
pub fn render_violation_machine(report: &ViolationReport) -> String {
    let mut out = String::new();
    writeln!(out, "violation {}", report.kind).unwrap();
    writeln!(out, "lhs {}", format_rational(&report.lhs)).unwrap();
    writeln!(out, "rhs {}", format_rational(&report.rhs)).unwrap();
    match &report.witness {
        Witness::Events { a, b } => {
            writeln!(out, "A {}", a.mask()).unwrap();
            writeln!(out, "B {}", b.mask()).unwrap();
        }
        Witness::Functions { x, y } => {
            out.push_str(&serialize_point_function(x));
            out.push_str(&serialize_point_function(y));
        }
        Witness::Mixture { x, y, lambda } => {
            writeln!(out, "lambda {}", format_rational(lambda)).unwrap();
            out.push_str(&serialize_point_function(x));
            out.push_str(&serialize_point_function(y));
        }
    }
    out
}

/// Machine rendering of a scan report, embedding each disagreement's
/// capacity in the capacity file format.
pub fn render_scan_machine(report: &ScanReport) -> String {
    let mut out = String::new();
    writeln!(out, "scanreport v1").unwrap();
    writeln!(out, "n {}", report.n).unwrap();
    writeln!(out, "count {}", report.capacities_tested).unwrap();
    writeln!(out, "max_value {}", report.max_value).unwrap();
    writeln!(out, "seed {}", report.seed).unwrap();
    writeln!(out, "submodular {}", report.submodular_count).unwrap();
    writeln!(out, "agreements {}", report.agreements).unwrap();
    writeln!(out, "disagreements {}", report.disagreements.len()).unwrap();
    for disagreement in &report.disagreements {
        writeln!(out, "disagreement {}", disagreement.index).unwrap();
        out.push_str(&serialize_capacity(&disagreement.capacity));
        out.push_str(&render_violation_machine(&disagreement.report));
    }
    out
}

/// Human rendering of a submodularity violation over events, shared by
/// the check-style outputs.
pub fn render_event_violation_text(report: &ViolationReport) -> String {
    let Witness::Events { a, b } = &report.witness else {
        return report.to_string();
    };
    format!(
        "A = {a}, B = {b}\nc(A u B) + c(A n B) = {}\nc(A) + c(B) = {}",
        format_rational(&report.lhs),
        format_rational(&report.rhs)
    )
}
