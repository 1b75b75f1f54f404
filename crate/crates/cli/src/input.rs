//! Loading ideals and lattices from files or inline lists.

use std::fs;
use std::path::Path;

use synor::algebra::Variables;
use synor::corpus::IdealSpec;
use synor::poset::{Lattice, LatticeJson, LcmLattice};
use synor::Error;

use crate::Failure;

/// Where an input came from, for error messages.
enum Source<'a> {
    File(&'a str),
    Inline,
}

/// Reads an ideal from a file in the corpus format, or from an inline
/// comma-separated list such as `a*f, b*f, a*b`. Inline variables come from
/// `vars` or default to the identifiers that occur, sorted.
pub fn load_ideal(input: &str, vars: Option<&str>) -> Result<IdealSpec, Failure> {
    if Path::new(input).is_file() {
        let text = fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))?;
        let name = Path::new(input).file_stem().map_or(input.into(), |s| s.to_string_lossy().into_owned());
        return IdealSpec::parse(name, &text).map_err(|e| located(e, &text, Source::File(input)));
    }
    match vars {
        Some(v) => variables(v)
            .map_err(|e| Failure::Input(e.to_string()))
            .and_then(|v| IdealSpec::parse_list("inline", v, input).map_err(|e| located(e, input, Source::Inline))),
        None => IdealSpec::parse_inline("inline", input).map_err(|e| located(e, input, Source::Inline)),
    }
}

/// An ideal and its LCM lattice; non-minimal generators are input errors.
pub fn load_lattice(input: &str, vars: Option<&str>) -> Result<(IdealSpec, LcmLattice), Failure> {
    let spec = load_ideal(input, vars)?;
    let l = spec.lattice().map_err(|e| Failure::Input(e.to_string()))?;
    Ok((spec, l))
}

/// Either an ideal (giving its LCM lattice) or a lattice JSON dump as
/// written by the `lattice` subcommand. Element names are the labels when
/// present, otherwise the ids.
pub fn load_any_lattice(input: &str, vars: Option<&str>) -> Result<(Lattice, Vec<String>), Failure> {
    let is_json = input.ends_with(".json") || input.trim_start().starts_with('{');
    if !is_json {
        let (_, l) = load_lattice(input, vars)?;
        let names = l.to_json().labels.expect("lcm lattices are labelled");
        return Ok((l.lattice().clone(), names));
    }
    let text = if Path::new(input).is_file() {
        fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))?
    } else {
        input.to_string()
    };
    let json: LatticeJson = serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let l = Lattice::from_json(&json).map_err(|e| Failure::Input(e.to_string()))?;
    let names = json.labels.unwrap_or_else(|| (0..json.n).map(|i| i.to_string()).collect());
    Ok((l, names))
}

fn variables(list: &str) -> synor::Result<Variables> {
    Variables::new(list.split([',', ' ']).filter(|s| !s.is_empty()))
}

/// Turns a byte offset into `line:column` plus the offending line.
fn located(e: Error, text: &str, source: Source) -> Failure {
    let Error::Parse { position, message } = &e else {
        return Failure::Input(e.to_string());
    };
    let position = (*position).min(text.len());
    let line_start = text[..position].rfind('\n').map_or(0, |i| i + 1);
    let line_end = text[position..].find('\n').map_or(text.len(), |i| position + i);
    let line_no = text[..position].matches('\n').count() + 1;
    let column = text[line_start..position].chars().count() + 1;
    let place = match source {
        Source::File(path) => format!("{path}:{line_no}:{column}"),
        Source::Inline => format!("column {column}"),
    };
    let caret = " ".repeat(column - 1);
    Failure::Input(format!("{place}: {message}\n  {}\n  {caret}^", &text[line_start..line_end]))
}
