//! The on-disk code format: a header line `n=<n> metric=<kendall|cyclic>`
//! followed by one permutation per line in space-separated one-line
//! notation.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use permkit_core::{CodeBook, Metric, Permutation};

pub fn load(path: &Path, zero_based: bool) -> Result<CodeBook> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read code file {}", path.display()))?;
    parse(&text, zero_based).with_context(|| format!("in code file {}", path.display()))
}

pub fn parse(text: &str, zero_based: bool) -> Result<CodeBook> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().context("missing header line")?;
    let mut n: Option<usize> = None;
    let mut metric: Option<Metric> = None;
    for field in header.split_whitespace() {
        match field.split_once('=') {
            Some(("n", value)) => n = Some(value.parse().context("bad n in header")?),
            Some(("metric", value)) => metric = Some(value.parse::<Metric>()?),
            _ => bail!("unrecognized header field {field:?}; expected `n=<n> metric=<m>`"),
        }
    }
    let n = n.context("header must set n=<n>")?;
    let metric = metric.context("header must set metric=<kendall|cyclic>")?;
    let words = lines
        .map(|line| Ok(Permutation::parse(line, zero_based)?))
        .collect::<Result<Vec<Permutation>>>()?;
    if words.is_empty() {
        bail!("code file contains no codewords");
    }
    Ok(CodeBook::new(n, metric, words, None)?)
}

pub fn render(code: &CodeBook) -> String {
    let mut out = format!("n={} metric={}\n", code.n(), code.metric());
    for word in code.words() {
        out.push_str(&word.to_string());
        out.push('\n');
    }
    out
}
