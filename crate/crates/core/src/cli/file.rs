//! The line-oriented semigroup file format.
//!
//! ```text
//! # Thoma's example
//! free_rank: 2
//! torsion:
//! gen: 13, 0
//! gen: 5, 8
//! split halves: 1-4|5-8
//! ```
//!
//! With torsion, each generator lists its torsion coordinates first,
//! separated from the free part by a semicolon: `gen: 1; 9, -5`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::semigroup::{AbelianGroup, GroupElement, Semigroup, SemigroupError, SplitSpec};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn parse_error(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupFile {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// `(torsion, free)` coordinates per generator.
    pub generators: Vec<(Vec<BigInt>, Vec<BigInt>)>,
    /// Named splits, as written.
    pub splits: Vec<(String, SplitSpec)>,
    /// Comment lines emitted after the data; never read back.
    pub trailer: Vec<String>,
}

fn parse_ints(text: &str, line: usize) -> Result<Vec<BigInt>, ParseError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| BigInt::from_str(t).map_err(|_| parse_error(line, format!("not an integer: {t:?}"))))
        .collect()
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl SemigroupFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut free_rank = None;
        let mut torsion = None;
        let mut generators = Vec::new();
        let mut raw_splits: Vec<(usize, String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| parse_error(n, "expected `key: value`"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "free_rank" => {
                    if free_rank.is_some() {
                        return Err(parse_error(n, "free_rank given twice"));
                    }
                    let r = value
                        .parse::<usize>()
                        .map_err(|_| parse_error(n, format!("bad free rank {value:?}")))?;
                    free_rank = Some(r);
                }
                "torsion" => {
                    if torsion.is_some() {
                        return Err(parse_error(n, "torsion given twice"));
                    }
                    let orders = parse_ints(value, n)?;
                    if orders.iter().any(|d| *d <= BigInt::one()) {
                        return Err(parse_error(n, "torsion orders must exceed 1"));
                    }
                    torsion = Some(orders);
                }
                "gen" => {
                    let (t, f) = match value.split_once(';') {
                        Some((t, f)) => (parse_ints(t, n)?, parse_ints(f, n)?),
                        None => (Vec::new(), parse_ints(value, n)?),
                    };
                    generators.push((n, t, f));
                }
                _ => match key.strip_prefix("split") {
                    Some(name) if name.is_empty() || name.starts_with(char::is_whitespace) => {
                        let name = name.trim();
                        let name = if name.is_empty() { "default" } else { name };
                        raw_splits.push((n, name.to_string(), value.to_string()));
                    }
                    _ => return Err(parse_error(n, format!("unknown key {key:?}"))),
                },
            }
        }
        let free_rank = free_rank.ok_or_else(|| parse_error(0, "missing free_rank"))?;
        let torsion = torsion.unwrap_or_default();
        if generators.is_empty() {
            return Err(parse_error(0, "no generators"));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for (n, t, f) in generators {
            if t.len() != torsion.len() || f.len() != free_rank {
                return Err(parse_error(
                    n,
                    format!(
                        "expected {} torsion and {} free coordinates, found {} and {}",
                        torsion.len(),
                        free_rank,
                        t.len(),
                        f.len()
                    ),
                ));
            }
            gens.push((t, f));
        }
        let mut splits = Vec::new();
        for (n, name, spec) in raw_splits {
            if splits.iter().any(|(m, _)| *m == name) {
                return Err(parse_error(n, format!("split {name:?} given twice")));
            }
            let split = SplitSpec::parse(&spec, gens.len()).map_err(|e| parse_error(n, e.to_string()))?;
            splits.push((name, split));
        }
        Ok(SemigroupFile {
            free_rank,
            torsion,
            generators: gens,
            splits,
            trailer: Vec::new(),
        })
    }

    pub fn group(&self) -> Result<AbelianGroup, SemigroupError> {
        AbelianGroup::new(self.free_rank, self.torsion.clone())
    }

    /// Builds the semigroup, reducing torsion coordinates.
    pub fn to_semigroup(&self) -> Result<Semigroup, SemigroupError> {
        let group = self.group()?;
        let gens = self
            .generators
            .iter()
            .map(|(t, f)| group.element(f.clone(), t.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Semigroup::new(group, gens)
    }

    pub fn from_semigroup(s: &Semigroup) -> Self {
        let group = s.group();
        SemigroupFile {
            free_rank: group.free_rank(),
            torsion: group.torsion_orders().to_vec(),
            generators: s
                .generators()
                .iter()
                .map(|g: &GroupElement| (g.torsion().to_vec(), g.free().to_vec()))
                .collect(),
            splits: Vec::new(),
            trailer: Vec::new(),
        }
    }

    pub fn split(&self, name: &str) -> Option<&SplitSpec> {
        self.splits.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

impl fmt::Display for SemigroupFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "free_rank: {}", self.free_rank)?;
        if self.torsion.is_empty() {
            writeln!(f, "torsion:")?;
        } else {
            writeln!(f, "torsion: {}", join(&self.torsion))?;
        }
        for (t, free) in &self.generators {
            if self.torsion.is_empty() {
                writeln!(f, "gen: {}", join(free))?;
            } else {
                writeln!(f, "gen: {}; {}", join(t), join(free))?;
            }
        }
        for (name, split) in &self.splits {
            writeln!(f, "split {name}: {split}")?;
        }
        for line in &self.trailer {
            writeln!(f, "# {line}")?;
        }
        Ok(())
    }
}
