//! Text and DOT rendering of monomials, binomials and complexes.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::fibers::{Factorization, NablaComplex};
use crate::presentation::Binomial;
use crate::semigroup::{AbelianGroup, GroupElement, SplitSpec};

/// Variable names, one per generator.
#[derive(Clone, Debug)]
pub struct Labels(Vec<String>);

impl Labels {
    /// `x1 .. xl`.
    pub fn plain(len: usize) -> Self {
        Labels((1..=len).map(|i| format!("x{i}")).collect())
    }

    /// `x1 .. xr` on the left side and `y1 .. yt` on the right.
    pub fn split(split: &SplitSpec) -> Self {
        let mut names = vec![String::new(); split.len()];
        for (k, &i) in split.left().iter().enumerate() {
            names[i] = format!("x{}", k + 1);
        }
        for (k, &i) in split.right().iter().enumerate() {
            names[i] = format!("y{}", k + 1);
        }
        Labels(names)
    }

    pub fn monomial(&self, f: &Factorization) -> String {
        let parts: Vec<String> =
            f.0.iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        self.0[i].clone()
                    } else {
                        format!("{}^{}", self.0[i], a)
                    }
                })
                .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn binomial(&self, b: &Binomial) -> String {
        format!("{} - {}", self.monomial(&b.plus), self.monomial(&b.minus))
    }
}

/// Parses `12`, `(13,13)` or `(1;0,20)` (torsion before the semicolon).
pub fn parse_degree(group: &AbelianGroup, text: &str) -> Result<GroupElement, String> {
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
    let ints = |s: &str| -> Result<Vec<BigInt>, String> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| BigInt::from_str(x).map_err(|_| format!("not an integer: {x:?}")))
            .collect()
    };
    let (torsion, free) = match t.split_once(';') {
        Some((a, b)) => (ints(a)?, ints(b)?),
        None => (Vec::new(), ints(t)?),
    };
    if free.len() != group.free_rank() || torsion.len() != group.torsion_orders().len() {
        return Err(format!(
            "degree {text:?} needs {} torsion and {} free coordinates",
            group.torsion_orders().len(),
            group.free_rank()
        ));
    }
    group.element(free, torsion).map_err(|e| e.to_string())
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The 1-skeleton of `∇_m` as an undirected DOT graph with one cluster per
/// connected component.
pub fn nabla_dot(nabla: &NablaComplex, labels: &Labels, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {name} {{");
    let _ = writeln!(out, "  label=\"C_{}\";", escape(&nabla.fiber.degree.to_string()));
    let _ = writeln!(out, "  node [shape=plaintext];");
    write_clusters(&mut out, nabla, labels, "n", "  ");
    out.push_str("}\n");
    out
}

fn write_clusters(out: &mut String, nabla: &NablaComplex, labels: &Labels, prefix: &str, indent: &str) {
    for (c, comp) in nabla.components.iter().enumerate() {
        let _ = writeln!(out, "{indent}subgraph cluster_{prefix}{c} {{");
        let _ = writeln!(out, "{indent}  label=\"component {}\";", c + 1);
        for &i in comp {
            let _ = writeln!(
                out,
                "{indent}  {prefix}{i} [label=\"{}\"];",
                escape(&labels.monomial(&nabla.fiber.members[i]))
            );
        }
        let _ = writeln!(out, "{indent}}}");
    }
    for &(i, j) in &nabla.edges {
        let _ = writeln!(out, "{indent}{prefix}{i} -- {prefix}{j};");
    }
}

/// Several complexes in one DOT graph, one outer cluster per degree.
pub fn many_dot(complexes: &[NablaComplex], labels: &Labels) -> String {
    let mut out = String::from("graph betti {\n  node [shape=plaintext];\n");
    for (k, nabla) in complexes.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_d{k} {{");
        let _ = writeln!(out, "    label=\"C_{}\";", escape(&nabla.fiber.degree.to_string()));
        write_clusters(&mut out, nabla, labels, &format!("d{k}_"), "    ");
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
