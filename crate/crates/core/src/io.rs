//! Group file formats.
//!
//! Permutation format (points are 1-based):
//!
//! ```text
//! perm 3
//! 2 3 1
//! 2 1 3
//! ```
//!
//! Polycyclic format, with `p i : ...` giving `g_i^{r_i}` and `c j i : ...`
//! giving `[g_j, g_i]` for `j > i`, both as exponent vectors; omitted
//! relations are trivial:
//!
//! ```text
//! pc 3
//! 5 5 5
//! c 2 1 : 0 0 1
//! ```
//!
//! `#` starts a comment. Blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{FszError, Result};
use crate::group::{Group, PcPresentation};

/// A parsed, not yet materialised, group file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    /// 0-based image lists.
    Permutations {
        degree: usize,
        generators: Vec<Vec<u32>>,
    },
    Polycyclic(PcPresentation),
}

fn parse_err(line: usize, message: impl Into<String>) -> FszError {
    FszError::Parse { line, message: message.into() }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| parse_err(line, format!("'{t}' is not a nonnegative integer"))))
        .collect()
}

/// Parses the text of a group file.
pub fn parse_group_text(text: &str) -> Result<GroupSource> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty group file"))?;
    let mut head = header.split_whitespace();
    let kind = head.next().unwrap_or("");
    let size: usize = head
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(hline, "header must be 'perm <degree>' or 'pc <k>'"))?;
    if head.next().is_some() {
        return Err(parse_err(hline, "trailing tokens after header"));
    }
    match kind {
        "perm" => {
            if size == 0 {
                return Err(parse_err(hline, "degree must be positive"));
            }
            let mut generators = Vec::new();
            for (ln, l) in lines {
                let images = numbers(ln, l)?;
                if images.len() != size {
                    return Err(parse_err(ln, format!("expected {size} images, found {}", images.len())));
                }
                if let Some(&bad) = images.iter().find(|&&x| x == 0 || x > size as u64) {
                    return Err(parse_err(ln, format!("image {bad} outside 1..{size}")));
                }
                generators.push(images.iter().map(|&x| x as u32 - 1).collect());
            }
            Ok(GroupSource::Permutations { degree: size, generators })
        }
        "pc" => {
            let (oline, orders) = lines.next().ok_or_else(|| parse_err(hline + 1, "missing relative orders"))?;
            let orders = numbers(oline, orders)?;
            if orders.len() != size {
                return Err(parse_err(oline, format!("expected {size} relative orders, found {}", orders.len())));
            }
            if orders.iter().any(|&r| r > u32::MAX as u64) {
                return Err(parse_err(oline, "relative order too large"));
            }
            let mut pres = PcPresentation::new(orders.iter().map(|&r| r as u32).collect());
            for (ln, l) in lines {
                let (lhs, rhs) = l.split_once(':').ok_or_else(|| parse_err(ln, "relation needs ':'"))?;
                let mut lt = lhs.split_whitespace();
                let tag = lt.next().unwrap_or("");
                let idx = numbers(ln, &lt.collect::<Vec<_>>().join(" "))?;
                let word = numbers(ln, rhs)?;
                if word.len() != size {
                    return Err(parse_err(ln, format!("expected {size} exponents, found {}", word.len())));
                }
                let word: Vec<u32> = word.iter().map(|&e| e.min(u32::MAX as u64) as u32).collect();
                let in_range = |i: u64| i >= 1 && i <= size as u64;
                match (tag, idx.as_slice()) {
                    ("p", &[i]) if in_range(i) => pres.set_power(i as usize - 1, word),
                    ("c", &[j, i]) if in_range(i) && in_range(j) && j > i => {
                        pres.set_commutator(j as usize - 1, i as usize - 1, word)
                    }
                    ("c", &[_, _]) => {
                        return Err(parse_err(ln, format!("commutator indices must satisfy 1 <= i < j <= {size}")))
                    }
                    ("p", &[_]) => return Err(parse_err(ln, format!("power index outside 1..{size}"))),
                    _ => return Err(parse_err(ln, "expected 'p i : e1 .. ek' or 'c j i : e1 .. ek'")),
                }
            }
            Ok(GroupSource::Polycyclic(pres))
        }
        other => Err(parse_err(hline, format!("unknown group file kind '{other}'"))),
    }
}

impl GroupSource {
    pub fn build(self, name: impl Into<String>) -> Result<Group> {
        match self {
            GroupSource::Permutations { degree, generators } => Group::from_permutations(name, degree, &generators),
            GroupSource::Polycyclic(pres) => Group::from_pc_presentation(name, pres),
        }
    }
}

/// Reads and builds a group file; the group is named after the file stem.
pub fn load_group(path: impl AsRef<Path>) -> Result<Group> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "group".into());
    parse_group_text(&text)?.build(name)
}

/// Re-dumps a group: its polycyclic presentation when it has one, else its
/// natural permutation representation, else the regular representation.
pub fn dump_group(g: &Group) -> String {
    let mut out = String::new();
    if let Some(pres) = g.pc_presentation() {
        let k = pres.len();
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(out, "# {}", g.name()).unwrap();
        writeln!(out, "pc {k}").unwrap();
        writeln!(out, "{}", join(&pres.relative_orders)).unwrap();
        for i in 0..k {
            if pres.powers[i].iter().any(|&e| e != 0) {
                writeln!(out, "p {} : {}", i + 1, join(&pres.powers[i])).unwrap();
            }
        }
        for j in 0..k {
            for i in 0..j {
                if pres.commutators[j][i].iter().any(|&e| e != 0) {
                    writeln!(out, "c {} {} : {}", j + 1, i + 1, join(&pres.commutators[j][i])).unwrap();
                }
            }
        }
        return out;
    }
    let (degree, perms): (usize, Vec<Vec<u32>>) = match g.permutation_degree() {
        Some(d) => (d, g.generators().iter().map(|&s| g.permutation_of(s).expect("perm")).collect()),
        None => (g.order(), g.generators().iter().map(|&s| g.regular_permutation(s)).collect()),
    };
    writeln!(out, "# {}", g.name()).unwrap();
    writeln!(out, "perm {degree}").unwrap();
    for p in perms {
        let line: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}
