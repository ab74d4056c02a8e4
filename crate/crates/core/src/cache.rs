//! Class cache files.
//!
//! Line 1 is `rauzy-cache v1 <flavor> <a,b,…>`. Each following line holds
//! one member in pair notation, sorted by canonical key, and every line ends
//! with a newline. Loading rejects anything that would not be written back
//! byte for byte.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::classes::{ClassEnumeration, Flavor};
use crate::error::{Error, Result};
use crate::pairs::Pair;
use crate::perm::Alphabet;

const MAGIC: &str = "rauzy-cache";
const VERSION: &str = "v1";

fn header(class: &ClassEnumeration) -> String {
    format!("{MAGIC} {VERSION} {} {}", class.flavor(), class.alphabet())
}

/// Renders the cache file contents.
pub fn to_string(class: &ClassEnumeration) -> String {
    let mut out = header(class);
    out.push('\n');
    for p in class.members() {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

pub fn write<W: Write>(class: &ClassEnumeration, mut w: W) -> std::io::Result<()> {
    w.write_all(to_string(class).as_bytes())
}

pub fn store(class: &ClassEnumeration, path: &Path) -> Result<()> {
    fs::write(path, to_string(class)).map_err(|e| Error::Cache {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Cache {
        line,
        message: message.into(),
    }
}

/// Parses and validates cache contents.
pub fn parse(text: &str) -> Result<ClassEnumeration> {
    let lines: Vec<&str> = text.split_inclusive('\n').collect();
    if lines.is_empty() {
        return Err(err(1, "empty file"));
    }
    if let Some(last) = lines.last() {
        if !last.ends_with('\n') {
            return Err(err(lines.len(), "truncated line (no trailing newline)"));
        }
    }
    let head = lines[0].trim_end_matches('\n');
    let fields: Vec<&str> = head.split(' ').collect();
    if fields.len() != 4 || fields[0] != MAGIC {
        return Err(err(1, format!("bad header `{head}`")));
    }
    if fields[1] != VERSION {
        return Err(err(1, format!("unsupported version `{}`", fields[1])));
    }
    let flavor = Flavor::parse(fields[2]).map_err(|e| err(1, e.to_string()))?;
    let names: Vec<&str> = fields[3].split(',').collect();
    let alphabet = Alphabet::new(names.iter().copied()).map_err(|e| err(1, e.to_string()))?;
    if alphabet.to_string() != fields[3] {
        return Err(err(1, "alphabet is not in sorted order"));
    }

    let mut members = Vec::with_capacity(lines.len() - 1);
    for (i, line) in lines[1..].iter().enumerate() {
        let number = i + 2;
        let body = line.trim_end_matches('\n');
        let p = Pair::parse_with(&alphabet, body).map_err(|e| err(number, e.to_string()))?;
        if p.to_string() != body {
            return Err(err(number, "member is not in canonical spacing"));
        }
        if !p.is_irreducible() {
            return Err(err(number, format!("reducible member {p}")));
        }
        let key = p.rows().key();
        if let Some(&prev) = members.last() {
            if key <= prev {
                return Err(err(number, "members are not strictly sorted"));
            }
        }
        members.push(key);
    }
    if members.is_empty() {
        return Err(err(2, "no members"));
    }
    let class = ClassEnumeration::from_sorted(flavor, alphabet, members);
    for p in class.members() {
        for &mv in flavor.moves() {
            let q = p.apply(mv)?;
            if !class.contains(&q) {
                return Err(err(
                    class.len() + 2,
                    format!("class not closed: {q} (reached from {p} by {mv:?}) is missing"),
                ));
            }
        }
    }
    Ok(class)
}

pub fn load(path: &Path) -> Result<ClassEnumeration> {
    let text = fs::read_to_string(path).map_err(|e| err(0, format!("{}: {e}", path.display())))?;
    parse(&text)
}
