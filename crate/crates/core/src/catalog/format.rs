//! The plain-text presentation file format.
//!
//! Line-oriented UTF-8 with four sections:
//!
//! ```text
//! [generators]   name degree          (one per line, precedence order)
//! [relations]    polynomial grammar   (one per line)
//! [steenrod]     Sq<i> <gen> = <poly>
//! [meta]         key = value          (name, description, note)
//! ```
//!
//! Sections may appear in any order and `#` starts a comment. The canonical
//! writer emits generators in precedence order (the order is semantic: it
//! fixes the monomial order), relations sorted by their canonical rendering,
//! and steenrod lines sorted by generator and index, so writing is
//! deterministic and reloading reproduces the text bit for bit.

use crate::error::{Error, Result};
use crate::poly::{parse_poly, Poly, VarSet};
use crate::presentation::AlgebraPresentation;
use crate::steenrod::table::{ActionTable, Provenance};

/// The data carried by a presentation file.
#[derive(Clone, Debug)]
pub struct PresentationFile {
    pub name: String,
    pub description: String,
    pub notes: Vec<String>,
    pub presentation: AlgebraPresentation,
}

/// Canonical serialization.
pub fn write_presentation(
    name: &str,
    description: &str,
    notes: &[String],
    alg: &AlgebraPresentation,
) -> String {
    let vars = alg.vars();
    let mut out = String::new();
    out.push_str("[generators]\n");
    for v in vars.vars() {
        out.push_str(&format!("{} {}\n", v.name, v.degree));
    }
    out.push_str("\n[relations]\n");
    let mut relations: Vec<String> = alg.relations().iter().map(|r| r.to_string()).collect();
    relations.sort();
    for r in &relations {
        out.push_str(r);
        out.push('\n');
    }
    out.push_str("\n[steenrod]\n");
    let mut lines: Vec<((usize, u32), String)> = alg
        .table()
        .iter()
        .map(|(&(g, i), entry)| {
            (
                (g, i),
                format!("Sq{} {} = {}\n", i, vars.name(g), entry.value),
            )
        })
        .collect();
    lines.sort_by_key(|(key, _)| *key);
    for (_, line) in &lines {
        out.push_str(line);
    }
    out.push_str("\n[meta]\n");
    out.push_str(&format!("name = {name}\n"));
    if !description.is_empty() {
        out.push_str(&format!("description = {description}\n"));
    }
    for note in notes {
        out.push_str(&format!("note = {note}\n"));
    }
    out
}

#[derive(PartialEq, Clone, Copy)]
enum Section {
    None,
    Generators,
    Relations,
    Steenrod,
    Meta,
}

/// Parses the file format back into a presentation.
pub fn parse_presentation(text: &str) -> Result<PresentationFile> {
    let mut section = Section::None;
    let mut generators: Vec<(String, u32)> = Vec::new();
    let mut relation_lines: Vec<String> = Vec::new();
    let mut steenrod_lines: Vec<String> = Vec::new();
    let mut name = String::new();
    let mut description = String::new();
    let mut notes = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line {
            "[generators]" => section = Section::Generators,
            "[relations]" => section = Section::Relations,
            "[steenrod]" => section = Section::Steenrod,
            "[meta]" => section = Section::Meta,
            _ => match section {
                Section::None => {
                    return Err(Error::Format(format!(
                        "line {}: content before any section header",
                        lineno + 1
                    )))
                }
                Section::Generators => {
                    let mut parts = line.split_whitespace();
                    let (Some(name), Some(degree), None) =
                        (parts.next(), parts.next(), parts.next())
                    else {
                        return Err(Error::Format(format!(
                            "line {}: expected `name degree`",
                            lineno + 1
                        )));
                    };
                    let degree: u32 = degree.parse().map_err(|_| {
                        Error::Format(format!("line {}: bad degree `{degree}`", lineno + 1))
                    })?;
                    generators.push((name.to_string(), degree));
                }
                Section::Relations => relation_lines.push(line.to_string()),
                Section::Steenrod => steenrod_lines.push(line.to_string()),
                Section::Meta => {
                    let Some((key, value)) = line.split_once('=') else {
                        return Err(Error::Format(format!(
                            "line {}: expected `key = value`",
                            lineno + 1
                        )));
                    };
                    let (key, value) = (key.trim(), value.trim());
                    match key {
                        "name" => name = value.to_string(),
                        "description" => description = value.to_string(),
                        "note" => notes.push(value.to_string()),
                        other => {
                            return Err(Error::Format(format!(
                                "line {}: unknown meta key `{other}`",
                                lineno + 1
                            )))
                        }
                    }
                }
            },
        }
    }

    let vars = VarSet::new(generators)?;
    let relations = relation_lines
        .iter()
        .map(|line| parse_poly(&vars, line))
        .collect::<Result<Vec<Poly>>>()?;
    let mut table = ActionTable::new();
    for line in &steenrod_lines {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("steenrod line without `=`: {line}")))?;
        let mut parts = lhs.split_whitespace();
        let (Some(op), Some(gen), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Format(format!("malformed steenrod line: {line}")));
        };
        let i: u32 = op
            .strip_prefix("Sq")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Format(format!("expected Sq<i>, got `{op}`")))?;
        let g = vars
            .index_of(gen)
            .ok_or_else(|| Error::Format(format!("unknown generator `{gen}`")))?;
        let value = parse_poly(&vars, rhs.trim())?;
        table.set(
            g,
            i,
            value,
            Provenance::Given {
                source: "presentation file".to_string(),
            },
        );
    }
    let presentation = AlgebraPresentation::new(name.clone(), vars, relations, table)?;
    Ok(PresentationFile {
        name,
        description,
        notes,
        presentation,
    })
}
