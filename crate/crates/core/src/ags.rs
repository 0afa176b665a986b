//! The AGS text format for groups (`gen` blocks) and element sets (`elt` blocks).
//!
//! ```text
//! ags 1
//! dim <n>
//! name <label>        # optional
//! gen
//! <n+1 rows of n+1 entries, integer or p/q>
//! ```

use exact_linalg::{format_rational, parse_rational, RatMatrix, Rational};

use crate::affine::{AffineElement, GroupSpec};
use crate::error::{Error, Result};
use crate::witness::ElementSet;

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Non-empty lines with comments removed, each split into tokens.
fn tokenize(text: &str) -> Vec<(usize, &str, Vec<Token<'_>>)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        line: i + 1,
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push((i + 1, content, tokens));
        }
    }
    out
}

struct Document {
    dimension: usize,
    name: Option<String>,
    blocks: Vec<(String, AffineElement)>,
}

fn parse_document(text: &str, block_keyword: &str) -> Result<Document> {
    let lines = tokenize(text);
    let mut it = lines.iter().peekable();

    let Some((line, _, tokens)) = it.next() else { return Err(parse_error(1, 1, "empty input; expected `ags 1`")) };
    if tokens[0].text != "ags" {
        return Err(parse_error(*line, tokens[0].column, format!("expected `ags`, found `{}`", tokens[0].text)));
    }
    match tokens.get(1) {
        Some(t) if t.text == "1" && tokens.len() == 2 => {}
        Some(t) => return Err(parse_error(t.line, t.column, format!("unsupported version `{}`", t.text))),
        None => return Err(parse_error(*line, tokens[0].column + 3, "missing version")),
    }

    let Some((line, _, tokens)) = it.next() else { return Err(parse_error(line + 1, 1, "missing `dim` line")) };
    if tokens[0].text != "dim" || tokens.len() != 2 {
        return Err(parse_error(*line, tokens[0].column, "expected `dim <n>`"));
    }
    let dimension: usize = tokens[1]
        .text
        .parse()
        .map_err(|_| parse_error(*line, tokens[1].column, format!("bad dimension `{}`", tokens[1].text)))?;

    let mut name = None;
    if let Some((_, content, tokens)) = it.peek() {
        if tokens[0].text == "name" {
            let rest = content.trim_start()["name".len()..].trim();
            if rest.is_empty() {
                return Err(parse_error(tokens[0].line, tokens[0].column, "empty name"));
            }
            name = Some(rest.to_string());
            it.next();
        }
    }

    let mut blocks = Vec::new();
    while let Some((line, _, tokens)) = it.next() {
        let keyword = tokens[0].text;
        if keyword != block_keyword || tokens.len() != 1 {
            return Err(parse_error(*line, tokens[0].column, format!("expected `{block_keyword}`, found `{keyword}`")));
        }
        let mut rows = Vec::with_capacity(dimension + 1);
        for r in 0..=dimension {
            let Some((row_line, _, row)) = it.next() else {
                return Err(parse_error(
                    line + r + 1,
                    1,
                    format!("`{keyword}` block ends after {r} of {} rows", dimension + 1),
                ));
            };
            if row.len() != dimension + 1 {
                return Err(parse_error(
                    *row_line,
                    row[0].column,
                    format!("expected {} entries, found {}", dimension + 1, row.len()),
                ));
            }
            let entries = row
                .iter()
                .map(|t| {
                    parse_rational(t.text)
                        .ok_or_else(|| parse_error(t.line, t.column, format!("bad number `{}`", t.text)))
                })
                .collect::<Result<Vec<Rational>>>()?;
            rows.push(entries);
        }
        let m = RatMatrix::from_rows(rows)?;
        let element =
            AffineElement::from_affine_matrix(&m).map_err(|e| parse_error(*line, tokens[0].column, e.to_string()))?;
        blocks.push((keyword.to_string(), element));
    }
    Ok(Document { dimension, name, blocks })
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let doc = parse_document(text, "gen")?;
    GroupSpec::new(doc.dimension, doc.name, doc.blocks.into_iter().map(|b| b.1).collect())
}

/// A set file; its `name` line, if any, is ignored.
pub fn parse_set(text: &str) -> Result<ElementSet> {
    let doc = parse_document(text, "elt")?;
    ElementSet::new(doc.dimension, doc.blocks.into_iter().map(|b| b.1))
}

fn write_header(out: &mut String, dimension: usize, name: Option<&str>) {
    out.push_str(&format!("ags 1\ndim {dimension}\n"));
    if let Some(name) = name {
        out.push_str(&format!("name {name}\n"));
    }
}

fn write_block(out: &mut String, keyword: &str, g: &AffineElement) {
    out.push_str(keyword);
    out.push('\n');
    for row in g.to_affine_matrix().to_rows() {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Canonical text: one entry per token, single spaces, `p/q` in lowest terms.
pub fn serialize_group(spec: &GroupSpec) -> String {
    let mut out = String::new();
    write_header(&mut out, spec.dimension(), spec.name());
    for g in spec.generators() {
        write_block(&mut out, "gen", g);
    }
    out
}

pub fn serialize_set(set: &ElementSet) -> String {
    let mut out = String::new();
    write_header(&mut out, set.dimension(), None);
    for e in set.elements() {
        write_block(&mut out, "elt", e);
    }
    out
}

pub fn read_group(path: &std::path::Path) -> Result<GroupSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_group(&text)
}

pub fn read_set(path: &std::path::Path) -> Result<ElementSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_set(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn free_abelian_text() {
        let spec = GroupSpec::new(1, None, vec![]).unwrap();
        assert_eq!(serialize_group(&spec), "ags 1\ndim 1\n");
        assert_eq!(parse_group("ags 1\ndim 1\n").unwrap(), spec);
    }

    #[test]
    fn round_trips() {
        for (_, spec) in fixtures::bundled() {
            let text = serialize_group(&spec);
            let back = parse_group(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(serialize_group(&back), text);
        }
    }

    #[test]
    fn halves_are_verbatim() {
        assert!(serialize_group(&fixtures::example_05_01_06_006()).contains(" 1/2\n"));
    }

    #[test]
    fn comments_and_spacing() {
        let text = "# klein bottle\nags 1\n dim 2\nname  kb  # label\n\ngen\n1  0 1/2\n0 -1 0   \n0 0 1\n";
        let spec = parse_group(text).unwrap();
        assert_eq!(spec.name(), Some("kb"));
        assert_eq!(spec, fixtures::klein_bottle().with_name("kb"));
    }

    fn err(text: &str) -> (usize, usize) {
        match parse_group(text) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_have_positions() {
        assert_eq!(err("ags 1\ndim 3\ngen\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 1 1\n"), (3, 1));
        assert_eq!(err("ags 1\ndim 1\ngen\n1 x\n0 1\n"), (4, 3));
        assert_eq!(err("ags 2\n"), (1, 5));
        assert_eq!(err("ags 1\ndim 1\ngen\n1 0 0\n"), (4, 1));
        assert_eq!(err("ags 1\ndim 1\ngen\n1 0\n"), (5, 1));
        assert_eq!(err("ags 1\ndim 1\nelt\n1 0\n0 1\n"), (3, 1));
        assert_eq!(err("ags 1\ndim 1\ngen\n1 1/0\n0 1\n"), (4, 3));
        assert_eq!(err(""), (1, 1));
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(parse_group("ags 1\ndim 1\ngen\n2 0\n0 1\n").is_err());
    }

    #[test]
    fn sets() {
        let text = "ags 1\ndim 1\nelt\n1 0\n0 1\nelt\n1 1\n0 1\n";
        let set = parse_set(text).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(serialize_set(&set), text);
    }
}
