use std::path::Path;

use super::{Elem, FiniteGroup, GroupError};

/// Parses the text group format: the order `n` on the first line, then `n`
/// rows of `n` space-separated entries. Lines starting with `#` and blank
/// lines are ignored.
pub fn parse_cayley_table(text: &str) -> Result<FiniteGroup, GroupError> {
    parse_named(text, "table")
}

/// Reads and validates a group file. The group is named after the file stem.
pub fn load_cayley_table(path: impl AsRef<Path>) -> Result<FiniteGroup, GroupError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "table".into());
    parse_named(&text, &name)
}

fn parse_named(text: &str, name: &str) -> Result<FiniteGroup, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(GroupError::Parse {
        line: 1,
        message: "missing group order".into(),
    })?;
    let n: usize = header.parse().map_err(|_| GroupError::Parse {
        line: line_no,
        message: format!("expected group order, found {header:?}"),
    })?;
    if n == 0 {
        return Err(GroupError::Parse {
            line: line_no,
            message: "group order must be positive".into(),
        });
    }

    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if rows.len() == n {
            return Err(GroupError::Parse {
                line: line_no,
                message: format!("more than {n} table rows"),
            });
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Elem>().map_err(|_| GroupError::Parse {
                    line: line_no,
                    message: format!("bad table entry {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(GroupError::Parse {
                line: line_no,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(GroupError::Parse {
            line: text.lines().count(),
            message: format!("expected {n} table rows, found {}", rows.len()),
        });
    }
    FiniteGroup::from_table(name, &rows)
}
