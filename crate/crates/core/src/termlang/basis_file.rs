use thiserror::Error;

use super::{parse, TermError, TermExpr};

/// Contents of a basis file: an optional target and the ordered terms.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisFile {
    pub target: Option<TermExpr>,
    pub terms: Vec<TermExpr>,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {error}")]
pub struct BasisFileError {
    pub line: usize,
    pub error: TermError,
}

/// One expression per line. Blank lines and lines starting with `#` are
/// skipped; the first remaining line may be `target: <expr>`.
pub fn parse_basis_file(text: &str) -> Result<BasisFile, BasisFileError> {
    let mut target = None;
    let mut terms = Vec::new();
    let mut first = true;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |error| BasisFileError { line: i + 1, error };
        if let Some(rest) = strip_target(line) {
            if !first {
                return Err(err(TermError::Syntax {
                    offset: 1,
                    expected: vec!["expression".into()],
                    found: "target: after the first entry".into(),
                }));
            }
            target = Some(parse(rest).map_err(|e| err(shift(e, line.len() - rest.len())))?);
        } else {
            terms.push(parse(line).map_err(err)?);
        }
        first = false;
    }
    Ok(BasisFile { target, terms })
}

fn strip_target(line: &str) -> Option<&str> {
    let head = line.get(..7)?;
    head.eq_ignore_ascii_case("target:").then(|| &line[7..])
}

fn shift(e: TermError, by: usize) -> TermError {
    match e {
        TermError::Syntax {
            offset,
            expected,
            found,
        } => TermError::Syntax {
            offset: offset + by,
            expected,
            found,
        },
        TermError::UnknownName { name, offset } => TermError::UnknownName {
            name,
            offset: offset + by,
        },
    }
}
