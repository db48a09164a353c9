use serde::Deserialize;

use super::{BlockSeifert, IntMatrix, SeifertError};

fn parse_err(msg: impl Into<String>) -> SeifertError {
    SeifertError::Parse(msg.into())
}

/// Significant lines: trimmed, with blank lines and `#` comments dropped.
fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn ints(line: &str) -> Result<Vec<i64>, SeifertError> {
    line.split_whitespace()
        .map(|tok| tok.parse().map_err(|_| parse_err(format!("not an integer: {tok:?}"))))
        .collect()
}

fn read_matrix<'a>(it: &mut impl Iterator<Item = &'a str>) -> Result<IntMatrix, SeifertError> {
    let header = it.next().ok_or_else(|| parse_err("missing `<rows> <cols>` line"))?;
    let dims = ints(header)?;
    let [rows, cols] = dims[..] else {
        return Err(parse_err(format!("expected `<rows> <cols>`, got {header:?}")));
    };
    let (rows, cols) = (to_dim(rows)?, to_dim(cols)?);
    let mut data = Vec::with_capacity(rows * cols);
    // Rows of a zero-column matrix would be blank lines; none are expected.
    for r in 0..if cols == 0 { 0 } else { rows } {
        let line = it
            .next()
            .ok_or_else(|| parse_err(format!("missing matrix row {}", r + 1)))?;
        let row = ints(line)?;
        if row.len() != cols {
            return Err(parse_err(format!(
                "row {} has {} entries, expected {cols}",
                r + 1,
                row.len()
            )));
        }
        data.extend(row);
    }
    IntMatrix::with_shape(rows, cols, data)
}

fn to_dim(v: i64) -> Result<usize, SeifertError> {
    usize::try_from(v).map_err(|_| parse_err(format!("negative dimension {v}")))
}

/// Text matrix: a `<rows> <cols>` line followed by one line per row.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, SeifertError> {
    let mut it = lines(text);
    let m = read_matrix(&mut it)?;
    match it.next() {
        None => Ok(m),
        Some(extra) => Err(parse_err(format!("unexpected trailing line {extra:?}"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockJson {
    #[serde(rename = "A_J")]
    a_j: Vec<Vec<i64>>,
    #[serde(rename = "A_K")]
    a_k: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    b: Vec<Vec<i64>>,
}

/// Block Seifert data, either as JSON `{"A_J": .., "A_K": .., "B": ..}` or as
/// three text matrices each preceded by a header line `A_J`, `A_K`, `B`.
pub fn parse_block(text: &str) -> Result<BlockSeifert, SeifertError> {
    if text.trim_start().starts_with('{') {
        let raw: BlockJson = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        return BlockSeifert::new(
            IntMatrix::from_rows(raw.a_j)?,
            IntMatrix::from_rows(raw.a_k)?,
            IntMatrix::from_rows(raw.b)?,
        );
    }
    let mut it = lines(text).peekable();
    let (mut a_j, mut a_k, mut b) = (None, None, None);
    while let Some(header) = it.next() {
        let slot = match header {
            "A_J" => &mut a_j,
            "A_K" => &mut a_k,
            "B" => &mut b,
            other => return Err(parse_err(format!("expected header A_J, A_K or B, got {other:?}"))),
        };
        if slot.is_some() {
            return Err(parse_err(format!("duplicate block {header}")));
        }
        *slot = Some(read_matrix(&mut it)?);
    }
    let missing = |name: &str| parse_err(format!("missing block {name}"));
    BlockSeifert::new(
        a_j.ok_or_else(|| missing("A_J"))?,
        a_k.ok_or_else(|| missing("A_K"))?,
        b.ok_or_else(|| missing("B"))?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "A_J\n2 2\n-1 1\n0 -1\n\nA_K\n2 2\n-1 1\n0 -1\nB\n2 2\n1 0\n0 0\n";

    #[test]
    fn text_and_json_blocks_agree() {
        let text = parse_block(TEXT).unwrap();
        let json = parse_block(r#"{"A_J": [[-1,1],[0,-1]], "A_K": [[-1,1],[0,-1]], "B": [[1,0],[0,0]]}"#).unwrap();
        assert_eq!(text, json);
        assert_eq!(text.genus_k(), 1);
    }

    #[test]
    fn empty_blocks() {
        let bs = parse_block(r#"{"A_J": [[-1,1],[0,-1]], "A_K": [], "B": []}"#).unwrap();
        assert_eq!(bs.b().rows(), 2);
        assert_eq!(bs.b().cols(), 0);
        let bs = parse_block("A_J\n2 2\n-1 1\n0 -1\nA_K\n0 0\nB\n2 0\n").unwrap();
        assert_eq!(bs.genus_k(), 0);
    }

    #[test]
    fn matrix_round_trip() {
        let m = parse_matrix("# figure eight\n2 2\n1 1\n0 -1\n").unwrap();
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_matrix("2 2\n1 1\n"), Err(SeifertError::Parse(_))));
        assert!(matches!(parse_matrix("2 2\n1 1\n0 x\n"), Err(SeifertError::Parse(_))));
        assert!(matches!(parse_matrix("1 1\n1\n2\n"), Err(SeifertError::Parse(_))));
        assert!(matches!(parse_block("A_J\n0 0\n"), Err(SeifertError::Parse(_))));
        assert!(matches!(parse_block("{\"A_J\": 3}"), Err(SeifertError::Parse(_))));
        assert!(matches!(
            parse_block("A_J\n2 2\n-1 1\n0 -1\nA_K\n0 0\nB\n1 1\n0\n"),
            Err(SeifertError::DimensionMismatch(_))
        ));
    }
}
