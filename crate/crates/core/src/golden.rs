//! Embedded golden tables.
//!
//! The tabulated reference values live in versioned plain-text data files,
//! one record per cell or row, so that table-match verification diffs
//! against data rather than code constants. Parsers are exposed so the
//! negative-control tests can feed perturbed copies through the same path.

use std::sync::OnceLock;

use num_bigint::BigInt;

pub const LOCAL_TABLE_GOLDEN: &str = include_str!("../data/local_table.golden");
pub const GLOBAL_TABLE_GOLDEN: &str = include_str!("../data/global_table.golden");

/// One cell of the golden local table. `value: None` encodes a `*` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGoldenCell {
    pub a: u32,
    pub b: u32,
    pub value: Option<BigInt>,
    /// Column-maximum marker.
    pub bold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGolden {
    pub schema: String,
    pub provenance: String,
    pub cells: Vec<LocalGoldenCell>,
}

impl LocalGolden {
    pub fn defined_count(&self) -> usize {
        self.cells.iter().filter(|c| c.value.is_some()).count()
    }

    /// The marked column maximum of column `a`, if the column is present.
    pub fn bold_b(&self, a: u32) -> Option<u32> {
        self.cells.iter().find(|c| c.a == a && c.bold).map(|c| c.b)
    }
}

/// One row of the golden global table, with its tabulated maximizer
/// annotation expanded to a full tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalGoldenRow {
    pub a: u32,
    pub value: BigInt,
    pub maximizer: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalGolden {
    pub schema: String,
    pub provenance: String,
    pub rows: Vec<GlobalGoldenRow>,
}

fn parse_header(lines: &[&str]) -> (String, String) {
    let mut schema = String::new();
    let mut provenance = String::new();
    for l in lines {
        if let Some(rest) = l.strip_prefix("# schema:") {
            schema = rest.trim().to_string();
        } else if let Some(rest) = l.strip_prefix("# provenance:") {
            provenance = rest.trim().to_string();
        }
    }
    (schema, provenance)
}

pub fn parse_local_golden(text: &str) -> Result<LocalGolden, String> {
    let lines: Vec<&str> = text.lines().collect();
    let (schema, provenance) = parse_header(&lines);
    let mut cells = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(format!("line {}: expected 4 fields, got {}", i + 1, fields.len()));
        }
        let a: u32 = fields[0].parse().map_err(|e| format!("line {}: {e}", i + 1))?;
        let b: u32 = fields[1].parse().map_err(|e| format!("line {}: {e}", i + 1))?;
        let value = if fields[2] == "*" {
            None
        } else {
            Some(
                fields[2]
                    .parse::<BigInt>()
                    .map_err(|e| format!("line {}: {e}", i + 1))?,
            )
        };
        let bold = match fields[3] {
            "B" => true,
            "-" => false,
            other => return Err(format!("line {}: bad bold marker {other:?}", i + 1)),
        };
        cells.push(LocalGoldenCell { a, b, value, bold });
    }
    if cells.is_empty() {
        return Err("no cell records".to_string());
    }
    Ok(LocalGolden {
        schema,
        provenance,
        cells,
    })
}

/// Expand a `value^count` run-length annotation like `1^2,0^2`.
pub fn parse_run_length(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let (v, n) = part
            .split_once('^')
            .ok_or_else(|| format!("bad run {part:?}"))?;
        let v: u32 = v.parse().map_err(|e| format!("bad run value {part:?}: {e}"))?;
        let n: usize = n.parse().map_err(|e| format!("bad run count {part:?}: {e}"))?;
        out.extend(std::iter::repeat_n(v, n));
    }
    if out.windows(2).any(|w| w[0] < w[1]) {
        return Err(format!("annotation {s:?} is not non-increasing"));
    }
    Ok(out)
}

pub fn parse_global_golden(text: &str) -> Result<GlobalGolden, String> {
    let lines: Vec<&str> = text.lines().collect();
    let (schema, provenance) = parse_header(&lines);
    let mut rows = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(format!("line {}: expected 3 fields, got {}", i + 1, fields.len()));
        }
        let a: u32 = fields[0].parse().map_err(|e| format!("line {}: {e}", i + 1))?;
        let value: BigInt = fields[1].parse().map_err(|e| format!("line {}: {e}", i + 1))?;
        let maximizer = parse_run_length(fields[2]).map_err(|e| format!("line {}: {e}", i + 1))?;
        rows.push(GlobalGoldenRow { a, value, maximizer });
    }
    if rows.is_empty() {
        return Err("no row records".to_string());
    }
    Ok(GlobalGolden {
        schema,
        provenance,
        rows,
    })
}

/// The embedded golden local table.
pub fn local_golden() -> &'static LocalGolden {
    static PARSED: OnceLock<LocalGolden> = OnceLock::new();
    PARSED.get_or_init(|| parse_local_golden(LOCAL_TABLE_GOLDEN).expect("embedded golden data parses"))
}

/// The embedded golden global table.
pub fn global_golden() -> &'static GlobalGolden {
    static PARSED: OnceLock<GlobalGolden> = OnceLock::new();
    PARSED.get_or_init(|| parse_global_golden(GLOBAL_TABLE_GOLDEN).expect("embedded golden data parses"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_local_parses() {
        let g = local_golden();
        assert_eq!(g.schema, "1");
        assert_eq!(g.cells.len(), 232);
        assert_eq!(g.defined_count(), 167);
        let c966 = g
            .cells
            .iter()
            .find(|c| c.a == 36 && c.b == 4)
            .unwrap();
        assert_eq!(c966.value, Some(BigInt::from(966)));
        assert!(c966.bold);
        assert_eq!(g.bold_b(15), Some(2));
        assert_eq!(g.bold_b(17), Some(3));
    }

    #[test]
    fn embedded_global_parses() {
        let g = global_golden();
        assert_eq!(g.rows.len(), 36);
        let r16 = g.rows.iter().find(|r| r.a == 16).unwrap();
        assert_eq!(r16.value, BigInt::from(308));
        assert_eq!(r16.maximizer, vec![2; 7]);
        let r4 = g.rows.iter().find(|r| r.a == 4).unwrap();
        assert_eq!(r4.maximizer, vec![1, 1, 0, 0]);
    }

    #[test]
    fn run_length_roundtrip() {
        assert_eq!(parse_run_length("2^7").unwrap(), vec![2; 7]);
        assert_eq!(parse_run_length("1^2,0^2").unwrap(), vec![1, 1, 0, 0]);
        assert!(parse_run_length("0^2,1^1").is_err());
        assert!(parse_run_length("x").is_err());
    }

    #[test]
    fn parser_rejects_malformed_records() {
        assert!(parse_local_golden("1 2 3").is_err());
        assert!(parse_local_golden("# only comments\n").is_err());
        assert!(parse_local_golden("1 0 1 Q\n").is_err());
        assert!(parse_global_golden("1 1\n").is_err());
    }
}
