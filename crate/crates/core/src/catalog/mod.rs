//! The `YBX/1` interchange format: line-oriented, bit-exact text records
//! for solutions, braces, construction data and censuses, plus canonical
//! hashing for deduplication.
//!
//! Layout:
//!
//! ```text
//! YBX/1 <kind> sha256
//! n=<int>            (m=<int> for braces and data)
//! <table row of space-separated 0-indexed integers>
//! …
//! --                 (section separator)
//! …
//! ==
//! key=value          (computed invariants; unknown keys preserved)
//! ```
//!
//! The record hash is SHA-256 (the algorithm named in the header) over the
//! serialized payload of the canonical form, so it depends only on the
//! isomorphism class for solutions (up to 10 points; larger solutions
//! hash their literal payload) and braces.

mod store;

pub use store::{store_put, store_query};

use sha2::{Digest, Sha256};

use crate::brace::{canonical_tables, Brace};
use crate::census::CensusReport;
use crate::construct::ConstructionDatum;
use crate::error::{Error, Result};
use crate::solution::{canonical_form, MultipermutationLevel, Solution};

/// Largest solution size whose hash is canonicalized by full relabeling
/// minimization; beyond it the literal table is hashed.
pub const CANONICAL_HASH_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Solution {
        sigma: Vec<Vec<usize>>,
    },
    Brace {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    },
    Datum {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        representatives: Vec<usize>,
        /// `(position into representatives, subgroup members)`.
        families: Vec<(usize, Vec<usize>)>,
    },
    Census {
        n: usize,
        classes: Vec<Vec<Vec<usize>>>,
    },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Solution { .. } => "solution",
            Payload::Brace { .. } => "brace",
            Payload::Datum { .. } => "datum",
            Payload::Census { .. } => "census",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRecord {
    pub payload: Payload,
    pub invariants: Vec<(String, String)>,
}

impl CatalogRecord {
    pub fn new(payload: Payload) -> CatalogRecord {
        CatalogRecord {
            payload,
            invariants: Vec::new(),
        }
    }

    pub fn with_invariants(
        payload: Payload,
        invariants: Vec<(String, String)>,
    ) -> CatalogRecord {
        CatalogRecord {
            payload,
            invariants,
        }
    }

    pub fn invariant(&self, key: &str) -> Option<&str> {
        self.invariants
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// `sha256:<hex>` over the canonical payload serialization.
    pub fn canonical_hash(&self) -> String {
        let canonical_payload = match &self.payload {
            Payload::Solution { sigma } => {
                if sigma.len() <= CANONICAL_HASH_BOUND {
                    let s = Solution::from_sigma(sigma.clone());
                    match s {
                        Ok(s) => Payload::Solution {
                            sigma: canonical_form(&s),
                        },
                        Err(_) => self.payload.clone(),
                    }
                } else {
                    self.payload.clone()
                }
            }
            Payload::Brace { add, mul } => match Brace::new(add.clone(), mul.clone()) {
                Ok(b) => {
                    let (add, mul) = canonical_tables(&b);
                    Payload::Brace { add, mul }
                }
                Err(_) => self.payload.clone(),
            },
            other => other.clone(),
        };
        let bytes = serialize_payload(&canonical_payload);
        let mut hasher = Sha256::new();
        hasher.update(bytes.as_bytes());
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{:02x}", b)).collect();
        format!("sha256:{}", hex)
    }
}

fn fmt_row(row: &[usize]) -> String {
    row.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn serialize_payload(payload: &Payload) -> String {
    let mut out = String::new();
    match payload {
        Payload::Solution { sigma } => {
            out.push_str(&format!("n={}\n", sigma.len()));
            for row in sigma {
                out.push_str(&fmt_row(row));
                out.push('\n');
            }
        }
        Payload::Brace { add, mul } => {
            out.push_str(&format!("m={}\n", add.len()));
            for row in add {
                out.push_str(&fmt_row(row));
                out.push('\n');
            }
            out.push_str("--\n");
            for row in mul {
                out.push_str(&fmt_row(row));
                out.push('\n');
            }
        }
        Payload::Datum {
            add,
            mul,
            representatives,
            families,
        } => {
            out.push_str(&format!("m={}\n", add.len()));
            for row in add {
                out.push_str(&fmt_row(row));
                out.push('\n');
            }
            out.push_str("--\n");
            for row in mul {
                out.push_str(&fmt_row(row));
                out.push('\n');
            }
            out.push_str("--\n");
            out.push_str(&fmt_row(representatives));
            out.push('\n');
            out.push_str("--\n");
            for (orbit, members) in families {
                let mut row = vec![*orbit];
                row.extend_from_slice(members);
                out.push_str(&fmt_row(&row));
                out.push('\n');
            }
        }
        Payload::Census { n, classes } => {
            out.push_str(&format!("n={}\n", n));
            for (i, class) in classes.iter().enumerate() {
                if i > 0 {
                    out.push_str("--\n");
                }
                for row in class {
                    out.push_str(&fmt_row(row));
                    out.push('\n');
                }
            }
        }
    }
    out
}

/// Renders a record; `parse(serialize(r)) == r` byte for byte.
pub fn serialize(record: &CatalogRecord) -> String {
    let mut out = format!("YBX/1 {} sha256\n", record.payload.kind());
    out.push_str(&serialize_payload(&record.payload));
    if !record.invariants.is_empty() {
        out.push_str("==\n");
        for (k, v) in &record.invariants {
            out.push_str(&format!("{}={}\n", k, v));
        }
    }
    out
}

/// Renders a sequence of records separated by blank lines.
pub fn serialize_stream(records: &[CatalogRecord]) -> String {
    records
        .iter()
        .map(serialize)
        .collect::<Vec<_>>()
        .join("\n")
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn current(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    fn advance(&mut self) {
        self.pos += 1;
    }

    fn line_no(&self) -> usize {
        self.pos + 1
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_int_row(lines: &Lines<'_>, text: &str) -> Result<Vec<usize>> {
    let mut row = Vec::new();
    let mut column = 1;
    for token in text.split(' ') {
        if token.is_empty() {
            return Err(parse_error(lines.line_no(), column, "empty token"));
        }
        let value: usize = token.parse().map_err(|_| {
            parse_error(
                lines.line_no(),
                column,
                format!("expected an integer, found {:?}", token),
            )
        })?;
        row.push(value);
        column += token.len() + 1;
    }
    if row.is_empty() {
        return Err(parse_error(lines.line_no(), 1, "empty row"));
    }
    Ok(row)
}

fn parse_size_line(lines: &mut Lines<'_>, key: &str) -> Result<usize> {
    let Some(line) = lines.current() else {
        return Err(parse_error(lines.line_no(), 1, format!("expected {}=<int>", key)));
    };
    let Some(value) = line.strip_prefix(&format!("{}=", key)) else {
        return Err(parse_error(
            lines.line_no(),
            1,
            format!("expected {}=<int>, found {:?}", key, line),
        ));
    };
    let size: usize = value.parse().map_err(|_| {
        parse_error(lines.line_no(), key.len() + 2, "expected an integer size")
    })?;
    if size == 0 {
        return Err(parse_error(lines.line_no(), key.len() + 2, "size must be positive"));
    }
    lines.advance();
    Ok(size)
}

/// Reads rows until a separator (`--`), the invariant marker (`==`), a
/// blank line or the end of input.
fn parse_table(lines: &mut Lines<'_>, width: usize, rows_expected: usize) -> Result<Vec<Vec<usize>>> {
    let mut rows = Vec::new();
    while rows.len() < rows_expected {
        let Some(line) = lines.current() else {
            return Err(parse_error(
                lines.line_no(),
                1,
                format!("expected {} table rows, found {}", rows_expected, rows.len()),
            ));
        };
        if line == "--" || line == "==" || line.is_empty() {
            return Err(parse_error(
                lines.line_no(),
                1,
                format!("expected {} table rows, found {}", rows_expected, rows.len()),
            ));
        }
        let row = parse_int_row(lines, line)?;
        if row.len() != width {
            return Err(parse_error(
                lines.line_no(),
                1,
                format!("row {} has {} entries, expected {}", rows.len(), row.len(), width),
            ));
        }
        rows.push(row);
        lines.advance();
    }
    Ok(rows)
}

fn expect_separator(lines: &mut Lines<'_>) -> Result<()> {
    match lines.current() {
        Some("--") => {
            lines.advance();
            Ok(())
        }
        other => Err(parse_error(
            lines.line_no(),
            1,
            format!("expected section separator --, found {:?}", other.unwrap_or("")),
        )),
    }
}

/// Parses one record. Exact inverse of [`serialize`] on its output.
pub fn parse(text: &str) -> Result<CatalogRecord> {
    let mut lines = Lines {
        lines: text.lines().collect(),
        pos: 0,
    };
    let record = parse_record(&mut lines)?;
    if let Some(extra) = lines.current() {
        if !extra.is_empty() {
            return Err(parse_error(lines.line_no(), 1, "trailing content"));
        }
    }
    Ok(record)
}

/// Parses a stream of records separated by blank lines.
pub fn parse_stream(text: &str) -> Result<Vec<CatalogRecord>> {
    let mut lines = Lines {
        lines: text.lines().collect(),
        pos: 0,
    };
    let mut records = Vec::new();
    loop {
        while lines.current() == Some("") {
            lines.advance();
        }
        if lines.current().is_none() {
            return Ok(records);
        }
        records.push(parse_record(&mut lines)?);
    }
}

fn parse_record(lines: &mut Lines<'_>) -> Result<CatalogRecord> {
    let Some(header) = lines.current() else {
        return Err(parse_error(lines.line_no(), 1, "empty input"));
    };
    let mut tokens = header.split(' ');
    let version = tokens.next().unwrap_or("");
    if version != "YBX/1" {
        return Err(parse_error(
            lines.line_no(),
            1,
            format!("unsupported format version {:?}, expected \"YBX/1\"", version),
        ));
    }
    let kind = tokens
        .next()
        .ok_or_else(|| parse_error(lines.line_no(), 7, "missing record kind"))?;
    let hash_name = tokens.next().unwrap_or("");
    if hash_name != "sha256" {
        return Err(parse_error(
            lines.line_no(),
            7 + kind.len() + 1,
            format!("unsupported hash {:?}, expected \"sha256\"", hash_name),
        ));
    }
    lines.advance();

    let payload = match kind {
        "solution" => {
            let n = parse_size_line(lines, "n")?;
            let sigma = parse_table(lines, n, n)?;
            Payload::Solution { sigma }
        }
        "brace" => {
            let m = parse_size_line(lines, "m")?;
            let add = parse_table(lines, m, m)?;
            expect_separator(lines)?;
            let mul = parse_table(lines, m, m)?;
            Payload::Brace { add, mul }
        }
        "datum" => {
            let m = parse_size_line(lines, "m")?;
            let add = parse_table(lines, m, m)?;
            expect_separator(lines)?;
            let mul = parse_table(lines, m, m)?;
            expect_separator(lines)?;
            let Some(rep_line) = lines.current() else {
                return Err(parse_error(lines.line_no(), 1, "missing representatives row"));
            };
            let representatives = parse_int_row(lines, rep_line)?;
            lines.advance();
            expect_separator(lines)?;
            let mut families = Vec::new();
            while let Some(line) = lines.current() {
                if line == "==" || line.is_empty() {
                    break;
                }
                let row = parse_int_row(lines, line)?;
                if row.len() < 2 {
                    return Err(parse_error(
                        lines.line_no(),
                        1,
                        "family row needs an orbit position and at least one member",
                    ));
                }
                families.push((row[0], row[1..].to_vec()));
                lines.advance();
            }
            if families.is_empty() {
                return Err(parse_error(lines.line_no(), 1, "datum has no subgroup families"));
            }
            Payload::Datum {
                add,
                mul,
                representatives,
                families,
            }
        }
        "census" => {
            let n = parse_size_line(lines, "n")?;
            let mut classes = vec![parse_table(lines, n, n)?];
            while lines.current() == Some("--") {
                lines.advance();
                classes.push(parse_table(lines, n, n)?);
            }
            Payload::Census { n, classes }
        }
        other => {
            return Err(parse_error(
                1,
                7,
                format!("unknown record kind {:?}", other),
            ))
        }
    };

    let mut invariants = Vec::new();
    if lines.current() == Some("==") {
        lines.advance();
        while let Some(line) = lines.current() {
            if line.is_empty() {
                break;
            }
            let Some(eq) = line.find('=') else {
                return Err(parse_error(lines.line_no(), 1, "expected key=value"));
            };
            if eq == 0 {
                return Err(parse_error(lines.line_no(), 1, "empty invariant key"));
            }
            invariants.push((line[..eq].to_string(), line[eq + 1..].to_string()));
            lines.advance();
        }
    }
    Ok(CatalogRecord {
        payload,
        invariants,
    })
}

/// Record for a solution with its standard invariants filled in.
pub fn solution_record(s: &Solution) -> CatalogRecord {
    let group = s.permutation_group();
    let mpl = match s.multipermutation_level() {
        MultipermutationLevel::Level(k) => k.to_string(),
        MultipermutationLevel::NotMultipermutation => "none".to_string(),
    };
    let invariants = vec![
        ("dehornoy_class".to_string(), s.dehornoy_class_direct().to_string()),
        ("group".to_string(), group.name()),
        ("group_order".to_string(), group.order().to_string()),
        ("indecomposable".to_string(), s.is_indecomposable().to_string()),
        ("mpl".to_string(), mpl),
        ("uniconnected".to_string(), s.is_uniconnected().to_string()),
    ];
    CatalogRecord::with_invariants(
        Payload::Solution {
            sigma: s.sigma_table().to_vec(),
        },
        invariants,
    )
}

/// Record for a brace with its standard invariants filled in.
pub fn brace_record(b: &Brace) -> CatalogRecord {
    let invariants = vec![
        (
            "additive".to_string(),
            b.additive_invariants()
                .iter()
                .map(|d| format!("C{}", d))
                .collect::<Vec<_>>()
                .join("x"),
        ),
        ("additive_exponent".to_string(), b.additive_exponent().to_string()),
        ("multiplicative".to_string(), b.multiplicative_table().name()),
        ("socle".to_string(), b.socle().len().to_string()),
        ("trivial".to_string(), b.is_trivial().to_string()),
    ];
    CatalogRecord::with_invariants(
        Payload::Brace {
            add: b.add_rows().to_vec(),
            mul: b.mul_rows().to_vec(),
        },
        invariants,
    )
}

/// Record for a construction datum over its brace.
pub fn datum_record(b: &Brace, datum: &ConstructionDatum) -> CatalogRecord {
    let representatives: Vec<usize> = datum.choices.iter().map(|(a, _)| *a).collect();
    let mut families = Vec::new();
    for (i, (_, subgroups)) in datum.choices.iter().enumerate() {
        for k in subgroups {
            families.push((i, k.clone()));
        }
    }
    CatalogRecord::new(Payload::Datum {
        add: b.add_rows().to_vec(),
        mul: b.mul_rows().to_vec(),
        representatives,
        families,
    })
}

/// Record for a census report: one section per class, counts as
/// invariants.
pub fn census_record(report: &CensusReport) -> CatalogRecord {
    let invariants = vec![
        ("indecomposable".to_string(), report.indecomposable.to_string()),
        ("total".to_string(), report.total.to_string()),
        (
            "violations".to_string(),
            if report.violations.is_empty() {
                "none".to_string()
            } else {
                report.violations.join("; ")
            },
        ),
    ];
    CatalogRecord::with_invariants(
        Payload::Census {
            n: report.n,
            classes: report
                .entries
                .iter()
                .map(|e| e.canonical_sigma.clone())
                .collect(),
        },
        invariants,
    )
}

/// Rebuilds the typed objects from a parsed record.
pub fn solution_from_record(record: &CatalogRecord) -> Result<Solution> {
    match &record.payload {
        Payload::Solution { sigma } => Solution::from_sigma(sigma.clone()),
        other => Err(Error::InvalidParameter(format!(
            "expected a solution record, found {}",
            other.kind()
        ))),
    }
}

pub fn brace_from_record(record: &CatalogRecord) -> Result<Brace> {
    match &record.payload {
        Payload::Brace { add, mul } => Brace::new(add.clone(), mul.clone()),
        other => Err(Error::InvalidParameter(format!(
            "expected a brace record, found {}",
            other.kind()
        ))),
    }
}

pub fn datum_from_record(record: &CatalogRecord) -> Result<(Brace, ConstructionDatum)> {
    match &record.payload {
        Payload::Datum {
            add,
            mul,
            representatives,
            families,
        } => {
            let brace = Brace::new(add.clone(), mul.clone())?;
            let mut choices: Vec<(usize, Vec<Vec<usize>>)> = representatives
                .iter()
                .map(|&a| (a, Vec::new()))
                .collect();
            for (i, members) in families {
                let slot = choices.get_mut(*i).ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "family references orbit position {} of {}",
                        i,
                        representatives.len()
                    ))
                })?;
                slot.1.push(members.clone());
            }
            Ok((brace, ConstructionDatum { choices }))
        }
        other => Err(Error::InvalidParameter(format!(
            "expected a datum record, found {}",
            other.kind()
        ))),
    }
}
