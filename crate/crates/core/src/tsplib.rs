//! Reader and writer for the subset of TSPLIB used here: planar `EUC_2D`,
//! `CEIL_2D` and `ATT` instances given by `NODE_COORD_SECTION`, single-tour
//! `.tour` files, and a small CSV of externally reported values.
//!
//! Coordinates are kept as `f64` exactly as written in the file. No distance
//! function is applied at this layer.

use std::fmt;
use std::io::{Read, Write};

use log::warn;

use crate::error::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeWeightType {
    Euc2d,
    Ceil2d,
    Att,
}

impl EdgeWeightType {
    pub fn keyword(self) -> &'static str {
        match self {
            EdgeWeightType::Euc2d => "EUC_2D",
            EdgeWeightType::Ceil2d => "CEIL_2D",
            EdgeWeightType::Att => "ATT",
        }
    }

    fn from_keyword(value: &str) -> Result<Self, ParseError> {
        match value {
            "EUC_2D" => Ok(EdgeWeightType::Euc2d),
            "CEIL_2D" => Ok(EdgeWeightType::Ceil2d),
            "ATT" => Ok(EdgeWeightType::Att),
            other => Err(ParseError::UnsupportedEdgeWeightType(other.to_string())),
        }
    }
}

impl fmt::Display for EdgeWeightType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeCoord {
    pub id: i64,
    pub x: f64,
    pub y: f64,
}

/// A keyword the parser did not recognise and skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub keyword: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawInstanceFile {
    pub name: String,
    pub declared_type: String,
    pub comment: Option<String>,
    pub dimension: usize,
    pub edge_weight_type: EdgeWeightType,
    /// Coordinate records in file order. Ids form a permutation of `1..=dimension`.
    pub node_coords: Vec<NodeCoord>,
    pub warnings: Vec<ParseWarning>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTourFile {
    pub name: String,
    /// 1-based vertex ids, a permutation of `1..=dimension`.
    pub sequence: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportedValues {
    pub instance_name: String,
    pub reported_opt: Option<f64>,
    pub hk_bound: Option<f64>,
}

/// Sections that carry no geometry and end with `-1`. They are skipped with a
/// warning; pr2392 ships with a `DEPOT_SECTION`, for example.
const SKIPPED_SECTIONS: &[&str] = &["DEPOT_SECTION", "FIXED_EDGES_SECTION"];

/// Splits a header line into keyword and value. Accepts `KEY : value`,
/// `KEY: value` and a bare `KEY`.
fn split_keyword(line: &str) -> (&str, &str) {
    match line.split_once(':') {
        Some((key, value)) => (key.trim(), value.trim()),
        None => match line.split_once(char::is_whitespace) {
            Some((key, value)) => (key.trim(), value.trim()),
            None => (line.trim(), ""),
        },
    }
}

fn unquote(value: &str) -> String {
    if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
        value[1..value.len() - 1].to_string()
    } else {
        value.to_string()
    }
}

fn needs_quoting(name: &str) -> bool {
    name.is_empty() || name != name.trim() || name.starts_with('"')
}

fn read_text<R: Read>(mut source: R) -> Result<String, ParseError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    Ok(text)
}

/// Parses a TSPLIB instance. Parsing ends at `EOF` or at the end of the stream.
pub fn parse_instance<R: Read>(source: R) -> Result<RawInstanceFile, ParseError> {
    let text = read_text(source)?;

    let mut name = None;
    let mut declared_type = String::new();
    let mut comments: Vec<String> = Vec::new();
    let mut dimension = None;
    let mut edge_weight_type = None;
    let mut node_coords = Vec::new();
    let mut warnings = Vec::new();
    let mut in_coords = false;
    let mut in_skipped = false;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }

        if in_skipped {
            in_skipped = !line.split_whitespace().any(|t| t == "-1");
            continue;
        }

        if in_coords {
            let mut tokens = line.split_whitespace();
            let first = tokens.next().unwrap_or_default();
            if let Ok(id) = first.parse::<i64>() {
                let rest: Vec<&str> = tokens.collect();
                let coords = match rest.as_slice() {
                    [x, y] => x.parse::<f64>().ok().zip(y.parse::<f64>().ok()),
                    _ => None,
                };
                let (x, y) = coords.ok_or_else(|| ParseError::MalformedCoordinate {
                    line: line_no,
                    text: line.to_string(),
                })?;
                node_coords.push(NodeCoord { id, x, y });
                continue;
            }
            in_coords = false;
        }

        let (key, value) = split_keyword(line);
        match key {
            "EOF" => break,
            "NAME" => name = Some(unquote(value)),
            "TYPE" => declared_type = value.to_string(),
            "COMMENT" => comments.push(value.to_string()),
            "DIMENSION" => {
                let parsed = value.parse::<usize>().map_err(|_| ParseError::InvalidValue {
                    line: line_no,
                    keyword: key.to_string(),
                    value: value.to_string(),
                })?;
                dimension = Some(parsed);
            }
            "EDGE_WEIGHT_TYPE" => edge_weight_type = Some(EdgeWeightType::from_keyword(value)?),
            "NODE_COORD_SECTION" => in_coords = true,
            section if SKIPPED_SECTIONS.contains(&section) => {
                warn!("line {line_no}: skipping `{section}`");
                warnings.push(ParseWarning {
                    line: line_no,
                    keyword: section.to_string(),
                });
                in_skipped = !value.split_whitespace().any(|t| t == "-1");
            }
            section if section.ends_with("_SECTION") => {
                return Err(ParseError::UnsupportedSection(section.to_string()));
            }
            other => {
                warn!("line {line_no}: skipping unsupported keyword `{other}`");
                warnings.push(ParseWarning {
                    line: line_no,
                    keyword: other.to_string(),
                });
            }
        }
    }

    let dimension = dimension.ok_or(ParseError::MissingKeyword("DIMENSION"))?;
    let edge_weight_type = edge_weight_type.ok_or(ParseError::MissingKeyword("EDGE_WEIGHT_TYPE"))?;
    if node_coords.len() != dimension {
        return Err(ParseError::DimensionMismatch {
            declared: dimension,
            found: node_coords.len(),
        });
    }
    let mut seen = vec![false; dimension];
    for coord in &node_coords {
        if coord.id < 1 || coord.id as u64 > dimension as u64 {
            return Err(ParseError::NodeIdOutOfRange {
                id: coord.id,
                dimension,
            });
        }
        let slot = &mut seen[coord.id as usize - 1];
        if *slot {
            return Err(ParseError::DuplicateNodeId(coord.id));
        }
        *slot = true;
    }

    Ok(RawInstanceFile {
        name: name.unwrap_or_default(),
        declared_type,
        comment: if comments.is_empty() {
            None
        } else {
            Some(comments.join("\n"))
        },
        dimension,
        edge_weight_type,
        node_coords,
        warnings,
    })
}

fn check_permutation(sequence: &[usize], dimension: usize) -> Result<(), ParseError> {
    let fail = |reason: String| ParseError::NotAPermutation { dimension, reason };
    if sequence.len() != dimension {
        return Err(fail(format!("{} ids listed", sequence.len())));
    }
    let mut seen = vec![false; dimension];
    for &id in sequence {
        if id == 0 || id > dimension {
            return Err(fail(format!("id {id} out of range")));
        }
        if std::mem::replace(&mut seen[id - 1], true) {
            return Err(fail(format!("id {id} repeated")));
        }
    }
    Ok(())
}

/// Parses a TSPLIB tour file for an instance with `dimension` vertices.
///
/// Only the first tour of the `TOUR_SECTION` is read. Anything after its
/// `-1` terminator is ignored.
pub fn parse_tour<R: Read>(source: R, dimension: usize) -> Result<RawTourFile, ParseError> {
    let text = read_text(source)?;
    let mut name = String::new();
    let mut lines = text.lines().enumerate();
    let mut section_rest = None;

    for (idx, raw_line) in lines.by_ref() {
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = split_keyword(line);
        match key {
            "NAME" => name = unquote(value),
            "DIMENSION" => {
                let declared = value.parse::<usize>().map_err(|_| ParseError::InvalidValue {
                    line: idx + 1,
                    keyword: key.to_string(),
                    value: value.to_string(),
                })?;
                if declared != dimension {
                    return Err(ParseError::DimensionMismatch {
                        declared,
                        found: dimension,
                    });
                }
            }
            "TOUR_SECTION" => {
                section_rest = Some((idx, value));
                break;
            }
            "EOF" => break,
            _ => {}
        }
    }
    let first = section_rest.ok_or(ParseError::MissingTourSection)?;

    let mut sequence = Vec::with_capacity(dimension);
    let mut terminated = false;
    'outer: for (idx, raw_line) in std::iter::once(first).chain(lines) {
        for token in raw_line.split_whitespace() {
            if token == "-1" {
                terminated = true;
                break 'outer;
            }
            if token == "EOF" {
                break 'outer;
            }
            let id = token.parse::<usize>().map_err(|_| ParseError::InvalidValue {
                line: idx + 1,
                keyword: "TOUR_SECTION".to_string(),
                value: token.to_string(),
            })?;
            sequence.push(id);
        }
    }
    if !terminated {
        return Err(ParseError::MissingTerminator);
    }
    check_permutation(&sequence, dimension)?;
    Ok(RawTourFile { name, sequence })
}

fn parse_cell(cell: &str, column: &str, line: u64) -> Result<Option<f64>, ParseError> {
    let cell = cell.trim();
    if cell.is_empty() {
        return Ok(None);
    }
    let value = cell.parse::<f64>().map_err(|_| ParseError::MalformedRow {
        line,
        reason: format!("{column} `{cell}` is not a number"),
    })?;
    if !(value.is_finite() && value > 0.0) {
        return Err(ParseError::MalformedRow {
            line,
            reason: format!("{column} must be strictly positive, got {value}"),
        });
    }
    Ok(Some(value))
}

/// Reads the `name,reported_opt,hk` CSV. Empty cells become `None`.
pub fn load_reported_values<R: Read>(source: R) -> Result<Vec<ReportedValues>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let header = reader.headers()?.clone();
    let header_fields: Vec<&str> = header.iter().collect();
    if header_fields != ["name", "reported_opt", "hk"] {
        return Err(ParseError::BadHeader(header_fields.join(",")));
    }

    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 3 {
            return Err(ParseError::MalformedRow {
                line,
                reason: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let instance_name = record[0].to_string();
        if instance_name.is_empty() {
            return Err(ParseError::MalformedRow {
                line,
                reason: "empty instance name".to_string(),
            });
        }
        out.push(ReportedValues {
            instance_name,
            reported_opt: parse_cell(&record[1], "reported_opt", line)?,
            hk_bound: parse_cell(&record[2], "hk", line)?,
        });
    }
    Ok(out)
}

/// Writes `instance` in TSPLIB format. Coordinates use the shortest
/// representation that parses back to the same `f64`.
pub fn write_instance<W: Write>(instance: &RawInstanceFile, mut sink: W) -> std::io::Result<()> {
    if needs_quoting(&instance.name) {
        writeln!(sink, "NAME : \"{}\"", instance.name)?;
    } else {
        writeln!(sink, "NAME : {}", instance.name)?;
    }
    let declared = if instance.declared_type.is_empty() {
        "TSP"
    } else {
        instance.declared_type.as_str()
    };
    writeln!(sink, "TYPE : {declared}")?;
    if let Some(comment) = &instance.comment {
        for line in comment.lines() {
            writeln!(sink, "COMMENT : {line}")?;
        }
    }
    writeln!(sink, "DIMENSION : {}", instance.dimension)?;
    writeln!(sink, "EDGE_WEIGHT_TYPE : {}", instance.edge_weight_type)?;
    writeln!(sink, "NODE_COORD_SECTION")?;
    for c in &instance.node_coords {
        writeln!(sink, "{} {:?} {:?}", c.id, c.x, c.y)?;
    }
    writeln!(sink, "EOF")?;
    sink.flush()
}
