//! Tower files: a start variety followed by a sequence of operations.
//!
//! The format is line oriented. Every meaningful line is `key: value`;
//! blank lines and lines starting with `#` are ignored. Header keys come
//! first, then each `op:` line opens a new step whose parameters follow it:
//!
//! ```text
//! start: p4
//!
//! op: blowup_point
//!
//! op: flip_lines
//! n: 10
//!
//! op: blowup_surface
//! KS2: 0
//! KS_dot_KW: 0
//! KW2: 132
//! c2N: 32
//! chiOS: 2
//! h11S: 20
//! h20S: 1
//! b1S: 0
//! ```
//!
//! Parsing is strict: unknown, duplicate or missing keys are errors that
//! carry a 1-based line and column.

use std::fmt;

use thiserror::Error;

use crate::invariants::{p4_record, FourfoldRecord, InvariantError};
use crate::surfaces::SurfaceData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `key: value`")]
    MissingColon,
    #[error("unknown key `{key}` in {context}")]
    UnknownKey { key: String, context: String },
    #[error("duplicate key `{0}`")]
    DuplicateKey(String),
    #[error("missing key `{key}` in {context}")]
    MissingKey { key: String, context: String },
    #[error("invalid value `{value}` for `{key}`: expected {expected}")]
    InvalidValue {
        key: String,
        value: String,
        expected: &'static str,
    },
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step} ({op}): {source}")]
pub struct StepError {
    /// 1-based position of the failing step.
    pub step: usize,
    pub op: &'static str,
    pub source: InvariantError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    P4,
}

impl Start {
    pub fn record(self) -> FourfoldRecord {
        match self {
            Start::P4 => p4_record(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    BlowupPoint,
    FlipLines { n: u32 },
    BlowupSurface(SurfaceData),
    BlowdownSurface(SurfaceData),
}

impl Step {
    pub fn op(&self) -> &'static str {
        match self {
            Step::BlowupPoint => "blowup_point",
            Step::FlipLines { .. } => "flip_lines",
            Step::BlowupSurface(_) => "blowup_surface",
            Step::BlowdownSurface(_) => "blowdown_surface",
        }
    }

    pub fn apply(&self, rec: &FourfoldRecord) -> Result<FourfoldRecord, InvariantError> {
        match self {
            Step::BlowupPoint => Ok(rec.blow_up_point()),
            Step::FlipLines { n } => Ok(rec.flip_lines(*n)),
            Step::BlowupSurface(s) => rec.blow_up_surface(s),
            Step::BlowdownSurface(s) => rec.blow_down_surface(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerConfig {
    pub start: Start,
    pub steps: Vec<Step>,
}

/// A record after a given number of steps; step 0 is the start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: usize,
    pub op: &'static str,
    pub record: FourfoldRecord,
}

impl TowerConfig {
    /// Applies every step in order and returns the start plus one entry per
    /// step. Stops at the first failing step.
    pub fn run(&self) -> Result<Vec<TraceEntry>, StepError> {
        let mut rec = self.start.record();
        let mut trace = vec![TraceEntry {
            step: 0,
            op: "start",
            record: rec,
        }];
        for (i, step) in self.steps.iter().enumerate() {
            rec = step.apply(&rec).map_err(|source| StepError {
                step: i + 1,
                op: step.op(),
                source,
            })?;
            trace.push(TraceEntry {
                step: i + 1,
                op: step.op(),
                record: rec,
            });
        }
        Ok(trace)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut blocks: Vec<Block> = vec![Block {
            line: 1,
            op: None,
            entries: Vec::new(),
        }];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let indent = raw.len() - raw.trim_start().len();
            let Some(colon) = raw.find(':') else {
                return Err(ParseError {
                    line,
                    column: indent + 1,
                    kind: ParseErrorKind::MissingColon,
                });
            };
            let key = raw[..colon].trim();
            let value_raw = &raw[colon + 1..];
            let value = value_raw.trim();
            let value_column = colon + 2 + (value_raw.len() - value_raw.trim_start().len());
            if key.is_empty() {
                return Err(ParseError {
                    line,
                    column: indent + 1,
                    kind: ParseErrorKind::MissingColon,
                });
            }
            let entry = Entry {
                key: key.to_string(),
                value: value.to_string(),
                line,
                key_column: indent + 1,
                value_column,
            };
            if key == "op" {
                blocks.push(Block {
                    line,
                    op: Some(entry),
                    entries: Vec::new(),
                });
            } else {
                let block = blocks.last_mut().expect("header block always present");
                if block.entries.iter().any(|e| e.key == key) {
                    return Err(ParseError {
                        line,
                        column: indent + 1,
                        kind: ParseErrorKind::DuplicateKey(key.to_string()),
                    });
                }
                block.entries.push(entry);
            }
        }

        let mut blocks = blocks.into_iter();
        let header = blocks.next().expect("header block always present");
        let start = parse_header(&header)?;
        let steps = blocks.map(|b| parse_step(&b)).collect::<Result<_, _>>()?;
        Ok(TowerConfig { start, steps })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.start {
            Start::P4 => "start: p4\n",
        });
        for step in &self.steps {
            out.push('\n');
            out.push_str(&format!("op: {}\n", step.op()));
            match step {
                Step::BlowupPoint => {}
                Step::FlipLines { n } => out.push_str(&format!("n: {n}\n")),
                Step::BlowupSurface(s) | Step::BlowdownSurface(s) => {
                    for (name, v) in SurfaceData::FIELDS.iter().zip(s.to_array()) {
                        out.push_str(&format!("{name}: {v}\n"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for TowerConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    key_column: usize,
    value_column: usize,
}

impl Entry {
    fn invalid(&self, expected: &'static str) -> ParseError {
        ParseError {
            line: self.line,
            column: self.value_column,
            kind: ParseErrorKind::InvalidValue {
                key: self.key.clone(),
                value: self.value.clone(),
                expected,
            },
        }
    }
}

struct Block {
    line: usize,
    op: Option<Entry>,
    entries: Vec<Entry>,
}

impl Block {
    fn context(&self) -> String {
        match &self.op {
            Some(op) => format!("step `{}` (line {})", op.value, self.line),
            None => "header".to_string(),
        }
    }

    /// Rejects any key outside `allowed`.
    fn check_keys(&self, allowed: &[&str]) -> Result<(), ParseError> {
        match self
            .entries
            .iter()
            .find(|e| !allowed.contains(&e.key.as_str()))
        {
            Some(e) => Err(ParseError {
                line: e.line,
                column: e.key_column,
                kind: ParseErrorKind::UnknownKey {
                    key: e.key.clone(),
                    context: self.context(),
                },
            }),
            None => Ok(()),
        }
    }

    fn require(&self, key: &str) -> Result<&Entry, ParseError> {
        self.entries
            .iter()
            .find(|e| e.key == key)
            .ok_or_else(|| ParseError {
                line: self.line,
                column: 1,
                kind: ParseErrorKind::MissingKey {
                    key: key.to_string(),
                    context: self.context(),
                },
            })
    }
}

fn parse_header(block: &Block) -> Result<Start, ParseError> {
    block.check_keys(&["start"])?;
    let start = block.require("start")?;
    match start.value.as_str() {
        "p4" => Ok(Start::P4),
        _ => Err(start.invalid("`p4`")),
    }
}

fn parse_step(block: &Block) -> Result<Step, ParseError> {
    let op = block.op.as_ref().expect("step blocks open with op");
    match op.value.as_str() {
        "blowup_point" => {
            block.check_keys(&[])?;
            Ok(Step::BlowupPoint)
        }
        "flip_lines" => {
            block.check_keys(&["n"])?;
            let n = block.require("n")?;
            let n = n
                .value
                .parse::<u32>()
                .map_err(|_| n.invalid("a nonnegative integer"))?;
            Ok(Step::FlipLines { n })
        }
        "blowup_surface" | "blowdown_surface" => {
            block.check_keys(&SurfaceData::FIELDS)?;
            let mut values = [0i64; 8];
            for (slot, name) in values.iter_mut().zip(SurfaceData::FIELDS) {
                let e = block.require(name)?;
                *slot = e
                    .value
                    .parse::<i64>()
                    .map_err(|_| e.invalid("an integer"))?;
            }
            let data = SurfaceData::from_array(values);
            Ok(if op.value == "blowup_surface" {
                Step::BlowupSurface(data)
            } else {
                Step::BlowdownSurface(data)
            })
        }
        other => Err(ParseError {
            line: op.line,
            column: op.value_column,
            kind: ParseErrorKind::UnknownOp(other.to_string()),
        }),
    }
}
