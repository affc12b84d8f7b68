//! Text surfaces: the operator-expression grammar, sequence ingestion and
//! JSON report rendering.

pub mod ingest;
pub mod parse;
pub mod report;

pub use ingest::{
    load_sequence, parse_sequence_text, render_sequence, SequenceDocument, SourceFormat,
};
pub use parse::{parse_operator, ParseError};
pub use report::{render_report, Reportable, SCHEMA};
