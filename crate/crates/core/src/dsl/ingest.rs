//! Reading sequences from inline literals, CSV, JSON and OEIS-style b-files.

use std::fmt;
use std::fs;
use std::str::FromStr;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::seq::FiniteSeq;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SourceFormat {
    Inline,
    Csv,
    Json,
    Bfile,
}

impl SourceFormat {
    pub const ALL: [SourceFormat; 4] = [
        SourceFormat::Inline,
        SourceFormat::Csv,
        SourceFormat::Json,
        SourceFormat::Bfile,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            SourceFormat::Inline => "inline",
            SourceFormat::Csv => "csv",
            SourceFormat::Json => "json",
            SourceFormat::Bfile => "bfile",
        }
    }
}

impl fmt::Display for SourceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SourceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SourceFormat::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Usage(format!("unknown sequence format `{s}`")))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SequenceDocument {
    pub format: SourceFormat,
    pub values: FiniteSeq,
    /// Index of the first term after normalization; always 1.
    pub origin: usize,
}

fn rational_at(text: &str, line: usize) -> Result<Rational> {
    text.trim().parse().map_err(|_| Error::Format {
        line,
        message: format!("invalid rational `{}`", text.trim()),
    })
}

fn parse_inline(text: &str) -> Result<FiniteSeq> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(FiniteSeq::empty());
    }
    t.split(',')
        .map(|v| rational_at(v, 1))
        .collect::<Result<Vec<_>>>()
        .map(FiniteSeq::new)
}

fn parse_csv(text: &str) -> Result<FiniteSeq> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    match lines.as_slice() {
        [] => Ok(FiniteSeq::empty()),
        [(line, row)] => row
            .split(',')
            .map(|v| rational_at(v, *line))
            .collect::<Result<Vec<_>>>()
            .map(FiniteSeq::new),
        many => many
            .iter()
            .map(|(line, l)| {
                if l.contains(',') {
                    Err(Error::Format {
                        line: *line,
                        message: "expected one value per line or a single row".into(),
                    })
                } else {
                    rational_at(l, *line)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(FiniteSeq::new),
    }
}

fn parse_json(text: &str) -> Result<FiniteSeq> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format {
        line: e.line(),
        message: e.to_string(),
    })?;
    let Value::Array(items) = value else {
        return Err(Error::Format {
            line: 1,
            message: "expected a JSON array".into(),
        });
    };
    items
        .iter()
        .map(|item| match item {
            Value::String(s) => rational_at(s, 1),
            Value::Number(n) if n.is_i64() || n.is_u64() => rational_at(&n.to_string(), 1),
            other => Err(Error::Format {
                line: 1,
                message: format!("expected integer or rational string, found {other}"),
            }),
        })
        .collect::<Result<Vec<_>>>()
        .map(FiniteSeq::new)
}

/// Lines `index value`; blank lines and `#` comments are skipped. Indices
/// must ascend by one from wherever they start.
fn parse_bfile(text: &str) -> Result<FiniteSeq> {
    let mut values = Vec::new();
    let mut expected: Option<num_bigint::BigInt> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [index, value] = fields.as_slice() else {
            return Err(Error::Format {
                line,
                message: "expected `index value`".into(),
            });
        };
        let index: num_bigint::BigInt = index.parse().map_err(|_| Error::Format {
            line,
            message: format!("invalid index `{index}`"),
        })?;
        if let Some(want) = &expected {
            if &index != want {
                return Err(Error::NonContiguousIndex {
                    line,
                    expected: want.to_string(),
                    found: index.to_string(),
                });
            }
        }
        values.push(rational_at(value, line)?);
        expected = Some(index + 1);
    }
    Ok(FiniteSeq::new(values))
}

/// Parse sequence text already in memory.
pub fn parse_sequence_text(text: &str, format: SourceFormat) -> Result<SequenceDocument> {
    let values = match format {
        SourceFormat::Inline => parse_inline(text)?,
        SourceFormat::Csv => parse_csv(text)?,
        SourceFormat::Json => parse_json(text)?,
        SourceFormat::Bfile => parse_bfile(text)?,
    };
    Ok(SequenceDocument {
        format,
        values,
        origin: 1,
    })
}

/// Load from `inline:<values>`, `csv:<path>`, `json:<path>` or `bfile:<path>`.
pub fn load_sequence(spec: &str) -> Result<SequenceDocument> {
    let (tag, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Usage(format!("sequence spec `{spec}` needs a `format:` prefix")))?;
    let format: SourceFormat = tag.parse()?;
    match format {
        SourceFormat::Inline => parse_sequence_text(rest, format),
        _ => {
            let text = fs::read_to_string(rest)
                .map_err(|e| Error::Io(format!("cannot read `{rest}`: {e}")))?;
            parse_sequence_text(&text, format)
        }
    }
}

/// Text that [`parse_sequence_text`] reads back as `s`.
pub fn render_sequence(s: &FiniteSeq, format: SourceFormat) -> String {
    match format {
        SourceFormat::Inline => s.to_literal(),
        SourceFormat::Csv => s.iter().map(|v| format!("{v}\n")).collect(),
        SourceFormat::Json => {
            Value::Array(s.iter().map(|v| Value::String(v.to_string())).collect()).to_string()
        }
        SourceFormat::Bfile => s
            .iter()
            .enumerate()
            .map(|(k, v)| format!("{} {v}\n", k + 1))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str, f: SourceFormat) -> Result<FiniteSeq> {
        parse_sequence_text(text, f).map(|d| d.values)
    }

    fn seq(v: &[i64]) -> FiniteSeq {
        FiniteSeq::from_integers(v)
    }

    #[test]
    fn inline_values() {
        assert_eq!(
            load("1,2,4,8", SourceFormat::Inline).unwrap(),
            seq(&[1, 2, 4, 8])
        );
        assert_eq!(
            load("1, 3/2 ,2", SourceFormat::Inline).unwrap(),
            FiniteSeq::new(vec![
                Rational::integer(1),
                Rational::new(3, 2),
                Rational::integer(2)
            ])
        );
        assert_eq!(load("", SourceFormat::Inline).unwrap(), FiniteSeq::empty());
        assert!(matches!(
            load("1,,2", SourceFormat::Inline),
            Err(Error::Format { line: 1, .. })
        ));
    }

    #[test]
    fn csv_layouts() {
        assert_eq!(load("1\n-2\n\n3/4\n", SourceFormat::Csv).unwrap().len(), 3);
        assert_eq!(load("1,2,3\n", SourceFormat::Csv).unwrap(), seq(&[1, 2, 3]));
        assert!(matches!(
            load("1\n2,3\n", SourceFormat::Csv),
            Err(Error::Format { line: 2, .. })
        ));
        assert!(matches!(
            load("1\nx\n", SourceFormat::Csv),
            Err(Error::Format { line: 2, .. })
        ));
    }

    #[test]
    fn json_arrays() {
        assert_eq!(
            load(r#"[1, "3/2", -4]"#, SourceFormat::Json).unwrap(),
            FiniteSeq::new(vec![
                Rational::integer(1),
                Rational::new(3, 2),
                Rational::integer(-4)
            ])
        );
        assert!(load("[1.5]", SourceFormat::Json).is_err());
        assert!(load(r#"{"a": 1}"#, SourceFormat::Json).is_err());
        assert!(matches!(
            load("[1,\n2,\n", SourceFormat::Json),
            Err(Error::Format { .. })
        ));
    }

    #[test]
    fn bfile_listing() {
        assert_eq!(
            load("1 1\n2 4\n3 9", SourceFormat::Bfile).unwrap(),
            seq(&[1, 4, 9])
        );
        // OEIS b-files often start at 0 and carry comments.
        assert_eq!(
            load("# A000290\n0 0\n1 1\n\n2 4\n", SourceFormat::Bfile).unwrap(),
            seq(&[0, 1, 4])
        );
        assert_eq!(
            load("1 1\n3 9", SourceFormat::Bfile),
            Err(Error::NonContiguousIndex {
                line: 2,
                expected: "2".into(),
                found: "3".into()
            })
        );
        assert!(matches!(
            load("2 1\n1 0", SourceFormat::Bfile),
            Err(Error::NonContiguousIndex { .. })
        ));
        assert!(matches!(
            load("1 1 1", SourceFormat::Bfile),
            Err(Error::Format { line: 1, .. })
        ));
    }

    #[test]
    fn spec_prefixes() {
        assert_eq!(load_sequence("inline:5,6").unwrap().values, seq(&[5, 6]));
        assert_eq!(load_sequence("inline:5,6").unwrap().origin, 1);
        assert!(matches!(load_sequence("5,6"), Err(Error::Usage(_))));
        assert!(matches!(load_sequence("xml:a"), Err(Error::Usage(_))));
        assert!(matches!(
            load_sequence("csv:/nonexistent/file"),
            Err(Error::Io(_))
        ));
    }
}
