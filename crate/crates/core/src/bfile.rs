//! OEIS-style b-files: one `index value` pair per line, consecutive indices,
//! `#` comment lines.

use std::str::FromStr;

use thiserror::Error;

use crate::exactnum::Integer;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct BFileError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    offset: i64,
    values: Vec<Integer>,
}

impl BFile {
    pub fn new(offset: i64, values: Vec<Integer>) -> Self {
        Self { offset, values }
    }

    pub fn from_values(values: Vec<Integer>) -> Self {
        Self::new(0, values)
    }

    /// Index of the first value as written in the file.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    /// Values re-indexed from 0.
    pub fn into_values(self) -> Vec<Integer> {
        self.values
    }

    pub fn parse(text: &str) -> Result<Self, BFileError> {
        let mut offset = None;
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |message: String| BFileError { line, message };
            let mut fields = trimmed.split_whitespace();
            let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(err(format!("expected `index value`, got `{trimmed}`")));
            };
            let index: i64 = index
                .parse()
                .map_err(|_| err(format!("invalid index `{index}`")))?;
            let value = Integer::from_str(value)
                .map_err(|_| err(format!("invalid integer value `{value}`")))?;
            let expected = offset.map(|o: i64| o + values.len() as i64);
            match expected {
                None => offset = Some(index),
                Some(e) if e != index => {
                    return Err(err(format!("expected index {e}, got {index}")));
                }
                Some(_) => {}
            }
            values.push(value);
        }
        let Some(offset) = offset else {
            return Err(BFileError {
                line: text.lines().count(),
                message: "no data lines".to_string(),
            });
        };
        Ok(Self { offset, values })
    }

    /// Data lines only, `index value\n` each.
    pub fn emit(&self) -> String {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{} {}\n", self.offset + i as i64, v))
            .collect()
    }

    /// `# `-prefixed header lines followed by the data.
    pub fn emit_with_header(&self, header: &[String]) -> String {
        let mut out: String = header.iter().map(|h| format!("# {h}\n")).collect();
        out.push_str(&self.emit());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_offsets() {
        let f = BFile::parse("# A000045\n5 5\n6 8\n\n7 13\n").unwrap();
        assert_eq!(f.offset(), 5);
        assert_eq!(f.values(), &[Integer::from(5), Integer::from(8), Integer::from(13)]);
        assert_eq!(f.emit(), "5 5\n6 8\n7 13\n");
    }

    #[test]
    fn big_values() {
        let big = "123456789012345678901234567890123456789";
        let f = BFile::parse(&format!("0 {big}\n1 -{big}\n")).unwrap();
        assert_eq!(f.values()[1].to_string(), format!("-{big}"));
    }

    #[test]
    fn reports_line_numbers() {
        let e = BFile::parse("0 1\n1 2\n3 3\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = BFile::parse("# c\n0 x\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.to_string().starts_with("line 2:"));
        let e = BFile::parse("0 1 2\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = BFile::parse("zero 1\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(BFile::parse("# only comments\n").is_err());
    }

    #[test]
    fn header_is_commented() {
        let f = BFile::from_values(vec![Integer::from(1)]);
        assert_eq!(f.emit_with_header(&["hello".into()]), "# hello\n0 1\n");
    }

    proptest! {
        #[test]
        fn emit_parse_round_trip(offset in -5i64..5, values in prop::collection::vec(any::<i128>(), 1..40)) {
            let f = BFile::new(offset, values.into_iter().map(Integer::from).collect());
            let text = f.emit();
            let parsed = BFile::parse(&text).unwrap();
            prop_assert_eq!(&parsed, &f);
            prop_assert_eq!(parsed.emit(), text);
        }
    }
}
