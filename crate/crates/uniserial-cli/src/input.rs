//! Input documents: a field description, a list of generator matrices given
//! as rows of element strings, and a few options.  Everything is text so the
//! same file formats work over GF(q), Q, and rational function fields.
//!
//! Invariants enforced here rather than downstream: all matrices are square,
//! of equal size, and every entry parses under the declared field.

use serde::{Deserialize, Serialize};
use uniserial::cyclicgen::Mode;
use uniserial::{Error, Field, Mat, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputDocument {
    /// Field in text form: "GF(4)", "GF(2)[X]/(X^3+X+1)", "Q", "GF(9)(t)".
    pub field: String,
    /// Matrices as rows of element strings, e.g. [[["0","1"],["1","1"]]].
    pub generators: Vec<Vec<Vec<String>>>,
    /// "associative" (default) or "lie".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Options>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// "json" or "text"; the --json flag overrides.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<InputDocument> {
        serde_json::from_str(text)
            .map_err(|e| Error::parse("input document", e.to_string()))
    }

    pub fn field(&self) -> Result<Field> {
        Field::parse(&self.field)
    }

    /// Parse every generator under the declared field, checking shape.
    pub fn matrices(&self) -> Result<(Field, Vec<Mat>)> {
        let field = self.field()?;
        if self.generators.is_empty() {
            return Err(Error::Shape("no generator matrices in input".into()));
        }
        let n = self.generators[0].len();
        let mut out = Vec::with_capacity(self.generators.len());
        for (gi, rows) in self.generators.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Shape(format!(
                    "generator {gi} is not a {n}x{n} matrix like the first"
                )));
            }
            let mut parsed = Vec::with_capacity(n);
            for row in rows {
                let mut prow = Vec::with_capacity(n);
                for entry in row {
                    prow.push(field.parse_element(entry)?);
                }
                parsed.push(prow);
            }
            out.push(Mat::from_rows(&field, parsed)?);
        }
        Ok((field, out))
    }

    pub fn mode(&self) -> Result<Mode> {
        parse_mode(self.mode.as_deref().unwrap_or("associative"))
    }
}

pub fn parse_mode(text: &str) -> Result<Mode> {
    match text.to_ascii_lowercase().as_str() {
        "associative" => Ok(Mode::Associative),
        "lie" => Ok(Mode::Lie),
        other => Err(Error::parse(
            "mode",
            format!("'{other}' is neither 'associative' nor 'lie'"),
        )),
    }
}

/// Render a matrix back into the rows-of-strings form used by input
/// documents and reports; entries re-parse under the same field.
pub fn matrix_rows(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| e.to_string()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_parses_and_validates_shape() {
        let doc = InputDocument::from_json(
            r#"{"field":"GF(2)","generators":[[["0","1"],["1","1"]]]}"#,
        )
        .unwrap();
        let (field, mats) = doc.matrices().unwrap();
        assert_eq!(field.to_string(), "GF(2)");
        assert_eq!(mats.len(), 1);
        assert_eq!(mats[0].rows(), 2);
        assert!(doc.options.is_none());
        assert!(matches!(doc.mode().unwrap(), Mode::Associative));
    }

    #[test]
    fn ragged_matrix_is_rejected() {
        let doc = InputDocument::from_json(
            r#"{"field":"Q","generators":[[["1","0"],["0"]]]}"#,
        )
        .unwrap();
        assert!(matches!(doc.matrices(), Err(Error::Shape(_))));
    }

    #[test]
    fn unequal_sizes_are_rejected() {
        let doc = InputDocument::from_json(
            r#"{"field":"Q","generators":[[["1"]],[["1","0"],["0","1"]]]}"#,
        )
        .unwrap();
        assert!(matches!(doc.matrices(), Err(Error::Shape(_))));
    }

    #[test]
    fn mode_strings() {
        assert!(matches!(parse_mode("lie").unwrap(), Mode::Lie));
        assert!(matches!(parse_mode("Associative").unwrap(), Mode::Associative));
        assert!(parse_mode("jordan").is_err());
    }

    #[test]
    fn matrix_rows_round_trip() {
        let field = Field::finite(2, 2).unwrap();
        let doc = InputDocument::from_json(
            r#"{"field":"GF(4)","generators":[[["g","1"],["0","g+1"]]]}"#,
        )
        .unwrap();
        let (_, mats) = doc.matrices().unwrap();
        let rows = matrix_rows(&mats[0]);
        for (i, row) in rows.iter().enumerate() {
            for (j, text) in row.iter().enumerate() {
                let back = field.parse_element(text).unwrap();
                assert_eq!(&back, mats[0].at(i, j));
            }
        }
    }
}
