//! Problem files: a line-oriented text format and an equivalent JSON form.
//!
//! ```text
//! # comment
//! vars: x, y
//! f: x^2-y^3
//! gens:
//!   (x^2-y^3)*Dx+2*x
//!   (x^2-y^3)*Dy-3*y^2
//! tie-break: grevlex
//! max-steps: 20000
//! function: (x^2-y^3)^-3
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProblemError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("invalid JSON problem: {0}")]
    Json(String),
    #[error("unknown tie-break `{0}` (expected grevlex or lex)")]
    TieBreak(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Grevlex,
    Lex,
}

impl TieBreak {
    pub fn parse(s: &str) -> Result<Self, ProblemError> {
        match s {
            "grevlex" => Ok(TieBreak::Grevlex),
            "lex" => Ok(TieBreak::Lex),
            other => Err(ProblemError::TieBreak(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TieBreak::Grevlex => "grevlex",
            TieBreak::Lex => "lex",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub tie_break: TieBreak,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub vars: Vec<String>,
    pub f: String,
    pub gens: Vec<String>,
    #[serde(default)]
    pub options: Options,
    /// Function the output should annihilate, for `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

impl Problem {
    /// Reads either format; JSON is recognized by a leading `{`.
    pub fn parse(src: &str) -> Result<Self, ProblemError> {
        if src.trim_start().starts_with('{') {
            serde_json::from_str(src).map_err(|e| ProblemError::Json(e.to_string()))
        } else {
            Self::parse_text(src)
        }
    }

    pub fn parse_text(src: &str) -> Result<Self, ProblemError> {
        let mut vars = None;
        let mut f = None;
        let mut gens: Option<Vec<String>> = None;
        let mut options = Options::default();
        let mut function = None;
        let mut in_gens = false;
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let indented = line.starts_with(' ') || line.starts_with('\t');
            if in_gens && indented {
                gens.get_or_insert_with(Vec::new)
                    .push(line.trim().to_string());
                continue;
            }
            in_gens = false;
            let Some((key, value)) = line.split_once(':') else {
                return Err(ProblemError::Line {
                    line: line_no,
                    msg: "expected `key: value`".into(),
                });
            };
            let value = value.trim();
            match key.trim() {
                "vars" => {
                    vars = Some(
                        value
                            .split(|c: char| c == ',' || c.is_whitespace())
                            .filter(|s| !s.is_empty())
                            .map(str::to_string)
                            .collect(),
                    )
                }
                "f" => f = Some(value.to_string()),
                "gens" => {
                    in_gens = true;
                    let list = gens.get_or_insert_with(Vec::new);
                    if !value.is_empty() {
                        list.extend(
                            value
                                .split(';')
                                .map(str::trim)
                                .filter(|s| !s.is_empty())
                                .map(str::to_string),
                        );
                    }
                }
                "tie-break" => options.tie_break = TieBreak::parse(value)?,
                "max-steps" => {
                    options.max_steps = Some(value.parse().map_err(|_| ProblemError::Line {
                        line: line_no,
                        msg: format!("`{value}` is not a step count"),
                    })?)
                }
                "function" => function = Some(value.to_string()),
                other => {
                    return Err(ProblemError::Line {
                        line: line_no,
                        msg: format!("unknown field `{other}`"),
                    })
                }
            }
        }
        Ok(Problem {
            vars: vars.ok_or(ProblemError::Missing("vars"))?,
            f: f.ok_or(ProblemError::Missing("f"))?,
            gens: gens
                .filter(|g| !g.is_empty())
                .ok_or(ProblemError::Missing("gens"))?,
            options,
            function,
        })
    }

    /// The text form; [`Problem::parse_text`] reads it back unchanged.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\nf: {}\ngens:\n", self.vars.join(", "), self.f);
        for g in &self.gens {
            out.push_str("  ");
            out.push_str(g);
            out.push('\n');
        }
        out.push_str(&format!("tie-break: {}\n", self.options.tie_break.name()));
        if let Some(n) = self.options.max_steps {
            out.push_str(&format!("max-steps: {n}\n"));
        }
        if let Some(func) = &self.function {
            out.push_str(&format!("function: {func}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        let src = "# cusp\nvars: x, y\nf: x^2-y^3\ngens:\n  (x^2-y^3)*Dx+2*x  # first\n\n  (x^2-y^3)*Dy-3*y^2\nmax-steps: 50\n";
        let p = Problem::parse(src).unwrap();
        assert_eq!(p.vars, vec!["x", "y"]);
        assert_eq!(p.gens.len(), 2);
        assert_eq!(p.options.max_steps, Some(50));
        assert_eq!(Problem::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn inline_gens_and_json() {
        let p = Problem::parse("vars: x\nf: x\ngens: x*Dx-7; Dx*x\n").unwrap();
        assert_eq!(p.gens, vec!["x*Dx-7", "Dx*x"]);
        let j = r#"{"vars":["x"],"f":"x","gens":["x*Dx-7","Dx*x"],"options":{"tie_break":"lex"}}"#;
        let q = Problem::parse(j).unwrap();
        assert_eq!(q.options.tie_break, TieBreak::Lex);
        assert_eq!(q.gens, p.gens);
    }

    #[test]
    fn errors() {
        assert_eq!(
            Problem::parse("f: x\ngens: Dx\n"),
            Err(ProblemError::Missing("vars"))
        );
        assert!(matches!(
            Problem::parse("vars: x\nbogus: 1\n"),
            Err(ProblemError::Line { line: 2, .. })
        ));
        assert_eq!(
            Problem::parse("vars: x\nf: x\ngens: Dx\ntie-break: deglex\n"),
            Err(ProblemError::TieBreak("deglex".into()))
        );
        assert!(matches!(
            Problem::parse("{\"vars\": 3}"),
            Err(ProblemError::Json(_))
        ));
    }
}
