//! Plain-text scheme files.
//!
//! ```text
//! cycfusion-scheme v1
//! p 2
//! f 4
//! modulus 1 1 0 0 1
//! base_n 5
//! d 2
//! part 0 1
//! part 2 3 4
//! ```
//!
//! Blank lines and lines starting with `#` are ignored on input. Output is
//! always in the form above, parts in stored order and classes ascending.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{SchemeError, TranslationScheme};
use crate::ffield::{FieldSpec, FieldTable};

pub const SCHEME_FORMAT_HEADER: &str = "cycfusion-scheme v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeFile {
    pub spec: FieldSpec,
    pub base_n: u32,
    pub parts: Vec<Vec<u32>>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> SchemeError {
    SchemeError::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers<T: std::str::FromStr>(line: usize, words: &[&str]) -> Result<Vec<T>, SchemeError> {
    words
        .iter()
        .map(|w| {
            w.parse()
                .map_err(|_| parse_err(line, format!("bad number {w:?}")))
        })
        .collect()
}

impl SchemeFile {
    pub fn from_scheme(scheme: &TranslationScheme) -> Self {
        SchemeFile {
            spec: scheme.field().spec().clone(),
            base_n: scheme.base_n(),
            parts: scheme.parts().to_vec(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, SchemeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        match lines.next() {
            Some((_, SCHEME_FORMAT_HEADER)) => {}
            Some((n, other)) => return Err(parse_err(n, format!("unknown header {other:?}"))),
            None => return Err(parse_err(0, "empty file")),
        }

        let mut field = |key: &str| -> Result<(usize, Vec<u64>), SchemeError> {
            let (n, line) = lines
                .next()
                .ok_or_else(|| parse_err(0, format!("missing {key} line")))?;
            let words: Vec<&str> = line.split_whitespace().collect();
            if words[0] != key {
                return Err(parse_err(
                    n,
                    format!("expected {key}, found {:?}", words[0]),
                ));
            }
            Ok((n, numbers(n, &words[1..])?))
        };
        let single = |(n, v): (usize, Vec<u64>)| -> Result<u64, SchemeError> {
            match v.as_slice() {
                &[x] => Ok(x),
                _ => Err(parse_err(n, "expected exactly one value")),
            }
        };

        let p = single(field("p")?)?;
        let f = single(field("f")?)?;
        let (mod_line, modulus) = field("modulus")?;
        let base_n = single(field("base_n")?)?;
        let (d_line, d) = field("d")?;
        let d = single((d_line, d))? as usize;

        let modulus: Vec<u32> = modulus
            .into_iter()
            .map(|c| u32::try_from(c).map_err(|_| parse_err(mod_line, "coefficient too large")))
            .collect::<Result<_, _>>()?;
        let spec = FieldSpec::from_modulus(p, f, modulus)
            .map_err(|e| parse_err(mod_line, e.to_string()))?;
        let base_n = u32::try_from(base_n).map_err(|_| parse_err(0, "base_n too large"))?;

        let mut parts = Vec::with_capacity(d);
        for (n, line) in lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            if words[0] != "part" {
                return Err(parse_err(n, format!("expected part, found {:?}", words[0])));
            }
            parts.push(numbers::<u32>(n, &words[1..])?);
        }
        if parts.len() != d {
            return Err(parse_err(
                d_line,
                format!("d = {d} but {} part lines follow", parts.len()),
            ));
        }
        Ok(SchemeFile {
            spec,
            base_n,
            parts,
        })
    }

    pub fn emit(&self) -> String {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!(
            "{SCHEME_FORMAT_HEADER}\np {}\nf {}\nmodulus {}\nbase_n {}\nd {}\n",
            self.spec.p,
            self.spec.f,
            join(&self.spec.modulus),
            self.base_n,
            self.parts.len()
        );
        for part in &self.parts {
            let mut sorted = part.clone();
            sorted.sort_unstable();
            out.push_str("part ");
            out.push_str(&join(&sorted));
            out.push('\n');
        }
        out
    }

    pub fn instantiate(&self, cache_dir: Option<&Path>) -> Result<TranslationScheme, SchemeError> {
        let field = FieldTable::from_spec_cached(self.spec.clone(), cache_dir)?;
        TranslationScheme::new(Arc::new(field), self.base_n, self.parts.clone())
    }

    pub fn read(path: &Path) -> Result<Self, SchemeError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| parse_err(0, format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
