//! CSV persistence: RFC-4180 bodies with LF line endings, '.' decimals and
//! 17-significant-digit floats, preceded by comment lines that embed the
//! library version and the full config JSON so every file is self-describing.

use crate::error::Result;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug)]
pub enum Field {
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
    /// An unavailable value; written as an empty field.
    Missing,
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::UInt(v as u64)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Str(v.to_string())
    }
}

fn push_field(out: &mut String, f: &Field) {
    match f {
        Field::Int(v) => write!(out, "{v}").unwrap(),
        Field::UInt(v) => write!(out, "{v}").unwrap(),
        Field::Float(v) => write!(out, "{v:.16e}").unwrap(),
        Field::Str(s) => {
            if s.contains([',', '"', '\n']) {
                out.push('"');
                out.push_str(&s.replace('"', "\"\""));
                out.push('"');
            } else {
                out.push_str(s);
            }
        }
        Field::Missing => {}
    }
}

pub struct CsvWriter {
    out: BufWriter<File>,
    path: PathBuf,
    line: String,
}

impl CsvWriter {
    pub fn create(path: &Path, config_json: &str, columns: &[&str]) -> Result<Self> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "# hct-core {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "# config: {config_json}")?;
        writeln!(out, "{}", columns.join(","))?;
        Ok(CsvWriter { out, path: path.to_path_buf(), line: String::new() })
    }

    pub fn write_row(&mut self, fields: &[Field]) -> Result<()> {
        self.line.clear();
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                self.line.push(',');
            }
            push_field(&mut self.line, f);
        }
        self.line.push('\n');
        self.out.write_all(self.line.as_bytes())?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<PathBuf> {
        self.out.flush()?;
        Ok(self.path)
    }
}
