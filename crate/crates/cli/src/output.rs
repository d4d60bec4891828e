use std::io::Write;
use std::path::Path;

use serde_json::Value;
use tempfile::NamedTempFile;

use modseries::io::SeriesFile;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] modseries::Error),
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use modseries::Error as E;
        match self {
            CliError::Usage(_) | CliError::Read { .. } => 2,
            CliError::Library(E::Inconclusive(_)) => 1,
            CliError::Library(
                E::InvalidInput(_) | E::Parse(_) | E::DomainMismatch(_) | E::TooShort { .. } | E::Unsupported(_),
            ) => 2,
            CliError::Library(_) | CliError::Internal(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub enum Outcome {
    Ok,
    Failed,
}

impl Outcome {
    pub fn from_flag(ok: bool) -> Self {
        if ok {
            Outcome::Ok
        } else {
            Outcome::Failed
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Failed => "failed",
        }
    }
}

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Temp file in the destination directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let internal = |e: std::io::Error| CliError::Internal(format!("writing {}: {e}", path.display()));
    let mut tmp = NamedTempFile::new_in(dir).map_err(internal)?;
    tmp.write_all(contents.as_bytes()).map_err(internal)?;
    tmp.as_file().sync_all().map_err(internal)?;
    tmp.persist(path).map_err(|e| internal(e.error))?;
    Ok(())
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

pub fn read_series(path: &Path) -> CliResult<SeriesFile> {
    let text = read_text(path)?;
    SeriesFile::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Writes `payload` to `out` if given, otherwise prints it.
pub fn emit(out: Option<&Path>, payload: &str) -> CliResult<()> {
    match out {
        Some(p) => write_atomic(p, payload),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn compact(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}
