use std::fmt;
use std::io::Write;
use std::path::Path;

/// A failed command. `User` covers bad input of any kind; `Internal` is
/// everything else, including output that cannot be written.
#[derive(Debug)]
pub enum Failure {
    User(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::User(_) => 2,
            Failure::Internal(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::User(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

impl From<crisp_core::Error> for Failure {
    fn from(e: crisp_core::Error) -> Self {
        Failure::User(e.to_string())
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

pub fn user(msg: impl Into<String>) -> Failure {
    Failure::User(msg.into())
}

pub fn create_dir(dir: &Path) -> Outcome {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::Internal(format!("cannot create {}: {e}", dir.display())))
}

pub fn write_file(path: &Path, contents: &[u8]) -> Outcome {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        create_dir(parent)?;
    }
    std::fs::write(path, contents)
        .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, contents: &str) -> Outcome {
    match path {
        Some(p) => write_file(p, contents.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Internal(format!("cannot write to stdout: {e}")))
        }
    }
}
