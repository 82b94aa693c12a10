use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), source }
}

/// Reads a JSON file. Missing and empty files are I/O errors naming the path.
pub fn read_json(path: impl AsRef<Path>) -> Result<Value> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    if text.trim().is_empty() {
        return Err(io_err(path, std::io::Error::new(std::io::ErrorKind::UnexpectedEof, "file is empty")));
    }
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Pretty JSON with a trailing newline.
pub fn write_json(path: impl AsRef<Path>, v: &Value) -> Result<()> {
    write_text(path, &to_pretty(v))
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_and_empty_files_name_the_path() {
        let dir = std::env::temp_dir().join(format!("pconvex-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let empty = dir.join("empty.json");
        std::fs::write(&empty, "  \n").unwrap();
        let e = read_json(&empty).unwrap_err();
        assert!(matches!(e, Error::Io { .. }));
        assert!(e.to_string().contains("empty.json"), "{e}");
        let e = read_json(dir.join("absent.json")).unwrap_err();
        assert!(e.to_string().contains("absent.json"));
        std::fs::write(&empty, "{").unwrap();
        assert!(matches!(read_json(&empty), Err(Error::Parse(_))));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
