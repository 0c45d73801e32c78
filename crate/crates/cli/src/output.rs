use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::CliError;

/// Output directory of one command. Every file carries the resolved config;
/// the only nondeterministic content goes to `run.log`.
pub struct Out {
    dir: PathBuf,
    command: &'static str,
    config: Value,
    written: Vec<PathBuf>,
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

impl Out {
    pub fn new(dir: &Path, command: &'static str, cfg: &RunConfig) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(io(dir))?;
        let config = serde_json::to_value(cfg).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(Self { dir: dir.to_path_buf(), command, config, written: Vec::new() })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(io(&path))?;
        self.written.push(path.clone());
        Ok(path)
    }

    /// `{ "command", "config", ...body }` as pretty JSON.
    pub fn json(&mut self, name: &str, body: Value) -> Result<PathBuf, CliError> {
        let mut doc = json!({ "command": self.command, "config": self.config });
        if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
            doc.extend(body);
        }
        let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    /// CSV plus a `<stem>.config.json` sidecar.
    pub fn csv<R: Serialize>(&mut self, stem: &str, rows: impl IntoIterator<Item = R>) -> Result<PathBuf, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        let path = self.write(&format!("{stem}.csv"), &bytes)?;
        self.json(&format!("{stem}.config.json"), json!({ "data": format!("{stem}.csv") }))?;
        Ok(path)
    }

    /// Append one line per written file to `run.log`.
    pub fn finish(self) -> Result<(), CliError> {
        let log = self.dir.join("run.log");
        let mut f = OpenOptions::new().create(true).append(true).open(&log).map_err(io(&log))?;
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        for p in &self.written {
            writeln!(f, "{secs} {} {}", self.command, p.display()).map_err(io(&log))?;
        }
        Ok(())
    }
}
