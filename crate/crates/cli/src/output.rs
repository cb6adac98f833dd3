use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::settings::Settings;
use crate::CliError;

pub const SCHEMA: &str = "v1";

/// CSV sink with the schema line and config echo written up front.
pub struct Sink {
    out: Box<dyn Write>,
    path: Option<PathBuf>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self, CliError> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| CliError::Compute(format!("cannot create {}: {e}", p.display())))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Sink { out, path: path.map(Path::to_path_buf) })
    }

    fn io(&self, e: io::Error) -> CliError {
        match &self.path {
            Some(p) => CliError::Compute(format!("write to {} failed: {e}", p.display())),
            None => CliError::Compute(format!("write to stdout failed: {e}")),
        }
    }

    pub fn line(&mut self, s: &str) -> Result<(), CliError> {
        writeln!(self.out, "{s}").map_err(|e| self.io(e))
    }

    pub fn header(&mut self, command: &str, settings: &Settings) -> Result<(), CliError> {
        self.line(&format!("# schema={SCHEMA}"))?;
        self.line(&format!("# command={command}"))?;
        let echo: Vec<String> = settings.entries().map(|(k, v)| format!("# {k}={v}")).collect();
        for l in echo {
            self.line(&l)?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.out.flush().map_err(|e| self.io(e))
    }
}

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}
