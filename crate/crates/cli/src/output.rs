use std::io::{self, BufWriter, Write};
use std::path::Path;

use qtc3d::QtcError;

use crate::CliError;

/// Runs `body` against the destination. Files are written to a temporary
/// sibling and renamed into place, so readers never see partial output.
pub fn write_to<F>(path: Option<&Path>, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w)?;
            w.flush().map_err(QtcError::from)?;
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let tmp = tempfile::NamedTempFile::new_in(dir).map_err(QtcError::from)?;
            {
                let mut w = BufWriter::new(tmp.as_file());
                body(&mut w)?;
                w.flush().map_err(QtcError::from)?;
            }
            tmp.persist(path).map_err(|e| QtcError::from(e.error))?;
            Ok(())
        }
    }
}

pub fn json<T: serde::Serialize>(w: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(QtcError::from)?;
    writeln!(w).map_err(QtcError::from)?;
    Ok(())
}
