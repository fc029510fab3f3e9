//! Artifact writers. JSON artifacts wrap the result with the resolved
//! configuration; CSV tables open with versioned `#` comment lines.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

pub const CSV_VERSION: u32 = 1;

#[derive(Serialize)]
struct Artifact<'a, C: Serialize, R: Serialize> {
    command: &'a str,
    config: &'a C,
    result: &'a R,
}

pub fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn json<C: Serialize, R: Serialize>(w: &mut dyn Write, command: &str, config: &C, result: &R) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, &Artifact { command, config, result })?;
    writeln!(w)?;
    Ok(())
}

/// Writes `rows` under a two-line header comment naming the table, its
/// schema version and the resolved configuration.
pub fn csv<C: Serialize, R: Serialize>(w: &mut dyn Write, table: &str, config: &C, rows: &[R]) -> Result<()> {
    writeln!(w, "# hecke-lab {table} v{CSV_VERSION}")?;
    writeln!(w, "# config: {}", serde_json::to_string(config)?)?;
    let mut wr = ::csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}
