//! CSV and metadata writers for the experiment harness.
//!
//! Floats are written with Rust's default formatting (shortest
//! representation that round-trips), so repeated runs of the same experiment
//! produce byte-identical files apart from the wall-time column.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::json;

use crate::error::{Error, Result};
use crate::spectral::SpectralField;

use super::{ConvergenceRecord, NormSample, RunConfig};

fn create(path: &Path) -> Result<BufWriter<File>> {
    match File::create(path) {
        Ok(file) => Ok(BufWriter::new(file)),
        Err(source) => Err(Error::Io {
            path: path.to_path_buf(),
            source,
        }),
    }
}

fn io_err<T>(path: &Path, result: std::io::Result<T>) -> Result<T> {
    result.map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_convergence_csv(path: &Path, records: &[ConvergenceRecord]) -> Result<()> {
    let mut out = create(path)?;
    io_err(path, writeln!(out, "tau,K,e_psi,e_u,e_udot,wall_time_s"))?;
    for r in records {
        io_err(
            path,
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.tau, r.modes, r.e_psi, r.e_u, r.e_udot, r.wall_time_s
            ),
        )?;
    }
    io_err(path, out.flush())
}

pub fn write_norms_csv(path: &Path, trace: &[NormSample]) -> Result<()> {
    let mut out = create(path)?;
    io_err(path, writeln!(out, "t,n_psi,n_u,n_udot"))?;
    for s in trace {
        io_err(
            path,
            writeln!(out, "{},{},{},{}", s.t, s.n_psi, s.n_u, s.n_udot),
        )?;
    }
    io_err(path, out.flush())
}

/// Dump every coefficient of a field in lexicographic mode order. One index
/// column `j` in one dimension, `j1,…,jd` otherwise.
pub fn write_spectrum_csv(path: &Path, field: &SpectralField) -> Result<()> {
    let grid = field.grid();
    let mut out = create(path)?;
    if grid.dim() == 1 {
        io_err(path, writeln!(out, "j,re,im,abs"))?;
    } else {
        let header: Vec<String> = (1..=grid.dim()).map(|a| format!("j{a}")).collect();
        io_err(path, writeln!(out, "{},re,im,abs", header.join(",")))?;
    }
    for (slot, c) in field.coeffs().iter().enumerate() {
        let mode = grid.mode_at(slot);
        let idx: Vec<String> = mode.iter().map(|j| j.to_string()).collect();
        io_err(
            path,
            writeln!(out, "{},{},{},{}", idx.join(","), c.re, c.im, c.norm()),
        )?;
    }
    io_err(path, out.flush())
}

/// Run provenance next to the data files: the full configuration, the
/// step-size ratio actually reached, and the crate version that produced it.
pub fn write_run_metadata(
    path: &Path,
    config: &RunConfig,
    cfl_ratio: f64,
    cfl_satisfied: bool,
) -> Result<()> {
    let doc = json!({
        "config": config,
        "cfl_ratio": cfl_ratio,
        "cfl_satisfied": cfl_satisfied,
        "seed": config.seed,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let mut out = create(path)?;
    io_err(path, serde_json::to_writer_pretty(&mut out, &doc).map_err(std::io::Error::from))?;
    io_err(path, writeln!(out))?;
    io_err(path, out.flush())
}
