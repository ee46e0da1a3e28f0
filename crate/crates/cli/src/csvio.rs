//! CCDF curve files: `axis,ccdf,ci_halfwidth,n_samples`, 12 significant
//! digits, LF line endings.

use std::io::Write;
use std::path::Path;

use ratemeta::sim::CcdfCurve;

use crate::CliError;

/// One tabulated curve ready for emission; analytic curves carry zero
/// confidence half-widths and zero samples.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    pub axis: Vec<f64>,
    pub ccdf: Vec<f64>,
    pub ci_halfwidth: Vec<f64>,
    pub n_samples: usize,
}

impl CurveTable {
    pub fn analytic(axis: Vec<f64>, ccdf: Vec<f64>) -> Self {
        let width = vec![0.0; axis.len()];
        CurveTable {
            axis,
            ccdf,
            ci_halfwidth: width,
            n_samples: 0,
        }
    }

    pub fn empirical(curve: &CcdfCurve) -> Self {
        CurveTable {
            axis: curve.axis.clone(),
            ccdf: curve.ccdf.clone(),
            ci_halfwidth: curve.ci_halfwidth.clone(),
            n_samples: curve.n_samples,
        }
    }
}

/// Writes the curve; refuses empty grids before touching the filesystem.
pub fn emit_csv(table: &CurveTable, path: &Path) -> Result<(), CliError> {
    if table.axis.is_empty() {
        return Err(CliError::Usage("refusing to emit an empty curve".into()));
    }
    if table.axis.len() != table.ccdf.len() || table.axis.len() != table.ci_halfwidth.len() {
        return Err(CliError::Usage("curve columns must have equal length".into()));
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    out.write_all(b"axis,ccdf,ci_halfwidth,n_samples\n")?;
    for i in 0..table.axis.len() {
        // {:.11e} carries 12 significant digits through a parse round trip.
        writeln!(
            out,
            "{:.11e},{:.11e},{:.11e},{}",
            table.axis[i], table.ccdf[i], table.ci_halfwidth[i], table.n_samples
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a curve emitted by [`emit_csv`].
pub fn read_csv(path: &Path) -> Result<CurveTable, CliError> {
    let body = std::fs::read_to_string(path)?;
    let mut lines = body.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Usage(format!("{}: empty file", path.display())))?;
    if header != "axis,ccdf,ci_halfwidth,n_samples" {
        return Err(CliError::Usage(format!(
            "{}: unexpected header '{header}'",
            path.display()
        )));
    }
    let mut table = CurveTable {
        axis: Vec::new(),
        ccdf: Vec::new(),
        ci_halfwidth: Vec::new(),
        n_samples: 0,
    };
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(CliError::Usage(format!(
                "{}: line {} has {} fields, expected 4",
                path.display(),
                i + 2,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64, CliError> {
            s.parse()
                .map_err(|_| CliError::Usage(format!("{}: bad number '{s}'", path.display())))
        };
        table.axis.push(parse(fields[0])?);
        table.ccdf.push(parse(fields[1])?);
        table.ci_halfwidth.push(parse(fields[2])?);
        table.n_samples = fields[3]
            .parse()
            .map_err(|_| CliError::Usage(format!("{}: bad count '{}'", path.display(), fields[3])))?;
    }
    Ok(table)
}
