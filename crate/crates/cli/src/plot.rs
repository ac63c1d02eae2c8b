//! Gnuplot script generation from emitted data files. One script per data
//! file; the script content is a deterministic function of the file.

use crate::output::fmt_g;
use crate::reader::{read_csv, DataFile};
use anyhow::{bail, Result};
use clap::ValueEnum;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    HydrogenDensity,
    HydrogenEnergies,
    HoDensity,
    HoEnergies,
    Staircase,
    Evolve,
}

fn expected_header(kind: PlotKind) -> &'static [&'static str] {
    match kind {
        PlotKind::HydrogenDensity => &["r", "alpha", "P"],
        PlotKind::HydrogenEnergies => &["n", "alpha", "E_hartree", "E_eV"],
        PlotKind::HoDensity => &["x", "alpha", "n", "P"],
        PlotKind::HoEnergies => &["n", "omega_alpha", "E"],
        PlotKind::Staircase => &["x", "S"],
        PlotKind::Evolve => &["t", "re", "im", "abs2"],
    }
}

pub fn emit_plot_script(data_path: &Path, kind: PlotKind) -> Result<String> {
    let data = read_csv(data_path)?;
    let expect = expected_header(kind);
    if data.header != expect {
        bail!(
            "data file {} has header {:?}, expected {:?} for this plot kind",
            data_path.display(),
            data.header,
            expect
        );
    }
    let file = data_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| data_path.display().to_string());
    let mut s = String::new();
    let _ = writeln!(s, "# generated by fractalqm plot-script");
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set key top right");
    let _ = writeln!(s, "set grid");
    match kind {
        PlotKind::HydrogenDensity => {
            axes(&mut s, "r", "P");
            curves_per_value(&mut s, &file, &data, 1, 0, 2, "alpha", "lines");
        }
        PlotKind::HydrogenEnergies => {
            axes(&mut s, "n", "E (eV)");
            curves_per_value(&mut s, &file, &data, 1, 0, 3, "alpha", "linespoints");
        }
        PlotKind::HoDensity => {
            axes(&mut s, "x", "P");
            curves_per_pair(&mut s, &file, &data);
        }
        PlotKind::HoEnergies => {
            axes(&mut s, "n", "E");
            curves_per_value(&mut s, &file, &data, 1, 0, 2, "omega_alpha", "linespoints");
        }
        PlotKind::Staircase => {
            axes(&mut s, "x", "S");
            let _ = writeln!(s, "plot \\");
            let _ = writeln!(s, "  '{file}' using 1:2 with lines title 'S(x)'");
        }
        PlotKind::Evolve => {
            axes(&mut s, "t", "|Psi|^2");
            let _ = writeln!(s, "plot \\");
            let _ = writeln!(s, "  '{file}' using 1:4 with lines title '|Psi|^2'");
        }
    }
    Ok(s)
}

fn axes(s: &mut String, x: &str, y: &str) {
    let _ = writeln!(s, "set xlabel '{x}'");
    let _ = writeln!(s, "set ylabel '{y}'");
}

/// One curve per distinct value of `sel_col`, filtering rows by numeric
/// equality within 1e-9.
#[allow(clippy::too_many_arguments)]
fn curves_per_value(
    s: &mut String,
    file: &str,
    data: &DataFile,
    sel_col: usize,
    x_col: usize,
    y_col: usize,
    label: &str,
    style: &str,
) {
    let values = data.distinct(sel_col);
    let _ = writeln!(s, "plot \\");
    for (i, v) in values.iter().enumerate() {
        let sep = if i + 1 < values.len() { ", \\" } else { "" };
        let _ = writeln!(
            s,
            "  '{file}' using {xc}:(abs(${sc} - {val}) < 1e-9 ? ${yc} : 1/0) \
             with {style} title '{label} = {v}'{sep}",
            xc = x_col + 1,
            sc = sel_col + 1,
            yc = y_col + 1,
            val = fmt_g(*v),
        );
    }
}

/// ho-density: one curve per (alpha, n) pair, in row order.
fn curves_per_pair(s: &mut String, file: &str, data: &DataFile) {
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for row in &data.rows {
        let p = (row[1], row[2]);
        if !pairs.contains(&p) {
            pairs.push(p);
        }
    }
    let _ = writeln!(s, "plot \\");
    for (i, (alpha, n)) in pairs.iter().enumerate() {
        let sep = if i + 1 < pairs.len() { ", \\" } else { "" };
        let _ = writeln!(
            s,
            "  '{file}' using 1:(abs($2 - {a}) < 1e-9 && abs($3 - {n}) < 1e-9 ? $4 : 1/0) \
             with lines title 'n = {n_int}, alpha = {alpha}'{sep}",
            a = fmt_g(*alpha),
            n = fmt_g(*n),
            n_int = *n as i64,
        );
    }
}
