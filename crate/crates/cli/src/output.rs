//! CSV and JSON writers. Reals are printed with 5 fixed decimals in CSV.

use std::io::{self, Write};

use abentropy::entropy::EntropyReport;
use abentropy::reference::{self, ReferenceRow};
use serde::Serialize;
use serde_json::json;

use crate::{CliError, SweepRow};

pub const TABLE_HEADER: &str = "n,l,beta,S_r,S_p,total,bbm_bound,satisfied";
pub const REFERENCE_HEADER: &str = "ref_S_r,ref_S_p,ref_total,trend_agree";

fn fixed(x: f64) -> String {
    format!("{x:.5}")
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

/// Rows of single reports, without reference columns.
pub fn write_table_csv(
    out: &mut dyn Write,
    reports: &[Result<EntropyReport, CliError>],
    reference: Option<&[ReferenceRow]>,
) -> io::Result<()> {
    let rows: Vec<SweepRow> = reports
        .iter()
        .map(|r| match r {
            Ok(rep) => (rep.qn, rep.params.beta, Ok(*rep)),
            Err(_) => unreachable!("single reports are emitted only on success"),
        })
        .collect();
    write_sweep_csv(out, &rows, reference)
}

fn report_cells(beta: f64, result: &Result<EntropyReport, CliError>) -> String {
    match result {
        Ok(r) => format!(
            "{},{},{},{},{},{}",
            fixed(beta),
            fixed(r.s_r),
            fixed(r.s_p),
            fixed(r.total),
            fixed(r.bbm_bound),
            r.satisfied
        ),
        Err(_) => format!("{},NaN,NaN,NaN,NaN,error", fixed(beta)),
    }
}

/// Whether the beta-direction of `S_p` and `total` matches the reference
/// table. Each row is compared with its predecessor in the same `(n, l, k)`
/// block, the first row with its successor.
fn trend_agreement(rows: &[SweepRow]) -> Vec<Option<bool>> {
    let stored = |row: &SweepRow| reference::lookup(row.0.n, row.0.l, row.1).filter(|_| row.0.k == reference::DEFAULT_K);
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let same = |j: usize| rows.get(j).filter(|o| o.0 == row.0);
            let neighbour = if i > 0 && same(i - 1).is_some() { same(i - 1) } else { same(i + 1) }?;
            let (lo, hi) = if neighbour.1 < row.1 { (neighbour, row) } else { (row, neighbour) };
            let (ours_lo, ours_hi) = (lo.2.as_ref().ok()?, hi.2.as_ref().ok()?);
            let (ref_lo, ref_hi) = (stored(lo)?, stored(hi)?);
            let sign = |d: f64| d.partial_cmp(&0.0);
            Some(
                sign(ours_hi.s_p - ours_lo.s_p) == sign(ref_hi.s_p - ref_lo.s_p)
                    && sign(ours_hi.total - ours_lo.total) == sign(ref_hi.total - ref_lo.total),
            )
        })
        .collect()
}

pub fn write_sweep_csv(out: &mut dyn Write, rows: &[SweepRow], reference: Option<&[ReferenceRow]>) -> io::Result<()> {
    let compare = reference.is_some();
    if compare {
        writeln!(out, "{TABLE_HEADER},{REFERENCE_HEADER}")?;
    } else {
        writeln!(out, "{TABLE_HEADER}")?;
    }
    let trends = if compare { trend_agreement(rows) } else { Vec::new() };
    for (i, row) in rows.iter().enumerate() {
        let (qn, beta, result) = row;
        write!(out, "{},{},{}", qn.n, qn.l, report_cells(*beta, result))?;
        if let Some(table) = reference {
            let stored = table
                .iter()
                .find(|r| r.n == qn.n && r.l == qn.l && (r.beta - beta).abs() < 1e-12 && qn.k == reference::DEFAULT_K);
            match stored {
                Some(r) => write!(out, ",{},{},{}", fixed(r.s_r), fixed(r.s_p), fixed(r.total))?,
                None => write!(out, ",,,")?,
            }
            let trend = match trends[i] {
                Some(t) => t.to_string(),
                None => "n/a".to_string(),
            };
            write!(out, ",{trend}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_sweep_json(out: &mut dyn Write, rows: &[SweepRow]) -> io::Result<()> {
    let values: Vec<serde_json::Value> = rows
        .iter()
        .map(|(qn, beta, result)| match result {
            Ok(r) => serde_json::to_value(r).expect("reports serialize"),
            Err(e) => json!({"n": qn.n, "l": qn.l, "k": qn.k, "beta": beta, "error": e.message()}),
        })
        .collect();
    write_json(out, &values)
}

pub fn write_density_csv(out: &mut dyn Write, points: &[(f64, f64)]) -> io::Result<()> {
    writeln!(out, "coordinate,density")?;
    for &(x, d) in points {
        writeln!(out, "{},{}", fixed(x), fixed(d))?;
    }
    Ok(())
}

pub fn write_density_json(out: &mut dyn Write, points: &[(f64, f64)]) -> io::Result<()> {
    let values: Vec<serde_json::Value> = points.iter().map(|&(x, d)| json!({"coordinate": x, "density": d})).collect();
    write_json(out, &values)
}
