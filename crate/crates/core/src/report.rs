//! CSV writers for scan, metrology and Husimi reports.
//!
//! Floating-point columns are written with 17 significant digits.

use std::io::{self, Write};

use crate::dynamics::CatScanRow;
use crate::husimi::HusimiGrid;
use crate::metrology::ScalingRow;

pub const CAT_SCAN_HEADER: &str =
    "twice_j,omega,fidelity,coeff_plus_re,coeff_plus_im,coeff_minus_re,coeff_minus_im";
pub const SCALING_HEADER: &str = "N,delta_phi_noon,delta_phi_sql_reference,qfi";
pub const HUSIMI_HEADER: &str = "theta,phi,q";

/// Full-precision float formatting used by every report.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_cat_scan<W: Write>(mut out: W, rows: &[CatScanRow]) -> io::Result<()> {
    writeln!(out, "{CAT_SCAN_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.twice_j,
            fmt_f64(r.omega),
            fmt_f64(r.fidelity),
            fmt_f64(r.coeff_plus.re),
            fmt_f64(r.coeff_plus.im),
            fmt_f64(r.coeff_minus.re),
            fmt_f64(r.coeff_minus.im),
        )?;
    }
    Ok(())
}

pub fn write_scaling<W: Write>(mut out: W, rows: &[ScalingRow]) -> io::Result<()> {
    writeln!(out, "{SCALING_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.n,
            fmt_f64(r.delta_phi_noon),
            fmt_f64(r.delta_phi_sql_reference),
            fmt_f64(r.qfi),
        )?;
    }
    Ok(())
}

pub fn write_husimi<W: Write>(mut out: W, grid: &HusimiGrid) -> io::Result<()> {
    writeln!(out, "{HUSIMI_HEADER}")?;
    for (t, p, q) in grid.cells() {
        writeln!(out, "{},{},{}", fmt_f64(t), fmt_f64(p), fmt_f64(q))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn cat_scan_layout() {
        let rows = [CatScanRow {
            twice_j: 3,
            omega: 0.0,
            fidelity: 0.5,
            coeff_plus: Complex64::new(0.25, -0.125),
            coeff_minus: Complex64::new(0.0, 0.0),
        }];
        let mut buf = Vec::new();
        write_cat_scan(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CAT_SCAN_HEADER);
        let cells: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(cells.len(), 7);
        assert_eq!(cells[0], "3");
        assert_eq!(cells[2].parse::<f64>().unwrap(), 0.5);
        assert_eq!(cells[4].parse::<f64>().unwrap(), -0.125);
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, std::f64::consts::PI] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
