use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::sweep::{CellOutcome, RegionCell};
use crate::error::{Error, Result};

/// Formats like C's `%.10g`: ten significant digits, trailing zeros dropped,
/// scientific notation outside `1e-4 <= |x| < 1e10`.
pub fn format_g10(x: f64) -> String {
    const DIGITS: i32 = 10;
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Renders cells as CSV with header
/// `coord1[,coord2],case,v,pi_M,pi_R,w_1..w_n,q_1..q_n,lambda`.
pub fn write_csv(cells: &[RegionCell]) -> Result<String> {
    let first = cells
        .first()
        .ok_or_else(|| Error::validation("cells", "nothing to write"))?;
    let dims = first.coords.len();
    let n = cells
        .iter()
        .filter_map(|c| c.solution().map(|s| s.quantity.len()))
        .max()
        .unwrap_or(0);

    let mut header: Vec<String> = (1..=dims).map(|d| format!("coord{d}")).collect();
    header.extend(["case", "v", "pi_M", "pi_R"].map(String::from));
    header.extend((1..=n).map(|i| format!("w_{i}")));
    header.extend((1..=n).map(|i| format!("q_{i}")));
    header.push("lambda".into());

    let mut out = header.join(",");
    out.push('\n');
    for cell in cells {
        let mut fields: Vec<String> = cell.coords.iter().map(|&c| format_g10(c)).collect();
        match &cell.outcome {
            CellOutcome::Solved(s) => {
                fields.push(s.case.label().into());
                fields.push(s.v().to_string());
                fields.push(format_g10(s.manufacturer_profit));
                fields.push(format_g10(s.retailer_profit));
                fields.extend(s.wholesale.iter().map(|&w| format_g10(w)));
                fields.extend(s.quantity.iter().map(|&q| format_g10(q)));
                fields.push(format_g10(s.shadow_price));
            }
            CellOutcome::Failed(_) => {
                fields.push("error".into());
                fields.extend(std::iter::repeat_n(String::new(), 4 + 2 * n));
            }
        }
        let _ = writeln!(out, "{}", fields.join(","));
    }
    Ok(out)
}

/// Writes [`write_csv`] output to `path`.
pub fn emit_csv(cells: &[RegionCell], path: impl AsRef<Path>) -> Result<()> {
    let text = write_csv(cells)?;
    fs::write(path, text)?;
    Ok(())
}
