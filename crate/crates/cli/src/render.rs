use clap::ValueEnum;

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

/// Six fixed decimals; negative zero prints as zero.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| crate::error::CliError::Encode(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 strings"))
}

/// Whitespace-aligned columns, left-aligned, two spaces apart.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let s: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&mut header.iter().copied());
    for row in rows {
        out += &line(&mut row.iter().map(String::as_str));
    }
    out
}

pub fn json(value: &serde_json::Value) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_formatting() {
        assert_eq!(fixed(3.0), "3.000000");
        assert_eq!(fixed(-1e-12), "0.000000");
        assert_eq!(fixed(2.0 / 3.0), "0.666667");
    }

    #[test]
    fn csv_and_table_layout() {
        let rows = vec![vec!["0.000000".to_string(), "ESS".to_string()]];
        assert_eq!(
            csv(&["b2", "verdict"], &rows).unwrap(),
            "b2,verdict\n0.000000,ESS\n"
        );
        assert_eq!(
            table(&["b2", "verdict"], &rows),
            "b2        verdict\n0.000000  ESS\n"
        );
    }
}
