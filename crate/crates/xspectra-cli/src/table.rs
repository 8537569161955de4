//! Two-column series files: `x,y` CSV with an optional single header row.

use std::path::Path;

use xspectra::TimeSeries;

pub fn read_series(path: &Path) -> Result<(TimeSeries, TimeSeries), String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| format!("cannot open {}: {e}", path.display()))?;

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format!("row {}: {e}", idx + 1))?;
        if record.len() != 2 {
            return Err(format!(
                "row {}: expected two columns, found {}",
                idx + 1,
                record.len()
            ));
        }
        let parsed = record[0].parse::<f64>().and_then(|x| {
            record[1].parse::<f64>().map(|y| (x, y))
        });
        match parsed {
            Ok((x, y)) => {
                if !(x.is_finite() && y.is_finite()) {
                    return Err(format!("row {}: non-finite value", idx + 1));
                }
                xs.push(x);
                ys.push(y);
            }
            // Only the first row may be a header.
            Err(_) if idx == 0 => continue,
            Err(e) => return Err(format!("row {}: {e}", idx + 1)),
        }
    }

    let x = TimeSeries::new(xs).map_err(|e| e.to_string())?;
    let y = TimeSeries::new(ys).map_err(|e| e.to_string())?;
    Ok((x, y))
}

pub fn write_series(path: &Path, x: &TimeSeries, y: &TimeSeries) -> Result<(), String> {
    use std::io::Write;
    let file = std::fs::File::create(path)
        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    let mut out = std::io::BufWriter::new(file);
    let write = |out: &mut std::io::BufWriter<std::fs::File>| -> std::io::Result<()> {
        writeln!(out, "x,y")?;
        for (a, b) in x.values().iter().zip(y.values()) {
            writeln!(out, "{a},{b}")?;
        }
        Ok(())
    };
    write(&mut out).map_err(|e| format!("cannot write {}: {e}", path.display()))
}
