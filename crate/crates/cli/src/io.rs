//! Map loading, argument parsing helpers, point files and output sinks.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use pfvdc::bits::BitString;
use pfvdc::error::Error;
use pfvdc::interval_maps::{catalog, file};
use pfvdc::PLMap;

use crate::Failure;

pub struct LoadedMap {
    pub name: String,
    pub source: String,
    pub map: PLMap,
}

impl LoadedMap {
    pub fn hash(&self) -> String {
        format!("{:016x}", file::map_hash(&self.map))
    }
}

/// A JSON map file, or `builtin:NAME` for a stock map.
pub fn load_map(spec: &str) -> Result<LoadedMap, Failure> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let map = catalog::by_name(name)
            .ok_or_else(|| Error::Usage(format!("unknown builtin map {name:?}")))?;
        return Ok(LoadedMap {
            name: name.to_string(),
            source: spec.to_string(),
            map,
        });
    }
    let text = fs::read_to_string(spec).map_err(|e| Failure::Io(format!("{spec}: {e}")))?;
    let doc = file::parse_map(&text)?;
    let name = doc.name.unwrap_or_else(|| {
        Path::new(spec)
            .file_stem()
            .map_or_else(|| "unnamed".into(), |s| s.to_string_lossy().into_owned())
    });
    Ok(LoadedMap {
        name,
        source: spec.to_string(),
        map: doc.map,
    })
}

/// `A..B` (inclusive) or a single level `A`.
pub fn parse_levels(text: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Usage(format!("levels must look like A..B, got {text:?}"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b),
        None => (text, text),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn parse_base(text: Option<&str>, dim: usize) -> Result<Vec<f64>, Error> {
    let Some(text) = text else {
        return Ok(vec![if dim == 1 { 0.5 } else { 0.0 }; dim]);
    };
    let vals: Vec<f64> = text
        .split(',')
        .map(|t| pfvdc::interval_maps::expr::eval(t.trim()))
        .collect::<Result<_, _>>()?;
    if vals.len() != dim {
        return Err(Error::Usage(format!(
            "base has {} coordinates, dimension is {dim}",
            vals.len()
        )));
    }
    if let Some(v) = vals.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::Domain(format!("base coordinate {v} outside [0,1]")));
    }
    Ok(vals)
}

/// Shortest decimal that reads back to the same double.
pub fn decimal(v: f64) -> String {
    format!("{v:?}")
}

pub fn bits(v: f64, precision: usize) -> Result<String, Error> {
    Ok(BitString::from_unit(v, precision)?.to_string())
}

/// Text output with a `#` header block.
pub struct Report {
    text: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self {
            text: String::new(),
        };
        r.meta("pfvdc", &format!("{command} {}", env!("CARGO_PKG_VERSION")));
        r
    }

    pub fn meta(&mut self, key: &str, value: &str) {
        let _ = writeln!(self.text, "# {key}: {value}");
    }

    pub fn line(&mut self, line: &str) {
        self.text.push_str(line);
        self.text.push('\n');
    }

    pub fn finish(self, out: Option<&PathBuf>) -> Result<(), Failure> {
        match out {
            Some(path) => fs::write(path, self.text)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(self.text.as_bytes())?;
                Ok(())
            }
        }
    }
}

/// Points parsed from a file: decimal or bit-string columns, or CSV with
/// `x`, `y`, `z` header columns.
pub struct PointTable {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

fn parse_coord(token: &str, bits: bool) -> Result<f64, Error> {
    if bits {
        Ok(BitString::parse(token)?.to_unit())
    } else {
        token
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("not a number: {token:?}")))
    }
}

/// Comma-separated rows keep empty fields so header columns stay aligned.
fn tokens(line: &str) -> Vec<&str> {
    if line.contains(',') {
        line.split(',').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    }
}

pub fn read_points(path: &Path) -> Result<PointTable, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut bits = false;
    let mut columns: Option<Vec<usize>> = None;
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(meta) = line.strip_prefix('#') {
            if meta.trim() == "format: bits" {
                bits = true;
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let toks = tokens(line);
        if columns.is_none()
            && points.is_empty()
            && toks.iter().any(|t| t.chars().any(char::is_alphabetic))
        {
            let cols: Vec<usize> = ["x", "y", "z"]
                .iter()
                .filter_map(|name| toks.iter().position(|t| t == name))
                .collect();
            if cols.is_empty() {
                return Err(Error::Parse(format!("header without x/y/z columns: {line:?}")).into());
            }
            columns = Some(cols);
            continue;
        }
        let row: Vec<f64> = match &columns {
            Some(cols) => cols
                .iter()
                .map(|&c| {
                    toks.get(c)
                        .ok_or_else(|| Error::Parse(format!("line {}: missing column", no + 1)))
                        .and_then(|t| parse_coord(t, bits))
                })
                .collect::<Result<_, _>>()?,
            None => toks
                .iter()
                .map(|t| parse_coord(t, bits))
                .collect::<Result<_, _>>()?,
        };
        if let Some(first) = points.first() {
            if first.len() != row.len() {
                return Err(Error::Parse(format!(
                    "line {}: {} columns, expected {}",
                    no + 1,
                    row.len(),
                    first.len()
                ))
                .into());
            }
        }
        points.push(row);
    }
    let dim = points.first().map_or(0, Vec::len);
    if points.is_empty() {
        return Err(Error::Usage(format!("{}: no points", path.display())).into());
    }
    if !(1..=3).contains(&dim) {
        return Err(Error::Usage(format!("points of dimension {dim}; expected 1 to 3")).into());
    }
    Ok(PointTable { dim, points })
}

/// `(N, D)` pairs from the first two numeric columns of each row.
pub fn read_table(path: &Path) -> Result<(Vec<usize>, Vec<f64>), Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let (mut ns, mut ds) = (Vec::new(), Vec::new());
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks = tokens(line);
        if toks.len() < 2 {
            return Err(Error::Parse(format!("row needs N and D: {line:?}")).into());
        }
        match (toks[0].parse::<usize>(), toks[1].parse::<f64>()) {
            (Ok(n), Ok(d)) => {
                ns.push(n);
                ds.push(d);
            }
            _ if ns.is_empty() => continue,
            _ => return Err(Error::Parse(format!("row is not numeric: {line:?}")).into()),
        }
    }
    Ok((ns, ds))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels() {
        assert_eq!(parse_levels("0..4").unwrap(), (0, 4));
        assert_eq!(parse_levels("3").unwrap(), (3, 3));
        assert!(parse_levels("4..1").is_err());
        assert!(parse_levels("a..b").is_err());
    }

    #[test]
    fn base() {
        assert_eq!(parse_base(Some("0.5"), 1).unwrap(), vec![0.5]);
        assert_eq!(parse_base(Some("1/4, 3/4"), 2).unwrap(), vec![0.25, 0.75]);
        assert!(parse_base(Some("0.5"), 2).is_err());
        assert!(parse_base(Some("2"), 1).is_err());
        assert_eq!(parse_base(None, 3).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn decimal_round_trips() {
        for v in [0.5, 0.1, 1.0 / 3.0, 0.0] {
            assert_eq!(decimal(v).parse::<f64>().unwrap(), v);
        }
    }
}
