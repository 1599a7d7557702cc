use std::fs;
use std::io::{self, Read};

use madkit::mad::{FactorModel, FactorTable, PredictionCoefficients};
use madkit::{DistributionSpec, MedianEstimatorKind};

/// Reads `path`, or stdin when the path is `-`.
pub fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

/// Numbers separated by whitespace, commas or newlines.
pub fn parse_numbers(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let tokens = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty());
        for token in tokens {
            let value: f64 = token
                .parse()
                .map_err(|_| format!("line {}: '{token}' is not a number", i + 1))?;
            if !value.is_finite() {
                return Err(format!("line {}: non-finite value '{token}'", i + 1));
            }
            out.push(value);
        }
    }
    Ok(out)
}

/// Splits on commas and semicolons that are not inside parentheses.
pub fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            ',' | ';' if depth == 0 => parts.push(std::mem::take(&mut current)),
            _ => current.push(c),
        }
    }
    parts.push(current);
    parts
        .into_iter()
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect()
}

pub fn parse_estimators(s: &str) -> Result<Vec<MedianEstimatorKind>, String> {
    let kinds = split_top_level(s)
        .iter()
        .map(|t| t.parse::<MedianEstimatorKind>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if kinds.is_empty() {
        return Err("no estimators given".into());
    }
    Ok(kinds)
}

pub fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for token in split_top_level(s) {
        if let Some((lo, hi)) = token.split_once("..") {
            let (lo, hi) = (parse_usize(lo)?, parse_usize(hi)?);
            if lo > hi {
                return Err(format!("empty size range '{token}'"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(parse_usize(&token)?);
        }
    }
    if out.is_empty() {
        return Err("no sample sizes given".into());
    }
    Ok(out)
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("'{}' is not a non-negative integer", s.trim()))
}

/// `low..high`, read as the half-open range `low < n <= high`.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("range '{s}' must look like low..high"))?;
    let (lo, hi) = (parse_usize(lo)?, parse_usize(hi)?);
    if lo >= hi {
        return Err(format!("range '{s}' is empty"));
    }
    Ok((lo, hi))
}

pub fn parse_distributions(values: &[String]) -> Result<Vec<DistributionSpec>, String> {
    let mut out = Vec::new();
    for value in values {
        for token in split_top_level(value) {
            if token.eq_ignore_ascii_case("table5") || token.eq_ignore_ascii_case("all") {
                out.extend(DistributionSpec::sensitivity_set());
            } else {
                out.push(token.parse().map_err(|e: madkit::Error| e.to_string())?);
            }
        }
    }
    Ok(out)
}

/// A model name, or `fitted(alpha=..., beta=...)`.
pub fn parse_model(s: &str) -> Result<FactorModel, String> {
    let t = s.trim();
    let lower = t.to_ascii_lowercase();
    if let Some(body) = lower
        .strip_prefix("fitted(")
        .and_then(|b| b.strip_suffix(')'))
    {
        let mut alpha = None;
        let mut beta = None;
        for item in body.split(',') {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("model '{t}': expected key=value"))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| format!("model '{t}': '{}' is not a number", v.trim()))?;
            match k.trim() {
                "alpha" => alpha = Some(v),
                "beta" => beta = Some(v),
                other => return Err(format!("model '{t}': unknown key '{other}'")),
            }
        }
        return match (alpha, beta) {
            (Some(alpha), Some(beta)) => {
                Ok(FactorModel::Fitted(PredictionCoefficients { alpha, beta }))
            }
            _ => Err(format!("model '{t}' needs alpha and beta")),
        };
    }
    FactorModel::from_name(t).map_err(|e| e.to_string())
}

/// `n,c_n` rows, with an optional header.
pub fn parse_factor_table(text: &str) -> Result<FactorTable, String> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cells = line.split(',').map(str::trim);
        let (n, c) = (cells.next().unwrap_or(""), cells.next().unwrap_or(""));
        match (n.parse::<usize>(), c.parse::<f64>()) {
            (Ok(n), Ok(c)) => entries.push((n, c)),
            _ if i == 0 => continue,
            _ => return Err(format!("factor table line {}: expected 'n,c_n'", i + 1)),
        }
    }
    FactorTable::new(entries).map_err(|e| e.to_string())
}

/// Points `(n, c_n)` of one estimator from a `factors` CSV report.
pub fn parse_factor_report(
    text: &str,
    kind: MedianEstimatorKind,
) -> Result<Vec<(usize, f64)>, String> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let headers = reader.headers().map_err(|e| e.to_string())?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| format!("factor report lacks a '{name}' column"))
    };
    let (n_col, est_col, c_col) = (col("n")?, col("estimator")?, col("c_n")?);
    let mut points = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        let bad = || format!("factor report row {}: malformed", i + 1);
        let est: MedianEstimatorKind = record
            .get(est_col)
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if est != kind {
            continue;
        }
        let n = record
            .get(n_col)
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let c = record
            .get(c_col)
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        points.push((n, c));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_parsed_permissively() {
        assert_eq!(
            parse_numbers("1, 2\n3 4\t5\n\n").unwrap(),
            vec![1.0, 2.0, 3.0, 4.0, 5.0]
        );
        assert_eq!(
            parse_numbers("1\n2\nx\n").unwrap_err(),
            "line 3: 'x' is not a number"
        );
        assert_eq!(
            parse_numbers("1\nNaN").unwrap_err(),
            "line 2: non-finite value 'NaN'"
        );
        assert!(parse_numbers("inf").is_err());
    }

    #[test]
    fn top_level_split_respects_parentheses() {
        assert_eq!(
            split_top_level("cauchy(x0=0,gamma=1), uniform(a=0,b=1);exp"),
            vec!["cauchy(x0=0,gamma=1)", "uniform(a=0,b=1)", "exp"]
        );
    }

    #[test]
    fn sizes_and_ranges() {
        assert_eq!(parse_sizes("2,3,5..7").unwrap(), vec![2, 3, 5, 6, 7]);
        assert!(parse_sizes("2,x").is_err());
        assert_eq!(parse_range("100..500").unwrap(), (100, 500));
        assert!(parse_range("500..100").is_err());
        assert!(parse_range("100").is_err());
    }

    #[test]
    fn models() {
        assert_eq!(parse_model("hayes").unwrap(), FactorModel::Hayes);
        assert_eq!(
            parse_model("fitted(alpha=-0.5, beta=-3)").unwrap(),
            FactorModel::Fitted(PredictionCoefficients {
                alpha: -0.5,
                beta: -3.0
            })
        );
        assert!(parse_model("fitted(alpha=1)").is_err());
        assert!(parse_model("bogus").is_err());
    }

    #[test]
    fn factor_tables_and_reports() {
        let t = parse_factor_table("n,c_n\n5,1.9\n6,1.8\n").unwrap();
        assert_eq!(t.get(6), Some(1.8));
        assert!(parse_factor_table("n,c\n5,abc\n").is_err());
        let report = "# seed=1\nn,estimator,m_n,c_n,std_error,repetitions\n2,SM,0.5,2.0,0.1,100\n2,HD,0.5,1.9,0.1,100\n";
        assert_eq!(
            parse_factor_report(report, MedianEstimatorKind::Hd).unwrap(),
            vec![(2, 1.9)]
        );
    }
}
