//! Grid specifications: `start:stop:step`, `a..b` (inclusive) or `x1,x2,...`.

use crate::error::CliError;

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("invalid grid '{spec}': {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let points = if let Some((a, b)) = spec.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad("range bounds must be integers"))?;
        let b: u64 = b.trim().parse().map_err(|_| bad("range bounds must be integers"))?;
        if b < a {
            return Err(bad("empty range"));
        }
        (a..=b).map(|k| k as f64).collect()
    } else if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(bad("expected start:stop:step"));
        };
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(bad("need step > 0 and stop >= start"));
        }
        let span = (stop - start) / step;
        let count = (span + 1e-9).floor() as usize;
        (0..=count).map(|i| start + i as f64 * step).collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if points.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(bad("points must be finite and nonnegative"));
    }
    if points.windows(2).any(|w| w[1] <= w[0]) {
        return Err(bad("points must be strictly increasing"));
    }
    Ok(points)
}

/// Integer steps, for discrete distributions.
pub fn integer_points(points: &[f64]) -> Result<Vec<u64>, CliError> {
    points
        .iter()
        .map(|&p| {
            if p.fract() == 0.0 {
                Ok(p as u64)
            } else {
                Err(CliError::Usage(format!("grid point {p} is not an integer step")))
            }
        })
        .collect()
}
