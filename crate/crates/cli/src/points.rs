/// A list of numbers given as a single flag value.
#[derive(Debug, Clone, PartialEq)]
pub struct List(pub Vec<f64>);

pub fn range_list(s: &str) -> Result<List, String> {
    parse_range(s).map(List)
}

pub fn values_list(s: &str) -> Result<List, String> {
    parse_values(s).map(List)
}

/// Parses `a:b:m` into `m` equally spaced points from `a` to `b` inclusive.
pub fn parse_range(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, m] = parts[..] else {
        return Err(format!("range {s:?} must look like a:b:m"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("bad number {x:?} in range {s:?}"));
    let (a, b) = (num(a)?, num(b)?);
    let m: usize = m.trim().parse().map_err(|_| format!("bad point count {m:?} in range {s:?}"))?;
    if m == 0 {
        return Err("range needs at least one point".into());
    }
    Ok(linspace(a, b, m))
}

pub fn linspace(a: f64, b: f64, m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![a];
    }
    let h = (b - a) / (m - 1) as f64;
    (0..m).map(|i| if i == m - 1 { b } else { a + i as f64 * h }).collect()
}

/// Values for a sweep: `a..b` (inclusive integers), `a:b:m` or a comma list.
pub fn parse_values(s: &str) -> Result<Vec<f64>, String> {
    if let Some((a, b)) = s.split_once("..") {
        let int = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("bad integer {x:?} in {s:?}"));
        let (a, b) = (int(a)?, int(b)?);
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        return Ok((a..=b).map(|v| v as f64).collect());
    }
    if s.contains(':') {
        return parse_range(s);
    }
    s.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad number {x:?}"))).collect()
}
