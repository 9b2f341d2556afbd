use std::fmt;
use std::str::FromStr;

use sgfrac::reference::{default_sin_terms, exact_cubic_linear, exact_exp, exact_power, exact_sin_series};

/// Test functions with known fractional integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// `t^N`
    Power(u32),
    /// `e^{kt}`, `k ≠ 0`
    Exp(f64),
    /// `2t³ + 8t`
    Cubic8t,
    /// `sin(1 − t)`
    Sin1mt,
}

impl Builtin {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            Builtin::Power(n) => t.powi(n as i32),
            Builtin::Exp(k) => (k * t).exp(),
            Builtin::Cubic8t => 2.0 * t.powi(3) + 8.0 * t,
            Builtin::Sin1mt => (1.0 - t).sin(),
        }
    }

    /// Closed-form RLFI of order `alpha` at `t`.
    pub fn exact(self, alpha: f64, t: f64) -> sgfrac::Result<f64> {
        match self {
            Builtin::Power(n) => exact_power(n, alpha, t),
            Builtin::Exp(k) => exact_exp(k, alpha, t),
            Builtin::Cubic8t if alpha == 0.5 => exact_cubic_linear(t),
            Builtin::Cubic8t => Ok(2.0 * exact_power(3, alpha, t)? + 8.0 * exact_power(1, alpha, t)?),
            Builtin::Sin1mt => exact_sin_series(alpha, t, default_sin_terms()),
        }
    }
}

impl FromStr for Builtin {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s.split_once(':') {
            Some(("power", n)) => {
                n.parse().map(Builtin::Power).map_err(|_| format!("power:N needs a non-negative integer N, got {n:?}"))
            }
            Some(("exp", k)) => {
                let k: f64 = k.parse().map_err(|_| format!("exp:k needs a number k, got {k:?}"))?;
                if k == 0.0 || !k.is_finite() {
                    return Err("exp:k: k must be finite and nonzero".into());
                }
                Ok(Builtin::Exp(k))
            }
            None if s == "cubic8t" => Ok(Builtin::Cubic8t),
            None if s == "sin1mt" => Ok(Builtin::Sin1mt),
            _ => Err(format!("unknown function {s:?}; expected power:N, exp:k, cubic8t or sin1mt")),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Power(n) => write!(f, "power:{n}"),
            Builtin::Exp(k) => write!(f, "exp:{k}"),
            Builtin::Cubic8t => f.write_str("cubic8t"),
            Builtin::Sin1mt => f.write_str("sin1mt"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["power:5", "exp:-2.5", "cubic8t", "sin1mt"] {
            assert_eq!(s.parse::<Builtin>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_names() {
        for s in ["exp:0", "exp:-0", "exp:nan", "power:-1", "power:x", "sin", "cubic8t:1"] {
            assert!(s.parse::<Builtin>().is_err(), "{s}");
        }
    }

    #[test]
    fn cubic_closed_forms_agree() {
        let general = 2.0 * exact_power(3, 0.5, 0.7).unwrap() + 8.0 * exact_power(1, 0.5, 0.7).unwrap();
        let direct = Builtin::Cubic8t.exact(0.5, 0.7).unwrap();
        assert!((general - direct).abs() <= 4e-15 * direct);
    }
}
