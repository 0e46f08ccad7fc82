//! Argument parsers for angles, strategies and tactic profiles.

use std::f64::consts::PI;

use qess_core::{QuantumStrategy, TacticProfile};

/// A number, or `pi`, `pi/<n>`, `<k>pi`, `<k>pi/<n>` (case-insensitive).
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let parsed = if let Some(idx) = t.find("pi") {
        let (coef, rest) = t.split_at(idx);
        let rest = &rest[2..];
        let coef = match coef.trim_end_matches('*') {
            "" => Ok(1.0),
            "-" => Ok(-1.0),
            c => c.parse::<f64>(),
        };
        let div = match rest.strip_prefix('/') {
            Some(d) => d.parse::<f64>(),
            None if rest.is_empty() => Ok(1.0),
            None => return Err(format!("cannot parse angle {s:?}")),
        };
        match (coef, div) {
            (Ok(c), Ok(d)) if d != 0.0 => Ok(c * PI / d),
            _ => return Err(format!("cannot parse angle {s:?}")),
        }
    } else {
        t.parse::<f64>()
    };
    match parsed {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("cannot parse angle {s:?}")),
    }
}

/// `C`, `D`, `Q`, `theta` (one-parameter) or `theta,phi` (two-parameter).
pub fn parse_strategy(s: &str) -> Result<QuantumStrategy, String> {
    match s.trim() {
        "C" | "c" => return Ok(QuantumStrategy::cooperate()),
        "D" | "d" => return Ok(QuantumStrategy::defect()),
        "Q" | "q" => return Ok(QuantumStrategy::quantum()),
        _ => {}
    }
    let parts: Vec<&str> = s.split(',').collect();
    let result = match parts.as_slice() {
        [theta] => QuantumStrategy::one_parameter(parse_angle(theta)?),
        [theta, phi] => QuantumStrategy::two_parameter(parse_angle(theta)?, parse_angle(phi)?),
        _ => return Err(format!("expected C, D, Q, theta or theta,phi; got {s:?}")),
    };
    result.map_err(|e| e.to_string())
}

/// `p,q` with both in `[0, 1]`.
pub fn parse_profile(s: &str) -> Result<TacticProfile, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [p, q] = parts.as_slice() else {
        return Err(format!("expected p,q; got {s:?}"));
    };
    let num = |x: &str| {
        x.parse::<f64>()
            .map_err(|_| format!("cannot parse {x:?} as a number"))
    };
    TacticProfile::new(num(p)?, num(q)?).map_err(|e| e.to_string())
}

/// Three comma-separated numbers `alpha,beta,gamma`.
pub fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse {x:?} as a number"))
        })
        .collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(v).map_err(|_| format!("expected alpha,beta,gamma; got {s:?}"))
}
