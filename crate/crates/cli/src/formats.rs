//! File formats: the JSON polynomial form, DIMACS CNF, and rational literals.

use circuit_feas::reductions::SatInstance;
use circuit_feas::{BigInt, BigRational, ExponentVector, SparsePolynomial};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonTerm {
    pub c: String,
    pub a: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonPoly {
    pub n: usize,
    pub terms: Vec<JsonTerm>,
}

impl JsonPoly {
    pub fn from_poly(f: &SparsePolynomial) -> Self {
        JsonPoly {
            n: f.nvars(),
            terms: f
                .terms()
                .iter()
                .map(|t| JsonTerm {
                    c: t.coeff.to_string(),
                    a: t.exponent.0.clone(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<SparsePolynomial, String> {
        if self.n == 0 {
            return Err("\"n\" must be at least 1".into());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            let c: BigInt =
                t.c.trim().parse().map_err(|_| {
                    format!("term {i}: coefficient {:?} is not a decimal integer", t.c)
                })?;
            if t.a.len() != self.n {
                return Err(format!(
                    "term {i}: exponent has {} entries, expected {}",
                    t.a.len(),
                    self.n
                ));
            }
            if t.a.iter().any(|&e| e < 0) {
                return Err(format!("term {i}: exponents must be nonnegative"));
            }
            terms.push((c, ExponentVector(t.a.clone())));
        }
        let f = SparsePolynomial::new(self.n, terms).map_err(|e| e.to_string())?;
        if f.is_zero() {
            return Err("polynomial is empty after combining terms".into());
        }
        Ok(f)
    }
}

pub fn parse_json_poly(text: &str) -> Result<SparsePolynomial, String> {
    let j: JsonPoly =
        serde_json::from_str(text).map_err(|e| format!("invalid polynomial JSON: {e}"))?;
    j.to_poly()
}

/// 3-CNF in DIMACS form. Every clause must have exactly three literals on
/// distinct variables.
pub fn parse_dimacs(text: &str) -> Result<SatInstance, String> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[i64; 3]> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        let at = |msg: String| format!("line {}: {msg}", lineno + 1);
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(at("expected `p cnf <variables> <clauses>`".into()));
            }
            let n = parts[1]
                .parse()
                .map_err(|_| at("bad variable count".into()))?;
            let m = parts[2]
                .parse()
                .map_err(|_| at("bad clause count".into()))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(at("clause before the `p cnf` header".into()));
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| at(format!("bad literal {tok:?}")))?;
            if lit == 0 {
                if current.len() != 3 {
                    return Err(at(format!(
                        "clause has {} literals, only 3 are supported",
                        current.len()
                    )));
                }
                let vars = [current[0].abs(), current[1].abs(), current[2].abs()];
                if vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2] {
                    return Err(at("clause repeats a variable".into()));
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
            } else {
                if lit.unsigned_abs() as usize > n {
                    return Err(at(format!(
                        "literal {lit} exceeds the declared {n} variables"
                    )));
                }
                current.push(lit);
            }
        }
    }
    let Some((n, m)) = header else {
        return Err("missing `p cnf` header".into());
    };
    if !current.is_empty() {
        return Err("last clause is not terminated by 0".into());
    }
    if clauses.len() != m {
        return Err(format!(
            "header declares {m} clauses, found {}",
            clauses.len()
        ));
    }
    SatInstance::new(n, clauses).map_err(|e| e.to_string())
}

/// `p/q`, an integer, or a decimal such as `0.5`.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let s = text.trim();
    let bad = || format!("{text:?} is not a rational number");
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let den = num_pow10(frac.len());
        return Ok(BigRational::new(digits, den));
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

fn num_pow10(k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, _| acc * 10)
}
