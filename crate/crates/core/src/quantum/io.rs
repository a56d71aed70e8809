use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ca::{Alphabet, Config, Region};

use super::reduce::ReducedMatrix;
use super::superposition::Superposition;
use super::QuantumError;

#[derive(Serialize, Deserialize)]
struct Term {
    config: String,
    re: f64,
    im: f64,
}

/// `[{"config": "<offset>|<word>", "re": …, "im": …}, …]` in configuration
/// order.
pub fn state_to_json(s: &Superposition, alphabet: &Alphabet) -> Value {
    let terms: Vec<Term> = s
        .iter()
        .map(|(c, a)| Term {
            config: c.format(alphabet),
            re: a.re,
            im: a.im,
        })
        .collect();
    serde_json::to_value(terms).expect("plain data serializes")
}

/// Parses a state file. Duplicate configurations are merged; the result is
/// not renormalized.
pub fn state_from_json(text: &str, alphabet: &Alphabet) -> Result<Superposition, QuantumError> {
    let terms: Vec<Term> = serde_json::from_str(text).map_err(|e| QuantumError::BadState(e.to_string()))?;
    let mut pairs = Vec::with_capacity(terms.len());
    for t in terms {
        let c = Config::parse(&t.config, alphabet).map_err(|e| QuantumError::BadState(e.to_string()))?;
        pairs.push((c, Complex64::new(t.re, t.im)));
    }
    Ok(Superposition::from_pairs(pairs))
}

/// `{"region": [...], "order": [words], "re": [[...]], "im": [[...]]}`.
pub fn reduced_to_json(m: &ReducedMatrix, alphabet: &Alphabet) -> Value {
    let n = m.dim();
    let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| f(&m.matrix()[(i, j)])).collect())
            .collect()
    };
    json!({
        "region": m.region(),
        "order": m.words().iter().map(|w| alphabet.decode(w)).collect::<Vec<_>>(),
        "re": part(|z| z.re),
        "im": part(|z| z.im),
    })
}

#[derive(Deserialize)]
struct ReducedFile {
    region: Region,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

pub fn reduced_from_json(text: &str, alphabet: &Alphabet) -> Result<ReducedMatrix, QuantumError> {
    let bad = |msg: &str| QuantumError::BadState(msg.to_string());
    let f: ReducedFile = serde_json::from_str(text).map_err(|e| QuantumError::BadState(e.to_string()))?;
    let n = f.re.len();
    if f.im.len() != n || f.re.iter().chain(&f.im).any(|row| row.len() != n) {
        return Err(bad("matrix is not square"));
    }
    let matrix = DMatrix::from_fn(n, n, |i, j| Complex64::new(f.re[i][j], f.im[i][j]));
    ReducedMatrix::from_parts(f.region, alphabet.len(), matrix)
        .ok_or_else(|| bad("matrix size does not match the region"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{make_superposition, pure_density, reduce};

    #[test]
    fn state_round_trip() {
        let alphabet = Alphabet::binary();
        let s = make_superposition([
            (Config::parse("0|1", &alphabet).unwrap(), Complex64::new(1.0, -2.0)),
            (Config::parse("-3|101", &alphabet).unwrap(), Complex64::new(0.0, 0.5)),
        ])
        .unwrap();
        let text = state_to_json(&s, &alphabet).to_string();
        assert_eq!(state_from_json(&text, &alphabet).unwrap(), s);
    }

    #[test]
    fn reduced_round_trip() {
        let alphabet = Alphabet::binary();
        let s = make_superposition([
            (Config::parse("0|1", &alphabet).unwrap(), Complex64::new(1.0, 0.0)),
            (Config::parse("0|11", &alphabet).unwrap(), Complex64::new(0.0, 1.0)),
        ])
        .unwrap();
        let m = reduce(&pure_density(&s).unwrap(), &Region::new([0, 1]), &alphabet).unwrap();
        let v = reduced_to_json(&m, &alphabet);
        assert_eq!(v["order"], json!(["00", "01", "10", "11"]));
        assert_eq!(reduced_from_json(&v.to_string(), &alphabet).unwrap(), m);
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(matches!(
            state_from_json("[{\"config\": \"x\", \"re\": 1, \"im\": 0}]", &Alphabet::binary()),
            Err(QuantumError::BadState(_))
        ));
    }
}
