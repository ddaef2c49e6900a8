//! JSON state files:
//! `{"dim": d, "d_a": optional, "d_b": optional, "re": [[...]], "im": [[...]]}`,
//! row-major. A missing `im` means a real matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, C64};

use super::{validate, BipartiteState, DensityMatrix};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StateFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_b: Option<usize>,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Vec<Vec<f64>>,
}

/// A loaded state, bipartite when the file names both factors.
#[derive(Debug, Clone)]
pub struct LoadedState {
    pub state: DensityMatrix,
    pub bipartite: Option<BipartiteState>,
}

fn field_err(field: &str, reason: impl Into<String>) -> Error {
    Error::InvalidField {
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn check_rows(name: &str, rows: &[Vec<f64>], dim: usize) -> Result<()> {
    if rows.len() != dim {
        return Err(field_err(name, format!("{} rows, expected {dim}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(field_err(
                &format!("{name}[{i}]"),
                format!("{} entries, expected {dim}", row.len()),
            ));
        }
        if let Some(j) = row.iter().position(|x| !x.is_finite()) {
            return Err(field_err(&format!("{name}[{i}][{j}]"), "not finite"));
        }
    }
    Ok(())
}

impl StateFile {
    pub fn into_state(self) -> Result<LoadedState> {
        if self.dim == 0 {
            return Err(field_err("dim", "must be positive"));
        }
        check_rows("re", &self.re, self.dim)?;
        let real_only = self.im.is_empty();
        if !real_only {
            check_rows("im", &self.im, self.dim)?;
        }
        let d = self.dim;
        let mat = ComplexMatrix::from_fn(d, d, |i, j| {
            let im = if real_only { 0.0 } else { self.im[i][j] };
            C64::new(self.re[i][j], im)
        });
        let state = validate(&mat).map_err(|e| match e {
            Error::InvalidField { .. } => e,
            other => field_err("re/im", other.to_string()),
        })?;
        let bipartite = match (self.d_a, self.d_b) {
            (Some(a), Some(b)) => {
                if a * b != d {
                    return Err(field_err("d_a/d_b", format!("{a} x {b} != dim {d}")));
                }
                Some(BipartiteState::new(state.clone(), a, b)?)
            }
            (None, None) => None,
            (Some(_), None) => return Err(field_err("d_b", "missing while d_a is given")),
            (None, Some(_)) => return Err(field_err("d_a", "missing while d_b is given")),
        };
        Ok(LoadedState { state, bipartite })
    }

    pub fn from_matrix(m: &ComplexMatrix, dims: Option<(usize, usize)>) -> Self {
        let d = m.rows();
        Self {
            dim: d,
            d_a: dims.map(|x| x.0),
            d_b: dims.map(|x| x.1),
            re: (0..d).map(|i| (0..d).map(|j| m[(i, j)].re).collect()).collect(),
            im: (0..d).map(|i| (0..d).map(|j| m[(i, j)].im).collect()).collect(),
        }
    }
}

pub fn load_state_json(text: &str) -> Result<LoadedState> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_state()
}

pub fn state_to_json(state: &DensityMatrix, dims: Option<(usize, usize)>) -> String {
    serde_json::to_string_pretty(&StateFile::from_matrix(state.matrix(), dims)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell, random_density};

    #[test]
    fn roundtrip_bipartite() {
        let b = bell();
        let text = state_to_json(b.state(), Some((2, 2)));
        let loaded = load_state_json(&text).unwrap();
        assert_eq!(loaded.bipartite.unwrap().dims(), (2, 2));
        assert!(loaded.state.matrix().max_abs_diff(b.matrix()) < 1e-15);

        let r = random_density(3, 2, 4).unwrap();
        let back = load_state_json(&state_to_json(&r, None)).unwrap();
        assert!(back.state.matrix().max_abs_diff(r.matrix()) < 1e-15);
        assert!(back.bipartite.is_none());
    }

    #[test]
    fn errors_name_the_field() {
        assert!(matches!(load_state_json("{not json"), Err(Error::Parse(_))));
        let bad_row = r#"{"dim": 2, "re": [[0.5, 0.0], [0.0]], "im": []}"#;
        match load_state_json(bad_row) {
            Err(Error::InvalidField { field, .. }) => assert_eq!(field, "re[1]"),
            other => panic!("{other:?}"),
        }
        let bad_dims = r#"{"dim": 4, "d_a": 2, "d_b": 3, "re": [[0.25,0,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,0.25]]}"#;
        match load_state_json(bad_dims) {
            Err(Error::InvalidField { field, .. }) => assert_eq!(field, "d_a/d_b"),
            other => panic!("{other:?}"),
        }
        let not_psd = r#"{"dim": 2, "re": [[1.5, 0], [0, -0.5]]}"#;
        match load_state_json(not_psd) {
            Err(Error::InvalidField { field, reason }) => {
                assert_eq!(field, "re/im");
                assert!(reason.contains("positive semidefinite"));
            }
            other => panic!("{other:?}"),
        }
    }
}
