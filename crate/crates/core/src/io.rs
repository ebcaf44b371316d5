//! JSON file formats.
//!
//! Complex numbers are two-element `[re, im]` arrays and matrices are lists of
//! rows. Floats are written in shortest round-trip form, so a file written
//! here re-parses to bit-identical values.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "basis_labels": ["e", "g"],
//!   "hamiltonian": [[[0.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]],
//!   "jumps": [{"rate": 1.0, "matrix": [[[0, 0], [0, 0]], [[1, 0], [0, 0]]]}]
//! }
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::model::{validate_state, DensityMatrix, LindbladModel};

pub type RawMatrix = Vec<Vec<[f64; 2]>>;

pub fn encode_matrix(m: &ComplexMatrix) -> RawMatrix {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn decode_matrix(raw: &RawMatrix) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<C64>> = raw
        .iter()
        .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows)
}

fn decode_square(raw: &RawMatrix, dim: usize, what: &str) -> Result<ComplexMatrix> {
    let m = decode_matrix(raw).map_err(|e| Error::Format(format!("{what}: {e}")))?;
    m.require_dim(dim).map_err(|e| Error::Format(format!("{what}: {e}")))?;
    Ok(m)
}

fn check_labels(labels: &[String], dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::Format("dim must be positive".into()));
    }
    if labels.len() != dim {
        return Err(Error::Format(format!(
            "basis_labels has {} entries, expected dim = {dim}",
            labels.len()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JumpEntry {
    pub rate: f64,
    pub matrix: RawMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub hamiltonian: RawMatrix,
    #[serde(default)]
    pub jumps: Vec<JumpEntry>,
}

impl ModelFile {
    pub fn from_model(model: &LindbladModel, basis_labels: Vec<String>) -> Result<Self> {
        check_labels(&basis_labels, model.dim())?;
        Ok(Self {
            dim: model.dim(),
            basis_labels,
            hamiltonian: encode_matrix(model.hamiltonian()),
            jumps: model
                .jumps()
                .iter()
                .map(|j| JumpEntry {
                    rate: j.rate(),
                    matrix: encode_matrix(j.operator()),
                })
                .collect(),
        })
    }

    pub fn to_model(&self) -> Result<LindbladModel> {
        check_labels(&self.basis_labels, self.dim)?;
        let h = decode_square(&self.hamiltonian, self.dim, "hamiltonian")?;
        let jumps = self
            .jumps
            .iter()
            .enumerate()
            .map(|(i, j)| Ok((j.rate, decode_square(&j.matrix, self.dim, &format!("jump {i}"))?)))
            .collect::<Result<Vec<_>>>()?;
        LindbladModel::new(h, jumps)
    }
}

/// A single density matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub matrix: RawMatrix,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix, basis_labels: Vec<String>) -> Result<Self> {
        check_labels(&basis_labels, rho.dim())?;
        Ok(Self {
            dim: rho.dim(),
            basis_labels,
            matrix: encode_matrix(rho.matrix()),
        })
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        check_labels(&self.basis_labels, self.dim)?;
        validate_state(decode_square(&self.matrix, self.dim, "state")?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledMatrix {
    pub label: String,
    pub matrix: RawMatrix,
}

/// Labeled operators, used both for observables and for Heisenberg bases.
/// Accepts either `{"observables": [...]}` or a bare list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObservablesFile {
    Wrapped {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basis_labels: Option<Vec<String>>,
        observables: Vec<LabeledMatrix>,
    },
    List(Vec<LabeledMatrix>),
}

impl ObservablesFile {
    pub fn from_operators(ops: &[(String, ComplexMatrix)]) -> Self {
        Self::List(
            ops.iter()
                .map(|(label, m)| LabeledMatrix {
                    label: label.clone(),
                    matrix: encode_matrix(m),
                })
                .collect(),
        )
    }

    fn entries(&self) -> &[LabeledMatrix] {
        match self {
            Self::Wrapped { observables, .. } => observables,
            Self::List(v) => v,
        }
    }

    pub fn to_operators(&self, dim: usize) -> Result<Vec<(String, ComplexMatrix)>> {
        if let Self::Wrapped {
            basis_labels: Some(labels),
            ..
        } = self
        {
            check_labels(labels, dim)?;
        }
        let entries = self.entries();
        if entries.is_empty() {
            return Err(Error::Format("no operators listed".into()));
        }
        entries
            .iter()
            .map(|e| Ok((e.label.clone(), decode_square(&e.matrix, dim, &e.label)?)))
            .collect()
    }
}

fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn write<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_model(path: &Path) -> Result<(LindbladModel, Vec<String>)> {
    let file: ModelFile = read(path)?;
    Ok((file.to_model()?, file.basis_labels))
}

pub fn write_model(path: &Path, model: &LindbladModel, basis_labels: Vec<String>) -> Result<()> {
    write(path, &ModelFile::from_model(model, basis_labels)?)
}

pub fn read_state(path: &Path) -> Result<(DensityMatrix, Vec<String>)> {
    let file: StateFile = read(path)?;
    Ok((file.to_state()?, file.basis_labels))
}

pub fn write_state(path: &Path, rho: &DensityMatrix, basis_labels: Vec<String>) -> Result<()> {
    write(path, &StateFile::from_state(rho, basis_labels)?)
}

pub fn read_operators(path: &Path, dim: usize) -> Result<Vec<(String, ComplexMatrix)>> {
    read::<ObservablesFile>(path)?.to_operators(dim)
}

pub fn write_operators(path: &Path, ops: &[(String, ComplexMatrix)]) -> Result<()> {
    write(path, &ObservablesFile::from_operators(ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::random;
    use crate::tls::{self, TlsParams};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn tls_model_file_round_trip() {
        let model = tls::build_tls(TlsParams::new(0.1, 0.2, 0.3).unwrap());
        let file = ModelFile::from_model(&model, vec!["e".into(), "g".into()]).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let back: ModelFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        let m = back.to_model().unwrap();
        assert_eq!(m.hamiltonian(), model.hamiltonian());
    }

    #[test]
    fn missing_rate_is_a_parse_error() {
        let text = r#"{"dim": 1, "basis_labels": ["a"], "hamiltonian": [[[0, 0]]],
                       "jumps": [{"matrix": [[[1, 0]]]}]}"#;
        assert!(serde_json::from_str::<ModelFile>(text).is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let text = r#"{"dim": 2, "basis_labels": ["e", "g"], "hamiltonian": [[[0, 0]]], "jumps": []}"#;
        let file: ModelFile = serde_json::from_str(text).unwrap();
        let err = file.to_model().unwrap_err();
        assert!(err.to_string().contains("hamiltonian"), "{err}");
        assert!(err.is_input_error());

        let text = r#"{"dim": 1, "basis_labels": ["e", "g"], "hamiltonian": [[[0, 0]]]}"#;
        let file: ModelFile = serde_json::from_str(text).unwrap();
        assert!(file.to_model().unwrap_err().to_string().contains("basis_labels"));
    }

    #[test]
    fn invalid_state_rejected() {
        let file = StateFile {
            dim: 2,
            basis_labels: labels(2),
            matrix: encode_matrix(&ComplexMatrix::identity(2)),
        };
        assert!(matches!(file.to_state(), Err(Error::InvalidState { .. })));
    }

    #[test]
    fn observables_accept_both_layouts() {
        let list = r#"[{"label": "sz", "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]}]"#;
        let wrapped = format!(r#"{{"basis_labels": ["e", "g"], "observables": {list}}}"#);
        for text in [list.to_string(), wrapped] {
            let file: ObservablesFile = serde_json::from_str(&text).unwrap();
            let ops = file.to_operators(2).unwrap();
            assert_eq!(ops[0].0, "sz");
            assert_eq!(ops[0].1, tls::sz());
        }
    }

    proptest! {
        #[test]
        fn random_model_round_trips_bit_exactly(seed in any::<u64>(), n in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let model = random::model(n, 2, &mut rng);
            let file = ModelFile::from_model(&model, labels(n)).unwrap();
            let text = serde_json::to_string_pretty(&file).unwrap();
            let back: ModelFile = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &file);
            let m = back.to_model().unwrap();
            prop_assert_eq!(m.hamiltonian(), model.hamiltonian());
            for (a, b) in m.jumps().iter().zip(model.jumps()) {
                prop_assert_eq!(a.rate(), b.rate());
                prop_assert_eq!(a.operator(), b.operator());
            }
        }
    }
}
