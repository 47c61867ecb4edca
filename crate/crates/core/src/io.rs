//! JSON file formats for matrices, algebras and chains.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::matkernel::{BaseField, DivisionAlgebra, KMatrix, KScalar};
use crate::orthograph::Chain;

/// `{"division_algebra", "base_field", "n", "entries"}` with entries row-major and each
/// scalar as its 1, 2 or 4 real components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub division_algebra: DivisionAlgebra,
    pub base_field: BaseField,
    pub n: usize,
    pub entries: Vec<Vec<Vec<f64>>>,
}

impl From<&KMatrix> for MatrixFile {
    fn from(m: &KMatrix) -> Self {
        let d = m.algebra().real_dim();
        let entries = (0..m.n())
            .map(|r| (0..m.n()).map(|c| m.get(r, c).components()[..d].to_vec()).collect())
            .collect();
        MatrixFile { division_algebra: m.algebra(), base_field: m.field(), n: m.n(), entries }
    }
}

impl TryFrom<MatrixFile> for KMatrix {
    type Error = Error;

    fn try_from(f: MatrixFile) -> Result<KMatrix> {
        if f.entries.len() != f.n || f.entries.iter().any(|row| row.len() != f.n) {
            return Err(Error::InvalidMatrix(format!("entries must be a {0}×{0} array", f.n)));
        }
        let entries = f
            .entries
            .iter()
            .flatten()
            .map(|c| KScalar::from_components(f.division_algebra, c))
            .collect::<Result<Vec<_>>>()?;
        KMatrix::new(f.division_algebra, f.base_field, f.n, entries)
    }
}

/// A chain as its elements plus the strictness witness of every step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainFile {
    pub algebra: String,
    pub length: usize,
    pub elements: Vec<MatrixFile>,
    #[serde(default)]
    pub strictness_witnesses: Vec<MatrixFile>,
}

impl From<&Chain> for ChainFile {
    fn from(c: &Chain) -> Self {
        ChainFile {
            algebra: c.elements()[0].algebra_label(),
            length: c.len(),
            elements: c.elements().iter().map(MatrixFile::from).collect(),
            strictness_witnesses: c.strictness_witnesses().iter().map(MatrixFile::from).collect(),
        }
    }
}

impl ChainFile {
    /// Parses the elements without validating the chain.
    pub fn matrices(&self) -> Result<Vec<KMatrix>> {
        self.elements.iter().cloned().map(KMatrix::try_from).collect()
    }

    /// Rebuilds and validates the chain; stored witnesses are recomputed.
    pub fn to_chain(&self) -> Result<Chain> {
        Chain::new(self.matrices()?)
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidMatrix(format!("invalid {what} JSON: {e}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidMatrix(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidMatrix(format!("cannot write {}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

pub fn matrix_from_json(text: &str) -> Result<KMatrix> {
    KMatrix::try_from(parse::<MatrixFile>(text, "matrix")?)
}

pub fn matrix_to_json(m: &KMatrix) -> String {
    to_json(&MatrixFile::from(m))
}

pub fn read_matrix(path: &Path) -> Result<KMatrix> {
    matrix_from_json(&read(path)?)
}

pub fn write_matrix(path: &Path, m: &KMatrix) -> Result<()> {
    write(path, &matrix_to_json(m))
}

pub fn read_chain_file(path: &Path) -> Result<ChainFile> {
    parse(&read(path)?, "chain")
}

pub fn write_chain(path: &Path, c: &Chain) -> Result<()> {
    write(path, &to_json(&ChainFile::from(c)))
}

/// An algebra given either as shorthand (`M2(C)/C`) or as a path to an algebra JSON file.
pub fn load_algebra(arg: &str) -> Result<AlgebraSpec> {
    let path = Path::new(arg);
    if arg.ends_with(".json") || path.is_file() {
        let text = read(path)?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidAlgebra(format!("invalid algebra JSON: {e}")))
    } else {
        arg.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_matrix;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matrix_layout() {
        let m = KMatrix::diag(DivisionAlgebra::Complex, BaseField::Complex, &[KScalar::complex(1.0, -2.0), KScalar::ZERO]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&matrix_to_json(&m)).unwrap();
        assert_eq!(v["division_algebra"], "C");
        assert_eq!(v["base_field"], "C");
        assert_eq!(v["entries"][0][0], serde_json::json!([1.0, -2.0]));
        assert_eq!(v["entries"][1][0], serde_json::json!([0.0, 0.0]));
    }

    #[test]
    fn malformed_matrices() {
        let wrong_arity = r#"{"division_algebra":"H","base_field":"R","n":1,"entries":[[[1.0,2.0]]]}"#;
        assert!(matrix_from_json(wrong_arity).is_err());
        let ragged = r#"{"division_algebra":"R","base_field":"R","n":2,"entries":[[[1.0],[0.0]],[[1.0]]]}"#;
        assert!(matrix_from_json(ragged).is_err());
        let pairing = r#"{"division_algebra":"R","base_field":"C","n":1,"entries":[[[1.0]]]}"#;
        assert!(matrix_from_json(pairing).is_err());
        assert!(matrix_from_json("not json").is_err());
    }

    #[test]
    fn algebra_argument_forms() {
        assert_eq!(load_algebra("M2(H)").unwrap().dimension(), 16);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("alg.json");
        fs::write(&p, r#"{"base_field":"C","blocks":[{"division_algebra":"C","n":2},{"division_algebra":"C","n":1}]}"#).unwrap();
        let s = load_algebra(p.to_str().unwrap()).unwrap();
        assert_eq!(s.to_string(), "M2(C)+M1(C)/C");
        assert!(load_algebra(dir.path().join("missing.json").to_str().unwrap()).is_err());
    }

    #[test]
    fn chain_file_roundtrip() {
        let a = random_matrix(&mut ChaCha8Rng::seed_from_u64(2), DivisionAlgebra::Quaternion, BaseField::Real, 3);
        let c = crate::orthograph::build_maximal_chain(&a).unwrap();
        let text = to_json(&ChainFile::from(&c));
        let back: ChainFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.length, 3);
        assert_eq!(back.to_chain().unwrap(), c);
    }

    fn algebra_strategy() -> impl Strategy<Value = (DivisionAlgebra, BaseField)> {
        prop_oneof![
            Just((DivisionAlgebra::Real, BaseField::Real)),
            Just((DivisionAlgebra::Complex, BaseField::Real)),
            Just((DivisionAlgebra::Complex, BaseField::Complex)),
            Just((DivisionAlgebra::Quaternion, BaseField::Real)),
        ]
    }

    proptest! {
        #[test]
        fn roundtrip_is_bit_exact(
            (alg, field) in algebra_strategy(),
            n in 1usize..4,
            raw in proptest::collection::vec(proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO, 64),
        ) {
            let d = alg.real_dim();
            let entries = (0..n * n)
                .map(|i| KScalar::from_components(alg, &raw[i * d..(i + 1) * d]).unwrap())
                .collect();
            let m = KMatrix::new(alg, field, n, entries).unwrap();
            let back = matrix_from_json(&matrix_to_json(&m)).unwrap();
            for (x, y) in m.entries().iter().zip(back.entries()) {
                for (p, q) in x.components().iter().zip(y.components()) {
                    prop_assert_eq!(p.to_bits(), q.to_bits());
                }
            }
        }
    }
}
