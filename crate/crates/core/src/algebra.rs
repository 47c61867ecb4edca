//! Descriptions of finite-dimensional algebras `M_{n₁}(K₁) ⊕ … ⊕ M_{n_ℓ}(K_ℓ)` over a base field.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matkernel::{BaseField, DivisionAlgebra};

/// One simple summand `M_n(K)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub division_algebra: DivisionAlgebra,
    pub n: usize,
}

/// A direct sum of matrix blocks over a base field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct AlgebraSpec {
    base_field: BaseField,
    blocks: Vec<Block>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    base_field: BaseField,
    blocks: Vec<Block>,
}

impl TryFrom<RawSpec> for AlgebraSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        AlgebraSpec::new(raw.base_field, raw.blocks)
    }
}

impl From<AlgebraSpec> for RawSpec {
    fn from(s: AlgebraSpec) -> Self {
        RawSpec { base_field: s.base_field, blocks: s.blocks }
    }
}

impl AlgebraSpec {
    pub fn new(base_field: BaseField, blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidAlgebra("at least one block is required".into()));
        }
        if let Some(b) = blocks.iter().find(|b| b.n == 0) {
            return Err(Error::InvalidAlgebra(format!("block M0({}) is empty", b.division_algebra)));
        }
        if base_field == BaseField::Complex {
            if let Some(b) = blocks.iter().find(|b| b.division_algebra != DivisionAlgebra::Complex) {
                return Err(Error::InvalidAlgebra(format!(
                    "M{}({}) is not an algebra over C",
                    b.n, b.division_algebra
                )));
            }
        }
        Ok(AlgebraSpec { base_field, blocks })
    }

    /// The simple algebra `M_n(K)` over `field`.
    pub fn simple(division_algebra: DivisionAlgebra, base_field: BaseField, n: usize) -> Result<Self> {
        AlgebraSpec::new(base_field, vec![Block { division_algebra, n }])
    }

    pub fn base_field(&self) -> BaseField {
        self.base_field
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_simple(&self) -> bool {
        self.blocks.len() == 1
    }

    /// The single block of a simple algebra.
    pub fn single_block(&self) -> Option<Block> {
        self.is_simple().then(|| self.blocks[0])
    }

    /// Vector-space dimension over the base field.
    pub fn dimension(&self) -> usize {
        let real: usize = self.blocks.iter().map(|b| b.n * b.n * b.division_algebra.real_dim()).sum();
        real / self.base_field.real_dim()
    }

    /// `N = Σ n_j`, the size of the block-diagonal embedding.
    pub fn total_n(&self) -> usize {
        self.blocks.iter().map(|b| b.n).sum()
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("M{}({})", b.n, b.division_algebra)).collect();
        write!(f, "{}/{}", parts.join("+"), self.base_field)
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    /// Parses `M<n>(<R|C|H>)` summands joined by `+`, optionally followed by `/R` or `/C`.
    /// The base field defaults to R; complex algebras over C must say `/C`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAlgebra(format!("cannot parse algebra {s:?}; expected e.g. M3(H) or M2(C)/C"));
        let s = s.trim();
        let (body, field) = match s.rsplit_once('/') {
            Some((body, field)) => (body, BaseField::from_symbol(field.trim())?),
            None => (s, BaseField::Real),
        };
        let mut blocks = Vec::new();
        for part in body.split('+') {
            let part = part.trim();
            let rest = part.strip_prefix('M').ok_or_else(bad)?;
            let (n, rest) = rest.split_once('(').ok_or_else(bad)?;
            let k = rest.strip_suffix(')').ok_or_else(bad)?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            blocks.push(Block { division_algebra: DivisionAlgebra::from_symbol(k.trim())?, n });
        }
        AlgebraSpec::new(field, blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_parsing() {
        let s: AlgebraSpec = "M3(H)".parse().unwrap();
        assert_eq!(s.base_field(), BaseField::Real);
        assert_eq!(s.single_block(), Some(Block { division_algebra: DivisionAlgebra::Quaternion, n: 3 }));
        assert_eq!(s.dimension(), 36);

        let c: AlgebraSpec = "M2(C)/C".parse().unwrap();
        assert_eq!(c.dimension(), 4);
        let cr: AlgebraSpec = "M2(C)".parse().unwrap();
        assert_eq!(cr.base_field(), BaseField::Real);
        assert_eq!(cr.dimension(), 8);

        let sum: AlgebraSpec = "M2(C)+M1(C)/C".parse().unwrap();
        assert_eq!((sum.dimension(), sum.total_n(), sum.is_simple()), (5, 3, false));
        assert_eq!(sum.to_string(), "M2(C)+M1(C)/C");
    }

    #[test]
    fn invalid_specs() {
        for bad in ["M2(H)/C", "M0(R)", "N2(R)", "M2(Q)", "M2(R)/Z", "M(R)", ""] {
            assert!(bad.parse::<AlgebraSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn json_validates() {
        let ok = r#"{"base_field":"C","blocks":[{"division_algebra":"C","n":2}]}"#;
        assert!(serde_json::from_str::<AlgebraSpec>(ok).is_ok());
        let bad = r#"{"base_field":"C","blocks":[{"division_algebra":"R","n":2}]}"#;
        assert!(serde_json::from_str::<AlgebraSpec>(bad).is_err());
    }
}
