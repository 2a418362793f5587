//! Cyclotomic numbers as JSON: `{"conductor": M, "coeffs": ["p/q", …]}` over
//! the power basis `1, ζ_M, …, ζ_M^{φ(M)−1}`.

use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use equivect_core::cyclotomic::{CycloNum, CyclotomicField};
use equivect_core::geometry::ExactMat3;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloJson {
    pub conductor: u32,
    pub coeffs: Vec<String>,
}

impl CycloJson {
    pub fn from_num(x: &CycloNum) -> CycloJson {
        let coeffs = x
            .coeff_ratios()
            .into_iter()
            .map(|(p, q)| {
                if q == BigInt::from(1) {
                    p.to_string()
                } else {
                    format!("{p}/{q}")
                }
            })
            .collect();
        CycloJson {
            conductor: x.conductor(),
            coeffs,
        }
    }

    pub fn to_num(&self) -> Result<CycloNum> {
        if self.conductor == 0 {
            bail!("conductor must be positive");
        }
        let f = CyclotomicField::new(self.conductor);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_str(c.trim()).map_err(|e| anyhow!("bad coefficient {c:?}: {e}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(f.from_rationals(&coeffs)?)
    }

    /// The value in `target`, which must contain the source field.
    pub fn to_num_in(&self, target: &Arc<CyclotomicField>) -> Result<CycloNum> {
        let x = self.to_num()?;
        x.promote(target)
            .with_context(|| format!("conductor {} does not divide {}", self.conductor, target.conductor()))
    }
}

pub fn matrix_from_json(rows: &[[CycloJson; 3]; 3], field: &Arc<CyclotomicField>) -> Result<ExactMat3> {
    let mut out = ExactMat3::identity(field);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            out.0[i][j] = e.to_num_in(field)?;
        }
    }
    Ok(out)
}

pub fn matrix_to_json(m: &ExactMat3) -> [[CycloJson; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| CycloJson::from_num(&m.0[i][j])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = CyclotomicField::new(12);
        for x in [f.zeta_pow(5), f.from_ratio(-3, 7), f.cos_2pi(1, 12), f.zero()] {
            let j = CycloJson::from_num(&x);
            let text = serde_json::to_string(&j).unwrap();
            let back: CycloJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_num().unwrap(), x);
        }
    }

    #[test]
    fn rejects_wrong_length_and_garbage() {
        let bad = CycloJson {
            conductor: 5,
            coeffs: vec!["1".into()],
        };
        assert!(bad.to_num().is_err());
        let bad = CycloJson {
            conductor: 1,
            coeffs: vec!["x/2".into()],
        };
        assert!(bad.to_num().is_err());
    }

    #[test]
    fn promotion_requires_divisibility() {
        let j = CycloJson::from_num(&CyclotomicField::new(3).zeta_pow(1));
        assert!(j.to_num_in(&CyclotomicField::new(12)).is_ok());
        assert!(j.to_num_in(&CyclotomicField::new(20)).is_err());
    }
}
