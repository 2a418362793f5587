//! Group specs (schema `equivect-spec/1`): permutation generators of `G`,
//! their rotation images under `ρ̄`, and the expected image tag.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context as _, Result};
use equivect_core::catalog::{self, CatalogEntry};
use equivect_core::geometry::{geometry_field, named_rotation, ExactMat3, ImageTag, RotationAssignment};
use equivect_core::group::{FiniteGroup, Permutation, DEFAULT_ORDER_CAP};
use serde::{Deserialize, Serialize};

use crate::cyclo_json::{matrix_from_json, CycloJson};

pub const SPEC_SCHEMA: &str = "equivect-spec/1";

/// Malformed or inconsistent input; reported with exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct BadInput(pub String);

/// A generator as a 0-based image array or 1-based cycle notation such as `"(1 2 3)(4 5)"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Images(Vec<usize>),
    Cycles(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RotationSpec {
    #[serde(rename = "a_n")]
    A(u32),
    #[serde(rename = "b")]
    B(()),
    #[serde(rename = "T_gen")]
    TGen(u32),
    #[serde(rename = "O_gen")]
    OGen(u32),
    #[serde(rename = "I_gen")]
    IGen(u32),
    #[serde(rename = "matrix")]
    Matrix(Box<[[CycloJson; 3]; 3]>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub schema: String,
    pub name: String,
    /// Number of points permuted; inferred when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    pub generators: Vec<GeneratorSpec>,
    pub rho_bar: Vec<RotationSpec>,
    /// The standard subgroup `ρ̄(G)`, e.g. `"Z3"`, `"D4"`, `"T"`.
    pub image_tag: String,
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| BadInput(format!("cycle notation {s:?} must start with '('")))?;
        let end = body
            .find(')')
            .ok_or_else(|| BadInput(format!("unclosed cycle in {s:?}")))?;
        let cyc = body[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(BadInput(format!("bad point {t:?} in {s:?} (points are 1-based)"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        out.push(cyc);
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

/// 1-based cycle notation of a permutation; the identity is `"()"`.
pub fn cycle_string(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl GroupSpec {
    pub fn load(path: &Path) -> Result<GroupSpec> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<GroupSpec> {
        let spec: GroupSpec = serde_json::from_str(text).map_err(|e| BadInput(format!("malformed group spec: {e}")))?;
        if spec.schema != SPEC_SCHEMA {
            bail!(BadInput(format!(
                "unsupported schema {:?}, expected {SPEC_SCHEMA:?}",
                spec.schema
            )));
        }
        Ok(spec)
    }

    pub fn image(&self) -> Result<ImageTag> {
        self.image_tag
            .parse()
            .map_err(|_| anyhow!(BadInput(format!("unknown image tag {:?}", self.image_tag))))
    }

    /// Generators as permutations of a common point set.
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        let cycles: Vec<Option<Vec<Vec<usize>>>> = self
            .generators
            .iter()
            .map(|g| match g {
                GeneratorSpec::Images(_) => Ok(None),
                GeneratorSpec::Cycles(s) => parse_cycles(s).map(Some),
            })
            .collect::<Result<_>>()?;
        let inferred = self
            .generators
            .iter()
            .zip(&cycles)
            .map(|(g, c)| match (g, c) {
                (GeneratorSpec::Images(v), _) => v.len(),
                (_, Some(c)) => c.iter().flatten().map(|&p| p + 1).max().unwrap_or(0),
                _ => 0,
            })
            .max()
            .unwrap_or(0);
        let n = self.points.unwrap_or(inferred);
        let mut out = Vec::with_capacity(self.generators.len());
        for (k, (g, c)) in self.generators.iter().zip(cycles).enumerate() {
            let p: Permutation = match (g, c) {
                (GeneratorSpec::Images(v), _) => v.clone(),
                (_, Some(cycs)) => {
                    let mut p: Permutation = (0..n).collect();
                    let mut seen = vec![false; n];
                    for cyc in cycs {
                        for (i, &x) in cyc.iter().enumerate() {
                            if x >= n || std::mem::replace(&mut seen[x], true) {
                                bail!(BadInput(format!(
                                    "generator {k}: point {} repeated or beyond {n}",
                                    x + 1
                                )));
                            }
                            p[x] = cyc[(i + 1) % cyc.len()];
                        }
                    }
                    p
                }
                _ => unreachable!(),
            };
            if p.len() != n {
                bail!(BadInput(format!(
                    "generator {k} acts on {} points, expected {n}",
                    p.len()
                )));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// Builds `ρ̄`, verifying that it extends to a homomorphism with the declared image.
    pub fn assignment(&self) -> Result<RotationAssignment> {
        let tag = self.image()?;
        if !tag.is_finite() {
            return Err(equivect_core::Error::OutOfScope(format!("image {tag} is infinite")).into());
        }
        if self.rho_bar.len() != self.generators.len() {
            bail!(BadInput(format!(
                "{} generators but {} rho_bar entries",
                self.generators.len(),
                self.rho_bar.len()
            )));
        }
        let perms = self.permutations()?;
        let f = geometry_field(tag);
        let mats = self
            .rho_bar
            .iter()
            .map(|r| -> Result<ExactMat3> {
                Ok(match r {
                    RotationSpec::A(n) => named_rotation("a_n", *n, &f)?,
                    RotationSpec::B(()) => named_rotation("b", 0, &f)?,
                    RotationSpec::TGen(i) => named_rotation("T_gen", *i, &f)?,
                    RotationSpec::OGen(i) => named_rotation("O_gen", *i, &f)?,
                    RotationSpec::IGen(i) => named_rotation("I_gen", *i, &f)?,
                    RotationSpec::Matrix(m) => matrix_from_json(m, &f)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if perms.is_empty() {
            return Ok(RotationAssignment::new(&f, FiniteGroup::trivial(), &[], &[], tag)?);
        }
        let (g, idx) = FiniteGroup::from_permutations_indexed(&perms, DEFAULT_ORDER_CAP)?;
        Ok(RotationAssignment::new(&f, g, &idx, &mats, tag)?)
    }

    pub fn from_catalog(e: &CatalogEntry) -> GroupSpec {
        let rho_bar = e
            .images
            .iter()
            .map(|&(name, i)| match name {
                "a_n" => RotationSpec::A(i),
                "b" => RotationSpec::B(()),
                "T_gen" => RotationSpec::TGen(i),
                "O_gen" => RotationSpec::OGen(i),
                _ => RotationSpec::IGen(i),
            })
            .collect();
        GroupSpec {
            schema: SPEC_SCHEMA.into(),
            name: e.name.clone(),
            points: e.generators.first().map(Vec::len),
            generators: e
                .generators
                .iter()
                .map(|p| GeneratorSpec::Cycles(cycle_string(p)))
                .collect(),
            rho_bar,
            image_tag: e.tag.to_string(),
        }
    }

    /// A catalog entry by name (see [`catalog::NAMES`]).
    pub fn builtin(name: &str) -> Result<GroupSpec> {
        let e = catalog::entry_by_name(name).ok_or_else(|| {
            BadInput(format!(
                "unknown builtin {name:?}; known forms: {}",
                catalog::NAMES.join(", ")
            ))
        })??;
        Ok(Self::from_catalog(&e))
    }
}

/// Named entries shipped as example spec files.
pub fn example_specs() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("trivial.json", "Z1"),
        ("z3.json", "Z3"),
        ("z4.json", "Z4"),
        ("z5.json", "Z5"),
        ("z7.json", "Z7"),
        ("z6-over-z3.json", "Z6/Z3"),
        ("d3.json", "D3"),
        ("d4.json", "D4"),
        ("tetra.json", "T"),
        ("octa.json", "O"),
        ("q8xz3.json", "Q8xZ3"),
        ("q8-over-d2.json", "Q8/D2"),
        ("s3-over-z2.json", "S3/Z2"),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_matches_images() {
        let text = r#"{"schema":"equivect-spec/1","name":"D3","generators":["(1 2 3)","(2 3)"],
            "rho_bar":[{"a_n":3},{"b":null}],"image_tag":"D3"}"#;
        let spec = GroupSpec::parse(text).unwrap();
        assert_eq!(spec.permutations().unwrap(), vec![vec![1, 2, 0], vec![0, 2, 1]]);
        let a = spec.assignment().unwrap();
        assert_eq!((a.group().order(), a.tag()), (6, ImageTag::Dihedral(3)));
    }

    #[test]
    fn cycle_strings_round_trip() {
        for p in [vec![0, 1, 2], vec![1, 2, 0, 3], vec![3, 2, 1, 0]] {
            let spec = GroupSpec {
                schema: SPEC_SCHEMA.into(),
                name: "p".into(),
                points: Some(p.len()),
                generators: vec![GeneratorSpec::Cycles(cycle_string(&p))],
                rho_bar: vec![RotationSpec::B(())],
                image_tag: "Z2".into(),
            };
            assert_eq!(spec.permutations().unwrap(), vec![p]);
        }
    }

    #[test]
    fn explicit_matrix_generator() {
        let f = geometry_field(ImageTag::Cyclic(4));
        let m = crate::cyclo_json::matrix_to_json(&named_rotation("a_n", 4, &f).unwrap());
        let spec = GroupSpec {
            schema: SPEC_SCHEMA.into(),
            name: "Z4".into(),
            points: None,
            generators: vec![GeneratorSpec::Cycles("(1 2 3 4)".into())],
            rho_bar: vec![RotationSpec::Matrix(Box::new(m))],
            image_tag: "Z4".into(),
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            GroupSpec::parse(&text).unwrap().assignment().unwrap().tag(),
            ImageTag::Cyclic(4)
        );
    }

    #[test]
    fn errors_are_classified() {
        let wrong_tag =
            r#"{"schema":"equivect-spec/1","name":"x","generators":[[1,2,0]],"rho_bar":[{"a_n":3}],"image_tag":"Z5"}"#;
        assert!(GroupSpec::parse(wrong_tag).unwrap().assignment().is_err());
        let infinite = r#"{"schema":"equivect-spec/1","name":"x","generators":[],"rho_bar":[],"image_tag":"SO3"}"#;
        let err = GroupSpec::parse(infinite).unwrap().assignment().unwrap_err();
        assert!(matches!(
            err.downcast_ref::<equivect_core::Error>(),
            Some(equivect_core::Error::OutOfScope(_))
        ));
        let not_hom =
            r#"{"schema":"equivect-spec/1","name":"x","generators":[[1,2,0]],"rho_bar":[{"a_n":2}],"image_tag":"Z2"}"#;
        assert!(GroupSpec::parse(not_hom).unwrap().assignment().is_err());
        assert!(GroupSpec::parse("{").unwrap_err().downcast_ref::<BadInput>().is_some());
    }

    #[test]
    fn builtins_round_trip_through_json() {
        for name in example_specs().values() {
            let spec = GroupSpec::builtin(name).unwrap();
            let back = GroupSpec::parse(&serde_json::to_string(&spec).unwrap()).unwrap();
            assert_eq!(back, spec);
            back.assignment().unwrap();
        }
    }
}
