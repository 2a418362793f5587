//! Ready-made actions used by the tests, the invariant suite and the CLI.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{
    geometry_field, named_rotation, standard_rotations, standard_subgroup, ExactMat3, ImageTag, RotationAssignment,
};
use crate::group::{FiniteGroup, Permutation, DEFAULT_ORDER_CAP};

/// A generator image named as in group specs: `("a_n", n)`, `("b", 0)`,
/// `("T_gen", i)`, `("O_gen", i)` or `("I_gen", i)`.
pub type NamedRotation = (&'static str, u32);

/// Permutation generators with named rotation images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub generators: Vec<Permutation>,
    pub images: Vec<NamedRotation>,
    pub tag: ImageTag,
}

impl CatalogEntry {
    pub fn assignment(&self) -> Result<RotationAssignment> {
        let f = geometry_field(self.tag);
        let mats = self
            .images
            .iter()
            .map(|&(n, i)| named_rotation(n, i, &f))
            .collect::<Result<Vec<_>>>()?;
        from_permutations(&self.generators, &mats, self.tag)
    }
}

/// `ρ̄` given by images of permutation generators.
pub fn from_permutations(gens: &[Permutation], images: &[ExactMat3], tag: ImageTag) -> Result<RotationAssignment> {
    let f = geometry_field(tag);
    let (g, idx) = FiniteGroup::from_permutations_indexed(gens, DEFAULT_ORDER_CAP)?;
    RotationAssignment::new(&f, g, &idx, images, tag)
}

fn cycle(n: usize) -> Permutation {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn entry(name: &str, generators: Vec<Permutation>, images: Vec<NamedRotation>, tag: ImageTag) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        generators,
        images,
        tag,
    }
}

/// The standard rotation group itself, acting faithfully.
///
/// Cyclic and dihedral groups act on `n` points; the polyhedral groups act on
/// themselves by left multiplication.
pub fn standard(tag: ImageTag) -> Result<CatalogEntry> {
    let name = format!("{tag}");
    match tag {
        ImageTag::Cyclic(n) => {
            let gens = if n > 1 { vec![cycle(n as usize)] } else { Vec::new() };
            let imgs = if n > 1 { vec![("a_n", n)] } else { Vec::new() };
            Ok(entry(&name, gens, imgs, tag))
        }
        ImageTag::Dihedral(n) => {
            let m = n as usize;
            // on the vertices of a regular n-gon; n = 2 uses the square's diagonals
            let (rot, refl) = if m == 2 {
                (vec![2, 3, 0, 1], vec![0, 3, 2, 1])
            } else {
                (cycle(m), (0..m).map(|i| (m - i) % m).collect())
            };
            Ok(entry(&name, vec![rot, refl], vec![("a_n", n), ("b", 0)], tag))
        }
        ImageTag::Tetrahedral | ImageTag::Octahedral | ImageTag::Icosahedral => {
            let f = geometry_field(tag);
            let elems: Vec<ExactMat3> = standard_subgroup(tag, &f)?.into_iter().collect();
            let index: BTreeMap<&ExactMat3, usize> = elems.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let gens = standard_rotations(tag, &f)?;
            let perms = gens
                .iter()
                .map(|g| elems.iter().map(|m| index[&g.mul(m)]).collect())
                .collect();
            let label = match tag {
                ImageTag::Tetrahedral => "T_gen",
                ImageTag::Octahedral => "O_gen",
                _ => "I_gen",
            };
            let imgs = (0..gens.len() as u32).map(|i| (label, i)).collect();
            Ok(entry(&name, perms, imgs, tag))
        }
        _ => Err(Error::OutOfScope(format!("image {tag} is infinite"))),
    }
}

/// `Z_{nk}` acting through `Z_n`; the kernel is `Z_k`.
pub fn cyclic_extension(n: u32, k: u32) -> CatalogEntry {
    let name = format!("Z{}/Z{n}", n * k);
    if n * k == 1 {
        return entry(&name, Vec::new(), Vec::new(), ImageTag::Cyclic(1));
    }
    entry(
        &name,
        vec![cycle((n * k) as usize)],
        vec![("a_n", n)],
        ImageTag::Cyclic(n),
    )
}

fn q8_generators() -> [Permutation; 2] {
    [[2, 3, 1, 0, 6, 7, 5, 4].to_vec(), [4, 5, 7, 6, 1, 0, 2, 3].to_vec()]
}

/// `Q_8 × Z_3` acting through `Z_3`; the kernel is `Q_8`, whose irreducible
/// of degree 2 is row 4.
pub fn q8_times_z3() -> CatalogEntry {
    let [i, j] = q8_generators();
    let pad = |p: Permutation| p.into_iter().chain(8..11).collect::<Permutation>();
    let c: Permutation = (0..8).chain([9, 10, 8]).collect();
    entry(
        "Q8xZ3",
        vec![pad(i), pad(j), c],
        vec![("a_n", 1), ("a_n", 1), ("a_n", 3)],
        ImageTag::Cyclic(3),
    )
}

/// `Q_8` acting through `Q_8/{±1} = D_2`; the kernel is the centre.
pub fn q8_over_d2() -> CatalogEntry {
    entry(
        "Q8/D2",
        q8_generators().to_vec(),
        vec![("a_n", 2), ("b", 0)],
        ImageTag::Dihedral(2),
    )
}

/// `S_3` acting through its sign onto `Z_2`; the kernel is `A_3 = Z_3`.
pub fn s3_over_z2() -> CatalogEntry {
    entry(
        "S3/Z2",
        vec![[1, 2, 0].to_vec(), [1, 0, 2].to_vec()],
        vec![("a_n", 1), ("a_n", 2)],
        ImageTag::Cyclic(2),
    )
}

/// Catalog entries by name, as accepted by the CLI.
pub fn entry_by_name(name: &str) -> Option<Result<CatalogEntry>> {
    Some(match name {
        "Q8xZ3" => Ok(q8_times_z3()),
        "Q8/D2" => Ok(q8_over_d2()),
        "S3/Z2" => Ok(s3_over_z2()),
        _ => {
            if let Some((a, b)) = name.split_once('/') {
                let n = a.strip_prefix('Z')?.parse::<u32>().ok()?;
                let m = b.strip_prefix('Z')?.parse::<u32>().ok()?;
                if m == 0 || n % m != 0 {
                    return None;
                }
                Ok(cyclic_extension(m, n / m))
            } else {
                let tag: ImageTag = name.parse().ok()?;
                if !tag.is_finite() || tag == ImageTag::Dihedral(1) {
                    return None;
                }
                standard(tag)
            }
        }
    })
}

/// The assignment of a named catalog entry.
pub fn by_name(name: &str) -> Option<Result<RotationAssignment>> {
    entry_by_name(name).map(|e| e?.assignment())
}

pub const NAMES: &[&str] = &["Z<n>", "D<n>", "T", "O", "I", "Z<nk>/Z<n>", "Q8xZ3", "Q8/D2", "S3/Z2"];
