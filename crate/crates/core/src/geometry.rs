//! Exact rotation groups, the equivariant polyhedra and their stabilizers.
//!
//! All coordinates live in one real subfield of `Q(ζ_M)` with
//! `M = lcm(4n, 20)`, so every stabilizer and transporter test is an exact
//! equality test.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::cyclotomic::{lcm, CycloNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::group::{closure, FiniteGroup, Subgroup};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactVec3(pub [CycloNum; 3]);

impl ExactVec3 {
    pub fn new(x: CycloNum, y: CycloNum, z: CycloNum) -> Self {
        ExactVec3([x, y, z])
    }

    pub fn from_ints(f: &Arc<CyclotomicField>, v: [i64; 3]) -> Self {
        ExactVec3(v.map(|x| f.from_int(x)))
    }

    pub fn from_ratios(f: &Arc<CyclotomicField>, v: [(i64, i64); 3]) -> Self {
        ExactVec3(v.map(|(p, q)| f.from_ratio(p, q)))
    }

    pub fn add(&self, o: &ExactVec3) -> ExactVec3 {
        ExactVec3(core::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn sub(&self, o: &ExactVec3) -> ExactVec3 {
        ExactVec3(core::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }

    pub fn neg(&self) -> ExactVec3 {
        ExactVec3(core::array::from_fn(|i| -&self.0[i]))
    }

    pub fn scale(&self, c: &CycloNum) -> ExactVec3 {
        ExactVec3(core::array::from_fn(|i| c * &self.0[i]))
    }

    pub fn dot(&self, o: &ExactVec3) -> CycloNum {
        &(&(&self.0[0] * &o.0[0]) + &(&self.0[1] * &o.0[1])) + &(&self.0[2] * &o.0[2])
    }

    pub fn cross(&self, o: &ExactVec3) -> ExactVec3 {
        let [a, b, c] = &self.0;
        let [x, y, z] = &o.0;
        ExactVec3([&(b * z) - &(c * y), &(c * x) - &(a * z), &(a * y) - &(b * x)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(CycloNum::is_zero)
    }

    pub fn is_parallel(&self, o: &ExactVec3) -> bool {
        self.cross(o).is_zero()
    }

    pub fn midpoint(&self, o: &ExactVec3) -> ExactVec3 {
        let half = self.0[0].field().from_ratio(1, 2);
        self.add(o).scale(&half)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.clone().map(|c| c.eval().re)
    }
}

impl Ord for ExactVec3 {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.cmp_repr(b))
            .find(|c| c.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for ExactVec3 {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for ExactVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.to_f64();
        write!(f, "({x:.4}, {y:.4}, {z:.4})")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMat3(pub [[CycloNum; 3]; 3]);

impl ExactMat3 {
    pub fn identity(f: &Arc<CyclotomicField>) -> Self {
        Self::from_ints(f, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn from_ints(f: &Arc<CyclotomicField>, m: [[i64; 3]; 3]) -> Self {
        ExactMat3(m.map(|r| r.map(|x| f.from_int(x))))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.0[0][0].field()
    }

    pub fn mul(&self, o: &ExactMat3) -> ExactMat3 {
        ExactMat3(core::array::from_fn(|i| {
            core::array::from_fn(|j| {
                let mut acc = &self.0[i][0] * &o.0[0][j];
                for k in 1..3 {
                    acc = acc + &self.0[i][k] * &o.0[k][j];
                }
                acc
            })
        }))
    }

    pub fn apply(&self, v: &ExactVec3) -> ExactVec3 {
        ExactVec3(core::array::from_fn(|i| {
            &(&(&self.0[i][0] * &v.0[0]) + &(&self.0[i][1] * &v.0[1])) + &(&self.0[i][2] * &v.0[2])
        }))
    }

    pub fn transpose(&self) -> ExactMat3 {
        ExactMat3(core::array::from_fn(|i| core::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn neg(&self) -> ExactMat3 {
        ExactMat3(self.0.clone().map(|r| r.map(|x| -x)))
    }

    pub fn det(&self) -> CycloNum {
        let r = |i: usize| ExactVec3(self.0[i].clone());
        r(0).dot(&r(1).cross(&r(2)))
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().flatten().all(CycloNum::is_real)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.is_real() && self.transpose().mul(self) == Self::identity(self.field())
    }

    pub fn is_rotation(&self) -> bool {
        self.is_orthogonal() && self.det().is_one()
    }

    pub fn to_f64(&self) -> [[f64; 3]; 3] {
        self.0.clone().map(|r| r.map(|c| c.eval().re))
    }
}

impl Ord for ExactMat3 {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0
            .iter()
            .flatten()
            .zip(o.0.iter().flatten())
            .map(|(a, b)| a.cmp_repr(b))
            .find(|c| c.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for ExactMat3 {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for ExactMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_f64())
    }
}

/// The closed subgroups of `SO(3)` up to conjugacy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ImageTag {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    SO2,
    O2,
    SO3,
}

impl ImageTag {
    pub fn is_finite(self) -> bool {
        !matches!(self, ImageTag::SO2 | ImageTag::O2 | ImageTag::SO3)
    }

    pub fn order(self) -> Option<usize> {
        Some(match self {
            ImageTag::Cyclic(n) => n as usize,
            ImageTag::Dihedral(n) => 2 * n as usize,
            ImageTag::Tetrahedral => 12,
            ImageTag::Octahedral => 24,
            ImageTag::Icosahedral => 60,
            _ => return None,
        })
    }

    /// `n` for `Z_n` and `D_n`, `1` otherwise.
    pub fn rotation_order(self) -> u32 {
        match self {
            ImageTag::Cyclic(n) | ImageTag::Dihedral(n) => n.max(1),
            _ => 1,
        }
    }

    /// The regime with two bundle classes per admissible triple.
    pub fn is_cyclic_odd(self) -> bool {
        matches!(self, ImageTag::Cyclic(n) if n % 2 == 1)
    }
}

impl fmt::Display for ImageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageTag::Cyclic(n) => write!(f, "Z{n}"),
            ImageTag::Dihedral(n) => write!(f, "D{n}"),
            ImageTag::Tetrahedral => f.write_str("T"),
            ImageTag::Octahedral => f.write_str("O"),
            ImageTag::Icosahedral => f.write_str("I"),
            ImageTag::SO2 => f.write_str("SO2"),
            ImageTag::O2 => f.write_str("O2"),
            ImageTag::SO3 => f.write_str("SO3"),
        }
    }
}

impl core::str::FromStr for ImageTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<ImageTag> {
        let num = |rest: &str| {
            rest.parse::<u32>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::InvalidInput(format!("bad image tag {s:?}")))
        };
        match s {
            "T" => Ok(ImageTag::Tetrahedral),
            "O" => Ok(ImageTag::Octahedral),
            "I" => Ok(ImageTag::Icosahedral),
            "SO2" => Ok(ImageTag::SO2),
            "O2" => Ok(ImageTag::O2),
            "SO3" => Ok(ImageTag::SO3),
            _ if s.starts_with('Z') => Ok(ImageTag::Cyclic(num(&s[1..])?)),
            _ if s.starts_with('D') => Ok(ImageTag::Dihedral(num(&s[1..])?)),
            _ => Err(Error::InvalidInput(format!("bad image tag {s:?}"))),
        }
    }
}

/// Coordinate field for a given image: conductor `lcm(4n, 20)`.
pub fn geometry_field(tag: ImageTag) -> Arc<CyclotomicField> {
    CyclotomicField::new(lcm(4 * tag.rotation_order(), 20))
}

/// Rotation through `2π/n` about the z-axis.
pub fn rotation_a(f: &Arc<CyclotomicField>, n: u32) -> ExactMat3 {
    let (c, s) = (f.cos_2pi(1, n), f.sin_2pi(1, n));
    let (z, o) = (f.zero(), f.one());
    ExactMat3([[c.clone(), -&s, z.clone()], [s, c, z.clone()], [z.clone(), z, o]])
}

/// Rotation through `π` about the x-axis.
pub fn rotation_b(f: &Arc<CyclotomicField>) -> ExactMat3 {
    ExactMat3::from_ints(f, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
}

/// The cyclic coordinate permutation `(x, y, z) ↦ (z, x, y)`.
pub fn rotation_cycle(f: &Arc<CyclotomicField>) -> ExactMat3 {
    ExactMat3::from_ints(f, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
}

/// A 5-fold rotation preserving the icosahedron on the cyclic permutations of `(0, ±φ, ±1)`.
pub fn rotation_five(f: &Arc<CyclotomicField>) -> ExactMat3 {
    let half = f.from_ratio(1, 2);
    let phi = &(&f.one() + &f.sqrt5()) * &half;
    let psi = &phi - &f.one();
    let (p, q, o) = (&phi * &half, &psi * &half, half.clone());
    ExactMat3([[o.clone(), -&p, q.clone()], [p.clone(), q.clone(), -&o], [q, o, p]])
}

/// Conjugates `{id, b}` onto `{id, a_2}`.
pub fn d1_conjugator(f: &Arc<CyclotomicField>) -> ExactMat3 {
    ExactMat3::from_ints(f, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
}

/// Generators of the standard-position subgroup.
pub fn standard_rotations(tag: ImageTag, f: &Arc<CyclotomicField>) -> Result<Vec<ExactMat3>> {
    Ok(match tag {
        ImageTag::Cyclic(1) => vec![],
        ImageTag::Cyclic(n) => vec![rotation_a(f, n)],
        ImageTag::Dihedral(1) => vec![rotation_b(f)],
        ImageTag::Dihedral(n) => vec![rotation_a(f, n), rotation_b(f)],
        ImageTag::Tetrahedral => vec![rotation_cycle(f), rotation_b(f)],
        ImageTag::Octahedral => vec![rotation_cycle(f), rotation_b(f), rotation_a(f, 4)],
        ImageTag::Icosahedral => vec![rotation_cycle(f), rotation_b(f), rotation_five(f)],
        _ => return Err(Error::OutOfScope(format!("image {tag} is infinite"))),
    })
}

/// Every element of the standard-position subgroup.
pub fn standard_subgroup(tag: ImageTag, f: &Arc<CyclotomicField>) -> Result<BTreeSet<ExactMat3>> {
    let gens = standard_rotations(tag, f)?;
    let (elems, _) = closure(ExactMat3::identity(f), &gens, |a, b| a.mul(b), 1000)?;
    Ok(elems.into_iter().collect())
}

/// Generator named in a group spec: `a_n`, `b`, or one of the polyhedral generators.
pub fn named_rotation(name: &str, index: u32, f: &Arc<CyclotomicField>) -> Result<ExactMat3> {
    let pick = |tag: ImageTag| -> Result<ExactMat3> {
        standard_rotations(tag, f)?
            .into_iter()
            .nth(index as usize)
            .ok_or_else(|| Error::InvalidInput(format!("{name} has no generator {index}")))
    };
    match name {
        "a_n" if index >= 1 && f.conductor().is_multiple_of(index) && f.conductor().is_multiple_of(4) => {
            Ok(rotation_a(f, index))
        }
        "a_n" if index >= 1 => Err(Error::InvalidInput(format!(
            "a_n({index}) is not defined over the coordinate field of conductor {}",
            f.conductor()
        ))),
        "b" => Ok(rotation_b(f)),
        "T_gen" => pick(ImageTag::Tetrahedral),
        "O_gen" => pick(ImageTag::Octahedral),
        "I_gen" => pick(ImageTag::Icosahedral),
        _ => Err(Error::InvalidInput(format!("unknown rotation {name}({index})"))),
    }
}

fn representable(tag: ImageTag, m: u32) -> bool {
    m.is_multiple_of(4)
        && match tag {
            ImageTag::Cyclic(n) | ImageTag::Dihedral(n) => m.is_multiple_of(n),
            ImageTag::Icosahedral => m.is_multiple_of(5),
            _ => true,
        }
}

/// Which standard subgroup a finite image is, and the conjugation (if any)
/// that moves it there.
pub fn recognize_image(image: &BTreeSet<ExactMat3>, f: &Arc<CyclotomicField>) -> Result<(ImageTag, Option<ExactMat3>)> {
    let k = image.len() as u32;
    let mut candidates = vec![ImageTag::Cyclic(k)];
    if k.is_multiple_of(2) && k >= 4 {
        candidates.push(ImageTag::Dihedral(k / 2));
    }
    candidates.extend(match k {
        12 => Some(ImageTag::Tetrahedral),
        24 => Some(ImageTag::Octahedral),
        60 => Some(ImageTag::Icosahedral),
        _ => None,
    });
    for tag in candidates {
        if !representable(tag, f.conductor()) {
            continue;
        }
        if &standard_subgroup(tag, f)? == image {
            return Ok((tag, None));
        }
    }
    if k == 2 && image.contains(&rotation_b(f)) {
        return Ok((ImageTag::Cyclic(2), Some(d1_conjugator(f))));
    }
    Err(Error::NonStandardImage(format!(
        "image of order {k} is not one of the standard subgroups Z_n, D_n, T, O, I"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    S2,
    RP2,
}

fn fixes(m: &ExactMat3, p: &ExactVec3) -> Option<i8> {
    let q = m.apply(p);
    if &q == p {
        Some(1)
    } else if q == p.neg() {
        Some(-1)
    } else {
        None
    }
}

/// Elements of `group` fixing `p` (S2) or the line through `p` (RP2).
pub fn stabilizer_point(group: &FiniteGroup, mats: &[ExactMat3], p: &ExactVec3, space: Space) -> Subgroup {
    Subgroup::filter(group, |g| {
        matches!(
            (space, fixes(&mats[g], p)),
            (Space::S2, Some(1)) | (Space::RP2, Some(_))
        )
    })
    .expect("point stabilizers are subgroups")
}

/// Elements fixing a polyline pointwise; in RP2 mode with one common sign.
pub fn stabilizer_chain(
    group: &FiniteGroup,
    mats: &[ExactMat3],
    chain: &[ExactVec3],
    space: Space,
) -> Result<Subgroup> {
    if chain.windows(2).any(|w| w[0].is_parallel(&w[1])) || chain.iter().any(ExactVec3::is_zero) {
        return Err(Error::DegenerateChain);
    }
    Ok(Subgroup::filter(group, |g| {
        let signs: Vec<Option<i8>> = chain.iter().map(|p| fixes(&mats[g], p)).collect();
        match space {
            Space::S2 => signs.iter().all(|&s| s == Some(1)),
            Space::RP2 => signs[0].is_some() && signs.iter().all(|&s| s == signs[0]),
        }
    })
    .expect("chain stabilizers are subgroups"))
}

/// Some `g` with `g·p = q` (S2) or `g·p = ±q` (RP2), smallest index first.
pub fn transporter(
    group: &FiniteGroup,
    mats: &[ExactMat3],
    p: &ExactVec3,
    q: &ExactVec3,
    space: Space,
) -> Option<usize> {
    (0..group.order()).find(|&g| {
        let r = mats[g].apply(p);
        &r == q || (space == Space::RP2 && r == q.neg())
    })
}

/// A homomorphism `ρ̄ : G → SO(3)` whose image is a standard subgroup.
#[derive(Debug, Clone)]
pub struct RotationAssignment {
    field: Arc<CyclotomicField>,
    group: FiniteGroup,
    matrices: Vec<ExactMat3>,
    tag: ImageTag,
}

impl RotationAssignment {
    /// Extends generator images to a homomorphism and checks the image against `expected`.
    pub fn new(
        field: &Arc<CyclotomicField>,
        group: FiniteGroup,
        gens: &[usize],
        gen_images: &[ExactMat3],
        expected: ImageTag,
    ) -> Result<Self> {
        if !expected.is_finite() {
            return Err(Error::OutOfScope(format!("image {expected} is infinite")));
        }
        for (k, m) in gen_images.iter().enumerate() {
            if !m.is_rotation() {
                return Err(Error::InvalidInput(format!("generator image {k} is not a rotation")));
            }
        }
        let mats = group.extend_hom(
            gens,
            gen_images,
            ExactMat3::identity(field),
            |a, b| a.mul(b),
            |a, b| a == b,
        )?;
        let a = Self::from_matrices(field, group, mats)?;
        if a.tag != expected {
            return Err(Error::NonStandardImage(format!(
                "image is {} but {expected} was declared",
                a.tag
            )));
        }
        Ok(a)
    }

    /// Wraps per-element matrices, recognising the image and moving `{id, b}` onto `Z_2`.
    pub fn from_matrices(field: &Arc<CyclotomicField>, group: FiniteGroup, matrices: Vec<ExactMat3>) -> Result<Self> {
        assert_eq!(matrices.len(), group.order());
        let image: BTreeSet<ExactMat3> = matrices.iter().cloned().collect();
        let (tag, conj) = recognize_image(&image, field)?;
        let matrices = match conj {
            Some(p) => {
                let pt = p.transpose();
                matrices.iter().map(|m| p.mul(m).mul(&pt)).collect()
            }
            None => matrices,
        };
        Ok(RotationAssignment {
            field: field.clone(),
            group,
            matrices,
            tag,
        })
    }

    /// The restriction to a subgroup, as an assignment on the subgroup's own indexing.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        let group = sub.to_group(&self.group);
        let mats = sub.members().iter().map(|&x| self.matrices[x].clone()).collect();
        Self::from_matrices(&self.field, group, mats)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn matrices(&self) -> &[ExactMat3] {
        &self.matrices
    }

    pub fn matrix(&self, g: usize) -> &ExactMat3 {
        &self.matrices[g]
    }

    pub fn tag(&self) -> ImageTag {
        self.tag
    }

    /// `ker ρ̄`, which is also the kernel of the induced action on `RP²`.
    pub fn kernel(&self) -> Subgroup {
        let id = ExactMat3::identity(&self.field);
        Subgroup::filter(&self.group, |g| self.matrices[g] == id).expect("kernel is a subgroup")
    }

    /// `k` with `ρ̄(g) = a_n^k`, for cyclic and dihedral images.
    pub fn rotation_power(&self, g: usize) -> Option<u32> {
        let n = self.tag.rotation_order();
        let a = rotation_a(&self.field, n);
        let mut p = ExactMat3::identity(&self.field);
        for k in 0..n {
            if p == self.matrices[g] {
                return Some(k);
            }
            p = p.mul(&a);
        }
        None
    }

    pub fn stabilizer_point(&self, p: &ExactVec3, space: Space) -> Subgroup {
        stabilizer_point(&self.group, &self.matrices, p, space)
    }

    pub fn stabilizer_chain(&self, chain: &[ExactVec3], space: Space) -> Result<Subgroup> {
        stabilizer_chain(&self.group, &self.matrices, chain, space)
    }

    pub fn transporter(&self, p: &ExactVec3, q: &ExactVec3, space: Space) -> Option<usize> {
        transporter(&self.group, &self.matrices, p, q, space)
    }
}

/// `G × Z` acting on `S²` through `ρ̂(g, g₀^j) = ρ̄(g)·(−id)^j`.
///
/// Element `(g, j)` has index `2g + j`, so `p₁` is `x ↦ x / 2`.
#[derive(Debug, Clone)]
pub struct Covering {
    group: FiniteGroup,
    matrices: Vec<ExactMat3>,
}

impl Covering {
    pub fn new(a: &RotationAssignment) -> Covering {
        let group = FiniteGroup::direct_product(a.group(), &FiniteGroup::cyclic(2));
        let matrices = (0..group.order())
            .map(|x| {
                let m = a.matrix(x / 2);
                if x % 2 == 0 {
                    m.clone()
                } else {
                    m.neg()
                }
            })
            .collect();
        Covering { group, matrices }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn matrices(&self) -> &[ExactMat3] {
        &self.matrices
    }

    pub fn lift(g: usize, j: usize) -> usize {
        2 * g + j
    }

    pub fn p1(x: usize) -> usize {
        x / 2
    }

    /// The element `g₀ = (id, −id)`.
    pub fn g0() -> usize {
        1
    }

    pub fn kernel(&self) -> Subgroup {
        let id = ExactMat3::identity(self.matrices[0].field());
        Subgroup::filter(&self.group, |x| self.matrices[x] == id).expect("kernel is a subgroup")
    }

    pub fn stabilizer_point(&self, p: &ExactVec3) -> Subgroup {
        stabilizer_point(&self.group, &self.matrices, p, Space::S2)
    }

    pub fn stabilizer_chain(&self, chain: &[ExactVec3]) -> Result<Subgroup> {
        stabilizer_chain(&self.group, &self.matrices, chain, Space::S2)
    }

    pub fn transporter(&self, p: &ExactVec3, q: &ExactVec3) -> Option<usize> {
        transporter(&self.group, &self.matrices, p, q, Space::S2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelTag {
    /// Bipyramid over the regular `m`-gon; `m = 2` uses two polyline equator edges.
    K(u32),
    Octa,
    Icosa,
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelTag::K(m) => write!(f, "K_{m}"),
            ModelTag::Octa => f.write_str("K_octa"),
            ModelTag::Icosa => f.write_str("K_icosa"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    /// Point indices along the edge, endpoints first and last.
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub label: String,
    pub triangles: Vec<[usize; 3]>,
}

impl Face {
    pub fn point_set(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.triangles.iter().flatten().copied().collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// An equivariant cell structure on `S²` with the distinguished points and chains.
#[derive(Debug, Clone)]
pub struct PolyhedralModel {
    tag: ModelTag,
    points: Vec<ExactVec3>,
    point_labels: Vec<String>,
    vertex_count: usize,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    skeleton: Vec<usize>,
    d_minus: ExactVec3,
    d0: ExactVec3,
    d1: ExactVec3,
    domain: Vec<ExactVec3>,
}

fn bipyramid(f: &Arc<CyclotomicField>, m: u32) -> PolyhedralModel {
    let mut points = Vec::new();
    let mut labels = Vec::new();
    if m == 2 {
        points.push(ExactVec3::from_ints(f, [1, 0, 0]));
        points.push(ExactVec3::from_ints(f, [-1, 0, 0]));
    } else {
        for i in 0..m {
            points.push(ExactVec3::new(f.cos_2pi(i as i64, m), f.sin_2pi(i as i64, m), f.zero()));
        }
    }
    labels.extend((0..m).map(|i| format!("v{i}")));
    points.push(ExactVec3::from_ints(f, [0, 0, -1]));
    points.push(ExactVec3::from_ints(f, [0, 0, 1]));
    labels.push("S".into());
    labels.push("N".into());
    let (s, n) = (m as usize, m as usize + 1);
    let vertex_count = points.len();
    if m == 2 {
        points.push(ExactVec3::from_ints(f, [0, 1, 0]));
        points.push(ExactVec3::from_ints(f, [0, -1, 0]));
        labels.push("w0".into());
        labels.push("w1".into());
    }
    let m = m as usize;
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    for i in 0..m {
        let j = (i + 1) % m;
        let path = if m == 2 {
            vec![i, vertex_count + i, j]
        } else {
            vec![i, j]
        };
        let tris = |pole: usize| -> Vec<[usize; 3]> { path.windows(2).map(|w| [w[0], w[1], pole]).collect() };
        faces.push(Face {
            label: format!("f{i}S"),
            triangles: tris(s),
        });
        faces.push(Face {
            label: format!("f{i}N"),
            triangles: tris(n),
        });
        edges.push(Edge {
            label: format!("e{i}"),
            path,
        });
    }
    for i in 0..m {
        edges.push(Edge {
            label: format!("v{i}S"),
            path: vec![i, s],
        });
        edges.push(Edge {
            label: format!("v{i}N"),
            path: vec![i, n],
        });
    }
    PolyhedralModel {
        tag: ModelTag::K(m as u32),
        points,
        point_labels: labels,
        vertex_count,
        edges,
        faces,
        skeleton: (0..m).collect(),
        d_minus: ExactVec3::from_ints(f, [0, 0, -1]),
        d0: ExactVec3::from_ints(f, [0, 0, 0]),
        d1: ExactVec3::from_ints(f, [0, 0, 0]),
        domain: Vec::new(),
    }
}

/// Simplicial polyhedron from its vertices, `v0, v1, v2` first (clockwise around `f⁻¹`).
fn simplicial(tag: ModelTag, points: Vec<ExactVec3>, extra_labels: &[&str], edge_sq: &CycloNum) -> PolyhedralModel {
    let n = points.len();
    let adj = |a: usize, b: usize| {
        let d = points[a].sub(&points[b]);
        &d.dot(&d) == edge_sq
    };
    let mut labels: Vec<String> = (0..3).map(|i| format!("v{i}")).collect();
    labels.extend(extra_labels.iter().map(|s| s.to_string()));
    labels.extend((labels.len()..n).map(|i| format!("u{i}")));
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if adj(a, b) {
                let label = match (a, b) {
                    (0, 1) => "e0".into(),
                    (1, 2) => "e1".into(),
                    (0, 2) => "e2".into(),
                    _ => format!("[{},{}]", labels[a], labels[b]),
                };
                edges.push(Edge {
                    label,
                    path: vec![a, b],
                });
            }
        }
    }
    let mut faces = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj(a, b) && adj(b, c) && adj(a, c) {
                    let tri = [a, b, c];
                    let has = |x: usize, y: usize| tri.contains(&x) && tri.contains(&y);
                    let label = if tri == [0, 1, 2] {
                        "f-1".into()
                    } else if has(0, 1) {
                        "f0".into()
                    } else if has(1, 2) {
                        "f1".into()
                    } else if has(0, 2) {
                        "f2".into()
                    } else {
                        format!("[{},{},{}]", labels[a], labels[b], labels[c])
                    };
                    faces.push(Face {
                        label,
                        triangles: vec![tri],
                    });
                }
            }
        }
    }
    let f = points[0].0[0].field().clone();
    let third = f.from_ratio(1, 3);
    let bary = points[0].add(&points[1]).add(&points[2]).scale(&third);
    let skeleton = (0..edges.len()).collect();
    PolyhedralModel {
        tag,
        vertex_count: n,
        points,
        point_labels: labels,
        edges,
        faces,
        skeleton,
        d_minus: bary,
        d0: ExactVec3::from_ints(&f, [0, 0, 0]),
        d1: ExactVec3::from_ints(&f, [0, 0, 0]),
        domain: Vec::new(),
    }
}

fn octahedron(f: &Arc<CyclotomicField>) -> PolyhedralModel {
    let pts = [[1, 0, 0], [0, 1, 0], [0, 0, -1], [0, 0, 1], [-1, 0, 0], [0, -1, 0]]
        .map(|v| ExactVec3::from_ints(f, v))
        .to_vec();
    simplicial(ModelTag::Octa, pts, &["N", "-v0", "-v1"], &f.from_int(2))
}

fn icosahedron(f: &Arc<CyclotomicField>) -> PolyhedralModel {
    let phi = &(&f.one() + &f.sqrt5()) * &f.from_ratio(1, 2);
    let (o, z) = (f.one(), f.zero());
    let mut pts = vec![
        ExactVec3::new(phi.clone(), o.clone(), z.clone()),
        ExactVec3::new(phi.clone(), -&o, z.clone()),
        ExactVec3::new(o.clone(), z.clone(), phi.clone()),
    ];
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            let base = [z.clone(), &phi * &f.from_int(s1), &o * &f.from_int(s2)];
            for c in 0..3 {
                let v = ExactVec3(core::array::from_fn(|i| base[(i + 3 - c) % 3].clone()));
                if !pts.contains(&v) {
                    pts.push(v);
                }
            }
        }
    }
    simplicial(ModelTag::Icosa, pts, &[], &f.from_int(4))
}

/// The Table 1 model for an assignment's image.
pub fn build_model(a: &RotationAssignment) -> Result<PolyhedralModel> {
    let f = a.field();
    let (mut model, half) = match a.tag() {
        ImageTag::Cyclic(n) if n % 2 == 1 => (bipyramid(f, 2 * n), false),
        ImageTag::Cyclic(n) => (bipyramid(f, n), false),
        ImageTag::Dihedral(1) => return Err(Error::NonStandardImage("D1 is handled through its conjugate Z2".into())),
        ImageTag::Dihedral(n) if n % 2 == 1 => (bipyramid(f, 2 * n), true),
        ImageTag::Dihedral(n) => (bipyramid(f, n), true),
        ImageTag::Tetrahedral => (octahedron(f), false),
        ImageTag::Octahedral => (octahedron(f), true),
        ImageTag::Icosahedral => (icosahedron(f), true),
        tag => return Err(Error::OutOfScope(format!("image {tag} is infinite"))),
    };
    let e0 = model.edges[0].path.clone();
    debug_assert!(model.edges[0].label == "e0");
    let (v0, v1) = (
        model.points[e0[0]].clone(),
        model.points[*e0.last().expect("edge")].clone(),
    );
    model.d0 = v0.clone();
    if half {
        // K_2 edges are polylines whose middle point is the barycenter on the sphere
        let mid = if e0.len() == 3 {
            model.points[e0[1]].clone()
        } else {
            v0.midpoint(&v1)
        };
        model.d1 = mid.clone();
        model.domain = vec![v0, mid];
    } else {
        model.d1 = v1;
        model.domain = e0.iter().map(|&i| model.points[i].clone()).collect();
    }
    if model.d0 == model.d1 {
        return Err(Error::Inconsistent(
            "endpoints of the fundamental domain coincide".into(),
        ));
    }
    Ok(model)
}

impl PolyhedralModel {
    pub fn tag(&self) -> ModelTag {
        self.tag
    }

    pub fn points(&self) -> &[ExactVec3] {
        &self.points
    }

    pub fn point_labels(&self) -> &[String] {
        &self.point_labels
    }

    /// Points `0..vertex_count` are vertices; the rest subdivide polyline edges.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Number of equator vertices for bipyramids.
    pub fn polygon(&self) -> Option<u32> {
        match self.tag {
            ModelTag::K(m) => Some(m),
            _ => None,
        }
    }

    pub fn d_minus(&self) -> &ExactVec3 {
        &self.d_minus
    }

    pub fn d0(&self) -> &ExactVec3 {
        &self.d0
    }

    pub fn d1(&self) -> &ExactVec3 {
        &self.d1
    }

    /// `(d⁻¹, d⁰, d¹)`.
    pub fn special_points(&self) -> [&ExactVec3; 3] {
        [&self.d_minus, &self.d0, &self.d1]
    }

    /// The straight chain from `d⁻¹` to `d^i`, `i ∈ {0, 1}`.
    pub fn chain(&self, i: usize) -> Vec<ExactVec3> {
        let end = if i == 0 { &self.d0 } else { &self.d1 };
        vec![self.d_minus.clone(), end.clone()]
    }

    /// The one-dimensional fundamental domain from `d⁰` to `d¹`.
    pub fn domain(&self) -> &[ExactVec3] {
        &self.domain
    }

    /// Exact test that `p` lies on the surface.
    pub fn contains_point(&self, p: &ExactVec3) -> bool {
        self.faces.iter().flat_map(|f| &f.triangles).any(|t| {
            let [a, b, c] = t.map(|i| &self.points[i]);
            let det = |x: &ExactVec3, y: &ExactVec3, z: &ExactVec3| x.dot(&y.cross(z));
            let d = det(a, b, c);
            let Ok(dinv) = d.inv() else { return false };
            let coords = [det(p, b, c), det(a, p, c), det(a, b, p)].map(|x| &x * &dinv);
            let sum = &(&coords[0] + &coords[1]) + &coords[2];
            sum.is_one() && coords.iter().all(|x| x.real_sign() != Some(Ordering::Less))
        })
    }

    /// Every matrix permutes points, edges and faces.
    pub fn check_cell_permutation(&self, mats: &[ExactMat3]) -> Result<()> {
        let index: BTreeMap<&ExactVec3, usize> = self.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let edge_sets: BTreeSet<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| {
                let mut s = e.path.clone();
                s.sort_unstable();
                s
            })
            .collect();
        let face_sets: BTreeSet<Vec<usize>> = self.faces.iter().map(Face::point_set).collect();
        for (g, m) in mats.iter().enumerate() {
            let img: Vec<usize> = self
                .points
                .iter()
                .map(|p| {
                    index
                        .get(&m.apply(p))
                        .copied()
                        .ok_or_else(|| Error::Inconsistent(format!("element {g} moves a point off the model")))
                })
                .collect::<Result<_>>()?;
            let maps_onto = |sets: &BTreeSet<Vec<usize>>| {
                sets.iter().all(|s| {
                    let mut t: Vec<usize> = s.iter().map(|&i| img[i]).collect();
                    t.sort_unstable();
                    sets.contains(&t)
                })
            };
            if !maps_onto(&edge_sets) || !maps_onto(&face_sets) {
                return Err(Error::Inconsistent(format!("element {g} does not permute cells")));
            }
        }
        Ok(())
    }

    /// The orbit of the fundamental domain covers the equator (bipyramids) or
    /// the whole 1-skeleton (octahedron, icosahedron).
    pub fn check_skeleton_coverage(&self, mats: &[ExactMat3]) -> Result<()> {
        let key = |pts: &[ExactVec3]| -> Vec<ExactVec3> {
            let mut v = pts.to_vec();
            v.sort();
            v
        };
        let images: BTreeSet<Vec<ExactVec3>> = mats
            .iter()
            .map(|m| key(&self.domain.iter().map(|p| m.apply(p)).collect::<Vec<_>>()))
            .collect();
        for &e in &self.skeleton {
            let path: Vec<ExactVec3> = self.edges[e].path.iter().map(|&i| self.points[i].clone()).collect();
            if images.contains(&key(&path)) {
                continue;
            }
            let (a, b) = (&path[0], &path[path.len() - 1]);
            let mid = a.midpoint(b);
            let halves = images.contains(&key(&[a.clone(), mid.clone()])) && images.contains(&key(&[mid, b.clone()]));
            if !halves {
                return Err(Error::Inconsistent(format!(
                    "edge {} is not covered by the fundamental domain",
                    self.edges[e].label
                )));
            }
        }
        Ok(())
    }
}
