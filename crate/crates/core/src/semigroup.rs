//! The semigroup of admissible isotropy triples and the bundle classes over it.
//!
//! A triple assigns representations to the stabilizers of `d⁻¹, d⁰, d¹`. The
//! admissibility conditions are compiled into a homogeneous integer system
//! `A x = 0, x ≥ 0` over the concatenated multiplicity vector
//! `x = (m₋ | m₀ | m₁)`; irreducibles of the `d⁻¹` stabilizer that are not
//! χ-isotypical over `H` are pinned to zero.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::character::{branching_matrix, LocalTable};
use crate::cyclotomic::{CycloNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::geometry::{stabilizer_chain, stabilizer_point, transporter, ExactMat3, ImageTag, PolyhedralModel, Space};
use crate::group::{FiniteGroup, Subgroup};

/// Default cap on the size of a Hilbert basis.
pub const HILBERT_CAP: usize = 100_000;

/// Stabilizers of the distinguished points and chains, as subgroups of the acting group.
#[derive(Debug, Clone)]
pub struct StabilizerTriple {
    pub stab_minus: Subgroup,
    pub stab_0: Subgroup,
    pub stab_1: Subgroup,
    pub chain_0: Subgroup,
    pub chain_1: Subgroup,
    pub domain: Subgroup,
    /// Some `g` with `g·d⁰ = d¹`.
    pub transporter: Option<usize>,
}

impl StabilizerTriple {
    pub fn compute(group: &FiniteGroup, mats: &[ExactMat3], model: &PolyhedralModel, space: Space) -> Result<Self> {
        let t = StabilizerTriple {
            stab_minus: stabilizer_point(group, mats, model.d_minus(), space),
            stab_0: stabilizer_point(group, mats, model.d0(), space),
            stab_1: stabilizer_point(group, mats, model.d1(), space),
            chain_0: stabilizer_chain(group, mats, &model.chain(0), space)?,
            chain_1: stabilizer_chain(group, mats, &model.chain(1), space)?,
            domain: stabilizer_chain(group, mats, model.domain(), space)?,
            transporter: transporter(group, mats, model.d0(), model.d1(), space),
        };
        let inside = |s: &Subgroup, a: &Subgroup, b: &Subgroup| s.is_subgroup_of(a) && s.is_subgroup_of(b);
        if !inside(&t.chain_0, &t.stab_minus, &t.stab_0)
            || !inside(&t.chain_1, &t.stab_minus, &t.stab_1)
            || !inside(&t.domain, &t.stab_0, &t.stab_1)
        {
            return Err(Error::Inconsistent(
                "chain stabilizer escapes its endpoint stabilizers".into(),
            ));
        }
        Ok(t)
    }
}

/// Multiplicity vectors over the irreducibles of the three point stabilizers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleTriple {
    pub m_minus: Vec<usize>,
    pub m_0: Vec<usize>,
    pub m_1: Vec<usize>,
}

impl AdmissibleTriple {
    pub fn zero(sizes: [usize; 3]) -> Self {
        AdmissibleTriple {
            m_minus: vec![0; sizes[0]],
            m_0: vec![0; sizes[1]],
            m_1: vec![0; sizes[2]],
        }
    }

    pub fn from_flat(x: &[usize], sizes: [usize; 3]) -> Self {
        AdmissibleTriple {
            m_minus: x[..sizes[0]].to_vec(),
            m_0: x[sizes[0]..sizes[0] + sizes[1]].to_vec(),
            m_1: x[sizes[0] + sizes[1]..].to_vec(),
        }
    }

    pub fn flat(&self) -> Vec<usize> {
        let mut v = self.m_minus.clone();
        v.extend(&self.m_0);
        v.extend(&self.m_1);
        v
    }

    pub fn blocks(&self) -> [&[usize]; 3] {
        [&self.m_minus, &self.m_0, &self.m_1]
    }

    pub fn add(&self, o: &AdmissibleTriple) -> AdmissibleTriple {
        let add = |a: &[usize], b: &[usize]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        AdmissibleTriple {
            m_minus: add(&self.m_minus, &o.m_minus),
            m_0: add(&self.m_0, &o.m_0),
            m_1: add(&self.m_1, &o.m_1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks().iter().all(|b| b.iter().all(|&x| x == 0))
    }
}

/// Integer equations `A x = 0` together with the pinned variables.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    sizes: [usize; 3],
    degrees: [Vec<usize>; 3],
    rows: Vec<Vec<i64>>,
    pinned: Vec<bool>,
}

impl ConstraintSystem {
    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn degrees(&self) -> &[Vec<usize>; 3] {
        &self.degrees
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn num_vars(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Variables forced to zero by the isotypical condition.
    pub fn pinned(&self) -> &[bool] {
        &self.pinned
    }

    fn block_of(&self, var: usize) -> usize {
        if var < self.sizes[0] {
            0
        } else if var < self.sizes[0] + self.sizes[1] {
            1
        } else {
            2
        }
    }

    pub fn is_solution(&self, x: &[usize]) -> bool {
        x.len() == self.num_vars()
            && x.iter().zip(&self.pinned).all(|(&v, &p)| !p || v == 0)
            && self.rows.iter().all(|r| dot(r, x) == 0)
    }

    /// Dimension of the `d⁻¹` entry.
    pub fn rank(&self, t: &AdmissibleTriple) -> usize {
        t.m_minus.iter().zip(&self.degrees[0]).map(|(m, d)| m * d).sum()
    }
}

fn dot(r: &[i64], x: &[usize]) -> i64 {
    r.iter().zip(x).map(|(a, &b)| a * b as i64).sum()
}

/// Everything needed to state and check the admissibility conditions on one side
/// (`RP²` with `G_χ`, or `S²` with the covering group).
#[derive(Debug, Clone)]
pub struct SideData {
    pub space: Space,
    pub group: FiniteGroup,
    pub stabs: StabilizerTriple,
    pub h_table: LocalTable,
    pub chi: usize,
    /// Tables at `d⁻¹, d⁰, d¹`.
    pub point_tables: [LocalTable; 3],
    /// Tables at `C(d⁰), C(d¹)` and the fundamental domain.
    pub chain_tables: [LocalTable; 3],
    /// `m₁[P(j)] = m₀[j]` when a transporter exists.
    pub transport_perm: Option<Vec<usize>>,
    pub system: ConstraintSystem,
}

impl SideData {
    pub fn build(
        group: &FiniteGroup,
        mats: &[ExactMat3],
        h_table: LocalTable,
        chi: usize,
        model: &PolyhedralModel,
        space: Space,
        field: &Arc<CyclotomicField>,
    ) -> Result<SideData> {
        let stabs = StabilizerTriple::compute(group, mats, model, space)?;
        let lt = |s: &Subgroup| LocalTable::new(group, s.clone(), field);
        let point_tables = [lt(&stabs.stab_minus)?, lt(&stabs.stab_0)?, lt(&stabs.stab_1)?];
        let chain_tables = [lt(&stabs.chain_0)?, lt(&stabs.chain_1)?, lt(&stabs.domain)?];
        if !h_table.subgroup().is_subgroup_of(&stabs.domain) || !h_table.subgroup().is_subgroup_of(&stabs.chain_0) {
            return Err(Error::Inconsistent(
                "kernel does not fix the distinguished chains".into(),
            ));
        }

        let transport_perm = match stabs.transporter {
            Some(g) => Some(transport_permutation(group, mats, model, space, &point_tables, g)?),
            None => None,
        };

        let sizes = [point_tables[0].len(), point_tables[1].len(), point_tables[2].len()];
        let degrees = [0, 1, 2].map(|i| point_tables[i].table().degrees().to_vec());
        let offsets = [0, sizes[0], sizes[0] + sizes[1]];
        let nvars = sizes.iter().sum::<usize>();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut push_equal = |bl: usize, bb: &[Vec<usize>], br: usize, cb: &[Vec<usize>], width: usize| {
            for j in 0..width {
                let mut r = vec![0i64; nvars];
                for (a, row) in bb.iter().enumerate() {
                    r[offsets[bl] + a] += row[j] as i64;
                }
                for (a, row) in cb.iter().enumerate() {
                    r[offsets[br] + a] -= row[j] as i64;
                }
                rows.push(r);
            }
        };
        for i in 0..2 {
            let c = &chain_tables[i];
            let left = branching_matrix(&point_tables[0], c)?;
            let right = branching_matrix(&point_tables[i + 1], c)?;
            push_equal(0, &left, i + 1, &right, c.len());
        }
        let d = &chain_tables[2];
        push_equal(
            1,
            &branching_matrix(&point_tables[1], d)?,
            2,
            &branching_matrix(&point_tables[2], d)?,
            d.len(),
        );
        for b in 1..3 {
            let mut r = vec![0i64; nvars];
            for (a, &deg) in degrees[0].iter().enumerate() {
                r[a] += deg as i64;
            }
            for (a, &deg) in degrees[b].iter().enumerate() {
                r[offsets[b] + a] -= deg as i64;
            }
            rows.push(r);
        }
        if let Some(p) = &transport_perm {
            for (j, &pj) in p.iter().enumerate() {
                let mut r = vec![0i64; nvars];
                r[offsets[2] + pj] += 1;
                r[offsets[1] + j] -= 1;
                rows.push(r);
            }
        }
        let rows: Vec<Vec<i64>> = rows
            .into_iter()
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let h_branch = branching_matrix(&point_tables[0], &h_table)?;
        let chi_deg = h_table.table().degree(chi);
        let mut pinned = vec![false; nvars];
        for (a, b) in h_branch.iter().enumerate() {
            if b[chi] == 0 {
                pinned[a] = true;
            } else if b.iter().enumerate().any(|(j, &m)| j != chi && m > 0) || b[chi] * chi_deg != degrees[0][a] {
                return Err(Error::Inconsistent(
                    "irreducible mixes χ with other characters of H".into(),
                ));
            }
        }

        Ok(SideData {
            space,
            group: group.clone(),
            stabs,
            h_table,
            chi,
            point_tables,
            chain_tables,
            transport_perm,
            system: ConstraintSystem {
                sizes,
                degrees,
                rows,
                pinned,
            },
        })
    }

    /// Checks the four admissibility conditions by comparing characters
    /// element by element, without the constraint matrix.
    pub fn check_direct(&self, t: &AdmissibleTriple) -> Result<()> {
        let fail = |what: &str| Err(Error::Inconsistent(format!("triple violates {what}")));
        if t.m_minus.len() != self.point_tables[0].len()
            || t.m_0.len() != self.point_tables[1].len()
            || t.m_1.len() != self.point_tables[2].len()
        {
            return fail("the shape of the stabilizer tables");
        }
        let chars: Vec<Vec<CycloNum>> = (0..3)
            .map(|i| self.point_tables[i].table().combine(t.blocks()[i]))
            .collect();
        let at = |i: usize, x: usize| -> &CycloNum {
            let lt = &self.point_tables[i];
            let local = lt.subgroup().local_index(x).expect("member");
            &chars[i][lt.table().class_of(local)]
        };

        let h = self.h_table.subgroup();
        let dim = self.point_tables[0].table().dimension(&t.m_minus);
        let chi_deg = self.h_table.table().degree(self.chi);
        if !dim.is_multiple_of(chi_deg) {
            return fail("the isotypical condition");
        }
        let c = self.h_table.table().field().from_int((dim / chi_deg) as i64);
        if h.members()
            .iter()
            .any(|&x| at(0, x) != &(&c * self.h_table.value(self.chi, x)))
        {
            return fail("the isotypical condition");
        }
        for i in 0..2 {
            if self.chain_tables[i]
                .subgroup()
                .members()
                .iter()
                .any(|&x| at(0, x) != at(i + 1, x))
            {
                return fail("the chain restriction condition");
            }
        }
        if self.chain_tables[2]
            .subgroup()
            .members()
            .iter()
            .any(|&x| at(1, x) != at(2, x))
        {
            return fail("the fundamental-domain condition");
        }
        if let Some(g) = self.stabs.transporter {
            let gi = self.group.inv(g);
            for &k in self.stabs.stab_1.members() {
                if at(2, k) != at(1, self.group.conjugate(k, gi)) {
                    return fail("the transport condition");
                }
            }
        }
        Ok(())
    }
}

/// Permutation induced on irreducibles by `g`, checked to be the same for every transporter.
fn transport_permutation(
    group: &FiniteGroup,
    mats: &[ExactMat3],
    model: &PolyhedralModel,
    space: Space,
    tables: &[LocalTable; 3],
    g0: usize,
) -> Result<Vec<usize>> {
    let perm_for = |g: usize| -> Result<Vec<usize>> {
        let gi = group.inv(g);
        let reps = tables[2].class_representatives();
        (0..tables[1].len())
            .map(|j| {
                let vals: Vec<&CycloNum> = reps
                    .iter()
                    .map(|&k| tables[1].value(j, group.conjugate(k, gi)))
                    .collect();
                (0..tables[2].len())
                    .find(|&r| tables[2].table().row(r).iter().zip(&vals).all(|(a, b)| a == *b))
                    .ok_or_else(|| Error::Inconsistent("transported character is not irreducible".into()))
            })
            .collect()
    };
    let p = perm_for(g0)?;
    for g in 0..group.order() {
        let r = mats[g].apply(model.d0());
        let moves = &r == model.d1() || (space == Space::RP2 && r == model.d1().neg());
        if moves && perm_for(g)? != p {
            return Err(Error::Inconsistent("transporters induce different permutations".into()));
        }
    }
    Ok(p)
}

/// Non-negative vectors over `allowed` indices with `Σ deg·x = dim`.
fn vectors_of_dim(degrees: &[usize], allowed: &[bool], dim: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, left: usize, deg: &[usize], allowed: &[bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == deg.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = if allowed[i] { left / deg[i] } else { 0 };
        for k in 0..=max {
            cur.push(k);
            go(i + 1, left - k * deg[i], deg, allowed, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, dim, degrees, allowed, &mut Vec::new(), &mut out);
    out
}

/// All nonzero solutions of rank at most `max_rank`, sorted lexicographically.
pub fn enumerate_triples(cs: &ConstraintSystem, max_rank: usize) -> Vec<AdmissibleTriple> {
    let offsets = [0, cs.sizes[0], cs.sizes[0] + cs.sizes[1]];
    let allowed: [Vec<bool>; 3] = [0, 1, 2].map(|b| (0..cs.sizes[b]).map(|i| !cs.pinned[offsets[b] + i]).collect());
    // rows grouped by the last block they touch
    let mut by_block: [Vec<&Vec<i64>>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for r in &cs.rows {
        let last = (0..r.len()).rev().find(|&i| r[i] != 0).map_or(0, |i| cs.block_of(i));
        by_block[last].push(r);
    }
    let mut out = Vec::new();
    for dim in 1..=max_rank {
        let cands: [Vec<Vec<usize>>; 3] = [0, 1, 2].map(|b| vectors_of_dim(&cs.degrees[b], &allowed[b], dim));
        let mut x = vec![0usize; cs.num_vars()];
        for a in &cands[0] {
            x[..cs.sizes[0]].copy_from_slice(a);
            if !by_block[0].iter().all(|r| dot(r, &x) == 0) {
                continue;
            }
            for b in &cands[1] {
                x[offsets[1]..offsets[2]].copy_from_slice(b);
                if !by_block[1].iter().all(|r| dot(r, &x) == 0) {
                    continue;
                }
                for c in &cands[2] {
                    x[offsets[2]..].copy_from_slice(c);
                    if by_block[2].iter().all(|r| dot(r, &x) == 0) {
                        out.push(AdmissibleTriple::from_flat(&x, cs.sizes));
                    }
                }
                x[offsets[2]..].fill(0);
            }
            x[offsets[1]..offsets[2]].fill(0);
        }
    }
    out.sort();
    out
}

/// Minimal generators of the solution monoid by Contejean–Devie completion.
pub fn hilbert_basis(cs: &ConstraintSystem) -> Result<Vec<AdmissibleTriple>> {
    hilbert_basis_capped(cs, HILBERT_CAP)
}

pub fn hilbert_basis_capped(cs: &ConstraintSystem, cap: usize) -> Result<Vec<AdmissibleTriple>> {
    let free: Vec<usize> = (0..cs.num_vars()).filter(|&i| !cs.pinned[i]).collect();
    let nf = free.len();
    let cols: Vec<Vec<i64>> = free.iter().map(|&v| cs.rows.iter().map(|r| r[v]).collect()).collect();
    let image = |p: &[usize]| -> Vec<i64> {
        let mut acc = vec![0i64; cs.rows.len()];
        for (j, &k) in p.iter().enumerate() {
            if k > 0 {
                for (a, c) in acc.iter_mut().zip(&cols[j]) {
                    *a += k as i64 * c;
                }
            }
        }
        acc
    };
    let dominates = |p: &[usize], b: &[usize]| p.iter().zip(b).all(|(x, y)| x >= y);

    let mut basis: Vec<Vec<usize>> = Vec::new();
    let mut frontier: BTreeSet<Vec<usize>> = (0..nf)
        .map(|j| {
            let mut e = vec![0; nf];
            e[j] = 1;
            e
        })
        .collect();
    while !frontier.is_empty() {
        let mut pending = Vec::new();
        for p in frontier {
            if image(&p).iter().all(|&v| v == 0) {
                basis.push(p);
                if basis.len() > cap {
                    return Err(Error::BasisTooLarge(cap));
                }
            } else {
                pending.push(p);
            }
        }
        let mut next = BTreeSet::new();
        for p in pending {
            let ap = image(&p);
            for j in 0..nf {
                let inner: i64 = ap.iter().zip(&cols[j]).map(|(a, c)| a * c).sum();
                if inner >= 0 {
                    continue;
                }
                let mut q = p.clone();
                q[j] += 1;
                if basis.iter().any(|b| dominates(&q, b)) {
                    continue;
                }
                next.insert(q);
            }
            if next.len() > cap {
                return Err(Error::BasisTooLarge(cap));
            }
        }
        frontier = next;
    }
    let mut out: Vec<AdmissibleTriple> = basis
        .into_iter()
        .map(|p| {
            let mut x = vec![0; cs.num_vars()];
            for (j, &v) in free.iter().enumerate() {
                x[v] = p[j];
            }
            AdmissibleTriple::from_flat(&x, cs.sizes)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Identifies the classification a bundle class belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContextKey {
    pub tag: ImageTag,
    pub chi: usize,
    pub chi_degree: usize,
    pub sizes: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BundleClass {
    pub context: ContextKey,
    pub triple: AdmissibleTriple,
    pub rank: usize,
    /// Present only when two classes share each triple.
    pub twin_bit: Option<u8>,
    /// First Chern class in `H²(RP²) = Z/2`, present with the twin bit.
    pub chern_parity: Option<u8>,
}

/// Human-readable name of the classification regime.
pub fn regime(tag: ImageTag) -> &'static str {
    if tag.is_cyclic_odd() {
        "twin-classes"
    } else {
        "isotropy-determined"
    }
}

/// Bundle classes over the given admissible triples.
pub fn classify_bundles(cs: &ConstraintSystem, key: &ContextKey, triples: &[AdmissibleTriple]) -> Vec<BundleClass> {
    let twins = key.tag.is_cyclic_odd();
    let mut out = Vec::new();
    for t in triples {
        let rank = cs.rank(t);
        if twins {
            for bit in 0..2u8 {
                out.push(BundleClass {
                    context: key.clone(),
                    triple: t.clone(),
                    rank,
                    twin_bit: Some(bit),
                    chern_parity: Some(bit * (key.chi_degree % 2) as u8),
                });
            }
        } else {
            out.push(BundleClass {
                context: key.clone(),
                triple: t.clone(),
                rank,
                twin_bit: None,
                chern_parity: None,
            });
        }
    }
    out
}

/// Whitney sum: triples add, twin bits and parities add mod 2.
pub fn direct_sum(a: &BundleClass, b: &BundleClass) -> Result<BundleClass> {
    if a.context != b.context {
        return Err(Error::ContextMismatch);
    }
    let xor = |x: Option<u8>, y: Option<u8>| match (x, y) {
        (Some(x), Some(y)) => Ok(Some(x ^ y)),
        (None, None) => Ok(None),
        _ => Err(Error::ContextMismatch),
    };
    Ok(BundleClass {
        context: a.context.clone(),
        triple: a.triple.add(&b.triple),
        rank: a.rank + b.rank,
        twin_bit: xor(a.twin_bit, b.twin_bit)?,
        chern_parity: xor(a.chern_parity, b.chern_parity)?,
    })
}

/// The neutral class of a context.
pub fn zero_class(key: &ContextKey) -> BundleClass {
    let twins = key.tag.is_cyclic_odd();
    BundleClass {
        context: key.clone(),
        triple: AdmissibleTriple::zero(key.sizes),
        rank: 0,
        twin_bit: twins.then_some(0),
        chern_parity: twins.then_some(0),
    }
}

/// Relabels a triple through per-block permutations of irreducibles.
pub fn relabel(t: &AdmissibleTriple, perms: &[Vec<usize>; 3], target_sizes: [usize; 3]) -> AdmissibleTriple {
    let mut out = AdmissibleTriple::zero(target_sizes);
    let targets: [&mut Vec<usize>; 3] = [&mut out.m_minus, &mut out.m_0, &mut out.m_1];
    for ((dst, src), p) in targets.into_iter().zip(t.blocks()).zip(perms) {
        for (j, &m) in src.iter().enumerate() {
            dst[p[j]] = m;
        }
    }
    out
}

/// Label of a multiplicity vector as a sum of named irreducibles.
pub fn describe(v: &[usize]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| if m == 1 { format!("x{i}") } else { format!("{m}x{i}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}
