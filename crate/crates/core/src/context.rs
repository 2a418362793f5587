//! A classification context: `(G, ρ̄, χ)` together with everything derived from it.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::character::{chi_stabilizer, LocalTable};
use crate::cyclotomic::{lcm, CyclotomicField};
use crate::error::{Error, Result};
use crate::geometry::{build_model, Covering, ImageTag, PolyhedralModel, RotationAssignment, Space};
use crate::group::{FiniteGroup, Subgroup};
use crate::semigroup::{
    classify_bundles, enumerate_triples, hilbert_basis, relabel, AdmissibleTriple, BundleClass, ContextKey, SideData,
};

#[derive(Debug, Clone)]
pub struct Context {
    group: FiniteGroup,
    assignment: RotationAssignment,
    chi: usize,
    char_field: Arc<CyclotomicField>,
    h_in_g: LocalTable,
    gchi: Subgroup,
    gchi_assignment: RotationAssignment,
    model: PolyhedralModel,
    covering: Covering,
    rp2: SideData,
    s2: SideData,
    /// `p₁`-relabelling of irreducibles at `d⁻¹, d⁰, d¹`, RP² row ↦ S² row.
    transfer: [Vec<usize>; 3],
}

fn matching_row(table: &LocalTable, value_at: impl Fn(usize) -> crate::cyclotomic::CycloNum) -> Result<usize> {
    let reps = table.class_representatives();
    let vals: Vec<_> = reps.iter().map(|&x| value_at(x)).collect();
    (0..table.len())
        .find(|&r| table.table().row(r).iter().zip(&vals).all(|(a, b)| a == b))
        .ok_or_else(|| Error::Inconsistent("pulled-back character is not irreducible".into()))
}

impl Context {
    /// `assignment` is `ρ̄` on `group`; `chi` indexes the irreducibles of `H = ker ρ̄`.
    pub fn new(assignment: RotationAssignment, chi: usize) -> Result<Context> {
        let group = assignment.group().clone();
        let char_field = CyclotomicField::new(lcm(group.exponent() as u32, 2));
        let h = assignment.kernel();
        let h_in_g = LocalTable::new(&group, h.clone(), &char_field)?;
        if chi >= h_in_g.len() {
            return Err(Error::InvalidInput(format!(
                "chi index {chi} out of range: the kernel has {} irreducible characters",
                h_in_g.len()
            )));
        }
        let gchi = chi_stabilizer(&group, &h_in_g, chi)?;
        let gchi_assignment = assignment.restrict(&gchi)?;
        let ggroup = gchi_assignment.group().clone();

        let h_local = Subgroup::new(
            &ggroup,
            h.members()
                .iter()
                .map(|&x| gchi.local_index(x).expect("H ⊆ G_χ"))
                .collect(),
        )?;
        let h_rp2 = LocalTable::new(&ggroup, h_local.clone(), &char_field)?;
        let chi_rp2 = matching_row(&h_rp2, |x| h_in_g.value(chi, gchi.members()[x]).clone())?;

        let model = build_model(&gchi_assignment)?;
        let covering = Covering::new(&gchi_assignment);
        let rp2 = SideData::build(
            &ggroup,
            gchi_assignment.matrices(),
            h_rp2,
            chi_rp2,
            &model,
            Space::RP2,
            &char_field,
        )?;

        let cgroup = covering.group();
        let h_cov = Subgroup::new(
            cgroup,
            h_local.members().iter().map(|&x| Covering::lift(x, 0)).collect(),
        )?;
        let h_s2 = LocalTable::new(cgroup, h_cov, &char_field)?;
        let chi_s2 = matching_row(&h_s2, |x| rp2.h_table.value(chi_rp2, Covering::p1(x)).clone())?;
        let s2 = SideData::build(
            cgroup,
            covering.matrices(),
            h_s2,
            chi_s2,
            &model,
            Space::S2,
            &char_field,
        )?;

        let mut transfer: [Vec<usize>; 3] = Default::default();
        for (b, slot) in transfer.iter_mut().enumerate() {
            let (lo, hi) = (&rp2.point_tables[b], &s2.point_tables[b]);
            check_p1_iso(lo.subgroup(), hi.subgroup())?;
            *slot = (0..lo.len())
                .map(|j| matching_row(hi, |x| lo.value(j, Covering::p1(x)).clone()))
                .collect::<Result<_>>()?;
        }

        Ok(Context {
            group,
            assignment,
            chi,
            char_field,
            h_in_g,
            gchi,
            gchi_assignment,
            model,
            covering,
            rp2,
            s2,
            transfer,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn assignment(&self) -> &RotationAssignment {
        &self.assignment
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn chi_degree(&self) -> usize {
        self.h_in_g.table().degree(self.chi)
    }

    pub fn char_field(&self) -> &Arc<CyclotomicField> {
        &self.char_field
    }

    /// Character table of `H` inside `G`.
    pub fn kernel_table(&self) -> &LocalTable {
        &self.h_in_g
    }

    /// `G_χ` as a subgroup of `G`.
    pub fn gchi(&self) -> &Subgroup {
        &self.gchi
    }

    /// `ρ̄` restricted to `G_χ`, on the local indexing of `G_χ`.
    pub fn gchi_assignment(&self) -> &RotationAssignment {
        &self.gchi_assignment
    }

    pub fn image_tag(&self) -> ImageTag {
        self.gchi_assignment.tag()
    }

    pub fn model(&self) -> &PolyhedralModel {
        &self.model
    }

    pub fn covering(&self) -> &Covering {
        &self.covering
    }

    pub fn rp2(&self) -> &SideData {
        &self.rp2
    }

    pub fn s2(&self) -> &SideData {
        &self.s2
    }

    pub fn key(&self) -> ContextKey {
        ContextKey {
            tag: self.image_tag(),
            chi: self.chi,
            chi_degree: self.chi_degree(),
            sizes: self.rp2.system.sizes(),
        }
    }

    pub fn enumerate(&self, max_rank: usize) -> Vec<AdmissibleTriple> {
        enumerate_triples(&self.rp2.system, max_rank)
    }

    /// Admissible triples for the covering action on `S²`.
    pub fn enumerate_s2(&self, max_rank: usize) -> Vec<AdmissibleTriple> {
        enumerate_triples(&self.s2.system, max_rank)
    }

    pub fn hilbert_basis(&self) -> Result<Vec<AdmissibleTriple>> {
        hilbert_basis(&self.rp2.system)
    }

    /// Bundle classes of rank at most `max_rank`; every triple is re-checked directly.
    pub fn classify(&self, max_rank: usize) -> Result<Vec<BundleClass>> {
        let triples = self.enumerate(max_rank);
        for t in &triples {
            self.rp2.check_direct(t)?;
        }
        Ok(classify_bundles(&self.rp2.system, &self.key(), &triples))
    }

    /// Transfer of a triple to the covering action on `S²`.
    pub fn p1_to_s2(&self, t: &AdmissibleTriple) -> AdmissibleTriple {
        relabel(t, &self.transfer, self.s2.system.sizes())
    }

    /// Inverse transfer; fails on triples outside the image.
    pub fn p1_to_rp2(&self, t: &AdmissibleTriple) -> Result<AdmissibleTriple> {
        let inv: [Vec<usize>; 3] = core::array::from_fn(|b| {
            let mut v = alloc::vec![usize::MAX; self.transfer[b].len()];
            for (j, &k) in self.transfer[b].iter().enumerate() {
                v[k] = j;
            }
            v
        });
        if inv.iter().any(|v| v.contains(&usize::MAX)) {
            return Err(Error::Inconsistent("transfer of irreducibles is not bijective".into()));
        }
        let back = relabel(t, &inv, self.rp2.system.sizes());
        if self.p1_to_s2(&back) != *t {
            return Err(Error::Inconsistent("triple is not in the image of the transfer".into()));
        }
        Ok(back)
    }

    /// `p₁` maps every S² stabilizer injectively onto the matching RP² stabilizer.
    pub fn check_stabilizer_transfer(&self) -> Result<()> {
        let (a, b) = (&self.rp2.stabs, &self.s2.stabs);
        for (lo, hi) in [
            (&a.stab_minus, &b.stab_minus),
            (&a.stab_0, &b.stab_0),
            (&a.stab_1, &b.stab_1),
            (&a.chain_0, &b.chain_0),
            (&a.chain_1, &b.chain_1),
            (&a.domain, &b.domain),
        ] {
            check_p1_iso(lo, hi)?;
        }
        Ok(())
    }
}

fn check_p1_iso(lo: &Subgroup, hi: &Subgroup) -> Result<()> {
    let mut img: Vec<usize> = hi.members().iter().map(|&x| Covering::p1(x)).collect();
    let n = img.len();
    img.sort_unstable();
    img.dedup();
    if img.len() != n {
        return Err(Error::Inconsistent(
            "p1 is not injective on a covering stabilizer".into(),
        ));
    }
    if img != lo.members() {
        return Err(Error::Inconsistent("p1 image differs from the RP2 stabilizer".into()));
    }
    Ok(())
}
