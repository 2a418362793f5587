//! The invariant suite run by `check`: one outcome per named invariant.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::{branching_matrix, conjugation_permutation, LocalTable};
use crate::clutching::{
    assemble_clutching, assemble_from_arc, chern_from_winding, loop_winding, q_omega, q_omega_inv, residuals,
    sup_distance, UnitaryRepModel, Variant,
};
use crate::context::Context;
use crate::cyclotomic::{CycloNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::geometry::{Covering, Space};
use crate::group::Subgroup;
use crate::semigroup::{AdmissibleTriple, ConstraintSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub max_rank: usize,
    pub samples: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub random_maps: usize,
    pub random_pairs: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_rank: 3,
            samples: crate::clutching::DEFAULT_SAMPLES,
            tolerance: crate::clutching::DEFAULT_TOLERANCE,
            seed: 0,
            random_maps: 100,
            random_pairs: 64,
        }
    }
}

fn fail(what: impl Into<String>) -> Error {
    Error::Inconsistent(what.into())
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(what()))
    }
}

type CheckFn = fn(&Context, &CheckConfig, &mut ChaCha8Rng) -> Result<Option<String>>;

/// Runs every invariant; `Ok(None)` from a check means it does not apply.
pub fn run_checks(ctx: &Context, cfg: &CheckConfig) -> Vec<Outcome> {
    let checks: &[(&'static str, CheckFn)] = &[
        ("kernel-normal", kernel_normal),
        ("classes-equal-irreducibles", classes_equal_irreducibles),
        ("lagrange", lagrange),
        ("field-axioms", field_axioms),
        ("eval-homomorphism", eval_homomorphism),
        ("promote-demote", promote_demote),
        ("stabilizer-transfer", stabilizer_transfer),
        ("cell-permutation", cell_permutation),
        ("skeleton-coverage", skeleton_coverage),
        ("column-orthogonality", column_orthogonality),
        ("conjugation-permutes-irreducibles", conjugation_permutes),
        ("restriction-transitive", restriction_transitive),
        ("restriction-preserves-dimension", restriction_dimension),
        ("direct-admissibility", direct_admissibility),
        ("semigroup-closure", semigroup_closure),
        ("transfer-bijection", transfer_bijection),
        ("class-count", class_count),
        ("line-bundle-generation", line_bundle_generation),
        ("hilbert-basis", hilbert_basis_generates),
        ("determinism", determinism),
        ("rep-model", rep_model),
        ("clutching-residuals", clutching_residuals),
        ("q-omega-round-trip", q_omega_round_trip),
        ("parity-oracle", parity_oracle),
        ("winding-additivity", winding_additivity),
        ("refinement-invariance", refinement_invariance),
    ];
    checks
        .iter()
        .enumerate()
        .map(|(i, &(name, f))| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
            let (status, detail) = match f(ctx, cfg, &mut rng) {
                Ok(Some(d)) => (Status::Pass, d),
                Ok(None) => (Status::Skip, "not applicable".to_string()),
                Err(e) => (Status::Fail, e.to_string()),
            };
            Outcome { name, status, detail }
        })
        .collect()
}

/// All subgroups the pipeline produces, with their ambient orders.
fn produced_subgroups(ctx: &Context) -> Vec<(&'static str, &Subgroup, usize)> {
    let g = ctx.group().order();
    let gc = ctx.gchi().order();
    let cov = 2 * gc;
    let mut out = vec![("H", ctx.kernel_table().subgroup(), g), ("G_chi", ctx.gchi(), g)];
    for (side, order) in [(ctx.rp2(), gc), (ctx.s2(), cov)] {
        let s = &side.stabs;
        for (name, sub) in [
            ("stab(d-1)", &s.stab_minus),
            ("stab(d0)", &s.stab_0),
            ("stab(d1)", &s.stab_1),
            ("stab(C0)", &s.chain_0),
            ("stab(C1)", &s.chain_1),
            ("stab(D)", &s.domain),
        ] {
            out.push((name, sub, order));
        }
    }
    out
}

fn all_tables(ctx: &Context) -> Vec<&LocalTable> {
    let mut out = vec![ctx.kernel_table()];
    for side in [ctx.rp2(), ctx.s2()] {
        out.push(&side.h_table);
        out.extend(side.point_tables.iter());
        out.extend(side.chain_tables.iter());
    }
    out
}

fn kernel_normal(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let g = ctx.group();
    ensure(ctx.assignment().kernel().is_normal(g), || {
        "ker rho_bar is not normal".into()
    })?;
    let cov = ctx.covering();
    ensure(cov.kernel().is_normal(cov.group()), || {
        "covering kernel is not normal".into()
    })?;
    let lifted: Vec<usize> = ctx
        .gchi_assignment()
        .kernel()
        .members()
        .iter()
        .map(|&x| Covering::lift(x, 0))
        .collect();
    ensure(cov.kernel().members() == lifted.as_slice(), || {
        "covering kernel differs from the RP2 kernel".into()
    })?;
    Ok(Some(format!("|H| = {}", ctx.kernel_table().subgroup().order())))
}

fn classes_equal_irreducibles(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let tables = all_tables(ctx);
    for t in &tables {
        ensure(t.group().conjugacy_classes().len() == t.len(), || {
            "class count differs from the number of irreducibles".into()
        })?;
    }
    Ok(Some(format!("{} tables", tables.len())))
}

fn lagrange(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let subs = produced_subgroups(ctx);
    for (name, s, parent) in &subs {
        ensure(parent % s.order() == 0, || {
            format!("{name} has order {} in a group of order {parent}", s.order())
        })?;
    }
    Ok(Some(format!("{} subgroups", subs.len())))
}

fn random_element(f: &alloc::sync::Arc<CyclotomicField>, rng: &mut ChaCha8Rng) -> CycloNum {
    let m = f.conductor() as i64;
    let terms: Vec<(i64, i64)> = (0..4).map(|_| (rng.gen_range(0..m), rng.gen_range(-3..=3))).collect();
    f.from_exponent_sum(&terms) * f.from_ratio(1, rng.gen_range(1..=5))
}

fn field_axioms(ctx: &Context, _: &CheckConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let f = ctx.char_field();
    for _ in 0..32 {
        let (a, b, c) = (random_element(f, rng), random_element(f, rng), random_element(f, rng));
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || {
            "distributivity fails".into()
        })?;
        ensure(&a * &b == &b * &a, || "multiplication is not commutative".into())?;
        ensure(&a + &b == &b + &a, || "addition is not commutative".into())?;
        if !a.is_zero() {
            ensure((&a * &a.inv()?).is_one(), || "inverse fails".into())?;
        }
    }
    Ok(Some(format!("32 random triples in Q(zeta_{})", f.conductor())))
}

fn eval_homomorphism(ctx: &Context, _: &CheckConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let f = ctx.char_field();
    let mut worst: f64 = 0.0;
    for _ in 0..32 {
        let (a, b) = (random_element(f, rng), random_element(f, rng));
        let (x, y) = (a.eval(), b.eval());
        worst = worst
            .max(((&a * &b).eval() - x * y).norm())
            .max(((&a + &b).eval() - (x + y)).norm());
    }
    ensure(worst < 1e-12, || format!("eval residual {worst:e}"))?;
    Ok(Some(format!("max residual {worst:.1e}")))
}

fn promote_demote(ctx: &Context, _: &CheckConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let f = ctx.char_field();
    let big = CyclotomicField::new(f.conductor() * 3);
    for _ in 0..16 {
        let a = random_element(f, rng);
        let up = a.promote(&big)?;
        ensure(up == a, || "promotion changes the value".into())?;
        ensure(up.demote(f).as_ref() == Some(&a), || {
            "demotion does not invert promotion".into()
        })?;
    }
    Ok(Some(format!(
        "Q(zeta_{}) -> Q(zeta_{})",
        f.conductor(),
        big.conductor()
    )))
}

fn stabilizer_transfer(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    ctx.check_stabilizer_transfer()?;
    let model = ctx.model();
    for p in model.points() {
        let lo = ctx.gchi_assignment().stabilizer_point(p, Space::RP2);
        let hi = ctx.covering().stabilizer_point(p);
        let mut img: Vec<usize> = hi.members().iter().map(|&x| Covering::p1(x)).collect();
        let n = img.len();
        img.sort_unstable();
        img.dedup();
        ensure(img.len() == n && img == lo.members(), || format!("p1 fails at {p:?}"))?;
    }
    Ok(Some(format!("{} model points, 3 chains", model.points().len())))
}

fn cell_permutation(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    ctx.model().check_cell_permutation(ctx.gchi_assignment().matrices())?;
    ctx.model().check_cell_permutation(ctx.covering().matrices())?;
    Ok(Some(format!("{}", ctx.model().tag())))
}

fn skeleton_coverage(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    ctx.model().check_skeleton_coverage(ctx.covering().matrices())?;
    Ok(Some(format!("{}", ctx.model().tag())))
}

fn column_orthogonality(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let tables = all_tables(ctx);
    for lt in &tables {
        let t = lt.table();
        let f = t.field();
        let sizes = t.class_sizes();
        for a in 0..t.len() {
            for b in 0..t.len() {
                let mut acc = f.zero();
                for row in t.rows() {
                    acc = acc + &row[a] * &row[b].conj();
                }
                let want = if a == b { (t.group_order() / sizes[a]) as i64 } else { 0 };
                ensure(acc == f.from_int(want), || {
                    format!("columns {a}, {b} of a table of order {}", t.group_order())
                })?;
            }
        }
    }
    Ok(Some(format!("{} tables", tables.len())))
}

fn conjugation_permutes(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let g = ctx.group();
    for x in 0..g.order() {
        conjugation_permutation(g, ctx.kernel_table(), x)?;
    }
    Ok(Some(format!("{} elements", g.order())))
}

/// `G_χ ⊇ stab(d⁻¹) ⊇ stab(C⁰) ⊇ H` on the RP² side.
fn restriction_chain(ctx: &Context) -> Result<[LocalTable; 4]> {
    let side = ctx.rp2();
    let whole = LocalTable::whole(&side.group, ctx.char_field())?;
    Ok([
        whole,
        side.point_tables[0].clone(),
        side.chain_tables[0].clone(),
        side.h_table.clone(),
    ])
}

fn restriction_transitive(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let chain = restriction_chain(ctx)?;
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            for k in j + 1..chain.len() {
                let ij = branching_matrix(&chain[i], &chain[j])?;
                let jk = branching_matrix(&chain[j], &chain[k])?;
                let ik = branching_matrix(&chain[i], &chain[k])?;
                for (a, row) in ik.iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        let composed: usize = (0..chain[j].len()).map(|b| ij[a][b] * jk[b][c]).sum();
                        ensure(composed == v, || format!("levels {i} -> {j} -> {k}"))?;
                    }
                }
            }
        }
    }
    Ok(Some("G_chi > stab(d-1) > stab(C0) > H".into()))
}

fn restriction_dimension(ctx: &Context, _: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let chain = restriction_chain(ctx)?;
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            let b = branching_matrix(&chain[i], &chain[j])?;
            for (a, row) in b.iter().enumerate() {
                let dim: usize = row
                    .iter()
                    .enumerate()
                    .map(|(c, m)| m * chain[j].table().degree(c))
                    .sum();
                ensure(dim == chain[i].table().degree(a), || {
                    format!("levels {i} -> {j}, row {a}")
                })?;
            }
        }
    }
    Ok(Some("all restrictions in the chain".into()))
}

fn direct_admissibility(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let triples = ctx.enumerate(cfg.max_rank);
    for t in &triples {
        ctx.rp2().check_direct(t)?;
        ctx.s2().check_direct(&ctx.p1_to_s2(t))?;
    }
    Ok(Some(format!("{} triples up to rank {}", triples.len(), cfg.max_rank)))
}

fn semigroup_closure(ctx: &Context, cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let triples = ctx.enumerate(cfg.max_rank);
    if triples.is_empty() {
        return Ok(None);
    }
    for _ in 0..cfg.random_pairs {
        let a = &triples[rng.gen_range(0..triples.len())];
        let b = &triples[rng.gen_range(0..triples.len())];
        let s = a.add(b);
        ensure(ctx.rp2().system.is_solution(&s.flat()), || {
            "sum violates the equations".into()
        })?;
        ctx.rp2().check_direct(&s)?;
    }
    Ok(Some(format!("{} random pairs", cfg.random_pairs)))
}

fn transfer_bijection(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let down = ctx.enumerate(cfg.max_rank);
    let up: BTreeSet<AdmissibleTriple> = ctx.enumerate_s2(cfg.max_rank).into_iter().collect();
    ensure(down.len() == up.len(), || {
        format!("{} RP2 triples vs {} S2 triples", down.len(), up.len())
    })?;
    for t in &down {
        let s = ctx.p1_to_s2(t);
        ensure(up.contains(&s), || "transferred triple is not S2-admissible".into())?;
        ensure(ctx.p1_to_rp2(&s)? == *t, || "round trip fails".into())?;
    }
    Ok(Some(format!("{} triples up to rank {}", down.len(), cfg.max_rank)))
}

fn class_count(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let factor = if ctx.image_tag().is_cyclic_odd() { 2 } else { 1 };
    for r in 1..=cfg.max_rank {
        let (c, t) = (ctx.classify(r)?.len(), ctx.enumerate(r).len());
        ensure(c == factor * t, || format!("rank <= {r}: {c} classes for {t} triples"))?;
    }
    Ok(Some(format!(
        "|classes| = {factor}|triples| up to rank {}",
        cfg.max_rank
    )))
}

fn sums_up_to(cs: &ConstraintSystem, gens: &[AdmissibleTriple], r: usize) -> BTreeSet<AdmissibleTriple> {
    let mut seen = BTreeSet::new();
    let mut layer = vec![AdmissibleTriple::zero(cs.sizes())];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for t in &layer {
            for b in gens {
                let s = t.add(b);
                if cs.rank(&s) <= r && seen.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        layer = next;
    }
    seen
}

fn line_bundle_generation(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let tag = ctx.image_tag();
    if !tag.is_cyclic_odd() || ctx.kernel_table().subgroup().order() != 1 {
        return Ok(None);
    }
    let n = tag.rotation_order() as usize;
    let cs = &ctx.rp2().system;
    let rank1 = ctx.enumerate(1);
    ensure(rank1.len() == n, || {
        format!("{} rank-1 triples, expected {n}", rank1.len())
    })?;
    let r = cfg.max_rank.max(4);
    let all: BTreeSet<_> = ctx.enumerate(r).into_iter().collect();
    ensure(sums_up_to(cs, &rank1, r) == all, || {
        "not generated by line bundles".into()
    })?;
    Ok(Some(format!("{n} line bundles generate rank <= {r}")))
}

fn hilbert_basis_generates(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let cs = &ctx.rp2().system;
    let basis = ctx.hilbert_basis()?;
    for b in &basis {
        ensure(cs.is_solution(&b.flat()), || "basis element is not a solution".into())?;
    }
    let all: BTreeSet<_> = ctx.enumerate(cfg.max_rank).into_iter().collect();
    ensure(sums_up_to(cs, &basis, cfg.max_rank) == all, || {
        "basis does not generate the enumeration".into()
    })?;
    Ok(Some(format!("{} basis elements", basis.len())))
}

fn determinism(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    ensure(ctx.classify(cfg.max_rank)? == ctx.classify(cfg.max_rank)?, || {
        "classification differs".into()
    })?;
    ensure(ctx.hilbert_basis()? == ctx.hilbert_basis()?, || {
        "hilbert basis differs".into()
    })?;
    Ok(Some("classify and hilbert basis repeat exactly".into()))
}

/// Rep models for the `d⁻¹` parts of the first few triples, or `None` outside the twin regime.
fn clutching_models(ctx: &Context, cfg: &CheckConfig) -> Result<Option<Vec<UnitaryRepModel>>> {
    if !ctx.image_tag().is_cyclic_odd() {
        return Ok(None);
    }
    let triples = ctx.enumerate(cfg.max_rank.min(2));
    let models = triples
        .iter()
        .take(4)
        .map(|t| UnitaryRepModel::build(ctx, &t.m_minus))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(models))
}

fn rep_model(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let Some(models) = clutching_models(ctx, cfg)? else {
        return Ok(None);
    };
    for m in &models {
        m.check(crate::clutching::REP_TOLERANCE)?;
    }
    Ok(Some(format!("{} models", models.len())))
}

fn clutching_residuals(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let Some(models) = clutching_models(ctx, cfg)? else {
        return Ok(None);
    };
    let mut worst: f64 = 0.0;
    for rep in &models {
        for v in [Variant::Trivial, Variant::Twisted] {
            let up = assemble_clutching(rep, v, cfg.samples, cfg.tolerance)?;
            let r = residuals(rep, &q_omega(&up)?)?.within(2.0 * cfg.tolerance)?;
            worst = worst.max(r.identification).max(r.equivariance);
        }
    }
    Ok(Some(format!("max RP2 residual {worst:.1e}")))
}

fn q_omega_round_trip(ctx: &Context, cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let Some(models) = clutching_models(ctx, cfg)? else {
        return Ok(None);
    };
    let samples = cfg.samples.min(1024);
    let mut worst: f64 = 0.0;
    for i in 0..cfg.random_maps {
        let rep = &models[i % models.len()];
        let arc = rep.random_commutant_arc(rng);
        let up = assemble_from_arc(rep, arc, samples)?;
        residuals(rep, &up)?.within(cfg.tolerance)?;
        let down = q_omega(&up)?;
        let r = residuals(rep, &down)?.within(cfg.tolerance)?;
        let back = q_omega_inv(&down)?;
        let d = sup_distance(&up, &back);
        ensure(d < cfg.tolerance, || format!("round trip distance {d:e}"))?;
        worst = worst.max(r.identification).max(r.equivariance).max(d);
    }
    Ok(Some(format!(
        "{} random maps, max residual {worst:.1e}",
        cfg.random_maps
    )))
}

fn parity_oracle(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    if !ctx.image_tag().is_cyclic_odd() {
        return Ok(None);
    }
    let classes = ctx.classify(cfg.max_rank.min(2))?;
    let mut checked = 0;
    for class in classes.iter().take(8) {
        let rep = UnitaryRepModel::build(ctx, &class.triple.m_minus)?;
        let v = if class.twin_bit == Some(1) {
            Variant::Twisted
        } else {
            Variant::Trivial
        };
        let up = assemble_clutching(&rep, v, cfg.samples, cfg.tolerance)?;
        ensure(chern_from_winding(&up)? == 0, || {
            "S2 winding of the equator is nonzero".into()
        })?;
        let parity = chern_from_winding(&q_omega(&up)?)?;
        ensure(Some(parity as u8) == class.chern_parity, || {
            format!("winding parity {parity} vs classified {:?}", class.chern_parity)
        })?;
        checked += 1;
    }
    Ok(Some(format!("{checked} classes reproduced")))
}

fn winding_additivity(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let Some(models) = clutching_models(ctx, cfg)? else {
        return Ok(None);
    };
    let samples = cfg.samples.min(1024);
    for a in &models {
        for b in &models {
            let (la, lb) = (a.sigma_loop(256), b.sigma_loop(256));
            let joint: Vec<_> = la
                .iter()
                .zip(&lb)
                .map(|(x, y)| {
                    let (p, q) = (x.nrows(), y.nrows());
                    let mut m = crate::clutching::CMat::zeros(p + q, p + q);
                    m.view_mut((0, 0), (p, p)).copy_from(x);
                    m.view_mut((p, p), (q, q)).copy_from(y);
                    m
                })
                .collect();
            let (wa, wb, wj) = (loop_winding(&la)?, loop_winding(&lb)?, loop_winding(&joint)?);
            ensure(wj == wa + wb, || format!("sigma windings {wa} + {wb} != {wj}"))?;
            let ta = q_omega(&assemble_clutching(a, Variant::Twisted, samples, cfg.tolerance)?)?;
            let tb = q_omega(&assemble_clutching(b, Variant::Twisted, samples, cfg.tolerance)?)?;
            let (pa, pb) = (chern_from_winding(&ta)?, chern_from_winding(&tb)?);
            let pj = chern_from_winding(&ta.block_sum(&tb)?)?;
            ensure(pj == (pa + pb) % 2, || format!("parities {pa} + {pb} != {pj}"))?;
        }
    }
    Ok(Some(format!("{} model pairs", models.len() * models.len())))
}

fn refinement_invariance(ctx: &Context, cfg: &CheckConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let Some(models) = clutching_models(ctx, cfg)? else {
        return Ok(None);
    };
    let base = cfg.samples.min(1024);
    for rep in &models {
        for v in [Variant::Trivial, Variant::Twisted] {
            let coarse = assemble_clutching(rep, v, base, cfg.tolerance)?;
            let fine = assemble_clutching(rep, v, 2 * coarse.samples(), cfg.tolerance)?;
            for mode_map in [(coarse.clone(), fine.clone()), (q_omega(&coarse)?, q_omega(&fine)?)] {
                let (a, b) = (chern_from_winding(&mode_map.0)?, chern_from_winding(&mode_map.1)?);
                ensure(a == b, || format!("winding {a} at N vs {b} at 2N"))?;
            }
        }
    }
    Ok(Some(format!(
        "N = {base} and 2N",
        base = crate::clutching::grid_size(models[0].n(), base)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn suite_passes_on_small_contexts() {
        let cfg = CheckConfig {
            max_rank: 2,
            samples: 512,
            random_maps: 4,
            random_pairs: 8,
            ..CheckConfig::default()
        };
        for (name, chi) in [("Z3", 0), ("D3", 0), ("S3/Z2", 1)] {
            let ctx = Context::new(catalog::by_name(name).unwrap().unwrap(), chi).unwrap();
            for o in run_checks(&ctx, &cfg) {
                assert_ne!(o.status, Status::Fail, "{name}: {} failed: {}", o.name, o.detail);
            }
        }
    }
}
