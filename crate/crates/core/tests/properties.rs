//! Randomized invariants across the group, field, character, semigroup and
//! clutching layers.

use std::sync::{Arc, OnceLock};

use equivect_core::catalog;
use equivect_core::character::{conjugation_permutation, restrict_multiplicities, CharacterTable, LocalTable};
use equivect_core::clutching::{
    assemble_clutching, assemble_from_arc, chern_from_winding, q_omega, residuals, UnitaryRepModel, Variant,
};
use equivect_core::context::Context;
use equivect_core::cyclotomic::{CycloNum, CyclotomicField};
use equivect_core::group::{compose, FiniteGroup, GroupHom, Permutation, Subgroup};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CONDUCTORS: [u32; 8] = [1, 3, 4, 5, 8, 12, 15, 20];

fn field(m: u32) -> Arc<CyclotomicField> {
    CyclotomicField::new(m)
}

/// A random element of `Q(ζ_m)` with small rational coefficients.
fn cyclo(m: u32, coeffs: &[(i64, i64)]) -> CycloNum {
    let f = field(m);
    let mut x = f.zero();
    for (k, &(p, q)) in coeffs.iter().enumerate() {
        x = &x + &(&f.from_ratio(p, q) * &f.zeta_pow(k as i64));
    }
    x
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=6), 0..6)
}

fn sign(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut parity = 0;
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            parity ^= (len - 1) % 2;
        }
    }
    parity
}

/// Contexts built once; indices into this list drive the semigroup properties.
fn contexts() -> &'static [Context] {
    static CELL: OnceLock<Vec<Context>> = OnceLock::new();
    CELL.get_or_init(|| {
        [
            ("Z1", 0),
            ("Z3", 0),
            ("Z4", 0),
            ("Z5", 0),
            ("D3", 0),
            ("D4", 0),
            ("T", 0),
            ("Q8xZ3", 4),
            ("S3/Z2", 1),
        ]
        .iter()
        .map(|&(n, chi)| Context::new(catalog::by_name(n).unwrap().unwrap(), chi).unwrap())
        .collect()
    })
}

fn odd_cyclic_models() -> &'static [UnitaryRepModel] {
    static CELL: OnceLock<Vec<UnitaryRepModel>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for c in contexts().iter().filter(|c| c.image_tag().is_cyclic_odd()) {
            for t in c.enumerate(2) {
                out.push(UnitaryRepModel::build(c, &t.m_minus).unwrap());
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(mi in 0..CONDUCTORS.len(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let m = CONDUCTORS[mi];
        let (a, b, c) = (cyclo(m, &a), cyclo(m, &b), cyclo(m, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn eval_is_a_ring_homomorphism(mi in 0..CONDUCTORS.len(), a in coeffs(), b in coeffs()) {
        let m = CONDUCTORS[mi];
        let (a, b) = (cyclo(m, &a), cyclo(m, &b));
        let scale = 1.0 + a.eval().norm() * b.eval().norm();
        prop_assert!(((&a + &b).eval() - (a.eval() + b.eval())).norm() < 1e-12 * scale);
        prop_assert!(((&a * &b).eval() - a.eval() * b.eval()).norm() < 1e-12 * scale);
        prop_assert!((a.conj().eval() - a.eval().conj()).norm() < 1e-12 * scale);
    }

    #[test]
    fn promote_then_demote_is_identity(mi in 0..CONDUCTORS.len(), k in 1u32..4, a in coeffs()) {
        let m = CONDUCTORS[mi];
        let a = cyclo(m, &a);
        let big = field(m * k);
        let up = a.promote(&big).unwrap();
        prop_assert!((up.eval() - a.eval()).norm() < 1e-9);
        prop_assert_eq!(up.demote(&field(m)), Some(a));
    }

    #[test]
    fn sign_kernel_is_normal_and_classes_count_irreducibles(n in 2usize..6, seeds in prop::collection::vec(any::<u64>(), 1..3)) {
        let perms: Vec<Permutation> = seeds
            .iter()
            .map(|&s| {
                let mut p: Permutation = (0..n).collect();
                p.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
                p
            })
            .collect();
        let (g, idx) = FiniteGroup::from_permutations_indexed(&perms, 1 << 12).unwrap();
        let elems = g.extend_hom(&idx, &perms, (0..n).collect(), |a, b| compose(a, b), |a, b| a == b).unwrap();
        for x in 0..g.order() {
            for y in 0..g.order() {
                prop_assert_eq!(&elems[g.mul(x, y)], &compose(&elems[x], &elems[y]));
            }
        }
        let z2 = FiniteGroup::cyclic(2);
        let signs: Vec<usize> = elems.iter().map(|p| sign(p)).collect();
        let hom = GroupHom::new(&g, &z2, signs).unwrap();
        let k = hom.kernel();
        prop_assert!(k.is_normal(&g));
        prop_assert_eq!(g.order() % k.order(), 0);
        let cyc = Subgroup::generated(&g, &[idx[0]]);
        prop_assert_eq!(g.order() % cyc.order(), 0);
        prop_assert_eq!(g.conjugacy_classes().len(), CharacterTable::new(&g).unwrap().len());
    }

    #[test]
    fn conjugation_permutes_irreducibles(ci in 0usize..9, g in any::<prop::sample::Index>()) {
        let c = &contexts()[ci];
        let x = g.index(c.group().order());
        let p = conjugation_permutation(c.group(), c.kernel_table(), x).unwrap();
        let mut sorted = p.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..p.len()).collect::<Vec<_>>());
    }

    #[test]
    fn restriction_is_transitive_and_keeps_dimension(
        ci in 0usize..9,
        x in any::<prop::sample::Index>(),
        k in 1usize..4,
        w in prop::collection::vec(0usize..3, 8),
    ) {
        let c = &contexts()[ci];
        let g = c.group();
        let f = c.char_field();
        let x = x.index(g.order());
        let big = LocalTable::whole(g, f).unwrap();
        let mid = LocalTable::new(g, Subgroup::generated(g, &[x]), f).unwrap();
        let small = LocalTable::new(g, Subgroup::generated(g, &[g.pow(x, k)]), f).unwrap();
        let w: Vec<usize> = (0..big.len()).map(|i| w[i % w.len()]).collect();
        let via_mid = restrict_multiplicities(&mid, &restrict_multiplicities(&big, &w, &mid).unwrap(), &small).unwrap();
        let direct = restrict_multiplicities(&big, &w, &small).unwrap();
        prop_assert_eq!(&via_mid, &direct);
        prop_assert_eq!(big.table().dimension(&w), small.table().dimension(&direct));
    }

    #[test]
    fn admissible_triples_are_closed_under_sums(ci in 0usize..9, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let c = &contexts()[ci];
        let ts = c.enumerate(2);
        let (s, t) = (&ts[a.index(ts.len())], &ts[b.index(ts.len())]);
        let sum = s.add(t);
        prop_assert!(c.rp2().system.is_solution(&sum.flat()));
        prop_assert!(c.rp2().check_direct(&sum).is_ok());
        prop_assert_eq!(c.rp2().system.rank(&sum), c.rp2().system.rank(s) + c.rp2().system.rank(t));
    }

    #[test]
    fn class_count_follows_the_regime(ci in 0usize..9, r in 1usize..4) {
        let c = &contexts()[ci];
        let triples = c.enumerate(r).len();
        let classes = c.classify(r).unwrap().len();
        let factor = if c.image_tag().is_cyclic_odd() { 2 } else { 1 };
        prop_assert_eq!(classes, factor * triples);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_clutching_maps_descend(mi in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let models = odd_cyclic_models();
        let rep = &models[mi.index(models.len())];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let up = assemble_from_arc(rep, rep.random_commutant_arc(&mut rng), 2048).unwrap();
        let r = residuals(rep, &up).unwrap();
        prop_assert!(r.identification < 1e-9 && r.equivariance < 1e-9);
        let down = q_omega(&up).unwrap();
        let r = residuals(rep, &down).unwrap();
        prop_assert!(r.identification < 1e-9 && r.equivariance < 1e-9);
    }

    #[test]
    fn winding_is_refinement_invariant_and_additive(a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), ta: bool, tb: bool) {
        let models = odd_cyclic_models();
        let (ra, rb) = (&models[a.index(models.len())], &models[b.index(models.len())]);
        let variant = |t: bool| if t { Variant::Twisted } else { Variant::Trivial };
        for (rep, t) in [(ra, ta), (rb, tb)] {
            let coarse = assemble_clutching(rep, variant(t), 1024, 1e-9).unwrap();
            let fine = assemble_clutching(rep, variant(t), 2048, 1e-9).unwrap();
            prop_assert_eq!(chern_from_winding(&coarse).unwrap(), 0);
            prop_assert_eq!(chern_from_winding(&fine).unwrap(), 0);
            let (pc, pf) = (chern_from_winding(&q_omega(&coarse).unwrap()).unwrap(), chern_from_winding(&q_omega(&fine).unwrap()).unwrap());
            prop_assert_eq!(pc, pf);
            prop_assert_eq!(pc, if t { (rep.degree() % 2) as i64 } else { 0 });
        }
        if ra.n() == rb.n() {
            let (ma, mb) = (assemble_clutching(ra, variant(ta), 1024, 1e-9).unwrap(), assemble_clutching(rb, variant(tb), 1024, 1e-9).unwrap());
            let (da, db) = (q_omega(&ma).unwrap(), q_omega(&mb).unwrap());
            let joint = da.block_sum(&db).unwrap();
            let (pa, pb) = (chern_from_winding(&da).unwrap(), chern_from_winding(&db).unwrap());
            prop_assert_eq!(chern_from_winding(&joint).unwrap(), (pa + pb) % 2);
        }
    }
}
