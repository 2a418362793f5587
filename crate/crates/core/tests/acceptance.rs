//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use equivect_core::catalog;
use equivect_core::character::CharacterTable;
use equivect_core::clutching::{
    assemble_clutching, assemble_from_arc, chern_from_winding, q_omega, q_omega_inv, residuals, sup_distance,
    UnitaryRepModel, Variant,
};
use equivect_core::context::Context;
use equivect_core::semigroup::regime;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;
use common::{brute_force, burnside_oracle, monoid_up_to, test_groups};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const TOL: f64 = 1e-9;
const SAMPLES: usize = 4096;

fn ctx(name: &str, chi: usize) -> Result<Context, String> {
    let a = catalog::by_name(name)
        .ok_or(format!("no catalog entry {name}"))?
        .map_err(|e| e.to_string())?;
    Context::new(a, chi).map_err(|e| format!("{name}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let dt = t.elapsed();
    ensure(dt < limit, || format!("{what} took {dt:?}, limit {limit:?}"))
}

fn rank_one_count() -> Outcome {
    for n in [1, 3, 5, 7] {
        let t = Instant::now();
        let c = ctx(&format!("Z{n}"), 0)?;
        let k = c.enumerate(1).len();
        ensure(k == n, || format!("Z{n}: {k} rank-1 triples"))?;
        within(t, Duration::from_secs(1), &format!("Z{n}"))?;
    }
    Ok("Z1 Z3 Z5 Z7 have n rank-1 triples".into())
}

fn isotropy_determined() -> Outcome {
    let mut sizes = Vec::new();
    for name in ["Z4", "D3", "D4", "T"] {
        let t = Instant::now();
        let c = ctx(name, 0)?;
        ensure(regime(c.image_tag()) == "isotropy-determined", || {
            format!("{name}: wrong regime")
        })?;
        let classes = c.classify(3).map_err(|e| e.to_string())?;
        let triples = c.enumerate(3).len();
        ensure(classes.len() == triples, || {
            format!("{name}: {} classes vs {triples} triples", classes.len())
        })?;
        ensure(classes.iter().all(|k| k.twin_bit.is_none()), || {
            format!("{name}: twin bit present")
        })?;
        within(t, Duration::from_secs(10), name)?;
        sizes.push(format!("{name}={triples}"));
    }
    Ok(format!("classes = triples at rank <= 3 ({})", sizes.join(" ")))
}

/// Parity of the class with the given twin bit, from the clutching construction alone.
fn oracle_parity(c: &Context, m_minus: &[usize], variant: Variant) -> Result<i64, String> {
    let rep = UnitaryRepModel::build(c, m_minus).map_err(|e| e.to_string())?;
    rep.check(1e-10).map_err(|e| e.to_string())?;
    let up = assemble_clutching(&rep, variant, SAMPLES, TOL).map_err(|e| e.to_string())?;
    residuals(&rep, &up)
        .and_then(|r| r.within(TOL))
        .map_err(|e| e.to_string())?;
    let w = chern_from_winding(&up).map_err(|e| e.to_string())?;
    ensure(w == 0, || format!("S2 winding {w} over the equator"))?;
    chern_from_winding(&q_omega(&up).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn twin_classes() -> Outcome {
    let t = Instant::now();
    let z3 = ctx("Z3", 0)?;
    let classes = z3.classify(1).map_err(|e| e.to_string())?;
    ensure(classes.len() == 6, || format!("Z3: {} classes", classes.len()))?;
    for pair in classes.chunks(2) {
        let p: BTreeSet<_> = pair.iter().map(|k| k.chern_parity).collect();
        ensure(p == BTreeSet::from([Some(0), Some(1)]), || {
            format!("Z3 twin parities {p:?}")
        })?;
    }
    for k in &classes {
        let v = if k.twin_bit == Some(1) {
            Variant::Twisted
        } else {
            Variant::Trivial
        };
        let p = oracle_parity(&z3, &k.triple.m_minus, v)?;
        ensure(p == k.twin_bit.unwrap_or(0) as i64, || {
            format!("Z3 oracle parity {p} for {k:?}")
        })?;
    }

    let q = ctx("Q8xZ3", 4)?;
    ensure(q.chi_degree() == 2, || {
        "Q8xZ3 row 4 is not the degree-2 character".into()
    })?;
    let triples = q.enumerate(2);
    ensure(!triples.is_empty(), || "Q8xZ3: no admissible triples".into())?;
    for tr in &triples {
        for v in [Variant::Trivial, Variant::Twisted] {
            let p = oracle_parity(&q, &tr.m_minus, v)?;
            ensure(p == 0, || format!("Q8xZ3 oracle parity {p}"))?;
        }
    }
    within(t, Duration::from_secs(30), "twin-classes")?;
    Ok(format!(
        "Z3 oracle parities 0/1, Q8xZ3 parities 0 on {} triples, N = {SAMPLES}",
        triples.len()
    ))
}

fn q_omega_correspondence() -> Outcome {
    let mut models = Vec::new();
    for (name, chi) in [("Z3", 0), ("Z5", 0), ("Q8xZ3", 4)] {
        let c = ctx(name, chi)?;
        for tr in c.enumerate(2) {
            models.push(UnitaryRepModel::build(&c, &tr.m_minus).map_err(|e| e.to_string())?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let maps = 120;
    for i in 0..maps {
        let rep = &models[i % models.len()];
        let up = assemble_from_arc(rep, rep.random_commutant_arc(&mut rng), 2048).map_err(|e| e.to_string())?;
        residuals(rep, &up)
            .and_then(|r| r.within(TOL))
            .map_err(|e| format!("input map {i}: {e}"))?;
        let down = q_omega(&up).map_err(|e| e.to_string())?;
        let r = residuals(rep, &down)
            .and_then(|r| r.within(TOL))
            .map_err(|e| format!("map {i}: {e}"))?;
        let back = q_omega_inv(&down).map_err(|e| e.to_string())?;
        let d = sup_distance(&up, &back);
        ensure(d < TOL, || format!("map {i}: round trip distance {d:e}"))?;
        worst = worst.max(r.identification).max(r.equivariance).max(d);
    }
    Ok(format!(
        "{maps} random maps over {} models, worst residual {worst:.1e}",
        models.len()
    ))
}

fn covering_transfer() -> Outcome {
    let actions = [
        ("Z1", 0),
        ("Z2", 0),
        ("Z3", 0),
        ("Z4", 0),
        ("Z5", 0),
        ("Z6", 0),
        ("D2", 0),
        ("D3", 0),
        ("D4", 0),
        ("D5", 0),
        ("T", 0),
        ("O", 0),
        ("I", 0),
        ("Q8xZ3", 4),
        ("Q8/D2", 1),
        ("S3/Z2", 1),
    ];
    for (name, chi) in actions {
        let c = ctx(name, chi)?;
        c.check_stabilizer_transfer().map_err(|e| format!("{name}: {e}"))?;
        let mut image = BTreeSet::new();
        for t in c.enumerate(3) {
            let up = c.p1_to_s2(&t);
            ensure(c.s2().system.is_solution(&up.flat()), || {
                format!("{name}: transfer not admissible")
            })?;
            let back = c.p1_to_rp2(&up).map_err(|e| e.to_string())?;
            ensure(back == t, || format!("{name}: round trip changed {t:?}"))?;
            ensure(c.s2().system.rank(&up) == c.rp2().system.rank(&t), || {
                format!("{name}: rank changed")
            })?;
            image.insert(up);
        }
        let upstairs: BTreeSet<_> = c.enumerate_s2(3).into_iter().collect();
        ensure(image == upstairs, || {
            format!("{name}: transfer is not onto at rank <= 3")
        })?;
    }
    Ok(format!(
        "{} actions, stabilizers and triples transfer bijectively",
        actions.len()
    ))
}

fn hilbert_basis_soundness() -> Outcome {
    let t = Instant::now();
    let contexts = [
        ("Z1", 0),
        ("Z3", 0),
        ("Z5", 0),
        ("Z4", 0),
        ("D3", 0),
        ("D4", 0),
        ("T", 0),
        ("Q8xZ3", 4),
        ("S3/Z2", 1),
    ];
    for (name, chi) in contexts {
        let c = ctx(name, chi)?;
        let cs = &c.rp2().system;
        let basis = c.hilbert_basis().map_err(|e| e.to_string())?;
        let generated = monoid_up_to(cs, &basis, 4);
        ensure(generated == brute_force(cs, 4), || {
            format!("{name}: basis monoid differs from brute force")
        })?;
    }
    within(t, Duration::from_secs(60), "hilbert basis")?;
    Ok(format!(
        "{} contexts agree with brute force up to rank 4",
        contexts.len()
    ))
}

fn character_oracles() -> Outcome {
    let t = Instant::now();
    let groups = test_groups();
    for (name, g) in &groups {
        let table = CharacterTable::new(g).map_err(|e| format!("{name}: {e}"))?;
        table.verify().map_err(|e| format!("{name}: {e}"))?;
        let oracle = burnside_oracle(g);
        ensure(oracle.len() == table.len(), || format!("{name}: row count"))?;
        for orow in &oracle {
            let hit =
                (0..table.len()).any(|i| table.row(i).iter().zip(orow).all(|(x, y)| (x.eval() - y).norm() < 1e-6));
            ensure(hit, || format!("{name}: oracle row unmatched"))?;
        }
        let f = table.field().clone();
        let sizes = table.class_sizes();
        for a in 0..table.len() {
            for b in 0..table.len() {
                let mut acc = f.zero();
                for row in table.rows() {
                    acc = acc + &row[a] * &row[b].conj();
                }
                let want = if a == b { (g.order() / sizes[a]) as i64 } else { 0 };
                ensure(acc == f.from_int(want), || {
                    format!("{name}: columns {a},{b} not orthogonal")
                })?;
            }
        }
    }
    within(t, Duration::from_secs(30), "character tables")?;
    Ok(format!(
        "{} groups match the Burnside oracle with exact orthogonality",
        groups.len()
    ))
}

fn nonequivariant_sanity() -> Outcome {
    let c = ctx("Z1", 0)?;
    let classes = c.classify(5).map_err(|e| e.to_string())?;
    for r in 1..=5 {
        let at: BTreeSet<_> = classes.iter().filter(|k| k.rank == r).map(|k| k.chern_parity).collect();
        let n = classes.iter().filter(|k| k.rank == r).count();
        ensure(n == 2, || format!("rank {r}: {n} classes"))?;
        ensure(at == BTreeSet::from([Some(0), Some(1)]), || {
            format!("rank {r}: parities {at:?}")
        })?;
    }
    Ok("2 classes per rank with parities {0, 1}, ranks 1..=5".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("rank-one count equals n for odd cyclic actions", rank_one_count),
        (
            "isotropy-determined regime has one class per triple",
            isotropy_determined,
        ),
        ("twin-classes regime parities match the clutching oracle", twin_classes),
        (
            "q_omega is a correspondence on random clutching maps",
            q_omega_correspondence,
        ),
        ("stabilizers and triples transfer along the covering", covering_transfer),
        (
            "Hilbert basis generates exactly the admissible triples",
            hilbert_basis_soundness,
        ),
        ("character tables match the Burnside oracle", character_oracles),
        ("trivial action gives two classes per rank", nonequivariant_sanity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{:.2?}]", i + 1, t.elapsed()),
            Err(e) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
