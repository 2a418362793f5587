//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use equivect_core::group::{FiniteGroup, Permutation};
use equivect_core::semigroup::{AdmissibleTriple, ConstraintSystem};
use nalgebra::{Complex, DMatrix};

/// Vectors `m` with `Σ m_i·deg_i = target`.
fn exact_dimension(degs: &[usize], target: usize) -> Vec<Vec<usize>> {
    match degs.split_first() {
        None => {
            if target == 0 {
                vec![vec![]]
            } else {
                vec![]
            }
        }
        Some((&d, rest)) => (0..=target / d)
            .flat_map(|m| {
                exact_dimension(rest, target - m * d).into_iter().map(move |mut tail| {
                    tail.insert(0, m);
                    tail
                })
            })
            .collect(),
    }
}

/// Every triple whose three blocks have the same dimension `1..=r`, filtered by the equations.
pub fn brute_force(cs: &ConstraintSystem, r: usize) -> BTreeSet<AdmissibleTriple> {
    let sizes = cs.sizes();
    let degs = cs.degrees();
    let mut out = BTreeSet::new();
    for dim in 1..=r {
        let [a, b, c] = [0, 1, 2].map(|i| exact_dimension(&degs[i], dim));
        for x in &a {
            for y in &b {
                for z in &c {
                    let flat: Vec<usize> = x.iter().chain(y).chain(z).copied().collect();
                    if cs.is_solution(&flat) {
                        out.insert(AdmissibleTriple::from_flat(&flat, sizes));
                    }
                }
            }
        }
    }
    out
}

/// Sums of basis elements of rank at most `r`.
pub fn monoid_up_to(cs: &ConstraintSystem, basis: &[AdmissibleTriple], r: usize) -> BTreeSet<AdmissibleTriple> {
    let mut seen: BTreeSet<AdmissibleTriple> = BTreeSet::new();
    let mut layer: Vec<AdmissibleTriple> = vec![AdmissibleTriple::zero(cs.sizes())];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for t in &layer {
            for b in basis {
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

pub type C64 = Complex<f64>;

pub fn cycle(n: usize, pts: &[usize]) -> Permutation {
    let mut p: Permutation = (0..n).collect();
    for w in 0..pts.len() {
        p[pts[w]] = pts[(w + 1) % pts.len()];
    }
    p
}

pub fn dihedral(n: usize) -> FiniteGroup {
    let rot = cycle(n, &(0..n).collect::<Vec<_>>());
    let refl: Permutation = (0..n).map(|i| (n - i) % n).collect();
    FiniteGroup::from_permutations(&[rot, refl]).unwrap()
}

pub fn q8() -> FiniteGroup {
    FiniteGroup::from_permutations(&[vec![2, 3, 1, 0, 6, 7, 5, 4], vec![4, 5, 7, 6, 1, 0, 2, 3]]).unwrap()
}

pub fn test_groups() -> Vec<(String, FiniteGroup)> {
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push((format!("Z{n}"), FiniteGroup::cyclic(n)));
    }
    for n in 3..=6 {
        out.push((format!("D{n}"), dihedral(n)));
    }
    out.push((
        "A4".into(),
        FiniteGroup::from_permutations(&[cycle(4, &[0, 1, 2]), vec![1, 0, 3, 2]]).unwrap(),
    ));
    out.push((
        "S4".into(),
        FiniteGroup::from_permutations(&[cycle(4, &[0, 1, 2, 3]), cycle(4, &[0, 1])]).unwrap(),
    ));
    out.push((
        "A5".into(),
        FiniteGroup::from_permutations(&[cycle(5, &[0, 1, 2, 3, 4]), cycle(5, &[0, 1, 2])]).unwrap(),
    ));
    out.push(("Q8".into(), q8()));
    out
}

/// Character rows from the eigenvectors of a generic combination of class matrices.
pub fn burnside_oracle(g: &FiniteGroup) -> Vec<Vec<C64>> {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let mut class_of = vec![0; g.order()];
    for (k, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = k;
        }
    }
    let mut m = DMatrix::<f64>::zeros(r, r);
    for (i, ci) in classes.iter().enumerate() {
        let coef = 1.0 / (i as f64 + std::f64::consts::PI);
        for (k, ck) in classes.iter().enumerate() {
            for &x in ci {
                let y = g.mul(g.inv(x), ck[0]);
                m[(class_of[y], k)] += coef;
            }
        }
    }
    let mc: DMatrix<C64> = m.map(|x| C64::new(x, 0.0));
    let mut rows = Vec::new();
    for lambda in m.complex_eigenvalues().iter() {
        let shifted = &mc - DMatrix::<C64>::identity(r, r) * *lambda;
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.unwrap();
        let (idx, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let w: Vec<C64> = (0..r).map(|k| vt[(idx, k)].conj()).collect();
        let w: Vec<C64> = w.iter().map(|x| x / w[0]).collect();
        let denom: C64 = (0..r)
            .map(|k| {
                let kstar = class_of[g.inv(classes[k][0])];
                w[k] * w[kstar] / classes[k].len() as f64
            })
            .sum();
        let deg = (g.order() as f64 / denom.re).sqrt();
        rows.push((0..r).map(|k| w[k] * deg / classes[k].len() as f64).collect());
    }
    rows
}
