//! Irreducible characters with exact cyclotomic values.
//!
//! Tables are computed by Dixon's method: the class-multiplication matrices are
//! simultaneously diagonalised over `F_p` with `p ≡ 1 (mod exponent)`, and each
//! character value is recovered exactly from the eigenvalue multiplicities of
//! the representing matrix.
//!
//! Row order: by degree, then by values on the canonical class order, larger
//! real part first, then larger imaginary part. The trivial character is row 0.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cyclotomic::{CycloNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

mod modp {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(p));
        pow(a, p - 2, p)
    }

    pub fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    fn prime_factors(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// Smallest generator of `F_p^×`.
    pub fn primitive_root(p: u64) -> u64 {
        let qs = prime_factors(p - 1);
        (2..p)
            .find(|&g| qs.iter().all(|&q| pow(g, (p - 1) / q, p) != 1))
            .unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(s) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, s);
            let f = inv(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = *x * f % p;
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
        let cols = a.first().map_or(0, Vec::len);
        let pivots = rref(&mut a, p);
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][free]) % p;
            }
            basis.push(v);
        }
        basis
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    field: Arc<CyclotomicField>,
    order: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    chars: Vec<Vec<CycloNum>>,
    degrees: Vec<usize>,
}

impl CharacterTable {
    /// Table over `Q(ζ_e)` with `e` the group exponent.
    pub fn new(g: &FiniteGroup) -> Result<CharacterTable> {
        let field = CyclotomicField::new(g.exponent() as u32);
        Self::compute(g, &field)
    }

    /// Table with values in `field`, whose conductor must be a multiple of the exponent.
    pub fn compute(g: &FiniteGroup, field: &Arc<CyclotomicField>) -> Result<CharacterTable> {
        let n = g.order();
        let e = g.exponent();
        let m = field.conductor() as usize;
        if !m.is_multiple_of(e) {
            return Err(Error::ConductorMismatch(field.conductor(), e as u32));
        }
        let classes = g.conjugacy_classes();
        let r = classes.len();
        let mut class_of = vec![0; n];
        for (k, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = k;
            }
        }
        let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();

        // p ≡ 1 (mod e), p > |G| and p > 2√|G|: |G| is invertible and degrees lift uniquely
        let mut p = (e as u64) + 1;
        while !(modp::is_prime(p) && p as usize > n && p >= 3) {
            p += e as u64;
        }

        // cmat[i][j][k] = #{x ∈ C_i : x⁻¹ g_k ∈ C_j}
        let mut cmat = vec![vec![vec![0u64; r]; r]; r];
        for (i, ci) in classes.iter().enumerate() {
            for (k, ck) in classes.iter().enumerate() {
                let gk = ck[0];
                for &x in ci {
                    let y = g.mul(g.inv(x), gk);
                    cmat[i][class_of[y]][k] += 1;
                }
            }
        }
        let apply = |i: usize, v: &[u64]| -> Vec<u64> {
            (0..r)
                .map(|j| (0..r).fold(0, |acc, k| (acc + cmat[i][j][k] % p * v[k]) % p))
                .collect()
        };

        // simultaneous eigenspaces, each kept as an RREF basis
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect()];
        for i in 1..r {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mut next = Vec::new();
            for mut basis in spaces {
                if basis.len() == 1 {
                    next.push(basis);
                    continue;
                }
                let piv = modp::rref(&mut basis, p);
                let d = basis.len();
                let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(i, b)).collect();
                // a[t][s] = coordinate t of M_i b_s
                let a: Vec<Vec<u64>> = (0..d).map(|t| (0..d).map(|s| images[s][piv[t]]).collect()).collect();
                let mut found = 0;
                for lambda in 0..p {
                    if found == d {
                        break;
                    }
                    let mut shifted = a.clone();
                    for (t, row) in shifted.iter_mut().enumerate() {
                        row[t] = (row[t] + p - lambda) % p;
                    }
                    let ker = modp::nullspace(shifted, p);
                    if ker.is_empty() {
                        continue;
                    }
                    found += ker.len();
                    let sub: Vec<Vec<u64>> = ker
                        .iter()
                        .map(|x| {
                            (0..r)
                                .map(|c| (0..d).fold(0, |acc, s| (acc + x[s] * basis[s][c]) % p))
                                .collect()
                        })
                        .collect();
                    next.push(sub);
                }
                if found != d {
                    return Err(Error::Inconsistent("class matrix not diagonalisable mod p".into()));
                }
            }
            spaces = next;
        }
        if spaces.len() != r {
            return Err(Error::Inconsistent(
                "class matrices failed to separate characters".into(),
            ));
        }

        // power maps of class representatives up to the exponent
        let powers: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| {
                let mut x = 0;
                (0..e)
                    .map(|_| {
                        let cls = class_of[x];
                        x = g.mul(x, c[0]);
                        cls
                    })
                    .collect()
            })
            .collect();
        let zhat = modp::pow(modp::primitive_root(p), (p - 1) / e as u64, p);
        let inv_e = modp::inv(e as u64 % p, p);
        let step = (m / e) as i64;
        let bound = libm::sqrt(n as f64) as u64 + 1;

        let mut rows: Vec<(usize, Vec<CycloNum>)> = Vec::with_capacity(r);
        for space in spaces {
            let w = &space[0];
            if w[0] == 0 {
                return Err(Error::Inconsistent("central character vanishes at the identity".into()));
            }
            let s = modp::inv(w[0], p);
            let w: Vec<u64> = w.iter().map(|&x| x * s % p).collect();
            let denom = (0..r).fold(0, |acc, k| {
                let kstar = class_of[g.inv(classes[k][0])];
                (acc + w[k] * w[kstar] % p * modp::inv(sizes[k] % p, p)) % p
            });
            if denom == 0 {
                return Err(Error::Inconsistent("degree denominator vanishes mod p".into()));
            }
            let deg_sq = (n as u64 % p) * modp::inv(denom, p) % p;
            let deg = (1..=bound)
                .find(|d| d * d % p == deg_sq)
                .ok_or_else(|| Error::Inconsistent("degree is not a small square root".into()))?;
            let chi_modp: Vec<u64> = (0..r)
                .map(|k| w[k] * (deg % p) % p * modp::inv(sizes[k] % p, p) % p)
                .collect();
            let mut values = Vec::with_capacity(r);
            for k in 0..r {
                let mut terms = Vec::new();
                let mut total = 0;
                for l in 0..e {
                    let mut acc = 0;
                    for j in 0..e {
                        let z = modp::pow(zhat, ((j * l) % e) as u64, p);
                        let zinv = modp::inv(z, p);
                        acc = (acc + chi_modp[powers[k][j]] * zinv) % p;
                    }
                    let mult = acc * inv_e % p;
                    if mult > deg {
                        return Err(Error::Inconsistent("eigenvalue multiplicity exceeds degree".into()));
                    }
                    total += mult;
                    if mult > 0 {
                        terms.push((l as i64 * step, mult as i64));
                    }
                }
                if total != deg {
                    return Err(Error::Inconsistent(
                        "eigenvalue multiplicities do not sum to degree".into(),
                    ));
                }
                values.push(field.from_exponent_sum(&terms));
            }
            rows.push((deg as usize, values));
        }

        rows.sort_by(|(da, a), (db, b)| da.cmp(db).then_with(|| compare_rows(a, b)));
        let degrees = rows.iter().map(|(d, _)| *d).collect();
        let chars = rows.into_iter().map(|(_, v)| v).collect();
        let table = CharacterTable {
            field: field.clone(),
            order: n,
            classes,
            class_of,
            chars,
            degrees,
        };
        table.verify()?;
        Ok(table)
    }

    /// Checks `Σ deg² = |G|` and exact row orthogonality.
    pub fn verify(&self) -> Result<()> {
        let sq: usize = self.degrees.iter().map(|d| d * d).sum();
        if sq != self.order || self.chars.len() != self.classes.len() {
            return Err(Error::Inconsistent(format!(
                "degree squares sum to {sq}, not {}",
                self.order
            )));
        }
        for i in 0..self.chars.len() {
            for j in i..self.chars.len() {
                let ip = self.inner_product(&self.chars[i], &self.chars[j]);
                let want = if i == j { 1 } else { 0 };
                if ip != self.field.from_int(want) {
                    return Err(Error::Inconsistent(format!("rows {i} and {j} are not orthonormal")));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, row: usize) -> usize {
        self.degrees[row]
    }

    /// Values of one irreducible on the classes.
    pub fn row(&self, row: usize) -> &[CycloNum] {
        &self.chars[row]
    }

    pub fn rows(&self) -> &[Vec<CycloNum>] {
        &self.chars
    }

    /// Value of an irreducible at an element of the group.
    pub fn value(&self, row: usize, x: usize) -> &CycloNum {
        &self.chars[row][self.class_of[x]]
    }

    /// `(1/|G|) Σ_k |C_k| f_k conj(g_k)` for class functions given per class.
    pub fn inner_product(&self, f: &[CycloNum], g: &[CycloNum]) -> CycloNum {
        let mut acc = self.field.zero();
        for (k, c) in self.classes.iter().enumerate() {
            let term = &f[k] * &g[k].conj();
            acc = acc + &self.field.from_int(c.len() as i64) * &term;
        }
        &acc * &self.field.from_ratio(1, self.order as i64)
    }

    /// Multiplicities of every irreducible in a class function; they must be
    /// non-negative integers.
    pub fn decompose(&self, f: &[CycloNum]) -> Result<Vec<usize>> {
        self.chars
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let ip = self.inner_product(f, row);
                ip.to_integer()
                    .and_then(|v| v.to_usize())
                    .ok_or_else(|| Error::Inconsistent(format!("multiplicity of row {i} is {ip}")))
            })
            .collect()
    }

    /// The class function `Σ mults[i]·χ_i`.
    pub fn combine(&self, mults: &[usize]) -> Vec<CycloNum> {
        let mut out = vec![self.field.zero(); self.classes.len()];
        for (row, &m) in self.chars.iter().zip(mults) {
            if m == 0 {
                continue;
            }
            let c = self.field.from_bigint(BigInt::from(m));
            for (o, v) in out.iter_mut().zip(row) {
                *o = &*o + &(&c * v);
            }
        }
        out
    }

    /// Dimension of the representation with the given multiplicities.
    pub fn dimension(&self, mults: &[usize]) -> usize {
        mults.iter().zip(&self.degrees).map(|(m, d)| m * d).sum()
    }
}

fn compare_rows(a: &[CycloNum], b: &[CycloNum]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x == y {
            continue;
        }
        let (zx, zy) = (x.eval(), y.eval());
        let by_float = if (zx.re - zy.re).abs() > 1e-9 {
            zy.re.partial_cmp(&zx.re)
        } else if (zx.im - zy.im).abs() > 1e-9 {
            zy.im.partial_cmp(&zx.im)
        } else {
            None
        };
        return by_float.unwrap_or_else(|| x.cmp_repr(y));
    }
    Ordering::Equal
}

/// Character table of a subgroup of an ambient group, addressed by ambient indices.
#[derive(Debug, Clone)]
pub struct LocalTable {
    sub: Subgroup,
    group: FiniteGroup,
    table: CharacterTable,
}

impl LocalTable {
    pub fn new(ambient: &FiniteGroup, sub: Subgroup, field: &Arc<CyclotomicField>) -> Result<LocalTable> {
        let group = sub.to_group(ambient);
        let table = CharacterTable::compute(&group, field)?;
        Ok(LocalTable { sub, group, table })
    }

    pub fn whole(ambient: &FiniteGroup, field: &Arc<CyclotomicField>) -> Result<LocalTable> {
        Self::new(ambient, Subgroup::whole(ambient), field)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Value of an irreducible at a member given by its ambient index.
    pub fn value(&self, row: usize, x: usize) -> &CycloNum {
        let local = self.sub.local_index(x).expect("element belongs to the subgroup");
        self.table.value(row, local)
    }

    /// Ambient index of the representative of each local class.
    pub fn class_representatives(&self) -> Vec<usize> {
        self.table.classes().iter().map(|c| self.sub.members()[c[0]]).collect()
    }

    /// Decomposes an ambient-indexed class function restricted to this subgroup.
    pub fn decompose_fn<F: Fn(usize) -> CycloNum>(&self, f: F) -> Result<Vec<usize>> {
        let vals: Vec<CycloNum> = self.class_representatives().into_iter().map(f).collect();
        self.table.decompose(&vals)
    }
}

/// `b[i][j]` = multiplicity of `small`'s irreducible `j` in the restriction of
/// `big`'s irreducible `i`.
pub fn branching_matrix(big: &LocalTable, small: &LocalTable) -> Result<Vec<Vec<usize>>> {
    if !small.sub.is_subgroup_of(&big.sub) {
        return Err(Error::InvalidInput("restriction target is not a subgroup".into()));
    }
    let reps = small.class_representatives();
    (0..big.len())
        .map(|i| {
            let vals: Vec<CycloNum> = reps.iter().map(|&x| big.value(i, x).clone()).collect();
            let b = small.table.decompose(&vals)?;
            if small.table.dimension(&b) != big.table.degree(i) {
                return Err(Error::Inconsistent("restriction changed the dimension".into()));
            }
            Ok(b)
        })
        .collect()
}

/// Multiplicities of the restriction of `Σ w_i ψ_i` from `big` to `small`.
pub fn restrict_multiplicities(big: &LocalTable, w: &[usize], small: &LocalTable) -> Result<Vec<usize>> {
    let b = branching_matrix(big, small)?;
    Ok(apply_branching(&b, w))
}

/// `wᵀ b`: restriction of a multiplicity vector through a branching matrix.
pub fn apply_branching(b: &[Vec<usize>], w: &[usize]) -> Vec<usize> {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![0; cols];
    for (row, &m) in b.iter().zip(w) {
        for (o, &x) in out.iter_mut().zip(row) {
            *o += m * x;
        }
    }
    out
}

/// Row index of `g·χ`, where `(g·χ)(h) = χ(g⁻¹hg)` and `h` is normal in the ambient group.
pub fn conjugate_character(ambient: &FiniteGroup, h: &LocalTable, row: usize, g: usize) -> Result<usize> {
    let ginv = ambient.inv(g);
    let reps = h.class_representatives();
    let vals: Vec<&CycloNum> = reps
        .iter()
        .map(|&x| {
            let y = ambient.conjugate(x, ginv);
            if !h.sub.contains(y) {
                return Err(Error::InvalidInput("subgroup is not normal".into()));
            }
            Ok(h.value(row, y))
        })
        .collect::<Result<_>>()?;
    (0..h.len())
        .find(|&j| h.table.row(j).iter().zip(&vals).all(|(a, b)| a == *b))
        .ok_or_else(|| Error::Inconsistent("conjugated character is not irreducible".into()))
}

/// The permutation of `Irr(H)` induced by `g`; asserted to be a bijection.
pub fn conjugation_permutation(ambient: &FiniteGroup, h: &LocalTable, g: usize) -> Result<Vec<usize>> {
    let perm: Vec<usize> = (0..h.len())
        .map(|row| conjugate_character(ambient, h, row, g))
        .collect::<Result<_>>()?;
    let mut seen = vec![false; perm.len()];
    for &j in &perm {
        if core::mem::replace(&mut seen[j], true) {
            return Err(Error::Inconsistent("conjugation does not permute characters".into()));
        }
    }
    Ok(perm)
}

/// `G_χ = {g : g·χ = χ}` inside the ambient group.
pub fn chi_stabilizer(ambient: &FiniteGroup, h: &LocalTable, chi: usize) -> Result<Subgroup> {
    let mut members = Vec::new();
    for g in 0..ambient.order() {
        if conjugate_character(ambient, h, chi, g)? == chi {
            members.push(g);
        }
    }
    let s = Subgroup::new(ambient, members)?;
    debug_assert!(h.sub.is_subgroup_of(&s));
    Ok(s)
}

/// `Some(c)` when the restriction of `Σ w_i ψ_i` from `k` to `h` equals `c·χ`.
pub fn isotypical_multiple(k: &LocalTable, w: &[usize], h: &LocalTable, chi: usize) -> Result<Option<usize>> {
    let res = restrict_multiplicities(k, w, h)?;
    let others_vanish = res.iter().enumerate().all(|(j, &m)| j == chi || m == 0);
    Ok(others_vanish.then_some(res[chi]))
}

pub fn is_chi_isotypical(k: &LocalTable, w: &[usize], h: &LocalTable, chi: usize) -> Result<bool> {
    Ok(isotypical_multiple(k, w, h, chi)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Permutation;

    fn q8() -> FiniteGroup {
        let li: Permutation = vec![2, 3, 1, 0, 6, 7, 5, 4];
        let lj: Permutation = vec![4, 5, 7, 6, 1, 0, 2, 3];
        FiniteGroup::from_permutations(&[li, lj]).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn cyclic_three() {
        let t = CharacterTable::new(&FiniteGroup::cyclic(3)).unwrap();
        let f = t.field().clone();
        assert_eq!(t.degrees(), &[1, 1, 1]);
        assert!(t.row(0).iter().all(CycloNum::is_one));
        // row 1 sends the generator to ζ₃ (positive imaginary part)
        assert_eq!(t.value(1, 1), &f.zeta_pow(1));
        assert_eq!(t.value(2, 1), &f.zeta_pow(2));
    }

    #[test]
    fn degrees_of_small_groups() {
        assert_eq!(CharacterTable::new(&q8()).unwrap().degrees(), &[1, 1, 1, 1, 2]);
        assert_eq!(CharacterTable::new(&s3()).unwrap().degrees(), &[1, 1, 2]);
        assert_eq!(CharacterTable::new(&FiniteGroup::trivial()).unwrap().degrees(), &[1]);
    }

    #[test]
    fn q8_degree_two_restricted_to_centre() {
        let g = q8();
        let f = CyclotomicField::new(4);
        let whole = LocalTable::whole(&g, &f).unwrap();
        let centre = Subgroup::filter(&g, |x| (0..8).all(|y| g.mul(x, y) == g.mul(y, x))).unwrap();
        assert_eq!(centre.order(), 2);
        let z = LocalTable::new(&g, centre, &f).unwrap();
        let res = restrict_multiplicities(&whole, &[0, 0, 0, 0, 1], &z).unwrap();
        assert_eq!(res, vec![0, 2]);
        let full = restrict_multiplicities(&whole, &[1, 2, 0, 1, 3], &whole).unwrap();
        assert_eq!(full, vec![1, 2, 0, 1, 3]);
    }

    #[test]
    fn regular_character_restricts_to_multiples_of_trivial() {
        let g = FiniteGroup::cyclic(3);
        let f = CyclotomicField::new(3);
        let whole = LocalTable::whole(&g, &f).unwrap();
        let triv = LocalTable::new(&g, Subgroup::trivial(&g), &f).unwrap();
        assert_eq!(restrict_multiplicities(&whole, &[1, 1, 1], &triv).unwrap(), vec![3]);
    }

    #[test]
    fn reflection_swaps_rotation_characters() {
        let g = s3();
        let f = CyclotomicField::new(6);
        let rot = Subgroup::filter(&g, |x| g.element_order(x) != 2).unwrap();
        let b = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let h = LocalTable::new(&g, rot, &f).unwrap();
        assert_eq!(conjugation_permutation(&g, &h, b).unwrap(), vec![0, 2, 1]);
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(conjugation_permutation(&g, &h, r).unwrap(), vec![0, 1, 2]);
        let stab = chi_stabilizer(&g, &h, 1).unwrap();
        assert_eq!(stab.members(), h.subgroup().members());
        assert_eq!(chi_stabilizer(&g, &h, 0).unwrap().order(), 6);
    }

    #[test]
    fn isotypical_tests() {
        let g = q8();
        let f = CyclotomicField::new(4);
        let whole = LocalTable::whole(&g, &f).unwrap();
        assert!(is_chi_isotypical(&whole, &[0, 0, 0, 0, 2], &whole, 4).unwrap());
        assert!(!is_chi_isotypical(&whole, &[0, 1, 0, 0, 1], &whole, 4).unwrap());

        let z3 = FiniteGroup::cyclic(3);
        let prod = FiniteGroup::direct_product(&g, &z3);
        let f12 = CyclotomicField::new(12);
        let big = LocalTable::whole(&prod, &f12).unwrap();
        let q = Subgroup::filter(&prod, |x| x % 3 == 0).unwrap();
        let h = LocalTable::new(&prod, q, &f12).unwrap();
        let chi = (0..h.len()).find(|&i| h.table().degree(i) == 2).unwrap();
        for psi in (0..big.len()).filter(|&i| big.table().degree(i) == 2) {
            let mut w = vec![0; big.len()];
            w[psi] = 1;
            assert_eq!(isotypical_multiple(&big, &w, &h, chi).unwrap(), Some(1));
        }
        assert_eq!(chi_stabilizer(&prod, &h, chi).unwrap().order(), 24);
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let t = CharacterTable::new(&FiniteGroup::cyclic(2)).unwrap();
        let f = t.field().clone();
        assert!(t.decompose(&[f.one(), f.zero()]).is_err());
    }
}
