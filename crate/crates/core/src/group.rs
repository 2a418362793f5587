//! Finite groups materialized as multiplication tables.
//!
//! Element `0` is always the identity. Groups built from generators list their
//! elements in breadth-first discovery order (right multiplication by the
//! generators in the order given); every downstream index (classes, characters,
//! stabilizers) refers to that order.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default limit on the size of a generated group.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A permutation of `0..n` in image form: `p[i]` is the image of `i`.
pub type Permutation = Vec<usize>;

/// Composition of permutations as functions: `(p ∘ q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Permutation {
    q.iter().map(|&i| p[i]).collect()
}

fn check_permutation(p: &[usize], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "permutations act on sets of different sizes ({} vs {n})",
            p.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return Err(Error::InvalidPermutation(format!("{p:?} is not a bijection of 0..{n}")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// `(parent, generator)` for each element; `None` at the identity.
pub type WordTree = Vec<Option<(usize, usize)>>;

/// Breadth-first closure of `gens` under `mul`, starting from `identity`.
///
/// Returns the elements in discovery order together with, for each non-identity
/// element, the `(earlier element, generator)` pair it was reached from.
pub fn closure<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<(Vec<T>, WordTree)>
where
    T: Ord + Clone,
    F: Fn(&T, &T) -> T,
{
    let mut elems = vec![identity.clone()];
    let mut parent = vec![None];
    let mut index = BTreeMap::new();
    index.insert(identity, 0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (k, g) in gens.iter().enumerate() {
            let y = mul(&elems[i], g);
            if index.contains_key(&y) {
                continue;
            }
            if elems.len() >= cap {
                return Err(Error::GroupTooLarge { cap });
            }
            index.insert(y.clone(), elems.len());
            queue.push_back(elems.len());
            elems.push(y);
            parent.push(Some((i, k)));
        }
    }
    Ok((elems, parent))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// The group generated by permutations of a common finite set.
    pub fn from_permutations(gens: &[Permutation]) -> Result<FiniteGroup> {
        Self::from_permutations_capped(gens, DEFAULT_ORDER_CAP)
    }

    /// Like [`from_permutations`](Self::from_permutations), also returning the
    /// element index of each generator.
    pub fn from_permutations_indexed(gens: &[Permutation], cap: usize) -> Result<(FiniteGroup, Vec<usize>)> {
        let n = gens.first().map_or(0, Vec::len);
        for g in gens {
            check_permutation(g, n)?;
        }
        let identity: Permutation = (0..n).collect();
        let (elems, _) = closure(identity, gens, |a, b| compose(a, b), cap)?;
        let index: BTreeMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let order = elems.len();
        let mut mult = vec![0; order * order];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mult[i * order + j] = index[&compose(a, b)];
            }
        }
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        Ok((Self::from_table(order, mult)?, gen_idx))
    }

    pub fn from_permutations_capped(gens: &[Permutation], cap: usize) -> Result<FiniteGroup> {
        Ok(Self::from_permutations_indexed(gens, cap)?.0)
    }

    /// Builds a group from a flat `order × order` table with identity at `0`,
    /// verifying the group axioms.
    pub fn from_table(order: usize, mult: Vec<usize>) -> Result<FiniteGroup> {
        if order == 0 || mult.len() != order * order {
            return Err(Error::InvalidInput("multiplication table has the wrong size".into()));
        }
        if mult.iter().any(|&x| x >= order) {
            return Err(Error::InvalidInput("table entry out of range".into()));
        }
        let mut inv = vec![usize::MAX; order];
        for x in 0..order {
            if mult[x] != x || mult[x * order] != x {
                return Err(Error::InvalidInput("element 0 is not the identity".into()));
            }
            inv[x] = (0..order)
                .find(|&y| mult[x * order + y] == 0)
                .ok_or_else(|| Error::InvalidInput(format!("element {x} has no inverse")))?;
        }
        let g = FiniteGroup {
            order,
            mult,
            inv,
            names: None,
        };
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let ok = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !ok(a, b, c) {
                            return Err(Error::InvalidInput(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            // deterministic pseudo-random sample of 10^4 triples
            let mut s: u64 = 0x9E37_79B9_7F4A_7C15;
            let mut next = || {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                (s % n as u64) as usize
            };
            for _ in 0..10_000 {
                let (a, b, c) = (next(), next(), next());
                if !ok(a, b, c) {
                    return Err(Error::InvalidInput(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup {
            order: 1,
            mult: vec![0],
            inv: vec![0],
            names: None,
        }
    }

    /// The cyclic group `Z_n`, element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let mult = (0..n * n).map(|ij| (ij / n + ij % n) % n).collect();
        Self::from_table(n, mult).expect("cyclic table is a group")
    }

    /// `A × B` with element `(a, b)` at index `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mult = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                mult[x * n + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        let inv = (0..n).map(|x| a.inv(x / nb) * nb + b.inv(x % nb)).collect();
        FiniteGroup {
            order: n,
            mult,
            inv,
            names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> FiniteGroup {
        assert_eq!(names.len(), self.order);
        self.names = Some(names);
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        (0..self.order).fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// For each element, how it is reached from the identity by right
    /// multiplication with `gens`. Fails if `gens` do not generate the group.
    pub fn word_tree(&self, gens: &[usize]) -> Result<WordTree> {
        let mut parent = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(parent)
        } else {
            Err(Error::InvalidInput("elements do not generate the group".into()))
        }
    }

    /// Extends generator images to every element along [`word_tree`](Self::word_tree)
    /// and checks the result is a homomorphism: `f(x·g) = f(x)·f(g)` for every
    /// element `x` and generator `g`, which forces multiplicativity on all pairs.
    pub fn extend_hom<T, M, E>(&self, gens: &[usize], images: &[T], identity: T, mul: M, eq: E) -> Result<Vec<T>>
    where
        T: Clone,
        M: Fn(&T, &T) -> T,
        E: Fn(&T, &T) -> bool,
    {
        assert_eq!(gens.len(), images.len());
        let tree = self.word_tree(gens)?;
        let mut order: Vec<usize> = (0..self.order).collect();
        // parents come first in breadth-first depth order
        let mut depth = vec![0usize; self.order];
        for x in 0..self.order {
            let mut y = x;
            while let Some((p, _)) = tree[y] {
                depth[x] += 1;
                y = p;
            }
        }
        order.sort_by_key(|&x| depth[x]);
        let mut out: Vec<Option<T>> = vec![None; self.order];
        out[0] = Some(identity);
        for x in order.into_iter().skip(1) {
            let (p, k) = tree[x].expect("non-identity element has a parent");
            let v = mul(out[p].as_ref().expect("parent assigned"), &images[k]);
            out[x] = Some(v);
        }
        let out: Vec<T> = out.into_iter().map(|v| v.expect("all assigned")).collect();
        if !eq(&out[0], &mul(&out[0], &out[0])) {
            return Err(Error::NotAHomomorphism("identity is not sent to an idempotent".into()));
        }
        for x in 0..self.order {
            for (k, &g) in gens.iter().enumerate() {
                if !eq(&out[self.mul(x, g)], &mul(&out[x], &images[k])) {
                    return Err(Error::NotAHomomorphism(format!(
                        "image of element {x} times generator {k} is inconsistent"
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Conjugacy classes ordered by their smallest element; each class sorted.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.order).map(|g| self.conjugate(x, g)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &y in &cls {
                class_of[y] = classes.len();
            }
            classes.push(cls);
        }
        classes
    }
}

/// A subgroup, stored as the sorted list of member indices of its parent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
}

impl Subgroup {
    /// Verifies closure and wraps the member set.
    pub fn new(parent: &FiniteGroup, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        let sub = Subgroup {
            parent_order: parent.order(),
            members,
        };
        if !sub.contains(0) {
            return Err(Error::Inconsistent("subset misses the identity".into()));
        }
        for &a in &sub.members {
            if !sub.contains(parent.inv(a)) {
                return Err(Error::Inconsistent(format!("subset not closed under inverse at {a}")));
            }
            for &b in &sub.members {
                if !sub.contains(parent.mul(a, b)) {
                    return Err(Error::Inconsistent(format!(
                        "subset not closed under multiplication at ({a},{b})"
                    )));
                }
            }
        }
        if !parent.order().is_multiple_of(sub.order()) {
            return Err(Error::Inconsistent("Lagrange divisibility fails".into()));
        }
        Ok(sub)
    }

    pub fn whole(parent: &FiniteGroup) -> Subgroup {
        Subgroup {
            parent_order: parent.order(),
            members: (0..parent.order()).collect(),
        }
    }

    pub fn trivial(parent: &FiniteGroup) -> Subgroup {
        Subgroup {
            parent_order: parent.order(),
            members: vec![0],
        }
    }

    /// The subgroup generated by the given elements.
    pub fn generated(parent: &FiniteGroup, gens: &[usize]) -> Subgroup {
        let (elems, _) =
            closure(0usize, gens, |a, b| parent.mul(*a, *b), usize::MAX).expect("no cap on subgroup closure");
        Subgroup::new(parent, elems).expect("closure is a subgroup")
    }

    /// Members satisfying a predicate, which must describe a subgroup.
    pub fn filter<F: Fn(usize) -> bool>(parent: &FiniteGroup, pred: F) -> Result<Subgroup> {
        Subgroup::new(parent, (0..parent.order()).filter(|&x| pred(x)).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            parent_order: self.parent_order,
            members: self.members.iter().copied().filter(|&x| other.contains(x)).collect(),
        }
    }

    pub fn is_normal(&self, parent: &FiniteGroup) -> bool {
        (0..parent.order()).all(|g| self.members.iter().all(|&k| self.contains(parent.conjugate(k, g))))
    }

    /// Position of a parent element inside the member list.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// The subgroup as a standalone group; local index `i` is member `members[i]`.
    pub fn to_group(&self, parent: &FiniteGroup) -> FiniteGroup {
        let n = self.order();
        let mut mult = vec![0; n * n];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                mult[i * n + j] = self.local_index(parent.mul(a, b)).expect("closed");
            }
        }
        let inv = self
            .members
            .iter()
            .map(|&a| self.local_index(parent.inv(a)).expect("closed"))
            .collect();
        FiniteGroup {
            order: n,
            mult,
            inv,
            names: None,
        }
    }
}

/// A homomorphism between two table groups.
#[derive(Debug, Clone)]
pub struct GroupHom<'a> {
    domain: &'a FiniteGroup,
    codomain: &'a FiniteGroup,
    images: Vec<usize>,
}

impl<'a> GroupHom<'a> {
    /// Checks `images[xy] = images[x]·images[y]` for all pairs.
    pub fn new(domain: &'a FiniteGroup, codomain: &'a FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.order() || images.iter().any(|&y| y >= codomain.order()) {
            return Err(Error::NotAHomomorphism("image list has the wrong shape".into()));
        }
        for x in 0..domain.order() {
            for y in 0..domain.order() {
                if images[domain.mul(x, y)] != codomain.mul(images[x], images[y]) {
                    return Err(Error::NotAHomomorphism(format!("fails on the pair ({x},{y})")));
                }
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            images,
        })
    }

    pub fn domain(&self) -> &FiniteGroup {
        self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        self.codomain
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Elements sent to the identity; always a normal subgroup.
    pub fn kernel(&self) -> Subgroup {
        let k = Subgroup::filter(self.domain, |x| self.images[x] == self.codomain.identity())
            .expect("kernel of a homomorphism is a subgroup");
        debug_assert!(k.is_normal(self.domain));
        k
    }
}
