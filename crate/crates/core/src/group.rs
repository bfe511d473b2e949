//! Finite groups as multiplication tables, homomorphisms between them, and
//! the subgroup machinery consumed by the quandle constructions: fixed
//! subgroups, twisted commutators, subgroup enumeration, Frattini and
//! special-group profiles, complements.
//!
//! The identity element is always index 0. Tables are shared behind an `Arc`
//! so groups clone cheaply.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::GroupError;
use crate::perm::{Perm, PermGroup, TABLE_CAP};

/// Cap on the number of subgroups enumerated by [`FiniteGroup::all_subgroups`].
pub const SUBGROUP_CAP: usize = 100_000;

/// A finite group given by its full multiplication table, identity at 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Arc<Vec<u16>>,
    inverse: Arc<Vec<u16>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order)
    }
}

impl FiniteGroup {
    /// Validates and wraps an `n×n` table in row-major order. Checks that 0
    /// is a two-sided identity, that the operation is associative, and that
    /// every element has a two-sided inverse.
    pub fn from_table(order: usize, entries: Vec<u16>) -> Result<Self, GroupError> {
        if order == 0 || entries.len() != order * order {
            return Err(GroupError::BadTable(format!(
                "expected {} entries, got {}",
                order * order,
                entries.len()
            )));
        }
        if entries.iter().any(|&e| e as usize >= order) {
            return Err(GroupError::BadTable("entry out of range".into()));
        }
        let at = |a: usize, b: usize| entries[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::BadTable(format!(
                    "element 0 is not the identity at {a}"
                )));
            }
        }
        let mut inverse = vec![u16::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if at(a, b) == 0 && at(b, a) == 0 {
                    inverse[a] = b as u16;
                    break;
                }
            }
            if inverse[a] == u16::MAX {
                return Err(GroupError::BadTable(format!("element {a} has no inverse")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::BadTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            table: Arc::new(entries),
            inverse: Arc::new(inverse),
        })
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                entries.push(((a + b) % n) as u16);
            }
        }
        FiniteGroup::from_table(n, entries).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
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

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Closure of `seed` (plus the identity) under product; sorted.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut members = vec![0usize];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                members.push(s);
                queue.push(s);
            }
        }
        let mut w = 0;
        while w < members.len() {
            let x = members[w];
            for i in 0..members.len() {
                let y = members[i];
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set[z] {
                        in_set[z] = true;
                        members.push(z);
                    }
                }
            }
            w += 1;
        }
        members.sort_unstable();
        members
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let set: HashSet<usize> = members.iter().copied().collect();
        set.contains(&0)
            && members
                .iter()
                .all(|&a| set.contains(&self.inv(a)))
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// All subgroups, grown from cyclic subgroups by closing under pairwise
    /// join, capped at [`SUBGROUP_CAP`].
    pub fn all_subgroups(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        self.all_subgroups_capped(SUBGROUP_CAP)
    }

    pub fn all_subgroups_capped(&self, cap: usize) -> Result<Vec<Vec<usize>>, GroupError> {
        let mut keys: BTreeSet<Vec<usize>> = BTreeSet::new();
        keys.insert(vec![0]);
        for a in 1..self.order {
            keys.insert(self.subgroup_closure(&[a]));
        }
        loop {
            let pool: Vec<Vec<usize>> = keys.iter().cloned().collect();
            let before = keys.len();
            for i in 0..pool.len() {
                for j in (i + 1)..pool.len() {
                    let mut seed = pool[i].clone();
                    seed.extend_from_slice(&pool[j]);
                    keys.insert(self.subgroup_closure(&seed));
                    if keys.len() > cap {
                        return Err(GroupError::Overflow { cap });
                    }
                }
            }
            if keys.len() == before {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = keys.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
        Ok(out)
    }

    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            let mut class: BTreeSet<usize> = BTreeSet::new();
            for g in 0..self.order {
                class.insert(self.conjugate(g, a));
            }
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Largest normal subgroup of the group contained in `members`.
    pub fn core_of(&self, members: &[usize]) -> Vec<usize> {
        let mut current: HashSet<usize> = members.iter().copied().collect();
        for g in 0..self.order {
            let gi = self.inv(g);
            current.retain(|&m| {
                let c = self.mul(self.mul(gi, m), g);
                members.contains(&c)
            });
        }
        let mut out: Vec<usize> = current.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        let set: HashSet<usize> = members.iter().copied().collect();
        (0..self.order).all(|g| members.iter().all(|&m| set.contains(&self.conjugate(g, m))))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(
                    self.mul(self.mul(a, b), self.inv(a)),
                    self.inv(b),
                );
                if c != 0 {
                    gens.push(c);
                }
            }
        }
        self.subgroup_closure(&gens)
    }

    /// Intersection of all maximal subgroups, found by an exhaustive
    /// maximality scan over the subgroup lattice.
    pub fn frattini_subgroup(&self) -> Result<Vec<usize>, GroupError> {
        let subs = self.all_subgroups()?;
        let proper: Vec<&Vec<usize>> = subs.iter().filter(|s| s.len() < self.order).collect();
        let mut maximal: Vec<&Vec<usize>> = Vec::new();
        for s in &proper {
            let is_max = proper.iter().all(|t| {
                t.len() <= s.len() || !s.iter().all(|x| t.contains(x)) || s == t
            });
            if is_max {
                maximal.push(s);
            }
        }
        if maximal.is_empty() {
            // the trivial group: Frattini is the whole (trivial) group
            return Ok((0..self.order).collect());
        }
        let mut inter: HashSet<usize> = maximal[0].iter().copied().collect();
        for m in &maximal[1..] {
            inter.retain(|x| m.contains(x));
        }
        let mut out: Vec<usize> = inter.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Greedy small generating sequence.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = vec![0usize];
        while closure.len() < self.order {
            let next = (0..self.order).find(|a| !closure.contains(a)).unwrap();
            gens.push(next);
            closure = self.subgroup_closure(&gens);
        }
        gens
    }

    /// All automorphisms, found by backtracking over images of a generating
    /// sequence; candidates are pruned by element order and conjugacy class
    /// size.
    pub fn automorphisms(&self) -> Result<Vec<GroupMap>, GroupError> {
        let gens = self.generating_set();
        if gens.is_empty() {
            return Ok(vec![GroupMap::identity(self)]);
        }
        let orders: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        let mut class_size = vec![0usize; self.order];
        for class in self.conjugacy_classes() {
            for &x in &class {
                class_size[x] = class.len();
            }
        }
        let invariant: Vec<(usize, usize)> =
            (0..self.order).map(|a| (orders[a], class_size[a])).collect();

        let mut found = Vec::new();
        // partial map, defined exactly on the subgroup generated by the
        // assigned generators
        let mut img: Vec<Option<u16>> = vec![None; self.order];
        let mut hit: Vec<bool> = vec![false; self.order];
        img[0] = Some(0);
        hit[0] = true;

        struct Search<'a> {
            group: &'a FiniteGroup,
            gens: &'a [usize],
            invariant: &'a [(usize, usize)],
            found: Vec<Vec<u16>>,
        }

        impl<'a> Search<'a> {
            /// Extends the partial map by `a -> b` and closes under products.
            /// Returns the list of newly mapped elements on success so the
            /// caller can undo, or None on conflict.
            fn extend(
                &mut self,
                img: &mut Vec<Option<u16>>,
                hit: &mut Vec<bool>,
                a: usize,
                b: usize,
            ) -> Option<Vec<usize>> {
                let mut added = Vec::new();
                let mut queue = Vec::new();
                let ok = |s: &mut Self, img: &mut Vec<Option<u16>>, hit: &mut Vec<bool>,
                          added: &mut Vec<usize>, queue: &mut Vec<usize>, x: usize, y: usize|
                 -> bool {
                    match img[x] {
                        Some(cur) => cur as usize == y,
                        None => {
                            if hit[y] || s.invariant[x] != s.invariant[y] {
                                return false;
                            }
                            img[x] = Some(y as u16);
                            hit[y] = true;
                            added.push(x);
                            queue.push(x);
                            true
                        }
                    }
                };
                if !ok(self, img, hit, &mut added, &mut queue, a, b) {
                    self.undo(img, hit, &added);
                    return None;
                }
                let mut w = 0;
                while w < queue.len() {
                    let x = queue[w];
                    w += 1;
                    let xi = img[x].unwrap() as usize;
                    let domain: Vec<usize> =
                        (0..self.group.order()).filter(|&d| img[d].is_some()).collect();
                    for d in domain {
                        let di = img[d].unwrap() as usize;
                        let p1 = self.group.mul(x, d);
                        let q1 = self.group.mul(xi, di);
                        if !ok(self, img, hit, &mut added, &mut queue, p1, q1) {
                            self.undo(img, hit, &added);
                            return None;
                        }
                        let p2 = self.group.mul(d, x);
                        let q2 = self.group.mul(di, xi);
                        if !ok(self, img, hit, &mut added, &mut queue, p2, q2) {
                            self.undo(img, hit, &added);
                            return None;
                        }
                    }
                }
                Some(added)
            }

            fn undo(&self, img: &mut Vec<Option<u16>>, hit: &mut Vec<bool>, added: &[usize]) {
                for &x in added {
                    let y = img[x].take().unwrap();
                    hit[y as usize] = false;
                }
            }

            fn dfs(&mut self, img: &mut Vec<Option<u16>>, hit: &mut Vec<bool>, depth: usize) {
                if depth == self.gens.len() {
                    let images: Vec<u16> = img.iter().map(|o| o.unwrap()).collect();
                    self.found.push(images);
                    return;
                }
                let g = self.gens[depth];
                if let Some(pinned) = img[g] {
                    // already forced by earlier assignments
                    let _ = pinned;
                    self.dfs(img, hit, depth + 1);
                    return;
                }
                for b in 0..self.group.order() {
                    if hit[b] || self.invariant[g] != self.invariant[b] {
                        continue;
                    }
                    if let Some(added) = self.extend(img, hit, g, b) {
                        self.dfs(img, hit, depth + 1);
                        self.undo(img, hit, &added);
                    }
                }
            }
        }

        let mut search = Search {
            group: self,
            gens: &gens,
            invariant: &invariant,
            found: Vec::new(),
        };
        search.dfs(&mut img, &mut hit, 0);
        search.found.sort_unstable();
        found.extend(search.found.into_iter().map(|images| GroupMap {
            source: self.clone(),
            target: self.clone(),
            images,
        }));
        Ok(found)
    }

    /// Fixed subgroup, twisted commutator subgroup `[G,f]`, and the family
    /// of subgroups `N` with `f(N)=N` and `[N,f] ≤ core(N)`.
    pub fn f_subgroups(&self, f: &GroupMap) -> Result<FSubgroups, GroupError> {
        if !f.is_automorphism_of(self) {
            return Err(GroupError::NotAnAutomorphism);
        }
        let fix: Vec<usize> = (0..self.order).filter(|&a| f.apply(a) == a).collect();
        let twist: Vec<usize> = (0..self.order)
            .map(|a| self.mul(a, self.inv(f.apply(a))))
            .collect();
        let commutator_with_f = self.subgroup_closure(&twist);
        let mut sub_gf = Vec::new();
        for n in self.all_subgroups()? {
            let image: BTreeSet<usize> = n.iter().map(|&a| f.apply(a)).collect();
            if !n.iter().all(|a| image.contains(a)) {
                continue;
            }
            let n_twist: Vec<usize> = n.iter().map(|&a| self.mul(a, self.inv(f.apply(a)))).collect();
            let nf = self.subgroup_closure(&n_twist);
            let core = self.core_of(&n);
            if nf.iter().all(|x| core.contains(x)) {
                sub_gf.push(n);
            }
        }
        Ok(FSubgroups {
            fix,
            commutator_with_f,
            sub_gf,
        })
    }

    /// Elementary-abelian / special / extraspecial flags for the whole group.
    pub fn special_profile(&self) -> Result<SpecialProfile, GroupError> {
        let q = prime_power_base(self.order);
        let elem_abelian = match q {
            Some(p) => self.is_abelian() && (1..self.order).all(|a| self.element_order(a) == p),
            None => self.order == 1,
        };
        let (mut special, mut extraspecial) = (false, false);
        if let Some(p) = q {
            if !self.is_abelian() {
                let center = self.center();
                let derived = self.derived_subgroup();
                let frattini = self.frattini_subgroup()?;
                if center == derived && center == frattini {
                    let zq = center.len();
                    let z_elem_abelian = center
                        .iter()
                        .all(|&a| a == 0 || self.element_order(a) == p);
                    if z_elem_abelian && is_power_of(zq, p) {
                        special = true;
                        extraspecial = zq == p;
                    }
                }
            }
        }
        Ok(SpecialProfile {
            is_elementary_abelian: elem_abelian,
            is_special_q_group: special,
            is_extraspecial: extraspecial,
            q: if special || elem_abelian { q } else { None },
        })
    }

    /// Profile of the subgroup on `members`, computed on its own table.
    pub fn special_profile_of(&self, members: &[usize]) -> Result<SpecialProfile, GroupError> {
        self.subgroup_as_group(members)?.special_profile()
    }

    /// Realizes a subgroup as a standalone `FiniteGroup` (identity relabeled
    /// to 0, other members in ascending order).
    pub fn subgroup_as_group(&self, members: &[usize]) -> Result<FiniteGroup, GroupError> {
        if !self.is_subgroup(members) {
            return Err(GroupError::NotASubgroup);
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        debug_assert_eq!(sorted[0], 0);
        let index: HashMap<usize, usize> =
            sorted.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let k = sorted.len();
        let mut entries = Vec::with_capacity(k * k);
        for &a in &sorted {
            for &b in &sorted {
                entries.push(index[&self.mul(a, b)] as u16);
            }
        }
        FiniteGroup::from_table(k, entries)
    }

    /// Searches for a complement of the normal subgroup `a_members`: a
    /// subgroup `K` with `A ∩ K = 1` and `AK = G`.
    pub fn complement_of(&self, a_members: &[usize]) -> Result<Option<Vec<usize>>, GroupError> {
        if !self.is_subgroup(a_members) || !self.is_normal(a_members) {
            return Err(GroupError::NotNormal);
        }
        if a_members.len() == 0 || self.order % a_members.len() != 0 {
            return Err(GroupError::NotASubgroup);
        }
        let want = self.order / a_members.len();
        let a_set: HashSet<usize> = a_members.iter().copied().collect();
        for k in self.all_subgroups()? {
            if k.len() != want {
                continue;
            }
            let inter = k.iter().filter(|x| a_set.contains(x)).count();
            if inter == 1 {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

pub(crate) fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { Some(p) } else { None };
        }
        p += 1;
    }
    Some(n)
}

pub(crate) fn is_power_of(mut n: usize, p: usize) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A homomorphism between finite groups, given by images of every element.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupMap {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<u16>,
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupMap{:?}", self.images)
    }
}

impl GroupMap {
    pub fn new(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: Vec<u16>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::BadTable("image count mismatch".into()));
        }
        if images.iter().any(|&i| i as usize >= target.order()) {
            return Err(GroupError::BadTable("image out of range".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                let lhs = images[source.mul(a, b)] as usize;
                let rhs = target.mul(images[a] as usize, images[b] as usize);
                if lhs != rhs {
                    return Err(GroupError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(GroupMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// An automorphism: source = target and bijective images.
    pub fn automorphism(group: &FiniteGroup, images: Vec<u16>) -> Result<Self, GroupError> {
        let map = GroupMap::new(group, group, images)?;
        if !map.is_bijective() {
            return Err(GroupError::NotAnAutomorphism);
        }
        Ok(map)
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupMap {
            source: group.clone(),
            target: group.clone(),
            images: (0..group.order() as u16).collect(),
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a] as usize
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &i in &self.images {
            if seen[i as usize] {
                return false;
            }
            seen[i as usize] = true;
        }
        self.source.order() == self.target.order()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn is_automorphism_of(&self, group: &FiniteGroup) -> bool {
        self.source == *group && self.target == *group && self.is_bijective()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        debug_assert_eq!(other.target, self.source);
        GroupMap {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupMap {
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        GroupMap {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        }
    }

    /// True if this map commutes with `other` (both automorphisms of the
    /// same group).
    pub fn commutes_with(&self, other: &GroupMap) -> bool {
        self.compose(other) == other.compose(self)
    }
}

/// Output of [`FiniteGroup::f_subgroups`].
#[derive(Debug, Clone)]
pub struct FSubgroups {
    pub fix: Vec<usize>,
    pub commutator_with_f: Vec<usize>,
    pub sub_gf: Vec<Vec<usize>>,
}

/// Flags from [`FiniteGroup::special_profile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialProfile {
    pub is_elementary_abelian: bool,
    pub is_special_q_group: bool,
    pub is_extraspecial: bool,
    pub q: Option<usize>,
}

/// A permutation group realized as a multiplication table, with the element
/// list mapping table indices back to permutations.
pub struct TableRealization {
    pub group: FiniteGroup,
    pub elements: Vec<Perm>,
}

impl PermGroup {
    /// Realizes the materialized group as a multiplication table. Index 0 is
    /// the identity; the remaining elements keep their sorted order.
    pub fn as_table(&self) -> Result<TableRealization, GroupError> {
        let elements = self.elements()?.to_vec();
        let n = elements.len();
        if n > TABLE_CAP {
            return Err(GroupError::TableTooLarge {
                order: n,
                cap: TABLE_CAP,
            });
        }
        let index: HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut entries = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                entries.push(index[&a.compose(b)] as u16);
            }
        }
        let group = FiniteGroup::from_table(n, entries)?;
        Ok(TableRealization { group, elements })
    }
}

/// A finite abelian group presented as a product of cyclic factors; elements
/// are tuples reduced componentwise, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    orders: Vec<usize>,
}

impl AbelianGroupSpec {
    pub fn new(orders: Vec<usize>) -> Result<Self, GroupError> {
        if orders.is_empty() || orders.iter().any(|&d| d < 2) {
            return Err(GroupError::BadTable(
                "cyclic factor orders must all be at least 2".into(),
            ));
        }
        Ok(AbelianGroupSpec { orders })
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn is_homocyclic(&self) -> bool {
        self.orders.windows(2).all(|w| w[0] == w[1])
    }

    pub fn tuple(&self, index: usize) -> Vec<usize> {
        let mut t = vec![0; self.orders.len()];
        let mut rest = index;
        for i in (0..self.orders.len()).rev() {
            t[i] = rest % self.orders[i];
            rest /= self.orders[i];
        }
        t
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        let mut idx = 0;
        for (i, &x) in tuple.iter().enumerate() {
            idx = idx * self.orders[i] + (x % self.orders[i]);
        }
        idx
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.tuple(a), self.tuple(b));
        let sum: Vec<usize> = ta
            .iter()
            .zip(&tb)
            .zip(&self.orders)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let t = self.tuple(a);
        let neg: Vec<usize> = t
            .iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (d - x) % d)
            .collect();
        self.index(&neg)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn to_group(&self) -> FiniteGroup {
        let n = self.len();
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                entries.push(self.add(a, b) as u16);
            }
        }
        FiniteGroup::from_table(n, entries).unwrap()
    }

    /// Element-level automorphism images from an integer matrix; only
    /// meaningful for homocyclic specs `Z_d^k`, where row `i` of the matrix
    /// gives the coefficients of the `i`-th output coordinate.
    pub fn automorphism_from_matrix(&self, matrix: &[Vec<i64>]) -> Result<Vec<u16>, GroupError> {
        if !self.is_homocyclic() {
            return Err(GroupError::BadTable(
                "matrix automorphisms require a homocyclic spec".into(),
            ));
        }
        let k = self.rank();
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return Err(GroupError::BadTable("matrix shape mismatch".into()));
        }
        let d = self.orders[0] as i64;
        let n = self.len();
        let mut images = Vec::with_capacity(n);
        for a in 0..n {
            let t = self.tuple(a);
            let mut out = vec![0usize; k];
            for i in 0..k {
                let mut acc: i64 = 0;
                for j in 0..k {
                    acc += matrix[i][j] * t[j] as i64;
                }
                out[i] = (acc.rem_euclid(d)) as usize;
            }
            images.push(self.index(&out) as u16);
        }
        self.validate_automorphism(&images)?;
        Ok(images)
    }

    /// Checks that the images form an additive bijection.
    pub fn validate_automorphism(&self, images: &[u16]) -> Result<(), GroupError> {
        let n = self.len();
        if images.len() != n {
            return Err(GroupError::BadTable("image count mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i as usize >= n || seen[i as usize] {
                return Err(GroupError::NotAnAutomorphism);
            }
            seen[i as usize] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if images[self.add(a, b)] as usize
                    != self.add(images[a] as usize, images[b] as usize)
                {
                    return Err(GroupError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}
