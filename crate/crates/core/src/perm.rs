//! Permutations on `{0..n-1}` and finitely generated permutation groups.
//!
//! Groups are materialized by breadth-first closure of the generator set,
//! guarded by an element cap. This is deliberate: at the degrees this crate
//! works with (a few dozen points) full materialization is simpler and fast
//! enough, and every subgroup computation below works on the explicit
//! element set.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use crate::error::GroupError;

/// Default cap on the number of materialized group elements.
pub const DEFAULT_GROUP_CAP: usize = 2_000_000;

static GROUP_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_GROUP_CAP);

/// The process-wide cap applied to groups created without an explicit cap.
pub fn group_cap() -> usize {
    GROUP_CAP.load(Ordering::Relaxed)
}

/// Adjusts the process-wide cap; affects groups created afterwards.
pub fn set_group_cap(cap: usize) {
    GROUP_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Largest group order we are willing to realize as a multiplication table.
pub const TABLE_CAP: usize = 4096;

pub(crate) type Point = u16;

/// A bijection of `{0..n-1}`, stored as the image sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<Point>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(GroupError::NotABijection { degree: n });
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(GroupError::PointOutOfRange {
                        point: from.max(to),
                        degree,
                    });
                }
                images[from] = to as Point;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Function composition: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0 as Point; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as Point;
        }
        Perm { images }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut images = vec![0 as Point; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[j as usize];
        }
        Perm { images }
    }

    /// `self ∘ other ∘ self⁻¹ ∘ other⁻¹`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) == i).collect()
    }

    /// Cycle lengths including fixed points, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }
}

struct Materialized {
    /// Sorted element list; the identity is lexicographically least, so it
    /// always sits at index 0.
    list: Vec<Perm>,
    index: HashMap<Perm, u32>,
}

struct Inner {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    elements: OnceLock<Result<Materialized, GroupError>>,
}

/// A permutation group given by generators, with a lazily materialized
/// element set. Cheap to clone; the element set is shared.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree={}, generators={})",
            self.inner.degree,
            self.inner.generators.len()
        )
    }
}

/// Transitivity flags of a permutation group action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitivityProfile {
    pub transitive: bool,
    pub semiregular: bool,
    pub regular: bool,
    pub doubly_transitive: bool,
}

/// A materialized subgroup of a [`PermGroup`], stored by its element set.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    degree: usize,
    members: Vec<Perm>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(degree={}, order={})", self.degree, self.members.len())
    }
}

impl Subgroup {
    /// Wraps a set of permutations known to be closed. Sorts and dedups.
    pub(crate) fn from_members(degree: usize, mut members: Vec<Perm>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { degree, members }
    }

    pub fn trivial(degree: usize) -> Self {
        Subgroup {
            degree,
            members: vec![Perm::identity(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Perm] {
        &self.members
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.members.binary_search(p).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Verifies closure under product and inverse, and that the identity is
    /// present.
    pub fn verify(&self) -> Result<(), GroupError> {
        if !self.contains(&Perm::identity(self.degree)) {
            return Err(GroupError::NotASubgroup);
        }
        for a in &self.members {
            if !self.contains(&a.inverse()) {
                return Err(GroupError::NotASubgroup);
            }
            for b in &self.members {
                if !self.contains(&a.compose(b)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(())
    }

    /// The subgroup as a standalone group (elements pre-materialized).
    pub fn to_group(&self) -> PermGroup {
        PermGroup::from_elements(self.degree, self.members.clone())
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// True if conjugation by every element of `g` maps this subgroup to
    /// itself.
    pub fn is_normal_in(&self, g: &PermGroup) -> Result<bool, GroupError> {
        let elements = g.elements()?;
        for h in elements {
            for m in &self.members {
                if !self.contains(&m.conjugate_by(h)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.members)
    }
}

fn close_under_composition(
    degree: usize,
    gens: &[Perm],
    cap: usize,
) -> Result<Vec<Perm>, GroupError> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue: VecDeque<Perm> = VecDeque::new();
    let id = Perm::identity(degree);
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.compose(g);
            if !seen.contains(&q) {
                if seen.len() >= cap {
                    return Err(GroupError::Overflow { cap });
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    let mut list: Vec<Perm> = seen.into_iter().collect();
    list.sort_unstable();
    Ok(list)
}

fn orbits_of(degree: usize, perms: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut result = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for p in perms {
                let y = p.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        result.push(orbit);
    }
    result
}

impl PermGroup {
    /// The group generated by `gens` under composition and inverse,
    /// materialized lazily up to `cap` elements.
    pub fn generated(gens: Vec<Perm>, cap: usize) -> Result<Self, GroupError> {
        let degree = match gens.first() {
            Some(g) => g.degree(),
            None => return Err(GroupError::NotABijection { degree: 0 }),
        };
        Self::generated_with_degree(degree, gens, cap)
    }

    /// Like [`PermGroup::generated`] but with an explicit degree, so the
    /// trivial group (no generators) can be expressed.
    pub fn generated_with_degree(
        degree: usize,
        mut gens: Vec<Perm>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        gens.sort_unstable();
        gens.dedup();
        gens.retain(|g| !g.is_identity());
        Ok(PermGroup {
            inner: Arc::new(Inner {
                degree,
                generators: gens,
                cap,
                elements: OnceLock::new(),
            }),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generated_with_degree(degree, Vec::new(), group_cap()).unwrap()
    }

    /// Wraps an element list already known to be closed (e.g. all
    /// automorphisms found by a complete search).
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let gens = elements.clone();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inner = Inner {
            degree,
            generators: gens,
            cap: group_cap(),
            elements: OnceLock::new(),
        };
        let _ = inner.elements.set(Ok(Materialized { list: elements, index }));
        PermGroup { inner: Arc::new(inner) }
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.generators
    }

    pub fn cap(&self) -> usize {
        self.inner.cap
    }

    fn materialized(&self) -> Result<&Materialized, GroupError> {
        let r = self.inner.elements.get_or_init(|| {
            let list = close_under_composition(
                self.inner.degree,
                &self.inner.generators,
                self.inner.cap,
            )?;
            let index = list
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i as u32))
                .collect();
            Ok(Materialized { list, index })
        });
        r.as_ref().map_err(|e| e.clone())
    }

    /// The full, sorted element set. Identity is at index 0.
    pub fn elements(&self) -> Result<&[Perm], GroupError> {
        Ok(&self.materialized()?.list)
    }

    pub fn order(&self) -> Result<usize, GroupError> {
        Ok(self.materialized()?.list.len())
    }

    pub fn contains(&self, p: &Perm) -> Result<bool, GroupError> {
        Ok(self.materialized()?.index.contains_key(p))
    }

    pub fn element_index(&self, p: &Perm) -> Result<Option<usize>, GroupError> {
        Ok(self.materialized()?.index.get(p).map(|&i| i as usize))
    }

    /// Whole group as a [`Subgroup`] of itself.
    pub fn as_subgroup(&self) -> Result<Subgroup, GroupError> {
        Ok(Subgroup {
            degree: self.degree(),
            members: self.elements()?.to_vec(),
        })
    }

    /// Orbit partition, computed from the generators alone.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.inner.degree, &self.inner.generators)
    }

    pub fn orbit(&self, a: usize) -> Vec<usize> {
        self.orbits()
            .into_iter()
            .find(|o| o.contains(&a))
            .unwrap_or_default()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// `{g : g(a) = a}`, materialized from the element set.
    pub fn stabilizer_point(&self, a: usize) -> Result<Subgroup, GroupError> {
        let members = self
            .elements()?
            .iter()
            .filter(|p| p.apply(a) == a)
            .cloned()
            .collect();
        Ok(Subgroup {
            degree: self.degree(),
            members,
        })
    }

    /// `{g : g(S) = S}` as a set.
    pub fn stabilizer_set(&self, s: &[usize]) -> Result<Subgroup, GroupError> {
        let set: HashSet<usize> = s.iter().copied().collect();
        let members = self
            .elements()?
            .iter()
            .filter(|p| set.iter().all(|&x| set.contains(&p.apply(x))))
            .cloned()
            .collect();
        Ok(Subgroup {
            degree: self.degree(),
            members,
        })
    }

    pub fn transitivity_profile(&self) -> Result<TransitivityProfile, GroupError> {
        let transitive = self.is_transitive();
        let mut semiregular = true;
        for a in 0..self.degree() {
            if self.stabilizer_point(a)?.order() > 1 {
                semiregular = false;
                break;
            }
        }
        let regular = transitive && semiregular;
        let doubly_transitive = if transitive && self.degree() >= 2 {
            let stab = self.stabilizer_point(0)?;
            let orbits = stab.orbits();
            // transitive on the remaining points: one orbit of size degree-1
            orbits.iter().any(|o| o.len() == self.degree() - 1)
        } else {
            false
        };
        Ok(TransitivityProfile {
            transitive,
            semiregular,
            regular,
            doubly_transitive,
        })
    }

    /// True iff the action is transitive with nontrivial point stabilizers
    /// that pairwise intersect trivially.
    pub fn is_frobenius(&self) -> Result<bool, GroupError> {
        if !self.is_transitive() || self.degree() < 2 {
            return Err(GroupError::NotTransitive);
        }
        let stabs: Vec<Subgroup> = (0..self.degree())
            .map(|a| self.stabilizer_point(a))
            .collect::<Result<_, _>>()?;
        if stabs.iter().all(|s| s.is_trivial()) {
            return Ok(false);
        }
        for a in 0..self.degree() {
            for b in (a + 1)..self.degree() {
                let inter = stabs[a]
                    .members()
                    .iter()
                    .filter(|p| stabs[b].contains(p))
                    .count();
                if inter > 1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[Perm]) -> Result<Subgroup, GroupError> {
        let elements = self.elements()?;
        let mut members: HashSet<Perm> =
            close_under_composition(self.degree(), seed, self.cap())?
                .into_iter()
                .collect();
        loop {
            let mut new_gens: Vec<Perm> = Vec::new();
            for g in elements {
                for m in members.iter() {
                    let c = m.conjugate_by(g);
                    if !members.contains(&c) {
                        new_gens.push(c);
                    }
                }
                if !new_gens.is_empty() {
                    break;
                }
            }
            if new_gens.is_empty() {
                break;
            }
            let mut gens: Vec<Perm> = members.iter().cloned().collect();
            gens.extend(new_gens);
            members = close_under_composition(self.degree(), &gens, self.cap())?
                .into_iter()
                .collect();
        }
        Ok(Subgroup::from_members(
            self.degree(),
            members.into_iter().collect(),
        ))
    }

    /// Largest normal subgroup of `self` contained in `h`: the intersection
    /// of all conjugates of `h`.
    pub fn core(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        let mut current: HashSet<Perm> = h.members().iter().cloned().collect();
        for g in self.elements()? {
            current.retain(|m| h.contains(&m.conjugate_by(&g.inverse())));
            if current.len() == 1 {
                break;
            }
        }
        Ok(Subgroup::from_members(
            self.degree(),
            current.into_iter().collect(),
        ))
    }

    /// `{g : g h g⁻¹ = h}` as a set (setwise normalizer of the subgroup).
    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        let members = self
            .elements()?
            .iter()
            .filter(|g| h.members().iter().all(|m| h.contains(&m.conjugate_by(g))))
            .cloned()
            .collect();
        Ok(Subgroup {
            degree: self.degree(),
            members,
        })
    }

    pub fn centralizer(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        let members = self
            .elements()?
            .iter()
            .filter(|g| {
                h.members()
                    .iter()
                    .all(|m| g.compose(m) == m.compose(g))
            })
            .cloned()
            .collect();
        Ok(Subgroup {
            degree: self.degree(),
            members,
        })
    }

    pub fn center(&self) -> Result<Subgroup, GroupError> {
        let whole = self.as_subgroup()?;
        self.centralizer(&whole)
    }

    pub fn is_abelian(&self) -> Result<bool, GroupError> {
        let gens = self.generators();
        for a in gens {
            for b in gens {
                if a.compose(b) != b.compose(a) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Subgroup generated by all commutators `[a,b]` with `a ∈ s`, `b ∈ t`.
    fn commutator_subgroup(&self, s: &Subgroup, t: &Subgroup) -> Result<Subgroup, GroupError> {
        let mut gens = Vec::new();
        for a in s.members() {
            for b in t.members() {
                let c = a.commutator(b);
                if !c.is_identity() {
                    gens.push(c);
                }
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let members = close_under_composition(self.degree(), &gens, self.cap())?;
        Ok(Subgroup::from_members(self.degree(), members))
    }

    /// Center, derived and lower central series, with nilpotence and
    /// solvability flags. Series are computed until stabilization.
    pub fn series(&self) -> Result<GroupSeries, GroupError> {
        let whole = self.as_subgroup()?;
        let center = self.center()?;
        let mut lower_central = vec![whole.clone()];
        loop {
            let last = lower_central.last().unwrap();
            let next = self.commutator_subgroup(&whole, last)?;
            if &next == last {
                break;
            }
            lower_central.push(next);
        }
        let mut derived = vec![whole.clone()];
        loop {
            let last = derived.last().unwrap();
            let next = self.commutator_subgroup(last, last)?;
            if &next == last {
                break;
            }
            derived.push(next);
        }
        let is_nilpotent = lower_central.last().unwrap().is_trivial();
        let is_solvable = derived.last().unwrap().is_trivial();
        let derived_subgroup = if derived.len() > 1 {
            derived[1].clone()
        } else {
            derived[0].clone()
        };
        Ok(GroupSeries {
            center,
            derived_subgroup,
            lower_central,
            derived,
            is_nilpotent,
            is_solvable,
        })
    }

    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<Perm>>, GroupError> {
        let elements = self.elements()?;
        let mat = self.materialized()?;
        let mut seen = vec![false; elements.len()];
        let mut classes = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let mut class = vec![e.clone()];
            seen[i] = true;
            let mut w = 0;
            while w < class.len() {
                let x = class[w].clone();
                for g in &self.inner.generators {
                    let y = x.conjugate_by(g);
                    let yi = mat.index[&y] as usize;
                    if !seen[yi] {
                        seen[yi] = true;
                        class.push(y);
                    }
                }
                w += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes.sort_by(|a, b| a[0].cmp(&b[0]));
        Ok(classes)
    }

    /// All normal subgroups, built as joins of normal closures of single
    /// conjugacy classes and deduplicated by element set.
    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>, GroupError> {
        let classes = self.conjugacy_classes()?;
        let mut pool: Vec<Subgroup> = vec![Subgroup::trivial(self.degree())];
        let mut keys: HashSet<Vec<Perm>> = HashSet::new();
        keys.insert(pool[0].members().to_vec());
        for class in &classes {
            let members = close_under_composition(self.degree(), class, self.cap())?;
            let sg = Subgroup::from_members(self.degree(), members);
            if keys.insert(sg.members().to_vec()) {
                pool.push(sg);
            }
        }
        // close under pairwise join
        loop {
            let mut added = Vec::new();
            for i in 0..pool.len() {
                for j in (i + 1)..pool.len() {
                    if pool[i].is_subset_of(&pool[j]) || pool[j].is_subset_of(&pool[i]) {
                        continue;
                    }
                    let mut gens = pool[i].members().to_vec();
                    gens.extend_from_slice(pool[j].members());
                    let members = close_under_composition(self.degree(), &gens, self.cap())?;
                    let sg = Subgroup::from_members(self.degree(), members);
                    if keys.insert(sg.members().to_vec()) {
                        added.push(sg);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            pool.extend(added);
        }
        pool.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        Ok(pool)
    }

    /// Subgroup generated by the given permutations inside this group.
    pub fn subgroup_generated(&self, gens: &[Perm]) -> Result<Subgroup, GroupError> {
        let members = close_under_composition(self.degree(), gens, self.cap())?;
        Ok(Subgroup::from_members(self.degree(), members))
    }

    /// Setwise product `A·B`.
    pub fn product_set(a: &Subgroup, b: &Subgroup) -> Vec<Perm> {
        let mut out: HashSet<Perm> = HashSet::new();
        for x in a.members() {
            for y in b.members() {
                out.insert(x.compose(y));
            }
        }
        let mut v: Vec<Perm> = out.into_iter().collect();
        v.sort_unstable();
        v
    }
}

/// Exact subgroup series data for a materialized group.
#[derive(Debug, Clone)]
pub struct GroupSeries {
    pub center: Subgroup,
    pub derived_subgroup: Subgroup,
    pub lower_central: Vec<Subgroup>,
    pub derived: Vec<Subgroup>,
    pub is_nilpotent: bool,
    pub is_solvable: bool,
}
