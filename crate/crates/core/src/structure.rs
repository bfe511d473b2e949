//! The bridge from a quandle to its permutation groups: left multiplication
//! and displacement groups, connectivity, the row-kernel / projection-pair /
//! stabilizer / center relations, the standard predicates, and the principal
//! machinery (representations over the displacement group, the stabilizer
//! decomposition, automorphism-group structure of principal quandles).

use std::collections::BTreeMap;

use crate::congruence::{Congruence, Partition};
use crate::error::QuandleError;
use crate::group::{FiniteGroup, GroupMap};
use crate::iso;
use crate::perm::{group_cap, Perm, PermGroup, Subgroup};
use crate::quandle::{Quandle, QuandleMap};

/// Which derived relation a [`Relation`] value describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    /// Equal rows: the kernel of `a ↦ L_a`.
    RowKernel,
    /// `a` and `b` span a two-element projection subquandle (reflexive and
    /// symmetric, not an equivalence in general).
    ProjectionPairs,
    /// Equal displacement-group stabilizers.
    StabilizerClasses,
    /// Stabilizer relation intersected with the central-displacement
    /// congruence.
    CenterClasses,
}

/// A reflexive symmetric relation on the carrier, with a transitivity flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    kind: RelationKind,
    size: usize,
    adjacency: Vec<bool>,
    transitive: bool,
}

impl Relation {
    fn new(kind: RelationKind, size: usize, adjacency: Vec<bool>) -> Self {
        let related = |a: usize, b: usize| adjacency[a * size + b];
        let mut transitive = true;
        'outer: for a in 0..size {
            for b in 0..size {
                if !related(a, b) {
                    continue;
                }
                for c in 0..size {
                    if related(b, c) && !related(a, c) {
                        transitive = false;
                        break 'outer;
                    }
                }
            }
        }
        Relation {
            kind,
            size,
            adjacency,
            transitive,
        }
    }

    fn from_partition(kind: RelationKind, partition: &Partition) -> Self {
        let n = partition.size();
        let mut adjacency = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                adjacency[a * n + b] = partition.same(a, b);
            }
        }
        Relation {
            kind,
            size: n,
            adjacency,
            transitive: true,
        }
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.adjacency[a * self.size + b]
    }

    pub fn class_of(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&b| self.related(a, b)).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.size).all(|a| self.class_of(a) == vec![a])
    }

    pub fn is_full(&self) -> bool {
        self.adjacency.iter().all(|&x| x)
    }

    /// The classes as a partition; only valid for transitive relations.
    pub fn partition(&self) -> Option<Partition> {
        if !self.transitive {
            return None;
        }
        let labels: Vec<usize> = (0..self.size)
            .map(|a| self.class_of(a)[0])
            .collect();
        Some(Partition::from_labels(&labels))
    }

    /// Intersection with another relation on the same carrier.
    pub fn intersect(&self, other: &Relation, kind: RelationKind) -> Relation {
        let adjacency = self
            .adjacency
            .iter()
            .zip(&other.adjacency)
            .map(|(&a, &b)| a && b)
            .collect();
        Relation::new(kind, self.size, adjacency)
    }
}

/// Output of [`Quandle::lambda_map`]: the conjugation quandle on the
/// distinct rows, the projection onto it, and its kernel.
pub struct LambdaData {
    pub image: Quandle,
    pub map: QuandleMap,
    pub kernel: Relation,
}

/// Output of [`Quandle::connectivity`].
#[derive(Debug, Clone)]
pub struct Connectivity {
    pub connected: bool,
    pub components: Vec<Vec<usize>>,
}

/// The four standard predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicates {
    pub faithful: bool,
    pub crossed_set: bool,
    pub latin: bool,
    pub semiregular: bool,
}

/// Subgroups cut out by the projection-pair relation.
pub struct PSubgroups {
    /// Automorphisms moving every point inside its projection-pair class.
    pub aut_p: Subgroup,
    /// The same, intersected with the left multiplication group.
    pub lmlt_p: Subgroup,
    /// Per point `a`: the powers of the row `L_a` lying in `aut_p`.
    pub la_p: Vec<Subgroup>,
    pub aut_p_normal: bool,
    pub lmlt_p_normal: bool,
}

/// A principal representation: a group with a chosen automorphism plus a
/// bijective morphism from the principal quandle they define.
pub struct PrincipalRepresentation {
    pub group: FiniteGroup,
    pub auto: GroupMap,
    /// Isomorphism from `principal(group, auto)` onto the represented
    /// quandle (or subquandle).
    pub witness: QuandleMap,
}

/// Outcome of [`Quandle::principal_analysis`].
pub enum PrincipalStatus {
    Principal(PrincipalRepresentation),
    NotPrincipal,
    /// Disconnected input without the exhaustive search enabled.
    Unsupported,
}

/// Decomposition of a quandle into its stabilizer-relation classes.
pub struct DecompositionReport {
    /// The stabilizer-relation classes, each sorted.
    pub classes: Vec<Vec<usize>>,
    pub class_quandles: Vec<Quandle>,
    pub all_semiregular: bool,
    /// Extra structure available when the quandle is connected.
    pub connected_case: Option<ConnectedDecomposition>,
}

pub struct ConnectedDecomposition {
    /// Each class is the orbit of its representative under the normalizer
    /// of the representative's stabilizer inside the displacement group.
    pub normalizer_orbit_match: bool,
    pub representations: Vec<PrincipalRepresentation>,
    pub pairwise_isomorphic: bool,
}

/// Output of [`Quandle::aut_structure_check`].
#[derive(Debug, Clone, Copy)]
pub struct AutStructure {
    pub holds: bool,
    pub aut_order: usize,
    pub g_order: usize,
    pub centralizer_order: usize,
}

/// Output of [`Quandle::cyclic_profile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicProfile {
    pub is_cyclic: bool,
    pub fixed_points: Option<usize>,
}

/// Output of [`Quandle::homogeneity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Homogeneity {
    pub homogeneous: bool,
    pub doubly_homogeneous: bool,
}

impl Quandle {
    /// The left multiplication group, generated by all rows.
    pub fn lmlt(&self) -> PermGroup {
        self.caches
            .lmlt
            .get_or_init(|| {
                PermGroup::generated_with_degree(self.size(), self.rows(), group_cap())
                    .expect("rows share the carrier degree")
            })
            .clone()
    }

    /// The displacement group, generated by all `L_a L_b⁻¹`.
    pub fn dis(&self) -> PermGroup {
        self.caches
            .dis
            .get_or_init(|| {
                let rows = self.rows();
                let mut gens = Vec::new();
                for a in &rows {
                    for b in &rows {
                        gens.push(a.compose(&b.inverse()));
                    }
                }
                PermGroup::generated_with_degree(self.size(), gens, group_cap())
                    .expect("displacements share the carrier degree")
            })
            .clone()
    }

    /// Checks the factorization `LMlt(Q) = Dis(Q)·⟨L_a⟩` for every `a`.
    pub fn lmlt_factorization(&self) -> Result<bool, QuandleError> {
        let lmlt = self.lmlt();
        let dis = self.dis().as_subgroup()?;
        for a in 0..self.size() {
            let row_cyclic = lmlt.subgroup_generated(&[self.row(a)])?;
            let product = PermGroup::product_set(&dis, &row_cyclic);
            if product.len() != lmlt.order()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The automorphism group (complete, via backtracking search).
    pub fn automorphism_group(&self) -> PermGroup {
        iso::automorphism_group(self)
    }

    /// Orbit decomposition of the displacement group.
    pub fn connectivity(&self) -> Connectivity {
        let components = self.dis().orbits();
        Connectivity {
            connected: components.len() == 1,
            components,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connectivity().connected
    }

    /// The conjugation quandle on the distinct rows, the projection onto
    /// it, and the row-kernel relation.
    pub fn lambda_map(&self) -> Result<LambdaData, QuandleError> {
        let n = self.size();
        let rows = self.rows();
        let mut distinct: Vec<Perm> = rows.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let index_of = |p: &Perm| distinct.binary_search(p).unwrap();
        let k = distinct.len();
        let mut left = vec![0u16; k * k];
        for (i, a) in distinct.iter().enumerate() {
            for (j, b) in distinct.iter().enumerate() {
                left[i * k + j] = index_of(&b.conjugate_by(a)) as u16;
            }
        }
        let image = Quandle::from_flat(k, left)?;
        let images: Vec<u16> = rows.iter().map(|r| index_of(r) as u16).collect();
        let map = QuandleMap::new(self, &image, images)?;
        let mut adjacency = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                adjacency[a * n + b] = rows[a] == rows[b];
            }
        }
        let kernel = Relation::new(RelationKind::RowKernel, n, adjacency);
        Ok(LambdaData { image, map, kernel })
    }

    pub fn predicates(&self) -> Result<Predicates, QuandleError> {
        let n = self.size();
        let rows = self.rows();
        let mut sorted = rows.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let faithful = sorted.len() == n;
        let mut crossed_set = true;
        'cs: for a in 0..n {
            for b in 0..n {
                if self.op(a, b) == b && self.op(b, a) != a {
                    crossed_set = false;
                    break 'cs;
                }
            }
        }
        let mut latin = true;
        'latin: for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let v = self.op(a, b);
                if seen[v] {
                    latin = false;
                    break 'latin;
                }
                seen[v] = true;
            }
        }
        let semiregular = self.dis().transitivity_profile()?.semiregular;
        Ok(Predicates {
            faithful,
            crossed_set,
            latin,
            semiregular,
        })
    }

    /// The projection-pair relation: `a ~ b` iff `{a,b}` is a two-element
    /// projection subquandle (plus the diagonal).
    pub fn p_relation(&self) -> Relation {
        let n = self.size();
        let mut adjacency = vec![false; n * n];
        for a in 0..n {
            adjacency[a * n + a] = true;
            for b in 0..n {
                if a != b && self.op(a, b) == b && self.op(b, a) == a {
                    adjacency[a * n + b] = true;
                }
            }
        }
        Relation::new(RelationKind::ProjectionPairs, n, adjacency)
    }

    /// The subgroups of automorphisms compatible with the projection-pair
    /// relation, with normality in the full automorphism group verified.
    pub fn p_subgroups(&self) -> Result<PSubgroups, QuandleError> {
        let n = self.size();
        let p = self.p_relation();
        let aut = self.automorphism_group();
        let keeps = |h: &Perm| (0..n).all(|a| p.related(h.apply(a), a));
        let aut_members: Vec<Perm> = aut
            .elements()?
            .iter()
            .filter(|h| keeps(h))
            .cloned()
            .collect();
        let aut_p = Subgroup::from_members(n, aut_members);
        let lmlt_members: Vec<Perm> = self
            .lmlt()
            .elements()?
            .iter()
            .filter(|h| keeps(h))
            .cloned()
            .collect();
        let lmlt_p = Subgroup::from_members(n, lmlt_members);
        let mut la_p = Vec::with_capacity(n);
        for a in 0..n {
            let row = self.row(a);
            let mut members = Vec::new();
            let mut power = Perm::identity(n);
            loop {
                if keeps(&power) {
                    members.push(power.clone());
                }
                power = row.compose(&power);
                if power.is_identity() {
                    if keeps(&power) {
                        members.push(power.clone());
                    }
                    break;
                }
            }
            la_p.push(Subgroup::from_members(n, members));
        }
        let aut_p_normal = aut_p.is_normal_in(&aut)?;
        let lmlt_p_normal = lmlt_p.is_normal_in(&aut)?;
        Ok(PSubgroups {
            aut_p,
            lmlt_p,
            la_p,
            aut_p_normal,
            lmlt_p_normal,
        })
    }

    /// Stabilizer-equality relation of the displacement group, verified to
    /// be a congruence.
    pub fn sigma(&self) -> Result<Relation, QuandleError> {
        let n = self.size();
        let dis = self.dis();
        let elements = dis.elements()?;
        let mut signatures: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, h) in elements.iter().enumerate() {
            for a in 0..n {
                if h.apply(a) == a {
                    signatures[a].push(i);
                }
            }
        }
        let mut key: BTreeMap<&[usize], usize> = BTreeMap::new();
        let mut labels = vec![0usize; n];
        for a in 0..n {
            let e = key.entry(&signatures[a]).or_insert(a);
            labels[a] = *e;
        }
        let partition = Partition::from_labels(&labels);
        // verified congruence
        Congruence::new(self, partition.clone()).map_err(|_| QuandleError::Malformed)?;
        Ok(Relation::from_partition(
            RelationKind::StabilizerClasses,
            &partition,
        ))
    }

    /// Stabilizer relation intersected with the congruence of central
    /// displacements, verified to be a congruence.
    pub fn zeta(&self) -> Result<Relation, QuandleError> {
        let n = self.size();
        let sigma = self.sigma()?;
        let center = self.dis().center()?;
        let rows = self.rows();
        let mut adjacency = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                adjacency[a * n + b] = center.contains(&rows[a].compose(&rows[b].inverse()));
            }
        }
        let central = Relation::new(RelationKind::CenterClasses, n, adjacency);
        let zeta = sigma.intersect(&central, RelationKind::CenterClasses);
        let partition = zeta
            .partition()
            .ok_or(QuandleError::Malformed)?;
        Congruence::new(self, partition).map_err(|_| QuandleError::Malformed)?;
        Ok(zeta)
    }

    /// Splits the quandle along the stabilizer relation and, for connected
    /// quandles, attaches a principal representation to every class and
    /// checks the classes are pairwise isomorphic.
    pub fn semiregular_decomposition(&self) -> Result<DecompositionReport, QuandleError> {
        let sigma = self.sigma()?;
        let partition = sigma.partition().ok_or(QuandleError::Malformed)?;
        let classes = partition.blocks();
        let mut class_quandles = Vec::with_capacity(classes.len());
        let mut all_semiregular = true;
        for class in &classes {
            if !self.is_subquandle(class) {
                return Err(QuandleError::Malformed);
            }
            let sub = self.sub_quandle(class)?;
            if !sub.predicates()?.semiregular {
                all_semiregular = false;
            }
            class_quandles.push(sub);
        }
        let connected_case = if self.is_connected() {
            let dis = self.dis();
            let mut normalizer_orbit_match = true;
            let mut representations = Vec::with_capacity(classes.len());
            for class in &classes {
                let a = class[0];
                let stab = dis.stabilizer_point(a)?;
                let normalizer = dis.normalizer(&stab)?;
                let mut orbit: Vec<usize> =
                    normalizer.members().iter().map(|h| h.apply(a)).collect();
                orbit.sort_unstable();
                orbit.dedup();
                if &orbit != class {
                    normalizer_orbit_match = false;
                }
                representations.push(class_representation(self, class, &normalizer)?);
            }
            let pairwise_isomorphic = class_quandles
                .windows(2)
                .all(|w| iso::are_isomorphic(&w[0], &w[1]));
            Some(ConnectedDecomposition {
                normalizer_orbit_match,
                representations,
                pairwise_isomorphic,
            })
        } else {
            None
        };
        Ok(DecompositionReport {
            classes,
            class_quandles,
            all_semiregular,
            connected_case,
        })
    }

    /// For connected quandles: principal iff the displacement group is
    /// regular, in which case a representation over it is returned.
    /// Disconnected input reports [`PrincipalStatus::Unsupported`]; see
    /// [`Quandle::principal_analysis_with_search`].
    pub fn principal_analysis(&self) -> Result<PrincipalStatus, QuandleError> {
        // projection quandles are principal over any group with the identity
        // automorphism; short-circuit to keep huge symmetric groups out
        if self.rows().iter().all(|r| r.is_identity()) {
            let group = FiniteGroup::cyclic(self.size());
            let auto = GroupMap::identity(&group);
            let principal = Quandle::principal(&group, &auto)?;
            let witness = QuandleMap::new(&principal, self, (0..self.size() as u16).collect())?;
            return Ok(PrincipalStatus::Principal(PrincipalRepresentation {
                group,
                auto,
                witness,
            }));
        }
        if !self.is_connected() {
            return Ok(PrincipalStatus::Unsupported);
        }
        let dis = self.dis();
        if !dis.transitivity_profile()?.semiregular {
            return Ok(PrincipalStatus::NotPrincipal);
        }
        let rep = regular_subgroup_representation(self, &dis.as_subgroup()?, 0)?;
        Ok(PrincipalStatus::Principal(rep))
    }

    /// Exhaustive fallback for disconnected quandles, capped at size 12:
    /// searches the subgroups of the automorphism group for a regular one
    /// invariant under conjugation by some row.
    pub fn principal_analysis_with_search(&self) -> Result<PrincipalStatus, QuandleError> {
        match self.principal_analysis()? {
            PrincipalStatus::Unsupported => {}
            other => return Ok(other),
        }
        if self.size() > 12 {
            return Err(QuandleError::SizeCap {
                size: self.size(),
                cap: 12,
            });
        }
        let aut = self.automorphism_group();
        let table = aut.as_table()?;
        for members in table.group.all_subgroups()? {
            if members.len() != self.size() {
                continue;
            }
            let perms: Vec<Perm> = members.iter().map(|&i| table.elements[i].clone()).collect();
            let candidate = Subgroup::from_members(self.size(), perms.clone());
            let grp = candidate.to_group();
            let profile = grp.transitivity_profile()?;
            if !profile.regular {
                continue;
            }
            for a in 0..self.size() {
                let row = self.row(a);
                let invariant = perms.iter().all(|p| candidate.contains(&p.conjugate_by(&row)));
                if invariant {
                    let rep = regular_subgroup_representation(self, &candidate, a)?;
                    return Ok(PrincipalStatus::Principal(rep));
                }
            }
        }
        Ok(PrincipalStatus::NotPrincipal)
    }

    /// Builds the coset quandle of the displacement group over a point
    /// stabilizer, twisted by conjugation with that point's row, and
    /// returns the isomorphism onto this quandle.
    pub fn coset_representation(&self) -> Result<QuandleMap, QuandleError> {
        if !self.is_connected() {
            return Err(QuandleError::NotConnected);
        }
        let dis = self.dis();
        let table = dis.as_table()?;
        let row0 = self.row(0);
        let auto_images = conjugation_images(&table, &row0)?;
        let auto = GroupMap::automorphism(&table.group, auto_images)
            .map_err(|_| QuandleError::NotAnAutomorphism)?;
        let stab: Vec<usize> = table
            .elements
            .iter()
            .enumerate()
            .filter(|(_, p)| p.apply(0) == 0)
            .map(|(i, _)| i)
            .collect();
        let coset = Quandle::homogeneous(&table.group, &stab, &auto)?;
        // coset with least member m maps to the point elements[m](0)
        let subgroup_set: Vec<usize> = stab.clone();
        let n_elems = table.group.order();
        let mut coset_min = vec![usize::MAX; n_elems];
        for g in 0..n_elems {
            if coset_min[g] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = subgroup_set
                .iter()
                .map(|&h| table.group.mul(g, h))
                .collect();
            let min = *members.iter().min().unwrap();
            for m in members {
                coset_min[m] = min;
            }
        }
        let mut mins: Vec<usize> = coset_min.clone();
        mins.sort_unstable();
        mins.dedup();
        let images: Vec<u16> = mins
            .iter()
            .map(|&m| table.elements[m].apply(0) as u16)
            .collect();
        let witness = QuandleMap::new(&coset, self, images)?;
        if !witness.is_bijective() {
            return Err(QuandleError::IllDefined);
        }
        Ok(witness)
    }

    /// For a connected principal quandle: verifies that the automorphism
    /// group factors as the displacement group extended by the stabilizer
    /// of a point, whose order equals that of the centralizer of the twist
    /// in the automorphism group of the representation group.
    pub fn aut_structure_check(&self) -> Result<AutStructure, QuandleError> {
        let PrincipalStatus::Principal(rep) = self.principal_analysis()? else {
            return Err(QuandleError::NotConnected);
        };
        let aut = self.automorphism_group();
        let aut_order = aut.order()?;
        let g_order = rep.group.order();
        let centralizer_order = rep
            .group
            .automorphisms()?
            .iter()
            .filter(|h| h.commutes_with(&rep.auto))
            .count();
        let mut holds = aut_order == g_order * centralizer_order;
        // the displacement group is a regular normal subgroup of Aut(Q)
        let dis = self.dis().as_subgroup()?;
        if holds {
            for m in dis.members() {
                if !aut.contains(m)? {
                    holds = false;
                    break;
                }
            }
        }
        if holds {
            holds = dis.is_normal_in(&aut)?;
        }
        if holds {
            // complement: the stabilizer of the witness image of the identity
            let base = rep.witness.apply(0);
            let stab = aut.stabilizer_point(base)?;
            let inter = dis.members().iter().filter(|m| stab.contains(m)).count();
            holds = inter == 1
                && dis.order() * stab.order() == aut_order
                && stab.order() == centralizer_order;
        }
        Ok(AutStructure {
            holds,
            aut_order,
            g_order,
            centralizer_order,
        })
    }

    /// True iff every row has the same number of fixed points and a single
    /// cycle on the rest.
    pub fn cyclic_profile(&self) -> CyclicProfile {
        let n = self.size();
        let mut common: Option<usize> = None;
        for a in 0..n {
            let row = self.row(a);
            let fixed = row.fixed_points().len();
            if fixed == n {
                return CyclicProfile {
                    is_cyclic: false,
                    fixed_points: None,
                };
            }
            let ct = row.cycle_type();
            // exactly one non-trivial cycle covering everything else
            let nontrivial: Vec<usize> = ct.into_iter().filter(|&l| l > 1).collect();
            if nontrivial.len() != 1 || nontrivial[0] != n - fixed {
                return CyclicProfile {
                    is_cyclic: false,
                    fixed_points: None,
                };
            }
            match common {
                None => common = Some(fixed),
                Some(f) if f == fixed => {}
                _ => {
                    return CyclicProfile {
                        is_cyclic: false,
                        fixed_points: None,
                    }
                }
            }
        }
        CyclicProfile {
            is_cyclic: true,
            fixed_points: common,
        }
    }

    /// For semiregular quandles: checks `Dis(Q) ∩ ⟨L_a⟩ = 1` and
    /// `Dis(Q)·⟨L_a⟩ = LMlt(Q)` at every point.
    pub fn lmlt_split_check(&self) -> Result<bool, QuandleError> {
        if !self.predicates()?.semiregular {
            return Err(QuandleError::NotSemiregular);
        }
        let lmlt = self.lmlt();
        let dis = self.dis().as_subgroup()?;
        for a in 0..self.size() {
            let cyclic = lmlt.subgroup_generated(&[self.row(a)])?;
            let inter = cyclic.members().iter().filter(|m| dis.contains(m)).count();
            if inter != 1 {
                return Ok(false);
            }
            if PermGroup::product_set(&dis, &cyclic).len() != lmlt.order()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orbit tests of the automorphism group on points and on ordered
    /// pairs of distinct points.
    pub fn homogeneity(&self) -> Result<Homogeneity, QuandleError> {
        let aut = self.automorphism_group();
        let homogeneous = aut.is_transitive();
        let n = self.size();
        let doubly_homogeneous = if !homogeneous || n < 2 {
            n == 1
        } else {
            // orbit of the pair (0,1) under the automorphism group
            let mut seen = vec![false; n * n];
            let mut stack = vec![(0usize, 1usize)];
            seen[1] = true;
            let mut count = 0usize;
            while let Some((a, b)) = stack.pop() {
                count += 1;
                for h in aut.generators() {
                    let (ha, hb) = (h.apply(a), h.apply(b));
                    if !seen[ha * n + hb] {
                        seen[ha * n + hb] = true;
                        stack.push((ha, hb));
                    }
                }
            }
            count == n * (n - 1)
        };
        Ok(Homogeneity {
            homogeneous,
            doubly_homogeneous,
        })
    }
}

/// Images of conjugation by `row` on the elements of a realized group.
fn conjugation_images(
    table: &crate::group::TableRealization,
    row: &Perm,
) -> Result<Vec<u16>, QuandleError> {
    let mut images = Vec::with_capacity(table.elements.len());
    for p in &table.elements {
        let c = p.conjugate_by(row);
        let idx = table
            .elements
            .binary_search(&c)
            .map_err(|_| QuandleError::NotAnAutomorphism)?;
        images.push(idx as u16);
    }
    Ok(images)
}

/// Principal representation of a quandle over a regular subgroup `g` of its
/// automorphism group, twisted by conjugation with the row of `base`.
fn regular_subgroup_representation(
    q: &Quandle,
    g: &Subgroup,
    base: usize,
) -> Result<PrincipalRepresentation, QuandleError> {
    let table = g.to_group().as_table()?;
    let row = q.row(base);
    let auto_images = conjugation_images(&table, &row)?;
    let auto = GroupMap::automorphism(&table.group, auto_images)
        .map_err(|_| QuandleError::NotAnAutomorphism)?;
    let principal = Quandle::principal(&table.group, &auto)?;
    let images: Vec<u16> = table
        .elements
        .iter()
        .map(|p| p.apply(base) as u16)
        .collect();
    let witness = QuandleMap::new(&principal, q, images)?;
    if !witness.is_bijective() {
        return Err(QuandleError::IllDefined);
    }
    Ok(PrincipalRepresentation {
        group: table.group,
        auto,
        witness,
    })
}

/// Principal representation of one stabilizer class of a connected quandle
/// over the restriction of the normalizer of its stabilizer.
fn class_representation(
    q: &Quandle,
    class: &[usize],
    normalizer: &Subgroup,
) -> Result<PrincipalRepresentation, QuandleError> {
    let sub = q.sub_quandle(class)?;
    let k = class.len();
    let pos = |x: usize| class.binary_search(&x).unwrap();
    // restrict the normalizer to the class; the restriction acts regularly
    let mut restricted: Vec<Perm> = Vec::new();
    for h in normalizer.members() {
        let images: Vec<u16> = class.iter().map(|&x| pos(h.apply(x)) as u16).collect();
        restricted.push(Perm::from_images(images).map_err(QuandleError::Group)?);
    }
    restricted.sort_unstable();
    restricted.dedup();
    let g = Subgroup::from_members(k, restricted);
    if g.order() != k {
        return Err(QuandleError::IllDefined);
    }
    regular_subgroup_representation(&sub, &g, pos(class[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn lmlt_and_dis_orders() {
        let p3 = Quandle::projection(3).unwrap();
        assert_eq!(p3.dis().order().unwrap(), 1);
        assert_eq!(p3.lmlt().order().unwrap(), 1);

        let r3 = fixtures::r3();
        assert_eq!(r3.dis().order().unwrap(), 3);
        assert_eq!(r3.lmlt().order().unwrap(), 6);

        let a4q = fixtures::a4q();
        let dis = a4q.dis();
        assert_eq!(dis.order().unwrap(), 2);
        let nontrivial = dis.elements().unwrap()[1].clone();
        assert_eq!(nontrivial.images(), &[2, 3, 0, 1]);
    }

    #[test]
    fn connectivity_cases() {
        assert!(fixtures::r3().is_connected());
        let comps = fixtures::a4q().connectivity().components;
        assert_eq!(comps, vec![vec![0, 2], vec![1, 3]]);
        let p3 = Quandle::projection(3).unwrap();
        assert_eq!(p3.connectivity().components.len(), 3);
    }

    #[test]
    fn lambda_map_cases() {
        let p3 = Quandle::projection(3).unwrap();
        let l = p3.lambda_map().unwrap();
        assert_eq!(l.image.size(), 1);
        assert!(l.kernel.is_full());

        let a4q = fixtures::a4q();
        let l = a4q.lambda_map().unwrap();
        assert_eq!(l.image.size(), 2);
        assert_eq!(l.kernel.class_of(0), vec![0, 2]);
        assert_eq!(l.kernel.class_of(1), vec![1, 3]);

        let r3 = fixtures::r3();
        assert!(r3.lambda_map().unwrap().kernel.is_diagonal());
    }

    #[test]
    fn predicates_on_fixtures() {
        let r3 = fixtures::r3().predicates().unwrap();
        assert!(r3.faithful && r3.crossed_set && r3.latin && r3.semiregular);

        let a4q = fixtures::a4q().predicates().unwrap();
        assert!(a4q.semiregular && a4q.crossed_set);
        assert!(!a4q.faithful && !a4q.latin);

        let p3 = Quandle::projection(3).unwrap().predicates().unwrap();
        assert!(p3.crossed_set && p3.semiregular);
        assert!(!p3.faithful && !p3.latin);
    }

    #[test]
    fn p_relation_cases() {
        let p3 = Quandle::projection(3).unwrap();
        assert!(p3.p_relation().is_full());
        let r3 = fixtures::r3();
        assert!(r3.p_relation().is_diagonal());
        let a4q = fixtures::a4q();
        let p = a4q.p_relation();
        assert!(p.is_transitive());
        assert_eq!(p.class_of(0), vec![0, 2]);
        // equal to the row kernel on this semiregular quandle
        let lambda = a4q.lambda_map().unwrap().kernel;
        for a in 0..4 {
            assert_eq!(p.class_of(a), lambda.class_of(a));
        }
    }

    #[test]
    fn p_subgroups_cases() {
        let r3 = fixtures::r3();
        let ps = r3.p_subgroups().unwrap();
        assert_eq!(ps.aut_p.order(), 1);
        assert!(ps.aut_p_normal && ps.lmlt_p_normal);

        let p3 = Quandle::projection(3).unwrap();
        let ps = p3.p_subgroups().unwrap();
        assert_eq!(ps.aut_p.order(), 6);
    }

    #[test]
    fn sigma_and_zeta_cases() {
        let r3 = fixtures::r3();
        assert!(r3.sigma().unwrap().is_full());

        let p3 = Quandle::projection(3).unwrap();
        assert!(p3.sigma().unwrap().is_full());
        assert!(p3.zeta().unwrap().is_full());
    }

    #[test]
    fn decomposition_of_connected_principal_is_single_class() {
        let r3 = fixtures::r3();
        let d = r3.semiregular_decomposition().unwrap();
        assert_eq!(d.classes.len(), 1);
        assert!(d.all_semiregular);
        let c = d.connected_case.unwrap();
        assert!(c.normalizer_orbit_match && c.pairwise_isomorphic);
    }

    #[test]
    fn decomposition_of_projection_has_no_connected_case() {
        let p3 = Quandle::projection(3).unwrap();
        let d = p3.semiregular_decomposition().unwrap();
        assert_eq!(d.classes.len(), 1);
        assert!(d.all_semiregular);
        assert!(d.connected_case.is_none());
    }

    #[test]
    fn principal_analysis_on_r3() {
        let r3 = fixtures::r3();
        let PrincipalStatus::Principal(rep) = r3.principal_analysis().unwrap() else {
            panic!("R3 is principal");
        };
        assert_eq!(rep.group.order(), 3);
        assert!(rep.witness.is_bijective());
    }

    #[test]
    fn principal_search_finds_translations_of_disconnected_affine() {
        let a4q = fixtures::a4q();
        assert!(matches!(
            a4q.principal_analysis().unwrap(),
            PrincipalStatus::Unsupported
        ));
        let PrincipalStatus::Principal(rep) = a4q.principal_analysis_with_search().unwrap() else {
            panic!("affine quandles are principal");
        };
        assert_eq!(rep.group.order(), 4);
    }

    #[test]
    fn coset_representation_of_r3_and_ss4() {
        let w = fixtures::r3().coset_representation().unwrap();
        assert!(w.is_bijective());
        // SS4 has regular displacement group, so the stabilizer is trivial
        let ss4 = fixtures::ss4();
        let w = ss4.coset_representation().unwrap();
        assert_eq!(w.source().size(), 4);
        assert!(w.is_bijective());
    }

    #[test]
    fn aut_structure_of_r3_and_ss4() {
        let r = fixtures::r3().aut_structure_check().unwrap();
        assert!(r.holds);
        assert_eq!((r.aut_order, r.g_order, r.centralizer_order), (6, 3, 2));

        let s = fixtures::ss4().aut_structure_check().unwrap();
        assert!(s.holds);
        assert_eq!((s.aut_order, s.g_order, s.centralizer_order), (12, 4, 3));
    }

    #[test]
    fn cyclic_profile_cases() {
        let r3 = fixtures::r3();
        assert_eq!(
            r3.cyclic_profile(),
            CyclicProfile {
                is_cyclic: true,
                fixed_points: Some(1)
            }
        );
        let p3 = Quandle::projection(3).unwrap();
        assert!(!p3.cyclic_profile().is_cyclic);
    }

    #[test]
    fn lmlt_split_on_semiregular_fixtures() {
        assert!(fixtures::r3().lmlt_split_check().unwrap());
        assert!(fixtures::a4q().lmlt_split_check().unwrap());
        assert!(Quandle::projection(3).unwrap().lmlt_split_check().unwrap());
    }

    #[test]
    fn homogeneity_cases() {
        let p3 = Quandle::projection(3).unwrap().homogeneity().unwrap();
        assert!(p3.homogeneous && p3.doubly_homogeneous);
        let ss4 = fixtures::ss4().homogeneity().unwrap();
        assert!(ss4.homogeneous && ss4.doubly_homogeneous);
        let a4q = fixtures::a4q().homogeneity().unwrap();
        assert!(a4q.homogeneous && !a4q.doubly_homogeneous);
    }

    #[test]
    fn row_conjugation_identity() {
        let q = fixtures::ss4();
        for a in 0..4 {
            for b in 0..4 {
                let lhs = q.row(q.op(a, b));
                let rhs = q.row(b).conjugate_by(&q.row(a));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lmlt_factorization_on_fixtures() {
        assert!(fixtures::r3().lmlt_factorization().unwrap());
        assert!(fixtures::a4q().lmlt_factorization().unwrap());
    }
}
