//! Congruences of quandles, their lattice, quotients, and the Galois pair
//! between congruences and normal subgroups of the left multiplication
//! group lying inside the displacement group.
//!
//! A congruence is a partition compatible with `*` and `\`. The lattice is
//! generated by principal congruences; joins are computed as transitive
//! closures of block unions and deduplicated by the least-representative
//! signature, so lattice element identity is deterministic.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::CongruenceError;
use crate::group::{prime_power_base, AbelianGroupSpec, FiniteGroup, GroupMap};
use crate::iso;
use crate::perm::{Perm, Subgroup};
use crate::quandle::{Quandle, QuandleMap};
use crate::structure::PrincipalStatus;

/// Cap on the carrier size for congruence-lattice computation.
pub const CONGRUENCE_SIZE_CAP: usize = 24;

/// Cap on the number of congruences collected before reporting overflow.
pub const CONGRUENCE_COUNT_CAP: usize = 20_000;

/// A partition of `{0..n-1}`, stored as the least element of each block.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    repr: Vec<u16>,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.repr)
    }
}

impl Partition {
    pub fn diagonal(n: usize) -> Self {
        Partition {
            repr: (0..n as u16).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Partition {
            repr: vec![0; n.max(1)],
        }
    }

    /// Builds a partition from any class-index labeling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let _n = labels.len();
        let mut least: BTreeMap<usize, u16> = BTreeMap::new();
        for (i, &l) in labels.iter().enumerate() {
            least.entry(l).or_insert(i as u16);
        }
        let repr = labels.iter().map(|l| least[l]).collect();
        Partition { repr }
    }

    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Self {
        let mut labels = vec![usize::MAX; n];
        for (k, class) in classes.iter().enumerate() {
            for &x in class {
                labels[x] = k;
            }
        }
        debug_assert!(labels.iter().all(|&l| l != usize::MAX));
        Partition::from_labels(&labels)
    }

    pub fn size(&self) -> usize {
        self.repr.len()
    }

    /// Least element of the block containing `a`.
    pub fn repr_of(&self, a: usize) -> usize {
        self.repr[a] as usize
    }

    pub fn repr_slice(&self) -> &[u16] {
        &self.repr
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.repr[a] == self.repr[b]
    }

    /// Blocks sorted by their least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<u16, Vec<usize>> = BTreeMap::new();
        for (i, &r) in self.repr.iter().enumerate() {
            map.entry(r).or_default().push(i);
        }
        map.into_values().collect()
    }

    pub fn block_of(&self, a: usize) -> Vec<usize> {
        let r = self.repr[a];
        (0..self.size()).filter(|&i| self.repr[i] == r).collect()
    }

    pub fn block_count(&self) -> usize {
        self.repr
            .iter()
            .enumerate()
            .filter(|(i, &r)| *i == r as usize)
            .count()
    }

    pub fn is_diagonal(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() == 1
    }

    /// Blockwise intersection.
    pub fn meet(&self, other: &Partition) -> Partition {
        let n = self.size();
        let mut key: BTreeMap<(u16, u16), u16> = BTreeMap::new();
        let mut repr = vec![0u16; n];
        for i in 0..n {
            let k = (self.repr[i], other.repr[i]);
            let e = key.entry(k).or_insert(i as u16);
            repr[i] = *e;
        }
        Partition { repr }
    }

    /// Transitive closure of the union of the two partitions.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.size();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let r = find(uf, uf[x]);
                uf[x] = r;
            }
            uf[x]
        }
        for i in 0..n {
            let (a, b) = (find(&mut uf, i), find(&mut uf, self.repr[i] as usize));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
            let (a, b) = (find(&mut uf, i), find(&mut uf, other.repr[i] as usize));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
        }
        let repr = (0..n).map(|i| find(&mut uf, i) as u16).collect();
        Partition { repr }
    }

    /// True if every block of `self` is contained in a block of `other`.
    pub fn is_refinement_of(&self, other: &Partition) -> bool {
        (0..self.size()).all(|i| other.same(i, self.repr[i] as usize))
    }
}

/// A partition verified to be compatible with both quandle operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    partition: Partition,
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence{:?}", self.partition.repr_slice())
    }
}

impl Congruence {
    /// Validates compatibility: related pairs stay related after translating
    /// by any element on either side, in both operations.
    pub fn new(q: &Quandle, partition: Partition) -> Result<Self, CongruenceError> {
        if partition.size() != q.size() {
            return Err(CongruenceError::SizeMismatch {
                expected: q.size(),
                got: partition.size(),
            });
        }
        let n = q.size();
        for a in 0..n {
            for b in 0..n {
                if !partition.same(a, b) {
                    continue;
                }
                for c in 0..n {
                    let ok = partition.same(q.op(c, a), q.op(c, b))
                        && partition.same(q.op(a, c), q.op(b, c))
                        && partition.same(q.ldiv(c, a), q.ldiv(c, b))
                        && partition.same(q.ldiv(a, c), q.ldiv(b, c));
                    if !ok {
                        return Err(CongruenceError::NotACongruence { a, b });
                    }
                }
            }
        }
        Ok(Congruence { partition })
    }

    pub fn diagonal(q: &Quandle) -> Self {
        Congruence {
            partition: Partition::diagonal(q.size()),
        }
    }

    pub fn full(q: &Quandle) -> Self {
        Congruence {
            partition: Partition::full(q.size()),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn size(&self) -> usize {
        self.partition.size()
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.partition.same(a, b)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.partition.blocks()
    }

    pub fn is_diagonal(&self) -> bool {
        self.partition.is_diagonal()
    }

    pub fn is_full(&self) -> bool {
        self.partition.is_full()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_diagonal() && !self.is_full()
    }

    /// One-line serialization: least representative per element.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .partition
            .repr_slice()
            .iter()
            .map(|r| r.to_string())
            .collect();
        format!("cong {} : {}", self.size(), parts.join(" "))
    }
}

/// Smallest congruence identifying `a` and `b`: close the pair under left
/// and right translations by every element in both operations, then take
/// the transitive closure (maintained by union-find).
pub fn principal_congruence(q: &Quandle, a: usize, b: usize) -> Congruence {
    let n = q.size();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
        }
        uf[x]
    }
    let mut queue: Vec<(usize, usize)> = Vec::new();
    let union = |uf: &mut Vec<usize>, queue: &mut Vec<(usize, usize)>, x: usize, y: usize| {
        let (rx, ry) = (find(uf, x), find(uf, y));
        if rx != ry {
            uf[rx.max(ry)] = rx.min(ry);
            queue.push((x, y));
        }
    };
    union(&mut uf, &mut queue, a, b);
    let mut w = 0;
    while w < queue.len() {
        let (x, y) = queue[w];
        w += 1;
        for c in 0..n {
            union(&mut uf, &mut queue, q.op(c, x), q.op(c, y));
            union(&mut uf, &mut queue, q.op(x, c), q.op(y, c));
            union(&mut uf, &mut queue, q.ldiv(c, x), q.ldiv(c, y));
            union(&mut uf, &mut queue, q.ldiv(x, c), q.ldiv(y, c));
        }
    }
    let labels: Vec<usize> = (0..n).map(|i| find(&mut uf, i)).collect();
    let partition = Partition::from_labels(&labels);
    Congruence::new(q, partition).expect("generated relation is a congruence")
}

/// The full congruence lattice with meet and join tables. Elements are
/// sorted by their representative signature.
#[derive(Clone)]
pub struct CongruenceLattice {
    congruences: Vec<Congruence>,
    meet: Vec<u16>,
    join: Vec<u16>,
}

impl fmt::Debug for CongruenceLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CongruenceLattice(len={})", self.congruences.len())
    }
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|x| x == c)
    }

    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.congruences.len() + j] as usize
    }

    pub fn join_index(&self, i: usize, j: usize) -> usize {
        self.join[i * self.congruences.len() + j] as usize
    }

    /// Proper congruences: neither diagonal nor full.
    pub fn proper(&self) -> Vec<&Congruence> {
        self.congruences.iter().filter(|c| c.is_proper()).collect()
    }
}

/// All congruences: joins of principal congruences, deduplicated, with the
/// diagonal and full congruences included.
pub fn all_congruences(q: &Quandle) -> Result<CongruenceLattice, CongruenceError> {
    if q.size() > CONGRUENCE_SIZE_CAP {
        return Err(CongruenceError::SizeCap {
            size: q.size(),
            cap: CONGRUENCE_SIZE_CAP,
        });
    }
    if let Some(cached) = q.caches.congruences.get() {
        return Ok(cached.clone());
    }
    let n = q.size();
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut pool: Vec<Partition> = Vec::new();
    let push = |seen: &mut BTreeSet<Vec<u16>>, pool: &mut Vec<Partition>, p: Partition| {
        if seen.insert(p.repr_slice().to_vec()) {
            pool.push(p);
        }
    };
    push(&mut seen, &mut pool, Partition::diagonal(n));
    push(&mut seen, &mut pool, Partition::full(n));
    for a in 0..n {
        for b in (a + 1)..n {
            let c = principal_congruence(q, a, b);
            push(&mut seen, &mut pool, c.partition().clone());
        }
    }
    loop {
        let before = pool.len();
        for i in 0..pool.len() {
            for j in (i + 1)..pool.len() {
                let joined = pool[i].join(&pool[j]);
                push(&mut seen, &mut pool, joined);
                if pool.len() > CONGRUENCE_COUNT_CAP {
                    return Err(CongruenceError::Overflow {
                        cap: CONGRUENCE_COUNT_CAP,
                    });
                }
            }
        }
        if pool.len() == before {
            break;
        }
    }
    pool.sort_by(|a, b| a.repr_slice().cmp(b.repr_slice()));
    let congruences: Vec<Congruence> = pool
        .into_iter()
        .map(|p| Congruence::new(q, p))
        .collect::<Result<_, _>>()?;
    let m = congruences.len();
    let mut meet = vec![0u16; m * m];
    let mut join = vec![0u16; m * m];
    for i in 0..m {
        for j in 0..m {
            let pm = congruences[i].partition().meet(congruences[j].partition());
            let pj = congruences[i].partition().join(congruences[j].partition());
            let mi = congruences
                .iter()
                .position(|c| c.partition() == &pm)
                .ok_or(CongruenceError::NotACongruence { a: i, b: j })?;
            let ji = congruences
                .iter()
                .position(|c| c.partition() == &pj)
                .ok_or(CongruenceError::NotACongruence { a: i, b: j })?;
            meet[i * m + j] = mi as u16;
            join[i * m + j] = ji as u16;
        }
    }
    let lattice = CongruenceLattice {
        congruences,
        meet,
        join,
    };
    let _ = q.caches.congruences.set(lattice);
    Ok(q.caches.congruences.get().unwrap().clone())
}

/// Quotient quandle together with the canonical projection. Blocks are
/// relabeled by their least element in ascending order.
pub struct QuotientData {
    pub quotient: Quandle,
    pub projection: QuandleMap,
}

pub fn quotient(q: &Quandle, alpha: &Congruence) -> Result<QuotientData, CongruenceError> {
    if alpha.size() != q.size() {
        return Err(CongruenceError::SizeMismatch {
            expected: q.size(),
            got: alpha.size(),
        });
    }
    let blocks = alpha.blocks();
    let k = blocks.len();
    let mut block_index = vec![0usize; q.size()];
    for (i, block) in blocks.iter().enumerate() {
        for &x in block {
            block_index[x] = i;
        }
    }
    let mut left = vec![u16::MAX; k * k];
    for a in 0..q.size() {
        for b in 0..q.size() {
            let slot = &mut left[block_index[a] * k + block_index[b]];
            let v = block_index[q.op(a, b)] as u16;
            if *slot == u16::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(CongruenceError::NotACongruence { a, b });
            }
        }
    }
    let quotient = Quandle::from_flat(k, left)?;
    let images: Vec<u16> = (0..q.size()).map(|a| block_index[a] as u16).collect();
    let projection = QuandleMap::new(q, &quotient, images)?;
    Ok(QuotientData {
        quotient,
        projection,
    })
}

/// The two displacement subgroups attached to a congruence, plus the order
/// of the image of the induced map onto the quotient's displacement group.
pub struct GaloisData {
    pub dis_alpha: Subgroup,
    pub dis_upper: Subgroup,
    pub pi_image_order: usize,
}

/// `Dis_α` (generated by displacements inside blocks), `Dis^α` (elements
/// fixing every block setwise), with the containment, normality-in-LMlt and
/// quotient-order identities verified.
pub fn galois(q: &Quandle, alpha: &Congruence) -> Result<GaloisData, CongruenceError> {
    let n = q.size();
    let mut gens: Vec<Perm> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && alpha.same(a, b) {
                gens.push(q.row(a).compose(&q.row(b).inverse()));
            }
        }
    }
    let lmlt = q.lmlt();
    let dis = q.dis();
    let dis_alpha = lmlt.subgroup_generated(&gens)?;
    let members: Vec<Perm> = dis
        .elements()?
        .iter()
        .filter(|h| (0..n).all(|a| alpha.same(h.apply(a), a)))
        .cloned()
        .collect();
    let dis_upper = Subgroup::from_members(n, members);
    if !dis_alpha.is_subset_of(&dis_upper) {
        return Err(CongruenceError::Inconsistent(
            "relative displacement group not inside the block kernel".into(),
        ));
    }
    for sg in [&dis_alpha, &dis_upper] {
        if !sg.is_normal_in(&lmlt)? {
            return Err(CongruenceError::Inconsistent(
                "displacement subgroup of a congruence must be normal in the left multiplication group".into(),
            ));
        }
    }
    let qd = quotient(q, alpha)?;
    let pi_image_order = qd.quotient.dis().order()?;
    if dis.order()? != dis_upper.order() * pi_image_order {
        return Err(CongruenceError::Inconsistent(
            "index of the block kernel does not match the quotient displacement order".into(),
        ));
    }
    Ok(GaloisData {
        dis_alpha,
        dis_upper,
        pi_image_order,
    })
}

fn check_in_norm(q: &Quandle, n_sub: &Subgroup) -> Result<(), CongruenceError> {
    let dis = q.dis();
    for m in n_sub.members() {
        if !dis.contains(m)? {
            return Err(CongruenceError::NotInNorm {
                reason: "not contained in the displacement group".into(),
            });
        }
    }
    if !n_sub.is_normal_in(&q.lmlt())? {
        return Err(CongruenceError::NotInNorm {
            reason: "not normal in the left multiplication group".into(),
        });
    }
    Ok(())
}

/// The congruence `{(a,b) : L_a L_b⁻¹ ∈ N}` for `N` normal in the left
/// multiplication group and contained in the displacement group.
pub fn con_of_subgroup(q: &Quandle, n_sub: &Subgroup) -> Result<Congruence, CongruenceError> {
    check_in_norm(q, n_sub)?;
    let n = q.size();
    let rows: Vec<Perm> = q.rows();
    let mut labels = vec![usize::MAX; n];
    for a in 0..n {
        if labels[a] != usize::MAX {
            continue;
        }
        labels[a] = a;
        for b in (a + 1)..n {
            if labels[b] == usize::MAX && n_sub.contains(&rows[a].compose(&rows[b].inverse())) {
                labels[b] = a;
            }
        }
    }
    Congruence::new(q, Partition::from_labels(&labels))
}

/// The orbit partition of `N`, verified to be a congruence.
pub fn orbit_congruence(q: &Quandle, n_sub: &Subgroup) -> Result<Congruence, CongruenceError> {
    check_in_norm(q, n_sub)?;
    let orbits = n_sub.orbits();
    Congruence::new(q, Partition::from_classes(q.size(), &orbits))
}

/// One entry of `Norm(Q)`: a normal subgroup of the left multiplication
/// group inside the displacement group, flagged with the congruence whose
/// relative displacement group it is, when one exists.
pub struct NormEntry {
    pub subgroup: Subgroup,
    pub is_dis_alpha_of: Option<Congruence>,
}

pub fn norm_lattice(q: &Quandle) -> Result<Vec<NormEntry>, CongruenceError> {
    let lmlt = q.lmlt();
    let dis = q.dis();
    let normal = lmlt.normal_subgroups()?;
    let mut entries = Vec::new();
    let lattice = all_congruences(q)?;
    let mut dis_alphas: Vec<(Vec<Perm>, Congruence)> = Vec::new();
    for c in lattice.congruences() {
        let g = galois(q, c)?;
        dis_alphas.push((g.dis_alpha.members().to_vec(), c.clone()));
    }
    for sg in normal {
        let inside = {
            let mut ok = true;
            for m in sg.members() {
                if !dis.contains(m)? {
                    ok = false;
                    break;
                }
            }
            ok
        };
        if !inside {
            continue;
        }
        let is_dis_alpha_of = dis_alphas
            .iter()
            .find(|(members, _)| members.as_slice() == sg.members())
            .map(|(_, c)| c.clone());
        entries.push(NormEntry {
            subgroup: sg,
            is_dis_alpha_of,
        });
    }
    Ok(entries)
}

/// Result of the mutual-inverse check between the two Galois maps.
pub struct CdsgReport {
    pub holds: bool,
    pub failures: Vec<String>,
}

/// Checks that `con(Dis_α) = α` for every congruence and `Dis(con_N) = N`
/// for every subgroup in `Norm(Q)`.
pub fn cdsg_check(q: &Quandle) -> Result<CdsgReport, CongruenceError> {
    let lattice = all_congruences(q)?;
    let mut failures = Vec::new();
    for c in lattice.congruences() {
        let g = galois(q, c)?;
        let back = con_of_subgroup(q, &g.dis_alpha)?;
        if back != *c {
            failures.push(format!(
                "congruence {} maps to subgroup of order {} whose congruence is {}",
                c.render(),
                g.dis_alpha.order(),
                back.render()
            ));
        }
    }
    for entry in norm_lattice(q)? {
        let c = con_of_subgroup(q, &entry.subgroup)?;
        let g = galois(q, &c)?;
        if g.dis_alpha.members() != entry.subgroup.members() {
            failures.push(format!(
                "subgroup of order {} maps to {} whose subgroup has order {}",
                entry.subgroup.order(),
                c.render(),
                g.dis_alpha.order()
            ));
        }
    }
    Ok(CdsgReport {
        holds: failures.is_empty(),
        failures,
    })
}

/// Classification data for a strictly simple quandle of size `p^n > 2`.
pub struct AffineClassification {
    pub p: usize,
    pub n: usize,
    pub matrix: Vec<Vec<i64>>,
}

pub struct SimplicityReport {
    pub simple: bool,
    pub strictly_simple: bool,
    pub classification: Option<AffineClassification>,
}

/// Simplicity (two-element congruence lattice) and strict simplicity (no
/// proper subquandles); for strictly simple quandles of size above two,
/// recovers the prime-power classification and verifies it round-trips.
pub fn simplicity(q: &Quandle) -> Result<SimplicityReport, CongruenceError> {
    let lattice = all_congruences(q)?;
    let simple = lattice.len() == 2 && q.size() >= 2;
    let subs = q.all_subquandles()?;
    let strictly_simple = subs.iter().all(|s| s.len() == 1 || s.len() == q.size());
    let mut classification = None;
    if strictly_simple && q.size() > 2 {
        classification = Some(classify_strictly_simple(q)?);
    }
    Ok(SimplicityReport {
        simple,
        strictly_simple,
        classification,
    })
}

fn classify_strictly_simple(q: &Quandle) -> Result<AffineClassification, CongruenceError> {
    let p = prime_power_base(q.size()).ok_or_else(|| {
        CongruenceError::Inconsistent("strictly simple quandle of non-prime-power size".into())
    })?;
    let mut n = 0;
    let mut m = q.size();
    while m > 1 {
        m /= p;
        n += 1;
    }
    let PrincipalStatus::Principal(rep) = q.principal_analysis()? else {
        return Err(CongruenceError::Inconsistent(
            "strictly simple quandle with non-regular displacement group".into(),
        ));
    };
    let g = rep.group;
    // pick a basis of the elementary abelian group greedily
    let mut basis: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    for a in 1..g.order() {
        if !span.contains(&a) {
            basis.push(a);
            span = g.subgroup_closure(&basis);
        }
        if span.len() == g.order() {
            break;
        }
    }
    if basis.len() != n {
        return Err(CongruenceError::Inconsistent(
            "displacement group is not elementary abelian of the expected rank".into(),
        ));
    }
    // coordinates of every element in that basis
    let mut coords: Vec<Vec<i64>> = vec![Vec::new(); g.order()];
    let mut stack = vec![(0usize, vec![0i64; n])];
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    coords[0] = vec![0; n];
    while let Some((elem, coord)) = stack.pop() {
        for (i, &b) in basis.iter().enumerate() {
            let next = g.mul(elem, b);
            if !seen[next] {
                seen[next] = true;
                let mut c = coord.clone();
                c[i] = (c[i] + 1) % p as i64;
                coords[next] = c.clone();
                stack.push((next, c));
            }
        }
    }
    let mut matrix = vec![vec![0i64; n]; n];
    for (j, &b) in basis.iter().enumerate() {
        let fb = rep.auto.apply(b);
        for i in 0..n {
            matrix[i][j] = coords[fb][i];
        }
    }
    // irreducibility: the orbit of any nonzero vector under f generates all
    for v in 1..g.order() {
        let mut orbit = vec![v];
        let mut x = rep.auto.apply(v);
        while x != v {
            orbit.push(x);
            x = rep.auto.apply(x);
        }
        if g.subgroup_closure(&orbit).len() != g.order() {
            return Err(CongruenceError::Inconsistent(
                "strictly simple quandle whose twist fixes a proper subgroup".into(),
            ));
        }
    }
    // round trip: the affine quandle over Z_p^n with this matrix is isomorphic
    let spec = AbelianGroupSpec::new(vec![p; n]).map_err(CongruenceError::Group)?;
    let rebuilt = Quandle::affine_matrix(&spec, &matrix)?;
    if !iso::are_isomorphic(q, &rebuilt) {
        return Err(CongruenceError::Inconsistent(
            "classification triple does not rebuild the quandle".into(),
        ));
    }
    Ok(AffineClassification { p, n, matrix })
}

/// Left-coset partitions `∼_N` for every `N` with `f(N) = N` and
/// `[N,f] ≤ core(N)`, on the element indices of `g`.
pub fn sub_gf_partitions(
    g: &FiniteGroup,
    f: &GroupMap,
) -> Result<Vec<Partition>, CongruenceError> {
    let fs = g.f_subgroups(f).map_err(CongruenceError::Group)?;
    let mut out = Vec::new();
    for n_members in fs.sub_gf {
        let set: HashSet<usize> = n_members.iter().copied().collect();
        let mut labels = vec![usize::MAX; g.order()];
        for a in 0..g.order() {
            if labels[a] != usize::MAX {
                continue;
            }
            labels[a] = a;
            for b in (a + 1)..g.order() {
                // same left coset: a⁻¹ b ∈ N
                if labels[b] == usize::MAX && set.contains(&g.mul(g.inv(a), b)) {
                    labels[b] = a;
                }
            }
        }
        out.push(Partition::from_labels(&labels));
    }
    Ok(out)
}

pub struct SubGfReport {
    pub matches: bool,
    pub con_count: usize,
    pub sub_count: usize,
}

/// For a connected principal quandle: the congruence lattice computed
/// directly must equal the coset partitions of the invariant subgroups of
/// its principal representation, transported through the representation
/// witness.
pub fn sub_gf_correspondence(q: &Quandle) -> Result<SubGfReport, CongruenceError> {
    let PrincipalStatus::Principal(rep) = q.principal_analysis()? else {
        return Err(CongruenceError::Quandle(
            crate::error::QuandleError::NotConnected,
        ));
    };
    let partitions = sub_gf_partitions(&rep.group, &rep.auto)?;
    let witness = &rep.witness;
    let mut transported: BTreeSet<Vec<u16>> = BTreeSet::new();
    for p in &partitions {
        let mut labels = vec![usize::MAX; q.size()];
        for gi in 0..rep.group.order() {
            labels[witness.apply(gi)] = p.repr_of(gi);
        }
        transported.insert(Partition::from_labels(&labels).repr_slice().to_vec());
    }
    let lattice = all_congruences(q)?;
    let direct: BTreeSet<Vec<u16>> = lattice
        .congruences()
        .iter()
        .map(|c| c.partition().repr_slice().to_vec())
        .collect();
    Ok(SubGfReport {
        matches: transported == direct,
        con_count: direct.len(),
        sub_count: partitions.len(),
    })
}

/// For a principal quandle built directly over `(g, f)` (connected or not):
/// every coset partition of an invariant subgroup is a congruence.
pub fn sub_gf_inclusion(g: &FiniteGroup, f: &GroupMap) -> Result<bool, CongruenceError> {
    let q = Quandle::principal(g, f)?;
    let lattice = all_congruences(&q)?;
    let direct: BTreeSet<Vec<u16>> = lattice
        .congruences()
        .iter()
        .map(|c| c.partition().repr_slice().to_vec())
        .collect();
    for p in sub_gf_partitions(g, f)? {
        if !direct.contains(p.repr_slice()) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub struct AbeliannessReport {
    pub alpha_abelian: bool,
    pub alpha_central: bool,
}

/// For faithful quandles: a congruence is abelian iff its relative
/// displacement group is abelian, and central iff that group lies in the
/// center of the displacement group.
pub fn abelianness_criteria(
    q: &Quandle,
    alpha: &Congruence,
) -> Result<AbeliannessReport, CongruenceError> {
    if !q.predicates()?.faithful {
        return Err(CongruenceError::Quandle(
            crate::error::QuandleError::NotFaithful,
        ));
    }
    let g = galois(q, alpha)?;
    let sub = g.dis_alpha;
    let alpha_abelian = sub
        .members()
        .iter()
        .all(|a| sub.members().iter().all(|b| a.compose(b) == b.compose(a)));
    let center = q.dis().center()?;
    let alpha_central = sub.members().iter().all(|m| center.contains(m));
    Ok(AbeliannessReport {
        alpha_abelian,
        alpha_central,
    })
}

/// Quandle-level abelianness/solvability/nilpotence, defined through the
/// displacement group for connected quandles; `None` means the input is
/// outside the supported (connected) case.
pub struct QuandleLevelPredicates {
    pub abelian_connected: Option<bool>,
    pub solvable: Option<bool>,
    pub nilpotent: Option<bool>,
}

pub fn quandle_level_predicates(q: &Quandle) -> Result<QuandleLevelPredicates, CongruenceError> {
    if !q.connectivity().connected {
        return Ok(QuandleLevelPredicates {
            abelian_connected: None,
            solvable: None,
            nilpotent: None,
        });
    }
    let dis = q.dis();
    let principal = matches!(q.principal_analysis()?, PrincipalStatus::Principal(_));
    let abelian = principal && dis.is_abelian()?;
    let series = dis.series()?;
    Ok(QuandleLevelPredicates {
        abelian_connected: Some(abelian),
        solvable: Some(series.is_solvable),
        nilpotent: Some(series.is_nilpotent),
    })
}

/// The unique proper congruence, when exactly one exists.
pub fn unique_proper_congruence(q: &Quandle) -> Result<Option<Congruence>, CongruenceError> {
    let lattice = all_congruences(q)?;
    let proper = lattice.proper();
    if proper.len() == 1 {
        Ok(Some(proper[0].clone()))
    } else {
        Ok(None)
    }
}

pub struct LagrangeSylowReport {
    pub lagrange: bool,
    pub sylow: bool,
}

/// Lagrange: every subquandle size divides the quandle size. Sylow: for
/// every maximal prime power dividing the size, a subquandle of exactly
/// that size exists.
pub fn lagrange_sylow_check(q: &Quandle) -> Result<LagrangeSylowReport, CongruenceError> {
    let subs = q.all_subquandles()?;
    let n = q.size();
    let lagrange = subs.iter().all(|s| n % s.len() == 0);
    let mut sylow = true;
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            let mut pk = 1;
            while m % p == 0 {
                m /= p;
                pk *= p;
            }
            if !subs.iter().any(|s| s.len() == pk) {
                sylow = false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
        if p * p > m && m > 1 {
            if !subs.iter().any(|s| s.len() == m) {
                sylow = false;
            }
            break;
        }
    }
    Ok(LagrangeSylowReport { lagrange, sylow })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn principal_congruence_on_r3_is_full() {
        let q = fixtures::r3();
        let c = principal_congruence(&q, 0, 1);
        assert!(c.is_full());
        let d = principal_congruence(&q, 2, 2);
        assert!(d.is_diagonal());
    }

    #[test]
    fn principal_congruence_on_a9() {
        let q = fixtures::a9();
        let c = principal_congruence(&q, 0, 3);
        let blocks = c.blocks();
        assert_eq!(blocks, vec![vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8]]);
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(all_congruences(&fixtures::r3()).unwrap().len(), 2);
        assert_eq!(all_congruences(&fixtures::a9()).unwrap().len(), 3);
        // every partition of a 3-set is a congruence of the projection quandle
        assert_eq!(
            all_congruences(&Quandle::projection(3).unwrap()).unwrap().len(),
            5
        );
    }

    #[test]
    fn quotient_of_a9_is_r3() {
        let q = fixtures::a9();
        let c = principal_congruence(&q, 0, 3);
        let qd = quotient(&q, &c).unwrap();
        assert_eq!(qd.quotient.size(), 3);
        assert!(crate::iso::are_isomorphic(&qd.quotient, &fixtures::r3()));
        assert!(qd.projection.is_surjective());
    }

    #[test]
    fn quotient_by_extremes() {
        let q = fixtures::r3();
        let d = quotient(&q, &Congruence::diagonal(&q)).unwrap();
        assert_eq!(d.quotient, q);
        let f = quotient(&q, &Congruence::full(&q)).unwrap();
        assert_eq!(f.quotient.size(), 1);
    }

    #[test]
    fn galois_on_a9() {
        let q = fixtures::a9();
        let c = principal_congruence(&q, 0, 3);
        let g = galois(&q, &c).unwrap();
        assert_eq!(g.dis_alpha.order(), 3);
        assert_eq!(g.dis_upper.order(), 3);
        assert_eq!(g.dis_alpha.members(), g.dis_upper.members());
        assert_eq!(g.pi_image_order, 3);
    }

    #[test]
    fn galois_on_diagonal_of_faithful() {
        let q = fixtures::r3();
        let g = galois(&q, &Congruence::diagonal(&q)).unwrap();
        assert_eq!(g.dis_alpha.order(), 1);
        assert_eq!(g.dis_upper.order(), 1);
    }

    #[test]
    fn con_of_whole_displacement_group_on_r3() {
        let q = fixtures::r3();
        let dis = q.dis().as_subgroup().unwrap();
        let c = con_of_subgroup(&q, &dis).unwrap();
        assert!(c.is_full());
        let trivial = Subgroup::trivial(3);
        let c0 = con_of_subgroup(&q, &trivial).unwrap();
        assert!(c0.is_diagonal());
    }

    #[test]
    fn orbit_congruence_on_a9() {
        let q = fixtures::a9();
        let c = principal_congruence(&q, 0, 3);
        let g = galois(&q, &c).unwrap();
        let oc = orbit_congruence(&q, &g.dis_alpha).unwrap();
        assert_eq!(oc, c);
        let cn = con_of_subgroup(&q, &g.dis_alpha).unwrap();
        assert_eq!(cn, c);
    }

    #[test]
    fn cdsg_holds_on_r3_fails_on_projection() {
        assert!(cdsg_check(&fixtures::r3()).unwrap().holds);
        let p3 = Quandle::projection(3).unwrap();
        let report = cdsg_check(&p3).unwrap();
        assert!(!report.holds);
    }

    #[test]
    fn simplicity_of_r3_and_ss4() {
        let r = simplicity(&fixtures::r3()).unwrap();
        assert!(r.simple && r.strictly_simple);
        let c = r.classification.unwrap();
        assert_eq!((c.p, c.n), (3, 1));
        assert_eq!(c.matrix, vec![vec![2]]);

        let s = simplicity(&fixtures::ss4()).unwrap();
        assert!(s.simple && s.strictly_simple);
        let c = s.classification.unwrap();
        assert_eq!((c.p, c.n), (2, 2));
    }

    #[test]
    fn sub_gf_on_a9_and_ss4() {
        let r = sub_gf_correspondence(&fixtures::a9()).unwrap();
        assert!(r.matches);
        assert_eq!((r.con_count, r.sub_count), (3, 3));
        let r = sub_gf_correspondence(&fixtures::ss4()).unwrap();
        assert!(r.matches);
        assert_eq!((r.con_count, r.sub_count), (2, 2));
    }

    #[test]
    fn sub_gf_inclusion_on_disconnected_affine() {
        // size-4 affine quandle with two components
        let spec = AbelianGroupSpec::new(vec![4]).unwrap();
        let g = spec.to_group();
        let f = GroupMap::automorphism(&g, vec![0, 3, 2, 1]).unwrap();
        assert!(sub_gf_inclusion(&g, &f).unwrap());
    }

    #[test]
    fn abelianness_on_a9() {
        let q = fixtures::a9();
        let c = principal_congruence(&q, 0, 3);
        let r = abelianness_criteria(&q, &c).unwrap();
        assert!(r.alpha_abelian && r.alpha_central);
        let d = abelianness_criteria(&q, &Congruence::diagonal(&q)).unwrap();
        assert!(d.alpha_abelian && d.alpha_central);
    }

    #[test]
    fn quandle_level_predicates_on_a15() {
        let p = quandle_level_predicates(&fixtures::a15()).unwrap();
        assert_eq!(p.abelian_connected, Some(true));
        assert_eq!(p.solvable, Some(true));
        assert_eq!(p.nilpotent, Some(true));
    }

    #[test]
    fn quandle_level_predicates_unsupported_when_disconnected() {
        let p = quandle_level_predicates(&Quandle::projection(3).unwrap()).unwrap();
        assert_eq!(p.abelian_connected, None);
    }

    #[test]
    fn unique_proper_congruence_cases() {
        assert!(unique_proper_congruence(&fixtures::r3()).unwrap().is_none());
        let a9 = fixtures::a9();
        let u = unique_proper_congruence(&a9).unwrap().unwrap();
        assert_eq!(u.blocks()[0], vec![0, 3, 6]);
    }

    #[test]
    fn lagrange_sylow_on_a15() {
        let r = lagrange_sylow_check(&fixtures::a15()).unwrap();
        assert!(r.lagrange && r.sylow);
        let sizes: BTreeSet<usize> = fixtures::a15()
            .all_subquandles()
            .unwrap()
            .iter()
            .map(|s| s.len())
            .collect();
        assert_eq!(sizes, BTreeSet::from([1, 3, 5, 15]));
    }

    #[test]
    fn partition_meet_join() {
        let a = Partition::from_classes(4, &[vec![0, 1], vec![2, 3]]);
        let b = Partition::from_classes(4, &[vec![0, 2], vec![1, 3]]);
        assert!(a.meet(&b).is_diagonal());
        assert!(a.join(&b).is_full());
        assert!(Partition::diagonal(4).is_refinement_of(&a));
        assert!(a.is_refinement_of(&Partition::full(4)));
    }
}
