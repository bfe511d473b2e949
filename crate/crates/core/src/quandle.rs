//! The [`Quandle`] type, validated from its left-translation table, and the
//! standard constructions: projection quandles, conjugation quandles,
//! affine and principal quandles over a group with a chosen automorphism,
//! coset quandles, and direct products.
//!
//! Every constructor relabels its carrier to `0..n-1` with a deterministic
//! order (tuples lexicographically for abelian specs, element index for
//! group tables, sorted coset minima for coset quandles, row-major order for
//! products) and re-validates the three quandle axioms, even where they hold
//! by construction.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::congruence::CongruenceLattice;
use crate::error::QuandleError;
use crate::group::{AbelianGroupSpec, FiniteGroup, GroupMap};
use crate::perm::{Perm, PermGroup};

/// Default cap on the carrier size for exhaustive subquandle enumeration.
pub const SUBQUANDLE_SIZE_CAP: usize = 24;

/// Internal cap on the number of subquandles collected before reporting
/// overflow (projection-like quandles have exponentially many).
pub const SUBQUANDLE_COUNT_CAP: usize = 1 << 20;

#[derive(Default)]
pub(crate) struct Caches {
    pub(crate) lmlt: OnceLock<PermGroup>,
    pub(crate) dis: OnceLock<PermGroup>,
    pub(crate) aut: OnceLock<PermGroup>,
    pub(crate) subquandles: OnceLock<Vec<Vec<usize>>>,
    pub(crate) congruences: OnceLock<CongruenceLattice>,
}

/// A finite quandle, stored as its left-translation table: entry `(a,b)` is
/// `a * b`, so row `a` is the permutation `L_a`. The derived `left_div`
/// table holds `a \ b`. Clones share the table and analysis caches.
#[derive(Clone)]
pub struct Quandle {
    size: usize,
    left: Arc<Vec<u16>>,
    left_div: Arc<Vec<u16>>,
    pub(crate) caches: Arc<Caches>,
}

impl PartialEq for Quandle {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.left == other.left
    }
}

impl Eq for Quandle {}

impl std::hash::Hash for Quandle {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.left.hash(state);
    }
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Quandle(size={})", self.size)?;
        for a in 0..self.size {
            writeln!(f, "  {:?}", &self.left[a * self.size..(a + 1) * self.size])?;
        }
        Ok(())
    }
}

impl Quandle {
    /// Validates a left-translation table given as rows.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, QuandleError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(QuandleError::Malformed);
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            for &e in row {
                if e >= n {
                    return Err(QuandleError::Malformed);
                }
                flat.push(e as u16);
            }
        }
        Self::from_flat(n, flat)
    }

    /// Validates a flat row-major left-translation table.
    pub fn from_flat(size: usize, left: Vec<u16>) -> Result<Self, QuandleError> {
        if size == 0 || left.len() != size * size || left.iter().any(|&e| (e as usize) >= size) {
            return Err(QuandleError::Malformed);
        }
        // rows are permutations
        let mut left_div = vec![0u16; size * size];
        for a in 0..size {
            let row = &left[a * size..(a + 1) * size];
            let mut seen = vec![false; size];
            for &v in row {
                if seen[v as usize] {
                    return Err(QuandleError::RowNotPermutation { row: a });
                }
                seen[v as usize] = true;
            }
            for (b, &v) in row.iter().enumerate() {
                left_div[a * size + v as usize] = b as u16;
            }
        }
        // idempotence
        for a in 0..size {
            if left[a * size + a] as usize != a {
                return Err(QuandleError::NotIdempotent { a });
            }
        }
        // left distributivity: a*(b*c) = (a*b)*(a*c)
        let at = |x: usize, y: usize| left[x * size + y] as usize;
        for a in 0..size {
            for b in 0..size {
                let ab = at(a, b);
                for c in 0..size {
                    if at(a, at(b, c)) != at(ab, at(a, c)) {
                        return Err(QuandleError::NotLeftDistributive { a, b, c });
                    }
                }
            }
        }
        Ok(Quandle {
            size,
            left: Arc::new(left),
            left_div: Arc::new(left_div),
            caches: Arc::new(Caches::default()),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `a * b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.left[a * self.size + b] as usize
    }

    /// `a \ b`, the unique `c` with `a * c = b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.left_div[a * self.size + b] as usize
    }

    pub fn left_table(&self) -> &[u16] {
        &self.left
    }

    /// Row `a` as a permutation (the left translation by `a`).
    pub fn row(&self, a: usize) -> Perm {
        Perm::from_images(self.left[a * self.size..(a + 1) * self.size].to_vec()).unwrap()
    }

    pub fn rows(&self) -> Vec<Perm> {
        (0..self.size).map(|a| self.row(a)).collect()
    }

    /// The projection quandle: `a * b = b`.
    pub fn projection(n: usize) -> Result<Self, QuandleError> {
        if n == 0 {
            return Err(QuandleError::Malformed);
        }
        let mut left = Vec::with_capacity(n * n);
        for _ in 0..n {
            left.extend(0..n as u16);
        }
        Self::from_flat(n, left)
    }

    /// The conjugation quandle on a subset of a group closed under
    /// conjugation by its own elements: `a * b = a b a⁻¹`. The subset is
    /// relabeled to `0..k-1` in ascending element order.
    pub fn conj(group: &FiniteGroup, subset: &[usize]) -> Result<Self, QuandleError> {
        let mut carrier: Vec<usize> = subset.to_vec();
        carrier.sort_unstable();
        carrier.dedup();
        if carrier.is_empty() || carrier.iter().any(|&x| x >= group.order()) {
            return Err(QuandleError::Malformed);
        }
        let pos = |x: usize| carrier.binary_search(&x);
        let k = carrier.len();
        let mut left = vec![0u16; k * k];
        for (i, &a) in carrier.iter().enumerate() {
            for (j, &b) in carrier.iter().enumerate() {
                let c = group.mul(group.mul(a, b), group.inv(a));
                match pos(c) {
                    Ok(ci) => left[i * k + j] = ci as u16,
                    Err(_) => return Err(QuandleError::NotClosedUnderConjugation),
                }
            }
        }
        Self::from_flat(k, left)
    }

    /// The affine quandle `a * b = (a - f(a)) + f(b)` over an abelian group,
    /// where `f` is given by its element images.
    pub fn affine(spec: &AbelianGroupSpec, images: &[u16]) -> Result<Self, QuandleError> {
        spec.validate_automorphism(images)
            .map_err(|_| QuandleError::NotAnAutomorphism)?;
        let n = spec.len();
        let mut left = vec![0u16; n * n];
        for a in 0..n {
            let shift = spec.sub(a, images[a] as usize);
            for b in 0..n {
                left[a * n + b] = spec.add(shift, images[b] as usize) as u16;
            }
        }
        Self::from_flat(n, left)
    }

    /// Affine quandle with the automorphism given as an integer matrix
    /// (homocyclic specs only).
    pub fn affine_matrix(spec: &AbelianGroupSpec, matrix: &[Vec<i64>]) -> Result<Self, QuandleError> {
        let images = spec
            .automorphism_from_matrix(matrix)
            .map_err(|_| QuandleError::NotAnAutomorphism)?;
        Self::affine(spec, &images)
    }

    /// The principal quandle `a * b = a·f(a⁻¹b)` on the elements of `group`.
    pub fn principal(group: &FiniteGroup, f: &GroupMap) -> Result<Self, QuandleError> {
        if !f.is_automorphism_of(group) {
            return Err(QuandleError::NotAnAutomorphism);
        }
        let n = group.order();
        let mut left = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let v = group.mul(a, f.apply(group.mul(group.inv(a), b)));
                left[a * n + b] = v as u16;
            }
        }
        Self::from_flat(n, left)
    }

    /// The coset quandle `aH * bH = a·f(a⁻¹b)·H` for `H ≤ Fix(f)`. Cosets
    /// are relabeled in ascending order of their minimal element.
    pub fn homogeneous(
        group: &FiniteGroup,
        subgroup: &[usize],
        f: &GroupMap,
    ) -> Result<Self, QuandleError> {
        if !f.is_automorphism_of(group) {
            return Err(QuandleError::NotAnAutomorphism);
        }
        if !group.is_subgroup(subgroup) {
            return Err(QuandleError::Malformed);
        }
        if subgroup.iter().any(|&h| f.apply(h) != h) {
            return Err(QuandleError::SubgroupNotFixed);
        }
        let n = group.order();
        // coset of each element, keyed by minimal member
        let mut coset_min = vec![usize::MAX; n];
        for a in 0..n {
            if coset_min[a] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = subgroup.iter().map(|&h| group.mul(a, h)).collect();
            let min = *members.iter().min().unwrap();
            for m in members {
                coset_min[m] = min;
            }
        }
        let mut mins: Vec<usize> = coset_min.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        mins.sort_unstable();
        let index_of = |m: usize| mins.binary_search(&m).unwrap();
        let k = mins.len();
        let mut left = vec![u16::MAX; k * k];
        // well-definedness: every representative pair must give the same coset
        for a in 0..n {
            let ia = index_of(coset_min[a]);
            for b in 0..n {
                let ib = index_of(coset_min[b]);
                let v = group.mul(a, f.apply(group.mul(group.inv(a), b)));
                let iv = index_of(coset_min[v]) as u16;
                let slot = &mut left[ia * k + ib];
                if *slot == u16::MAX {
                    *slot = iv;
                } else if *slot != iv {
                    return Err(QuandleError::IllDefined);
                }
            }
        }
        Self::from_flat(k, left)
    }

    /// Direct product with row-major index order.
    pub fn product(factors: &[Quandle]) -> Result<Self, QuandleError> {
        if factors.is_empty() {
            return Err(QuandleError::Malformed);
        }
        let sizes: Vec<usize> = factors.iter().map(|q| q.size()).collect();
        let n: usize = sizes.iter().product();
        let decode = |mut idx: usize| -> Vec<usize> {
            let mut t = vec![0; sizes.len()];
            for i in (0..sizes.len()).rev() {
                t[i] = idx % sizes[i];
                idx /= sizes[i];
            }
            t
        };
        let encode = |t: &[usize]| -> usize {
            let mut idx = 0;
            for (i, &x) in t.iter().enumerate() {
                idx = idx * sizes[i] + x;
            }
            idx
        };
        let mut left = vec![0u16; n * n];
        for a in 0..n {
            let ta = decode(a);
            for b in 0..n {
                let tb = decode(b);
                let tc: Vec<usize> = ta
                    .iter()
                    .zip(&tb)
                    .zip(factors)
                    .map(|((&x, &y), q)| q.op(x, y))
                    .collect();
                left[a * n + b] = encode(&tc) as u16;
            }
        }
        Self::from_flat(n, left)
    }

    /// Smallest subset containing `seed` and closed under `*` and `\`.
    pub fn subquandle_generated(&self, seed: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.size];
        let mut members: Vec<usize> = Vec::new();
        for &s in seed {
            if !mask[s] {
                mask[s] = true;
                members.push(s);
            }
        }
        let mut w = 0;
        while w < members.len() {
            let a = members[w];
            for i in 0..members.len() {
                let b = members[i];
                for c in [self.op(a, b), self.ldiv(a, b), self.op(b, a), self.ldiv(b, a)] {
                    if !mask[c] {
                        mask[c] = true;
                        members.push(c);
                    }
                }
            }
            w += 1;
        }
        members.sort_unstable();
        members
    }

    pub fn is_subquandle(&self, members: &[usize]) -> bool {
        members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| members.contains(&self.op(a, b)) && members.contains(&self.ldiv(a, b)))
        })
    }

    /// Every subset closed under `*` and `\`, found by closing all subsets
    /// generated from at most two elements under pairwise joins.
    pub fn all_subquandles(&self) -> Result<&[Vec<usize>], QuandleError> {
        if self.size > SUBQUANDLE_SIZE_CAP {
            return Err(QuandleError::SizeCap {
                size: self.size,
                cap: SUBQUANDLE_SIZE_CAP,
            });
        }
        if let Some(cached) = self.caches.subquandles.get() {
            return Ok(cached);
        }
        let to_mask = |set: &[usize]| -> u32 { set.iter().fold(0u32, |m, &x| m | (1 << x)) };
        let from_mask = |mask: u32| -> Vec<usize> {
            (0..self.size).filter(|&i| mask & (1 << i) != 0).collect()
        };
        let close_mask = |mask: u32| -> u32 {
            to_mask(&self.subquandle_generated(&from_mask(mask)))
        };
        let mut found: BTreeSet<u32> = BTreeSet::new();
        for a in 0..self.size {
            found.insert(close_mask(1 << a));
            for b in (a + 1)..self.size {
                found.insert(close_mask((1 << a) | (1 << b)));
            }
        }
        loop {
            let pool: Vec<u32> = found.iter().copied().collect();
            let before = found.len();
            for i in 0..pool.len() {
                for j in (i + 1)..pool.len() {
                    let join = pool[i] | pool[j];
                    if join == pool[i] || join == pool[j] {
                        continue;
                    }
                    found.insert(close_mask(join));
                    if found.len() > SUBQUANDLE_COUNT_CAP {
                        return Err(QuandleError::Overflow {
                            cap: SUBQUANDLE_COUNT_CAP,
                        });
                    }
                }
            }
            if found.len() == before {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().map(from_mask).collect();
        out.sort_by_key(|s| (s.len(), s.clone()));
        let _ = self.caches.subquandles.set(out);
        Ok(self.caches.subquandles.get().unwrap())
    }

    /// The subquandle on `members` as a standalone quandle; `members` is
    /// sorted and positions in the result follow that order.
    pub fn sub_quandle(&self, members: &[usize]) -> Result<Quandle, QuandleError> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let pos = |x: usize| sorted.binary_search(&x).map_err(|_| QuandleError::Malformed);
        let k = sorted.len();
        let mut left = vec![0u16; k * k];
        for (i, &a) in sorted.iter().enumerate() {
            for (j, &b) in sorted.iter().enumerate() {
                left[i * k + j] = pos(self.op(a, b))? as u16;
            }
        }
        Quandle::from_flat(k, left)
    }

    /// The image of this quandle under a relabeling permutation.
    pub fn relabel(&self, perm: &Perm) -> Quandle {
        debug_assert_eq!(perm.degree(), self.size);
        let n = self.size;
        let mut left = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                left[perm.apply(a) * n + perm.apply(b)] = perm.apply(self.op(a, b)) as u16;
            }
        }
        Quandle::from_flat(n, left).expect("relabeling preserves the axioms")
    }
}

/// A quandle homomorphism given by element images.
#[derive(Clone, PartialEq, Eq)]
pub struct QuandleMap {
    source: Quandle,
    target: Quandle,
    images: Vec<u16>,
}

impl fmt::Debug for QuandleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuandleMap{:?}", self.images)
    }
}

impl QuandleMap {
    pub fn new(source: &Quandle, target: &Quandle, images: Vec<u16>) -> Result<Self, QuandleError> {
        if images.len() != source.size() || images.iter().any(|&i| (i as usize) >= target.size()) {
            return Err(QuandleError::Malformed);
        }
        for a in 0..source.size() {
            for b in 0..source.size() {
                let lhs = images[source.op(a, b)] as usize;
                let rhs = target.op(images[a] as usize, images[b] as usize);
                if lhs != rhs {
                    return Err(QuandleError::NotAMorphism { a, b });
                }
            }
        }
        Ok(QuandleMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &Quandle {
        &self.source
    }

    pub fn target(&self) -> &Quandle {
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
        if self.source.size() != self.target.size() {
            return false;
        }
        let mut seen = vec![false; self.target.size()];
        for &i in &self.images {
            if seen[i as usize] {
                return false;
            }
            seen[i as usize] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &i in &self.images {
            seen[i as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Inverse of a bijective morphism.
    pub fn inverse(&self) -> Option<QuandleMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Some(QuandleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_GROUP_CAP;

    pub(crate) fn r3() -> Quandle {
        let spec = AbelianGroupSpec::new(vec![3]).unwrap();
        Quandle::affine(&spec, &[0, 2, 1]).unwrap()
    }

    #[test]
    fn r3_table_matches_direct_evaluation() {
        let q = r3();
        assert_eq!(q.left_table(), &[0, 2, 1, 2, 1, 0, 1, 0, 2]);
    }

    #[test]
    fn from_table_accepts_r3() {
        let q = Quandle::from_table(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(q, r3());
    }

    #[test]
    fn from_table_rejects_non_permutation_row() {
        let err = Quandle::from_table(&[vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(err, QuandleError::RowNotPermutation { row: 0 });
    }

    #[test]
    fn from_table_accepts_projection_2() {
        let q = Quandle::from_table(&[vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(q, Quandle::projection(2).unwrap());
    }

    #[test]
    fn from_table_rejects_broken_distributivity() {
        // rows are permutations and idempotent, but not left distributive
        let rows = vec![
            vec![0, 2, 1, 3],
            vec![2, 1, 3, 0],
            vec![1, 0, 2, 3],
            vec![0, 1, 2, 3],
        ];
        let err = Quandle::from_table(&rows).unwrap_err();
        assert!(matches!(err, QuandleError::NotLeftDistributive { .. }));
    }

    #[test]
    fn left_div_round_trips() {
        let q = r3();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(q.op(a, q.ldiv(a, b)), b);
                assert_eq!(q.ldiv(a, q.op(a, b)), b);
            }
        }
    }

    #[test]
    fn projection_has_identity_rows() {
        let q = Quandle::projection(3).unwrap();
        for a in 0..3 {
            assert!(q.row(a).is_identity());
        }
        assert_eq!(Quandle::projection(1).unwrap().size(), 1);
    }

    #[test]
    fn conj_of_trivial_and_abelian() {
        let g = FiniteGroup::cyclic(4);
        let q = Quandle::conj(&g, &[0]).unwrap();
        assert_eq!(q.size(), 1);
        let q = Quandle::conj(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(q, Quandle::projection(4).unwrap());
    }

    #[test]
    fn conj_rejects_unclosed_subset() {
        // transpositions {(01)} alone: (01)(12)(01) = (02) escapes
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let table = PermGroup::generated(vec![a.clone(), b.clone()], DEFAULT_GROUP_CAP)
            .unwrap()
            .as_table()
            .unwrap();
        let ai = table.elements.iter().position(|p| *p == a).unwrap();
        let bi = table.elements.iter().position(|p| *p == b).unwrap();
        let err = Quandle::conj(&table.group, &[ai, bi]).unwrap_err();
        assert_eq!(err, QuandleError::NotClosedUnderConjugation);
    }

    #[test]
    fn affine_identity_is_projection() {
        let spec = AbelianGroupSpec::new(vec![3]).unwrap();
        let q = Quandle::affine(&spec, &[0, 1, 2]).unwrap();
        assert_eq!(q, Quandle::projection(3).unwrap());
    }

    #[test]
    fn affine_z4_times_3_rows_pair_up() {
        let spec = AbelianGroupSpec::new(vec![4]).unwrap();
        let q = Quandle::affine(&spec, &[0, 3, 2, 1]).unwrap();
        assert_eq!(q.row(0), q.row(2));
        assert_eq!(q.row(1), q.row(3));
        assert_ne!(q.row(0), q.row(1));
    }

    #[test]
    fn principal_on_abelian_equals_affine() {
        let spec = AbelianGroupSpec::new(vec![4]).unwrap();
        let g = spec.to_group();
        let f = GroupMap::automorphism(&g, vec![0, 3, 2, 1]).unwrap();
        let q1 = Quandle::principal(&g, &f).unwrap();
        let q2 = Quandle::affine(&spec, &[0, 3, 2, 1]).unwrap();
        assert_eq!(q1, q2);
    }

    #[test]
    fn principal_identity_is_projection() {
        let g = FiniteGroup::cyclic(5);
        let f = GroupMap::identity(&g);
        let q = Quandle::principal(&g, &f).unwrap();
        assert_eq!(q, Quandle::projection(5).unwrap());
    }

    #[test]
    fn homogeneous_with_trivial_subgroup_is_principal() {
        let g = FiniteGroup::cyclic(3);
        let f = GroupMap::automorphism(&g, vec![0, 2, 1]).unwrap();
        let q1 = Quandle::homogeneous(&g, &[0], &f).unwrap();
        let q2 = Quandle::principal(&g, &f).unwrap();
        assert_eq!(q1, q2);
    }

    #[test]
    fn homogeneous_rejects_unfixed_subgroup() {
        let g = FiniteGroup::cyclic(4);
        let f = GroupMap::automorphism(&g, vec![0, 3, 2, 1]).unwrap();
        // {0,2} is a subgroup but f moves nothing in it; {0,1,2,3} as a
        // "subgroup" with unfixed points should be rejected
        let err = Quandle::homogeneous(&g, &[0, 1, 2, 3], &f).unwrap_err();
        assert_eq!(err, QuandleError::SubgroupNotFixed);
    }

    #[test]
    fn product_with_singleton_is_isomorphic_copy() {
        let q = Quandle::product(&[r3(), Quandle::projection(1).unwrap()]).unwrap();
        assert_eq!(q.left_table(), r3().left_table());
    }

    #[test]
    fn subquandle_generated_cases() {
        let q = r3();
        assert_eq!(q.subquandle_generated(&[1, 2]), vec![0, 1, 2]);
        let p3 = Quandle::projection(3).unwrap();
        assert_eq!(p3.subquandle_generated(&[0, 1]), vec![0, 1]);
        let spec = AbelianGroupSpec::new(vec![4]).unwrap();
        let a4q = Quandle::affine(&spec, &[0, 3, 2, 1]).unwrap();
        assert_eq!(a4q.subquandle_generated(&[0, 2]), vec![0, 2]);
    }

    #[test]
    fn all_subquandles_of_projection_3() {
        let p3 = Quandle::projection(3).unwrap();
        assert_eq!(p3.all_subquandles().unwrap().len(), 7);
    }

    #[test]
    fn quandle_map_validates() {
        let q = r3();
        let id = QuandleMap::new(&q, &q, vec![0, 1, 2]).unwrap();
        assert!(id.is_bijective());
        assert!(QuandleMap::new(&q, &q, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn relabel_keeps_axioms() {
        let q = r3();
        let p = Perm::from_images(vec![1, 2, 0]).unwrap();
        let r = q.relabel(&p);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(r.op(p.apply(a), p.apply(b)), p.apply(q.op(a, b)));
            }
        }
    }
}
