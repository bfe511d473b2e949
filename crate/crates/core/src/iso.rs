//! Isomorphism and automorphism search for quandles, and the lexicographic
//! canonical form used by the enumerator for isomorph rejection.
//!
//! The search assigns images point by point in ascending order and closes
//! the partial map under the operation after every assignment, so once a
//! generating set is mapped the rest is forced. Candidates are pruned by a
//! per-point invariant (row cycle type and fixed-point counts). The first
//! witness found is therefore the lexicographically least one.

use std::collections::HashMap;

use crate::perm::{Perm, PermGroup};
use crate::quandle::{Quandle, QuandleMap};

/// Per-point invariant preserved by isomorphisms.
fn point_profile(q: &Quandle, a: usize) -> (Vec<usize>, usize, usize) {
    let row = q.row(a);
    let col_fixed = (0..q.size()).filter(|&b| q.op(b, a) == a).count();
    let row_fixed = row.fixed_points().len();
    (row.cycle_type(), row_fixed, col_fixed)
}

fn profiles(q: &Quandle) -> Vec<(Vec<usize>, usize, usize)> {
    (0..q.size()).map(|a| point_profile(q, a)).collect()
}

struct IsoSearch<'a> {
    q1: &'a Quandle,
    q2: &'a Quandle,
    img: Vec<Option<u16>>,
    used: Vec<bool>,
    compatible: Vec<Vec<bool>>,
    found: Vec<Vec<u16>>,
    all: bool,
    done: bool,
}

impl<'a> IsoSearch<'a> {
    fn new(q1: &'a Quandle, q2: &'a Quandle, all: bool) -> Option<Self> {
        if q1.size() != q2.size() {
            return None;
        }
        let n = q1.size();
        let p1 = profiles(q1);
        let p2 = profiles(q2);
        let mut sorted1 = p1.clone();
        let mut sorted2 = p2.clone();
        sorted1.sort_unstable();
        sorted2.sort_unstable();
        if sorted1 != sorted2 {
            return None;
        }
        let compatible = (0..n)
            .map(|a| (0..n).map(|b| p1[a] == p2[b]).collect())
            .collect();
        Some(IsoSearch {
            q1,
            q2,
            img: vec![None; n],
            used: vec![false; n],
            compatible,
            found: Vec::new(),
            all,
            done: false,
        })
    }

    /// Tentatively maps `a -> b` and closes under the operation. On success
    /// returns the points assigned by this step (for undo); on conflict the
    /// assignments are already rolled back.
    fn assign(&mut self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut trail = Vec::new();
        let mut queue = Vec::new();
        if !self.set(a, b, &mut trail, &mut queue) {
            self.undo(&trail);
            return None;
        }
        let mut w = 0;
        while w < queue.len() {
            let x = queue[w];
            w += 1;
            let xi = self.img[x].unwrap() as usize;
            for y in 0..self.q1.size() {
                let Some(yi) = self.img[y] else { continue };
                let yi = yi as usize;
                let pairs = [
                    (self.q1.op(x, y), self.q2.op(xi, yi)),
                    (self.q1.op(y, x), self.q2.op(yi, xi)),
                ];
                for (t, ti) in pairs {
                    match self.img[t] {
                        Some(cur) => {
                            if cur as usize != ti {
                                self.undo(&trail);
                                return None;
                            }
                        }
                        None => {
                            if !self.set(t, ti, &mut trail, &mut queue) {
                                self.undo(&trail);
                                return None;
                            }
                        }
                    }
                }
            }
        }
        Some(trail)
    }

    fn set(&mut self, a: usize, b: usize, trail: &mut Vec<usize>, queue: &mut Vec<usize>) -> bool {
        if self.used[b] || !self.compatible[a][b] {
            return false;
        }
        self.img[a] = Some(b as u16);
        self.used[b] = true;
        trail.push(a);
        queue.push(a);
        true
    }

    fn undo(&mut self, trail: &[usize]) {
        for &a in trail {
            let b = self.img[a].take().unwrap();
            self.used[b as usize] = false;
        }
    }

    fn dfs(&mut self) {
        if self.done {
            return;
        }
        let next = (0..self.q1.size()).find(|&a| self.img[a].is_none());
        let Some(a) = next else {
            self.found
                .push(self.img.iter().map(|o| o.unwrap()).collect());
            if !self.all {
                self.done = true;
            }
            return;
        };
        for b in 0..self.q2.size() {
            if self.used[b] || !self.compatible[a][b] {
                continue;
            }
            if let Some(trail) = self.assign(a, b) {
                self.dfs();
                self.undo(&trail);
                if self.done {
                    return;
                }
            }
        }
    }
}

/// Searches for an isomorphism and returns the lexicographically least
/// witness, or `None`.
pub fn isomorphism(q1: &Quandle, q2: &Quandle) -> Option<QuandleMap> {
    let mut search = IsoSearch::new(q1, q2, false)?;
    search.dfs();
    search
        .found
        .into_iter()
        .next()
        .map(|images| QuandleMap::new(q1, q2, images).expect("search output is a morphism"))
}

pub fn are_isomorphic(q1: &Quandle, q2: &Quandle) -> bool {
    isomorphism(q1, q2).is_some()
}

/// The full automorphism group as a permutation group on the carrier.
pub fn automorphism_group(q: &Quandle) -> PermGroup {
    if let Some(cached) = q.caches.aut.get() {
        return cached.clone();
    }
    let mut search = IsoSearch::new(q, q, true).expect("a quandle is isomorphic to itself");
    search.dfs();
    let elements: Vec<Perm> = search
        .found
        .into_iter()
        .map(|images| Perm::from_images(images).expect("automorphisms are bijections"))
        .collect();
    let group = PermGroup::from_elements(q.size(), elements);
    let _ = q.caches.aut.set(group);
    q.caches.aut.get().unwrap().clone()
}

/// Lexicographically least left-translation table over all relabelings of
/// the carrier, found by backtracking over the relabeling with prefix
/// pruning against the best table so far.
pub fn canonical_form(q: &Quandle) -> Vec<u16> {
    let n = q.size();
    let mut best: Option<Vec<u16>> = None;
    // inv[k] = old point receiving new label k; fwd = old -> new
    let mut inv: Vec<usize> = Vec::with_capacity(n);
    let mut fwd: Vec<Option<u16>> = vec![None; n];

    fn build(q: &Quandle, inv: &[usize], fwd: &[Option<u16>]) -> Vec<u16> {
        let n = q.size();
        let mut t = vec![0u16; n * n];
        for (i, &oi) in inv.iter().enumerate() {
            for (j, &oj) in inv.iter().enumerate() {
                t[i * n + j] = fwd[q.op(oi, oj)].unwrap();
            }
        }
        t
    }

    // row-major comparison of the determined prefix against best;
    // returns false when the branch can already be discarded
    fn viable(q: &Quandle, inv: &[usize], fwd: &[Option<u16>], best: &[u16]) -> bool {
        let n = q.size();
        let k = inv.len();
        for i in 0..k.min(n) {
            for j in 0..n {
                if j >= k {
                    return true; // undetermined cell: outcome unknown
                }
                match fwd[q.op(inv[i], inv[j])] {
                    None => return true,
                    Some(v) => {
                        let b = best[i * n + j];
                        if v < b {
                            return true;
                        }
                        if v > b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn dfs(
        q: &Quandle,
        inv: &mut Vec<usize>,
        fwd: &mut Vec<Option<u16>>,
        best: &mut Option<Vec<u16>>,
    ) {
        let n = q.size();
        if inv.len() == n {
            let t = build(q, inv, fwd);
            if best.as_ref().map_or(true, |b| t < *b) {
                *best = Some(t);
            }
            return;
        }
        let k = inv.len();
        for o in 0..n {
            if fwd[o].is_some() {
                continue;
            }
            fwd[o] = Some(k as u16);
            inv.push(o);
            if best.as_ref().map_or(true, |b| viable(q, inv, fwd, b)) {
                dfs(q, inv, fwd, best);
            }
            inv.pop();
            fwd[o] = None;
        }
    }

    dfs(q, &mut inv, &mut fwd, &mut best);
    best.expect("at least the identity relabeling is scanned")
}

/// Quick profile key for bucketing candidate isomorphs.
pub fn profile_key(q: &Quandle) -> Vec<(Vec<usize>, usize, usize)> {
    let mut p = profiles(q);
    p.sort_unstable();
    p
}

/// Deduplicates quandles up to isomorphism, keeping the first representative
/// of each class in input order.
pub fn dedup_up_to_isomorphism(quandles: Vec<Quandle>) -> Vec<Quandle> {
    let mut buckets: HashMap<Vec<(Vec<usize>, usize, usize)>, Vec<usize>> = HashMap::new();
    let mut reps: Vec<Quandle> = Vec::new();
    for q in quandles {
        let key = profile_key(&q);
        let bucket = buckets.entry(key).or_default();
        if !bucket.iter().any(|&i| are_isomorphic(&reps[i], &q)) {
            bucket.push(reps.len());
            reps.push(q);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroupSpec;

    fn r3() -> Quandle {
        let spec = AbelianGroupSpec::new(vec![3]).unwrap();
        Quandle::affine(&spec, &[0, 2, 1]).unwrap()
    }

    fn ss4() -> Quandle {
        let spec = AbelianGroupSpec::new(vec![2, 2]).unwrap();
        Quandle::affine_matrix(&spec, &[vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn quandle_isomorphic_to_itself() {
        let q = r3();
        let w = isomorphism(&q, &q).unwrap();
        assert!(w.is_bijective());
        // lexicographically least self-witness is the identity
        assert_eq!(w.images(), &[0, 1, 2]);
    }

    #[test]
    fn relabeled_quandle_is_isomorphic() {
        let q = ss4();
        let p = Perm::from_images(vec![2, 0, 3, 1]).unwrap();
        let r = q.relabel(&p);
        let w = isomorphism(&q, &r).unwrap();
        assert!(w.is_bijective());
        let back = w.inverse().unwrap();
        assert!(back.is_bijective());
    }

    #[test]
    fn projection_not_isomorphic_to_connected() {
        assert!(!are_isomorphic(&r3(), &Quandle::projection(3).unwrap()));
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphism_group(&r3()).order().unwrap(), 6);
        assert_eq!(automorphism_group(&ss4()).order().unwrap(), 12);
        // projection quandle of size 3: full symmetric group
        let p3 = Quandle::projection(3).unwrap();
        assert_eq!(automorphism_group(&p3).order().unwrap(), 6);
    }

    #[test]
    fn automorphisms_are_morphisms_and_closed() {
        let q = ss4();
        let aut = automorphism_group(&q);
        let elements = aut.elements().unwrap();
        for h in elements {
            for a in 0..q.size() {
                for b in 0..q.size() {
                    assert_eq!(h.apply(q.op(a, b)), q.op(h.apply(a), h.apply(b)));
                }
            }
        }
        for h in elements {
            for k in elements {
                assert!(aut.contains(&h.compose(k)).unwrap());
            }
        }
    }

    #[test]
    fn canonical_form_invariant_under_relabeling() {
        let q = ss4();
        let c = canonical_form(&q);
        let p = Perm::from_images(vec![3, 1, 0, 2]).unwrap();
        assert_eq!(canonical_form(&q.relabel(&p)), c);
    }

    #[test]
    fn canonical_form_is_a_valid_relabeling() {
        let q = r3();
        let c = canonical_form(&q);
        let qc = Quandle::from_flat(3, c).unwrap();
        assert!(are_isomorphic(&q, &qc));
    }

    #[test]
    fn dedup_collapses_isomorphic_copies() {
        let q = ss4();
        let p = Perm::from_images(vec![1, 3, 2, 0]).unwrap();
        let reps = dedup_up_to_isomorphism(vec![q.clone(), q.relabel(&p), r3()]);
        assert_eq!(reps.len(), 2);
    }
}
