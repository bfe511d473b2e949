//! Exhaustive enumeration of small quandles by row-by-row backtracking.
//!
//! Rows are permutations fixing their own index. Placing a row triggers a
//! propagation pass: whenever rows `a` and `b` are both known, the row of
//! `a*b` is forced to be the conjugate of row `b` by row `a`; conflicts cut
//! the branch. Connected quandles have all rows conjugate, so the search
//! runs per row cycle type with row 0 pinned to the canonical permutation
//! of that type — every isomorphism class has such a representative.
//! Completed tables are filtered, deduplicated up to isomorphism, and
//! returned as lexicographically least representatives in sorted order.
//!
//! The node budget is shared across worker threads; exhausting it aborts
//! the run with an explicit error rather than returning a truncated list.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::EnumError;
use crate::iso;
use crate::perm::Perm;
use crate::quandle::Quandle;

/// Default search-node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Largest size for unconstrained connected enumeration.
pub const MAX_UNCONSTRAINED_CONNECTED: usize = 8;

/// Largest size for enumeration without a connectivity constraint.
pub const MAX_UNCONSTRAINED: usize = 6;

/// Largest size when a single-cycle profile constraint is supplied.
pub const MAX_PROFILED: usize = 12;

/// Constraints restricting an enumeration run.
#[derive(Debug, Clone, Default)]
pub struct EnumerationConstraints {
    pub connected: bool,
    /// Require every row to have exactly this many fixed points and a
    /// single cycle on the rest.
    pub cyclic_fixed_points: Option<usize>,
    /// Require every row to have exactly this cycle type (lengths including
    /// fixed points; order irrelevant).
    pub cycle_profile: Option<Vec<usize>>,
}

/// An enumeration request: size, constraints, node budget, worker count.
#[derive(Debug, Clone)]
pub struct EnumerationTask {
    pub size: usize,
    pub constraints: EnumerationConstraints,
    pub cap_nodes: u64,
    pub jobs: usize,
}

impl EnumerationTask {
    pub fn connected(size: usize) -> Self {
        EnumerationTask {
            size,
            constraints: EnumerationConstraints {
                connected: true,
                ..Default::default()
            },
            cap_nodes: DEFAULT_NODE_BUDGET,
            jobs: 1,
        }
    }

    pub fn all(size: usize) -> Self {
        EnumerationTask {
            size,
            constraints: EnumerationConstraints::default(),
            cap_nodes: DEFAULT_NODE_BUDGET,
            jobs: 1,
        }
    }

    /// Connected quandles whose rows all have `fixed` fixed points and one
    /// cycle on the rest.
    pub fn connected_cyclic(size: usize, fixed: usize) -> Self {
        EnumerationTask {
            size,
            constraints: EnumerationConstraints {
                connected: true,
                cyclic_fixed_points: Some(fixed),
                cycle_profile: None,
            },
            cap_nodes: DEFAULT_NODE_BUDGET,
            jobs: 1,
        }
    }

    pub fn with_budget(mut self, cap_nodes: u64) -> Self {
        self.cap_nodes = cap_nodes;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

/// Partial table of rows with conjugation propagation.
#[derive(Clone)]
pub(crate) struct TableSearch {
    n: usize,
    rows: Vec<Option<Perm>>,
}

impl TableSearch {
    pub(crate) fn new(n: usize) -> Self {
        TableSearch {
            n,
            rows: vec![None; n],
        }
    }

    pub(crate) fn next_unplaced(&self) -> Option<usize> {
        self.rows.iter().position(|r| r.is_none())
    }

    /// Places row `r` and closes under conjugation forcing. Returns the
    /// trail of rows placed by this call (including forced ones) or `None`
    /// on conflict, in which case the state is already rolled back.
    pub(crate) fn place(&mut self, r: usize, p: Perm) -> Option<Vec<usize>> {
        debug_assert!(self.rows[r].is_none());
        debug_assert_eq!(p.apply(r), r);
        let mut trail = vec![r];
        let mut queue = vec![r];
        self.rows[r] = Some(p);
        let mut w = 0;
        while w < queue.len() {
            let x = queue[w];
            w += 1;
            for y in 0..self.n {
                if self.rows[y].is_none() {
                    continue;
                }
                for (a, b) in [(x, y), (y, x)] {
                    let ra = self.rows[a].as_ref().unwrap();
                    let rb = self.rows[b].as_ref().unwrap();
                    let t = ra.apply(b);
                    match &self.rows[t] {
                        Some(rt) => {
                            // L_a ∘ L_b must equal L_{a*b} ∘ L_a
                            if ra.compose(rb) != rt.compose(ra) {
                                self.undo(&trail);
                                return None;
                            }
                        }
                        None => {
                            let forced = ra.compose(rb).compose(&ra.inverse());
                            self.rows[t] = Some(forced);
                            trail.push(t);
                            queue.push(t);
                        }
                    }
                }
            }
        }
        Some(trail)
    }

    pub(crate) fn undo(&mut self, trail: &[usize]) {
        for &r in trail {
            self.rows[r] = None;
        }
    }

    pub(crate) fn table(&self) -> Vec<u16> {
        let mut flat = Vec::with_capacity(self.n * self.n);
        for r in &self.rows {
            flat.extend_from_slice(r.as_ref().unwrap().images());
        }
        flat
    }

    /// Orbit count of the displacement generators on the completed table.
    pub(crate) fn is_connected_table(&self) -> bool {
        let n = self.n;
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let r = find(uf, uf[x]);
                uf[x] = r;
            }
            uf[x]
        }
        let r0 = self.rows[0].as_ref().unwrap().inverse();
        for a in 0..n {
            let g = self.rows[a].as_ref().unwrap().compose(&r0);
            for x in 0..n {
                let (rx, ry) = (find(&mut uf, x), find(&mut uf, g.apply(x)));
                if rx != ry {
                    uf[rx.max(ry)] = rx.min(ry);
                }
            }
        }
        (0..n).all(|x| find(&mut uf, x) == 0)
    }
}

/// Candidate rows for one point under the active type constraint.
enum CandidateSource {
    /// All permutations bucketed in advance (small sizes).
    Precomputed(Vec<Vec<Perm>>),
    /// Rows with `fixed` fixed points and a single cycle, generated on
    /// demand (larger sizes).
    SingleCycle { n: usize, fixed: usize },
}

enum Cands<'a> {
    Borrowed(&'a [Perm]),
    Owned(Vec<Perm>),
}

impl<'a> Cands<'a> {
    fn as_slice(&self) -> &[Perm] {
        match self {
            Cands::Borrowed(s) => s,
            Cands::Owned(v) => v,
        }
    }
}

impl CandidateSource {
    fn candidates(&self, point: usize) -> Cands<'_> {
        match self {
            CandidateSource::Precomputed(per_point) => Cands::Borrowed(&per_point[point]),
            CandidateSource::SingleCycle { n, fixed } => {
                let mut out = Vec::new();
                gen_single_cycle_rows(*n, point, *fixed, &mut out);
                Cands::Owned(out)
            }
        }
    }
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut images: Vec<u16> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, images: &mut Vec<u16>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if images.len() == n {
            out.push(Perm::from_images(images.clone()).unwrap());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                images.push(v as u16);
                rec(n, images, used, out);
                images.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut images, &mut used, &mut out);
    out
}

/// Ascending partitions of `n`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rest: usize, min: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in min..=rest {
            current.push(part);
            rec(rest - part, part, current, out);
            current.pop();
        }
    }
    rec(n, 1, &mut current, &mut out);
    out
}

/// The canonical permutation of a cycle type (ascending lengths): fixed
/// points first, then consecutive cycles.
fn canonical_perm_of_type(n: usize, ty: &[usize]) -> Perm {
    let mut images: Vec<u16> = (0..n as u16).collect();
    let mut next = ty.iter().filter(|&&l| l == 1).count();
    for &len in ty.iter().filter(|&&l| l > 1) {
        for k in 0..len {
            images[next + k] = (next + (k + 1) % len) as u16;
        }
        next += len;
    }
    Perm::from_images(images).unwrap()
}

/// All permutations of `0..n` fixing `point` with `fixed` fixed points in
/// total and one cycle on the remaining `n - fixed` points.
fn gen_single_cycle_rows(n: usize, point: usize, fixed: usize, out: &mut Vec<Perm>) {
    let cycle_len = n - fixed;
    if cycle_len < 2 {
        if cycle_len == 0 {
            out.push(Perm::identity(n));
        }
        return;
    }
    let others: Vec<usize> = (0..n).filter(|&i| i != point).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(fixed.saturating_sub(1));
    fn choose(
        others: &[usize],
        start: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        n: usize,
        point: usize,
        out: &mut Vec<Perm>,
    ) {
        if need == 0 {
            let mut is_fixed = vec![false; n];
            is_fixed[point] = true;
            for &c in chosen.iter() {
                is_fixed[c] = true;
            }
            let moving: Vec<usize> = (0..n).filter(|&i| !is_fixed[i]).collect();
            // cycles on `moving`: anchor the least element, permute the rest
            let rest: Vec<usize> = moving[1..].to_vec();
            let mut order: Vec<usize> = Vec::with_capacity(rest.len());
            let mut used = vec![false; rest.len()];
            fn arrange(
                anchor: usize,
                rest: &[usize],
                order: &mut Vec<usize>,
                used: &mut Vec<bool>,
                n: usize,
                out: &mut Vec<Perm>,
            ) {
                if order.len() == rest.len() {
                    let mut images: Vec<u16> = (0..n as u16).collect();
                    let mut prev = anchor;
                    for &x in order.iter() {
                        images[prev] = x as u16;
                        prev = x;
                    }
                    images[prev] = anchor as u16;
                    out.push(Perm::from_images(images).unwrap());
                    return;
                }
                for i in 0..rest.len() {
                    if !used[i] {
                        used[i] = true;
                        order.push(rest[i]);
                        arrange(anchor, rest, order, used, n, out);
                        order.pop();
                        used[i] = false;
                    }
                }
            }
            arrange(moving[0], &rest, &mut order, &mut used, n, out);
            return;
        }
        for i in start..others.len() {
            chosen.push(others[i]);
            choose(others, i + 1, need - 1, chosen, n, point, out);
            chosen.pop();
        }
    }
    choose(&others, 0, fixed - 1, &mut chosen, n, point, out);
}

struct RunState<'a> {
    nodes: &'a AtomicU64,
    cap: u64,
    exhausted: bool,
}

impl<'a> RunState<'a> {
    fn tick(&mut self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
            self.exhausted = true;
            return false;
        }
        true
    }
}

fn dfs(
    search: &mut TableSearch,
    source: &CandidateSource,
    connected: bool,
    run: &mut RunState<'_>,
    hits: &mut Vec<Vec<u16>>,
) {
    if run.exhausted {
        return;
    }
    let Some(r) = search.next_unplaced() else {
        if !connected || search.is_connected_table() {
            hits.push(search.table());
        }
        return;
    };
    let cands = source.candidates(r);
    for p in cands.as_slice() {
        if !run.tick() {
            return;
        }
        if let Some(trail) = search.place(r, p.clone()) {
            dfs(search, source, connected, run, hits);
            search.undo(&trail);
            if run.exhausted {
                return;
            }
        }
    }
}

/// Branches explored for one choice of row-0 cycle type.
fn run_type_branch(
    task: &EnumerationTask,
    row0_type: &[usize],
    same_type_everywhere: bool,
    nodes: &AtomicU64,
    hits: &mut Vec<Vec<u16>>,
) -> Result<(), EnumError> {
    let n = task.size;
    let row0 = canonical_perm_of_type(n, row0_type);
    let source = if same_type_everywhere && n > MAX_UNCONSTRAINED_CONNECTED {
        let nontrivial: Vec<usize> = row0_type.iter().copied().filter(|&l| l > 1).collect();
        if nontrivial.len() != 1 {
            return Err(EnumError::SizeUnsupported {
                size: n,
                max: MAX_UNCONSTRAINED_CONNECTED,
            });
        }
        CandidateSource::SingleCycle {
            n,
            fixed: n - nontrivial[0],
        }
    } else {
        let mut ty = row0_type.to_vec();
        ty.sort_unstable();
        let pool: Vec<Perm> = all_perms(n)
            .into_iter()
            .filter(|p| !same_type_everywhere || p.cycle_type() == ty)
            .collect();
        let per_point: Vec<Vec<Perm>> = (0..n)
            .map(|x| pool.iter().filter(|p| p.apply(x) == x).cloned().collect())
            .collect();
        CandidateSource::Precomputed(per_point)
    };

    let mut search = TableSearch::new(n);
    let trail = match search.place(0, row0) {
        Some(t) => t,
        None => return Ok(()),
    };

    let connected = task.constraints.connected;
    if task.jobs <= 1 {
        let mut run = RunState {
            nodes,
            cap: task.cap_nodes,
            exhausted: false,
        };
        dfs(&mut search, &source, connected, &mut run, hits);
        search.undo(&trail);
        if run.exhausted {
            return Err(EnumError::BudgetExhausted {
                budget: task.cap_nodes,
            });
        }
        return Ok(());
    }

    // parallel mode: split the first branching level across workers and
    // merge subtree results in candidate order
    let Some(r) = search.next_unplaced() else {
        if !connected || search.is_connected_table() {
            hits.push(search.table());
        }
        search.undo(&trail);
        return Ok(());
    };
    let candidates: Vec<Perm> = source.candidates(r).as_slice().to_vec();
    let results: Mutex<Vec<(usize, Vec<Vec<u16>>)>> = Mutex::new(Vec::new());
    let exhausted = AtomicU64::new(0);
    std::thread::scope(|scope| {
        for tid in 0..task.jobs {
            let search = search.clone();
            let source = &source;
            let candidates = &candidates;
            let results = &results;
            let exhausted = &exhausted;
            scope.spawn(move || {
                let mut local = search;
                for (i, p) in candidates.iter().enumerate() {
                    if i % task.jobs != tid {
                        continue;
                    }
                    let mut run = RunState {
                        nodes,
                        cap: task.cap_nodes,
                        exhausted: false,
                    };
                    if !run.tick() {
                        exhausted.store(1, Ordering::Relaxed);
                        return;
                    }
                    let mut sub_hits = Vec::new();
                    if let Some(t) = local.place(r, p.clone()) {
                        dfs(&mut local, source, connected, &mut run, &mut sub_hits);
                        local.undo(&t);
                    }
                    if run.exhausted {
                        exhausted.store(1, Ordering::Relaxed);
                        return;
                    }
                    results.lock().unwrap().push((i, sub_hits));
                }
            });
        }
    });
    search.undo(&trail);
    if exhausted.load(Ordering::Relaxed) != 0 {
        return Err(EnumError::BudgetExhausted {
            budget: task.cap_nodes,
        });
    }
    let mut collected = results.into_inner().unwrap();
    collected.sort_by_key(|(i, _)| *i);
    for (_, mut sub) in collected {
        hits.append(&mut sub);
    }
    Ok(())
}

/// Runs the enumeration task to completion and returns one quandle per
/// isomorphism class: the lexicographically least table, in sorted order.
pub fn enumerate(task: &EnumerationTask) -> Result<Vec<Quandle>, EnumError> {
    let n = task.size;
    if n == 0 {
        return Err(EnumError::BadTask("size must be positive".into()));
    }
    let profile: Option<Vec<usize>> = match (&task.constraints.cycle_profile, task.constraints.cyclic_fixed_points) {
        (Some(p), f) => {
            let mut p = p.clone();
            p.sort_unstable();
            if p.iter().sum::<usize>() != n {
                return Err(EnumError::BadTask(
                    "cycle profile must partition the carrier".into(),
                ));
            }
            if let Some(f) = f {
                let ones = p.iter().filter(|&&l| l == 1).count();
                let rest: Vec<usize> = p.iter().copied().filter(|&l| l > 1).collect();
                if ones != f || rest.len() > 1 {
                    return Err(EnumError::BadTask(
                        "cycle profile conflicts with the fixed-point constraint".into(),
                    ));
                }
            }
            Some(p)
        }
        (None, Some(f)) => {
            // a row needs at least a two-point cycle besides its fixed points
            if n < f + 2 {
                return Ok(Vec::new());
            }
            let mut p = vec![1; f];
            p.push(n - f);
            Some(p)
        }
        (None, None) => None,
    };

    let max = match (&profile, task.constraints.connected) {
        (Some(_), _) => MAX_PROFILED,
        (None, true) => MAX_UNCONSTRAINED_CONNECTED,
        (None, false) => MAX_UNCONSTRAINED,
    };
    if n > max {
        return Err(EnumError::SizeUnsupported { size: n, max });
    }

    let nodes = AtomicU64::new(0);
    let mut hits: Vec<Vec<u16>> = Vec::new();
    match &profile {
        Some(p) => {
            if !p.contains(&1) {
                // no idempotent row can have this type
                return Ok(Vec::new());
            }
            run_type_branch(task, p, true, &nodes, &mut hits)?;
        }
        None if task.constraints.connected => {
            for ty in partitions(n) {
                if !ty.contains(&1) {
                    continue;
                }
                if ty.iter().all(|&l| l == 1) && n > 1 {
                    // identity rows give the projection quandle, never connected
                    continue;
                }
                run_type_branch(task, &ty, true, &nodes, &mut hits)?;
            }
        }
        None => {
            for ty in partitions(n) {
                if !ty.contains(&1) {
                    continue;
                }
                run_type_branch(task, &ty, false, &nodes, &mut hits)?;
            }
        }
    }

    let mut quandles = Vec::with_capacity(hits.len());
    for table in hits {
        quandles.push(Quandle::from_flat(n, table)?);
    }
    let reps = iso::dedup_up_to_isomorphism(quandles);
    let mut canon: Vec<Quandle> = reps
        .into_iter()
        .map(|q| Quandle::from_flat(n, iso::canonical_form(&q)).expect("canonical form is valid"))
        .collect();
    canon.sort_by(|a, b| a.left_table().cmp(b.left_table()));
    canon.dedup();
    Ok(canon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn size_one_and_two() {
        let one = enumerate(&EnumerationTask::connected(1)).unwrap();
        assert_eq!(one.len(), 1);
        // no connected quandle of size 2
        let two = enumerate(&EnumerationTask::connected(2)).unwrap();
        assert!(two.is_empty());
    }

    #[test]
    fn size_three_connected_is_r3() {
        let found = enumerate(&EnumerationTask::connected(3)).unwrap();
        assert_eq!(found.len(), 1);
        assert!(iso::are_isomorphic(&found[0], &fixtures::r3()));
    }

    #[test]
    fn size_four_connected_is_ss4() {
        let found = enumerate(&EnumerationTask::connected(4)).unwrap();
        assert_eq!(found.len(), 1);
        assert!(iso::are_isomorphic(&found[0], &fixtures::ss4()));
    }

    #[test]
    fn size_five_connected_count() {
        let found = enumerate(&EnumerationTask::connected(5)).unwrap();
        assert_eq!(found.len(), 3);
        for q in &found {
            assert!(q.is_connected());
        }
    }

    #[test]
    fn size_six_connected_census() {
        let found = enumerate(&EnumerationTask::connected(6)).unwrap();
        assert_eq!(found.len(), 2);
        let cyclic: Vec<_> = found
            .iter()
            .filter(|q| {
                let p = q.cyclic_profile();
                p.is_cyclic && p.fixed_points == Some(2)
            })
            .collect();
        assert_eq!(cyclic.len(), 1);
    }

    #[test]
    fn all_size_three() {
        // all three-element quandles up to isomorphism
        let found = enumerate(&EnumerationTask::all(3)).unwrap();
        assert_eq!(found.len(), 3);
    }

    #[test]
    fn deterministic_and_jobs_independent() {
        let serial = enumerate(&EnumerationTask::connected(5)).unwrap();
        let parallel = enumerate(&EnumerationTask::connected(5).with_jobs(4)).unwrap();
        let t1: Vec<_> = serial.iter().map(|q| q.left_table().to_vec()).collect();
        let t2: Vec<_> = parallel.iter().map(|q| q.left_table().to_vec()).collect();
        assert_eq!(t1, t2);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let task = EnumerationTask::connected(6).with_budget(5);
        assert!(matches!(
            enumerate(&task),
            Err(EnumError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn profile_without_fixed_point_is_empty() {
        let mut task = EnumerationTask::connected(6);
        task.constraints.cycle_profile = Some(vec![2, 4]);
        assert!(enumerate(&task).unwrap().is_empty());
    }

    #[test]
    fn cyclic_profile_task_matches_filtered_enumeration() {
        let all = enumerate(&EnumerationTask::connected(6)).unwrap();
        let cyclic_direct = enumerate(&EnumerationTask::connected_cyclic(6, 2)).unwrap();
        let filtered: Vec<_> = all
            .iter()
            .filter(|q| {
                let p = q.cyclic_profile();
                p.is_cyclic && p.fixed_points == Some(2)
            })
            .collect();
        assert_eq!(cyclic_direct.len(), filtered.len());
        assert_eq!(cyclic_direct.len(), 1);
        assert!(iso::are_isomorphic(&cyclic_direct[0], filtered[0]));
    }
}
