//! Verification suites: they reproduce the classification facts this crate
//! is organized around (census of small connected quandles, the strictly
//! simple family, structure of cyclic quandles and of extensions of
//! strictly simple quandles by projection blocks) and emit machine-readable
//! pass/fail records with witnesses.

use std::sync::atomic::AtomicU64;

use crate::congruence::{
    self, all_congruences, cdsg_check, lagrange_sylow_check, quandle_level_predicates, quotient,
    simplicity, sub_gf_correspondence, unique_proper_congruence,
};
use crate::enumerate::{enumerate, EnumerationTask, TableSearch, DEFAULT_NODE_BUDGET};
use crate::error::{CongruenceError, EnumError, QuandleError};
use crate::fixtures;
use crate::group::AbelianGroupSpec;
use crate::iso;
use crate::perm::Perm;
use crate::quandle::Quandle;
use crate::structure::PrincipalStatus;

/// Outcome of a single suite check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "SKIP",
        }
    }
}

/// One verified claim: a stable id, a human-readable locus describing what
/// is being checked, the status, and a witness summary.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub id: String,
    pub locus: String,
    pub status: CheckStatus,
    pub witness: String,
}

/// A named collection of checks; the suite passes iff no check fails.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, id: String, locus: &str, pass: bool, witness: String) {
        self.checks.push(CheckRecord {
            id,
            locus: locus.to_string(),
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            witness,
        });
    }

    fn skip(&mut self, id: String, locus: &str, witness: String) {
        self.checks.push(CheckRecord {
            id,
            locus: locus.to_string(),
            status: CheckStatus::Skip,
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn skipped(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Skip)
    }

    /// One line per check plus a trailing summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} [{}] {}\n",
                c.status.as_str(),
                c.id,
                c.locus,
                c.witness
            ));
        }
        let summary = if !self.passed() {
            "FAIL"
        } else if self.skipped() {
            "SKIP"
        } else {
            "PASS"
        };
        out.push_str(&format!("SUITE {} {}\n", self.name, summary));
        out
    }
}

/// Budgets shared by the verification suites.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub node_budget: u64,
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            jobs: 1,
        }
    }
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficients ascending, length `deg+1`, leading coefficient 1.
fn monic_polys(p: usize, deg: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let count = p.pow(deg as u32);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(deg + 1);
        let mut rest = code;
        for _ in 0..deg {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        out.push(coeffs);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `b` over `Z_p`.
fn poly_rem(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut r: Vec<usize> = a.to_vec();
    while r.len() >= b.len() && r.iter().any(|&c| c != 0) {
        let lead = *r.last().unwrap();
        if lead == 0 {
            r.pop();
            continue;
        }
        let shift = r.len() - b.len();
        for i in 0..b.len() {
            let sub = (b[i] * lead) % p;
            let idx = shift + i;
            r[idx] = (r[idx] + p - sub) % p;
        }
        while r.last() == Some(&0) && r.len() > 1 {
            r.pop();
        }
        if r.len() >= b.len() && r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn is_irreducible(poly: &[usize], p: usize) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for divisor in monic_polys(p, d) {
            let r = poly_rem(poly, &divisor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Companion matrix of a monic polynomial (coefficients ascending).
fn companion_matrix(poly: &[usize], p: usize) -> Vec<Vec<i64>> {
    let n = poly.len() - 1;
    let mut m = vec![vec![0i64; n]; n];
    for i in 1..n {
        m[i][i - 1] = 1;
    }
    for i in 0..n {
        m[i][n - 1] = ((p - poly[i] % p) % p) as i64;
    }
    m
}

/// All strictly simple quandles of size at most `max_size` (sizes above 2),
/// built as affine quandles over `Z_p^n` twisted by companion matrices of
/// irreducible polynomials, deduplicated up to isomorphism. Strict
/// simplicity and the automorphism-group order `p^n(p^n - 1)` are verified
/// for every entry.
pub fn strictly_simple_catalog(max_size: usize) -> Result<Vec<Quandle>, CongruenceError> {
    let mut out: Vec<Quandle> = Vec::new();
    for p in 2..=max_size {
        if !is_prime(p) {
            continue;
        }
        let mut size = p;
        let mut n = 1;
        while size <= max_size {
            if size > 2 {
                let mut candidates = Vec::new();
                for poly in monic_polys(p, n) {
                    // a zero constant term makes the companion singular
                    if poly[0] == 0 || !is_irreducible(&poly, p) {
                        continue;
                    }
                    let matrix = companion_matrix(&poly, p);
                    let identity = (0..n).all(|i| {
                        (0..n).all(|j| matrix[i][j] == if i == j { 1 } else { 0 })
                    });
                    if identity {
                        continue;
                    }
                    let spec = AbelianGroupSpec::new(vec![p; n]).map_err(CongruenceError::Group)?;
                    let q = Quandle::affine_matrix(&spec, &matrix)?;
                    candidates.push(q);
                }
                for q in iso::dedup_up_to_isomorphism(candidates) {
                    let report = simplicity(&q)?;
                    if !report.strictly_simple {
                        return Err(CongruenceError::Inconsistent(format!(
                            "irreducible twist on {} points produced a non-strictly-simple quandle",
                            q.size()
                        )));
                    }
                    let aut_order = q.automorphism_group().order().map_err(CongruenceError::Group)?;
                    if aut_order != size * (size - 1) {
                        return Err(CongruenceError::Inconsistent(format!(
                            "automorphism group of a strictly simple quandle of size {} has order {}",
                            size, aut_order
                        )));
                    }
                    out.push(q);
                }
            }
            match size.checked_mul(p) {
                Some(next) => {
                    size = next;
                    n += 1;
                }
                None => break,
            }
        }
    }
    out.sort_by(|a, b| (a.size(), a.left_table()).cmp(&(b.size(), b.left_table())));
    Ok(out)
}

/// Two independent routes to simplicity of an affine quandle over `Z_p^n`:
/// every principal congruence collapses to the full relation, versus
/// irreducibility of the twist (every nonzero vector's twist-orbit
/// generates the whole group) together with connectedness. Disagreement is
/// reported as an error.
pub fn affine_simplicity_check(
    p: usize,
    n: usize,
    matrix: &[Vec<i64>],
) -> Result<bool, CongruenceError> {
    if !is_prime(p) || p.pow(n as u32) > 64 {
        return Err(CongruenceError::Inconsistent(
            "expected a prime p with p^n at most 64".into(),
        ));
    }
    let spec = AbelianGroupSpec::new(vec![p; n]).map_err(CongruenceError::Group)?;
    let q = Quandle::affine_matrix(&spec, matrix)?;
    let size = q.size();
    // route one: no principal congruence is proper
    let mut lattice_simple = size >= 2;
    'outer: for a in 0..size {
        for b in (a + 1)..size {
            if !congruence::principal_congruence(&q, a, b).is_full() {
                lattice_simple = false;
                break 'outer;
            }
        }
    }
    // route two: irreducible twist on a connected (or two-element) quandle
    let images = spec
        .automorphism_from_matrix(matrix)
        .map_err(CongruenceError::Group)?;
    let mut irreducible = true;
    let group = spec.to_group();
    for v in 1..size {
        let mut orbit = vec![v];
        let mut x = images[v] as usize;
        while x != v {
            orbit.push(x);
            x = images[x] as usize;
        }
        if group.subgroup_closure(&orbit).len() != size {
            irreducible = false;
            break;
        }
    }
    let connected = (0..size).all(|a| {
        // 1 - f is injective iff only 0 maps to 0
        a == 0 || spec.sub(a, images[a] as usize) != 0
    });
    let structural = irreducible && (connected || size <= 2);
    if structural != lattice_simple {
        return Err(CongruenceError::Inconsistent(format!(
            "simplicity routes disagree: lattice={lattice_simple}, structural={structural}"
        )));
    }
    Ok(lattice_simple)
}

/// Named quandles inspected by the suites.
fn named_catalog() -> Vec<(String, Quandle)> {
    vec![
        ("R3".into(), fixtures::r3()),
        ("A9".into(), fixtures::a9()),
        ("A15".into(), fixtures::a15()),
        ("SS4".into(), fixtures::ss4()),
        ("R3xR3".into(), fixtures::r3_squared()),
        ("SS4xSS4".into(), fixtures::ss4_squared()),
    ]
}

fn enumerated_connected(max_size: usize) -> Result<Vec<(String, Quandle)>, EnumError> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        let found = enumerate(&EnumerationTask::connected(size))?;
        for (i, q) in found.into_iter().enumerate() {
            out.push((format!("C({size},{i})"), q));
        }
    }
    Ok(out)
}

fn err_witness(e: impl std::fmt::Display) -> String {
    format!("error: {e}")
}

/// Decomposition, automorphism structure, congruence correspondence, and
/// the Lagrange/Sylow and lattice-correspondence properties over a fixed
/// catalog of principal quandles.
pub fn suite_principal(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("principal");
    let mut subjects = named_catalog();
    match enumerated_connected(6) {
        Ok(mut e) => subjects.append(&mut e),
        Err(e) => {
            report.skip(
                "principal.enumerate".into(),
                "census of connected quandles up to size 6",
                err_witness(e),
            );
            return report;
        }
    }
    let _ = cfg;
    for (name, q) in &subjects {
        // stabilizer-class decomposition applies to every quandle
        match q.semiregular_decomposition() {
            Ok(d) => {
                let mut pass = d.all_semiregular;
                let mut extra = String::new();
                if let Some(c) = &d.connected_case {
                    pass = pass && c.normalizer_orbit_match && c.pairwise_isomorphic;
                    extra = format!(
                        " orbit_match={} pairwise_iso={}",
                        c.normalizer_orbit_match, c.pairwise_isomorphic
                    );
                }
                report.check(
                    format!("principal.decomposition[{name}]"),
                    "stabilizer classes are semiregular subquandles; connected case principal and pairwise isomorphic",
                    pass,
                    format!("classes={}{extra}", d.classes.len()),
                );
            }
            Err(e) => report.check(
                format!("principal.decomposition[{name}]"),
                "stabilizer-class decomposition",
                false,
                err_witness(e),
            ),
        }

        let principal = matches!(q.principal_analysis(), Ok(PrincipalStatus::Principal(_)));
        if !principal {
            continue;
        }
        match q.aut_structure_check() {
            Ok(a) => report.check(
                format!("principal.aut-split[{name}]"),
                "automorphism group splits over the displacement group with the twist centralizer on top",
                a.holds,
                format!(
                    "aut={} = {}*{}",
                    a.aut_order, a.g_order, a.centralizer_order
                ),
            ),
            Err(e) => report.check(
                format!("principal.aut-split[{name}]"),
                "automorphism group split",
                false,
                err_witness(e),
            ),
        }
        match sub_gf_correspondence(q) {
            Ok(r) => report.check(
                format!("principal.con-subgroups[{name}]"),
                "congruences match the invariant-subgroup coset partitions of the representation",
                r.matches,
                format!("con={} subgroups={}", r.con_count, r.sub_count),
            ),
            Err(e) => report.check(
                format!("principal.con-subgroups[{name}]"),
                "congruence/subgroup correspondence",
                false,
                err_witness(e),
            ),
        }
        let latin = q.predicates().map(|p| p.latin).unwrap_or(false);
        if latin {
            match lagrange_sylow_check(q) {
                Ok(r) => report.check(
                    format!("principal.lagrange-sylow[{name}]"),
                    "principal latin quandles have the Lagrange and Sylow properties",
                    r.lagrange && r.sylow,
                    format!("lagrange={} sylow={}", r.lagrange, r.sylow),
                ),
                Err(e) => report.check(
                    format!("principal.lagrange-sylow[{name}]"),
                    "Lagrange and Sylow properties",
                    false,
                    err_witness(e),
                ),
            }
            match cdsg_check(q) {
                Ok(r) => report.check(
                    format!("principal.cdsg[{name}]"),
                    "the congruence and subgroup lattices are mutually inverse",
                    r.holds,
                    format!("failures={}", r.failures.len()),
                ),
                Err(e) => report.check(
                    format!("principal.cdsg[{name}]"),
                    "lattice correspondence",
                    false,
                    err_witness(e),
                ),
            }
        }
    }
    report
}

fn product_power(q: &Quandle, k: usize) -> Quandle {
    let factors: Vec<Quandle> = (0..k).map(|_| q.clone()).collect();
    Quandle::product(&factors).unwrap()
}

/// The equivalences characterizing finite simple latin quandles, the
/// strictly simple classification round trip on the census, and the
/// structure of powers of strictly simple quandles.
pub fn suite_simple(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("simple");
    let _ = cfg;
    let enumerated = match (3..=8)
        .map(|s| enumerate(&EnumerationTask::connected(s)))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(per_size) => per_size.into_iter().flatten().collect::<Vec<_>>(),
        Err(e) => {
            report.skip(
                "simple.enumerate".into(),
                "census of connected quandles of sizes 3..8",
                err_witness(e),
            );
            return report;
        }
    };
    let catalog = match strictly_simple_catalog(8) {
        Ok(c) => c,
        Err(e) => {
            report.skip(
                "simple.catalog".into(),
                "strictly simple catalog",
                err_witness(e),
            );
            return report;
        }
    };

    // four-way equivalence on every simple member of the census
    for q in &enumerated {
        let sim = match simplicity(q) {
            Ok(s) => s,
            Err(e) => {
                report.check(
                    format!("simple.equivalence[{}]", q.size()),
                    "simplicity computation",
                    false,
                    err_witness(e),
                );
                continue;
            }
        };
        if !sim.simple {
            continue;
        }
        let abelian = quandle_level_predicates(q)
            .ok()
            .and_then(|p| p.abelian_connected)
            .unwrap_or(false);
        let doubly = q.homogeneity().map(|h| h.doubly_homogeneous).unwrap_or(false);
        let latin = q.predicates().map(|p| p.latin).unwrap_or(false);
        let flags = [abelian, sim.strictly_simple, doubly, latin];
        let pass = flags.iter().all(|&f| f == flags[0]);
        report.check(
            format!("simple.equivalence[size {}]", q.size()),
            "for finite simple quandles: abelian = strictly simple = doubly homogeneous = latin",
            pass,
            format!(
                "abelian={} strictly_simple={} doubly_homogeneous={} latin={}",
                abelian, sim.strictly_simple, doubly, latin
            ),
        );
    }

    // classification round trip over the census
    let mut forward = true;
    let mut witness = String::new();
    for q in &enumerated {
        let strictly = match simplicity(q) {
            Ok(s) => s.strictly_simple,
            Err(e) => {
                forward = false;
                witness = err_witness(e);
                break;
            }
        };
        let in_catalog = catalog.iter().any(|c| iso::are_isomorphic(c, q));
        if strictly != in_catalog {
            forward = false;
            witness = format!(
                "size {} strictly_simple={} catalog_match={}",
                q.size(),
                strictly,
                in_catalog
            );
            break;
        }
    }
    report.check(
        "simple.census-roundtrip".into(),
        "a census quandle is strictly simple exactly when it matches a catalog entry",
        forward,
        if witness.is_empty() {
            format!("census={} catalog={}", enumerated.len(), catalog.len())
        } else {
            witness
        },
    );
    let backward = catalog
        .iter()
        .all(|c| enumerated.iter().any(|q| iso::are_isomorphic(c, q)));
    report.check(
        "simple.catalog-covered".into(),
        "every catalog entry up to size 8 appears in the census",
        backward,
        format!("catalog_entries={}", catalog.len()),
    );

    // powers of the two smallest strictly simple quandles
    for (name, m) in [("R3", fixtures::r3()), ("SS4", fixtures::ss4())] {
        let square = product_power(&m, 2);
        let dh_m = m.homogeneity().map(|h| h.doubly_homogeneous).unwrap_or(false);
        let dh_sq = square
            .homogeneity()
            .map(|h| h.doubly_homogeneous)
            .unwrap_or(false);
        report.check(
            format!("simple.power-homogeneous[{name}]"),
            "strictly simple quandles and their squares are doubly homogeneous",
            dh_m && dh_sq,
            format!("base={} square={}", dh_m, dh_sq),
        );
        match square.all_subquandles() {
            Ok(subs) => {
                let mut ok = true;
                let mut sizes = std::collections::BTreeSet::new();
                for s in subs {
                    sizes.insert(s.len());
                    let expected = match s.len() {
                        1 => None,
                        l if l == m.size() => Some(m.clone()),
                        l if l == m.size() * m.size() => Some(square.clone()),
                        _ => {
                            ok = false;
                            None
                        }
                    };
                    if let Some(model) = expected {
                        let sub = square.sub_quandle(s).unwrap();
                        if !iso::are_isomorphic(&sub, &model) {
                            ok = false;
                        }
                    }
                }
                report.check(
                    format!("simple.power-subquandles[{name}]"),
                    "subquandles of the square are powers of the base",
                    ok,
                    format!("sizes={sizes:?}"),
                );
            }
            Err(e) => report.check(
                format!("simple.power-subquandles[{name}]"),
                "subquandles of the square",
                false,
                err_witness(e),
            ),
        }
    }

    // conjugation quandle over the automorphism group of SS4: components
    // with a nontrivial linear part are the affine quandles of that part
    report_conj_components(&mut report);

    report
}

fn report_conj_components(report: &mut SuiteReport) {
    let ss4 = fixtures::ss4();
    let spec = AbelianGroupSpec::new(vec![2, 2]).unwrap();
    let result = (|| -> Result<(usize, bool), QuandleError> {
        let aut = ss4.automorphism_group();
        let table = aut.as_table()?;
        let all: Vec<usize> = (0..table.group.order()).collect();
        let conj = Quandle::conj(&table.group, &all)?;
        let components = conj.connectivity().components;
        let mut checked = 0;
        let mut ok = true;
        for comp in &components {
            // linear part of the automorphism at the component representative
            let h = &table.elements[comp[0]];
            let shift = h.apply(0);
            let linear: Vec<u16> = (0..4).map(|x| spec.sub(h.apply(x), shift) as u16).collect();
            let is_identity = linear.iter().enumerate().all(|(i, &v)| i == v as usize);
            if is_identity {
                continue;
            }
            let model = Quandle::affine(&spec, &linear)?;
            let sub = conj.sub_quandle(comp)?;
            checked += 1;
            if !iso::are_isomorphic(&sub, &model) {
                ok = false;
            }
        }
        Ok((checked, ok))
    })();
    match result {
        Ok((checked, ok)) => report.check(
            "simple.conj-components".into(),
            "components of the conjugation quandle over Aut(SS4) with nontrivial linear part are affine over that part",
            ok && checked > 0,
            format!("components_checked={checked}"),
        ),
        Err(e) => report.check(
            "simple.conj-components".into(),
            "conjugation quandle components",
            false,
            err_witness(e),
        ),
    }
}

/// Census facts about cyclic quandles (rows with a common number of fixed
/// points and a single cycle): the only one with at least two fixed points
/// among small connected quandles has size 6, and the constrained size-12
/// search with four fixed points is empty.
pub fn suite_cyclic(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("cyclic");

    // (a) scan of the census for rows with several fixed points
    match (1..=8)
        .map(|s| enumerate(&EnumerationTask::connected(s)))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(per_size) => {
            let mut hits = Vec::new();
            for q in per_size.into_iter().flatten() {
                let p = q.cyclic_profile();
                if p.is_cyclic && p.fixed_points.unwrap_or(0) >= 2 {
                    hits.push((q.size(), p.fixed_points.unwrap()));
                }
            }
            let pass = hits == vec![(6, 2)];
            report.check(
                "cyclic.census".into(),
                "the only connected quandle of size at most 8 whose rows have several fixed points and one cycle has size 6 with two fixed points",
                pass,
                format!("hits={hits:?}"),
            );
        }
        Err(e) => report.skip(
            "cyclic.census".into(),
            "census scan",
            err_witness(e),
        ),
    }

    // (b) structure of the size-6 cyclic quandle
    let c6 = fixtures::c6();
    match c6.predicates() {
        Ok(p) => report.check(
            "cyclic.faithful".into(),
            "connected cyclic quandles are faithful",
            p.faithful,
            format!("faithful={}", p.faithful),
        ),
        Err(e) => report.check(
            "cyclic.faithful".into(),
            "faithfulness",
            false,
            err_witness(e),
        ),
    }
    let p_rel = c6.p_relation();
    let maximal = (|| -> Result<(bool, String), CongruenceError> {
        let lattice = all_congruences(&c6)?;
        let partition = p_rel
            .partition()
            .ok_or_else(|| CongruenceError::Inconsistent("pair relation not transitive".into()))?;
        let as_cong = congruence::Congruence::new(&c6, partition)?;
        let proper = lattice.proper();
        let pass = proper.len() == 1 && *proper[0] == as_cong;
        Ok((pass, format!("lattice_size={}", lattice.len())))
    })();
    match maximal {
        Ok((pass, w)) => report.check(
            "cyclic.pair-congruence".into(),
            "the projection-pair relation is the unique proper congruence",
            pass,
            w,
        ),
        Err(e) => report.check(
            "cyclic.pair-congruence".into(),
            "pair relation congruence",
            false,
            err_witness(e),
        ),
    }
    let quotient_check = (|| -> Result<bool, CongruenceError> {
        let alpha = unique_proper_congruence(&c6)?
            .ok_or_else(|| CongruenceError::Inconsistent("missing proper congruence".into()))?;
        let qd = quotient(&c6, &alpha)?;
        Ok(qd.quotient.size() == 3
            && qd
                .quotient
                .lmlt()
                .transitivity_profile()
                .map(|t| t.doubly_transitive)
                .unwrap_or(false))
    })();
    match quotient_check {
        Ok(pass) => report.check(
            "cyclic.quotient".into(),
            "the quotient by the pair congruence has size 3 with doubly transitive left multiplication group",
            pass,
            String::new(),
        ),
        Err(e) => report.check(
            "cyclic.quotient".into(),
            "quotient structure",
            false,
            err_witness(e),
        ),
    }
    match c6.p_subgroups() {
        Ok(ps) => {
            let pass = ps.la_p.iter().all(|s| s.order() == 2);
            report.check(
                "cyclic.row-pair-subgroup".into(),
                "each row generates a subgroup meeting the pair-compatible automorphisms in exactly the fixed-point count",
                pass,
                format!(
                    "orders={:?}",
                    ps.la_p.iter().map(|s| s.order()).collect::<Vec<_>>()
                ),
            );
        }
        Err(e) => report.check(
            "cyclic.row-pair-subgroup".into(),
            "row pair subgroups",
            false,
            err_witness(e),
        ),
    }

    // (c) the exhaustive search: no connected cyclic quandle of size 12
    // with four fixed points
    let task = EnumerationTask::connected_cyclic(12, 4)
        .with_budget(cfg.node_budget)
        .with_jobs(cfg.jobs);
    match enumerate(&task) {
        Ok(found) => report.check(
            "cyclic.size12-search".into(),
            "exhaustive search finds no connected cyclic quandle of size 12 with four fixed points",
            found.is_empty(),
            format!("found={}", found.len()),
        ),
        Err(EnumError::BudgetExhausted { budget }) => report.skip(
            "cyclic.size12-search".into(),
            "exhaustive size-12 search",
            format!("node budget {budget} exhausted"),
        ),
        Err(e) => report.check(
            "cyclic.size12-search".into(),
            "exhaustive size-12 search",
            false,
            err_witness(e),
        ),
    }

    report
}

/// Structure of connected extensions of strictly simple quandles by
/// projection blocks of prime size, on the size-6 and size-12 examples.
pub fn suite_extension(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("extension");
    check_extension_structure(&mut report, "C6", &fixtures::c6(), 2, 3, false);
    match search_extension_12(cfg) {
        Ok(Some(q12)) => {
            check_extension_structure(&mut report, "X12", &q12, 3, 4, true);
        }
        Ok(None) => report.check(
            "extension.search12".into(),
            "block-constrained search finds the size-12 extension",
            false,
            "no example found".into(),
        ),
        Err(EnumError::BudgetExhausted { budget }) => report.skip(
            "extension.search12".into(),
            "block-constrained size-12 search",
            format!("node budget {budget} exhausted"),
        ),
        Err(e) => report.check(
            "extension.search12".into(),
            "block-constrained size-12 search",
            false,
            err_witness(e),
        ),
    }
    report
}

fn check_extension_structure(
    report: &mut SuiteReport,
    name: &str,
    q: &Quandle,
    block_size: usize,
    quotient_size: usize,
    expect_trivial_stabilizer_relation: bool,
) {
    let result = (|| -> Result<Vec<(String, bool, String)>, CongruenceError> {
        let mut checks = Vec::new();
        let alpha = unique_proper_congruence(q)?
            .ok_or_else(|| CongruenceError::Inconsistent("no unique proper congruence".into()))?;
        let blocks = alpha.blocks();
        checks.push((
            "unique proper congruence with projection blocks".into(),
            blocks.iter().all(|b| {
                b.len() == block_size
                    && q.sub_quandle(b)
                        .map(|s| s.rows().iter().all(|r| r.is_identity()))
                        .unwrap_or(false)
            }),
            format!("blocks={}x{}", blocks.len(), block_size),
        ));
        let qd = quotient(q, &alpha)?;
        let quotient_simple = simplicity(&qd.quotient)?;
        checks.push((
            "strictly simple quotient".into(),
            qd.quotient.size() == quotient_size && quotient_simple.strictly_simple,
            format!("quotient_size={}", qd.quotient.size()),
        ));
        let g = congruence::galois(q, &alpha)?;
        let dis_alpha_group = g.dis_alpha.to_group().as_table().map_err(CongruenceError::Group)?;
        let profile = dis_alpha_group.group.special_profile().map_err(CongruenceError::Group)?;
        checks.push((
            "relative displacement group elementary abelian of square order".into(),
            g.dis_alpha.order() == block_size * block_size && profile.is_elementary_abelian,
            format!("order={}", g.dis_alpha.order()),
        ));
        let dis = q.dis();
        let center = dis.center().map_err(CongruenceError::Group)?;
        checks.push((
            "trivial displacement center".into(),
            center.is_trivial(),
            format!("center={}", center.order()),
        ));
        let sigma = q.sigma().map_err(CongruenceError::Quandle)?;
        let sigma_matches = if expect_trivial_stabilizer_relation {
            sigma.is_diagonal()
        } else {
            sigma
                .partition()
                .map(|p| &p == alpha.partition())
                .unwrap_or(false)
        };
        checks.push((
            "stabilizer relation matches the extension case".into(),
            sigma_matches,
            format!("diagonal={}", sigma.is_diagonal()),
        ));
        checks.push((
            "block size coprime to quotient size".into(),
            gcd(block_size, quotient_size) == 1,
            format!("gcd({block_size},{quotient_size})"),
        ));
        // displacement group splits over the relative displacement subgroup
        let table = dis.as_table().map_err(CongruenceError::Group)?;
        let a_members: Vec<usize> = g
            .dis_alpha
            .members()
            .iter()
            .map(|m| table.elements.binary_search(m).unwrap())
            .collect();
        let complement = table
            .group
            .complement_of(&a_members)
            .map_err(CongruenceError::Group)?;
        match complement {
            Some(k) => {
                let k_group = table
                    .group
                    .subgroup_as_group(&k)
                    .map_err(CongruenceError::Group)?;
                let k_profile = k_group.special_profile().map_err(CongruenceError::Group)?;
                let expected = if expect_trivial_stabilizer_relation {
                    // extraspecial complement of order 8
                    k.len() == 8 && k_profile.is_extraspecial && k_profile.q == Some(2)
                } else {
                    // cyclic complement of order 3
                    k.len() == 3
                };
                checks.push((
                    "displacement group splits with the expected complement".into(),
                    expected,
                    format!("dis={} complement={}", table.group.order(), k.len()),
                ));
            }
            None => checks.push((
                "displacement group splits with the expected complement".into(),
                false,
                "no complement".into(),
            )),
        }
        Ok(checks)
    })();
    match result {
        Ok(checks) => {
            for (i, (locus, pass, witness)) in checks.into_iter().enumerate() {
                report.check(format!("extension.{name}.{i}"), &locus, pass, witness);
            }
        }
        Err(e) => report.check(
            format!("extension.{name}"),
            "extension structure",
            false,
            err_witness(e),
        ),
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Searches connected size-12 quandles whose rows permute four projection
/// blocks of size three according to the size-4 connected quandle, and
/// returns the first (in deterministic order) whose congruence lattice has
/// a unique proper congruence with those blocks and a strictly simple
/// quotient.
pub fn search_extension_12(cfg: &VerifyConfig) -> Result<Option<Quandle>, EnumError> {
    let quotient_model = fixtures::ss4();
    let n = 12;
    let block_of = |x: usize| x / 3;
    // candidate rows for a point: identity on its own block, block-to-block
    // bijections following the quotient row elsewhere
    let candidates_for = |a: usize| -> Vec<Perm> {
        let ia = block_of(a);
        let mut out = Vec::new();
        let other_blocks: Vec<usize> = (0..4).filter(|&j| j != ia).collect();
        let mut maps = vec![0usize; 3];
        fn rec(
            quotient_model: &Quandle,
            ia: usize,
            other_blocks: &[usize],
            maps: &mut Vec<usize>,
            depth: usize,
            out: &mut Vec<Perm>,
        ) {
            if depth == other_blocks.len() {
                let mut images: Vec<u16> = (0..12).map(|x| x as u16).collect();
                for (d, &j) in other_blocks.iter().enumerate() {
                    let target = quotient_model.op(ia, j);
                    // maps[d] encodes a bijection of three points
                    let bijections = [
                        [0, 1, 2],
                        [0, 2, 1],
                        [1, 0, 2],
                        [1, 2, 0],
                        [2, 0, 1],
                        [2, 1, 0],
                    ];
                    let b = bijections[maps[d]];
                    for k in 0..3 {
                        images[3 * j + k] = (3 * target + b[k]) as u16;
                    }
                }
                out.push(Perm::from_images(images).unwrap());
                return;
            }
            for m in 0..6 {
                maps[depth] = m;
                rec(quotient_model, ia, other_blocks, maps, depth + 1, out);
            }
        }
        rec(&quotient_model, ia, &other_blocks, &mut maps, 0, &mut out);
        out
    };

    // canonical choices for row 0: the two transport maps are normalized to
    // order-preserving bijections, the third (closing the cycle of blocks
    // under row 0) runs over conjugacy-class representatives
    let canonical_row0: Vec<Perm> = {
        let mut out = Vec::new();
        for closing in [[0usize, 1, 2], [1, 0, 2], [1, 2, 0]] {
            // row 0 maps block j to quotient_model.op(0, j)
            let mut images: Vec<u16> = (0..12).map(|x| x as u16).collect();
            // blocks 1,2,3 form a cycle under the quotient row of 0
            let b1 = quotient_model.op(0, 1);
            let b2 = quotient_model.op(0, b1);
            debug_assert_eq!(quotient_model.op(0, b2), 1);
            for k in 0..3 {
                images[3 + k] = (3 * b1 + k) as u16;
                images[3 * b1 + k] = (3 * b2 + k) as u16;
                images[3 * b2 + k] = (3 + closing[k]) as u16;
            }
            out.push(Perm::from_images(images).unwrap());
        }
        out
    };

    let nodes = AtomicU64::new(0);
    let cap = cfg.node_budget;
    let mut hits: Vec<Vec<u16>> = Vec::new();
    let mut exhausted = false;

    fn dfs(
        search: &mut TableSearch,
        candidates_for: &dyn Fn(usize) -> Vec<Perm>,
        nodes: &AtomicU64,
        cap: u64,
        exhausted: &mut bool,
        hits: &mut Vec<Vec<u16>>,
    ) {
        if *exhausted {
            return;
        }
        let Some(r) = search.next_unplaced() else {
            if search.is_connected_table() {
                hits.push(search.table());
            }
            return;
        };
        for p in candidates_for(r) {
            if nodes.fetch_add(1, std::sync::atomic::Ordering::Relaxed) >= cap {
                *exhausted = true;
                return;
            }
            if let Some(trail) = search.place(r, p) {
                dfs(search, candidates_for, nodes, cap, exhausted, hits);
                search.undo(&trail);
                if *exhausted {
                    return;
                }
            }
        }
    }

    for row0 in canonical_row0 {
        let mut search = TableSearch::new(n);
        let Some(trail) = search.place(0, row0) else {
            continue;
        };
        dfs(
            &mut search,
            &candidates_for,
            &nodes,
            cap,
            &mut exhausted,
            &mut hits,
        );
        search.undo(&trail);
        if exhausted {
            return Err(EnumError::BudgetExhausted { budget: cap });
        }
    }

    for table in hits {
        let q = Quandle::from_flat(n, table)?;
        let good = (|| -> Result<bool, CongruenceError> {
            let Some(alpha) = unique_proper_congruence(&q)? else {
                return Ok(false);
            };
            let blocks = alpha.blocks();
            if blocks.len() != 4 || blocks.iter().any(|b| b.len() != 3) {
                return Ok(false);
            }
            let projection_blocks = blocks.iter().all(|b| {
                q.sub_quandle(b)
                    .map(|s| s.rows().iter().all(|r| r.is_identity()))
                    .unwrap_or(false)
            });
            if !projection_blocks {
                return Ok(false);
            }
            let qd = quotient(&q, &alpha)?;
            Ok(qd.quotient.size() == 4 && simplicity(&qd.quotient)?.strictly_simple)
        })()
        .unwrap_or(false);
        if good {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Runs every suite in order.
pub fn all_suites(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    vec![
        suite_principal(cfg),
        suite_simple(cfg),
        suite_cyclic(cfg),
        suite_extension(cfg),
    ]
}
