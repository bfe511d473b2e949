//! Invariant checks: randomized over small generated groups and affine
//! quandles, plus deterministic sweeps over the fixture catalog.

use proptest::prelude::*;

use quandle::congruence::{
    all_congruences, con_of_subgroup, galois, norm_lattice, orbit_congruence, quotient,
};
use quandle::enumerate::{enumerate, EnumerationTask};
use quandle::fixtures;
use quandle::group::{AbelianGroupSpec, GroupMap};
use quandle::iso;
use quandle::perm::{group_cap, Perm, PermGroup};
use quandle::quandle::Quandle;
use quandle::structure::PrincipalStatus;

fn catalog() -> Vec<Quandle> {
    let mut subjects = vec![
        fixtures::r3(),
        fixtures::p3(),
        fixtures::a4q(),
        fixtures::ss4(),
        fixtures::a9(),
        fixtures::a15(),
        fixtures::c6(),
        fixtures::r3_squared(),
    ];
    for size in 1..=6 {
        subjects.extend(enumerate(&EnumerationTask::connected(size)).unwrap());
    }
    subjects
}

fn arb_perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just(degree).prop_perturb(move |d, mut rng| {
        let mut images: Vec<u16> = (0..d as u16).collect();
        for i in (1..d).rev() {
            let j = (rng.next_u32() as usize) % (i + 1);
            images.swap(i, j);
        }
        Perm::from_images(images).unwrap()
    })
}

fn arb_group() -> impl Strategy<Value = PermGroup> {
    (3usize..7)
        .prop_flat_map(|d| proptest::collection::vec(arb_perm(d), 1..3))
        .prop_map(|gens| PermGroup::generated(gens, group_cap()).unwrap())
}

/// Affine quandle over `Z_d` twisted by a random unit. The identity twist
/// (a projection quandle) is only allowed at tiny sizes: its congruence
/// lattice is the full partition lattice and overflows the caps otherwise.
fn arb_cyclic_affine() -> impl Strategy<Value = Quandle> {
    (2usize..11)
        .prop_flat_map(|d| (Just(d), 1usize..d))
        .prop_filter("unit must be coprime", |(d, u)| gcd(*d, *u) == 1)
        .prop_filter("identity twist only below size 6", |(d, u)| *u != 1 || *d <= 5)
        .prop_map(|(d, u)| {
            let spec = AbelianGroupSpec::new(vec![d]).unwrap();
            let images: Vec<u16> = (0..d).map(|a| ((u * a) % d) as u16).collect();
            Quandle::affine(&spec, &images).unwrap()
        })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_idempotence(g in arb_group()) {
        let elements = g.elements().unwrap().to_vec();
        let regen = PermGroup::generated(elements.clone(), group_cap()).unwrap();
        prop_assert_eq!(regen.elements().unwrap(), elements.as_slice());
    }

    #[test]
    fn orbit_stabilizer(g in arb_group()) {
        let order = g.order().unwrap();
        for a in 0..g.degree() {
            let orbit = g.orbit(a).len();
            let stab = g.stabilizer_point(a).unwrap().order();
            prop_assert_eq!(orbit * stab, order);
        }
    }

    #[test]
    fn core_is_normal_and_contained(g in arb_group()) {
        let h = g.stabilizer_point(0).unwrap();
        let core = g.core(&h).unwrap();
        prop_assert!(core.is_subset_of(&h));
        prop_assert!(core.is_normal_in(&g).unwrap());
        // equals the intersection of all conjugates
        for m in core.members() {
            for x in g.elements().unwrap() {
                prop_assert!(h.contains(&m.conjugate_by(x)));
            }
        }
    }

    #[test]
    fn normal_subgroups_are_normal_and_cover_class_closures(g in arb_group()) {
        let normals = g.normal_subgroups().unwrap();
        for sub in &normals {
            prop_assert!(sub.is_normal_in(&g).unwrap());
        }
        for class in g.conjugacy_classes().unwrap() {
            let closure = g.subgroup_generated(&class).unwrap();
            prop_assert!(normals.iter().any(|sub| closure.is_subset_of(sub)));
        }
    }

    #[test]
    fn transitivity_profile_consistency(g in arb_group()) {
        let t = g.transitivity_profile().unwrap();
        prop_assert_eq!(t.regular, t.transitive && t.semiregular);
        prop_assert_eq!(
            t.regular,
            t.transitive && g.order().unwrap() == g.degree()
        );
    }

    #[test]
    fn table_automorphisms_form_a_group(
        g in arb_group().prop_filter("keep the table small", |g| g.order().unwrap() <= 24)
    ) {
        let table = g.as_table().unwrap().group;
        let autos = table.automorphisms().unwrap();
        for f in &autos {
            for h in &autos {
                let fh = f.compose(h);
                prop_assert!(autos.iter().any(|k| k.images() == fh.images()));
            }
        }
    }

    #[test]
    fn f_subgroup_properties(q in arb_cyclic_affine()) {
        // rebuild the twist on the group table and recheck the definitions
        let d = q.size();
        let spec = AbelianGroupSpec::new(vec![d]).unwrap();
        let table = spec.to_group();
        let images: Vec<u16> = (0..d).map(|a| q.op(0, a) as u16).collect();
        let f = GroupMap::automorphism(&table, images).unwrap();
        let fs = table.f_subgroups(&f).unwrap();
        prop_assert!(table.is_subgroup(&fs.fix));
        prop_assert!(table.is_subgroup(&fs.commutator_with_f));
        for n in &fs.sub_gf {
            let image: Vec<usize> = n.iter().map(|&a| f.apply(a)).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            prop_assert_eq!(&sorted, n);
            let twist: Vec<usize> = n.iter().map(|&a| table.mul(a, table.inv(f.apply(a)))).collect();
            let nf = table.subgroup_closure(&twist);
            let core = table.core_of(n);
            prop_assert!(nf.iter().all(|x| core.contains(x)));
        }
    }

    #[test]
    fn affine_round_trip_and_rows(q in arb_cyclic_affine()) {
        // rebuilding from the table validates all axioms
        let rows: Vec<Vec<usize>> = (0..q.size())
            .map(|a| (0..q.size()).map(|b| q.op(a, b)).collect())
            .collect();
        let rebuilt = Quandle::from_table(&rows).unwrap();
        prop_assert_eq!(rebuilt, q.clone());
        // row conjugation identity
        for a in 0..q.size() {
            for b in 0..q.size() {
                prop_assert_eq!(q.row(q.op(a, b)), q.row(b).conjugate_by(&q.row(a)));
            }
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(q in arb_cyclic_affine(), seed in any::<u64>()) {
        // apply a pseudo-random relabeling derived from the seed
        let n = q.size();
        let mut images: Vec<u16> = (0..n as u16).collect();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            images.swap(i, j);
        }
        let p = Perm::from_images(images).unwrap();
        prop_assert_eq!(iso::canonical_form(&q.relabel(&p)), iso::canonical_form(&q));
    }

    #[test]
    fn isomorphism_witnesses_invert(q in arb_cyclic_affine()) {
        let w = iso::isomorphism(&q, &q).unwrap();
        let back = w.inverse().unwrap();
        prop_assert!(back.is_bijective());
        // principal quandles over abelian groups agree with the affine form
        let d = q.size();
        let spec = AbelianGroupSpec::new(vec![d]).unwrap();
        let table = spec.to_group();
        let images: Vec<u16> = (0..d).map(|a| q.op(0, a) as u16).collect();
        let f = GroupMap::automorphism(&table, images).unwrap();
        let principal = Quandle::principal(&table, &f).unwrap();
        prop_assert_eq!(principal.left_table(), q.left_table());
        // and the coset construction over the trivial subgroup collapses to it
        let coset = Quandle::homogeneous(&table, &[0], &f).unwrap();
        prop_assert_eq!(coset.left_table(), q.left_table());
    }

    #[test]
    fn subquandle_generation_is_minimal(q in arb_cyclic_affine(), a in 0usize..12, b in 0usize..12) {
        let n = q.size();
        let (a, b) = (a % n, b % n);
        let members = q.subquandle_generated(&[a, b]);
        prop_assert!(q.is_subquandle(&members));
        // removing any non-seed element breaks closure or containment
        for &x in &members {
            if x == a || x == b {
                continue;
            }
            let reduced: Vec<usize> = members.iter().copied().filter(|&y| y != x).collect();
            prop_assert!(!q.is_subquandle(&reduced) || !reduced.contains(&a) || !reduced.contains(&b));
        }
    }

    #[test]
    fn galois_monotone_on_random_affine(q in arb_cyclic_affine()) {
        let lattice = all_congruences(&q).unwrap();
        let congruences = lattice.congruences();
        for c1 in congruences {
            for c2 in congruences {
                if c1.partition().is_refinement_of(c2.partition()) {
                    let g1 = galois(&q, c1).unwrap();
                    let g2 = galois(&q, c2).unwrap();
                    prop_assert!(g1.dis_alpha.is_subset_of(&g2.dis_alpha));
                }
            }
        }
    }
}

#[test]
fn predicate_chain_on_catalog() {
    for q in catalog() {
        let p = q.predicates().unwrap();
        if p.latin {
            assert!(p.faithful, "latin implies faithful");
        }
        if p.faithful {
            assert!(p.crossed_set, "faithful implies crossed set");
        }
        if p.semiregular && p.faithful {
            assert!(p.latin, "finite semiregular faithful implies latin");
        }
    }
}

#[test]
fn sigma_classes_are_automorphism_blocks() {
    for q in catalog() {
        let sigma = q.sigma().unwrap();
        let Some(partition) = sigma.partition() else {
            panic!("stabilizer relation is an equivalence");
        };
        let aut = q.automorphism_group();
        for h in aut.elements().unwrap() {
            for block in partition.blocks() {
                let mut image: Vec<usize> = block.iter().map(|&x| h.apply(x)).collect();
                image.sort_unstable();
                assert!(
                    partition.blocks().contains(&image),
                    "automorphisms must permute stabilizer classes"
                );
            }
        }
    }
}

#[test]
fn orbit_congruence_below_subgroup_congruence() {
    for q in catalog() {
        for entry in norm_lattice(&q).unwrap() {
            let oc = orbit_congruence(&q, &entry.subgroup).unwrap();
            let cn = con_of_subgroup(&q, &entry.subgroup).unwrap();
            assert!(
                oc.partition().is_refinement_of(cn.partition()),
                "orbit congruence must refine the membership congruence"
            );
        }
    }
}

#[test]
fn semiregular_quotients_close_under_meet() {
    for q in catalog() {
        let lattice = all_congruences(&q).unwrap();
        let congruences = lattice.congruences();
        let semiregular: Vec<bool> = congruences
            .iter()
            .map(|c| {
                quotient(&q, c)
                    .unwrap()
                    .quotient
                    .predicates()
                    .unwrap()
                    .semiregular
            })
            .collect();
        for i in 0..congruences.len() {
            for j in 0..congruences.len() {
                if semiregular[i] && semiregular[j] {
                    let meet = lattice.meet_index(i, j);
                    assert!(
                        semiregular[meet],
                        "meet of congruences with semiregular quotients must have one"
                    );
                }
            }
        }
    }
}

#[test]
fn principal_quotient_criterion_on_connected_catalog() {
    for q in catalog() {
        if !q.is_connected() {
            continue;
        }
        let dis = q.dis();
        let lattice = all_congruences(&q).unwrap();
        for c in lattice.congruences() {
            let qd = quotient(&q, c).unwrap();
            let principal = matches!(
                qd.quotient.principal_analysis().unwrap(),
                PrincipalStatus::Principal(_)
            );
            let g = galois(&q, c).unwrap();
            let stabilizers_match = (0..q.size()).all(|a| {
                let block = c.partition().block_of(a);
                let stab = dis.stabilizer_set(&block).unwrap();
                stab.members() == g.dis_upper.members()
            });
            assert_eq!(
                principal, stabilizers_match,
                "quotient is principal exactly when the block kernel is every block stabilizer"
            );
        }
    }
}

#[test]
fn normal_invariant_subgroup_congruences_on_connected_principal() {
    // for connected principal quandles with connected blocks, the relative
    // displacement group of a coset congruence is the subgroup itself
    for q in [fixtures::a9(), fixtures::a15(), fixtures::r3_squared()] {
        let PrincipalStatus::Principal(rep) = q.principal_analysis().unwrap() else {
            panic!("expected principal");
        };
        let lattice = all_congruences(&q).unwrap();
        for c in lattice.congruences() {
            let blocks_connected = c
                .blocks()
                .iter()
                .all(|b| q.sub_quandle(b).unwrap().is_connected());
            if !blocks_connected {
                continue;
            }
            let g = galois(&q, c).unwrap();
            assert_eq!(
                g.dis_alpha.members(),
                g.dis_upper.members(),
                "connected blocks force the two displacement subgroups to agree"
            );
            assert_eq!(g.dis_alpha.order(), c.partition().block_of(0).len());
        }
        let _ = rep;
    }
}

#[test]
fn cyclic_connected_size_bound() {
    for q in catalog() {
        let p = q.cyclic_profile();
        if p.is_cyclic && q.is_connected() {
            let f = p.fixed_points.unwrap();
            assert!(q.size() > 2 * f, "connected cyclic quandles satisfy n > 2f");
        }
    }
}

#[test]
fn degenerate_sizes() {
    let q1 = Quandle::projection(1).unwrap();
    assert!(q1.is_connected());
    let p = q1.predicates().unwrap();
    assert!(p.faithful && p.crossed_set && p.latin && p.semiregular);
    // both rows of a two-element quandle are forced to the identity
    let census = enumerate(&EnumerationTask::all(2)).unwrap();
    assert_eq!(census.len(), 1);
    assert_eq!(census[0], Quandle::projection(2).unwrap());
}

#[test]
fn lmlt_factorization_on_catalog() {
    for q in catalog() {
        assert!(q.lmlt_factorization().unwrap());
        // displacement group is normal in the left multiplication group and
        // their orbits coincide
        let dis = q.dis().as_subgroup().unwrap();
        assert!(dis.is_normal_in(&q.lmlt()).unwrap());
        assert_eq!(q.dis().orbits(), q.lmlt().orbits());
    }
}
