//! Permutation groups, 3-transpositions and Fischer spaces.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use proptest::prelude::*;

use isingvoa::par::Exec;
use isingvoa::registry;
use isingvoa::rootlat::reflect;
use isingvoa::transpo::{self, classical, Perm, PermutationGroup};

/// Group order by breadth-first closure of the generated set.
fn closure_order(n: usize, gens: &[Perm]) -> usize {
    let id: Perm = (0..n as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h: Perm = g.iter().map(|&x| s[x as usize]).collect();
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.len()
}

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stabilizer_chain_matches_closure(gens in prop::collection::vec(arb_perm(7), 1..4)) {
        let order = transpo::group_order(7, &gens);
        prop_assert_eq!(order, BigUint::from(closure_order(7, &gens)));
    }

    #[test]
    fn membership_is_consistent(gens in prop::collection::vec(arb_perm(6), 1..3), g in arb_perm(6)) {
        let group = PermutationGroup::from_generators(6, &gens);
        let mut bigger = gens.clone();
        bigger.push(g.clone());
        let grows = transpo::group_order(6, &bigger) > group.order();
        prop_assert_eq!(group.contains(&g), !grows);
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Perm {
    let mut p: Perm = (0..n as u32).collect();
    p.swap(a, b);
    p
}

/// The action of each involution on the set `ts` by conjugation.
fn conjugation_action(ts: &[Perm]) -> Vec<Perm> {
    ts.iter()
        .map(|t| {
            ts.iter()
                .map(|x| {
                    let y = transpo::compose(&transpo::compose(t, x), t);
                    ts.iter().position(|z| *z == y).expect("set closed under conjugation") as u32
                })
                .collect()
        })
        .collect()
}

#[test]
fn symmetric_groups_are_3_transposition_groups() {
    for n in 3..=7 {
        let ts: Vec<Perm> = (0..n).flat_map(|a| (a + 1..n).map(move |b| transposition(n, a, b))).collect();
        let fact: usize = (1..=n).product();
        assert_eq!(transpo::group_order(n, &ts), BigUint::from(fact));
        let action = conjugation_action(&ts);
        assert!(transpo::is_3transposition(&action).holds);
        let space = transpo::fischer_space(&action).unwrap();
        // Lines of S_n's Fischer space are the triangles {ab, bc, ac}.
        assert_eq!(space.lines.len(), n * (n - 1) * (n - 2) / 6);
        assert!(transpo::is_symplectic_type(&space));
    }
}

#[test]
fn dihedral_reflections_of_order_four_are_rejected() {
    // Reflections of the square: their product is a 4-cycle.
    let s: Perm = vec![1, 0, 3, 2];
    let t: Perm = vec![0, 3, 2, 1];
    assert_eq!(transpo::perm_order(&transpo::compose(&s, &t)), BigUint::from(4u32));
    assert!(!transpo::is_3transposition(&[s, t]).holds);
}

#[test]
fn classical_orders_from_formulas() {
    // |Sp_{2n}(2)| and |O^±_{2n}(2)| values from the standard tables.
    assert_eq!(classical::sp(2), BigUint::from(720u32));
    assert_eq!(classical::sp(3), BigUint::from(1_451_520u64));
    assert_eq!(classical::sp(4), BigUint::from(47_377_612_800u64));
    assert_eq!(classical::orthogonal(3, false), BigUint::from(51_840u64));
    assert_eq!(classical::orthogonal(3, true), BigUint::from(40_320u64));
    assert_eq!(classical::orthogonal(4, false), BigUint::from(394_813_440u64));
    assert_eq!(classical::orthogonal(5, true), BigUint::from(46_998_591_897_600u64));
    for n in 2..=5 {
        for plus in [true, false] {
            assert_eq!(classical::orthogonal(n, plus), classical::omega(n, plus) * 2u32);
        }
    }
}

/// The Weyl group acts faithfully on the roots; its order from simple reflections.
#[test]
fn weyl_group_orders_by_closure() {
    for (tag, order) in [("A3", 24), ("A4", 120), ("D4", 192)] {
        let l = registry::lattice(tag).unwrap();
        let roots = l.roots();
        let gens: Vec<Perm> = l
            .simple_roots()
            .iter()
            .map(|a| roots.iter().map(|b| l.root_index(&reflect(a, b)).unwrap() as u32).collect())
            .collect();
        assert_eq!(closure_order(roots.len(), &gens), order, "{tag}");
        assert_eq!(transpo::group_order(roots.len(), &gens), BigUint::from(order as u32), "{tag}");
    }
}

#[test]
fn small_commutant_groups_match_closure() {
    for tag in ["m_a2", "m_a3", "m_a4", "m_d4", "m_d5"] {
        let c = registry::census(tag, &[]).unwrap();
        let s = transpo::sigma_permutations(&c).unwrap();
        assert_eq!(transpo::group_order(c.len(), &s), BigUint::from(closure_order(c.len(), &s)), "{tag}");
        assert!(transpo::is_3transposition(&s).holds, "{tag}");
    }
}

#[test]
fn sigma_permutations_preserve_the_gram_matrix() {
    for tag in ["A3", "D4", "m_e6", "h8"] {
        let c = registry::census(tag, &[]).unwrap();
        let s = transpo::sigma_permutations(&c).unwrap();
        for p in &s {
            assert!(transpo::is_permutation(p));
            assert!(transpo::is_identity(&transpo::compose(p, p)), "{tag}: σ is an involution");
            assert!(transpo::preserves_gram(&c, p).unwrap(), "{tag}");
        }
    }
}

#[test]
fn execution_modes_agree() {
    let c = registry::census("m_e7", &[]).unwrap();
    let a = transpo::sigma_permutations_with(&c, Exec::Sequential).unwrap();
    let b = transpo::sigma_permutations_with(&c, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        transpo::is_3transposition_with(&a, Exec::Sequential).holds,
        transpo::is_3transposition_with(&a, Exec::Parallel).holds
    );
    let space = transpo::fischer_space(&a).unwrap();
    assert_eq!(
        transpo::is_symplectic_type_with(&space, Exec::Sequential),
        transpo::is_symplectic_type_with(&space, Exec::Parallel)
    );
}

#[test]
fn hamming_frames_are_conjugate_by_single_sigmas() {
    let m = isingvoa::census::hamming_model().unwrap();
    assert_eq!(m.census.len(), 24);
    assert_eq!(m.frames.len(), 3);
    let s = transpo::sigma_permutations(&m.census).unwrap();
    for a in &m.frames {
        for b in &m.frames {
            let word = transpo::frame_conjugator(&m.census, &s, a, b).unwrap();
            assert_eq!(word.len(), usize::from(a != b));
        }
    }
}
