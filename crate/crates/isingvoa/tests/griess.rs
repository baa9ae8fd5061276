//! Weight-2 Griess algebras of V_{√2R}^+: structure constants, conformal
//! vectors and Ising vectors.

use std::sync::Arc;

use proptest::prelude::*;

use isingvoa::census::lattice_census;
use isingvoa::griess::{GriessAlgebra, GriessElement, Q};
use isingvoa::registry;

fn algebra(tag: &str) -> GriessAlgebra {
    GriessAlgebra::build(&registry::lattice(tag).unwrap()).unwrap()
}

/// (tag, rank, |Φ|, Coxeter number).
const LATTICES: [(&str, i128, usize, i128); 7] = [
    ("A1", 1, 2, 2),
    ("A2", 2, 6, 3),
    ("A3", 3, 12, 4),
    ("D4", 4, 24, 6),
    ("E6", 6, 72, 12),
    ("E7", 7, 126, 18),
    ("E8", 8, 240, 30),
];

#[test]
fn dimension_is_symmetric_square_plus_root_pairs() {
    for (tag, rank, roots, _) in LATTICES {
        let r = rank as usize;
        assert_eq!(algebra(tag).dimension(), r * (r + 1) / 2 + roots / 2, "{tag}");
    }
}

#[test]
fn conformal_vectors_have_expected_central_charges() {
    for (tag, rank, _, h) in LATTICES {
        let alg = algebra(tag);
        let lat = alg.lattice().clone();
        let omega = alg.omega();
        assert_eq!(alg.product(&omega, &omega), omega.scale(Q::from(2)), "{tag}: ω·ω = 2ω");
        assert_eq!(alg.inner(&omega, &omega), Q::new(rank, 2), "{tag}: ⟨ω,ω⟩ = c/2");
        // ω̃ has central charge 2·rank/(h+2); s = ω − ω̃ carries the rest.
        let wt = alg.conformal(alg.wtilde_of(&lat).unwrap()).unwrap();
        let s = alg.conformal(alg.s_of(&lat).unwrap()).unwrap();
        let c_wt = Q::new(2 * rank, h + 2);
        assert_eq!(wt.central_charge, c_wt, "{tag}");
        assert_eq!(s.central_charge, Q::from(rank) - c_wt, "{tag}");
        assert!(alg.product(&wt.element, &s.element).is_zero(), "{tag}: ω̃·s = 0");
        assert_eq!(wt.element.add(&s.element), omega, "{tag}: ω̃ + s = ω");
    }
}

#[test]
fn omega_acts_as_identity_times_two() {
    for tag in ["A2", "D4", "E6"] {
        let alg = algebra(tag);
        let omega = alg.omega();
        for k in 0..alg.dimension() {
            let b = alg.basis_element(k);
            assert_eq!(alg.product(&omega, &b), b.scale(Q::from(2)), "{tag}: ω·b_{k}");
        }
    }
}

#[test]
fn commutant_of_wtilde_has_half_the_roots() {
    for (tag, _, roots, _) in LATTICES {
        let alg = algebra(tag);
        let wt = alg.wtilde_of(alg.lattice()).unwrap();
        let basis = alg.commutant_weight2(&wt);
        assert_eq!(basis.len(), roots / 2, "{tag}");
        assert!(basis.iter().all(|b| alg.product(&wt, b).is_zero()), "{tag}: kernel of ω̃·");
    }
}

fn d4() -> &'static GriessAlgebra {
    use std::sync::OnceLock;
    static ALG: OnceLock<GriessAlgebra> = OnceLock::new();
    ALG.get_or_init(|| algebra("D4"))
}

proptest! {
    #[test]
    fn product_is_commutative_and_form_invariant(i in 0usize..22, j in 0usize..22, k in 0usize..22) {
        let alg = d4();
        let (a, b, c) = (alg.basis_element(i), alg.basis_element(j), alg.basis_element(k));
        prop_assert_eq!(alg.product(&a, &b), alg.product(&b, &a));
        prop_assert_eq!(alg.inner(&alg.product(&a, &b), &c), alg.inner(&a, &alg.product(&b, &c)));
        prop_assert_eq!(alg.inner(&a, &b), alg.inner(&b, &a));
    }

    #[test]
    fn coordinates_roundtrip(coeffs in prop::collection::vec(-5i128..=5, 22)) {
        let alg = d4();
        let c: Vec<Q> = coeffs.iter().map(|&x| Q::from(x)).collect();
        let e: GriessElement = alg.from_coords(&c);
        prop_assert_eq!(alg.coords(&e), c);
    }
}

#[test]
fn census_points_are_ising_vectors() {
    for (tag, _, roots, _) in LATTICES {
        let alg = Arc::new(algebra(tag));
        let c = lattice_census(alg.clone()).unwrap();
        let extra = if tag == "E8" { 256 } else { 0 };
        assert_eq!(c.len(), roots + extra, "{tag}");
        for i in 0..c.len() {
            let e = c.realization(i).unwrap();
            assert_eq!(alg.product(e, e), e.scale(Q::from(2)), "{tag}: e·e = 2e");
            assert_eq!(alg.inner(e, e), Q::new(1, 4), "{tag}: ⟨e,e⟩ = 1/4");
        }
        for i in 0..c.len() {
            for j in 0..c.len() {
                let g = alg.inner(c.realization(i).unwrap(), c.realization(j).unwrap());
                assert_eq!(c.gram(i, j).unwrap(), g, "{tag}: gram[{i}][{j}]");
            }
        }
    }
}

#[test]
fn miyamoto_involutions_fix_orthogonal_points() {
    let alg = Arc::new(algebra("E8"));
    let c = lattice_census(alg.clone()).unwrap();
    let index = c.element_index();
    for e in (0..c.len()).step_by(31) {
        let sigma = c.sigma_of(e, &index).unwrap();
        for (f, &image_index) in sigma.iter().enumerate() {
            let g = c.gram(e, f).unwrap();
            if g == Q::from(0) || g == Q::new(1, 4) {
                assert_eq!(image_index, f);
            } else {
                // f ↦ e + f − 4·e·f
                let (ee, ff) = (c.realization(e).unwrap(), c.realization(f).unwrap());
                let image = ee.add(ff).sub(&alg.product(ee, ff).scale(Q::from(4)));
                assert_eq!(c.realization(image_index).unwrap(), &image);
            }
        }
    }
}
