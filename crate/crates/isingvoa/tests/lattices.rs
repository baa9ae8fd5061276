//! Root lattices against closed-form counts and a brute-force E8 model.

use std::collections::HashSet;

use isingvoa::registry;
use isingvoa::rootlat::{class_census, ip, mod2_classes, reflect, sublattice_embedding, EmbeddingName, Simple};

/// (tag, |Φ|, Coxeter number) from the classification tables.
fn table() -> Vec<(String, usize, usize)> {
    let mut t = Vec::new();
    for n in 1..=7 {
        t.push((format!("A{n}"), n * (n + 1), n + 1));
    }
    for n in 4..=8 {
        t.push((format!("D{n}"), 2 * n * (n - 1), 2 * n - 2));
    }
    t.push(("E6".into(), 72, 12));
    t.push(("E7".into(), 126, 18));
    t.push(("E8".into(), 240, 30));
    t
}

#[test]
fn root_counts_and_norms() {
    for (tag, roots, h) in table() {
        let l = registry::lattice(&tag).unwrap();
        assert_eq!(l.roots().len(), roots, "{tag}");
        assert!(l.roots().iter().all(|r| ip(r, r) == 2), "{tag}: roots have norm 2");
        assert_eq!(l.positive_roots().len(), roots / 2, "{tag}");
        assert_eq!(l.simple_roots().len(), l.rank(), "{tag}");
        assert_eq!(l.coxeter_number().unwrap(), h, "{tag}");
    }
}

#[test]
fn root_systems_are_closed_under_reflections() {
    for (tag, _, _) in table() {
        let l = registry::lattice(&tag).unwrap();
        let set: HashSet<&Vec<i32>> = l.roots().iter().collect();
        for a in l.roots() {
            for b in l.roots() {
                assert!(set.contains(&reflect(a, b)), "{tag}: s_a(b) is a root");
            }
        }
    }
}

#[test]
fn simple_root_gram_is_a_cartan_matrix() {
    for (tag, _, _) in table() {
        let l = registry::lattice(&tag).unwrap();
        for (i, row) in l.gram().iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                assert!(if i == j { g == 2 } else { g == 0 || g == -1 }, "{tag}: gram[{i}][{j}] = {g}");
            }
        }
    }
}

/// E8 in doubled coordinates x = 2y: all x_i even or all odd, Σ x_i ≡ 0 mod 4.
fn e8_member(x: &[i32]) -> bool {
    let parity = x[0].rem_euclid(2);
    x.iter().all(|c| c.rem_euclid(2) == parity) && x.iter().sum::<i32>().rem_euclid(4) == 0
}

fn e8_vectors_of_norm(norm: i32) -> Vec<Vec<i32>> {
    // (y,y) = norm  ⇔  (x,x) = 4·norm.
    fn rec(prefix: &mut Vec<i32>, left: i32, out: &mut Vec<Vec<i32>>) {
        if prefix.len() == 8 {
            if left == 0 && e8_member(prefix) {
                out.push(prefix.clone());
            }
            return;
        }
        let mut c = -4;
        while c <= 4 {
            if c * c <= left {
                prefix.push(c);
                rec(prefix, left - c * c, out);
                prefix.pop();
            }
            c += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 4 * norm, &mut out);
    out
}

/// u ≡ v mod 2E8 iff (u − v)/2 ∈ E8.
fn congruent(u: &[i32], v: &[i32]) -> bool {
    let d: Vec<i32> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    d.iter().all(|c| c % 2 == 0) && e8_member(&d.iter().map(|c| c / 2).collect::<Vec<_>>())
}

fn classes(vs: &[Vec<i32>]) -> Vec<usize> {
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        match reps.iter_mut().find(|(r, _)| congruent(&vs[*r], v)) {
            Some((_, size)) => *size += 1,
            None => reps.push((i, 1)),
        }
    }
    reps.into_iter().map(|(_, s)| s).collect()
}

#[test]
fn e8_mod_two_classes_by_brute_force() {
    let roots = e8_vectors_of_norm(2);
    let fours = e8_vectors_of_norm(4);
    assert_eq!((roots.len(), fours.len()), (240, 2160));
    let rc = classes(&roots);
    let fc = classes(&fours);
    assert_eq!(rc.len(), 120);
    assert!(rc.iter().all(|&s| s == 2));
    assert_eq!(fc.len(), 135);
    assert!(fc.iter().all(|&s| s == 16));
    assert!(roots.iter().all(|r| fours.iter().all(|f| !congruent(r, f))));
    assert_eq!(1 + rc.len() + fc.len(), 256);

    let e8 = registry::lattice("E8").unwrap();
    let lib = mod2_classes(&e8).unwrap();
    assert_eq!(class_census(&lib), (1, rc.len(), fc.len()));
    // The library's root model is the same lattice.
    let mine: HashSet<Vec<i32>> = roots.into_iter().collect();
    assert!(e8.roots().iter().all(|r| mine.contains(r)));
}

#[test]
fn embeddings_split_the_ambient_roots() {
    let e = sublattice_embedding(EmbeddingName::A1E7InE8).unwrap();
    assert_eq!(e.parts.iter().map(|p| p.roots().len()).collect::<Vec<_>>(), vec![2, 126]);
    let f = sublattice_embedding(EmbeddingName::A5A1InE6).unwrap();
    assert_eq!(f.parts.iter().map(|p| p.roots().len()).collect::<Vec<_>>(), vec![30, 2]);
    let g = sublattice_embedding(EmbeddingName::A7InE7).unwrap();
    assert_eq!(g.parts[0].roots().len(), 56);
    for emb in [&e, &f, &g] {
        for (i, p) in emb.parts.iter().enumerate() {
            assert!(p.roots().iter().all(|r| emb.ambient.is_root(r)));
            for q in &emb.parts[i + 1..] {
                assert!(p.roots().iter().all(|a| q.roots().iter().all(|b| ip(a, b) == 0)));
            }
        }
    }
}

#[test]
fn weyl_orders_from_degrees() {
    let degrees: [(Simple, &[u128]); 5] = [
        (Simple::A(4), &[2, 3, 4, 5]),
        (Simple::D(5), &[2, 4, 6, 8, 5]),
        (Simple::E6, &[2, 5, 6, 8, 9, 12]),
        (Simple::E7, &[2, 6, 8, 10, 12, 14, 18]),
        (Simple::E8, &[2, 8, 12, 14, 18, 20, 24, 30]),
    ];
    for (s, d) in degrees {
        assert_eq!(s.weyl_order(), d.iter().product::<u128>(), "{s}");
    }
}
