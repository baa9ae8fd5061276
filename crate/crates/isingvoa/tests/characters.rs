//! q-series characters against independent oracles: Verma-module Gram
//! ranks, Eisenstein coefficients, the pentagonal number theorem and the
//! Frenkel–Kac construction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use isingvoa::qchar::{self, exp, Exp, QSeries};
use isingvoa::registry;

// ------------------------------------------------------------- Verma oracle

/// Vectors of a Virasoro Verma module: partitions λ (weakly decreasing)
/// standing for L_{-λ1} ⋯ L_{-λk}|h⟩.
type State = HashMap<Vec<u32>, BigRational>;

struct Verma {
    c: BigRational,
    h: BigRational,
    memo: HashMap<(i64, Vec<u32>), State>,
}

fn add_into(acc: &mut State, s: &State, k: &BigRational) {
    for (m, v) in s {
        let e = acc.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += v * k;
    }
}

impl Verma {
    fn new(c: Exp, h: Exp) -> Self {
        let big = |x: Exp| BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
        Verma { c: big(c), h: big(h), memo: HashMap::new() }
    }

    /// L_m applied to one ordered monomial, re-ordered via [L_m, L_n] = (m−n)L_{m+n} + c/12 (m³−m) δ_{m+n,0}.
    fn apply(&mut self, m: i64, mono: &[u32]) -> State {
        let key = (m, mono.to_vec());
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let one = BigRational::one();
        let mut out = State::new();
        if mono.is_empty() {
            match m.signum() {
                1 => {}
                0 => {
                    out.insert(vec![], self.h.clone());
                }
                _ => {
                    out.insert(vec![(-m) as u32], one);
                }
            }
        } else if m < 0 && -m >= mono[0] as i64 {
            let mut v = vec![(-m) as u32];
            v.extend_from_slice(mono);
            out.insert(v, one);
        } else if m == 0 {
            let level: u32 = mono.iter().sum();
            out.insert(mono.to_vec(), &self.h + BigRational::from_integer(level.into()));
        } else {
            let a = mono[0] as i64;
            let rest = &mono[1..];
            // L_{-a} (L_m X)
            for (mono2, coef) in self.apply(m, rest) {
                let s = self.apply(-a, &mono2);
                add_into(&mut out, &s, &coef);
            }
            // (m + a) L_{m−a} X
            if m + a != 0 {
                let s = self.apply(m - a, rest);
                add_into(&mut out, &s, &BigRational::from_integer((m + a).into()));
            }
            if m == a {
                let central = &self.c * BigRational::new((m * m * m - m).into(), 12.into());
                add_into(&mut out, &State::from([(rest.to_vec(), one)]), &central);
            }
            out.retain(|_, v| !v.is_zero());
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// ⟨λ|μ⟩ = coefficient of |h⟩ in L_{λk} ⋯ L_{λ1} L_{-μ}|h⟩.
    fn gram(&mut self, lambda: &[u32], mu: &[u32]) -> BigRational {
        let mut state = State::from([(mu.to_vec(), BigRational::one())]);
        for &n in lambda {
            let mut next = State::new();
            for (mono, coef) in state {
                let s = self.apply(n as i64, &mono);
                add_into(&mut next, &s, &coef);
            }
            next.retain(|_, v| !v.is_zero());
            state = next;
        }
        state.get(&vec![]).cloned().unwrap_or_else(BigRational::zero)
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut tail in partitions(n - first, first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let mut r = 0;
    let cols = m.first().map_or(0, |row| row.len());
    for col in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][col].is_zero() {
                let f = &m[i][col] / &m[r][col];
                for j in col..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// dim L(c,h)_{h+N} = rank of the level-N Gram matrix of the Verma module.
fn irreducible_dims(c: Exp, h: Exp, depth: u32) -> Vec<usize> {
    let mut v = Verma::new(c, h);
    (0..=depth)
        .map(|n| {
            let basis = partitions(n, n);
            let g: Vec<Vec<BigRational>> = basis.iter().map(|a| basis.iter().map(|b| v.gram(a, b)).collect()).collect();
            rank(g)
        })
        .collect()
}

#[test]
fn verma_oracle_reproduces_free_partition_counts() {
    // Generic (c, h): the Verma module is irreducible.
    let dims = irreducible_dims(exp(1, 3), exp(2, 7), 6);
    assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11]);
}

#[test]
fn minimal_characters_match_verma_gram_ranks() {
    for m in 1..=3i64 {
        let c = Exp::one() - exp(6, (m + 2) * (m + 3));
        assert_eq!(qchar::minimal_central_charge(m), c);
        for r in 1..=m + 1 {
            for s in 1..=m + 2 {
                let a = r * (m + 3) - s * (m + 2);
                let h = exp(a * a - 1, 4 * (m + 2) * (m + 3));
                assert_eq!(qchar::minimal_weight(m, r, s), h);
                let ch = qchar::minimal_character(m, r, s, h + Exp::from(8)).unwrap();
                let dims = irreducible_dims(c, h, 8);
                for (n, d) in dims.iter().enumerate() {
                    assert_eq!(ch.coeff(h + Exp::from(n as i64)), BigInt::from(*d), "m={m} (r,s)=({r},{s}) level {n}");
                }
            }
        }
    }
}

// --------------------------------------------------------- product oracles

fn partition_numbers(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p
}

fn series_coeffs(s: &QSeries, n: usize) -> Vec<BigInt> {
    (0..=n as i64).map(|k| s.coeff(Exp::from(k))).collect()
}

#[test]
fn euler_function_obeys_the_pentagonal_theorem() {
    let n = 40;
    let mut want = vec![BigInt::zero(); n + 1];
    for k in -10i64..=10 {
        let e = k * (3 * k - 1) / 2;
        if (0..=n as i64).contains(&e) {
            want[e as usize] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    assert_eq!(series_coeffs(&qchar::euler_power(1, Exp::from(n as i64)), n), want);
    let p: Vec<BigInt> = partition_numbers(n).into_iter().map(BigInt::from).collect();
    assert_eq!(series_coeffs(&qchar::euler_power(-1, Exp::from(n as i64)), n), p);
}

fn sigma3(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d * d * d).sum()
}

#[test]
fn e8_theta_is_the_weight_four_eisenstein_series() {
    let e8 = registry::lattice("E8").unwrap();
    let t = qchar::theta_sqrt2(&e8, None, Exp::from(12));
    for k in 0..=12u64 {
        let want = match (k, k % 2) {
            (0, _) => 1,
            (_, 1) => 0,
            _ => 240 * sigma3(k / 2),
        };
        assert_eq!(t.coeff(Exp::from(k as i64)), BigInt::from(want), "q^{k}");
    }
}

#[test]
fn theta_of_direct_sums_factors() {
    let cut = Exp::from(8);
    let a = qchar::theta_sqrt2(&registry::lattice("A2").unwrap(), None, cut);
    let b = qchar::theta_sqrt2(&registry::lattice("A3").unwrap(), None, cut);
    let ab = qchar::theta_sqrt2(&registry::lattice("A2+A3").unwrap(), None, cut);
    assert_eq!((&a * &b).truncate(cut), ab);
}

#[test]
fn vplus_weight_two_is_the_griess_dimension() {
    for (tag, rank, roots) in [("A1", 1, 2), ("A2", 2, 6), ("D4", 4, 24), ("E6", 6, 72), ("E7", 7, 126), ("E8", 8, 240)]
    {
        let ch = qchar::vplus_character(&registry::lattice(tag).unwrap(), Exp::from(4));
        assert_eq!(ch.coeff(Exp::zero()), BigInt::one(), "{tag}");
        assert_eq!(ch.coeff(Exp::one()), BigInt::zero(), "{tag}");
        assert_eq!(ch.coeff(Exp::from(2)), BigInt::from(rank * (rank + 1) / 2 + roots / 2), "{tag}");
        assert!(ch.is_nonnegative() && ch.has_integral_exponents(), "{tag}");
    }
    let e7 = qchar::vplus_character(&registry::lattice("E7").unwrap(), Exp::from(2));
    assert_eq!(e7.coeff(Exp::from(2)), BigInt::from(91));
}

// -------------------------------------------------------------- affine sl2

#[test]
fn level_one_affine_characters_are_lattice_characters() {
    let cut = Exp::from(10);
    let p = qchar::euler_power(-1, cut);
    for j in 0..=1i64 {
        let ch = qchar::affine_sl2_character(1, j, cut).unwrap();
        for n in -3i64..=3 {
            let z = 2 * n + j;
            // (z/2)² − j²/4 above the top of the module.
            let e = Exp::new(z * z - j * j, 4);
            let want = p.shift(e).truncate(cut);
            assert_eq!(ch.slice(z).truncate(cut), want, "j={j} z^{z}");
        }
    }
}

#[test]
fn parafermions_at_levels_two_and_three_are_minimal_models() {
    let cut = Exp::from(8);
    let w = |l, j, k| qchar::w_character(l, j, k, cut).unwrap().series;
    let vir = |m, h: Exp| qchar::minimal_character_by_weight(m, h, cut).unwrap();
    assert_eq!(qchar::parafermion_central_charge(2), qchar::minimal_central_charge(1));
    assert_eq!(w(2, 0, 0), vir(1, Exp::zero()));
    assert_eq!(w(2, 0, 2), vir(1, exp(1, 2)));
    assert_eq!(w(2, 1, 1), vir(1, exp(1, 16)));
    // Three-state Potts: W_3 = L(4/5,0) ⊕ L(4/5,3).
    assert_eq!(qchar::parafermion_central_charge(3), qchar::minimal_central_charge(3));
    assert_eq!(w(3, 0, 0), &vir(3, Exp::zero()) + &vir(3, Exp::from(3)));
}

#[test]
fn branching_functions_reassemble_the_affine_character() {
    let cut = Exp::from(8);
    let upto = Exp::from(6);
    for l in 1..=8i64 {
        for j in 0..=l {
            let mut total = QSeries::zero(cut);
            for k in 0..2 * l {
                let wk = qchar::w_character(l, j, k, cut).unwrap();
                if wk.parity_zero {
                    assert!(wk.series.is_zero(), "W_{l}({j},{k}) vanishes");
                }
                total = &total + &(&qchar::gamma_coset_character(l, k, cut) * &wk.series);
            }
            let aff = qchar::affine_sl2_character(l, j, cut).unwrap().at_z_one().shift(qchar::affine_weight(l, j));
            assert_eq!(total.first_mismatch(&aff, upto), None, "level {l}, j = {j}");
        }
    }
}

#[test]
fn branching_functions_have_the_expected_symmetries_and_tops() {
    let cut = Exp::from(6);
    for l in 1..=6i64 {
        for j in 0..=l {
            for k in 0..2 * l {
                let w = |j, k: i64| qchar::w_character(l, j, k.rem_euclid(2 * l), cut).unwrap().series;
                let base = w(j, k);
                assert_eq!(base.first_mismatch(&w(j, -k), cut), None, "W_{l}({j},{k}) = W({j},{})", -k);
                assert_eq!(base.first_mismatch(&w(l - j, k + l), cut), None, "W_{l}({j},{k}) = W({},{})", l - j, k + l);
                assert!(base.is_nonnegative());
            }
            // The top of W_ℓ(j, j) is the highest-weight vector itself.
            let top = exp(j * (j + 2), 4 * (l + 2)) - exp(j * j, 4 * l);
            let wjj = qchar::w_character(l, j, j, cut).unwrap().series;
            assert_eq!(wjj.offset(), Some(top), "W_{l}({j},{j})");
            assert_eq!(wjj.coeff(top), BigInt::one());
        }
    }
}

// -------------------------------------------------------------- positivity

#[test]
fn commutant_characters_are_positive_with_integral_weights() {
    let cut = Exp::from(8);
    let e7 = qchar::e7_commutant_character(cut).unwrap();
    let e6 = qchar::e6_commutant_character(cut).unwrap();
    for (name, s, w2) in [("M_E7", &e7, 63), ("M_E6", &e6, 36)] {
        assert!(s.is_nonnegative() && s.has_integral_exponents(), "{name}");
        assert_eq!(s.coeff(Exp::zero()), BigInt::one(), "{name}");
        assert_eq!(s.coeff(Exp::one()), BigInt::zero(), "{name}");
        assert_eq!(s.coeff(Exp::from(2)), BigInt::from(w2), "{name}");
    }
    for n in 1..=7i64 {
        for two_s in (0..=n + 1).step_by(2) {
            let ch = qchar::man_character(n, two_s, cut).unwrap();
            assert!(ch.is_nonnegative(), "M_A{n}({two_s})");
        }
        let vac = qchar::man_character(n, 0, cut).unwrap();
        assert_eq!(vac.coeff(Exp::zero()), BigInt::one(), "M_A{n} vacuum");
    }
}

#[test]
fn every_identity_holds_at_the_default_depth() {
    let report = qchar::verify_decompositions(8).unwrap();
    assert_eq!(report.identities.len(), qchar::IDENTITIES.len());
    for c in &report.identities {
        assert!(c.passed(), "{}: {:?}", c.identity, c.first_mismatch);
    }
    assert!(qchar::verify_decompositions(3).is_err());
    assert!(qchar::verify_selected(&["no_such_identity"], 8, Default::default()).is_err());
}
