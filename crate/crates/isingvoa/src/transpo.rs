//! Miyamoto involutions as permutations of a census, stabilizer chains, and
//! the 3-transposition / Fischer-space analysis.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::One;

use crate::census::{one_32, IsingCensus};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i as u32 == v)
}

/// `a` then `b`: i ↦ b(a(i)).
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(a: &[u32]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

pub fn is_permutation(a: &[u32]) -> bool {
    let mut seen = vec![false; a.len()];
    a.iter().all(|&x| (x as usize) < a.len() && !std::mem::replace(&mut seen[x as usize], true))
}

/// Order of a permutation (lcm of cycle lengths).
pub fn perm_order(a: &[u32]) -> BigUint {
    let mut seen = vec![false; a.len()];
    let mut order = BigUint::one();
    for s in 0..a.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = a[x] as usize;
            len += 1;
        }
        order = num_integer::lcm(order, BigUint::from(len));
    }
    order
}

// ---------------------------------------------------------------- σ permutations

/// One involution per census point: σ_e fixes its gram-0 partners and sends a
/// 1/32-partner f to e + f − 4e·f.
pub fn sigma_permutations(census: &IsingCensus) -> Result<Vec<Perm>> {
    sigma_permutations_with(census, Exec::default())
}

pub fn sigma_permutations_with(census: &IsingCensus, exec: Exec) -> Result<Vec<Perm>> {
    let index = census.element_index();
    let perms: Vec<Perm> = par::map_range(exec, census.len(), |i| {
        census.sigma_of(i, &index).map(|v| v.into_iter().map(|x| x as u32).collect())
    })
    .into_iter()
    .collect::<Result<_>>()?;
    for (i, p) in perms.iter().enumerate() {
        if !is_permutation(p) || !is_identity(&compose(p, p)) {
            return Err(Error::NotClosed(format!("σ of point {i} is not an involution")));
        }
    }
    let every_point_moves = (0..census.len()).all(|i| census.partners(i).map(|p| !p.is_empty()).unwrap_or(false));
    if every_point_moves {
        let distinct: BTreeSet<&Perm> = perms.iter().collect();
        if distinct.len() != perms.len() {
            return Err(Error::IdentityFailed("σ is not injective on the census".into()));
        }
    }
    Ok(perms)
}

/// Checks σ_i(j) against a σ table without realizations: for a table that came
/// from elsewhere, the gram matrix must be preserved.
pub fn preserves_gram(census: &IsingCensus, p: &[u32]) -> Result<bool> {
    for i in 0..census.len() {
        for j in i..census.len() {
            if census.gram(i, j)? != census.gram(p[i] as usize, p[j] as usize)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------- stabilizer chain

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    rep: Vec<Option<(Perm, Perm)>>,
    /// done[k]: orbit positions already checked against gens[k]
    done: Vec<usize>,
}

/// Base and strong generating set, built by deterministic Schreier–Sims with
/// base points chosen as the smallest moved point.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    n: usize,
    generators: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    pub fn new(n: usize) -> Self {
        PermutationGroup { n, generators: Vec::new(), strong: Vec::new(), levels: Vec::new() }
    }

    pub fn from_generators(n: usize, gens: &[Perm]) -> Self {
        let mut g = Self::new(n);
        for p in gens {
            g.add_generator(p);
        }
        g
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Generators that were not already in the group when offered.
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        let (r, _) = self.strip(g.to_vec(), 0);
        is_identity(&r)
    }

    /// Adds `g` if it is not already a member; returns whether it was new.
    pub fn add_generator(&mut self, g: &[u32]) -> bool {
        assert_eq!(g.len(), self.n, "permutation degree");
        let (r, j) = self.strip(g.to_vec(), 0);
        if is_identity(&r) {
            return false;
        }
        self.generators.push(g.to_vec());
        self.insert(r, 0, j);
        self.complete(j);
        true
    }

    fn strip(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for (l, lvl) in self.levels.iter().enumerate().skip(from) {
            let p = h[lvl.base as usize] as usize;
            match &lvl.rep[p] {
                None => return (h, l),
                Some((_, inv)) => h = compose(&h, inv),
            }
        }
        (h, self.levels.len())
    }

    fn insert(&mut self, r: Perm, lo: usize, j: usize) {
        let idx = self.strong.len();
        if j == self.levels.len() {
            let base = r.iter().enumerate().position(|(i, &v)| i as u32 != v).expect("nontrivial") as u32;
            let mut rep = vec![None; self.n];
            rep[base as usize] = Some((identity(self.n), identity(self.n)));
            self.levels.push(Level { base, gens: Vec::new(), orbit: vec![base], rep, done: Vec::new() });
        }
        self.strong.push(r);
        for l in lo..=j {
            self.levels[l].gens.push(idx);
            self.levels[l].done.push(0);
            self.extend_orbit(l);
        }
    }

    fn extend_orbit(&mut self, l: usize) {
        let strong = &self.strong;
        let lvl = &mut self.levels[l];
        let mut pos = 0;
        while pos < lvl.orbit.len() {
            let p = lvl.orbit[pos] as usize;
            for &gi in &lvl.gens {
                let g = &strong[gi];
                let q = g[p] as usize;
                if lvl.rep[q].is_none() {
                    let u = compose(&lvl.rep[p].as_ref().unwrap().0, g);
                    let ui = inverse(&u);
                    lvl.rep[q] = Some((u, ui));
                    lvl.orbit.push(q as u32);
                }
            }
            pos += 1;
        }
    }

    fn next_failure(&mut self, i: usize) -> Option<(Perm, usize)> {
        loop {
            let lvl = &self.levels[i];
            let slot = (0..lvl.gens.len()).find(|&k| lvl.done[k] < lvl.orbit.len())?;
            let pos = lvl.done[slot];
            self.levels[i].done[slot] += 1;
            let lvl = &self.levels[i];
            let p = lvl.orbit[pos] as usize;
            let s = &self.strong[lvl.gens[slot]];
            let q = s[p] as usize;
            let u = &lvl.rep[p].as_ref().unwrap().0;
            let vinv = &lvl.rep[q].as_ref().unwrap().1;
            let h = compose(&compose(u, s), vinv);
            let (r, j) = self.strip(h, i + 1);
            if !is_identity(&r) {
                return Some((r, j));
            }
        }
    }

    fn complete(&mut self, start: usize) {
        let mut i = start.min(self.levels.len().saturating_sub(1)) as isize;
        while i >= 0 {
            match self.next_failure(i as usize) {
                Some((r, j)) => {
                    self.insert(r, i as usize + 1, j);
                    i = j as isize;
                    if i as usize >= self.levels.len() {
                        i = self.levels.len() as isize - 1;
                    }
                }
                None => i -= 1,
            }
        }
    }
}

/// Exact group order from a base and strong generating set.
pub fn group_order(n: usize, perms: &[Perm]) -> BigUint {
    PermutationGroup::from_generators(n, perms).order()
}

// ---------------------------------------------------------------- 3-transpositions

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranspositionCheck {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

fn product_order_at_most_3(a: &[u32], b: &[u32]) -> bool {
    // p = a·b has order 1, 2 or 3 iff p² = 1 or p³ = 1
    let p = compose(a, b);
    let p2 = compose(&p, &p);
    is_identity(&p2) || is_identity(&compose(&p2, &p))
}

pub fn is_3transposition(perms: &[Perm]) -> TranspositionCheck {
    is_3transposition_with(perms, Exec::default())
}

pub fn is_3transposition_with(perms: &[Perm], exec: Exec) -> TranspositionCheck {
    let bad: Vec<Option<(usize, usize)>> = par::map_range(exec, perms.len(), |i| {
        (i + 1..perms.len()).find(|&j| !product_order_at_most_3(&perms[i], &perms[j])).map(|j| (i, j))
    });
    let witness = bad.into_iter().flatten().next();
    TranspositionCheck { holds: witness.is_none(), witness }
}

// ---------------------------------------------------------------- Fischer spaces

#[derive(Debug, Clone)]
pub struct FischerSpace {
    pub points: usize,
    pub lines: Vec<[usize; 3]>,
    /// third[x][y] = σ_x(y)
    third: Vec<Vec<u32>>,
}

impl FischerSpace {
    pub fn collinear(&self, x: usize, y: usize) -> bool {
        x != y && self.third[x][y] as usize != y
    }

    pub fn lines_through(&self, x: usize) -> usize {
        self.lines.iter().filter(|l| l.contains(&x)).count()
    }

    /// Smallest subspace (closed under completing lines) containing `seed`.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.points];
        let mut pts: Vec<usize> = Vec::new();
        for &s in seed {
            if !std::mem::replace(&mut inside[s], true) {
                pts.push(s);
            }
        }
        let mut k = 0;
        while k < pts.len() {
            let x = pts[k];
            for idx in 0..k {
                let y = pts[idx];
                let z = self.third[x][y] as usize;
                if z != y && !inside[z] {
                    inside[z] = true;
                    pts.push(z);
                }
            }
            k += 1;
        }
        pts.sort();
        pts
    }
}

pub fn fischer_space(sigmas: &[Perm]) -> Result<FischerSpace> {
    let n = sigmas.len();
    let mut lines = BTreeSet::new();
    for x in 0..n {
        if sigmas[x].len() != n {
            return Err(Error::Precondition("σ table must act on its own index set".into()));
        }
        for y in 0..n {
            let z = sigmas[x][y] as usize;
            if x == y || z == y {
                continue;
            }
            if z == x || sigmas[y][x] as usize != z || sigmas[z][x] as usize != y {
                return Err(Error::Precondition(format!("points {x},{y} do not span a line")));
            }
            let mut l = [x, y, z];
            l.sort();
            lines.insert(l);
        }
    }
    let third = sigmas.to_vec();
    Ok(FischerSpace { points: n, lines: lines.into_iter().collect(), third })
}

/// Every pair of distinct intersecting lines generates a 6-point subspace.
pub fn is_symplectic_type(space: &FischerSpace) -> bool {
    is_symplectic_type_with(space, Exec::default())
}

pub fn is_symplectic_type_with(space: &FischerSpace, exec: Exec) -> bool {
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); space.points];
    for (k, l) in space.lines.iter().enumerate() {
        for &p in l {
            through[p].push(k);
        }
    }
    let ok = par::map_range(exec, space.points, |p| {
        let ls = &through[p];
        for (a, &i) in ls.iter().enumerate() {
            for &j in &ls[a + 1..] {
                let mut seed: Vec<usize> = space.lines[i].to_vec();
                seed.extend(space.lines[j]);
                if space.closure(&seed).len() != 6 {
                    return false;
                }
            }
        }
        true
    });
    ok.into_iter().all(|b| b)
}

/// `X_{x,y} ≠ ∅` for distinct x,y, and `X_{x,y}^⊥ = {x,y,y^x}` for collinear x,y,
/// where ⊥ means distinct and commuting.
pub fn perp_hypotheses(space: &FischerSpace) -> bool {
    let n = space.points;
    let words = n.div_ceil(64);
    let mut perp = vec![vec![0u64; words]; n];
    for x in 0..n {
        for y in 0..n {
            if x != y && !space.collinear(x, y) {
                perp[x][y / 64] |= 1 << (y % 64);
            }
        }
    }
    let ok = par::map_range(Exec::default(), n, |x| {
        for y in 0..n {
            if x == y {
                continue;
            }
            let xy: Vec<u64> = perp[x].iter().zip(&perp[y]).map(|(a, b)| a & b).collect();
            if xy.iter().all(|&w| w == 0) {
                return false;
            }
            if space.collinear(x, y) {
                let mut got = Vec::new();
                for z in 0..n {
                    if xy.iter().zip(&perp[z]).all(|(a, b)| a & !b == 0) {
                        got.push(z);
                    }
                }
                let mut want = vec![x, y, space.third[x][y] as usize];
                want.sort();
                if got != want {
                    return false;
                }
            }
        }
        true
    });
    ok.into_iter().all(|b| b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inductive {
    pub d1: Vec<usize>,
    pub d2: Vec<usize>,
    pub d1_order: BigUint,
    pub d2_order: BigUint,
}

fn commute(a: &[u32], b: &[u32]) -> bool {
    compose(a, b) == compose(b, a)
}

/// D^(1): points ≠ x whose σ commutes with σ_x; D^(2): those commuting with σ_x and σ_y.
pub fn inductive_structure(sigmas: &[Perm], x: usize, y: usize) -> Result<Inductive> {
    if commute(&sigmas[x], &sigmas[y]) {
        return Err(Error::Precondition(format!("σ_{x} and σ_{y} commute")));
    }
    let n = sigmas.len();
    let d1: Vec<usize> = (0..n).filter(|&z| z != x && commute(&sigmas[x], &sigmas[z])).collect();
    let d2: Vec<usize> = d1.iter().copied().filter(|&z| commute(&sigmas[y], &sigmas[z])).collect();
    let deg = sigmas[0].len();
    let gens = |s: &[usize]| s.iter().map(|&z| sigmas[z].clone()).collect::<Vec<_>>();
    Ok(Inductive { d1_order: group_order(deg, &gens(&d1)), d2_order: group_order(deg, &gens(&d2)), d1, d2 })
}

// ---------------------------------------------------------------- frames

pub const FRAME_STATE_CAP: usize = 2_000_000;

/// Shortest word w = [p1, p2, …] with σ_{pk}∘…∘σ_{p1}(A) = B as sets.
pub fn frame_conjugator(census: &IsingCensus, sigmas: &[Perm], a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    for f in [a, b] {
        for (k, &i) in f.iter().enumerate() {
            for &j in &f[k + 1..] {
                if census.gram(i, j)? != num_rational::Ratio::from(0) {
                    return Err(Error::Precondition("frame points are not pairwise orthogonal".into()));
                }
            }
        }
    }
    if a.len() != b.len() {
        return Err(Error::Precondition("frames of different sizes".into()));
    }
    let key = |f: &[usize]| {
        let mut v: Vec<u32> = f.iter().map(|&x| x as u32).collect();
        v.sort();
        v
    };
    let start = key(a);
    let goal = key(b);
    let mut prev: HashMap<Vec<u32>, Option<(Vec<u32>, usize)>> = HashMap::new();
    prev.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        if cur == goal {
            let mut word = Vec::new();
            let mut c = cur;
            while let Some(Some((p, g))) = prev.get(&c).cloned() {
                word.push(g);
                c = p;
            }
            word.reverse();
            return Ok(word);
        }
        for (g, s) in sigmas.iter().enumerate() {
            let mut img: Vec<u32> = cur.iter().map(|&x| s[x as usize]).collect();
            img.sort();
            if !prev.contains_key(&img) {
                if prev.len() >= FRAME_STATE_CAP {
                    return Err(Error::Exhausted(format!("more than {FRAME_STATE_CAP} frame images")));
                }
                prev.insert(img.clone(), Some((cur.clone(), g)));
                queue.push_back(img);
            }
        }
    }
    Err(Error::Exhausted("frames lie in different orbits".into()))
}

/// Points whose gram row has a 1/32 entry.
pub fn moved_points(census: &IsingCensus) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..census.len() {
        for j in 0..census.len() {
            if census.gram(i, j)? == one_32() {
                out.push(i);
                break;
            }
        }
    }
    Ok(out)
}

/// Classical orders used as oracles.
pub mod classical {
    use num_bigint::BigUint;

    fn p2(k: u32) -> BigUint {
        BigUint::from(2u32).pow(k)
    }

    /// |Sp_{2n}(2)|.
    pub fn sp(n: u32) -> BigUint {
        let mut o = p2(n * n);
        for i in 1..=n {
            o *= p2(2 * i) - 1u32;
        }
        o
    }

    /// |Ω^ε_{2n}(2)| (index 2 in the full orthogonal group O^ε_{2n}(2)).
    pub fn omega(n: u32, plus: bool) -> BigUint {
        let mut o = p2(n * (n - 1));
        o *= if plus { p2(n) - 1u32 } else { p2(n) + 1u32 };
        for i in 1..n {
            o *= p2(2 * i) - 1u32;
        }
        o
    }

    /// |O^ε_{2n}(2)| = 2|Ω^ε_{2n}(2)|.
    pub fn orthogonal(n: u32, plus: bool) -> BigUint {
        omega(n, plus) * 2u32
    }
}
