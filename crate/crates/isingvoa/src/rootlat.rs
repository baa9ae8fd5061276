//! ADE root lattices in explicit coordinates.
//!
//! Vectors are stored with doubled coordinates (`Vec<i32>`), so half-integers
//! are exact and `⟨u,v⟩ = dot(u,v)/4`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Vector = Vec<i32>;

pub fn dot4(u: &[i32], v: &[i32]) -> i64 {
    u.iter().zip(v).map(|(&a, &b)| a as i64 * b as i64).sum()
}

/// ⟨u,v⟩ for doubled coordinates; panics in debug builds if not integral.
pub fn ip(u: &[i32], v: &[i32]) -> i64 {
    let d = dot4(u, v);
    debug_assert!(d % 4 == 0, "non-integral inner product");
    d / 4
}

pub fn norm(v: &[i32]) -> i64 {
    ip(v, v)
}

pub fn neg(v: &[i32]) -> Vector {
    v.iter().map(|x| -x).collect()
}

pub fn add(u: &[i32], v: &[i32]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[i32], v: &[i32]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Lexicographically positive: first nonzero coordinate is positive.
pub fn is_positive(v: &[i32]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Canonical representative of {v, -v}: the lexicographically larger one.
pub fn canonical_pair(v: &[i32]) -> Vector {
    if is_positive(v) {
        v.to_vec()
    } else {
        neg(v)
    }
}

/// Formats doubled coordinates as rationals, e.g. `(1/2,-1/2,0,...)`.
pub fn format_vector(v: &[i32]) -> String {
    let parts: Vec<String> =
        v.iter().map(|&x| if x % 2 == 0 { (x / 2).to_string() } else { format!("{x}/2") }).collect();
    format!("({})", parts.join(","))
}

/// Parses a comma list of integers or halves (`1/2`, `-3/2`) into doubled coordinates.
pub fn parse_vector(s: &str) -> Result<Vector> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    body.split(',')
        .map(|t| {
            let t = t.trim();
            let bad = || Error::Parse(format!("bad coordinate {t:?}"));
            if let Some(num) = t.strip_suffix("/2") {
                num.parse::<i32>().map_err(|_| bad())
            } else {
                t.parse::<i32>().map(|x| 2 * x).map_err(|_| bad())
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Simple {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl Simple {
    pub fn rank(self) -> usize {
        match self {
            Simple::A(n) | Simple::D(n) => n,
            Simple::E6 => 6,
            Simple::E7 => 7,
            Simple::E8 => 8,
        }
    }

    fn ambient(self) -> usize {
        match self {
            Simple::A(n) => n + 1,
            Simple::D(n) => n,
            _ => 8,
        }
    }

    pub fn root_count(self) -> usize {
        match self {
            Simple::A(n) => n * (n + 1),
            Simple::D(n) => 2 * n * (n - 1),
            Simple::E6 => 72,
            Simple::E7 => 126,
            Simple::E8 => 240,
        }
    }

    /// |W(R)|.
    pub fn weyl_order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            Simple::A(n) => fact(n + 1),
            Simple::D(n) => (1u128 << (n - 1)) * fact(n),
            Simple::E6 => 51_840,
            Simple::E7 => 2_903_040,
            Simple::E8 => 696_729_600,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Simple::A(n) if n >= 1 => Ok(()),
            Simple::D(n) if n >= 4 => Ok(()),
            Simple::A(_) | Simple::D(_) => Err(Error::Lattice(format!("{self} is not a valid ADE type"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simple::A(n) => write!(f, "A{n}"),
            Simple::D(n) => write!(f, "D{n}"),
            Simple::E6 => write!(f, "E6"),
            Simple::E7 => write!(f, "E7"),
            Simple::E8 => write!(f, "E8"),
        }
    }
}

/// Parses tags like `A3`, `D6`, `E8`, `E8+E8`, `A1+A1`.
pub fn parse_kind(tag: &str) -> Result<Vec<Simple>> {
    tag.split('+')
        .map(|t| {
            let t = t.trim().to_ascii_uppercase();
            let bad = || Error::Lattice(format!("unknown lattice tag {t:?}"));
            if t.len() < 2 {
                return Err(bad());
            }
            let n: usize = t[1..].parse().map_err(|_| bad())?;
            let s = match (&t[..1], n) {
                ("A", n) => Simple::A(n),
                ("D", n) => Simple::D(n),
                ("E", 6) => Simple::E6,
                ("E", 7) => Simple::E7,
                ("E", 8) => Simple::E8,
                _ => return Err(bad()),
            };
            s.validate()?;
            Ok(s)
        })
        .collect()
}

fn simple_roots_model(kind: Simple) -> Vec<Vector> {
    let d = kind.ambient();
    let unit = |i: usize, s: i32| {
        let mut v = vec![0; d];
        v[i] = 2 * s;
        v
    };
    let mut roots = Vec::new();
    match kind {
        Simple::A(_) => {
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        roots.push(add(&unit(i, 1), &unit(j, -1)));
                    }
                }
            }
        }
        Simple::D(_) | Simple::E8 | Simple::E7 | Simple::E6 => {
            for i in 0..d {
                for j in i + 1..d {
                    for s in [1, -1] {
                        for t in [1, -1] {
                            roots.push(add(&unit(i, s), &unit(j, t)));
                        }
                    }
                }
            }
            if !matches!(kind, Simple::D(_)) {
                for signs in 0u32..256 {
                    if signs.count_ones() % 2 == 0 {
                        roots.push((0..8).map(|k| if signs >> k & 1 == 1 { -1 } else { 1 }).collect());
                    }
                }
            }
            match kind {
                Simple::E7 => roots.retain(|r| r.iter().sum::<i32>() == 0),
                Simple::E6 => {
                    roots.retain(|r| r.iter().sum::<i32>() == 0 && r[0] + r[7] == 0 && r[1..7].iter().sum::<i32>() == 0)
                }
                _ => {}
            }
        }
    }
    roots
}

#[derive(Debug, Clone)]
pub struct RootLattice {
    kind: Vec<Simple>,
    dim: usize,
    roots: Vec<Vector>,
    positive: Vec<usize>,
    simple: Vec<usize>,
    gram: Vec<Vec<i64>>,
    /// Index (into `roots`) of each root's component.
    component: Vec<usize>,
    index: BTreeMap<Vector, usize>,
}

impl RootLattice {
    pub fn build(kind: &[Simple]) -> Result<RootLattice> {
        if kind.is_empty() {
            return Err(Error::Lattice("empty direct sum".into()));
        }
        let dim: usize = kind.iter().map(|k| k.ambient()).sum();
        let mut roots = Vec::new();
        let mut component = Vec::new();
        let mut offset = 0;
        for (c, &k) in kind.iter().enumerate() {
            k.validate()?;
            for r in simple_roots_model(k) {
                let mut v = vec![0; dim];
                v[offset..offset + r.len()].copy_from_slice(&r);
                roots.push(v);
                component.push(c);
            }
            offset += k.ambient();
        }
        Ok(Self::assemble(kind.to_vec(), dim, roots, component))
    }

    pub fn from_tag(tag: &str) -> Result<RootLattice> {
        Self::build(&parse_kind(tag)?)
    }

    /// A root sublattice given by explicit roots in an ambient model.
    pub fn from_roots(kind: Vec<Simple>, dim: usize, mut roots: Vec<Vector>) -> Result<RootLattice> {
        roots.sort();
        roots.dedup();
        let expect: usize = kind.iter().map(|k| k.root_count()).sum();
        if roots.len() != expect {
            return Err(Error::Lattice(format!("{} roots given for a lattice with {expect}", roots.len())));
        }
        // components: connected pieces of the non-orthogonality graph
        let n = roots.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = next;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if comp[j] == usize::MAX && ip(&roots[i], &roots[j]) != 0 {
                        comp[j] = next;
                        stack.push(j);
                    }
                }
            }
            next += 1;
        }
        if next != kind.len() {
            return Err(Error::Lattice(format!("{next} components, expected {}", kind.len())));
        }
        Ok(Self::assemble(kind, dim, roots, comp))
    }

    fn assemble(kind: Vec<Simple>, dim: usize, roots: Vec<Vector>, component: Vec<usize>) -> RootLattice {
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by(|&a, &b| roots[b].cmp(&roots[a]));
        let roots: Vec<Vector> = order.iter().map(|&i| roots[i].clone()).collect();
        let component: Vec<usize> = order.iter().map(|&i| component[i]).collect();
        let index: BTreeMap<Vector, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let positive: Vec<usize> = (0..roots.len()).filter(|&i| is_positive(&roots[i])).collect();
        let mut sums = std::collections::BTreeSet::new();
        for (a, &i) in positive.iter().enumerate() {
            for &j in &positive[a + 1..] {
                sums.insert(add(&roots[i], &roots[j]));
            }
        }
        // simple roots ordered by component then ascending lexicographic order
        let mut simple: Vec<usize> = positive.iter().copied().filter(|&i| !sums.contains(&roots[i])).collect();
        simple.sort_by(|&a, &b| component[a].cmp(&component[b]).then(roots[a].cmp(&roots[b])));
        let gram = simple.iter().map(|&i| simple.iter().map(|&j| ip(&roots[i], &roots[j])).collect()).collect();
        RootLattice { kind, dim, roots, positive, simple, gram, component, index }
    }

    pub fn kind(&self) -> &[Simple] {
        &self.kind
    }

    pub fn tag(&self) -> String {
        self.kind.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("+")
    }

    pub fn is_simple(&self) -> bool {
        self.kind.len() == 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// All roots, sorted in descending lexicographic order.
    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn root_index(&self, v: &[i32]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[i32]) -> bool {
        self.index.contains_key(v)
    }

    /// Positive roots = canonical root-pair representatives.
    pub fn positive_roots(&self) -> Vec<&Vector> {
        self.positive.iter().map(|&i| &self.roots[i]).collect()
    }

    pub fn simple_roots(&self) -> Vec<&Vector> {
        self.simple.iter().map(|&i| &self.roots[i]).collect()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn component_of_root(&self, i: usize) -> usize {
        self.component[i]
    }

    /// Coxeter number |Φ|/ℓ, defined for indecomposable lattices.
    pub fn coxeter_number(&self) -> Result<usize> {
        if !self.is_simple() {
            return Err(Error::Lattice(format!("{} is decomposable", self.tag())));
        }
        Ok(self.roots.len() / self.rank())
    }

    /// Coordinates of `v` in the simple-root basis, if `v` lies in the rational span.
    pub fn simple_coordinates(&self, v: &[i32]) -> Option<Vec<Ratio<i64>>> {
        let l = self.rank();
        let simple = self.simple_roots();
        let rhs: Vec<Ratio<i64>> = simple.iter().map(|a| Ratio::new(dot4(v, a), 4)).collect();
        let g: Vec<Vec<Ratio<i64>>> = self.gram.iter().map(|r| r.iter().map(|&x| Ratio::from(x)).collect()).collect();
        let c = solve(g, rhs)?;
        let mut back = vec![Ratio::zero(); self.dim];
        for (ci, a) in c.iter().zip(&simple) {
            for (b, &x) in back.iter_mut().zip(a.iter()) {
                *b += *ci * Ratio::from(x as i64);
            }
        }
        let ok = back.iter().zip(v).all(|(b, &x)| *b == Ratio::from(x as i64));
        debug_assert_eq!(c.len(), l);
        ok.then_some(c)
    }

    /// Lattice membership: integral coordinates in the simple-root basis.
    pub fn contains(&self, v: &[i32]) -> bool {
        self.simple_coordinates(v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// r_α(v) = v − ⟨v,α⟩α.
    pub fn weyl_reflect(&self, alpha: &[i32], v: &[i32]) -> Result<Vector> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot(format_vector(alpha)));
        }
        Ok(reflect(alpha, v))
    }
}

pub fn reflect(alpha: &[i32], v: &[i32]) -> Vector {
    let c = dot4(v, alpha);
    debug_assert!(c % 4 == 0);
    let c = (c / 4) as i32;
    v.iter().zip(alpha).map(|(&x, &a)| x - c * a).collect()
}

/// Gauss–Jordan over Ratio<i64>; None if singular.
fn solve(mut a: Vec<Vec<Ratio<i64>>>, mut b: Vec<Ratio<i64>>) -> Option<Vec<Ratio<i64>>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = Ratio::one() / a[col][col];
        for k in col..n {
            a[col][k] *= inv;
        }
        b[col] *= inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for k in col..n {
                    let t = a[col][k];
                    a[r][k] -= f * t;
                }
                let t = b[col];
                b[r] -= f * t;
            }
        }
    }
    Some(b)
}

// ---------------------------------------------------------------- E8 / 2E8

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassKind {
    Zero,
    RootPair,
    Frame,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod2Class {
    pub kind: ClassKind,
    /// Lexicographically largest minimal vector.
    pub representative: Vector,
    /// All vectors of minimal norm in the class.
    pub minimal: Vec<Vector>,
}

impl Mod2Class {
    /// (−1)^{⟨x,α⟩} as a parity bit.
    pub fn parity(&self, alpha: &[i32]) -> bool {
        ip(&self.representative, alpha) & 1 == 1
    }
}

/// Membership in the standard E8 model (doubled coordinates).
pub fn in_e8(v: &[i32]) -> bool {
    if v.len() != 8 {
        return false;
    }
    let s: i32 = v.iter().sum();
    if v.iter().all(|x| x.is_even()) {
        (s / 2).is_even()
    } else if v.iter().all(|x| x.is_odd()) {
        s % 4 == 0
    } else {
        false
    }
}

fn e8_vectors_up_to_norm4() -> Vec<Vector> {
    fn rec(prefix: &mut Vec<i32>, budget: i32, choices: &[i32], out: &mut Vec<Vector>) {
        if prefix.len() == 8 {
            if in_e8(prefix) {
                out.push(prefix.clone());
            }
            return;
        }
        for &c in choices {
            let cost = c * c;
            if cost <= budget {
                prefix.push(c);
                rec(prefix, budget - cost, choices, out);
                prefix.pop();
            }
        }
    }
    // doubled coords; norm·4 = Σ d² ≤ 16
    let mut out = Vec::new();
    rec(&mut Vec::new(), 16, &[-4, -2, 0, 2, 4], &mut out);
    rec(&mut Vec::new(), 16, &[-3, -1, 1, 3], &mut out);
    out
}

/// The 256 classes of E8/2E8, ordered zero, root pairs, frames; each group by
/// descending representative.
pub fn mod2_classes(l: &RootLattice) -> Result<Vec<Mod2Class>> {
    if l.kind() != [Simple::E8] {
        return Err(Error::Lattice(format!("mod-2 classes need E8, got {}", l.tag())));
    }
    let mut vecs = e8_vectors_up_to_norm4();
    vecs.sort_by_key(|v| norm(v));
    let mut classes: Vec<(Vector, Vec<Vector>)> = Vec::new();
    for v in vecs {
        let found = classes.iter_mut().find(|(rep, _)| {
            let d: Vector = sub(&v, rep).iter().map(|x| x / 2).collect();
            sub(&v, rep).iter().all(|x| x % 2 == 0) && in_e8(&d)
        });
        match found {
            Some((rep, members)) => {
                if norm(&v) == norm(rep) {
                    members.push(v)
                }
            }
            None => classes.push((v.clone(), vec![v])),
        }
    }
    let mut out: Vec<Mod2Class> = classes
        .into_iter()
        .map(|(rep, mut members)| {
            members.sort_by(|a, b| b.cmp(a));
            let kind = match norm(&rep) {
                0 => ClassKind::Zero,
                2 => ClassKind::RootPair,
                _ => ClassKind::Frame,
            };
            Mod2Class { kind, representative: members[0].clone(), minimal: members }
        })
        .collect();
    out.sort_by(|a, b| a.kind.cmp(&b.kind).then(b.representative.cmp(&a.representative)));
    Ok(out)
}

pub fn class_census(classes: &[Mod2Class]) -> (usize, usize, usize) {
    let c = |k| classes.iter().filter(|x| x.kind == k).count();
    (c(ClassKind::Zero), c(ClassKind::RootPair), c(ClassKind::Frame))
}

// ---------------------------------------------------------------- sublattices

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingName {
    A1E7InE8,
    A7InE7,
    A5A1InE6,
}

impl EmbeddingName {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A1_E7_in_E8" => Ok(Self::A1E7InE8),
            "A7_in_E7" | "A7_in_E7_with_xi" => Ok(Self::A7InE7),
            "A5_A1_in_E6" | "A5_A1_in_E6_with_xi" => Ok(Self::A5A1InE6),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SublatticeEmbedding {
    pub ambient: RootLattice,
    /// Orthogonal root sublattices, all in the ambient coordinates.
    pub parts: Vec<RootLattice>,
    /// Glue vector with ambient = L ∪ (ξ + L), where present.
    pub glue: Option<Vector>,
    /// Further named vectors (α0, ξ1, ξ2).
    pub named: Vec<(&'static str, Vector)>,
}

impl SublatticeEmbedding {
    /// Whether `v` lies in the orthogonal sum of the parts.
    pub fn in_sum(&self, v: &[i32]) -> bool {
        let mut rest = v.to_vec();
        for p in &self.parts {
            // orthogonal projection onto span(p) is its own integral test
            let simple = p.simple_roots();
            let rhs: Vec<Ratio<i64>> = simple.iter().map(|a| Ratio::new(dot4(v, a), 4)).collect();
            let g: Vec<Vec<Ratio<i64>>> =
                p.gram().iter().map(|r| r.iter().map(|&x| Ratio::from(x)).collect()).collect();
            let Some(c) = solve(g, rhs) else { return false };
            if !c.iter().all(|x| x.is_integer()) {
                return false;
            }
            for (ci, a) in c.iter().zip(&simple) {
                let k = ci.to_integer() as i32;
                for (r, &x) in rest.iter_mut().zip(a.iter()) {
                    *r -= k * x;
                }
            }
        }
        rest.iter().all(|&x| x == 0)
    }
}

pub fn sublattice_embedding(name: EmbeddingName) -> Result<SublatticeEmbedding> {
    let half = |signs: &[i32]| -> Vector { signs.to_vec() };
    match name {
        EmbeddingName::A1E7InE8 => {
            let e8 = RootLattice::build(&[Simple::E8])?;
            let a0: Vector = vec![1; 8];
            let a1 = RootLattice::from_roots(vec![Simple::A(1)], 8, vec![a0.clone(), neg(&a0)])?;
            let perp: Vec<Vector> = e8.roots().iter().filter(|r| dot4(r, &a0) == 0).cloned().collect();
            let e7 = RootLattice::from_roots(vec![Simple::E7], 8, perp)?;
            Ok(SublatticeEmbedding { ambient: e8, parts: vec![a1, e7], glue: None, named: vec![("alpha0", a0)] })
        }
        EmbeddingName::A7InE7 => {
            let e7 = RootLattice::build(&[Simple::E7])?;
            let n: Vec<Vector> = e7.roots().iter().filter(|r| r.iter().all(|x| x % 2 == 0)).cloned().collect();
            let a7 = RootLattice::from_roots(vec![Simple::A(7)], 8, n)?;
            let xi = half(&[1, 1, 1, 1, -1, -1, -1, -1]);
            Ok(SublatticeEmbedding { ambient: e7, parts: vec![a7], glue: Some(xi.clone()), named: vec![("xi", xi)] })
        }
        EmbeddingName::A5A1InE6 => {
            let e6 = RootLattice::build(&[Simple::E6])?;
            let l1: Vec<Vector> = e6.roots().iter().filter(|r| r[0] == 0 && r[7] == 0).cloned().collect();
            let l2: Vec<Vector> = e6.roots().iter().filter(|r| r[1..7].iter().all(|&x| x == 0)).cloned().collect();
            let a5 = RootLattice::from_roots(vec![Simple::A(5)], 8, l1)?;
            let a1 = RootLattice::from_roots(vec![Simple::A(1)], 8, l2)?;
            let xi = half(&[1, 1, 1, 1, -1, -1, -1, -1]);
            let xi1 = half(&[0, 1, 1, 1, -1, -1, -1, 0]);
            let xi2 = half(&[1, 0, 0, 0, 0, 0, 0, -1]);
            Ok(SublatticeEmbedding {
                ambient: e6,
                parts: vec![a5, a1],
                glue: Some(xi.clone()),
                named: vec![("xi", xi), ("xi1", xi1), ("xi2", xi2)],
            })
        }
    }
}
