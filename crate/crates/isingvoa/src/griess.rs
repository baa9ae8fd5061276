//! The weight-2 Griess algebra of V_{√2R}^+.
//!
//! Elements are kept as a symmetric tensor `T` over the ambient orthonormal
//! coordinates (the Cartan part, `Σ T_ij e_i e_j`) plus one coefficient per root
//! pair for `X_α = e^{√2α} + e^{−√2α}`, all over a common integer denominator.
//! The `CartanPair(i,j)` basis on simple roots is produced on demand.
//!
//! Structure constants (with `(αα)` standing for `α_{(-1)}^2 1`):
//!
//! ```text
//! (hh')(kk') = ⟨h,k⟩h'k' + ⟨h,k'⟩h'k + ⟨h',k⟩hk' + ⟨h',k'⟩hk
//! (hh') X_α  = 2⟨h,α⟩⟨h',α⟩ X_α
//! X_α X_α    = 2(αα)
//! X_α X_β    = ε X_{α∓β}   when ⟨α,β⟩ = ±1, else 0
//! ```

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootlat::{self, canonical_pair, dot4, ip, Mod2Class, RootLattice, Vector};

pub type Q = Ratio<i128>;

pub const DIM_GUARD: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    CartanPair(usize, usize),
    PairVector(Vector),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::CartanPair(i, j) => write!(f, "h{}h{}", i + 1, j + 1),
            BasisLabel::PairVector(v) => write!(f, "x{}", rootlat::format_vector(v)),
        }
    }
}

/// A Griess algebra element: `(t, x) / den` with `den > 0` and the entries coprime to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GriessElement {
    t: Vec<i128>,
    x: Vec<i128>,
    den: i128,
}

impl GriessElement {
    fn normalize(mut self) -> Self {
        let mut g = self.den;
        for &v in self.t.iter().chain(&self.x) {
            if g == 1 {
                break;
            }
            g = g.gcd(&v);
        }
        if self.den < 0 {
            g = -g.abs();
        }
        if g != 1 && g != 0 {
            self.t.iter_mut().for_each(|v| *v /= g);
            self.x.iter_mut().for_each(|v| *v /= g);
            self.den /= g;
        }
        if self.t.iter().chain(&self.x).all(|&v| v == 0) {
            self.den = 1;
        }
        self
    }

    fn from_q(t: Vec<Q>, x: Vec<Q>) -> Self {
        let den = t.iter().chain(&x).fold(1i128, |acc, q| acc.lcm(q.denom()));
        let scale = |q: &Q| q.numer() * (den / q.denom());
        GriessElement { t: t.iter().map(scale).collect(), x: x.iter().map(scale).collect(), den }.normalize()
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().chain(&self.x).all(|&v| v == 0)
    }

    /// Cartan tensor entry `T_ij` in ambient coordinates.
    pub fn tensor(&self, i: usize, j: usize, d: usize) -> Q {
        Q::new(self.t[i * d + j], self.den)
    }

    /// Coefficient of `X_α` for the `k`-th root pair.
    pub fn pair_coeff(&self, k: usize) -> Q {
        Q::new(self.x[k], self.den)
    }

    pub fn pair_support(&self) -> impl Iterator<Item = usize> + '_ {
        self.x.iter().enumerate().filter(|(_, &v)| v != 0).map(|(k, _)| k)
    }

    fn combine(&self, a: Q, other: &Self, b: Q) -> Self {
        // a*self + b*other
        let den = (self.den * a.denom()).lcm(&(other.den * b.denom()));
        let fa = a.numer() * (den / (self.den * a.denom()));
        let fb = b.numer() * (den / (other.den * b.denom()));
        let mix = |u: &[i128], v: &[i128]| u.iter().zip(v).map(|(p, q)| fa * p + fb * q).collect();
        GriessElement { t: mix(&self.t, &other.t), x: mix(&self.x, &other.x), den }.normalize()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(Q::one(), other, Q::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(Q::one(), other, -Q::one())
    }

    pub fn scale(&self, c: Q) -> Self {
        let zero = GriessElement { t: vec![0; self.t.len()], x: vec![0; self.x.len()], den: 1 };
        self.combine(c, &zero, Q::zero())
    }

    /// Linear combination `Σ c_i e_i`.
    pub fn lincomb(terms: &[(Q, &GriessElement)]) -> Self {
        let (c0, e0) = terms[0];
        let mut acc = e0.scale(c0);
        for &(c, e) in &terms[1..] {
            acc = acc.combine(Q::one(), e, c);
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct ConformalVector {
    pub element: GriessElement,
    pub central_charge: Q,
}

#[derive(Debug, Clone)]
pub struct GriessAlgebra {
    lattice: RootLattice,
    d: usize,
    pairs: Vec<Vector>,
    pair_index: HashMap<Vector, usize>,
    /// simple-root coordinates of each pair representative
    pair_coords: Vec<Vec<i64>>,
    /// xx[a] = [(b, c, sign)]: X_a X_b = sign X_c
    xx: Vec<Vec<(u32, u32, i8)>>,
    /// simple roots in ambient doubled coordinates
    simple: Vec<Vector>,
    /// (A_d^T G^{-1} A_d) / 4: projection onto span(R), as rationals
    projection: Vec<Q>,
    ginv: Vec<Vec<Q>>,
}

impl GriessAlgebra {
    pub fn build(lattice: &RootLattice) -> Result<GriessAlgebra> {
        let l = lattice.rank();
        let dim = l * (l + 1) / 2 + lattice.roots().len() / 2;
        if dim > DIM_GUARD {
            return Err(Error::Guard(format!("Griess dimension {dim} > {DIM_GUARD}")));
        }
        let d = lattice.ambient_dim();
        let pairs: Vec<Vector> = lattice.positive_roots().into_iter().cloned().collect();
        let pair_index: HashMap<Vector, usize> = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let pair_coords: Vec<Vec<i64>> = pairs
            .iter()
            .map(|p| lattice.simple_coordinates(p).expect("root in span").iter().map(|c| c.to_integer()).collect())
            .collect();
        let simple: Vec<Vector> = lattice.simple_roots().into_iter().cloned().collect();
        let ginv = invert(lattice.gram());
        let mut projection = vec![Q::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = Q::zero();
                for a in 0..l {
                    for b in 0..l {
                        s += ginv[a][b] * Q::from((simple[a][i] * simple[b][j]) as i128);
                    }
                }
                projection[i * d + j] = s / Q::from(4);
            }
        }
        let mut alg = GriessAlgebra {
            lattice: lattice.clone(),
            d,
            pairs,
            pair_index,
            pair_coords,
            xx: Vec::new(),
            simple,
            projection,
            ginv,
        };
        alg.xx = alg.build_xx();
        Ok(alg)
    }

    fn build_xx(&self) -> Vec<Vec<(u32, u32, i8)>> {
        let n = self.pairs.len();
        (0..n)
            .map(|a| {
                let mut row = Vec::new();
                for b in 0..n {
                    let s = ip(&self.pairs[a], &self.pairs[b]);
                    let target = match s {
                        -1 => rootlat::add(&self.pairs[a], &self.pairs[b]),
                        1 => rootlat::sub(&self.pairs[a], &self.pairs[b]),
                        _ => continue,
                    };
                    let c = self.pair_index[&canonical_pair(&target)];
                    let neg_b: Vec<i64> = self.pair_coords[b].iter().map(|v| -v).collect();
                    let eps = if s == -1 {
                        self.cocycle(&self.pair_coords[a], &self.pair_coords[b])
                    } else {
                        self.cocycle(&self.pair_coords[a], &neg_b)
                    };
                    row.push((b as u32, c as u32, eps));
                }
                row
            })
            .collect()
    }

    /// ε(√2u, √2v) for u, v in simple-root coordinates, from ε(b_i,b_j) = (−1)^{⟨b_i,b_j⟩}
    /// for i > j and 1 otherwise, extended bimultiplicatively.
    pub fn cocycle(&self, u: &[i64], v: &[i64]) -> i8 {
        let g = self.lattice.gram();
        let mut e: i64 = 0;
        for i in 0..u.len() {
            for j in 0..i {
                // ⟨√2α_i, √2α_j⟩ = 2 (α_i, α_j)
                e += u[i] * v[j] * 2 * g[i][j];
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn lattice(&self) -> &RootLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn dimension(&self) -> usize {
        let l = self.rank();
        l * (l + 1) / 2 + self.pairs.len()
    }

    pub fn pairs(&self) -> &[Vector] {
        &self.pairs
    }

    pub fn pair_of(&self, root: &[i32]) -> Result<usize> {
        self.pair_index.get(&canonical_pair(root)).copied().ok_or_else(|| Error::NotARoot(rootlat::format_vector(root)))
    }

    pub fn basis_labels(&self) -> Vec<BasisLabel> {
        let l = self.rank();
        let mut out = Vec::with_capacity(self.dimension());
        for i in 0..l {
            for j in i..l {
                out.push(BasisLabel::CartanPair(i, j));
            }
        }
        out.extend(self.pairs.iter().cloned().map(BasisLabel::PairVector));
        out
    }

    pub fn zero(&self) -> GriessElement {
        GriessElement { t: vec![0; self.d * self.d], x: vec![0; self.pairs.len()], den: 1 }
    }

    /// `hh'` for doubled-coordinate vectors h, h'.
    pub fn cartan(&self, h: &[i32], h2: &[i32]) -> GriessElement {
        let d = self.d;
        let mut t = vec![0i128; d * d];
        for i in 0..d {
            for j in 0..d {
                t[i * d + j] = (h[i] * h2[j] + h2[i] * h[j]) as i128;
            }
        }
        GriessElement { t, x: vec![0; self.pairs.len()], den: 8 }.normalize()
    }

    pub fn pair_vector(&self, k: usize) -> GriessElement {
        let mut e = self.zero();
        e.x[k] = 1;
        e
    }

    /// The `k`-th basis element in the order of `basis_labels`.
    pub fn basis_element(&self, k: usize) -> GriessElement {
        let l = self.rank();
        let nc = l * (l + 1) / 2;
        if k >= nc {
            return self.pair_vector(k - nc);
        }
        let mut idx = 0;
        for i in 0..l {
            for j in i..l {
                if idx == k {
                    return self.cartan(&self.simple[i], &self.simple[j]);
                }
                idx += 1;
            }
        }
        unreachable!()
    }

    /// Exact coordinates in the basis of `basis_labels`.
    pub fn coords(&self, e: &GriessElement) -> Vec<Q> {
        let l = self.rank();
        let d = self.d;
        // C = G^{-1} A T A^T G^{-1}, with A the simple roots in real coordinates
        let a: Vec<Vec<Q>> = self.simple.iter().map(|r| r.iter().map(|&v| Q::new(v as i128, 2)).collect()).collect();
        let t: Vec<Q> = (0..d * d).map(|k| Q::new(e.t[k], e.den)).collect();
        let mut at = vec![vec![Q::zero(); d]; l];
        for i in 0..l {
            for j in 0..d {
                at[i][j] = (0..d).map(|k| a[i][k] * t[k * d + j]).sum();
            }
        }
        let mut ata = vec![vec![Q::zero(); l]; l];
        for i in 0..l {
            for j in 0..l {
                ata[i][j] = (0..d).map(|k| at[i][k] * a[j][k]).sum();
            }
        }
        let c = matmul(&matmul(&self.ginv, &ata), &self.ginv);
        let mut out = Vec::with_capacity(self.dimension());
        for i in 0..l {
            for j in i..l {
                out.push(if i == j { c[i][i] } else { c[i][j] * Q::from(2) });
            }
        }
        out.extend((0..self.pairs.len()).map(|k| Q::new(e.x[k], e.den)));
        out
    }

    pub fn from_coords(&self, c: &[Q]) -> GriessElement {
        let l = self.rank();
        let mut terms: Vec<(Q, GriessElement)> = Vec::new();
        let mut idx = 0;
        for i in 0..l {
            for j in i..l {
                if !c[idx].is_zero() {
                    terms.push((c[idx], self.cartan(&self.simple[i], &self.simple[j])));
                }
                idx += 1;
            }
        }
        for (k, q) in c[idx..].iter().enumerate() {
            if !q.is_zero() {
                terms.push((*q, self.pair_vector(k)));
            }
        }
        if terms.is_empty() {
            return self.zero();
        }
        let refs: Vec<(Q, &GriessElement)> = terms.iter().map(|(q, e)| (*q, e)).collect();
        GriessElement::lincomb(&refs)
    }

    pub fn product(&self, a: &GriessElement, b: &GriessElement) -> GriessElement {
        let d = self.d;
        let np = self.pairs.len();
        // everything below is twice the true numerator; den carries the 2
        let mut t = vec![0i128; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = 0i128;
                for k in 0..d {
                    s += a.t[i * d + k] * b.t[k * d + j] + b.t[i * d + k] * a.t[k * d + j];
                }
                t[i * d + j] = 4 * s;
            }
        }
        let mut x = vec![0i128; np];
        let ta = !a.t.iter().all(|&v| v == 0);
        let tb = !b.t.iter().all(|&v| v == 0);
        for k in 0..np {
            let (xa, xb) = (a.x[k], b.x[k]);
            if xa == 0 && xb == 0 {
                continue;
            }
            let r = &self.pairs[k];
            if xa != 0 && xb != 0 {
                let f = xa * xb;
                for i in 0..d {
                    if r[i] == 0 {
                        continue;
                    }
                    for j in 0..d {
                        t[i * d + j] += f * (r[i] * r[j]) as i128;
                    }
                }
            }
            let mut v = 0;
            if xb != 0 && ta {
                v += xb * quad(&a.t, r, d);
            }
            if xa != 0 && tb {
                v += xa * quad(&b.t, r, d);
            }
            x[k] += v;
        }
        for (ka, row) in self.xx.iter().enumerate() {
            let xa = a.x[ka];
            if xa == 0 {
                continue;
            }
            for &(kb, kc, s) in row {
                let xb = b.x[kb as usize];
                if xb != 0 {
                    x[kc as usize] += 2 * s as i128 * xa * xb;
                }
            }
        }
        GriessElement { t, x, den: 2 * a.den * b.den }.normalize()
    }

    pub fn inner(&self, a: &GriessElement, b: &GriessElement) -> Q {
        let s: i128 = a.t.iter().zip(&b.t).map(|(p, q)| p * q).sum::<i128>()
            + a.x.iter().zip(&b.x).map(|(p, q)| p * q).sum::<i128>();
        Q::new(2 * s, a.den * b.den)
    }

    /// Ising-candidate test: e·e = 2e and ⟨e,e⟩ = 1/4.
    pub fn is_ising_candidate(&self, e: &GriessElement) -> bool {
        self.inner(e, e) == Q::new(1, 4) && self.product(e, e) == e.scale(Q::from(2))
    }

    pub fn conformal(&self, e: GriessElement) -> Result<ConformalVector> {
        if self.product(&e, &e) != e.scale(Q::from(2)) {
            return Err(Error::IdentityFailed("e·e ≠ 2e".into()));
        }
        let c = self.inner(&e, &e) * Q::from(2);
        Ok(ConformalVector { element: e, central_charge: c })
    }

    fn tensor_element(&self, t: &[Q]) -> GriessElement {
        GriessElement::from_q(t.to_vec(), vec![Q::zero(); self.pairs.len()])
    }

    /// ω = ½ Σ over an orthonormal basis of span(R).
    pub fn omega(&self) -> GriessElement {
        let half: Vec<Q> = self.projection.iter().map(|q| q / Q::from(2)).collect();
        self.tensor_element(&half)
    }

    /// ω_K for a root sublattice K given in the same ambient coordinates.
    pub fn omega_of(&self, k: &RootLattice) -> GriessElement {
        let sub = GriessAlgebra::projection_of(k, self.d);
        let half: Vec<Q> = sub.iter().map(|q| q / Q::from(2)).collect();
        self.tensor_element(&half)
    }

    fn projection_of(k: &RootLattice, d: usize) -> Vec<Q> {
        let ginv = invert(k.gram());
        let simple = k.simple_roots();
        let l = simple.len();
        let mut p = vec![Q::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = Q::zero();
                for a in 0..l {
                    for b in 0..l {
                        s += ginv[a][b] * Q::from((simple[a][i] * simple[b][j]) as i128);
                    }
                }
                p[i * d + j] = s / Q::from(4);
            }
        }
        p
    }

    /// Σ X_α over the positive roots of K (a sublattice, or the whole lattice).
    pub fn pair_sum(&self, k: &RootLattice) -> Result<GriessElement> {
        let mut e = self.zero();
        for r in k.positive_roots() {
            e.x[self.pair_of(r)?] += 1;
        }
        Ok(e)
    }

    /// ω̃_K = 2/(h+2) ω_K + 1/(h+2) Σ X_α for an indecomposable root sublattice K.
    pub fn wtilde_of(&self, k: &RootLattice) -> Result<GriessElement> {
        let h = k.coxeter_number()? as i128;
        let w = self.omega_of(k);
        let x = self.pair_sum(k)?;
        Ok(GriessElement::lincomb(&[(Q::new(2, h + 2), &w), (Q::new(1, h + 2), &x)]))
    }

    /// s_K = h/(h+2) ω_K − 1/(h+2) Σ X_α.
    pub fn s_of(&self, k: &RootLattice) -> Result<GriessElement> {
        let h = k.coxeter_number()? as i128;
        let w = self.omega_of(k);
        let x = self.pair_sum(k)?;
        Ok(GriessElement::lincomb(&[(Q::new(h, h + 2), &w), (Q::new(-1, h + 2), &x)]))
    }

    pub fn conformal_wtilde(&self) -> Result<ConformalVector> {
        let e = self.wtilde_of(&self.lattice)?;
        self.conformal(e)
    }

    pub fn conformal_s(&self) -> Result<ConformalVector> {
        let e = self.s_of(&self.lattice)?;
        self.conformal(e)
    }

    /// w^±(α) = 1/8 (αα) ± 1/4 X_α.
    pub fn w_vector(&self, alpha: &[i32], sign: Sign) -> Result<GriessElement> {
        let k = self.pair_of(alpha)?;
        let mut e = self.cartan(alpha, alpha).scale(Q::new(1, 8));
        let c = match sign {
            Sign::Plus => Q::new(1, 4),
            Sign::Minus => Q::new(-1, 4),
        };
        e = e.combine(Q::one(), &self.pair_vector(k), c);
        Ok(e)
    }

    /// φ_x: X_α ↦ (−1)^{⟨x,α⟩} X_α, Cartan part fixed.
    pub fn phi_twist(&self, x: &Mod2Class, v: &GriessElement) -> Result<GriessElement> {
        if self.lattice.kind() != [rootlat::Simple::E8] {
            return Err(Error::Lattice(format!("φ_x needs E8, got {}", self.lattice.tag())));
        }
        Ok(self.twist_by(&x.representative, v))
    }

    /// Sign twist by any vector with integral products against the roots.
    pub fn twist_by(&self, x: &[i32], v: &GriessElement) -> GriessElement {
        let mut out = v.clone();
        for (k, r) in self.pairs.iter().enumerate() {
            if (dot4(x, r) / 4) & 1 == 1 {
                out.x[k] = -out.x[k];
            }
        }
        out
    }

    /// σ_e f by the two-case rule; errors outside {0, 1/32, 1/4}.
    pub fn sigma_image(&self, e: &GriessElement, f: &GriessElement) -> Result<GriessElement> {
        if e == f {
            return Ok(f.clone());
        }
        let p = self.inner(e, f);
        if p.is_zero() {
            Ok(f.clone())
        } else if p == Q::new(1, 32) {
            let g = self.sigma_raw(e, f);
            if !self.is_ising_candidate(&g) {
                return Err(Error::IdentityFailed("σ-image is not an Ising candidate".into()));
            }
            Ok(g)
        } else {
            Err(Error::NotSigmaCompatible(p.to_string()))
        }
    }

    /// e + f − 4 e·f without checks.
    pub fn sigma_raw(&self, e: &GriessElement, f: &GriessElement) -> GriessElement {
        let ef = self.product(e, f);
        GriessElement::lincomb(&[(Q::one(), e), (Q::one(), f), (Q::from(-4), &ef)])
    }

    /// Matrix of v ↦ u·v in basis coordinates (column j = u·b_j).
    pub fn multiplication_matrix(&self, u: &GriessElement) -> Vec<Vec<Q>> {
        let n = self.dimension();
        let cols: Vec<Vec<Q>> = (0..n).map(|j| self.coords(&self.product(u, &self.basis_element(j)))).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }

    /// Basis of ker(v ↦ u·v), from the reduced echelon form of the multiplication matrix.
    pub fn commutant_weight2(&self, u: &GriessElement) -> Vec<GriessElement> {
        let m = self.multiplication_matrix(u);
        kernel(&m)
            .into_iter()
            .map(|v| {
                let q: Vec<Q> = v.iter().map(big_to_q).collect();
                self.from_coords(&q)
            })
            .collect()
    }

    /// JSON-friendly coordinates: (label, "p/q") for nonzero entries.
    pub fn describe(&self, e: &GriessElement) -> Vec<(String, String)> {
        self.basis_labels()
            .iter()
            .zip(self.coords(e))
            .filter(|(_, q)| !q.is_zero())
            .map(|(l, q)| (l.to_string(), q.to_string()))
            .collect()
    }
}

fn quad(t: &[i128], r: &[i32], d: usize) -> i128 {
    // r^T T r, with r doubled: the 1/4 from doubling cancels the 2·2/… factor (see product)
    let mut s = 0i128;
    for i in 0..d {
        if r[i] == 0 {
            continue;
        }
        let mut row = 0i128;
        for j in 0..d {
            if r[j] != 0 {
                row += t[i * d + j] * r[j] as i128;
            }
        }
        s += r[i] as i128 * row;
    }
    s
}

fn matmul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn invert(g: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = g.len();
    let mut a: Vec<Vec<Q>> = g
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Q> = r.iter().map(|&v| Q::from(v as i128)).collect();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("Gram matrix is nonsingular");
        a.swap(c, p);
        let inv = Q::one() / a[c][c];
        for v in a[c].iter_mut() {
            *v *= inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for k in 0..2 * n {
                    let t = a[c][k];
                    a[r][k] -= f * t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn big_to_q(q: &BigRational) -> Q {
    Q::new(q.numer().to_i128().expect("kernel entry fits i128"), q.denom().to_i128().expect("kernel entry fits i128"))
}

/// Null-space basis by fraction-free elimination, pivoting on the first nonzero
/// column. Each basis vector has a 1 in its free column.
pub fn kernel(m: &[Vec<Q>]) -> Vec<Vec<BigRational>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    // clear denominators row by row
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| {
            let l = r.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
            r.iter().map(|q| BigInt::from(q.numer() * (l / q.denom()))).collect()
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let (f, g) = (a[i][c].clone(), a[r][c].clone());
            let pivot_row = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x = &*x * &g - &f * y;
            }
            primitive(&mut a[i]);
        }
        primitive(&mut a[r]);
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for f in 0..cols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -BigRational::new(a[i][f].clone(), a[i][p].clone());
        }
        out.push(v);
    }
    out
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

/// Rank of a set of elements (via basis coordinates).
pub fn rank_of(alg: &GriessAlgebra, elems: &[GriessElement]) -> usize {
    if elems.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Q>> = elems.iter().map(|e| alg.coords(e)).collect();
    let cols = rows[0].len();
    cols - kernel(&rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(tag: &str) -> GriessAlgebra {
        GriessAlgebra::build(&RootLattice::from_tag(tag).unwrap()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg("E8").dimension(), 156);
        assert_eq!(alg("A2").dimension(), 6);
        assert_eq!(alg("E7").dimension(), 28 + 63);
    }

    #[test]
    fn coords_roundtrip() {
        let g = alg("E6");
        for k in [0, 5, 20, 30] {
            let b = g.basis_element(k);
            let c = g.coords(&b);
            assert!(c.iter().enumerate().all(|(i, q)| *q == if i == k { Q::one() } else { Q::zero() }));
            assert_eq!(g.from_coords(&c), b);
        }
    }

    #[test]
    fn omega_is_identity_times_two() {
        let g = alg("D4");
        let w = g.omega();
        for k in 0..g.dimension() {
            let b = g.basis_element(k);
            assert_eq!(g.product(&w, &b), b.scale(Q::from(2)));
        }
        assert_eq!(g.inner(&w, &w), Q::new(4, 2));
    }

    #[test]
    fn w_pair_idempotents() {
        let g = alg("A2");
        let a = g.pairs()[0].clone();
        let p = g.w_vector(&a, Sign::Plus).unwrap();
        let m = g.w_vector(&a, Sign::Minus).unwrap();
        assert!(g.is_ising_candidate(&p));
        assert!(g.is_ising_candidate(&m));
        assert!(g.product(&p, &m).is_zero());
        assert_eq!(g.w_vector(&rootlat::neg(&a), Sign::Plus).unwrap(), p);
    }

    #[test]
    fn kernel_small() {
        let m = vec![vec![Q::from(1), Q::from(2), Q::from(3)], vec![Q::from(2), Q::from(4), Q::from(6)]];
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
    }
}
