//! Ising-vector censuses: code VOAs (frames plus Hamming blocks) and the
//! lattice models V_{√2R}^+ (w^± and, for E8, the φ-twists of ω̃).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2code::{self, BinaryCode, HammingEmbedding, Word};
use crate::griess::{GriessAlgebra, GriessElement, Sign, Q};
use crate::par::{self, Exec};
use crate::rootlat::{self, mod2_classes, ClassKind, RootLattice, Simple, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum PointTag {
    Frame { coordinate: usize },
    Hamming { embedding: usize, coset: String },
    WMinus { summand: usize, root: String },
    WPlus { summand: usize, root: String },
    PhiTwist { summand: usize, class: ClassKind, representative: String },
}

impl PointTag {
    pub fn kind(&self) -> &'static str {
        match self {
            PointTag::Frame { .. } => "Frame",
            PointTag::Hamming { .. } => "Hamming",
            PointTag::WMinus { .. } => "WMinus",
            PointTag::WPlus { .. } => "WPlus",
            PointTag::PhiTwist { class: ClassKind::Frame, .. } => "PhiTwistFrame",
            PointTag::PhiTwist { class: ClassKind::RootPair, .. } => "PhiTwistRoot",
            PointTag::PhiTwist { class: ClassKind::Zero, .. } => "PhiTwistZero",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IsingPoint {
    pub tag: PointTag,
    pub realization: Option<GriessElement>,
}

#[derive(Debug, Clone)]
pub struct IsingCensus {
    pub points: Vec<IsingPoint>,
    gram: Vec<Vec<Option<Q>>>,
    algebra: Option<Arc<GriessAlgebra>>,
}

pub fn quarter() -> Q {
    Q::new(1, 4)
}

pub fn one_32() -> Q {
    Q::new(1, 32)
}

impl IsingCensus {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn algebra(&self) -> Option<&Arc<GriessAlgebra>> {
        self.algebra.as_ref()
    }

    /// ⟨p_i, p_j⟩, or `Unrealized` when neither combinatorics nor a realization fixes it.
    pub fn gram(&self, i: usize, j: usize) -> Result<Q> {
        self.gram[i][j].ok_or_else(|| Error::Unrealized(format!("inner product of points {i} and {j}")))
    }

    pub fn is_fully_known(&self) -> bool {
        self.gram.iter().all(|r| r.iter().all(Option::is_some))
    }

    pub fn gram_dense(&self) -> Result<Vec<Vec<Q>>> {
        (0..self.len()).map(|i| (0..self.len()).map(|j| self.gram(i, j)).collect()).collect()
    }

    pub fn counts_by_tag(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        for p in &self.points {
            *m.entry(p.tag.kind()).or_insert(0) += 1;
        }
        m
    }

    pub fn realization(&self, i: usize) -> Result<&GriessElement> {
        self.points[i]
            .realization
            .as_ref()
            .ok_or_else(|| Error::Unrealized(format!("point {i} has no Griess realization")))
    }

    pub fn is_realized(&self) -> bool {
        self.algebra.is_some() && self.points.iter().all(|p| p.realization.is_some())
    }

    /// Sub-census on the given indices, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> IsingCensus {
        IsingCensus {
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            gram: idx.iter().map(|&i| idx.iter().map(|&j| self.gram[i][j]).collect()).collect(),
            algebra: self.algebra.clone(),
        }
    }

    /// Index lookup of realized points.
    pub fn element_index(&self) -> HashMap<&GriessElement, usize> {
        self.points.iter().enumerate().filter_map(|(i, p)| p.realization.as_ref().map(|e| (e, i))).collect()
    }

    /// Points with gram value 1/32 against `i`.
    pub fn partners(&self, i: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            if self.gram(i, j)? == one_32() {
                out.push(j);
            }
        }
        Ok(out)
    }

    /// σ_{p_i} as a permutation of the census, computed in the Griess algebra.
    pub fn sigma_of(&self, i: usize, index: &HashMap<&GriessElement, usize>) -> Result<Vec<usize>> {
        let alg = self.algebra.as_ref().ok_or_else(|| Error::Unrealized("census has no algebra".into()))?;
        let e = self.realization(i)?;
        let mut img: Vec<usize> = (0..self.len()).collect();
        for j in 0..self.len() {
            let g = self.gram(i, j)?;
            if i == j || g.is_zero_q() {
                continue;
            }
            if g != one_32() {
                return Err(Error::NotSigmaCompatible(g.to_string()));
            }
            if img[j] != j {
                continue;
            }
            let f = self.realization(j)?;
            let s = alg.sigma_raw(e, f);
            let k = *index
                .get(&s)
                .ok_or_else(|| Error::NotClosed(format!("σ of point {i} sends point {j} outside the census")))?;
            img[j] = k;
            img[k] = j;
        }
        Ok(img)
    }
}

trait IsZeroQ {
    fn is_zero_q(&self) -> bool;
}

impl IsZeroQ for Q {
    fn is_zero_q(&self) -> bool {
        *self.numer() == 0
    }
}

fn gram_of(alg: &GriessAlgebra, elems: &[GriessElement], exec: Exec) -> Vec<Vec<Option<Q>>> {
    par::map_range(exec, elems.len(), |i| elems.iter().map(|f| Some(alg.inner(&elems[i], f))).collect())
}

fn census_from_elements(alg: Arc<GriessAlgebra>, tagged: Vec<(PointTag, GriessElement)>, exec: Exec) -> IsingCensus {
    let elems: Vec<GriessElement> = tagged.iter().map(|(_, e)| e.clone()).collect();
    let gram = gram_of(&alg, &elems, exec);
    IsingCensus {
        points: tagged.into_iter().map(|(tag, e)| IsingPoint { tag, realization: Some(e) }).collect(),
        gram,
        algebra: Some(alg),
    }
}

// ---------------------------------------------------------------- lattice census

/// The indecomposable summands of `l` as sublattices in its own coordinates.
pub fn summands(l: &RootLattice) -> Result<Vec<RootLattice>> {
    (0..l.kind().len())
        .map(|c| {
            let roots: Vec<Vector> =
                (0..l.roots().len()).filter(|&i| l.component_of_root(i) == c).map(|i| l.roots()[i].clone()).collect();
            RootLattice::from_roots(vec![l.kind()[c]], l.ambient_dim(), roots)
        })
        .collect()
}

/// w^∓ for every root pair of every summand; φ_xω̃ over all 256 classes for E8 summands.
pub fn lattice_census(alg: Arc<GriessAlgebra>) -> Result<IsingCensus> {
    lattice_census_with(alg, Exec::default())
}

pub fn lattice_census_with(alg: Arc<GriessAlgebra>, exec: Exec) -> Result<IsingCensus> {
    let l = alg.lattice().clone();
    let mut tagged: Vec<(PointTag, GriessElement)> = Vec::new();
    let classes =
        if l.kind().contains(&Simple::E8) { mod2_classes(&RootLattice::build(&[Simple::E8])?)? } else { Vec::new() };
    let mut offset = 0;
    for (s, sub) in summands(&l)?.iter().enumerate() {
        let pos: Vec<Vector> = sub.positive_roots().into_iter().cloned().collect();
        for r in &pos {
            tagged.push((
                PointTag::WMinus { summand: s, root: rootlat::format_vector(r) },
                alg.w_vector(r, Sign::Minus)?,
            ));
        }
        for r in &pos {
            tagged
                .push((PointTag::WPlus { summand: s, root: rootlat::format_vector(r) }, alg.w_vector(r, Sign::Plus)?));
        }
        let width = match sub.kind()[0] {
            Simple::A(n) => n + 1,
            Simple::D(n) => n,
            _ => 8,
        };
        if sub.kind() == [Simple::E8] {
            let wt = alg.wtilde_of(sub)?;
            for c in &classes {
                let mut x = vec![0; l.ambient_dim()];
                x[offset..offset + 8].copy_from_slice(&c.representative);
                tagged.push((
                    PointTag::PhiTwist {
                        summand: s,
                        class: c.kind,
                        representative: rootlat::format_vector(&c.representative),
                    },
                    alg.twist_by(&x, &wt),
                ));
            }
        }
        offset += width;
    }
    Ok(census_from_elements(alg, tagged, exec))
}

/// Sub-census orthogonal to every constraint.
pub fn commutant_filter(census: &IsingCensus, constraints: &[GriessElement]) -> Result<IsingCensus> {
    let alg = census.algebra().ok_or_else(|| Error::Unrealized("census has no algebra".into()))?.clone();
    let mut keep = Vec::new();
    for i in 0..census.len() {
        let e = census.realization(i)?;
        if constraints.iter().all(|c| alg.inner(e, c).is_zero_q()) {
            keep.push(i);
        }
    }
    Ok(census.restrict(&keep))
}

// ---------------------------------------------------------------- code census

/// σ-type test: every codeword meets supp(D) evenly.
pub fn sigma_type_check(c: &BinaryCode, d: &HammingEmbedding) -> bool {
    let m = d.support_mask();
    c.generators().iter().all(|&g| gf2code::weight(g & m).is_multiple_of(2))
}

/// Frame points first (one per coordinate), then 16 points per Hamming embedding.
pub fn code_census(c: &BinaryCode) -> Result<IsingCensus> {
    let mw = c.min_weight()?;
    if mw <= 2 {
        return Err(Error::SmallMinWeight(mw));
    }
    let embeddings = c.hamming_embeddings()?;
    let mut census = combinatorial_census(c.length(), &embeddings);
    if let Some((lat, frame_roots)) = catalog_realization(c)? {
        realize(&mut census, c.length(), &embeddings, lat, &frame_roots)?;
    }
    Ok(census)
}

/// Code census with only the combinatorially determined entries.
pub fn code_census_unrealized(c: &BinaryCode) -> Result<IsingCensus> {
    let mw = c.min_weight()?;
    if mw <= 2 {
        return Err(Error::SmallMinWeight(mw));
    }
    Ok(combinatorial_census(c.length(), &c.hamming_embeddings()?))
}

struct Block {
    support: Word,
    reps: Vec<Word>,
    /// local 8-bit word -> coset index
    coset_of: [u8; 256],
}

fn block_of(d: &HammingEmbedding) -> Block {
    let reps = d.coset_representatives();
    let mut coset_of = [0u8; 256];
    for x in 0..=255u8 {
        let g = d.globalize(x);
        let k = reps.iter().position(|&r| d.contains(r ^ g)).expect("cosets cover");
        coset_of[x as usize] = k as u8;
    }
    Block { support: d.support_mask(), reps, coset_of }
}

fn combinatorial_census(n: usize, embeddings: &[HammingEmbedding]) -> IsingCensus {
    let mut points: Vec<IsingPoint> =
        (0..n).map(|i| IsingPoint { tag: PointTag::Frame { coordinate: i + 1 }, realization: None }).collect();
    let blocks: Vec<Block> = embeddings.iter().map(block_of).collect();
    let mut owner: Vec<(usize, usize)> = Vec::new();
    for (b, (d, blk)) in embeddings.iter().zip(&blocks).enumerate() {
        for (k, &r) in blk.reps.iter().enumerate() {
            points.push(IsingPoint {
                tag: PointTag::Hamming { embedding: b, coset: gf2code::format_word(d.localize(r) as Word, 8) },
                realization: None,
            });
            owner.push((b, k));
        }
    }
    let total = points.len();
    let mut gram = vec![vec![None; total]; total];
    for i in 0..total {
        gram[i][i] = Some(quarter());
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gram[i][j] = Some(Q::from(0));
            }
        }
        for (t, &(b, _)) in owner.iter().enumerate() {
            let v = if blocks[b].support >> i & 1 == 1 { one_32() } else { Q::from(0) };
            gram[i][n + t] = Some(v);
            gram[n + t][i] = Some(v);
        }
    }
    for (s, &(b, k)) in owner.iter().enumerate() {
        for (t, &(b2, k2)) in owner.iter().enumerate() {
            if b != b2 || s == t {
                continue;
            }
            let d = &embeddings[b];
            let delta = d.localize(blocks[b].reps[k] ^ blocks[b].reps[k2]);
            let v = if delta.count_ones() % 2 == 1 { one_32() } else { Q::from(0) };
            gram[n + s][n + t] = Some(v);
        }
    }
    IsingCensus { points, gram, algebra: None }
}

/// Lattice models known to realize a code census, with the orthogonal roots whose
/// w^∓ pairs form the image of the coordinate frame.
fn catalog_realization(c: &BinaryCode) -> Result<Option<(RootLattice, Vec<Vector>)>> {
    let n = c.length();
    let rank = if n == 16 && c.dim() == 11 {
        Some((Simple::E8, 8))
    } else if n.is_multiple_of(4) && n >= 8 && c.dim() == 3 * (n / 4) - 2 {
        Some((Simple::D(n / 2), n / 2))
    } else {
        None
    };
    let Some((kind, width)) = rank else { return Ok(None) };
    let lat = RootLattice::build(&[kind])?;
    let mut roots = Vec::new();
    for k in (0..width).step_by(2) {
        for s in [2, -2] {
            let mut v = vec![0; width];
            v[k] = 2;
            v[k + 1] = s;
            roots.push(v);
        }
    }
    Ok(Some((lat, roots)))
}

fn realize(
    census: &mut IsingCensus,
    n: usize,
    embeddings: &[HammingEmbedding],
    lat: RootLattice,
    frame_roots: &[Vector],
) -> Result<()> {
    let unrealized = |why: &str| Error::Unrealized(format!("code census of length {n}: {why}"));
    let alg = Arc::new(GriessAlgebra::build(&lat)?);
    let lc = lattice_census(alg.clone())?;
    if lc.len() != census.len() {
        return Err(unrealized("point counts differ from the lattice model"));
    }
    let index = lc.element_index();
    let mut frame = Vec::new();
    for r in frame_roots {
        for sign in [Sign::Minus, Sign::Plus] {
            let e = alg.w_vector(r, sign)?;
            frame.push(index[&e]);
        }
    }
    if frame.len() != n {
        return Err(unrealized("frame size mismatch"));
    }
    let sig: Vec<Vec<usize>> = frame.iter().map(|&p| lc.sigma_of(p, &index)).collect::<Result<_>>()?;
    // profiles of the non-frame lattice points over the frame
    let mut groups: HashMap<u64, Vec<usize>> = HashMap::new();
    for q in 0..lc.len() {
        if frame.contains(&q) {
            continue;
        }
        let mut m = 0u64;
        for (k, &f) in frame.iter().enumerate() {
            if lc.gram(f, q)? == one_32() {
                m |= 1 << k;
            }
        }
        groups.entry(m).or_default().push(q);
    }
    let blocks: Vec<Block> = embeddings.iter().map(block_of).collect();
    let supports: Vec<Word> = blocks.iter().map(|b| b.support).collect();
    let profiles: Vec<u64> = groups.keys().copied().collect();
    if groups.values().any(|g| g.len() != 16) || profiles.len() != supports.len() {
        return Err(unrealized("block structure differs from the lattice model"));
    }
    let mut sup_sorted = supports.clone();
    sup_sorted.sort();
    sup_sorted.dedup();
    if sup_sorted.len() != supports.len() {
        return Err(unrealized("two embeddings share a support"));
    }

    let mut search =
        FrameSearch { n, supports: &supports, profiles: &profiles, assign: vec![usize::MAX; n], used: 0, leaves: 0 };
    let mut result: Option<Vec<usize>> = None;
    search.run(0, &mut |f| {
        let pi = match_blocks(f, &blocks, embeddings, &groups, &frame, &sig, &lc)?;
        result = Some(pi);
        Some(())
    });
    let pi = result.ok_or_else(|| unrealized("no consistent coordinate/frame matching"))?;

    // pi: code index -> lattice index; verify every combinatorial entry, then fill
    for i in 0..census.len() {
        for j in 0..census.len() {
            let lv = lc.gram(pi[i], pi[j])?;
            match census.gram[i][j] {
                Some(v) if v != lv => {
                    return Err(Error::IdentityFailed(format!("realized gram disagrees at ({i},{j})")));
                }
                _ => census.gram[i][j] = Some(lv),
            }
        }
        census.points[i].realization = Some(lc.realization(pi[i])?.clone());
    }
    census.algebra = Some(alg);
    Ok(())
}

struct FrameSearch<'a> {
    n: usize,
    supports: &'a [Word],
    profiles: &'a [u64],
    assign: Vec<usize>,
    used: u64,
    leaves: usize,
}

const LEAF_CAP: usize = 20_000;

impl FrameSearch<'_> {
    fn consistent(&self, k: usize) -> bool {
        // coordinates 0..=k assigned; every support must fit some profile
        self.supports.iter().all(|&s| {
            let mut inside = 0u64;
            let mut outside = 0u64;
            for i in 0..=k {
                let b = 1u64 << self.assign[i];
                if s >> i & 1 == 1 {
                    inside |= b;
                } else {
                    outside |= b;
                }
            }
            self.profiles.iter().any(|&p| p & inside == inside && p & outside == 0)
        })
    }

    fn run(&mut self, k: usize, on_leaf: &mut dyn FnMut(&[usize]) -> Option<()>) -> bool {
        if k == self.n {
            self.leaves += 1;
            return on_leaf(&self.assign).is_some() || self.leaves >= LEAF_CAP;
        }
        for t in 0..self.n {
            if self.used >> t & 1 == 1 {
                continue;
            }
            self.assign[k] = t;
            self.used |= 1 << t;
            if self.consistent(k) && self.run(k + 1, on_leaf) {
                return true;
            }
            self.used &= !(1 << t);
        }
        self.assign[k] = usize::MAX;
        false
    }
}

/// For a coordinate→frame assignment, propagate π(t^0) through the frame σ's in
/// every block; returns code index → lattice index.
fn match_blocks(
    f: &[usize],
    blocks: &[Block],
    embeddings: &[HammingEmbedding],
    groups: &HashMap<u64, Vec<usize>>,
    frame: &[usize],
    sig: &[Vec<usize>],
    lc: &IsingCensus,
) -> Option<Vec<usize>> {
    let n = f.len();
    let mut pi: Vec<usize> = f.iter().map(|&k| frame[k]).collect();
    for (b, blk) in blocks.iter().enumerate() {
        let d = &embeddings[b];
        let prof = gf2code::support(blk.support).iter().fold(0u64, |m, &i| m | 1 << f[i]);
        let cands = groups.get(&prof)?;
        let coords = gf2code::support(blk.support);
        let found = cands.iter().find_map(|&p0| {
            let imgs: Vec<usize> =
                blk.reps.iter().map(|&r| gf2code::support(r).iter().fold(p0, |p, &i| sig[f[i]][p])).collect();
            for (k, &r) in blk.reps.iter().enumerate() {
                for &i in &coords {
                    let moved = blk.coset_of[d.localize(r ^ 1 << i) as usize] as usize;
                    if sig[f[i]][imgs[k]] != imgs[moved] {
                        return None;
                    }
                }
                for (k2, &r2) in blk.reps.iter().enumerate() {
                    let odd = d.localize(r ^ r2).count_ones() % 2 == 1;
                    let want = if k == k2 {
                        quarter()
                    } else if odd {
                        one_32()
                    } else {
                        Q::from(0)
                    };
                    if lc.gram(imgs[k], imgs[k2]).ok()? != want {
                        return None;
                    }
                }
            }
            Some(imgs)
        })?;
        pi.extend(found);
    }
    debug_assert!(pi.len() >= n);
    Some(pi)
}

// ---------------------------------------------------------------- Hamming model

#[derive(Debug, Clone)]
pub struct HammingModel {
    pub census: IsingCensus,
    /// The maximal pairwise-orthogonal 8-sets, sorted.
    pub frames: Vec<Vec<usize>>,
    /// sigma[p][q] = σ_p(q).
    pub sigma: Vec<Vec<usize>>,
}

pub fn hamming_model() -> Result<HammingModel> {
    let h8 = gf2code::named_code(gf2code::NamedCode::Hamming8)?;
    let census = code_census(&h8)?;
    let frames = orthogonal_cliques(&census, 8)?;
    let index = census.element_index();
    let sigma = (0..census.len()).map(|p| census.sigma_of(p, &index)).collect::<Result<_>>()?;
    Ok(HammingModel { census, frames, sigma })
}

/// All maximal cliques of exactly `size` points in the gram-0 graph.
pub fn orthogonal_cliques(census: &IsingCensus, size: usize) -> Result<Vec<Vec<usize>>> {
    let n = census.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            adj[i][j] = i != j && census.gram(i, j)?.is_zero_q();
        }
    }
    let mut out = Vec::new();
    bron_kerbosch(&adj, &mut Vec::new(), (0..n).collect(), Vec::new(), &mut out);
    let mut out: Vec<Vec<usize>> = out.into_iter().filter(|c| c.len() == size).collect();
    for c in out.iter_mut() {
        c.sort();
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: &mut Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let pivot = *p.iter().chain(&x).max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count()).unwrap();
    let cand: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in cand {
        r.push(v);
        let p2 = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r, p2, x2, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}
