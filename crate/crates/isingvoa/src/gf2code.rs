//! Binary linear codes.
//!
//! A word of length `n` is a `u128`; coordinate `i` (0-based) is bit `i`, so the
//! first coordinate of a printed word `1100...` is the least significant bit.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Word = u128;

pub const MAX_LENGTH: usize = 128;
/// Largest dimension for which codewords are enumerated exhaustively.
pub const ENUM_GUARD: usize = 24;

#[inline]
pub fn weight(w: Word) -> usize {
    w.count_ones() as usize
}

#[inline]
pub fn dot(a: Word, b: Word) -> u32 {
    (a & b).count_ones() & 1
}

pub fn mask(n: usize) -> Word {
    if n >= 128 {
        !0
    } else {
        (1u128 << n) - 1
    }
}

pub fn support(w: Word) -> Vec<usize> {
    let mut out = Vec::with_capacity(weight(w));
    let mut v = w;
    while v != 0 {
        let i = v.trailing_zeros() as usize;
        out.push(i);
        v &= v - 1;
    }
    out
}

/// Parses a 0/1 string, first character = coordinate 0.
pub fn parse_word(s: &str) -> Result<Word> {
    if s.len() > MAX_LENGTH {
        return Err(Error::Guard(format!("word length {} > {}", s.len(), MAX_LENGTH)));
    }
    let mut w = 0;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => w |= 1 << i,
            _ => return Err(Error::Parse(format!("bad character {c:?} in word {s:?}"))),
        }
    }
    Ok(w)
}

pub fn format_word(w: Word, n: usize) -> String {
    (0..n).map(|i| if w >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Row-reduces in place; returns the nonzero rows sorted by pivot (lowest set bit).
fn rref(rows: &[Word]) -> Vec<Word> {
    let mut basis: Vec<Word> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            if v >> b.trailing_zeros() & 1 == 1 {
                v ^= b;
            }
        }
        if v == 0 {
            continue;
        }
        let p = v.trailing_zeros();
        for b in basis.iter_mut() {
            if *b >> p & 1 == 1 {
                *b ^= v;
            }
        }
        basis.push(v);
    }
    basis.sort_by_key(|b| b.trailing_zeros());
    basis
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryCode {
    n: usize,
    gens: Vec<Word>,
}

impl BinaryCode {
    pub fn new(n: usize, rows: &[Word]) -> Result<Self> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::OutOfRange(format!("code length {n} not in 1..={MAX_LENGTH}")));
        }
        if let Some(r) = rows.iter().find(|&&r| r & !mask(n) != 0) {
            return Err(Error::OutOfRange(format!("row {r:#x} longer than {n}")));
        }
        Ok(BinaryCode { n, gens: rref(rows) })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    pub fn full(n: usize) -> Result<Self> {
        let rows: Vec<Word> = (0..n).map(|i| 1 << i).collect();
        Self::new(n, &rows)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    /// Generators in reduced row-echelon form.
    pub fn generators(&self) -> &[Word] {
        &self.gens
    }

    pub fn contains(&self, w: Word) -> bool {
        let mut v = w;
        for &b in &self.gens {
            if v >> b.trailing_zeros() & 1 == 1 {
                v ^= b;
            }
        }
        v == 0
    }

    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        self.n == other.n && self.gens.iter().all(|&g| other.contains(g))
    }

    fn guard(&self) -> Result<()> {
        if self.dim() > ENUM_GUARD {
            return Err(Error::Guard(format!("dimension {} > {}", self.dim(), ENUM_GUARD)));
        }
        Ok(())
    }

    /// All 2^k codewords in Gray-code order starting from 0.
    pub fn codewords(&self) -> Result<Vec<Word>> {
        self.guard()?;
        let k = self.dim();
        let mut out = Vec::with_capacity(1 << k);
        let mut w = 0;
        out.push(w);
        for i in 1u64..(1 << k) {
            w ^= self.gens[i.trailing_zeros() as usize];
            out.push(w);
        }
        Ok(out)
    }

    pub fn weight_enumerator(&self) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; self.n + 1];
        for w in self.codewords()? {
            counts[weight(w)] += 1;
        }
        Ok(counts)
    }

    pub fn min_weight(&self) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::Precondition("minimum weight of the zero code".into()));
        }
        Ok(self.codewords()?.into_iter().skip(1).map(weight).min().unwrap())
    }

    pub fn dual(&self) -> BinaryCode {
        let pivots: Vec<u32> = self.gens.iter().map(|g| g.trailing_zeros()).collect();
        let mut rows = Vec::with_capacity(self.n - self.dim());
        for f in 0..self.n as u32 {
            if pivots.contains(&f) {
                continue;
            }
            let mut v: Word = 1 << f;
            for (g, &p) in self.gens.iter().zip(&pivots) {
                if g >> f & 1 == 1 {
                    v |= 1 << p;
                }
            }
            rows.push(v);
        }
        BinaryCode { n: self.n, gens: rref(&rows) }
    }

    pub fn span_with(&self, extra: &[Word]) -> Result<BinaryCode> {
        let mut rows = self.gens.clone();
        rows.extend_from_slice(extra);
        BinaryCode::new(self.n, &rows)
    }

    /// Direct sum on disjoint coordinates (self first).
    pub fn direct_sum(&self, other: &BinaryCode) -> Result<BinaryCode> {
        let mut rows = self.gens.clone();
        rows.extend(other.gens.iter().map(|g| g << self.n));
        BinaryCode::new(self.n + other.n, &rows)
    }

    /// `{(u1,u1,…,un,un) : u ∈ C^⊥}` for level 0; level 1 adjoins `γ = (10)^n`.
    pub fn d_construction(&self, level: u8) -> Result<BinaryCode> {
        if level > 1 {
            return Err(Error::OutOfRange(format!("d_construction level {level}")));
        }
        let n2 = 2 * self.n;
        if n2 > MAX_LENGTH {
            return Err(Error::Guard(format!("doubled length {n2} > {MAX_LENGTH}")));
        }
        let mut rows: Vec<Word> = self.dual().gens.iter().map(|&u| double(u)).collect();
        if level == 1 {
            rows.push(gamma(self.n));
        }
        BinaryCode::new(n2, &rows)
    }

    /// Every subcode isomorphic to the [8,4,4] Hamming code, deduplicated as a
    /// subspace and sorted by (support, generator encoding).
    pub fn hamming_embeddings(&self) -> Result<Vec<HammingEmbedding>> {
        let words = self.codewords()?;
        let octads: BTreeSet<Word> = words.iter().copied().filter(|&w| weight(w) == 8).collect();
        let mut found = BTreeSet::new();
        for &u in &octads {
            let tetrads: Vec<Word> = words.iter().copied().filter(|&w| weight(w) == 4 && w & !u == 0).collect();
            for (i, &a) in tetrads.iter().enumerate() {
                for (j, &b) in tetrads.iter().enumerate().skip(i + 1) {
                    if weight(a ^ b) != 4 || (a ^ b) == u {
                        continue;
                    }
                    for &c in &tetrads[j + 1..] {
                        if let Some(d) = hamming_on(u, [a, b, c]) {
                            found.insert(d);
                        }
                    }
                }
            }
        }
        let mut out: Vec<HammingEmbedding> = found.into_iter().map(HammingEmbedding::from_rref).collect();
        out.sort_by(|x, y| x.support.cmp(&y.support).then(x.gens.cmp(&y.gens)));
        Ok(out)
    }

    /// Parses the "n k" + k rows text format.
    pub fn parse(text: &str) -> Result<BinaryCode> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?;
        let mut it = header.split_whitespace();
        let mut num = |what: &str| -> Result<usize> {
            it.next()
                .ok_or_else(|| Error::Parse(format!("missing {what} in header")))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
        };
        let n = num("n")?;
        let k = num("k")?;
        let mut rows = Vec::with_capacity(k);
        for line in lines {
            if line.len() != n {
                return Err(Error::Parse(format!("row {line:?} has length {} not {n}", line.len())));
            }
            rows.push(parse_word(line)?);
        }
        if rows.len() != k {
            return Err(Error::Parse(format!("expected {k} rows, found {}", rows.len())));
        }
        BinaryCode::new(n, &rows)
    }

    /// Emits the text format using the reduced generators.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.dim());
        for &g in &self.gens {
            let _ = writeln!(s, "{}", format_word(g, self.n));
        }
        s
    }
}

fn double(u: Word) -> Word {
    let mut v = 0;
    for i in support(u) {
        v |= 0b11 << (2 * i);
    }
    v
}

/// `(10)^n`, length `2n`.
pub fn gamma(n: usize) -> Word {
    (0..n).fold(0, |acc, i| acc | 1 << (2 * i))
}

/// Returns the reduced generators of span(u,a,b,c) if it is a Hamming code on supp(u).
fn hamming_on(u: Word, abc: [Word; 3]) -> Option<[Word; 4]> {
    let g = rref(&[u, abc[0], abc[1], abc[2]]);
    if g.len() != 4 {
        return None;
    }
    for i in 1u32..16 {
        let mut w = 0;
        for (bit, &r) in g.iter().enumerate() {
            if i >> bit & 1 == 1 {
                w ^= r;
            }
        }
        let wt = weight(w);
        if wt != 4 && !(wt == 8 && w == u) {
            return None;
        }
    }
    Some([g[0], g[1], g[2], g[3]])
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HammingEmbedding {
    gens: [Word; 4],
    support: Vec<usize>,
}

impl HammingEmbedding {
    fn from_rref(gens: [Word; 4]) -> Self {
        let all = gens.iter().fold(0, |a, &g| a | g);
        HammingEmbedding { gens, support: support(all) }
    }

    pub fn generators(&self) -> &[Word; 4] {
        &self.gens
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn support_mask(&self) -> Word {
        self.support.iter().fold(0, |a, &i| a | 1 << i)
    }

    pub fn as_code(&self, n: usize) -> BinaryCode {
        BinaryCode::new(n, &self.gens).expect("embedding fits its parent length")
    }

    pub fn contains(&self, w: Word) -> bool {
        let mut v = w;
        for &b in &self.gens {
            if v >> b.trailing_zeros() & 1 == 1 {
                v ^= b;
            }
        }
        v == 0
    }

    /// Sends a word supported on supp(D) to its 8 local coordinates.
    pub fn localize(&self, w: Word) -> u8 {
        self.support.iter().enumerate().fold(0, |acc, (k, &i)| acc | ((w >> i & 1) as u8) << k)
    }

    pub fn globalize(&self, local: u8) -> Word {
        self.support.iter().enumerate().fold(0, |acc, (k, &i)| acc | ((local >> k & 1) as Word) << i)
    }

    /// The 16 coset representatives of D in GF(2)^{supp D}: minimal weight,
    /// ties broken by the smaller local encoding. Returned as global words.
    pub fn coset_representatives(&self) -> Vec<Word> {
        let local: Vec<u8> = self.gens.iter().map(|&g| self.localize(g)).collect();
        let mut seen = [false; 256];
        let mut reps = Vec::with_capacity(16);
        let mut order: Vec<u8> = (0..=255u8).collect();
        order.sort_by_key(|&x| (x.count_ones(), x));
        for x in order {
            if seen[x as usize] {
                continue;
            }
            for i in 0u32..16 {
                let mut y = x;
                for (bit, &r) in local.iter().enumerate() {
                    if i >> bit & 1 == 1 {
                        y ^= r;
                    }
                }
                seen[y as usize] = true;
            }
            reps.push(self.globalize(x));
        }
        reps
    }
}

/// Catalog of the codes used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedCode {
    Hamming8,
    ReedMuller(usize, usize),
    Cn(usize),
    Zero(usize),
    Full(usize),
}

pub fn named_code(name: NamedCode) -> Result<BinaryCode> {
    match name {
        NamedCode::Hamming8 => BinaryCode::new(
            8,
            &[parse_word("11111111")?, parse_word("11110000")?, parse_word("11001100")?, parse_word("10101010")?],
        ),
        NamedCode::ReedMuller(r, m) => reed_muller(r, m),
        NamedCode::Cn(n) => {
            if n == 0 || 4 * n > MAX_LENGTH {
                return Err(Error::OutOfRange(format!("cn({n})")));
            }
            let mut rows: Vec<Word> = (0..n).map(|i| 0b1111 << (4 * i)).collect();
            rows.push((0..n).fold(0, |a, i| a | 0b0011 << (4 * i)));
            BinaryCode::new(4 * n, &rows)
        }
        NamedCode::Zero(n) => BinaryCode::zero(n),
        NamedCode::Full(n) => BinaryCode::full(n),
    }
}

/// Parses catalog keys: `hamming8`, `reed_muller(r,m)`, `cn(n)`, `zero(n)`, `full(n)`.
pub fn named_code_str(name: &str, params: &[usize]) -> Result<BinaryCode> {
    let need = |k: usize| -> Result<()> {
        if params.len() != k {
            return Err(Error::OutOfRange(format!("{name} takes {k} parameters, got {}", params.len())));
        }
        Ok(())
    };
    let nc = match name {
        "hamming8" => {
            need(0)?;
            NamedCode::Hamming8
        }
        "reed_muller" => {
            need(2)?;
            NamedCode::ReedMuller(params[0], params[1])
        }
        "cn" => {
            need(1)?;
            NamedCode::Cn(params[0])
        }
        "zero" => {
            need(1)?;
            NamedCode::Zero(params[0])
        }
        "full" => {
            need(1)?;
            NamedCode::Full(params[0])
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    named_code(nc)
}

/// RM(r,m): evaluations of monomials of degree ≤ r at the points x ∈ GF(2)^m,
/// coordinate index = the integer with binary digits x.
pub fn reed_muller(r: usize, m: usize) -> Result<BinaryCode> {
    if r > m || m > 7 {
        return Err(Error::OutOfRange(format!("reed_muller({r},{m})")));
    }
    let n = 1usize << m;
    let mut rows = Vec::new();
    for mono in 0u32..(1 << m) {
        if mono.count_ones() as usize > r {
            continue;
        }
        let mut w: Word = 0;
        for x in 0..n as u32 {
            if x & mono == mono {
                w |= 1 << x;
            }
        }
        rows.push(w);
    }
    BinaryCode::new(n, &rows)
}

/// The code of length 4n whose dual is the structure code of the D_{2n} model.
pub fn dn_structure_code(n: usize) -> Result<BinaryCode> {
    let c = named_code(NamedCode::Cn(n))?;
    Ok(c.span_with(&[gamma(2 * n)])?.dual())
}
