//! String tags for codes, lattices, commutant constraints and censuses.
//!
//! The command-line tool and the test suite resolve objects through these
//! functions only, so a tag means the same thing everywhere.
//!
//! * codes: `h8` (`hamming8`), `rm14`, `rm24`, `rm(r,m)`, `cn(n)`, `zero(n)`,
//!   `full(n)`, `dcode(2n)` / `dcode4`… (structure code of `V_{√2D_{2n}}^+`),
//!   `file:PATH` (text format of [`BinaryCode::parse`]);
//! * lattices: `A3`, `D6`, `E8`, `E8+E8`, … (case-insensitive);
//! * constraints: `wtilde`, `phi_alpha0_wtilde`, `w_plus_alpha0`, `wtilde_e7`;
//! * censuses: any code or lattice tag, `m_<lattice>` (orthogonal to
//!   `wtilde`) and `uc` (`E8` orthogonal to `wtilde` and `phi_alpha0_wtilde`).

use std::sync::Arc;

use crate::census::{code_census, commutant_filter, lattice_census, IsingCensus};
use crate::error::{Error, Result};
use crate::gf2code::{dn_structure_code, named_code, BinaryCode, NamedCode};
use crate::griess::{GriessAlgebra, GriessElement, Sign};
use crate::rootlat::{parse_kind, sublattice_embedding, EmbeddingName, RootLattice};

/// `(name, parameters)` for `name(a,b)` or `nameDIGITS`.
fn split_call(tag: &str) -> Result<(String, Vec<usize>)> {
    let t = tag.trim().to_ascii_lowercase();
    let bad = || Error::Parse(format!("malformed tag {tag:?}"));
    if let Some(open) = t.find('(') {
        let body = t[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let params = body
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        return Ok((t[..open].to_string(), params));
    }
    let cut = t.find(|c: char| c.is_ascii_digit()).unwrap_or(t.len());
    let (name, digits) = t.split_at(cut);
    let params = if digits.is_empty() { Vec::new() } else { vec![digits.parse().map_err(|_| bad())?] };
    Ok((name.to_string(), params))
}

/// Resolves a code tag.
pub fn code(tag: &str) -> Result<BinaryCode> {
    if let Some(path) = tag.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        return BinaryCode::parse(&text);
    }
    let (name, p) = split_call(tag)?;
    let arity = |k: usize| -> Result<()> {
        if p.len() == k {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{tag}: expected {k} parameter(s)")))
        }
    };
    match name.as_str() {
        "h" if p == [8] => named_code(NamedCode::Hamming8),
        "hamming" if p == [8] => named_code(NamedCode::Hamming8),
        "rm" if p.len() == 1 && p[0] >= 10 => named_code(NamedCode::ReedMuller(p[0] / 10, p[0] % 10)),
        "rm" | "reed_muller" => {
            arity(2)?;
            named_code(NamedCode::ReedMuller(p[0], p[1]))
        }
        "cn" => {
            arity(1)?;
            named_code(NamedCode::Cn(p[0]))
        }
        "zero" => {
            arity(1)?;
            named_code(NamedCode::Zero(p[0]))
        }
        "full" => {
            arity(1)?;
            named_code(NamedCode::Full(p[0]))
        }
        "dcode" => {
            arity(1)?;
            if p[0] < 4 || p[0] % 2 != 0 {
                return Err(Error::OutOfRange(format!("{tag}: rank must be even and at least 4")));
            }
            dn_structure_code(p[0] / 2)
        }
        _ => Err(Error::UnknownName(format!("code tag {tag:?}"))),
    }
}

/// Resolves a lattice tag.
pub fn lattice(tag: &str) -> Result<RootLattice> {
    RootLattice::build(&parse_kind(tag)?)
}

/// `α_0 = (1/2, …, 1/2)` in doubled coordinates of the E8 model.
pub fn alpha0() -> Vec<i32> {
    vec![1; 8]
}

/// Resolves a named Griess-algebra element used as a commutant constraint.
pub fn constraint(alg: &GriessAlgebra, name: &str) -> Result<GriessElement> {
    let is_e8 = alg.lattice().tag() == "E8";
    let need_e8 = || {
        if is_e8 {
            Ok(())
        } else {
            Err(Error::Lattice(format!("{name} is defined in the E8 algebra, not {}", alg.lattice().tag())))
        }
    };
    match name {
        "wtilde" => alg.wtilde_of(alg.lattice()),
        "phi_alpha0_wtilde" => {
            need_e8()?;
            Ok(alg.twist_by(&alpha0(), &alg.wtilde_of(alg.lattice())?))
        }
        "w_plus_alpha0" => {
            need_e8()?;
            alg.w_vector(&alpha0(), Sign::Plus)
        }
        "wtilde_e7" => {
            need_e8()?;
            let emb = sublattice_embedding(EmbeddingName::A1E7InE8)?;
            alg.wtilde_of(&emb.parts[1])
        }
        _ => Err(Error::UnknownName(format!("constraint {name:?}"))),
    }
}

/// What a census tag resolves to.
#[derive(Debug, Clone)]
pub enum CensusSource {
    Code(BinaryCode),
    Lattice { lattice: RootLattice, orthogonal_to: Vec<String> },
}

pub fn census_source(tag: &str) -> Result<CensusSource> {
    let t = tag.trim().to_ascii_lowercase();
    if t == "uc" {
        return Ok(CensusSource::Lattice {
            lattice: lattice("E8")?,
            orthogonal_to: vec!["wtilde".into(), "phi_alpha0_wtilde".into()],
        });
    }
    if let Some(rest) = t.strip_prefix("m_") {
        return Ok(CensusSource::Lattice { lattice: lattice(rest)?, orthogonal_to: vec!["wtilde".into()] });
    }
    match code(tag) {
        Ok(c) => Ok(CensusSource::Code(c)),
        Err(code_err) => match lattice(tag) {
            Ok(l) => Ok(CensusSource::Lattice { lattice: l, orthogonal_to: Vec::new() }),
            Err(_) => Err(match code_err {
                Error::UnknownName(_) => Error::UnknownName(format!("census tag {tag:?}")),
                e => e,
            }),
        },
    }
}

/// Resolves a census tag, optionally restricted to the points orthogonal to
/// further named constraints.
pub fn census(tag: &str, orthogonal_to: &[String]) -> Result<IsingCensus> {
    match census_source(tag)? {
        CensusSource::Code(c) => {
            if !orthogonal_to.is_empty() {
                return Err(Error::Precondition("constraints apply to lattice censuses only".into()));
            }
            code_census(&c)
        }
        CensusSource::Lattice { lattice, orthogonal_to: mut names } => {
            names.extend(orthogonal_to.iter().cloned());
            let alg = Arc::new(GriessAlgebra::build(&lattice)?);
            let full = lattice_census(alg.clone())?;
            if names.is_empty() {
                return Ok(full);
            }
            let cons = names.iter().map(|n| constraint(&alg, n)).collect::<Result<Vec<_>>>()?;
            commutant_filter(&full, &cons)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_tags() {
        assert_eq!(code("h8").unwrap(), code("hamming8").unwrap());
        assert_eq!(code("rm24").unwrap(), code("rm(2,4)").unwrap());
        assert_eq!(code("rm14").unwrap().dim(), 5);
        assert_eq!(code("dcode4").unwrap(), code("h8").unwrap());
        assert!(matches!(code("nope"), Err(Error::UnknownName(_))));
        assert!(code("dcode5").is_err());
    }

    #[test]
    fn census_tags() {
        assert!(matches!(census_source("rm24").unwrap(), CensusSource::Code(_)));
        assert!(matches!(census_source("E8").unwrap(), CensusSource::Lattice { .. }));
        match census_source("uc").unwrap() {
            CensusSource::Lattice { orthogonal_to, .. } => assert_eq!(orthogonal_to.len(), 2),
            _ => panic!(),
        }
        assert!(census_source("q7").is_err());
    }
}
