//! JSON serialisation of the domain types.  Rationals travel as strings
//! `"p/q"` (or `"p"` when the denominator is 1); all formats round-trip
//! bit-exactly through serialise/parse.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{ArtinLocalAlgebra, Elem, FiniteAlgebra};
use crate::barcobar::{BarWord, CobarWord, FormalSum, TruncatedComplex};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::flat::FlatDeformation;
use crate::hochschild::Cochain;
use crate::relations::Derivation;

fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

fn rat_from_string(s: &str) -> Result<Rat> {
    Rat::from_str(s)
}

fn vec_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

fn vec_from_strings(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| rat_from_string(s)).collect()
}

fn table_to_strings(t: &[Vec<Vec<Rat>>]) -> Vec<Vec<Vec<String>>> {
    t.iter().map(|row| row.iter().map(|v| vec_to_strings(v)).collect()).collect()
}

fn table_from_strings(t: &[Vec<Vec<String>>]) -> Result<Vec<Vec<Vec<Rat>>>> {
    t.iter()
        .map(|row| row.iter().map(|v| vec_from_strings(v)).collect())
        .collect()
}

fn matrix_to_strings(m: &[Vec<Rat>]) -> Vec<Vec<String>> {
    m.iter().map(|r| vec_to_strings(r)).collect()
}

fn matrix_from_strings(m: &[Vec<String>]) -> Result<Vec<Vec<Rat>>> {
    m.iter().map(|r| vec_from_strings(r)).collect()
}

fn decode<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

fn encode<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serialisation cannot fail")
}

// -------------------------------------------------------------------------
// Algebra and base
// -------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AlgebraDto {
    dim: usize,
    basis: Vec<String>,
    mul: Vec<Vec<Vec<String>>>,
}

pub fn algebra_to_json(alg: &FiniteAlgebra) -> String {
    encode(&AlgebraDto {
        dim: alg.dim,
        basis: alg.basis_names.clone(),
        mul: table_to_strings(&alg.mul),
    })
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let dto: AlgebraDto = decode(text)?;
    if dto.basis.len() != dto.dim {
        return Err(Error::InvalidInput("basis length disagrees with dim".into()));
    }
    FiniteAlgebra::new(dto.basis, table_from_strings(&dto.mul)?)
}

#[derive(Serialize, Deserialize)]
struct BaseDto {
    dim: usize,
    basis: Vec<String>,
    mul: Vec<Vec<Vec<String>>>,
    unit_index: usize,
    nilpotency: usize,
}

pub fn base_to_json(base: &ArtinLocalAlgebra) -> String {
    encode(&BaseDto {
        dim: base.dim,
        basis: base.basis_names.clone(),
        mul: table_to_strings(&base.mul),
        unit_index: 0,
        nilpotency: base.nilpotency,
    })
}

/// Parses without validating the axioms (candidates may be invalid); the
/// unit index is pinned to 0 by the format.
pub fn parse_base_candidate(text: &str) -> Result<ArtinLocalAlgebra> {
    let dto: BaseDto = decode(text)?;
    if dto.unit_index != 0 {
        return Err(Error::InvalidInput("the unit must be basis index 0".into()));
    }
    if dto.basis.len() != dto.dim {
        return Err(Error::InvalidInput("basis length disagrees with dim".into()));
    }
    Ok(ArtinLocalAlgebra::from_parts(dto.basis, table_from_strings(&dto.mul)?, dto.nilpotency))
}

/// Parses and fully validates.
pub fn parse_base(text: &str) -> Result<ArtinLocalAlgebra> {
    let base = parse_base_candidate(text)?;
    base.validate().map_err(|d| Error::InvalidBase(d.to_string()))?;
    Ok(base)
}

// -------------------------------------------------------------------------
// Cochains
// -------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CochainValueDto {
    #[serde(rename = "in")]
    input: Vec<usize>,
    out: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct CochainDto {
    arity: usize,
    m_only: bool,
    values: Vec<CochainValueDto>,
}

pub fn cochain_to_json(c: &Cochain) -> String {
    encode(&CochainDto {
        arity: c.arity,
        m_only: c.m_only(),
        values: c
            .values()
            .map(|(t, v)| CochainValueDto { input: t.clone(), out: matrix_to_strings(&v.coeffs) })
            .collect(),
    })
}

/// Parses against the shapes of the supplied algebra and base; omitted
/// tuples are zero.
pub fn parse_cochain(text: &str, alg: &FiniteAlgebra, base: &ArtinLocalAlgebra) -> Result<Cochain> {
    let dto: CochainDto = decode(text)?;
    let mut values = BTreeMap::new();
    for value in dto.values {
        let coeffs = matrix_from_strings(&value.out)?;
        values.insert(value.input, Elem { coeffs });
    }
    let cochain = Cochain::new(dto.arity, alg.dim, base.dim, values)?;
    if dto.m_only && !cochain.m_only() {
        return Err(Error::InvalidInput(
            "cochain claims values in A ⊗ m but has a unit-column entry".into(),
        ));
    }
    Ok(cochain)
}

// -------------------------------------------------------------------------
// Derivations
// -------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DerivationTermDto {
    word: Vec<Vec<usize>>,
    coeff: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct DerivationValueDto {
    generator: Vec<usize>,
    out: Vec<DerivationTermDto>,
}

#[derive(Serialize, Deserialize)]
struct DerivationDto {
    degree: i32,
    m_valued: bool,
    values: Vec<DerivationValueDto>,
}

pub fn derivation_to_json(d: &Derivation) -> String {
    encode(&DerivationDto {
        degree: d.degree,
        m_valued: d.m_valued,
        values: d
            .values()
            .map(|(gen, sum)| DerivationValueDto {
                generator: gen.0.clone(),
                out: sum
                    .terms()
                    .map(|(w, c)| DerivationTermDto {
                        word: w.blocks.iter().map(|b| b.0.clone()).collect(),
                        coeff: vec_to_strings(c),
                    })
                    .collect(),
            })
            .collect(),
    })
}

pub fn parse_derivation(
    text: &str,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
) -> Result<Derivation> {
    let dto: DerivationDto = decode(text)?;
    let mut values = BTreeMap::new();
    for value in dto.values {
        if value.generator.iter().any(|&l| l >= alg.dim) {
            return Err(Error::InvalidInput("generator letter out of range".into()));
        }
        let mut sum = FormalSum::zero(base.dim);
        for term in value.out {
            if term.word.iter().flatten().any(|&l| l >= alg.dim) {
                return Err(Error::InvalidInput("word letter out of range".into()));
            }
            if term.word.is_empty() || term.word.iter().any(Vec::is_empty) {
                return Err(Error::InvalidInput("word blocks must be nonempty".into()));
            }
            let word = CobarWord::new(term.word.into_iter().map(BarWord).collect());
            sum.add_term(word, vec_from_strings(&term.coeff)?);
        }
        values.insert(BarWord(value.generator), sum);
    }
    let derivation = Derivation::new(dto.degree, base.dim, values)?;
    if dto.m_valued && !derivation.m_valued {
        return Err(Error::InvalidInput(
            "derivation claims coefficients in m but has a unit-column entry".into(),
        ));
    }
    Ok(derivation)
}

// -------------------------------------------------------------------------
// Flat deformations
// -------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FlatDto {
    carrier_dim: usize,
    b_action: Vec<Vec<Vec<String>>>,
    mul: Vec<Vec<Vec<String>>>,
    reduction: Vec<Vec<String>>,
}

pub fn flat_to_json(t: &FlatDeformation) -> String {
    encode(&FlatDto {
        carrier_dim: t.carrier_dim,
        b_action: t.b_action.iter().map(|m| matrix_to_strings(m)).collect(),
        mul: table_to_strings(&t.mul),
        reduction: matrix_to_strings(&t.reduction),
    })
}

pub fn parse_flat(text: &str) -> Result<FlatDeformation> {
    let dto: FlatDto = decode(text)?;
    Ok(FlatDeformation {
        carrier_dim: dto.carrier_dim,
        b_action: dto
            .b_action
            .iter()
            .map(|m| matrix_from_strings(m))
            .collect::<Result<Vec<_>>>()?,
        mul: table_from_strings(&dto.mul)?,
        reduction: matrix_from_strings(&dto.reduction)?,
    })
}

// -------------------------------------------------------------------------
// Complex dump
// -------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DegreeDto {
    degree: i32,
    words: Vec<Vec<Vec<usize>>>,
    /// Differential into the next degree in (row, col, value) triplets.
    matrix: Vec<(usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
struct ComplexDto {
    word_bound: usize,
    degrees: Vec<DegreeDto>,
}

pub fn complex_to_json(complex: &TruncatedComplex) -> String {
    let degrees = complex
        .bases
        .iter()
        .map(|(d, words)| DegreeDto {
            degree: *d,
            words: words
                .iter()
                .map(|w| w.blocks.iter().map(|b| b.0.clone()).collect())
                .collect(),
            matrix: complex.mats[d]
                .entries()
                .map(|((r, c), v)| (*r, *c, rat_to_string(v)))
                .collect(),
        })
        .collect();
    encode(&ComplexDto { word_bound: complex.word_bound, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn algebra_roundtrip_is_bit_exact() {
        let alg = fixtures::truncated_polynomial(2);
        let text = algebra_to_json(&alg);
        let parsed = parse_algebra(&text).unwrap();
        assert_eq!(parsed, alg);
        assert_eq!(algebra_to_json(&parsed), text);
    }

    #[test]
    fn base_roundtrip_is_bit_exact() {
        let base = fixtures::jet_base(2);
        let text = base_to_json(&base);
        let parsed = parse_base(&text).unwrap();
        assert_eq!(parsed, base);
        assert_eq!(base_to_json(&parsed), text);
    }

    #[test]
    fn invalid_base_is_rejected() {
        let mut base = fixtures::dual_numbers();
        base.nilpotency = 5;
        assert!(parse_base(&base_to_json(&base)).is_err());
    }

    #[test]
    fn cochain_roundtrip_is_bit_exact() {
        let alg = fixtures::truncated_polynomial(2);
        let base = fixtures::dual_numbers();
        let mut beta = Cochain::zero(2, 2, 2);
        beta.set(vec![0, 0], Elem::basis(2, 2, 0, 1).scale(&Rat::new(-3, 7)));
        let text = cochain_to_json(&beta);
        let parsed = parse_cochain(&text, &alg, &base).unwrap();
        assert_eq!(parsed, beta);
        assert_eq!(cochain_to_json(&parsed), text);
    }

    #[test]
    fn cochain_m_only_claim_is_checked() {
        let alg = fixtures::truncated_polynomial(2);
        let base = fixtures::dual_numbers();
        let text = r#"{"arity":2,"m_only":true,"values":[{"in":[0,0],"out":[["1","0"],["0","0"]]}]}"#;
        assert!(parse_cochain(text, &alg, &base).is_err());
    }

    #[test]
    fn derivation_roundtrip_is_bit_exact() {
        let alg = fixtures::truncated_polynomial(2);
        let base = fixtures::dual_numbers();
        let mut beta = Cochain::zero(2, 2, 2);
        beta.set(vec![0, 0], Elem::basis(2, 2, 0, 1));
        let delta = crate::relations::delta_of_beta(&beta, &alg, &base, 3).unwrap();
        let text = derivation_to_json(&delta);
        let parsed = parse_derivation(&text, &alg, &base).unwrap();
        assert_eq!(parsed, delta);
        assert_eq!(derivation_to_json(&parsed), text);
    }

    #[test]
    fn flat_roundtrip_is_bit_exact() {
        let alg = fixtures::truncated_polynomial(2);
        let base = fixtures::dual_numbers();
        let mut beta = Cochain::zero(2, 2, 2);
        beta.set(vec![0, 0], Elem::basis(2, 2, 0, 1));
        let t = crate::flat::functor_f(&beta, &alg, &base).unwrap();
        let text = flat_to_json(&t);
        let parsed = parse_flat(&text).unwrap();
        assert_eq!(parsed, t);
        assert_eq!(flat_to_json(&parsed), text);
    }

    #[test]
    fn complex_dump_is_deterministic() {
        let alg = fixtures::truncated_polynomial(2);
        let base = fixtures::dual_numbers();
        let complex = TruncatedComplex::build(&alg, &base, 3, None).unwrap();
        let complex2 = TruncatedComplex::build(&alg, &base, 3, None).unwrap();
        assert_eq!(complex_to_json(&complex), complex_to_json(&complex2));
    }
}
