//! Milnor's triple linking number: from longitude words through the Magnus
//! expansion, from pure-braid closures, and from surface intersection data.
//! Also the intersection-form bookkeeping that equates a crossing index with
//! a triple-point count on a trefoil-sum fiber.

mod free;

pub use free::{artin_apply, longitude_linking, longitudes_from_pure_braid, FreeWord, LongitudeSet};

use std::fmt;

use num_integer::Integer;
use serde::Deserialize;
use thiserror::Error;

use crate::braid::{closure_summary, BraidWord};
use crate::poly::magnus_expand;
use crate::seifert::{intersection_form, inverse_unimodular, trefoil_sum_seifert, IntMatrix, SeifertError};

/// Truncation degree for every Magnus expansion in this module.
const MAGNUS_DEGREE: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("expected 3 components, got {0}")]
    BadComponentCount(usize),
    #[error("braid closure permutation is not the identity")]
    NotPure,
    #[error("generator x{index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("word w{0} contains its own letter {0}")]
    LetterClash(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("word syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
}

impl MilnorError {
    pub fn name(&self) -> &'static str {
        match self {
            MilnorError::BadComponentCount(_) => "BadComponentCount",
            MilnorError::NotPure => "NotPure",
            MilnorError::IndexOutOfRange { .. } => "IndexOutOfRange",
            MilnorError::LetterClash(_) => "LetterClash",
            MilnorError::DimensionMismatch(_) => "DimensionMismatch",
            MilnorError::Syntax(_) => "SyntaxError",
            MilnorError::Seifert(e) => e.name(),
        }
    }
}

/// An integer modulo `modulus`; modulus 0 means an ordinary integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    pub value: i64,
    pub modulus: u64,
}

impl Residue {
    pub fn new(value: i64, modulus: u64) -> Self {
        let value = if modulus == 0 {
            value
        } else {
            value.mod_floor(&(modulus as i64))
        };
        Self { value, modulus }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

fn gcd_of(values: &[i64]) -> u64 {
    values.iter().fold(0u64, |acc, v| acc.gcd(&v.unsigned_abs()))
}

/// Coefficient of `h_1 h_2` in the Magnus expansion of the third longitude,
/// reduced modulo `delta`.
pub fn mu123_from_longitudes(l: &LongitudeSet, delta: u64) -> Result<Residue, MilnorError> {
    if l.components() != 3 {
        return Err(MilnorError::BadComponentCount(l.components()));
    }
    let series = magnus_expand(l.longitudes[2].letters(), MAGNUS_DEGREE);
    let c = series.coeff(&[1, 2]).expect("length 2 within truncation");
    Ok(Residue::new(c, delta))
}

/// Triple linking number of the closure of a pure 3-strand braid, modulo the
/// gcd of its pairwise linking numbers.
pub fn mu123_of_closure(beta: &BraidWord) -> Result<Residue, MilnorError> {
    if beta.strands() != 3 {
        return Err(MilnorError::BadComponentCount(beta.strands()));
    }
    let longitudes = longitudes_from_pure_braid(beta)?;
    let s = closure_summary(beta);
    let delta = gcd_of(&[s.lk(0, 1), s.lk(0, 2), s.lk(1, 2)]);
    mu123_from_longitudes(&longitudes, delta)
}

/// Word recording, with sign, which Seifert surfaces a component crosses:
/// letters `(surface, ±1)` over surfaces 1..3.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SurfaceWord(pub Vec<(usize, i8)>);

impl SurfaceWord {
    /// Parse tokens like `1+ 2- 3+` (whitespace between tokens is optional).
    pub fn parse(s: &str) -> Result<Self, MilnorError> {
        let mut out = Vec::new();
        let mut digits = String::new();
        for ch in s.chars() {
            match ch {
                '0'..='9' => digits.push(ch),
                '+' | '-' => {
                    let surface: usize = digits
                        .parse()
                        .map_err(|_| MilnorError::Syntax(format!("sign without surface number in {s:?}")))?;
                    if !(1..=3).contains(&surface) {
                        return Err(MilnorError::Syntax(format!("surface {surface} is not 1, 2 or 3")));
                    }
                    out.push((surface, if ch == '+' { 1 } else { -1 }));
                    digits.clear();
                }
                c if c.is_whitespace() || c == ',' => {
                    if !digits.is_empty() {
                        return Err(MilnorError::Syntax(format!("surface {digits} lacks a sign")));
                    }
                }
                other => return Err(MilnorError::Syntax(format!("unexpected {other:?} in {s:?}"))),
            }
        }
        if !digits.is_empty() {
            return Err(MilnorError::Syntax(format!("surface {digits} lacks a sign")));
        }
        Ok(Self(out))
    }
}

/// Surface-intersection data of a three-component link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmData {
    pub words: [SurfaceWord; 3],
    /// Signed count of triple points of the three surfaces.
    pub t123: i64,
    /// Linking numbers `lk12, lk13, lk23`.
    pub lk: [i64; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MmJson {
    w1: String,
    w2: String,
    w3: String,
    t123: i64,
    lk: [i64; 3],
}

impl MmData {
    pub fn from_json(text: &str) -> Result<Self, MilnorError> {
        let raw: MmJson = serde_json::from_str(text).map_err(|e| MilnorError::Syntax(e.to_string()))?;
        Ok(Self {
            words: [
                SurfaceWord::parse(&raw.w1)?,
                SurfaceWord::parse(&raw.w2)?,
                SurfaceWord::parse(&raw.w3)?,
            ],
            t123: raw.t123,
            lk: raw.lk,
        })
    }
}

/// `e123 + e231 + e312`, where `e_ijk` is the coefficient of `h_i h_j` in the
/// Magnus expansion of `w_k`.
pub fn m123_from_words(words: &[SurfaceWord; 3]) -> Result<i64, MilnorError> {
    for (k, w) in words.iter().enumerate() {
        if w.0.iter().any(|&(s, _)| s == k + 1) {
            return Err(MilnorError::LetterClash(k + 1));
        }
    }
    let e = |i: usize, j: usize, k: usize| {
        magnus_expand(&words[k - 1].0, MAGNUS_DEGREE)
            .coeff(&[i, j])
            .expect("length 2 within truncation")
    };
    Ok(e(1, 2, 3) + e(2, 3, 1) + e(3, 1, 2))
}

/// `m123 − t123` modulo the gcd of the pairwise linking numbers.
pub fn mellor_melvin(d: &MmData) -> Result<Residue, MilnorError> {
    let m = m123_from_words(&d.words)?;
    Ok(Residue::new(m - d.t123, gcd_of(&d.lk)))
}

fn check_len(v: &[i64], g: usize, what: &str) -> Result<(), MilnorError> {
    if v.len() == 2 * g {
        Ok(())
    } else {
        Err(MilnorError::DimensionMismatch(format!(
            "{what} has length {}, expected {}",
            v.len(),
            2 * g
        )))
    }
}

/// `k2ᵀ F k3` with `F` the standard intersection form of genus `g`.
pub fn t123_from_homology(k2: &[i64], k3: &[i64], g: usize) -> Result<i64, MilnorError> {
    check_len(k2, g, "k2")?;
    check_len(k3, g, "k3")?;
    Ok(intersection_form(g).bilinear(k2, k3)?)
}

/// `F⁻¹ K` for the intersection form `F = A_J − A_Jᵀ` of a trefoil-sum fiber.
pub fn derivative_class(k: &[i64], g: usize) -> Result<Vec<i64>, MilnorError> {
    check_len(k, g, "class")?;
    let a = trefoil_sum_seifert(g);
    let f = &a - &a.transpose();
    Ok(inverse_unimodular(&f)?.mul_vec(k)?)
}

/// `(B A_J k2)ᵀ F (B A_J k3)` with `F = A_J − A_Jᵀ` and `B = F⁻¹`.
pub fn intersection_chain(a_j: &IntMatrix, k2: &[i64], k3: &[i64]) -> Result<i64, MilnorError> {
    let f = a_j - &a_j.transpose();
    let b = inverse_unimodular(&f)?;
    let ba = &b * a_j;
    let c2 = ba.mul_vec(k2)?;
    let c3 = ba.mul_vec(k3)?;
    Ok(f.bilinear(&c2, &c3)?)
}

/// Crossing index from homology data, computed directly and through the
/// derivative-curve chain on a trefoil-sum fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexChainReport {
    pub index: i64,
    pub t123: i64,
    /// `−index` modulo `lk23`.
    pub mu123: Residue,
    pub pass: bool,
}

pub fn index_chain_check(k2: &[i64], k3: &[i64], g: usize, lk23: i64) -> Result<IndexChainReport, MilnorError> {
    let index = t123_from_homology(k2, k3, g)?;
    let t123 = intersection_chain(&trefoil_sum_seifert(g), k2, k3)?;
    Ok(IndexChainReport {
        index,
        t123,
        mu123: Residue::new(-index, lk23.unsigned_abs()),
        pass: index == t123,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sw(s: &str) -> SurfaceWord {
        SurfaceWord::parse(s).unwrap()
    }

    fn longitudes(words: [&str; 3]) -> LongitudeSet {
        LongitudeSet {
            longitudes: words.iter().map(|w| FreeWord::parse(w).unwrap()).collect(),
        }
    }

    #[test]
    fn residues() {
        assert_eq!(Residue::new(-1, 3), Residue { value: 2, modulus: 3 });
        assert_eq!(Residue::new(-1, 0), Residue { value: -1, modulus: 0 });
        assert_eq!(Residue::new(5, 1).value, 0);
        assert_eq!(Residue::new(1, 0).to_string(), "1 (mod 0)");
    }

    #[test]
    fn triple_linking_from_longitudes() {
        assert_eq!(
            mu123_from_longitudes(&longitudes(["", "", "m1 m2 m1^-1 m2^-1"]), 0).unwrap(),
            Residue::new(1, 0)
        );
        assert_eq!(
            mu123_from_longitudes(&longitudes(["", "", ""]), 0).unwrap(),
            Residue::new(0, 0)
        );
        assert_eq!(
            mu123_from_longitudes(&longitudes(["", "", "m1 m2"]), 3).unwrap(),
            Residue::new(1, 3)
        );
        let two = LongitudeSet {
            longitudes: vec![FreeWord::empty(); 2],
        };
        assert_eq!(mu123_from_longitudes(&two, 0), Err(MilnorError::BadComponentCount(2)));
    }

    #[test]
    fn triple_linking_of_closures() {
        let borromean = mu123_of_closure(&BraidWord::parse("1 -2 1 -2 1 -2", 3).unwrap()).unwrap();
        assert_eq!(borromean.modulus, 0);
        assert_eq!(borromean.value.abs(), 1);
        assert_eq!(mu123_of_closure(&BraidWord::identity(3)).unwrap(), Residue::new(0, 0));
        let hopf_plus_circle = mu123_of_closure(&BraidWord::parse("1 1", 3).unwrap()).unwrap();
        assert_eq!(hopf_plus_circle, Residue { value: 0, modulus: 1 });
        assert_eq!(
            mu123_of_closure(&BraidWord::parse("1", 3).unwrap()),
            Err(MilnorError::NotPure)
        );
        assert_eq!(
            mu123_of_closure(&BraidWord::identity(2)),
            Err(MilnorError::BadComponentCount(2))
        );
    }

    #[test]
    fn surface_words() {
        assert_eq!(sw("1+ 2-").0, vec![(1, 1), (2, -1)]);
        assert_eq!(sw("1+2+"), sw("1+ 2+"));
        assert_eq!(sw(""), SurfaceWord::default());
        assert!(SurfaceWord::parse("4+").is_err());
        assert!(SurfaceWord::parse("1").is_err());
        assert!(SurfaceWord::parse("+").is_err());
    }

    #[test]
    fn counting_formula() {
        let ssf = [sw(""), sw("3+ 3- 3+"), sw("2- 2+")];
        assert_eq!(m123_from_words(&ssf), Ok(0));
        assert_eq!(m123_from_words(&[sw(""), sw(""), sw("1+ 2+")]), Ok(1));
        assert_eq!(m123_from_words(&[sw(""), sw(""), sw("")]), Ok(0));
        assert_eq!(
            m123_from_words(&[sw("1+"), sw(""), sw("")]),
            Err(MilnorError::LetterClash(1))
        );

        let data = MmData {
            words: ssf.clone(),
            t123: 1,
            lk: [0, 0, 0],
        };
        assert_eq!(mellor_melvin(&data).unwrap(), Residue::new(-1, 0));
        let example = MmData {
            words: ssf.clone(),
            t123: -1,
            lk: [0, 0, 0],
        };
        assert_eq!(mellor_melvin(&example).unwrap(), Residue::new(1, 0));
        let zero = MmData {
            words: [sw(""), sw(""), sw("")],
            t123: 0,
            lk: [0, 0, 0],
        };
        assert_eq!(mellor_melvin(&zero).unwrap(), Residue::new(0, 0));
    }

    #[test]
    fn counting_formula_is_periodic_in_triple_points() {
        let words = [sw("2+ 3-"), sw("1- 3+ 1+"), sw("1+ 2+ 1-")];
        let base = MmData {
            words: words.clone(),
            t123: 4,
            lk: [6, 4, 10],
        };
        let shifted = MmData {
            t123: 4 + 2,
            ..base.clone()
        };
        assert_eq!(mellor_melvin(&base).unwrap(), mellor_melvin(&shifted).unwrap());
        assert_eq!(mellor_melvin(&base).unwrap().modulus, 2);
    }

    #[test]
    fn json_data() {
        let d = MmData::from_json(r#"{"w1": "", "w2": "3+", "w3": "2-", "t123": -1, "lk": [0, 0, 0]}"#).unwrap();
        assert_eq!(mellor_melvin(&d).unwrap(), Residue::new(1, 0));
        assert!(matches!(MmData::from_json("{"), Err(MilnorError::Syntax(_))));
    }

    #[test]
    fn homology_pairings() {
        assert_eq!(t123_from_homology(&[1, 0], &[0, 1], 1), Ok(1));
        assert_eq!(t123_from_homology(&[3, -2], &[3, -2], 1), Ok(0));
        assert_eq!(t123_from_homology(&[1, 0, 0, 0], &[0, 0, 0, 1], 2), Ok(0));
        assert!(matches!(
            t123_from_homology(&[1], &[0, 1], 1),
            Err(MilnorError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn derivative_classes() {
        assert_eq!(derivative_class(&[0, 0], 1).unwrap(), vec![0, 0]);
        assert_eq!(derivative_class(&[1, 0], 1).unwrap(), vec![0, 1]);
        let v = [2, -1, 5, 3];
        let f = intersection_form(2);
        assert_eq!(f.mul_vec(&derivative_class(&v, 2).unwrap()).unwrap(), v.to_vec());
    }

    #[test]
    fn chain_on_trefoil_fibers() {
        let r = index_chain_check(&[1, 0], &[0, 1], 1, 0).unwrap();
        assert!(r.pass);
        assert_eq!((r.index, r.t123), (1, 1));
        assert_eq!(r.mu123, Residue::new(-1, 0));
        let zero = index_chain_check(&[0, 0, 0, 0], &[1, 2, 3, 4], 2, 5).unwrap();
        assert_eq!(zero.index, 0);
        assert!(zero.pass);
    }

    #[test]
    fn chain_fails_off_trefoil_fibers() {
        // Figure-eight fiber: AᵀFA = −F, so the chain flips sign.
        let figure_eight = IntMatrix::from_rows(vec![vec![1, 1], vec![0, -1]]).unwrap();
        let direct = t123_from_homology(&[1, 0], &[0, 1], 1).unwrap();
        let chain = intersection_chain(&figure_eight, &[1, 0], &[0, 1]).unwrap();
        assert_eq!((direct, chain), (1, -1));
    }
}
